"""Exact arithmetic in the ring of amplitudes (x + y*sqrt(2)) / 2^k.

Here x and y are Gaussian integers and k is a nonnegative integer.  Every
amplitude appearing in the codes, the Bell-type bases and the branching
decompositions lives in this ring, so state-vector identities can be checked
as exact equalities with no tolerances.

The canonical form divides out common factors of two, which makes equality
a plain component comparison.
"""

from __future__ import annotations

import math

__all__ = [
    "Amplitude",
    "ZERO",
    "ONE",
    "IUNIT",
    "HALF",
    "SQRT2",
    "INV_SQRT2",
    "PHASE_GROUP",
]

_SQRT2 = math.sqrt(2.0)


class Amplitude:
    """An exact complex number ((xr + xi*i) + (yr + yi*i)*sqrt(2)) / 2^k."""

    __slots__ = ("_xr", "_xi", "_yr", "_yi", "_k")

    def __init__(self, xr: int = 0, xi: int = 0, yr: int = 0, yi: int = 0, k: int = 0):
        if k < 0:
            raise ValueError("k must be nonnegative")
        while k > 0 and not ((xr | xi | yr | yi) & 1):
            xr >>= 1
            xi >>= 1
            yr >>= 1
            yi >>= 1
            k -= 1
        if not (xr | xi | yr | yi):
            k = 0
        self._xr, self._xi, self._yr, self._yi, self._k = xr, xi, yr, yi, k

    @classmethod
    def integer(cls, m: int) -> "Amplitude":
        return cls(m, 0, 0, 0, 0)

    @property
    def x(self) -> tuple[int, int]:
        """The Gaussian integer multiplying 1, as (real, imag)."""
        return (self._xr, self._xi)

    @property
    def y(self) -> tuple[int, int]:
        """The Gaussian integer multiplying sqrt(2), as (real, imag)."""
        return (self._yr, self._yi)

    @property
    def k(self) -> int:
        """The exponent of the 2^k denominator, fully reduced."""
        return self._k

    def __bool__(self) -> bool:
        return bool(self._xr | self._xi | self._yr | self._yi)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Amplitude.integer(other)
        if not isinstance(other, Amplitude):
            return NotImplemented
        return (
            self._xr == other._xr
            and self._xi == other._xi
            and self._yr == other._yr
            and self._yi == other._yi
            and self._k == other._k
        )

    def __hash__(self) -> int:
        return hash((self._xr, self._xi, self._yr, self._yi, self._k))

    def __neg__(self) -> "Amplitude":
        return Amplitude(-self._xr, -self._xi, -self._yr, -self._yi, self._k)

    def __add__(self, other: "Amplitude | int") -> "Amplitude":
        if isinstance(other, int):
            other = Amplitude.integer(other)
        if not isinstance(other, Amplitude):
            return NotImplemented
        k = max(self._k, other._k)
        sa = 1 << (k - self._k)
        sb = 1 << (k - other._k)
        return Amplitude(
            self._xr * sa + other._xr * sb,
            self._xi * sa + other._xi * sb,
            self._yr * sa + other._yr * sb,
            self._yi * sa + other._yi * sb,
            k,
        )

    __radd__ = __add__

    def __sub__(self, other: "Amplitude | int") -> "Amplitude":
        if isinstance(other, int):
            other = Amplitude.integer(other)
        if not isinstance(other, Amplitude):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Amplitude | int") -> "Amplitude":
        return (-self) + other

    def __mul__(self, other: "Amplitude | int") -> "Amplitude":
        if isinstance(other, int):
            return Amplitude(
                self._xr * other, self._xi * other,
                self._yr * other, self._yi * other, self._k,
            )
        if not isinstance(other, Amplitude):
            return NotImplemented
        axr, axi, ayr, ayi = self._xr, self._xi, self._yr, self._yi
        bxr, bxi, byr, byi = other._xr, other._xi, other._yr, other._yi
        # x = x1*x2 + 2*y1*y2, y = x1*y2 + y1*x2, with Gaussian products.
        xr = axr * bxr - axi * bxi + 2 * (ayr * byr - ayi * byi)
        xi = axr * bxi + axi * bxr + 2 * (ayr * byi + ayi * byr)
        yr = axr * byr - axi * byi + ayr * bxr - ayi * bxi
        yi = axr * byi + axi * byr + ayr * bxi + ayi * bxr
        return Amplitude(xr, xi, yr, yi, self._k + other._k)

    __rmul__ = __mul__

    def __truediv__(self, other: "Amplitude | int") -> "Amplitude":
        if isinstance(other, int):
            other = Amplitude.integer(other)
        if not isinstance(other, Amplitude):
            return NotImplemented
        inv = other._inverse()
        if inv is None:
            raise ValueError(f"cannot divide by {other!r} inside the ring")
        return self * inv

    def _inverse(self) -> "Amplitude | None":
        # Invertible here: exactly one nonzero component, of absolute value
        # a power of two.  That covers every divisor the package needs
        # (powers of 2 and sqrt(2), the unit i, and products of those).
        comps = (self._xr, self._xi, self._yr, self._yi)
        nonzero = [(idx, c) for idx, c in enumerate(comps) if c]
        if len(nonzero) != 1:
            return None
        idx, c = nonzero[0]
        a = abs(c)
        if a & (a - 1):
            return None
        sign = 1 if c > 0 else -1
        e = a.bit_length() - 1
        # self = sign * i^(idx odd) * sqrt2^(idx >= 2) * 2^(e - k)
        # inverse: flip each factor.
        out = Amplitude.integer(sign)
        if idx in (1, 3):
            out = out * Amplitude(0, -1)  # 1/i = -i
        if idx >= 2:
            out = out * INV_SQRT2
        shift = e - self._k
        if shift > 0:
            out = out * Amplitude(1, 0, 0, 0, shift)
        elif shift < 0:
            out = out * Amplitude.integer(1 << (-shift))
        return out

    def conjugate(self) -> "Amplitude":
        return Amplitude(self._xr, -self._xi, self._yr, -self._yi, self._k)

    def norm_squared(self) -> "Amplitude":
        """self * conj(self); always real (zero imaginary components)."""
        return self * self.conjugate()

    def times_i_power(self, t: int) -> "Amplitude":
        """Multiply by i^t without a general product."""
        t &= 3
        xr, xi, yr, yi = self._xr, self._xi, self._yr, self._yi
        for _ in range(t):
            xr, xi, yr, yi = -xi, xr, -yi, yr
        return Amplitude(xr, xi, yr, yi, self._k)

    def is_real(self) -> bool:
        return self._xi == 0 and self._yi == 0

    def is_rational(self) -> bool:
        """True iff the value is x / 2^k with no sqrt(2) or imaginary part."""
        return self._xi == 0 and self._yr == 0 and self._yi == 0

    def as_integer_ratio(self) -> tuple[int, int]:
        """The value as an exact fraction; requires a rational amplitude."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return (self._xr, 1 << self._k)

    def power_of_two_exponent(self) -> int:
        """t such that the value equals 2^t exactly, else ValueError."""
        if self._xi or self._yr or self._yi or self._xr <= 0:
            raise ValueError(f"{self!r} is not a power of two")
        if self._xr & (self._xr - 1):
            raise ValueError(f"{self!r} is not a power of two")
        return self._xr.bit_length() - 1 - self._k

    def inv_sqrt(self) -> "Amplitude":
        """1 / sqrt(self) for values that are exact powers of two."""
        t = self.power_of_two_exponent()
        if t % 2 == 0:
            half_exp = t // 2
            return _two_power(-half_exp)
        return _two_power(-(t + 1) // 2) * SQRT2

    def dump(self) -> str:
        """Bit-exact text form 'x_re,x_im,y_re,y_im,k'."""
        return f"{self._xr},{self._xi},{self._yr},{self._yi},{self._k}"

    @classmethod
    def parse_dump(cls, text: str) -> "Amplitude":
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 5:
            raise ValueError(f"bad amplitude dump {text!r}")
        return cls(*parts)

    def __complex__(self) -> complex:
        num = complex(self._xr, self._xi) + _SQRT2 * complex(self._yr, self._yi)
        return num / (1 << self._k)

    def __repr__(self) -> str:
        return (
            f"Amplitude({self._xr}, {self._xi}, {self._yr}, {self._yi}, "
            f"k={self._k})"
        )

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        if self._xr or self._xi:
            parts.append(_gauss_str(self._xr, self._xi))
        if self._yr or self._yi:
            g = _gauss_str(self._yr, self._yi)
            if g == "1":
                parts.append("sqrt2")
            elif g == "-1":
                parts.append("-sqrt2")
            elif ("+" in g[1:]) or ("-" in g[1:]):
                parts.append(f"({g})*sqrt2")
            else:
                parts.append(f"{g}*sqrt2")
        joined = parts[0]
        for p in parts[1:]:
            joined += p if p.startswith("-") else "+" + p
        if self._k:
            if len(parts) > 1 or "+" in joined[1:] or "-" in joined[1:]:
                joined = f"({joined})"
            return f"{joined}/2^{self._k}" if self._k > 1 else f"{joined}/2"
        return joined


def _gauss_str(r: int, i: int) -> str:
    if i == 0:
        return str(r)
    istr = "i" if i == 1 else "-i" if i == -1 else f"{i}i"
    if r == 0:
        return istr
    return f"{r}{istr}" if istr.startswith("-") else f"{r}+{istr}"


def _two_power(t: int) -> Amplitude:
    if t >= 0:
        return Amplitude.integer(1 << t)
    return Amplitude(1, 0, 0, 0, -t)


ZERO = Amplitude()
ONE = Amplitude.integer(1)
IUNIT = Amplitude(0, 1)
HALF = Amplitude(1, 0, 0, 0, 1)
SQRT2 = Amplitude(0, 0, 1, 0, 0)
INV_SQRT2 = Amplitude(0, 0, 1, 0, 1)

# The unit phases reachable by the protocols: powers of the eighth root
# (1+i)/sqrt(2) = (1+i)*sqrt(2)/2.
PHASE_GROUP = tuple(
    p
    for base in (ONE, Amplitude(0, 0, 1, 1, 1))
    for p in (base, base.times_i_power(1), base.times_i_power(2), base.times_i_power(3))
)
