"""Phased n-qubit Pauli operators over the GF(2) symplectic encoding.

A tensor product of single-qubit Paulis is stored as a :class:`GF2Vector`
plus an i-exponent: the operator is ``i^phase * O_v`` where

    O_v = prod_j (-i)^(q_j p_j) Z^(q_j) X^(p_j)

and (q_j, p_j) are the vector components for qubit j.  Per symbol the
encoding is I=(0,0), X=(0,1), Y=(1,1), Z=(1,0), so the observable XYZ sits
on the vector (011110).  Qubit 0 is the leftmost symbol of a string.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gf2 import GF2Vector, symplectic_form

__all__ = [
    "PauliOperator",
    "encode_symbol_string",
    "format_string",
    "multiply",
    "commutes",
    "restrict",
    "permute_positions",
    "identity",
    "product",
]

_SYMBOL_TO_QP: dict[str, tuple[int, int]] = {
    "I": (0, 0),
    "X": (0, 1),
    "Y": (1, 1),
    "Z": (1, 0),
}

_QP_TO_SYMBOL: dict[tuple[int, int], str] = {v: k for k, v in _SYMBOL_TO_QP.items()}

_SIGN_TO_PHASE: dict[str, int] = {"": 0, "+": 0, "i": 1, "-": 2, "-i": 3}

_PHASE_TO_SIGN: dict[int, str] = {0: "", 1: "i", 2: "-", 3: "-i"}


class PauliOperator:
    """A signed tensor product of single-qubit Pauli matrices.

    Attributes
    ----------
    vec : GF2Vector
        The symplectic encoding of the unsigned symbol string.
    phase : int
        Exponent k in {0, 1, 2, 3}; the operator carries the scalar i^k,
        so k=0 means +1, k=1 means +i, k=2 means -1 and k=3 means -i.

    Notes
    -----
    Multiplication adds the vectors over GF(2) and tracks the exact phase,
    so these objects form the n-qubit Pauli group.  Two operators commute
    exactly when the symplectic form of their vectors vanishes; the phases
    never influence commutation.

    Examples
    --------
    >>> x = PauliOperator(GF2Vector(1, 0b01))
    >>> z = PauliOperator(GF2Vector(1, 0b10))
    >>> x * z
    PauliOperator('-iY')
    >>> z * x
    PauliOperator('iY')
    >>> x.commutes_with(z)
    False
    """

    __slots__ = ("_vec", "_phase")

    def __init__(self, vec: GF2Vector, phase: int = 0):
        self._vec = vec
        self._phase = phase & 3

    @property
    def vec(self) -> GF2Vector:
        return self._vec

    @property
    def phase(self) -> int:
        return self._phase

    @property
    def n(self) -> int:
        return self._vec.n

    @property
    def sign(self) -> complex:
        """The scalar i^phase as a Python complex number."""
        return (1, 1j, -1, -1j)[self._phase]

    def symbols(self) -> str:
        """The unsigned symbol string, qubit 0 leftmost.

        Examples
        --------
        >>> encode_symbol_string("-IXZZX").symbols()
        'IXZZX'
        """
        v = self._vec
        return "".join(
            _QP_TO_SYMBOL[(v.q(j), v.p(j))] for j in range(v.n)
        )

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if not isinstance(other, PauliOperator):
            return NotImplemented
        a, b = self._vec, other._vec
        if a.n != b.n:
            raise ValueError("dimension mismatch")
        k = self._phase + other._phase
        for j in range(a.n):
            q, p = a.q(j), a.p(j)
            q2, p2 = b.q(j), b.p(j)
            # Phase of O_(q,p) O_(q2,p2) relative to O_(q+q2, p+p2):
            # moving X^p past Z^q2 costs (-1)^(p q2), then the (-i) weights
            # of the single-qubit normal forms are rebalanced.
            k += (q ^ q2) * (p ^ p2) - q * p - q2 * p2 + 2 * p * q2
        return PauliOperator(a + b, k)

    def commutes_with(self, other: "PauliOperator") -> bool:
        """True iff the two operators commute.

        Examples
        --------
        >>> a = encode_symbol_string("XX")
        >>> a.commutes_with(encode_symbol_string("ZZ"))
        True
        >>> a.commutes_with(encode_symbol_string("ZI"))
        False
        """
        return symplectic_form(self._vec, other._vec) == 0

    def restrict(self, positions: Sequence[int]) -> "PauliOperator":
        """The operator formed by the symbols at `positions`, with phase 0.

        Signs are deliberately dropped: restricted labels are defined only
        up to sign, and any signs of interest re-enter through products of
        whole group elements.  An empty position list collapses to the
        one-qubit identity, the nearest representable stand-in for a bare
        scalar.

        Examples
        --------
        >>> encode_symbol_string("XZZXI").restrict([0, 1])
        PauliOperator('XZ')
        >>> encode_symbol_string("XZZXI").restrict([2, 3, 4])
        PauliOperator('ZXI')
        """
        if len(set(positions)) != len(positions):
            raise ValueError("positions must be distinct")
        v = self._vec
        for j in positions:
            if not 0 <= j < v.n:
                raise IndexError(f"qubit index {j} out of range")
        if not positions:
            return PauliOperator(GF2Vector(1, 0), 0)
        m = len(positions)
        bits = 0
        for i, j in enumerate(positions):
            bits |= v.q(j) << (2 * m - 1 - i)
            bits |= v.p(j) << (m - 1 - i)
        return PauliOperator(GF2Vector(m, bits), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self._vec == other._vec and self._phase == other._phase

    def __hash__(self) -> int:
        return hash((self._vec, self._phase))

    def __str__(self) -> str:
        return format_string(self)

    def __repr__(self) -> str:
        return f"PauliOperator({format_string(self)!r})"


def identity(n: int) -> PauliOperator:
    """The n-qubit identity operator with phase +1."""
    return PauliOperator(GF2Vector(n, 0), 0)


def encode_symbol_string(s: str) -> PauliOperator:
    """Parse ``sign? [IXYZ]{n}`` into a :class:`PauliOperator`.

    The optional sign prefix is one of ``+``, ``-``, ``i``, ``-i``.

    Examples
    --------
    >>> encode_symbol_string("XYZ").vec
    GF2Vector(3, 0b011110)
    >>> encode_symbol_string("IIIII").phase
    0
    >>> encode_symbol_string("-IYYZ")
    PauliOperator('-IYYZ')
    >>> encode_symbol_string("iW")
    Traceback (most recent call last):
        ...
    ValueError: illegal Pauli symbol 'W' in 'iW'
    """
    body = s
    phase = 0
    for prefix in ("-i", "-", "+", "i"):
        if s.startswith(prefix):
            phase = _SIGN_TO_PHASE[prefix]
            body = s[len(prefix):]
            break
    if not body:
        raise ValueError(f"empty symbol string in {s!r}")
    qbits = pbits = 0
    for c in body:
        if c not in _SYMBOL_TO_QP:
            raise ValueError(f"illegal Pauli symbol {c!r} in {s!r}")
        q, p = _SYMBOL_TO_QP[c]
        qbits = (qbits << 1) | q
        pbits = (pbits << 1) | p
    n = len(body)
    return PauliOperator(GF2Vector(n, (qbits << n) | pbits), phase)


def format_string(a: PauliOperator) -> str:
    """Format as ``sign? [IXYZ]{n}``; the inverse of :func:`encode_symbol_string`.

    Examples
    --------
    >>> format_string(encode_symbol_string("XZZXI") * encode_symbol_string("IXZZX"))
    'XYIYX'
    """
    return _PHASE_TO_SIGN[a.phase] + a.symbols()


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Group product a*b with exact phase tracking."""
    return a * b


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True iff a and b commute (symplectic form of the vectors is 0)."""
    return a.commutes_with(b)


def restrict(a: PauliOperator, positions: Sequence[int]) -> PauliOperator:
    """Restriction of a to the given qubit positions, phase dropped."""
    return a.restrict(positions)


def permute_positions(a: PauliOperator, perm: Sequence[int]) -> PauliOperator:
    """Relabel qubits: the symbol at position j moves to position perm[j].

    The phase is unchanged because the phase convention is a product of
    per-qubit factors, so reordering the factors cannot alter it.

    Examples
    --------
    >>> format_string(permute_positions(encode_symbol_string("-XYZ"), (2, 0, 1)))
    '-YZX'
    """
    n = a.vec.n
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of range(n)")
    bits = 0
    for j in range(n):
        t = perm[j]
        bits |= a.vec.q(j) << (2 * n - 1 - t)
        bits |= a.vec.p(j) << (n - 1 - t)
    return PauliOperator(GF2Vector(n, bits), a.phase)


def product(ops: Iterable[PauliOperator]) -> PauliOperator:
    """Product of a sequence of operators, left to right; empty input is invalid."""
    result: PauliOperator | None = None
    for op in ops:
        result = op if result is None else result * op
    if result is None:
        raise ValueError("product of no operators is ambiguous; pass at least one")
    return result
