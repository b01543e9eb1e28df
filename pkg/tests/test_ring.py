"""Tests for the exact amplitude ring."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from stabshare.ring import (
    Amplitude,
    ZERO,
    ONE,
    IUNIT,
    HALF,
    SQRT2,
    INV_SQRT2,
    PHASE_GROUP,
)

COMPONENT = st.integers(min_value=-64, max_value=64)


@st.composite
def amplitudes(draw):
    return Amplitude(
        draw(COMPONENT),
        draw(COMPONENT),
        draw(COMPONENT),
        draw(COMPONENT),
        draw(st.integers(min_value=0, max_value=6)),
    )


def approx_equal(a: Amplitude, z: complex) -> bool:
    return abs(complex(a) - z) < 1e-9


def test_canonical_reduction():
    a = Amplitude(2, 4, -6, 8, 3)
    assert (a.x, a.y, a.k) == ((1, 2), (-3, 4), 2)
    assert Amplitude(0, 0, 0, 0, 5) == ZERO
    assert Amplitude(4, 0, 0, 0, 2) == ONE
    with pytest.raises(ValueError):
        Amplitude(1, 0, 0, 0, -1)


def test_equality_is_canonical():
    assert Amplitude(2, 0, 0, 0, 1) == Amplitude(1, 0, 0, 0, 0) == 1
    assert Amplitude(1, 0, 0, 0, 1) != Amplitude(1, 0, 0, 0, 2)
    assert hash(Amplitude(2, 2, 0, 0, 1)) == hash(Amplitude(1, 1, 0, 0, 0))
    assert ONE != SQRT2


def test_constants():
    assert approx_equal(ZERO, 0)
    assert approx_equal(ONE, 1)
    assert approx_equal(IUNIT, 1j)
    assert approx_equal(HALF, 0.5)
    assert approx_equal(SQRT2, math.sqrt(2))
    assert approx_equal(INV_SQRT2, 1 / math.sqrt(2))
    assert SQRT2 * INV_SQRT2 == ONE
    assert INV_SQRT2 * INV_SQRT2 == HALF


@given(amplitudes(), amplitudes())
def test_add_matches_complex(a, b):
    assert approx_equal(a + b, complex(a) + complex(b))


@given(amplitudes(), amplitudes())
def test_mul_matches_complex(a, b):
    assert approx_equal(a * b, complex(a) * complex(b))


@given(amplitudes(), amplitudes(), amplitudes())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a + (-a) == ZERO


@given(amplitudes())
def test_int_mixing(a):
    assert a + 1 == a + ONE
    assert 1 + a == a + ONE
    assert a - 1 == a - ONE
    assert 1 - a == ONE - a
    assert 3 * a == a * Amplitude.integer(3)


@given(amplitudes())
def test_conjugate(a):
    assert approx_equal(a.conjugate(), complex(a).conjugate())
    assert a.conjugate().conjugate() == a


@given(amplitudes())
def test_norm_squared_real_nonnegative(a):
    n = a.norm_squared()
    assert n.is_real()
    assert complex(n).real >= -1e-12
    assert bool(n) == bool(a)


def test_norm_squared_can_keep_sqrt2_part():
    # (1 + sqrt2) is real, so its norm squared is its square: 3 + 2*sqrt2.
    a = ONE + SQRT2
    assert a.norm_squared() == Amplitude(3, 0, 2, 0, 0)
    # Pure amplitudes (one of x, y zero) always give a rational norm.
    assert Amplitude(3, 4, 0, 0, 2).norm_squared().is_rational()
    assert Amplitude(0, 0, 3, -4, 2).norm_squared().is_rational()


@given(amplitudes(), st.integers(min_value=0, max_value=7))
def test_times_i_power(a, t):
    assert a.times_i_power(t) == a * _ipow(t)
    assert approx_equal(a.times_i_power(t), complex(a) * (1j ** t))


def _ipow(t: int) -> Amplitude:
    out = ONE
    for _ in range(t % 4):
        out = out * IUNIT
    return out


def test_division():
    assert ONE / SQRT2 == INV_SQRT2
    assert ONE / IUNIT == -IUNIT
    assert (ONE + IUNIT) / Amplitude.integer(2) == Amplitude(1, 1, 0, 0, 1)
    assert SQRT2 / 2 == INV_SQRT2
    assert HALF / HALF == ONE
    assert (SQRT2 * 3) / SQRT2 == Amplitude.integer(3)
    with pytest.raises(ValueError):
        ONE / (ONE + SQRT2)
    with pytest.raises(ValueError):
        ONE / Amplitude.integer(3)
    with pytest.raises(ValueError):
        ONE / ZERO


def test_rational_predicates():
    assert HALF.is_rational()
    assert not SQRT2.is_rational()
    assert not IUNIT.is_rational()
    assert Amplitude(-3, 0, 0, 0, 2).as_integer_ratio() == (-3, 4)
    with pytest.raises(ValueError):
        SQRT2.as_integer_ratio()


def test_power_of_two_exponent():
    assert ONE.power_of_two_exponent() == 0
    assert HALF.power_of_two_exponent() == -1
    assert Amplitude.integer(8).power_of_two_exponent() == 3
    assert Amplitude(1, 0, 0, 0, 4).power_of_two_exponent() == -4
    for bad in (ZERO, -ONE, SQRT2, IUNIT, Amplitude.integer(3)):
        with pytest.raises(ValueError):
            bad.power_of_two_exponent()


@given(st.integers(min_value=-6, max_value=6))
def test_inv_sqrt_on_two_powers(t):
    value = ONE
    base = Amplitude.integer(2) if t >= 0 else HALF
    for _ in range(abs(t)):
        value = value * base
    r = value.inv_sqrt()
    assert r * r * value == ONE
    assert complex(r).real > 0 and complex(r).imag == 0


def test_inv_sqrt_rejects_non_two_powers():
    with pytest.raises(ValueError):
        SQRT2.inv_sqrt()
    with pytest.raises(ValueError):
        Amplitude.integer(3).inv_sqrt()


@given(amplitudes())
def test_dump_round_trip(a):
    assert Amplitude.parse_dump(a.dump()) == a


def test_dump_format():
    assert Amplitude(1, -1, 0, 2, 3).dump() == "1,-1,0,2,3"
    # dump always reflects the canonical form
    assert Amplitude(2, -2, 0, 4, 3).dump() == "1,-1,0,2,2"
    assert ZERO.dump() == "0,0,0,0,0"
    with pytest.raises(ValueError):
        Amplitude.parse_dump("1,2,3")


def test_phase_group():
    assert len(set(PHASE_GROUP)) == 8
    for p in PHASE_GROUP:
        assert p.norm_squared() == ONE
        assert abs(abs(complex(p)) - 1) < 1e-12
    # Each phase is a power of the first nontrivial eighth root.
    omega = Amplitude(0, 0, 1, 1, 1)
    assert approx_equal(omega, (1 + 1j) / math.sqrt(2))
    powers = {ONE}
    cur = ONE
    for _ in range(7):
        cur = cur * omega
        powers.add(cur)
    assert powers == set(PHASE_GROUP)
    assert cur * omega == ONE


def test_str_forms():
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(IUNIT) == "i"
    assert str(SQRT2) == "sqrt2"
    assert str(INV_SQRT2) == "sqrt2/2"
    assert str(Amplitude(1, 1, 0, 0, 1)) == "(1+i)/2"
    assert str(-ONE) == "-1"
