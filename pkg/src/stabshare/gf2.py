"""Bit-exact linear algebra over GF(2) for spaces V(2n, 2) with n <= 7.

A vector packs its 2n components (q0, ..., q_{n-1}, p0, ..., p_{n-1}) into a
single machine word, component j at bit position 2n-1-j.  The binary literal
therefore reads left to right in component order: the vector with components
(0,1,1,1,1,0) is the integer 0b011110.

All values are immutable; every function is pure.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator

__all__ = [
    "GF2Vector",
    "Subspace",
    "symplectic_form",
    "quadratic_form",
    "transvection",
    "span",
    "is_totally_isotropic",
    "enumerate_subspaces",
]

MAX_QUBITS = 7


def _symp_bits(a: int, b: int, n: int) -> int:
    # Raw-integer symplectic form: sum_i (q_i p'_i + q'_i p_i) mod 2.
    pmask = (1 << n) - 1
    return (((a >> n) & b & pmask) ^ ((b >> n) & a & pmask)).bit_count() & 1


def _quad_bits(a: int, n: int) -> int:
    # Raw-integer quadratic form: sum_i q_i p_i mod 2.
    return ((a >> n) & a & ((1 << n) - 1)).bit_count() & 1


class GF2Vector:
    """Immutable vector of V(2n, 2) in the (q-block, p-block) layout."""

    __slots__ = ("_n", "_bits")

    def __init__(self, n: int, bits: int):
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"need 1 <= n <= {MAX_QUBITS}, got {n}")
        if not 0 <= bits < (1 << (2 * n)):
            raise ValueError(f"bits out of range for n={n}: {bits}")
        self._n = n
        self._bits = bits

    @classmethod
    def zero(cls, n: int) -> "GF2Vector":
        return cls(n, 0)

    @classmethod
    def from_components(cls, comps: Iterable[int]) -> "GF2Vector":
        """Build from the component sequence (q0, ..., p_{n-1})."""
        comps = list(comps)
        if len(comps) % 2:
            raise ValueError("component count must be even")
        bits = 0
        for c in comps:
            bits = (bits << 1) | (c & 1)
        return cls(len(comps) // 2, bits)

    @property
    def n(self) -> int:
        return self._n

    @property
    def bits(self) -> int:
        return self._bits

    def component(self, j: int) -> int:
        """Component j of (q0, ..., q_{n-1}, p0, ..., p_{n-1})."""
        if not 0 <= j < 2 * self._n:
            raise IndexError(f"component index {j} out of range")
        return (self._bits >> (2 * self._n - 1 - j)) & 1

    def q(self, i: int) -> int:
        return self.component(i)

    def p(self, i: int) -> int:
        return self.component(self._n + i)

    def components(self) -> tuple[int, ...]:
        return tuple(self.component(j) for j in range(2 * self._n))

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        if not isinstance(other, GF2Vector):
            return NotImplemented
        if other._n != self._n:
            raise ValueError("dimension mismatch")
        return GF2Vector(self._n, self._bits ^ other._bits)

    __xor__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Vector):
            return NotImplemented
        return self._n == other._n and self._bits == other._bits

    def __lt__(self, other: "GF2Vector") -> bool:
        if not isinstance(other, GF2Vector):
            return NotImplemented
        return (self._n, self._bits) < (other._n, other._bits)

    def __hash__(self) -> int:
        return hash((self._n, self._bits))

    def __bool__(self) -> bool:
        return self._bits != 0

    def __repr__(self) -> str:
        return f"GF2Vector({self._n}, 0b{self._bits:0{2 * self._n}b})"


def symplectic_form(u: GF2Vector, v: GF2Vector) -> int:
    """<u, v> = sum_i (q_i p'_i + q'_i p_i) mod 2; 0 iff the observables commute."""
    if u.n != v.n:
        raise ValueError("dimension mismatch")
    return _symp_bits(u.bits, v.bits, u.n)


def quadratic_form(v: GF2Vector) -> int:
    """Q(v) = sum_i q_i p_i mod 2; 1 iff the observable has an odd number of Y factors.

    Q polarizes to the symplectic form: Q(u+v) + Q(u) + Q(v) = <u, v>.
    """
    return _quad_bits(v.bits, v.n)


def transvection(w: GF2Vector, v: GF2Vector) -> GF2Vector:
    """T_w(v) = v + <v, w> w.  Transvections preserve the symplectic form."""
    if w.n != v.n:
        raise ValueError("dimension mismatch")
    if _symp_bits(v.bits, w.bits, v.n):
        return v + w
    return v


def _rref(rows: Iterable[int]) -> tuple[int, ...]:
    # Reduced row echelon form of a set of bit-packed rows, sorted so the
    # leading (leftmost) pivot comes first.  The result is the canonical
    # representative of the row space.
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis = [min(b, b ^ row) for b in basis]
            basis.append(row)
    basis.sort(reverse=True)
    return tuple(basis)


class Subspace:
    """A linear subspace of V(2n, 2), held by its canonical RREF generators."""

    __slots__ = ("_n", "_rows", "__dict__")

    def __init__(self, n: int, generators: Iterable[GF2Vector]):
        rows = []
        for g in generators:
            if g.n != n:
                raise ValueError("dimension mismatch")
            rows.append(g.bits)
        self._n = n
        self._rows = _rref(rows)

    @classmethod
    def _from_rref(cls, n: int, rows: tuple[int, ...]) -> "Subspace":
        # Internal fast path: rows must already be canonical RREF.
        self = object.__new__(cls)
        self._n = n
        self._rows = rows
        return self

    @property
    def n(self) -> int:
        return self._n

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def generators(self) -> tuple[GF2Vector, ...]:
        return tuple(GF2Vector(self._n, r) for r in self._rows)

    @cached_property
    def point_bits(self) -> tuple[int, ...]:
        """All 2^rank - 1 nonzero vectors of the span, ascending, as raw bits."""
        sums = [0]
        for r in self._rows:
            sums += [s ^ r for s in sums]
        return tuple(sorted(sums[1:]))

    @property
    def points(self) -> tuple[GF2Vector, ...]:
        return tuple(GF2Vector(self._n, b) for b in self.point_bits)

    def contains(self, v: GF2Vector) -> bool:
        if v.n != self._n:
            raise ValueError("dimension mismatch")
        b = v.bits
        for r in self._rows:
            b = min(b, b ^ r)
        return b == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        gens = ", ".join(f"0b{r:0{2 * self._n}b}" for r in self._rows)
        return f"Subspace({self._n}, [{gens}])"


def span(gens: Iterable[GF2Vector], n: int | None = None) -> Subspace:
    """Subspace spanned by the given vectors; dependent generators are dropped.

    An empty generator list yields the rank-0 subspace, but then the ambient
    qubit count n must be passed explicitly.
    """
    gens = list(gens)
    if not gens:
        if n is None:
            raise ValueError("empty span needs an explicit ambient dimension n")
        return Subspace(n, [])
    return Subspace(gens[0].n, gens)


def is_totally_isotropic(s: Subspace) -> bool:
    """True iff the symplectic form vanishes on the whole subspace.

    Checking generator pairs suffices by bilinearity (char 2 kills <v, v>).
    """
    rows = s._rows
    n = s.n
    return all(
        _symp_bits(a, b, n) == 0 for a, b in itertools.combinations(rows, 2)
    )


def _fill_rref(
    n: int,
    pivots: tuple[int, ...],
    isotropic: bool,
) -> Iterator[tuple[int, ...]]:
    # Enumerate all RREF matrices with the given pivot columns, pruning on the
    # pairwise symplectic condition as soon as a row is complete.
    m = 2 * n
    pivot_set = set(pivots)
    free_cols = [
        [c for c in range(p + 1, m) if c not in pivot_set] for p in pivots
    ]

    def rec(i: int, rows: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == len(pivots):
            yield rows
            return
        base = 1 << (m - 1 - pivots[i])
        cols = free_cols[i]
        for choice in range(1 << len(cols)):
            row = base
            for k, c in enumerate(cols):
                if (choice >> k) & 1:
                    row |= 1 << (m - 1 - c)
            if isotropic and any(_symp_bits(row, r, n) for r in rows):
                continue
            yield from rec(i + 1, rows + (row,))

    yield from rec(0, ())


def enumerate_subspaces(n: int, rank: int, filter: str = "all") -> Iterator[Subspace]:
    """Yield every rank-`rank` subspace of V(2n, 2) exactly once.

    `filter` is "all" or "totally_isotropic".  Subspaces come out in
    lexicographic order of their sorted point lists; each is represented by
    its canonical RREF generator matrix, so no duplicates are possible.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"need 1 <= n <= {MAX_QUBITS}, got {n}")
    if filter not in ("all", "totally_isotropic"):
        raise ValueError(f"unknown filter {filter!r}")
    if not 1 <= rank <= 2 * n:
        raise ValueError(f"rank {rank} out of range for V({2 * n}, 2)")
    if filter == "totally_isotropic" and rank > n:
        raise ValueError(f"totally isotropic subspaces have rank <= {n}")

    isotropic = filter == "totally_isotropic"
    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for pivots in itertools.combinations(range(2 * n), rank):
        for rows in _fill_rref(n, pivots, isotropic):
            sums = [0]
            for r in rows:
                sums += [s ^ r for s in sums]
            found.append((tuple(sorted(sums[1:])), rows))
    found.sort()
    for point_bits, rows in found:
        s = Subspace._from_rref(n, tuple(sorted(rows, reverse=True)))
        s.__dict__["point_bits"] = point_bits
        yield s
