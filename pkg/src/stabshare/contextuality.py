"""Sign-assignment satisfiability over GF(2) and the degree of contextuality.

An incidence system asks for one sign per point such that every context
multiplies out to its observed sign.  With x_p = 1 encoding a flipped point,
context c is satisfied iff sum_{p in c} x_p = rhs_c (mod 2), so the degree
of contextuality is the minimum Hamming weight of rhs + Ax, the coset
distance of rhs from the column space of the incidence matrix A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .codes import context_sign
from .gf2 import GF2Vector, enumerate_subspaces
from .pauli import PauliOperator

__all__ = [
    "IncidenceSystem",
    "DegreeResult",
    "contextuality_degree",
    "max_stabilizer_lift",
    "plane_contextuality_w52",
]

_SCAN_LIMIT = 24  # exhaustive search is allowed up to 2^24 combinations
_BALL_CAP = 200_000  # largest error-ball layer the bound mode scans exactly


@dataclass(frozen=True)
class IncidenceSystem:
    """Points, contexts as point-index tuples, and one parity bit per context.

    rhs_c is 1 exactly when context c is negative.
    """

    points: tuple[str, ...]
    contexts: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        norm = []
        for ctx in self.contexts:
            ctx = tuple(sorted(set(ctx)))
            if not ctx:
                raise ValueError("contexts must not be empty")
            if ctx[0] < 0 or ctx[-1] >= len(self.points):
                raise ValueError("context references a point that does not exist")
            norm.append(ctx)
        object.__setattr__(self, "contexts", tuple(norm))
        rhs = tuple(int(b) for b in self.rhs)
        if len(rhs) != len(norm):
            raise ValueError("need exactly one sign bit per context")
        if any(b not in (0, 1) for b in rhs):
            raise ValueError("sign bits must be 0 or 1")
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True)
class DegreeResult:
    """Outcome of a degree computation; exact iff the interval collapses."""

    lower: int
    upper: int
    witness: tuple[int, ...]  # one flip bit per point
    violated: tuple[int, ...]  # context indices the witness leaves unsatisfied
    exact: bool

    @property
    def degree(self) -> int | None:
        return self.upper if self.exact else None


def _columns(sys: IncidenceSystem) -> list[int]:
    # column j of the incidence matrix, packed over contexts
    cols = [0] * len(sys.points)
    for c, ctx in enumerate(sys.contexts):
        for p in ctx:
            cols[p] |= 1 << c
    return cols


def _rhs_bits(sys: IncidenceSystem) -> int:
    bits = 0
    for c, b in enumerate(sys.rhs):
        bits |= b << c
    return bits


def _result(sys: IncidenceSystem, lower: int, upper: int, x: int) -> DegreeResult:
    m = len(sys.points)
    witness = tuple((x >> (m - 1 - j)) & 1 for j in range(m))
    violated = []
    for c, ctx in enumerate(sys.contexts):
        parity = 0
        for p in ctx:
            parity ^= witness[p]
        if parity != sys.rhs[c]:
            violated.append(c)
    if len(violated) != upper:
        raise RuntimeError("witness does not achieve the reported violation count")
    return DegreeResult(
        lower=lower,
        upper=upper,
        witness=witness,
        violated=tuple(violated),
        exact=lower == upper,
    )


def _block_table(cols: list[int]) -> list[int]:
    # XOR of the chosen columns for every bit pattern, pattern bit 0 = last column
    k = len(cols)
    out = [0] * (1 << k)
    for pattern in range(1, 1 << k):
        low = (pattern & -pattern).bit_length() - 1
        out[pattern] = out[pattern & (pattern - 1)] ^ cols[k - 1 - low]
    return out


def _scan_points(cols: list[int], rhs_bits: int, m: int) -> tuple[int, int]:
    # ascending scan over all assignments; the first optimum is the lex-least
    h = m // 2
    low_width = m - h
    high = _block_table(cols[:h])
    low = _block_table(cols[h:])
    best_w = rhs_bits.bit_count()
    best_x = 0
    for xh in range(1 << h):
        base = high[xh] ^ rhs_bits
        if best_w == 0:
            break
        offset = xh << low_width
        for xl in range(1 << low_width):
            w = (base ^ low[xl]).bit_count()
            if w < best_w:
                best_w = w
                best_x = offset | xl
                if w == 0:
                    break
    return best_w, best_x


class _ColumnSpace:
    # Gaussian elimination over the columns, remembering for every pivot a
    # point combination producing it and, for dependent columns, the kernel.

    def __init__(self, cols: list[int], m: int):
        self.m = m
        self.pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (vec, combo)
        kernel = []
        for j, col in enumerate(cols):
            v, combo = col, 1 << (m - 1 - j)
            while v:
                lead = 1 << (v.bit_length() - 1)
                if lead not in self.pivots:
                    self.pivots[lead] = (v, combo)
                    break
                pv, pc = self.pivots[lead]
                v ^= pv
                combo ^= pc
            else:
                kernel.append(combo)
        # reduced form of the kernel, so coset leaders become canonical
        self.kernel: list[int] = []
        for row in sorted(kernel, reverse=True):
            for kr in self.kernel:
                row = min(row, row ^ kr)
            if row:
                self.kernel = [min(kr, kr ^ row) for kr in self.kernel]
                self.kernel.append(row)
        self.kernel.sort(reverse=True)

    def lex_min(self, x: int) -> int:
        # smallest representative of x + kernel, zeroing pivot bits from the top
        for row in self.kernel:
            if x & (1 << (row.bit_length() - 1)):
                x ^= row
        return x

    def reduce(self, v: int) -> tuple[int, int]:
        # returns (remainder, combo); remainder 0 means v is in the span
        combo = 0
        while v:
            lead = 1 << (v.bit_length() - 1)
            if lead not in self.pivots:
                return v, combo
            pv, pc = self.pivots[lead]
            v ^= pv
            combo ^= pc
        return 0, combo


def _scan_columns(space: _ColumnSpace, rhs_bits: int) -> tuple[int, int]:
    # walk the whole column space in Gray-code order
    items = list(space.pivots.values())
    best_w = rhs_bits.bit_count()
    best_x = space.lex_min(0)
    v = combo = 0
    for g in range(1, 1 << len(items)):
        vec, points = items[(g & -g).bit_length() - 1]
        v ^= vec
        combo ^= points
        w = (rhs_bits ^ v).bit_count()
        if w > best_w:
            continue
        x = space.lex_min(combo)
        if w < best_w or x < best_x:
            best_w, best_x = w, x
    return best_w, best_x


def _local_search(
    cols: list[int], rhs_bits: int, m: int, restarts: int
) -> tuple[int, int]:
    rng = random.Random(0)

    def descend(x: int) -> tuple[int, int]:
        viol = rhs_bits
        for j in range(m):
            if (x >> (m - 1 - j)) & 1:
                viol ^= cols[j]
        w = viol.bit_count()
        while True:
            best_j = None
            for j in range(m):
                nw = (viol ^ cols[j]).bit_count()
                if nw < w:
                    w, best_j = nw, j
            if best_j is None:
                return w, x
            x ^= 1 << (m - 1 - best_j)
            viol ^= cols[best_j]

    best = descend(0)
    for _ in range(restarts):
        candidate = descend(rng.getrandbits(m))
        if candidate < best:
            best = candidate
    return best


def contextuality_degree(sys: IncidenceSystem, mode: str = "exact") -> DegreeResult:
    """Minimal number of violated contexts over all point-sign assignments.

    Exact mode needs at most 24 points (assignment scan) or 24 contexts
    (column-space scan); the witness is the lexicographically smallest
    optimal assignment.  Bound mode pairs an exhaustive small-radius error
    search (which proves lower bounds, and the exact degree when it hits)
    with greedy descent restarts for the upper bound.
    """
    if mode not in ("exact", "bound"):
        raise ValueError(f"unknown mode {mode!r}")
    cols = _columns(sys)
    rhs_bits = _rhs_bits(sys)
    m = len(sys.points)
    nc = len(sys.contexts)

    if mode == "exact":
        if m <= _SCAN_LIMIT:
            w, x = _scan_points(cols, rhs_bits, m)
        elif nc <= _SCAN_LIMIT:
            w, x = _scan_columns(_ColumnSpace(cols, m), rhs_bits)
        else:
            raise ValueError(
                "exact mode needs at most 24 points or 24 contexts; use bound mode"
            )
        return _result(sys, w, w, x)

    space = _ColumnSpace(cols, m)
    radius = 0
    while comb(nc, radius) <= _BALL_CAP:
        for flips in combinations(range(nc), radius):
            e = 0
            for c in flips:
                e |= 1 << c
            remainder, combo = space.reduce(rhs_bits ^ e)
            if remainder == 0:
                # the ball search hit: the degree is exactly the radius
                return _result(sys, radius, radius, space.lex_min(combo))
        radius += 1
    upper, x = _local_search(cols, rhs_bits, m, restarts=32)
    return _result(sys, radius, upper, x)


def max_stabilizer_lift(sys: IncidenceSystem) -> tuple[int, tuple[int, ...]]:
    """Largest number of contexts one sign assignment satisfies at once."""
    result = contextuality_degree(sys, "exact")
    return len(sys.contexts) - result.upper, result.witness


def _canonical_plane_system() -> IncidenceSystem:
    # 63 unsigned three-qubit observables, 135 plane contexts, signs recomputed
    ops = [PauliOperator(GF2Vector(3, b)) for b in range(1, 64)]
    labels = tuple(op.symbols() for op in ops)
    contexts = []
    rhs = []
    for sub in enumerate_subspaces(3, 3, "totally_isotropic"):
        idxs = tuple(b - 1 for b in sub.point_bits)
        contexts.append(idxs)
        rhs.append(1 if context_sign([ops[i] for i in idxs]) == -1 else 0)
    return IncidenceSystem(labels, tuple(contexts), tuple(rhs))


def plane_contextuality_w52(sys: IncidenceSystem | None = None) -> DegreeResult:
    """Degree interval for the 135 plane contexts of the 63 observables.

    Exactness is only claimed when the interval collapses; by default the
    planes carry the signs recomputed from the unsigned observable labeling.
    """
    if sys is None:
        sys = _canonical_plane_system()
    if len(sys.points) != 63 or len(sys.contexts) != 135:
        raise ValueError("expected the 63-point, 135-plane system")
    if any(len(ctx) != 7 for ctx in sys.contexts):
        raise ValueError("every plane context must have seven points")
    return contextuality_degree(sys, "bound")
