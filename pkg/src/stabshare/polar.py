"""Symplectic polar spaces over GF(2), doily spreads and the line-to-point map.

Everything is enumerated exhaustively; the spaces involved are small enough
that closed-form counts can be checked on every construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .codes import Context, negative_planes_heptacode
from .gf2 import (
    GF2Vector,
    Subspace,
    enumerate_subspaces,
    quadratic_form,
    span,
    symplectic_form,
)
from .pauli import PauliOperator, encode_symbol_string

__all__ = [
    "PolarSpace",
    "Spread",
    "KleinPoint",
    "KleinDoily",
    "PluckerPairReport",
    "build_polar_space",
    "quadric_points",
    "plucker_line_map",
    "klein_real_doily",
    "doily_spreads",
    "heptacode_plane_point_pairs",
    "verify_plucker_plane_pairs",
]


def _isotropic_count(n: int, rank: int) -> int:
    # number of totally isotropic rank-k subspaces of a 2n-dimensional
    # symplectic GF(2) space
    num = 1
    den = 1
    for i in range(rank):
        num *= (1 << (2 * (n - i))) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


@dataclass(frozen=True)
class PolarSpace:
    """A rank-n symplectic polar space with all its isotropic subspaces."""

    n: int
    points: tuple[GF2Vector, ...]
    isotropic_subspaces: dict[int, tuple[Subspace, ...]]

    def subspaces(self, rank: int) -> tuple[Subspace, ...]:
        return self.isotropic_subspaces[rank]

    @property
    def lines(self) -> tuple[Subspace, ...]:
        return self.isotropic_subspaces[2]

    @property
    def generators(self) -> tuple[Subspace, ...]:
        # maximal totally isotropic subspaces
        return self.isotropic_subspaces[self.n]


@lru_cache(maxsize=None)
def build_polar_space(n: int) -> PolarSpace:
    """Fully enumerated polar space of rank n, counts verified on the way."""
    if not 2 <= n <= 4:
        raise ValueError("polar spaces are built for ranks 2 through 4")
    points = tuple(GF2Vector(n, b) for b in range(1, 1 << (2 * n)))
    per_rank = {
        rank: tuple(enumerate_subspaces(n, rank, "totally_isotropic"))
        for rank in range(1, n + 1)
    }
    if len(points) != (1 << (2 * n)) - 1:
        raise RuntimeError("point count off")
    for rank, subs in per_rank.items():
        if len(subs) != _isotropic_count(n, rank):
            raise RuntimeError(
                f"rank-{rank} subspace count {len(subs)} does not match "
                f"the closed form {_isotropic_count(n, rank)}"
            )
    return PolarSpace(n=n, points=points, isotropic_subspaces=per_rank)


def quadric_points(n: int) -> frozenset[GF2Vector]:
    """All nonzero vectors with vanishing quadratic form, a hyperbolic quadric."""
    if not 1 <= n <= 4:
        raise ValueError("quadrics are built for ranks 1 through 4")
    return frozenset(
        v
        for b in range(1, 1 << (2 * n))
        if quadratic_form(v := GF2Vector(n, b)) == 0
    )


@dataclass(frozen=True)
class KleinPoint:
    """Image of a projective line of PG(3,2) under the wedge coordinates."""

    plucker: GF2Vector  # (p01, p02, p03 | p23, p13, p12), see plucker_line_map
    source_line: Subspace

    def __post_init__(self):
        if self.plucker.n != 3 or self.source_line.n != 2:
            raise ValueError("a Klein point lives in V(6,2) over a line of V(4,2)")
        if quadratic_form(self.plucker) != 0:
            raise ValueError("Klein points must satisfy the quadric equation")


def plucker_line_map(line: Subspace) -> KleinPoint:
    """Plücker image of a rank-2 subspace of V(4,2).

    The six wedge coordinates p_uv = x_u y_v + x_v y_u are packed in the
    order (p01, p02, p03 | p23, p13, p12), which turns the quadric equation
    p01 p23 + p02 p13 + p03 p12 = 0 into the standard quadratic form of
    V(6,2).  The image does not depend on the choice of generators.
    """
    if line.n != 2 or line.rank != 2:
        raise ValueError("the map takes rank-2 subspaces of V(4,2)")
    x, y = (g.components() for g in line.generators)
    p = {
        (u, v): (x[u] & y[v]) ^ (x[v] & y[u]) for u, v in combinations(range(4), 2)
    }
    comps = (p[0, 1], p[0, 2], p[0, 3], p[2, 3], p[1, 3], p[1, 2])
    return KleinPoint(GF2Vector.from_components(comps), line)


@dataclass(frozen=True)
class KleinDoily:
    """Collinearity structure on the images of the 15 isotropic lines.

    Two vertices are adjacent when their source lines share a point; the
    light rays are the triples of pairwise-adjacent vertices whose wedge
    coordinates sum to zero.
    """

    points: tuple[KleinPoint, ...]
    lines: tuple[tuple[int, int, int], ...]
    adjacent_pairs: frozenset[tuple[int, int]]

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.adjacent_pairs


def klein_real_doily() -> KleinDoily:
    """The doily carried by the quadric images of the 15 isotropic lines."""
    doily = build_polar_space(2)
    points = tuple(plucker_line_map(line) for line in doily.lines)
    if len({kp.plucker.bits for kp in points}) != 15:
        raise RuntimeError("the fifteen isotropic lines must map to distinct points")
    adjacent = set()
    for i, j in combinations(range(15), 2):
        meet = span(points[i].source_line.generators + points[j].source_line.generators)
        # two distinct lines of PG(3,2) intersect iff together they span a plane
        if meet.rank == 3:
            adjacent.add((i, j))
    lines = []
    for i, j in combinations(range(15), 2):
        k_bits = points[i].plucker.bits ^ points[j].plucker.bits
        for k in range(j + 1, 15):
            if points[k].plucker.bits == k_bits:
                lines.append((i, j, k))
    if len(lines) != 15:
        raise RuntimeError("expected fifteen light rays")
    for i, j, k in lines:
        if not {(i, j), (i, k), (j, k)} <= adjacent:
            raise RuntimeError("a light ray must be pairwise adjacent")
    return KleinDoily(
        points=points, lines=tuple(lines), adjacent_pairs=frozenset(adjacent)
    )


@dataclass(frozen=True)
class Spread:
    """Five pairwise disjoint isotropic lines covering all 15 doily points."""

    lines: tuple[Subspace, ...]

    def __post_init__(self):
        if len(self.lines) != 5:
            raise ValueError("a spread has exactly five lines")
        seen: set[int] = set()
        for line in self.lines:
            if line.n != 2 or line.rank != 2:
                raise ValueError("spread lines are rank-2 subspaces of V(4,2)")
            seen.update(line.point_bits)
        if len(seen) != 15:
            raise ValueError("spread lines must partition the fifteen points")


def doily_spreads() -> tuple[Spread, ...]:
    """All partitions of the doily's points into five disjoint lines."""
    lines = build_polar_space(2).lines
    line_bits = [frozenset(line.point_bits) for line in lines]
    spreads: list[Spread] = []

    def extend(chosen: tuple[int, ...], covered: frozenset[int]) -> None:
        if len(chosen) == 5:
            spreads.append(Spread(tuple(lines[i] for i in chosen)))
            return
        # branch on the smallest uncovered point so each spread appears once
        target = min(set(range(1, 16)) - covered)
        start = chosen[-1] + 1 if chosen else 0
        for i in range(start, 15):
            if target in line_bits[i] and not (line_bits[i] & covered):
                extend(chosen + (i,), covered | line_bits[i])

    extend((), frozenset())
    if len(spreads) != 6:
        raise RuntimeError(f"expected six spreads, found {len(spreads)}")
    return tuple(spreads)


# the nine plane-to-point pairs of the line-to-point correspondence, keyed
# by (recovery position, color)
_PLANE_POINTS = {
    (2, "blue"): "IYYI",
    (2, "red"): "IXXI",
    (2, "green"): "IZZI",
    (4, "blue"): "IYIY",
    (4, "red"): "IXIX",
    (4, "green"): "IZIZ",
    (5, "blue"): "IIYY",
    (5, "red"): "IIXX",
    (5, "green"): "IIZZ",
}


def heptacode_plane_point_pairs() -> tuple[tuple[tuple[PauliOperator, ...], PauliOperator], ...]:
    """The nine (plane labels, four-qubit point) pairs, in slot-color order."""
    pairs = []
    for triple in negative_planes_heptacode():
        for plane in triple.planes:
            point = encode_symbol_string(
                _PLANE_POINTS[triple.recovery_position, plane.color]
            )
            pairs.append((plane.left_labels, point))
    return tuple(pairs)


@dataclass(frozen=True)
class PluckerPairReport:
    """Outcome of the structural checks on the nine plane-to-point pairs."""

    symmetric: bool  # every point observable has an even number of Y factors
    commutes_with_yiii: bool
    grid_lines: tuple[Context, ...]
    grid_ok: bool  # six lines, three negative (mixed color), three positive
    intersections_ok: bool  # point for same color, line for same slot, else none
    collinearity_ok: bool  # commuting points exactly where planes intersect

    @property
    def passed(self) -> bool:
        return (
            self.symmetric
            and self.commutes_with_yiii
            and self.grid_ok
            and self.intersections_ok
            and self.collinearity_ok
        )


_ANCHOR_COLOR = {"YYY": "blue", "ZZZ": "red", "XXX": "green"}


def verify_plucker_plane_pairs(pairs) -> PluckerPairReport:
    """Check the structural claims tying the nine planes to quadric points.

    Each pair is (seven three-qubit plane labels, one four-qubit observable).
    Verified: the observables are symmetric and commute with YIII; they form
    a three-by-three grid whose mixed-color lines are negative and
    same-color lines positive; planes of one color meet in their color
    point, planes paired with collinear observables meet in a line, and all
    other plane pairs are disjoint.
    """
    pairs = list(pairs)
    if len(pairs) != 9:
        raise ValueError("expected nine plane-to-point pairs")
    planes: list[frozenset[int]] = []
    colors: list[str] = []
    obs: list[PauliOperator] = []
    for plane, point in pairs:
        plane = tuple(plane)
        if len(plane) != 7 or any(p.vec.n != 3 for p in plane):
            raise ValueError("each plane needs seven three-qubit labels")
        if point.vec.n != 4:
            raise ValueError("each point must be a four-qubit observable")
        anchors = {p.symbols() for p in plane} & set(_ANCHOR_COLOR)
        if len(anchors) != 1:
            raise ValueError("each plane must carry exactly one color anchor")
        planes.append(frozenset(p.vec.bits for p in plane))
        colors.append(_ANCHOR_COLOR[anchors.pop()])
        obs.append(point)
    if len({o.vec.bits for o in obs}) != 9:
        raise ValueError("the nine point observables must be distinct")

    symmetric = all(quadratic_form(o.vec) == 0 for o in obs)
    anchor = encode_symbol_string("YIII")
    commutes = all(o.commutes_with(anchor) for o in obs)

    # grid lines are triples of point observables multiplying to identity
    grid_lines = []
    line_colors = []
    for i, j in combinations(range(9), 2):
        k_bits = obs[i].vec.bits ^ obs[j].vec.bits
        for k in range(j + 1, 9):
            if obs[k].vec.bits == k_bits:
                grid_lines.append(Context((obs[i], obs[j], obs[k]), "line"))
                line_colors.append({colors[i], colors[j], colors[k]})
    negative = [c for c, cols in zip(grid_lines, line_colors) if c.sign == -1]
    positive = [c for c, cols in zip(grid_lines, line_colors) if c.sign == 1]
    grid_ok = (
        len(grid_lines) == 6
        and len(negative) == 3
        and len(positive) == 3
        and all(
            len(cols) == 3
            for c, cols in zip(grid_lines, line_colors)
            if c.sign == -1
        )
        and all(
            len(cols) == 1
            for c, cols in zip(grid_lines, line_colors)
            if c.sign == 1
        )
    )

    color_point = {"blue": "YYY", "red": "ZZZ", "green": "XXX"}
    intersections_ok = True
    collinearity_ok = True
    for i, j in combinations(range(9), 2):
        meet = planes[i] & planes[j]
        if colors[i] == colors[j]:
            expected = {encode_symbol_string(color_point[colors[i]]).vec.bits}
            if meet != expected:
                intersections_ok = False
        elif len(meet) not in (0, 3):
            intersections_ok = False
        if (symplectic_form(obs[i].vec, obs[j].vec) == 0) != bool(meet):
            collinearity_ok = False

    return PluckerPairReport(
        symmetric=symmetric,
        commutes_with_yiii=commutes,
        grid_lines=tuple(grid_lines),
        grid_ok=grid_ok,
        intersections_ok=intersections_ok,
        collinearity_ok=collinearity_ok,
    )
