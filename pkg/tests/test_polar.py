"""Tests for the polar spaces, the line-to-point map, spreads and pair checks."""

from itertools import combinations

import pytest

from stabshare.gf2 import (
    GF2Vector,
    enumerate_subspaces,
    is_totally_isotropic,
    quadratic_form,
    span,
    symplectic_form,
)
from stabshare.pauli import encode_symbol_string
from stabshare.polar import (
    KleinPoint,
    build_polar_space,
    doily_spreads,
    heptacode_plane_point_pairs,
    klein_real_doily,
    plucker_line_map,
    quadric_points,
    verify_plucker_plane_pairs,
)

EXPECTED_COUNTS = {
    2: {1: 15, 2: 15},
    3: {1: 63, 2: 315, 3: 135},
    4: {1: 255, 2: 5355, 3: 11475, 4: 2295},
}


def test_polar_space_counts():
    for n, by_rank in EXPECTED_COUNTS.items():
        space = build_polar_space(n)
        assert len(space.points) == (1 << (2 * n)) - 1
        assert {r: len(s) for r, s in space.isotropic_subspaces.items()} == by_rank
        assert len(space.lines) == by_rank[2]
        assert len(space.generators) == by_rank[n]


def test_polar_space_rank_range():
    with pytest.raises(ValueError):
        build_polar_space(1)
    with pytest.raises(ValueError):
        build_polar_space(5)


def test_quadric_cardinalities():
    for n in (1, 2, 3, 4):
        points = quadric_points(n)
        assert len(points) == ((1 << (n - 1)) + 1) * ((1 << n) - 1)
        assert all(quadratic_form(v) == 0 for v in points)


def test_quadric_rank_one_is_x_and_z():
    assert quadric_points(1) == {GF2Vector(1, 0b01), GF2Vector(1, 0b10)}


def test_quadric_complement():
    # the remaining vectors all have an odd number of Y factors
    points = quadric_points(3)
    rest = {GF2Vector(3, b) for b in range(1, 64)} - points
    assert all(quadratic_form(v) == 1 for v in rest)


# --- the line-to-point map --------------------------------------------------


def all_lines():
    return tuple(enumerate_subspaces(2, 2, "all"))


def test_line_map_is_a_bijection_onto_the_quadric():
    images = {plucker_line_map(line).plucker for line in all_lines()}
    assert len(images) == 35
    assert images == quadric_points(3)


def test_isotropic_lines_map_to_fifteen_points():
    doily = build_polar_space(2)
    images = {plucker_line_map(line).plucker for line in doily.lines}
    assert len(images) == 15


def test_line_map_generator_independence():
    for line in all_lines():
        image = plucker_line_map(line).plucker
        points = line.points
        for u, v in combinations(points, 2):
            rebuilt = span([u, v])
            assert rebuilt == line
            assert plucker_line_map(rebuilt).plucker == image


def test_line_map_example():
    line = span([GF2Vector(2, 0b1000), GF2Vector(2, 0b0100)])
    assert plucker_line_map(line).plucker.bits == 0b100000


def test_line_map_validation():
    with pytest.raises(ValueError):
        plucker_line_map(span([GF2Vector(2, 0b1000)]))
    with pytest.raises(ValueError):
        plucker_line_map(span([GF2Vector(2, b) for b in (0b1000, 0b0100, 0b0010)]))
    with pytest.raises(ValueError):
        plucker_line_map(span([GF2Vector(3, 0b100000), GF2Vector(3, 0b010000)]))


def test_klein_point_invariant():
    # a vector off the quadric cannot be wrapped into a Klein point
    line = all_lines()[0]
    with pytest.raises(ValueError):
        KleinPoint(GF2Vector(3, 0b001001), line)


# --- the doily carried by the quadric ---------------------------------------


def test_klein_doily_shape():
    kd = klein_real_doily()
    assert len(kd.points) == 15
    assert len(kd.lines) == 15
    per_point = [0] * 15
    for line in kd.lines:
        assert len(set(line)) == 3
        for i in line:
            per_point[i] += 1
    assert set(per_point) == {3}


def test_klein_doily_adjacency_matches_source_intersection():
    kd = klein_real_doily()
    for i, j in combinations(range(15), 2):
        meet = set(kd.points[i].source_line.point_bits) & set(
            kd.points[j].source_line.point_bits
        )
        assert kd.adjacent(i, j) == bool(meet)


def test_klein_doily_adjacency_is_light_like():
    # adjacent images are exactly the commuting pairs of quadric observables
    kd = klein_real_doily()
    for i, j in combinations(range(15), 2):
        form = symplectic_form(kd.points[i].plucker, kd.points[j].plucker)
        assert kd.adjacent(i, j) == (form == 0)


def test_klein_doily_has_no_triangles():
    kd = klein_real_doily()
    lines = {frozenset(line) for line in kd.lines}
    for i, j, k in combinations(range(15), 3):
        if kd.adjacent(i, j) and kd.adjacent(i, k) and kd.adjacent(j, k):
            assert frozenset((i, j, k)) in lines


def test_klein_doily_quadrangle_axiom():
    # for a point off a line, exactly one point of the line is adjacent
    kd = klein_real_doily()
    for line in kd.lines:
        for p in range(15):
            if p in line:
                continue
            assert sum(1 for q in line if kd.adjacent(p, q)) == 1


def graph_isomorphism(adj_a, adj_b):
    # backtracking search for a bijection carrying one adjacency onto the other
    n = len(adj_a)
    assignment = [None] * n
    used = [False] * n

    def backtrack(i):
        if i == n:
            return True
        for candidate in range(n):
            if used[candidate]:
                continue
            if all(adj_a[i][j] == adj_b[candidate][assignment[j]] for j in range(i)):
                assignment[i] = candidate
                used[candidate] = True
                if backtrack(i + 1):
                    return True
                used[candidate] = False
                assignment[i] = None
        return False

    return assignment if backtrack(0) else None


def test_klein_doily_is_isomorphic_to_the_symplectic_doily():
    doily = build_polar_space(2)
    index = {v.bits: i for i, v in enumerate(doily.points)}
    lines_a = [tuple(index[b] for b in line.point_bits) for line in doily.lines]
    adj_a = [[False] * 15 for _ in range(15)]
    for line in lines_a:
        for i, j in combinations(line, 2):
            adj_a[i][j] = adj_a[j][i] = True

    kd = klein_real_doily()
    adj_b = [[kd.adjacent(i, j) if i != j else False for j in range(15)] for i in range(15)]

    mapping = graph_isomorphism(adj_a, adj_b)
    assert mapping is not None
    lines_b = {frozenset(line) for line in kd.lines}
    for line in lines_a:
        assert frozenset(mapping[i] for i in line) in lines_b


# --- spreads ------------------------------------------------------------------


KNOWN_SPREAD = (
    ("ZZ", "IZ", "ZI"),
    ("IY", "YI", "YY"),
    ("XX", "IX", "XI"),
    ("XY", "ZX", "YZ"),
    ("ZY", "XZ", "YX"),
)


def spread_key(spread):
    return frozenset(frozenset(line.point_bits) for line in spread.lines)


def test_six_spreads():
    spreads = doily_spreads()
    assert len(spreads) == 6
    assert len({spread_key(s) for s in spreads}) == 6


def test_spreads_partition_and_are_isotropic():
    for spread in doily_spreads():
        covered = set()
        for line in spread.lines:
            assert is_totally_isotropic(line)
            covered.update(line.point_bits)
        assert len(covered) == 15


def test_known_spread_is_found():
    wanted = frozenset(
        frozenset(encode_symbol_string(s).vec.bits for s in line)
        for line in KNOWN_SPREAD
    )
    assert wanted in {spread_key(s) for s in doily_spreads()}


def test_every_line_sits_in_two_spreads():
    spreads = doily_spreads()
    count = {}
    for spread in spreads:
        for line in spread.lines:
            key = frozenset(line.point_bits)
            count[key] = count.get(key, 0) + 1
    assert len(count) == 15
    assert set(count.values()) == {2}


# --- the nine plane-to-point pairs -------------------------------------------


def test_pair_report_passes():
    report = verify_plucker_plane_pairs(heptacode_plane_point_pairs())
    assert report.passed
    assert report.symmetric
    assert report.commutes_with_yiii
    assert report.grid_ok
    assert report.intersections_ok
    assert report.collinearity_ok
    signs = sorted(c.sign for c in report.grid_lines)
    assert signs == [-1, -1, -1, 1, 1, 1]


def test_first_pair_is_the_blue_plane():
    pairs = heptacode_plane_point_pairs()
    plane, point = pairs[0]
    assert {p.symbols() for p in plane} == {
        "YYY", "YYI", "ZZI", "XXI", "ZZY", "IIY", "XXY",
    }
    assert point.symbols() == "IYYI"


def test_blue_planes_meet_in_their_color_point():
    pairs = heptacode_plane_point_pairs()
    blue = [
        {p.vec.bits for p in plane}
        for plane, point in pairs
        if "Y" in point.symbols()
    ]
    assert len(blue) == 3
    anchor = encode_symbol_string("YYY").vec.bits
    for a, b in combinations(blue, 2):
        assert a & b == {anchor}


def test_pair_checks_detect_swapped_points():
    pairs = list(heptacode_plane_point_pairs())
    (plane_a, point_a), (plane_b, point_b) = pairs[0], pairs[1]
    pairs[0], pairs[1] = (plane_a, point_b), (plane_b, point_a)
    report = verify_plucker_plane_pairs(pairs)
    assert not report.collinearity_ok
    assert not report.passed


def test_pair_checks_detect_asymmetric_point():
    pairs = list(heptacode_plane_point_pairs())
    plane, _ = pairs[8]
    pairs[8] = (plane, encode_symbol_string("IYII"))
    report = verify_plucker_plane_pairs(pairs)
    assert not report.symmetric
    assert not report.passed


def test_pair_validation():
    pairs = heptacode_plane_point_pairs()
    with pytest.raises(ValueError):
        verify_plucker_plane_pairs(pairs[:8])
    plane, point = pairs[0]
    with pytest.raises(ValueError):
        verify_plucker_plane_pairs(((plane[:6], point),) + pairs[1:])
    with pytest.raises(ValueError):
        verify_plucker_plane_pairs(
            ((plane, encode_symbol_string("YYY")),) + pairs[1:]
        )
    anchorless = tuple(
        encode_symbol_string(s)
        for s in ("YYI", "ZZI", "XXI", "ZZY", "IIY", "XXY", "IZZ")
    )
    with pytest.raises(ValueError):
        verify_plucker_plane_pairs(((anchorless, point),) + pairs[1:])
    duplicated = (pairs[0], pairs[0]) + pairs[2:]
    with pytest.raises(ValueError):
        verify_plucker_plane_pairs(duplicated)
