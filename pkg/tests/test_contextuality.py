"""Solver tests: exact degrees, bound intervals, gauge and solvability laws."""

import pytest
from hypothesis import given, strategies as st

from stabshare.codes import build_split_doily, context_sign, pentagon_code, split
from stabshare.contextuality import (
    DegreeResult,
    IncidenceSystem,
    contextuality_degree,
    max_stabilizer_lift,
    plane_contextuality_w52,
)
from stabshare.gf2 import GF2Vector, enumerate_subspaces
from stabshare.pauli import PauliOperator


def doily_system(side="left"):
    d = build_split_doily(split(pentagon_code(), (0, 1)))
    labels = d.left_labels if side == "left" else d.right_labels
    contexts = d.left_contexts if side == "left" else d.right_contexts
    return IncidenceSystem(
        tuple(lab.symbols() for lab in labels),
        d.lines,
        tuple(1 if c.sign == -1 else 0 for c in contexts),
    ), d


def test_doily_degree_is_three():
    sys_, d = doily_system("left")
    res = contextuality_degree(sys_, "exact")
    assert res.degree == 3
    assert res.exact
    assert res.witness == (0,) * 15
    assert res.violated == d.negative_lines


def test_split_labeling_shares_the_degree():
    sys_, _ = doily_system("right")
    assert contextuality_degree(sys_, "exact").degree == 3


def test_doily_bound_mode_collapses():
    sys_, _ = doily_system("left")
    res = contextuality_degree(sys_, "bound")
    assert (res.lower, res.upper) == (3, 3)
    assert res.exact
    assert len(res.violated) == 3


def test_all_positive_system():
    sys_, _ = doily_system("left")
    relaxed = IncidenceSystem(sys_.points, sys_.contexts, (0,) * 15)
    res = contextuality_degree(relaxed, "exact")
    assert res.degree == 0
    assert res.witness == (0,) * 15
    assert res.violated == ()


def test_single_negative_context():
    sys_ = IncidenceSystem(("a", "b", "c"), ((0, 1, 2),), (1,))
    res = contextuality_degree(sys_, "exact")
    assert res.degree == 0
    # the smallest assignment with odd parity flips only the last point
    assert res.witness == (0, 0, 1)
    assert max_stabilizer_lift(sys_) == (1, (0, 0, 1))


def test_max_stabilizer_lift_on_the_doily():
    sys_, _ = doily_system("left")
    satisfied, witness = max_stabilizer_lift(sys_)
    assert satisfied == 12
    assert witness == (0,) * 15


def test_mermin_grid_degree_one():
    # each point sits on two lines, so violations come in odd total parity:
    # three negative lines force at least one violation, and one is reachable
    rows = ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    cols = ((0, 3, 6), (1, 4, 7), (2, 5, 8))
    sys_ = IncidenceSystem(
        tuple("p%d" % i for i in range(9)), rows + cols, (1, 1, 1, 0, 0, 0)
    )
    assert contextuality_degree(sys_, "exact").degree == 1


def test_incidence_validation():
    with pytest.raises(ValueError):
        IncidenceSystem(("a",), ((0, 1),), (0,))
    with pytest.raises(ValueError):
        IncidenceSystem(("a",), ((),), (0,))
    with pytest.raises(ValueError):
        IncidenceSystem(("a", "b"), ((0, 1),), (0, 1))
    with pytest.raises(ValueError):
        IncidenceSystem(("a", "b"), ((0, 1),), (2,))
    with pytest.raises(ValueError):
        contextuality_degree(doily_system()[0], "fast")


def test_exact_mode_size_guard():
    points = tuple("p%d" % i for i in range(25))
    contexts = tuple((i, (i + 1) % 25) for i in range(25))
    sys_ = IncidenceSystem(points, contexts, (0,) * 25)
    with pytest.raises(ValueError):
        contextuality_degree(sys_, "exact")


def pad_with_isolated_points(sys_, extra):
    # padding cannot change the degree; it pushes the solver onto the
    # column-space path once the point count passes the scan limit
    points = sys_.points + tuple("pad%d" % i for i in range(extra))
    return IncidenceSystem(points, sys_.contexts, sys_.rhs)


def test_point_scan_matches_column_scan():
    sys_, _ = doily_system("left")
    padded = pad_with_isolated_points(sys_, 10)
    plain = contextuality_degree(sys_, "exact")
    coset = contextuality_degree(padded, "exact")
    assert coset.degree == plain.degree == 3
    assert coset.witness[:15] == plain.witness
    assert coset.witness[15:] == (0,) * 10
    assert coset.violated == plain.violated


def test_point_scan_matches_column_scan_after_gauging():
    sys_, _ = doily_system("left")
    # flip the sign of point 0 everywhere; the degree must stay 3
    rhs = list(sys_.rhs)
    for c, ctx in enumerate(sys_.contexts):
        if 0 in ctx:
            rhs[c] ^= 1
    gauged = IncidenceSystem(sys_.points, sys_.contexts, tuple(rhs))
    plain = contextuality_degree(gauged, "exact")
    coset = contextuality_degree(pad_with_isolated_points(gauged, 10), "exact")
    assert plain.degree == 3
    assert coset.degree == 3
    assert coset.witness[:15] == plain.witness


def test_bound_interval_on_a_capped_system():
    # three disjoint doilies: 45 contexts push the error-ball cap below the
    # true degree of nine, so bound mode must return a strict interval
    base, _ = doily_system("left")
    points = tuple(f"{p}/{k}" for k in range(3) for p in base.points)
    contexts = []
    rhs = []
    for k in range(3):
        for ctx, r in zip(base.contexts, base.rhs):
            contexts.append(tuple(p + 15 * k for p in ctx))
            rhs.append(r)
    sys_ = IncidenceSystem(points, tuple(contexts), tuple(rhs))
    res = contextuality_degree(sys_, "bound")
    assert not res.exact
    assert res.degree is None
    assert res.lower == 5
    assert res.upper == 9
    assert len(res.violated) == 9


# --- the 135-plane system ----------------------------------------------------


def canonical_planes():
    ops = [PauliOperator(GF2Vector(3, b)) for b in range(1, 64)]
    contexts = []
    rhs = []
    for sub in enumerate_subspaces(3, 3, "totally_isotropic"):
        idxs = tuple(b - 1 for b in sub.point_bits)
        contexts.append(idxs)
        rhs.append(1 if context_sign([ops[i] for i in idxs]) == -1 else 0)
    labels = tuple(op.symbols() for op in ops)
    return IncidenceSystem(labels, tuple(contexts), tuple(rhs))


def solve_gf2(contexts, rhs, m):
    # plain elimination over GF(2), independent of the solver under test
    rows = []
    for ctx, r in zip(contexts, rhs):
        row = r
        for p in ctx:
            row |= 1 << (p + 1)
        rows.append(row)
    pivots = {}
    for row in rows:
        while row > 1:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = row
                break
            row ^= pivots[lead]
        else:
            if row == 1:
                return None  # inconsistent: 0 = 1
    x = 0
    # each pivot row only mentions variables at or below its lead, so solving
    # in ascending order sees every lower variable already fixed
    for lead in sorted(pivots):
        row = pivots[lead]
        parity = row & 1
        below = (row >> 1) & ~(1 << (lead - 1))
        acc = (below & x).bit_count() & 1
        if acc ^ parity:
            x |= 1 << (lead - 1)
    return tuple((x >> p) & 1 for p in range(m))


def test_canonical_plane_signs():
    sys_ = canonical_planes()
    assert sum(sys_.rhs) == 54  # recomputed: 54 of the 135 planes are negative


def test_plane_system_is_satisfiable():
    # an elimination oracle confirms the solver's zero-degree verdict
    sys_ = canonical_planes()
    solution = solve_gf2(sys_.contexts, sys_.rhs, len(sys_.points))
    assert solution is not None
    for ctx, r in zip(sys_.contexts, sys_.rhs):
        assert sum(solution[p] for p in ctx) % 2 == r
    res = plane_contextuality_w52()
    assert res.exact
    assert res.degree == 0
    assert res.violated == ()


def test_plane_witness_flips_the_double_y_labels():
    # the canonical witness is deterministic: exactly the ten labels with
    # two or three Y symbols get flipped
    res = plane_contextuality_w52()
    sys_ = canonical_planes()
    flipped = {sys_.points[i] for i in range(63) if res.witness[i]}
    assert flipped == {
        s for s in sys_.points if s.count("Y") >= 2
    }
    assert len(flipped) == 10


def test_plane_system_shape_guard():
    sys_, _ = doily_system("left")
    with pytest.raises(ValueError):
        plane_contextuality_w52(sys_)


# --- random-system laws -------------------------------------------------------


@st.composite
def small_systems(draw):
    m = draw(st.integers(1, 8))
    nc = draw(st.integers(1, 8))
    contexts = []
    for _ in range(nc):
        size = draw(st.integers(1, m))
        ctx = tuple(sorted(draw(st.permutations(range(m)))[:size]))
        contexts.append(ctx)
    rhs = tuple(draw(st.integers(0, 1)) for _ in range(nc))
    return IncidenceSystem(
        tuple("p%d" % i for i in range(m)), tuple(contexts), rhs
    )


@given(small_systems(), st.data())
def test_gauge_invariance(sys_, data):
    flips = data.draw(
        st.tuples(*([st.integers(0, 1)] * len(sys_.points))), label="flips"
    )
    rhs = tuple(
        r ^ (sum(flips[p] for p in ctx) & 1)
        for ctx, r in zip(sys_.contexts, sys_.rhs)
    )
    gauged = IncidenceSystem(sys_.points, sys_.contexts, rhs)
    assert (
        contextuality_degree(gauged, "exact").degree
        == contextuality_degree(sys_, "exact").degree
    )


@given(small_systems(), st.data())
def test_degree_zero_iff_in_column_space(sys_, data):
    x = data.draw(
        st.tuples(*([st.integers(0, 1)] * len(sys_.points))), label="assignment"
    )
    reachable = tuple(
        sum(x[p] for p in ctx) % 2 for ctx in sys_.contexts
    )
    solvable = IncidenceSystem(sys_.points, sys_.contexts, reachable)
    assert contextuality_degree(solvable, "exact").degree == 0
    res = contextuality_degree(sys_, "exact")
    if res.degree == 0:
        assert res.violated == ()
    else:
        assert solve_gf2(sys_.contexts, sys_.rhs, len(sys_.points)) is None


@given(small_systems())
def test_bound_mode_brackets_exact(sys_):
    exact = contextuality_degree(sys_, "exact")
    bound = contextuality_degree(sys_, "bound")
    assert bound.lower <= exact.degree <= bound.upper
    # small systems stay under the error-ball cap, so the interval collapses
    assert bound.exact
    assert bound.lower == exact.degree


class TestResultShape:
    def test_degree_property(self):
        r = DegreeResult(1, 2, (0,), (0,), False)
        assert r.degree is None
        r = DegreeResult(2, 2, (0,), (0, 1), True)
        assert r.degree == 2
