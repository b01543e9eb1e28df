"""The [[5,1,3]] and [[7,1,3]] stabilizer groups and their split geometry.

Both codes are rebuilt from their generator strings, with every group
element recomputed as an exact signed product.  Splitting the qubit line
into a left and a right block relabels each element by its two
restrictions; commuting triples of labels then form a doily whose lines
pick up signs, and on the seven-qubit side the four-qubit labels carry
Fano planes whose signs single out the recovery slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .gf2 import enumerate_subspaces, span
from .pauli import PauliOperator, encode_symbol_string, identity, product

__all__ = [
    "StabilizerCode",
    "Context",
    "SplitLabeling",
    "LabeledDoily",
    "PlaneClassification",
    "NegativePlane",
    "PlaneTriple",
    "pentagon_code",
    "heptagon_code",
    "split",
    "build_split_doily",
    "context_sign",
    "classify_plane",
    "negative_planes_heptacode",
    "type23_statistics",
    "embedded_central_doily",
]


def context_sign(points: Sequence[PauliOperator]) -> int:
    """Sign s in {+1, -1} such that the product of the points is s * identity."""
    pts = tuple(points)
    if not pts:
        raise ValueError("a context needs at least one point")
    for a, b in combinations(pts, 2):
        if not a.commutes_with(b):
            raise ValueError("context points must commute")
    total = product(pts)
    if total.vec.bits != 0:
        raise ValueError("context product is not proportional to the identity")
    if total.phase & 1:
        # commuting points with real signs always square away the i's,
        # so an odd phase means some input point carried one
        raise ValueError("context product carries an imaginary phase")
    return 1 if total.phase == 0 else -1


@dataclass(frozen=True)
class Context:
    """A closed commuting set of observables with the sign of its product."""

    points: tuple[PauliOperator, ...]
    kind: str  # "line" (3 points) or "plane" (7 points)
    sign: int = field(init=False)

    def __post_init__(self) -> None:
        sizes = {"line": 3, "plane": 7}
        if self.kind not in sizes:
            raise ValueError(f"unknown context kind {self.kind!r}")
        pts = tuple(self.points)
        if len(pts) != sizes[self.kind]:
            raise ValueError(f"a {self.kind} needs {sizes[self.kind]} points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "sign", context_sign(pts))


@dataclass(frozen=True)
class StabilizerCode:
    """An Abelian Pauli subgroup given by independent commuting generators.

    elements[mask] is the exact product of the generators selected by the
    bits of mask (bit j for generators[j]), so elements[0] is the identity
    and len(elements) == 2**len(generators).
    """

    n_qubits: int
    generators: tuple[PauliOperator, ...]
    elements: tuple[PauliOperator, ...]

    @property
    def nontrivial_elements(self) -> tuple[PauliOperator, ...]:
        return self.elements[1:]


def _code_from_strings(symbols: Sequence[str]) -> StabilizerCode:
    gens = tuple(encode_symbol_string(s) for s in symbols)
    n = gens[0].vec.n
    for a, b in combinations(gens, 2):
        if not a.commutes_with(b):
            raise ValueError("generators must commute")
    elements = [identity(n)]
    for mask in range(1, 1 << len(gens)):
        low = mask & -mask
        elements.append(elements[mask ^ low] * gens[low.bit_length() - 1])
    # distinct vectors over all subsets <=> the generators are independent,
    # which also rules out -identity (and any other scalar) as an element
    if len({e.vec.bits for e in elements}) != len(elements):
        raise ValueError("generators are not independent")
    return StabilizerCode(n_qubits=n, generators=gens, elements=tuple(elements))


@lru_cache(maxsize=None)
def pentagon_code() -> StabilizerCode:
    """The five-qubit code on the cyclic generators XZZXI, IXZZX, XIXZZ, ZXIXZ."""
    return _code_from_strings(("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"))


@lru_cache(maxsize=None)
def heptagon_code() -> StabilizerCode:
    """The seven-qubit CSS code built on the Hamming parity patterns."""
    return _code_from_strings(
        ("IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ")
    )


@dataclass(frozen=True)
class SplitLabeling:
    """Left and right restrictions of every group element of a code.

    Labels are aligned with code.elements; both restrictions drop the sign,
    signed_right_label puts the sign of the full element back on the right.
    """

    code: StabilizerCode
    left_positions: tuple[int, ...]
    right_positions: tuple[int, ...]
    left_labels: tuple[PauliOperator, ...]
    right_labels: tuple[PauliOperator, ...]

    def signed_right_label(self, index: int) -> PauliOperator:
        """Right label carrying the sign of the full group element."""
        return PauliOperator(
            self.right_labels[index].vec, self.code.elements[index].phase
        )


def split(code: StabilizerCode, left: Iterable[int]) -> SplitLabeling:
    """Relabel every element by its restrictions to the left block and the rest."""
    left_positions = tuple(left)
    if len(set(left_positions)) != len(left_positions):
        raise ValueError("left positions repeat")
    if not all(0 <= p < code.n_qubits for p in left_positions):
        raise ValueError("left positions out of range")
    if len(left_positions) not in (2, 3):
        raise ValueError("the left block holds two or three qubits")
    right_positions = tuple(
        p for p in range(code.n_qubits) if p not in left_positions
    )
    left_labels = tuple(e.restrict(left_positions) for e in code.elements)
    right_labels = tuple(e.restrict(right_positions) for e in code.elements)
    # restriction must stay injective on the group, otherwise the split
    # would merge two elements into a single labelled point
    if len({lab.vec.bits for lab in left_labels}) != len(code.elements):
        raise ValueError("left restriction is not injective on the code")
    if len({lab.vec.bits for lab in right_labels}) != len(code.elements):
        raise ValueError("right restriction is not injective on the code")
    return SplitLabeling(
        code, left_positions, right_positions, left_labels, right_labels
    )


@dataclass(frozen=True)
class LabeledDoily:
    """Fifteen doubly labelled points with their fifteen commuting triples."""

    elements: tuple[PauliOperator, ...]  # full group elements, signs included
    left_labels: tuple[PauliOperator, ...]  # unsigned restrictions
    right_labels: tuple[PauliOperator, ...]  # restrictions signed by the element
    lines: tuple[tuple[int, int, int], ...]  # index triples into the point lists
    left_contexts: tuple[Context, ...]  # aligned with lines
    right_contexts: tuple[Context, ...]

    @property
    def negative_lines(self) -> tuple[int, ...]:
        """Indices of the lines whose label products are minus the identity."""
        return tuple(i for i, c in enumerate(self.left_contexts) if c.sign < 0)


def _label_doily(
    elements: Sequence[PauliOperator],
    left_positions: Sequence[int],
    right_positions: Sequence[int],
) -> LabeledDoily:
    if len(elements) != 15:
        raise ValueError("a doily needs fifteen points")
    left_labels = tuple(e.restrict(left_positions) for e in elements)
    right_labels = tuple(
        PauliOperator(e.restrict(right_positions).vec, e.phase) for e in elements
    )
    index_of = {e.vec.bits: i for i, e in enumerate(elements)}
    lines = []
    for i, j in combinations(range(15), 2):
        k = index_of.get(elements[i].vec.bits ^ elements[j].vec.bits)
        if k is None or k <= j:
            continue  # each closed triple i < j < k is kept exactly once
        # one commuting pair settles the whole triple: the third label is
        # the sum of the other two, so the symplectic form repeats
        if left_labels[i].commutes_with(left_labels[j]):
            lines.append((i, j, k))
    if len(lines) != 15:
        raise ValueError(f"expected fifteen lines, found {len(lines)}")
    on_point = [0] * 15
    for line in lines:
        for i in line:
            on_point[i] += 1
    if set(on_point) != {3}:
        raise ValueError("every doily point must lie on exactly three lines")
    line_order = tuple(sorted(lines))
    left_contexts = tuple(
        Context(tuple(left_labels[i] for i in line), "line") for line in line_order
    )
    right_contexts = tuple(
        Context(tuple(right_labels[i] for i in line), "line") for line in line_order
    )
    return LabeledDoily(
        elements=tuple(elements),
        left_labels=left_labels,
        right_labels=right_labels,
        lines=line_order,
        left_contexts=left_contexts,
        right_contexts=right_contexts,
    )


def build_split_doily(labeling: SplitLabeling) -> LabeledDoily:
    """Doily on the fifteen nontrivial elements of a two-plus-three split."""
    if labeling.code.n_qubits != 5 or len(labeling.left_positions) != 2:
        raise ValueError(
            "the doily construction needs a two-plus-three split of the"
            " five-qubit code"
        )
    return _label_doily(
        labeling.code.nontrivial_elements,
        labeling.left_positions,
        labeling.right_positions,
    )


def embedded_central_doily() -> LabeledDoily:
    """Doily on the fifteen seven-qubit elements whose last slot is the identity."""
    code = heptagon_code()
    last = code.n_qubits - 1
    chosen = tuple(
        e
        for e in code.nontrivial_elements
        if e.vec.q(last) == 0 and e.vec.p(last) == 0
    )
    return _label_doily(chosen, (0, 1, 3), (2, 4, 5, 6))


@dataclass(frozen=True)
class PlaneClassification:
    """Verdict for a seven-point plane: overall sign and its negative lines."""

    positive: bool
    sign: int
    lines: tuple[Context, ...]
    negative_lines: tuple[Context, ...]


def classify_plane(points: Sequence[PauliOperator]) -> PlaneClassification:
    """Classify seven commuting observables spanning a plane by their signs.

    The plane is positive when the product of all seven points is plus the
    identity and every one of the seven lines is positive as well.
    """
    pts = tuple(points)
    if len(pts) != 7:
        raise ValueError("a plane has seven points")
    for a, b in combinations(pts, 2):
        if not a.commutes_with(b):
            raise ValueError("plane points must commute")
    vecs = [p.vec for p in pts]
    bits = {v.bits for v in vecs}
    sp = span(vecs)
    if sp.rank != 3 or set(sp.point_bits) != bits:
        raise ValueError(
            "points do not form the seven nonzero vectors of a rank-three span"
        )
    index_of = {v.bits: i for i, v in enumerate(vecs)}
    lines = []
    for i, j in combinations(range(7), 2):
        k = index_of[vecs[i].bits ^ vecs[j].bits]
        if j < k:  # each of the seven lines closes exactly once this way
            lines.append(Context((pts[i], pts[j], pts[k]), "line"))
    total = Context(pts, "plane")
    negative = tuple(c for c in lines if c.sign < 0)
    return PlaneClassification(
        positive=total.sign > 0 and not negative,
        sign=total.sign,
        lines=tuple(lines),
        negative_lines=negative,
    )


# colors follow the odd symbol in the last right slot of each plane
_COLOR_BY_SYMBOL = {"Y": "blue", "Z": "red", "X": "green"}


@dataclass(frozen=True)
class NegativePlane:
    """One recovery plane: seven group elements with their split labels."""

    recovery_position: int  # the qubit whose label column is all identities
    color: str  # "blue", "red" or "green"
    elements: tuple[PauliOperator, ...]
    left_labels: tuple[PauliOperator, ...]  # unsigned three-qubit labels
    right_labels: tuple[PauliOperator, ...]  # signed four-qubit labels
    classification: PlaneClassification


@dataclass(frozen=True)
class PlaneTriple:
    """Three negative planes sharing a recovery slot and a negative line."""

    recovery_position: int
    blue: NegativePlane
    red: NegativePlane
    green: NegativePlane
    shared_line: Context  # common negative line, in signed four-qubit labels

    @property
    def planes(self) -> tuple[NegativePlane, NegativePlane, NegativePlane]:
        return (self.blue, self.red, self.green)


def _negative_plane(
    labeling: SplitLabeling,
    element_indices: Sequence[int],
    rights: tuple[PauliOperator, ...],
    idle_local: int,
    verdict: PlaneClassification,
) -> NegativePlane:
    symbols = {r.symbols()[3] for r in rights} - {"I"}
    if len(symbols) != 1:
        raise RuntimeError("negative plane mixes symbols in its last slot")
    return NegativePlane(
        recovery_position=labeling.right_positions[idle_local],
        color=_COLOR_BY_SYMBOL[symbols.pop()],
        elements=tuple(labeling.code.elements[i] for i in element_indices),
        left_labels=tuple(labeling.left_labels[i] for i in element_indices),
        right_labels=rights,
        classification=verdict,
    )


def negative_planes_heptacode() -> tuple[PlaneTriple, ...]:
    """The nine negative planes of the split seven-qubit code, grouped by slot.

    A plane qualifies for recovery when its four-qubit labels all carry the
    identity on one of the first three right slots, so that measuring the
    other parties' qubits leaves that slot untouched.  Scans all 135
    isotropic planes of the three-qubit labels, keeps the recovery planes,
    classifies the signed four-qubit labels of each, and checks that the
    negative ones come as three slot-triples intersecting in a shared
    negative line.
    """
    code = heptagon_code()
    labeling = split(code, (0, 1, 3))
    by_left_bits = {
        labeling.left_labels[i].vec.bits: i for i in range(len(code.elements))
    }
    groups: dict[int, dict[str, NegativePlane]] = {}
    count = 0
    for sub in enumerate_subspaces(3, 3, "totally_isotropic"):
        idxs = tuple(by_left_bits[b] for b in sub.point_bits)
        rights = tuple(labeling.signed_right_label(i) for i in idxs)
        # the mended slot shows up as an all-identity label column; an
        # isotropic rank-3 set cannot idle two of the four slots at once
        idle = [
            local
            for local in range(3)
            if all(r.vec.q(local) == 0 and r.vec.p(local) == 0 for r in rights)
        ]
        if not idle:
            continue
        verdict = classify_plane(rights)
        if verdict.positive:
            continue
        plane = _negative_plane(labeling, idxs, rights, idle[0], verdict)
        groups.setdefault(plane.recovery_position, {})[plane.color] = plane
        count += 1
    if count != 9 or len(groups) != 3:
        raise RuntimeError(f"expected nine negative planes in three slots, got {count}")
    triples = []
    for position in sorted(groups):
        by_color = groups[position]
        if set(by_color) != {"blue", "red", "green"}:
            raise RuntimeError("a recovery slot is missing a plane color")
        keyed = [
            {(r.vec.bits, r.phase) for r in by_color[c].right_labels}
            for c in ("blue", "red", "green")
        ]
        shared = keyed[0] & keyed[1] & keyed[2]
        if len(shared) != 3:
            raise RuntimeError("slot planes do not intersect in a line")
        shared_ops = tuple(
            r
            for r in by_color["blue"].right_labels
            if (r.vec.bits, r.phase) in shared
        )
        line = Context(shared_ops, "line")
        if line.sign != -1:
            raise RuntimeError("the shared line of a slot triple must be negative")
        triples.append(
            PlaneTriple(
                recovery_position=position,
                blue=by_color["blue"],
                red=by_color["red"],
                green=by_color["green"],
                shared_line=line,
            )
        )
    return tuple(triples)


def type23_statistics(labeling: SplitLabeling) -> tuple[int, int, int, int]:
    """Histogram of the nontrivial right labels by their number of identity slots."""
    if labeling.code.n_qubits != 7 or len(labeling.right_positions) != 4:
        raise ValueError(
            "the statistics need a three-plus-four split of the seven-qubit code"
        )
    counts = [0, 0, 0, 0]
    for label in labeling.right_labels[1:]:
        counts[label.symbols().count("I")] += 1
    return (counts[0], counts[1], counts[2], counts[3])
