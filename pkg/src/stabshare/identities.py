"""Machine verification of the branching decompositions behind the protocols.

Each identity is stored as data, not code: a projector recipe for the left
side and a list of tensor-product terms for the right side.  A term wires
fixed two- or three-party factors into explicit qubit slots and applies a
short operator word to the secret slot, so the checker can rebuild both
sides exactly in the amplitude ring for any exact secret.  Both sides are
linear in (alpha, beta), hence equality on the two basis secrets already
decides the identity; the extra test secrets are defense in depth.

Where the derived term data disagrees with the reference listing the
definition carries a ``listing_notes`` entry describing the difference.
The stored terms are always the derived ones, so every registered identity
verifies to exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import StabilizerCode, heptagon_code, pentagon_code
from .pauli import PauliOperator, encode_symbol_string
from .ring import HALF, INV_SQRT2, IUNIT, ONE, SQRT2, Amplitude
from .states import (
    MATRIX_R,
    MATRIX_U,
    SecretParam,
    StateVector,
    apply_single_qubit,
    assemble,
    bell_state,
    chi_state,
    joint_eigenbasis,
    ket_bit,
    ket_hat,
    ket_tilde,
    project_stabilizer,
)

__all__ = [
    "TEST_SECRETS",
    "IdentityDefinition",
    "IdentityEquation",
    "IdentityTerm",
    "IdentityReport",
    "MubReport",
    "logical_states",
    "encode_secret",
    "standard_bases",
    "special_unitaries",
    "swap_pair",
    "secret_word_state",
    "identity_ids",
    "get_identity",
    "verify_identity",
    "signed_doily_spread",
    "spread_mub_check",
]


# ---------------------------------------------------------------------------
# logical states and encoding


def logical_states(code: StabilizerCode) -> tuple[StateVector, StateVector]:
    """Normalized logical basis (|0L>, |1L>) of a stabilizer code.

    |0L| is the normalized image of |0..0> under the product of the
    generator projectors (1+g)/2, and |1L> the image of |1..1>.  For both
    builtin codes |1..1> = X^n |0..0> lies outside the kernel, and the two
    images are orthogonal.
    """
    n = code.n_qubits
    zero = project_stabilizer(StateVector.basis(n, 0), code.generators)
    one = project_stabilizer(StateVector.basis(n, (1 << n) - 1), code.generators)
    if not zero or not one:
        raise ValueError("projector product annihilated a seed state")
    return zero.normalized(), one.normalized()


def encode_secret(code: StabilizerCode, secret: SecretParam) -> StateVector:
    """The encoded state alpha|0L> + beta|1L>."""
    zero, one = logical_states(code)
    return zero.scaled(secret.a) + one.scaled(secret.b)


#: Exact test secrets: the two basis secrets plus two unbiased ones.
TEST_SECRETS: tuple[SecretParam, ...] = (
    SecretParam(ONE, Amplitude()),
    SecretParam(Amplitude(), ONE),
    SecretParam(INV_SQRT2, INV_SQRT2),
    SecretParam(INV_SQRT2, IUNIT * INV_SQRT2),
)


# ---------------------------------------------------------------------------
# fixed factors and operator words

def standard_bases() -> dict[str, StateVector]:
    """Every named factor state used by the identity terms.

    Keys: Bell states ``phi{s}{t}`` with s,t in ``+-`` (XX and ZZ signs),
    their chi-basis analogues ``chi{s}{t}`` (XY and ZX signs), the
    single-qubit kets ``bit{b}``, ``tilde{b}`` (Y eigenbasis) and
    ``hat{b}`` (X eigenbasis), and the three-qubit biseparable families
    ``Phi{s}{t}{b}`` = bell x bit, ``Sigma{s}{t}{b}`` = bell x tilde,
    ``Omega{s}{t}{b}`` = bell x hat.
    """
    table: dict[str, StateVector] = {}
    for b in (0, 1):
        table[f"bit{b}"] = ket_bit(b)
        table[f"tilde{b}"] = ket_tilde(b)
        table[f"hat{b}"] = ket_hat(b)
    for s_name, s in (("+", 1), ("-", -1)):
        for t_name, t in (("+", 1), ("-", -1)):
            bell = bell_state(s, t)
            chi = chi_state(s, t)
            table[f"phi{s_name}{t_name}"] = bell
            table[f"chi{s_name}{t_name}"] = chi
            for b in (0, 1):
                table[f"Phi{s_name}{t_name}{b}"] = bell.tensor(ket_bit(b))
                table[f"Sigma{s_name}{t_name}{b}"] = bell.tensor(ket_tilde(b))
                table[f"Omega{s_name}{t_name}{b}"] = bell.tensor(ket_hat(b))
    return table


def swap_pair(state: StateVector) -> StateVector:
    """Exchange the two qubits of a two-qubit state."""
    if state.n != 2:
        raise ValueError("swap_pair acts on two-qubit states")
    return state.permuted((1, 0))


def special_unitaries() -> dict[str, object]:
    """The exact matrices U (X->Y->Z->X conjugation) and R = phase * U
    (a 120-degree Bloch rotation with R^3 proportional to identity),
    plus the two-qubit ``swap`` map."""
    return {"U": MATRIX_U, "R": MATRIX_R, "swap": swap_pair}


_MINUS_ONE = -ONE
_MATRIX_I = ((ONE, Amplitude()), (Amplitude(), ONE))
_MATRIX_X = ((Amplitude(), ONE), (ONE, Amplitude()))
_MATRIX_Y = ((Amplitude(), -IUNIT), (IUNIT, Amplitude()))
_MATRIX_Z = ((ONE, Amplitude()), (Amplitude(), _MINUS_ONE))

#: Atoms usable in a secret word: single-qubit matrices and scalars.
_WORD_MATRICES = {
    "I": _MATRIX_I,
    "X": _MATRIX_X,
    "Y": _MATRIX_Y,
    "Z": _MATRIX_Z,
    "U": MATRIX_U,
    "R": MATRIX_R,
}
_WORD_SCALARS = {"i": IUNIT, "-i": -IUNIT, "-1": _MINUS_ONE}


def secret_word_state(secret: SecretParam, word: tuple[str, ...]) -> StateVector:
    """Apply an operator word to the secret qubit.

    The word is an operator product read left to right, so ("X", "Z")
    means X.Z: Z hits the ket first.
    """
    state = secret.state()
    for atom in reversed(word):
        if atom in _WORD_SCALARS:
            state = state.scaled(_WORD_SCALARS[atom])
        elif atom in _WORD_MATRICES:
            state = apply_single_qubit(state, _WORD_MATRICES[atom], 0)
        else:
            raise ValueError(f"unknown word atom {atom!r}")
    return state


# ---------------------------------------------------------------------------
# identity registry


@dataclass(frozen=True)
class IdentityTerm:
    """One tensor-product term: sign * (factors) x (word applied at the
    secret slot).  Factor positions may be listed in swapped order to wire
    a swapped two-qubit state."""

    sign: int
    factors: tuple[tuple[tuple[int, ...], str], ...]
    secret_slot: int
    word: tuple[str, ...]

    def build(self, secret: SecretParam, bases: dict[str, StateVector]) -> StateVector:
        pieces = [(pos, bases[key]) for pos, key in self.factors]
        pieces.append(((self.secret_slot,), secret_word_state(secret, self.word)))
        state = assemble(pieces)
        return -state if self.sign < 0 else state


@dataclass(frozen=True)
class IdentityEquation:
    """scale * (signed projection of the encoded state) = sum of terms.

    ``signs`` selects the projector signs for the definition's observables;
    None means no projection (the full decomposition of the encoded state).
    """

    signs: tuple[int, ...] | None
    terms: tuple[IdentityTerm, ...]


@dataclass(frozen=True)
class IdentityDefinition:
    identity_id: str
    code_name: str  # "pentagon" or "heptagon"
    observables: tuple[str, ...]
    scale: Amplitude
    equations: tuple[IdentityEquation, ...]
    listing_notes: tuple[str, ...] = ()

    def code(self) -> StabilizerCode:
        return pentagon_code() if self.code_name == "pentagon" else heptagon_code()


def _term(
    sign: int,
    factors: tuple[tuple[tuple[int, ...], str], ...],
    slot: int,
    word: tuple[str, ...] = (),
) -> IdentityTerm:
    return IdentityTerm(sign=sign, factors=factors, secret_slot=slot, word=word)


def _pentagon_bell_equations() -> tuple[IdentityEquation, ...]:
    # outcome -> (projector signs for IIXIX, IIZIZ), factors, secret word at 3
    data = (
        ((-1, 1), "phi+-", "phi-+", 1, ("X", "Z")),
        ((-1, -1), "phi--", "phi--", 1, ()),
        ((1, -1), "phi++", "phi+-", -1, ("X",)),
        ((1, 1), "phi-+", "phi++", 1, ("Z",)),
    )
    return tuple(
        IdentityEquation(
            signs=signs,
            terms=(_term(sign, (((0, 1), left), ((2, 4), right)), 3, word),),
        )
        for signs, left, right, sign, word in data
    )


def _pentagon_chi_equations() -> tuple[IdentityEquation, ...]:
    # swapped chi on parties (1,2) is wired by listing its positions as (1,0)
    data = (
        ((1, 1), "chi++", 1, ("R", "Z")),
        ((-1, -1), "chi--", 1, ("R", "-i")),
        ((-1, 1), "chi-+", -1, ("R", "Y")),
        ((1, -1), "chi+-", 1, ("R", "X")),
    )
    return tuple(
        IdentityEquation(
            signs=signs,
            terms=(_term(sign, (((1, 0), key), ((2, 3), key)), 4, word),),
        )
        for signs, key, sign, word in data
    )


def _heptagon_bell_equations() -> tuple[IdentityEquation, ...]:
    data = (
        ((1, 1), "phi++", ()),
        ((-1, 1), "phi-+", ("Z",)),
        ((1, -1), "phi+-", ("X",)),
        ((-1, -1), "phi--", ("X", "Z")),
    )
    return tuple(
        IdentityEquation(
            signs=signs,
            terms=(
                _term(1, (((0, 1), key), ((3, 6), key), ((4, 5), key)), 2, word),
            ),
        )
        for signs, key, word in data
    )


def _heptagon_decomposition(family: str, rows) -> IdentityEquation:
    # rows: (sign, sector, left bit, secret word, right bit); the left
    # factor sits on parties 1,2,4 and the right one on 5,6,7.
    terms = []
    for sign, sector, left_b, word, right_b in rows:
        terms.append(
            _term(
                sign,
                (
                    ((0, 1, 3), f"{family}{sector}{left_b}"),
                    ((4, 5, 6), f"{family}{sector}{right_b}"),
                ),
                2,
                word,
            )
        )
    return IdentityEquation(signs=None, terms=tuple(terms))


_SQRT8 = SQRT2 + SQRT2

_REGISTRY: dict[str, IdentityDefinition] = {}


def _register(defn: IdentityDefinition) -> None:
    _REGISTRY[defn.identity_id] = defn


_register(
    IdentityDefinition(
        identity_id="pentagon-bell-single-branch",
        code_name="pentagon",
        observables=("IIXIX", "IIZIZ"),
        scale=ONE + ONE,
        equations=(_pentagon_bell_equations()[0],),
    )
)

_register(
    IdentityDefinition(
        identity_id="pentagon-bell-branches",
        code_name="pentagon",
        observables=("IIXIX", "IIZIZ"),
        scale=ONE + ONE,
        equations=_pentagon_bell_equations(),
    )
)

_register(
    IdentityDefinition(
        identity_id="pentagon-bell-decomposition",
        code_name="pentagon",
        observables=("IIXIX", "IIZIZ"),
        scale=ONE + ONE,
        equations=(
            IdentityEquation(
                signs=None,
                terms=(
                    _term(1, (((0, 1), "phi--"), ((2, 4), "phi--")), 3, ()),
                    _term(1, (((0, 1), "phi-+"), ((2, 4), "phi++")), 3, ("Z",)),
                    _term(1, (((0, 1), "phi+-"), ((2, 4), "phi-+")), 3, ("X", "Z")),
                    _term(-1, (((0, 1), "phi++"), ((2, 4), "phi+-")), 3, ("X",)),
                ),
            ),
        ),
    )
)

_register(
    IdentityDefinition(
        identity_id="pentagon-chi-branches",
        code_name="pentagon",
        observables=("IIXYI", "IIZXI"),
        scale=ONE + ONE,
        equations=_pentagon_chi_equations(),
    )
)

_register(
    IdentityDefinition(
        identity_id="pentagon-chi-decomposition",
        code_name="pentagon",
        observables=("IIXYI", "IIZXI"),
        scale=ONE + ONE,
        equations=(
            IdentityEquation(
                signs=None,
                terms=(
                    _term(1, (((1, 0), "chi+-"), ((2, 3), "chi+-")), 4, ("R", "X")),
                    _term(-1, (((1, 0), "chi-+"), ((2, 3), "chi-+")), 4, ("R", "Y")),
                    _term(1, (((1, 0), "chi++"), ((2, 3), "chi++")), 4, ("R", "Z")),
                    _term(-1, (((1, 0), "chi--"), ((2, 3), "chi--")), 4, ("i", "R")),
                ),
            ),
        ),
    )
)

_register(
    IdentityDefinition(
        identity_id="heptagon-bell-branches",
        code_name="heptagon",
        observables=("IIIIXXI", "IIIIZZI"),
        scale=ONE + ONE,
        equations=_heptagon_bell_equations(),
    )
)

_register(
    IdentityDefinition(
        identity_id="heptagon-z-decomposition",
        code_name="heptagon",
        observables=("IIIIXXI", "IIIIZZI", "IIIIIIZ"),
        scale=_SQRT8,
        equations=(
            _heptagon_decomposition(
                "Phi",
                (
                    (1, "+-", 0, ("X",), 1),
                    (1, "+-", 1, ("X",), 0),
                    (1, "--", 0, ("X", "Z"), 1),
                    (-1, "--", 1, ("X", "Z"), 0),
                    (1, "++", 0, (), 0),
                    (1, "++", 1, (), 1),
                    (1, "-+", 0, ("Z",), 0),
                    (-1, "-+", 1, ("Z",), 1),
                ),
            ),
        ),
    )
)

_register(
    IdentityDefinition(
        identity_id="heptagon-y-decomposition",
        code_name="heptagon",
        observables=("IIIIXXI", "IIIIZZI", "IIIIIIY"),
        scale=_SQRT8,
        equations=(
            _heptagon_decomposition(
                "Sigma",
                (
                    (1, "+-", 0, ("Z", "Y"), 0),
                    (1, "+-", 1, ("Y", "Z"), 1),
                    (1, "--", 0, ("Y",), 1),
                    (-1, "--", 1, ("Y",), 0),
                    (1, "++", 0, (), 1),
                    (1, "++", 1, (), 0),
                    (1, "-+", 0, ("Z",), 0),
                    (1, "-+", 1, ("Z",), 1),
                ),
            ),
        ),
        listing_notes=(
            "the reference listing prints term 8 with a minus sign; the "
            "derived sign is plus",
        ),
    )
)

_register(
    IdentityDefinition(
        identity_id="heptagon-x-decomposition",
        code_name="heptagon",
        observables=("IIIIXXI", "IIIIZZI", "IIIIIIX"),
        scale=_SQRT8,
        equations=(
            _heptagon_decomposition(
                "Omega",
                (
                    (1, "+-", 0, ("X",), 0),
                    (-1, "+-", 1, ("X",), 1),
                    (1, "--", 0, ("Z", "X"), 1),
                    (1, "--", 1, ("X", "Z"), 0),
                    (1, "++", 0, (), 0),
                    (1, "++", 1, (), 1),
                    (1, "-+", 0, ("Z",), 1),
                    (1, "-+", 1, ("Z",), 0),
                ),
            ),
        ),
        listing_notes=(
            "the reference listing prints the trailing factor of term 8 "
            "with ket label 1; the derived label is 0",
        ),
    )
)


def identity_ids() -> tuple[str, ...]:
    """All registered identity names, in registration order."""
    return tuple(_REGISTRY)


def get_identity(identity_id: str) -> IdentityDefinition:
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise ValueError(f"unknown identity {identity_id!r}") from None


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    passed: bool
    equations_checked: int
    secrets_checked: int
    # (secret index, equation index, basis bitstring, lhs dump, rhs dump)
    first_mismatch: tuple[int, int, str, str, str] | None

    def __bool__(self) -> bool:
        return self.passed


def verify_identity(
    identity_id: str,
    secrets: tuple[SecretParam, ...] = TEST_SECRETS,
) -> IdentityReport:
    """Check one identity exactly for every given secret.

    The left side is scale * (projected) encoded state, the right side the
    stored term sum; both are exact, so the comparison is amplitude-wise
    equality with no tolerance.
    """
    defn = get_identity(identity_id)
    code = defn.code()
    bases = standard_bases()
    observables = tuple(encode_symbol_string(s) for s in defn.observables)
    zero, one = logical_states(code)
    mismatch = None
    checked = 0
    for s_index, secret in enumerate(secrets):
        encoded = zero.scaled(secret.a) + one.scaled(secret.b)
        for e_index, equation in enumerate(defn.equations):
            lhs = encoded
            if equation.signs is not None:
                lhs = project_stabilizer(
                    lhs, observables[: len(equation.signs)], equation.signs
                )
            lhs = lhs.scaled(defn.scale)
            rhs = StateVector.null(code.n_qubits)
            for term in equation.terms:
                rhs = rhs + term.build(secret, bases)
            checked += 1
            if lhs != rhs and mismatch is None:
                for bits in range(1 << code.n_qubits):
                    a, b = lhs.amplitude(bits), rhs.amplitude(bits)
                    if a != b:
                        mismatch = (
                            s_index,
                            e_index,
                            format(bits, f"0{code.n_qubits}b"),
                            a.dump(),
                            b.dump(),
                        )
                        break
    return IdentityReport(
        identity_id=identity_id,
        passed=mismatch is None,
        equations_checked=checked,
        secrets_checked=len(secrets),
        first_mismatch=mismatch,
    )


# ---------------------------------------------------------------------------
# signed spreads and mutually unbiased bases


def signed_doily_spread() -> tuple[tuple[PauliOperator, ...], ...]:
    """A signed lift of one doily spread.

    Every triple closes to a genuine stabilizer group (no minus identity),
    so each contributes one common eigenbasis; the five bases are pairwise
    mutually unbiased.
    """
    rows = (
        ("ZZ", "IZ", "ZI"),
        ("IY", "-YI", "-YY"),
        ("XX", "IX", "XI"),
        ("XY", "-ZX", "YZ"),
        ("ZY", "-XZ", "YX"),
    )
    return tuple(tuple(encode_symbol_string(s) for s in row) for row in rows)


@dataclass(frozen=True)
class MubReport:
    n_bases: int
    states_per_basis: int
    passed: bool

    def __bool__(self) -> bool:
        return self.passed


def spread_mub_check(
    lines: tuple[tuple[PauliOperator, ...], ...] | None = None,
) -> MubReport:
    """Validate a signed spread lift and its mutually unbiased bases.

    Each line must be a commuting signed triple closing under products
    without -identity, the five unsigned triples must partition the 15
    nontrivial two-qubit observables, and every cross-basis overlap must
    equal 1/4 exactly.
    """
    if lines is None:
        lines = signed_doily_spread()
    if not lines:
        raise ValueError("lines do not form a spread")
    quarter = HALF * HALF
    covered: set[int] = set()
    bases: list[list[StateVector]] = []
    for line in lines:
        if len(line) != 3:
            raise ValueError("spread lines have exactly three points")
        a, b, c = line
        if not (a.commutes_with(b) and a.commutes_with(c) and b.commutes_with(c)):
            raise ValueError("line operators must commute")
        product = a * b
        if product.vec != c.vec:
            raise ValueError("line is not closed under the group product")
        if product.phase != c.phase:
            raise ValueError("sign lift turns a product into minus a line point")
        for op in line:
            if op.vec.bits == 0 or op.vec.bits in covered:
                raise ValueError("lines do not form a spread")
            covered.add(op.vec.bits)
        # the four common eigenstates of the pair generate the basis; the
        # signed triple itself picks one of them as its stabilizer state
        basis = joint_eigenbasis([a, b])
        bases.append(basis)
    if len(covered) != (1 << (2 * lines[0][0].n)) - 1:
        raise ValueError("lines do not form a spread")
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            for e in bases[i]:
                for f in bases[j]:
                    if e.inner(f).norm_squared() != quarter:
                        return MubReport(len(bases), 4, False)
    return MubReport(len(bases), 4, True)
