"""Exact state vectors over the amplitude ring.

A state on n qubits is a table of 2^n amplitudes from
:mod:`stabshare.ring`.  Qubit 0 is the leftmost tensor factor, so its
bit is the most significant bit of the basis index: |q0 q1 ... q_{n-1}>
sits at index q0*2^{n-1} + ... + q_{n-1}.

Everything here is exact.  Norms are rational, normalization is only
defined when the squared norm is a power of two (which covers all
stabilizer projections used by the codes), and state comparisons are
component equalities in the ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .pauli import PauliOperator
from .ring import Amplitude, HALF, INV_SQRT2, IUNIT, ONE, PHASE_GROUP, ZERO

__all__ = [
    "StateVector",
    "SecretParam",
    "assemble",
    "project_stabilizer",
    "joint_eigenbasis",
    "apply_single_qubit",
    "ket_bit",
    "ket_tilde",
    "ket_hat",
    "bell_state",
    "chi_state",
    "MATRIX_U",
    "MATRIX_R",
]


class StateVector:
    """An exact, not necessarily normalized, n-qubit state."""

    __slots__ = ("_n", "_amps")

    def __init__(self, n: int, amps: Sequence[Amplitude]):
        if not 1 <= n <= 7:
            raise ValueError(f"qubit count {n} out of range 1..7")
        amps = tuple(amps)
        if len(amps) != 1 << n:
            raise ValueError(f"expected {1 << n} amplitudes, got {len(amps)}")
        self._n = n
        self._amps = amps

    @classmethod
    def basis(cls, n: int, bits: int) -> "StateVector":
        """The computational basis state |bits> (qubit 0 = top bit)."""
        if not 0 <= bits < (1 << n):
            raise ValueError(f"basis index {bits} out of range for {n} qubits")
        return cls(n, tuple(ONE if b == bits else ZERO for b in range(1 << n)))

    @classmethod
    def null(cls, n: int) -> "StateVector":
        """The zero vector, for accumulating sums."""
        return cls(n, (ZERO,) * (1 << n))

    @property
    def n(self) -> int:
        return self._n

    def amplitude(self, bits: int) -> Amplitude:
        return self._amps[bits]

    def amplitudes(self) -> tuple[Amplitude, ...]:
        return self._amps

    def nonzero_items(self) -> list[tuple[int, Amplitude]]:
        return [(b, a) for b, a in enumerate(self._amps) if a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self._n == other._n and self._amps == other._amps

    def __hash__(self) -> int:
        return hash((self._n, self._amps))

    def __add__(self, other: "StateVector") -> "StateVector":
        if not isinstance(other, StateVector):
            return NotImplemented
        if self._n != other._n:
            raise ValueError("qubit count mismatch")
        return StateVector(
            self._n, tuple(a + b for a, b in zip(self._amps, other._amps))
        )

    def __sub__(self, other: "StateVector") -> "StateVector":
        if not isinstance(other, StateVector):
            return NotImplemented
        if self._n != other._n:
            raise ValueError("qubit count mismatch")
        return StateVector(
            self._n, tuple(a - b for a, b in zip(self._amps, other._amps))
        )

    def __neg__(self) -> "StateVector":
        return StateVector(self._n, tuple(-a for a in self._amps))

    def scaled(self, factor: Amplitude | int) -> "StateVector":
        return StateVector(self._n, tuple(a * factor for a in self._amps))

    def __bool__(self) -> bool:
        return any(self._amps)

    def apply_pauli(self, op: PauliOperator) -> "StateVector":
        """Apply a signed Pauli operator, tracking the exact phase."""
        n = self._n
        if op.n != n:
            raise ValueError("qubit count mismatch")
        mask = (1 << n) - 1
        q = op.vec.bits >> n
        p = op.vec.bits & mask
        base = (op.phase + 3 * (q & p).bit_count()) & 3
        amps = [ZERO] * (1 << n)
        for b, a in enumerate(self._amps):
            if a:
                b2 = b ^ p
                t = base + 2 * (q & b2).bit_count()
                amps[b2] = a.times_i_power(t)
        return StateVector(n, amps)

    def apply_projector(self, op: PauliOperator, sign: int = 1) -> "StateVector":
        """Apply (1 + sign*O)/2 for a signed Pauli observable O."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        moved = self.apply_pauli(op)
        if sign == -1:
            moved = -moved
        return (self + moved).scaled(HALF)

    def inner(self, other: "StateVector") -> Amplitude:
        """<self|other> with the left argument conjugated."""
        if self._n != other._n:
            raise ValueError("qubit count mismatch")
        total = ZERO
        for a, b in zip(self._amps, other._amps):
            if a and b:
                total = total + a.conjugate() * b
        return total

    def norm_squared(self) -> Amplitude:
        return self.inner(self)

    def normalized(self) -> "StateVector":
        """Rescale to unit norm; the squared norm must be a power of two."""
        scale = self.norm_squared().inv_sqrt()
        return self.scaled(scale)

    def tensor(self, other: "StateVector") -> "StateVector":
        n = self._n + other._n
        if n > 7:
            raise ValueError("tensor product exceeds 7 qubits")
        amps = [ZERO] * (1 << n)
        for b1, a1 in self.nonzero_items():
            base = b1 << other._n
            for b2, a2 in other.nonzero_items():
                amps[base | b2] = a1 * a2
        return StateVector(n, amps)

    def permuted(self, perm: Sequence[int]) -> "StateVector":
        """Move the qubit at position j to position perm[j]."""
        n = self._n
        if sorted(perm) != list(range(n)):
            raise ValueError(f"{perm!r} is not a permutation of 0..{n - 1}")
        amps = [ZERO] * (1 << n)
        for b, a in enumerate(self._amps):
            if a:
                b2 = 0
                for j in range(n):
                    if (b >> (n - 1 - j)) & 1:
                        b2 |= 1 << (n - 1 - perm[j])
                amps[b2] = a
        return StateVector(n, amps)

    def reduced_density_matrix(
        self, positions: Sequence[int]
    ) -> tuple[tuple[Amplitude, ...], ...]:
        """Trace out every qubit not listed; exact matrix over the ring.

        Row and column indices follow the order of ``positions``.
        """
        n = self._n
        kept = list(positions)
        if len(set(kept)) != len(kept) or any(not 0 <= j < n for j in kept):
            raise ValueError(f"bad qubit selection {positions!r}")
        rest = [j for j in range(n) if j not in kept]
        m = len(kept)

        def global_index(sel_bits: int, env_bits: int) -> int:
            idx = 0
            for pos, j in enumerate(kept):
                if (sel_bits >> (m - 1 - pos)) & 1:
                    idx |= 1 << (n - 1 - j)
            for pos, j in enumerate(rest):
                if (env_bits >> (len(rest) - 1 - pos)) & 1:
                    idx |= 1 << (n - 1 - j)
            return idx

        size = 1 << m
        rho = [[ZERO] * size for _ in range(size)]
        for env in range(1 << len(rest)):
            col = [self._amps[global_index(s, env)] for s in range(size)]
            for r in range(size):
                if col[r]:
                    for c in range(size):
                        if col[c]:
                            rho[r][c] = rho[r][c] + col[r] * col[c].conjugate()
        return tuple(tuple(row) for row in rho)

    def equal_up_to_global_phase(self, other: "StateVector") -> bool:
        """Equality modulo the eight unit phases i^a * ((1+i)/sqrt2)^b."""
        if not isinstance(other, StateVector) or self._n != other._n:
            return False
        return any(
            self._amps == tuple(a * phase for a in other._amps)
            for phase in PHASE_GROUP
        )

    def dump(self) -> str:
        """All 2^n amplitudes as 'x_re,x_im,y_re,y_im,k' fields, ';'-joined."""
        return ";".join(a.dump() for a in self._amps)

    def __str__(self) -> str:
        terms = []
        for b, a in self.nonzero_items():
            text = str(a)
            if "+" in text[1:] or "-" in text[1:] or "/" in text:
                text = f"({text})"
            terms.append(f"{text}|{b:0{self._n}b}>")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"StateVector({self._n}, <{len(self.nonzero_items())} terms>)"


@dataclass(frozen=True)
class SecretParam:
    """A qubit secret a|0> + b|1> with exact coefficients."""

    a: Amplitude
    b: Amplitude

    def state(self) -> StateVector:
        return StateVector(1, (self.a, self.b))

    def norm_squared(self) -> Amplitude:
        return self.a.norm_squared() + self.b.norm_squared()


def assemble(pieces: Iterable[tuple[Sequence[int], StateVector]]) -> StateVector:
    """Tensor factor states into explicit qubit positions.

    Each piece is (positions, state) where positions lists, in order, the
    global slots of that factor's qubits.  The positions of all pieces
    must partition 0..n-1.  This keeps wiring like "Bell pair on qubits
    2 and 4, residual factor on 0,1 and the secret on 3" explicit.
    """
    pieces = [(tuple(pos), st) for pos, st in pieces]
    all_positions = [j for pos, _ in pieces for j in pos]
    n = len(all_positions)
    if sorted(all_positions) != list(range(n)):
        raise ValueError("piece positions must partition the qubit range")
    for pos, st in pieces:
        if len(pos) != st.n:
            raise ValueError(f"positions {pos!r} do not match a {st.n}-qubit state")
    amps = [ZERO] * (1 << n)
    choices = [st.nonzero_items() for _, st in pieces]
    for combo in itertools.product(*choices):
        bits = 0
        amp = ONE
        for (pos, _), (idx, a) in zip(pieces, combo):
            amp = amp * a
            for local, j in enumerate(pos):
                if (idx >> (len(pos) - 1 - local)) & 1:
                    bits |= 1 << (n - 1 - j)
        amps[bits] = amps[bits] + amp
    return StateVector(n, amps)


def project_stabilizer(
    state: StateVector,
    ops: Sequence[PauliOperator],
    signs: Sequence[int] | None = None,
) -> StateVector:
    """Apply the product of projectors (1 + s_i O_i)/2, unnormalized."""
    if signs is None:
        signs = [1] * len(ops)
    if len(signs) != len(ops):
        raise ValueError("one sign per operator required")
    for op, sign in zip(ops, signs):
        state = state.apply_projector(op, sign)
    return state


def joint_eigenbasis(ops: Sequence[PauliOperator]) -> list[StateVector]:
    """All common eigenvectors of commuting Paulis, one per sign pattern.

    Returns 2^len(ops) unit vectors ordered by the sign pattern read as
    bits (+1 -> 0, -1 -> 1, first operator = top bit).  Raises if some
    pattern has no eigenvector (the operators were dependent).
    """
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].n
    basis = []
    for pattern in range(1 << len(ops)):
        signs = [
            -1 if (pattern >> (len(ops) - 1 - pos)) & 1 else 1
            for pos in range(len(ops))
        ]
        for b in range(1 << n):
            vec = project_stabilizer(StateVector.basis(n, b), ops, signs)
            if vec:
                basis.append(vec.normalized())
                break
        else:
            raise ValueError(f"no eigenvector for sign pattern {signs!r}")
    return basis


def apply_single_qubit(
    state: StateVector,
    matrix: Sequence[Sequence[Amplitude]],
    qubit: int,
) -> StateVector:
    """Apply an exact 2x2 matrix ((m00, m01), (m10, m11)) at one position."""
    n = state.n
    if not 0 <= qubit < n:
        raise IndexError(f"qubit {qubit} out of range for {n} qubits")
    shift = n - 1 - qubit
    amps = [ZERO] * (1 << n)
    for b, a in state.nonzero_items():
        base = b & ~(1 << shift)
        bit = (b >> shift) & 1
        amps[base] = amps[base] + matrix[0][bit] * a
        amps[base | (1 << shift)] = amps[base | (1 << shift)] + matrix[1][bit] * a
    return StateVector(n, amps)


def ket_bit(b: int) -> StateVector:
    """|0> or |1>."""
    return StateVector.basis(1, b)


def ket_tilde(b: int) -> StateVector:
    """The Y eigenstates (|0> +- i|1>)/sqrt2; b=0 gives eigenvalue +1."""
    return StateVector(1, (INV_SQRT2, INV_SQRT2 * IUNIT.times_i_power(2 * b)))


def ket_hat(b: int) -> StateVector:
    """The X eigenstates (|0> +- |1>)/sqrt2; b=0 gives eigenvalue +1."""
    sign = ONE if b == 0 else -ONE
    return StateVector(1, (INV_SQRT2, INV_SQRT2 * sign))


def bell_state(s_xx: int, s_zz: int) -> StateVector:
    """The Bell state with XX eigenvalue s_xx and ZZ eigenvalue s_zz."""
    if s_xx not in (1, -1) or s_zz not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    if s_zz == 1:
        amps = [INV_SQRT2, ZERO, ZERO, INV_SQRT2 * s_xx]
    else:
        amps = [ZERO, INV_SQRT2, INV_SQRT2 * s_xx, ZERO]
    return StateVector(2, amps)


def chi_state(s_xy: int, s_zx: int) -> StateVector:
    """The two-qubit state with XY eigenvalue s_xy and ZX eigenvalue s_zx."""
    if s_xy not in (1, -1) or s_zx not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    # chi^{ss'} = (|00> + s'|01> - s*s'*i|10> + s*i|11>)/2
    return StateVector(
        2,
        (
            HALF,
            HALF * s_zx,
            HALF * IUNIT.times_i_power(2) * (s_xy * s_zx),
            HALF * IUNIT * s_xy,
        ),
    )


# U maps X -> Y -> Z -> X under conjugation; R is the same rotation shifted
# by the eighth root of unity so that R = (I + i(X+Y+Z))/2 and R^3 = -I.
MATRIX_U = (
    (INV_SQRT2, INV_SQRT2),
    (Amplitude(0, 0, 0, 1, 1), Amplitude(0, 0, 0, -1, 1)),
)
MATRIX_R = (
    (Amplitude(1, 1, 0, 0, 1), Amplitude(1, 1, 0, 0, 1)),
    (Amplitude(-1, 1, 0, 0, 1), Amplitude(1, -1, 0, 0, 1)),
)
