"""Small real-amplitude state-vector simulator.

Every circuit used here needs only real rotations, conditional flips,
single-qubit measurement, and reset, so amplitudes are kept real: this
halves the state and keeps the arithmetic near-exact. Registers stay plain
Python float lists because the working sizes are tiny (one to a handful of
qubits) and per-operation overhead dominates everything else. Extending to
complex amplitudes would only touch the probability and rotation kernels.

Qubit 0 is the most significant bit of the basis index, so |q0 q1 q2> maps
to index 0b(q0 q1 q2).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .choices import ZERO_PROB
from .errors import DomainError, IndexOutOfRange, NotBasisState

MAX_QUBITS = 20
NORM_TOL = 1e-9
_BASIS_TOL = 1e-9


@dataclass(frozen=True)
class QRegister:
    q: int
    amps: tuple[float, ...]

    def __post_init__(self):
        if not 1 <= self.q <= MAX_QUBITS:
            raise DomainError(f"register size must be in [1, {MAX_QUBITS}], got {self.q}")
        if len(self.amps) != 1 << self.q:
            raise DomainError(f"need {1 << self.q} amplitudes, got {len(self.amps)}")
        norm = math.fsum(a * a for a in self.amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"amplitudes not normalized: sum of squares = {norm!r}")

    def probability_one(self, qubit: int) -> float:
        """Probability of reading 1 on the named qubit."""
        _check_qubit(self, qubit)
        bit = 1 << (self.q - 1 - qubit)
        return math.fsum(a * a for i, a in enumerate(self.amps) if i & bit)


@dataclass(frozen=True)
class MeasurementBranch:
    outcome: int
    probability: float
    collapsed: QRegister


def _check_qubit(register: QRegister, qubit: int) -> None:
    if not 0 <= qubit < register.q:
        raise IndexOutOfRange(f"qubit {qubit} outside register of size {register.q}")


def init_basis(q: int) -> QRegister:
    """All-zeros basis state |0...0>."""
    amps = [0.0] * (1 << q)
    amps[0] = 1.0
    return QRegister(q, tuple(amps))


def init_plus(register: QRegister, qubit: int) -> QRegister:
    """Put the named qubit (currently |0>) into the equal superposition."""
    return rotate(register, qubit, math.pi / 4)


def rotate(register: QRegister, qubit: int, angle: float) -> QRegister:
    """Real rotation (cos -sin; sin cos) on the qubit's two-dimensional subspace."""
    _check_qubit(register, qubit)
    c = math.cos(angle)
    s = math.sin(angle)
    bit = 1 << (register.q - 1 - qubit)
    amps = list(register.amps)
    for i0 in range(len(amps)):
        if i0 & bit:
            continue
        i1 = i0 | bit
        a0, a1 = amps[i0], amps[i1]
        amps[i0] = c * a0 - s * a1
        amps[i1] = s * a0 + c * a1
    return QRegister(register.q, tuple(amps))


def xor_flip(register: QRegister, qubit: int, bit_value: int) -> QRegister:
    """Flip the qubit when bit_value is 1 (classically controlled X), else identity."""
    if bit_value not in (0, 1):
        raise DomainError(f"flip control must be a bit, got {bit_value}")
    if bit_value == 0:
        return register
    _check_qubit(register, qubit)
    bit = 1 << (register.q - 1 - qubit)
    amps = list(register.amps)
    for i0 in range(len(amps)):
        if i0 & bit:
            continue
        i1 = i0 | bit
        amps[i0], amps[i1] = amps[i1], amps[i0]
    return QRegister(register.q, tuple(amps))


def collapse(register: QRegister, qubit: int, outcome: int, probability: float) -> QRegister:
    """Project onto the measurement outcome and renormalize."""
    bit = 1 << (register.q - 1 - qubit)
    keep = bit if outcome == 1 else 0
    scale = 1.0 / math.sqrt(probability)
    amps = [
        a * scale if (i & bit) == keep else 0.0 for i, a in enumerate(register.amps)
    ]
    return QRegister(register.q, tuple(amps))


def measure_probs(register: QRegister, qubit: int) -> tuple[float, float]:
    """(pr_0, pr_1) for the named qubit; pr_0 is defined as 1 - pr_1."""
    pr1 = register.probability_one(qubit)
    return 1.0 - pr1, pr1


def measure_branches(register: QRegister, qubit: int) -> list[MeasurementBranch]:
    """All nonzero-probability outcomes with their collapsed states."""
    pr0, pr1 = measure_probs(register, qubit)
    branches = []
    for outcome, p in ((0, pr0), (1, pr1)):
        if p > ZERO_PROB:
            branches.append(MeasurementBranch(outcome, p, collapse(register, qubit, outcome, p)))
    return branches


def measure(register: QRegister, qubit: int, rng: random.Random) -> tuple[int, QRegister]:
    """Sample one outcome and return (outcome, collapsed register)."""
    pr0, pr1 = measure_probs(register, qubit)
    if pr1 <= ZERO_PROB:
        outcome = 0
    elif pr0 <= ZERO_PROB:
        outcome = 1
    else:
        outcome = 1 if rng.random() < pr1 else 0
    return outcome, collapse(register, qubit, outcome, (pr0, pr1)[outcome])


def basis_index(register: QRegister) -> int:
    """Index of the basis state the register sits in, or NotBasisState."""
    hit = -1
    for i, a in enumerate(register.amps):
        if abs(abs(a) - 1.0) <= _BASIS_TOL:
            hit = i
        elif abs(a) > _BASIS_TOL:
            raise NotBasisState(f"amplitude {a!r} at index {i} is neither 0 nor +-1")
    if hit < 0:
        raise NotBasisState("no unit-amplitude component found")
    return hit


def reset_all(register: QRegister, known_outcomes: Sequence[int] | None = None) -> QRegister:
    """Return |0...0>, given the register is in a (known) basis state.

    The physical story: the owner just measured everything, so it knows the
    basis state and may rotate each qubit back to |0>. When known_outcomes
    is supplied it is checked against the actual state.
    """
    idx = basis_index(register)
    if known_outcomes is not None:
        expect = 0
        for b in known_outcomes:
            expect = (expect << 1) | (1 if b else 0)
        if len(tuple(known_outcomes)) != register.q or expect != idx:
            raise NotBasisState(
                f"register sits in basis state {idx:0{register.q}b}, not the declared one"
            )
    return init_basis(register.q)
