"""Online streaming algorithms for the black-hats games.

All of them share one contract: start(advice) resets the run state, then
step(symbol, choices) consumes one request and returns an answer bit
exactly at guardian markers ('2'). Randomness -- measurements, the fair
opening guess, noisy-subroutine flips -- only ever flows through the
choices argument, so a single code path serves sampled runs, replay, and
exact branch enumeration.

The quantum single-instance algorithms keep one qubit: the no-advice
variant opens with a fair quantum guess, the advice variant loads the
first guardian's correct answer. Either way each '1' in a prisoner segment
rotates the qubit by pi / 2**(s+1); on promise inputs the accumulated
rotation per segment is an integer multiple of pi/2, so every later
measurement is deterministic and the answers walk the suffix-parity chain.
The interleaved variant runs lam such chains on lam qubits, seeding chain
1 with the guess and chains 2..lam with advice bits.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .choices import ChoiceSource, SampledChoices
from .errors import (
    DomainError,
    MalformedTable,
    OutputCountMismatch,
    PromiseViolation,
)
from .functions import FunctionOracle, NoisyOracle, PartialModSpec, noisy_eval
from .problem import (
    GuardianOutputs,
    InputWord,
    ParsedInput,
    ProblemSpec,
    block_cost,
    opt_cost,
    parse_input,
    stream_targets,
    suffix_parities,
)
from . import qsim

SYMBOLS = "012"


@dataclass(frozen=True)
class MeasurementRecord:
    label: str
    outcome: int
    probability: float


def _measure_choice(reg, qubit: int, choices: ChoiceSource, label: str):
    """Measure through a choice point; collapse only the taken branch."""
    pr0, pr1 = qsim.measure_probs(reg, qubit)
    options = [(o, p) for o, p in ((0, pr0), (1, pr1)) if p > qsim.ZERO_PROB]
    idx = choices.choose(tuple(p for _, p in options), label)
    outcome, p = options[idx]
    return outcome, p, qsim.collapse(reg, qubit, outcome, p)


@dataclass(frozen=True)
class RunTrace:
    outputs: GuardianOutputs
    cost: float
    opt_cost: float
    ratio: float
    advice: str
    choice_log: tuple
    measurements: tuple[MeasurementRecord, ...]


class OnlineAlgorithm:
    """Base contract: one answer bit per '2', nothing elsewhere."""

    name: str = "online"
    spec: ProblemSpec | None = None
    advice_bits: int = 0
    memory_bits: int = 0
    memory_qubits: int = 0

    def __init__(self):
        self.measurements: list[MeasurementRecord] = []

    def start(self, advice: str) -> None:
        self.measurements = []

    def step(self, symbol: str, choices: ChoiceSource) -> int | None:
        raise NotImplementedError

    def finish(self) -> None:
        """End-of-stream hook (final segment validation)."""


def advice_g1(spec: ProblemSpec, parsed: ParsedInput, f: FunctionOracle | None = None) -> str:
    """Advice bits: g_1 for a single instance, g^2_1..g^lam_1 when interleaved."""
    g = suffix_parities(spec, parsed, f)
    if spec.lam == 1:
        return str(g[0][0])
    return "".join(str(g[j][0]) for j in range(1, spec.lam))


class _SegmentValidator:
    """Tracks per-segment ones counts and enforces the promise of the oracle."""

    def __init__(self, oracle: FunctionOracle, validate_final: bool):
        self._partial = isinstance(oracle, PartialModSpec)
        self._s = oracle.s_mod if self._partial else 0
        self._validate_final = validate_final

    def check(self, ones: int, length: int, final: bool) -> None:
        if not self._partial or (final and not self._validate_final):
            return
        block = 1 << self._s
        if ones % block != 0 or ones // block < 2:
            raise PromiseViolation(
                f"segment with {ones} ones breaks the promise at s={self._s}"
            )


class _QuantumChain(OnlineAlgorithm):
    """Single-instance one-qubit chain; with advice it is exactly optimal."""

    def __init__(self, spec: ProblemSpec, use_advice: bool, validate_final: bool = True):
        super().__init__()
        if spec.lam != 1:
            raise DomainError("single-instance algorithm needs lambda = 1")
        if not isinstance(spec.function, PartialModSpec):
            raise DomainError("rotation chain requires the partial-mod oracle")
        self.spec = spec
        self.name = "qalg-a" if use_advice else "qalg-b"
        self.advice_bits = 1 if use_advice else 0
        self.memory_qubits = 1
        self.angle = math.pi / float(2 ** (spec.function.s_mod + 1))
        self._validator = _SegmentValidator(spec.function, validate_final)

    def start(self, advice: str) -> None:
        super().start(advice)
        if len(advice) != self.advice_bits:
            raise DomainError(f"{self.name} needs {self.advice_bits} advice bit(s)")
        self._g1 = int(advice) if self.advice_bits else None
        self.reg = qsim.init_basis(1)
        assert self.reg.q == self.memory_qubits
        self._seen = 0  # guardians answered so far
        self._ones = 0
        self._len = 0

    def _measure(self, choices: ChoiceSource) -> int:
        label = f"measure:y{self._seen}"
        outcome, p, self.reg = _measure_choice(self.reg, 0, choices, label)
        self.measurements.append(MeasurementRecord(label, outcome, p))
        return outcome

    def step(self, symbol: str, choices: ChoiceSource) -> int | None:
        if symbol == "2":
            if self._seen >= 1:
                self._validator.check(self._ones, self._len, final=False)
            self._ones = 0
            self._len = 0
            self._seen += 1
            if self._seen == 1:
                if self.advice_bits:
                    self.reg = qsim.xor_flip(self.reg, 0, self._g1)
                else:
                    self.reg = qsim.init_plus(self.reg, 0)
            return self._measure(choices)
        self._len += 1
        if symbol == "1":
            self._ones += 1
            if self._seen < self.spec.k:  # final segment is read but skipped
                self.reg = qsim.rotate(self.reg, 0, self.angle)
        return None

    def finish(self) -> None:
        if self._seen:
            self._validator.check(self._ones, self._len, final=True)


class _RandomizedChain(OnlineAlgorithm):
    """Classical chain: one advice bit, one running bit, noisy subroutine calls."""

    name = "ralg-a"
    advice_bits = 1
    memory_bits = 1

    def __init__(self, spec: ProblemSpec, epsilon: float, validate_final: bool = True):
        super().__init__()
        if spec.lam != 1:
            raise DomainError("single-instance algorithm needs lambda = 1")
        self.spec = spec
        self.noisy = NoisyOracle(spec.function, epsilon)
        self._validator = _SegmentValidator(spec.function, validate_final)

    def start(self, advice: str) -> None:
        super().start(advice)
        if len(advice) != 1:
            raise DomainError("ralg-a needs exactly one advice bit")
        self._p = int(advice)
        self._seen = 0
        self._seg: list[str] = []

    def step(self, symbol: str, choices: ChoiceSource) -> int | None:
        if symbol == "2":
            if 1 <= self._seen < self.spec.k:
                self._p ^= noisy_eval(self.noisy, "".join(self._seg), choices)
            self._seg = []
            self._seen += 1
            return self._p
        self._seg.append(symbol)
        return None

    def finish(self) -> None:
        # the segment after the last guardian is never evaluated, only checked
        if self._seen:
            seg = "".join(self._seg)
            self._validator.check(seg.count("1"), len(seg), final=True)


class _InterleavedChains(OnlineAlgorithm):
    """lam rotation chains on lam qubits; chain 1 guesses, the rest use advice."""

    name = "ibh"

    def __init__(self, spec: ProblemSpec, validate_final: bool = True):
        super().__init__()
        if spec.lam < 2:
            raise DomainError("interleaved algorithm needs lambda > 1")
        if not isinstance(spec.function, PartialModSpec):
            raise DomainError("rotation chain requires the partial-mod oracle")
        self.spec = spec
        self.advice_bits = spec.lam - 1
        self.memory_qubits = spec.lam
        self.angle = math.pi / float(2 ** (spec.function.s_mod + 1))
        self._validator = _SegmentValidator(spec.function, validate_final)

    def start(self, advice: str) -> None:
        super().start(advice)
        if len(advice) != self.advice_bits:
            raise DomainError(f"ibh needs {self.advice_bits} advice bits")
        self._advice = [int(b) for b in advice]
        self.reg = qsim.init_basis(self.spec.lam)
        assert self.reg.q == self.memory_qubits
        self._seen = 0
        self._inst = 0  # instance owning the segment being read
        self._round = 0
        self._ones = 0
        self._len = 0

    def _measure(self, choices: ChoiceSource, qubit: int) -> int:
        label = f"measure:g{self._seen}:p{qubit + 1}"
        outcome, p, self.reg = _measure_choice(self.reg, qubit, choices, label)
        self.measurements.append(MeasurementRecord(label, outcome, p))
        return outcome

    def step(self, symbol: str, choices: ChoiceSource) -> int | None:
        lam = self.spec.lam
        if symbol == "2":
            if self._seen >= 1:
                self._validator.check(self._ones, self._len, final=False)
            c = self._seen
            self._seen += 1
            inst, rnd = c % lam, c // lam
            self._inst, self._round = inst, rnd
            self._ones = 0
            self._len = 0
            if rnd == 0:
                if inst == 0:
                    self.reg = qsim.init_plus(self.reg, 0)
                else:
                    self.reg = qsim.xor_flip(self.reg, inst, self._advice[inst - 1])
            return self._measure(choices, inst)
        self._len += 1
        if symbol == "1":
            self._ones += 1
            if self._round < self.spec.k - 1:  # last-round segments are skipped
                self.reg = qsim.rotate(self.reg, self._inst, self.angle)
        return None

    def finish(self) -> None:
        if self._seen:
            self._validator.check(self._ones, self._len, final=True)


class TableAlgorithm(OnlineAlgorithm):
    """Deterministic machine given by total transition/output tables.

    Answers are read from the guardian column of the output table (the
    state's answer when the current request is '2'); the other columns
    exist to keep the tables total but never reach the output stream.
    """

    name = "table"

    def __init__(self, n_states: int, transitions, outputs):
        super().__init__()
        if n_states < 1:
            raise MalformedTable("need at least one state")
        trans = tuple(tuple(row) for row in transitions)
        outs = tuple(tuple(row) for row in outputs)
        if len(trans) != n_states or len(outs) != n_states:
            raise MalformedTable(f"tables must have {n_states} rows")
        for row in trans:
            if len(row) != 3 or any(not (0 <= s < n_states) for s in row):
                raise MalformedTable("transition rows must map all of {0,1,2} to states")
        for row in outs:
            if len(row) != 3 or any(b not in (0, 1) for b in row):
                raise MalformedTable("output rows must map all of {0,1,2} to bits")
        self.n_states = n_states
        self.transitions = trans
        self.outputs = outs
        self.memory_bits = max(1, (n_states - 1).bit_length()) if n_states > 1 else 0

    def start(self, advice: str = "") -> None:
        super().start(advice)
        self.state = 0

    def step(self, symbol: str, choices: ChoiceSource) -> int | None:
        idx = SYMBOLS.index(symbol)
        out = self.outputs[self.state][2] if symbol == "2" else None
        self.state = self.transitions[self.state][idx]
        return out

    def to_json(self) -> dict:
        return {
            "S": self.n_states,
            "transitions": [list(r) for r in self.transitions],
            "outputs": [list(r) for r in self.outputs],
        }

    @staticmethod
    def from_json(doc: dict) -> "TableAlgorithm":
        try:
            return TableAlgorithm(int(doc["S"]), doc["transitions"], doc["outputs"])
        except KeyError as exc:
            raise MalformedTable(f"table document missing field {exc}") from exc


def qalg_b(spec: ProblemSpec, validate_final: bool = True) -> OnlineAlgorithm:
    """One qubit, no advice: fair quantum guess then the rotation chain."""
    return _QuantumChain(spec, use_advice=False, validate_final=validate_final)


def qalg_a(spec: ProblemSpec, validate_final: bool = True) -> OnlineAlgorithm:
    """One qubit, one advice bit: exactly optimal on promise inputs."""
    return _QuantumChain(spec, use_advice=True, validate_final=validate_final)


def ralg_a(spec: ProblemSpec, epsilon: float, validate_final: bool = True) -> OnlineAlgorithm:
    """One advice bit plus a bounded-error subroutine with flip rate epsilon."""
    return _RandomizedChain(spec, epsilon, validate_final=validate_final)


def ibh_alg(spec: ProblemSpec, validate_final: bool = True) -> OnlineAlgorithm:
    """lam qubits and lam-1 advice bits for the interleaved game."""
    return _InterleavedChains(spec, validate_final=validate_final)


def table_algorithm(n_states: int, transitions, outputs) -> TableAlgorithm:
    return TableAlgorithm(n_states, transitions, outputs)


def resolve_advice(
    spec: ProblemSpec, parsed: ParsedInput, alg: OnlineAlgorithm, advice
) -> str:
    """Normalize the advice argument: explicit bits, an oracle, or the default."""
    if isinstance(advice, str):
        bits = advice
    elif advice is None:
        bits = advice_g1(spec, parsed) if alg.advice_bits else ""
    elif callable(advice):
        bits = advice(spec, parsed)
    else:
        raise DomainError(f"cannot interpret advice {advice!r}")
    if len(bits) != alg.advice_bits:
        raise DomainError(
            f"{alg.name} expects {alg.advice_bits} advice bits, got {len(bits)}"
        )
    return bits


def run_online(
    alg: OnlineAlgorithm,
    word: InputWord | str,
    advice=None,
    rng: random.Random | None = None,
    *,
    choices: ChoiceSource | None = None,
    spec: ProblemSpec | None = None,
    parsed: ParsedInput | None = None,
    targets: tuple[int, ...] | None = None,
) -> RunTrace:
    """Feed the word request by request, collect answers, and score the run.

    parsed/targets are pure functions of (spec, word); callers looping over
    many runs of the same word may precompute them once.
    """
    spec = spec if spec is not None else alg.spec
    if spec is None:
        raise DomainError("no problem spec bound to this run; pass spec=...")
    if not isinstance(word, InputWord):
        word = InputWord(str(word))
    if parsed is None:
        parsed = parse_input(spec, word)
    bits = resolve_advice(spec, parsed, alg, advice)
    if targets is None:
        targets = stream_targets(spec, parsed)
    if choices is None:
        choices = SampledChoices(rng if rng is not None else random.Random(0))
    alg.start(bits)
    outputs: list[int] = []
    for pos, symbol in enumerate(word.symbols):
        out = alg.step(symbol, choices)
        if symbol == "2":
            if out is None:
                raise OutputCountMismatch(f"no answer at guardian position {pos + 1}")
            outputs.append(out)
        elif out is not None:
            raise OutputCountMismatch(f"answer emitted off guardian position {pos + 1}")
    alg.finish()
    if len(outputs) != spec.n_guardians:
        raise OutputCountMismatch(
            f"emitted {len(outputs)} answers, expected {spec.n_guardians}"
        )
    total = block_cost(spec, targets, outputs)
    opt = opt_cost(spec)
    return RunTrace(
        outputs=GuardianOutputs(tuple(outputs)),
        cost=total,
        opt_cost=opt,
        ratio=total / opt,
        advice=bits,
        choice_log=tuple(getattr(choices, "log", ())),
        measurements=tuple(alg.measurements),
    )
