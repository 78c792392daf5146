"""Boolean function oracles used as the prisoner function.

PartialMOD is the promise function of interest: inputs must contain
v * 2**s ones with v >= 2, and the value is v mod 2. XOR and AND are total
helpers for brute-force searches and subfunction counting. NoisyOracle
wraps any oracle as a bounded-error subroutine whose flip event goes
through a choice point, so exact enumeration can branch on it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .choices import ChoiceSource
from .errors import DomainError, Infeasible, PromiseViolation


@dataclass(frozen=True)
class FunctionOracle:
    """Deterministic oracle over bit strings; partial ones raise PromiseViolation."""

    name: str
    is_total: bool = True
    arity: int | None = None  # optional declared input length, enforced when set

    def eval(self, x: str) -> int:
        raise NotImplementedError

    def _check_arity(self, x: str) -> None:
        if self.arity is not None and len(x) != self.arity:
            raise DomainError(f"{self.name} declared for length {self.arity}, got {len(x)}")


@dataclass(frozen=True)
class PartialModSpec(FunctionOracle):
    """Promise function: #ones = v * 2**s_mod with v >= 2; value is v mod 2."""

    s_mod: int = 0
    name: str = "partialmod"
    is_total: bool = False

    def __post_init__(self):
        if self.s_mod < 0:
            raise DomainError("s_mod must be >= 0")

    def eval(self, x: str) -> int:
        return partial_mod_eval(self, x)


@dataclass(frozen=True)
class XorOracle(FunctionOracle):
    name: str = "xor"

    def eval(self, x: str) -> int:
        self._check_arity(x)
        return x.count("1") & 1


@dataclass(frozen=True)
class AndOracle(FunctionOracle):
    name: str = "and"

    def eval(self, x: str) -> int:
        self._check_arity(x)
        return 1 if len(x) >= 1 and "0" not in x else 0


@dataclass(frozen=True)
class NoisyOracle:
    """Bounded-error wrapper: returns base(x), complemented with probability epsilon.

    The flip is a declared choice point; it models the per-evaluation error
    of a bounded-error streaming subroutine, not an internal faulty machine.
    """

    base: FunctionOracle
    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise DomainError(f"epsilon must be in [0, 0.5), got {self.epsilon}")


def partial_mod_eval(spec: PartialModSpec, x: str) -> int:
    """Value of the promise function, or PromiseViolation off promise."""
    ones = x.count("1")
    block = 1 << spec.s_mod
    if ones % block != 0:
        raise PromiseViolation(f"#ones={ones} is not a multiple of 2^{spec.s_mod}")
    v = ones // block
    if v < 2:
        raise PromiseViolation(f"#ones={ones} gives v={v} < 2")
    return v & 1


def gen_partial_mod_input(
    spec: PartialModSpec, m: int, v: int, rng: random.Random
) -> str:
    """Length-m bit string with exactly v * 2**s_mod ones at rng-chosen positions."""
    if v < 2:
        raise DomainError(f"v must be >= 2, got {v}")
    ones = v << spec.s_mod
    if ones > m:
        raise Infeasible(f"need {ones} ones but length is {m}")
    positions = rng.sample(range(m), ones)
    bits = ["0"] * m
    for p in positions:
        bits[p] = "1"
    return "".join(bits)


def sample_v(spec: PartialModSpec, m: int, rng: random.Random, v_max: int | None = None) -> int:
    """Uniform v from {2, ..., v_max}; v_max defaults to floor(m / 2**s_mod)."""
    if v_max is None:
        v_max = m >> spec.s_mod
    if v_max < 2:
        raise Infeasible(f"length {m} admits no v >= 2 at s_mod={spec.s_mod}")
    return rng.randint(2, v_max)


def noisy_eval(oracle: NoisyOracle, x: str, choices: ChoiceSource) -> int:
    """base(x) with probability 1 - epsilon, its complement with probability epsilon."""
    value = oracle.base.eval(x)
    flip = choices.choose((1.0 - oracle.epsilon, oracle.epsilon), "noise-flip")
    return value ^ flip


def total_oracle(name: str, m: int | None = None) -> FunctionOracle:
    """Total helper oracle by name (xor | and), optionally pinned to length m."""
    if m is not None and m < 1:
        raise DomainError("declared length must be >= 1")
    key = name.lower()
    if key == "xor":
        return XorOracle(arity=m)
    if key == "and":
        return AndOracle(arity=m)
    raise DomainError(f"unknown total oracle {name!r}")


def oracle_to_json(oracle: FunctionOracle) -> dict:
    if isinstance(oracle, PartialModSpec):
        return {"name": "partialmod", "s": oracle.s_mod}
    return {"name": oracle.name}


def oracle_from_json(doc: dict) -> FunctionOracle:
    name = doc.get("name")
    if name == "partialmod":
        if "s" not in doc:
            raise DomainError("partialmod oracle needs an integer field 's'")
        return PartialModSpec(s_mod=int(doc["s"]))
    if name in ("xor", "and"):
        return total_oracle(name)
    raise DomainError(f"unknown function descriptor {doc!r}")


def min_promise_length(oracle: FunctionOracle) -> int:
    """Shortest segment length on which the oracle has any valid input."""
    if isinstance(oracle, PartialModSpec):
        return 2 << oracle.s_mod  # v=2 needs 2 * 2**s ones
    return 1
