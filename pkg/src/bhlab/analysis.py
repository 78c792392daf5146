"""Expected costs (closed form, exact branch enumeration, Monte Carlo),
advice lower-bound reference curves, and competitive-ratio reporting.

The closed form for the single-advice-bit chain with a flip rate eps is

    E[cost] = 0.5 * (1-eps)**(u-1) * (t + 1 + S) * (r - w) + t*w,
    S = sum_{i=2..t} v**(i-1),  v = (1 - 2*eps)**u,

computed with the geometric sum written out, so v = 1 (eps = 0, where the
value collapses to t*r) needs no special casing. The per-guardian parity
confidence F(j) -- the probability that the number of subroutine errors
before guardian j is even -- follows the recurrence
F(j) = F(j-1) * (1 - 2*eps) + eps with F(1) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .choices import EnumChoices
from .errors import BranchLimitExceeded, DomainError
from .problem import (
    InputWord,
    ProblemSpec,
    encode_input,
    opt_cost,
    parse_input,
    stream_targets,
)
from .algorithms import OnlineAlgorithm, resolve_advice, run_online
from .seeding import trial_rng

DEFAULT_BRANCH_LIMIT = 1 << 22

CSV_HEADER = "spec_id,method,eps,b,value,stderr,trials,seed,branches"


@dataclass(frozen=True)
class ExpectationResult:
    value: float
    method: str  # closed | exact | mc
    stderr: float | None = None
    branches: int | None = None
    trials: int | None = None
    seed: int | None = None

    def csv_row(self, spec_id: str, eps: float | None = None, b: int | None = None) -> str:
        cells = [
            spec_id,
            self.method,
            _fmt(eps),
            _fmt(b),
            _fmt(self.value),
            _fmt(self.stderr),
            _fmt(self.trials),
            _fmt(self.seed),
            _fmt(self.branches),
        ]
        return ",".join(cells)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _check_eps(eps: float) -> None:
    if not 0.0 <= eps < 0.5:
        raise DomainError(f"error rate must be in [0, 0.5), got {eps}")


def closed_form_expected_cost(t: int, u: int, eps: float, r: float, w: float) -> float:
    """Expected block-sum cost of the single-advice-bit chain."""
    _check_eps(eps)
    if t < 1 or u < 1:
        raise DomainError("t and u must be >= 1")
    v = (1.0 - 2.0 * eps) ** u
    geometric = sum(v ** (i - 1) for i in range(2, t + 1))
    return 0.5 * (1.0 - eps) ** (u - 1) * (t + 1 + geometric) * (r - w) + t * w


def parity_confidence(j: int, eps: float) -> float:
    """Probability that the error count before guardian j is even."""
    _check_eps(eps)
    if j < 1:
        raise DomainError(f"guardian index must be >= 1, got {j}")
    f = 1.0  # the first guardian holds the advice bit
    for _ in range(j - 1):
        f = f * (1.0 - 2.0 * eps) + eps
    return f


def exact_expected_cost(
    alg_factory: Callable[[], OnlineAlgorithm],
    spec: ProblemSpec,
    word: InputWord | str,
    advice=None,
    branch_limit: int = DEFAULT_BRANCH_LIMIT,
) -> ExpectationResult:
    """Depth-first enumeration of every choice branch, weighted by path probability.

    Each branch is a full replayed run, so the engine stays oblivious to
    what the algorithm does between choice points; nothing is memoized
    because costs are path dependent.
    """
    if not isinstance(word, InputWord):
        word = InputWord(str(word))
    parsed = parse_input(spec, word)
    targets = stream_targets(spec, parsed)
    bits = resolve_advice(spec, parsed, alg_factory(), advice)
    prefix: list[int] | None = []
    total = 0.0
    mass = 0.0
    leaves = 0
    while prefix is not None:
        src = EnumChoices(prefix)
        trace = run_online(
            alg_factory(), word, bits, choices=src, spec=spec, parsed=parsed, targets=targets
        )
        total += src.path_probability * trace.cost
        mass += src.path_probability
        leaves += 1
        if leaves > branch_limit:
            raise BranchLimitExceeded(f"more than {branch_limit} branches")
        prefix = src.next_prefix()
    if abs(mass - 1.0) > 1e-9:
        raise DomainError(f"branch probabilities sum to {mass!r}, not 1")
    return ExpectationResult(value=total, method="exact", branches=leaves)


def monte_carlo_cost(
    alg_factory: Callable[[], OnlineAlgorithm],
    spec: ProblemSpec,
    word: InputWord | str,
    advice=None,
    trials: int = 10_000,
    seed: int = 0,
) -> ExpectationResult:
    """Mean cost over independently seeded trials; reproducible bit for bit."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if not isinstance(word, InputWord):
        word = InputWord(str(word))
    parsed = parse_input(spec, word)
    targets = stream_targets(spec, parsed)
    bits = resolve_advice(spec, parsed, alg_factory(), advice)
    costs = []
    for i in range(trials):
        trace = run_online(
            alg_factory(),
            word,
            bits,
            rng=trial_rng(seed, i),
            spec=spec,
            parsed=parsed,
            targets=targets,
        )
        costs.append(trace.cost)
    mean = math.fsum(costs) / trials
    if trials > 1:
        var = math.fsum((c - mean) ** 2 for c in costs) / (trials - 1)
        stderr = math.sqrt(var / trials)
    else:
        stderr = 0.0
    return ExpectationResult(
        value=mean, method="mc", stderr=stderr, trials=trials, seed=seed
    )


def competitive_ratio(expected_cost: float, spec: ProblemSpec) -> float:
    """Strict ratio against the offline optimum (no additive slack)."""
    if expected_cost < 0:
        raise DomainError("expected cost must be nonnegative")
    return expected_cost / opt_cost(spec)


@dataclass(frozen=True)
class AdviceBoundParams:
    """Decomposition of an advice budget b over blocks of u guardians."""

    b: int
    u: int
    t: int
    h: int
    z: int
    delta_z: int

    @staticmethod
    def for_spec(spec: ProblemSpec, b: int) -> "AdviceBoundParams":
        if b < 0:
            raise DomainError("advice budget must be >= 0")
        u, t = spec.u, spec.t
        h = min(b // u, t)
        z = b - h * u if h < t else 0
        return AdviceBoundParams(b=b, u=u, t=t, h=h, z=z, delta_z=1 if z != 0 else 0)


def det_advice_bound(spec: ProblemSpec, b: int) -> float:
    """Deterministic floor: h = floor(b/u) blocks free, the rest cost w."""
    p = AdviceBoundParams.for_spec(spec, b)
    return (p.h * spec.r + (p.t - p.h) * spec.w) / (spec.t * spec.r)


def rand_advice_bound(spec: ProblemSpec, b: int) -> float:
    """Randomized floor: unknown guardians are fair guesses.

    A block with z of its u guardians covered by advice is all-correct with
    probability 2**(z-u); fully uncovered blocks with probability 2**(-u).
    """
    p = AdviceBoundParams.for_spec(spec, b)
    if p.h == p.t:
        return 1.0
    r, w = spec.r, spec.w
    part = 2.0 ** (p.z - p.u)
    full = 2.0 ** (-p.u)
    value = (
        p.h * r
        + p.delta_z * (part * r + (1.0 - part) * w)
        + (p.t - p.h - p.delta_z) * (full * r + (1.0 - full) * w)
    )
    return value / (spec.t * r)


def worst_case_expected_cost(
    alg_factory: Callable[[], OnlineAlgorithm],
    spec: ProblemSpec,
    inputs,
    method: str = "exact",
    trials: int = 10_000,
    seed: int = 0,
) -> tuple[float, InputWord]:
    """Max expected cost over a collection of input words."""
    best = None
    witness = None
    for item in inputs:
        word = item if isinstance(item, (InputWord, str)) else encode_input(spec, item.segments)
        if method == "exact":
            value = exact_expected_cost(alg_factory, spec, word).value
        elif method == "mc":
            value = monte_carlo_cost(alg_factory, spec, word, trials=trials, seed=seed).value
        else:
            raise DomainError(f"unknown method {method!r}")
        if best is None or value > best:
            best, witness = value, word
    if best is None:
        raise DomainError("no inputs supplied")
    return best, witness
