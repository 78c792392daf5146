"""Choice points: the single funnel for all randomness in a run.

Every random event (qubit measurement, fair guess, noisy-subroutine flip)
is expressed as picking an index from a finite outcome distribution via a
ChoiceSource. The same algorithm code then serves three execution modes:

* SampledChoices  -- draw outcomes from an RNG and log them,
* ReplayChoices   -- reproduce a recorded log exactly,
* EnumChoices     -- drive one root-to-leaf path of the full branch tree
                     (used by the exact-expectation engine).

Outcomes with probability <= ZERO_PROB are never taken: they exist only as
floating-point residue of algebraically impossible events, and skipping
them keeps deterministic measurements from forking the branch tree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Protocol, Sequence

from .errors import ReplayMismatch

ZERO_PROB = 1e-12


@dataclass(frozen=True)
class ChoiceRecord:
    label: str
    probs: tuple[float, ...]
    outcome: int


class ChoiceSource(Protocol):
    def choose(self, probs: Sequence[float], label: str) -> int:
        """Pick an outcome index from the given distribution."""
        ...


class SampledChoices:
    """Draws outcomes from an RNG; keeps a log for replay."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.log: list[ChoiceRecord] = []

    def choose(self, probs: Sequence[float], label: str) -> int:
        live = [i for i, p in enumerate(probs) if p > ZERO_PROB]
        if len(live) == 1:
            outcome = live[0]
        else:
            r = self.rng.random()
            acc = 0.0
            outcome = live[-1]
            for i in live:
                acc += probs[i]
                if r < acc:
                    outcome = i
                    break
        self.log.append(ChoiceRecord(label, tuple(probs), outcome))
        return outcome


class ReplayChoices:
    """Feeds back a recorded choice log, verifying the run shape matches."""

    def __init__(self, log: Sequence[ChoiceRecord]):
        self._log = list(log)
        self._pos = 0

    def choose(self, probs: Sequence[float], label: str) -> int:
        if self._pos >= len(self._log):
            raise ReplayMismatch(f"log exhausted at choice point {label!r}")
        rec = self._log[self._pos]
        self._pos += 1
        if rec.label != label or len(rec.probs) != len(probs):
            raise ReplayMismatch(f"expected {rec.label!r}, run reached {label!r}")
        return rec.outcome


class EnumChoices:
    """One depth-first path through the branch tree.

    A forced prefix (positions among the nonzero-probability outcomes)
    replays the decisions taken so far; past the prefix the first live
    outcome is chosen. After the run, next_prefix() advances the deepest
    decision that still has an untried sibling, odometer style, or returns
    None when the whole tree has been visited.
    """

    def __init__(self, prefix: Sequence[int] = ()):
        self._prefix = list(prefix)
        self._depth = 0
        self.path_probability = 1.0
        self.positions: list[int] = []
        self.fanouts: list[int] = []
        self.log: list[ChoiceRecord] = []

    def choose(self, probs: Sequence[float], label: str) -> int:
        live = [i for i, p in enumerate(probs) if p > ZERO_PROB]
        pos = self._prefix[self._depth] if self._depth < len(self._prefix) else 0
        self._depth += 1
        outcome = live[pos]
        self.path_probability *= probs[outcome]
        self.positions.append(pos)
        self.fanouts.append(len(live))
        self.log.append(ChoiceRecord(label, tuple(probs), outcome))
        return outcome

    def next_prefix(self) -> list[int] | None:
        for d in range(len(self.positions) - 1, -1, -1):
            if self.positions[d] + 1 < self.fanouts[d]:
                return self.positions[:d] + [self.positions[d] + 1]
        return None
