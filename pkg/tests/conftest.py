import random

import pytest

from bhlab.functions import PartialModSpec, total_oracle
from bhlab.generate import generate_word
from bhlab.problem import CostParams, ProblemSpec, encode_input


def pm_spec(k, t, s=1, m=None, r=1.0, w=3.0, lam=1):
    """Partial-mod game spec with feasible default segment lengths."""
    if m is None:
        m = tuple(2 << s for _ in range(k))
    return ProblemSpec(
        k=k,
        costs=CostParams(r=r, w=w, t=t),
        m=tuple(m),
        function=PartialModSpec(s_mod=s),
        lam=lam,
    )


def xor_spec(k, t, m_each=1, r=1.0, w=3.0, lam=1):
    return ProblemSpec(
        k=k,
        costs=CostParams(r=r, w=w, t=t),
        m=(m_each,) * k,
        function=total_oracle("xor"),
        lam=lam,
    )


def random_pm_instance(rng: random.Random, k_max=10, s_max=3):
    """Random promise-respecting (spec, word) pair."""
    k = rng.randint(1, k_max)
    t = rng.choice([d for d in range(1, k + 1) if k % d == 0])
    s = rng.randint(0, s_max)
    m = tuple(rng.randint(2 << s, (2 << s) + 6) for _ in range(k))
    spec = pm_spec(k, t, s=s, m=m)
    return spec, generate_word(spec, rng)


@pytest.fixture
def rng():
    return random.Random(20260808)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


__all__ = ["pm_spec", "xor_spec", "random_pm_instance", "encode_input"]
