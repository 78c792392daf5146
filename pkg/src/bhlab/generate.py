"""Random promise-respecting input generation."""

from __future__ import annotations

import random

from .errors import DomainError
from .functions import PartialModSpec, gen_partial_mod_input, sample_v
from .problem import InputWord, ProblemSpec, encode_input


def generate_word(
    spec: ProblemSpec, rng: random.Random, v_pins=None
) -> InputWord:
    """One valid input word; v uniform on {2..v_max} unless pinned.

    v_pins may hold a single value (broadcast), k values (same for every
    instance), or lambda*k values in instance-major order.
    """
    total = spec.lam * spec.k
    if v_pins is not None:
        v_pins = list(v_pins)
        if len(v_pins) == 1:
            v_pins = v_pins * total
        elif len(v_pins) == spec.k:
            v_pins = v_pins * spec.lam
        elif len(v_pins) != total:
            raise DomainError(
                f"need 1, k={spec.k}, or lambda*k={total} pinned v values, got {len(v_pins)}"
            )
    rows = []
    idx = 0
    for j in range(spec.lam):
        row = []
        for i in range(spec.k):
            m = spec.m[i]
            f = spec.function
            if isinstance(f, PartialModSpec):
                v = v_pins[idx] if v_pins is not None else sample_v(f, m, rng)
                row.append(gen_partial_mod_input(f, m, v, rng))
            else:
                row.append("".join(rng.choice("01") for _ in range(m)))
            idx += 1
        rows.append(tuple(row))
    return encode_input(spec, rows)
