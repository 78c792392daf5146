#!/usr/bin/env python3
"""Exhaustive-search witnesses for the lower-bound curves at desk scale.

Runs the deterministic machine search with and without one advice bit on
the canonical tiny configurations and prints the reports as JSON.
"""

import argparse
import json
import time

from bhlab.bruteforce import search_deterministic, search_with_advice
from bhlab.functions import PartialModSpec
from bhlab.problem import CostParams, ProblemSpec


def report_json(report, states, advice_bits, elapsed):
    return {
        "states": states,
        "advice_bits": advice_bits,
        "ratio": report.ratio,
        "bound": report.bound,
        "machines": report.machines,
        "inputs": report.inputs,
        "elapsed_s": round(elapsed, 3),
        "witness": report.witness.to_json(),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--states", type=int, default=2)
    args = ap.parse_args()

    hard = ProblemSpec(
        k=2, costs=CostParams(r=1.0, w=3.0, t=1), m=(8, 8),
        function=PartialModSpec(s_mod=1),
    )
    t0 = time.monotonic()
    rep = search_deterministic(hard, args.states)
    print(json.dumps({"search": "deterministic",
                      **report_json(rep, args.states, 0, time.monotonic() - t0)},
                     sort_keys=True))

    tiny = ProblemSpec(
        k=2, costs=CostParams(r=1.0, w=3.0, t=2), m=(8, 8),
        function=PartialModSpec(s_mod=1),
    )
    t0 = time.monotonic()
    rep = search_with_advice(tiny, min(args.states, 2))
    print(json.dumps({"search": "one-advice-bit",
                      **report_json(rep, min(args.states, 2), 1, time.monotonic() - t0)},
                     sort_keys=True))


if __name__ == "__main__":
    main()
