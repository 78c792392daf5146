#!/usr/bin/env python3
"""Expected competitive ratio of the single-advice-bit chain vs subroutine error rate.

Writes one CSV row per (t, u, eps) grid point and an SVG overlay of the
ratio curves against the advice lower-bound references.
"""

import argparse
import os

from bhlab.analysis import (
    closed_form_expected_cost,
    det_advice_bound,
    rand_advice_bound,
)
from bhlab.problem import CostParams, ProblemSpec
from bhlab.functions import total_oracle
from bhlab.svgplot import line_chart


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--r", type=float, default=1.0)
    ap.add_argument("--w", type=float, default=3.0)
    ap.add_argument("--steps", type=int, default=46)
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    grid = [i * 0.01 for i in range(args.steps)]
    series = []
    rows = ["t,u,eps,expected_cost,ratio"]
    for t, u in ((1, 2), (2, 2), (3, 3)):
        pts = []
        for eps in grid:
            value = closed_form_expected_cost(t, u, eps, args.r, args.w)
            ratio = value / (t * args.r)
            rows.append(f"{t},{u},{eps!r},{value!r},{ratio!r}")
            pts.append((eps, ratio))
        series.append((f"t={t}, u={u}", pts))

    spec = ProblemSpec(
        k=4, costs=CostParams(r=args.r, w=args.w, t=2), m=(1,) * 4,
        function=total_oracle("xor"),
    )
    series.append(("det bound b=1", [(e, det_advice_bound(spec, 1)) for e in grid]))
    series.append(("rand bound b=1", [(e, rand_advice_bound(spec, 1)) for e in grid]))

    csv_path = os.path.join(args.out, "ratio_vs_error.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")
    svg_path = os.path.join(args.out, "ratio_vs_error.svg")
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(line_chart(series, title="chain ratio vs error rate",
                            xlabel="eps", ylabel="competitive ratio"))
    print(csv_path)
    print(svg_path)


if __name__ == "__main__":
    main()
