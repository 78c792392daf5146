"""Command-line front end: run | expect | sweep | brute | gen-input.

Exit codes: 0 ok, 2 usage or malformed spec/input, 3 promise violation,
4 branch limit exceeded, 5 search space too large. Flags win over the
optional "experiment" stanza of the spec file, which wins over defaults.
All stdout output is deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .algorithms import (
    TableAlgorithm,
    ibh_alg,
    qalg_a,
    qalg_b,
    ralg_a,
    run_online,
)
from .analysis import (
    CSV_HEADER,
    ExpectationResult,
    closed_form_expected_cost,
    competitive_ratio,
    det_advice_bound,
    exact_expected_cost,
    monte_carlo_cost,
    rand_advice_bound,
)
from .bruteforce import search_deterministic, search_with_advice
from .errors import (
    BHLabError,
    BranchLimitExceeded,
    DomainError,
    PromiseViolation,
    SpaceTooLarge,
)
from .generate import generate_word
from .problem import CostParams, InputWord, ProblemSpec
from .seeding import derive_seed
from .svgplot import line_chart

SWEEP_HEADER = (
    "spec_id,axis,point,method,eps,b,value,stderr,trials,seed,branches,"
    "ratio,det_bound,rand_bound,reason"
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PROMISE = 3
EXIT_BRANCHES = 4
EXIT_SPACE = 5


def _default_seed() -> int:
    return int(os.environ.get("BHLAB_SEED", "0"))


def load_spec_file(path: str) -> tuple[ProblemSpec, dict]:
    """Spec plus its optional experiment stanza."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return ProblemSpec.from_json(doc), doc.get("experiment", {})


def _resolve(flag, experiment: dict, key: str, default):
    if flag is not None:
        return flag
    if key in experiment:
        return experiment[key]
    return default


def _advice_bits_of(alg_id: str, spec: ProblemSpec) -> int:
    return {"qalg-a": 1, "qalg-b": 0, "ralg-a": 1, "ibh": spec.lam - 1}.get(alg_id, 0)


def make_factory(alg_id: str, spec: ProblemSpec, eps: float):
    """Zero-argument factory producing fresh algorithm instances."""
    if alg_id == "qalg-a":
        return lambda: qalg_a(spec)
    if alg_id == "qalg-b":
        return lambda: qalg_b(spec)
    if alg_id == "ralg-a":
        return lambda: ralg_a(spec, eps)
    if alg_id == "ibh":
        return lambda: ibh_alg(spec)
    if alg_id.startswith("table:"):
        with open(alg_id[len("table:") :], "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return lambda: TableAlgorithm.from_json(doc)
    raise DomainError(f"unknown algorithm {alg_id!r}")


def _word_from_args(spec: ProblemSpec, args, seed: int) -> InputWord:
    if getattr(args, "input", None):
        return InputWord(args.input)
    if getattr(args, "input_file", None):
        with open(args.input_file, "r", encoding="utf-8") as fh:
            return InputWord(fh.read().strip())
    pins = None
    if getattr(args, "v", None):
        pins = [int(x) for x in args.v.split(",")]
    return generate_word(spec, random.Random(derive_seed(seed, 0)), pins)


def cmd_run(args) -> int:
    spec, experiment = load_spec_file(args.spec)
    seed = _resolve(args.seed, experiment, "seed", _default_seed())
    eps = float(_resolve(args.eps, experiment, "eps", 0.0))
    factory = make_factory(args.alg, spec, eps)
    word = _word_from_args(spec, args, seed)
    trace = run_online(
        factory(), word, rng=random.Random(derive_seed(seed, 1)), spec=spec
    )
    doc = {
        "spec_id": spec.spec_id(),
        "alg": args.alg,
        "seed": seed,
        "word": str(word),
        "advice": trace.advice,
        "outputs": str(trace.outputs),
        "cost": trace.cost,
        "opt_cost": trace.opt_cost,
        "ratio": trace.ratio,
        "choices": [
            {"label": c.label, "probs": list(c.probs), "outcome": c.outcome}
            for c in trace.choice_log
        ],
        "measurements": [
            {"label": m.label, "outcome": m.outcome, "probability": m.probability}
            for m in trace.measurements
        ],
    }
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def _expect_rows(spec, alg_id, method, eps, trials, seed, branch_limit, word):
    factory = make_factory(alg_id, spec, eps)
    factory()  # surface spec/algorithm incompatibility before any output
    b = _advice_bits_of(alg_id, spec)
    eps_cell = eps if alg_id == "ralg-a" else None
    methods = [method] if method != "all" else (
        ["closed", "exact", "mc"] if alg_id == "ralg-a" else ["exact", "mc"]
    )
    rows = []
    for m in methods:
        if m == "closed":
            if alg_id != "ralg-a":
                raise DomainError("closed form is defined for ralg-a only")
            value = closed_form_expected_cost(spec.t, spec.u, eps, spec.r, spec.w)
            res = ExpectationResult(value=value, method="closed")
        elif m == "exact":
            res = exact_expected_cost(factory, spec, word, branch_limit=branch_limit)
        elif m == "mc":
            res = monte_carlo_cost(factory, spec, word, trials=trials, seed=seed)
        else:
            raise DomainError(f"unknown method {m!r}")
        rows.append(res.csv_row(spec.spec_id(), eps=eps_cell, b=b))
    return rows


def cmd_expect(args) -> int:
    spec, experiment = load_spec_file(args.spec)
    seed = _resolve(args.seed, experiment, "seed", _default_seed())
    eps = float(_resolve(args.eps, experiment, "eps", 0.0))
    trials = int(_resolve(args.trials, experiment, "trials", 10_000))
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    word = _word_from_args(spec, args, seed)
    rows = _expect_rows(
        spec, args.alg, args.method, eps, trials, seed, args.branch_limit, word
    )
    print(CSV_HEADER)
    for row in rows:
        print(row)
    return EXIT_OK


def _grid(args, integral: bool):
    start, stop = args.start, args.stop
    step = args.step if args.step is not None else 1.0
    if step <= 0:
        raise DomainError("step must be positive")
    points = []
    x = start
    while x <= stop + 1e-12:
        points.append(int(round(x)) if integral else round(x, 12))
        x += step
    if not points:
        raise DomainError("empty sweep range")
    return points


def _respec(spec: ProblemSpec, t: int) -> ProblemSpec:
    return ProblemSpec(
        k=spec.k,
        costs=CostParams(r=spec.r, w=spec.w, t=t),
        m=spec.m,
        function=spec.function,
        lam=spec.lam,
    )


def _fmtcell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def cmd_sweep(args) -> int:
    spec, experiment = load_spec_file(args.spec)
    seed = _resolve(args.seed, experiment, "seed", _default_seed())
    eps = float(_resolve(args.eps, experiment, "eps", 0.0))
    trials = int(_resolve(args.trials, experiment, "trials", 10_000))
    method = args.method or ("closed" if args.alg == "ralg-a" else "exact")
    integral = args.axis in ("b", "t", "u")
    points = _grid(args, integral)
    b_alg = _advice_bits_of(args.alg, spec)

    rows = []
    curve_alg: list[tuple[float, float]] = []
    curve_det: list[tuple[float, float]] = []
    curve_rand: list[tuple[float, float]] = []
    for point in points:
        cells = {
            "spec_id": spec.spec_id(),
            "axis": args.axis,
            "point": point,
            "method": method,
            "eps": eps,
            "b": b_alg,
            "value": None,
            "stderr": None,
            "trials": None,
            "seed": None,
            "branches": None,
            "ratio": None,
            "det_bound": None,
            "rand_bound": None,
            "reason": "",
        }
        try:
            if args.axis == "b":
                cells["b"] = point
                cells["method"] = "bound"
                cells["det_bound"] = det_advice_bound(spec, point)
                cells["rand_bound"] = rand_advice_bound(spec, point)
                curve_det.append((point, cells["det_bound"]))
                curve_rand.append((point, cells["rand_bound"]))
            else:
                if args.axis == "eps":
                    cells["eps"] = point
                    sub, point_eps = spec, float(point)
                elif args.axis == "t":
                    if spec.k % point != 0:
                        raise DomainError(f"t={point} does not divide k={spec.k}")
                    sub, point_eps = _respec(spec, point), eps
                else:  # u axis: u = lam*k/t
                    total = spec.lam * spec.k
                    if point < 1 or total % point != 0:
                        raise DomainError(f"u={point} does not divide lambda*k={total}")
                    t = total // point
                    if spec.k % t != 0:
                        raise DomainError(f"u={point} implies t={t} not dividing k={spec.k}")
                    sub, point_eps = _respec(spec, t), eps
                word = generate_word(sub, random.Random(derive_seed(seed, 0)))
                res_rows = _expect_rows(
                    sub, args.alg, method, point_eps, trials, seed, args.branch_limit, word
                )
                # single-method sweep: exactly one result row per point
                parts = res_rows[0].split(",")
                cells["value"] = float(parts[4])
                cells["stderr"] = float(parts[5]) if parts[5] else None
                cells["trials"] = int(parts[6]) if parts[6] else None
                cells["seed"] = int(parts[7]) if parts[7] else None
                cells["branches"] = int(parts[8]) if parts[8] else None
                cells["ratio"] = competitive_ratio(cells["value"], sub)
                cells["det_bound"] = det_advice_bound(sub, b_alg)
                cells["rand_bound"] = rand_advice_bound(sub, b_alg)
                curve_alg.append((point, cells["ratio"]))
                curve_det.append((point, cells["det_bound"]))
                curve_rand.append((point, cells["rand_bound"]))
        except (DomainError, BranchLimitExceeded) as exc:
            cells["reason"] = str(exc).replace(",", ";")
        rows.append(
            ",".join(
                _fmtcell(cells[name])
                for name in SWEEP_HEADER.split(",")
            )
        )

    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"sweep_{args.axis}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SWEEP_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")
    print(csv_path)

    if args.svg:
        series = []
        if curve_alg:
            series.append((f"{args.alg} ratio", curve_alg))
        if curve_det:
            series.append(("deterministic bound", curve_det))
        if curve_rand:
            series.append(("randomized bound", curve_rand))
        svg_path = os.path.join(args.out, f"sweep_{args.axis}.svg")
        with open(svg_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(
                line_chart(
                    series,
                    title=f"{spec.spec_id()} sweep over {args.axis}",
                    xlabel=args.axis,
                    ylabel="competitive ratio",
                )
            )
        print(svg_path)
    return EXIT_OK


def cmd_brute(args) -> int:
    spec, _ = load_spec_file(args.spec)
    started = time.monotonic()
    if args.advice_bits == 0:
        report = search_deterministic(spec, args.states, v_max=args.v_max)
    elif args.advice_bits == 1:
        report = search_with_advice(spec, args.states, v_max=args.v_max)
    else:
        raise DomainError("advice search supports b in {0, 1}")
    elapsed = time.monotonic() - started
    doc = {
        "spec_id": spec.spec_id(),
        "states": args.states,
        "advice_bits": args.advice_bits,
        "ratio": report.ratio,
        "bound": report.bound,
        "machines": report.machines,
        "inputs": report.inputs,
        "witness": report.witness.to_json(),
        "witness_partner": (
            report.witness_partner.to_json() if report.witness_partner else None
        ),
    }
    # wall time goes to stderr so stdout stays byte-identical across runs
    print(f"# elapsed {elapsed:.3f}s", file=sys.stderr)
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def cmd_gen_input(args) -> int:
    spec, experiment = load_spec_file(args.spec)
    seed = _resolve(args.seed, experiment, "seed", _default_seed())
    pins = [int(x) for x in args.v.split(",")] if args.v else None
    word = generate_word(spec, random.Random(derive_seed(seed, 0)), pins)
    print(str(word))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhlab",
        description="Black-hats online guessing games: algorithms, expectations, bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alg=True):
        p.add_argument("--spec", required=True, help="problem spec JSON file")
        if alg:
            p.add_argument("--alg", required=True, help="qalg-a|qalg-b|ralg-a|ibh|table:<file>")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1, help="max workers (>= 1)")

    p_run = sub.add_parser("run", help="single sampled run, JSON trace on stdout")
    common(p_run)
    p_run.add_argument("--eps", type=float, default=None)
    p_run.add_argument("--input", help="literal input word over 0/1/2")
    p_run.add_argument("--input-file")
    p_run.add_argument("--v", help="pin v values for generated input, comma separated")
    p_run.set_defaults(func=cmd_run)

    p_exp = sub.add_parser("expect", help="expected cost, CSV on stdout")
    common(p_exp)
    p_exp.add_argument("--method", default="exact", choices=["closed", "exact", "mc", "all"])
    p_exp.add_argument("--eps", type=float, default=None)
    p_exp.add_argument("--trials", type=int, default=None)
    p_exp.add_argument("--branch-limit", type=int, default=1 << 22)
    p_exp.add_argument("--input", help="literal input word over 0/1/2")
    p_exp.add_argument("--input-file")
    p_exp.add_argument("--v")
    p_exp.set_defaults(func=cmd_expect)

    p_sw = sub.add_parser("sweep", help="grid sweep, CSV (+ optional SVG) in --out")
    common(p_sw)
    p_sw.add_argument("--axis", required=True, choices=["eps", "b", "t", "u"])
    p_sw.add_argument("--from", dest="start", type=float, required=True)
    p_sw.add_argument("--to", dest="stop", type=float, required=True)
    p_sw.add_argument("--step", type=float, default=None)
    p_sw.add_argument("--out", required=True, help="output directory")
    p_sw.add_argument("--svg", action="store_true")
    p_sw.add_argument("--method", default=None, choices=["closed", "exact", "mc"])
    p_sw.add_argument("--eps", type=float, default=None)
    p_sw.add_argument("--trials", type=int, default=None)
    p_sw.add_argument("--branch-limit", type=int, default=1 << 22)
    p_sw.set_defaults(func=cmd_sweep)

    p_br = sub.add_parser("brute", help="exhaustive machine search, JSON on stdout")
    common(p_br, alg=False)
    p_br.add_argument("--states", type=int, default=2)
    p_br.add_argument("--advice-bits", type=int, default=0, choices=[0, 1])
    p_br.add_argument("--v-max", type=int, default=None)
    p_br.set_defaults(func=cmd_brute)

    p_gen = sub.add_parser("gen-input", help="print a generated input word")
    common(p_gen, alg=False)
    p_gen.add_argument("--v", help="pin v values, comma separated")
    p_gen.set_defaults(func=cmd_gen_input)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.jobs < 1:
            raise DomainError("--jobs must be >= 1")
        return args.func(args)
    except PromiseViolation as exc:
        print(f"error: promise violation: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except BranchLimitExceeded as exc:
        print(f"error: branch limit: {exc}", file=sys.stderr)
        return EXIT_BRANCHES
    except SpaceTooLarge as exc:
        print(f"error: search space: {exc}", file=sys.stderr)
        return EXIT_SPACE
    except (BHLabError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
