"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report. Criterion 5 is split: 5a covers the hard-function search, 5b the
easy-function search. 5b encodes its stated expectation verbatim and is
expected to stay red: no deterministic machine can answer the first
guardian before reading anything, so the easy-function search also floors
at w/r (see the analysis notes shipped outside the package).
"""

import itertools
import math
import random
import time

import pytest

from bhlab.algorithms import ibh_alg, qalg_a, qalg_b, ralg_a, run_online
from bhlab.analysis import (
    closed_form_expected_cost,
    det_advice_bound,
    exact_expected_cost,
    monte_carlo_cost,
    parity_confidence,
    rand_advice_bound,
)
from bhlab.bruteforce import best_deterministic_ratio, search_with_advice
from bhlab.generate import generate_word
from bhlab.problem import encode_input
from bhlab.qsim import init_basis, init_plus, measure, rotate, xor_flip

import conftest
from conftest import pm_spec, random_pm_instance, xor_spec
from test_analysis import chain_cost_oracle


def report(cid, ok, detail=""):
    mark = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    line = f"ACCEPTANCE {cid}: {mark}{suffix}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    return ok


@pytest.fixture(scope="module")
def instance_set():
    rng = random.Random(17)
    return [random_pm_instance(rng, k_max=10, s_max=3) for _ in range(200)]


def test_criterion_1_optimal_advice_algorithm(instance_set):
    started = time.monotonic()
    rng = random.Random(99)
    ok = True
    for spec, word in instance_set:
        trace = run_online(qalg_a(spec), word, rng=rng)
        if trace.cost != spec.t * spec.r:
            ok = False
            break
        if not all(m.probability >= 1 - 1e-9 for m in trace.measurements):
            ok = False
            break
    elapsed = time.monotonic() - started
    ok = ok and elapsed < 5.0
    assert report("1", ok, f"200 runs, {elapsed:.2f}s")


def test_criterion_2_guessing_algorithm(instance_set):
    ok = True
    for spec, word in instance_set:
        res = exact_expected_cost(lambda: qalg_b(spec), spec, word)
        expect = spec.t * (spec.r + spec.w) / 2
        if abs(res.value - expect) > 1e-9:
            ok = False
            break
        if abs(res.value / (spec.t * spec.r) - (spec.r + spec.w) / (2 * spec.r)) > 1e-9:
            ok = False
            break
    spec = pm_spec(k=2, t=1, s=1, m=(4, 4))
    word = encode_input(spec, [["1111", "1111"]])
    mc = monte_carlo_cost(lambda: qalg_b(spec), spec, word, trials=100_000, seed=2)
    expect = spec.t * (spec.r + spec.w) / 2
    mc_ok = abs(mc.value - expect) <= 4 * mc.stderr
    ok = ok and mc_ok
    assert report("2", ok, f"exact on 200 instances; mc {mc.value:.4f}+-{mc.stderr:.4f}")


def test_criterion_3_closed_vs_exact_vs_mc():
    started = time.monotonic()
    eps_grid = [i * 0.05 for i in range(10)]
    worst = 0.0
    for u, t in itertools.product((1, 2, 3), repeat=2):
        spec = xor_spec(k=u * t, t=t, m_each=1, r=1.0, w=3.0)
        word = generate_word(spec, random.Random(1))
        for eps in eps_grid:
            exact = exact_expected_cost(lambda: ralg_a(spec, eps), spec, word)
            closed = closed_form_expected_cost(t, u, eps, 1.0, 3.0)
            worst = max(worst, abs(exact.value - closed))
    grid_ok = worst <= 1e-9

    # anchors come from the independent error-pattern oracle first
    anchor1 = chain_cost_oracle(2, 1, 0.1, 1.0, 3.0)
    anchor2 = chain_cost_oracle(4, 2, 0.1, 1.0, 3.0)
    anchors_ok = abs(anchor1 - 1.2) <= 1e-12 and abs(anchor2 - 2.724) <= 1e-12
    anchors_ok &= abs(closed_form_expected_cost(1, 2, 0.1, 1.0, 3.0) - anchor1) <= 1e-9
    anchors_ok &= abs(closed_form_expected_cost(2, 2, 0.1, 1.0, 3.0) - anchor2) <= 1e-9

    mc_ok = True
    for (k, t, expect) in ((2, 1, anchor1), (4, 2, anchor2)):
        spec = xor_spec(k=k, t=t, m_each=1, r=1.0, w=3.0)
        word = generate_word(spec, random.Random(1))
        mc = monte_carlo_cost(lambda: ralg_a(spec, 0.1), spec, word, trials=100_000, seed=8)
        mc_ok &= abs(mc.value - expect) <= 4 * mc.stderr
    elapsed = time.monotonic() - started
    ok = grid_ok and anchors_ok and mc_ok and elapsed < 60.0
    assert report("3", ok, f"max |exact-closed| = {worst:.2e}, {elapsed:.1f}s")


def test_criterion_4_interleaved_instances():
    ok = True
    detail = []
    for lam in (2, 3):
        for k in (2, 3):
            spec = pm_spec(k=k, t=k, s=1, m=(4,) * k, lam=lam)  # u = lam
            word = generate_word(spec, random.Random(5))
            alg = ibh_alg(spec)
            res = exact_expected_cost(lambda: ibh_alg(spec), spec, word)
            expect = 0.5 * spec.r * spec.t + 0.5 * spec.w * spec.t
            ok &= abs(res.value - expect) <= 1e-9
            ok &= alg.advice_bits == lam - 1
            ok &= alg.memory_qubits <= lam + 1
            detail.append(f"lam={lam},k={k}:{res.value:.3f}")
    assert report("4", ok, "; ".join(detail))


def test_criterion_5a_deterministic_witness_hard_function():
    started = time.monotonic()
    spec = pm_spec(k=2, t=1, s=1, m=(8, 8), r=1.0, w=3.0)
    ratio = best_deterministic_ratio(spec, 2)
    elapsed = time.monotonic() - started
    ok = ratio >= 3.0 and elapsed < 600.0
    assert report("5a", ok, f"ratio {ratio}, {elapsed:.1f}s")


def test_criterion_5b_deterministic_witness_easy_function():
    started = time.monotonic()
    spec = xor_spec(k=2, t=1, m_each=8, r=1.0, w=3.0)
    ratio = best_deterministic_ratio(spec, 2)
    elapsed = time.monotonic() - started
    ok = ratio == 1.0 and elapsed < 600.0
    report("5b", ok, f"ratio {ratio}, {elapsed:.1f}s; first-guardian answers are future-dependent")
    assert ok, (
        "stated expectation: ratio 1.0; the search floors at w/r because every "
        f"deterministic machine fixes its first answer before any input (got {ratio})"
    )


@pytest.mark.slow
def test_criterion_6_advice_witness():
    started = time.monotonic()
    spec = pm_spec(k=2, t=2, s=1, m=(8, 8), r=1.0, w=3.0)  # u = 1
    report_obj = search_with_advice(spec, 2)
    bound = det_advice_bound(spec, 1)
    elapsed = time.monotonic() - started
    ok = report_obj.ratio >= bound == 2.0 and elapsed < 1800.0
    assert report("6", ok, f"ratio {report_obj.ratio}, bound {bound}, {elapsed:.1f}s")


def test_criterion_7_bound_curves():
    ok = True
    for k, t in ((2, 1), (4, 2), (6, 3), (8, 2)):
        spec = pm_spec(k=k, t=t, r=1.0, w=3.0)
        for b in range(k + 3):
            det = det_advice_bound(spec, b)
            rnd = rand_advice_bound(spec, b)
            ok &= det >= rnd >= 1.0
            if b >= k:
                ok &= det == 1.0 and rnd == 1.0
    # exact endpoint formula at t=1, no advice
    for k in (1, 2, 3, 6):
        spec = pm_spec(k=k, t=1, r=1.0, w=3.0)
        ok &= rand_advice_bound(spec, 0) == 2.0 ** -k + (1 - 2.0 ** -k) * 3.0
    spec = pm_spec(k=2, t=1, r=1.0, w=3.0)
    anchor = rand_advice_bound(spec, 0)
    ok &= anchor == 2.5
    assert report("7", ok, f"anchor rand(b=0,k=2) = {anchor}")


def test_criterion_8_simulator_properties():
    rng = random.Random(31415)
    norm_ok = True
    for _ in range(10_000):
        q = rng.randint(1, 3)
        reg = init_basis(q)
        for _ in range(rng.randint(1, 12)):
            op = rng.randint(0, 2)
            qubit = rng.randrange(q)
            if op == 0:
                reg = rotate(reg, qubit, rng.uniform(-math.pi, math.pi))
            elif op == 1:
                reg = xor_flip(reg, qubit, rng.randint(0, 1))
            else:
                _, reg = measure(reg, qubit, rng)
        norm_ok &= abs(math.fsum(a * a for a in reg.amps) - 1.0) < 1e-9

    chi_ok = True
    for state, pr1 in ((init_plus(init_basis(1), 0), 0.5), (_biased_state(), 0.64)):
        counts = [0, 0]
        trials = 100_000
        sampler = random.Random(271828)
        for _ in range(trials):
            outcome, _ = measure(state, 0, sampler)
            counts[outcome] += 1
        expected = [trials * (1 - pr1), trials * pr1]
        chi2 = sum((c - e) ** 2 / e for c, e in zip(counts, expected))
        chi_ok &= chi2 < 6.635  # 99th percentile, df = 1

    f_ok = True
    for eps in [i * 0.05 for i in range(10)]:
        for j in range(1, 51):
            closed = 0.5 * ((1 - 2 * eps) ** (j - 1) + 1)
            f_ok &= abs(parity_confidence(j, eps) - closed) <= 1e-12

    ok = norm_ok and chi_ok and f_ok
    assert report("8", ok, f"norm {norm_ok}, chi2 {chi_ok}, F(j) {f_ok}")


def _biased_state():
    from bhlab.qsim import QRegister

    return QRegister(1, (0.6, 0.8))
