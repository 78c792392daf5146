"""Desk-scale exhaustive searches that witness the lower-bound curves.

The searches enumerate every deterministic table machine with S states
over the request alphabet {0,1,2} and score it against a canonical input
lattice. Two exact reductions keep the spaces small:

* inputs are enumerated one representative per achievable f-value choice
  (every implemented algorithm's score depends on the input only through
  f-values and segment boundaries, and the chain functions are invariant
  under permuting bits inside a segment);
* machine outputs are enumerated for the guardian column only, since the
  other output-table columns never reach the answer stream, and machines
  are deduplicated by the canonical relabeling of their reachable part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .analysis import det_advice_bound
from .errors import DomainError, Infeasible, SpaceTooLarge
from .functions import AndOracle, FunctionOracle, PartialModSpec, XorOracle
from .problem import ParsedInput, ProblemSpec, cost, encode_input, opt_cost, parse_input
from .algorithms import TableAlgorithm

DEFAULT_INPUT_CAP = 1 << 20
MAX_SEARCH_STATES = 3
ADVICE_INPUT_CAP = 16
ADVICE_MAX_STATES = 2


def _segment_choices(oracle: FunctionOracle, m: int, v_max: int | None) -> list[str]:
    """Canonical representatives, one per realizable f-value choice."""
    if isinstance(oracle, PartialModSpec):
        top = v_max if v_max is not None else m >> oracle.s_mod
        if top < 2:
            raise Infeasible(f"segment length {m} admits no v >= 2 at s={oracle.s_mod}")
        reps = []
        for v in range(2, top + 1):
            ones = v << oracle.s_mod
            if ones > m:
                break
            reps.append("1" * ones + "0" * (m - ones))
        if not reps:
            raise Infeasible(f"segment length {m} admits no v >= 2 at s={oracle.s_mod}")
        return reps
    if isinstance(oracle, XorOracle):
        return ["0" * m, "1" + "0" * (m - 1)]
    if isinstance(oracle, AndOracle):
        return ["0" * m, "1" * m] if m > 1 else ["0", "1"]
    raise DomainError(f"no input lattice for oracle {oracle.name!r}")


def enumerate_inputs(
    spec: ProblemSpec, v_max: int | None = None, cap: int = DEFAULT_INPUT_CAP
) -> list[ParsedInput]:
    """Every achievable f-value vector, one canonical input each."""
    per_segment = []
    for j in range(spec.lam):
        for i in range(spec.k):
            per_segment.append(_segment_choices(spec.function, spec.m[i], v_max))
    size = 1
    for choices in per_segment:
        size *= len(choices)
        if size > cap:
            raise SpaceTooLarge(f"input lattice exceeds cap {cap}")
    out = []
    for combo in itertools.product(*per_segment):
        rows = [
            tuple(combo[j * spec.k : (j + 1) * spec.k]) for j in range(spec.lam)
        ]
        word = encode_input(spec, rows)
        out.append(parse_input(spec, word))
    return out


def _canonical_key(n_states: int, trans, out2) -> tuple:
    """Behavior signature: reachable part relabeled in BFS discovery order."""
    order = [0]
    seen = {0}
    pos = 0
    while pos < len(order):
        s = order[pos]
        pos += 1
        for sym in range(3):
            nxt = trans[s][sym]
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    relabel = {s: i for i, s in enumerate(order)}
    t_key = tuple(tuple(relabel[trans[s][sym]] for sym in range(3)) for s in order)
    o_key = tuple(out2[s] for s in order)
    return len(order), t_key, o_key


def _machines(n_states: int):
    """Canonical (transitions, guardian outputs) pairs, deduplicated."""
    seen = set()
    for flat in itertools.product(range(n_states), repeat=3 * n_states):
        trans = tuple(flat[3 * s : 3 * s + 3] for s in range(n_states))
        for out2 in itertools.product((0, 1), repeat=n_states):
            key = _canonical_key(n_states, trans, out2)
            if key in seen:
                continue
            seen.add(key)
            yield trans, out2


def _machine_outputs(trans, out2, word: str) -> list[int]:
    """Answer stream of the table machine on one word."""
    state = 0
    outs = []
    for ch in word:
        if ch == "2":
            outs.append(out2[state])
            state = trans[state][2]
        else:
            state = trans[state][0 if ch == "0" else 1]
    return outs


def _as_table(n_states: int, trans, out2) -> TableAlgorithm:
    outputs = tuple((0, 0, out2[s]) for s in range(n_states))
    return TableAlgorithm(n_states, trans, outputs)


@dataclass(frozen=True)
class SearchReport:
    ratio: float
    witness: TableAlgorithm
    witness_partner: TableAlgorithm | None
    machines: int
    inputs: int
    bound: float


def _prepared_inputs(spec: ProblemSpec, v_max: int | None, cap: int):
    parsed = enumerate_inputs(spec, v_max, cap)
    words = [encode_input(spec, p.segments).symbols for p in parsed]
    return parsed, words


def _cost_row(spec: ProblemSpec, parsed, words, trans, out2) -> list[float]:
    return [
        cost(spec, p, _machine_outputs(trans, out2, w))
        for p, w in zip(parsed, words)
    ]


def search_deterministic(
    spec: ProblemSpec,
    n_states: int,
    v_max: int | None = None,
    cap: int = DEFAULT_INPUT_CAP,
    max_states: int = MAX_SEARCH_STATES,
) -> SearchReport:
    """Min over machines of the worst-case ratio, with the arg-min machine."""
    if n_states > max_states:
        raise SpaceTooLarge(f"{n_states} states exceeds the search cap {max_states}")
    parsed, words = _prepared_inputs(spec, v_max, cap)
    opt = opt_cost(spec)
    best = None
    best_machine = None
    count = 0
    for trans, out2 in _machines(n_states):
        count += 1
        worst = max(_cost_row(spec, parsed, words, trans, out2))
        if best is None or worst < best:
            best = worst
            best_machine = (trans, out2)
    return SearchReport(
        ratio=best / opt,
        witness=_as_table(n_states, *best_machine),
        witness_partner=None,
        machines=count,
        inputs=len(parsed),
        bound=det_advice_bound(spec, 0),
    )


def best_deterministic_ratio(
    spec: ProblemSpec,
    n_states: int,
    b: int = 0,
    v_max: int | None = None,
    cap: int = DEFAULT_INPUT_CAP,
    max_states: int = MAX_SEARCH_STATES,
) -> float:
    if b != 0:
        raise DomainError("deterministic search runs without advice; use the b=1 search")
    return search_deterministic(spec, n_states, v_max, cap, max_states).ratio


def search_with_advice(
    spec: ProblemSpec,
    n_states: int,
    v_max: int | None = None,
    input_cap: int = ADVICE_INPUT_CAP,
    max_states: int = ADVICE_MAX_STATES,
) -> SearchReport:
    """One advice bit: min over machine pairs of max over inputs of the better cost.

    For a fixed pair the optimal bipartition simply sends each input to its
    cheaper machine, so partitions need not be enumerated separately.
    """
    if n_states > max_states:
        raise SpaceTooLarge(f"{n_states} states exceeds the advice-search cap {max_states}")
    parsed, words = _prepared_inputs(spec, v_max, DEFAULT_INPUT_CAP)
    if len(parsed) > input_cap:
        raise SpaceTooLarge(f"{len(parsed)} inputs exceeds the advice-search cap {input_cap}")
    opt = opt_cost(spec)
    machines = list(_machines(n_states))
    rows = [_cost_row(spec, parsed, words, trans, out2) for trans, out2 in machines]
    best = None
    best_pair = None
    for a in range(len(machines)):
        row_a = rows[a]
        for b_idx in range(a, len(machines)):
            row_b = rows[b_idx]
            worst = max(min(ca, cb) for ca, cb in zip(row_a, row_b))
            if best is None or worst < best:
                best = worst
                best_pair = (a, b_idx)
    return SearchReport(
        ratio=best / opt,
        witness=_as_table(n_states, *machines[best_pair[0]]),
        witness_partner=_as_table(n_states, *machines[best_pair[1]]),
        machines=len(machines),
        inputs=len(parsed),
        bound=det_advice_bound(spec, 1),
    )


def best_advice_ratio(
    spec: ProblemSpec,
    n_states: int,
    b: int = 1,
    v_max: int | None = None,
    input_cap: int = ADVICE_INPUT_CAP,
    max_states: int = ADVICE_MAX_STATES,
) -> float:
    if b != 1:
        raise DomainError("advice search supports exactly one advice bit")
    return search_with_advice(spec, n_states, v_max, input_cap, max_states).ratio


def count_subfunctions(f: FunctionOracle, m: int, u: int) -> int:
    """Distinct functions of the last m-u bits obtained by fixing the first u."""
    if not f.is_total:
        raise DomainError("subfunction counting is defined for total oracles only")
    if m > 16:
        raise SpaceTooLarge(f"m={m} exceeds the 2**16 evaluation cap")
    if not 1 <= u < m:
        raise DomainError(f"prefix length must satisfy 1 <= u < m, got u={u}")
    suffixes = ["".join(bits) for bits in itertools.product("01", repeat=m - u)]
    seen = set()
    for prefix_bits in itertools.product("01", repeat=u):
        prefix = "".join(prefix_bits)
        seen.add(tuple(f.eval(prefix + sfx) for sfx in suffixes))
    return len(seen)
