"""Black-hats game instances: encoding, parsing, targets, and block costs.

A plain instance (lam=1) is the stream 2,X_1,2,X_2,...,2,X_k over {0,1,2}:
each '2' is a guardian who must answer the parity of the prisoner function
over the segments from its own position to the end. Interleaved instances
(lam>1) run lam copies round-robin: 2,X^1_1,2,X^2_1,...,2,X^lam_k. The
lam*k guardian answers are scored in t stream-order blocks of length
u = lam*k/t: a block costs r when every answer in it is right, w otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionMismatch, DomainError, MalformedInput
from .functions import FunctionOracle, oracle_from_json, oracle_to_json

Segments = tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class CostParams:
    """Block scoring: r for an all-correct block, w otherwise, over t blocks."""

    r: float
    w: float
    t: int

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"r must be > 0, got {self.r}")
        if self.w < self.r:
            raise DomainError(f"w must be >= r, got w={self.w} < r={self.r}")
        if self.t < 1:
            raise DomainError(f"t must be >= 1, got {self.t}")


@dataclass(frozen=True)
class ProblemSpec:
    """One game family: lam interleaved instances of k guardians each."""

    k: int
    costs: CostParams
    m: tuple[int, ...]
    function: FunctionOracle
    lam: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        if self.lam < 1:
            raise DomainError(f"lambda must be >= 1, got {self.lam}")
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.m) != self.k:
            raise DimensionMismatch(f"need {self.k} segment lengths, got {len(self.m)}")
        if any(mi < 1 for mi in self.m):
            raise DomainError("segment lengths must be positive")
        if self.k % self.costs.t != 0:
            raise DomainError(f"t={self.costs.t} must divide k={self.k}")
        # u = lam*k/t is then automatically a positive multiple of lam,
        # which keeps blocks aligned to whole rounds of instances.
        assert self.u % self.lam == 0 and self.u >= 1

    @property
    def t(self) -> int:
        return self.costs.t

    @property
    def r(self) -> float:
        return self.costs.r

    @property
    def w(self) -> float:
        return self.costs.w

    @property
    def u(self) -> int:
        """Guardians per block in the output stream."""
        return self.lam * self.k // self.costs.t

    @property
    def n(self) -> int:
        """Length of a valid input word."""
        return self.lam * sum(mi + 1 for mi in self.m)

    @property
    def n_guardians(self) -> int:
        return self.lam * self.k

    def spec_id(self) -> str:
        fam = "ibh" if self.lam > 1 else "bh"
        return f"{fam}-l{self.lam}-k{self.k}-t{self.t}-{self.function.name}"

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "k": self.k,
            "t": self.costs.t,
            "r": self.costs.r,
            "w": self.costs.w,
            "m": list(self.m),
            "f": oracle_to_json(self.function),
        }

    @staticmethod
    def from_json(doc: dict) -> "ProblemSpec":
        try:
            return ProblemSpec(
                k=int(doc["k"]),
                costs=CostParams(r=float(doc["r"]), w=float(doc["w"]), t=int(doc["t"])),
                m=tuple(int(x) for x in doc["m"]),
                function=oracle_from_json(doc["f"]),
                lam=int(doc.get("lambda", 1)),
            )
        except KeyError as exc:
            raise MalformedInput(f"spec document missing field {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def loads(text: str) -> "ProblemSpec":
        return ProblemSpec.from_json(json.loads(text))


@dataclass(frozen=True)
class InputWord:
    """Request stream over {0,1,2}, stored as a string of those characters."""

    symbols: str

    def __post_init__(self):
        if set(self.symbols) - {"0", "1", "2"}:
            raise MalformedInput("input word may only contain characters 0, 1, 2")

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.symbols


@dataclass(frozen=True)
class ParsedInput:
    """Segments indexed [instance][round] plus 1-based guardian stream positions."""

    segments: Segments
    guardian_positions: tuple[int, ...]


@dataclass(frozen=True)
class GuardianOutputs:
    """All guardian answer bits in stream order."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise DomainError("guardian outputs must be bits")

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def _normalize_segments(spec: ProblemSpec, segments) -> Segments:
    rows = list(segments)
    if rows and isinstance(rows[0], str):
        rows = [rows]  # flat list accepted for lam=1
    if len(rows) != spec.lam:
        raise DimensionMismatch(f"need {spec.lam} instance rows, got {len(rows)}")
    out = []
    for j, row in enumerate(rows):
        row = tuple(row)
        if len(row) != spec.k:
            raise DimensionMismatch(f"instance {j + 1} needs {spec.k} segments, got {len(row)}")
        for i, seg in enumerate(row):
            if len(seg) != spec.m[i]:
                raise DimensionMismatch(
                    f"segment X^{j + 1}_{i + 1} must have length {spec.m[i]}, got {len(seg)}"
                )
            if set(seg) - {"0", "1"}:
                raise DimensionMismatch("segments must be bit strings")
        out.append(row)
    return tuple(out)


def encode_input(spec: ProblemSpec, segments) -> InputWord:
    """Lay the segment matrix out as the round-robin request stream."""
    segs = _normalize_segments(spec, segments)
    parts = []
    for i in range(spec.k):
        for j in range(spec.lam):
            parts.append("2")
            parts.append(segs[j][i])
    return InputWord("".join(parts))


def parse_input(spec: ProblemSpec, word: InputWord | str) -> ParsedInput:
    """Split a request stream back into guardian positions and segments."""
    symbols = word.symbols if isinstance(word, InputWord) else str(word)
    if len(symbols) != spec.lam * sum(mi + 1 for mi in spec.m):
        raise MalformedInput(
            f"word length {len(symbols)} does not match the expected {spec.n}"
        )
    segments = [[None] * spec.k for _ in range(spec.lam)]
    positions = []
    pos = 0
    for i in range(spec.k):
        for j in range(spec.lam):
            if symbols[pos] != "2":
                raise MalformedInput(f"expected guardian marker '2' at position {pos + 1}")
            positions.append(pos + 1)  # 1-based request indexing
            seg = symbols[pos + 1 : pos + 1 + spec.m[i]]
            if "2" in seg:
                raise MalformedInput(f"segment X^{j + 1}_{i + 1} interrupted by a '2'")
            segments[j][i] = seg
            pos += 1 + spec.m[i]
    return ParsedInput(
        segments=tuple(tuple(row) for row in segments),
        guardian_positions=tuple(positions),
    )


def suffix_parities(
    spec: ProblemSpec, parsed: ParsedInput, f: FunctionOracle | None = None
) -> tuple[tuple[int, ...], ...]:
    """Correct guardian answers g[j][i]: XOR of f over segments i..k of instance j."""
    f = f if f is not None else spec.function
    out = []
    for row in parsed.segments:
        values = [f.eval(seg) for seg in row]
        g = [0] * spec.k
        acc = 0
        for i in range(spec.k - 1, -1, -1):
            acc ^= values[i]
            g[i] = acc
        out.append(tuple(g))
    return tuple(out)


def stream_targets(
    spec: ProblemSpec, parsed: ParsedInput, f: FunctionOracle | None = None
) -> tuple[int, ...]:
    """suffix_parities flattened into guardian stream order."""
    g = suffix_parities(spec, parsed, f)
    return tuple(g[c % spec.lam][c // spec.lam] for c in range(spec.n_guardians))


def block_cost(spec: ProblemSpec, targets: Sequence[int], bits: Sequence[int]) -> float:
    """Block-sum score of an answer stream against precomputed targets."""
    total = 0.0
    u = spec.u
    for block in range(spec.t):
        lo = block * u
        ok = all(bits[c] == targets[c] for c in range(lo, lo + u))
        total += spec.r if ok else spec.w
    return total


def cost(
    spec: ProblemSpec,
    parsed: ParsedInput,
    outputs: GuardianOutputs | Sequence[int],
    f: FunctionOracle | None = None,
) -> float:
    """Block-sum score of an answer stream against the suffix-parity targets."""
    bits = outputs.bits if isinstance(outputs, GuardianOutputs) else tuple(outputs)
    if len(bits) != spec.n_guardians:
        raise DimensionMismatch(
            f"need {spec.n_guardians} guardian outputs, got {len(bits)}"
        )
    return block_cost(spec, stream_targets(spec, parsed, f), bits)


def opt_cost(spec: ProblemSpec) -> float:
    """Offline optimum: every block answered correctly."""
    return spec.t * spec.r
