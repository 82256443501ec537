"""Encoder synthesis by reducing a check matrix to canonical form.

Row by row: single-qudit words send every nonzero (a|b) pair of the row to
(1|0) (the T stage), a SWAP brings a (1|0) onto the pivot qudit if needed,
and ADD gates from the pivot clear the remaining (1|0) pairs (the A stage).
Updates are applied to the current row and the rows below it.  A final
layer of inverse DFTs on the pivot qudits completes ``T1 A1 ... Tm Am F^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .circuit import Circuit, Gate
from .field import PrimeField
from .gatesets import GateSet
from .search import PathTable, find_shortest_paths, is_generating_set, word_names
from .symplectic import TARGET, apply_add, apply_single, apply_swap, compose


class EncoderError(ValueError):
    """Raised when a check matrix cannot be reduced."""


@dataclass(frozen=True)
class CheckMatrix:
    field: PrimeField
    n: int
    k: int
    rows: tuple[tuple[int, ...], ...]
    label: str = ""
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got n={self.n}, k={self.k}")
        if len(self.rows) != self.n - self.k:
            raise ValueError(f"expected {self.n - self.k} rows, got {len(self.rows)}")
        for i, r in enumerate(self.rows, 1):
            if len(r) != 2 * self.n:
                raise ValueError(f"row {i} has {len(r)} entries, expected {2 * self.n}")

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def m(self) -> int:
        return self.n - self.k

    def pair(self, row: int, qudit: int) -> tuple[int, int]:
        r = self.rows[row - 1]
        return r[qudit - 1], r[self.n + qudit - 1]


def symplectic_product(r1: Sequence[int], r2: Sequence[int], d: int) -> int:
    n = len(r1) // 2
    return sum(r1[q] * r2[n + q] - r2[q] * r1[n + q] for q in range(n)) % d


def validate(check: CheckMatrix) -> list[str]:
    """Diagnostics for a check matrix; an empty list means it is valid."""
    d = check.d
    problems = []
    for i, r in enumerate(check.rows, 1):
        bad = [x for x in r if not 0 <= x < d]
        if bad:
            problems.append(f"row {i}: entries {bad} outside 0..{d - 1}")
    if problems:
        return problems
    for i in range(check.m):
        for j in range(i + 1, check.m):
            sp = symplectic_product(check.rows[i], check.rows[j], d)
            if sp:
                problems.append(f"rows {i + 1} and {j + 1} do not commute (symplectic product {sp})")
    for i in range(check.m):
        if check.field.rank(check.rows[: i + 1]) <= i:
            problems.append(f"row {i + 1} is linearly dependent on the rows above it")
            break
    return problems


@dataclass
class StageRecord:
    row: int
    words: dict[int, tuple[int, ...]]
    swap: tuple[int, int] | None = None
    adds: list[tuple[int, int]] = field(default_factory=list)

    def word_count(self) -> int:
        return sum(len(w) for w in self.words.values())


@dataclass
class StageLog:
    n: int
    gate_names: list[str]
    records: list[StageRecord]
    pivots: list[int]

    def t_form(self, rec: StageRecord) -> str:
        parts = []
        for q in range(1, self.n + 1):
            w = rec.words.get(q, ())
            parts.append("".join(self.gate_names[i] for i in w) if w else "id")
        return " ⊗ ".join(parts)

    def a_form(self, rec: StageRecord) -> str:
        ops = []
        if rec.swap:
            ops.append(f"SWAP({rec.swap[0]},{rec.swap[1]})")
        ops.extend(f"ADD({c},{t})" for c, t in rec.adds)
        return " ".join(ops)

    def to_text(self) -> str:
        lines = []
        for rec in self.records:
            lines.append(f"T{rec.row}\t{self.t_form(rec)}")
            lines.append(f"A{rec.row}\t{self.a_form(rec)}")
        lines.append("F^-1\t" + " ".join(f"DFT^-1({q})" for q in self.pivots))
        return "\n".join(lines) + "\n"


@dataclass
class EncoderResult:
    circuit: Circuit
    log: StageLog
    final: list[list[int]]
    history: list[list[list[int]]]


def reduce_row(
    rows: Sequence[Sequence[int]],
    i: int,
    gateset: GateSet,
    paths: PathTable,
) -> tuple[StageRecord, list[list[int]]]:
    """Reduce row ``i`` (1-based) to the unit row e_i, updating rows >= i."""
    d = gateset.d
    n = len(rows[0]) // 2
    mats = gateset.matrices
    out = [list(r) for r in rows]
    row = out[i - 1]
    if not any(row):
        raise EncoderError(f"row {i} is zero at reduction time (dependent stabilizer)")

    words: dict[int, tuple[int, ...]] = {}
    for q in range(1, n + 1):
        v = (row[q - 1], row[n + q - 1])
        if v == (0, 0) or v == TARGET:
            continue
        if v not in paths:
            raise EncoderError(f"no gate word sends {v} to (1,0) with gate set {gateset.label}")
        words[q] = paths[v]
        m = compose([mats[g] for g in paths[v]])
        for r in range(i - 1, len(out)):
            out[r] = apply_single(out[r], q, m)
    row = out[i - 1]

    swap = None
    if (row[i - 1], row[n + i - 1]) == (0, 0):
        q = next((q for q in range(i + 1, n + 1) if (row[q - 1], row[n + q - 1]) == TARGET), None)
        if q is None:
            raise EncoderError(f"row {i} has no pivot available on qudits >= {i}")
        swap = (i, q)
        for r in range(i - 1, len(out)):
            out[r] = apply_swap(out[r], i, q)
        row = out[i - 1]

    adds = []
    for j in range(1, n + 1):
        if j != i and (row[j - 1], row[n + j - 1]) == TARGET:
            adds.append((i, j))
            for r in range(i - 1, len(out)):
                out[r] = apply_add(out[r], i, j, d)
    unit = [0] * (2 * n)
    unit[i - 1] = 1
    assert out[i - 1] == unit, f"row {i} did not reduce: {out[i - 1]}"
    return StageRecord(i, words, swap, adds), out


def synthesize_encoder(
    check: CheckMatrix,
    gateset: GateSet,
    paths: PathTable | None = None,
) -> EncoderResult:
    """Synthesize the encoder circuit for ``check`` over ``gateset``."""
    if gateset.d != check.d:
        raise EncoderError(f"gate set is over d={gateset.d}, code over d={check.d}")
    problems = validate(check)
    if problems:
        raise EncoderError("; ".join(problems))
    if not is_generating_set(gateset.matrices, check.field):
        raise EncoderError(f"gate set {gateset.label} does not generate SL(2,F_{check.d})")
    if paths is None:
        paths = find_shortest_paths(gateset.matrices, check.field)

    rows = [list(r) for r in check.rows]
    records, history = [], []
    gates: list[Gate] = []
    names = gateset.names
    for i in range(1, check.m + 1):
        rec, rows = reduce_row(rows, i, gateset, paths)
        records.append(rec)
        history.append([list(r) for r in rows])
        for q in sorted(rec.words):
            gates.extend(Gate("single", (q,), names[g], i, "T") for g in rec.words[q])
        if rec.swap:
            gates.append(Gate("swap", rec.swap, "", i, "A"))
        gates.extend(Gate("add", ct, "", i, "A") for ct in rec.adds)
    pivots = list(range(1, check.m + 1))
    gates.extend(Gate("dft_inverse", (q,), "", check.m, "F") for q in pivots)

    circuit = Circuit(check.d, check.n, tuple(gates), check.label, gateset.label, gateset.gates)
    log = StageLog(check.n, names, records, pivots)
    return EncoderResult(circuit, log, rows, history)


def replay(rows: Sequence[Sequence[int]], circuit: Circuit, include_final: bool = False) -> list[list[int]]:
    """Apply every gate of ``circuit`` to all ``rows`` (not just rows below)."""
    d = circuit.d
    defs = {g.name: g.symplectic for g in circuit.gate_defs}
    out = [list(r) for r in rows]
    for g in circuit.gates:
        if g.kind == "single":
            out = [apply_single(r, g.qudits[0], defs[g.name]) for r in out]
        elif g.kind == "add":
            out = [apply_add(r, *g.qudits, d) for r in out]
        elif g.kind == "swap":
            out = [apply_swap(r, *g.qudits) for r in out]
        elif include_final:
            dft = compose([defs[n] for n in defs if defs[n].entries == (0, d - 1, 1, 0)][:1])
            out = [apply_single(r, g.qudits[0], dft.inverse()) for r in out]
    return out


def log_words(log: StageLog) -> list[dict[int, str]]:
    """Per-row mapping qudit -> word string, identity words omitted."""
    return [{q: "".join(log.gate_names[g] for g in w) for q, w in rec.words.items()} for rec in log.records]


__all__ = [
    "CheckMatrix",
    "EncoderError",
    "EncoderResult",
    "StageLog",
    "StageRecord",
    "reduce_row",
    "replay",
    "symplectic_product",
    "synthesize_encoder",
    "validate",
    "word_names",
]
