"""Circuit IR for synthesized encoders: gate records, metrics, depth, I/O.

Gate order follows the encoder product ``T1 A1 T2 A2 ... F^-1``: the
circuit's unitary is ``U = g1 @ g2 @ ... @ gN``.  Acting on a state, the
last gate in the list is applied first.  Depth is the longest dependency
chain and does not depend on which of the two readings is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .symplectic import GateDef, Symplectic2

KINDS = ("single", "add", "swap", "dft_inverse")
STAGES = ("T", "A", "F")


@dataclass(frozen=True)
class Gate:
    kind: str
    qudits: tuple[int, ...]
    name: str = ""
    row: int = 0
    stage: str = "T"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.stage not in STAGES:
            raise ValueError(f"unknown stage {self.stage!r}")
        arity = 2 if self.kind in ("add", "swap") else 1
        if len(self.qudits) != arity:
            raise ValueError(f"{self.kind} needs {arity} qudit(s), got {self.qudits}")
        if arity == 2 and self.qudits[0] == self.qudits[1]:
            raise ValueError(f"{self.kind} on identical qudits {self.qudits}")
        if self.kind == "single" and not self.name:
            raise ValueError("single-qudit gate needs a name")

    @property
    def label(self) -> str:
        if self.kind == "single":
            return f"{self.name}[{self.qudits[0]}]"
        if self.kind == "add":
            return f"ADD({self.qudits[0]},{self.qudits[1]})"
        if self.kind == "swap":
            return f"SWAP({self.qudits[0]},{self.qudits[1]})"
        return f"DFT^-1[{self.qudits[0]}]"


@dataclass(frozen=True)
class Circuit:
    d: int
    n: int
    gates: tuple[Gate, ...] = ()
    code: str = ""
    gateset: str = ""
    gate_defs: tuple[GateDef, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "gate_defs", tuple(self.gate_defs))
        known = {g.name for g in self.gate_defs}
        last = (0, 0)
        for g in self.gates:
            for q in g.qudits:
                if not 1 <= q <= self.n:
                    raise ValueError(f"{g.label}: qudit out of range 1..{self.n}")
            if g.kind == "single" and self.gate_defs and g.name not in known:
                raise ValueError(f"gate {g.name!r} not defined in circuit gate set")
            pos = (g.row, STAGES.index(g.stage))
            if pos < last:
                raise ValueError(f"stage tags out of order at {g.label}")
            last = pos

    def __add__(self, other: "Circuit") -> "Circuit":
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError("cannot concatenate circuits of different shape")
        defs = {g.name: g for g in self.gate_defs}
        defs.update({g.name: g for g in other.gate_defs})
        shift = max((g.row for g in self.gates), default=0)
        moved = [Gate(g.kind, g.qudits, g.name, g.row + shift, g.stage) for g in other.gates]
        return Circuit(self.d, self.n, self.gates + tuple(moved), self.code, self.gateset, tuple(defs.values()))

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class Metrics:
    single_qudit_count: int
    single_qudit_count_total: int
    two_qudit_count: int
    depth: int


def count_gates(c: Circuit) -> Metrics:
    """Gate counts; ``single_qudit_count`` covers T stages only."""
    single = sum(1 for g in c.gates if g.kind == "single")
    finv = sum(1 for g in c.gates if g.kind == "dft_inverse")
    two = sum(1 for g in c.gates if g.kind in ("add", "swap"))
    return Metrics(single, single + finv, two, depth(c))


def depth(c: Circuit) -> int:
    """ASAP unit-latency layering; two-qudit gates occupy both wires."""
    busy = [0] * (c.n + 1)
    out = 0
    for g in c.gates:
        layer = 1 + max(busy[q] for q in g.qudits)
        for q in g.qudits:
            busy[q] = layer
        out = max(out, layer)
    return out


@dataclass(frozen=True)
class Comparison:
    baseline: Metrics
    proposed: Metrics
    gate_reduction: int
    depth_reduction: int


def percent_reduction(baseline: int, proposed: int) -> int:
    if baseline == 0:
        raise ZeroDivisionError("baseline is zero")
    return math.floor(100 * (baseline - proposed) / baseline + 0.5)


def compare(baseline: Circuit, proposed: Circuit) -> Comparison:
    if baseline.d != proposed.d or baseline.n != proposed.n:
        raise ValueError("circuits are for different codes")
    mb, mp = count_gates(baseline), count_gates(proposed)
    return Comparison(
        mb,
        mp,
        percent_reduction(mb.single_qudit_count, mp.single_qudit_count),
        percent_reduction(mb.depth, mp.depth),
    )


def fuse_single_qudit(c: Circuit) -> Circuit:
    """Merge runs of single-qudit gates on one wire within a T stage.

    Not applied by the encoder; counts reported elsewhere are unfused.
    """
    defs = {g.name: g for g in c.gate_defs}
    out: list[Gate] = []
    for g in c.gates:
        prev = out[-1] if out else None
        if (
            prev is not None
            and g.kind == prev.kind == "single"
            and g.qudits == prev.qudits
            and (g.row, g.stage) == (prev.row, prev.stage)
        ):
            name = prev.name + "·" + g.name
            if name not in defs:
                defs[name] = GateDef(name, defs[prev.name].symplectic @ defs[g.name].symplectic)
            out[-1] = Gate("single", g.qudits, name, g.row, g.stage)
        else:
            out.append(g)
    return Circuit(c.d, c.n, tuple(out), c.code, c.gateset, tuple(defs.values()))


# -- serialization ---------------------------------------------------------

_KIND_TOKENS = {"single": "single", "add": "add", "swap": "swap", "dft_inverse": "dftinv"}
_TOKEN_KINDS = {v: k for k, v in _KIND_TOKENS.items()}


def export_structured(c: Circuit) -> str:
    lines = [
        "# qudit encoder circuit",
        "# gate order is the operator product: the last gate acts first",
        f"d {c.d}",
        f"n {c.n}",
        f"code {c.code}",
        f"gateset {c.gateset}",
    ]
    for g in c.gate_defs:
        lines.append("gate " + g.name + " " + " ".join(str(x) for x in g.symplectic.entries))
    lines.append("ops")
    for g in c.gates:
        parts = [g.stage, str(g.row), _KIND_TOKENS[g.kind]]
        if g.kind == "single":
            parts.append(g.name)
        parts.extend(str(q) for q in g.qudits)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_structured(text: str) -> Circuit:
    header: dict[str, str] = {}
    defs: list[GateDef] = []
    gates: list[Gate] = []
    in_ops = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if not in_ops:
            key, _, rest = line.partition(" ")
            if key == "ops":
                in_ops = True
            elif key == "gate":
                toks = rest.split()
                if len(toks) != 5:
                    raise ValueError(f"line {lineno}: gate needs a name and 4 entries")
                defs.append(GateDef(toks[0], Symplectic2(int(header["d"]), tuple(int(t) for t in toks[1:]))))
            elif key in ("d", "n", "code", "gateset"):
                header[key] = rest
            else:
                raise ValueError(f"line {lineno}: unexpected header key {key!r}")
            continue
        toks = line.split()
        try:
            stage, row, kind = toks[0], int(toks[1]), _TOKEN_KINDS[toks[2]]
            if kind == "single":
                gates.append(Gate(kind, (int(toks[4]),), toks[3], row, stage))
            else:
                gates.append(Gate(kind, tuple(int(t) for t in toks[3:]), "", row, stage))
        except (IndexError, KeyError, ValueError) as exc:
            raise ValueError(f"line {lineno}: bad gate record {line!r}: {exc}") from None
    if "d" not in header or "n" not in header:
        raise ValueError("circuit document missing d or n")
    return Circuit(
        int(header["d"]), int(header["n"]), tuple(gates), header.get("code", ""), header.get("gateset", ""), tuple(defs)
    )


def stage_blocks(c: Circuit) -> list[tuple[str, list[Gate]]]:
    blocks: list[tuple[str, list[Gate]]] = []
    for g in c.gates:
        tag = "F^-1" if g.stage == "F" else f"{g.stage}{g.row}"
        if not blocks or blocks[-1][0] != tag:
            blocks.append((tag, []))
        blocks[-1][1].append(g)
    return blocks


def export_text(c: Circuit) -> str:
    """One line per wire; stages separated by ``|``."""
    header = f"# d={c.d} n={c.n} code={c.code} gateset={c.gateset}"
    if not c.gates:
        return header + "\n"
    cols: list[list[str]] = []
    titles: list[str] = []
    for tag, gates in stage_blocks(c):
        if tag.startswith("T") or tag.startswith("F"):
            words = {q: [] for q in range(1, c.n + 1)}
            for g in gates:
                words[g.qudits[0]].append(g.name if g.kind == "single" else "DFT^-1")
            col = ["".join(words[q]) or "-" for q in range(1, c.n + 1)]
            cols.append(col)
            titles.append(tag)
        else:
            for i, g in enumerate(gates):
                col = ["-"] * c.n
                a, b = g.qudits
                lo, hi = sorted((a, b))
                for q in range(lo + 1, hi):
                    col[q - 1] = "|"
                if g.kind == "add":
                    col[a - 1], col[b - 1] = "C", "+"
                else:
                    col[a - 1], col[b - 1] = "x", "x"
                cols.append(col)
                titles.append(tag if i == 0 else "")
        cols.append(["|"] * c.n)
        titles.append("|")
    widths = [max(len(s) for s in col + [t]) for col, t in zip(cols, titles)]
    out = [header, "     " + " ".join(t.center(w) for t, w in zip(titles, widths))]
    for q in range(c.n):
        out.append(f"q{q + 1:<3} " + " ".join(col[q].center(w, "-" if col[q] != "|" else " ") for col, w in zip(cols, widths)))
    return "\n".join(out) + "\n"


def gate_words(c: Circuit, row: int) -> dict[int, str]:
    """Concatenated single-qudit word per qudit for the T stage of ``row``."""
    words: dict[int, str] = {}
    for g in c.gates:
        if g.kind == "single" and g.row == row and g.stage == "T":
            words[g.qudits[0]] = words.get(g.qudits[0], "") + g.name
    return words


def busiest_wire(c: Circuit) -> int:
    load = [0] * (c.n + 1)
    for g in c.gates:
        for q in g.qudits:
            load[q] += 1
    return max(load)
