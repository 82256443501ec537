"""Text, CSV and figure output for search results and gate-set comparisons."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Sequence

from .circuit import compare
from .encoder import CheckMatrix, synthesize_encoder
from .gatesets import GateSet
from .search import SearchConfig, SearchResult, word_names
from .symplectic import nonzero_vectors


def _vec(v) -> str:
    return f"({v[0]},{v[1]})"


def search_table(result: SearchResult, config: SearchConfig) -> str:
    """Human-readable transformation table: one line per nonzero vector."""
    d = config.field.d
    names = [g.name for g in result.best_set]
    lines = [
        f"gate set ({', '.join(names)}) over F_{d}, set_size {config.set_size}",
        f"{'vector':<8}  {'word':<12}  {'length':>6}  constrained",
    ]
    for v in nonzero_vectors(d):
        w = result.paths[v]
        mark = "yes" if v in config.constraints else ""
        lines.append(f"{_vec(v):<8}  {word_names(w, result.best_set):<12}  {len(w):>6}  {mark}".rstrip())
    lines.append(f"total_ops: {result.total_ops}")
    return "\n".join(lines) + "\n"


def search_document(result: SearchResult, config: SearchConfig) -> str:
    """Machine-readable search report; paths are gate names in application order."""
    d = config.field.d
    cons = " ".join(f"{a},{b}" for a, b in config.constraints)
    lines = [
        f"d: {d}",
        f"set_size: {config.set_size}",
        f"constraints: {cons}",
        f"total_ops: {result.total_ops}",
        f"evaluated: {result.evaluated}",
        f"optima: {len(result.optima)}",
    ]
    for g in result.best_set:
        lines.append(f"gate {g.name} " + " ".join(map(str, g.symplectic.entries)))
    for v in nonzero_vectors(d):
        w = result.paths[v]
        lines.append(f"path {v[0]},{v[1]} {len(w)} " + " ".join(result.best_set[i].name for i in w))
    return "\n".join(line.rstrip() for line in lines) + "\n"


@dataclass(frozen=True)
class ComparisonRow:
    code: str
    d: int
    set_size: str
    set_a: str
    set_b: str
    count_a: int
    count_b: int
    gate_reduction_pct: int
    depth_a: int
    depth_b: int
    depth_reduction_pct: int


def compare_sets(check: CheckMatrix, set_a: GateSet, set_b: GateSet) -> ComparisonRow:
    """Synthesize with both sets; A is the baseline."""
    ca = synthesize_encoder(check, set_a).circuit
    cb = synthesize_encoder(check, set_b).circuit
    cmp = compare(ca, cb)
    size = str(len(set_a)) if len(set_a) == len(set_b) else f"{len(set_a)}/{len(set_b)}"
    return ComparisonRow(
        check.label or f"n{check.n}k{check.k}",
        check.d,
        size,
        set_a.label,
        set_b.label,
        cmp.baseline.single_qudit_count,
        cmp.proposed.single_qudit_count,
        cmp.gate_reduction,
        cmp.baseline.depth,
        cmp.proposed.depth,
        cmp.depth_reduction,
    )


def rows_to_csv(rows: Sequence[ComparisonRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(ComparisonRow)])
    for r in rows:
        w.writerow(astuple(r))
    return buf.getvalue()


def rows_to_table(rows: Sequence[ComparisonRow]) -> str:
    head = f"{'code':<14} {'d':>2} {'size':>4} {'A':>6} {'B':>6} {'gate %':>6} {'depth A':>7} {'depth B':>7} {'depth %':>7}"
    lines = [head]
    for r in rows:
        lines.append(
            f"{r.code:<14} {r.d:>2} {r.set_size:>4} {r.count_a:>6} {r.count_b:>6} {r.gate_reduction_pct:>6}"
            f" {r.depth_a:>7} {r.depth_b:>7} {r.depth_reduction_pct:>7}"
        )
    return "\n".join(lines) + "\n"


def plot_comparison(rows: Sequence[ComparisonRow], path: str | Path) -> Path:
    """Grouped bars of gate count and depth for each compared pair."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{r.code}\n{r.set_a}\nvs {r.set_b}" for r in rows]
    x = range(len(rows))
    width = 0.38
    fig, axes = plt.subplots(1, 2, figsize=(max(6.0, 3.0 * len(rows) + 2), 4.0))
    panels = [
        ("single-qudit gates", [r.count_a for r in rows], [r.count_b for r in rows]),
        ("depth (ASAP)", [r.depth_a for r in rows], [r.depth_b for r in rows]),
    ]
    for ax, (title, a, b) in zip(axes, panels):
        ax.bar([i - width / 2 for i in x], a, width, label="set A", color="0.6")
        ax.bar([i + width / 2 for i in x], b, width, label="set B", color="tab:blue")
        ax.set_xticks(list(x))
        ax.set_xticklabels(labels, fontsize=7)
        ax.set_title(title, fontsize=9)
        ax.spines[["top", "right"]].set_visible(False)
    axes[0].legend(frameon=False, fontsize=8)
    fig.tight_layout()
    path = Path(path)
    # drop the version stamp so reruns give identical bytes
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
