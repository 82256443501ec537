"""Exhaustive search for a generating gate set minimizing total word length.

Every candidate set contains the DFT matrix.  Each constraint vector must
reach the target (1, 0) in a single gate; the cost of a set is the sum over
all nonzero phase-space vectors of the shortest word length to the target.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .field import PrimeField
from .symplectic import (
    TARGET,
    GateDef,
    PhaseVector,
    Symplectic2,
    apply,
    builtin_gate,
    enumerate_sl2,
    nonzero_vectors,
)

log = logging.getLogger(__name__)

PathTable = dict[PhaseVector, tuple[int, ...]]


@dataclass(frozen=True)
class SearchConfig:
    field: PrimeField
    set_size: int
    constraints: tuple[PhaseVector, ...] = ()

    def __post_init__(self):
        d = self.field.d
        cons = tuple((a % d, b % d) for a, b in self.constraints)
        object.__setattr__(self, "constraints", cons)
        if self.set_size < 1:
            raise ValueError("set_size must be positive")
        for v in cons:
            if v == (0, 0):
                raise ValueError("constraint vector (0,0) can never reach (1,0)")
            if v == TARGET:
                raise ValueError("constraint vector (1,0) already is the target")


@dataclass
class SearchResult:
    best_set: list[GateDef]
    paths: PathTable
    total_ops: int
    evaluated: int = 0
    optima: list[tuple[Symplectic2, ...]] = dc_field(default_factory=list)

    @property
    def matrices(self) -> list[Symplectic2]:
        return [g.symplectic for g in self.best_set]


# -- group machinery ------------------------------------------------------


@lru_cache(maxsize=None)
def _group_tables(d: int):
    """Index every SL(2, F_d) element and tabulate products and inverses."""
    elems = enumerate_sl2(PrimeField(d))
    index = {m.entries: i for i, m in enumerate(elems)}
    ent = np.array([m.entries for m in elems], dtype=np.int64)
    a, b, c, e = (ent[:, k][:, None] for k in range(4))
    w, x, y, z = (ent[:, k][None, :] for k in range(4))
    p = [(a * w + b * y) % d, (a * x + b * z) % d, (c * w + e * y) % d, (c * x + e * z) % d]
    code = ((p[0] * d + p[1]) * d + p[2]) * d + p[3]
    lookup = np.full(d**4, -1, dtype=np.int64)
    codes = ((ent[:, 0] * d + ent[:, 1]) * d + ent[:, 2]) * d + ent[:, 3]
    lookup[codes] = np.arange(len(elems))
    mult = lookup[code]
    return elems, index, mult


def sl2_order(d: int) -> int:
    return d * (d * d - 1)


def closure(gates: Sequence[Symplectic2], field: PrimeField) -> set[Symplectic2]:
    """The subgroup generated by ``gates`` (BFS on the Cayley graph from I)."""
    elems, _, _ = _group_tables(field.d)
    return {elems[i] for i in _closure_idx(tuple(_indices(gates, field)), field.d)}


def _indices(gates: Iterable[Symplectic2], field: PrimeField) -> list[int]:
    _, index, _ = _group_tables(field.d)
    return [index[g.entries] for g in gates]


def _closure_idx(gens: tuple[int, ...], d: int) -> set[int]:
    elems, index, mult = _group_tables(d)
    ident = index[(1, 0, 0, 1)]
    seen = {ident}
    queue = [ident]
    while queue:
        nxt = []
        for g in queue:
            row = mult[g]
            for h in gens:
                k = int(row[h])
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        queue = nxt
    return seen


def standard_generators(field: PrimeField) -> tuple[Symplectic2, Symplectic2]:
    d = field.d
    return Symplectic2(d, (1, 1, 0, 1)), Symplectic2(d, (0, d - 1, 1, 0))


def is_generating_set(gates: Sequence[Symplectic2], field: PrimeField) -> bool:
    """True iff the gates generate all of SL(2, F_d).

    The full closure is computed; containing both standard generators must
    coincide with the closure having order d(d^2-1).
    """
    if not gates:
        return False
    return _is_generating_idx(tuple(_indices(gates, field)), field.d)


def _is_generating_idx(gens: tuple[int, ...], d: int) -> bool:
    _, index, _ = _group_tables(d)
    grp = _closure_idx(gens, d)
    has_std = index[(1, 1, 0, 1)] in grp and index[(0, d - 1, 1, 0)] in grp
    assert has_std == (len(grp) == sl2_order(d)), "closure order disagrees with generator test"
    return has_std


# -- paths and scoring ----------------------------------------------------


def candidate_pool(v: PhaseVector, field: PrimeField) -> list[Symplectic2]:
    """Every SL(2, F_d) element sending ``v`` to (1, 0) in one step."""
    v = (v[0] % field.d, v[1] % field.d)
    if v == (0, 0):
        raise ValueError("zero vector has no candidate pool")
    return [m for m in enumerate_sl2(field) if apply(v, m) == TARGET]


def find_shortest_paths(gates: Sequence[Symplectic2], field: PrimeField) -> PathTable:
    """Backward BFS from (1, 0) using inverse gates.

    ``paths[v]`` is a tuple of indices into ``gates`` whose product, applied
    in order, sends v to (1, 0).  Gates are tried in list order and the first
    word discovered is kept.
    """
    inverses = [g.inverse() for g in gates]
    paths: PathTable = {TARGET: ()}
    queue = deque([TARGET])
    while queue:
        u = queue.popleft()
        for gi, ginv in enumerate(inverses):
            v = apply(u, ginv)
            if v not in paths:
                paths[v] = (gi,) + paths[u]
                queue.append(v)
    return paths


def score(paths: PathTable, config: SearchConfig) -> int | None:
    """Sum of word lengths over all nonzero vectors, or None if invalid."""
    cons = set(config.constraints)
    total = 0
    for v in nonzero_vectors(config.field.d):
        if v not in paths:
            return None
        n = len(paths[v])
        if v in cons and n != 1:
            return None
        total += n
    return total


# -- exhaustive driver ----------------------------------------------------


def _tiebreak_key(total: int, idx_set: Iterable[int], d: int) -> tuple:
    elems, _, _ = _group_tables(d)
    return (total, tuple(sorted(elems[i].entries for i in idx_set)))


def _evaluate_task(args) -> tuple[tuple | None, int, list[tuple[int, ...]]]:
    """Evaluate all completions of one (required set, first extra) task."""
    d, set_size, constraints, req, first = args
    elems, _, _ = _group_tables(d)
    config = SearchConfig(PrimeField(d), set_size, constraints)
    n_all = len(elems)
    req_set = set(req)
    n_choose = set_size - len(req)
    best_key = None
    ties: list[tuple[int, ...]] = []
    count = 0
    if n_choose == 0:
        candidates: Iterable[tuple[int, ...]] = [()]
    else:
        rest = [i for i in range(first + 1, n_all) if i not in req_set]
        candidates = ((first,) + c for c in itertools.combinations(rest, n_choose - 1))
    for extra in candidates:
        base = tuple(sorted(req_set.union(extra)))
        count += 1
        if not _is_generating_idx(base, d):
            continue
        paths = find_shortest_paths([elems[i] for i in base], config.field)
        total = score(paths, config)
        if total is None:
            continue
        key = _tiebreak_key(total, base, d)
        if best_key is None or key[0] < best_key[0]:
            best_key, ties = key, [base]
        elif key[0] == best_key[0]:
            ties.append(base)
            best_key = min(best_key, key)
    return best_key, count, ties


def _tasks(config: SearchConfig):
    d = config.field.d
    elems, index, _ = _group_tables(d)
    dft = index[(0, d - 1, 1, 0)]
    pools = [[index[m.entries] for m in candidate_pool(v, config.field)] for v in config.constraints]
    seen_req = set()
    for choice in itertools.product(*pools):
        req = tuple(sorted({dft, *choice}))
        if len(req) > config.set_size or req in seen_req:
            continue
        # distinct tuples can collapse to the same required set
        seen_req.add(req)
        n_choose = config.set_size - len(req)
        if n_choose == 0:
            yield (d, config.set_size, config.constraints, req, -1)
        else:
            for first in range(len(elems)):
                if first not in req:
                    yield (d, config.set_size, config.constraints, req, first)


def find_optimal_set(config: SearchConfig, workers: int = 1) -> SearchResult | None:
    """Exhaustive search; returns None when no valid set exists.

    Among equal-cost optima the set whose sorted entry tuples are
    lexicographically smallest is returned, so the answer does not depend
    on ``workers``.
    """
    d = config.field.d
    elems, _, _ = _group_tables(d)
    tasks = list(_tasks(config))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_evaluate_task, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    else:
        results = [_evaluate_task(t) for t in tasks]

    best_key, evaluated, optima = None, 0, []
    for key, count, ties in results:
        evaluated += count
        if key is None:
            continue
        if best_key is None or key[0] < best_key[0]:
            best_key, optima = key, list(ties)
        elif key[0] == best_key[0]:
            best_key = min(best_key, key)
            optima.extend(ties)
    log.info("evaluated %d candidate sets", evaluated)
    if best_key is None:
        return None

    total, entries = best_key
    mats = [Symplectic2(d, e) for e in entries]
    mats = _dft_first(mats, d)
    gates = name_matrices(mats, config.field)
    paths = find_shortest_paths(mats, config.field)
    uniq = sorted({tuple(sorted(elems[i].entries for i in o)) for o in optima})
    return SearchResult(
        best_set=gates,
        paths=paths,
        total_ops=total,
        evaluated=evaluated,
        optima=[tuple(Symplectic2(d, e) for e in o) for o in uniq],
    )


def _dft_first(mats: list[Symplectic2], d: int) -> list[Symplectic2]:
    dft = Symplectic2(d, (0, d - 1, 1, 0))
    return [dft] + [m for m in mats if m != dft]


def _known_names(field: PrimeField) -> dict[Symplectic2, str]:
    d = field.d
    names = {}
    cands = ["DFT"] + [f"M{g}" for g in range(2, d)] + [f"P{g}" for g in range(1, d)]
    cands += {3: ["L", "R"], 5: ["P", "Q", "S"]}.get(d, [])
    for n in cands:
        g = builtin_gate(n, field)
        names.setdefault(g.symplectic, g.name)
    return names


def name_matrices(mats: Sequence[Symplectic2], field: PrimeField) -> list[GateDef]:
    """Attach a known gate name to each matrix, falling back to G1, G2, ..."""
    known = _known_names(field)
    out, k = [], 0
    for m in mats:
        if m in known:
            out.append(GateDef(known[m], m))
        else:
            k += 1
            out.append(GateDef(f"G{k}", m))
    return out


def word_names(word: Sequence[int], gates: Sequence[GateDef]) -> str:
    return "".join(gates[i].name for i in word) if word else "id"
