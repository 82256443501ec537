"""Rebuild a check matrix from an encoder stage table.

Each T-stage word W on qudit q pins the pair of that row at reduction time
to (1,0) @ W^-1; identity entries are (1,0) on the pivot and on ADD/SWAP
targets, (0,0) elsewhere.  Undoing the stages of the earlier rows recovers
the original row.  The reduction is deterministic, so the result is the
only matrix consistent with the table under this package's conventions.

usage: python tools/reconstruct_from_stage_table.py {9-5-3|10-6-3}
"""

import sys

from quditenc.encoder import CheckMatrix, synthesize_encoder, validate
from quditenc.field import PrimeField
from quditenc.gatesets import preset
from quditenc.symplectic import TARGET, apply, apply_add_inverse, apply_single, apply_swap, compose

TABLES = {
    "9-5-3": (
        "d3-proposed-4", 9, 5, "[[9,5,3]]_3",
        [
            ("id id L R RM2 DFTR M2 DFT LR", [(1, j) for j in range(3, 10)], None),
            ("id id R RM2 DFT LR id DFTR L", [(2, j) for j in range(3, 10)], None),
            ("id id M2 R R id DFT DFTR R", [(3, j) for j in range(4, 10)], None),
            ("id id id LR L RM2 id R R", [(4, 5), (4, 6), (4, 8), (4, 9)], None),
        ],
    ),
    "10-6-3": (
        "d5-proposed-4", 10, 6, "[[10,6,3]]_5",
        [
            ("DFT QDFTQ PS PDFT S DFT QDFTQ PS PDFT S", [(1, j) for j in range(2, 11)], None),
            ("id DFTPS DFTP Q SQ DFT DFTPS DFTP Q SQ", [(2, j) for j in range(3, 11)], None),
            ("id DFTDFT QDFTQ S SDFT id SS QDFTQ S SDFT", [(3, 1), (3, 2)] + [(3, j) for j in range(4, 11)], None),
            ("id DFTDFT id PS DFTQ id id PP PS DFTQ", [(4, 2), (4, 5), (4, 7), (4, 8), (4, 9), (4, 10)], None),
        ],
    ),
}


def tokenize(word, names):
    out = []
    names = sorted(names, key=len, reverse=True)
    while word:
        name = next(n for n in names if word.startswith(n))
        out.append(name)
        word = word[len(name):]
    return out


def reconstruct(key):
    preset_name, n, k, label, stages = TABLES[key]
    gs = preset(preset_name)
    d = gs.d
    mats = {g.name: g.symplectic for g in gs.gates}
    ops = []  # per row: list of row-update callables in application order
    rows = []
    for i, (tform, adds, swap) in enumerate(stages, 1):
        words = tform.split()
        targets = {t for _, t in adds} | {i}
        if swap:
            targets |= set(swap)
        r = [0] * (2 * n)
        stage = []
        for q, w in enumerate(words, 1):
            if w == "id":
                v = TARGET if q in targets else (0, 0)
            else:
                m = compose([mats[t] for t in tokenize(w, mats)])
                v = apply(TARGET, m.inverse())
                stage.append(("single", q, m))
            r[q - 1], r[n + q - 1] = v
        if swap:
            stage.append(("swap",) + swap)
        stage.extend(("add", c, t) for c, t in adds)
        # undo earlier stages, latest first
        for prev in reversed(ops):
            for op in reversed(prev):
                if op[0] == "single":
                    r = apply_single(r, op[1], op[2].inverse())
                elif op[0] == "swap":
                    r = apply_swap(r, op[1], op[2])
                else:
                    r = apply_add_inverse(r, op[1], op[2], d)
        rows.append(r)
        ops.append(stage)
    return CheckMatrix(PrimeField(d), n, k, rows, label), gs


if __name__ == "__main__":
    check, gs = reconstruct(sys.argv[1])
    print("validate:", validate(check) or "ok")
    for r in check.rows:
        print(" ".join(map(str, r)))
    res = synthesize_encoder(check, gs)
    print(res.log.to_text())
