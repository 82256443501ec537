"""Line-oriented text formats for check matrices and gate sets.

Both formats use ``key: value`` header lines, ``#`` comment lines and
space-separated integers.  ``format_*`` emits the canonical form, which
``parse_*`` reads back unchanged.
"""

from __future__ import annotations

from importlib import resources

from .encoder import CheckMatrix
from .field import PrimeField
from .gatesets import GateSet
from .symplectic import GateDef, Symplectic2


class ParseError(ValueError):
    pass


def _split(text: str):
    header: dict[str, tuple[int, str]] = {}
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        if sep and key.strip().isidentifier():
            header[key.strip()] = (lineno, val.strip())
        else:
            body.append((lineno, line))
    return header, body


def _int_field(header, key: str) -> int:
    if key not in header:
        raise ParseError(f"missing header field {key!r}")
    lineno, val = header[key]
    try:
        return int(val)
    except ValueError:
        raise ParseError(f"line {lineno}: {key} must be an integer, got {val!r}") from None


def parse_check_matrix(text: str) -> CheckMatrix:
    header, body = _split(text)
    d, n, k = (_int_field(header, key) for key in ("d", "n", "k"))
    try:
        field = PrimeField(d)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not 0 <= k <= n:
        raise ParseError(f"need 0 <= k <= n, got n={n}, k={k}")
    rows = []
    for lineno, line in body:
        try:
            vals = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry in {line!r}") from None
        if len(vals) != 2 * n:
            raise ParseError(f"line {lineno}: expected {2 * n} entries, got {len(vals)}")
        rows.append(vals)
    if len(rows) != n - k:
        raise ParseError(f"expected {n - k} rows for n={n}, k={k}, got {len(rows)}")
    return CheckMatrix(
        field, n, k, rows, header.get("label", (0, ""))[1], header.get("provenance", (0, ""))[1]
    )


def format_check_matrix(check: CheckMatrix) -> str:
    lines = []
    if check.label:
        lines.append(f"label: {check.label}")
    if check.provenance:
        lines.append(f"provenance: {check.provenance}")
    lines += [f"d: {check.d}", f"n: {check.n}", f"k: {check.k}", "# X block | Z block"]
    lines += [" ".join(str(x) for x in r) for r in check.rows]
    return "\n".join(lines) + "\n"


def parse_gateset(text: str) -> GateSet:
    header, body = _split(text)
    d = _int_field(header, "d")
    label = header.get("label", (0, ""))[1]
    gates, flagged = [], []
    for lineno, line in body:
        toks = line.split()
        if toks[0] != "gate" or len(toks) not in (6, 7) or (len(toks) == 7 and toks[6] != "dft"):
            raise ParseError(f"line {lineno}: expected 'gate NAME a b c d [dft]', got {line!r}")
        try:
            m = Symplectic2(d, tuple(int(t) for t in toks[2:6]))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        gates.append(GateDef(toks[1], m))
        if len(toks) == 7:
            flagged.append((lineno, m))
    if len(flagged) != 1:
        raise ParseError(f"exactly one gate must carry the dft flag, found {len(flagged)}")
    lineno, m = flagged[0]
    if m.entries != (0, d - 1, 1, 0):
        raise ParseError(f"line {lineno}: dft-flagged matrix must be [[0,{d - 1}],[1,0]]")
    try:
        return GateSet(d, label, tuple(gates))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_gateset(gs: GateSet) -> str:
    lines = [f"label: {gs.label}", f"d: {gs.d}"] if gs.label else [f"d: {gs.d}"]
    dft = gs.dft_name
    for g in gs.gates:
        flag = " dft" if g.name == dft else ""
        lines.append(f"gate {g.name} " + " ".join(map(str, g.symplectic.entries)) + flag)
    return "\n".join(lines) + "\n"


def bundled_codes() -> list[str]:
    return sorted(p.name for p in resources.files("quditenc.data").iterdir() if p.name.endswith(".chk"))


def load_bundled(name: str) -> CheckMatrix:
    """Load a shipped check matrix, e.g. ``"513_d3"``."""
    fname = name if name.endswith(".chk") else name + ".chk"
    return parse_check_matrix(resources.files("quditenc.data").joinpath(fname).read_text())
