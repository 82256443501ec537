"""Dense complex-matrix oracle for gates, Pauli identities and encoders.

This module deliberately works with explicit unitaries so it stays
independent of the symplectic bookkeeping it checks.  Conjugation is
``U^-1 P U`` unless stated otherwise; unitaries are compared up to a
global phase.
"""

from __future__ import annotations

import itertools
import os
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate
from .encoder import CheckMatrix
from .field import PrimeField
from .symplectic import Symplectic2, builtin_gate

TOL = 1e-10
DEFAULT_MAX_DIM = 2048
BUDGET_ENV = "QUDITENC_MAX_DIM"


class NotCliffordError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def _w(d: int, k) -> complex:
    return omega(d) ** (k % d)


@dataclass(frozen=True)
class PauliLabel:
    """``omega^c X(a) Z(b)`` on len(a) qudits."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: int = 0

    @classmethod
    def single(cls, a: int, b: int, c: int = 0) -> "PauliLabel":
        return cls((a,), (b,), c)

    def reduced(self, d: int) -> "PauliLabel":
        return PauliLabel(tuple(x % d for x in self.a), tuple(x % d for x in self.b), self.c % d)


# -- construction ---------------------------------------------------------


def shift(d: int, a: int = 1) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), a % d, axis=0)


def clock(d: int, b: int = 1) -> np.ndarray:
    return np.diag([_w(d, b * z) for z in range(d)])


def build_pauli(label: PauliLabel, d: int) -> np.ndarray:
    out = np.array([[_w(d, label.c)]], dtype=complex)
    for a, b in zip(label.a, label.b):
        out = np.kron(out, shift(d, a) @ clock(d, b))
    return out


_PARAM_RE = re.compile(r"^(M|P)(\d+)$")


def build_gate(name: str, d: int, gamma: int | None = None) -> np.ndarray:
    """Explicit unitary of a named gate (two-qudit gates act on d^2)."""
    PrimeField(d)
    m = _PARAM_RE.match(name)
    if m:
        name, gamma = m.group(1), int(m.group(2))
    w = omega(d)
    idx = np.arange(d)
    if name == "id":
        return np.eye(d, dtype=complex)
    if name == "DFT":
        return w ** np.outer(idx, idx) / np.sqrt(d)
    if name == "M" and gamma is not None:
        g = gamma % d
        if g == 0:
            raise ValueError("gamma must be nonzero")
        u = np.zeros((d, d), dtype=complex)
        u[(g * idx) % d, idx] = 1
        return u
    if name == "P" and gamma is not None:
        half = PrimeField(d).half
        return np.diag([_w(d, -half * gamma * y * y) for y in range(d)])
    if name == "L" and d == 3:
        return w ** ((2 * np.outer(idx, idx)) % 3) / np.sqrt(3)
    if name == "R" and d == 3:
        p, q = np.meshgrid(idx, idx, indexing="ij")
        return w ** ((2 * q * q - 2 * p * q) % 3) / np.sqrt(3)
    if name == "ADD":
        u = np.zeros((d * d, d * d), dtype=complex)
        for x, y in itertools.product(range(d), repeat=2):
            u[x * d + (x + y) % d, x * d + y] = 1
        return u
    if name == "SWAP":
        u = np.zeros((d * d, d * d), dtype=complex)
        for x, y in itertools.product(range(d), repeat=2):
            u[y * d + x, x * d + y] = 1
        return u
    raise ValueError(f"no unitary known for gate {name!r} at d={d}")


def is_unitary(u: np.ndarray, tol: float = TOL) -> bool:
    return np.max(np.abs(u.conj().T @ u - np.eye(len(u)))) < tol


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = TOL) -> bool:
    k = np.unravel_index(np.argmax(np.abs(u)), u.shape)
    if abs(v[k]) < tol:
        return False
    phase = u[k] / v[k]
    return abs(abs(phase) - 1) < tol and np.max(np.abs(u - phase * v)) < tol


# -- Pauli extraction -----------------------------------------------------


@lru_cache(maxsize=None)
def _label_table(d: int, n: int):
    labels, mats = [], []
    for a in itertools.product(range(d), repeat=n):
        for b in itertools.product(range(d), repeat=n):
            lab = PauliLabel(a, b, 0)
            labels.append(lab)
            mats.append(build_pauli(lab, d))
    return labels, mats


def match_pauli(m: np.ndarray, d: int, tol: float = TOL) -> PauliLabel:
    """Find ``omega^c X(a) Z(b)`` equal to ``m`` by exhaustive comparison."""
    n = round(np.log(len(m)) / np.log(d))
    labels, mats = _label_table(d, n)
    for lab, p in zip(labels, mats):
        k = np.unravel_index(np.argmax(np.abs(p)), p.shape)
        ratio = m[k] / p[k]
        if np.max(np.abs(m - ratio * p)) < tol:
            c = np.angle(ratio) / (2 * np.pi / d)
            cr = round(c)
            if abs(c - cr) > 1e-6 or abs(abs(ratio) - 1) > 1e-6:
                raise NotCliffordError(f"phase {ratio} is not a power of omega")
            return PauliLabel(lab.a, lab.b, cr % d)
    raise NotCliffordError("conjugated operator is not proportional to a Pauli")


def conjugate_extract(u: np.ndarray, label: PauliLabel, d: int, direction: str = "inverse-first") -> PauliLabel:
    """Label of ``U^-1 P U`` (or ``U P U^-1`` with ``direction='forward'``)."""
    p = build_pauli(label, d)
    uinv = u.conj().T
    m = uinv @ p @ u if direction == "inverse-first" else u @ p @ uinv
    return match_pauli(m, d)


def symplectic_of_unitary(u: np.ndarray, d: int) -> Symplectic2:
    """Rows are the exponents of U^-1 X U and U^-1 Z U."""
    x = conjugate_extract(u, PauliLabel.single(1, 0), d)
    z = conjugate_extract(u, PauliLabel.single(0, 1), d)
    return Symplectic2(d, (x.a[0], x.b[0], z.a[0], z.b[0]))


def _decomposition_gens(d: int) -> list[tuple[str, Symplectic2]]:
    f = PrimeField(d)
    names = ["DFT", "P1"] + [f"M{g}" for g in range(2, d)]
    return [(n, builtin_gate(n, f).symplectic) for n in names]


def decompose(m: Symplectic2) -> list[str]:
    """Shortest word over DFT, P1 and the M gates whose product is ``m``."""
    d = m.d
    gens = _decomposition_gens(d)
    start = Symplectic2.identity(d)
    prev: dict[Symplectic2, tuple[Symplectic2, str] | None] = {start: None}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        if g == m:
            break
        for name, h in gens:
            k = g @ h
            if k not in prev:
                prev[k] = (g, name)
                queue.append(k)
    word = []
    node = m
    while prev[node] is not None:
        node, name = prev[node]
        word.append(name)
    return word[::-1]


def unitary_from_symplectic(m: Symplectic2) -> np.ndarray:
    """A unitary whose induced action (U^-1 P U) is ``m``."""
    u = np.eye(m.d, dtype=complex)
    for name in decompose(m):
        u = u @ build_gate(name, m.d)
    return u


def resolve_unitary(name: str, m: Symplectic2) -> np.ndarray:
    """Unitary for a named gate, checked against its symplectic matrix.

    Uses the explicit construction when the name is known and agrees with
    ``m``; otherwise synthesizes one from ``m``.
    """
    try:
        u = build_gate(name, m.d)
    except ValueError:
        return unitary_from_symplectic(m)
    if u.shape == (m.d, m.d) and symplectic_of_unitary(u, m.d) == m:
        return u
    return unitary_from_symplectic(m)


# -- nice error basis -----------------------------------------------------


@dataclass
class CheckReport:
    passed: bool
    checks: dict[str, bool]
    failures: list[str] = field(default_factory=list)


def nice_basis_checks(d: int, tol: float = TOL, samples: int = 200, seed: int = 0) -> CheckReport:
    """Exhaustive single-qudit error-basis properties plus an n=2 commutation sample."""
    f = PrimeField(d)
    basis = {(a, b): build_pauli(PauliLabel.single(a, b), d) for a in f for b in f}
    fails: list[str] = []
    checks = {}

    checks["identity"] = np.allclose(basis[(0, 0)], np.eye(d), atol=tol)
    if not checks["identity"]:
        fails.append("X(0)Z(0) is not the identity")

    ok = True
    for (k1, e1), (k2, e2) in itertools.product(basis.items(), repeat=2):
        ip = np.trace(e1.conj().T @ e2)
        want = d if k1 == k2 else 0
        if abs(ip - want) > tol:
            ok = False
            fails.append(f"orthogonality {k1},{k2}: {ip}")
    checks["orthogonality"] = ok

    ok_closure = ok_product = True
    for (k1, e1), (k2, e2) in itertools.product(basis.items(), repeat=2):
        (a1, b1), (a2, b2) = k1, k2
        prod = e1 @ e2
        try:
            match_pauli(prod, d, tol)
        except NotCliffordError:
            ok_closure = False
            fails.append(f"closure {k1},{k2}")
        want = _w(d, b1 * a2) * basis[((a1 + a2) % d, (b1 + b2) % d)]
        if np.max(np.abs(prod - want)) > tol:
            ok_product = False
            fails.append(f"product rule {k1},{k2}")
    checks["closure"] = ok_closure
    checks["product_rule"] = ok_product

    ok = True
    for a, b in itertools.product(f, repeat=2):
        lhs = clock(d, b) @ shift(d, a)
        rhs = _w(d, a * b) * shift(d, a) @ clock(d, b)
        if np.max(np.abs(lhs - rhs)) > tol:
            ok = False
            fails.append(f"commutation Z({b})X({a})")
    checks["commutation"] = ok

    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(samples):
        a1, b1, a2, b2 = (tuple(int(x) for x in rng.integers(0, d, 2)) for _ in range(4))
        c1, c2 = (int(x) for x in rng.integers(0, d, 2))
        e1 = build_pauli(PauliLabel(a1, b1, c1), d)
        e2 = build_pauli(PauliLabel(a2, b2, c2), d)
        sip = sum(x1 * y2 - x2 * y1 for x1, y1, x2, y2 in zip(a1, b1, a2, b2)) % d
        commute = np.max(np.abs(e1 @ e2 - e2 @ e1)) < tol
        if commute != (sip == 0):
            ok = False
            fails.append(f"commutation criterion a1={a1} b1={b1} a2={a2} b2={b2}")
        # E1 E2 = omega^(b1.a2 - b2.a1) E2 E1, i.e. omega^(-<h1,h2>)
        if np.max(np.abs(e1 @ e2 - _w(d, -sip) * e2 @ e1)) > tol:
            ok = False
            fails.append(f"commutation phase a1={a1} b1={b1} a2={a2} b2={b2}")
    checks["commutation_criterion_n2"] = ok
    return CheckReport(all(checks.values()), checks, fails)


# -- encoder verification ------------------------------------------------


def max_dim() -> int:
    val = os.environ.get(BUDGET_ENV)
    return int(val) if val else DEFAULT_MAX_DIM


def _apply_right(e: np.ndarray, g: np.ndarray, qudits: Sequence[int], n: int, d: int) -> np.ndarray:
    """Return ``E @ G`` where G acts on the given (1-based) qudits."""
    dim = e.shape[0]
    k = len(qudits)
    t = e.reshape((dim,) + (d,) * n)
    axes = [q for q in qudits]  # column axes, offset by the row axis
    g_t = g.reshape((d,) * (2 * k))
    # (E G)[r, c] = sum_j E[r, j] G[j, c] over the acted-on column indices
    out = np.tensordot(t, g_t, axes=(axes, list(range(k))))
    # tensordot appends the new column axes at the end; move them back
    out = np.moveaxis(out, list(range(out.ndim - k, out.ndim)), axes)
    return out.reshape(dim, dim)


def gate_unitaries(circuit: Circuit) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    d = circuit.d
    defs = {g.name: g.symplectic for g in circuit.gate_defs}
    cache: dict[str, np.ndarray] = {}
    dft_inv = build_gate("DFT", d).conj().T
    add, swap = build_gate("ADD", d), build_gate("SWAP", d)
    out = []
    for g in circuit.gates:
        if g.kind == "single":
            if g.name not in cache:
                if g.name in defs:
                    cache[g.name] = resolve_unitary(g.name, defs[g.name])
                else:
                    cache[g.name] = build_gate(g.name, d)
            out.append((cache[g.name], g.qudits))
        elif g.kind == "add":
            out.append((add, g.qudits))
        elif g.kind == "swap":
            out.append((swap, g.qudits))
        else:
            out.append((dft_inv, g.qudits))
    return out


def circuit_unitary(circuit: Circuit, order: str = "product", budget: int | None = None) -> np.ndarray:
    """Dense unitary of a circuit.

    ``order="product"`` gives ``g1 @ g2 @ ... @ gN`` (the encoder product);
    ``order="reverse"`` gives ``gN @ ... @ g1``, i.e. the list read as the
    time order of gate application.
    """
    dim = circuit.d**circuit.n
    limit = max_dim() if budget is None else budget
    if dim > limit:
        raise BudgetExceeded(f"dimension {dim} exceeds dense budget {limit} (set {BUDGET_ENV} to override)")
    ops = gate_unitaries(circuit)
    if order == "reverse":
        ops = ops[::-1]
    elif order != "product":
        raise ValueError(f"unknown order {order!r}")
    e = np.eye(dim, dtype=complex)
    for g, qs in ops:
        e = _apply_right(e, g, qs, circuit.n, circuit.d)
    return e


@dataclass
class VerifyReport:
    passed: bool
    order: str
    phases: list[int | None]
    residuals: list[float]
    messages: list[str] = field(default_factory=list)
    reverse_order_passes: bool | None = None

    def to_text(self) -> str:
        lines = [
            f"status: {'pass' if self.passed else 'fail'}",
            f"order: {self.order}",
            "conjugation: U^-1 P U",
        ]
        for i, (c, r) in enumerate(zip(self.phases, self.residuals), 1):
            lines.append(f"generator {i}: phase_exponent={'-' if c is None else c} residual={r:.3e}")
        if self.reverse_order_passes is not None:
            lines.append(f"reverse_order_passes: {str(self.reverse_order_passes).lower()}")
        lines += [f"note: {m}" for m in self.messages]
        return "\n".join(lines) + "\n"


def _check_states(e: np.ndarray, check: CheckMatrix, tol: float) -> tuple[list[int | None], list[float], list[str]]:
    d, n = check.d, check.n
    states = _encoded_states(e, check)
    phases: list[int | None] = []
    resid: list[float] = []
    msgs: list[str] = []
    step = 2 * np.pi / d
    for i, row in enumerate(check.rows, 1):
        s = build_pauli(PauliLabel(row[:n], row[n:], 0), d)
        sv = s @ states
        lam = np.einsum("ij,ij->j", states.conj(), sv)
        r = float(np.max(np.linalg.norm(sv - states * lam, axis=0)))
        exps = np.angle(lam) / step
        cs = {int(round(x)) % d for x in exps}
        resid.append(r)
        if r > tol or np.max(np.abs(np.abs(lam) - 1)) > 1e-8:
            phases.append(None)
            msgs.append(f"generator {i}: encoded states are not eigenvectors (residual {r:.2e})")
        elif len(cs) != 1:
            phases.append(None)
            msgs.append(f"generator {i}: eigen-phase depends on the logical input {sorted(cs)}")
        else:
            phases.append(cs.pop())
    return phases, resid, msgs


def verify_encoder(
    circuit: Circuit, check: CheckMatrix, budget: int | None = None, tol: float = 1e-8
) -> VerifyReport:
    """Check that every stabilizer generator has a constant eigen-phase on encoded states."""
    if (circuit.d, circuit.n) != (check.d, check.n):
        raise ValueError("circuit and check matrix disagree on d or n")
    e = circuit_unitary(circuit, "product", budget)
    phases, resid, msgs = _check_states(e, check, tol)
    passed = all(c is not None for c in phases)
    report = VerifyReport(passed, "product", phases, resid, msgs)
    if not passed:
        er = circuit_unitary(circuit, "reverse", budget)
        rp, _, _ = _check_states(er, check, tol)
        report.reverse_order_passes = all(c is not None for c in rp)
        if report.reverse_order_passes:
            report.messages.append("the reversed gate order does encode this code")
    elif any(phases):
        report.messages.append("nonzero phase exponents: encoded states sit in a Pauli frame other than +1")
    return report


def _encoded_states(e: np.ndarray, check: CheckMatrix) -> np.ndarray:
    # logical inputs: pivot qudits 1..m in |0>, the rest arbitrary
    d, n, m = check.d, check.n, check.m
    cols = [int(np.ravel_multi_index((0,) * m + x, (d,) * n)) for x in itertools.product(range(d), repeat=n - m)]
    return e[:, cols]


def single_gate_mutants(circuit: Circuit):
    """Yield (label, circuit) for every one-gate deletion and single-qudit substitution."""
    gates = circuit.gates

    def rebuild(new):
        return Circuit(circuit.d, circuit.n, new, circuit.code, circuit.gateset, circuit.gate_defs)

    for i, g in enumerate(gates):
        yield f"delete {g.label} at {i}", rebuild(gates[:i] + gates[i + 1 :])
        if g.kind != "single":
            continue
        for other in circuit.gate_defs:
            if other.name != g.name:
                swapped = Gate("single", g.qudits, other.name, g.row, g.stage)
                yield f"replace {g.label} at {i} by {other.name}", rebuild(gates[:i] + (swapped,) + gates[i + 1 :])


@dataclass
class MutationReport:
    total: int
    killed: int
    equivalent: list[str]
    escaped: list[str]

    @property
    def passed(self) -> bool:
        return not self.escaped


def mutation_scan(circuit: Circuit, check: CheckMatrix, budget: int | None = None) -> MutationReport:
    """Run verify_encoder on every single-gate mutant of ``circuit``.

    A surviving mutant whose encoded states equal the original's (up to one
    global phase) implements the same encoding map, so nothing can tell
    them apart; it is listed as equivalent.  Any other survivor is an escape.
    """
    ref = _encoded_states(circuit_unitary(circuit, "product", budget), check)
    total = killed = 0
    equivalent, escaped = [], []
    for label, mutant in single_gate_mutants(circuit):
        total += 1
        e = circuit_unitary(mutant, "product", budget)
        phases, _, _ = _check_states(e, check, 1e-8)
        if not all(c is not None for c in phases):
            killed += 1
        elif equal_up_to_phase(_encoded_states(e, check), ref, 1e-8):
            equivalent.append(label)
        else:
            escaped.append(label)
    return MutationReport(total, killed, equivalent, escaped)
