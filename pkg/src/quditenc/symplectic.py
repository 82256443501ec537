"""2x2 symplectic matrices over F_d and phase-space row updates.

Conventions: phase-space vectors are row vectors ``(a, b)`` (X exponent,
Z exponent) acted on by right multiplication, ``v -> v @ M``.  A word of
gates is read left to right in the order the gates act on the vector, so
``compose([g1, g2])`` is the matrix product ``g1 @ g2``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import PrimeField

PhaseVector = tuple[int, int]
TARGET: PhaseVector = (1, 0)


@dataclass(frozen=True, order=True)
class Symplectic2:
    """A 2x2 matrix ``[[a, b], [c, e]]`` over F_d with determinant 1."""

    d: int
    entries: tuple[int, int, int, int]

    def __post_init__(self):
        ent = tuple(int(x) % self.d for x in self.entries)
        object.__setattr__(self, "entries", ent)
        if self.det() != 1:
            raise ValueError(f"matrix {self.rows()} has det {self.det()} != 1 mod {self.d}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], d: int) -> "Symplectic2":
        (a, b), (c, e) = rows
        return cls(d, (a, b, c, e))

    @classmethod
    def identity(cls, d: int) -> "Symplectic2":
        return cls(d, (1, 0, 0, 1))

    def rows(self) -> list[list[int]]:
        a, b, c, e = self.entries
        return [[a, b], [c, e]]

    def det(self) -> int:
        a, b, c, e = self.entries
        return (a * e - b * c) % self.d

    def is_symplectic(self) -> bool:
        """Check ``M^T S M == S`` with ``S = [[0, 1], [-1, 0]]``."""
        a, b, c, e = self.entries
        d = self.d
        # M^T S M = [[0, ae-bc], [-(ae-bc), 0]] computed explicitly
        mt = ((a, c), (b, e))
        s = ((0, 1), (d - 1, 0))
        m = ((a, b), (c, e))
        prod = _matmul(_matmul(mt, s, d), m, d)
        return prod == s

    def __matmul__(self, other: "Symplectic2") -> "Symplectic2":
        a, b, c, e = self.entries
        w, x, y, z = other.entries
        d = self.d
        return Symplectic2(d, (a * w + b * y, a * x + b * z, c * w + e * y, c * x + e * z))

    def inverse(self) -> "Symplectic2":
        a, b, c, e = self.entries
        return Symplectic2(self.d, (e, -b, -c, a))

    def act(self, v: PhaseVector) -> PhaseVector:
        return apply(v, self)

    def __str__(self):
        a, b, c, e = self.entries
        return f"[[{a},{b}],[{c},{e}]]"


def _matmul(x, y, d):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) % d for j in range(2)) for i in range(2)
    )


@dataclass(frozen=True)
class GateDef:
    name: str
    symplectic: Symplectic2


def enumerate_sl2(field: PrimeField) -> list[Symplectic2]:
    """All of SL(2, F_d) in lexicographic order of entries."""
    d = field.d
    out = []
    for a, b, c, e in itertools.product(range(d), repeat=4):
        if (a * e - b * c) % d == 1:
            out.append(Symplectic2(d, (a, b, c, e)))
    return out


def apply(v: PhaseVector, m: Symplectic2) -> PhaseVector:
    a, b = v
    w, x, y, z = m.entries
    return ((a * w + b * y) % m.d, (a * x + b * z) % m.d)


def compose(word: Sequence[Symplectic2], d: int | None = None) -> Symplectic2:
    """Product of a gate word in application order; the empty word is the identity."""
    if not word:
        if d is None:
            raise ValueError("empty word needs an explicit d")
        return Symplectic2.identity(d)
    out = word[0]
    for m in word[1:]:
        out = out @ m
    return out


# -- built-in gates -------------------------------------------------------

# Fixed generators: L, R for d=3 and P, Q, S for d=5.
_FIXED = {
    (3, "L"): (0, 1, 2, 0),
    (3, "R"): (0, 2, 1, 2),
    (5, "P"): (2, 3, 2, 1),
    (5, "Q"): (2, 0, 0, 3),
    (5, "S"): (4, 4, 0, 4),
}

_NAME_RE = re.compile(r"^(DFT|M|P)(\d+)?$")


def builtin_gate(name: str, field: PrimeField, gamma: int | None = None) -> GateDef:
    """Symplectic representation of a named gate.

    ``DFT``, ``M`` (needs ``gamma``) and ``P`` (with ``gamma``: the quadratic
    phase gate) exist for every odd prime.  ``L`` and ``R`` exist for d=3;
    ``P``, ``Q``, ``S`` without ``gamma`` are the d=5 generators.  Names with
    the parameter attached (``"M2"``, ``"P1"``) are accepted too.
    """
    d = field.d
    m = _NAME_RE.match(name)
    if m and m.group(2) is not None:
        if gamma is not None:
            raise ValueError(f"gamma given twice for {name!r}")
        base, gamma = m.group(1), int(m.group(2))
        if base == "DFT":
            raise ValueError(f"unknown gate {name!r}")
    else:
        base = name
    if base == "id":
        return GateDef("id", Symplectic2.identity(d))
    if base == "DFT":
        return GateDef("DFT", Symplectic2(d, (0, d - 1, 1, 0)))
    if base in ("M", "P") and gamma is not None:
        g = gamma % d
        if g == 0:
            raise ValueError(f"gamma must be nonzero for {base}")
        if base == "M":
            return GateDef(f"M{g}", Symplectic2(d, (field.inverse(g), 0, 0, g)))
        return GateDef(f"P{g}", Symplectic2(d, (1, g, 0, 1)))
    if (d, base) in _FIXED:
        return GateDef(base, Symplectic2(d, _FIXED[(d, base)]))
    raise ValueError(f"unknown gate {name!r} for d={d}")


# -- n-qudit row updates --------------------------------------------------


def apply_single(row: Sequence[int], qudit: int, m: Symplectic2) -> list[int]:
    """Replace the (a_q, b_q) pair of a length-2n row by (a_q, b_q) @ m (1-based qudit)."""
    n = len(row) // 2
    _check_index(qudit, n)
    out = list(row)
    a, b = apply((row[qudit - 1], row[n + qudit - 1]), m)
    out[qudit - 1], out[n + qudit - 1] = a, b
    return out


def apply_add(row: Sequence[int], control: int, target: int, d: int) -> list[int]:
    """Row update used by the encoder for ADD(control, target).

    a_target -= a_control and b_control += b_target.  This is the conjugation
    ADD^-1 P ADD, the same direction as the single-qudit matrices.
    """
    n = len(row) // 2
    _check_index(control, n)
    _check_index(target, n)
    if control == target:
        raise ValueError("ADD needs distinct qudits")
    out = list(row)
    out[target - 1] = (row[target - 1] - row[control - 1]) % d
    out[n + control - 1] = (row[n + control - 1] + row[n + target - 1]) % d
    return out


def apply_add_inverse(row: Sequence[int], control: int, target: int, d: int) -> list[int]:
    n = len(row) // 2
    out = list(row)
    out[target - 1] = (row[target - 1] + row[control - 1]) % d
    out[n + control - 1] = (row[n + control - 1] - row[n + target - 1]) % d
    return out


def apply_swap(row: Sequence[int], i: int, j: int) -> list[int]:
    n = len(row) // 2
    _check_index(i, n)
    _check_index(j, n)
    if i == j:
        raise ValueError("SWAP needs distinct qudits")
    out = list(row)
    out[i - 1], out[j - 1] = row[j - 1], row[i - 1]
    out[n + i - 1], out[n + j - 1] = row[n + j - 1], row[n + i - 1]
    return out


def row_update(row: Sequence[int], action: tuple, d: int) -> list[int]:
    """Dispatch on ``("single", q, M)``, ``("add", c, t)`` or ``("swap", i, j)``."""
    kind = action[0]
    if kind == "single":
        return apply_single(row, action[1], action[2])
    if kind == "add":
        return apply_add(row, action[1], action[2], d)
    if kind == "swap":
        return apply_swap(row, action[1], action[2])
    raise ValueError(f"unknown action {kind!r}")


def _check_index(q: int, n: int) -> None:
    if not 1 <= q <= n:
        raise IndexError(f"qudit index {q} out of range 1..{n}")


def nonzero_vectors(d: int) -> Iterable[PhaseVector]:
    return ((a, b) for a in range(d) for b in range(d) if (a, b) != (0, 0))
