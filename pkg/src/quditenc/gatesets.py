"""Named single-qudit generating sets and the preset registry.

The order of gates inside a set matters: shortest-path search tries gates
in list order, which fixes the word chosen among equal-length candidates.
Preset orders are chosen so the reference transformation tables for the
d=3 sets come out verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import PrimeField
from .symplectic import GateDef, Symplectic2, builtin_gate


@dataclass(frozen=True)
class GateSet:
    d: int
    label: str
    gates: tuple[GateDef, ...]

    def __post_init__(self):
        names = [g.name for g in self.gates]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate gate names in {names}")
        for g in self.gates:
            if g.symplectic.d != self.d:
                raise ValueError(f"gate {g.name} is over d={g.symplectic.d}, set is d={self.d}")
        if self.dft_name is None:
            raise ValueError("a gate set must contain the DFT matrix")

    @property
    def matrices(self) -> list[Symplectic2]:
        return [g.symplectic for g in self.gates]

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.gates]

    @property
    def dft_name(self) -> str | None:
        dft = Symplectic2(self.d, (0, self.d - 1, 1, 0))
        for g in self.gates:
            if g.symplectic == dft:
                return g.name
        return None

    def by_name(self, name: str) -> GateDef:
        for g in self.gates:
            if g.name == name:
                return g
        raise KeyError(name)

    def __len__(self):
        return len(self.gates)


def _named(d: int, **mats) -> list[GateDef]:
    return [GateDef(k, Symplectic2(d, v)) for k, v in mats.items()]


def _build_presets() -> dict[str, GateSet]:
    f3, f5 = PrimeField(3), PrimeField(5)
    b3 = lambda name: builtin_gate(name, f3)  # noqa: E731
    b5 = lambda name: builtin_gate(name, f5)  # noqa: E731
    out = {
        "d3-sec3-3": [b3("DFT"), b3("P1"), b3("P2")],
        "d3-sec3-4": [b3("DFT"), b3("M2"), b3("P1"), b3("P2")],
        "d3-proposed-3": [b3("DFT"), *_named(3, A1=(1, 2, 2, 2), A2=(2, 1, 0, 2))],
        "d3-proposed-4": [b3("L"), b3("DFT"), b3("M2"), b3("R")],
        "d5-sec3-3": [b5("DFT"), b5("P1"), b5("P2")],
        "d5-sec3-4": [b5("DFT"), b5("M2"), b5("P1"), b5("P2")],
        "d5-sec3-5": [b5("DFT"), b5("M2"), b5("M3"), b5("P1"), b5("P2")],
        "d5-proposed-3": [b5("DFT"), *_named(5, C1=(3, 0, 4, 2), C2=(1, 4, 3, 3))],
        "d5-proposed-4": [b5("DFT"), b5("P"), b5("Q"), b5("S")],
        "d5-proposed-5": [
            b5("DFT"),
            *_named(5, E1=(0, 3, 3, 1), E2=(2, 4, 2, 2), E3=(4, 0, 1, 4), E4=(0, 4, 1, 4)),
        ],
    }
    return {k: GateSet(v[0].symplectic.d, k, tuple(v)) for k, v in out.items()}


PRESETS: dict[str, GateSet] = _build_presets()


def preset(name: str) -> GateSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
