"""Encoder synthesis and Clifford gate-set search for prime-dimension qudit codes."""

from .field import PrimeField
from .symplectic import GateDef, Symplectic2, builtin_gate, compose, enumerate_sl2
from .gatesets import PRESETS, GateSet, preset
from .search import SearchConfig, SearchResult, find_optimal_set, find_shortest_paths
from .encoder import CheckMatrix, synthesize_encoder
from .circuit import Circuit, Gate, count_gates, depth

__all__ = [
    "PrimeField",
    "Symplectic2",
    "GateDef",
    "builtin_gate",
    "compose",
    "enumerate_sl2",
    "GateSet",
    "PRESETS",
    "preset",
    "SearchConfig",
    "SearchResult",
    "find_optimal_set",
    "find_shortest_paths",
    "CheckMatrix",
    "synthesize_encoder",
    "Circuit",
    "Gate",
    "count_gates",
    "depth",
]
