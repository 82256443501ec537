"""Arithmetic in the prime field F_d and small linear algebra over it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo an odd prime ``d``.

    Elements are plain ints kept in the canonical range ``0..d-1``.
    """

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or not is_prime(self.d):
            raise ValueError(f"d={self.d!r} is not prime")
        if self.d == 2:
            raise ValueError("d=2 is not supported (odd primes only)")

    def __iter__(self):
        return iter(range(self.d))

    def elements(self) -> range:
        return range(self.d)

    def nonzero(self) -> range:
        return range(1, self.d)

    def reduce(self, x: int) -> int:
        return x % self.d

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.d

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.d

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.d

    def neg(self, x: int) -> int:
        return (-x) % self.d

    def arith(self, x: int, y: int, op: str) -> int:
        if op == "add":
            return self.add(x, y)
        if op == "sub":
            return self.sub(x, y)
        if op == "mul":
            return self.mul(x, y)
        raise ValueError(f"unknown op {op!r}")

    def inverse(self, x: int) -> int:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        x %= self.d
        if x == 0:
            raise ZeroDivisionError("no inverse for 0")
        r0, r1 = self.d, x
        s0, s1 = 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return s0 % self.d

    inv = inverse

    @property
    def half(self) -> int:
        return self.inverse(2)

    # -- linear algebra -------------------------------------------------

    def rref(self, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
        m = [[v % self.d for v in r] for r in rows]
        if not m:
            return [], []
        ncols = len(m[0])
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            s = self.inverse(m[r][c])
            m[r] = [(v * s) % self.d for v in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [(a - f * b) % self.d for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == len(m):
                break
        return m[:r], pivots

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        return len(self.rref(rows)[0])
