"""Table-driven arithmetic in GF(p^2) for small p.

An element a + b*alpha is stored as the int a + b*p, where alpha is a root of
the fixed irreducible polynomial: x^2 + x + 1 over GF(2), x^2 + 1 over GF(3).
"""
from __future__ import annotations

from dataclasses import dataclass, field

# (c0, c1) with alpha^2 = c0 + c1*alpha
IRREDUCIBLE_REDUCTIONS: dict[int, tuple[int, int]] = {
    2: (1, 1),  # alpha^2 = alpha + 1
    3: (2, 0),  # alpha^2 = -1
}


@dataclass(frozen=True)
class QuadraticField:
    p: int
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)
    conj_table: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p

    @property
    def size(self) -> int:
        return self.p * self.p

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def subfield(self) -> list[int]:
        """Elements fixed by conjugation x -> x^p: exactly GF(p)."""
        return [x for x in self.elements if self.conj_table[x] == x]

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[x]

    def conj(self, x: int) -> int:
        return self.conj_table[x]

    def power(self, x: int, e: int) -> int:
        result = 1
        for _ in range(e):
            result = self.mul(result, x)
        return result

    def trace(self, x: int) -> int:
        return self.add(x, self.conj(x))

    def norm(self, x: int) -> int:
        return self.mul(x, self.conj(x))


def _multiply(p: int, x: int, y: int) -> int:
    c0, c1 = IRREDUCIBLE_REDUCTIONS[p]
    a, b = x % p, x // p
    c, d = y % p, y // p
    # (a + b t)(c + d t) = ac + (ad + bc) t + bd t^2
    bd = b * d
    low = (a * c + bd * c0) % p
    high = (a * d + b * c + bd * c1) % p
    return low + high * p


def build_field(p: int) -> QuadraticField:
    if p not in IRREDUCIBLE_REDUCTIONS:
        raise ValueError(f"GF({p}^2) is not supported")
    size = p * p
    add = tuple(
        tuple((x % p + y % p) % p + ((x // p + y // p) % p) * p for y in range(size))
        for x in range(size)
    )
    mul = tuple(tuple(_multiply(p, x, y) for y in range(size)) for x in range(size))
    neg = tuple((-(x % p)) % p + ((-(x // p)) % p) * p for x in range(size))
    inv = [0] * size
    for x in range(1, size):
        inv[x] = next(y for y in range(1, size) if mul[x][y] == 1)
    conj = []
    for x in range(size):
        result = 1
        for _ in range(p):
            result = mul[result][x]
        conj.append(result)
    return QuadraticField(p, add, mul, neg, tuple(inv), tuple(conj))
