"""Exact integer number theory shared by the catalog, sieve and elimination code.

All quantities are Python ints; nothing here ever rounds.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from sympy import factorint, isprime, multiplicity, perfect_power
from sympy.ntheory import pollard_rho
from sympy.ntheory.primetest import is_square

from errors.errors import ErrBadRequest

TRIAL_DIVISION_LIMIT = 10**6
RHO_ATTEMPTS = 32


@dataclass(frozen=True)
class Factorization:
    prime_powers: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        result = 1
        for prime, exponent in self.prime_powers:
            result *= prime**exponent
        return result

    @property
    def divisor_count(self) -> int:
        return math.prod(exponent + 1 for _, exponent in self.prime_powers)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def _split_composite(n: int, seed: int) -> Counter[int]:
    if isprime(n):
        return Counter({n: 1})
    power = perfect_power(n)
    if power:
        base, exponent = power
        inner = _split_composite(int(base), seed)
        return Counter({prime: e * int(exponent) for prime, e in inner.items()})
    for attempt in range(RHO_ATTEMPTS):
        factor = pollard_rho(n, seed=seed + attempt)
        if factor and 1 < factor < n:
            return _split_composite(int(factor), seed) + _split_composite(
                n // int(factor), seed
            )
    # rho exhausted its seeds; sympy's full pipeline still finishes the job
    return Counter({int(p): int(e) for p, e in factorint(n).items()})


def _canonical(counts: Counter[int]) -> Factorization:
    return Factorization(
        tuple(sorted((p, e) for p, e in counts.items() if e > 0))
    )


def factorize(n: int, seed: int = 0) -> Factorization:
    """Trial division up to 10^6, then seeded Pollard rho on what is left."""
    if n < 1:
        raise ErrBadRequest(f"cannot factorize {n}")
    counts: Counter[int] = Counter()
    partial = factorint(n, limit=TRIAL_DIVISION_LIMIT, use_rho=False, use_pm1=False)
    for factor, exponent in partial.items():
        factor, exponent = int(factor), int(exponent)
        if factor == 1:
            continue
        for prime, e in _split_composite(factor, seed).items():
            counts[prime] += e * exponent
    return _canonical(counts)


def factorize_product(factors: Iterable[int], seed: int = 0) -> Factorization:
    """Factorization of a product, factoring each (small) factor on its own."""
    counts: Counter[int] = Counter()
    for factor in factors:
        if factor < 1:
            raise ErrBadRequest(f"non-positive factor {factor}")
        counts.update(dict(factorize(factor, seed).prime_powers))
    return _canonical(counts)


def divisors(n: int | Factorization) -> list[int]:
    fac = n if isinstance(n, Factorization) else factorize(n)
    ranges = [
        [prime**e for e in range(exponent + 1)] for prime, exponent in fac.prime_powers
    ]
    return sorted(math.prod(combo) for combo in product(*ranges))


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    return bool(is_square(n))


def p_valuation(p: int, n: int) -> int:
    if n < 1:
        raise ErrBadRequest(f"valuation of non-positive {n}")
    return int(multiplicity(p, n))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, a) with q = p^a, or raise for anything else."""
    if q < 2:
        raise ErrBadRequest(f"{q} is not a prime power")
    fac = factorint(q)
    if len(fac) != 1:
        raise ErrBadRequest(f"{q} is not a prime power")
    (p, a), = fac.items()
    return int(p), int(a)


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ErrBadRequest:
        return False
    return True


def prime_powers_up_to(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if is_prime_power(q)]
