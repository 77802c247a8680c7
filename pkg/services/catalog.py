"""Orders of PSU_n(q), the maximal-subgroup families of PSU_5(q) and the small-group catalog.

Every family stores its index through D = gcd(5, q+1)*|H_0| = N/v, kept as a
list of small factors, where N = q^10 (q^5+1)(q^4-1)(q^3+1)(q^2-1).
"""
from __future__ import annotations

import math
from pathlib import Path

from loguru import logger
from sympy import primefactors

from errors.errors import ErrBadRequest, ErrInvalidFamily
from schemas.catalog import CatalogEntry, FamilyContext, StabilizerDescription
from utils.arith import gcd, prime_power

FAMILY_LINES = range(1, 12)

CONDITIONS: dict[int, str] = {
    1: "",
    2: "",
    3: "",
    4: "",
    5: "",
    6: "q >= 3",
    7: "q = q0^r, r odd prime",
    8: "q odd",
    9: "q = p = 4 mod 5, or q = p^2 with p = 2,3 mod 5",
    10: "q = p = 2,6,7,8,10 mod 11",
    11: "q = p = 5 mod 6",
}

STABILIZER_NAMES: dict[int, str] = {
    1: "P_1",
    2: "P_2",
    3: "GU_4(q)",
    4: "GU_3(q) x GU_2(q)",
    5: "GU_1(q) wr S_5",
    6: "GU_1(q^5)",
    7: "GU_5(q0)",
    8: "SO_5(q)",
    9: "5^{1+2}:Sp_2(5)",
    10: "PSL_2(11)",
    11: "PSU_4(2)",
}

SPORADIC_H0_ORDERS = {9: 15000, 10: 660, 11: 25920}


def psu_order(n: int, q: int) -> int:
    if n not in (3, 4, 5):
        raise ErrBadRequest(f"PSU_{n} is outside the supported dimensions 3, 4, 5")
    prime_power(q)
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - (-1) ** i
    return order // gcd(n, q + 1)


def order_numerator_factors(q: int) -> list[int]:
    return [q**10, q**5 + 1, q**4 - 1, q**3 + 1, q**2 - 1]


def order_numerator(q: int) -> int:
    """q^10 (q^5+1)(q^4-1)(q^3+1)(q^2-1) = gcd(5, q+1) |PSU_5(q)|."""
    return math.prod(order_numerator_factors(q))


def out_order(q: int) -> int:
    _, a = prime_power(q)
    return 2 * a * gcd(5, q + 1)


def subfield_exponents(q: int) -> list[tuple[int, int]]:
    """Pairs (r, q0) with r an odd prime and q = q0^r."""
    p, a = prime_power(q)
    return [(r, p ** (a // r)) for r in primefactors(a) if r % 2]


def index_divisor(line: int, q: int, q0: int | None = None) -> list[int]:
    g = gcd(5, q + 1)
    match line:
        case 1:
            return [q**10, q**3 + 1, q**2 - 1, q**2 - 1]
        case 2:
            return [q**10, q**4 - 1, q**2 - 1]
        case 3:
            return [q**6, q + 1, q**4 - 1, q**3 + 1, q**2 - 1]
        case 4:
            return [q**4, q + 1, q**3 + 1, q**2 - 1, q**2 - 1]
        case 5:
            return [120, q + 1, q + 1, q + 1, q + 1]
        case 6:
            return [5, q**4 - q**3 + q**2 - q + 1]
        case 7:
            if q0 is None:
                raise ErrBadRequest("line 7 needs the subfield order q0")
            b = gcd((q + 1) // (q0 + 1), 5)
            return order_numerator_factors(q0) + [b]
        case 8:
            return [q**4, q**4 - 1, q**2 - 1]
        case 9 | 10 | 11:
            return [g, SPORADIC_H0_ORDERS[line]]
    raise ErrBadRequest(f"family line {line} outside 1..11")


def line_condition_holds(line: int, q: int) -> bool:
    p, a = prime_power(q)
    match line:
        case 6:
            return q >= 3
        case 7:
            return bool(subfield_exponents(q))
        case 8:
            return p % 2 == 1
        case 9:
            return (a == 1 and p % 5 == 4) or (a == 2 and p % 5 in (2, 3))
        case 10:
            return a == 1 and p % 11 in (2, 6, 7, 8, 10)
        case 11:
            return a == 1 and p % 6 == 5
    return True


def subdegree_divisors(line: int, q: int) -> list[int]:
    if line == 3:
        return [(q + 1) * (q**4 - 1)]
    if line == 4:
        return [(q**2 - 1) * (q**3 + 1)]
    return []


def printed_k_bound(line: int, q: int) -> int | None:
    _, a = prime_power(q)
    if line == 6:
        return 2 * a * (q**4 - q**3 + q**2 - q + 1)
    if line in SPORADIC_H0_ORDERS:
        return 2 * a * SPORADIC_H0_ORDERS[line]
    return None


def family_context(line: int, q: int, r: int | None = None, q0: int | None = None) -> FamilyContext:
    p, a = prime_power(q)
    common = dict(
        family_line=line,
        q=q,
        p=p,
        a=a,
        socle_order=psu_order(5, q),
        out_order=out_order(q),
        is_parabolic=line in (1, 2),
        condition=CONDITIONS[line],
        r=r,
        q0=q0,
    )
    if not line_condition_holds(line, q):
        return FamilyContext(valid=False, **common)
    factors = index_divisor(line, q, q0)
    divisor = math.prod(factors)
    v, remainder = divmod(order_numerator(q), divisor)
    if remainder or v < 3:
        return FamilyContext(valid=False, note="index is not an integer", **common)
    g = gcd(5, q + 1)
    h0 = divisor // g if line != 7 and divisor % g == 0 else None
    return FamilyContext(
        valid=True,
        v=v,
        h0_order=h0,
        k_bound=2 * a * divisor,
        k_bound_factors=[2 * a] + [f for f in factors if f > 1],
        subdegree_divisors=subdegree_divisors(line, q),
        printed_k_bound=printed_k_bound(line, q),
        **common,
    )


def families(q: int, line: int | None = None) -> list[FamilyContext]:
    lines = [line] if line is not None else list(FAMILY_LINES)
    contexts = []
    for current in lines:
        if current == 7:
            pairs = subfield_exponents(q)
            if not pairs:
                contexts.append(family_context(7, q))
            for r, q0 in pairs:
                contexts.append(family_context(7, q, r=r, q0=q0))
            continue
        contexts.append(family_context(current, q))
    logger.debug(
        "q={} - Service - {} of {} family contexts valid",
        q,
        sum(c.valid for c in contexts),
        len(contexts),
    )
    return contexts


def require_valid(line: int, q: int, r: int | None = None) -> FamilyContext:
    for ctx in families(q, line):
        if ctx.r == r or r is None:
            if not ctx.valid:
                raise ErrInvalidFamily(
                    f"family line {line} is not available at q={q} ({ctx.condition or ctx.note})"
                )
            return ctx
    raise ErrInvalidFamily(f"family line {line} has no context q={q}, r={r}")


def order_bound_holds(ctx: FamilyContext) -> bool:
    """Large-subgroup test |X| <= |Out(X)|^2 |H_0|^3."""
    if ctx.h0_order is None:
        return True
    return ctx.socle_order <= ctx.out_order**2 * ctx.h0_order**3


# (group, stabilizer, degree, order, file, stabilizer order)
BUILTIN_RECORDS: list[tuple[str, str, int, int, str, int]] = [
    ("PSU_3(3)", "3^{1+2}:8", 28, 6048, "psu3_3_iso28.txt", 216),
    ("PSU_3(3)", "PSL_2(7)", 36, 6048, "psu3_3_cosets36.txt", 168),
    ("PSU_3(3)", "4.S_4", 63, 6048, "psu3_3_noniso63.txt", 96),
    ("PSU_3(3)", "4^2:S_3", 63, 6048, "psu3_3_frames63.txt", 96),
    ("PSU_4(2)", "S_6", 36, 25920, "psu4_2_cosets36.txt", 720),
    ("PSU_4(2)", "3_+^{1+2}:2A_4", 40, 25920, "psu4_2_noniso40.txt", 648),
    ("PSU_4(2)", "3^3:S_4", 40, 25920, "psu4_2_frames40.txt", 648),
    ("PSU_4(2)", "2.(A_4xA_4).2", 45, 25920, "psu4_2_iso45.txt", 576),
]


def builtin_catalog() -> list[CatalogEntry]:
    entries = []
    for group, stab, degree, order, filename, stab_order in BUILTIN_RECORDS:
        entries.append(
            CatalogEntry(
                group_name=group,
                degree=degree,
                generator_file=Path(filename),
                expected_order=order,
                stabilizer_descriptions=[
                    StabilizerDescription(name=stab, order=stab_order, expected_v=order // stab_order)
                ],
            )
        )
    return entries
