from __future__ import annotations

from typing import Iterable

from loguru import logger

from configs.Environment import get_environment_variables
from errors.errors import ErrResourceGuard
from schemas.catalog import CatalogEntry, FamilyContext
from schemas.design import DesignParams
from schemas.elimination import SieveReport
from utils.arith import (
    Factorization,
    divisors,
    factorize,
    factorize_product,
    is_perfect_square,
    p_valuation,
)

# outer automorphism group order of PSU_3(3) and PSU_4(2)
SMALL_GROUP_OUT_ORDER = 2


def lambda_from(v: int, k: int) -> int | None:
    """k(k-1)/(v-1), or None when the quotient is not an integer."""
    if v < 3 or not 2 < k < v - 1:
        return None
    lam, remainder = divmod(k * (k - 1), v - 1)
    if remainder or lam < 1:
        return None
    return lam


def basic_check(p: DesignParams) -> bool:
    v, k, lam = p.as_tuple()
    return (
        k * (k - 1) == lam * (v - 1)
        and is_perfect_square(4 * lam * (v - 1) + 1)
        and lam * v < k * k
    )


def k_candidates(
    v: int,
    k_bound: int | Factorization,
    *,
    divisor_limit: int | None = None,
) -> list[DesignParams]:
    fac = k_bound if isinstance(k_bound, Factorization) else factorize(k_bound)
    limit = divisor_limit or get_environment_variables().DIVISOR_LIMIT
    if fac.divisor_count > limit:
        raise ErrResourceGuard(
            f"k-bound {fac.value} has {fac.divisor_count} divisors, limit {limit}"
        )
    survivors = []
    for k in divisors(fac):
        if k * k <= v:
            continue
        if k >= v - 1:
            break
        lam = lambda_from(v, k)
        if lam is None:
            continue
        params = DesignParams(v=v, k=k, lam=lam)
        if basic_check(params):
            survivors.append(params)
    return survivors


def subdegree_filter(cands: Iterable[DesignParams], d: int) -> list[DesignParams]:
    return [c for c in cands if (c.lam * d) % c.k == 0]


def parabolic_power_filter(cands: Iterable[DesignParams], p: int, v: int) -> list[DesignParams]:
    power = p ** p_valuation(p, v - 1)
    return [c for c in cands if (c.lam * power) % c.k == 0]


def tits_filter(
    cands: Iterable[DesignParams],
    p: int,
    v: int,
    is_parabolic: bool,
    p_odd: bool,
) -> list[DesignParams]:
    cands = list(cands)
    if is_parabolic or not p_odd:
        return cands
    if (v - 1) % p == 0:
        return []
    return cands


def index_divisibility_filter(
    cands: Iterable[DesignParams], indices: list[int]
) -> list[DesignParams]:
    return [c for c in cands if any(c.k % index == 0 for index in indices)]


def sieve_family(
    ctx: FamilyContext,
    *,
    seed: int = 0,
    divisor_limit: int | None = None,
) -> SieveReport:
    """Generic pipeline on one PSU_5(q) context, no lemma-specific shortcuts."""
    label = f"line {ctx.family_line} q={ctx.q}" + (f" r={ctx.r}" if ctx.r else "")
    fac = factorize_product(ctx.k_bound_factors, seed=seed)
    survivors = k_candidates(ctx.v, fac, divisor_limit=divisor_limit)
    checks = ["k_candidates"]
    for d in ctx.subdegree_divisors:
        survivors = subdegree_filter(survivors, d)
        checks.append(f"subdegree_filter({d})")
    if ctx.is_parabolic:
        survivors = parabolic_power_filter(survivors, ctx.p, ctx.v)
        checks.append("parabolic_power_filter")
    tits = tits_filter(survivors, ctx.p, ctx.v, ctx.is_parabolic, ctx.p % 2 == 1)
    checks.append("tits_filter (cross-check)")
    if len(tits) != len(survivors):
        logger.debug("{} - Service - Tits lemma alone would drop {}", label, survivors)
    logger.debug("{} - Service - {} survivors", label, len(survivors))
    return SieveReport(
        context=ctx,
        label=label,
        v=ctx.v,
        k_bound=fac.value,
        survivors=survivors,
        checks_applied=checks,
    )


def sieve_catalog(entry: CatalogEntry) -> list[SieveReport]:
    """Rediscover the parameters of a small catalog group from v and k | |Out|*|H|."""
    reports = []
    for stab in entry.stabilizer_descriptions:
        bound = SMALL_GROUP_OUT_ORDER * stab.order
        reports.append(
            SieveReport(
                context=entry,
                label=f"{entry.group_name}/{stab.name}",
                v=stab.expected_v,
                k_bound=bound,
                survivors=k_candidates(stab.expected_v, bound),
                checks_applied=["k_candidates"],
            )
        )
    return reports
