"""Case analyses for the eleven PSU_5(q) families, each replayed numerically at a concrete q.

Every procedure computes its survivors honestly (exhaustive loops over the
free parameter, or over divisors of the k-bound) and records the values the
hand argument relies on, so that a trace can be re-checked by substitution.
"""
from __future__ import annotations

from fractions import Fraction

from loguru import logger

from errors.errors import ErrInvalidFamily, ErrResourceGuard, ErrVerification
from schemas.catalog import FamilyContext
from schemas.design import DesignParams
from schemas.elimination import (
    CellResult,
    DegreeDomination,
    EliminationTrace,
    FailureReason,
    SieveReport,
)
from services import catalog
from services.sieve import basic_check, index_divisibility_filter, k_candidates, lambda_from, sieve_family
from utils.arith import factorize_product, gcd, prime_powers_up_to

LINE_TO_LEMMA = {1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 6, 7: 7, 8: 8, 9: 9, 10: 9, 11: 9}

# imprimitive rows as printed: q -> (v, "k divides")
PRINTED_IMPRIMITIVE_ROWS = {2: (1408, 8404641), 3: (19440, 61440)}

# large-subgroup rows as printed: (line, q) -> (v, "k divides")
PRINTED_LARGE_SUBGROUP_ROWS = {
    (10, 2): (20736, 1320),
    (9, 4): (3562930176, 60000),
    (9, 9): (1051720694280527616, 60000),
}


def _require(condition: bool, identity: str, witness) -> None:
    if not condition:
        raise ErrVerification(f"identity {identity} fails", witness=witness)


def _params(v: int, k: int) -> DesignParams | None:
    lam = lambda_from(v, k)
    if lam is None:
        return None
    params = DesignParams(v=v, k=k, lam=lam)
    return params if basic_check(params) else None


def _survivor(v: int, k: int, k_bound: int) -> DesignParams | None:
    if k_bound % k:
        return None
    return _params(v, k)


def _reason(integral_found: bool) -> FailureReason:
    return FailureReason.DIVISIBILITY_FAILURE if integral_found else FailureReason.NON_INTEGRAL_LAMBDA


def eliminate_parabolic_1(q: int) -> EliminationTrace:
    ctx = catalog.require_valid(1, q)
    v, a, bound = ctx.v, ctx.a, ctx.k_bound
    _require(v == q**7 + q**5 + q**2 + 1, "v = q^7+q^5+q^2+1", v)
    forced = [m for m in range(1, q * q) if (m * m + m) % (q * q) == 0]
    survivors = []
    for m in forced:
        k = m * (q**5 + q**3 + 1) + 1
        if (found := _survivor(v, k, bound)) is not None:
            survivors.append(found)
    lhs, rhs = q**5 - q + 1, 2 * a * (q**3 + 1)
    notes = [f"q^2 | m^2+m with m < q^2 forces m in {forced}"]
    if lhs > rhs:
        notes.append(f"q^5-q+1 = {lhs} > 2a(q^3+1) = {rhs}")
    return EliminationTrace(
        lemma_id=1,
        family_line=1,
        q=q,
        v=v,
        k_bound=bound,
        m_values_tested=(1, q * q - 1),
        forced_values=[("m", m) for m in forced]
        + [("k", m * (q**5 + q**3 + 1) + 1) for m in forced],
        polynomial_values=[("q^5-q+1", lhs), ("2a(q^3+1)", rhs)],
        failure_reason=FailureReason.DIVISIBILITY_FAILURE if forced else FailureReason.NON_INTEGRAL_LAMBDA,
        degree_domination=DegreeDomination(lhs_degree=5, rhs_degree=3),
        notes=notes,
        survivors=survivors,
    )


def eliminate_parabolic_2(q: int) -> EliminationTrace:
    ctx = catalog.require_valid(2, q)
    v, bound = ctx.v, ctx.k_bound
    _require(v == q**8 + q**5 + q**3 + 1, "v = q^8+q^5+q^3+1", v)
    q3 = q**3
    integral = [m for m in range(1, q3) if (m * m * (q * q + 1) + m) % q3 == 0]
    forced: list[tuple[str, int | str]] = []
    notes = []
    survivors = []
    for m in integral:
        n = (m * (q * q + 1) + 1) // q3
        s, rem = divmod(n * q + 1, q * q + 1)
        forced += [("m", m), ("n", n), ("s", s if not rem else f"{n * q + 1}/{q * q + 1}")]
        k = m * (q**5 + q**2 + 1) + 1
        lam = lambda_from(v, k)
        forced.append(("k", k))
        if s == 1:
            notes.append(
                f"branch s=1 (n=q, m=q^2-1) gives integral lambda: ({v},{k},{lam}); "
                f"k = q^4(q^3-q+1) must divide {bound}"
            )
        if (found := _survivor(v, k, bound)) is not None:
            survivors.append(found)
    if integral:
        logger.warning(
            "q={} - Service - P_2 branch s=1 is not empty, eliminated by k-bound only", q
        )
    return EliminationTrace(
        lemma_id=2,
        family_line=2,
        q=q,
        v=v,
        k_bound=bound,
        m_values_tested=(1, q3 - 1),
        forced_values=forced,
        polynomial_values=[("q^3-q+1", q3 - q + 1)],
        failure_reason=_reason(bool(integral)),
        degree_domination=DegreeDomination(lhs_degree=3, rhs_degree=0),
        notes=notes,
        survivors=survivors,
    )


def eliminate_gu4(q: int) -> EliminationTrace:
    ctx = catalog.require_valid(3, q)
    v, bound = ctx.v, ctx.k_bound
    f = (q * q + 1) * (q - 1)
    indices = [q**3, q**3 + 1]
    integral_found = False
    survivors = []
    forced: list[tuple[str, int | str]] = []
    notes = []
    for m in range(1, f):
        k = 1 + m * (q**5 + q + 1)
        params = _params(v, k)
        if params is None:
            continue
        integral_found = True
        if k % q**3 == 0:
            # q^3 | k iff q^3 | m(q+1)+1
            forced.append(("n1", (m * (q + 1) + 1) // q**3))
        if not index_divisibility_filter([params], indices):
            continue
        if bound % k:
            if k % (q**3 + 1) == 0:
                # q^3+1 | k iff q^3+1 | m(q^2-q-1)-1
                forced.append(("n2", (m * (q * q - q - 1) - 1) // (q**3 + 1)))
            forced += [("m", m), ("k", k)]
            notes.append(f"m={m}: {params.as_tuple()} fails k | {bound} (remainder {bound % k})")
            continue
        survivors.append(params)
    for u in range(1, 4):
        n2, rem = divmod(u * (q * q - q - 1) + 1, 2 * (q + 1))
        if rem or not 0 < n2 < q:
            continue
        m = Fraction(n2 * (q**3 + 1) - 1, q + 1)
        forced += [("u", u), ("n2", n2), ("m", str(m))]
    notes.append("u(q^2-q-1) < 2q^2+2q-1 bounds u by 3; equal degrees, leading coefficients decide")
    if q == 2:
        small = [m for m in range(1, 5) if (m + 1) % 9 == 0]
        notes.append(f"q=2: 9 | m+1 with m < 5 holds for {small}")
    return EliminationTrace(
        lemma_id=3,
        family_line=3,
        q=q,
        v=v,
        k_bound=bound,
        m_values_tested=(1, f - 1),
        forced_values=forced,
        polynomial_values=[("f", f), ("q^5+q+1", q**5 + q + 1)],
        failure_reason=_reason(integral_found),
        degree_domination=DegreeDomination(lhs_degree=2, rhs_degree=2),
        notes=notes,
        survivors=survivors,
    )


def su3_su2_polynomials(q: int) -> dict[str, int]:
    return {
        "R": q**10 + q**8 - q**7 + q**4 + q**3 - q - 1,
        "d": q**9 - 6 * q**8 + 4 * q**7 + 3 * q**6 + q**5 - 3 * q**4 - 4 * q**3 - 2 * q**2 + 2 * q + 3,
        "h": q**2 + q - 3,
        "g": q**4 * (q**3 + 1) * (q**2 - 1) ** 2 * (q + 1),
    }


def eliminate_su3_su2(q: int, *, common: int | None = None) -> EliminationTrace:
    """`common` replaces gcd(R, (q-1)(q+1)^2) when given.

    The m loop writes mk = 9*lambda*f and is valid only while that gcd divides 9;
    otherwise every divisor k of the bound is tested instead.
    """
    ctx = catalog.require_valid(4, q)
    v, a, bound = ctx.v, ctx.a, ctx.k_bound
    poly = su3_su2_polynomials(q)
    R, d, h, g = poly["R"], poly["d"], poly["h"], poly["g"]
    _require(v - 1 == (q * q - q + 1) * R, "v-1 = (q^2-q+1)R", v)
    _require(h * R - g == d, "hR - g = d", (h, R, g, d))
    if common is None:
        common = gcd(R, (q - 1) * (q + 1) ** 2)
    notes = [f"gcd(R, (q-1)(q+1)^2) = {common}"]
    polynomial_values = [("R", R), ("d", d), ("h", h), ("g", g), ("d+9h", d + 9 * h)]
    domination = DegreeDomination(lhs_degree=10, rhs_degree=9)
    if 9 % common:
        notes.append("gcd does not divide 9; m loop skipped, divisors of the bound tested")
        logger.warning("q={} - Service - su3_su2 gcd {} does not divide 9", q, common)
        survivors, _ = _divisor_survivors(ctx, ctx.k_bound_factors)
        return EliminationTrace(
            lemma_id=4,
            family_line=4,
            q=q,
            v=v,
            k_bound=bound,
            forced_values=[("gcd", common)],
            polynomial_values=polynomial_values,
            failure_reason=FailureReason.NO_VALID_K,
            degree_domination=domination,
            notes=notes,
            survivors=survivors,
        )
    in_window = R < 18 * a * abs(d + 9 * h)
    notes.append(
        f"window R < 18a|d+9h|: {R} vs {18 * a * abs(d + 9 * h)} ({'inside' if in_window else 'outside'})"
    )
    top = 9 * (q * q - q + 1)
    integral_found = False
    survivors = []
    for m in range(1, top):
        numerator = m * R
        if numerator % 9:
            continue
        # m*g = h*(mR+9) - (9h + m*d)
        _require(m * g == h * (numerator + 9) - (9 * h + m * d), "mg = h(mR+9) - (9h+md)", m)
        k = 1 + numerator // 9
        params = _params(v, k)
        if params is None:
            continue
        integral_found = True
        if bound % k == 0:
            survivors.append(params)
    return EliminationTrace(
        lemma_id=4,
        family_line=4,
        q=q,
        v=v,
        k_bound=bound,
        m_values_tested=(1, top - 1),
        forced_values=[("gcd", common)],
        polynomial_values=polynomial_values,
        failure_reason=FailureReason.INEQUALITY_VIOLATION if not in_window else _reason(integral_found),
        degree_domination=domination,
        notes=notes,
        survivors=survivors,
    )


def _divisor_survivors(ctx: FamilyContext, bound_factors: list[int]) -> tuple[list[DesignParams], bool]:
    fac = factorize_product(bound_factors)
    survivors = k_candidates(ctx.v, fac)
    return survivors, bool(survivors)


def eliminate_imprimitive(q: int) -> EliminationTrace:
    ctx = catalog.require_valid(5, q)
    v, a, bound = ctx.v, ctx.a, ctx.k_bound
    lhs = catalog.order_numerator(q)
    rhs = 57600 * a * a * (q + 1) ** 12
    in_window = lhs < rhs
    notes = ["lambda >= 4 is not assumed; every divisor k of the bound is tested"]
    printed = None
    if q in PRINTED_IMPRIMITIVE_ROWS:
        printed_v, printed_bound = PRINTED_IMPRIMITIVE_ROWS[q]
        printed = {"v": printed_v, "k_divides": printed_bound}
        if (printed_v, printed_bound) != (v, bound):
            notes.append(
                f"printed row (v={printed_v}, k | {printed_bound}) differs from the formulas "
                f"(v={v}, k | {bound}); rows appear transposed"
            )
            logger.warning("q={} - Service - printed imprimitive row differs from recomputation", q)
    survivors, _ = _divisor_survivors(ctx, ctx.k_bound_factors)
    return EliminationTrace(
        lemma_id=5,
        family_line=5,
        q=q,
        v=v,
        k_bound=bound,
        polynomial_values=[("N", lhs), ("57600a^2(q+1)^12", rhs)],
        failure_reason=FailureReason.NO_VALID_K if in_window else FailureReason.INEQUALITY_VIOLATION,
        degree_domination=DegreeDomination(lhs_degree=24, rhs_degree=12),
        printed_row=printed,
        notes=notes,
        survivors=survivors,
    )


def eliminate_torus(q: int) -> EliminationTrace:
    if q < 3:
        raise ErrInvalidFamily(f"family line 6 needs q >= 3, got q={q}")
    ctx = catalog.require_valid(6, q)
    v, a, bound = ctx.v, ctx.a, ctx.k_bound
    phi = q**4 - q**3 + q**2 - q + 1
    lhs = 5 * v
    printed_rhs = 20 * a * a * phi * phi
    sound_rhs = 5 * bound * bound
    notes = [
        f"printed bound k | 2a*phi = {2 * a * phi}; index gives k | 10a*phi = {bound}",
        f"5v = {lhs} against 20a^2 phi^2 = {printed_rhs} and 5(10a phi)^2 = {sound_rhs}",
    ]
    survivors = []
    if lhs < sound_rhs:
        survivors, _ = _divisor_survivors(ctx, ctx.k_bound_factors)
    return EliminationTrace(
        lemma_id=6,
        family_line=6,
        q=q,
        v=v,
        k_bound=bound,
        polynomial_values=[("phi", phi), ("5v", lhs), ("20a^2phi^2", printed_rhs)],
        failure_reason=FailureReason.INEQUALITY_VIOLATION if lhs >= sound_rhs else FailureReason.NO_VALID_K,
        degree_domination=DegreeDomination(lhs_degree=24, rhs_degree=8),
        notes=notes,
        survivors=survivors,
    )


def eliminate_subfield(q0: int, r: int) -> EliminationTrace:
    q = q0**r
    ctx = catalog.require_valid(7, q, r)
    v, a, bound = ctx.v, ctx.a, ctx.k_bound
    b = gcd((q + 1) // (q0 + 1), 5)
    notes = []
    if r >= 5:
        lhs, rhs = q0 ** (23 * r - 1), 100 * q0**72
        domination = DegreeDomination(lhs_degree=23 * r - 1, rhs_degree=72)
        notes.append(f"q0^(23r-1) = q0^{23 * r - 1} against 100 q0^72")
    else:
        lhs, rhs = q0**47, 16 * a**4 * b**6
        domination = DegreeDomination(lhs_degree=47, rhs_degree=0)
        notes.append(f"r=3: q0^47 against 16a^4b^6 with b = gcd(q0^2-q0+1, 5) = {b}")
    eliminated = lhs >= rhs
    survivors = [] if eliminated else _divisor_survivors(ctx, ctx.k_bound_factors)[0]
    return EliminationTrace(
        lemma_id=7,
        family_line=7,
        q=q,
        q0=q0,
        r=r,
        v=v,
        k_bound=bound,
        forced_values=[("q0", q0), ("r", r), ("b", b)],
        polynomial_values=[("lhs", lhs), ("rhs", rhs)],
        failure_reason=FailureReason.INEQUALITY_VIOLATION if eliminated else FailureReason.NO_VALID_K,
        degree_domination=domination,
        notes=notes,
        survivors=survivors,
    )


def eliminate_so5(q: int) -> EliminationTrace:
    if q % 2 == 0:
        raise ErrInvalidFamily(f"family line 8 needs q odd, got q={q}")
    ctx = catalog.require_valid(8, q)
    v, a, bound = ctx.v, ctx.a, ctx.k_bound
    g = q**4 * (q**4 - 1) * (q**2 - 1)
    f = 3 * (q - 1) ** 2
    common = gcd(v - 1, 2 * g)
    notes = [f"gcd(v-1, 2g) = {common}" + ("" if f % common == 0 else f", does not divide f = {f}")]
    integral_found = False
    survivors = []
    top = a * f
    for m in range(1, top):
        numerator = m * (v - 1)
        if numerator % top:
            continue
        k = 1 + numerator // top
        params = _params(v, k)
        if params is None:
            continue
        integral_found = True
        if bound % k == 0:
            survivors.append(params)
    inequality = v < 2 * a * a * f * g
    notes.append(f"v < 2a^2 f g is {'satisfied' if inequality else 'violated'}")
    return EliminationTrace(
        lemma_id=8,
        family_line=8,
        q=q,
        v=v,
        k_bound=bound,
        m_values_tested=(1, top - 1),
        forced_values=[("gcd", common)],
        polynomial_values=[("f", f), ("g", g), ("2a^2fg", 2 * a * a * f * g)],
        failure_reason=FailureReason.INEQUALITY_VIOLATION if not inequality else _reason(integral_found),
        degree_domination=DegreeDomination(lhs_degree=14, rhs_degree=12),
        notes=notes,
        survivors=survivors,
    )


def eliminate_large_subgroup(line: int, q: int) -> EliminationTrace:
    ctx = catalog.require_valid(line, q)
    printed = PRINTED_LARGE_SUBGROUP_ROWS.get((line, q))
    holds = catalog.order_bound_holds(ctx)
    notes = [
        f"|X| <= |Out|^2 |H_0|^3 {'holds' if holds else 'fails'}",
        f"printed bound 2a|H_0| = {ctx.printed_k_bound}; full bound {ctx.k_bound}",
    ]
    if not holds and printed is None:
        return EliminationTrace(
            lemma_id=9,
            family_line=line,
            q=q,
            v=ctx.v,
            k_bound=ctx.k_bound,
            failure_reason=FailureReason.EMPTY_TABLE_ROW,
            degree_domination=DegreeDomination(lhs_degree=24, rhs_degree=0),
            notes=notes,
        )
    if printed is not None and printed[0] != ctx.v:
        notes.append(f"printed v = {printed[0]} differs from {ctx.v}")
    survivors, _ = _divisor_survivors(ctx, ctx.k_bound_factors)
    return EliminationTrace(
        lemma_id=9,
        family_line=line,
        q=q,
        v=ctx.v,
        k_bound=ctx.k_bound,
        polynomial_values=[("|X|", ctx.socle_order), ("|Out|^2|H_0|^3", ctx.out_order**2 * ctx.h0_order**3)],
        failure_reason=FailureReason.NO_VALID_K,
        degree_domination=DegreeDomination(lhs_degree=24, rhs_degree=0),
        printed_row={"v": printed[0], "k_divides": printed[1]} if printed else None,
        notes=notes,
        survivors=survivors,
    )


def eliminate_sporadic() -> list[EliminationTrace]:
    rows = sorted(PRINTED_LARGE_SUBGROUP_ROWS, key=lambda x: x[1])
    return [eliminate_large_subgroup(line, q) for line, q in rows]


def oracle_eliminate(
    ctx: FamilyContext, *, seed: int = 0, divisor_limit: int | None = None
) -> SieveReport:
    if not ctx.valid:
        raise ErrInvalidFamily(f"line {ctx.family_line} is not valid at q={ctx.q}")
    return sieve_family(ctx, seed=seed, divisor_limit=divisor_limit)


def lemma_trace(ctx: FamilyContext) -> EliminationTrace:
    line, q = ctx.family_line, ctx.q
    match line:
        case 1:
            return eliminate_parabolic_1(q)
        case 2:
            return eliminate_parabolic_2(q)
        case 3:
            return eliminate_gu4(q)
        case 4:
            return eliminate_su3_su2(q)
        case 5:
            return eliminate_imprimitive(q)
        case 6:
            return eliminate_torus(q)
        case 7:
            return eliminate_subfield(ctx.q0, ctx.r)
        case 8:
            return eliminate_so5(q)
    return eliminate_large_subgroup(line, q)


def run_cell(
    line: int,
    q: int,
    r: int | None = None,
    *,
    seed: int = 0,
    divisor_limit: int | None = None,
) -> CellResult:
    """One (line, q) cell: lemma procedure next to the generic oracle."""
    ctx = next(
        (c for c in catalog.families(q, line) if r is None or c.r == r),
        None,
    )
    if ctx is None or not ctx.valid:
        return CellResult(family_line=line, q=q, r=r, valid=False)
    try:
        trace = lemma_trace(ctx)
        oracle = oracle_eliminate(ctx, seed=seed, divisor_limit=divisor_limit)
    except ErrResourceGuard as e:
        logger.error("line {} q={} - Service - {}", line, q, e)
        return CellResult(family_line=line, q=q, r=ctx.r, valid=True, error=str(e))
    return CellResult(family_line=line, q=q, r=ctx.r, valid=True, trace=trace, oracle=oracle)


def cell_keys(qmax: int, line: int | None = None) -> list[tuple[int, int, int | None]]:
    keys = []
    for q in prime_powers_up_to(qmax):
        lines = [line] if line is not None else list(catalog.FAMILY_LINES)
        for current in lines:
            if current == 7:
                for r, _ in catalog.subfield_exponents(q) or [(None, None)]:
                    keys.append((current, q, r))
            else:
                keys.append((current, q, None))
    return sorted(keys, key=lambda key: (LINE_TO_LEMMA[key[0]], key[1], key[2] or 0, key[0]))
