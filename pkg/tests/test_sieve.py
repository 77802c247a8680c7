import pytest

from errors.errors import ErrResourceGuard
from schemas.design import DesignParams
from services.catalog import builtin_catalog, family_context
from services.sieve import (
    basic_check,
    index_divisibility_filter,
    k_candidates,
    lambda_from,
    parabolic_power_filter,
    sieve_catalog,
    sieve_family,
    subdegree_filter,
    tits_filter,
)
from utils.arith import is_perfect_square


def _naive(v: int, bound: int) -> list[tuple[int, int, int]]:
    found = []
    for k in range(3, v - 1):
        if bound % k or (k * (k - 1)) % (v - 1):
            continue
        params = DesignParams(v=v, k=k, lam=k * (k - 1) // (v - 1))
        if basic_check(params):
            found.append(params.as_tuple())
    return found


def test_lambda_from():
    assert lambda_from(45, 12) == 3
    assert lambda_from(45, 13) is None
    assert lambda_from(36, 35) is None


def test_basic_check():
    assert basic_check(DesignParams(v=63, k=32, lam=16))
    assert basic_check(DesignParams(v=7, k=3, lam=1))
    assert not basic_check(DesignParams(v=7, k=4, lam=3))


@pytest.mark.parametrize(
    "v,bound",
    [(36, 336), (36, 1440), (40, 1296), (45, 1152), (63, 192), (1408, 19440), (7, 21), (31, 600)],
)
def test_k_candidates_matches_naive_loop(v, bound):
    assert [p.as_tuple() for p in k_candidates(v, bound)] == _naive(v, bound)


def test_k_candidates_divisor_guard():
    with pytest.raises(ErrResourceGuard):
        k_candidates(10**6, 2**20 * 3**20, divisor_limit=10)


def test_catalog_rediscovery():
    found = {}
    for entry in builtin_catalog():
        for report in sieve_catalog(entry):
            found[report.label] = [p.as_tuple() for p in report.survivors]
    assert found == {
        "PSU_3(3)/3^{1+2}:8": [],
        "PSU_3(3)/PSL_2(7)": [(36, 21, 12)],
        "PSU_3(3)/4.S_4": [(63, 32, 16)],
        "PSU_3(3)/4^2:S_3": [(63, 32, 16)],
        "PSU_4(2)/S_6": [(36, 15, 6)],
        "PSU_4(2)/3_+^{1+2}:2A_4": [(40, 27, 18)],
        "PSU_4(2)/3^3:S_4": [(40, 27, 18)],
        "PSU_4(2)/2.(A_4xA_4).2": [(45, 12, 3)],
    }


def test_filters():
    cands = [DesignParams(v=45, k=12, lam=3)]
    assert subdegree_filter(cands, 4) == cands
    assert subdegree_filter(cands, 5) == []
    assert parabolic_power_filter(cands, 2, 45) == cands
    assert parabolic_power_filter(cands, 3, 45) == []
    assert parabolic_power_filter(cands, 3, 37) == []


def test_index_divisibility_filter():
    indices = [9, 8]
    assert index_divisibility_filter([DesignParams(v=45, k=12, lam=3)], [4]) != []
    assert index_divisibility_filter([DesignParams(v=45, k=12, lam=3)], [5]) == []
    assert index_divisibility_filter([DesignParams(v=28, k=27, lam=26)], indices) != []
    assert index_divisibility_filter([DesignParams(v=36, k=21, lam=12)], [1]) != []


def test_tits_filter():
    cands = [DesignParams(v=40, k=27, lam=18)]
    assert tits_filter(cands, 3, 40, is_parabolic=False, p_odd=True) == []
    assert tits_filter(cands, 3, 40, is_parabolic=True, p_odd=True) == cands
    assert tits_filter(cands, 2, 40, is_parabolic=False, p_odd=False) == cands
    assert tits_filter(cands, 5, 40, is_parabolic=False, p_odd=True) == cands


def test_sieve_family_on_imprimitive_line():
    report = sieve_family(family_context(5, 2))
    assert report.v == 1408
    assert report.k_bound == 19440
    assert report.survivors == []


RANGE_BOUND = 2**8 * 3**5 * 5**2 * 7 * 11 * 13


def test_k_candidates_matches_naive_loop_over_a_range():
    for v in range(7, 400):
        assert [p.as_tuple() for p in k_candidates(v, RANGE_BOUND)] == _naive(v, RANGE_BOUND), v


def test_survivors_are_closed_under_complement():
    survivors = [p for v in range(7, 400) for p in k_candidates(v, RANGE_BOUND)]
    for entry in builtin_catalog():
        survivors += [p for report in sieve_catalog(entry) for p in report.survivors]
    assert survivors
    for p in survivors:
        v, k, lam = p.as_tuple()
        k2, lam2 = v - k, v - 2 * k + lam
        assert k2 * (k2 - 1) == lam2 * (v - 1)
        assert is_perfect_square(4 * lam2 * (v - 1) + 1)
