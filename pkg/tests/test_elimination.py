import pytest

from errors.errors import ErrInvalidFamily
from schemas.elimination import FailureReason
from services.catalog import family_context
from services.elimination import (
    cell_keys,
    eliminate_gu4,
    eliminate_imprimitive,
    eliminate_large_subgroup,
    eliminate_parabolic_1,
    eliminate_parabolic_2,
    eliminate_so5,
    eliminate_sporadic,
    eliminate_su3_su2,
    eliminate_subfield,
    eliminate_torus,
    oracle_eliminate,
    run_cell,
    su3_su2_polynomials,
)
from services.sweep import EliminationService


def test_parabolic_1_forced_values():
    trace = eliminate_parabolic_1(2)
    assert trace.v == 2**7 + 2**5 + 2**2 + 1
    assert ("m", 3) in trace.forced_values
    assert trace.survivors == []


def test_parabolic_2_branch_with_integral_lambda():
    trace = eliminate_parabolic_2(2)
    assert trace.v == 297
    assert any("(297,112,42)" in note for note in trace.notes)
    assert ("k", 112) in trace.forced_values
    assert trace.failure_reason == FailureReason.DIVISIBILITY_FAILURE
    assert trace.survivors == []


@pytest.mark.parametrize("q,v", [(2, 176), (3, 4941), (5, None)])
def test_gu4_has_no_survivors(q, v):
    trace = eliminate_gu4(q)
    if v is not None:
        assert trace.v == v
    assert trace.survivors == []


def test_gu4_fractional_branch_at_q3():
    assert ("m", "55/4") in eliminate_gu4(3).forced_values


def test_gu4_integral_branch_at_q3_fails_the_k_bound():
    trace = eliminate_gu4(3)
    assert trace.k_bound == 104509440
    for value in [("m", 17), ("k", 4200), ("n2", 3)]:
        assert value in trace.forced_values
    assert not any(symbol == "n1" for symbol, _ in trace.forced_values)
    assert any("(4941, 4200, 3570)" in note and "remainder 840" in note for note in trace.notes)
    assert trace.failure_reason == FailureReason.DIVISIBILITY_FAILURE


@pytest.mark.parametrize("q0,r", [(2, 3), (2, 5), (3, 3)])
def test_subfield_inequality_eliminates(q0, r):
    trace = eliminate_subfield(q0, r)
    lhs, rhs = dict(trace.polynomial_values)["lhs"], dict(trace.polynomial_values)["rhs"]
    assert lhs >= rhs
    assert trace.survivors == []


@pytest.mark.parametrize("line,q", [(1, 2), (3, 3), (5, 2)])
def test_oracle_is_empty(line, q):
    assert oracle_eliminate(family_context(line, q)).survivors == []


def test_oracle_refuses_invalid_family():
    with pytest.raises(ErrInvalidFamily):
        oracle_eliminate(family_context(6, 2))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_su3_su2_identity(q):
    poly = su3_su2_polynomials(q)
    assert poly["h"] * poly["R"] - poly["g"] == poly["d"]
    assert eliminate_su3_su2(q).survivors == []
    assert 9 % dict(eliminate_su3_su2(q).forced_values)["gcd"] == 0


def test_su3_su2_gcd_not_dividing_nine_falls_back_to_divisors():
    trace = eliminate_su3_su2(2, common=5)
    assert ("gcd", 5) in trace.forced_values
    assert trace.failure_reason == FailureReason.NO_VALID_K
    assert trace.m_values_tested is None
    assert any("does not divide 9" in note for note in trace.notes)
    assert all(trace.k_bound % p.k == 0 for p in trace.survivors)
    assert eliminate_su3_su2(2).m_values_tested == (1, 26)


def test_imprimitive_rows_are_recomputed():
    small = eliminate_imprimitive(2)
    assert (small.v, small.k_bound) == (1408, 19440)
    assert small.printed_row == {"v": 1408, "k_divides": 8404641}
    assert any("transposed" in note for note in small.notes)
    assert eliminate_imprimitive(3).v == 8404641
    assert small.survivors == []
    assert eliminate_imprimitive(3).survivors == []


def test_invalid_families_raise():
    with pytest.raises(ErrInvalidFamily):
        eliminate_torus(2)
    with pytest.raises(ErrInvalidFamily):
        eliminate_so5(4)


def test_sporadic_rows():
    rows = {(t.family_line, t.q): (t.v, t.printed_row["k_divides"]) for t in eliminate_sporadic()}
    assert rows == {
        (10, 2): (20736, 1320),
        (9, 4): (3562930176, 60000),
        (9, 9): (1051720694280527616, 60000),
    }
    assert all(t.survivors == [] for t in eliminate_sporadic())


def test_large_subgroup_without_printed_row():
    trace = eliminate_large_subgroup(11, 5)
    assert trace.lemma_id == 9
    assert trace.survivors == []


def test_run_cell_invalid_family():
    cell = run_cell(6, 2)
    assert not cell.valid
    assert cell.agree
    assert not cell.has_survivor


def test_cell_keys_are_grouped_by_case():
    keys = cell_keys(8)
    assert keys[0] == (1, 2, None)
    assert (7, 8, 3) in keys
    lemmas = [min(line, 9) for line, _, _ in keys]
    assert lemmas == sorted(lemmas)


def test_cells_agree_with_oracle_up_to_8():
    for line, q, r in cell_keys(8):
        cell = run_cell(line, q, r)
        assert cell.error is None
        assert cell.agree
        assert not cell.has_survivor


def test_every_trace_records_degree_domination():
    for line, q, r in cell_keys(8):
        cell = run_cell(line, q, r)
        if cell.trace is not None:
            assert cell.trace.degree_domination is not None, (line, q, r)
    assert eliminate_gu4(3).degree_domination.lhs_degree == 2
    assert eliminate_imprimitive(2).degree_domination.dominated


def test_sweep_single_family():
    report = EliminationService(workers=1).run(3, family=5)
    assert [c.trace.v for c in report.cells] == [1408, 8404641]
    assert not report.any_survivor
    assert report.consistent
    assert report.sporadic == []


@pytest.mark.slow
def test_sweep_up_to_64_in_worker_processes():
    report = EliminationService(workers=4).run(64)
    assert not report.any_survivor
    assert report.consistent
    assert all(c.error is None for c in report.cells)
