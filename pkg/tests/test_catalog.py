import math

import pytest

from errors.errors import ErrBadRequest, ErrInvalidFamily
from services.catalog import (
    builtin_catalog,
    families,
    family_context,
    index_divisor,
    order_bound_holds,
    out_order,
    psu_order,
    require_valid,
    subfield_exponents,
)


def test_psu_orders():
    assert psu_order(3, 3) == 6048
    assert psu_order(4, 2) == 25920
    assert psu_order(5, 2) == 13685760
    with pytest.raises(ErrBadRequest):
        psu_order(6, 2)


def test_out_order():
    assert out_order(2) == 2
    assert out_order(4) == 20
    assert out_order(9) == 20


def test_subfield_exponents():
    assert subfield_exponents(8) == [(3, 2)]
    assert subfield_exponents(64) == [(3, 4)]
    assert subfield_exponents(16) == []


def test_family_conditions():
    assert not families(2, 6)[0].valid
    assert families(3, 6)[0].valid
    assert not family_context(8, 4).valid
    with pytest.raises(ErrInvalidFamily):
        require_valid(8, 4)
    with pytest.raises(ErrInvalidFamily):
        require_valid(6, 2)


def test_imprimitive_family_indices():
    assert family_context(5, 2).v == 1408
    assert family_context(5, 2).k_bound == 19440
    assert family_context(5, 3).v == 8404641
    assert family_context(5, 3).k_bound == 61440


@pytest.mark.parametrize("q", [2, 3])
def test_index_divisor_factors_the_k_bound(q):
    ctx = family_context(5, q)
    assert 2 * ctx.a * math.prod(index_divisor(5, q)) == ctx.k_bound
    with pytest.raises(ErrBadRequest):
        index_divisor(12, q)


def test_index_times_stabilizer_is_group_order():
    for q in (2, 3, 4, 5):
        for ctx in families(q):
            if ctx.valid and ctx.h0_order is not None:
                assert ctx.v * ctx.h0_order == ctx.socle_order


def test_large_subgroup_rows():
    ctx = family_context(10, 2)
    assert (ctx.v, ctx.printed_k_bound) == (20736, 1320)
    assert order_bound_holds(ctx)
    ctx = family_context(9, 4)
    assert (ctx.v, ctx.printed_k_bound) == (3562930176, 60000)
    ctx = family_context(9, 9)
    assert (ctx.v, ctx.printed_k_bound) == (1051720694280527616, 60000)
    assert not order_bound_holds(ctx)


def test_builtin_catalog_orders():
    entries = builtin_catalog()
    assert len(entries) == 8
    for entry in entries:
        stab = entry.stabilizer_descriptions[0]
        assert stab.order * entry.degree == entry.expected_order
