import random

import pytest

from errors.errors import ErrResourceGuard, ErrVerification
from models.incidence import IncidenceStructure
from models.permutation import PermGroup, Permutation
from services import design as designs
from services import hermitian
from services.permgroup import stabilizer

FANO = IncidenceStructure.from_blocks(7, [{i % 7, (i + 1) % 7, (i + 3) % 7} for i in range(7)])
BIPLANE = IncidenceStructure.from_blocks(
    16,
    [
        {((x + a) % 4) * 4 + (y + b) % 4 for a, b in [(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]}
        for x in range(4)
        for y in range(4)
    ],
)


def test_verify_symmetric():
    assert designs.verify_symmetric(FANO).as_tuple() == (7, 3, 1)
    assert designs.verify_symmetric(BIPLANE).as_tuple() == (16, 6, 2)


def test_double_counting():
    for d in (FANO, BIPLANE, hermitian.pg3_design(3)):
        params = designs.verify_symmetric(d)
        assert sum(len(block) for block in d.blocks) == params.v * params.k
        pairs = sum(len(block) * (len(block) - 1) // 2 for block in d.blocks)
        assert pairs == params.lam * params.v * (params.v - 1) // 2


def test_missing_block_fails():
    broken = IncidenceStructure(7, FANO.blocks[:-1])
    with pytest.raises(ErrVerification):
        designs.verify_symmetric(broken)


def test_corrupted_block_names_witness():
    blocks = list(FANO.blocks)
    blocks[0] = (0, 1, 2)
    with pytest.raises(ErrVerification) as e:
        designs.verify_symmetric(IncidenceStructure(7, tuple(blocks)))
    assert e.value.witness is not None


def test_complement_and_dual():
    pg = hermitian.pg3_design(3)
    comp = designs.complement(pg)
    assert designs.verify_symmetric(comp).as_tuple() == (40, 27, 18)
    assert designs.canonical_blocks(designs.complement(comp)) == designs.canonical_blocks(pg)
    assert designs.verify_symmetric(designs.dual(pg)).as_tuple() == (40, 13, 4)


def test_from_base_block(fano_group):
    d = designs.from_base_block(fano_group, {0, 1, 3})
    assert designs.canonical_blocks(d) == designs.canonical_blocks(FANO)
    same = designs.from_base_block(fano_group, d.blocks[4])
    assert same.blocks == d.blocks
    with pytest.raises(ErrVerification):
        designs.from_base_block(fano_group, range(7))


def test_flag_transitivity(fano_group):
    assert designs.flag_transitive(FANO, fano_group)
    cyclic = PermGroup(7, fano_group.generators[:1], "C_7")
    assert not designs.flag_transitive(FANO, cyclic)
    assert not designs.flag_transitive(FANO, PermGroup.trivial(7))


def test_non_automorphism_is_reported():
    times_three = Permutation(tuple((3 * x) % 7 for x in range(7)))
    with pytest.raises(ErrVerification):
        designs.flag_transitive(FANO, PermGroup(7, (times_three,), "3x"))


def test_find_base_blocks_with_trivial_helper(fano_group):
    cyclic = PermGroup(7, fano_group.generators[:1], "C_7")
    found = designs.find_base_blocks(cyclic, PermGroup.trivial(7), 3)
    assert len(found) == 2
    for d in found:
        assert designs.verify_symmetric(d).as_tuple() == (7, 3, 1)
    assert designs.find_base_blocks(cyclic, PermGroup.trivial(7), 7) == []


def test_isomorphism_of_the_two_fano_developments(fano_group):
    cyclic = PermGroup(7, fano_group.generators[:1], "C_7")
    first, second = designs.find_base_blocks(cyclic, PermGroup.trivial(7), 3)
    same, witness = designs.isomorphic(first, second)
    assert same
    mapped = sorted(tuple(sorted(witness[x] for x in block)) for block in first.blocks)
    assert mapped == list(designs.canonical_blocks(second))
    assert designs.isomorphic(FANO, FANO) == (True, list(range(7)))
    assert designs.isomorphic(FANO, BIPLANE) == (False, None)
    assert designs.block_fingerprint(first) == designs.block_fingerprint(second)


def test_degree_45_design(psu42_actions):
    g = dict(psu42_actions)[45]
    found = designs.find_base_blocks(g, stabilizer(g, 0), 12)
    assert len(found) == 1
    assert designs.verify_symmetric(found[0]).as_tuple() == (45, 12, 3)
    assert designs.flag_transitive(found[0], g)


def test_acting_group(fano_group):
    cyclic = PermGroup(7, fano_group.generators[:1], "C_7")
    times_three = PermGroup(7, (Permutation(tuple((3 * x) % 7 for x in range(7))),), "3x")
    assert designs.acting_group(FANO, cyclic) is None
    assert designs.acting_group(FANO, cyclic, None, fano_group) is fano_group
    assert designs.acting_group(FANO, fano_group, cyclic) is fano_group
    assert designs.acting_group(FANO, times_three) is None
    assert designs.acting_group(FANO) is None


def _relabelled(d: IncidenceStructure, seed: int) -> IncidenceStructure:
    rng = random.Random(seed)
    perm = list(range(d.v))
    rng.shuffle(perm)
    blocks = [{perm[x] for x in block} for block in d.blocks]
    rng.shuffle(blocks)
    return IncidenceStructure.from_blocks(d.v, blocks)


@pytest.mark.parametrize("seed", [1, 2])
def test_isomorphism_of_relabelled_pg_complement(seed):
    comp = designs.complement(hermitian.pg3_design(3))
    other = _relabelled(comp, seed)
    same, witness = designs.isomorphic(comp, other, budget=10_000)
    assert same
    assert sorted(witness) == list(range(40))
    mapped = sorted(tuple(sorted(witness[x] for x in block)) for block in comp.blocks)
    assert mapped == list(designs.canonical_blocks(other))


def test_isomorphism_search_budget():
    comp = designs.complement(hermitian.pg3_design(3))
    with pytest.raises(ErrResourceGuard):
        designs.isomorphic(comp, _relabelled(comp, 3), budget=1)


def test_refinement_after_individualizing_a_point():
    graph = designs.incidence_graph(FANO)
    start = {node: 0 for node in graph}
    (colouring,) = designs.refine([graph], [start])
    assert set(colouring.values()) == {0}
    (colouring,) = designs.refine([graph], [{**start, ("p", 0): 1}])
    assert len(set(colouring.values())) == 4
    through = {colouring[("b", i)] for i, block in enumerate(FANO.blocks) if 0 in block}
    assert len(through) == 1
