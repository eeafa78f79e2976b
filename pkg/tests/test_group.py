import random
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from conftest import closure
from orbitfold.errors import BadDegree, KTooLarge, Malformed, NotPrime, NotTransitive
from orbitfold.group import (
    PermutationGroup,
    alternating_group,
    colex_rank,
    cyclic_group,
    format_group,
    induced_action,
    is_k_homogeneous,
    is_primitive,
    is_transitive,
    minimal_block,
    orbitals,
    orbitals_on,
    parse_group_text,
    point_orbits,
    pointwise_stabilizer,
    projective_linear_group,
    rank,
    restrict,
    subset_domain,
    subset_orbits,
    suborbits,
    symmetric_group,
)
from orbitfold.perm import Permutation


def random_gens(rng, n, count=2):
    out = []
    for _ in range(count):
        x = list(range(n))
        rng.shuffle(x)
        out.append(x)
    return out


@given(st.integers(0, 10**6), st.integers(3, 7), st.integers(1, 3))
def test_order_matches_closure(seed, n, count):
    gens = random_gens(random.Random(seed), n, count)
    G = PermutationGroup(gens, n)
    elems = closure(gens, n)
    assert G.order() == len(elems)
    assert set(G.elements()) == {Permutation(e) for e in elems}


@given(st.integers(0, 10**6), st.integers(3, 7))
def test_membership_matches_closure(seed, n):
    rng = random.Random(seed)
    gens = random_gens(rng, n, 1)
    G = PermutationGroup(gens, n)
    elems = closure(gens, n)
    for x in random_gens(rng, n, 10):
        assert (Permutation(x) in G) == (tuple(x) in elems)


def test_base_prefix_does_not_change_order():
    G = symmetric_group(6)
    assert G.chain([3, 5]).order == 720
    assert G.chain([3, 5]).base[:2] == [3, 5]


@pytest.mark.parametrize("n", range(3, 11))
def test_family_orders(n):
    assert symmetric_group(n).order() == factorial(n)
    assert alternating_group(n).order() == factorial(n) // 2
    assert all(g.parity() == 0 for g in alternating_group(n).generators)
    assert cyclic_group(n).order() == n


@pytest.mark.parametrize("p, order", [(2, 6), (3, 12), (5, 60), (7, 168), (11, 660), (13, 1092), (23, 6072)])
def test_psl_orders(p, order):
    assert projective_linear_group(p).order() == order
    assert projective_linear_group(p, extended=True).order() == p * (p * p - 1)


def test_family_errors():
    with pytest.raises(NotPrime):
        projective_linear_group(9)
    with pytest.raises(BadDegree):
        symmetric_group(1)


def test_orbits_and_transitivity():
    G = PermutationGroup([Permutation.from_cycles([[0, 1, 2], [3, 4]], 6)], 6)
    assert point_orbits(G).blocks == ((0, 1, 2), (3, 4), (5,))
    assert not is_transitive(G)
    assert is_transitive(cyclic_group(5))


def test_colex_rank_is_mask_order():
    dom = subset_domain(6, 3)
    for i in range(len(dom)):
        assert colex_rank(dom.members(i)) == i
    assert len(dom) == comb(6, 3)


@given(st.integers(0, 10**6), st.integers(4, 6), st.integers(1, 3))
def test_subset_orbits_match_brute_force(seed, n, k):
    gens = random_gens(random.Random(seed), n, 2)
    G = PermutationGroup(gens, n)
    dom = subset_domain(n, k)
    elems = closure(gens, n)
    for blk in subset_orbits(G, k).blocks:
        S = dom.subsets[blk[0]]
        images = {sum(1 << g[a] for a in range(n) if S >> a & 1) for g in elems}
        assert sorted(images) == sorted(dom.subsets[i] for i in blk)


def test_homogeneity():
    assert is_k_homogeneous(alternating_group(6), 3)
    assert is_k_homogeneous(projective_linear_group(5, True), 3)
    assert not is_k_homogeneous(cyclic_group(6), 2)
    with pytest.raises(KTooLarge):
        is_k_homogeneous(cyclic_group(4), 5)


def test_induced_action_is_homomorphic_image():
    G = alternating_group(5)
    H = induced_action(G, 2)
    assert H.degree == 10 and H.order() == 60


def test_restrict_to_orbit():
    G = PermutationGroup([Permutation.from_cycles([[0, 1, 2], [3, 4]], 5)], 5)
    R = restrict(G, [3, 4])
    assert R.order() == 2
    with pytest.raises(ValueError):
        restrict(G, [2, 3])


def test_pointwise_stabilizer_matches_closure():
    G = symmetric_group(6)
    H = pointwise_stabilizer(G, [0, 4])
    assert H.order() == 24
    assert all(g(0) == 0 and g(4) == 4 for g in H.generators)


def test_primitivity_and_rank():
    assert is_primitive(symmetric_group(7))
    assert is_primitive(projective_linear_group(11))
    assert not is_primitive(cyclic_group(6))
    assert is_primitive(cyclic_group(7))
    assert rank(symmetric_group(6)) == 2
    assert len(suborbits(projective_linear_group(11), 0)) == 2
    with pytest.raises(NotTransitive):
        suborbits(PermutationGroup([[1, 0, 2]], 3), 0)


def test_minimal_block_of_dihedral():
    # D8 on a square: opposite corners form blocks
    G = PermutationGroup([[1, 2, 3, 0], [0, 3, 2, 1]], 4)
    assert minimal_block(G, 0, 2).blocks == ((0, 2), (1, 3))
    assert len(minimal_block(G, 0, 1).blocks) == 1


def test_orbitals_of_2_transitive_group():
    dec = orbitals(symmetric_group(5))
    assert dec.rank == 2
    assert [o.size for o in dec.orbitals] == [5, 20]
    assert all(o.self_paired for o in dec.orbitals)


def test_orbitals_of_cycle_pair_up():
    dec = orbitals(cyclic_group(5))
    assert dec.rank == 5
    non_self = [o for o in dec.orbitals if not o.self_paired]
    assert len(non_self) == 4
    for o in non_self:
        assert dec.orbitals[o.paired_with].paired_with == o.index


def test_orbitals_on_pairs_of_s6_form_johnson_scheme():
    dec = orbitals_on(symmetric_group(6), k=2)
    assert dec.rank == 3
    assert sorted(o.size // 15 for o in dec.orbitals) == [1, 6, 8]


def test_group_file_round_trip():
    G = projective_linear_group(7)
    H = parse_group_text(format_group(G, comment="PSL(2,7)"))
    assert H.order() == 168 and H.degree == 8


@pytest.mark.parametrize("text", ["gen (1,2)\n", "degree x\n", "degree 3\nfoo (1,2)\n", ""])
def test_group_file_errors(text):
    with pytest.raises(Malformed):
        parse_group_text(text)
