"""Compatibility, code vectors, distributivity, and join-irreducibles."""

from itertools import permutations, product

import pytest

from biplattice import (
    InvalidCode,
    JoinIrreducible,
    NotCompatible,
    NotMaximalChain,
    OrderedPartition,
    chain_permutation,
    code_of,
    code_to_bip,
    complement,
    compress,
    decompress,
    enumerate_all,
    from_ordered_bipartition,
    is_compatible,
    is_valid_code,
    join,
    join_irreducibles,
    leq,
    meet,
    rank,
    sigma_elements,
    sublattice,
    valid_codes,
)
from biplattice import bottom, top
from biplattice.codes import CODE_ALPHABET, is_valid_code_stepwise
from biplattice.morse import enumerate_chains_full
from helpers import naive_compatible, ob


def perm(*xs):
    return OrderedPartition.from_permutation(xs)


def test_compatibility_examples():
    # the one-block bipartitions are compatible with every ordered partition,
    # and every bipartition is compatible with its own block partition
    from biplattice import ordered_set_partitions

    for blocks in ordered_set_partitions(3):
        pi = OrderedPartition(blocks)
        assert is_compatible(bottom(3), pi)
        assert is_compatible(top(3), pi)
    for u in enumerate_all(3):
        assert is_compatible(u, u.block_partition())
    assert is_compatible(ob("1,2"), perm(1, 2))
    assert not is_compatible(ob("1|2"), perm(2, 1))
    u = ob("1,2|3,4")
    assert is_compatible(u, perm(1, 2, 3, 4))
    assert not is_compatible(u, perm(1, 4, 2, 3))


@pytest.mark.parametrize("n", [2, 3])
def test_compatibility_matches_definition(n):
    partitions = [OrderedPartition.from_permutation(p)
                  for p in permutations(range(1, n + 1))]
    for u in enumerate_all(n):
        for pi in partitions:
            assert is_compatible(u, pi) == naive_compatible(u, pi)


def test_code_examples():
    ident = (1, 2, 3, 4, 5, 6)
    assert code_of(ob("1,2!|3|4,5|6!"), ident) == (3, 1, -1, -1, -3, 1)
    for n in (1, 2, 3, 4):
        identity = tuple(range(1, n + 1))
        assert code_of(bottom(n), identity) == (-1,) + (-3,) * (n - 1)
        assert code_of(top(n), identity) == (3,) * (n - 1) + (1,)


def test_code_requires_compatibility():
    with pytest.raises(NotCompatible):
        code_of(ob("1|2"), (2, 1))


def test_code_validity_examples():
    assert is_valid_code((3, 1, -1, -1, -3, 1))
    assert not is_valid_code((-3, -1))
    assert not is_valid_code((3, -1, -1))
    assert not is_valid_code((1, 3))  # ends with 3
    assert not is_valid_code(())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_validity_two_routes_agree(n):
    for code in product(CODE_ALPHABET, repeat=n):
        assert is_valid_code(code) == is_valid_code_stepwise(code)


def test_code_to_bip_examples():
    ident = (1, 2, 3, 4, 5, 6)
    assert code_to_bip((3, 1, -1, -1, -3, 1), ident) == ob("1,2!|3|4,5|6!")
    assert code_to_bip((-1, -3, -3), (1, 2, 3)) == bottom(3)
    with pytest.raises(InvalidCode):
        code_to_bip((-3, -1), (1, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_code_round_trip_all_valid_codes(n):
    identity = tuple(range(1, n + 1))
    for code in valid_codes(n):
        u = code_to_bip(code, identity)
        assert code_of(u, identity) == code


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_code_bijection_with_compatible_elements(n):
    identity = tuple(range(1, n + 1))
    vcodes = list(valid_codes(n))
    assert len(vcodes) == 2 * 3 ** (n - 1)
    elems = sigma_elements(identity)
    assert len(set(elems)) == len(vcodes)
    if n <= 4:
        pi = OrderedPartition.from_permutation(identity)
        assert set(elems) == {u for u in enumerate_all(n) if is_compatible(u, pi)}


@pytest.mark.parametrize("sigma", [(1, 2, 3), (3, 1, 2), (2, 3, 1)])
def test_code_bijection_non_identity(sigma):
    pi = OrderedPartition.from_permutation(sigma)
    elems = sigma_elements(sigma)
    assert set(elems) == {u for u in enumerate_all(3) if is_compatible(u, pi)}
    for u in elems:
        assert code_to_bip(code_of(u, sigma), sigma) == u


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_order_isomorphism(n):
    identity = tuple(range(1, n + 1))
    vcodes = list(valid_codes(n))
    elems = [code_to_bip(c, identity) for c in vcodes]
    bits = [from_ordered_bipartition(u).bits for u in elems]
    for i in range(len(elems)):
        for j in range(len(elems)):
            contained = bits[i] & ~bits[j] == 0
            pointwise = all(a <= b for a, b in zip(vcodes[i], vcodes[j]))
            assert contained == pointwise


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_complement_duality(n):
    identity = tuple(range(1, n + 1))
    reverse = tuple(range(n, 0, -1))
    for u in sigma_elements(identity):
        expected = tuple(-c for c in reversed(code_of(u, identity)))
        assert code_of(complement(u), reverse) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sublattice_join_meet_are_max_min(n):
    identity = tuple(range(1, n + 1))
    vcodes = list(valid_codes(n))
    elems = [code_to_bip(c, identity) for c in vcodes]
    for i in range(len(elems)):
        for j in range(len(elems)):
            cj = tuple(map(max, vcodes[i], vcodes[j]))
            cm = tuple(map(min, vcodes[i], vcodes[j]))
            assert is_valid_code(cj) and is_valid_code(cm)
            assert join(elems[i], elems[j]) == code_to_bip(cj, identity)
            assert meet(elems[i], elems[j]) == code_to_bip(cm, identity)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_distributive_laws_on_codes(n):
    vcodes = list(valid_codes(n))
    for a in vcodes:
        for b in vcodes:
            for c in vcodes:
                join_bc = tuple(map(max, b, c))
                meet_ab = tuple(map(min, a, b))
                meet_ac = tuple(map(min, a, c))
                assert tuple(map(min, a, join_bc)) == tuple(map(max, meet_ab, meet_ac))


def test_join_irreducible_shapes():
    sigma = (1, 2, 3)
    assert JoinIrreducible("E", 2, sigma).bipartition() == ob("1|2,3")
    assert JoinIrreducible("F", 1, sigma).bipartition() == ob("1!|2,3")
    assert JoinIrreducible("F", 3, sigma).bipartition() == ob("1,2|3!")
    assert JoinIrreducible("G", 2, sigma).bipartition() == ob("1|2,3!")
    with pytest.raises(InvalidCode):
        JoinIrreducible("E", 1, sigma)
    with pytest.raises(InvalidCode):
        JoinIrreducible("G", 3, sigma)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_join_irreducible_count(n):
    assert len(join_irreducibles(tuple(range(1, n + 1)))) == 3 * n - 2


@pytest.mark.parametrize("n", [2, 3])
def test_join_irreducibles_match_brute_force_all_sigmas(n):
    for p in permutations(range(1, n + 1)):
        sigma = tuple(p)
        sub = sigma_elements(sigma)
        bits = {from_ordered_bipartition(w).bits: w for w in sub}
        brute = set()
        for wb, w in bits.items():
            below = [b for b in bits if b != wb and b & ~wb == 0]
            cover_count = sum(
                1 for b in below
                if not any(b2 != b and b2 != wb and b & ~b2 == 0 and b2 & ~wb == 0
                           for b2 in below)
            )
            if cover_count == 1:
                brute.add(w)
        assert brute == set(j.bipartition() for j in join_irreducibles(sigma))


def test_join_irreducibles_brute_force_n4_identity():
    sigma = (1, 2, 3, 4)
    sub = sigma_elements(sigma)
    bits = {from_ordered_bipartition(w).bits: w for w in sub}
    brute = set()
    for wb, w in bits.items():
        below = [b for b in bits if b != wb and b & ~wb == 0]
        cover_count = sum(
            1 for b in below
            if not any(b2 != b and b2 != wb and b & ~b2 == 0 and b2 & ~wb == 0
                       for b2 in below)
        )
        if cover_count == 1:
            brute.add(w)
    assert brute == set(j.bipartition() for j in join_irreducibles(sigma))


def test_sublattice():
    sigma = (1, 2)
    full = sublattice(bottom(2), top(2), sigma)
    assert set(full.elements) == set(sigma_elements(sigma))
    assert len(full.elements) == 6
    u = ob("1|2!")
    assert sublattice(u, u, sigma).elements == (u,)
    with pytest.raises(NotCompatible):
        sublattice(ob("2|1"), top(2), sigma)
    # codes of the full sublattice are exactly the valid codes
    for n in (2, 3, 4, 5):
        identity = tuple(range(1, n + 1))
        got = {code_of(w, identity)
               for w in sublattice(bottom(n), top(n), identity).elements}
        assert got == set(valid_codes(n))


@pytest.mark.parametrize("sigma", [(1, 2), (2, 1), (1, 2, 3), (3, 1, 2),
                                   (1, 2, 3, 4), (2, 4, 1, 3)])
def test_cover_coincidence(sigma):
    # for compatible U < V, covering in the whole lattice and covering in
    # the compatible sublattice are the same thing
    n = len(sigma)
    elems = sigma_elements(sigma)
    sub_bits = [from_ordered_bipartition(w).bits for w in elems]
    all_bits = [from_ordered_bipartition(w).bits for w in enumerate_all(n)]
    for i, u in enumerate(elems):
        for j, v in enumerate(elems):
            ub, vb = sub_bits[i], sub_bits[j]
            if ub == vb or ub & ~vb:
                continue
            cover_full = not any(
                b != ub and b != vb and ub & ~b == 0 and b & ~vb == 0
                for b in all_bits
            )
            cover_sub = not any(
                b != ub and b != vb and ub & ~b == 0 and b & ~vb == 0
                for b in sub_bits
            )
            assert cover_full == cover_sub


def test_sublattice_covers_match_rank():
    sigma = (1, 2, 3)
    sub = sublattice(bottom(3), top(3), sigma)
    for i, j in sub.covers():
        assert rank(sub.elements[j]) == rank(sub.elements[i]) + 1
        assert leq(sub.elements[i], sub.elements[j])


def test_chain_permutation_small():
    chains = list(enumerate_chains_full(1))
    assert chain_permutation(chains[0]) == (1,)
    for chain in enumerate_chains_full(2):
        sigma = chain_permutation(chain)
        assert sigma == chain.sigma


def test_chain_permutation_first_pair_decides():
    for chain in enumerate_chains_full(2):
        if chain.elements[1] == ob("1|2"):
            assert chain_permutation(chain) == (1, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_chain_permutation_compatible_with_all_elements(n):
    for chain in enumerate_chains_full(n):
        sigma = chain_permutation(chain)
        assert sigma == chain.sigma
        pi = OrderedPartition.from_permutation(sigma)
        assert all(is_compatible(w, pi) for w in chain.elements)


def test_chain_permutation_rejects_non_chains():
    with pytest.raises(NotMaximalChain):
        chain_permutation([bottom(2), top(2)])  # not saturated
    with pytest.raises(NotMaximalChain):
        chain_permutation([ob("1|2"), top(2)])  # does not start at the bottom


def test_error_paths():
    from biplattice import SizeMismatch, finest_common_coarsening

    with pytest.raises(SizeMismatch):
        is_compatible(ob("1|2"), OrderedPartition(((1,), (2,), (3,))))
    with pytest.raises(SizeMismatch):
        code_of(ob("1|2"), (1, 2, 3))
    with pytest.raises(SizeMismatch):
        code_of(ob("1|2"), (1, 1))
    with pytest.raises(SizeMismatch):
        code_to_bip((-1, -3), (1, 2, 3))
    with pytest.raises(SizeMismatch):
        join(ob("1|2"), ob("1|2|3"))
    with pytest.raises(SizeMismatch):
        finest_common_coarsening(OrderedPartition(((1,), (2,))),
                                 OrderedPartition(((1, 2, 3),)))
    with pytest.raises(NotCompatible):
        compress(ob("1|2"), OrderedPartition(((1, 2),)))
    with pytest.raises(SizeMismatch):
        decompress(ob("1|2"), OrderedPartition(((1, 2, 3),)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_compression_isomorphism(n):
    from biplattice import ordered_set_partitions

    for blocks in ordered_set_partitions(n):
        pi = OrderedPartition(blocks)
        k = len(blocks)
        idk = tuple(range(1, k + 1))
        small = sigma_elements(idk)
        blown = [decompress(w, pi) for w in small]
        assert {w for w in enumerate_all(n) if is_compatible(w, pi)} == set(blown)
        assert all(compress(w, pi) == s for w, s in zip(blown, small))
        for i in range(len(small)):
            for j in range(len(small)):
                assert leq(blown[i], blown[j]) == leq(small[i], small[j])
