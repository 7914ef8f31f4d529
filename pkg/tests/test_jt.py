"""Minimal-change listings, coarsenings, and the sublattice decomposition."""

from itertools import permutations

import pytest

from biplattice import (
    NoCompatiblePermutation,
    OrderedPartition,
    bottom,
    check_trotter_property,
    finest_common_coarsening,
    jt_decomposition,
    jt_permutations,
    jt_refining,
    join,
    leq,
    ordered_set_partitions,
    rank,
    top,
    underlined_rep,
)
from biplattice.morse import enumerate_chains_sigma
from helpers import ob, one_adjacent_swap


def test_listing_n3_verbatim():
    assert jt_permutations(3).items == (
        (1, 2, 3), (1, 3, 2), (3, 1, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3))


def test_listing_n1():
    assert jt_permutations(1).items == ((1,),)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_last_item_swaps_first_two(n):
    assert jt_permutations(n).items[-1] == (2, 1) + tuple(range(3, n + 1))


def test_refining_example_verbatim():
    base = OrderedPartition(((1, 3), (2, 4)))
    assert jt_refining(base).items == (
        (1, 3, 2, 4), (1, 3, 4, 2), (3, 1, 4, 2), (3, 1, 2, 4))


def test_refining_trivial_bases():
    singletons = OrderedPartition(((1,), (2,), (3,)))
    assert jt_refining(singletons).items == ((1, 2, 3),)
    one_block = OrderedPartition(((1, 2, 3),))
    assert jt_refining(one_block).items == jt_permutations(3).items


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_refining_complete_and_minimal_change(n):
    for blocks in ordered_set_partitions(n):
        base = OrderedPartition(blocks)
        listing = jt_refining(base).items
        brute = sorted(
            p for p in permutations(range(1, n + 1))
            if OrderedPartition.from_permutation(p).refines(base)
        )
        assert sorted(listing) == brute
        assert len(set(listing)) == len(listing)
        for i in range(len(listing) - 1):
            assert one_adjacent_swap(listing[i], listing[i + 1])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_full_listing_minimal_change(n):
    items = jt_permutations(n).items
    import math

    assert len(items) == math.factorial(n)
    assert len(set(items)) == len(items)
    for i in range(len(items) - 1):
        assert one_adjacent_swap(items[i], items[i + 1])


def test_underlined_rep():
    assert underlined_rep(OrderedPartition(((1,), (2,)))) == ob("1!|2!")
    assert underlined_rep(OrderedPartition(((1, 2, 3),))) == top(3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_refinement_mirrors_containment(n):
    partitions = [OrderedPartition(b) for b in ordered_set_partitions(n)]
    for a in partitions:
        for b in partitions:
            assert a.refines(b) == leq(underlined_rep(a), underlined_rep(b))


def test_finest_common_coarsening_examples():
    a = OrderedPartition.from_permutation((4, 1, 2, 3))
    b = OrderedPartition.from_permutation((4, 2, 3, 1))
    assert finest_common_coarsening(a, b) == OrderedPartition(((4,), (1, 2, 3)))
    assert finest_common_coarsening(a, a) == a
    assert finest_common_coarsening(
        OrderedPartition.from_permutation((1, 2)),
        OrderedPartition.from_permutation((2, 1)),
    ) == OrderedPartition(((1, 2),))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_coarsening_is_the_join(n):
    parts = [OrderedPartition(b) for b in ordered_set_partitions(n)]
    for a in parts[::3]:
        for b in parts[::2]:
            d = finest_common_coarsening(a, b)
            assert underlined_rep(d) == join(underlined_rep(a), underlined_rep(b))


def test_trotter_witness_example():
    # tau = 4|1|2|3 precedes sigma = 4|2|3|1; pi = 4|3|2|1 works and also
    # precedes sigma without immediately preceding it
    items = jt_permutations(4).items
    tau, sigma, pi = (4, 1, 2, 3), (4, 2, 3, 1), (4, 3, 2, 1)
    it = {p: i for i, p in enumerate(items)}
    assert it[tau] < it[sigma] and it[pi] < it[sigma] and it[pi] + 1 != it[sigma]
    u = lambda p: underlined_rep(OrderedPartition.from_permutation(p))
    assert join(u(tau), u(sigma)) == ob("4!|1,2,3!")
    assert join(u(pi), u(sigma)) == ob("4!|2,3!|1!")
    assert leq(join(u(pi), u(sigma)), join(u(tau), u(sigma)))
    assert rank(join(u(pi), u(sigma))) == rank(u(sigma)) + 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trotter_property_exhaustive(n):
    for blocks in ordered_set_partitions(n):
        assert check_trotter_property(OrderedPartition(blocks))


def test_trotter_property_tiny_bases():
    assert check_trotter_property(OrderedPartition(((1,), (2,))))
    assert check_trotter_property(OrderedPartition(((1, 2),)))


@pytest.mark.parametrize("n", [2, 3])
def test_full_decomposition_no_duplicates(n):
    dec = jt_decomposition(bottom(n), top(n))
    assert [e.sigma for e in dec] == list(jt_permutations(n).items)
    assert all(len(e.all_sigmas) == 1 for e in dec)
    opens = [e.open_elements for e in dec]
    assert len(set(opens)) == len(opens)


def test_rank1_interval_single_entry():
    lo, hi = ob("1!|2!"), ob("1,2!")
    assert rank(hi) - rank(lo) == 1
    dec = jt_decomposition(lo, hi)
    assert len(dec) == 1
    assert dec[0].elements == (lo, hi)


def test_shared_first_block_duplicate_scenario():
    lo, hi = ob("1,2|3"), ob("1,2|3!")
    dec = jt_decomposition(lo, hi)
    assert len(dec) == 1
    assert dec[0].sigma == (1, 2, 3)
    assert dec[0].all_sigmas == ((1, 2, 3), (2, 1, 3))


def test_no_compatible_permutation():
    with pytest.raises(NoCompatiblePermutation):
        jt_decomposition(ob("1!|2"), ob("2!|1"))


def test_decomposition_rejects_incomparable_endpoints():
    from biplattice import NotAnInterval

    # jointly compatible blocks but incomparable relations
    with pytest.raises(NotAnInterval):
        jt_decomposition(ob("1!|2"), ob("1|2!"))


@pytest.mark.parametrize("n", [2, 3])
def test_decomposition_sublattices_have_full_chains(n):
    dec = jt_decomposition(bottom(n), top(n))
    for e in dec:
        for chain in enumerate_chains_sigma(e.sigma):
            assert len(chain.elements) - 1 == 3 * n - 2


@pytest.mark.parametrize("n", [2, 3])
def test_face_intersections_come_with_adjacent_transpositions(n):
    """Any face shared with an earlier complex lies in an earlier complex
    whose permutation is one adjacent transposition away."""
    dec = jt_decomposition(bottom(n), top(n))
    open_sets = [set(e.elements) - {bottom(n), top(n)} for e in dec]
    faces = []
    for e in dec:
        fs = set()
        for chain in enumerate_chains_sigma(e.sigma):
            interior = chain.elements[1:-1]
            for mask in range(1 << len(interior)):
                fs.add(frozenset(
                    interior[t] for t in range(len(interior)) if mask >> t & 1))
        faces.append(fs)
    for i in range(1, len(dec)):
        earlier_union = set()
        for j in range(i):
            earlier_union |= faces[j]
        for face in faces[i] & earlier_union:
            ok = any(
                k < i
                and one_adjacent_swap(dec[k].sigma, dec[i].sigma)
                and all(w in open_sets[k] for w in face)
                for k in range(i)
            )
            assert ok, (dec[i].sigma, face)
