"""Naive reference implementations used as independent oracles.

Everything here works on explicit pair sets with plain loops, on purpose:
these functions stay independent of the bit-matrix code paths they check.
"""

from itertools import product

from biplattice import OrderedBipartition, OrderedPartition, Relation


def all_relations(n):
    """Every relation on {1..n} as a frozenset of pairs (2^(n*n) of them)."""
    domain = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
    for picks in product((False, True), repeat=len(domain)):
        yield frozenset(p for p, take in zip(domain, picks) if take)


def naive_transitive(pairs, n):
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            for z in range(1, n + 1):
                if (x, y) in pairs and (y, z) in pairs and (x, z) not in pairs:
                    return False
    return True


def naive_is_bipartitional(pairs, n):
    comp = {
        (x, y)
        for x in range(1, n + 1)
        for y in range(1, n + 1)
        if (x, y) not in pairs
    }
    return naive_transitive(pairs, n) and naive_transitive(comp, n)


def relation_of(pairs, n):
    return Relation.from_pairs(n, pairs)


def pair_set(ob: OrderedBipartition):
    return frozenset(ob.relation().pairs())


def naive_compatible(ob: OrderedBipartition, pi: OrderedPartition) -> bool:
    """Compatibility straight from the definition: one-sided pairs must
    point from an earlier pi-block to a later one."""
    where = {}
    for i, block in enumerate(pi.blocks):
        for x in block:
            where[x] = i
    pairs = pair_set(ob)
    for x, y in pairs:
        if (y, x) not in pairs and not where[x] < where[y]:
            return False
    return True


def one_adjacent_swap(a, b) -> bool:
    diff = [t for t in range(len(a)) if a[t] != b[t]]
    return (
        len(diff) == 2
        and diff[1] == diff[0] + 1
        and a[diff[0]] == b[diff[1]]
        and a[diff[1]] == b[diff[0]]
    )


def ob(text: str) -> OrderedBipartition:
    from biplattice import parse_text

    return parse_text(text)
