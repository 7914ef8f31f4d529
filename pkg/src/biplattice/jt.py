"""Minimal-change listings of permutations and the sublattice decomposition.

Two listings are provided: the classical one over all permutations of
{1, .., n}, and the variant that lists only the permutations refining a
given ordered partition.  Both are produced by the same recursion: remove
the largest element, list recursively, then sweep the removed element
through its admissible slots, right to left below odd-numbered items and
left to right below even-numbered ones (items counted from 1).  Consecutive
permutations differ by a single transposition of adjacent entries.

The listings order the sublattice covers of an interval: each interval
[U, V] decomposes into the complexes of its compatible sublattices, listed
in refining order with duplicate complexes dropped after their first
occurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import codes, lattice
from .bipcore import OrderedBipartition, OrderedPartition
from .errors import NoCompatiblePermutation, NotAnInterval, SizeMismatch

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class JTListing:
    """A minimal-change listing of the permutations refining ``base``."""

    base: OrderedPartition
    items: tuple[Permutation, ...]


def _refining(blocks: tuple[tuple[int, ...], ...]) -> list[Permutation]:
    n = sum(len(b) for b in blocks)
    if n == 1:
        return [(1,)]
    m = next(i for i, b in enumerate(blocks) if n in b)
    if blocks[m] == (n,):
        reduced = blocks[:m] + blocks[m + 1:]
        at = sum(len(b) for b in blocks[:m])
        return [p[:at] + (n,) + p[at:] for p in _refining(reduced)]
    reduced = blocks[:m] + (blocks[m][:-1],) + blocks[m + 1:]
    r = sum(len(b) for b in reduced[:m])
    s = r + len(reduced[m]) - 1
    out: list[Permutation] = []
    for item_no, p in enumerate(_refining(reduced), start=1):
        slots = range(s + 1, r - 1, -1) if item_no % 2 == 1 else range(r, s + 2)
        out.extend(p[:t] + (n,) + p[t:] for t in slots)
    return out


def jt_refining(base: OrderedPartition) -> JTListing:
    """All permutations refining ``base``, each differing from the previous
    one by a transposition of adjacent entries."""
    return JTListing(base, tuple(_refining(base.blocks)))


def jt_permutations(n: int) -> JTListing:
    """The classical minimal-change listing of all permutations of {1,..,n}."""
    base = OrderedPartition((tuple(range(1, n + 1)),))
    return jt_refining(base)


@lru_cache(maxsize=None)
def jt_index_map(n: int) -> dict[Permutation, int]:
    """Position of each permutation in the full listing."""
    return {p: i for i, p in enumerate(jt_permutations(n).items)}


# ---------------------------------------------------------------------------
# Underlined representations of ordered partitions
# ---------------------------------------------------------------------------

def underlined_rep(pi: OrderedPartition) -> OrderedBipartition:
    """Same blocks, every block underlined."""
    return OrderedBipartition(pi.blocks, (True,) * len(pi.blocks))


def finest_common_coarsening(a: OrderedPartition, b: OrderedPartition) -> OrderedPartition:
    """The finest ordered partition that both arguments refine.

    Its underlined representation is the join of the two underlined
    representations; joins of all-underlined bipartitions keep every block
    underlined because the join contains both arguments.
    """
    if a.n != b.n:
        raise SizeMismatch(f"ground sets differ: {a.n} vs {b.n}")
    joined = lattice.join(underlined_rep(a), underlined_rep(b))
    return OrderedPartition(joined.blocks)


# ---------------------------------------------------------------------------
# Sublattice decomposition of an interval
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionEntry:
    """One sublattice complex of the interval decomposition.

    ``sigma`` is the first refining permutation producing this complex and
    ``all_sigmas`` lists every refining permutation that produces it, in
    listing order.  ``elements`` is the closed sublattice [lower, upper]_sigma
    sorted by (rank, bit matrix); ``open_elements`` drops the endpoints and
    is the identity used for duplicate removal.
    """

    sigma: Permutation
    all_sigmas: tuple[Permutation, ...]
    elements: tuple[OrderedBipartition, ...]
    open_elements: frozenset


def jt_decomposition(lower: OrderedBipartition,
                     upper: OrderedBipartition) -> list[DecompositionEntry]:
    """Deduplicated listing of the compatible-sublattice complexes of
    [lower, upper], in refining-permutation order.

    The permutations compatible with both endpoints are exactly those
    refining the base partition D, where the underlined representation of D
    is the meet of the underlined representations of the two endpoint block
    partitions.  If that meet has a nonunderlined block, no permutation is
    compatible with both endpoints.
    """
    if lower.n != upper.n:
        raise SizeMismatch(f"ground sets differ: {lower.n} vs {upper.n}")
    met = lattice.meet(underlined_rep(lower.block_partition()),
                       underlined_rep(upper.block_partition()))
    if not all(met.underlined):
        raise NoCompatiblePermutation(
            f"no permutation is compatible with both {lower.text()} and {upper.text()}"
        )
    if not lattice.leq(lower, upper):
        raise NotAnInterval(f"{lower.text()} is not below {upper.text()}")
    base = OrderedPartition(met.blocks)
    groups: dict[frozenset, int] = {}
    sigmas: list[list[Permutation]] = []
    elements: list[tuple[OrderedBipartition, ...]] = []
    for perm in jt_refining(base).items:
        elems = [
            w for w in codes.sigma_elements(perm)
            if lattice.leq(lower, w) and lattice.leq(w, upper)
        ]
        elems.sort(key=lambda w: (lattice.rank(w), w.relation().bits))
        open_set = frozenset(elems) - {lower, upper}
        if open_set in groups:
            sigmas[groups[open_set]].append(perm)
        else:
            groups[open_set] = len(sigmas)
            sigmas.append([perm])
            elements.append(tuple(elems))
    return [
        DecompositionEntry(group[0], tuple(group), elems, frozenset(elems) - {lower, upper})
        for group, elems in zip(sigmas, elements)
    ]


# ---------------------------------------------------------------------------
# The transposition-witness property of the listings
# ---------------------------------------------------------------------------

def check_trotter_property(base: OrderedPartition) -> bool:
    """Diagnostic for the shelling-like property of the refining listing.

    For every pair tau before sigma, some permutation pi before sigma and
    differing from sigma by one adjacent transposition must satisfy
    u(tau) v u(sigma) >= u(pi) v u(sigma), where the right side covers
    u(sigma).  Exhausts all pairs, so keep the base small.
    """
    items = jt_refining(base).items
    index = {p: i for i, p in enumerate(items)}
    n = base.n
    reps = {p: underlined_rep(OrderedPartition.from_permutation(p)) for p in items}
    for si, sigma in enumerate(items):
        if si == 0:
            continue
        candidates = []
        for pos in range(n - 1):
            pi = sigma[:pos] + (sigma[pos + 1], sigma[pos]) + sigma[pos + 2:]
            pidx = index.get(pi)
            if pidx is None or pidx >= si:
                continue
            joined = lattice.join(reps[pi], reps[sigma])
            if lattice.rank(joined) != lattice.rank(reps[sigma]) + 1:
                continue  # not a cover, cannot serve as witness
            candidates.append(joined)
        for tau in items[:si]:
            big = lattice.join(reps[tau], reps[sigma])
            if not any(lattice.leq(cand, big) for cand in candidates):
                return False
    return True
