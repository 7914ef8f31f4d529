"""Chain enumeration of the full lattice and its critical-cell analysis.

Maximal chains are listed in groups, one group per permutation in the
minimal-change listing; each chain determines a unique compatible
permutation, so the groups partition the chains.  Within a group, a chain
is identified with its word of join-irreducible labels (the label of a step
is the unique join-irreducible entering at that step), and groups are
ordered lexicographically by word under a fixed linear extension of the
join-irreducibles.

The listing grows by creating skipped intervals: for each chain there is an
antichain of rank intervals such that a subchain lies in an earlier chain
exactly when its rank set misses one of them.  The greedy truncation of
that family decides whether the chain contributes a critical cell and in
which dimension; the full lattice contributes exactly one cell, which pins
its order complex's homotopy type down to a sphere.

Chains are streamed, never materialized in bulk; the critical-cell scan
keeps only per-chain state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import codes, jt, lattice
from .bipcore import (
    OrderedBipartition,
    Relation,
    from_ordered_bipartition,
    to_ordered_bipartition,
    transitive_closure,
)
from .codes import JoinIrreducible
from .errors import NotAnInterval, SizeLimitExceeded, UnionNotFull

Permutation = tuple[int, ...]


# ---------------------------------------------------------------------------
# Linear extensions of the join-irreducible poset
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearExtension:
    """A total order on a set of join-irreducibles extending containment."""

    items: tuple[JoinIrreducible, ...]

    def key_map(self) -> dict[tuple[str, int], int]:
        return {(ji.kind, ji.q): k for k, ji in enumerate(self.items)}

    def position(self, ji: JoinIrreducible) -> int:
        return self.items.index(ji)

    def extends_containment(self) -> bool:
        rels = [ji.relation().bits for ji in self.items]
        return not any(
            rels[j] != rels[i] and rels[j] & ~rels[i] == 0
            for i in range(len(rels))
            for j in range(i + 1, len(rels))
        )


def default_linext(sigma: Sequence[int]) -> LinearExtension:
    """The fixed linear extension used for the full lattice: E(2), F(1),
    then E(k+2), F(k+1), G(k) for k = 1..n-2, ending with F(n), G(n-1)."""
    return LinearExtension(codes.join_irreducibles(tuple(sigma)))


# ---------------------------------------------------------------------------
# Chains and their words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaximalChain:
    """A saturated chain with its permutation and join-irreducible word.

    ``elements[i]`` has rank i above ``elements[0]``; ``word[i]`` is the
    unique join-irreducible below ``elements[i+1]`` but not ``elements[i]``.
    """

    elements: tuple[OrderedBipartition, ...]
    sigma: Permutation
    word: tuple[JoinIrreducible, ...]


def _ji_tables(items: tuple[JoinIrreducible, ...]):
    """Bit tables for a linear extension: relation bits, predecessor masks,
    and the extension keys of the E and G families by index q."""
    rels = [ji.relation().bits for ji in items]
    m = len(items)
    below = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j and rels[j] & ~rels[i] == 0:
                below[i] |= 1 << j
    e_key = {ji.q: k for k, ji in enumerate(items) if ji.kind == "E"}
    g_key = {ji.q: k for k, ji in enumerate(items) if ji.kind == "G"}
    return rels, below, e_key, g_key


def _word_key_stream(below: list[int]) -> Iterator[tuple[int, ...]]:
    """All linear extensions as tuples of extension keys, lexicographically.

    Recursive minimal-first search: at each step the available items (all
    predecessors placed) are tried in increasing key order, which yields the
    words in lexicographic order.
    """
    m = len(below)
    full = (1 << m) - 1
    word: list[int] = []

    def rec(used: int) -> Iterator[tuple[int, ...]]:
        if used == full:
            yield tuple(word)
            return
        for i in range(m):
            bit = 1 << i
            if not used & bit and below[i] & ~used == 0:
                word.append(i)
                yield from rec(used | bit)
                word.pop()

    yield from rec(0)


def _materialize(n: int, start: OrderedBipartition,
                 word: Iterable[JoinIrreducible]) -> tuple[OrderedBipartition, ...]:
    bits = from_ordered_bipartition(start).bits
    elems = [start]
    for ji in word:
        bits = transitive_closure(Relation(n, bits | ji.relation().bits)).bits
        elems.append(to_ordered_bipartition(Relation(n, bits)))
    return tuple(elems)


def enumerate_chains_sigma(sigma: Sequence[int]) -> Iterator[MaximalChain]:
    """Maximal chains of the compatible sublattice of one permutation, in
    lexicographic word order under the default linear extension."""
    sigma = tuple(sigma)
    ext = default_linext(sigma)
    _, below, _, _ = _ji_tables(ext.items)
    n = len(sigma)
    bot = lattice.bottom(n)
    for keys in _word_key_stream(below):
        word = tuple(ext.items[k] for k in keys)
        yield MaximalChain(_materialize(n, bot, word), sigma, word)


def enumerate_chains_full(n: int, max_n: int = 6) -> Iterator[MaximalChain]:
    """Every maximal chain of the full lattice exactly once: groups follow
    the permutation listing, chains within a group follow word order."""
    if n > max_n:
        raise SizeLimitExceeded(f"enumerate_chains_full guard: n={n} exceeds {max_n}")
    for sigma in jt.jt_permutations(n).items:
        yield from enumerate_chains_sigma(sigma)


# ---------------------------------------------------------------------------
# Skipped intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalFamily:
    """An antichain of integer intervals [a, b], sorted by left endpoint."""

    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ivs = self.intervals
        assert list(ivs) == sorted(ivs), "intervals must be sorted"
        assert all(a <= b for a, b in ivs), "empty interval"
        assert not any(
            i != j and ivs[i][0] <= ivs[j][0] and ivs[j][1] <= ivs[i][1]
            for i in range(len(ivs))
            for j in range(len(ivs))
        ), "not an antichain under inclusion"

    @classmethod
    def minimal(cls, intervals: Iterable[tuple[int, int]]) -> "IntervalFamily":
        return cls(_minimal_intervals(intervals))

    def union_ranks(self) -> set[int]:
        return {r for a, b in self.intervals for r in range(a, b + 1)}

    def covers_interior(self, rank_top: int) -> bool:
        return self.union_ranks() == set(range(1, rank_top))


def _minimal_intervals(intervals: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    ivs = sorted(set(intervals))
    return tuple(
        iv for iv in ivs
        if not any(o != iv and iv[0] <= o[0] and o[1] <= iv[1] for o in ivs)
    )


class FullLatticeContext:
    """Enumeration context for the full lattice: the group of a chain is the
    position of its permutation in the minimal-change listing."""

    def __init__(self, n: int):
        self.n = n
        self.rank_top = 3 * n - 2
        self._index = jt.jt_index_map(n)

    def linext_for(self, sigma: Permutation) -> LinearExtension:
        return default_linext(sigma)

    def swap_precedes(self, sigma: Permutation, q: int) -> bool:
        """Does exchanging the entries at positions q-1 and q (1-based) give
        an earlier permutation in the listing?"""
        pi = sigma[:q - 2] + (sigma[q - 1], sigma[q - 2]) + sigma[q:]
        return self._index[pi] < self._index[sigma]


def _family_from_word_keys(word_keys: Sequence[int], e_key: dict[int, int],
                           g_key: dict[int, int], swap_ok, n: int) -> tuple[tuple[int, int], ...]:
    """The minimal skipped-interval family of one chain word.

    Descents of the word contribute singletons.  For each q, the interval
    from the entry rank of the cut E(q) up to just before the entry rank of
    the pair G(q-1) contributes when exchanging positions q-1, q of the
    permutation leads to an earlier group; the family is then reduced to its
    inclusion-minimal members.
    """
    fam = [
        (t + 1, t + 1)
        for t in range(len(word_keys) - 1)
        if word_keys[t] > word_keys[t + 1]
    ]
    pos_by_key = {k: t + 1 for t, k in enumerate(word_keys)}
    for q in range(2, n + 1):
        ke = e_key.get(q)
        kg = g_key.get(q - 1)
        if ke is None or kg is None or ke not in pos_by_key or kg not in pos_by_key:
            continue
        if swap_ok(q):
            fam.append((pos_by_key[ke], pos_by_key[kg] - 1))
    return _minimal_intervals(fam)


def skipped_intervals(chain: MaximalChain, context) -> IntervalFamily:
    """Minimal interval family governing which subchains of ``chain`` lie in
    earlier chains of the enumeration described by ``context``."""
    ext = context.linext_for(chain.sigma)
    key_of = ext.key_map()
    word_keys = [key_of[(z.kind, z.q)] for z in chain.word]
    e_key = {q: k for (kind, q), k in key_of.items() if kind == "E"}
    g_key = {q: k for (kind, q), k in key_of.items() if kind == "G"}
    fam = _family_from_word_keys(
        word_keys, e_key, g_key,
        lambda q: context.swap_precedes(chain.sigma, q),
        len(chain.sigma),
    )
    return IntervalFamily(fam)


def j_intervals(family: IntervalFamily, rank_top: int) -> IntervalFamily:
    """Greedy truncation of a skipped-interval family.

    Repeatedly move the interval with least left endpoint to the output,
    clip the remaining intervals to start after it, and drop members that
    now contain another.  The input intervals must cover the interior ranks
    1..rank_top-1.
    """
    interior = set(range(1, rank_top))
    if family.union_ranks() != interior:
        raise UnionNotFull(
            "the skipped intervals do not cover the interior ranks; "
            "the chain contributes no critical cell"
        )
    work = list(family.intervals)
    out: list[tuple[int, int]] = []
    while work:
        work.sort()
        u, v = work.pop(0)
        out.append((u, v))
        clipped = [(max(x, v + 1), y) for x, y in work if y > v]
        work = list(_minimal_intervals(clipped))
    return IntervalFamily(tuple(out))


# ---------------------------------------------------------------------------
# Critical cells
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalCell:
    """A chain surviving the matching: its index in the enumeration, the
    cell dimension, and the witnessing chain with both interval families."""

    chain_index: int
    dimension: int
    chain: MaximalChain
    skipped: IntervalFamily
    reduced: IntervalFamily


def _contribution(fam: tuple[tuple[int, int], ...], rank_top: int) -> IntervalFamily | None:
    covered = set()
    for a, b in fam:
        covered.update(range(a, b + 1))
    if covered != set(range(1, rank_top)):
        return None
    reduced = j_intervals(IntervalFamily(fam), rank_top)
    if not reduced.covers_interior(rank_top):
        return None
    return reduced


def chain_contribution(chain: MaximalChain, context) -> CriticalCell | None:
    """Critical-cell data of one chain, or None when it contributes none.
    The chain index is not known here and is filled with -1."""
    fam = skipped_intervals(chain, context)
    reduced = _contribution(fam.intervals, context.rank_top)
    if reduced is None:
        return None
    return CriticalCell(-1, len(reduced.intervals) - 1, chain, fam, reduced)


def critical_cells_full(n: int, max_n: int = 6) -> list[CriticalCell]:
    """Scan the whole chain enumeration of the full lattice.

    Works on words only; a chain's elements are materialized just when it
    contributes a cell.
    """
    if n > max_n:
        raise SizeLimitExceeded(f"critical_cells_full guard: n={n} exceeds {max_n}")
    context = FullLatticeContext(n)
    rank_top = context.rank_top
    cells: list[CriticalCell] = []
    idx = 0
    bot = lattice.bottom(n)
    for sigma in jt.jt_permutations(n).items:
        ext = default_linext(sigma)
        _, below, e_key, g_key = _ji_tables(ext.items)
        swap_ok = [False] * (n + 1)
        for q in range(2, n + 1):
            swap_ok[q] = context.swap_precedes(sigma, q)
        for keys in _word_key_stream(below):
            fam = _family_from_word_keys(keys, e_key, g_key, swap_ok.__getitem__, n)
            reduced = _contribution(fam, rank_top)
            if reduced is not None:
                word = tuple(ext.items[k] for k in keys)
                chain = MaximalChain(_materialize(n, bot, word), sigma, word)
                cells.append(
                    CriticalCell(idx, len(reduced.intervals) - 1, chain,
                                 IntervalFamily(fam), reduced)
                )
            idx += 1
    return cells


def homotopy_description(cells: list[CriticalCell]) -> str:
    """Reading of the cell data: no cells means contractible, a single cell
    of dimension d means a sphere of dimension d."""
    if not cells:
        return "contractible"
    if len(cells) == 1:
        return f"sphere of dimension {cells[0].dimension}"
    dims = ",".join(str(c.dimension) for c in cells)
    return f"indeterminate from cell data (dimensions {dims})"


# ---------------------------------------------------------------------------
# Reduced Euler characteristic
# ---------------------------------------------------------------------------

def reduced_euler_characteristic(lower: OrderedBipartition,
                                 upper: OrderedBipartition,
                                 max_n: int = 6) -> int:
    """Alternating chain count of the open interval's order complex.

    Counts the chains lower = x_0 < x_1 < .. < x_len = upper by length with
    a dynamic program over the interval, then returns sum (-1)^len N_len.
    This equals the Moebius value of the interval by Hall's theorem, which
    is used as a cross-check elsewhere, not as the definition.
    """
    if lower == upper:
        raise NotAnInterval("the open interval of a point is undefined here")
    elems = lattice.interval_elements(lower, upper, max_n=max_n)
    bits = [from_ordered_bipartition(w).bits for w in elems]
    counts: list[list[int]] = [[] for _ in elems]
    counts[0] = [1]
    for i in range(1, len(elems)):
        acc: list[int] = []
        for j in range(i):
            if bits[j] != bits[i] and bits[j] & ~bits[i] == 0 and counts[j]:
                if len(acc) < len(counts[j]) + 1:
                    acc.extend([0] * (len(counts[j]) + 1 - len(acc)))
                for steps, c in enumerate(counts[j]):
                    acc[steps + 1] += c
        counts[i] = acc
    total = counts[-1]
    return sum(c if steps % 2 == 0 else -c for steps, c in enumerate(total))
