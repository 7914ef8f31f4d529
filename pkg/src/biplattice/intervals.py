"""Proper intervals: classification, factorization, and Moebius values.

An interval [U, V] is regular when every element that gains its diagonal
pair (moves from a nonunderlined block of U into an underlined block of V)
keeps the very same block; otherwise it is irregular.  Regular intervals
factor into Boolean lattices and whole bipartition lattices on blocks, so
their Moebius value is a sign.  Irregular intervals admit a chain listing
with no critical cell at all, so their open order complex is contractible
and the Moebius value vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import codes, jt, lattice, morse
from .bipcore import (
    OrderedBipartition,
    bip_count,
    from_ordered_bipartition,
)
from .codes import JoinIrreducible
from .errors import (
    NotAnInterval,
    NotIrregular,
    NotRegular,
    SizeLimitExceeded,
)
from .morse import CriticalCell, LinearExtension, MaximalChain

Permutation = tuple[int, ...]

REGULAR = "Regular"
IRREGULAR = "Irregular"


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalClass:
    """Regular or irregular, with the least irregularity witness if any."""

    tag: str
    witness: int | None = None


def _underlined_in(w: OrderedBipartition, x: int) -> bool:
    return w.underlined[w.block_of(x)]


def classify(lower: OrderedBipartition, upper: OrderedBipartition) -> IntervalClass:
    """Regular iff every x whose diagonal pair lies in upper but not lower
    has the same block in both ordered bipartition representations."""
    if not lattice.leq(lower, upper):
        raise NotAnInterval(f"{lower.text()} is not below {upper.text()}")
    for x in range(1, lower.n + 1):
        if _underlined_in(upper, x) and not _underlined_in(lower, x):
            if lower.blocks[lower.block_of(x)] != upper.blocks[upper.block_of(x)]:
                return IntervalClass(IRREGULAR, x)
    return IntervalClass(REGULAR)


# ---------------------------------------------------------------------------
# Product factorization of regular intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """A Boolean lattice of the given rank, or the whole bipartition lattice
    on ``support`` (kind "bip", rank 3|support|-2)."""

    kind: str
    rank: int
    support: tuple[int, ...]

    def size(self) -> int:
        return 1 << self.rank if self.kind == "boolean" else bip_count(len(self.support))


@dataclass(frozen=True)
class Factorization:
    factors: tuple[Factor, ...]

    def size(self) -> int:
        total = 1
        for f in self.factors:
            total *= f.size()
        return total

    def rank(self) -> int:
        return sum(f.rank for f in self.factors)


def restrict(ob: OrderedBipartition, support: Sequence[int]) -> OrderedBipartition:
    """Restriction to a subset of the ground set, relabelled order-preservingly
    onto {1, .., len(support)}.  Restrictions of bipartitional relations are
    bipartitional."""
    support = sorted(support)
    relabel = {x: i for i, x in enumerate(support, start=1)}
    blocks = []
    flags = []
    for block, under in zip(ob.blocks, ob.underlined):
        cut = [relabel[x] for x in block if x in relabel]
        if cut:
            blocks.append(cut)
            flags.append(under)
    return OrderedBipartition.make(blocks, flags)


def factorize_regular(lower: OrderedBipartition,
                      upper: OrderedBipartition) -> Factorization:
    """Direct-product decomposition of a regular interval.

    Blocks whose flag flips from nonunderlined to underlined stay intact by
    regularity and contribute whole bipartition-lattice factors; between
    them, a nonunderlined block of the lower end splitting into several
    blocks of the upper end contributes a Boolean factor, as does a run of
    underlined lower blocks merging into one upper block.  Rank-0 factors
    are dropped.
    """
    cls = classify(lower, upper)
    if cls.tag == IRREGULAR:
        raise NotRegular(f"witness {cls.witness} moves between distinct blocks")
    out: list[Factor] = []
    _factorize(lower, upper, tuple(range(1, lower.n + 1)), out)
    return Factorization(tuple(out))


def _factorize(lo: OrderedBipartition, up: OrderedBipartition,
               labels: tuple[int, ...], out: list[Factor]) -> None:
    # lo, up live on a relabelled ground set 1..m; labels maps back
    flips = [
        x for x in range(1, lo.n + 1)
        if _underlined_in(up, x) and not _underlined_in(lo, x)
    ]
    if not flips:
        i = 0
        while i < len(lo.blocks):
            block = lo.blocks[i]
            if lo.underlined[i]:
                # consume the run of underlined lower blocks merging into
                # the upper block containing them
                target = set(up.blocks[up.block_of(block[0])])
                run = 0
                got: set[int] = set()
                while got != target:
                    got.update(lo.blocks[i + run])
                    run += 1
                if run > 1:
                    out.append(Factor("boolean", run - 1,
                                      tuple(sorted(labels[x - 1] for x in target))))
                i += run
            else:
                inner = sum(1 for b in up.blocks if set(b) <= set(block))
                if inner > 1:
                    out.append(Factor("boolean", inner - 1,
                                      tuple(labels[x - 1] for x in block)))
                i += 1
        return
    x = flips[0]
    bi = lo.block_of(x)
    block = lo.blocks[bi]
    before = [y for b in lo.blocks[:bi] for y in b]
    after = [y for b in lo.blocks[bi + 1:] for y in b]
    if before:
        _factorize(restrict(lo, before), restrict(up, before),
                   tuple(sorted(labels[y - 1] for y in before)), out)
    support = tuple(labels[y - 1] for y in block)
    if len(block) == 1:
        out.append(Factor("boolean", 1, support))
    else:
        out.append(Factor("bip", 3 * len(block) - 2, support))
    if after:
        _factorize(restrict(lo, after), restrict(up, after),
                   tuple(sorted(labels[y - 1] for y in after)), out)


# ---------------------------------------------------------------------------
# Moebius values
# ---------------------------------------------------------------------------

def mobius_closed_form(lower: OrderedBipartition,
                       upper: OrderedBipartition) -> int:
    """1 on points, 0 on irregular intervals, else the parity of the rank
    difference."""
    if lower == upper:
        return 1
    cls = classify(lower, upper)
    if cls.tag == IRREGULAR:
        return 0
    return -1 if (lattice.rank(upper) - lattice.rank(lower)) % 2 else 1


def mobius_bruteforce(lower: OrderedBipartition, upper: OrderedBipartition,
                      max_n: int = 5) -> int:
    """Independent oracle: the standard recursion mu(a, a) = 1 and
    mu(a, b) = -sum of mu(a, z) over a <= z < b, run over the interval's
    elements obtained by exhaustive enumeration."""
    if lower.n > max_n:
        raise SizeLimitExceeded(f"mobius_bruteforce guard: n={lower.n} exceeds {max_n}")
    elems = lattice.interval_elements(lower, upper, max_n=max_n)
    bits = [from_ordered_bipartition(w).bits for w in elems]
    mu = [0] * len(elems)
    mu[0] = 1
    for i in range(1, len(elems)):
        mu[i] = -sum(
            mu[j] for j in range(i)
            if bits[j] & ~bits[i] == 0 and bits[j] != bits[i]
        )
    return mu[-1]


# ---------------------------------------------------------------------------
# Chain enumeration of proper intervals
# ---------------------------------------------------------------------------

def interval_join_irreducibles(sigma: Sequence[int], lower: OrderedBipartition,
                               upper: OrderedBipartition) -> tuple[JoinIrreducible, ...]:
    """The ambient join-irreducibles representing those of [lower, upper]
    within one compatible sublattice: the E/F/G contained in the upper end
    but not in the lower one, in default linear-extension order.  Each H
    stands for the interval element lower v H."""
    sigma = tuple(sigma)
    return tuple(
        ji for ji in codes.join_irreducibles(sigma)
        if lattice.leq(ji.bipartition(), upper)
        and not lattice.leq(ji.bipartition(), lower)
    )


def choose_linext(sigma: Sequence[int], lower: OrderedBipartition,
                  upper: OrderedBipartition, strict: bool = False) -> LinearExtension:
    """Per-group linear extension for the interval chain listing.

    Regular intervals get the restriction of the default extension (or raise
    when ``strict``).  For an irregular interval, take the least-position
    irregularity witness under sigma, locate its lower-end block at
    positions [i, j] and its upper-end block at [k, l], and pick the pivot
    p by the four cases: i < k gives p = k, i > k gives p = i, equal starts
    with j < l gives p = j+1, and with j > l gives p = l+1.  In the first
    and last case E(p) is an interval join-irreducible while G(p-1) is not,
    and E(p) is placed first; in the middle two cases G(p-1) is placed last.
    The rest keeps the default order.
    """
    sigma = tuple(sigma)
    jis = interval_join_irreducibles(sigma, lower, upper)
    cls = classify(lower, upper)
    if cls.tag == REGULAR:
        if strict:
            raise NotIrregular("interval is regular; no witness to pivot on")
        return LinearExtension(jis)
    pos = {x: i for i, x in enumerate(sigma, start=1)}
    witnesses = sorted(
        (
            x for x in range(1, lower.n + 1)
            if _underlined_in(upper, x) and not _underlined_in(lower, x)
            and lower.blocks[lower.block_of(x)] != upper.blocks[upper.block_of(x)]
        ),
        key=lambda x: pos[x],
    )
    x = witnesses[0]
    b_pos = sorted(pos[y] for y in lower.blocks[lower.block_of(x)])
    c_pos = sorted(pos[y] for y in upper.blocks[upper.block_of(x)])
    i, j = b_pos[0], b_pos[-1]
    k, l = c_pos[0], c_pos[-1]
    if i < k:
        p, pin_first = k, True
    elif i > k:
        p, pin_first = i, False
    elif j < l:
        p, pin_first = j + 1, False
    else:
        p, pin_first = l + 1, True
    present = {(z.kind, z.q) for z in jis}
    if pin_first:
        pivot = JoinIrreducible("E", p, sigma)
        assert ("E", p) in present and ("G", p - 1) not in present
        rest = tuple(z for z in jis if z != pivot)
        return LinearExtension((pivot,) + rest)
    pivot = JoinIrreducible("G", p - 1, sigma)
    assert ("G", p - 1) in present and ("E", p) not in present
    rest = tuple(z for z in jis if z != pivot)
    return LinearExtension(rest + (pivot,))


class IntervalContext:
    """Enumeration context for an interval: groups are the deduplicated
    sublattice complexes, each with its own pivoted linear extension."""

    def __init__(self, lower: OrderedBipartition, upper: OrderedBipartition):
        if not lattice.leq(lower, upper) or lower == upper:
            raise NotAnInterval("a proper interval (strict containment) is required")
        self.lower = lower
        self.upper = upper
        self.entries = jt.jt_decomposition(lower, upper)
        self.rank_top = lattice.rank(upper) - lattice.rank(lower)
        self.group_of_perm: dict[Permutation, int] = {}
        for gi, entry in enumerate(self.entries):
            for perm in entry.all_sigmas:
                self.group_of_perm[perm] = gi
        self._linexts = {
            entry.sigma: choose_linext(entry.sigma, lower, upper)
            for entry in self.entries
        }

    def linext_for(self, sigma: Permutation) -> LinearExtension:
        return self._linexts[sigma]

    def swap_precedes(self, sigma: Permutation, q: int) -> bool:
        """Does exchanging positions q-1, q of sigma lead to a complex that
        strictly precedes sigma's complex in the decomposition?  False when
        the exchanged permutation is compatible with neither endpoint."""
        pi = sigma[:q - 2] + (sigma[q - 1], sigma[q - 2]) + sigma[q:]
        gi = self.group_of_perm.get(pi)
        return gi is not None and gi < self.group_of_perm[sigma]


def interval_chain_enumeration(lower: OrderedBipartition,
                               upper: OrderedBipartition) -> Iterator[MaximalChain]:
    """Every maximal chain of a proper interval exactly once.

    Groups follow the sublattice decomposition; within a group, chains
    follow lexicographic word order under the group's chosen extension.  A
    chain lying in several sublattices is listed only with the first group
    containing it.
    """
    context = IntervalContext(lower, upper)
    yield from _interval_chains(context)


def _interval_chains(context: IntervalContext) -> Iterator[MaximalChain]:
    n = context.lower.n
    seen: set[tuple[OrderedBipartition, ...]] = set()
    for entry in context.entries:
        ext = context.linext_for(entry.sigma)
        _, below, _, _ = morse._ji_tables(ext.items)
        for keys in morse._word_key_stream(below):
            word = tuple(ext.items[k] for k in keys)
            elements = morse._materialize(n, context.lower, word)
            if elements in seen:
                continue
            seen.add(elements)
            yield MaximalChain(elements, entry.sigma, word)


def interval_critical_cells(lower: OrderedBipartition,
                            upper: OrderedBipartition) -> list[CriticalCell]:
    """Critical cells of the interval chain listing.  Irregular intervals
    yield none, which reads as a contractible open order complex."""
    context = IntervalContext(lower, upper)
    cells = []
    for idx, chain in enumerate(_interval_chains(context)):
        cell = morse.chain_contribution(chain, context)
        if cell is not None:
            cells.append(CriticalCell(idx, cell.dimension, chain,
                                      cell.skipped, cell.reduced))
    return cells
