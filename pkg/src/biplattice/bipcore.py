"""Bipartitional relations on the ground set {1, .., n}.

A relation U on X = {1, .., n} is bipartitional when both U and its
complement within X x X are transitive.  Every bipartitional relation has a
unique canonical form, an *ordered bipartition*: an ordered list of disjoint
blocks covering X, each block flagged underlined or nonunderlined.  The pair
(x, y) belongs to the relation exactly when x sits in an earlier block than
y, or when both sit in the same underlined block.

Relations are stored as dense bit matrices packed into a single int (bit
(x-1)*n + (y-1) encodes the pair (x, y)).  All values are immutable and
hashable; every operation is a pure function, so values can be shared freely
across threads.  Element labels are 1-based throughout the public surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from itertools import product
from typing import Iterable, Iterator

from .errors import (
    MalformedPartition,
    NotBipartitional,
    SizeLimitExceeded,
    SizeMismatch,
)

#: Ground sets larger than this are rejected.  Everything in this package is
#: exhaustive at desk scale, so the bound mostly guards against typos.
MAX_N = 16


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise MalformedPartition(f"ground-set size must be a positive integer, got {n!r}")
    if n > MAX_N:
        raise SizeLimitExceeded(f"ground-set size {n} exceeds the limit {MAX_N}")


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """A subset of {1,..,n} x {1,..,n} as an n*n bit matrix packed into an int.

    Bit (x-1)*n + (y-1) is set iff (x, y) belongs to the relation.  Diagonal
    pairs are meaningful data, they decide which blocks are underlined.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if not 0 <= self.bits < 1 << (self.n * self.n):
            raise MalformedPartition(f"bit matrix out of range for n={self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        _check_n(n)
        bits = 0
        for x, y in pairs:
            if not (1 <= x <= n and 1 <= y <= n):
                raise MalformedPartition(f"pair ({x},{y}) outside ground set 1..{n}")
            bits |= 1 << ((x - 1) * n + (y - 1))
        return cls(n, bits)

    def has(self, x: int, y: int) -> bool:
        return bool(self.bits >> ((x - 1) * self.n + (y - 1)) & 1)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """All pairs of the relation, sorted lexicographically."""
        n = self.n
        return tuple(
            (x, y)
            for x in range(1, n + 1)
            for y in range(1, n + 1)
            if self.has(x, y)
        )

    def matrix(self) -> list[list[bool]]:
        n = self.n
        return [[self.has(x, y) for y in range(1, n + 1)] for x in range(1, n + 1)]

    def complement(self) -> "Relation":
        full = (1 << (self.n * self.n)) - 1
        return Relation(self.n, full & ~self.bits)

    def rows(self) -> list[int]:
        """Row masks: bit y-1 of row x-1 is set iff (x, y) is present."""
        n = self.n
        mask = (1 << n) - 1
        return [(self.bits >> (x * n)) & mask for x in range(n)]


def _rows_transitive(rows: list[int]) -> bool:
    # (x,y) and (y,z) present must force (x,z): row[x] must contain row[y]
    # for every y listed in row[x].
    for rx in rows:
        m = rx
        while m:
            y = (m & -m).bit_length() - 1
            if rows[y] & ~rx:
                return False
            m &= m - 1
    return True


def _rows_closure(rows: list[int]) -> list[int]:
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        bk = 1 << k
        for x in range(n):
            if rows[x] & bk:
                rows[x] |= rows[k]
    return rows


def _rows_to_bits(rows: list[int], n: int) -> int:
    bits = 0
    for x, rx in enumerate(rows):
        bits |= rx << (x * n)
    return bits


def transitive_closure(rel: Relation) -> Relation:
    """Smallest transitive relation containing ``rel`` (Warshall on bit rows)."""
    return Relation(rel.n, _rows_to_bits(_rows_closure(rel.rows()), rel.n))


def is_bipartitional(rel: Relation) -> bool:
    """True iff both the relation and its set complement are transitive."""
    return _rows_transitive(rel.rows()) and _rows_transitive(rel.complement().rows())


# ---------------------------------------------------------------------------
# Ordered partitions and ordered bipartitions
# ---------------------------------------------------------------------------

def _validate_blocks(blocks: tuple[tuple[int, ...], ...]) -> int:
    if not blocks:
        raise MalformedPartition("an ordered partition needs at least one block")
    seen: set[int] = set()
    total = 0
    for block in blocks:
        if not block:
            raise MalformedPartition("empty block")
        if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
            raise MalformedPartition(f"block {block} is not sorted strictly ascending")
        for x in block:
            if not isinstance(x, int) or x < 1:
                raise MalformedPartition(f"element {x!r} is not a positive integer")
            if x in seen:
                raise MalformedPartition(f"element {x} appears in two blocks")
            seen.add(x)
        total += len(block)
    if seen != set(range(1, total + 1)):
        raise MalformedPartition(f"blocks do not cover 1..{total}")
    if total > MAX_N:
        raise SizeLimitExceeded(f"ground-set size {total} exceeds the limit {MAX_N}")
    return total


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered list of disjoint nonempty blocks covering {1, .., n}.

    Permutations are represented as the all-singleton case.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        _validate_blocks(self.blocks)

    @classmethod
    def make(cls, blocks: Iterable[Iterable[int]]) -> "OrderedPartition":
        return cls(tuple(tuple(sorted(b)) for b in blocks))

    @classmethod
    def from_permutation(cls, perm: Iterable[int]) -> "OrderedPartition":
        return cls(tuple((x,) for x in perm))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def is_permutation(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def to_permutation(self) -> tuple[int, ...]:
        if not self.is_permutation():
            raise MalformedPartition("not all blocks are singletons")
        return tuple(b[0] for b in self.blocks)

    def refines(self, coarser: "OrderedPartition") -> bool:
        """True iff each block of ``coarser`` is the union of a consecutive
        run of this partition's blocks, runs taken in order."""
        if self.n != coarser.n:
            raise SizeMismatch(f"ground sets differ: {self.n} vs {coarser.n}")
        i = 0
        for target in coarser.blocks:
            need = set(target)
            got: set[int] = set()
            while got != need:
                if i >= len(self.blocks) or not set(self.blocks[i]) <= need - got:
                    return False
                got.update(self.blocks[i])
                i += 1
        return i == len(self.blocks)

    def text(self) -> str:
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)


@dataclass(frozen=True)
class OrderedBipartition:
    """Canonical form of a bipartitional relation.

    ``blocks`` partition {1, .., n} with elements sorted ascending inside
    each block; ``underlined[i]`` records whether all pairs within block i
    belong to the relation.  Equality of bipartitional relations is equality
    of these canonical forms.
    """

    blocks: tuple[tuple[int, ...], ...]
    underlined: tuple[bool, ...]

    def __post_init__(self) -> None:
        _validate_blocks(self.blocks)
        if len(self.underlined) != len(self.blocks):
            raise MalformedPartition("one underline flag per block is required")
        if any(not isinstance(u, bool) for u in self.underlined):
            raise MalformedPartition("underline flags must be booleans")

    @classmethod
    def make(cls, blocks: Iterable[Iterable[int]], underlined: Iterable[bool]) -> "OrderedBipartition":
        return cls(
            tuple(tuple(sorted(b)) for b in blocks),
            tuple(bool(u) for u in underlined),
        )

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_partition(self) -> OrderedPartition:
        return OrderedPartition(self.blocks)

    def block_of(self, x: int) -> int:
        for i, block in enumerate(self.blocks):
            if x in block:
                return i
        raise MalformedPartition(f"element {x} not in ground set")

    def relation(self) -> Relation:
        return from_ordered_bipartition(self)

    def text(self) -> str:
        return to_text(self)

    def __str__(self) -> str:
        return self.text()


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def incomparability_classes(rel: Relation) -> tuple[tuple[int, ...], ...]:
    """Equivalence classes of x ~ y iff (x,y) and (y,x) are both in or both
    out, returned sorted by smallest element.  Requires a bipartitional
    relation, otherwise ~ need not be an equivalence."""
    if not is_bipartitional(rel):
        raise NotBipartitional("incomparability classes need a bipartitional relation")
    n = rel.n
    assigned: dict[int, int] = {}
    classes: list[list[int]] = []
    for x in range(1, n + 1):
        if x in assigned:
            continue
        cls = [x]
        assigned[x] = len(classes)
        for y in range(x + 1, n + 1):
            if y not in assigned and rel.has(x, y) == rel.has(y, x):
                cls.append(y)
                assigned[y] = len(classes)
        classes.append(cls)
    return tuple(tuple(c) for c in classes)


@lru_cache(maxsize=None)
def to_ordered_bipartition(rel: Relation) -> OrderedBipartition:
    """Canonical ordered bipartition of a bipartitional relation.

    Classes are ordered by the induced linear order (x before y iff (x,y) is
    present and (y,x) is not) and a class is underlined iff its elements are
    related to themselves.
    """
    classes = incomparability_classes(rel)

    def cmp(a: tuple[int, ...], b: tuple[int, ...]) -> int:
        return -1 if rel.has(a[0], b[0]) and not rel.has(b[0], a[0]) else 1

    ordered = tuple(sorted(classes, key=cmp_to_key(cmp)))
    flags = tuple(rel.has(c[0], c[0]) for c in ordered)
    return OrderedBipartition(ordered, flags)


@lru_cache(maxsize=None)
def from_ordered_bipartition(ob: OrderedBipartition) -> Relation:
    """Relation defined by an ordered bipartition: cross pairs of earlier
    blocks with later ones, plus all pairs inside underlined blocks."""
    n = ob.n
    bits = 0
    for i, block in enumerate(ob.blocks):
        later = [y for b in ob.blocks[i + 1:] for y in b]
        for x in block:
            row = 0
            for y in later:
                row |= 1 << (y - 1)
            if ob.underlined[i]:
                for y in block:
                    row |= 1 << (y - 1)
            bits |= row << ((x - 1) * n)
    return Relation(n, bits)


def complement(ob: OrderedBipartition) -> OrderedBipartition:
    """Complement within X x X: reverse the blocks and toggle every flag."""
    return OrderedBipartition(
        tuple(reversed(ob.blocks)),
        tuple(not u for u in reversed(ob.underlined)),
    )


# ---------------------------------------------------------------------------
# Exhaustive generation
# ---------------------------------------------------------------------------

def ordered_set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ordered set partitions of {1, .., n}, in the documented order.

    Recursively, for each partition P = (P_1, .., P_k) of {1, .., n-1} the
    children are produced by scanning positions left to right: the singleton
    {n} in front of P_1, then n appended to P_1, then the singleton between
    P_1 and P_2, then n appended to P_2, and so on, ending with the
    singleton {n} after P_k.
    """
    _check_n(n)
    if n == 1:
        yield ((1,),)
        return
    for p in ordered_set_partitions(n - 1):
        k = len(p)
        for i in range(k):
            yield p[:i] + ((n,),) + p[i:]
            yield p[:i] + (p[i] + (n,),) + p[i + 1:]
        yield p + ((n,),)


def enumerate_all(n: int) -> Iterator[OrderedBipartition]:
    """Every bipartitional relation on {1, .., n}, exactly once.

    Ordered set partitions are generated in ``ordered_set_partitions`` order
    and each is crossed with all underline-flag vectors, all-nonunderlined
    first, last flag varying fastest.  The count is sum_k k! S(n,k) 2^k.
    """
    for blocks in ordered_set_partitions(n):
        for flags in product((False, True), repeat=len(blocks)):
            yield OrderedBipartition(blocks, flags)


def bip_count(n: int) -> int:
    """Number of bipartitional relations: sum over k of k! S(n,k) 2^k."""
    _check_n(n)
    # surj[k] = number of ordered set partitions of {1..n} into k blocks
    surj = [0] * (n + 1)
    surj[0] = 1
    for _ in range(n):
        nxt = [0] * (n + 1)
        for k in range(1, n + 1):
            nxt[k] = k * (surj[k - 1] + surj[k])
        surj = nxt
    return sum(surj[k] << k for k in range(1, n + 1))


# ---------------------------------------------------------------------------
# Text and JSON forms
# ---------------------------------------------------------------------------

def to_text(ob: OrderedBipartition) -> str:
    """Blocks joined by '|', elements comma separated, underlined blocks
    suffixed '!'.  Example: ``1,2!|3|4,5|6!``."""
    parts = []
    for block, under in zip(ob.blocks, ob.underlined):
        s = ",".join(str(x) for x in block)
        parts.append(s + "!" if under else s)
    return "|".join(parts)


def parse_text(s: str) -> OrderedBipartition:
    blocks: list[list[int]] = []
    flags: list[bool] = []
    for part in s.strip().split("|"):
        part = part.strip()
        under = part.endswith("!")
        if under:
            part = part[:-1]
        try:
            block = [int(tok) for tok in part.split(",")] if part else []
        except ValueError as exc:
            raise MalformedPartition(f"cannot parse block {part!r}") from exc
        blocks.append(block)
        flags.append(under)
    return OrderedBipartition.make(blocks, flags)


def parse_partition_text(s: str) -> OrderedPartition:
    ob = parse_text(s)
    if any(ob.underlined):
        raise MalformedPartition("an ordered partition carries no underline flags")
    return OrderedPartition(ob.blocks)


def to_json_dict(ob: OrderedBipartition) -> dict:
    return {
        "blocks": [list(b) for b in ob.blocks],
        "underlined": list(ob.underlined),
    }


def from_json_dict(d: dict) -> OrderedBipartition:
    try:
        blocks = d["blocks"]
        underlined = d["underlined"]
    except (TypeError, KeyError) as exc:
        raise MalformedPartition("JSON form needs 'blocks' and 'underlined'") from exc
    if len(blocks) != len(underlined) or not all(isinstance(u, bool) for u in underlined):
        raise MalformedPartition("'underlined' must list one boolean per block")
    return OrderedBipartition.make(blocks, underlined)


def parse_bipartition(s: str) -> OrderedBipartition:
    """Accept either the text form or the JSON form."""
    s = s.strip()
    if s.startswith("{"):
        try:
            d = json.loads(s)
        except json.JSONDecodeError as exc:
            raise MalformedPartition(f"invalid JSON: {exc}") from exc
        return from_json_dict(d)
    return parse_text(s)
