"""Order, join, meet, covers, rank, and the Hasse diagram of Bip(X).

The order is containment of relations.  Joins are transitive closures of
unions; meets go through complement duality, because the plain intersection
of two bipartitional relations need not be bipartitional.  All functions are
pure; the Hasse diagram is materialized only behind an explicit size guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from . import bipcore
from .bipcore import (
    OrderedBipartition,
    Relation,
    from_ordered_bipartition,
    to_ordered_bipartition,
    transitive_closure,
)
from .errors import NotAnInterval, SizeLimitExceeded, SizeMismatch

MERGE_UNDERLINED = "MergeUnderlined"
SPLIT_NONUNDERLINED = "SplitNonunderlined"
UNDERLINE_SINGLETON = "UnderlineSingleton"


def bottom(n: int) -> OrderedBipartition:
    """The empty relation: one nonunderlined block."""
    return OrderedBipartition((tuple(range(1, n + 1)),), (False,))


def top(n: int) -> OrderedBipartition:
    """The full relation X x X: one underlined block."""
    return OrderedBipartition((tuple(range(1, n + 1)),), (True,))


def _same_n(u: OrderedBipartition, v: OrderedBipartition) -> None:
    if u.n != v.n:
        raise SizeMismatch(f"ground sets differ: {u.n} vs {v.n}")


def leq(u: OrderedBipartition, v: OrderedBipartition) -> bool:
    """Containment of the underlying relations."""
    _same_n(u, v)
    ub = from_ordered_bipartition(u).bits
    vb = from_ordered_bipartition(v).bits
    return ub & ~vb == 0


def leq_structural(u: OrderedBipartition, v: OrderedBipartition) -> bool:
    """Secondary containment test straight off the block structures.

    u <= v iff (i) some permutation is compatible with both, (ii) every
    underlined block of u sits inside an underlined block of v, and (iii)
    every nonunderlined block of v sits inside a nonunderlined block of u.
    Condition (i) holds iff the meet of the two all-underlined block
    relations has only underlined blocks.
    """
    _same_n(u, v)
    for block, under in zip(u.blocks, u.underlined):
        if under and not _inside_flagged(block, v, True):
            return False
    for block, under in zip(v.blocks, v.underlined):
        if not under and not _inside_flagged(block, u, False):
            return False
    mu = OrderedBipartition(u.blocks, (True,) * len(u.blocks))
    mv = OrderedBipartition(v.blocks, (True,) * len(v.blocks))
    return all(meet(mu, mv).underlined)


def _inside_flagged(block: tuple[int, ...], w: OrderedBipartition, flag: bool) -> bool:
    i = w.block_of(block[0])
    return w.underlined[i] == flag and set(block) <= set(w.blocks[i])


def join(u: OrderedBipartition, v: OrderedBipartition) -> OrderedBipartition:
    """Least upper bound: the transitive closure of the union."""
    _same_n(u, v)
    ub = from_ordered_bipartition(u)
    vb = from_ordered_bipartition(v)
    closed = transitive_closure(Relation(u.n, ub.bits | vb.bits))
    return to_ordered_bipartition(closed)


def meet(u: OrderedBipartition, v: OrderedBipartition) -> OrderedBipartition:
    """Greatest lower bound, through complement duality."""
    return bipcore.complement(join(bipcore.complement(u), bipcore.complement(v)))


def rank(u: OrderedBipartition) -> int:
    """3 * (elements in underlined blocks) + #nonunderlined - #underlined - 1."""
    under_elems = sum(len(b) for b, f in zip(u.blocks, u.underlined) if f)
    n_under = sum(u.underlined)
    return 3 * under_elems + (len(u.blocks) - n_under) - n_under - 1


@dataclass(frozen=True)
class CoverMove:
    """One of the three upward moves on an ordered bipartition.

    kind MergeUnderlined: fuse blocks ``block`` and ``block``+1, both
    underlined.  kind SplitNonunderlined: replace nonunderlined block
    ``block`` by the pair (``first_part``, rest), both nonunderlined.  kind
    UnderlineSingleton: underline the nonunderlined singleton ``block``.
    """

    kind: str
    block: int
    first_part: tuple[int, ...] | None = None

    def apply(self, u: OrderedBipartition) -> OrderedBipartition:
        i = self.block
        blocks = list(u.blocks)
        flags = list(u.underlined)
        if self.kind == MERGE_UNDERLINED:
            blocks[i:i + 2] = [tuple(sorted(blocks[i] + blocks[i + 1]))]
            flags[i:i + 2] = [True]
        elif self.kind == SPLIT_NONUNDERLINED:
            assert self.first_part is not None
            rest = tuple(sorted(set(blocks[i]) - set(self.first_part)))
            blocks[i:i + 1] = [self.first_part, rest]
            flags[i:i + 1] = [False, False]
        elif self.kind == UNDERLINE_SINGLETON:
            flags[i] = True
        else:
            raise ValueError(f"unknown move kind {self.kind!r}")
        return OrderedBipartition(tuple(blocks), tuple(flags))


def covers(u: OrderedBipartition) -> list[tuple[CoverMove, OrderedBipartition]]:
    """All upper covers of ``u`` together with the move producing each.

    Scanning blocks left to right: merge block i with block i+1 when both
    are underlined; split a nonunderlined block i into (S, B - S) for every
    nonempty proper subset S, subsets ordered by size then lexicographically;
    underline a nonunderlined singleton.  Every move raises the rank by
    exactly one, and these moves produce exactly the covers.
    """
    out: list[tuple[CoverMove, OrderedBipartition]] = []
    k = len(u.blocks)
    for i in range(k):
        if u.underlined[i]:
            if i + 1 < k and u.underlined[i + 1]:
                move = CoverMove(MERGE_UNDERLINED, i)
                out.append((move, move.apply(u)))
            continue
        block = u.blocks[i]
        if len(block) == 1:
            move = CoverMove(UNDERLINE_SINGLETON, i)
            out.append((move, move.apply(u)))
            continue
        for size in range(1, len(block)):
            for first in combinations(block, size):
                move = CoverMove(SPLIT_NONUNDERLINED, i, first)
                out.append((move, move.apply(u)))
    return out


# ---------------------------------------------------------------------------
# Hasse diagram
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HasseDiagram:
    """Cover graph over all bipartitional relations on {1, .., n}.

    Nodes follow ``enumerate_all`` order; edge (i, j, kind) records that node
    j covers node i via a move of the given kind.
    """

    n: int
    nodes: tuple[OrderedBipartition, ...]
    edges: tuple[tuple[int, int, str], ...]

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(node) for node in self.nodes)

    def to_dot(self) -> str:
        lines = ["digraph bip {", "  rankdir=BT;", '  node [shape=box];']
        ranks = self.ranks()
        for i, node in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{node.text()}"];')
        for r in range(max(ranks) + 1):
            same = [f"n{i}" for i, rr in enumerate(ranks) if rr == r]
            if same:
                lines.append("  { rank=same; " + "; ".join(same) + "; }")
        for i, j, _kind in self.edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "nodes": [
                {
                    "text": node.text(),
                    "blocks": [list(b) for b in node.blocks],
                    "underlined": list(node.underlined),
                    "rank": rank(node),
                }
                for node in self.nodes
            ],
            "edges": [[i, j, kind] for i, j, kind in self.edges],
        }


def hasse_diagram(n: int, max_n: int = 6) -> HasseDiagram:
    """Materialize nodes and cover edges for the whole lattice."""
    if n > max_n:
        raise SizeLimitExceeded(f"hasse_diagram guard: n={n} exceeds {max_n}")
    nodes = tuple(bipcore.enumerate_all(n))
    index = {node: i for i, node in enumerate(nodes)}
    edges = []
    for i, node in enumerate(nodes):
        for move, above in covers(node):
            edges.append((i, index[above], move.kind))
    return HasseDiagram(n, nodes, tuple(edges))


def interval_elements(lower: OrderedBipartition, upper: OrderedBipartition,
                      max_n: int = 6) -> list[OrderedBipartition]:
    """All elements of the closed interval [lower, upper], sorted by
    (rank, bit matrix) so the list is a linear extension of the order."""
    _same_n(lower, upper)
    if not leq(lower, upper):
        raise NotAnInterval(f"{lower.text()} is not below {upper.text()}")
    if lower.n > max_n:
        raise SizeLimitExceeded(f"interval_elements guard: n={lower.n} exceeds {max_n}")
    out = [
        w for w in bipcore.enumerate_all(lower.n)
        if leq(lower, w) and leq(w, upper)
    ]
    out.sort(key=lambda w: (rank(w), from_ordered_bipartition(w).bits))
    return out


def maximal_chains(n: int, max_n: int = 5) -> Iterator[tuple[OrderedBipartition, ...]]:
    """All saturated bottom-to-top chains, by depth-first search over covers.

    Deliberately naive: this is the independent oracle that the structured
    chain enumeration is checked against.
    """
    if n > max_n:
        raise SizeLimitExceeded(f"maximal_chains guard: n={n} exceeds {max_n}")
    topv = top(n)

    def walk(prefix: tuple[OrderedBipartition, ...]) -> Iterator[tuple[OrderedBipartition, ...]]:
        if prefix[-1] == topv:
            yield prefix
            return
        for _move, above in covers(prefix[-1]):
            yield from walk(prefix + (above,))

    yield from walk((bottom(n),))
