"""Code vectors over {-3,-1,1,3} and the distributive sublattices Bip_pi.

A bipartition is compatible with an ordered partition pi when each of its
blocks is a union of consecutively indexed blocks of pi.  Fixing a
permutation sigma, the sigma-compatible bipartitions are encoded by integer
vectors: after relabelling through sigma, position i gets -1 if it opens a
nonunderlined block, -3 if it sits later in one, 1 if it closes an
underlined block, and 3 if it sits earlier in one.  Containment of
bipartitions becomes the componentwise order on codes, which makes Bip_sigma
a distributive lattice with join/meet given by max/min.

An equivalent weighting over (1, 0, 2, 3) would make the rank of an element
a plain coordinate sum; the two scales are related by x -> 2x - 3.  The
(-3, -1, 1, 3) scale is used here because validity reduces to three integer
inequalities and complementation becomes reversed negation.  Only this
scale is implemented.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from . import lattice
from .bipcore import (
    OrderedBipartition,
    OrderedPartition,
    Relation,
    from_ordered_bipartition,
)
from .errors import (
    InvalidCode,
    NotAnInterval,
    NotCompatible,
    NotMaximalChain,
    SizeMismatch,
)

CODE_ALPHABET = (-3, -1, 1, 3)


def is_compatible(u: OrderedBipartition, pi: OrderedPartition) -> bool:
    """True iff every block of ``u`` is a union of consecutive blocks of pi."""
    if u.n != pi.n:
        raise SizeMismatch(f"ground sets differ: {u.n} vs {pi.n}")
    return pi.refines(u.block_partition())


def _positions(sigma: Sequence[int]) -> dict[int, int]:
    # sigma as a 1-based permutation tuple; element -> 1-based position
    return {x: i for i, x in enumerate(sigma, start=1)}


def _position_blocks(u: OrderedBipartition, sigma: Sequence[int]) -> list[tuple[int, int, bool]]:
    """Blocks of ``u`` as position intervals [a, b] under sigma, in order."""
    pos = _positions(sigma)
    out = []
    cursor = 1
    for block, under in zip(u.blocks, u.underlined):
        ps = sorted(pos[x] for x in block)
        if ps != list(range(cursor, cursor + len(ps))):
            raise NotCompatible(
                f"{u.text()} is not compatible with the permutation {sigma}"
            )
        out.append((ps[0], ps[-1], under))
        cursor = ps[-1] + 1
    return out


def code_of(u: OrderedBipartition, sigma: Sequence[int]) -> tuple[int, ...]:
    """Code of a sigma-compatible bipartition, reported in sigma-position order."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, u.n + 1)):
        raise SizeMismatch(f"{sigma} is not a permutation of 1..{u.n}")
    code = [0] * u.n
    for a, b, under in _position_blocks(u, sigma):
        for s in range(a, b + 1):
            if under:
                code[s - 1] = 1 if s == b else 3
            else:
                code[s - 1] = -1 if s == a else -3
    return tuple(code)


def is_valid_code(code: Sequence[int]) -> bool:
    """Validity by the three inequalities: u_1 >= -1, u_n <= 1, and
    u_i - u_{i+1} <= 2.  Entries outside {-3,-1,1,3} are invalid."""
    if not code or any(c not in CODE_ALPHABET for c in code):
        return False
    if code[0] < -1 or code[-1] > 1:
        return False
    return all(code[i] - code[i + 1] <= 2 for i in range(len(code) - 1))


def is_valid_code_stepwise(code: Sequence[int]) -> bool:
    """Validity by the four block-building conditions; agrees with
    ``is_valid_code`` on every vector over the alphabet."""
    if not code or any(c not in CODE_ALPHABET for c in code):
        return False
    n = len(code)
    if code[0] == -3 or code[-1] == 3:
        return False
    for i in range(1, n):
        if code[i] == -3 and code[i - 1] >= 0:
            return False
    for i in range(n - 1):
        if code[i] == 3 and code[i + 1] <= 0:
            return False
    return True


def code_to_bip(code: Sequence[int], sigma: Sequence[int]) -> OrderedBipartition:
    """Unique sigma-compatible bipartition with the given code.

    Reads the code left to right: -1 opens a nonunderlined block, -3 extends
    it, 3 opens or extends an underlined block, 1 closes one (opening a
    singleton when nothing is open).
    """
    code = tuple(code)
    sigma = tuple(sigma)
    if not is_valid_code(code):
        raise InvalidCode(f"{code} is not a valid code")
    if sorted(sigma) != list(range(1, len(code) + 1)):
        raise SizeMismatch(f"{sigma} is not a permutation of 1..{len(code)}")
    blocks: list[list[int]] = []
    flags: list[bool] = []
    open_under = False
    for s, c in enumerate(code, start=1):
        if c == -1:
            blocks.append([s])
            flags.append(False)
            open_under = False
        elif c == -3:
            blocks[-1].append(s)
        elif c == 3:
            if open_under:
                blocks[-1].append(s)
            else:
                blocks.append([s])
                flags.append(True)
                open_under = True
        else:  # c == 1 closes an underlined block
            if open_under:
                blocks[-1].append(s)
                open_under = False
            else:
                blocks.append([s])
                flags.append(True)
    return OrderedBipartition.make(
        ([sigma[s - 1] for s in block] for block in blocks), flags
    )


def valid_codes(n: int) -> Iterator[tuple[int, ...]]:
    """All valid codes of length n, in lexicographic order over (-3,-1,1,3)."""
    for code in product(CODE_ALPHABET, repeat=n):
        if is_valid_code(code):
            yield code


def sigma_elements(sigma: Sequence[int]) -> list[OrderedBipartition]:
    """All sigma-compatible bipartitions, in ``valid_codes`` order."""
    sigma = tuple(sigma)
    return [code_to_bip(code, sigma) for code in valid_codes(len(sigma))]


# ---------------------------------------------------------------------------
# Join-irreducible elements of Bip_sigma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JoinIrreducible:
    """A join-irreducible element of Bip_sigma, one of the three families.

    kind E (index q in 2..n): the two-block cut separating the first q-1
    sigma-positions from the rest, nothing underlined.  kind F (q in 1..n):
    a single underlined singleton at position q.  kind G (q in 1..n-1): an
    underlined pair at positions q, q+1.
    """

    kind: str
    q: int
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.sigma)
        ranges = {"E": range(2, n + 1), "F": range(1, n + 1), "G": range(1, n)}
        if self.kind not in ranges or self.q not in ranges[self.kind]:
            raise InvalidCode(f"no join-irreducible {self.kind}({self.q}) for n={n}")

    def bipartition(self) -> OrderedBipartition:
        sigma, q = self.sigma, self.q
        if self.kind == "E":
            blocks = [sigma[: q - 1], sigma[q - 1:]]
            flags = [False, False]
        elif self.kind == "F":
            blocks = [sigma[: q - 1], sigma[q - 1: q], sigma[q:]]
            flags = [False, True, False]
        else:
            blocks = [sigma[: q - 1], sigma[q - 1: q + 1], sigma[q + 1:]]
            flags = [False, True, False]
        return OrderedBipartition.make(
            (b for b in blocks if b), (f for b, f in zip(blocks, flags) if b)
        )

    def relation(self) -> Relation:
        return from_ordered_bipartition(self.bipartition())


@lru_cache(maxsize=None)
def join_irreducibles(sigma: tuple[int, ...]) -> tuple[JoinIrreducible, ...]:
    """The 3n-2 join-irreducibles of Bip_sigma, in the fixed linear-extension
    order used by the chain enumeration: E(2), F(1), then E(k+2), F(k+1),
    G(k) for k = 1..n-2, ending with F(n), G(n-1).  For n = 1 the single
    item is F(1)."""
    n = len(sigma)
    if n == 1:
        return (JoinIrreducible("F", 1, sigma),)
    items = [JoinIrreducible("E", 2, sigma), JoinIrreducible("F", 1, sigma)]
    for k in range(1, n - 1):
        items.append(JoinIrreducible("E", k + 2, sigma))
        items.append(JoinIrreducible("F", k + 1, sigma))
        items.append(JoinIrreducible("G", k, sigma))
    items.append(JoinIrreducible("F", n, sigma))
    items.append(JoinIrreducible("G", n - 1, sigma))
    return tuple(items)


# ---------------------------------------------------------------------------
# Sublattices of compatible elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaInterval:
    """The poset [lower, upper]_sigma of sigma-compatible elements between
    two bounds, with its induced order."""

    sigma: tuple[int, ...]
    lower: OrderedBipartition
    upper: OrderedBipartition
    elements: tuple[OrderedBipartition, ...]

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j) by indices into ``elements``.  Covers inside
        the sublattice coincide with rank-difference-1 containments."""
        out = []
        for i, a in enumerate(self.elements):
            ra = lattice.rank(a)
            for j, b in enumerate(self.elements):
                if lattice.rank(b) == ra + 1 and lattice.leq(a, b):
                    out.append((i, j))
        return out


def sublattice(lower: OrderedBipartition, upper: OrderedBipartition,
               sigma: Sequence[int]) -> SigmaInterval:
    """All sigma-compatible W with lower <= W <= upper."""
    sigma = tuple(sigma)
    pi = OrderedPartition.from_permutation(sigma)
    if not lattice.leq(lower, upper):
        raise NotAnInterval(f"{lower.text()} is not below {upper.text()}")
    for end in (lower, upper):
        if not is_compatible(end, pi):
            raise NotCompatible(f"{end.text()} is not {sigma}-compatible")
    elems = [
        w for w in sigma_elements(sigma)
        if lattice.leq(lower, w) and lattice.leq(w, upper)
    ]
    elems.sort(key=lambda w: (lattice.rank(w), from_ordered_bipartition(w).bits))
    return SigmaInterval(sigma, lower, upper, tuple(elems))


# ---------------------------------------------------------------------------
# The permutation of a maximal chain
# ---------------------------------------------------------------------------

def chain_permutation(chain) -> tuple[int, ...]:
    """The unique permutation compatible with every element of a maximal
    chain of the full lattice.

    For each pair x != y, the first chain element containing one of (x,y),
    (y,x) contains exactly one of them and decides the relative order.
    Accepts a ``MaximalChain`` or a plain sequence of bipartitions.
    """
    elements = tuple(getattr(chain, "elements", chain))
    if not elements:
        raise NotMaximalChain("empty chain")
    n = elements[0].n
    if elements[0] != lattice.bottom(n) or elements[-1] != lattice.top(n):
        raise NotMaximalChain("chain must run from the empty to the full relation")
    rels = [from_ordered_bipartition(e) for e in elements]
    for i in range(len(elements) - 1):
        if not (lattice.leq(elements[i], elements[i + 1])
                and lattice.rank(elements[i + 1]) == lattice.rank(elements[i]) + 1):
            raise NotMaximalChain(f"step {i} is not a cover")
    wins = {x: 0 for x in range(1, n + 1)}
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            for rel in rels:
                fwd, bwd = rel.has(x, y), rel.has(y, x)
                if fwd or bwd:
                    if fwd and bwd:
                        raise NotMaximalChain(
                            f"pair {{{x},{y}}} enters both ways at once"
                        )
                    wins[x if fwd else y] += 1
                    break
    order = sorted(range(1, n + 1), key=lambda x: -wins[x])
    if sorted(wins.values()) != list(range(n)):
        raise NotMaximalChain("chain does not induce a linear order")
    return tuple(order)


# ---------------------------------------------------------------------------
# Block compression
# ---------------------------------------------------------------------------

def compress(u: OrderedBipartition, pi: OrderedPartition) -> OrderedBipartition:
    """Compress each block of pi to a single point: the image of a
    pi-compatible bipartition on {1, .., k}, k the number of pi-blocks."""
    if not is_compatible(u, pi):
        raise NotCompatible(f"{u.text()} is not compatible with {pi.text()}")
    firsts = {block[0]: j for j, block in enumerate(pi.blocks, start=1)}
    blocks = []
    for block in u.blocks:
        blocks.append(sorted(firsts[x] for x in block if x in firsts))
    return OrderedBipartition.make(blocks, u.underlined)


def decompress(w: OrderedBipartition, pi: OrderedPartition) -> OrderedBipartition:
    """Inverse of ``compress``: blow index blocks back up to pi-blocks."""
    if w.n != len(pi.blocks):
        raise SizeMismatch(
            f"compressed value lives on {w.n} points, pi has {len(pi.blocks)} blocks"
        )
    blocks = []
    for index_block in w.blocks:
        blocks.append(sorted(x for j in index_block for x in pi.blocks[j - 1]))
    return OrderedBipartition.make(blocks, w.underlined)
