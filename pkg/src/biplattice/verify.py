"""Named invariant suites, shared by the CLI ``verify`` subcommand and tests.

Each suite function runs a batch of checks against independent oracles at
the requested ground-set size and returns one record per check.  Whole-
lattice sweeps go through cached tables; the Moebius and Euler sweeps use
integer matrix arithmetic (an exact elimination for the recursion and exact
float chain counting for the alternating sum, all values far below 2^53).

Desk scales: the lattice, graded, morse and mobius suites accept n <= 4,
codes and jt accept n <= 5.  Sampled checks use a fixed seed, so every run
of a suite is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import bipcore, codes, intervals, jt, lattice, morse
from .bipcore import OrderedBipartition, OrderedPartition, from_ordered_bipartition
from .errors import SizeLimitExceeded, UnknownSuite
from .morse import IntervalFamily

SEED = 20250810


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _check(out: list[Check], name: str, passed: bool, detail: str = "") -> None:
    out.append(Check(name, bool(passed), detail))


# ---------------------------------------------------------------------------
# Whole-lattice tables
# ---------------------------------------------------------------------------

class LatticeTable:
    """All elements of Bip(n) with precomputed order tables.

    Elements are sorted by (rank, bit matrix), a linear extension, so the
    zeta matrix is upper unitriangular.  up_masks[i] packs {j : e_i <= e_j}
    into an int.
    """

    def __init__(self, n: int):
        self.n = n
        elems = list(bipcore.enumerate_all(n))
        elems.sort(key=lambda w: (lattice.rank(w), from_ordered_bipartition(w).bits))
        self.elems = elems
        self.bits = [from_ordered_bipartition(w).bits for w in elems]
        self.ranks = [lattice.rank(w) for w in elems]
        self.index = {w: i for i, w in enumerate(elems)}
        size = len(elems)
        self.up_masks = [0] * size
        for i, bi in enumerate(self.bits):
            mask = 0
            for j, bj in enumerate(self.bits):
                if bi & ~bj == 0:
                    mask |= 1 << j
            self.up_masks[i] = mask

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up_masks[i] >> j & 1)

    def comparable_pairs(self):
        for i in range(len(self.elems)):
            mask = self.up_masks[i]
            while mask:
                j = (mask & -mask).bit_length() - 1
                yield i, j
                mask &= mask - 1

    def zeta(self) -> np.ndarray:
        size = len(self.elems)
        z = np.zeros((size, size), dtype=np.int64)
        for i, j in self.comparable_pairs():
            z[i, j] = 1
        return z


@lru_cache(maxsize=None)
def lattice_table(n: int) -> LatticeTable:
    if n > 4:
        raise SizeLimitExceeded(f"whole-lattice tables are desk scale, n={n} > 4")
    return LatticeTable(n)


def mobius_matrix(table: LatticeTable) -> np.ndarray:
    """Exact inverse of the zeta matrix by integer row elimination.  Entry
    (i, j) is the Moebius value of the pair, 0 on incomparable pairs."""
    z = table.zeta()
    size = z.shape[0]
    inv = np.eye(size, dtype=np.int64)
    work = z.copy()
    for k in range(size):
        idx = np.nonzero(work[:k, k])[0]
        if len(idx):
            coef = work[idx, k].copy()
            work[idx] -= coef[:, None] * work[k]
            inv[idx] -= coef[:, None] * inv[k]
    assert np.array_equal(work, np.eye(size, dtype=np.int64))
    return inv


def euler_matrix(table: LatticeTable) -> np.ndarray:
    """Alternating chain counts: entry (i, j) is sum over lengths of
    (-1)^len times the number of chains e_i < .. < e_j of that length, with
    1 on the diagonal.  Chain counts stay far below 2^53, so the float
    matrix powers are exact."""
    z = table.zeta().astype(np.float64)
    size = z.shape[0]
    strict = z - np.eye(size)
    acc = np.eye(size)
    power = np.eye(size)
    sign = 1
    for _ in range(3 * table.n - 1):
        power = power @ strict
        sign = -sign
        if not power.any():
            break
        acc += sign * power
    else:
        raise AssertionError("strict zeta matrix is not nilpotent")
    out = np.rint(acc).astype(np.int64)
    assert np.array_equal(out.astype(np.float64), acc)
    return out


def closed_form_matrix(table: LatticeTable) -> np.ndarray:
    size = len(table.elems)
    out = np.zeros((size, size), dtype=np.int64)
    for i, j in table.comparable_pairs():
        out[i, j] = intervals.mobius_closed_form(table.elems[i], table.elems[j])
    return out


# ---------------------------------------------------------------------------
# Reported interval-family formulas for the lex-first chain of the last group
# ---------------------------------------------------------------------------

def formula_skipped(n: int) -> IntervalFamily:
    if n == 2:
        return IntervalFamily(((1, 3),))
    ivs = [(1, 4)]
    ivs += [(3 * k, 3 * k + 4) for k in range(1, n - 2)]
    ivs.append((3 * n - 6, 3 * n - 3))
    return IntervalFamily(tuple(sorted(set(ivs))))


def formula_reduced(n: int) -> IntervalFamily:
    if n == 2:
        return IntervalFamily(((1, 3),))
    ivs = [(1, 4)]
    ivs += [(3 * k + 2, 3 * k + 4) for k in range(1, n - 2)]
    ivs.append((3 * n - 4, 3 * n - 3))
    return IntervalFamily(tuple(sorted(set(ivs))))


# ---------------------------------------------------------------------------
# Shared fixtures
# ---------------------------------------------------------------------------

def pentagon_elements(n: int) -> tuple[OrderedBipartition, ...]:
    """The five-element nonmodularity witness: identity and reversed
    all-singleton bipartitions, the underlined identity, bottom and top."""
    u1 = OrderedBipartition(tuple((x,) for x in range(1, n + 1)), (False,) * n)
    u2 = OrderedBipartition(tuple((x,) for x in range(1, n + 1)), (True,) * n)
    v = OrderedBipartition(tuple((x,) for x in range(n, 0, -1)), (False,) * n)
    return u1, u2, v, lattice.bottom(n), lattice.top(n)


def check_pentagon(n: int) -> bool:
    """The five elements form a sublattice shaped like the smallest
    nonmodular lattice."""
    u1, u2, v, bot, topv = pentagon_elements(n)
    five = [u1, u2, v, bot, topv]
    if len(set(five)) != 5:
        return False
    ok = lattice.leq(u1, u2) and u1 != u2
    ok = ok and not lattice.leq(u1, v) and not lattice.leq(v, u1)
    ok = ok and not lattice.leq(u2, v) and not lattice.leq(v, u2)
    ok = ok and lattice.join(u1, v) == topv and lattice.join(u2, v) == topv
    ok = ok and lattice.meet(u1, v) == bot and lattice.meet(u2, v) == bot
    if not ok:
        return False
    closed = all(
        lattice.join(a, b) in five and lattice.meet(a, b) in five
        for a in five
        for b in five
    )
    return closed


def rank1_chain_indices(n: int, targets: list[OrderedBipartition]) -> dict[OrderedBipartition, list[int]]:
    """Chain indices (over the full enumeration) whose rank-1 element is one
    of the targets.  Only words are scanned; the rank-1 element of a chain
    is the bipartition of its first word letter."""
    want = {t: [] for t in targets}
    idx = 0
    for sigma in jt.jt_permutations(n).items:
        ext = morse.default_linext(sigma)
        _, below, _, _ = morse._ji_tables(ext.items)
        first_bip = {k: ji.bipartition() for k, ji in enumerate(ext.items)}
        for keys in morse._word_key_stream(below):
            elem1 = first_bip[keys[0]]
            if elem1 in want:
                want[elem1].append(idx)
            idx += 1
    return want


def find_plo_violation(n: int = 4):
    """Witness that the chain listing is not a poset lexicographic order.

    Returns ((a1, b), (a2,)) chain indices with a1 < b < a2, where a1, a2
    extend the bottom cover through one rank-1 element and b through
    another, or None when no violation exists.
    """
    x1 = OrderedBipartition(((1, 2), (3, 4)), (False, False))
    x2 = OrderedBipartition(((1, 4), (2, 3)), (False, False))
    found = rank1_chain_indices(n, [x1, x2])
    a, b = found[x1], found[x2]
    if not a or not b:
        return None
    if min(a) < max(b) and min(b) < max(a):
        before = max(i for i in a if i < max(b))
        after = min(j for j in b if j > min(a))
        return (x1, x2, before, after, max(a))
    return None


def _sample_pairs(table: LatticeTable, count: int, rng: random.Random):
    size = len(table.elems)
    for _ in range(count):
        yield rng.randrange(size), rng.randrange(size)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_lattice(n: int) -> list[Check]:
    if n > 4:
        raise SizeLimitExceeded("lattice suite is desk scale, n <= 4")
    out: list[Check] = []
    table = lattice_table(n)
    elems = table.elems
    rng = random.Random(SEED)
    exhaustive = n <= 3

    pairs = (
        [(i, j) for i in range(len(elems)) for j in range(len(elems))]
        if exhaustive
        else list(_sample_pairs(table, 2000, rng))
    )
    laws = True
    universal = True
    join_cache: dict[tuple[int, int], OrderedBipartition] = {}
    for i, j in pairs:
        a, b = elems[i], elems[j]
        ab = lattice.join(a, b)
        ba = lattice.join(b, a)
        m_ab = lattice.meet(a, b)
        join_cache[(i, j)] = ab
        laws &= ab == ba and m_ab == lattice.meet(b, a)
        laws &= lattice.join(a, a) == a and lattice.meet(a, a) == a
        laws &= lattice.join(a, m_ab) == a and lattice.meet(a, ab) == a
        up = table.up_masks[table.index[ab]]
        universal &= up == table.up_masks[i] & table.up_masks[j]
        down = _down_mask(table, table.index[m_ab])
        universal &= down == _down_mask(table, i) & _down_mask(table, j)
    _check(out, "lattice-laws", laws,
           f"{len(pairs)} pairs ({'exhaustive' if exhaustive else 'sampled'})")
    _check(out, "universal-property", universal,
           "join is the least and meet the greatest bound over all elements")

    assoc = all(
        lattice.join(lattice.join(a, b), c) == lattice.join(a, lattice.join(b, c))
        and lattice.meet(lattice.meet(a, b), c) == lattice.meet(a, lattice.meet(b, c))
        for a, b, c in (
            tuple(elems[rng.randrange(len(elems))] for _ in range(3))
            for _ in range(300)
        )
    )
    _check(out, "associativity", assoc, "300 sampled triples")

    alt = True
    alt_pairs = pairs if exhaustive else list(_sample_pairs(table, 1500, rng))
    for i, j in alt_pairs:
        a, b = elems[i], elems[j]
        jb = from_ordered_bipartition(join_cache.get((i, j)) or lattice.join(a, b))
        ub, vb = from_ordered_bipartition(a), from_ordered_bipartition(b)
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                if x != y and jb.has(x, y) and not jb.has(y, x):
                    alt &= ub.has(x, y) or vb.has(x, y)
    _check(out, "one-sided-join-pairs-come-from-the-union", alt,
           f"{len(alt_pairs)} pairs")

    two_routes = all(
        lattice.leq(elems[i], elems[j]) == lattice.leq_structural(elems[i], elems[j])
        for i, j in (pairs if exhaustive else list(_sample_pairs(table, 1500, rng)))
    )
    _check(out, "leq-two-routes-agree", two_routes,
           "containment test matches the block-structure test")

    if n >= 2:
        _check(out, "pentagon-sublattice", check_pentagon(n),
               "the five-element nonmodularity witness is present")
    return out


def _down_mask(table: LatticeTable, j: int) -> int:
    mask = 0
    for i in range(len(table.elems)):
        if table.leq_idx(i, j):
            mask |= 1 << i
    return mask


def suite_graded(n: int) -> list[Check]:
    if n > 4:
        raise SizeLimitExceeded("graded suite is desk scale, n <= 4")
    out: list[Check] = []
    table = lattice_table(n)
    elems = table.elems

    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(table.ranks):
        by_rank.setdefault(r, []).append(i)
    match = True
    rank_step = True
    for i, w in enumerate(elems):
        got = set()
        for move, above in lattice.covers(w):
            rank_step &= lattice.rank(above) == table.ranks[i] + 1
            got.add(table.index[above])
        expected = {
            j for j in by_rank.get(table.ranks[i] + 1, ())
            if table.leq_idx(i, j)
        }
        match &= got == expected
    _check(out, "covers-equal-rank-plus-one-containments", match,
           f"all {len(elems)} elements")
    _check(out, "cover-moves-raise-rank-by-one", rank_step, "")
    _check(out, "bottom-top-ranks", lattice.rank(lattice.bottom(n)) == 0
           and lattice.rank(lattice.top(n)) == 3 * n - 2, f"top rank {3 * n - 2}")

    if n <= 3:
        lengths = {len(c) - 1 for c in lattice.maximal_chains(n)}
        _check(out, "maximal-chain-length", lengths == {3 * n - 2},
               f"every saturated bottom-to-top chain has length {3 * n - 2}")
    return out


def suite_codes(n: int) -> list[Check]:
    if n > 5:
        raise SizeLimitExceeded("codes suite is desk scale, n <= 5")
    out: list[Check] = []
    identity = tuple(range(1, n + 1))
    vcodes = list(codes.valid_codes(n))
    elems = codes.sigma_elements(identity)

    _check(out, "code-bijection",
           len(set(elems)) == len(vcodes)
           and all(codes.code_of(w, identity) == c for w, c in zip(elems, vcodes)),
           f"{len(vcodes)} valid codes = 2*3^(n-1) = {2 * 3 ** (n - 1)}")

    bits = [from_ordered_bipartition(w).bits for w in elems]
    iso = all(
        (bits[i] & ~bits[j] == 0) == all(a <= b for a, b in zip(vcodes[i], vcodes[j]))
        for i in range(len(elems))
        for j in range(len(elems))
    )
    _check(out, "code-order-isomorphism", iso, "containment = componentwise order")

    stepwise = all(
        codes.is_valid_code(c) == codes.is_valid_code_stepwise(c)
        for c in product(codes.CODE_ALPHABET, repeat=n)
    )
    _check(out, "validity-two-routes-agree", stepwise, f"all {4 ** n} vectors")

    rev = tuple(reversed(identity))
    dual = all(
        codes.code_of(bipcore.complement(w), rev)
        == tuple(-c for c in reversed(codes.code_of(w, identity)))
        for w in elems
    )
    _check(out, "complement-duality", dual,
           "complement code is the reversed negation under the reversed permutation")

    if n <= 4:
        dist = True
        maxmin = True
        for i in range(len(elems)):
            for j in range(len(elems)):
                cj = tuple(map(max, vcodes[i], vcodes[j]))
                cm = tuple(map(min, vcodes[i], vcodes[j]))
                maxmin &= codes.is_valid_code(cj) and codes.is_valid_code(cm)
                maxmin &= lattice.join(elems[i], elems[j]) == codes.code_to_bip(cj, identity)
                maxmin &= lattice.meet(elems[i], elems[j]) == codes.code_to_bip(cm, identity)
        for a in vcodes:
            for b in vcodes:
                for c in vcodes:
                    lhs = tuple(map(min, a, map(max, b, c)))
                    rhs = tuple(map(max, map(min, a, b), map(min, a, c)))
                    dist &= lhs == rhs
        _check(out, "sublattice-join-meet-are-max-min", maxmin, "all pairs")
        _check(out, "distributive-laws", dist, "all code triples")

        ji_ok = True
        for sigma in _all_permutations(n):
            jis = codes.join_irreducibles(sigma)
            ji_ok &= len(jis) == 3 * n - 2
            sub = codes.sigma_elements(sigma)
            sub_bits = {from_ordered_bipartition(w).bits for w in sub}
            brute = set()
            for w in sub:
                wb = from_ordered_bipartition(w).bits
                below = [
                    b for b in sub_bits
                    if b != wb and b & ~wb == 0
                ]
                covers_in_sub = [
                    b for b in below
                    if not any(b2 != b and b2 != wb and b & ~b2 == 0 and b2 & ~wb == 0
                               for b2 in below)
                ]
                if len(covers_in_sub) == 1:
                    brute.add(wb)
            ji_ok &= brute == {from_ordered_bipartition(j.bipartition()).bits for j in jis}
        _check(out, "join-irreducibles-match-brute-force", ji_ok,
               f"3n-2 = {3 * n - 2} per permutation, every permutation")

        comp_ok = True
        for blocks in bipcore.ordered_set_partitions(n):
            pi = OrderedPartition(blocks)
            k = len(blocks)
            idk = tuple(range(1, k + 1))
            small = codes.sigma_elements(idk)
            blown = [codes.decompress(w, pi) for w in small]
            comp_ok &= all(codes.is_compatible(w, pi) for w in blown)
            comp_ok &= {w for w in bipcore.enumerate_all(n) if codes.is_compatible(w, pi)} == set(blown)
            comp_ok &= all(codes.compress(w, pi) == s for w, s in zip(blown, small))
            comp_ok &= all(
                lattice.leq(blown[i], blown[j]) == lattice.leq(small[i], small[j])
                for i in range(len(small))
                for j in range(len(small))
            )
        _check(out, "block-compression-isomorphism", comp_ok,
               "every ordered partition compresses onto the singleton case")
    return out


def _all_permutations(n: int):
    from itertools import permutations

    return [tuple(p) for p in permutations(range(1, n + 1))]


def suite_jt(n: int) -> list[Check]:
    if n > 5:
        raise SizeLimitExceeded("jt suite is desk scale, n <= 5")
    out: list[Check] = []

    pinned3 = jt.jt_permutations(3).items == (
        (1, 2, 3), (1, 3, 2), (3, 1, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3))
    pinned_ref = jt.jt_refining(OrderedPartition(((1, 3), (2, 4)))).items == (
        (1, 3, 2, 4), (1, 3, 4, 2), (3, 1, 4, 2), (3, 1, 2, 4))
    _check(out, "pinned-listings", pinned3 and pinned_ref,
           "n=3 listing and the ({1,3},{2,4}) refining listing")

    from itertools import permutations as iperm

    complete = True
    minimal_change = True
    for blocks in bipcore.ordered_set_partitions(n):
        base = OrderedPartition(blocks)
        listing = jt.jt_refining(base).items
        brute = [
            p for p in iperm(range(1, n + 1))
            if OrderedPartition.from_permutation(p).refines(base)
        ]
        complete &= sorted(listing) == sorted(brute) and len(set(listing)) == len(listing)
        minimal_change &= all(
            _one_adjacent_swap(listing[i], listing[i + 1])
            for i in range(len(listing) - 1)
        )
    _check(out, "refining-completeness", complete,
           "every base: items are exactly the refining permutations")
    _check(out, "minimal-change", minimal_change,
           "consecutive items differ by one adjacent transposition")

    if n <= 4:
        witness = all(
            jt.check_trotter_property(OrderedPartition(blocks))
            for blocks in bipcore.ordered_set_partitions(n)
        )
        _check(out, "transposition-witness-property", witness, "all bases, exhaustive")

    if n <= 3:
        dec = jt.jt_decomposition(lattice.bottom(n), lattice.top(n))
        groups_ok = (
            len(dec) == len(jt.jt_permutations(n).items)
            and [e.sigma for e in dec] == list(jt.jt_permutations(n).items)
            and all(len(e.all_sigmas) == 1 for e in dec)
        )
        full_len = all(
            all(len(c.elements) - 1 == 3 * n - 2
                for c in morse.enumerate_chains_sigma(e.sigma))
            for e in dec
        )
        _check(out, "full-lattice-decomposition-groups", groups_ok,
               "one group per permutation, no duplicates")
        _check(out, "sublattice-chains-have-full-length", full_len, "")
    return out


def _one_adjacent_swap(a, b) -> bool:
    diff = [t for t in range(len(a)) if a[t] != b[t]]
    return (
        len(diff) == 2
        and diff[1] == diff[0] + 1
        and a[diff[0]] == b[diff[1]]
        and a[diff[1]] == b[diff[0]]
    )


def suite_morse(n: int) -> list[Check]:
    if n > 4:
        raise SizeLimitExceeded("morse suite is desk scale, n <= 4")
    out: list[Check] = []

    if n <= 3:
        dfs = sum(1 for _ in lattice.maximal_chains(n))
        stream = sum(1 for _ in morse.enumerate_chains_full(n))
        _check(out, "chain-count-matches-dfs-oracle", dfs == stream,
               f"{stream} maximal chains")

    lexfirst = True
    for sigma in jt.jt_permutations(n).items:
        first = next(iter(morse.enumerate_chains_sigma(sigma)))
        ext = morse.default_linext(sigma)
        lexfirst &= first.word == ext.items
        run = lattice.bottom(n)
        for ji, elem in zip(first.word, first.elements[1:]):
            run = lattice.join(run, ji.bipartition())
            lexfirst &= run == elem
    _check(out, "lex-first-chain-is-the-prefix-join-chain", lexfirst,
           "first chain of each group joins the extension order prefix by prefix")

    cells = morse.critical_cells_full(n)
    tau_hat = (2, 1) + tuple(range(3, n + 1)) if n >= 2 else (1,)
    cell_ok = (
        len(cells) == 1
        and cells[0].dimension == n - 2
        and cells[0].chain.sigma == tau_hat
        and cells[0].chain.word == morse.default_linext(tau_hat).items
    )
    if n >= 2:
        cell_ok &= cells[0].skipped == formula_skipped(n)
        cell_ok &= cells[0].reduced == formula_reduced(n)
        cell_ok &= len(cells[0].reduced.intervals) == n - 1
    _check(out, "single-critical-cell", cell_ok,
           f"1 critical cell of dimension {n - 2}; {morse.homotopy_description(cells)}")

    if 2 <= n <= 3:
        _check(out, "skipped-interval-criterion-sound",
               check_skipped_soundness(n), "brute-force earlier-chain intersections")
        _check(out, "el-labelling-unique-rising-chain",
               check_el_property(n), "each sublattice interval")

    chi = morse.reduced_euler_characteristic(lattice.bottom(n), lattice.top(n))
    _check(out, "reduced-euler-characteristic", chi == (-1) ** n,
           f"chi = {chi} = (-1)^{n}")

    if n == 4:
        violation = find_plo_violation(4)
        _check(out, "not-a-poset-lexicographic-order", violation is not None,
               "chains through two bottom covers interleave")
    return out


def check_skipped_soundness(n: int) -> bool:
    """Literal check of the skipped-interval criterion: a subchain of chain
    k lies in some earlier chain iff its rank set misses one of the chain's
    intervals.  Also checks the within-group descent form."""
    context = morse.FullLatticeContext(n)
    chains = list(morse.enumerate_chains_full(n))
    opens = [frozenset(c.elements[1:-1]) for c in chains]
    group_of = [c.sigma for c in chains]
    for k, chain in enumerate(chains):
        fam = morse.skipped_intervals(chain, context)
        ext = context.linext_for(chain.sigma)
        key_of = ext.key_map()
        word_keys = [key_of[(z.kind, z.q)] for z in chain.word]
        descents = {t + 1 for t in range(len(word_keys) - 1)
                    if word_keys[t] > word_keys[t + 1]}
        interior = list(range(1, 3 * n - 2))
        earlier = [opens[j] for j in range(k)]
        earlier_same = [opens[j] for j in range(k) if group_of[j] == chain.sigma]
        for picks in product((False, True), repeat=len(interior)):
            ranks = {r for r, take in zip(interior, picks) if take}
            sub = frozenset(chain.elements[r] for r in ranks)
            in_earlier = any(sub <= e for e in earlier)
            by_family = any(
                ranks.isdisjoint(range(a, b + 1)) for a, b in fam.intervals
            )
            if in_earlier != by_family:
                return False
            in_same = any(sub <= e for e in earlier_same)
            by_descent = any(d not in ranks for d in descents)
            if in_same != by_descent:
                return False
    return True


def check_interval_skipped_soundness(lower, upper) -> bool:
    """Literal check of the interval criterion: a subchain of chain k lies
    in an earlier chain of the interval listing iff its rank set misses one
    of the chain's skipped intervals."""
    context = intervals.IntervalContext(lower, upper)
    chains = list(intervals._interval_chains(context))
    opens = [frozenset(c.elements[1:-1]) for c in chains]
    interior = list(range(1, context.rank_top))
    for k, chain in enumerate(chains):
        fam = morse.skipped_intervals(chain, context)
        earlier = opens[:k]
        for picks in product((False, True), repeat=len(interior)):
            ranks = {r for r, take in zip(interior, picks) if take}
            sub = frozenset(chain.elements[r] for r in ranks)
            in_earlier = any(sub <= e for e in earlier)
            by_family = any(
                ranks.isdisjoint(range(a, b + 1)) for a, b in fam.intervals
            )
            if in_earlier != by_family:
                return False
    return True


def check_factorization_isomorphism(lower, upper) -> bool:
    """Explicit poset isomorphism between a regular interval and the direct
    product of its factors, via the restriction map.

    Checks that projecting to the factor supports is a bijection onto the
    full cartesian product, that containment is componentwise containment,
    and that each factor interval really is what its descriptor claims (a
    Boolean lattice identified through its atoms, or the whole bipartition
    lattice on the support)."""
    fac = intervals.factorize_regular(lower, upper)
    elems = lattice.interval_elements(lower, upper)
    supports = [f.support for f in fac.factors]

    def project(w):
        return tuple(intervals.restrict(w, s) for s in supports)

    images = {}
    for w in elems:
        key = project(w)
        if key in images:
            return False
        images[key] = w
    per_factor = [sorted({key[t] for key in images}, key=lambda v: v.text())
                  for t in range(len(supports))]
    expected = 1
    for vals in per_factor:
        expected *= len(vals)
    if expected != len(elems) or expected != fac.size():
        return False
    if set(images) != set(product(*per_factor)):
        return False
    for w1 in elems:
        for w2 in elems:
            componentwise = all(
                lattice.leq(a, b) for a, b in zip(project(w1), project(w2))
            )
            if lattice.leq(w1, w2) != componentwise:
                return False
    for factor, values in zip(fac.factors, per_factor):
        lo = intervals.restrict(lower, factor.support)
        hi = intervals.restrict(upper, factor.support)
        if factor.kind == "bip":
            if set(values) != set(bipcore.enumerate_all(len(factor.support))):
                return False
            if lo != lattice.bottom(len(factor.support)) or hi != lattice.top(len(factor.support)):
                return False
        else:
            if len(values) != 1 << factor.rank:
                return False
            atoms = [v for v in values
                     if lattice.rank(v) == lattice.rank(lo) + 1 and lattice.leq(lo, v)]
            if len(atoms) != factor.rank:
                return False
            atom_sets = {}
            for v in values:
                atom_sets[v] = frozenset(
                    i for i, a in enumerate(atoms) if lattice.leq(a, v))
            if len(set(atom_sets.values())) != len(values):
                return False
            for v1 in values:
                for v2 in values:
                    if lattice.leq(v1, v2) != (atom_sets[v1] <= atom_sets[v2]):
                        return False
    return True


def check_el_property(n: int) -> bool:
    """In each compatible sublattice, every interval has exactly one maximal
    chain whose word rises all the way under the default extension."""
    for sigma in jt.jt_permutations(n).items:
        elems = codes.sigma_elements(sigma)
        ext = morse.default_linext(sigma)
        for lo in elems:
            for hi in elems:
                if lo == hi or not lattice.leq(lo, hi):
                    continue
                jis = intervals.interval_join_irreducibles(sigma, lo, hi)
                sub_ext = morse.LinearExtension(jis)
                _, below, _, _ = morse._ji_tables(sub_ext.items)
                rising = 0
                for keys in morse._word_key_stream(below):
                    if all(keys[t] < keys[t + 1] for t in range(len(keys) - 1)):
                        rising += 1
                if rising != 1:
                    return False
    return True


def suite_mobius(n: int) -> list[Check]:
    if n > 4:
        raise SizeLimitExceeded("mobius suite is desk scale, n <= 4")
    out: list[Check] = []
    table = lattice_table(n)
    mob = mobius_matrix(table)
    eul = euler_matrix(table)
    closed = closed_form_matrix(table)

    _check(out, "recursion-equals-chain-counting", np.array_equal(mob, eul),
           "Moebius recursion matches alternating chain counts on all pairs")
    _check(out, "closed-form-equals-recursion", np.array_equal(closed, mob),
           "sign/zero closed form matches on all pairs")
    _check(out, "trichotomy", bool(np.isin(mob, (-1, 0, 1)).all()),
           "every value is -1, 0 or 1")

    bot, topv = lattice.bottom(n), lattice.top(n)
    op_val = intervals.mobius_bruteforce(bot, topv)
    _check(out, "bottom-top-value",
           op_val == (-1) ** n
           and mob[table.index[bot], table.index[topv]] == (-1) ** n,
           f"mu(bottom, top) = {op_val}")

    irregular_zero = True
    for i, j in table.comparable_pairs():
        if i == j:
            continue
        cls = intervals.classify(table.elems[i], table.elems[j])
        if cls.tag == intervals.IRREGULAR and mob[i, j] != 0:
            irregular_zero = False
            break
    _check(out, "irregular-intervals-vanish", irregular_zero, "")

    if n <= 3:
        no_cells = True
        factor_ok = True
        iso_ok = True
        for i, j in table.comparable_pairs():
            if i == j:
                continue
            lo, hi = table.elems[i], table.elems[j]
            cls = intervals.classify(lo, hi)
            if cls.tag == intervals.IRREGULAR:
                no_cells &= intervals.interval_critical_cells(lo, hi) == []
            else:
                fac = intervals.factorize_regular(lo, hi)
                count = table.up_masks[i]
                members = bin(count & _down_mask(table, j)).count("1")
                factor_ok &= fac.size() == members
                factor_ok &= fac.rank() == table.ranks[j] - table.ranks[i]
                iso_ok &= check_factorization_isomorphism(lo, hi)
        _check(out, "irregular-intervals-have-no-critical-cells", no_cells,
               "every irregular interval's chain listing ends with none")
        _check(out, "regular-factorization-size-and-rank", factor_ok,
               "factor sizes multiply to the interval size, ranks add up")
        _check(out, "regular-factorization-isomorphism", iso_ok,
               "restriction maps give an explicit product isomorphism")
    return out


SUITES = {
    "lattice": suite_lattice,
    "graded": suite_graded,
    "codes": suite_codes,
    "jt": suite_jt,
    "morse": suite_morse,
    "mobius": suite_mobius,
}


def run_suite(name: str, n: int) -> list[Check]:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; pick one of {sorted(SUITES)}")
    return SUITES[name](n)
