"""Abelian partitions of a group: one abelian subgroup plus commuting blocks.

A certificate splits the whole element set into an abelian subgroup A and
n >= 2 pairwise disjoint commuting blocks of size >= 2.  This module checks
claimed certificates clause by clause, builds them from central cosets,
searches for minimum-block certificates exhaustively on small groups and
greedily on larger ones, classifies the groups attaining the extreme block
counts 2 and 3, and detects the index-2 odd-kernel structure whose commuting
graph is a cone over a clique plus isolated vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .commgraph import noncentral_centralizer_sets
from .errors import (
    AbelianInput,
    CenterTooSmall,
    ExactCapExceeded,
    IndexTooSmall,
)
from .groups import (
    GroupTable,
    Subgroup,
    center,
    is_ac_group,
    is_isomorphic_small,
    make_subgroup,
    quotient,
    subgroup_closure,
    subgroup_table,
    sylow_subgroups,
)

EXACT_SEARCH_CAP = 24
_HEURISTIC_ENUM_CAP = 1024


@dataclass(frozen=True)
class PartitionCertificate:
    """Claimed abelian partition; verified means verify_partition passed."""

    A: tuple
    blocks: tuple
    n: int
    verified: bool

    def to_json(self):
        return {
            "A": list(self.A),
            "blocks": [list(b) for b in self.blocks],
            "n": self.n,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, data) -> "PartitionCertificate":
        if not isinstance(data, dict):
            raise ValueError("certificate must be a JSON object")
        for key in ("A", "blocks", "n"):
            if key not in data:
                raise ValueError(f"certificate missing key {key!r}")
        A = tuple(int(x) for x in data["A"])
        blocks = tuple(tuple(int(x) for x in b) for b in data["blocks"])
        return cls(A, blocks, int(data["n"]), bool(data.get("verified", False)))


def _canonical_blocks(blocks) -> tuple:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def verify_partition(G: GroupTable, cert: PartitionCertificate):
    """Check every certificate invariant; returns (ok, first violation or None)."""
    n_elems = G.order
    parts = [tuple(cert.A)] + [tuple(b) for b in cert.blocks]
    seen = np.zeros(n_elems, dtype=np.int64)
    for part in parts:
        for x in part:
            if not (0 <= x < n_elems):
                raise ValueError(f"element index {x} out of range")
            seen[x] += 1
    over = np.nonzero(seen > 1)[0]
    if len(over):
        return False, f"overlap: element {int(over[0])} appears in two parts"
    missing = np.nonzero(seen == 0)[0]
    if len(missing):
        return False, f"non-cover: element {int(missing[0])} in no part"
    try:
        A_sub = make_subgroup(G, cert.A)
    except ValueError as exc:
        return False, f"A-not-abelian-subgroup: {exc}"
    if not A_sub.abelian:
        return False, "A-not-abelian-subgroup: A is not abelian"
    C = G.commute_matrix()
    for bi, block in enumerate(cert.blocks):
        arr = np.asarray(block, dtype=np.int64)
        sub = C[np.ix_(arr, arr)]
        if not sub.all():
            bad = np.argwhere(~sub)[0]
            return False, (
                f"block-not-commuting: block {bi} elements "
                f"{int(arr[bad[0]])} and {int(arr[bad[1]])}"
            )
    for bi, block in enumerate(cert.blocks):
        if len(block) < 2:
            return False, f"block-too-small: block {bi} has size {len(block)}"
    if len(cert.blocks) < 2:
        return False, f"n-too-small: {len(cert.blocks)} blocks, need at least 2"
    if cert.n != len(cert.blocks):
        return False, f"n-too-small: n={cert.n} does not match {len(cert.blocks)} blocks"
    return True, None


def _certified(G: GroupTable, A, blocks) -> PartitionCertificate:
    cert = PartitionCertificate(
        tuple(sorted(int(x) for x in A)),
        _canonical_blocks(blocks),
        len(blocks),
        False,
    )
    ok, report = verify_partition(G, cert)
    if not ok:
        raise AssertionError(f"internally built certificate failed: {report}")
    return PartitionCertificate(cert.A, cert.blocks, cert.n, True)


def coset_partition(G: GroupTable) -> PartitionCertificate:
    """Partition into the center and its nontrivial cosets."""
    Z = G.center_indices()
    m = len(Z)
    if m < 2:
        raise CenterTooSmall(f"center has order {m}, need at least 2")
    idx = G.order // m
    if idx < 4:
        raise IndexTooSmall(f"central index is {idx}, need at least 4")
    zarr = np.asarray(Z, dtype=np.int64)
    covered = np.zeros(G.order, dtype=bool)
    covered[zarr] = True
    blocks = []
    for x in range(G.order):
        if covered[x]:
            continue
        coset = G.table[zarr, x]
        covered[coset] = True
        blocks.append(tuple(int(v) for v in np.sort(coset)))
    return _certified(G, Z, blocks)


def lower_bound_blocks(G: GroupTable) -> int:
    """Block-count floor from the class-count bound."""
    return G.order // len(G.conjugacy_classes()) - 1


# ---------------------------------------------------------------- search


def abelian_subgroups(G: GroupTable) -> list:
    """Every abelian subgroup, as sorted element tuples, lexicographic order."""
    C = G.commute_matrix()
    n = G.order
    trivial = (0,)
    found = {trivial}
    frontier = [trivial]
    while frontier:
        fresh = []
        for S in frontier:
            arr = np.asarray(S, dtype=np.int64)
            commuting = np.nonzero(C[arr].all(axis=0))[0]
            for x in commuting:
                x = int(x)
                if x in S:
                    continue
                bigger = subgroup_closure(G, S + (x,)).elements
                if bigger not in found:
                    found.add(bigger)
                    fresh.append(bigger)
        frontier = fresh
    return sorted(found)


def _maximal_abelian_subgroups(G: GroupTable) -> list:
    if is_ac_group(G):
        return noncentral_centralizer_sets(G)
    subs = abelian_subgroups(G)
    sets = [frozenset(s) for s in subs]
    out = []
    for i, s in enumerate(sets):
        if not any(j != i and s < other for j, other in enumerate(sets)):
            out.append(subs[i])
    return out


def _min_cover_blocks(C, V, limit=None):
    """Minimum clique cover of V with all cliques of size >= 2.

    Iterative deepening over the allowed block count; within a target the
    backtracking picks the lowest uncovered vertex and tries its cliques in
    lexicographic order, so the first solution found is canonical.  Returns
    a block list or None; covers needing more than limit blocks count as
    none.
    """
    k = len(V)
    if k < 4:
        return None
    adj = []
    for i in range(k):
        mask = 0
        for j in range(k):
            if i != j and C[V[i], V[j]]:
                mask |= 1 << j
        adj.append(mask)
    if any(adj[i] == 0 for i in range(k)):
        return None
    full = (1 << k) - 1
    max_clique_bound = max(m.bit_count() for m in adj) + 1

    def isolated(uncovered):
        m = uncovered
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & uncovered == 0:
                return True
            m ^= low
        return False

    def backtrack(uncovered, blocks_left, acc):
        if uncovered == 0:
            return list(acc)
        if blocks_left == 0:
            return None
        cnt = uncovered.bit_count()
        if cnt < 2:
            return None
        if -(-cnt // max_clique_bound) > blocks_left:
            return None
        if isolated(uncovered):
            return None
        if blocks_left == 1:
            # the last block must swallow everything left, as one clique
            m = uncovered
            ok = True
            while m:
                low = m & -m
                if uncovered & ~(adj[low.bit_length() - 1] | low):
                    ok = False
                    break
                m ^= low
            if ok:
                return list(acc) + [uncovered]
            return None
        v = (uncovered & -uncovered).bit_length() - 1

        def grow(clique_mask, cand):
            if clique_mask.bit_count() >= 2:
                got = backtrack(
                    uncovered & ~clique_mask, blocks_left - 1, acc + [clique_mask]
                )
                if got is not None:
                    return got
            m = cand
            while m:
                low = m & -m
                u = low.bit_length() - 1
                got = grow(clique_mask | low, cand & adj[u] & ~((low << 1) - 1))
                if got is not None:
                    return got
                m ^= low
            return None

        return grow(1 << v, adj[v] & uncovered & ~((1 << (v + 1)) - 1))

    top = k // 2 if limit is None else min(limit, k // 2)
    for target in range(2, top + 1):
        got = backtrack(full, target, [])
        if got is not None:
            return [tuple(V[i] for i in range(k) if (mask >> i) & 1) for mask in got]
    return None


def _find_exact(G: GroupTable):
    if G.order > EXACT_SEARCH_CAP:
        raise ExactCapExceeded(
            f"exact partition search capped at order {EXACT_SEARCH_CAP}, got {G.order}"
        )
    C = G.commute_matrix()
    best = None
    for A in abelian_subgroups(G):
        a_set = set(A)
        V = [x for x in range(G.order) if x not in a_set]
        if len(V) < 4:
            # fewer than two blocks of size two cannot exist
            continue
        if best is not None and best[0] == 2:
            break
        cap = None if best is None else best[0] - 1
        blocks = _min_cover_blocks(C, V, limit=cap)
        if blocks is None:
            continue
        n = len(blocks)
        if best is None or n < best[0]:
            best = (n, A, blocks)
    if best is None:
        return None
    _, A, blocks = best
    return _certified(G, A, blocks)


def _find_heuristic(G: GroupTable, n_max=None):
    C = G.commute_matrix()
    n = G.order
    if not is_ac_group(G) and n > _HEURISTIC_ENUM_CAP:
        return None
    pool = sorted(_maximal_abelian_subgroups(G), key=lambda s: (-len(s), s))
    if not pool:
        return None
    A = pool[0]
    a_set = set(A)
    covered = np.zeros(n, dtype=bool)
    covered[list(a_set)] = True
    blocks = []
    for S in pool:
        fresh = [x for x in S if not covered[x]]
        if len(fresh) >= 2:
            blocks.append(tuple(fresh))
            covered[fresh] = True
    leftovers = [x for x in range(n) if not covered[x]]
    unplaced = []
    for x in leftovers:
        placed = False
        for bi, block in enumerate(blocks):
            if all(C[x, y] for y in block):
                blocks[bi] = tuple(sorted(block + (x,)))
                placed = True
                break
        if not placed:
            unplaced.append(x)
    while unplaced:
        x = unplaced.pop(0)
        mate = next((y for y in unplaced if C[x, y]), None)
        if mate is None:
            return None
        unplaced.remove(mate)
        blocks.append((x, mate))
    if len(blocks) < 2:
        return None
    if n_max is not None and len(blocks) > n_max:
        return None
    return _certified(G, A, blocks)


def find_partition(G: GroupTable, mode: str = "exact", n_max=None):
    """Search for an abelian partition; None means not found.

    Exact mode proves minimality (and nonexistence) for groups up to order
    24 by trying every abelian subgroup as A with backtracking clique cover
    of the rest.  Heuristic mode covers greedily by maximal abelian
    subgroups and repairs; its None is inconclusive.
    """
    if mode == "exact":
        cert = _find_exact(G)
        if cert is not None and n_max is not None and cert.n > n_max:
            return None
        return cert
    if mode == "heuristic":
        return _find_heuristic(G, n_max)
    raise ValueError(f"unknown search mode {mode!r}")


# ---------------------------------------------------------------- classifiers


def classify_2_abelian(G: GroupTable):
    """Detect the direct-product shape behind minimum block count 2.

    True exactly when G is (Sylow 2-subgroup P) x (abelian odd part Q) with
    P/Z(P) the Klein four-group.  The witness is the subgroup generated by
    the center and the first noncentral element.
    """
    if G.is_abelian():
        raise AbelianInput(f"{G.name} is abelian")
    n = G.order
    if n % 2:
        return False, None
    P = sylow_subgroups(G, 2)[0]
    orders = G.element_orders()
    odd = tuple(int(x) for x in np.nonzero(orders % 2 == 1)[0])
    if P.order * len(odd) != n:
        return False, None
    try:
        Q = make_subgroup(G, odd)
    except ValueError:
        return False, None
    if not Q.abelian:
        return False, None
    C = G.commute_matrix()
    if not C[np.ix_(P.elements, Q.elements)].all():
        return False, None
    P_tab = subgroup_table(G, P)
    Zp = center(P_tab)
    if P_tab.order != 4 * Zp.order:
        return False, None
    if not is_isomorphic_small(quotient(P_tab, Zp), "Z2xZ2"):
        return False, None
    central = set(G.center_indices())
    t = next(x for x in range(n) if x not in central)
    witness = subgroup_closure(G, tuple(central) + (t,))
    return True, witness


def classify_3_abelian(G: GroupTable):
    """Which central quotient shape behind minimum block count 3 holds.

    Returns "a" (quotient Klein four), "b" (quotient Z3 x Z3), "c"
    (quotient S3), or None; all three require a nontrivial center.
    """
    if G.is_abelian():
        raise AbelianInput(f"{G.name} is abelian")
    m = len(G.center_indices())
    if m < 2:
        return None
    idx = G.order // m
    targets = {4: ("Z2xZ2", "a"), 9: ("Z3xZ3", "b"), 6: ("S3", "c")}
    if idx not in targets:
        return None
    name, tag = targets[idx]
    quot = quotient(G, center(G))
    return tag if is_isomorphic_small(quot, name) else None


def frobenius_empty_complement(G: GroupTable):
    """Detect an abelian odd-order half whose outside is pairwise noncommuting.

    Looks for the odd-order elements forming an index-2 subgroup H such that
    no two outside elements commute.  Then every outside element is an
    involution, the commuting graph is a cone over (clique on H minus
    identity) plus isolated outside vertices, and the tree count is
    |H|^(|H|-2).  Returns (H, kappa) or None.
    """
    if G.is_abelian():
        return None
    n = G.order
    orders = G.element_orders()
    odd = tuple(int(x) for x in np.nonzero(orders % 2 == 1)[0])
    h = len(odd)
    if 2 * h != n:
        return None
    try:
        H = make_subgroup(G, odd)
    except ValueError:
        return None
    outside = sorted(set(range(n)) - set(odd))
    C = G.commute_matrix()
    out_arr = np.asarray(outside, dtype=np.int64)
    off = C[np.ix_(out_arr, out_arr)].copy()
    np.fill_diagonal(off, False)
    if off.any():
        return None
    # consequences of the structure, checked rather than trusted
    if not H.abelian:
        raise AssertionError("odd half with noncommuting outside must be abelian")
    if not (orders[out_arr] == 2).all():
        raise AssertionError("outside elements must be involutions")
    harr = np.asarray(odd, dtype=np.int64)
    if not C[np.ix_(harr, harr)].all():
        raise AssertionError("odd half must be a clique in the commuting graph")
    if h > 1 and not (C[out_arr][:, harr[1:]] == False).all():  # noqa: E712
        raise AssertionError("outside vertices may touch only the identity")
    kappa = pow(h, h - 2) if h >= 2 else 1
    return H, kappa
