"""Commuting graphs and noncommuting (independent) sets.

The commuting graph C(X) has vertex set X, a subset of a group's elements,
with an edge between distinct u, v whenever they commute in the table.
Adjacency is stored one bitmask per vertex, so set operations in the search
routines are single big-int operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotACGroup, NotMaximumWitness
from .groups import GroupTable

EXACT_MIS_CAP = 600


def _pack_rows(mat: np.ndarray) -> tuple:
    """Bool matrix rows to little-endian int bitmasks."""
    packed = np.packbits(mat, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


class CommGraph:
    """Simple undirected graph with bitset adjacency and element-index vertices."""

    __slots__ = ("vertices", "adj", "group", "name")

    def __init__(self, vertices, adj, group=None, name="graph"):
        self.vertices = tuple(int(v) for v in vertices)
        self.adj = tuple(adj)
        self.group = group
        self.name = name
        n = len(self.vertices)
        if len(self.adj) != n:
            raise ValueError("adjacency length does not match vertex count")
        if n:
            for i, mask in enumerate(self.adj):
                if mask >> n:
                    raise ValueError("adjacency mask wider than vertex count")
            nbytes = (n + 7) // 8
            raw = b"".join(m.to_bytes(nbytes, "little") for m in self.adj)
            bits = np.unpackbits(
                np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes),
                axis=1,
                bitorder="little",
            )[:, :n]
            if bits.trace() != 0:
                raise ValueError("adjacency has loops")
            if not (bits == bits.T).all():
                raise ValueError("adjacency is not symmetric")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, pos: int) -> int:
        return self.adj[pos].bit_count()

    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def has_edge(self, pos_u: int, pos_v: int) -> bool:
        return bool((self.adj[pos_u] >> pos_v) & 1)

    def is_connected(self) -> bool:
        n = self.n
        if n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= self.adj[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~seen
            seen |= frontier
        return seen.bit_count() == n

    def edges(self):
        """Yield (u, v) element-index pairs with u-position < v-position."""
        for i in range(self.n):
            rest = self.adj[i] >> (i + 1)
            j = i + 1
            while rest:
                if rest & 1:
                    yield (self.vertices[i], self.vertices[j])
                rest >>= 1
                j += 1

    def edge_list_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def __repr__(self):
        return f"CommGraph({self.name}, n={self.n}, edges={self.edge_count()})"


def commuting_graph(G: GroupTable, X=None) -> CommGraph:
    """Commuting graph on the element subset X (all of G by default)."""
    if X is None:
        verts = np.arange(G.order, dtype=np.int64)
    else:
        verts = np.unique(np.asarray([int(x) for x in X], dtype=np.int64))
        if len(verts) and (verts[0] < 0 or verts[-1] >= G.order):
            raise ValueError("vertex subset contains out-of-range indices")
    C = G.commute_matrix()
    sub = C[np.ix_(verts, verts)].copy()
    np.fill_diagonal(sub, False)
    graph = CommGraph(verts, _pack_rows(sub), group=G, name=f"C({G.name})")
    if 0 in set(int(v) for v in verts):
        # the identity commutes with everything, so the graph must be connected
        if not graph.is_connected():
            raise AssertionError("graph containing the identity is disconnected")
    return graph


def from_adjacency(matrix, vertices=None, name="graph") -> CommGraph:
    """Wrap an explicit boolean adjacency matrix (used for realized models)."""
    mat = np.asarray(matrix, dtype=bool).copy()
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("adjacency matrix must be square")
    np.fill_diagonal(mat, False)
    if not (mat == mat.T).all():
        raise ValueError("adjacency matrix must be symmetric")
    if vertices is None:
        vertices = range(n)
    return CommGraph(vertices, _pack_rows(mat), group=None, name=name)


def noncommuting_graph(G: GroupTable, X=None) -> CommGraph:
    """Complement of the commuting graph on X; kept for inspection tooling."""
    base = commuting_graph(G, X)
    n = base.n
    full = (1 << n) - 1
    adj = tuple((full ^ base.adj[i]) & ~(1 << i) for i in range(n))
    return CommGraph(base.vertices, adj, group=G, name=f"NC({G.name})")


def universal_vertices(graph: CommGraph) -> tuple:
    """Element indices adjacent to every other vertex."""
    n = graph.n
    return tuple(
        graph.vertices[i] for i in range(n) if graph.degree(i) == n - 1
    )


# ------------------------------------------------------- independent sets


@dataclass(frozen=True)
class NoncommutingSet:
    """Pairwise noncommuting elements; maximum means certified by search."""

    elements: tuple
    maximum: bool
    note: str | None = None

    @property
    def size(self) -> int:
        return len(self.elements)


def _greedy_independent(adj, n) -> int:
    """Deterministic min-degree greedy; returns a bitmask."""
    alive = (1 << n) - 1
    chosen = 0
    while alive:
        best_v = -1
        best_deg = n + 1
        m = alive
        while m:
            low = m & -m
            v = low.bit_length() - 1
            deg = (adj[v] & alive).bit_count()
            if deg < best_deg:
                best_deg = deg
                best_v = v
            m ^= low
        chosen |= 1 << best_v
        alive &= ~(adj[best_v] | (1 << best_v))
    return chosen


def _clique_cover_bound(adj, cand, order) -> int:
    """Greedy clique cover size of the candidate set; an upper bound on its MIS."""
    cliques = []
    for v in order:
        bit = 1 << v
        if not (cand & bit):
            continue
        for idx, cm in enumerate(cliques):
            if cm & ~adj[v] == 0:
                cliques[idx] = cm | bit
                break
        else:
            cliques.append(bit)
    return len(cliques)


def independence_number(graph: CommGraph, exact_cap: int = EXACT_MIS_CAP):
    """Maximum independent set size with witness.

    Above the exact cap no search is attempted: the greedy lower bound comes
    back with maximum=False and a lower-bound-only note.
    """
    n = graph.n
    adj = graph.adj
    if n == 0:
        return 0, NoncommutingSet((), True)
    greedy_mask = _greedy_independent(adj, n)
    if n > exact_cap:
        elems = tuple(graph.vertices[i] for i in range(n) if (greedy_mask >> i) & 1)
        return len(elems), NoncommutingSet(elems, False, "lower-bound-only")

    # branch on vertices in degree-descending order, position as tie-break
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    best_size = greedy_mask.bit_count()
    best_mask = greedy_mask
    full = (1 << n) - 1

    def search(cand, size, chosen):
        nonlocal best_size, best_mask
        if cand == 0:
            if size > best_size:
                best_size = size
                best_mask = chosen
            return
        if size + cand.bit_count() <= best_size:
            return
        if size + _clique_cover_bound(adj, cand, order) <= best_size:
            return
        v = next(u for u in order if (cand >> u) & 1)
        bit = 1 << v
        search(cand & ~(adj[v] | bit), size + 1, chosen | bit)
        search(cand & ~bit, size, chosen)

    search(full, 0, 0)
    elems = tuple(graph.vertices[i] for i in range(n) if (best_mask >> i) & 1)
    return best_size, NoncommutingSet(elems, True)


def centralizer_core_abelian(G: GroupTable, S: NoncommutingSet) -> bool:
    """Whether the common centralizer of a maximum noncommuting set is abelian.

    The witness is re-verified first: its elements must pairwise noncommute
    and its size must equal the exact independence number of C(G).
    """
    C = G.commute_matrix()
    elems = [int(x) for x in S.elements]
    for a in elems:
        for b in elems:
            if a != b and C[a, b]:
                raise NotMaximumWitness(f"elements {a} and {b} commute")
    size, _ = independence_number(commuting_graph(G))
    if not S.maximum or len(elems) != size:
        raise NotMaximumWitness(
            f"witness size {len(elems)} vs exact independence number {size}"
        )
    core = np.ones(G.order, dtype=bool)
    for a in elems:
        core &= C[a]
    idx = np.nonzero(core)[0]
    return bool(C[np.ix_(idx, idx)].all())


# ------------------------------------------------- centralizer decomposition


def noncentral_centralizer_sets(G: GroupTable) -> list:
    """Distinct centralizers of noncentral elements, each a sorted index tuple."""
    central = set(G.center_indices())
    distinct, ids = G._centralizer_structure()
    out = []
    seen = set()
    for x in range(G.order):
        if x in central:
            continue
        cid = int(ids[x])
        if cid not in seen:
            seen.add(cid)
            out.append(distinct[cid])
    out.sort()
    return out


def centralizer_decomposition(G: GroupTable) -> list:
    """Clique sizes of the noncentral commuting graph of an AC-group.

    Returns (m_i, multiplicity) pairs sorted by m_i descending, where m_i is
    the size of a noncentral centralizer minus the center.  Requires every
    noncentral centralizer abelian; then the noncentral graph is a disjoint
    union of cliques, one per distinct centralizer.
    """
    from .groups import is_ac_group

    if not is_ac_group(G):
        raise NotACGroup(f"{G.name} has a nonabelian noncentral centralizer")
    m = len(G.center_indices())
    n = G.order
    central = set(G.center_indices())
    sizes = []
    covered = 0
    for cent in noncentral_centralizer_sets(G):
        block = [x for x in cent if x not in central]
        sizes.append(len(block))
        covered += len(block)
    if covered != n - m:
        raise AssertionError("centralizer blocks do not partition the noncentral part")
    counts = {}
    for s in sizes:
        counts[s] = counts.get(s, 0) + 1
    return sorted(counts.items(), key=lambda kv: -kv[0])


def clique_model(G: GroupTable):
    """Clique-expression model of C(G): K_n for abelian, join of center and
    centralizer cliques for AC-groups."""
    from .spectra import Complete, Disjoint, Join

    if G.is_abelian():
        return Complete(G.order)
    blocks = centralizer_decomposition(G)
    parts = []
    for size, mult in blocks:
        parts.extend([Complete(size)] * mult)
    delta = parts[0] if len(parts) == 1 else Disjoint(tuple(parts))
    return Join(Complete(len(G.center_indices())), delta)
