"""Finite groups as validated Cayley tables with canonical numbering.

A group is a dense int32 multiplication table over element indices 0..n-1,
index 0 always the identity.  Tables are validated at construction: identity
row and column, Latin square property, two-sided inverses, and associativity
(exhaustive up to 128 elements, at least 10*n^2 seeded random triples above
that).  Structure queries (center, classes, centralizers, orders) are cached
on the table object and computed with vectorized numpy throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .carriers import Mat, Perm, element_compose, element_identity
from .errors import (
    BadParams,
    CarrierMismatch,
    InvalidGenerator,
    NotNormal,
    OrderCapExceeded,
    PDoesNotDivideOrder,
    TargetTooLarge,
)

DEFAULT_ORDER_CAP = 8192

_EXHAUSTIVE_ASSOC_LIMIT = 128
_ASSOC_SAMPLE_FACTOR = 10
_ASSOC_CHUNK = 1 << 22


def _validate_table(table: np.ndarray, inv: np.ndarray) -> None:
    n = table.shape[0]
    if table.shape != (n, n):
        raise ValueError("multiplication table must be square")
    rng = np.arange(n, dtype=table.dtype)
    if not np.array_equal(table[0], rng) or not np.array_equal(table[:, 0], rng):
        raise ValueError("index 0 does not act as identity")
    if not (np.sort(table, axis=1) == rng).all():
        raise ValueError("table rows are not permutations")
    if not (np.sort(table, axis=0) == rng[:, None]).all():
        raise ValueError("table columns are not permutations")
    if not (table[rng, inv] == 0).all() or not (table[inv, rng] == 0).all():
        raise ValueError("inverse array is wrong")
    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        ab = table
        lhs = table[ab]            # lhs[a,b,c] = t[t[a,b], c]
        rhs = table[:, table]      # rhs[a,b,c] = t[a, t[b,c]]
        if not np.array_equal(lhs, rhs):
            raise ValueError("table is not associative")
    else:
        total = _ASSOC_SAMPLE_FACTOR * n * n
        gen = np.random.default_rng(100003 + n)
        done = 0
        while done < total:
            m = min(_ASSOC_CHUNK, total - done)
            a = gen.integers(0, n, size=m)
            b = gen.integers(0, n, size=m)
            c = gen.integers(0, n, size=m)
            if not (table[table[a, b], c] == table[a, table[b, c]]).all():
                raise ValueError("table is not associative (sampled check)")
            done += m


class GroupTable:
    """Immutable finite group given by its full multiplication table."""

    __slots__ = (
        "table",
        "inv",
        "labels",
        "name",
        "_commute",
        "_center",
        "_orders",
        "_classes",
        "_cent_distinct",
        "_cent_ids",
    )

    def __init__(self, table, labels=None, name="G", inv=None):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        n = table.shape[0]
        if inv is None:
            inv = np.nonzero(table == 0)[1].astype(np.int32)
        else:
            inv = np.asarray(inv, dtype=np.int32)
        _validate_table(table, inv)
        self.table = table
        self.inv = inv
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise ValueError("labels length does not match order")
        self.name = name
        self._commute = None
        self._center = None
        self._orders = None
        self._classes = None
        self._cent_distinct = None
        self._cent_ids = None

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse(self, i: int) -> int:
        return int(self.inv[i])

    # ------------------------------------------------------------ caches

    def commute_matrix(self) -> np.ndarray:
        """Boolean n x n matrix, True where elements commute."""
        if self._commute is None:
            self._commute = np.asarray(self.table == self.table.T)
        return self._commute

    def is_abelian(self) -> bool:
        return bool(self.commute_matrix().all())

    def center_indices(self) -> tuple:
        if self._center is None:
            mask = self.commute_matrix().all(axis=1)
            self._center = tuple(int(i) for i in np.nonzero(mask)[0])
        return self._center

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            rng = np.arange(n, dtype=np.int32)
            orders = np.zeros(n, dtype=np.int64)
            power = rng.copy()
            k = 1
            while (orders == 0).any():
                newly = (power == 0) & (orders == 0)
                orders[newly] = k
                power = self.table[power, rng]
                k += 1
                if k > n + 1:
                    raise AssertionError("element order exceeded group order")
            self._orders = orders
        return self._orders

    def conjugacy_classes(self) -> list:
        """Classes as sorted index tuples, ordered by least representative."""
        if self._classes is None:
            n = self.order
            if self.is_abelian():
                self._classes = [(i,) for i in range(n)]
                return self._classes
            seen = np.zeros(n, dtype=bool)
            out = []
            for x in range(n):
                if seen[x]:
                    continue
                cls = np.unique(self.table[self.table[:, x], self.inv])
                seen[cls] = True
                out.append(tuple(int(v) for v in cls))
            self._classes = out
        return self._classes

    def _centralizer_structure(self):
        """Distinct centralizers (as index tuples) and per-element ids."""
        if self._cent_distinct is None:
            C = self.commute_matrix()
            n = self.order
            distinct = []
            ids = np.empty(n, dtype=np.int64)
            lookup = {}
            for x in range(n):
                key = C[x].tobytes()
                cid = lookup.get(key)
                if cid is None:
                    cid = len(distinct)
                    lookup[key] = cid
                    distinct.append(tuple(int(v) for v in np.nonzero(C[x])[0]))
                ids[x] = cid
            self._cent_distinct = distinct
            self._cent_ids = ids
        return self._cent_distinct, self._cent_ids

    def centralizer_indices(self, x: int) -> tuple:
        distinct, ids = self._centralizer_structure()
        return distinct[int(ids[x])]

    def conjugate_set(self, g: int, elems) -> np.ndarray:
        """Image of an element set under conjugation by g, sorted."""
        arr = np.asarray(elems, dtype=np.int64)
        return np.unique(self.table[self.table[g, arr], self.inv[g]])


# ---------------------------------------------------------------- subgroups


@dataclass(frozen=True)
class Subgroup:
    """Subgroup as a sorted element-index tuple plus structure flags."""

    elements: tuple
    order: int
    abelian: bool
    normal: bool

    def to_json(self):
        return {
            "elements": list(self.elements),
            "order": self.order,
            "abelian": self.abelian,
            "normal": self.normal,
        }


def _check_closed(G: GroupTable, elems: np.ndarray) -> bool:
    member = np.zeros(G.order, dtype=bool)
    member[elems] = True
    prods = G.table[np.ix_(elems, elems)]
    return bool(member[prods].all())


def _is_union_of_classes(G: GroupTable, member: np.ndarray) -> bool:
    for cls in G.conjugacy_classes():
        arr = np.asarray(cls)
        hit = member[arr]
        if hit.any() and not hit.all():
            return False
    return True


def make_subgroup(G: GroupTable, elems) -> Subgroup:
    """Validate an element set as a subgroup and compute its flags."""
    arr = np.unique(np.asarray(sorted(set(int(e) for e in elems)), dtype=np.int64))
    if len(arr) == 0 or arr[0] != 0:
        raise ValueError("subgroup must contain the identity (index 0)")
    if arr[-1] >= G.order or arr[0] < 0:
        raise ValueError("subgroup indices out of range")
    if not _check_closed(G, arr):
        raise ValueError("element set is not closed under multiplication")
    member = np.zeros(G.order, dtype=bool)
    member[arr] = True
    abelian = bool(G.commute_matrix()[np.ix_(arr, arr)].all())
    normal = _is_union_of_classes(G, member)
    return Subgroup(tuple(int(v) for v in arr), int(len(arr)), abelian, normal)


def subgroup_closure(G: GroupTable, seeds) -> Subgroup:
    """Smallest subgroup containing the seed indices."""
    T = G.table
    members = {0}
    members.update(int(s) for s in seeds)
    queue = deque(sorted(members))
    while queue:
        x = queue.popleft()
        for y in list(members):
            for z in (int(T[x, y]), int(T[y, x])):
                if z not in members:
                    members.add(z)
                    queue.append(z)
    return make_subgroup(G, members)


def centralizer(G: GroupTable, x: int) -> Subgroup:
    if not (0 <= x < G.order):
        raise ValueError(f"element index {x} out of range")
    return make_subgroup(G, G.centralizer_indices(x))


def center(G: GroupTable) -> Subgroup:
    return make_subgroup(G, G.center_indices())


def is_ac_group(G: GroupTable) -> bool:
    """True when every centralizer of a noncentral element is abelian."""
    distinct, ids = G._centralizer_structure()
    central = set(G.center_indices())
    C = G.commute_matrix()
    checked = set()
    for x in range(G.order):
        if x in central:
            continue
        cid = int(ids[x])
        if cid in checked:
            continue
        checked.add(cid)
        arr = np.asarray(distinct[cid])
        if not C[np.ix_(arr, arr)].all():
            return False
    return True


def is_ti_subgroup(G: GroupTable, H: Subgroup) -> bool:
    """Trivial-intersection test: every conjugate of H meets H in 1 or all of H."""
    arr = np.asarray(H.elements, dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[arr] = True
    for g in range(G.order):
        conj = G.conjugate_set(g, arr)
        inter = int(mask[conj].sum())
        if inter != 1 and inter != H.order:
            return False
    return True


def subgroup_table(G: GroupTable, H: Subgroup, name=None) -> GroupTable:
    """Multiplication table of H reindexed to 0..|H|-1 in element order."""
    arr = np.asarray(H.elements, dtype=np.int64)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[arr] = np.arange(len(arr))
    sub = pos[G.table[np.ix_(arr, arr)]]
    if (sub < 0).any():
        raise ValueError("element set is not closed under multiplication")
    return GroupTable(
        sub,
        labels=tuple(int(v) for v in arr),
        name=name or f"{G.name}|{H.order}",
    )


def quotient(G: GroupTable, N) -> GroupTable:
    """Quotient by a normal subgroup, cosets labeled by least representatives."""
    if not isinstance(N, Subgroup):
        N = make_subgroup(G, N)
    if not N.normal:
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    n = G.order
    narr = np.asarray(N.elements, dtype=np.int64)
    coset_id = np.full(n, -1, dtype=np.int64)
    reps = []
    for x in range(n):
        if coset_id[x] >= 0:
            continue
        coset = G.table[x, narr]
        coset_id[coset] = len(reps)
        reps.append(x)
    reps_arr = np.asarray(reps, dtype=np.int64)
    qtab = coset_id[G.table[np.ix_(reps_arr, reps_arr)]]
    return GroupTable(
        qtab,
        labels=tuple(int(r) for r in reps),
        name=f"{G.name}/{N.order}",
    )


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True)
class GroupProfile:
    order: int
    center_size: int
    class_count: int
    class_sizes: tuple
    element_order_spectrum: tuple
    max_spectrum: tuple
    centralizer_count: int
    is_ac: bool

    def to_json(self):
        return {
            "order": self.order,
            "center_size": self.center_size,
            "class_count": self.class_count,
            "class_sizes": list(self.class_sizes),
            "element_order_spectrum": list(self.element_order_spectrum),
            "max_spectrum": list(self.max_spectrum),
            "centralizer_count": self.centralizer_count,
            "is_ac": self.is_ac,
        }


def profile(G: GroupTable) -> GroupProfile:
    classes = G.conjugacy_classes()
    orders = G.element_orders()
    spectrum = sorted(set(int(o) for o in orders))
    maximal = [
        o for o in spectrum
        if not any(o2 != o and o2 % o == 0 for o2 in spectrum)
    ]
    distinct, _ = G._centralizer_structure()
    return GroupProfile(
        order=G.order,
        center_size=len(G.center_indices()),
        class_count=len(classes),
        class_sizes=tuple(sorted(set(len(c) for c in classes))),
        element_order_spectrum=tuple(spectrum),
        max_spectrum=tuple(maximal),
        centralizer_count=len(distinct),
        is_ac=is_ac_group(G),
    )


# ------------------------------------------------------- small isomorphism

# fingerprint: (order, abelian, sorted multiset of element orders)
_SMALL_TARGETS = {
    "trivial": (1, True, (1,)),
    "Z4": (4, True, (1, 2, 4, 4)),
    "Z2xZ2": (4, True, (1, 2, 2, 2)),
    "Z6": (6, True, (1, 2, 3, 3, 6, 6)),
    "S3": (6, False, (1, 2, 2, 2, 3, 3)),
    "Z9": (9, True, (1, 3, 3, 9, 9, 9, 9, 9, 9)),
    "Z3xZ3": (9, True, (1, 3, 3, 3, 3, 3, 3, 3, 3)),
}


def is_isomorphic_small(G: GroupTable, target: str) -> bool:
    """Isomorphism against a small catalog where the fingerprint decides.

    Valid targets: trivial, Z4, Z2xZ2, Z6, S3, Z9, Z3xZ3.  Groups of order
    at most 9 are determined up to isomorphism by (order, abelian flag,
    element order multiset), so the test is exact.
    """
    if target not in _SMALL_TARGETS:
        raise BadParams(f"unknown small target {target!r}")
    if G.order > 9:
        raise TargetTooLarge(f"group of order {G.order} exceeds the small catalog")
    fp = (
        G.order,
        G.is_abelian(),
        tuple(sorted(int(o) for o in G.element_orders())),
    )
    return fp == _SMALL_TARGETS[target]


# ---------------------------------------------------------------- Sylow


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def sylow_subgroups(G: GroupTable, p: int) -> list:
    """All Sylow p-subgroups, sorted by element tuple.

    One Sylow subgroup is grown greedily inside its normalizer, then the
    full conjugation orbit is taken.  The returned count is checked against
    the congruence count = 1 mod p.
    """
    if not _is_prime(p):
        raise BadParams(f"{p} is not prime")
    n = G.order
    if n % p != 0:
        raise PDoesNotDivideOrder(f"{p} does not divide group order {n}")
    pa = 1
    while n % (pa * p) == 0:
        pa *= p
    orders = G.element_orders()

    S = {0}
    while len(S) < pa:
        sarr = np.asarray(sorted(S), dtype=np.int64)
        grown = False
        for g in range(n):
            if g in S or not _is_power_of(int(orders[g]), p):
                continue
            if not np.array_equal(G.conjugate_set(g, sarr), sarr):
                continue
            # g normalizes S, so S * <g> is a p-subgroup
            pows = [g]
            x = g
            while x != 0:
                x = int(G.table[x, g])
                pows.append(x)
            bigger = np.unique(G.table[np.ix_(sarr, np.asarray(pows))])
            if len(bigger) > len(S):
                S = set(int(v) for v in bigger)
                grown = True
                break
        if not grown:
            raise AssertionError("Sylow growth stalled below full order")

    base = np.asarray(sorted(S), dtype=np.int64)
    seen = {}
    for g in range(n):
        conj = G.conjugate_set(g, base)
        mask = np.zeros(n, dtype=bool)
        mask[conj] = True
        key = mask.tobytes()
        if key not in seen:
            seen[key] = tuple(int(v) for v in conj)
    if len(seen) % p != 1:
        raise AssertionError("Sylow count violates the mod-p congruence")
    subs = [make_subgroup(G, elems) for elems in seen.values()]
    subs.sort(key=lambda H: H.elements)
    return subs


# ---------------------------------------------------------------- closure


def _perm_fast_table(elems, d):
    P = np.array([e.image for e in elems], dtype=np.int64)
    powers = np.array([d ** k for k in range(d)], dtype=np.int64)
    codes = P @ powers
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        prod_codes = P[i][P] @ powers
        pos = np.searchsorted(sorted_codes, prod_codes)
        if not (sorted_codes[pos] == prod_codes).all():
            raise AssertionError("closure lookup failed for permutations")
        table[i] = order[pos]
    return table


def _mat_fast_table(elems, field, dim):
    q = field.q
    E = np.array([e.entries for e in elems], dtype=np.int64)
    MUL = field.mul_table().astype(np.int64)
    ADD = field.add_table().astype(np.int64)
    k = dim * dim
    weights = np.array([q ** (k - 1 - t) for t in range(k)], dtype=np.int64)
    codes = E @ weights
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    cols = [E[:, t] for t in range(k)]
    for i in range(n):
        a = E[i]
        prod_codes = np.zeros(n, dtype=np.int64)
        for r in range(dim):
            for c in range(dim):
                acc = MUL[a[r * dim], cols[c]]
                for t in range(1, dim):
                    acc = ADD[acc, MUL[a[r * dim + t], cols[t * dim + c]]]
                prod_codes = prod_codes * q + acc
        pos = np.searchsorted(sorted_codes, prod_codes)
        if not (sorted_codes[pos] == prod_codes).all():
            raise AssertionError("closure lookup failed for matrices")
        table[i] = order[pos]
    return table


def _build_table_from_elements(elems, index):
    n = len(elems)
    first = elems[0]
    if n > 256:
        if isinstance(first, Perm) and first.points <= 15:
            return _perm_fast_table(elems, first.points)
        if isinstance(first, Mat) and first.field.q ** (first.dim ** 2) < 2 ** 63 \
                and first.field.q <= 256:
            return _mat_fast_table(elems, first.field, first.dim)
    table = np.empty((n, n), dtype=np.int32)
    for i, x in enumerate(elems):
        row = table[i]
        for j, y in enumerate(elems):
            row[j] = index[element_compose(x, y)]
    return table


def table_from_elements(elems) -> np.ndarray:
    """Multiplication table for a complete, closed element list.

    The list order defines the numbering; elems[0] must be the identity.
    """
    index = {e: i for i, e in enumerate(elems)}
    return _build_table_from_elements(elems, index)


def generate_group(generators, order_cap=DEFAULT_ORDER_CAP, name=None) -> GroupTable:
    """Close a generator list into a full group table.

    Elements are numbered in breadth-first discovery order from the
    identity, multiplying by generators in the given order, so the
    numbering is reproducible for a fixed generator list.
    """
    generators = list(generators)
    if not generators:
        raise InvalidGenerator("at least one generator is required")
    first = generators[0]
    for i, g in enumerate(generators):
        if not isinstance(g, (Perm, Mat)):
            raise InvalidGenerator(f"generators[{i}] is not a carrier element")
        if type(g) is not type(first):
            raise CarrierMismatch("generators mix permutation and matrix carriers")
        if isinstance(g, Mat) and g.det() == 0:
            raise InvalidGenerator(f"generators[{i}] is a singular matrix")
    ident = element_identity(first)
    elems = [ident]
    index = {ident: 0}
    dq = deque([ident])
    while dq:
        x = dq.popleft()
        for g in generators:
            y = element_compose(x, g)
            if y not in index:
                if len(elems) >= order_cap:
                    raise OrderCapExceeded(
                        f"closure exceeded the order cap {order_cap}"
                    )
                index[y] = len(elems)
                elems.append(y)
                dq.append(y)
    table = _build_table_from_elements(elems, index)
    return GroupTable(table, labels=elems, name=name or f"gen<{len(generators)}>")
