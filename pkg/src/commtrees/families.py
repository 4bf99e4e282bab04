"""Named group families with canonical numbering.

Every family builds the same table for the same parameters on every run:
normal-form families (cyclic, metacyclic and its descendants, quaternion,
heisenberg) number elements lexicographically by their normal form,
permutation families number by lexicographic image tuple, and the matrix
families number by breadth-first closure from a fixed generator list.
Constructed tables are cached per parameter set.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .carriers import Mat, Perm
from .errors import BadParams, OrderCapExceeded, OrderMismatch
from .fields import build_field
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    generate_group,
    table_from_elements,
)


def _require_int(params, key, minimum=None):
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise BadParams(f"parameter {key!r} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise BadParams(f"parameter {key!r} must be >= {minimum}, got {v}")
    return v


def _check_cap(order: int) -> None:
    if order > DEFAULT_ORDER_CAP:
        raise OrderCapExceeded(
            f"family order {order} exceeds the cap {DEFAULT_ORDER_CAP}"
        )


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------- builders


def _build_cyclic(params):
    n = _require_int(params, "n", minimum=1)
    _check_cap(n)
    idx = np.arange(n, dtype=np.int64)
    table = (idx[:, None] + idx[None, :]) % n
    return GroupTable(table, labels=range(n), name=f"Z{n}")


def _metacyclic_table(a, b, u, name):
    """Group of order a*b on pairs (i, j): (i,j)*(k,l) = (i + k*u^j mod a, j+l mod b)."""
    n = a * b
    _check_cap(n)
    upow = np.empty(b, dtype=np.int64)
    acc = 1
    for j in range(b):
        upow[j] = acc
        acc = (acc * u) % a
    K = np.repeat(np.arange(a, dtype=np.int64), b)   # i-part by index
    L = np.tile(np.arange(b, dtype=np.int64), a)     # j-part by index
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = divmod(x, b)
        ni = (i + K * upow[j]) % a
        nj = (j + L) % b
        table[x] = ni * b + nj
    labels = [(i, j) for i in range(a) for j in range(b)]
    return GroupTable(table, labels=labels, name=name)


def _build_metacyclic(params):
    a = _require_int(params, "a", minimum=1)
    b = _require_int(params, "b", minimum=1)
    u = _require_int(params, "u", minimum=0)
    if math.gcd(u, a) != 1:
        raise BadParams(f"u={u} is not invertible mod a={a}")
    if pow(u, b, a) != 1 % a:
        raise BadParams(f"u^b = {u}^{b} is not 1 mod {a}")
    return _metacyclic_table(a, b, u % a, f"Meta({a},{b},{u})")


def _build_dihedral(params):
    k = _require_int(params, "k", minimum=3)
    _check_cap(2 * k)
    return _metacyclic_table(k, 2, k - 1, f"D{2 * k}")


def _build_semidihedral(params):
    k = _require_int(params, "k", minimum=4)
    _check_cap(2 ** k)
    a = 2 ** (k - 1)
    return _metacyclic_table(a, 2, 2 ** (k - 2) - 1, f"SD{2 ** k}")


def _build_modular_p3(params):
    p = _require_int(params, "p", minimum=2)
    if not _is_prime(p):
        raise BadParams(f"p={p} is not prime")
    _check_cap(p ** 3)
    return _metacyclic_table(p * p, p, 1 + p, f"M{p ** 3}")


def _build_generalized_quaternion(params):
    # presentation x^{2k} = 1, y^2 = x^k, y x y^{-1} = x^{-1};
    # elements x^i y^j with 0 <= i < 2k, j in {0, 1}
    k = _require_int(params, "k", minimum=2)
    n = 4 * k
    _check_cap(n)
    kk = 2 * k
    I = np.repeat(np.arange(kk, dtype=np.int64), 2)
    J = np.tile(np.arange(2, dtype=np.int64), kk)
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = divmod(x, 2)
        sign = -1 if j == 1 else 1
        carry = (j + J) // 2
        ni = (i + sign * I + k * carry) % kk
        nj = (j + J) % 2
        table[x] = ni * 2 + nj
    labels = [(i, j) for i in range(kk) for j in range(2)]
    return GroupTable(table, labels=labels, name=f"Q{n}")


def _build_heisenberg(params):
    # upper unitriangular 3x3 matrices over GF(p), coordinates (a, b, c)
    p = _require_int(params, "p", minimum=2)
    if not _is_prime(p):
        raise BadParams(f"p={p} is not prime")
    n = p ** 3
    _check_cap(n)
    idx = np.arange(n, dtype=np.int64)
    A = idx // (p * p)
    B = (idx // p) % p
    C = idx % p
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        a1, rem = divmod(x, p * p)
        b1, c1 = divmod(rem, p)
        na = (a1 + A) % p
        nb = (b1 + B) % p
        nc = (c1 + C + a1 * B) % p
        table[x] = (na * p + nb) * p + nc
    labels = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    return GroupTable(table, labels=labels, name=f"Heis({p})")


def _build_symmetric(params):
    d = _require_int(params, "d", minimum=1)
    order = math.factorial(d)
    _check_cap(order)
    elems = [Perm(img) for img in itertools.permutations(range(d))]
    table = table_from_elements(elems)
    return GroupTable(table, labels=elems, name=f"S{d}")


def _build_alternating(params):
    d = _require_int(params, "d", minimum=1)
    order = math.factorial(d) // 2 if d >= 2 else 1
    _check_cap(order)
    elems = [Perm(img) for img in itertools.permutations(range(d)) if Perm(img).is_even()]
    table = table_from_elements(elems)
    return GroupTable(table, labels=elems, name=f"A{d}")


def _build_L2(params):
    # SL(2, 2^k) = PSL(2, 2^k), generated by elementary transvections over
    # a GF(2)-basis of the field; a single pair of unit transvections only
    # generates SL(2, 2), so one generator per basis element is essential
    k = _require_int(params, "k", minimum=2)
    q = 2 ** k
    expected = q * (q * q - 1)
    _check_cap(expected)
    F = build_field(2, k)
    gens = []
    for i in range(k):
        e = 1 << i
        gens.append(Mat(F, 2, (1, e, 0, 1)))
        gens.append(Mat(F, 2, (1, 0, e, 1)))
    G = generate_group(gens, name=f"L2({q})")
    if G.order != expected:
        raise OrderMismatch(f"L2({q}) closure gave order {G.order}, expected {expected}")
    return G


def _build_GL2(params):
    q = _require_int(params, "q", minimum=2)
    if _is_prime(q):
        F = build_field(q)
        trans_units = [1]
    elif q == 4:
        F = build_field(2, 2)
        trans_units = [1, 2]
    else:
        raise BadParams(f"GL2 supports prime q or q=4, got q={q}")
    expected = (q * q - 1) * (q * q - q)
    _check_cap(expected)
    gens = []
    for e in trans_units:
        gens.append(Mat(F, 2, (1, e, 0, 1)))
        gens.append(Mat(F, 2, (1, 0, e, 1)))
    g = F.least_primitive()
    gens.append(Mat(F, 2, (g, 0, 0, 1)))
    G = generate_group(gens, name=f"GL2({q})")
    if G.order != expected:
        raise OrderMismatch(f"GL2({q}) closure gave order {G.order}, expected {expected}")
    return G


def direct_product(G1: GroupTable, G2: GroupTable) -> GroupTable:
    """Direct product on pairs, numbered lexicographically (i1, i2)."""
    n1, n2 = G1.order, G2.order
    _check_cap(n1 * n2)
    table = (
        np.repeat(np.repeat(G1.table.astype(np.int64), n2, axis=0), n2, axis=1) * n2
        + np.tile(G2.table.astype(np.int64), (n1, n1))
    )
    labels = [(a, b) for a in G1.labels for b in G2.labels]
    return GroupTable(table, labels=labels, name=f"{G1.name}x{G2.name}")


def _build_direct_product(params):
    if "factors" not in params:
        raise BadParams("direct_product requires a 'factors' parameter")
    factors = params["factors"]
    if not isinstance(factors, (list, tuple)) or len(factors) != 2:
        raise BadParams("direct_product takes exactly two factor specs")
    built = []
    for spec in factors:
        if isinstance(spec, dict):
            fname, fparams = spec.get("family"), spec.get("params", {})
        elif isinstance(spec, (list, tuple)) and len(spec) == 2:
            fname, fparams = spec
        else:
            raise BadParams(f"bad factor spec: {spec!r}")
        built.append(make_family(fname, **dict(fparams)))
    return direct_product(built[0], built[1])


_BUILDERS = {
    "cyclic": _build_cyclic,
    "metacyclic": _build_metacyclic,
    "dihedral": _build_dihedral,
    "semidihedral": _build_semidihedral,
    "modular_p3": _build_modular_p3,
    "generalized_quaternion": _build_generalized_quaternion,
    "quaternion": _build_generalized_quaternion,
    "heisenberg": _build_heisenberg,
    "symmetric": _build_symmetric,
    "alternating": _build_alternating,
    "L2": _build_L2,
    "GL2": _build_GL2,
    "direct_product": _build_direct_product,
}

_CACHE = {}


def _freeze(value):
    if isinstance(value, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in value.items()))
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


def family_names() -> tuple:
    return tuple(sorted(set(_BUILDERS) - {"quaternion"}))


def make_family(name: str, **params) -> GroupTable:
    """Build (or fetch from cache) a catalog group by family name."""
    if name not in _BUILDERS:
        raise BadParams(f"unknown family {name!r}")
    key = (name if name != "quaternion" else "generalized_quaternion", _freeze(params))
    got = _CACHE.get(key)
    if got is None:
        got = _BUILDERS[name](params)
        _CACHE[key] = got
    return got
