"""Spanning tree counts by independent exact engines.

Three routes to the tree number of a commuting graph: fraction-free integer
elimination on the reduced Laplacian (the matrix-tree determinant), the same
determinant computed modulo a fixed prime pool and reconstructed by CRT for
graphs too large for big-integer elimination, and the structural product
formula for groups whose noncentral centralizers are abelian.  All three
must agree exactly wherever more than one applies; kappa_auto picks a
sensible engine and records cross-check agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import gmpy2
import numpy as np

from ._primes import PRIMES31
from .commgraph import CommGraph, centralizer_decomposition, commuting_graph
from .errors import ExactCapExceeded
from .groups import GroupTable

MATRIX_TREE_CAP = 1000
CROSS_CHECK_CAP = 200


@dataclass(frozen=True)
class KappaResult:
    """Exact tree number with provenance."""

    value: int
    method: str
    factors: tuple | None
    engines_agreed: bool = True
    notes: tuple = ()

    def to_json(self):
        return {
            "value": str(self.value),
            "method": self.method,
            "factors": None if self.factors is None else [list(f) for f in self.factors],
            "engines_agreed": self.engines_agreed,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------- factoring


def factor_int(x: int) -> tuple:
    """Trial-division factorization, (prime, exponent) pairs ascending."""
    if x < 1:
        raise ValueError(f"cannot factor {x}")
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            e = 0
            while x % d == 0:
                x //= d
                e += 1
            out.append((d, e))
        d += 1
    if x > 1:
        out.append((x, 1))
    return tuple(out)


def merge_factored_powers(base_exponents) -> tuple:
    """Factor each (base, exponent) pair and combine into one factorization."""
    acc = {}
    for base, exp in base_exponents:
        if exp == 0 or base == 1:
            continue
        if exp < 0:
            raise ValueError("negative exponent in factored product")
        for p, e in factor_int(base):
            acc[p] = acc.get(p, 0) + e * exp
    return tuple(sorted(acc.items()))


def factored_value(factors) -> int:
    v = 1
    for p, e in factors:
        v *= pow(p, e)
    return v


# ---------------------------------------------------------------- Laplacians


def _adjacency_matrix(graph: CommGraph) -> np.ndarray:
    n = graph.n
    nbytes = (n + 7) // 8
    raw = b"".join(m.to_bytes(nbytes, "little") for m in graph.adj)
    bits = np.unpackbits(
        np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes),
        axis=1,
        bitorder="little",
    )[:, :n]
    return bits.astype(np.int64)


def _reduced_laplacian(graph: CommGraph) -> np.ndarray:
    """Laplacian with row and column of vertex position 0 deleted."""
    A = _adjacency_matrix(graph)
    L = np.diag(A.sum(axis=1)) - A
    return L[1:, 1:]


def _bareiss_determinant(M) -> int:
    """Fraction-free elimination; M is a list of gmpy2.mpz rows, consumed."""
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = gmpy2.mpz(1)
    for k in range(n - 1):
        piv_row = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv_row is None:
            return 0
        if piv_row != k:
            M[k], M[piv_row] = M[piv_row], M[k]
            sign = -sign
        pk = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pk * rowi[j] - f * rowk[j]) // prev
            rowi[k] = gmpy2.mpz(0)
        prev = pk
    return int(sign * M[n - 1][n - 1])


def kappa_matrix_tree(graph: CommGraph) -> KappaResult:
    """Exact tree number by integer elimination on the reduced Laplacian."""
    if not graph.is_connected():
        return KappaResult(0, "matrix_tree", None, notes=("disconnected",))
    if graph.n > MATRIX_TREE_CAP:
        raise ExactCapExceeded(
            f"{graph.n} vertices exceed the matrix-tree cap {MATRIX_TREE_CAP}"
        )
    if graph.n == 1:
        return KappaResult(1, "matrix_tree", None)
    red = _reduced_laplacian(graph)
    rows = [[gmpy2.mpz(int(v)) for v in row] for row in red]
    det = _bareiss_determinant(rows)
    if det < 0:
        raise AssertionError("reduced Laplacian determinant came out negative")
    return KappaResult(det, "matrix_tree", None)


# ---------------------------------------------------------------- modular


def _det_mod_p(B: np.ndarray, p: int) -> int:
    """Determinant of an int64 matrix modulo a prime below 2^31."""
    M = B % p
    m = M.shape[0]
    det = 1
    for k in range(m):
        col = M[k:, k]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            return 0
        i = k + int(nz[0])
        if i != k:
            M[[k, i]] = M[[i, k]]
            det = (-det) % p
        piv = int(M[k, k])
        det = (det * piv) % p
        if k + 1 < m:
            inv = pow(piv, p - 2, p)
            factors = (M[k + 1:, k] * inv) % p
            # factors and row entries are both < p < 2^31, products fit int64
            M[k + 1:, k:] = (M[k + 1:, k:] - factors[:, None] * M[k, k:][None, :] % p) % p
    return det


def _crt_fold(residues, primes) -> int:
    x = 0
    modulus = 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(modulus, -1, p)) % p
        x += modulus * t
        modulus *= p
    return x


def default_bit_bound(graph: CommGraph) -> int:
    """Certified Hadamard-type bound on log2 of the determinant."""
    maxdeg = max(graph.degree(i) for i in range(graph.n))
    return math.ceil((graph.n - 1) * math.log2(maxdeg + 1)) + 2


def kappa_modular(graph: CommGraph, bit_bound: int | None = None) -> KappaResult:
    """Tree number via determinants modulo the fixed prime pool, CRT-combined.

    The prime pool is the hard-coded descending list of the 400 largest
    primes below 2^31; primes are consumed from the front until their product
    exceeds the bit bound, so a given graph always uses the same primes.
    """
    if not graph.is_connected():
        return KappaResult(0, "modular_crt", None, notes=("disconnected",))
    if graph.n == 1:
        return KappaResult(1, "modular_crt", None)
    if bit_bound is None:
        bit_bound = default_bit_bound(graph)
    primes = []
    got_bits = 0.0
    for p in PRIMES31:
        if got_bits > bit_bound:
            break
        primes.append(p)
        got_bits += math.log2(p)
    if got_bits <= bit_bound:
        raise ExactCapExceeded(
            f"prime pool certifies {int(got_bits)} bits, bound needs {bit_bound}"
        )
    B = _reduced_laplacian(graph)
    residues = [_det_mod_p(B, p) for p in primes]
    value = _crt_fold(residues, primes)
    return KappaResult(value, "modular_crt", None, notes=(f"primes={len(primes)}",))


# ---------------------------------------------------------------- structural


def kappa_ac(G: GroupTable) -> KappaResult:
    """Tree number of C(G) from the centralizer-clique structure of an AC-group.

    With n = |G|, m = |Z(G)|, and noncentral centralizer blocks of sizes
    m_1..m_t, the count is n^(m-1) * m^(t-1) * prod (m_i + m)^(m_i - 1).
    """
    blocks = centralizer_decomposition(G)
    n = G.order
    m = len(G.center_indices())
    t = sum(mult for _, mult in blocks)
    if t == 0:
        # Abelian input: no noncentral blocks, C(G) is the complete graph.
        if n <= 2:
            return KappaResult(1, "ac_structure", ())
        factors = merge_factored_powers([(n, n - 2)])
        return KappaResult(factored_value(factors), "ac_structure", factors)
    pairs = [(n, m - 1), (m, t - 1)]
    for size, mult in blocks:
        pairs.append((size + m, (size - 1) * mult))
    factors = merge_factored_powers(pairs)
    value = factored_value(factors)
    return KappaResult(value, "ac_structure", factors)


def _kappa_abelian(G: GroupTable) -> KappaResult:
    n = G.order
    if n <= 2:
        return KappaResult(1, "spectrum", ())
    factors = merge_factored_powers([(n, n - 2)])
    return KappaResult(factored_value(factors), "spectrum", factors)


def kappa_auto(G: GroupTable) -> KappaResult:
    """Engine dispatch: complete graph for abelian groups, structural formula
    with a matrix-tree cross-check for small AC-groups, determinants otherwise."""
    from .groups import is_ac_group

    if G.is_abelian():
        return _kappa_abelian(G)
    if is_ac_group(G):
        res = kappa_ac(G)
        if G.order <= CROSS_CHECK_CAP:
            other = kappa_matrix_tree(commuting_graph(G))
            res = replace(
                res,
                engines_agreed=other.value == res.value,
                notes=res.notes + ("cross-check=matrix_tree",),
            )
        return res
    graph = commuting_graph(G)
    if graph.n <= MATRIX_TREE_CAP:
        return kappa_matrix_tree(graph)
    return kappa_modular(graph)
