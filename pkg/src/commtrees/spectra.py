"""Symbolic Laplacian spectra of clique expressions.

A clique expression is a tree over complete graphs K_s and empty graphs E_s
combined by disjoint union and join.  Such graphs have integer Laplacian
spectra computable by two rewrite rules: the spectrum of a union is the
multiset sum, and the join rule shifts each side by the other's vertex count,
replaces one zero per side, and contributes the total count and a fresh zero.
All arithmetic is exact; the tree number comes out of the spectrum as the
product of nonzero eigenvalues over the vertex count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonIntegerResult


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Complete:
    s: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"complete graph needs s >= 1, got {self.s}")

    @property
    def n(self) -> int:
        return self.s


@dataclass(frozen=True)
class Empty:
    s: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"empty graph needs s >= 1, got {self.s}")

    @property
    def n(self) -> int:
        return self.s


@dataclass(frozen=True)
class Disjoint:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 1:
            raise ValueError("disjoint union needs at least one part")

    @property
    def n(self) -> int:
        return sum(p.n for p in self.parts)


@dataclass(frozen=True)
class Join:
    left: object
    right: object

    @property
    def n(self) -> int:
        return self.left.n + self.right.n


# ---------------------------------------------------------------- text syntax


def format_expr(e) -> str:
    if isinstance(e, Complete):
        return f"K{e.s}"
    if isinstance(e, Empty):
        return f"E{e.s}"
    if isinstance(e, Disjoint):
        return "U(" + ",".join(format_expr(p) for p in e.parts) + ")"
    if isinstance(e, Join):
        return f"J({format_expr(e.left)},{format_expr(e.right)})"
    raise ValueError(f"not a clique expression: {e!r}")


def parse_expr(text: str):
    """Parse the K5 / E3 / U(...) / J(a,b) syntax."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def fail(msg):
        raise ValueError(f"parse error at position {pos}: {msg}")

    def parse_int():
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            fail("expected a number")
        return int(text[start:pos])

    def parse_node():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            fail("unexpected end of input")
        c = text[pos]
        if c == "K":
            pos += 1
            return Complete(parse_int())
        if c == "E":
            pos += 1
            return Empty(parse_int())
        if c in ("U", "J"):
            kind = c
            pos += 1
            skip_ws()
            if pos >= len(text) or text[pos] != "(":
                fail("expected '('")
            pos += 1
            parts = [parse_node()]
            skip_ws()
            while pos < len(text) and text[pos] == ",":
                pos += 1
                parts.append(parse_node())
                skip_ws()
            if pos >= len(text) or text[pos] != ")":
                fail("expected ')'")
            pos += 1
            if kind == "U":
                return Disjoint(tuple(parts))
            if len(parts) != 2:
                fail("join takes exactly two arguments")
            return Join(parts[0], parts[1])
        fail(f"unexpected character {c!r}")

    node = parse_node()
    skip_ws()
    if pos != len(text):
        fail("trailing input")
    return node


# ---------------------------------------------------------------- spectra


@dataclass(frozen=True)
class LapSpectrum:
    """Integer eigenvalue multiset, pairs (value, multiplicity) sorted descending."""

    pairs: tuple
    n: int

    def __post_init__(self):
        total = 0
        prev = None
        for v, m in self.pairs:
            if v < 0 or m < 1:
                raise ValueError("eigenvalues must be >= 0 with positive multiplicity")
            if prev is not None and v >= prev:
                raise ValueError("pairs must be strictly descending by value")
            prev = v
            total += m
        if total != self.n:
            raise ValueError(f"multiplicities sum to {total}, expected {self.n}")

    @classmethod
    def from_counts(cls, counts: dict) -> "LapSpectrum":
        pairs = tuple(sorted(counts.items(), key=lambda kv: -kv[0]))
        return cls(pairs, sum(m for _, m in pairs))

    def multiplicity(self, value: int) -> int:
        for v, m in self.pairs:
            if v == value:
                return m
        return 0

    def text(self) -> str:
        return " ".join(f"{v}^{m}" for v, m in self.pairs)

    def __str__(self):
        return self.text()


def spectrum(e) -> LapSpectrum:
    """Laplacian spectrum of a clique expression, exactly."""
    return LapSpectrum.from_counts(_spectrum_counts(e))


def _spectrum_counts(e) -> dict:
    if isinstance(e, Complete):
        counts = {0: 1}
        if e.s > 1:
            counts[e.s] = e.s - 1
        return counts
    if isinstance(e, Empty):
        return {0: e.s}
    if isinstance(e, Disjoint):
        counts = {}
        for p in e.parts:
            for v, m in _spectrum_counts(p).items():
                counts[v] = counts.get(v, 0) + m
        return counts
    if isinstance(e, Join):
        la = _spectrum_counts(e.left)
        lb = _spectrum_counts(e.right)
        na, nb = e.left.n, e.right.n
        for side in (la, lb):
            if side.get(0, 0) < 1:
                raise AssertionError("child spectrum lost its zero eigenvalue")
        counts = {}

        def add(v, m):
            if m:
                counts[v] = counts.get(v, 0) + m

        add(na + nb, 1)
        for v, m in la.items():
            add(v + nb, m - 1 if v == 0 else m)
        for v, m in lb.items():
            add(v + na, m - 1 if v == 0 else m)
        add(0, 1)
        return counts
    raise ValueError(f"not a clique expression: {e!r}")


def kappa_from_spectrum(s: LapSpectrum) -> int:
    """Tree number: product of nonzero eigenvalues divided by the vertex count.

    Returns 0 when the zero eigenvalue has multiplicity above 1, i.e. the
    graph is disconnected.
    """
    if s.multiplicity(0) != 1:
        return 0
    prod = 1
    for v, m in s.pairs:
        if v:
            prod *= pow(v, m)
    q, r = divmod(prod, s.n)
    if r:
        raise NonIntegerResult(
            f"eigenvalue product {prod} is not divisible by n={s.n}"
        )
    return q


def sigma_eval(s: LapSpectrum, m: int):
    """Laplacian characteristic polynomial at -m, plus the shifted product.

    The shifted product multiplies (eigenvalue + m) over the whole multiset;
    since a Laplacian spectrum always carries a zero, one factor is exactly m
    and the product is divisible by m.  The polynomial value is the product
    up to the sign (-1)^n.
    """
    if m < 1:
        raise ValueError(f"shift must be >= 1, got {m}")
    prod = 1
    for v, mult in s.pairs:
        prod *= pow(v + m, mult)
    if prod % m:
        raise NonIntegerResult(
            f"shifted product {prod} not divisible by m={m}; zero eigenvalue missing"
        )
    sigma = -prod if s.n % 2 else prod
    return sigma, prod


def kappa_centerless(s: LapSpectrum) -> int:
    """Tree number of a join with a single vertex, from the other side's spectrum.

    For a graph H on n-1 vertices, the cone K1 v H has tree number equal to
    the product of (eigenvalue + 1) over all but one zero of H's spectrum.
    """
    if s.multiplicity(0) < 1:
        raise NonIntegerResult("spectrum has no zero eigenvalue")
    prod = 1
    for v, mult in s.pairs:
        prod *= pow(v + 1, mult)
    return prod  # the dropped zero contributes a factor of exactly 1


def realize(e) -> np.ndarray:
    """Explicit boolean adjacency matrix of a clique expression."""
    if isinstance(e, Complete):
        mat = np.ones((e.s, e.s), dtype=bool)
        np.fill_diagonal(mat, False)
        return mat
    if isinstance(e, Empty):
        return np.zeros((e.s, e.s), dtype=bool)
    if isinstance(e, Disjoint):
        n = e.n
        mat = np.zeros((n, n), dtype=bool)
        at = 0
        for p in e.parts:
            sub = realize(p)
            k = sub.shape[0]
            mat[at:at + k, at:at + k] = sub
            at += k
        return mat
    if isinstance(e, Join):
        a = realize(e.left)
        b = realize(e.right)
        na, nb = a.shape[0], b.shape[0]
        mat = np.ones((na + nb, na + nb), dtype=bool)
        mat[:na, :na] = a
        mat[na:, na:] = b
        return mat
    raise ValueError(f"not a clique expression: {e!r}")
