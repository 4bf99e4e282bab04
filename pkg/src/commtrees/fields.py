"""Finite field arithmetic on integer-coded elements.

Two kinds of field are supported:

* prime fields GF(p) for p <= 251, elements are residues 0..p-1;
* binary fields GF(2^n) for n <= 16, elements are bit-packed polynomials
  over GF(2), the integer's bit i holding the coefficient of x^i.

The binary field modulus is always the lexicographically least irreducible
polynomial of the right degree, so a field is fully determined by (p, n) and
two builds of the same size are interchangeable.  Dense numpy add/mul tables
are available for q <= 256; vectorized group construction relies on them.
"""

from __future__ import annotations

import numpy as np

from .errors import NonPrimeCharacteristic, UnsupportedSize

_MAX_PRIME = 251
_MAX_BINARY_DEG = 16


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _poly_rem(a: int, b: int) -> int:
    """Remainder of bit-packed polynomial a modulo b, over GF(2)."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _is_irreducible(f: int, deg: int) -> bool:
    # Trial division by every polynomial of degree 1..deg/2 suffices at
    # these sizes (deg <= 16 means at most 511 candidate divisors).
    for d in range(2, 1 << (deg // 2 + 1)):
        if _poly_rem(f, d) == 0:
            return False
    return True


def least_irreducible(deg: int) -> int:
    """Lexicographically least monic irreducible of the given degree over GF(2)."""
    for f in range(1 << deg, 1 << (deg + 1)):
        if _is_irreducible(f, deg):
            return f
    raise AssertionError("no irreducible polynomial found, degree %d" % deg)


class Field:
    """Arithmetic context for GF(p^n) with integer-coded elements.

    Do not construct directly; use build_field so size checks and modulus
    selection happen exactly once.
    """

    __slots__ = ("p", "n", "q", "modulus", "_add_tab", "_mul_tab", "_inv_tab")

    def __init__(self, p: int, n: int, modulus: int | None):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self._add_tab = None
        self._mul_tab = None
        self._inv_tab = None

    def __repr__(self):
        return f"Field(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.p, self.n))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    # ---------------------------------------------------------- scalar ops

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a - b) % self.p
        return a ^ b

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return a

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        # carry-less product, then reduce by the modulus
        acc = 0
        x = a
        while b:
            if b & 1:
                acc ^= x
            x <<= 1
            b >>= 1
        return _poly_rem(acc, self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.n == 1:
            return pow(a, e, self.p)
        acc = 1
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def element_mult_order(self, a: int) -> int:
        """Order of a in the multiplicative group; a must be nonzero."""
        if a == 0:
            raise ZeroDivisionError("0 is not in the multiplicative group")
        k = 1
        x = a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def least_primitive(self) -> int:
        """Least element generating the multiplicative group."""
        target = self.q - 1
        for a in range(1, self.q):
            if self.element_mult_order(a) == target:
                return a
        raise AssertionError("multiplicative group has no generator")

    # ---------------------------------------------------------- dense tables

    def add_table(self) -> np.ndarray:
        """q x q int32 table of sums; available for q <= 256."""
        if self._add_tab is None:
            if self.q > 256:
                raise UnsupportedSize(f"dense tables limited to q <= 256, got q={self.q}")
            idx = np.arange(self.q, dtype=np.int64)
            if self.n == 1:
                tab = (idx[:, None] + idx[None, :]) % self.p
            else:
                tab = idx[:, None] ^ idx[None, :]
            self._add_tab = tab.astype(np.int32)
        return self._add_tab

    def mul_table(self) -> np.ndarray:
        """q x q int32 table of products; available for q <= 256."""
        if self._mul_tab is None:
            if self.q > 256:
                raise UnsupportedSize(f"dense tables limited to q <= 256, got q={self.q}")
            idx = np.arange(self.q, dtype=np.int64)
            if self.n == 1:
                tab = (idx[:, None] * idx[None, :]) % self.p
                self._mul_tab = tab.astype(np.int32)
            else:
                tab = np.empty((self.q, self.q), dtype=np.int32)
                for a in range(self.q):
                    for b in range(a, self.q):
                        v = self.mul(a, b)
                        tab[a, b] = v
                        tab[b, a] = v
                self._mul_tab = tab
        return self._mul_tab

    def inv_table(self) -> np.ndarray:
        """Length-q int32 table of inverses, with 0 mapped to 0 as a sentinel."""
        if self._inv_tab is None:
            tab = np.zeros(self.q, dtype=np.int32)
            for a in range(1, self.q):
                tab[a] = self.inv(a)
            self._inv_tab = tab
        return self._inv_tab


def build_field(p: int, n: int = 1) -> Field:
    """Construct GF(p^n).

    Prime fields accept any prime p <= 251 with n == 1.  Extension fields
    require p == 2 and 2 <= n <= 16; the modulus polynomial is derived, not
    chosen by the caller.
    """
    if not _is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if n < 1:
        raise UnsupportedSize(f"extension degree must be >= 1, got {n}")
    if n == 1:
        if p > _MAX_PRIME:
            raise UnsupportedSize(f"prime fields supported up to p={_MAX_PRIME}, got {p}")
        return Field(p, 1, None)
    if p != 2:
        raise UnsupportedSize(f"extension fields supported only in characteristic 2, got p={p}")
    if n > _MAX_BINARY_DEG:
        raise UnsupportedSize(f"binary fields supported up to degree {_MAX_BINARY_DEG}, got {n}")
    modulus = least_irreducible(n)
    return Field(2, n, modulus)
