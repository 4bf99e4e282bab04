"""Concrete element carriers: permutations and small matrices.

Both carriers are immutable, hashable, and totally ordered within a carrier,
which is what the closure engine needs for canonical element numbering.
Mixing carriers (or degrees, or fields) in one operation raises
CarrierMismatch rather than producing nonsense.
"""

from __future__ import annotations

from .errors import CarrierMismatch
from .fields import Field


class Perm:
    """Permutation of {0..d-1} stored as its image tuple.

    Composition is left action: (a * b)(x) = a(b(x)).
    """

    __slots__ = ("image",)

    def __init__(self, image):
        self.image = tuple(image)
        seen = sorted(self.image)
        if seen != list(range(len(seen))):
            raise ValueError(f"not a permutation image: {self.image}")

    @property
    def points(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, d: int) -> "Perm":
        return cls(range(d))

    @classmethod
    def from_cycles(cls, cycles, d: int) -> "Perm":
        """Build from disjoint cycles given as lists of points."""
        image = list(range(d))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                if not (0 <= pt < d):
                    raise ValueError(f"cycle point {pt} outside 0..{d - 1}")
                nxt = cyc[(i + 1) % len(cyc)]
                if image[pt] != pt:
                    raise ValueError(f"point {pt} appears in two cycles")
                image[pt] = nxt
        # the overlap check above only catches reuse within image writes;
        # validate the result is a permutation regardless
        return cls(image)

    def compose(self, other: "Perm") -> "Perm":
        if self.points != other.points:
            raise CarrierMismatch(
                f"permutation degrees differ: {self.points} vs {other.points}"
            )
        img = other.image
        return Perm(tuple(self.image[img[x]] for x in range(len(img))))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Perm(inv)

    def is_even(self) -> bool:
        seen = [False] * len(self.image)
        parity = 0
        for start in range(len(self.image)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.image[x]
                length += 1
            parity ^= (length - 1) & 1
        return parity == 0

    def sort_key(self):
        return self.image

    def __eq__(self, other):
        return isinstance(other, Perm) and self.image == other.image

    def __hash__(self):
        return hash(("perm", self.image))

    def __lt__(self, other):
        return self.image < other.image

    def __repr__(self):
        return f"Perm{self.image}"


class Mat:
    """Square matrix over a finite field, entries row-major in a flat tuple."""

    __slots__ = ("field", "dim", "entries")

    def __init__(self, field: Field, dim: int, entries):
        entries = tuple(int(e) for e in entries)
        if len(entries) != dim * dim:
            raise ValueError(f"expected {dim * dim} entries, got {len(entries)}")
        for e in entries:
            if not (0 <= e < field.q):
                raise ValueError(f"entry {e} outside field of size {field.q}")
        self.field = field
        self.dim = dim
        self.entries = entries

    @classmethod
    def identity(cls, field: Field, dim: int) -> "Mat":
        ent = [0] * (dim * dim)
        for i in range(dim):
            ent[i * dim + i] = 1
        return cls(field, dim, ent)

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Mat":
        dim = len(rows)
        flat = []
        for r in rows:
            if len(r) != dim:
                raise ValueError("matrix rows must form a square")
            flat.extend(r)
        return cls(field, dim, flat)

    def rows(self):
        d = self.dim
        return [list(self.entries[i * d:(i + 1) * d]) for i in range(d)]

    def _check_same_carrier(self, other: "Mat"):
        if self.dim != other.dim or self.field != other.field:
            raise CarrierMismatch(
                f"matrix carriers differ: dim {self.dim} over GF({self.field.q}) "
                f"vs dim {other.dim} over GF({other.field.q})"
            )

    def compose(self, other: "Mat") -> "Mat":
        self._check_same_carrier(other)
        F = self.field
        d = self.dim
        a, b = self.entries, other.entries
        out = [0] * (d * d)
        for i in range(d):
            for j in range(d):
                acc = 0
                for k in range(d):
                    acc = F.add(acc, F.mul(a[i * d + k], b[k * d + j]))
                out[i * d + j] = acc
        return Mat(F, d, out)

    def det(self) -> int:
        F = self.field
        e = self.entries
        if self.dim == 1:
            return e[0]
        if self.dim == 2:
            return F.sub(F.mul(e[0], e[3]), F.mul(e[1], e[2]))
        if self.dim == 3:
            a, b, c, d, f, g, h, i, j = e
            t1 = F.mul(a, F.sub(F.mul(f, j), F.mul(g, i)))
            t2 = F.mul(b, F.sub(F.mul(d, j), F.mul(g, h)))
            t3 = F.mul(c, F.sub(F.mul(d, i), F.mul(f, h)))
            return F.add(F.sub(t1, t2), t3)
        raise ValueError(f"determinant implemented for dim <= 3, got {self.dim}")

    def inverse(self) -> "Mat":
        F = self.field
        dt = self.det()
        if dt == 0:
            raise ZeroDivisionError("matrix is singular")
        dt_inv = F.inv(dt)
        e = self.entries
        if self.dim == 1:
            return Mat(F, 1, (dt_inv,))
        if self.dim == 2:
            adj = (e[3], F.neg(e[1]), F.neg(e[2]), e[0])
            return Mat(F, 2, tuple(F.mul(dt_inv, v) for v in adj))
        if self.dim == 3:
            # adjugate by cofactors
            m = self.rows()

            def cof(r, c):
                sub = [m[i][j] for i in range(3) if i != r for j in range(3) if j != c]
                v = F.sub(F.mul(sub[0], sub[3]), F.mul(sub[1], sub[2]))
                return v if (r + c) % 2 == 0 else F.neg(v)

            adj = [cof(c, r) for r in range(3) for c in range(3)]
            return Mat(F, 3, tuple(F.mul(dt_inv, v) for v in adj))
        raise ValueError(f"inverse implemented for dim <= 3, got {self.dim}")

    def sort_key(self):
        return self.entries

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.dim == other.dim
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(("mat", self.dim, self.field.q, self.entries))

    def __lt__(self, other):
        return self.entries < other.entries

    def __repr__(self):
        return f"Mat(GF({self.field.q}), {self.rows()})"


def element_compose(a, b):
    """Product a*b of two elements on the same carrier."""
    if isinstance(a, Perm) and isinstance(b, Perm):
        return a.compose(b)
    if isinstance(a, Mat) and isinstance(b, Mat):
        return a.compose(b)
    raise CarrierMismatch(
        f"cannot compose {type(a).__name__} with {type(b).__name__}"
    )


def element_inverse(a):
    if isinstance(a, (Perm, Mat)):
        return a.inverse()
    raise CarrierMismatch(f"not a carrier element: {type(a).__name__}")


def element_identity(like):
    """Identity element of the carrier that `like` lives on."""
    if isinstance(like, Perm):
        return Perm.identity(like.points)
    if isinstance(like, Mat):
        return Mat.identity(like.field, like.dim)
    raise CarrierMismatch(f"not a carrier element: {type(like).__name__}")
