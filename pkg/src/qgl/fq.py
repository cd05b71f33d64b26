"""Subspaces of F_q^d in reduced row-echelon form (q prime)."""

from __future__ import annotations

import itertools
from functools import lru_cache


def rref(rows, q: int):
    """Reduced row-echelon form over F_q; returns ``(basis, pivots)`` as tuples."""
    m = [[x % q for x in r] for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for k in range(r, len(m)):
            if m[k][col]:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], q - 2, q)
        m[r] = [(x * inv) % q for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][col]:
                f = m[k][col]
                m[k] = [(a - f * b) % q for a, b in zip(m[k], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows, q: int) -> int:
    return len(rref(rows, q)[0])


class Subspace:
    """Subspace of F_q^d, stored by its unique RREF basis."""

    __slots__ = ("q", "d", "basis", "pivots", "_hash")

    def __init__(self, q: int, d: int, rows=(), reduced: bool = False):
        self.q = q
        self.d = d
        if reduced:
            self.basis = tuple(rows)
            self.pivots = tuple(next(c for c, x in enumerate(r) if x) for r in self.basis)
        else:
            rows = [r for r in rows]
            for r in rows:
                if len(r) != d:
                    raise ValueError(f"vector of length {len(r)} in F_q^{d}")
            self.basis, self.pivots = rref(rows, q)
        self._hash = None

    @classmethod
    def zero(cls, q, d) -> "Subspace":
        return cls(q, d, (), reduced=True)

    @classmethod
    def whole(cls, q, d) -> "Subspace":
        return cls(q, d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), reduced=True)

    @classmethod
    def coordinate(cls, q, d, coords) -> "Subspace":
        coords = sorted(coords)
        return cls(q, d, tuple(tuple(int(j == c) for j in range(d)) for c in coords), reduced=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other):
        if (self.q, self.d) != (other.q, other.d):
            raise ValueError(f"ambient mismatch: F_{self.q}^{self.d} vs F_{other.q}^{other.d}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.q, self.d, self.basis) == (other.q, other.d, other.basis)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.q, self.d, self.basis))
        return self._hash

    def __repr__(self):
        return f"Subspace(q={self.q}, d={self.d}, basis={[list(r) for r in self.basis]})"

    def __add__(self, other) -> "Subspace":
        self._check(other)
        return Subspace(self.q, self.d, self.basis + other.basis)

    def intersect(self, other) -> "Subspace":
        """Zassenhaus: row-reduce ``[[a, a], [b, 0]]``; rows ``[0, x]`` span the intersection."""
        self._check(other)
        d, q = self.d, self.q
        if not self.basis or not other.basis:
            return Subspace.zero(q, d)
        rows = [r + r for r in self.basis] + [r + (0,) * d for r in other.basis]
        red, piv = rref(rows, q)
        return Subspace(q, d, [r[d:] for r, p in zip(red, piv) if p >= d])

    __and__ = intersect

    def intersection_dim(self, other) -> int:
        return self.dim + other.dim - rank(self.basis + other.basis, self.q)

    def contains_vector(self, x) -> bool:
        return rank(self.basis + (tuple(x),), self.q) == self.dim

    def __le__(self, other) -> bool:
        self._check(other)
        return rank(other.basis + self.basis, self.q) == other.dim

    # coordinates

    def reduce_vector(self, x):
        """Representative of ``x`` modulo this subspace with zero pivot entries."""
        x = [c % self.q for c in x]
        for row, p in zip(self.basis, self.pivots):
            f = x[p]
            if f:
                x = [(a - f * b) % self.q for a, b in zip(x, row)]
        return x

    def complement_coords(self):
        """Non-pivot coordinates; they give the model of ``F_q^d / self``."""
        ps = set(self.pivots)
        return tuple(c for c in range(self.d) if c not in ps)

    def quotient_image(self, c: "Subspace") -> "Subspace":
        """Image of ``c`` in ``F_q^d / self`` written in :meth:`complement_coords`."""
        self._check(c)
        cc = self.complement_coords()
        rows = []
        for r in c.basis:
            red = self.reduce_vector(r)
            rows.append(tuple(red[k] for k in cc))
        return Subspace(self.q, len(cc), rows)

    def restrict(self, c: "Subspace") -> "Subspace":
        """``c ∩ self`` in the coordinates of this subspace (its pivot entries)."""
        self._check(c)
        meet = c.intersect(self)
        return Subspace(self.q, self.dim, [tuple(r[p] for p in self.pivots) for r in meet.basis])

    def lift(self, w: "Subspace") -> "Subspace":
        """Preimage under the quotient map of a subspace ``w`` of ``F_q^d / self``."""
        cc = self.complement_coords()
        rows = list(self.basis)
        for r in w.basis:
            x = [0] * self.d
            for k, val in zip(cc, r):
                x[k] = val
            rows.append(tuple(x))
        return Subspace(self.q, self.d, rows)

    def apply(self, g) -> "Subspace":
        """Image under the matrix ``g`` acting on column vectors."""
        q = self.q
        rows = []
        for r in self.basis:
            rows.append(tuple(sum(g[a][b] * r[b] for b in range(self.d)) % q for a in range(self.d)))
        return Subspace(q, self.d, rows)


def subspace_arith(a: Subspace, b: Subspace):
    """``(a + b, a ∩ b, quotient_image)`` where ``quotient_image(c, by)`` models ``c`` in ``F_q^d/by``."""
    a._check(b)

    def quotient_image(c, by=b):
        return by.quotient_image(c)

    return a + b, a.intersect(b), quotient_image


@lru_cache(maxsize=None)
def _enumerate_rref(d: int, k: int, q: int):
    out = []
    for pivots in itertools.combinations(range(d), k):
        pset = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pset]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            out.append(Subspace(q, d, tuple(tuple(r) for r in rows), reduced=True))
    return tuple(out)


def enumerate_subspaces(d: int, k: int, q: int):
    """All k-dimensional subspaces of F_q^d, one per RREF pivot pattern and filling."""
    if not 0 <= k <= d:
        return []
    return list(_enumerate_rref(d, k, q))


def gaussian_binomial(d: int, k: int, q: int) -> int:
    if not 0 <= k <= d:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (d - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def gl_order(d: int, q: int) -> int:
    out = 1
    for k in range(d):
        out *= q**d - q**k
    return out


def enumerate_gl(d: int, q: int):
    """All invertible d x d matrices over F_q (tiny d only)."""
    for entries in itertools.product(range(q), repeat=d * d):
        g = [entries[r * d : (r + 1) * d] for r in range(d)]
        if rank(g, q) == d:
            yield tuple(tuple(r) for r in g)


def random_gl(d: int, q: int, rng):
    while True:
        g = tuple(tuple(rng.randrange(q) for _ in range(d)) for _ in range(d))
        if rank(g, q) == d:
            return g
