"""Pairs of partial flags over F_q, their GL(d)-orbits, and the counted constants c, h, g, a.

Orbits of pairs ``(V, F)`` of flags of types ``(c, d)`` correspond to n x n
matrices ``M`` with row sums ``c`` and column sums ``d``. Everything here is
brute-force enumeration, so sizes are capped by :data:`GUARD`.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .cache import default_cache
from .fq import Subspace, enumerate_gl, enumerate_subspaces, gaussian_binomial, gl_order, random_gl
from .scalars import is_prime


class GuardError(ValueError):
    """Requested enumeration is larger than the configured size guard."""


@dataclass
class SizeGuard:
    max_d: int = 6
    max_q: int = 7

    def check(self, d: int, q: int):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        if d > self.max_d:
            raise GuardError(f"dimension {d} exceeds guard max_d={self.max_d}")
        if q > self.max_q:
            raise GuardError(f"q={q} exceeds guard max_q={self.max_q}")


GUARD = SizeGuard()


def set_guard(max_d: int | None = None, max_q: int | None = None) -> SizeGuard:
    if max_d is not None:
        if max_d < 1:
            raise ValueError("max_d must be positive")
        GUARD.max_d = max_d
    if max_q is not None:
        if max_q < 2:
            raise ValueError("max_q must be at least 2")
        GUARD.max_q = max_q
    return GUARD


# ---------------------------------------------------------------- types


@dataclass(frozen=True, order=True)
class CompositionType:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 0 for p in self.parts):
            raise ValueError(f"negative part in {self.parts}")

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def partial_sums(self):
        return tuple(itertools.accumulate(self.parts, initial=0))


def _parts(c):
    return c.parts if isinstance(c, CompositionType) else tuple(c)


@dataclass(frozen=True, order=True)
class MatrixType:
    """Non-negative integer n x n matrix labelling an orbit; indices in the API are 1-based."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("orbit matrix must be square")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("orbit matrix entries must be non-negative")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zero(cls, n: int) -> "MatrixType":
        return cls(((0,) * n,) * n)

    @classmethod
    def unit(cls, n: int, i: int, j: int, m: int = 1) -> "MatrixType":
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"index ({i},{j}) out of range for n={n}")
        return cls(tuple(tuple(m if (a, b) == (i, j) else 0 for b in range(1, n + 1)) for a in range(1, n + 1)))

    @classmethod
    def diag(cls, parts) -> "MatrixType":
        parts = _parts(parts)
        n = len(parts)
        return cls(tuple(tuple(parts[a] if a == b else 0 for b in range(n)) for a in range(n)))

    @classmethod
    def permutation(cls, perm) -> "MatrixType":
        """``1_σ`` convention: entry (i, σ(i)) is 1; ``perm`` is 0- or 1-based."""
        perm = tuple(perm)
        off = 1 if min(perm) == 1 else 0
        n = len(perm)
        return cls(tuple(tuple(int(perm[a] - off == b) for b in range(n)) for a in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return sum(map(sum, self.entries))

    @property
    def ro(self) -> tuple:
        return tuple(sum(r) for r in self.entries)

    @property
    def co(self) -> tuple:
        return tuple(sum(c) for c in zip(*self.entries))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __add__(self, other: "MatrixType") -> "MatrixType":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return MatrixType(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scaled(self, k: int) -> "MatrixType":
        return MatrixType(tuple(tuple(k * x for x in r) for r in self.entries))

    def transpose(self) -> "MatrixType":
        return MatrixType(tuple(zip(*self.entries)))

    def reversed(self) -> "MatrixType":
        """``J M J`` with J the antidiagonal permutation."""
        return MatrixType(tuple(tuple(reversed(r)) for r in reversed(self.entries)))

    def is_diagonal(self) -> bool:
        return all(x == 0 for a, r in enumerate(self.entries) for b, x in enumerate(r) if a != b)

    def cells(self):
        """``(i, j, m_ij)`` over non-zero entries, 1-based, row-major."""
        return [(a + 1, b + 1, x) for a, r in enumerate(self.entries) for b, x in enumerate(r) if x]

    def to_json(self):
        return [list(r) for r in self.entries]

    def __str__(self):
        parts = []
        for i, j, m in self.cells():
            parts.append(f"{m if m > 1 else ''}e{i}{j}" if self.n < 10 else f"{m if m > 1 else ''}e({i},{j})")
        return "+".join(parts) if parts else "0"


def as_matrix(m) -> MatrixType:
    return m if isinstance(m, MatrixType) else MatrixType(m)


def compositions(n: int, d: int):
    """All n-part compositions of d (zeros allowed), in lexicographic order."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in compositions(n - 1, d - first):
            out.append((first,) + rest)
    return sorted(out)


@lru_cache(maxsize=None)
def _theta(n, d, ro, co):
    out = []
    for flat in _flat_matrices(n * n, d):
        rows = tuple(flat[a * n : (a + 1) * n] for a in range(n))
        m = MatrixType(rows)
        if ro is not None and m.ro != ro:
            continue
        if co is not None and m.co != co:
            continue
        out.append(m)
    return tuple(sorted(out))


def _flat_matrices(k, d):
    if k == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _flat_matrices(k - 1, d - first):
            yield (first,) + rest


def theta(n: int, d: int, ro=None, co=None):
    """Orbit matrices of degree d, optionally with prescribed row and column sums."""
    ro = None if ro is None else _parts(ro)
    co = None if co is None else _parts(co)
    return list(_theta(n, d, ro, co))


# ---------------------------------------------------------------- flags


class Flag:
    """Chain ``0 = F_0 ⊆ F_1 ⊆ ... ⊆ F_n = F_q^d``; ``steps`` holds F_1..F_n."""

    __slots__ = ("steps", "_hash")

    def __init__(self, steps, check: bool = True):
        self.steps = tuple(steps)
        if not self.steps:
            raise ValueError("a flag needs at least one step")
        if check:
            last = self.steps[-1]
            if last.dim != last.d:
                raise ValueError("last step of a flag must be the whole space")
            for a, b in zip(self.steps, self.steps[1:]):
                if not a <= b:
                    raise ValueError("flag steps are not nested")
        self._hash = None

    @property
    def q(self):
        return self.steps[0].q

    @property
    def d(self):
        return self.steps[0].d

    @property
    def n(self):
        return len(self.steps)

    def step(self, i: int) -> Subspace:
        """F_i for 0 <= i <= n."""
        if i == 0:
            return Subspace.zero(self.q, self.d)
        return self.steps[i - 1]

    @property
    def type(self) -> CompositionType:
        dims = [0] + [s.dim for s in self.steps]
        return CompositionType(tuple(b - a for a, b in zip(dims, dims[1:])))

    def apply(self, g) -> "Flag":
        return Flag([s.apply(g) for s in self.steps], check=False)

    def restrict(self, e: Subspace) -> "Flag":
        """``F ∩ E`` in coordinates of E."""
        return Flag([e.restrict(s) for s in self.steps], check=False)

    def quotient(self, e: Subspace) -> "Flag":
        """Image of F in ``F_q^d / E``."""
        return Flag([e.quotient_image(s) for s in self.steps], check=False)

    def __eq__(self, other):
        return isinstance(other, Flag) and self.steps == other.steps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.steps)
        return self._hash

    def __repr__(self):
        return f"Flag({[s.basis for s in self.steps]})"


@dataclass(frozen=True)
class FlagPair:
    V: Flag
    F: Flag

    def __post_init__(self):
        if (self.V.q, self.V.d, self.V.n) != (self.F.q, self.F.d, self.F.n):
            raise ValueError("flags of a pair must share ambient space and length")

    def apply(self, g) -> "FlagPair":
        return FlagPair(self.V.apply(g), self.F.apply(g))

    def restrict(self, e: Subspace) -> "FlagPair":
        return FlagPair(self.V.restrict(e), self.F.restrict(e))

    def quotient(self, e: Subspace) -> "FlagPair":
        return FlagPair(self.V.quotient(e), self.F.quotient(e))


def standard_flag(parts, q: int) -> Flag:
    """Flag whose i-th step is spanned by the first c_1 + ... + c_i coordinates."""
    parts = _parts(parts)
    d = sum(parts)
    sums = list(itertools.accumulate(parts))
    return Flag([Subspace.coordinate(q, d, range(s)) for s in sums], check=False)


def flag_count(parts, q: int) -> int:
    """Gaussian multinomial: the number of flags of the given type."""
    parts = _parts(parts)
    total, out = sum(parts), 1
    for p in parts:
        out *= gaussian_binomial(total, p, q)
        total -= p
    return out


def enumerate_flags(parts, d: int, q: int, accept=None):
    """All flags of type ``parts`` in F_q^d.

    ``accept(i, F_i)`` may prune partial chains; a step is kept only when it
    returns true.
    """
    parts = _parts(parts)
    if sum(parts) != d:
        raise ValueError(f"type {parts} is not a composition of {d}")
    GUARD.check(d, q)
    out = []

    def grow(prefix, current):
        i = len(prefix)
        if i == len(parts):
            out.append(Flag(prefix, check=False))
            return
        k = parts[i]
        quotient_dim = d - current.dim
        for w in enumerate_subspaces(quotient_dim, k, q):
            nxt = current.lift(w)
            if accept is None or accept(i + 1, nxt):
                grow(prefix + [nxt], nxt)

    grow([], Subspace.zero(q, d))
    return out


def enumerate_all_flags(n: int, d: int, q: int):
    out = []
    for parts in compositions(n, d):
        out.extend(enumerate_flags(parts, d, q))
    return out


# ---------------------------------------------------------------- orbits


def orbit_type(V, F=None) -> MatrixType:
    """Orbit matrix of a pair of flags.

    ``m_ij`` is the jump of ``V_{i-1} + V_i ∩ F_j`` in j, which equals the
    mixed second difference of ``r_ij = dim(V_i ∩ F_j)``.
    """
    if F is None:
        V, F = V.V, V.F
    n = V.n
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        vi = V.steps[i - 1]
        for j in range(1, n + 1):
            r[i][j] = vi.intersection_dim(F.steps[j - 1])
    return MatrixType(
        tuple(tuple(r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1] for j in range(1, n + 1)) for i in range(1, n + 1))
    )


def cell_order(M: MatrixType):
    """Basis cells ``(i, j, t)`` with ``t <= m_ij``, in lexicographic order."""
    M = as_matrix(M)
    return [(i, j, t) for i, j, m in M.cells() for t in range(1, m + 1)]


def representative(M, q: int) -> FlagPair:
    """Coordinate pair in O_M: coordinate k is the k-th cell, V_i spans rows <= i, F_j spans cols <= j."""
    M = as_matrix(M)
    d, n = M.d, M.n
    GUARD.check(d, q)
    cells = cell_order(M)
    V = Flag([Subspace.coordinate(q, d, [k for k, c in enumerate(cells) if c[0] <= i]) for i in range(1, n + 1)], check=False)
    F = Flag([Subspace.coordinate(q, d, [k for k, c in enumerate(cells) if c[1] <= j]) for j in range(1, n + 1)], check=False)
    return FlagPair(V, F)


def random_representative(M, q: int, rng=None) -> FlagPair:
    """A pair in O_M moved by a random element of GL(d, F_q)."""
    rng = rng or random.Random()
    M = as_matrix(M)
    rep = representative(M, q)
    if M.d == 0:
        return rep
    return rep.apply(random_gl(M.d, q, rng))


def orbit_dim(M) -> int:
    """``d(M) = Σ m_ij m_kl`` over index pairs with ``i < k`` or ``j < l``."""
    cells = as_matrix(M).cells()
    return sum(a * b for i, j, a in cells for k, l, b in cells if i < k or j < l)


def crossing_number(M) -> int:
    """``Σ m_ij m_kl`` over ``i > k, j < l``; the length l(σ) on permutation matrices."""
    cells = as_matrix(M).cells()
    return sum(a * b for i, j, a in cells for k, l, b in cells if i > k and j < l)


# ---------------------------------------------------------------- counted constants


def _matrices_key(*ms):
    return tuple(m.entries for m in ms)


def _orbit_tally(ro, co, q):
    """``#{F of type co : type(V_std, F) = M}`` for every M with the given margins."""
    cache = default_cache()
    n = len(ro)
    d = sum(ro)
    V = standard_flag(ro, q)
    tally = Counter(orbit_type(V, F) for F in enumerate_flags(co, d, q))
    cache.note_enumeration()
    return {M: tally.get(M, 0) for M in theta(n, d, ro, co)}


def orbit_size(M, q: int) -> int:
    """``|O_M| = |GL(d)| / a_M``; the tally behind ``a_M`` counts ``|F_ro| * #{F : (V_std, F) ∈ O_M}``."""
    M = as_matrix(M)
    return gl_order(M.d, q) // stabilizer_order(M, q)


def _fill_a(ro, co, q):
    cache = default_cache()
    d = sum(ro)
    items = []
    for N, fibre in _orbit_tally(ro, co, q).items():
        size = flag_count(ro, q) * fibre
        g = gl_order(d, q)
        if g % size:
            raise ArithmeticError(f"orbit size {size} does not divide |GL({d})| = {g}")
        items.append(((N.entries,), g // size))
    cache.put_many("a", q, items)


def stabilizer_order(M, q: int) -> int:
    """``a_M = |GL(d, F_q)| / |O_M|``."""
    M = as_matrix(M)
    GUARD.check(M.d, q)
    cache = default_cache()
    a = cache.get("a", q, (M.entries,))
    if a is None:
        _fill_a(M.ro, M.co, q)
        a = cache.get("a", q, (M.entries,))
    return a


def stabilizer_order_bruteforce(M, q: int) -> int:
    """Count group elements fixing the representative pair (only sensible for d <= 2)."""
    M = as_matrix(M)
    if M.d > 2 and q ** (M.d * M.d) > 10**6:
        raise GuardError("brute-force stabilizer only for tiny d")
    if M.d == 0:
        return 1
    rep = representative(M, q)
    return sum(1 for g in enumerate_gl(M.d, q) if rep.apply(g) == rep)


def structure_c(L, M, N, q: int, pair: FlagPair | None = None) -> int:
    """``c^L_{M,N} = #{F~ : (V, F~) ∈ O_M, (F~, F) ∈ O_N}`` for fixed ``(V, F) ∈ O_L``."""
    L, M, N = as_matrix(L), as_matrix(M), as_matrix(N)
    if not (L.ro == M.ro and L.co == N.co and M.co == N.ro):
        return 0
    GUARD.check(L.d, q)
    if pair is not None:
        return _tally_c(L, pair, q).get((M, N), 0)
    cache = default_cache()
    key = _matrices_key(L, M, N)
    val = cache.get("c", q, key)
    if val is None:
        tally = _tally_c(L, representative(L, q), q)
        cache.put_many("c", q, [(_matrices_key(L, m, k), tally.get((m, k), 0)) for m, k in _c_slots(L)])
        val = cache.get("c", q, key)
    return val


def _c_slots(L):
    for mid in compositions(L.n, L.d):
        for m in theta(L.n, L.d, L.ro, mid):
            for k in theta(L.n, L.d, mid, L.co):
                yield m, k


def _tally_c(L, pair, q):
    default_cache().note_enumeration()
    tally = Counter()
    for Ft in enumerate_all_flags(L.n, L.d, q):
        tally[(orbit_type(pair.V, Ft), orbit_type(Ft, pair.F))] += 1
    return tally


def coproduct_terms(L, q: int):
    """Non-zero ``(M, N, c^L_{M,N})`` for a fixed L."""
    L = as_matrix(L)
    return [(m, k, structure_c(L, m, k, q)) for m, k in _c_slots(L) if structure_c(L, m, k, q)]


def h_fixture(M2, M1, q: int):
    """Fixture for ``h``: ``D'' =`` first ``d''`` coordinates, ``(V'', F'')``, ``(V', F')`` representatives.

    Returns ``(D'', V, F'', F')`` with ``V`` the direct-sum lift of ``V''`` and ``V'``.
    """
    M2, M1 = as_matrix(M2), as_matrix(M1)
    d2, d1 = M2.d, M1.d
    d = d2 + d1
    p2, p1 = representative(M2, q), representative(M1, q)
    D2 = Subspace.coordinate(q, d, range(d2))

    def embed(a: Subspace, b: Subspace):
        rows = [r + (0,) * d1 for r in a.basis] + [(0,) * d2 + r for r in b.basis]
        return Subspace(q, d, rows)

    V = Flag([embed(a, b) for a, b in zip(p2.V.steps, p1.V.steps)])
    if V.restrict(D2) != p2.V or V.quotient(D2) != p1.V:
        raise ValueError("fixture lift does not restrict to the given flags")
    return D2, V, p2.F, p1.F


def _tally_h(M2, M1, q):
    default_cache().note_enumeration()
    D2, V, F2, F1 = h_fixture(M2, M1, q)
    co = tuple(a + b for a, b in zip(M2.co, M1.co))

    def accept(i, Fi):
        return D2.restrict(Fi) == F2.steps[i - 1] and D2.quotient_image(Fi) == F1.steps[i - 1]

    return Counter(orbit_type(V, F) for F in enumerate_flags(co, M2.d + M1.d, q, accept))


def structure_h(M, M2, M1, q: int) -> int:
    """``h^M_{M'',M'}``: flags F with ``(V, F) ∈ O_M`` restricting to the fixture on ``D''`` and ``D/D''``."""
    M, M2, M1 = as_matrix(M), as_matrix(M2), as_matrix(M1)
    ro = tuple(a + b for a, b in zip(M2.ro, M1.ro))
    co = tuple(a + b for a, b in zip(M2.co, M1.co))
    if M.ro != ro or M.co != co:
        return 0
    GUARD.check(M.d, q)
    cache = default_cache()
    key = _matrices_key(M, M2, M1)
    val = cache.get("h", q, key)
    if val is None:
        tally = _tally_h(M2, M1, q)
        cache.put_many("h", q, [(_matrices_key(m, M2, M1), tally.get(m, 0)) for m in theta(M.n, M.d, ro, co)])
        val = cache.get("h", q, key)
    return val


def product_terms_h(M2, M1, q: int):
    """``{M: h^M_{M'',M'}}`` over all M (zeros dropped)."""
    M2, M1 = as_matrix(M2), as_matrix(M1)
    ro = tuple(a + b for a, b in zip(M2.ro, M1.ro))
    co = tuple(a + b for a, b in zip(M2.co, M1.co))
    out = {}
    for m in theta(M2.n, M2.d + M1.d, ro, co):
        val = structure_h(m, M2, M1, q)
        if val:
            out[m] = val
    return out


def _tally_g(M, d2, pair, q):
    default_cache().note_enumeration()
    tally = Counter()
    for E in enumerate_subspaces(M.d, d2, q):
        tally[(orbit_type(pair.restrict(E)), orbit_type(pair.quotient(E)))] += 1
    return tally


def _g_slots(M, d2):
    n = M.n
    for ro2 in compositions(n, d2):
        if any(a > b for a, b in zip(ro2, M.ro)):
            continue
        ro1 = tuple(b - a for a, b in zip(ro2, M.ro))
        for co2 in compositions(n, d2):
            if any(a > b for a, b in zip(co2, M.co)):
                continue
            co1 = tuple(b - a for a, b in zip(co2, M.co))
            for x in theta(n, d2, ro2, co2):
                for y in theta(n, M.d - d2, ro1, co1):
                    yield x, y


def structure_g(M, M2, M1, q: int, pair: FlagPair | None = None) -> int:
    """``g^M_{M'',M'} = #{E : (V, F) ∩ E ∈ O_{M''}, (V, F) in F_q^d/E ∈ O_{M'}}`` for fixed ``(V, F) ∈ O_M``."""
    M, M2, M1 = as_matrix(M), as_matrix(M2), as_matrix(M1)
    ro = tuple(a + b for a, b in zip(M2.ro, M1.ro))
    co = tuple(a + b for a, b in zip(M2.co, M1.co))
    if M.ro != ro or M.co != co:
        return 0
    GUARD.check(M.d, q)
    if pair is not None:
        return _tally_g(M, M2.d, pair, q).get((M2, M1), 0)
    cache = default_cache()
    key = _matrices_key(M, M2, M1)
    val = cache.get("g", q, key)
    if val is None:
        tally = _tally_g(M, M2.d, representative(M, q), q)
        cache.put_many("g", q, [(_matrices_key(M, x, y), tally.get((x, y), 0)) for x, y in _g_slots(M, M2.d)])
        val = cache.get("g", q, key)
    return val


class TwistExponents(NamedTuple):
    """Exponents e of the factor ``(q^{-1/2})^e = v^{-e}`` in each product formula."""

    circ: int
    dot: int
    multh: int


def _lower(a, b):
    return sum(a[i] * b[j] for i in range(len(a)) for j in range(len(b)) if i < j)


def twist_exponents(M2, M1) -> TwistExponents:
    """Exponents for ``1_{M''} * 1_{M'}``; ``M''`` is the left factor.

    circ  = Σ_{i<j}(c'_i c''_j + d'_i d''_j) + d'd''
    dot   = Σ_{i<j}(-c'_i c''_j + d'_i d''_j)
    multh = dot + 3 d'd''
    """
    M2, M1 = as_matrix(M2), as_matrix(M1)
    c2, d2, c1, d1 = M2.ro, M2.co, M1.ro, M1.co
    dd = M2.d * M1.d
    circ = _lower(c1, c2) + _lower(d1, d2) + dd
    dot = -_lower(c1, c2) + _lower(d1, d2)
    return TwistExponents(circ, dot, dot + 3 * dd)


def permutations_with_length(n: int):
    """``(σ, l(σ))`` over S_n, σ as a 1-based tuple."""
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
        out.append((p, inv))
    return out
