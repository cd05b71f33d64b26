"""The convolution algebra K(n) at a prime q: span of 1_M over orbit matrices M.

Products and coproducts are computed from the counted constants of
:mod:`qgl.flaggeo`; scalars live in ``Q[u]/(u^4 - q)`` with ``u = q^{1/4}``
and ``v = u^2``. In every product the left factor plays the role of ``M''``.
"""

from __future__ import annotations

import csv
import io
import itertools
import random
from fractions import Fraction

from . import flaggeo as fg
from .flaggeo import MatrixType, as_matrix, theta
from .qalgebra import CHI_STAR, DD, FRT, NCPoly
from .scalars import EvaluatedScalar, Scalar, ScalarFraction, evaluate, evaluate_any, is_prime, qint

PRODUCT_KINDS = ("circ", "circ_prime", "dot", "bullet", "twisted_dot")
COPRODUCT_KINDS = ("plain", "tilde", "prime")
MODELS = ("Phi", "Psi", "PsiPrime", "Xi")


def _scalar(x, q) -> EvaluatedScalar:
    if isinstance(x, EvaluatedScalar):
        if x.q != q:
            raise ValueError(f"scalar at q={x.q} used with q={q}")
        return x
    return evaluate_any(x, q)


def v_power(k: int, q: int) -> EvaluatedScalar:
    return EvaluatedScalar.u_power(2 * k, q)


class KElement:
    """Finite combination ``Σ x_M 1_M`` with coefficients in ``Q[u]/(u^4 - q)``."""

    __slots__ = ("n", "q", "_terms")

    def __init__(self, n: int, q: int, terms=None):
        if not is_prime(q):
            raise ValueError(f"q={q} is not prime")
        self.n = n
        self.q = q
        out = {}
        for m, c in (terms or {}).items():
            m = as_matrix(m)
            if m.n != n:
                raise ValueError(f"{m} is not {n}x{n}")
            c = _scalar(c, q)
            if m in out:
                c = out[m] + c
            if c.is_zero():
                out.pop(m, None)
            else:
                out[m] = c
        self._terms = out

    @classmethod
    def basis(cls, m, q: int, coeff=1) -> "KElement":
        m = as_matrix(m)
        return cls(m.n, q, {m: coeff})

    @classmethod
    def unit(cls, n: int, q: int) -> "KElement":
        return cls(n, q, {MatrixType.zero(n): 1})

    @classmethod
    def zero(cls, n: int, q: int) -> "KElement":
        return cls(n, q)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def coefficient(self, m) -> EvaluatedScalar:
        return self._terms.get(as_matrix(m), EvaluatedScalar.const(0, self.q))

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set:
        return {m.d for m in self._terms}

    def _same(self, other):
        if not isinstance(other, KElement):
            return False
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("KElements with different n or q")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return KElement(self.n, self.q, terms)

    def __neg__(self):
        return KElement(self.n, self.q, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "KElement":
        c = _scalar(c, self.q)
        return KElement(self.n, self.q, {m: c * x for m, x in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, Scalar, ScalarFraction, EvaluatedScalar)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, KElement):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.q, frozenset(self._terms.items())))

    def to_json(self):
        return [{"matrix": m.to_json(), "coeff": c.to_json()} for m, c in self.items()]

    def __repr__(self):
        return f"KElement(n={self.n}, q={self.q}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*1[{m}]" for m, c in self.items())


class KTensor:
    """Finite combination of ``1_M ⊗ 1_N``."""

    __slots__ = ("n", "q", "_terms")

    def __init__(self, n: int, q: int, terms=None):
        self.n = n
        self.q = q
        out = {}
        for (a, b), c in (terms or {}).items():
            key = (as_matrix(a), as_matrix(b))
            c = _scalar(c, q)
            if key in out:
                c = out[key] + c
            if c.is_zero():
                out.pop(key, None)
            else:
                out[key] = c
        self._terms = out

    @classmethod
    def pure(cls, x: KElement, y: KElement) -> "KTensor":
        terms = {}
        for a, ca in x._terms.items():
            for b, cb in y._terms.items():
                terms[(a, b)] = terms.get((a, b), EvaluatedScalar.const(0, x.q)) + ca * cb
        return cls(x.n, x.q, terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return KTensor(self.n, self.q, terms)

    def __neg__(self):
        return KTensor(self.n, self.q, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KTensor":
        c = _scalar(c, self.q)
        return KTensor(self.n, self.q, {k: c * x for k, x in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, KTensor):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.q, frozenset(self._terms.items())))

    def to_json(self):
        return [{"left": a.to_json(), "right": b.to_json(), "coeff": c.to_json()} for (a, b), c in self.items()]

    def __repr__(self):
        body = " + ".join(f"({c})*1[{a}]⊗1[{b}]" for (a, b), c in self.items()) or "0"
        return f"KTensor(n={self.n}, q={self.q}, {body})"


# products --------------------------------------------------------------


def _margins(m2: MatrixType, m1: MatrixType):
    ro = tuple(a + b for a, b in zip(m2.ro, m1.ro))
    co = tuple(a + b for a, b in zip(m2.co, m1.co))
    return ro, co


def basis_product(m2, m1, q: int, kind: str = "dot") -> KElement:
    """``1_{M''} * 1_{M'}`` for a product kind."""
    m2, m1 = as_matrix(m2), as_matrix(m1)
    if kind not in PRODUCT_KINDS:
        raise ValueError(f"unknown product kind {kind!r}")
    n = m2.n
    ro, co = _margins(m2, m1)
    d = m2.d + m1.d
    fg.GUARD.check(d, q)
    ex = fg.twist_exponents(m2, m1)
    if kind in ("circ", "circ_prime"):
        counts = {m: fg.structure_g(m, m2, m1, q) for m in theta(n, d, ro, co)}
        shift = -ex.circ + (m2.d * m1.d if kind == "circ_prime" else 0)
    else:
        counts = {m: fg.structure_h(m, m2, m1, q) for m in theta(n, d, ro, co)}
        if kind == "dot":
            shift = -ex.dot
        elif kind == "bullet":
            shift = 0
        else:
            # v^{-chi*} applied to the dot product
            shift = -ex.dot - CHI_STAR((m2.ro, m2.co), (m1.ro, m1.co))
    factor = v_power(shift, q)
    return KElement(n, q, {m: factor * c for m, c in counts.items() if c})


def k_multiply(x: KElement, y: KElement, kind: str = "dot") -> KElement:
    """Bilinear extension of :func:`basis_product`; ``x`` is the left factor."""
    if (x.n, x.q) != (y.n, y.q):
        raise ValueError("factors live in different algebras")
    out = KElement.zero(x.n, x.q)
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            out = out + basis_product(a, b, x.q, kind).scale(ca * cb)
    return out


def k_power(x: KElement, e: int, kind: str = "dot") -> KElement:
    out = KElement.unit(x.n, x.q)
    for _ in range(e):
        out = k_multiply(out, x, kind)
    return out


def tensor_multiply(s: KTensor, t: KTensor, kind: str = "dot") -> KTensor:
    out = KTensor(s.n, s.q)
    for (a, b), c in s._terms.items():
        for (a2, b2), c2 in t._terms.items():
            left = basis_product(a, a2, s.q, kind)
            right = basis_product(b, b2, s.q, kind)
            out = out + KTensor.pure(left, right).scale(c * c2)
    return out


# coproducts ------------------------------------------------------------


def basis_coproduct(L, q: int, kind: str = "plain") -> KTensor:
    L = as_matrix(L)
    if kind not in COPRODUCT_KINDS:
        raise ValueError(f"unknown coproduct kind {kind!r}")
    fg.GUARD.check(L.d, q)
    terms = {}
    for m, k, c in fg.coproduct_terms(L, q):
        coeff = EvaluatedScalar.const(c, q)
        if kind != "plain":
            ratio = Fraction(fg.stabilizer_order(m, q) * fg.stabilizer_order(k, q), fg.stabilizer_order(L, q))
            coeff = coeff * ratio
            if kind == "tilde":
                # (q^{-1/2})^{(3/2) d^2} = u^{-3 d^2}
                coeff = coeff * EvaluatedScalar.u_power(-3 * L.d * L.d, q)
        terms[(m, k)] = coeff
    return KTensor(L.n, q, terms)


def k_comultiply(x: KElement, kind: str = "plain") -> KTensor:
    out = KTensor(x.n, x.q)
    for m, c in x._terms.items():
        out = out + basis_coproduct(m, x.q, kind).scale(c)
    return out


def k_counit(x: KElement, kind: str = "plain") -> EvaluatedScalar:
    """Counit: supported on diagonal M; ``1/a_M`` for Δ′ and ``u^{3d^2}/a_M`` for ~Δ."""
    total = EvaluatedScalar.const(0, x.q)
    for m, c in x._terms.items():
        if not m.is_diagonal():
            continue
        if kind == "plain":
            total = total + c
        elif kind == "prime":
            total = total + c * Fraction(1, fg.stabilizer_order(m, x.q))
        elif kind == "tilde":
            total = total + c * Fraction(1, fg.stabilizer_order(m, x.q)) * EvaluatedScalar.u_power(3 * m.d * m.d, x.q)
        else:
            raise ValueError(f"unknown counit kind {kind!r}")
    return total


def apply_counit(t: KTensor, leg: int, kind: str = "plain") -> KElement:
    """``(ε ⊗ id) t`` for leg 0, ``(id ⊗ ε) t`` for leg 1."""
    out = KElement.zero(t.n, t.q)
    for (a, b), c in t._terms.items():
        eps_on, keep = (a, b) if leg == 0 else (b, a)
        e = k_counit(KElement.basis(eps_on, t.q), kind)
        if not e.is_zero():
            out = out + KElement.basis(keep, t.q, c * e)
    return out


def coassociativity_sides(L, q: int, kind: str = "plain"):
    """``((Δ⊗id)Δ, (id⊗Δ)Δ)`` on 1_L as dicts of triples."""
    outer = basis_coproduct(L, q, kind)
    left, right = {}, {}
    zero = EvaluatedScalar.const(0, q)
    for (a, b), c in outer._terms.items():
        for (a1, a2), c1 in basis_coproduct(a, q, kind)._terms.items():
            key = (a1, a2, b)
            left[key] = left.get(key, zero) + c * c1
        for (b1, b2), c2 in basis_coproduct(b, q, kind)._terms.items():
            key = (a, b1, b2)
            right[key] = right.get(key, zero) + c * c2
    clean = lambda dct: {k: x for k, x in dct.items() if not x.is_zero()}
    return clean(left), clean(right)


# symbolic comparison maps ---------------------------------------------------


_MODEL_PRODUCT = {"Phi": "circ", "Psi": "dot", "PsiPrime": "bullet", "Xi": "twisted_dot"}
_MODEL_KIND = {"Phi": FRT, "Psi": FRT, "PsiPrime": DD, "Xi": DD}


def embed_symbolic(x: NCPoly, q: int, model: str = "Psi") -> KElement:
    """Image in K of a symbolic element; DD generators c_ij go to 1_{e_ji}.

    The DD parameter is ``q = v^2`` of K, so DD coefficients are rescaled
    before evaluation. ``Xi`` uses the product ``v^{-chi*}·`` on K.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if x.kind != _MODEL_KIND[model]:
        raise ValueError(f"model {model} expects {_MODEL_KIND[model]} input, got {x.kind}")
    return embed_with_product(x, q, _MODEL_PRODUCT[model])


def embed_with_product(x: NCPoly, q: int, kind: str) -> KElement:
    """Evaluate the words of ``x`` as left-nested products of generators 1_{e_ij} in K."""
    n = x.n
    out = KElement.zero(n, q)
    for word, c in x._terms.items():
        if x.kind == DD:
            c = c.scale_exponents(2) if isinstance(c, (Scalar, ScalarFraction)) else c
            cells = [(j, i) for i, j in word]
        else:
            cells = list(word)
        acc = KElement.unit(n, q)
        for i, j in cells:
            acc = k_multiply(acc, KElement.basis(MatrixType.unit(n, i, j), q), kind)
        out = out + acc.scale(evaluate_any(c, q))
    return out


def determinant_element(n: int, q: int) -> KElement:
    """``Σ_σ (-1)^{l(σ)} 1_σ``."""
    return KElement(n, q, {MatrixType.permutation(p): (-1) ** ln for p, ln in fg.permutations_with_length(n)})


def generator(n: int, i: int, j: int, q: int) -> KElement:
    return KElement.basis(MatrixType.unit(n, i, j), q)


def transform_basis(x: KElement, f) -> KElement:
    """Linear map sending 1_M to 1_{f(M)}."""
    return KElement(x.n, x.q, {f(m): c for m, c in x._terms.items()})


class LocalizedK:
    """``x · det^{-k}`` in (K, ·) with det adjoined inverted; det is central for ·."""

    __slots__ = ("x", "k")

    def __init__(self, x: KElement, k: int = 0):
        self.x = x
        self.k = k

    def _cleared(self, k: int) -> KElement:
        """Numerator over ``det^{-k}`` for ``k >= self.k``."""
        det = determinant_element(self.x.n, self.x.q)
        return k_multiply(self.x, k_power(det, k - self.k, "dot"), "dot")

    def __mul__(self, other: "LocalizedK") -> "LocalizedK":
        return LocalizedK(k_multiply(self.x, other.x, "dot"), self.k + other.k)

    def __add__(self, other: "LocalizedK") -> "LocalizedK":
        k = max(self.k, other.k)
        return LocalizedK(self._cleared(k) + other._cleared(k), k)

    def __eq__(self, other):
        if not isinstance(other, LocalizedK):
            return NotImplemented
        k = max(self.k, other.k)
        return self._cleared(k) == other._cleared(k)

    __hash__ = None


# verification ------------------------------------------------------------


def _report(suite, n, q, d, instances, failures):
    return {"suite": suite, "n": n, "q": q, "d": d, "instances": instances, "failures": failures}


def _j(x):
    if isinstance(x, MatrixType):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    return x


def green_instances(n: int, d: int):
    """``(L'', L', M, N)`` with ``deg L'' + deg L' = d`` and compatible margins."""
    out = []
    for d2 in range(d + 1):
        for L2 in theta(n, d2):
            for L1 in theta(n, d - d2):
                ro, co = _margins(L2, L1)
                for mid in fg.compositions(n, d):
                    for M in theta(n, d, ro, mid):
                        for N in theta(n, d, mid, co):
                            out.append((L2, L1, M, N))
    return out


def green_sides(L2, L1, M, N, q: int):
    """Both sides of Σ_L h^L_{L'',L'} c^L_{M,N} = Σ h^M_{M'',M'} h^N_{N'',N'} c^{L''}_{M'',N''} c^{L'}_{M',N'}."""
    n = L2.n
    ro, co = _margins(L2, L1)
    lhs = sum(fg.structure_h(L, L2, L1, q) * fg.structure_c(L, M, N, q) for L in theta(n, L2.d + L1.d, ro, co))
    rhs = 0
    for M2, N2, _ in fg.coproduct_terms(L2, q):
        for M1, N1, _ in fg.coproduct_terms(L1, q):
            h_m = fg.structure_h(M, M2, M1, q)
            if not h_m:
                continue
            h_n = fg.structure_h(N, N2, N1, q)
            if not h_n:
                continue
            rhs += h_m * h_n * fg.structure_c(L2, M2, N2, q) * fg.structure_c(L1, M1, N1, q)
    return lhs, rhs


def verify_green(n: int, d: int, q: int, sample: int | None = None, seed: int = 0):
    """Check the Green identity on every compatible instance (or a seeded sample)."""
    insts = green_instances(n, d)
    if sample is not None and sample < len(insts):
        insts = random.Random(seed).sample(insts, sample)
    failures = []
    for L2, L1, M, N in insts:
        lhs, rhs = green_sides(L2, L1, M, N, q)
        if lhs != rhs:
            failures.append({"inputs": [_j(L2), _j(L1), _j(M), _j(N)], "lhs": lhs, "rhs": rhs})
    return _report("green", n, q, d, len(insts), failures)


def _lower(a, b):
    return sum(a[i] * b[j] for i in range(len(a)) for j in range(len(b)) if i < j)


def mult_h_instances(n: int, d: int):
    out = []
    for d2 in range(d + 1):
        for M2 in theta(n, d2):
            for M1 in theta(n, d - d2):
                ro, co = _margins(M2, M1)
                for M in theta(n, d, ro, co):
                    out.append((M, M2, M1))
    return out


def mult_h_sides(M, M2, M1, q: int):
    """``(g, q^{Σ c'_i c''_j - d'd''} a_M / (a_{M''} a_{M'}) h)`` as Fractions."""
    e = _lower(M1.ro, M2.ro) - M2.d * M1.d
    g = fg.structure_g(M, M2, M1, q)
    h = fg.structure_h(M, M2, M1, q)
    ratio = Fraction(fg.stabilizer_order(M, q), fg.stabilizer_order(M2, q) * fg.stabilizer_order(M1, q))
    return Fraction(g), Fraction(q) ** e * ratio * h


def verify_mult_h(n: int, d: int, q: int):
    insts = mult_h_instances(n, d)
    failures = []
    for M, M2, M1 in insts:
        lhs, rhs = mult_h_sides(M, M2, M1, q)
        if lhs != rhs:
            failures.append({"inputs": [_j(M), _j(M2), _j(M1)], "lhs": str(lhs), "rhs": str(rhs)})
    return _report("mult-h", n, q, d, len(insts), failures)


def structure_table(kind: str, n: int, d: int, q: int):
    """Rows ``(L, M, N, value)`` of a constant table in degree d (``a`` rows use only L)."""
    rows = []
    if kind == "c":
        for L in theta(n, d):
            for m, k in fg._c_slots(L):
                rows.append((L, m, k, fg.structure_c(L, m, k, q)))
    elif kind in ("h", "g"):
        func = fg.structure_h if kind == "h" else fg.structure_g
        for M, M2, M1 in mult_h_instances(n, d):
            rows.append((M, M2, M1, func(M, M2, M1, q)))
    elif kind == "a":
        for L in theta(n, d):
            rows.append((L, None, None, fg.stabilizer_order(L, q)))
    else:
        raise ValueError(f"unknown constant kind {kind!r}")
    return rows


def table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["L", "M", "N", "value"])
    for L, M, N, val in rows:
        w.writerow([str(x) if x is not None else "" for x in (L, M, N)] + [val])
    return buf.getvalue()


# relation tables -----------------------------------------------------------

# Columns name the (left, right) generator pair of a two-letter product and rows
# name the orbit e_x + e_y, both in terms of the index letters of the pattern.
RELATION_PATTERNS = {
    "a": {"cols": [("jl", "ik"), ("ik", "jl")], "rows": [("jk", "il"), ("jl", "ik")]},
    "b": {"cols": [("jl", "ik"), ("ik", "jl"), ("jk", "il")], "rows": [("jl", "ik"), ("jk", "il")]},
    "c": {"cols": [("il", "ik"), ("ik", "il")], "rows": [("ik", "il")]},
    "d": {"cols": [("jk", "ik"), ("ik", "jk")], "rows": [("ik", "jk")]},
}


def relation_instances(pattern: str, n: int = 2):
    """Index choices ``{i, j, k, l}`` allowed by a pattern.

    ``a``: i>j, k<l; ``b``: i>j, k>l; ``c``: k>l in one row i; ``d``: i>j in one column k.
    """
    r = range(1, n + 1)
    out = []
    for i, j, k, l in itertools.product(r, r, r, r):
        if pattern == "a" and i > j and k < l:
            out.append(dict(i=i, j=j, k=k, l=l))
        elif pattern == "b" and i > j and k > l:
            out.append(dict(i=i, j=j, k=k, l=l))
        elif pattern == "c" and k > l and j == 1:
            out.append(dict(i=i, k=k, l=l))
        elif pattern == "d" and i > j and l == 1:
            out.append(dict(i=i, j=j, k=k))
    return out


def relation_table(pattern: str, q: int, kind: str = "circ", n: int = 2, idx=None, columns=None):
    """Counts and shifts for the two-letter products of one relation pattern.

    Returns ``{"columns": [(left, right)], "shifts": [...], "rows": {orbit: [counts]}}``;
    shifts are ``f1 - f2`` for ``circ`` and the ``dot`` exponent otherwise.
    """
    layout = RELATION_PATTERNS[pattern]
    idx = idx or relation_instances(pattern, n)[0]
    cell = lambda name: MatrixType.unit(n, idx[name[0]], idx[name[1]])
    columns = [(cell(a), cell(b)) for a, b in (columns or layout["cols"])]
    orbits = [cell(a) + cell(b) for a, b in layout["rows"]]
    shifts = []
    rows = {m: [] for m in orbits}
    for a, b in columns:
        ex = fg.twist_exponents(a, b)
        shifts.append(ex.circ if kind == "circ" else ex.dot)
        func = fg.structure_g if kind == "circ" else fg.structure_h
        for m in orbits:
            rows[m].append(func(m, a, b, q))
    return {"columns": columns, "shifts": shifts, "rows": rows}


def divided_power_check(i: int, j: int, m: int, q: int, n: int = 2):
    """``(1_{e} ∘ 1_{m e}, [m+1]_v 1_{(m+1) e})`` for ``e = e_ij``."""
    lhs = basis_product(MatrixType.unit(n, i, j), MatrixType.unit(n, i, j, m), q, "circ")
    rhs = KElement.basis(MatrixType.unit(n, i, j, m + 1), q, evaluate(qint(m + 1), q))
    return lhs, rhs


def all_pairs(n: int, max_degree: int):
    """Pairs (M'', M') with total degree at most ``max_degree``."""
    out = []
    for d2 in range(max_degree + 1):
        for d1 in range(max_degree + 1 - d2):
            out.extend(itertools.product(theta(n, d2), theta(n, d1)))
    return out
