"""Exact coefficients.

A :class:`Scalar` is a Laurent polynomial in ``u = q^(1/4)`` with rational
coefficients; ``v = u^2`` is the quantum parameter and ``q = u^4`` the size of
the finite field.  Exponents are always stored in quarter units, so ``v^k`` is
the monomial ``u^(2k)``.

An :class:`EvaluatedScalar` is an element of the number field
``Q[u]/(u^4 - q)`` for a fixed prime ``q``.  Since ``u^4 - q`` is Eisenstein at
``q`` this is a field, and equality is componentwise.

:class:`ScalarFraction` is a formal quotient of two Scalars, needed only for
divided powers (``[m]!`` is not a unit in the Laurent ring).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _frac(c):
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


def is_prime(q: int) -> bool:
    if not isinstance(q, int) or q < 2:
        return False
    k = 2
    while k * k <= q:
        if q % k == 0:
            return False
        k += 1
    return True


class Scalar:
    """Sparse Laurent polynomial ``sum c_k u^k``; immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in dict(terms).items():
                c = _frac(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def const(cls, c) -> "Scalar":
        return cls({0: c})

    @classmethod
    def u(cls, k: int = 1, c=1) -> "Scalar":
        return cls({k: c})

    @classmethod
    def v(cls, k: int = 1, c=1) -> "Scalar":
        return cls({2 * k: c})

    @classmethod
    def q(cls, k: int = 1, c=1) -> "Scalar":
        return cls({4 * k: c})

    # accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def in_v(self) -> bool:
        """True when only even quarter-exponents (integral powers of v) occur."""
        return all(k % 2 == 0 for k in self._terms)

    def degree_range(self):
        if not self._terms:
            raise ValueError("zero has no degree")
        return min(self._terms), max(self._terms)

    # ring structure

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible in the Laurent ring")
            ((k, c),) = self._terms.items()
            return Scalar({k * e: c ** e})
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod_exact(self, other: "Scalar") -> "Scalar":
        """Exact quotient ``self / other``; ValueError if it is not a Laurent polynomial."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return ZERO
        lo_b, hi_b = other.degree_range()
        lead = other._terms[hi_b]
        rem = dict(self._terms)
        quot = {}
        # long division from the top degree; stops once remainder falls below other's span
        while rem:
            hi_r = max(rem)
            lo_r = min(rem)
            if hi_r - lo_r < hi_b - lo_b:
                raise ValueError("not an exact quotient")
            shift = hi_r - hi_b
            c = rem[hi_r] / lead
            quot[shift] = quot.get(shift, 0) + c
            for k, cb in other._terms.items():
                key = k + shift
                val = rem.get(key, 0) - c * cb
                if val:
                    rem[key] = val
                else:
                    rem.pop(key, None)
        return Scalar(quot)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Scalar({k: c / other for k, c in self._terms.items()})
        if isinstance(other, Scalar):
            return self.divmod_exact(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # transformations

    def bar(self) -> "Scalar":
        """The involution ``u -> u^-1``."""
        return Scalar({-k: c for k, c in self._terms.items()})

    def scale_exponents(self, factor: int) -> "Scalar":
        """Substitute ``u -> u^factor``; with factor 2 this reads ``v`` as ``q``."""
        return Scalar({k * factor: c for k, c in self._terms.items()})

    def evaluate(self, q: int) -> "EvaluatedScalar":
        return evaluate(self, q)

    # rendering

    def to_json(self) -> dict:
        return {str(k): f"{c.numerator}/{c.denominator}" for k, c in self.items()}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        return cls({int(k): Fraction(val) for k, val in obj.items()})

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            if k == 0:
                mono = ""
            elif k % 2 == 0:
                mono = "v" if k == 2 else f"v^{k // 2}"
            else:
                mono = f"u^{k}"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


ZERO = Scalar()
ONE = Scalar.const(1)
V = Scalar.v(1)


# quantum integers ----------------------------------------------------------


@lru_cache(maxsize=None)
def qint(n: int) -> Scalar:
    """``[n]_v = v^(n-1) + v^(n-3) + ... + v^(1-n)``."""
    if n < 0:
        return -qint(-n)
    return Scalar({2 * (n - 1 - 2 * t): 1 for t in range(n)})


@lru_cache(maxsize=None)
def qfactorial(n: int) -> Scalar:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinomial(m: int, n: int) -> Scalar:
    if n < 0 or m < n:
        raise ValueError(f"binomial [{m} choose {n}] needs m >= n >= 0")
    return qfactorial(m).divmod_exact(qfactorial(n) * qfactorial(m - n))


def quantum_combinatorics(m: int, n: int = 0, which: str = "binomial") -> Scalar:
    """Selector front end: ``which`` is ``"int"`` ([m]), ``"factorial"`` ([m]!) or ``"binomial"``."""
    if which == "int":
        return qint(m)
    if which == "factorial":
        return qfactorial(m)
    if which == "binomial":
        return qbinomial(m, n)
    raise ValueError(f"unknown selector {which!r}")


# evaluation at a prime -----------------------------------------------------


class EvaluatedScalar:
    """``c0 + c1 u + c2 u^2 + c3 u^3`` in ``Q[u]/(u^4 - q)``."""

    __slots__ = ("c", "q")

    def __init__(self, coeffs, q: int):
        c = tuple(_frac(x) for x in coeffs)
        if len(c) != 4:
            raise ValueError("need four coefficients")
        self.c = c
        self.q = q

    @classmethod
    def const(cls, x, q: int) -> "EvaluatedScalar":
        return cls((x, 0, 0, 0), q)

    @classmethod
    def u_power(cls, k: int, q: int, coeff=1) -> "EvaluatedScalar":
        e, r = divmod(k, 4)
        c = [0, 0, 0, 0]
        c[r] = _frac(coeff) * Fraction(q) ** e
        return cls(c, q)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def _coerce(self, other):
        if isinstance(other, EvaluatedScalar):
            if other.q != self.q:
                raise ValueError(f"modulus mismatch: q={self.q} vs q={other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return EvaluatedScalar.const(other, self.q)
        if isinstance(other, Scalar):
            return evaluate(other, self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EvaluatedScalar([a + b for a, b in zip(self.c, other.c)], self.q)

    __radd__ = __add__

    def __neg__(self):
        return EvaluatedScalar([-a for a in self.c], self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EvaluatedScalar([a - b for a, b in zip(self.c, other.c)], self.q)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        acc[i + j] += a * b
        q = self.q
        return EvaluatedScalar(
            [acc[0] + q * acc[4], acc[1] + q * acc[5], acc[2] + q * acc[6], acc[3]], q
        )

    __rmul__ = __mul__

    def inverse(self) -> "EvaluatedScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # columns of the multiplication-by-self matrix are self * u^k
        cols = [(self * EvaluatedScalar.u_power(k, self.q)).c for k in range(4)]
        aug = [[cols[k][r] for k in range(4)] + [Fraction(int(r == 0))] for r in range(4)]
        for col in range(4):
            piv = next(r for r in range(col, 4) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(4):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return EvaluatedScalar([aug[r][4] for r in range(4)], self.q)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = EvaluatedScalar.const(1, self.q)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self._coerce(other)
        if not isinstance(other, EvaluatedScalar):
            return NotImplemented
        return self.q == other.q and self.c == other.c

    def __hash__(self):
        return hash((self.c, self.q))

    def to_json(self) -> dict:
        return {"q": self.q, "c": [f"{x.numerator}/{x.denominator}" for x in self.c]}

    def __repr__(self):
        return f"EvaluatedScalar({[str(x) for x in self.c]}, q={self.q})"

    def __str__(self):
        names = ["", "u", "u^2", "u^3"]
        parts = [f"{x}{'*' + names[k] if k else ''}" for k, x in enumerate(self.c) if x]
        return " + ".join(parts) if parts else "0"


def evaluate(a: Scalar, q: int) -> EvaluatedScalar:
    """Ring homomorphism ``Z[u, u^-1] ⊗ Q -> Q[u]/(u^4 - q)`` for prime ``q``."""
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    out = [Fraction(0)] * 4
    for k, c in a._terms.items():
        e, r = divmod(k, 4)
        out[r] += c * Fraction(q) ** e
    return EvaluatedScalar(out, q)


class ScalarFraction:
    """Formal quotient ``num / den`` of Scalars; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = num if isinstance(num, Scalar) else Scalar.const(num)
        den = den if isinstance(den, Scalar) else Scalar.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not num.is_zero():
            try:
                num, den = num.divmod_exact(den), ONE
            except ValueError:
                pass
        else:
            den = ONE
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, ScalarFraction):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return ScalarFraction(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return ScalarFraction(self.num + other.num, self.den)
        return ScalarFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarFraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ScalarFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ScalarFraction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self.den == ONE:
            return hash(self.num)
        return hash(ScalarFraction)  # unreduced quotients have no canonical form

    def scale_exponents(self, factor: int) -> "ScalarFraction":
        return ScalarFraction(self.num.scale_exponents(factor), self.den.scale_exponents(factor))

    def evaluate(self, q: int) -> EvaluatedScalar:
        return evaluate(self.num, q) / evaluate(self.den, q)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        return f"ScalarFraction({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def evaluate_any(c, q: int) -> EvaluatedScalar:
    if isinstance(c, ScalarFraction):
        return c.evaluate(q)
    if isinstance(c, Scalar):
        return evaluate(c, q)
    return EvaluatedScalar.const(c, q)
