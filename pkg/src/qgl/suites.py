"""Verification suites shared by the command line and the test-suite.

Each suite returns ``{"suite", "n", "q", "d", "instances", "failures"}``;
a failure records its ``inputs`` and both sides as strings.
"""

from __future__ import annotations

from . import convolution as cv
from . import flaggeo as fg
from . import qalgebra as qa
from .flaggeo import MatrixType, theta


def _report(suite, n, q, d, instances, failures):
    return {"suite": suite, "n": n, "q": q, "d": d, "instances": instances, "failures": failures}


def _fail(inputs, lhs, rhs):
    return {"inputs": inputs, "lhs": str(lhs), "rhs": str(rhs)}


def relations(model: str, n: int, q: int):
    kind = qa.DD if model == "PsiPrime" else qa.FRT
    failures, count = [], 0
    for label, lhs, rhs in qa.defining_relations(kind, n):
        count += 1
        image = cv.embed_symbolic(qa.NCPoly.word(kind, n, lhs) - rhs, q, model)
        if not image.is_zero():
            failures.append(_fail(label, image, 0))
    return count, failures


def pbw(n: int, d: int, q: int):
    failures, count = [], 0
    for M in theta(n, d):
        count += 1
        lhs = cv.embed_symbolic(qa.pbw_monomial(M, qa.FRT, divided=True), q, "Phi")
        rhs = cv.KElement.basis(M, q, cv.v_power(-fg.orbit_dim(M), q))
        if lhs != rhs:
            failures.append(_fail(M.to_json(), lhs, rhs))
    return count, failures


def lex_product(M: MatrixType, q: int, kind: str):
    """``E^M``: product of the generators 1_{e_ij}, each repeated m_ij times, pairs in lex order."""
    acc = cv.KElement.unit(M.n, q)
    for i, j, m in M.cells():
        for _ in range(m):
            acc = cv.k_multiply(acc, cv.generator(M.n, i, j, q), kind)
    return acc


def newpbw(n: int, d: int, q: int):
    failures, count = [], 0
    for M in theta(n, d):
        cross = fg.crossing_number(M)
        count += 2
        lhs = cv.embed_symbolic(qa.pbw_monomial(M, qa.FRT), q, "Psi")
        rhs = cv.KElement.basis(M, q, cv.v_power(cross, q))
        if lhs != rhs:
            failures.append(_fail({"model": "Psi", "M": M.to_json()}, lhs, rhs))
        lhs = lex_product(M, q, "bullet")
        rhs = cv.KElement.basis(M, q, cv.v_power(2 * cross, q))
        if lhs != rhs:
            failures.append(_fail({"model": "PsiPrime", "M": M.to_json()}, lhs, rhs))
    return count, failures


def determinant(n: int, q: int):
    target = cv.determinant_element(n, q)
    failures = []
    for model, kind in (("Psi", qa.FRT), ("PsiPrime", qa.DD)):
        image = cv.embed_symbolic(qa.det(n, kind), q, model)
        if image != target:
            failures.append(_fail(model, image, target))
    return 2, failures


def hopf(n: int):
    """``Σ_k S(E_ik) E_kj = δ_ij = Σ_k E_ik S(E_kj)`` in the localized FRT algebra."""
    failures, count = [], 0
    E = lambda i, j: qa.NCPoly.gen(qa.FRT, n, i, j)
    S = lambda i, j: qa.antipode_generator(i, j, n)
    one = qa.LocalizedElement.from_poly(qa.NCPoly.one(qa.FRT, n))
    zero = qa.LocalizedElement(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            target = one if i == j else zero
            left = zero
            right = zero
            for k in range(1, n + 1):
                left = left + S(i, k) * E(k, j)
                right = right + E(i, k) * S(k, j)
            for side, val in (("left", left), ("right", right)):
                count += 1
                if val != target:
                    failures.append(_fail({"side": side, "i": i, "j": j}, repr(val), repr(target)))
    return count, failures


def antipode_compat(n: int):
    """``S(Xi(c_ij)) = Xi(S^DD(c_ij))`` with Xi(c_ij) = E_ji."""
    failures, count = [], 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            count += 1
            lhs = qa.antipode_generator(j, i, n)
            rhs = qa.antipode_dd_via_xi(i, j, n)
            if lhs != rhs:
                failures.append(_fail({"i": i, "j": j}, repr(lhs), repr(rhs)))
    return count, failures


def antipode_inverse(n: int):
    """``S(Xi(S^DD(c_ij))) = Xi(c_ij)``: the transported antipode is the inverse of S."""
    failures, count = [], 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            count += 1
            lhs = qa.antipode(qa.antipode_dd_via_xi(i, j, n))
            rhs = qa.LocalizedElement.from_poly(qa.NCPoly.gen(qa.FRT, n, j, i))
            if lhs != rhs:
                failures.append(_fail({"i": i, "j": j}, repr(lhs), repr(rhs)))
    return count, failures


def transported_antipode(n: int):
    """Right antipode axiom of the transported map in the twisted product: Σ_k Xi(c_ik) ⊛ Xi(S^DD(c_kj)) = δ_ij."""
    failures, count = [], 0
    chi = qa.FRT_TO_DD_TWIST
    one = qa.LocalizedElement.from_poly(qa.NCPoly.one(qa.FRT, n))
    zero = qa.LocalizedElement(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            count += 1
            total = zero
            for k in range(1, n + 1):
                left = qa.LocalizedElement.from_poly(qa.NCPoly.gen(qa.FRT, n, k, i))
                total = total + qa.twisted_localized_multiply(left, qa.antipode_dd_via_xi(k, j, n), chi)
            target = one if i == j else zero
            if total != target:
                failures.append(_fail({"i": i, "j": j}, repr(total), repr(target)))
    return count, failures


def coassoc(n: int, d: int, q: int):
    failures, count = [], 0
    for deg in range(d + 1):
        for L in theta(n, deg):
            count += 3
            left, right = cv.coassociativity_sides(L, q)
            if left != right:
                failures.append(_fail({"check": "coassociativity", "L": L.to_json()}, left, right))
            D = cv.basis_coproduct(L, q)
            x = cv.KElement.basis(L, q)
            for leg in (0, 1):
                got = cv.apply_counit(D, leg)
                if got != x:
                    failures.append(_fail({"check": f"counit-{leg}", "L": L.to_json()}, got, x))
    for kind in ("dot", "bullet"):
        for a in theta(n, 1):
            for b in theta(n, 1):
                count += 1
                x, y = cv.KElement.basis(a, q), cv.KElement.basis(b, q)
                lhs = cv.k_comultiply(cv.k_multiply(x, y, kind))
                rhs = cv.tensor_multiply(cv.k_comultiply(x), cv.k_comultiply(y), kind)
                if lhs != rhs:
                    failures.append(_fail({"check": f"hom-{kind}", "pair": [a.to_json(), b.to_json()]}, lhs, rhs))
    return count, failures


def tilde_hom(n: int, q: int):
    failures, count = [], 0
    for a in theta(n, 1):
        for b in theta(n, 1):
            count += 1
            x, y = cv.KElement.basis(a, q), cv.KElement.basis(b, q)
            lhs = cv.k_comultiply(cv.k_multiply(x, y, "circ"), "tilde")
            rhs = cv.tensor_multiply(cv.k_comultiply(x, "tilde"), cv.k_comultiply(y, "tilde"), "circ")
            if lhs != rhs:
                failures.append(_fail({"check": "tilde-hom", "pair": [a.to_json(), b.to_json()]}, lhs, rhs))
    # E'_ij = (q - 1) 1_{e_ij} comultiplies like a matrix coalgebra under Δ'
    Ep = lambda i, j: cv.generator(n, i, j, q).scale(q - 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            count += 1
            lhs = cv.k_comultiply(Ep(i, j), "prime")
            rhs = cv.KTensor(n, q)
            for k in range(1, n + 1):
                rhs = rhs + cv.KTensor.pure(Ep(i, k), Ep(k, j))
            if lhs != rhs:
                failures.append(_fail({"check": "prime-generators", "i": i, "j": j}, lhs, rhs))
    return count, failures


def twist_iso(n: int, d: int, q: int):
    failures, count = [], 0
    for label, lhs, rhs in qa.defining_relations(qa.DD, n):
        count += 1
        image = qa.xi(qa.NCPoly.word(qa.DD, n, lhs) - rhs)
        if not image.is_zero():
            failures.append(_fail({"check": "xi-relation", "relation": label}, image.normal_form(), 0))
    for a, b in cv.all_pairs(n, d):
        count += 1
        lhs = cv.basis_product(a, b, q, "dot")
        e = qa.CHI_STAR((a.ro, a.co), (b.ro, b.co))
        rhs = cv.basis_product(a, b, q, "bullet").scale(cv.v_power(e, q))
        if lhs != rhs:
            failures.append(_fail({"check": "dot-vs-bullet", "pair": [a.to_json(), b.to_json()]}, lhs, rhs))
    return count, failures


def tau(n: int, d: int, q: int):
    failures, count = [], 0
    for a, b in cv.all_pairs(n, d):
        count += 2
        p = cv.basis_product(a, b, q)
        t1 = cv.basis_product(a.transpose(), b.transpose(), q)
        if cv.transform_basis(p, MatrixType.transpose) != t1:
            failures.append(_fail({"check": "tau1", "pair": [a.to_json(), b.to_json()]}, cv.transform_basis(p, MatrixType.transpose), t1))
        t2 = cv.basis_product(b.reversed(), a.reversed(), q)
        if cv.transform_basis(p, MatrixType.reversed) != t2:
            failures.append(_fail({"check": "tau2", "pair": [a.to_json(), b.to_json()]}, cv.transform_basis(p, MatrixType.reversed), t2))
    for which in ("tau1", "tau2", "tau3"):
        for label, lhs, rhs in qa.defining_relations(qa.FRT, n):
            count += 1
            image = qa.involution(qa.NCPoly.word(qa.FRT, n, lhs) - rhs, which)
            if not image.is_zero():
                failures.append(_fail({"check": which, "relation": label}, image, 0))
    return count, failures


def run_suite(suite: str, n: int, d: int, q: int, sample: int | None = None):
    fg.GUARD.check(d, q)
    if suite == "green":
        report = cv.verify_green(n, d, q, sample=sample)
        report["failures"] = [{**f, "lhs": str(f["lhs"]), "rhs": str(f["rhs"])} for f in report["failures"]]
        return report
    if suite == "mult-h":
        return cv.verify_mult_h(n, d, q)
    table = {
        "relations-circ": lambda: relations("Phi", n, q),
        "relations-dot": lambda: relations("Psi", n, q),
        "relations-bullet": lambda: relations("PsiPrime", n, q),
        "pbw": lambda: pbw(n, d, q),
        "newpbw": lambda: newpbw(n, d, q),
        "determinant": lambda: determinant(n, q),
        "hopf": lambda: hopf(n),
        "antipode-compat": lambda: antipode_compat(n),
        "antipode-inverse": lambda: antipode_inverse(n),
        "transported-antipode": lambda: transported_antipode(n),
        "coassoc": lambda: coassoc(n, d, q),
        "tilde-hom": lambda: tilde_hom(n, q),
        "twist-iso": lambda: twist_iso(n, d, q),
        "tau": lambda: tau(n, d, q),
    }
    if suite not in table:
        raise ValueError(f"unknown suite {suite!r}")
    count, failures = table[suite]()
    return _report(suite, n, q, d, count, failures)
