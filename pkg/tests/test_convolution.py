"""Convolution algebra K: products, coproducts, counits and the comparison maps."""

import itertools

import pytest

from qgl import convolution as cv
from qgl import flaggeo as fg
from qgl import qalgebra as qa
from qgl.convolution import KElement, KTensor
from qgl.flaggeo import MatrixType, theta
from qgl.scalars import EvaluatedScalar, evaluate, qint

e = MatrixType.unit
SWAP = e(2, 1, 2) + e(2, 2, 1)
DIAG = e(2, 1, 1) + e(2, 2, 2)


def B(m, q, c=1):
    return KElement.basis(m, q, c)


@pytest.mark.parametrize("q", [2, 3])
def test_product_examples(q):
    v = cv.v_power(1, q)
    for m in range(1, 4):
        lhs, rhs = cv.divided_power_check(1, 2, m, q)
        assert lhs == rhs
        assert rhs.coefficient(e(2, 1, 2, m + 1)) == evaluate(qint(m + 1), q)
    assert cv.basis_product(e(2, 1, 2), e(2, 2, 1), q, "dot") == B(SWAP, q, v)
    assert cv.basis_product(e(2, 2, 1), e(2, 1, 2), q, "dot") == B(SWAP, q, v)
    expected = B(DIAG, q) + B(SWAP, q, q - 1)
    assert cv.basis_product(e(2, 2, 2), e(2, 1, 1), q, "bullet") == expected


def test_unit_and_degrees():
    q = 2
    one = KElement.unit(2, q)
    x = cv.generator(2, 1, 2, q)
    for kind in cv.PRODUCT_KINDS:
        assert cv.k_multiply(one, x, kind) == x
        assert cv.k_multiply(x, one, kind) == x
    prod = cv.k_multiply(cv.generator(2, 1, 1, q), x, "circ")
    assert prod.degrees() == {2}


def test_unknown_kind():
    with pytest.raises(ValueError):
        cv.basis_product(e(2, 1, 1), e(2, 1, 1), 2, "star")
    with pytest.raises(ValueError):
        cv.basis_coproduct(e(2, 1, 1), 2, "star")


def _triples(n, total):
    for d in range(total + 1):
        for parts in itertools.product(range(d + 1), repeat=3):
            if sum(parts) == d:
                for triple in itertools.product(*(theta(n, p) for p in parts)):
                    yield triple


@pytest.mark.parametrize("kind", ["circ", "circ_prime", "dot", "bullet"])
def test_associativity(kind):
    q = 2
    for a, b, c in _triples(2, 3):
        A, Bx, C = B(a, q), B(b, q), B(c, q)
        left = cv.k_multiply(cv.k_multiply(A, Bx, kind), C, kind)
        right = cv.k_multiply(A, cv.k_multiply(Bx, C, kind), kind)
        assert left == right, (a, b, c)


def test_coproduct_examples():
    q = 2
    D = cv.basis_coproduct(e(2, 1, 1), q)
    expected = KTensor.pure(B(e(2, 1, 1), q), B(e(2, 1, 1), q)) + KTensor.pure(B(e(2, 1, 2), q), B(e(2, 2, 1), q))
    assert D == expected
    one = KElement.unit(2, q)
    assert cv.k_comultiply(one) == KTensor.pure(one, one)
    assert cv.k_counit(B(e(2, 1, 1), q)) == 1
    assert cv.k_counit(B(e(2, 1, 2), q)) == 0


@pytest.mark.parametrize("kind", cv.COPRODUCT_KINDS)
@pytest.mark.parametrize("q", [2, 3])
def test_coalgebra_axioms(kind, q):
    for d in range(3):
        for L in theta(2, d):
            left, right = cv.coassociativity_sides(L, q, kind)
            assert left == right
            D = cv.basis_coproduct(L, q, kind)
            for leg in (0, 1):
                assert cv.apply_counit(D, leg, kind) == B(L, q)


def test_diagonal_counit_rule():
    # c^L_{diag, N} = delta_{N, L}
    q = 2
    for d in range(3):
        for L in theta(2, d):
            for M, N, c in fg.coproduct_terms(L, q):
                if M.is_diagonal():
                    assert (N, c) == (L, 1)


def test_tilde_coefficients_leave_the_v_lattice():
    q = 2
    D = cv.basis_coproduct(e(2, 1, 1), q, "tilde")
    coeff = D.terms[(e(2, 1, 1), e(2, 1, 1))]
    assert coeff == EvaluatedScalar.u_power(-3, q)
    assert not coeff.is_rational()


@pytest.mark.parametrize("q", [2, 3])
def test_coproduct_is_multiplicative(q):
    for kind in ("dot", "bullet"):
        for a, b in itertools.product(theta(2, 1), repeat=2):
            x, y = B(a, q), B(b, q)
            lhs = cv.k_comultiply(cv.k_multiply(x, y, kind))
            rhs = cv.tensor_multiply(cv.k_comultiply(x), cv.k_comultiply(y), kind)
            assert lhs == rhs


def test_tilde_coproduct_is_multiplicative_for_circ():
    from qgl.suites import tilde_hom

    for n in (2, 3):
        count, failures = tilde_hom(n, 2)
        assert count > 0 and failures == []


def test_determinant_examples():
    q = 2
    assert cv.determinant_element(1, q) == B(e(1, 1, 1), q)
    assert cv.determinant_element(2, q) == B(DIAG, q) - B(SWAP, q)
    signs = sorted(c.rational() for c in cv.determinant_element(3, q).terms.values())
    assert signs == [-1, -1, -1, 1, 1, 1]


@pytest.mark.parametrize("q", [2, 3])
def test_determinant_is_central(q):
    det = cv.determinant_element(2, q)
    for i, j in itertools.product((1, 2), repeat=2):
        x = cv.generator(2, i, j, q)
        assert cv.k_multiply(det, x, "dot") == cv.k_multiply(x, det, "dot")


def test_localized_equality():
    q = 2
    det = cv.LocalizedK(cv.determinant_element(2, q))
    inv = cv.LocalizedK(KElement.unit(2, q), 1)
    assert det * inv == cv.LocalizedK(KElement.unit(2, q))
    x = cv.LocalizedK(cv.generator(2, 1, 2, q))
    assert x + x == cv.LocalizedK(cv.generator(2, 1, 2, q).scale(2))


@pytest.mark.parametrize("model", ["Phi", "Psi", "PsiPrime", "Xi"])
@pytest.mark.parametrize("n", [2, 3])
def test_relations_vanish_in_each_model(model, n):
    kind = qa.FRT if model in ("Phi", "Psi") else qa.DD
    for q in (2, 3, 5):
        for label, lhs, rhs in qa.defining_relations(kind, n):
            image = cv.embed_symbolic(qa.NCPoly.word(kind, n, lhs) - rhs, q, model)
            assert image.is_zero(), (label, q)


def test_model_kind_is_checked():
    with pytest.raises(ValueError):
        cv.embed_symbolic(qa.NCPoly.gen(qa.DD, 2, 1, 1), 2, "Psi")


def test_twisted_dot_matches_bullet():
    for q in (2, 3):
        for a, b in cv.all_pairs(2, 2):
            assert cv.basis_product(a, b, q, "twisted_dot") == cv.basis_product(a, b, q, "bullet")


def test_prime_generators():
    from qgl.suites import tilde_hom

    count, failures = tilde_hom(3, 3)
    assert failures == []


def test_tau_transport():
    from qgl.suites import tau

    for q in (2, 3):
        count, failures = tau(2, 2, q)
        assert count > 0 and failures == []


def test_table_csv():
    rows = cv.structure_table("a", 2, 1, 2)
    text = cv.table_csv(rows)
    assert text.splitlines()[0] == "L,M,N,value"
    assert len(text.splitlines()) == 1 + len(rows)
