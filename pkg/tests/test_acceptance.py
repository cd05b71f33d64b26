"""Acceptance criteria 1-12, exact equality throughout.

Each test starts from an empty in-memory constant cache so the measured time
includes all counting. Results are printed one line per criterion at the end
of the pytest run.
"""

import contextlib
import itertools
import random
import time

import pytest

from conftest import record
from qgl import convolution as cv
from qgl import qalgebra as qa
from qgl import suites
from qgl.cache import ConstantCache, default_cache, set_default_cache
from qgl.cli import SUITES, cache_roundtrip, run_command
from qgl.expr import parse_expression, random_expression, to_text
from qgl.flaggeo import MatrixType
from qgl.qalgebra import DD, FRT, NCPoly
from qgl.scalars import qbinomial, qint

pytestmark = pytest.mark.acceptance


@pytest.fixture(autouse=True)
def cold_cache(monkeypatch):
    monkeypatch.delenv("QGL_CACHE_DIR", raising=False)
    old = default_cache()
    set_default_cache(ConstantCache())
    yield
    set_default_cache(old)


@contextlib.contextmanager
def criterion(key, budget, detail):
    """Times the block; records FAIL if it raises or overruns ``budget`` seconds."""
    info = {"detail": detail}
    start = time.perf_counter()
    try:
        yield info
    except BaseException:
        record(key, False, info["detail"], time.perf_counter() - start, budget)
        raise
    elapsed = time.perf_counter() - start
    record(key, elapsed < budget, info["detail"], elapsed, budget)
    assert elapsed < budget, f"{key} took {elapsed:.2f}s, budget {budget}s"


# Relation tables as printed: columns and rows named by index letters; each
# count is a function of q. Shifts are exponents of q^(-1/2).
CIRC_TABLES = {
    "a": {
        "cols": [("jl", "ik"), ("ik", "jl")],
        "shifts": [2, 2],
        "rows": {("jk", "il"): [lambda q: 0, lambda q: 0], ("jl", "ik"): [lambda q: 1, lambda q: 1]},
    },
    "b": {
        "cols": [("jl", "ik"), ("ik", "jl"), ("jk", "il")],
        "shifts": [1, 3, 2],
        "rows": {
            ("jl", "ik"): [lambda q: 1, lambda q: q, lambda q: 0],
            ("jk", "il"): [lambda q: 0, lambda q: q - 1, lambda q: 1],
        },
    },
    "c": {"cols": [("il", "ik"), ("ik", "il")], "shifts": [1, 2], "rows": {("ik", "il"): [lambda q: 1, lambda q: q]}},
    "d": {"cols": [("jk", "ik"), ("ik", "jk")], "shifts": [1, 2], "rows": {("ik", "jk"): [lambda q: 1, lambda q: q]}},
}

DOT_TABLES = {
    "a": {
        "cols": [("ik", "jl"), ("jl", "ik")],
        "shifts": [-1, 1],
        "rows": {("jk", "il"): [lambda q: 0, lambda q: 0], ("jl", "ik"): [lambda q: 1, lambda q: q]},
    },
    "b": {
        "cols": [("jl", "ik"), ("ik", "jl"), ("jk", "il")],
        "shifts": [0, 0, 1],
        "rows": {
            ("jl", "ik"): [lambda q: 1, lambda q: 1, lambda q: 0],
            ("jk", "il"): [lambda q: 0, lambda q: q - 1, lambda q: q],
        },
    },
    "c": {"cols": [("il", "ik"), ("ik", "il")], "shifts": [0, 1], "rows": {("ik", "il"): [lambda q: 1, lambda q: q]}},
    "d": {"cols": [("jk", "ik"), ("ik", "jk")], "shifts": [0, -1], "rows": {("ik", "jk"): [lambda q: 1, lambda q: 1]}},
}


def _check_tables(tables, kind):
    checked = 0
    for pattern, want in tables.items():
        for idx in cv.relation_instances(pattern, 2):
            cell = lambda name: MatrixType.unit(2, idx[name[0]], idx[name[1]])
            for q in (2, 3, 5):
                got = cv.relation_table(pattern, q, kind, 2, idx=idx, columns=want["cols"])
                assert got["shifts"] == want["shifts"], (pattern, idx)
                for (a, b), funcs in want["rows"].items():
                    expected = [f(q) for f in funcs]
                    assert got["rows"][cell(a) + cell(b)] == expected, (pattern, idx, q, a + "+" + b)
                    checked += len(expected)
    return checked


def test_ac1_circ_relation_tables():
    with criterion("AC-1", 1.0, "circ-model tables") as info:
        n = _check_tables(CIRC_TABLES, "circ")
        e = MatrixType.unit
        from qgl import flaggeo as fg

        swap = e(2, 1, 2) + e(2, 2, 1)
        assert fg.structure_g(swap, e(2, 2, 2), e(2, 1, 1), 3) == 2
        assert fg.twist_exponents(e(2, 2, 2), e(2, 1, 1)).circ == 3
        info["detail"] = f"4 tables, {n} entries over q in 2,3,5"


def test_ac2_dot_relation_tables():
    with criterion("AC-2", 1.0, "dot-model tables") as info:
        n = _check_tables(DOT_TABLES, "dot")
        info["detail"] = f"4 tables, {n} entries over q in 2,3,5"


def test_ac3_pbw_bases():
    with criterion("AC-3", 60.0, "PBW bases") as info:
        total = 0
        for q in (2, 3):
            for d in range(4):
                count, failures = suites.pbw(2, d, q)
                assert failures == [], failures[:1]
                total += count
                count, failures = suites.newpbw(2, d, q)
                assert failures == [], failures[:1]
                total += count
        info["detail"] = f"{total} monomials (divided under circ, plain under dot and bullet)"


def test_ac4_green_formula():
    with criterion("AC-4", 300.0, "Green formula") as info:
        full = cv.verify_green(2, 2, 2)
        assert full["failures"] == []
        sample = cv.verify_green(2, 3, 2, sample=100)
        assert sample["failures"] == [] and sample["instances"] == 100
        info["detail"] = f"{full['instances']} exhaustive at d=2, 100 sampled at d=3"


def test_ac5_mult_h():
    with criterion("AC-5", 300.0, "g vs h comparison") as info:
        total = 0
        for q in (2, 3):
            for d in range(1, 4):
                rep = cv.verify_mult_h(2, d, q)
                assert rep["failures"] == [], rep["failures"][:1]
                total += rep["instances"]
        info["detail"] = f"{total} triples, d<=3, q in 2,3"


def test_ac6_determinant():
    with criterion("AC-6", 60.0, "determinant images") as info:
        for n in (2, 3):
            images = {}
            for q in (2, 3):
                count, failures = suites.determinant(n, q)
                assert failures == []
                for model, kind in (("Psi", FRT), ("PsiPrime", DD)):
                    img = cv.embed_symbolic(qa.det(n, kind), q, model)
                    images.setdefault(model, []).append({m: c.rational() for m, c in img.terms.items()})
            for model, per_q in images.items():
                assert per_q[0] == per_q[1], model
        info["detail"] = "Psi(det) and Psi'(det^DD) equal the signed permutation sum, n=2,3"


def test_ac7_hopf_axiom():
    with criterion("AC-7", 10.0, "antipode axiom") as info:
        count, failures = suites.hopf(2)
        assert failures == []
        info["detail"] = f"Hopf axiom holds ({count} identities)"


@pytest.mark.xfail(strict=True, reason="the compatibility display fails off the diagonal; see the decisions ledger")
def test_ac7_compatibility_display():
    start = time.perf_counter()
    count, failures = suites.antipode_compat(2)
    bad = [(f["inputs"]["i"], f["inputs"]["j"]) for f in failures]
    ok = not failures
    record("AC-7", ok, f"S Xi(c_ij) = Xi S^DD(c_ij) fails at (i,j) in {bad}", time.perf_counter() - start, 10.0)
    assert ok, failures


def test_ac7_supplement_inverse_form():
    # what does hold: Xi S^DD = S^-1 Xi, and the transported map is an antipode for the twisted product
    for n in (2, 3):
        assert suites.antipode_inverse(n)[1] == []
        assert suites.transported_antipode(n)[1] == []


def test_ac8_twist_isomorphisms():
    with criterion("AC-8", 60.0, "twist isomorphisms") as info:
        rels = 0
        for n in (2, 3):
            for label, lhs, rhs in qa.defining_relations(DD, n):
                assert qa.xi(NCPoly.word(DD, n, lhs) - rhs).is_zero(), label
                rels += 1
        pairs = 0
        for q in (2, 3):
            for a, b in cv.all_pairs(2, 2):
                e = qa.CHI_STAR((a.ro, a.co), (b.ro, b.co))
                lhs = cv.basis_product(a, b, q, "dot")
                assert lhs == cv.basis_product(a, b, q, "bullet").scale(cv.v_power(e, q))
                pairs += 1
        info["detail"] = f"{rels} relations carried to zero, {pairs} product pairs"


def test_ac9_coalgebra():
    with criterion("AC-9", 60.0, "coalgebra") as info:
        total = 0
        for q in (2, 3):
            count, failures = suites.coassoc(2, 2, q)
            assert failures == [], failures[:1]
            total += count
        count, failures = suites.tilde_hom(2, 2)
        assert failures == [], failures[:1]
        total += count
        info["detail"] = f"{total} checks: coassociativity, counit, Delta and tilde-Delta homomorphism"


def test_ac10_divided_powers():
    with criterion("AC-10", 10.0, "divided powers") as info:
        for q in (2, 3):
            for i, j in itertools.product((1, 2), repeat=2):
                for m in range(1, 4):
                    lhs, rhs = cv.divided_power_check(i, j, m, q)
                    assert lhs == rhs
        for kind in (FRT, DD):
            for a in range(6):
                for b in range(6 - a):
                    P = lambda m: qa.divided_power(kind, 2, 1, 2, m)
                    assert P(a) * P(b) == P(a + b).scale(qbinomial(a + b, a))
                    assert NCPoly.gen(kind, 2, 1, 2) * P(a) == P(a + 1).scale(qint(a + 1))
        info["detail"] = "geometric m<=3 at q=2,3; symbolic m+n<=5"


def test_ac11_confluence():
    with criterion("AC-11", 60.0, "confluence") as info:
        rng = random.Random(2024)
        longest = 0
        for _ in range(1000):
            n = rng.randint(1, 3)
            kind = rng.choice([FRT, DD])
            word = tuple((rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, 6)))
            a, sa = qa.reduce_by_strategy(kind, word, "leftmost", max_steps=10**4)
            b, sb = qa.reduce_by_strategy(kind, word, "random", rng=random.Random(rng.random()), max_steps=10**4)
            assert a == b, word
            longest = max(longest, sa, sb)
        info["detail"] = f"1000 words agree, longest reduction {longest} steps"


def test_ac12_cli(tmp_path):
    with criterion("AC-12", 60.0, "cli") as info:
        rng = random.Random(12)
        for _ in range(500):
            n = rng.randint(1, 3)
            node = random_expression(rng, n, depth=4, letter=rng.choice("Ec"))
            text = to_text(node)
            assert parse_expression(text, n) == node and to_text(parse_expression(text, n)) == text
        runs = 0
        for d in (1, 2, 3):
            rep = cache_roundtrip(tmp_path / f"d{d}", suites=SUITES, n=2, d=d, qs=(2, 3))
            assert rep["identical"], d
            assert rep["warm_enumerations"] < rep["cold_enumerations"], rep
            expected = [1 if s == "antipode-compat" else 0 for s in SUITES for _ in (2, 3)]
            assert rep["exit_codes"] == expected
            runs += len(rep["exit_codes"])
        for argv in (["nf", "E[1,3]", "--n", "2"], ["verify", "green", "--q", "4"], ["bogus"]):
            code, out, err = run_command(argv)
            assert code == 2 and out == "" and err.startswith("{")
        info["detail"] = f"500 round-trips, {runs} suite runs cold/warm identical, exit codes 0/1/2"
