import pytest

from loopkit.cli import shipped_corpus
from loopkit.corpus import cyclic, dihedral
from loopkit.loopfile import read_loop_file
from loopkit.properties import canonical_name
from loopkit.theoremlab import (
    Claim, ClaimReport, Equivalence, Implication, _Truth, claim, claims, evaluate, run_claim, run_claims,
)

from conftest import small_loops


@pytest.fixture(scope="module")
def cc_loops():
    return read_loop_file(shipped_corpus() / "cc.loop")


def test_catalog_ids_unique_and_resolvable():
    cs = claims()
    assert len({c.id for c in cs}) == len(cs)
    for c in cs:
        for p in c.properties():
            canonical_name(p)
    assert claim("cc:power-associativity").hypothesis == ("cc",)
    with pytest.raises(KeyError):
        claim("no-such-claim")


def test_equivalence_outcomes():
    c = Claim("t", (), Equivalence((("associative",), ("commutative",))), "groups are abelian")
    assert evaluate(c, _Truth(cyclic(4)))[0] == "verified"
    kind, detail = evaluate(c, _Truth(dihedral(3)))
    assert kind == "violated" and detail == {"associative": True, "commutative": False}


def test_implication_and_vacuity(L5):
    c = Claim("t", ("associative",), Implication((("commutative",),), ("moufang",)), "")
    assert evaluate(c, _Truth(L5))[0] == "vacuous"
    assert evaluate(c, _Truth(dihedral(3)))[0] == "verified"  # premise false
    assert evaluate(c, _Truth(cyclic(3)))[0] == "verified"
    bad = Claim("t", (), Implication(((),), ("commutative",)), "")
    kind, detail = evaluate(bad, _Truth(dihedral(3)))
    assert kind == "violated" and detail["premise"] == "(hypothesis)"


def test_report_counts_and_low_confidence(L5):
    c = Claim("t", (), Equivalence((("associative",), ("commutative",))), "", low_confidence=True)
    rep = run_claim(c, [("Z3", cyclic(3)), ("S3", dihedral(3)), ("L5", L5)])
    assert (rep.tested, rep.vacuous, rep.verified) == (3, 0, 2)
    assert rep.failures == [] and [n for n, _ in rep.warnings] == ["S3"]
    d = rep.as_dict()
    assert d["violations"] == [] and d["warnings"][0]["loop"] == "S3"


def test_run_claims_deterministic_across_jobs():
    corpus = [(f"L{i}", L) for i, L in enumerate(small_loops(4))]
    cs = claims()[:12]
    a = [r.as_dict() for r in run_claims(cs, corpus, jobs=1)]
    b = [r.as_dict() for r in run_claims(cs, corpus, jobs=2)]
    assert a == b


def test_empty_corpus_rejected():
    with pytest.raises(ValueError):
        run_claims(claims()[:1], [])


def test_catalog_holds_on_small_loops():
    reports = run_claims(claims(), small_loops(5))
    failing = {r.claim for r in reports if r.failures}
    assert failing == set()


def test_fourth_power_counterexample(cc_loops):
    L = cc_loops["CC6-1"]
    eq = run_claim(claim("uo:fourth-powers"), [("CC6-1", L)])
    assert eq.verified == 0 and len(eq.violations) == 1
    detail = eq.violations[0][1]
    assert detail == {"4_{11.11=(1.11)1}^{1}": False, "4_{11.11=(11.1)1}^{1}": True}
    one_way = run_claim(claim("uo:fourth-power-a-implies-b"), [("CC6-1", L)])
    assert one_way.verified == 1 and not one_way.violations


def test_cc_corollaries_on_shipped_cc_loops(cc_loops):
    reports = run_claims([claim("cc:power-associativity"), claim("cc:diassociativity")], cc_loops.loops.items())
    for r in reports:
        assert r.vacuous == 0 and r.verified == len(cc_loops) and not r.violations


def test_method_option_reaches_predicates(L5):
    c = claim("universal:identity-iff-isotopes")
    a = run_claim(c, [L5], method="both")
    assert a.verified == 1


def test_claim_report_defaults():
    r = ClaimReport("x")
    assert r.failures == [] and r.warnings == []
