"""Acceptance run: one test, and one summary line, per criterion.

Run alone with ``python3 -m pytest tests/test_acceptance.py -v``; the
summary section at the end lists every criterion as PASS or FAIL.
"""

import io
import time

import pytest

from loopkit import cli
from loopkit.corpus import groups, moufang12
from loopkit.isotopy import triple_failures
from loopkit.loopfile import read_corpus
from loopkit.properties import predicate
from loopkit.registry import by_tag, lookup
from loopkit.search import SearchQuery, enumerate_loops, search
from loopkit.terms import holds
from loopkit.theoremlab import claim, claims, run_claims

from conftest import record_criterion

EXPECTED_COUNTS = {1: 1, 2: 1, 3: 1, 4: 4, 5: 56, 6: 9408}
KINDS = {"full": "universal-osborn", "left": "left-universal-osborn", "right": "right-universal-osborn"}
OSI_TAG = {"full": "osi", "left": "osi-left", "right": "osi-right"}


def _facts(L):
    f = {}
    for kind, name in KINDS.items():
        f[kind, "identity"] = predicate(L, name, "identity").holds
        f[kind, "bruteforce"] = predicate(L, name, "bruteforce").holds
    for ident in ("OS0", "OS1", "OS0'", "OS1'"):
        f[ident] = predicate(L, ident).holds
    for kind in KINDS:
        if f[kind, "identity"]:
            f[kind, "triples"] = triple_failures(L, kind)
            f[kind, "osi"] = [i.name for i in by_tag(OSI_TAG[kind]) if not holds(L, i).holds]
    return f


@pytest.fixture(scope="module")
def sweep():
    """Property facts for every reduced loop of order 1 to 6."""
    counts, facts = {}, []
    for n in range(1, 7):
        ls = list(enumerate_loops(n))
        counts[n] = len(ls)
        facts += [(f"order{n}#{i}", _facts(L)) for i, L in enumerate(ls)]
    return counts, facts


def test_criterion_01_universal_identity_vs_isotopes(sweep):
    counts, facts = sweep
    bad = [name for name, f in facts if f["full", "identity"] != f["full", "bruteforce"]]
    flagged = sum(f["full", "identity"] for _, f in facts)
    ok = counts == EXPECTED_COUNTS and not bad
    record_criterion(1, ok, f"{len(facts)} loops (counts {list(counts.values())}), "
                            f"{flagged} universal Osborn, {len(bad)} disagreements")
    assert counts == EXPECTED_COUNTS
    assert bad == []


def test_criterion_02_one_sided_identity_vs_isotopes(sweep):
    _, facts = sweep
    bad = [(name, k) for name, f in facts for k in ("left", "right")
           if f[k, "identity"] != f[k, "bruteforce"]]
    left = sum(f["left", "identity"] for _, f in facts)
    right = sum(f["right", "identity"] for _, f in facts)
    record_criterion(2, not bad, f"{left} left / {right} right universal, {len(bad)} disagreements")
    assert bad == []


def test_criterion_03_os0_os1(sweep):
    _, facts = sweep
    bad = [name for name, f in facts if f["OS0"] != f["OS1"] or f["OS0'"] != f["OS1'"]]
    osborn = sum(f["OS0"] for _, f in facts)
    record_criterion(3, not bad, f"{osborn} Osborn loops, {len(bad)} disagreements")
    assert bad == []


def test_criterion_04_autotopism_triples(sweep):
    _, facts = sweep
    bad, checked = [], 0
    for name, f in facts:
        for kind in KINDS:
            if (kind, "triples") in f:
                checked += 1
                if f[kind, "triples"] is not None:
                    bad.append((name, kind, f[kind, "triples"]))
    record_criterion(4, not bad, f"{checked} (loop, family) pairs checked, {len(bad)} failing triples")
    assert bad == []


def test_criterion_05_osi_identities(sweep):
    _, facts = sweep
    failures, warnings = [], []
    for name, f in facts:
        for kind in KINDS:
            for ident in f.get((kind, "osi"), []):
                (warnings if lookup(ident).low_confidence else failures).append((name, ident))
    for gname, G in groups().items():
        for tag in OSI_TAG.values():
            for i in by_tag(tag):
                if not holds(G, i).holds:
                    (warnings if i.low_confidence else failures).append((gname, i.name))
    warned = sorted({i for _, i in warnings})
    record_criterion(5, not failures, f"{len(failures)} failures; warnings from low-confidence {warned}")
    assert failures == []


def test_criterion_06_moufang_identity_on_order_12():
    M = moufang12()
    ok = (M.order == 12 and not M.is_associative() and predicate(M, "moufang").holds
          and predicate(M, "moufang-form").holds)
    record_criterion(6, ok, "M(S3,2): Moufang, nonassociative, identity holds" if ok else "identity fails")
    assert ok


def test_criterion_07_cc_loops_of_order_8():
    t = time.time()
    hits = search(SearchQuery(order=8, require=("cc",), forbid=("associative",)))
    reports = run_claims([claim("cc:power-associativity"), claim("cc:diassociativity")],
                         [(f"cc8#{i}", h.loop) for i, h in enumerate(hits)])
    bad = sum(len(r.violations) for r in reports)
    ok = bool(hits) and bad == 0 and all(r.vacuous == 0 for r in reports)
    record_criterion(7, ok, f"{len(hits)} nonassociative CC-loops of order 8, {bad} violations "
                            f"({time.time() - t:.0f} s)")
    assert hits and bad == 0


def _cli(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_criterion_08_full_catalog_on_shipped_corpus():
    corpus = read_corpus(cli.shipped_corpus())
    reports = run_claims(claims(), corpus)
    failures = [(r.claim, name) for r in reports for name, _ in r.failures]
    vacuous = sum(r.vacuous for r in reports)
    verified = sum(r.verified for r in reports)
    warnings = sum(len(r.warnings) for r in reports)
    detail = (f"{len(reports)} claims x {len(corpus)} loops: verified {verified}, vacuous {vacuous}, "
              f"warnings {warnings}, violations {len(failures)}")
    if failures:
        detail += " in " + ", ".join(sorted({c for c, _ in failures}))
    record_criterion(8, not failures, detail)
    assert failures == [], detail


GROUP_PROPERTIES = ("osborn", "universal-osborn:identity", "universal-osborn:bruteforce", "moufang", "cc",
                    "extra", "universal-wipl", "power-associative", "diassociative")


def test_criterion_09_groups():
    gs = groups()
    bad, slowest = [], 0.0
    for name, G in gs.items():
        t = time.time()
        for p in GROUP_PROPERTIES:
            if not predicate(G, p).holds:
                bad.append((name, p))
        slowest = max(slowest, time.time() - t)
    ok = not bad and slowest < 10
    record_criterion(9, ok, f"{len(gs)} groups x {len(GROUP_PROPERTIES)} checks, {len(bad)} failures, "
                            f"slowest group {slowest:.2f} s")
    assert bad == [] and slowest < 10


def test_criterion_10_determinism():
    runs = [
        ("verify",),
        ("search", "--order", "6", "--require", "cc", "--forbid", "associative"),
        ("search", "--order", "5", "--require", "power-associative"),
        ("check", "M12", "universal-osborn", "osborn-triples", "--method", "both"),
    ]
    differing = []
    for argv in runs:
        a = _cli(*argv, "--format", "structured", "--jobs", "1")
        b = _cli(*argv, "--format", "structured", "--jobs", "8")
        if a != b:
            differing.append(argv[0])
    record_criterion(10, not differing, f"{len(runs)} runs compared at --jobs 1 and 8, "
                                        f"{len(differing)} differ")
    assert differing == []


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
