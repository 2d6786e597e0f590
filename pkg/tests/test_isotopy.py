import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopkit.core import Perm
from loopkit.corpus import cyclic, dihedral
from loopkit.isotopy import (
    AutotopismTriple, IsotopeSpec, NotUnital, PseudoAutomorphismPolicy,
    all_principal_isotopes, autotopism_failure, is_autotopism, is_left_pseudo_automorphism,
    is_right_pseudo_automorphism, is_vd_loop, isotope_stack, left_osborn_triples, osborn_triples,
    principal_isotope, right_osborn_triples, triple_failures,
)
from loopkit.properties import is_universal_osborn

from conftest import loops, naive_loop_ops, small_loops


def test_z4_isotope_2_1(z4):
    iso = principal_isotope(z4, IsotopeSpec.full(2, 1))
    assert iso.identity == 3
    assert iso.table.tolist() == [[(a + b - 3) % 4 for b in range(4)] for a in range(4)]


@given(loops(), st.data())
def test_isotope_matches_naive_formula(L, data):
    u = data.draw(st.integers(0, L.order - 1))
    v = data.draw(st.integers(0, L.order - 1))
    e, mul, ldiv, rdiv, lin, rin = naive_loop_ops(L)
    for spec, (uu, vv) in [
        (IsotopeSpec.full(u, v), (u, v)),
        (IsotopeSpec.left(v), (e, v)),
        (IsotopeSpec.right(u), (u, e)),
    ]:
        iso = principal_isotope(L, spec)
        assert iso.identity == mul(uu, vv)
        for a in L.elements():
            for b in L.elements():
                assert iso.mul(a, b) == mul(rdiv(a, vv), ldiv(uu, b))


@given(loops(max_order=4))
def test_stack_matches_individual_isotopes(L):
    stack = isotope_stack(L, "full")
    expected = list(all_principal_isotopes(L))
    assert stack.count == len(expected) == L.order ** 2
    for i, (spec, iso) in enumerate(expected):
        assert stack.labels[i] == spec
        assert stack.loop(i) == iso
    for kind in ("left", "right"):
        s = isotope_stack(L, kind)
        assert s.count == L.order
        for i, spec in enumerate(s.labels):
            assert spec.kind == kind and s.loop(i) == principal_isotope(L, spec)


def test_stack_restricted_us(z4):
    s = isotope_stack(z4, "full", us=[2])
    assert [sp.u for sp in s.labels] == [2] * 4


def test_isotope_spec_validation():
    with pytest.raises(ValueError):
        IsotopeSpec("full", 1, None)
    with pytest.raises(ValueError):
        IsotopeSpec("sideways", 1, 1)


def _translation_autotopism(G, a, b):
    # (a x)(y b) = a (x y) b in a group
    La, Rb = G.left_translation(a), G.right_translation(b)
    return AutotopismTriple(La, Rb, La.then(Rb))


def test_group_translation_autotopisms_compose(all_groups):
    G = all_groups["D4"]
    ts = [_translation_autotopism(G, a, b) for a in range(0, 8, 3) for b in range(1, 8, 2)]
    for s, t in itertools.product(ts, repeat=2):
        assert is_autotopism(G, s) and is_autotopism(G, t)
        prod = AutotopismTriple(*(p.then(q) for p, q in zip(s, t)))
        assert is_autotopism(G, prod)
        inv = AutotopismTriple(*(p.inverse() for p in s))
        assert is_autotopism(G, inv)


def test_autotopism_failure_witness(L5):
    n = L5.order
    Id = Perm.identity(n)
    swap = Perm(np.array([0, 2, 1, 3, 4]))
    t = AutotopismTriple(swap, Id, Id)
    assert not is_autotopism(L5, t)
    x, y = autotopism_failure(L5, t)
    assert L5.mul(swap(x), y) != L5.mul(x, y)
    assert autotopism_failure(L5, AutotopismTriple(Id, Id, Id)) is None


def _scalar_failure(L, family):
    n = L.order
    if family == "full":
        params = itertools.product(range(n), repeat=3)
        fn = lambda p: osborn_triples(L, *p)  # noqa: E731
    elif family == "left":
        params = itertools.product(range(n), repeat=2)
        fn = lambda p: left_osborn_triples(L, *p)  # noqa: E731
    else:
        params = itertools.product(range(n), repeat=2)
        fn = lambda p: right_osborn_triples(L, *p)  # noqa: E731
    for p in params:
        ok = [is_autotopism(L, t) for t in fn(p)]
        if not all(ok):
            return p, ok.index(False) + 1
    return None


@pytest.mark.parametrize("family", ["full", "left", "right"])
def test_batched_triples_match_scalar(family):
    keys = {"full": ("x", "u", "v"), "left": ("x", "v"), "right": ("x", "u")}[family]
    for L in small_loops(4):
        got = triple_failures(L, family)
        want = _scalar_failure(L, family)
        if want is None:
            assert got is None
        else:
            assert tuple(got[k] for k in keys) == want[0]
            assert got["triple"] == want[1]


@settings(max_examples=40, deadline=None)
@given(loops(max_order=5))
def test_batched_triples_match_scalar_random(L):
    for family in ("full", "left", "right"):
        got = triple_failures(L, family)
        want = _scalar_failure(L, family)
        assert (got is None) == (want is None)


def test_triples_hold_in_groups(all_groups):
    for name in ("Z6", "S3", "Q8", "A4"):
        G = all_groups[name]
        for fam in ("full", "left", "right"):
            assert triple_failures(G, fam) is None, (name, fam)


def test_triples_hold_in_universal_osborn_cc6():
    from loopkit.loopfile import read_loop_file
    from loopkit.cli import shipped_corpus
    L = read_loop_file(shipped_corpus() / "cc.loop")["CC6-1"]
    assert is_universal_osborn(L).holds
    assert not L.is_associative()
    for fam in ("full", "left", "right"):
        assert triple_failures(L, fam) is None


def test_group_automorphism_is_pseudo_automorphism():
    G = dihedral(3)
    # conjugation by element 3 is an automorphism; companion e
    inv = G.rin_map
    A = Perm(np.array([G.mul(G.mul(inv[3], x), 3) for x in G.elements()]))
    assert is_left_pseudo_automorphism(G, A, G.identity)
    assert is_right_pseudo_automorphism(G, A, G.identity)


def test_non_unital_map_raises(z4):
    shift = Perm(np.array([1, 2, 3, 0]))
    with pytest.raises(NotUnital):
        is_left_pseudo_automorphism(z4, shift, 0)


def test_groups_are_vd(all_groups):
    for name in ("Z5", "S3", "Q8", "D4"):
        assert is_vd_loop(all_groups[name])
    assert is_vd_loop(cyclic(3), PseudoAutomorphismPolicy("c-right", "c-left"))


def test_l5_not_vd(L5):
    assert not is_vd_loop(L5)
