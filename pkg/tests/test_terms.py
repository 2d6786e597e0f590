import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopkit.isotopy import LoopStack, isotope_stack
from loopkit.terms import (
    E, Identity, LDiv, Lin, Mul, RDiv, Rin, TermSyntaxError, UnknownSymbol, Var,
    eval_term, free_vars, holds, holds_many, parse, parse_identity, to_str,
)

from conftest import loops, naive_loop_ops

x, y, z = Var("x"), Var("y"), Var("z")

terms = st.recursive(
    st.sampled_from([x, y, z, E]),
    lambda sub: st.one_of(
        st.builds(Mul, sub, sub), st.builds(LDiv, sub, sub), st.builds(RDiv, sub, sub),
        st.builds(Lin, sub), st.builds(Rin, sub),
    ),
    max_leaves=8,
)


def naive_eval(t, ops, env):
    e, mul, ldiv, rdiv, lin, rin = ops
    if isinstance(t, Var):
        return env[t.name]
    if t is E or type(t).__name__ == "Const":
        return e
    if isinstance(t, Lin):
        return lin(naive_eval(t.arg, ops, env))
    if isinstance(t, Rin):
        return rin(naive_eval(t.arg, ops, env))
    a, b = naive_eval(t.left, ops, env), naive_eval(t.right, ops, env)
    return {Mul: mul, LDiv: ldiv, RDiv: rdiv}[type(t)](a, b)


def naive_holds(L, ident):
    ops = naive_loop_ops(L)
    for vals in itertools.product(range(L.order), repeat=ident.arity):
        env = dict(zip(ident.vars, vals))
        if naive_eval(ident.lhs, ops, env) != naive_eval(ident.rhs, ops, env):
            return env
    return None


@given(terms)
def test_print_parse_round_trip(t):
    assert parse(to_str(t)) == t


@pytest.mark.parametrize(
    "src, expected",
    [
        (r"x * y \ z", Mul(x, LDiv(y, z))),
        (r"x \ y * z", Mul(LDiv(x, y), z)),
        ("x / y / z", RDiv(RDiv(x, y), z)),
        ("x * y * z", Mul(Mul(x, y), z)),
        ("x*y^l", Mul(x, Lin(y))),
        ("(x*y)^r^l", Lin(Rin(Mul(x, y)))),
        ("e * x", Mul(E, x)),
    ],
)
def test_precedence(src, expected):
    assert parse(src) == expected


@pytest.mark.parametrize(
    "src, pos",
    [("x * (y", 6), ("x *", 3), ("x y", 2), ("= x", 0)],
)
def test_syntax_errors_have_positions(src, pos):
    with pytest.raises(TermSyntaxError) as info:
        parse(src)
    assert info.value.position == pos


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol) as info:
        parse("x + y")
    assert info.value.position == 2


def test_identity_vars_and_arity():
    ident = parse_identity("x*(y*z) = (x*y)*z")
    assert ident.vars == ("x", "y", "z") and ident.arity == 3
    ident = parse_identity("y*x = x*y", variables="xy")
    assert ident.vars == ("x", "y")
    with pytest.raises(ValueError):
        parse_identity("x = y", variables="x")
    assert free_vars(parse("e * x^l")) == ["x"]


def test_too_many_variables():
    names = "abcdfghij"  # nine variables; e is the identity constant
    src = " * ".join(names) + " = " + " * ".join(names)
    with pytest.raises(ValueError):
        parse_identity(src)


@settings(max_examples=150)
@given(loops(max_order=4), terms, terms)
def test_holds_matches_nested_loop_oracle(L, lhs, rhs):
    ident = Identity("t", lhs, rhs)
    got = holds(L, ident)
    want = naive_holds(L, ident)
    assert got.holds == (want is None)
    if want is not None:
        # lexicographically first failing assignment in declared variable order
        assert got.counterexample == want


@given(loops(max_order=4), terms)
def test_eval_term_matches_oracle(L, t):
    ops = naive_loop_ops(L)
    names = free_vars(t)
    for vals in itertools.product(range(L.order), repeat=len(names)):
        env = dict(zip(names, vals))
        assert int(eval_term(t, L, env)) == naive_eval(t, ops, env)


def test_l5_power_associativity_counterexample(L5):
    r = holds(L5, parse_identity("(x*x)*x = x*(x*x)"))
    assert not r.holds and r.counterexample == {"x": 2}


def test_large_arity_uses_blocks(z4):
    ident = parse_identity("((x*y)*(z*u))*(v*w) = x*(y*(z*(u*(v*w))))")
    assert holds(z4, ident).holds


@given(loops(max_order=4))
def test_holds_many_matches_holds(L):
    ident = parse_identity("x*(y*x) = (x*y)*x")
    stack = isotope_stack(L, "full")
    results = holds_many(stack, ident)
    assert len(results) == L.order ** 2
    from loopkit.isotopy import principal_isotope
    for spec, r in zip(stack.labels, results):
        assert r == holds(principal_isotope(L, spec), ident)


def test_loopstack_rejects_mixed_orders(z4):
    with pytest.raises(ValueError):
        LoopStack(np.zeros((2, 3, 4), dtype=np.int64), np.zeros(2, dtype=np.int64))
