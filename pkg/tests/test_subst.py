import random

import hypothesis.strategies as st
from hypothesis import given, settings

from ott import kernel
from ott.subst import (
    SubstEnv, apply_env, apply_morphism, compose, equal_under_subst,
    equal_under_subst_steps, identity, shift, subst, subst_env,
)
from ott.terms import (
    Const, Id, Lambda, NatTy, Pi, Refl, Succ, Var, Zero, size, syntactic_equal,
)
from ott.testing import Generator, default_signature

from test_terms import terms

_BINDERS = kernel.BINDERS


def _naive_shift(t, by, cutoff=0):
    if t[0] == kernel.VAR:
        return (kernel.VAR, t[1] + by) if t[1] >= cutoff else t
    if t[0] == kernel.CONST or len(t) == 1:
        return t
    binders = _BINDERS[t[0]]
    return (t[0],) + tuple(
        _naive_shift(c, by, cutoff + binders[i]) for i, c in enumerate(t[1:])
    )


def _naive_subst(t, a, at):
    if t[0] == kernel.VAR:
        i = t[1]
        if i == at:
            return _naive_shift(a, at)
        return (kernel.VAR, i - 1) if i > at else t
    if t[0] == kernel.CONST or len(t) == 1:
        return t
    binders = _BINDERS[t[0]]
    return (t[0],) + tuple(
        _naive_subst(c, a, at + binders[i]) for i, c in enumerate(t[1:])
    )


def test_shift_trivial_cases():
    assert shift(Var(0), 1) == Var(1)
    assert shift(Lambda(Const("A"), Const("A"), Var(0)), 1) == \
        Lambda(Const("A"), Const("A"), Var(0))
    assert shift(Lambda(Const("A"), Const("A"), Var(1)), 1) == \
        Lambda(Const("A"), Const("A"), Var(2))


def test_shift_underflow_is_an_error():
    import pytest

    with pytest.raises(ValueError):
        shift(Var(0), -1)


@given(terms)
def test_shift_round_trip(t):
    assert shift(shift(t, 1), -1) == t
    assert shift(shift(t, 3, 1), -3, 1) == t


@given(terms, st.integers(0, 3), st.integers(0, 2))
def test_shift_matches_naive(t, by, cutoff):
    assert shift(t, by, cutoff) == _naive_shift(t, by, cutoff)


def test_subst_trivial_cases():
    assert subst(Var(0), Zero) == Zero
    assert subst(Var(1), Zero) == Var(0)
    assert subst(Var(0), Zero, 1) == Var(0)


@given(terms, terms, st.integers(0, 2))
def test_subst_matches_naive(t, a, at):
    assert subst(t, a, at) == _naive_subst(t, a, at)


@given(terms, terms)
def test_subst_cancels_shift(t, a):
    assert subst(shift(t, 1), a) == t


@given(terms, terms)
def test_subst_shift_commutation(t, a):
    # substituting below a fresh slot commutes with opening it
    assert shift(subst(t, a), 1, 0) == subst(shift(t, 1, 1), shift(a, 1, 0))


# lazy comparison ------------------------------------------------------------


@given(terms, terms, terms)
@settings(max_examples=150)
def test_equal_under_subst_matches_materialization(t, a, target):
    env = subst_env(a)
    assert equal_under_subst(t, env, target) == \
        syntactic_equal(apply_env(t, env), target)


@given(terms, st.integers(0, 3), terms)
def test_equal_under_shift_matches_materialization(t, by, target):
    env = SubstEnv(0, (), by)
    assert equal_under_subst(t, env, target) == \
        syntactic_equal(apply_env(t, env), target)


def test_equal_under_subst_trivial():
    a = Succ(Zero)
    assert equal_under_subst(Var(0), subst_env(a), a)
    eq, steps = equal_under_subst_steps(Var(0), subst_env(Zero), Succ(Zero))
    assert not eq
    assert steps <= 2  # head mismatch is found immediately


@given(terms, terms, terms)
@settings(max_examples=200)
def test_equal_under_subst_cost_bounded_by_target(t, a, target):
    _, steps = equal_under_subst_steps(t, subst_env(a), target)
    assert steps <= size(target) + 1


@given(terms, terms)
def test_equal_under_subst_cost_exact_on_success(t, a):
    target = apply_env(t, subst_env(a))
    eq, steps = equal_under_subst_steps(t, subst_env(a), target)
    assert eq
    assert steps == size(target)


# context morphisms -----------------------------------------------------------


def _chain(seed):
    gen = Generator(default_signature(), random.Random(seed))
    return gen, gen.random_projection_chain()


def test_identity_is_neutral_trivial():
    ctx = (Const("A"), NatTy)
    ident = identity(ctx)
    assert ident.terms == (Var(1), Var(0))
    theta = Pi(Const("A"), Id(NatTy, Zero, Zero))
    assert apply_morphism(theta, ident) == theta


def test_apply_morphism_closed_term_under_empty_target():
    from ott.subst import empty_morphism

    theta = Id(NatTy, Zero, Succ(Zero))
    bang = empty_morphism((Const("A"),))
    assert apply_morphism(theta, bang) == theta


def test_morphism_laws_randomized():
    for seed in range(300):
        gen, (f, g, h) = _chain(seed)
        id_target = identity(f.target)
        id_source = identity(f.source)
        assert compose(id_target, f).terms == f.terms
        assert compose(f, id_source).terms == f.terms
        assert compose(f, compose(g, h)).terms == compose(compose(f, g), h).terms
        theta = gen.random_type(f.target, 5)
        lhs = apply_morphism(theta, compose(f, g))
        rhs = apply_morphism(apply_morphism(theta, f), g)
        assert syntactic_equal(lhs, rhs)
        term = gen.random_term(f.target, theta, 5)
        if term is not None:
            lhs = apply_morphism(term, compose(f, g))
            rhs = apply_morphism(apply_morphism(term, f), g)
            assert syntactic_equal(lhs, rhs)


def test_compose_requires_matching_contexts():
    import pytest

    f = identity((Const("A"),))
    g = identity((NatTy,))
    with pytest.raises(ValueError):
        compose(f, g)


# full-environment properties ---------------------------------------------------


def _naive_env(t, env, depth=0):
    """Reference semantics for a full substitution environment."""
    lift, terms, outer = env.lift, env.terms, env.outer
    if t[0] == kernel.VAR:
        i = t[1]
        if i < lift + depth:
            return t
        if i - lift - depth < len(terms):
            return _naive_shift(terms[i - lift - depth], lift + depth)
        return (kernel.VAR, i - len(terms) + outer)
    if t[0] == kernel.CONST or len(t) == 1:
        return t
    binders = _BINDERS[t[0]]
    return (t[0],) + tuple(
        _naive_env(c, env, depth + binders[i]) for i, c in enumerate(t[1:])
    )


@given(terms, st.lists(terms, max_size=3), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=300)
def test_apply_env_matches_reference_semantics(t, subs, lift, outer):
    env = SubstEnv(lift, tuple(subs), outer)
    assert apply_env(t, env) == _naive_env(t, env)


@given(terms, st.lists(terms, max_size=3), st.integers(0, 2), st.integers(0, 2),
       terms)
@settings(max_examples=300)
def test_equal_under_general_env_matches_materialization(t, subs, lift, outer, target):
    env = SubstEnv(lift, tuple(subs), outer)
    assert equal_under_subst(t, env, target) == \
        syntactic_equal(apply_env(t, env), target)


@given(terms, st.lists(terms, min_size=1, max_size=3), st.integers(0, 2))
@settings(max_examples=200)
def test_equal_under_general_env_cost_bound(t, subs, lift):
    env = SubstEnv(lift, tuple(subs), 1)
    target = apply_env(t, env)
    eq, steps = equal_under_subst_steps(t, env, target)
    assert eq
    assert steps == size(target)


@given(terms, st.lists(terms, max_size=3), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=200)
def test_inst_count_is_output_size(t, subs, lift, outer):
    out, count = kernel.inst(t, tuple(subs), outer, lift)
    if not subs and outer == 0:
        assert out is t and count == 0  # identity: nothing materializes
    else:
        assert count == size(out)


def test_apply_morphism_rejects_out_of_scope_terms():
    import pytest

    f = identity((NatTy,))
    with pytest.raises(ValueError, match="scope mismatch"):
        apply_morphism(Var(1), f)
    # a bound occurrence at the same raw index is fine
    assert apply_morphism(Pi(NatTy, Var(1)), f) == Pi(NatTy, Var(1))
