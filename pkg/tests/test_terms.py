from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shkit.terms import (
    ONE,
    ZERO,
    Arrow,
    Join,
    Meet,
    Neg,
    Plus,
    Star,
    Term,
    TermSyntaxError,
    UnboundVariable,
    Var,
    evaluate,
    evaluate_all,
    format_term,
    iter_prime_star,
    level_identity,
    level_identity_alt,
    load_identities,
    lookup_count,
    parse,
    parse_identity,
    t_term,
    uses_only_star,
)

X, Y = Var("x"), Var("y")


def terms(max_leaves: int = 12) -> st.SearchStrategy[Term]:
    leaves = st.sampled_from([X, Y, Var("z"), ZERO, ONE])

    def extend(children):
        return st.one_of(
            st.builds(Neg, children),
            st.builds(Meet, children, children),
            st.builds(Join, children, children),
            st.builds(Arrow, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def naive_eval(t: Term, alg, env: dict[str, int]) -> int:
    """Plain recursion over the tables, as an oracle for the memoized evaluator."""
    if isinstance(t, Var):
        return env[t.name]
    if t == ZERO:
        return alg.bottom
    if t == ONE:
        return alg.top
    if isinstance(t, Neg):
        return alg.neg(naive_eval(t.arg, alg, env))
    op = {Meet: alg.meet, Join: alg.join, Arrow: alg.arrow}[type(t)]
    return op(naive_eval(t.left, alg, env), naive_eval(t.right, alg, env))


def test_parse_examples():
    assert parse("x -> 0") == Arrow(X, ZERO)
    assert parse("x'*'") == Neg(Arrow(Neg(X), ZERO)) == Plus(X)
    assert parse("x+") == Plus(X)
    ident = parse_identity("(x /\\ y)' = x' \\/ y'")
    assert ident.lhs == Neg(Meet(X, Y))
    assert ident.rhs == Join(Neg(X), Neg(Y))
    assert ident.kind == "equation"


def test_precedence():
    # postfix binds tightest, then meet, then join, then arrow
    assert parse("x /\\ x'*") == Meet(X, Star(Neg(X)))
    assert parse("x \\/ y /\\ x") == Join(X, Meet(Y, X))
    assert parse("x /\\ y -> x \\/ y") == Arrow(Meet(X, Y), Join(X, Y))
    assert parse("x /\\ y /\\ x") == Meet(Meet(X, Y), X)


def test_unicode_aliases():
    assert parse("x ∧ y′∗") == parse("x /\\ y'*")
    assert parse_identity("x ≤ y ∨ x").kind == "inequality"


def test_arrow_is_not_associative():
    with pytest.raises(TermSyntaxError):
        parse("x -> y -> x")
    assert parse("(x -> y) -> x") == Arrow(Arrow(X, Y), X)


@pytest.mark.parametrize("text", ["", "x /\\", "(x", "x)", "X", "2", "x ~ y", "x = "])
def test_syntax_errors(text):
    with pytest.raises((TermSyntaxError, ValueError)):
        parse_identity(text) if "=" in text else parse(text)


def test_syntax_error_has_position():
    with pytest.raises(TermSyntaxError) as exc:
        parse("x /\\ (y \\/")
    assert exc.value.position == len("x /\\ (y \\/")


def test_inequality_desugars_to_meet():
    ident = parse_identity("x'' <= x")
    lhs, rhs = ident.as_equation()
    assert lhs == Meet(Neg(Neg(X)), X)
    assert rhs == Neg(Neg(X))


def test_derived_constructors_leave_only_primitives():
    assert Star(X) == Arrow(X, ZERO)
    assert Plus(X) == Neg(Arrow(Neg(X), ZERO))


@settings(max_examples=300, deadline=None)
@given(terms())
def test_print_parse_round_trip(t):
    assert parse(format_term(t)) == t


@pytest.mark.parametrize("n", range(6))
def test_generated_terms_round_trip(n):
    for t in (t_term(n), iter_prime_star(X, n)):
        assert parse(format_term(t)) == t
    for ident in (level_identity(n), level_identity_alt(n)):
        again = parse_identity(str(ident))
        assert (again.lhs, again.rhs) == (ident.lhs, ident.rhs)


def test_iter_prime_star():
    assert iter_prime_star(X, 0) == X
    assert iter_prime_star(X, 1) == Star(Neg(X))
    assert iter_prime_star(X, 2) == Star(Neg(Star(Neg(X))))


def test_t_terms():
    assert t_term(0) == X
    assert t_term(1) == parse("x /\\ x'*")
    assert t_term(2) == parse("x /\\ x'* /\\ x'*'*")


def test_level_identities():
    assert (level_identity(0).lhs, level_identity(0).rhs) == (X, parse("x /\\ x'*"))
    l1 = level_identity(1)
    assert (l1.lhs, l1.rhs) == (parse("x /\\ x'*"), parse("x /\\ x'* /\\ x'*'*"))
    a0 = level_identity_alt(0)
    assert (a0.lhs, a0.rhs) == (parse("x /\\ x'*"), parse("(x /\\ x'*)'*"))
    a1 = level_identity_alt(1)
    assert (a1.lhs, a1.rhs) == (parse("(x /\\ x'*)'*"), parse("(x /\\ x'*)'*'*"))


def test_eval_examples(fig1, fig3, example):
    assert fig1.label(evaluate("x -> 0", fig1, {"x": "b"})) == "d"
    assert fig3.label(evaluate("x /\\ x'*", fig3, {"x": "a"})) == "d"
    assert evaluate("x \\/ x'", example, {"x": example.top}) == example.top


def test_eval_unbound_variable(fig1):
    with pytest.raises(UnboundVariable):
        evaluate("x /\\ y", fig1, {"x": "a"})


@pytest.mark.parametrize("n", range(8))
def test_level_term_lookup_bound(fig1, n):
    for x in range(fig1.size):
        assert lookup_count(t_term(n), fig1, {"x": x}) <= 4 * n + 1


@settings(max_examples=150, deadline=None)
@given(terms(), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_eval_matches_naive_recursion(t, x, y, z):
    from shkit.paper import builtin

    alg = builtin("fig1")
    env = {"x": x, "y": y, "z": z}
    assert evaluate(t, alg, env) == naive_eval(t, alg, env)


@settings(max_examples=50, deadline=None)
@given(terms(8))
def test_vector_eval_matches_pointwise(t):
    from shkit.paper import builtin

    alg = builtin("fig2")
    names = ["x", "y", "z"]
    values = evaluate_all(t, alg, names)
    n = alg.size
    for idx in range(0, n**3, 7):
        env = {"x": idx // (n * n), "y": idx // n % n, "z": idx % n}
        assert values[idx] == evaluate(t, alg, env)


@settings(max_examples=100, deadline=None)
@given(terms(8), st.integers(0, 6))
def test_star_evaluates_through_bottom_column(t, x):
    from shkit.paper import builtin

    alg = builtin("fig1")
    env = {"x": x, "y": x, "z": x}
    assert evaluate(Star(t), alg, env) == alg.arrow(evaluate(t, alg, env), alg.bottom)


def test_uses_only_star():
    assert uses_only_star(parse("x* \\/ x'*'* /\\ y"))
    assert not uses_only_star(parse("x -> y"))
    assert not uses_only_star(parse("(x -> 1)*"))


def test_load_identities(tmp_path):
    path = tmp_path / "ids.txt"
    path.write_text("# laws\nst : x* \\/ x** = 1\n\ndn : x'' <= x  # comment\n")
    ids = load_identities(path)
    assert [i.name for i in ids] == ["st", "dn"]
    assert ids[1].kind == "inequality"


def test_load_identities_rejects_missing_name(tmp_path):
    path = tmp_path / "ids.txt"
    path.write_text("x = x\n")
    with pytest.raises(TermSyntaxError):
        load_identities(path)
