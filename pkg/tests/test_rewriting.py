import random

import pytest

from trsbound.errors import StepBudgetExceeded
from trsbound.rewriting import (
    Rule,
    Strategy,
    Trs,
    degree,
    is_normal_form,
    local_confluence_check,
    normal_form,
    normalize_counted,
    rewrite_step,
)
from trsbound.syntax import parse_term, parse_trs_text
from trsbound.terms import App, Symbol, Var, apply_subst, iter_subterms, match_term, replace_at

from helpers import CORPUS_SIG, random_term, load, random_corpus

LI, LO = Strategy.LEFTMOST_INNERMOST, Strategy.LEFTMOST_OUTERMOST


def all_reducts(trs, t):
    """Every one-step reduct of ``t``, by any rule at any position."""
    out = set()
    for pos, u in iter_subterms(t):
        for r in trs.rules:
            sigma = match_term(r.lhs, u)
            if sigma is not None:
                out.add(replace_at(t, pos, apply_subst(sigma, r.rhs)))
    return out


def brute_normal_forms(trs, t, limit=5000):
    """All normal forms reachable from ``t``, by exhaustive search."""
    seen, todo, nfs = {t}, [t], set()
    while todo:
        u = todo.pop()
        nxt = all_reducts(trs, u)
        if not nxt:
            nfs.add(u)
        for v in nxt - seen:
            seen.add(v)
            todo.append(v)
        assert len(seen) < limit
    return nfs


def test_degree_examples():
    assert degree(load("group10")) == 2
    assert degree(load("ave")) == 0
    assert degree(load("minus")) == 0
    assert degree(load("assoc")) == 0
    assert degree(load("empty")) == 0
    assert degree(parse_trs_text("(VAR x y) (RULES f(x,y) -> x)")) == 1
    assert degree(parse_trs_text("(VAR x) (RULES f(x,x,x) -> a)")) == 3


def test_rule_guards():
    with pytest.raises(ValueError):
        Rule(Var(1), Var(1))
    sig_f = parse_trs_text("(VAR x) (RULES f(x) -> x)").sig
    with pytest.raises(ValueError):
        Rule(App(sig_f["f"], (Var(1),)), Var(2))


def test_strategies_pick_different_redexes():
    trs = parse_trs_text("(VAR x) (RULES f(x) -> g(x)  g(a) -> a)")
    t = parse_term("f(g(a))", trs.sig, ["x"])
    assert rewrite_step(trs, t, LI)[1:] == (2, (1,))
    assert rewrite_step(trs, t, LO)[1:] == (1, ())


def test_lowest_index_rule_wins_at_a_position():
    trs = parse_trs_text("(VAR x) (RULES f(x) -> x  f(a) -> b)")
    t = parse_term("f(a)", trs.sig, ["x"])
    assert rewrite_step(trs, t)[1] == 1


def with_constants(trs, names):
    sig = trs.sig
    for name in names:
        sig = sig.extend(Symbol(name, 0))
    return Trs(sig, trs.rules, trs.var_names)


def test_usage_counts():
    trs = with_constants(load("assoc"), "abcd")
    t = parse_term("f(f(f(a,b),c),d)", trs.sig)
    tr = normalize_counted(trs, t, LI)
    assert tr.usage == (tr.steps,)
    assert tr.normal_form == parse_term("f(a,f(b,f(c,d)))", trs.sig)


def test_pentagon_counts():
    # the two ways around the associativity overlap take 2 and 3 steps
    trs = with_constants(load("assoc"), "abcd")
    peak = parse_term("f(f(f(a,b),c),d)", trs.sig)
    t = parse_term("f(f(a,b),f(c,d))", trs.sig)
    s = parse_term("f(f(a,f(b,c)),d)", trs.sig)
    assert normalize_counted(trs, t).steps + 1 == 2
    assert normalize_counted(trs, s).steps + 1 == 3
    assert normal_form(trs, t) == normal_form(trs, s) == normal_form(trs, peak)


def test_step_budget():
    trs = with_constants(parse_trs_text("(VAR x) (RULES f(x) -> f(f(x)))"), "a")
    t = parse_term("f(a)", trs.sig)
    with pytest.raises(StepBudgetExceeded):
        normalize_counted(trs, t, max_steps=50)


def test_local_confluence_examples():
    assert local_confluence_check(load("group10")).joinable
    assert local_confluence_check(load("group3axioms")).joinable is False


@pytest.mark.parametrize("strat", [LI, LO])
def test_normal_forms_match_exhaustive_search(strat):
    rng = random.Random(7)
    for trs in random_corpus()[:12]:
        for _ in range(10):
            t = random_term(rng, 3, 0)
            nf = normal_form(trs, t, strat)
            assert is_normal_form(trs, nf)
            # complete systems have exactly one normal form
            assert brute_normal_forms(trs, t) == {nf}


def test_group_normal_forms():
    trs = load("group10")
    names = ["x", "y", "z"]
    t = parse_term("i(m(m(x,i(y)),e))", trs.sig, names)
    for strat in (LI, LO):
        assert normal_form(trs, t, strat) == parse_term("m(y,i(x))", trs.sig, names)


def test_corpus_signature_is_shared():
    assert all(trs.sig == CORPUS_SIG for trs in random_corpus())
