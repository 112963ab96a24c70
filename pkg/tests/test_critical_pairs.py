import random

import pytest

from trsbound.critical_pairs import cp_filter_prime, critical_pairs, is_prime
from trsbound.rewriting import is_normal_form
from trsbound.syntax import parse_term, parse_trs_text
from trsbound.terms import (
    App,
    apply_subst,
    canonical_renaming,
    iter_subterms,
    match_term,
    nonvar_positions,
    replace_at,
    subterm_at,
)

from helpers import load, random_corpus


@pytest.mark.parametrize("name,count,prime", [
    ("group10", 48, 41),
    ("ave", 1, 1),
    ("minus", 4, 4),
    ("assoc", 1, 1),
    ("plus", 7, 7),
    ("empty", 0, 0),
])
def test_counts(name, count, prime):
    cps = critical_pairs(load(name))
    assert len(cps) == count
    assert len(cp_filter_prime(cps)) == prime


def test_ordering_and_root_convention():
    for name in ("group10", "minus", "plus"):
        cps = critical_pairs(load(name))
        keys = [cp.key for cp in cps]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)
        for a, b, pos in keys:
            if not pos:
                assert a < b


def test_ave_pair():
    trs = load("ave")
    (cp,) = critical_pairs(trs)
    names = ["x", "y"]
    assert (cp.outer_rule, cp.inner_rule, cp.pos) == (2, 5, ())
    assert cp.peak == parse_term("ave(s(s(s(x))),s(y))", trs.sig, names)
    assert cp.t == parse_term("ave(s(s(s(s(x)))),y)", trs.sig, names)
    assert cp.s == parse_term("s(ave(s(x),s(y)))", trs.sig, names)


def test_assoc_pair_is_the_pentagon_peak():
    trs = load("assoc")
    (cp,) = critical_pairs(trs)
    assert cp.pos == (1,)
    names = ["x", "y", "z", "w"]
    sig = trs.sig
    assert cp.peak == parse_term("f(f(f(x,y),z),w)", sig, names)
    assert cp.t == parse_term("f(f(x,y),f(z,w))", sig, names)
    assert cp.s == parse_term("f(f(x,f(y,z)),w)", sig, names)


def test_peak_reducts_and_canonical_variables():
    for trs in [load("group10"), load("minus"), *random_corpus()]:
        for cp in critical_pairs(trs):
            ra, rb = trs.rule(cp.outer_rule), trs.rule(cp.inner_rule)
            assert match_term(ra.lhs, cp.peak) is not None
            sigma = match_term(ra.lhs, cp.peak)
            assert apply_subst(sigma, ra.rhs) == cp.t
            redex = subterm_at(cp.peak, cp.pos)
            tau = match_term(rb.lhs, redex)
            assert tau is not None
            assert replace_at(cp.peak, cp.pos, apply_subst(tau, rb.rhs)) == cp.s
            assert canonical_renaming(cp.peak) == {}
            assert cp.pos in set(nonvar_positions(ra.lhs))


def test_prime_definition():
    trs = parse_trs_text("(VAR x) (RULES f(g(a)) -> a  g(a) -> b  a -> c)")
    cps = critical_pairs(trs)
    got = {(cp.outer_rule, cp.inner_rule, cp.pos): cp.prime for cp in cps}
    assert got == {(1, 2, (1,)): False, (1, 3, (1, 1)): True, (2, 3, (1,)): True}


def test_prime_flag_matches_oracle():
    for trs in [load("group10"), *random_corpus()]:
        for cp in critical_pairs(trs):
            redex = cp.inner_redex
            proper = [u for p, u in iter_subterms(redex) if p]
            assert cp.prime == all(is_normal_form(trs, u) for u in proper)
            assert cp.prime == is_prime(trs, cp)


def _redexes(trs, t):
    for pos, u in iter_subterms(t):
        for r in trs.rules:
            sigma = match_term(r.lhs, u)
            if sigma is not None:
                yield pos, r, sigma


def test_every_overlap_is_an_instance_of_a_listed_pair():
    # brute force: find overlapping redex pairs in random ground terms and check
    # that each one instantiates a critical pair with matching reducts
    rng = random.Random(11)
    systems = [load("group10"), *random_corpus()]
    checked = 0
    for trs in systems:
        by_key = {cp.key: cp for cp in critical_pairs(trs)}
        sig = trs.sig
        for _ in range(60):
            t = _random_ground(rng, sig, 4)
            for pos, ra, sa in _redexes(trs, t):
                u = subterm_at(t, pos)
                for q in nonvar_positions(ra.lhs):
                    inner = subterm_at(u, q)
                    for rb in trs.rules:
                        sb = match_term(rb.lhs, inner)
                        if sb is None or (not q and ra.index == rb.index):
                            continue
                        t_red = apply_subst(sa, ra.rhs)
                        s_red = replace_at(u, q, apply_subst(sb, rb.rhs))
                        a, b = ra.index, rb.index
                        if not q and a > b:
                            a, b, t_red, s_red = b, a, s_red, t_red
                        cp = by_key[(a, b, q)]
                        theta = match_term(cp.peak, u)
                        assert theta is not None
                        assert apply_subst(theta, cp.t) == t_red
                        assert apply_subst(theta, cp.s) == s_red
                        checked += 1
    assert checked > 50


def _random_ground(rng, sig, depth):
    consts = [s for s in sig if s.arity == 0]
    if depth == 0 or rng.random() < 0.2:
        return App(rng.choice(consts))
    sym = rng.choice(list(sig))
    return App(sym, tuple(_random_ground(rng, sig, depth - 1) for _ in range(sym.arity)))

