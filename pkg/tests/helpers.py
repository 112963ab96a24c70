"""Shared fixtures for the test suite: bundled systems, term generators, a random corpus."""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import List, Sequence

from hypothesis import strategies as st

from trsbound.errors import StepBudgetExceeded
from trsbound.linalg import is_prime
from trsbound.rewriting import Rule, Trs, degree, local_confluence_check
from trsbound.syntax import parse_trs_file
from trsbound.terms import App, Signature, Term, Var, iter_subterms, term_size, var_count, variables

SYSTEMS = Path(str(resources.files("trsbound") / "systems"))
NAMED = ("group10", "ave", "minus", "assoc")

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE: List[str] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE.append(line)
    print(line)


def load(name: str) -> Trs:
    return parse_trs_file(SYSTEMS / f"{name}.trs")


# a small signature for property tests
SIG = Signature.of(("f", 2), ("g", 1), ("a", 0), ("b", 0))
F, G, A, B = (SIG[n] for n in ("f", "g", "a", "b"))


def f(x: Term, y: Term) -> App:
    return App(F, (x, y))


def g(x: Term) -> App:
    return App(G, (x,))


a, b = App(A), App(B)


def terms(max_vars: int = 3, max_leaves: int = 8) -> st.SearchStrategy:
    leaves = st.one_of(
        st.integers(1, max_vars).map(Var) if max_vars else st.nothing(),
        st.sampled_from([a, b]),
    )
    return st.recursive(
        leaves,
        lambda kids: st.one_of(kids.map(g), st.tuples(kids, kids).map(lambda p: f(*p))),
        max_leaves=max_leaves,
    )


def all_terms(depth: int, var_ids: Sequence[int]) -> List[Term]:
    """Every term over SIG of depth at most ``depth`` with the given variables."""
    level = [Var(i) for i in var_ids] + [a, b]
    seen = list(level)
    for _ in range(depth):
        nxt = [g(t) for t in seen] + [f(s, t) for s in seen for t in seen]
        seen = list(dict.fromkeys(seen + nxt))
    return seen


# -- random complete systems -------------------------------------------------

CORPUS_SIG = Signature.of(("f", 2), ("g", 1), ("h", 1), ("a", 0), ("b", 0))


def random_term(rng: random.Random, depth: int, nvars: int) -> Term:
    if depth == 0 or rng.random() < 0.25:
        if nvars and rng.random() < 0.6:
            return Var(rng.randint(1, nvars))
        return App(CORPUS_SIG[rng.choice("ab")])
    k = rng.random()
    if k < 0.4:
        return App(CORPUS_SIG["f"], (random_term(rng, depth - 1, nvars),
                                     random_term(rng, depth - 1, nvars)))
    return App(CORPUS_SIG[rng.choice("gh")], (random_term(rng, depth - 1, nvars),))


def _random_rule(rng: random.Random) -> Rule:
    """A size-decreasing, non-duplicating rule, so every system built from them terminates."""
    while True:
        lhs = random_term(rng, rng.choice((2, 2, 3)), 2)
        if isinstance(lhs, Var):
            continue
        subs = [u for p, u in iter_subterms(lhs) if p]
        candidates = subs + [App(CORPUS_SIG["a"]), App(CORPUS_SIG["b"])]
        if rng.random() < 0.3:
            candidates.append(App(CORPUS_SIG[rng.choice("gh")], (rng.choice(candidates),)))
        rhs = rng.choice(candidates)
        if term_size(rhs) >= term_size(lhs):
            continue
        if not set(variables(rhs)) <= set(variables(lhs)):
            continue
        if any(var_count(rhs, i) > var_count(lhs, i) for i in variables(rhs)):
            continue
        return Rule(lhs, rhs)


def random_complete_system(rng: random.Random) -> Trs:
    while True:
        rules = [_random_rule(rng) for _ in range(rng.randint(2, 5))]
        if len({(r.lhs, r.rhs) for r in rules}) < len(rules):
            continue
        trs = Trs(CORPUS_SIG, rules)
        d = degree(trs)
        if d != 0 and not is_prime(d):
            continue
        try:
            check = local_confluence_check(trs, max_steps=1000)
            if check.joinable and check.pairs:
                return trs
        except StepBudgetExceeded:
            continue


@lru_cache(maxsize=None)
def random_corpus(n: int = 24, seed: int = 20240611) -> tuple:
    rng = random.Random(seed)
    return tuple(random_complete_system(rng) for _ in range(n))


def full_corpus() -> List[Trs]:
    return [load(name) for name in NAMED] + list(random_corpus())
