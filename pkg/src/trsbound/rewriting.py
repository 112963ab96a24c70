"""Rules, systems, and deterministic strategy-driven normalization."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import StepBudgetExceeded
from .terms import (
    App,
    Position,
    Signature,
    Term,
    Var,
    apply_subst,
    iter_subterms,
    match_term,
    replace_at,
    var_count,
    variables,
)

DEFAULT_MAX_STEPS = 100_000


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term
    index: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.lhs, Var):
            raise ValueError(f"left-hand side of rule {self.index} is a variable")
        extra = set(variables(self.rhs)) - set(variables(self.lhs))
        if extra:
            names = ", ".join(f"x{i}" for i in sorted(extra))
            raise ValueError(
                f"rule {self.lhs} -> {self.rhs}: variables {names} "
                "occur on the right but not on the left"
            )

    def renumbered(self, index: int) -> "Rule":
        return Rule(self.lhs, self.rhs, index)

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


class Trs:
    """A signature together with an ordered list of rules, indexed from 1.

    ``var_names`` is only used for display; terms refer to variables by index.
    """

    __slots__ = ("sig", "rules", "var_names", "_by_head")

    def __init__(
        self,
        sig: Signature,
        rules: Sequence[Rule],
        var_names: Sequence[str] = (),
    ):
        self.sig = sig
        self.rules: Tuple[Rule, ...] = tuple(
            r if r.index == k else r.renumbered(k) for k, r in enumerate(rules, 1)
        )
        self.var_names: Tuple[str, ...] = tuple(var_names)
        for r in self.rules:
            for side in (r.lhs, r.rhs):
                _check_over(side, sig, r)
        by_head: Dict[str, List[Rule]] = {}
        for r in self.rules:
            by_head.setdefault(r.lhs.symbol.name, []).append(r)
        self._by_head = by_head

    def __len__(self) -> int:
        return len(self.rules)

    def rule(self, j: int) -> Rule:
        return self.rules[j - 1]

    def rules_for(self, head: str) -> List[Rule]:
        return self._by_head.get(head, [])

    def with_rules(self, rules: Sequence[Rule], sig: Optional[Signature] = None) -> "Trs":
        return Trs(self.sig if sig is None else sig, rules, self.var_names)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Trs)
            and self.sig == other.sig
            and [(r.lhs, r.rhs) for r in self.rules]
            == [(r.lhs, r.rhs) for r in other.rules]
        )

    def __repr__(self) -> str:
        return f"Trs({self.sig!r}, {len(self.rules)} rules)"


def _check_over(t: Term, sig: Signature, rule: Rule) -> None:
    if isinstance(t, App):
        if t.symbol not in sig:
            raise ValueError(f"symbol {t.symbol} of rule {rule.index} is not in the signature")
        for a in t.args:
            _check_over(a, sig, rule)


class Strategy(enum.Enum):
    LEFTMOST_INNERMOST = "li"
    LEFTMOST_OUTERMOST = "lo"

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        return cls(text.lower())


@dataclass(frozen=True)
class NormalizationTrace:
    normal_form: Term
    usage: Tuple[int, ...]
    steps: int


def degree(trs: Trs) -> int:
    """gcd of ``#_i l - #_i r`` over all rules and variables; 0 when all vanish."""
    diffs = []
    for r in trs.rules:
        for i in set(variables(r.lhs)) | set(variables(r.rhs)):
            diffs.append(abs(var_count(r.lhs, i) - var_count(r.rhs, i)))
    return reduce(gcd, diffs, 0)


def _postorder(t: Term, path: Position = ()) -> Iterator[Tuple[Position, Term]]:
    if isinstance(t, App):
        for k, a in enumerate(t.args, 1):
            yield from _postorder(a, path + (k,))
    yield path, t


def redex_rule(trs: Trs, t: Term) -> Optional[Tuple[Rule, Dict[int, Term]]]:
    """Lowest-index rule whose left-hand side matches ``t`` at the root."""
    if isinstance(t, Var):
        return None
    for r in trs.rules_for(t.symbol.name):
        sigma = match_term(r.lhs, t)
        if sigma is not None:
            return r, sigma
    return None


def is_normal_form(trs: Trs, t: Term) -> bool:
    return all(redex_rule(trs, u) is None for _, u in iter_subterms(t))


def rewrite_step(
    trs: Trs, t: Term, strat: Strategy = Strategy.LEFTMOST_INNERMOST
) -> Optional[Tuple[Term, int, Position]]:
    """One step of ``strat``; returns (reduct, rule index, position) or None."""
    walk = _postorder if strat is Strategy.LEFTMOST_INNERMOST else iter_subterms
    for pos, u in walk(t):
        hit = redex_rule(trs, u)
        if hit is not None:
            rule, sigma = hit
            return replace_at(t, pos, apply_subst(sigma, rule.rhs)), rule.index, pos
    return None


def normalize_counted(
    trs: Trs,
    t: Term,
    strat: Strategy = Strategy.LEFTMOST_INNERMOST,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> NormalizationTrace:
    """Rewrite ``t`` to normal form under ``strat``, counting uses of each rule."""
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    usage = [0] * len(trs.rules)
    steps = 0
    start = t
    while True:
        nxt = rewrite_step(trs, t, strat)
        if nxt is None:
            return NormalizationTrace(t, tuple(usage), steps)
        if steps >= max_steps:
            raise StepBudgetExceeded(start, max_steps)
        t, j, _ = nxt
        usage[j - 1] += 1
        steps += 1


def normal_form(
    trs: Trs,
    t: Term,
    strat: Strategy = Strategy.LEFTMOST_INNERMOST,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Term:
    return normalize_counted(trs, t, strat, max_steps).normal_form


@dataclass(frozen=True)
class PairCheck:
    cp: "object"
    joinable: bool
    nf_t: Term
    nf_s: Term


@dataclass(frozen=True)
class ConfluenceReport:
    pairs: Tuple[PairCheck, ...]

    @property
    def joinable(self) -> bool:
        return all(p.joinable for p in self.pairs)

    @property
    def failures(self) -> List[PairCheck]:
        return [p for p in self.pairs if not p.joinable]


def local_confluence_check(
    trs: Trs,
    max_steps: int = DEFAULT_MAX_STEPS,
    strat: Strategy = Strategy.LEFTMOST_INNERMOST,
) -> ConfluenceReport:
    """Normalize both sides of every critical pair and compare the results.

    Termination is assumed; a runaway normalization raises StepBudgetExceeded
    naming the offending pair.
    """
    from .critical_pairs import critical_pairs

    checks = []
    for cp in critical_pairs(trs):
        try:
            nf_t = normal_form(trs, cp.t, strat, max_steps)
            nf_s = normal_form(trs, cp.s, strat, max_steps)
        except StepBudgetExceeded as exc:
            raise StepBudgetExceeded(
                exc.term, max_steps, f"critical pair {cp.outer_rule},{cp.inner_rule} at {cp.pos}"
            ) from None
        checks.append(PairCheck(cp, nf_t == nf_s, nf_t, nf_s))
    return ConfluenceReport(tuple(checks))
