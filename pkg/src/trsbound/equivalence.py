"""Conversion search, equivalence of rule sets, and Tietze transformations.

Conversions ``s <->* t`` are searched breadth-first from both ends at once,
applying rules in either direction at every position.  A rule used
right-to-left may introduce variables that its right side does not bind;
those are instantiated from a finite pool (the subterms of the two end
terms), and intermediate terms are bounded in size.  Both restrictions make
the search incomplete, so running out of candidates only proves
non-convertibility when neither was ever exercised.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .errors import (
    SearchBudgetExceeded,
    SideConditionViolated,
    SignatureMismatch,
    StepBudgetExceeded,
)
from .rewriting import (
    DEFAULT_MAX_STEPS,
    Rule,
    Strategy,
    Trs,
    local_confluence_check,
    normal_form,
)
from .terms import (
    App,
    Symbol,
    Term,
    Var,
    apply_subst,
    canonical_renaming,
    iter_subterms,
    match_term,
    replace_at,
    term_size,
    variables,
)

DEFAULT_SEARCH_DEPTH = 50_000
# extra room, in symbols, granted to intermediate terms beyond the larger end term
SIZE_SLACK = (2, 4, 6, 8, 10, 12)


@dataclass(frozen=True)
class _Oriented:
    source: Term
    target: Term
    extra: Tuple[int, ...]


def _orientations(rules: Sequence[Rule]) -> List[_Oriented]:
    out = []
    for r in rules:
        for a, b in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
            extra = tuple(i for i in variables(b) if i not in set(variables(a)))
            out.append(_Oriented(a, b, extra))
    return out


@dataclass
class SearchOutcome:
    path: Optional[List[Term]]
    expanded: int
    exhaustive: bool  # search space fully explored with no pruning

    @property
    def found(self) -> bool:
        return self.path is not None


class _Searcher:
    def __init__(
        self,
        rules: Sequence[Rule],
        pool: Sequence[Term],
        size_limit: int,
        normalizer: Optional[Trs],
        max_steps: int,
    ):
        self.moves = _orientations(rules)
        self.pool = list(dict.fromkeys(pool))
        self.size_limit = size_limit
        self.normalizer = normalizer if normalizer is not None and normalizer.rules else None
        self.max_steps = max_steps
        self.pruned = self.normalizer is not None

    def canon(self, u: Term) -> Term:
        if self.normalizer is None:
            return u
        return normal_form(self.normalizer, u, max_steps=self.max_steps)

    def neighbours(self, u: Term) -> Iterator[Term]:
        for p, w in iter_subterms(u):
            for mv in self.moves:
                sigma = match_term(mv.source, w)
                if sigma is None:
                    continue
                if mv.extra:
                    self.pruned = True
                    choices = itertools.product(self.pool, repeat=len(mv.extra))
                else:
                    choices = [()]
                for choice in choices:
                    theta = dict(sigma)
                    theta.update(zip(mv.extra, choice))
                    v = replace_at(u, p, apply_subst(theta, mv.target))
                    if term_size(v) > self.size_limit:
                        self.pruned = True
                        continue
                    yield self.canon(v)


def _bfs(search: _Searcher, s: Term, t: Term, budget: int) -> SearchOutcome:
    if s == t:
        return SearchOutcome([s], 0, search.normalizer is None)
    cs, ct = search.canon(s), search.canon(t)
    if cs == ct:
        return SearchOutcome([s] + ([cs] if cs not in (s, t) else []) + [t], 0, False)
    if cs != s or ct != t:
        inner = _bfs(search, cs, ct, budget)
        if inner.found:
            path = inner.path
            if path[0] != s:
                path = [s] + path
            if path[-1] != t:
                path = path + [t]
            inner.path = path
        return inner
    parents: Tuple[Dict[Term, Optional[Term]], Dict[Term, Optional[Term]]] = ({s: None}, {t: None})
    frontiers: List[List[Term]] = [[s], [t]]
    expanded = 0
    # canonicalizing makes the move relation asymmetric, so an exhausted side
    # does not end the search while the other side can still reach into it
    while frontiers[0] or frontiers[1]:
        if not frontiers[1]:
            side = 0
        elif not frontiers[0]:
            side = 1
        else:
            side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        nxt: List[Term] = []
        for u in frontiers[side]:
            if expanded >= budget:
                return SearchOutcome(None, expanded, False)
            expanded += 1
            for v in search.neighbours(u):
                if v in mine:
                    continue
                mine[v] = u
                if v in other:
                    return SearchOutcome(_join(parents, v, side), expanded, False)
                nxt.append(v)
        frontiers[side] = nxt
    return SearchOutcome(None, expanded, not search.pruned)


def _join(parents, meet: Term, side: int) -> List[Term]:
    def chain(d, v):
        out = []
        while v is not None:
            out.append(v)
            v = d[v]
        return out

    left = chain(parents[0], meet)[::-1]
    right = chain(parents[1], meet)[1:]
    return left + right


def find_conversion(
    rules: Sequence[Rule],
    s: Term,
    t: Term,
    budget: int = DEFAULT_SEARCH_DEPTH,
    normalizer: Optional[Trs] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> SearchOutcome:
    """Search for ``s <->* t`` using ``rules`` in both directions.

    ``budget`` caps the total number of expanded terms over all rounds; each
    round widens the size bound on intermediate terms.  When ``normalizer``
    is given, every visited term is replaced by its normal form under it,
    so its rules must be terminating and derivable from ``rules``.
    """
    pool = [u for _, u in iter_subterms(s)] + [u for _, u in iter_subterms(t)]
    base = max(term_size(s), term_size(t))
    used = 0
    last = SearchOutcome(None, 0, False)
    for slack in SIZE_SLACK:
        search = _Searcher(rules, pool, base + slack, normalizer, max_steps)
        last = _bfs(search, s, t, budget - used)
        used += last.expanded
        if last.found or last.exhaustive:
            return SearchOutcome(last.path, used, last.exhaustive)
        if used >= budget:
            break
    return SearchOutcome(None, used, False)


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class EquivResult:
    verdict: Verdict
    reason: str = ""
    offending: Optional[Rule] = None
    normal_forms: List[Tuple[Rule, Term]] = field(default_factory=list)
    conversions: Dict[int, List[Term]] = field(default_factory=dict)


def _same_signature(base: Trs, rules: Sequence[Rule]) -> None:
    def walk(t: Term) -> None:
        if isinstance(t, App):
            if t.symbol not in base.sig:
                raise SignatureMismatch(
                    f"symbol {t.symbol} does not belong to the base signature {base.sig!r}"
                )
            for a in t.args:
                walk(a)

    for r in rules:
        walk(r.lhs)
        walk(r.rhs)


def equiv_check(
    base: Trs,
    candidate_rules: Sequence[Rule],
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    strat: Strategy = Strategy.LEFTMOST_INNERMOST,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> EquivResult:
    """Decide whether ``candidate_rules`` generate the same conversion as ``base``.

    ``base`` must be complete.  Soundness of the candidate is decided by
    comparing normal forms; each base rule is then searched for as a
    conversion over the candidate rules, reusing base rules already derived.
    """
    _same_signature(base, candidate_rules)
    result = EquivResult(Verdict.YES)
    for r in candidate_rules:
        nf_l = normal_form(base, r.lhs, strat, max_steps)
        nf_r = normal_form(base, r.rhs, strat, max_steps)
        if nf_l != nf_r:
            return EquivResult(
                Verdict.NO,
                "candidate rule is not valid in the base system: its sides have different normal forms",
                offending=r,
            )
        result.normal_forms.append((r, nf_l))

    known: List[Rule] = list(candidate_rules)
    pending = list(base.rules)
    progress = True
    while pending and progress:
        progress = False
        for r in list(pending):
            proven = Trs(base.sig, [b for b in base.rules if b not in pending])
            out = find_conversion(known, r.lhs, r.rhs, search_depth, proven, max_steps)
            if out.found:
                result.conversions[r.index] = out.path
                known.append(r)
                pending.remove(r)
                progress = True
            elif out.exhaustive:
                return EquivResult(
                    Verdict.NO,
                    f"base rule {r.index} is not derivable: "
                    "its conversion class was explored completely",
                    offending=r,
                    normal_forms=result.normal_forms,
                )
    if pending:
        r = pending[0]
        return EquivResult(
            Verdict.UNKNOWN,
            f"no conversion found for base rule {r.index} within the search bounds "
            f"(budget {search_depth} expansions per attempt)",
            offending=r,
            normal_forms=result.normal_forms,
            conversions=result.conversions,
        )
    return result


# -- Tietze transformations -------------------------------------------------


@dataclass(frozen=True)
class AddSymbol:
    """(1) adjoin ``symbol`` with the defining rule ``term -> symbol(x1..xn)``."""

    symbol: Symbol
    term: Term


@dataclass(frozen=True)
class RemoveSymbol:
    """(2) drop ``name`` together with its defining rule."""

    name: str


@dataclass(frozen=True)
class AddRule:
    """(3) adjoin a rule whose sides are already convertible."""

    rule: Rule


@dataclass(frozen=True)
class RemoveRule:
    """(4) drop a rule derivable from the remaining ones."""

    rule: Rule


TietzeStep = Union[AddSymbol, RemoveSymbol, AddRule, RemoveRule]


def _defining_rhs(sym: Symbol) -> App:
    return App(sym, tuple(Var(k) for k in range(1, sym.arity + 1)))


def _rule_key(r: Rule) -> Tuple[Term, Term]:
    # rules are compared up to a renaming of their variables
    ren = canonical_renaming(r.lhs, r.rhs)
    return apply_subst(ren, r.lhs), apply_subst(ren, r.rhs)


def _symbols_of(t: Term) -> Set[str]:
    if isinstance(t, Var):
        return set()
    out = {t.symbol.name}
    for a in t.args:
        out |= _symbols_of(a)
    return out


def _convertible(
    trs: Trs, s: Term, t: Term, clause: int, search_depth: int, max_steps: int
) -> None:
    complete = False
    try:
        complete = local_confluence_check(trs, max_steps).joinable
    except StepBudgetExceeded:
        pass
    if complete:
        try:
            if normal_form(trs, s, max_steps=max_steps) == normal_form(trs, t, max_steps=max_steps):
                return
            raise SideConditionViolated(
                clause, f"{s} and {t} have different normal forms, so they are not convertible"
            )
        except StepBudgetExceeded:
            pass
    out = find_conversion(trs.rules, s, t, search_depth)
    if out.found:
        return
    if out.exhaustive:
        raise SideConditionViolated(clause, f"{s} and {t} are not convertible")
    raise SearchBudgetExceeded(
        f"Tietze step ({clause}): no conversion between {s} and {t} "
        f"found within budget {search_depth}"
    )


def tietze_apply(
    trs: Trs,
    step: TietzeStep,
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Trs:
    """Apply one Tietze transformation after checking its side conditions."""
    rules = list(trs.rules)
    if isinstance(step, AddSymbol):
        sym, t = step.symbol, step.term
        if sym.name in trs.sig:
            raise SideConditionViolated(1, f"symbol {sym.name!r} already in the signature")
        if sym.name in _symbols_of(t):
            raise SideConditionViolated(1, f"{t} mentions the new symbol {sym.name!r}")
        bad = [i for i in variables(t) if i > sym.arity]
        if bad:
            raise SideConditionViolated(
                1, f"{t} has variables outside x1..x{sym.arity}"
            )
        if set(variables(t)) != set(range(1, sym.arity + 1)):
            raise SideConditionViolated(
                1, f"{t} must contain each of x1..x{sym.arity} for the rule to be well formed"
            )
        try:
            Trs(trs.sig, [Rule(t, t)])
        except ValueError as exc:
            raise SideConditionViolated(1, f"{t} is not a term over the signature: {exc}") from None
        new_rule = Rule(t, _defining_rhs(sym))
        return Trs(trs.sig.extend(sym), rules + [new_rule], trs.var_names)

    if isinstance(step, RemoveSymbol):
        sym = trs.sig.get(step.name)
        if sym is None:
            raise SideConditionViolated(2, f"symbol {step.name!r} not in the signature")
        rhs = _defining_rhs(sym)
        defining = [
            r for r in rules if r.rhs == rhs and step.name not in _symbols_of(r.lhs)
        ]
        if not defining:
            raise SideConditionViolated(
                2, f"no rule t -> {rhs} with t free of {step.name!r}"
            )
        keep = None
        for d in defining:
            rest = [r for r in rules if r is not d]
            if all(step.name not in _symbols_of(r.lhs) | _symbols_of(r.rhs) for r in rest):
                keep = rest
                break
        if keep is None:
            raise SideConditionViolated(
                2, f"{step.name!r} still occurs in other rules"
            )
        return Trs(trs.sig.without(step.name), keep, trs.var_names)

    if isinstance(step, AddRule):
        r = step.rule
        try:
            Trs(trs.sig, [r])
        except ValueError as exc:
            raise SideConditionViolated(3, str(exc)) from None
        _convertible(trs, r.lhs, r.rhs, 3, search_depth, max_steps)
        return Trs(trs.sig, rules + [r], trs.var_names)

    if isinstance(step, RemoveRule):
        target = step.rule
        key = _rule_key(target)
        idx = next((k for k, r in enumerate(rules) if _rule_key(r) == key), None)
        if idx is None:
            raise SideConditionViolated(4, f"rule {target} is not in the system")
        rest = rules[:idx] + rules[idx + 1:]
        _convertible(
            Trs(trs.sig, rest, trs.var_names), target.lhs, target.rhs, 4, search_depth, max_steps
        )
        return Trs(trs.sig, rest, trs.var_names)

    raise TypeError(f"not a Tietze step: {step!r}")
