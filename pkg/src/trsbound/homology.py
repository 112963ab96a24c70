"""Boundary matrices of a complete system and the lower bounds computed from them.

Three integer matrices are assembled:

* ``build_D``: rules x critical pairs, the usage-count matrix whose
  invertible elementary divisors give ``e(R)``;
* ``build_d1``: symbols x rules, column ``phi(r) - phi(l)`` per rule;
* ``build_d0``: one row, ``arity - 1`` per symbol.

Over the coefficient ring Z (degree 0) or Z/pZ (prime degree p) the second
homology ``ker d1 / im D`` and the first homology ``ker d0 / im d1`` are
computed from these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .critical_pairs import CriticalPeak, cp_filter_prime
from .errors import CompositeDegree, NonJoinableCP, NotComplete, StepBudgetExceeded
from .linalg import (
    IntMatrix,
    SnfResult,
    factorize,
    is_prime,
    rank_mod_p,
    rank_over,
    s_of_group,
    snf,
    subquotient_dimension,
    subquotient_invariants,
)
from .rewriting import (
    DEFAULT_MAX_STEPS,
    Strategy,
    Trs,
    degree,
    local_confluence_check,
    normalize_counted,
)
from .terms import Signature, symbol_counts


@dataclass(frozen=True)
class Ring:
    """Z when ``p == 0``, otherwise the field Z/pZ."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p and not is_prime(self.p):
            raise ValueError(f"Z/{self.p}Z is not a field")

    @classmethod
    def for_degree(cls, d: int) -> "Ring":
        if d != 0 and not is_prime(d):
            raise CompositeDegree(d, factorize(d))
        return cls(d)

    @property
    def is_field(self) -> bool:
        return self.p != 0

    def __str__(self) -> str:
        return "Z" if self.p == 0 else f"Z/{self.p}Z"


def build_D(
    trs: Trs,
    cps: Sequence[CriticalPeak],
    strat: Strategy = Strategy.LEFTMOST_INNERMOST,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> IntMatrix:
    """Column i: ``nr(s_i) - nr(t_i) + [b_i] - [a_i]`` as a vector over the rules."""
    n = len(trs.rules)
    columns = []
    for cp in cps:
        try:
            tr_t = normalize_counted(trs, cp.t, strat, max_steps)
            tr_s = normalize_counted(trs, cp.s, strat, max_steps)
        except StepBudgetExceeded as exc:
            raise StepBudgetExceeded(
                exc.term, max_steps, f"critical pair {cp.outer_rule},{cp.inner_rule} at {cp.pos}"
            ) from None
        if tr_t.normal_form != tr_s.normal_form:
            raise NonJoinableCP(cp, tr_t.normal_form, tr_s.normal_form)
        col = [us - ut for us, ut in zip(tr_s.usage, tr_t.usage)]
        col[cp.inner_rule - 1] += 1
        col[cp.outer_rule - 1] -= 1
        columns.append(col)
    return IntMatrix.from_columns(columns, rows=n)


def build_d1(trs: Trs) -> IntMatrix:
    columns = []
    for r in trs.rules:
        phi_l = symbol_counts(r.lhs, trs.sig)
        phi_r = symbol_counts(r.rhs, trs.sig)
        columns.append([b - a for a, b in zip(phi_l, phi_r)])
    return IntMatrix.from_columns(columns, rows=len(trs.sig))


def build_d0(sig: Signature) -> IntMatrix:
    return IntMatrix.from_rows([[s.arity - 1 for s in sig]], cols=len(sig))


def e_of(snf_or_rank: Union[SnfResult, int], ring: Ring) -> int:
    """Number of invertible elementary divisors over ``ring``.

    Over Z pass the SnfResult (divisors equal to 1 count); over Z/pZ pass the
    rank, since every nonzero element of a field is invertible.
    """
    if ring.is_field:
        if isinstance(snf_or_rank, SnfResult):
            raise TypeError("pass the rank over Z/pZ, not an integer SNF")
        return snf_or_rank
    if not isinstance(snf_or_rank, SnfResult):
        raise TypeError("pass the Smith normal form over Z")
    return sum(1 for e in snf_or_rank.divisors if e == 1)


def second_homology_size(d1: IntMatrix, D: IntMatrix, ring: Ring) -> int:
    """Minimal generator count of ``ker d1 / im D``."""
    if ring.is_field:
        return subquotient_dimension(d1, D, ring.p)
    free, torsion = subquotient_invariants(d1, D)
    return s_of_group(free, torsion)


def s_h1(trs: Trs) -> int:
    """Minimal generator count of ``ker d0 / im d1`` (symbol-count lower bound)."""
    ring = Ring.for_degree(degree(trs))
    d0, d1 = build_d0(trs.sig), build_d1(trs)
    if ring.is_field:
        return subquotient_dimension(d0, d1, ring.p)
    free, torsion = subquotient_invariants(d0, d1)
    return s_of_group(free, torsion)


@dataclass
class BoundReport:
    degree: int
    ring: Ring
    n_rules: int
    n_symbols: int
    n_cps: int
    n_prime_cps: int
    used_prime: bool
    D: IntMatrix
    divisors: Tuple[int, ...]
    rank_D: int
    e: int
    lower_bound: int
    rank_d1: int
    s_h2: int
    s_h1: Optional[int]
    strategy: Strategy
    completeness: str
    notes: List[str] = field(default_factory=list)
    cps: List[CriticalPeak] = field(default_factory=list, repr=False)

    @property
    def rank_identity_holds(self) -> bool:
        return self.lower_bound == self.s_h2 + self.rank_d1


def analyze(
    trs: Trs,
    strat: Strategy = Strategy.LEFTMOST_INNERMOST,
    use_prime: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> BoundReport:
    """Full pipeline from a complete system to ``#R - e(R)`` and ``s(H2)``.

    Termination is the caller's assertion; local confluence is checked here
    and a failure raises NotComplete.
    """
    d = degree(trs)
    ring = Ring.for_degree(d)
    confluence = local_confluence_check(trs, max_steps, strat)
    if not confluence.joinable:
        raise NotComplete(confluence.failures)
    all_cps = [pc.cp for pc in confluence.pairs]
    prime_cps = cp_filter_prime(all_cps)
    cps = prime_cps if use_prime else all_cps

    D = build_D(trs, cps, strat, max_steps)
    int_snf = snf(D)
    if ring.is_field:
        rank_D = rank_mod_p(D, ring.p)
        e = e_of(rank_D, ring)
    else:
        rank_D = int_snf.rank
        e = e_of(int_snf, ring)
    n = len(trs.rules)
    d1 = build_d1(trs)
    rank_d1 = rank_over(d1, ring.p)
    h2 = second_homology_size(d1, D, ring)

    notes = []
    if n - e == 0:
        notes.append(
            "the bound is 0 and therefore vacuous: every system has at least 0 rules"
        )
    report = BoundReport(
        degree=d,
        ring=ring,
        n_rules=n,
        n_symbols=len(trs.sig),
        n_cps=len(all_cps),
        n_prime_cps=len(prime_cps),
        used_prime=use_prime,
        D=D,
        divisors=int_snf.divisors,
        rank_D=rank_D,
        e=e,
        lower_bound=n - e,
        rank_d1=rank_d1,
        s_h2=h2,
        s_h1=s_h1(trs),
        strategy=strat,
        completeness=(
            f"local confluence verified: all {len(all_cps)} critical pairs joinable; "
            "termination assumed, not checked"
        ),
        notes=notes,
        cps=list(cps),
    )
    if not report.rank_identity_holds:
        report.notes.append(
            f"inconsistency: #R - e(R) = {report.lower_bound} but "
            f"s(H2) + rank(d1) = {h2} + {rank_d1}"
        )
    return report
