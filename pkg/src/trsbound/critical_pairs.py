"""Critical pair enumeration and the prime-pair filter."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

from .rewriting import Trs, is_normal_form
from .terms import (
    App,
    Position,
    Term,
    apply_subst,
    canonical_renaming,
    compose,
    max_var,
    nonvar_positions,
    rename_apart,
    replace_at,
    subterm_at,
    unify,
)


@dataclass(frozen=True)
class CriticalPeak:
    """An overlap ``t <-a- peak -b-> s`` with rule ``b`` applied at ``pos``.

    ``t`` is the outer reduct (rule ``a`` at the root of the peak) and ``s``
    the inner one.  Variables of ``peak``, ``t`` and ``s`` are numbered from 1
    in order of first occurrence in the peak.
    """

    outer_rule: int
    inner_rule: int
    pos: Position
    mgu: Dict[int, Term]
    peak: Term
    t: Term
    s: Term
    prime: bool = True

    @property
    def key(self):
        return (self.outer_rule, self.inner_rule, self.pos)

    @property
    def inner_redex(self) -> Term:
        return subterm_at(self.peak, self.pos)

    def __hash__(self) -> int:
        return hash((self.key, self.peak, self.t, self.s))


def _overlap(trs: Trs, a: int, b: int, pos: Position):
    ra, rb = trs.rule(a), trs.rule(b)
    offset = max(max_var(ra.lhs), max_var(ra.rhs))
    lb = rename_apart(rb.lhs, offset)
    sigma = unify(subterm_at(ra.lhs, pos), lb)
    if sigma is None:
        return None
    peak = apply_subst(sigma, ra.lhs)
    t = apply_subst(sigma, ra.rhs)
    s = replace_at(peak, pos, apply_subst(sigma, rename_apart(rb.rhs, offset)))
    rho = canonical_renaming(peak)
    return (
        compose(rho, sigma),
        apply_subst(rho, peak),
        apply_subst(rho, t),
        apply_subst(rho, s),
    )


def is_prime(trs: Trs, cp: CriticalPeak) -> bool:
    """True iff every proper subterm of the inner redex is a normal form."""
    redex = cp.inner_redex
    if not isinstance(redex, App):
        return True
    return all(is_normal_form(trs, arg) for arg in redex.args)


def critical_pairs(trs: Trs) -> List[CriticalPeak]:
    """All critical peaks, ordered by (outer rule, inner rule, position).

    A root overlap of two distinct rules is one pair, recorded with the
    lower-numbered rule as the outer one; a rule is never overlapped with
    itself at the root.
    """
    out = []
    n = len(trs.rules)
    for a in range(1, n + 1):
        lhs_positions = list(nonvar_positions(trs.rule(a).lhs))
        for b in range(1, n + 1):
            for pos in lhs_positions:
                if not pos and a >= b:
                    continue
                hit = _overlap(trs, a, b, pos)
                if hit is None:
                    continue
                mgu, peak, t, s = hit
                cp = CriticalPeak(a, b, pos, mgu, peak, t, s)
                out.append(
                    CriticalPeak(a, b, pos, mgu, peak, t, s, prime=is_prime(trs, cp))
                )
    return out


def cp_filter_prime(cps: Sequence[CriticalPeak]) -> List[CriticalPeak]:
    return [cp for cp in cps if cp.prime]
