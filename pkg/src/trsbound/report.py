"""Text and JSON renderings of analysis results."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Sequence

from .critical_pairs import CriticalPeak
from .equivalence import EquivResult
from .homology import BoundReport
from .linalg import IntMatrix, SnfResult
from .rewriting import Trs
from .syntax import display_var_names, render_rule, render_term
from .terms import max_var

HYPOTHESES = (
    "local confluence: checked by joining every critical pair",
    "termination: assumed (not checked)",
    "degree: checked to be 0 or prime",
)


def dumps(data: Any) -> str:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _pos(pos) -> str:
    return ".".join(map(str, pos)) if pos else "root"


def cp_record(cp: CriticalPeak, names: Sequence[str]) -> Dict[str, Any]:
    return {
        "outer_rule": cp.outer_rule,
        "inner_rule": cp.inner_rule,
        "position": list(cp.pos),
        "peak": render_term(cp.peak, names),
        "t": render_term(cp.t, names),
        "s": render_term(cp.s, names),
        "prime": cp.prime,
    }


def _cp_names(trs: Trs, cps: Sequence[CriticalPeak]) -> List[str]:
    names = display_var_names(trs)
    taken = set(names) | {s.name for s in trs.sig}
    need = max((max_var(cp.peak) for cp in cps), default=0)
    while len(names) < need:
        cand = f"x{len(names) + 1}"
        while cand in taken:
            cand += "'"
        names.append(cand)
        taken.add(cand)
    return names


def cps_json(trs: Trs, cps: Sequence[CriticalPeak]) -> Dict[str, Any]:
    names = _cp_names(trs, cps)
    return {"count": len(cps), "critical_pairs": [cp_record(cp, names) for cp in cps]}


def cps_text(trs: Trs, cps: Sequence[CriticalPeak]) -> str:
    names = _cp_names(trs, cps)
    lines = [f"critical pairs: {len(cps)}"]
    for k, cp in enumerate(cps, 1):
        lines.append(
            f"[{k}] rules ({cp.outer_rule},{cp.inner_rule}) at {_pos(cp.pos)}"
            f"{'' if cp.prime else '  (not prime)'}"
        )
        lines.append(f"    peak: {render_term(cp.peak, names)}")
        lines.append(f"    t:    {render_term(cp.t, names)}")
        lines.append(f"    s:    {render_term(cp.s, names)}")
    return "\n".join(lines) + "\n"


def bound_json(report: BoundReport, snf_verified: Optional[bool] = None) -> Dict[str, Any]:
    data = {
        "degree": report.degree,
        "ring": str(report.ring),
        "n_rules": report.n_rules,
        "n_symbols": report.n_symbols,
        "n_cps": report.n_cps,
        "n_prime_cps": report.n_prime_cps,
        "used_prime": report.used_prime,
        "strategy": report.strategy.value,
        "D": report.D.to_rows(),
        "divisors": list(report.divisors),
        "rank_D": report.rank_D,
        "e": report.e,
        "lower_bound": report.lower_bound,
        "rank_d1": report.rank_d1,
        "s_h2": report.s_h2,
        "s_h1": report.s_h1,
        "completeness": report.completeness,
        "hypotheses": list(HYPOTHESES),
        "notes": list(report.notes),
    }
    if snf_verified is not None:
        data["snf_verified"] = snf_verified
    return data


def _matrix_lines(M: IntMatrix, indent: str = "  ") -> List[str]:
    if M.rows == 0 or M.cols == 0:
        return [f"{indent}({M.rows}x{M.cols} empty)"]
    width = max(len(str(x)) for x in M.entries)
    return [indent + " ".join(str(x).rjust(width) for x in row) for row in M.to_rows()]


def bound_text(report: BoundReport, show_matrix: bool = True,
               snf_verified: Optional[bool] = None) -> str:
    r = report
    divisors = " ".join(map(str, r.divisors)) or "(none)"
    lines = [
        f"rules: {r.n_rules}",
        f"symbols: {r.n_symbols}",
        f"degree: {r.degree}",
        f"ring: {r.ring}",
        f"strategy: {r.strategy.value}",
        f"critical pairs: {r.n_cps} ({r.n_prime_cps} prime)"
        + ("; matrix built from prime pairs only" if r.used_prime else ""),
        f"D(R): {r.D.rows}x{r.D.cols}",
    ]
    if show_matrix:
        lines.extend(_matrix_lines(r.D))
    lines += [
        f"elementary divisors over Z: {divisors}",
        f"rank of D(R) over {r.ring}: {r.rank_D}",
        f"e(R): {r.e}",
        f"lower bound: {r.lower_bound}",
        f"rank(d1): {r.rank_d1}",
        f"s(H2): {r.s_h2}",
        f"s(H1): {r.s_h1}",
    ]
    if snf_verified is not None:
        lines.append(f"snf verified: {'yes' if snf_verified else 'NO'}")
    lines.append("hypotheses:")
    lines.append(f"  {r.completeness}")
    lines.append("  degree 0 or prime: checked")
    for note in r.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def snf_json(res: SnfResult, verified: Optional[bool] = None) -> Dict[str, Any]:
    data = {"shape": list(res.shape), "divisors": list(res.divisors), "rank": res.rank}
    if verified is not None:
        data["verified"] = verified
    return data


def snf_text(res: SnfResult, verified: Optional[bool] = None) -> str:
    divisors = " ".join(map(str, res.divisors)) or "(none)"
    out = f"divisors: {divisors}\nrank: {res.rank}\n"
    if verified is not None:
        out += f"verified: {'yes' if verified else 'NO'}\n"
    return out


def equiv_json(base: Trs, result: EquivResult) -> Dict[str, Any]:
    names = display_var_names(base)
    return {
        "verdict": result.verdict.value,
        "reason": result.reason,
        "offending_rule": render_rule(result.offending, names) if result.offending else None,
        "candidate_normal_forms": [
            {"rule": render_rule(r, names), "normal_form": render_term(nf, names)}
            for r, nf in result.normal_forms
        ],
        "conversions": {
            str(k): [render_term(u, names) for u in path]
            for k, path in sorted(result.conversions.items())
        },
    }


def equiv_text(base: Trs, result: EquivResult) -> str:
    names = display_var_names(base)
    lines = [f"equivalent: {result.verdict.value}"]
    if result.reason:
        lines.append(f"reason: {result.reason}")
    if result.offending is not None:
        lines.append(f"offending rule: {render_rule(result.offending, names)}")
    for r, nf in result.normal_forms:
        lines.append(f"candidate {render_rule(r, names)}: both sides normalize to {render_term(nf, names)}")
    for k, path in sorted(result.conversions.items()):
        lines.append(f"base rule {k}: " + " <-> ".join(render_term(u, names) for u in path))
    return "\n".join(lines) + "\n"
