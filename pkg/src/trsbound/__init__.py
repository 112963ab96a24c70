"""Lower bounds on the number of rules of complete term rewriting systems."""

from .critical_pairs import CriticalPeak, cp_filter_prime, critical_pairs
from .equivalence import (
    AddRule,
    AddSymbol,
    RemoveRule,
    RemoveSymbol,
    Verdict,
    equiv_check,
    find_conversion,
    tietze_apply,
)
from .errors import TrsError
from .homology import BoundReport, Ring, analyze
from .linalg import IntMatrix, snf
from .rewriting import Rule, Strategy, Trs, degree, normal_form, normalize_counted
from .syntax import parse_rule, parse_term, parse_trs_file, parse_trs_text, render_trs
from .terms import App, Signature, Symbol, Var, unify

__version__ = "0.1.0"

__all__ = [
    "AddRule", "AddSymbol", "App", "BoundReport", "CriticalPeak", "IntMatrix",
    "RemoveRule", "RemoveSymbol", "Ring", "Rule", "Signature", "Strategy",
    "Symbol", "Trs", "TrsError", "Var", "Verdict", "analyze", "cp_filter_prime",
    "critical_pairs", "degree", "equiv_check", "find_conversion", "normal_form",
    "normalize_counted", "parse_rule", "parse_term", "parse_trs_file",
    "parse_trs_text", "render_trs", "snf", "tietze_apply", "unify",
]
