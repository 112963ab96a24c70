"""Concrete syntax: prefix terms, TPDB-style system files, integer matrices.

A system file is a sequence of parenthesized sections::

    (VAR x y z)
    (RULES
      m(m(x,y),z) -> m(x,m(y,z))
      m(e,x) -> x
    )

``(SIG (f 2) (e 0))`` optionally fixes the signature and its order; without
it symbols are collected in order of first occurrence with their first-seen
arity.  ``(COMMENT ...)`` sections are ignored.  The k-th name declared in
VAR denotes the variable x_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ParseError
from .rewriting import Rule, Trs
from .terms import App, Signature, Symbol, Term, Var, max_var

_PUNCT = "(),"


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "(", ")", ",", "->", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str, source: str = "") -> List[Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
        elif c.isspace():
            i += 1
            col += 1
        elif text.startswith("->", i):
            tokens.append(Token("->", "->", line, col))
            i += 2
            col += 2
        elif c in _PUNCT:
            tokens.append(Token(c, c, line, col))
            i += 1
            col += 1
        else:
            j = i
            while (
                j < n
                and not text[j].isspace()
                and text[j] not in _PUNCT
                and not text.startswith("->", j)
            ):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
    tokens.append(Token("eof", "", line, col))
    return tokens


class _TermParser:
    """Recursive-descent term reader.

    With ``fixed_sig`` set, unknown identifiers are errors; otherwise symbols
    are collected into ``found`` as they are first seen.
    """

    def __init__(
        self,
        tokens: List[Token],
        var_names: Sequence[str],
        fixed_sig: Optional[Signature] = None,
        source: str = "",
    ):
        self.tokens = tokens
        self.i = 0
        self.vars = {name: k for k, name in enumerate(var_names, 1)}
        self.fixed_sig = fixed_sig
        self.found: Dict[str, Symbol] = {}
        self.order: Dict[str, None] = {}
        self.source = source

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token) -> ParseError:
        return ParseError(msg, tok.line, tok.column, self.source)

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {shown!r}", tok)
        return tok

    def term(self) -> Term:
        tok = self.next()
        if tok.kind != "ident":
            raise self.error(f"expected a term, found {tok.text or 'end of input'!r}", tok)
        if tok.text not in self.vars:
            # reserve the slot now so symbols are ordered by first textual occurrence
            self.order.setdefault(tok.text, None)
        args: List[Term] = []
        has_parens = self.peek().kind == "("
        if has_parens:
            self.next()
            if self.peek().kind != ")":
                args.append(self.term())
                while self.peek().kind == ",":
                    self.next()
                    args.append(self.term())
            self.expect(")")
        name = tok.text
        if name in self.vars:
            if has_parens:
                raise self.error(f"variable {name!r} used as a function symbol", tok)
            return Var(self.vars[name])
        return App(self.symbol(name, len(args), tok), tuple(args))

    def symbol(self, name: str, arity: int, tok: Token) -> Symbol:
        if self.fixed_sig is not None:
            sym = self.fixed_sig.get(name)
            if sym is None:
                raise self.error(f"unknown identifier {name!r}", tok)
        else:
            sym = self.found.get(name)
            if sym is None:
                sym = self.found[name] = Symbol(name, arity)
        if sym.arity != arity:
            raise self.error(
                f"{name!r} has arity {sym.arity} but is applied to {arity} argument(s)", tok
            )
        return sym


def parse_term(text: str, sig: Signature, vars: Sequence[str] = ()) -> Term:
    """Parse a prefix-syntax term; the k-th name of ``vars`` becomes x_k."""
    p = _TermParser(tokenize(text), vars, fixed_sig=sig)
    t = p.term()
    p.expect("eof")
    return t


def parse_rule(text: str, sig: Signature, vars: Sequence[str] = (), index: int = 0) -> Rule:
    p = _TermParser(tokenize(text), vars, fixed_sig=sig)
    lhs = p.term()
    arrow = p.expect("->")
    rhs = p.term()
    p.expect("eof")
    try:
        return Rule(lhs, rhs, index)
    except ValueError as exc:
        raise ParseError(str(exc), arrow.line, arrow.column) from None


def _section_words(p: _TermParser) -> List[Token]:
    words = []
    while p.peek().kind != ")":
        tok = p.next()
        if tok.kind == "eof":
            raise p.error("unterminated section", tok)
        words.append(tok)
    p.next()
    return words


def parse_trs_text(text: str, source: str = "") -> Trs:
    tokens = tokenize(text, source)
    p = _TermParser(tokens, (), source=source)
    var_names: List[str] = []
    declared: Optional[List[Symbol]] = None
    raw_rules: List[Tuple[Term, Term, Token]] = []
    seen_rules = False
    while p.peek().kind != "eof":
        p.expect("(")
        head = p.expect("ident")
        kind = head.text.upper()
        if kind == "VAR":
            for tok in _section_words(p):
                if tok.kind != "ident":
                    raise p.error(f"bad variable name {tok.text!r}", tok)
                if tok.text in var_names:
                    raise p.error(f"variable {tok.text!r} declared twice", tok)
                var_names.append(tok.text)
            p.vars = {name: k for k, name in enumerate(var_names, 1)}
        elif kind == "SIG":
            declared = declared or []
            while p.peek().kind == "(":
                p.next()
                name = p.expect("ident")
                arity = p.expect("ident")
                if not arity.text.isdigit():
                    raise p.error(f"arity must be a natural number, got {arity.text!r}", arity)
                declared.append(Symbol(name.text, int(arity.text)))
                p.expect(")")
            p.expect(")")
        elif kind == "RULES":
            if seen_rules:
                raise p.error("more than one RULES section", head)
            seen_rules = True
            if declared is not None:
                try:
                    p.fixed_sig = Signature(declared)
                except ValueError as exc:
                    raise p.error(str(exc), head) from None
            while p.peek().kind != ")":
                lhs = p.term()
                arrow = p.expect("->")
                rhs = p.term()
                raw_rules.append((lhs, rhs, arrow))
            p.next()
        elif kind == "COMMENT":
            depth = 1
            while depth:
                tok = p.next()
                if tok.kind == "eof":
                    raise p.error("unterminated COMMENT", tok)
                depth += {"(": 1, ")": -1}.get(tok.kind, 0)
        else:
            raise p.error(f"unknown section {head.text!r}", head)
    for name in var_names:
        if name in p.found:
            raise ParseError(f"{name!r} is declared as a variable and used as a symbol",
                             source=source)
    if declared is not None:
        try:
            sig = Signature(declared)
        except ValueError as exc:
            raise ParseError(str(exc), source=source) from None
    else:
        sig = Signature([p.found[name] for name in p.order if name in p.found])
    rules = []
    for k, (lhs, rhs, arrow) in enumerate(raw_rules, 1):
        try:
            rules.append(Rule(lhs, rhs, k))
        except ValueError as exc:
            raise ParseError(str(exc), arrow.line, arrow.column, source) from None
    return Trs(sig, rules, var_names)


def parse_trs_file(path: Union[str, Path]) -> Trs:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=str(path)) from None
    return parse_trs_text(text, source=str(path))


def display_var_names(trs: Trs) -> List[str]:
    """Declared variable names, padded with fresh ``x<k>`` names as needed."""
    names = list(trs.var_names)
    need = max((max(max_var(r.lhs), max_var(r.rhs)) for r in trs.rules), default=0)
    taken = set(names) | {s.name for s in trs.sig}
    k = len(names) + 1
    while len(names) < need:
        cand = f"x{k}"
        while cand in taken:
            cand += "'"
        names.append(cand)
        taken.add(cand)
        k += 1
    return names


def render_term(t: Term, var_names: Sequence[str] = ()) -> str:
    if isinstance(t, Var):
        return var_names[t.index - 1] if t.index <= len(var_names) else f"x{t.index}"
    if not t.args:
        return t.symbol.name
    return t.symbol.name + "(" + ",".join(render_term(a, var_names) for a in t.args) + ")"


def render_rule(rule: Rule, var_names: Sequence[str] = ()) -> str:
    return f"{render_term(rule.lhs, var_names)} -> {render_term(rule.rhs, var_names)}"


def _inferred_signature(trs: Trs) -> List[Symbol]:
    found: Dict[str, Symbol] = {}

    def walk(t: Term) -> None:
        if isinstance(t, App):
            found.setdefault(t.symbol.name, t.symbol)
            for a in t.args:
                walk(a)

    for r in trs.rules:
        walk(r.lhs)
        walk(r.rhs)
    return list(found.values())


def render_trs(trs: Trs) -> str:
    """Render in the file format; ``parse_trs_text(render_trs(R)) == R``."""
    names = display_var_names(trs)
    lines = [f"(VAR {' '.join(names)})" if names else "(VAR)"]
    if list(trs.sig.symbols) != _inferred_signature(trs):
        lines.append("(SIG " + " ".join(f"({s.name} {s.arity})" for s in trs.sig) + ")")
    lines.append("(RULES")
    lines.extend("  " + render_rule(r, names) for r in trs.rules)
    lines.append(")")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> List[List[int]]:
    """Rows separated by newlines or ``/``, integers separated by whitespace."""
    rows = []
    for lineno, raw in enumerate(text.replace("/", "\n").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(w) for w in line.split()])
        except ValueError:
            raise ParseError(f"malformed matrix row {raw.strip()!r}", lineno, 1) from None
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("matrix rows have different lengths")
    return rows
