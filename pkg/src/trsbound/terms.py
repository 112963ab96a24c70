"""First-order terms over an unsorted signature.

Variables are numbered ``x1, x2, ...`` and represented by their index only;
surface names live in the parser and in rendered output.  A position is a
tuple of 1-based argument indices read from the root, so ``()`` is the root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "Symbol",
    "Signature",
    "Var",
    "App",
    "Term",
    "Position",
    "Substitution",
    "apply_subst",
    "compose",
    "unify",
    "match_term",
    "subterm_at",
    "replace_at",
    "positions",
    "iter_subterms",
    "nonvar_positions",
    "rename_apart",
    "var_count",
    "variables",
    "max_var",
    "symbol_counts",
    "term_size",
    "term_depth",
    "canonical_renaming",
]


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("symbol name must be nonempty")
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name!r}")

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


class Signature:
    """Ordered collection of symbols; the order indexes symbol-count vectors."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Sequence[Symbol] = ()):
        self.symbols: Tuple[Symbol, ...] = tuple(symbols)
        self._index: Dict[str, int] = {}
        for k, sym in enumerate(self.symbols):
            if sym.name in self._index:
                raise ValueError(f"duplicate symbol {sym.name!r} in signature")
            self._index[sym.name] = k

    @classmethod
    def of(cls, *pairs: Tuple[str, int]) -> "Signature":
        return cls([Symbol(name, arity) for name, arity in pairs])

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Symbol):
            k = self._index.get(item.name)
            return k is not None and self.symbols[k] == item
        return item in self._index

    def __getitem__(self, name: str) -> Symbol:
        return self.symbols[self._index[name]]

    def get(self, name: str) -> Optional[Symbol]:
        k = self._index.get(name)
        return None if k is None else self.symbols[k]

    def index(self, sym: Union[Symbol, str]) -> int:
        name = sym.name if isinstance(sym, Symbol) else sym
        return self._index[name]

    def extend(self, sym: Symbol) -> "Signature":
        return Signature(self.symbols + (sym,))

    def without(self, name: str) -> "Signature":
        return Signature([s for s in self.symbols if s.name != name])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return "Signature(" + ", ".join(map(str, self.symbols)) + ")"


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: Symbol
    args: Tuple["Term", ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.symbol.arity:
            raise ValueError(
                f"{self.symbol.name} expects {self.symbol.arity} arguments, "
                f"got {len(self.args)}"
            )
        object.__setattr__(self, "_hash", hash((self.symbol, self.args)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, App) or self._hash != other._hash:
            return False
        return self.symbol == other.symbol and self.args == other.args

    def __str__(self) -> str:
        if not self.args:
            return self.symbol.name
        return f"{self.symbol.name}({','.join(map(str, self.args))})"


Term = Union[Var, App]
Position = Tuple[int, ...]
Substitution = Mapping[int, Term]


def apply_subst(sigma: Substitution, t: Term) -> Term:
    """Replace every variable of ``t`` simultaneously by its binding."""
    if not sigma:
        return t
    if isinstance(t, Var):
        return sigma.get(t.index, t)
    if not t.args:
        return t
    return App(t.symbol, tuple(apply_subst(sigma, a) for a in t.args))


def compose(outer: Substitution, inner: Substitution) -> Dict[int, Term]:
    """Return the substitution ``t -> apply_subst(outer, apply_subst(inner, t))``."""
    out: Dict[int, Term] = {}
    for i, u in inner.items():
        v = apply_subst(outer, u)
        if v != Var(i):
            out[i] = v
    for i, u in outer.items():
        if i not in inner and u != Var(i):
            out[i] = u
    return out


def _occurs(i: int, t: Term) -> bool:
    if isinstance(t, Var):
        return t.index == i
    return any(_occurs(i, a) for a in t.args)


def unify(t1: Term, t2: Term) -> Optional[Dict[int, Term]]:
    """Most general unifier of ``t1`` and ``t2`` with occurs check.

    The returned substitution is idempotent: no bound variable occurs in the
    range.  Returns ``None`` when the terms do not unify.
    """
    sigma: Dict[int, Term] = {}
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a = apply_subst(sigma, a)
        b = apply_subst(sigma, b)
        if a == b:
            continue
        if isinstance(b, Var) and not isinstance(a, Var):
            a, b = b, a
        if isinstance(a, Var):
            if _occurs(a.index, b):
                return None
            single = {a.index: b}
            sigma = {k: apply_subst(single, v) for k, v in sigma.items()}
            sigma[a.index] = b
            continue
        if a.symbol != b.symbol:
            return None
        stack.extend(zip(a.args, b.args))
    return sigma


def match_term(pattern: Term, subject: Term) -> Optional[Dict[int, Term]]:
    """Find ``sigma`` with ``apply_subst(sigma, pattern) == subject``."""
    sigma: Dict[int, Term] = {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = sigma.get(p.index)
            if bound is None:
                sigma[p.index] = s
            elif bound != s:
                return None
        elif isinstance(s, Var) or p.symbol != s.symbol:
            return None
        else:
            stack.extend(zip(p.args, s.args))
    return {k: v for k, v in sigma.items() if v != Var(k)}


def subterm_at(t: Term, p: Position) -> Term:
    for k in p:
        if isinstance(t, Var) or not 1 <= k <= len(t.args):
            raise IndexError(f"invalid position {p}")
        t = t.args[k - 1]
    return t


def replace_at(t: Term, p: Position, s: Term) -> Term:
    if not p:
        return s
    if isinstance(t, Var) or not 1 <= p[0] <= len(t.args):
        raise IndexError(f"invalid position {p}")
    k = p[0] - 1
    args = t.args
    return App(t.symbol, args[:k] + (replace_at(args[k], p[1:], s),) + args[k + 1:])


def positions(t: Term) -> Iterator[Position]:
    """All positions of ``t``, outermost first, left to right (preorder)."""
    yield ()
    if isinstance(t, App):
        for k, a in enumerate(t.args, 1):
            for q in positions(a):
                yield (k,) + q


def iter_subterms(t: Term, path: Position = ()) -> Iterator[Tuple[Position, Term]]:
    """(position, subterm) pairs in the same order as ``positions``."""
    yield path, t
    if isinstance(t, App):
        for k, a in enumerate(t.args, 1):
            yield from iter_subterms(a, path + (k,))


def nonvar_positions(t: Term) -> Iterator[Position]:
    yield from (p for p in positions(t) if isinstance(subterm_at(t, p), App))


def rename_apart(t: Term, offset: int) -> Term:
    if isinstance(t, Var):
        return Var(t.index + offset)
    if not t.args:
        return t
    return App(t.symbol, tuple(rename_apart(a, offset) for a in t.args))


def var_count(t: Term, i: int) -> int:
    """Number of occurrences of ``x_i`` in ``t``."""
    if isinstance(t, Var):
        return int(t.index == i)
    return sum(var_count(a, i) for a in t.args)


def variables(t: Term) -> Tuple[int, ...]:
    """Variable indices of ``t`` in order of first occurrence."""
    seen: Dict[int, None] = {}

    def walk(u: Term) -> None:
        if isinstance(u, Var):
            seen.setdefault(u.index, None)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return tuple(seen)


def max_var(t: Term) -> int:
    return max(variables(t), default=0)


def symbol_counts(t: Term, sig: Signature) -> Tuple[int, ...]:
    counts = [0] * len(sig)

    def walk(u: Term) -> None:
        if isinstance(u, App):
            counts[sig.index(u.symbol)] += 1
            for a in u.args:
                walk(a)

    walk(t)
    return tuple(counts)


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def canonical_renaming(*ts: Term) -> Dict[int, Term]:
    """Renaming that numbers the variables of ``ts`` 1, 2, ... by first occurrence."""
    order: Dict[int, None] = {}
    for t in ts:
        for i in variables(t):
            order.setdefault(i, None)
    return {i: Var(k) for k, i in enumerate(order, 1) if i != k}
