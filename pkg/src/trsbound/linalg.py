"""Exact integer linear algebra: Smith normal form, ranks over Z/pZ, kernels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

Rows = List[List[int]]


class IntMatrix:
    """Dense matrix of Python integers, immutable by convention."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        self.rows = rows
        self.cols = cols
        self.entries: Tuple[int, ...] = tuple(int(x) for x in entries)
        if len(self.entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> Rows:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> List[int]:
        return [self[i, j] for i in range(self.rows)]

    def columns(self) -> List[List[int]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.columns()
        return IntMatrix.from_rows(
            [[sum(x * y for x, y in zip(r, c)) for c in b] for r in a], cols=other.cols
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


@dataclass(frozen=True)
class SnfResult:
    """Elementary divisors of an integer matrix.

    When computed with transforms, ``left @ A @ right`` is the normal form and
    ``right_inv`` is the inverse of ``right``.
    """

    divisors: Tuple[int, ...]
    rank: int
    shape: Tuple[int, int]
    left: Optional[IntMatrix] = None
    right: Optional[IntMatrix] = None
    right_inv: Optional[IntMatrix] = None

    def normal_form(self) -> IntMatrix:
        m, n = self.shape
        rows = [[0] * n for _ in range(m)]
        for k, e in enumerate(self.divisors):
            rows[k][k] = e
        return IntMatrix.from_rows(rows, cols=n)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(e for e in self.divisors if e > 1)


def _eye(n: int) -> Rows:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(M: IntMatrix, transforms: bool = False) -> SnfResult:
    """Smith normal form by elimination with a minimal-absolute-value pivot.

    Entries stay exact Python integers throughout.  With ``transforms`` the
    unimodular ``left``/``right`` matrices (and ``right``'s inverse) are kept.
    """
    A = M.to_rows()
    m, n = M.rows, M.cols
    U = _eye(m) if transforms else None
    V = _eye(n) if transforms else None
    Vi = _eye(n) if transforms else None

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for r in A:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src: int, dst: int, c: int) -> None:
        # row dst += c * row src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, c: int) -> None:
        # col dst += c * col src
        for r in A:
            r[dst] += c * r[src]
        if V is not None:
            for r in V:
                r[dst] += c * r[src]
            Vi[src] = [x - c * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(i: int) -> None:
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    divisors: List[int] = []
    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                row = A[i]
                for j in range(s, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != s:
                swap_rows(i, s)
            if j != s:
                swap_cols(j, s)
            p = A[s][s]
            clean = True
            for i in range(s + 1, m):
                if A[i][s]:
                    add_row(s, i, -(A[i][s] // p))
                    clean = clean and A[i][s] == 0
            for j in range(s + 1, n):
                if A[s][j]:
                    add_col(s, j, -(A[s][j] // p))
                    clean = clean and A[s][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(s + 1, m) if any(A[i][j] % p for j in range(s + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(bad, s, 1)
        if best is None:
            break
        if A[s][s] < 0:
            negate_row(s)
        divisors.append(A[s][s])

    if not transforms:
        return SnfResult(tuple(divisors), len(divisors), M.shape)
    return SnfResult(
        tuple(divisors),
        len(divisors),
        M.shape,
        IntMatrix.from_rows(U, cols=m),
        IntMatrix.from_rows(V, cols=n),
        IntMatrix.from_rows(Vi, cols=n),
    )


def det(M: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    A = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def verify_snf(M: IntMatrix, res: SnfResult) -> bool:
    """Check ``left @ M @ right`` against the normal form and unimodularity."""
    if res.left is None or res.right is None:
        raise ValueError("SNF was computed without transforms")
    chain = all(b % a == 0 for a, b in zip(res.divisors, res.divisors[1:]))
    return (
        chain
        and all(e > 0 for e in res.divisors)
        and res.left @ M @ res.right == res.normal_form()
        and abs(det(res.left)) == 1
        and abs(det(res.right)) == 1
        and res.right @ res.right_inv == IntMatrix.identity(M.cols)
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def factorize(n: int) -> List[int]:
    out, k = [], 2
    while k * k <= n:
        while n % k == 0:
            out.append(k)
            n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def rank_mod_p(M: IntMatrix, p: int) -> int:
    """Rank of ``M`` with entries reduced modulo the prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    A = [[x % p for x in row] for row in M.to_rows()]
    rank = 0
    for j in range(M.cols):
        piv = next((i for i in range(rank, M.rows) if A[i][j]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][j], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(M.rows):
            if i != rank and A[i][j]:
                c = A[i][j]
                A[i] = [(x - c * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def rank_over(M: IntMatrix, p: int = 0) -> int:
    """Rank over Q when ``p == 0``, else over Z/pZ."""
    return snf(M).rank if p == 0 else rank_mod_p(M, p)


def s_of_group(free_rank: int, torsion_divisors: Sequence[int]) -> int:
    """Minimal number of generators of Z^free_rank x prod Z/d_i Z (all d_i >= 2)."""
    if any(d < 2 for d in torsion_divisors):
        raise ValueError("torsion divisors must be at least 2")
    return free_rank + len(torsion_divisors)


def subquotient_invariants(
    outgoing: IntMatrix, incoming: IntMatrix
) -> Tuple[int, Tuple[int, ...]]:
    """Structure of ``ker(outgoing) / im(incoming)`` over Z.

    ``incoming``'s columns must lie in the kernel of ``outgoing``.  Returns
    the free rank and the torsion divisors (all >= 2).
    """
    if outgoing.cols != incoming.rows:
        raise ValueError("composable maps required")
    n = outgoing.cols
    res = snf(outgoing, transforms=True)
    r = res.rank
    kernel_rank = n - r
    # coordinates of the incoming columns in the kernel basis (columns r.. of V)
    coords = res.right_inv @ incoming if incoming.cols else IntMatrix.zeros(n, 0)
    rows = coords.to_rows()
    if any(any(row) for row in rows[:r]):
        raise ValueError("incoming image is not contained in the kernel")
    sub = IntMatrix.from_rows(rows[r:], cols=incoming.cols)
    inner = snf(sub)
    return kernel_rank - inner.rank, inner.torsion


def subquotient_dimension(outgoing: IntMatrix, incoming: IntMatrix, p: int) -> int:
    """Dimension of ``ker(outgoing) / im(incoming)`` over Z/pZ."""
    return (outgoing.cols - rank_mod_p(outgoing, p)) - rank_mod_p(incoming, p)
