import itertools
import random
from functools import reduce
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from trsbound.linalg import (
    IntMatrix,
    det,
    factorize,
    is_prime,
    rank_mod_p,
    rank_over,
    s_of_group,
    snf,
    subquotient_dimension,
    subquotient_invariants,
    verify_snf,
)


def minors_divisors(rows):
    """Elementary divisors from determinantal divisors: d_k / d_(k-1)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    dets = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, int(sympy.Matrix([[rows[i][j] for j in cs] for i in rs]).det()))
        if g == 0:
            break
        dets.append(g)
    return tuple(dets[k] // dets[k - 1] for k in range(1, len(dets)))


def random_matrix(rng, max_rows=5, max_cols=6, bound=9):
    m, n = rng.randint(1, max_rows), rng.randint(1, max_cols)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def test_minus_matrix():
    M = IntMatrix.from_rows([[0, 0, 1, 1], [0, 2, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]])
    res = snf(M, transforms=True)
    assert res.divisors == (1, 2)
    assert res.rank == 2
    assert verify_snf(M, res)


def test_zero_and_empty():
    assert snf(IntMatrix.zeros(2, 2)).divisors == ()
    assert snf(IntMatrix.zeros(5, 1)).rank == 0
    res = snf(IntMatrix.zeros(0, 0), transforms=True)
    assert res.divisors == () and verify_snf(IntMatrix.zeros(0, 0), res)


def test_divisibility_repair():
    # diag(2, 3) is not in normal form; its divisors are 1, 6
    assert snf(IntMatrix.from_rows([[2, 0], [0, 3]])).divisors == (1, 6)
    assert snf(IntMatrix.from_rows([[4, 0, 0], [0, 6, 0], [0, 0, 10]])).divisors == (2, 2, 60)


@settings(max_examples=200)
@given(matrices)
def test_snf_matches_minors(rows):
    M = IntMatrix.from_rows(rows)
    res = snf(M, transforms=True)
    assert res.divisors == minors_divisors(rows)
    assert verify_snf(M, res)


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det(IntMatrix.from_rows(rows)) == int(sympy.Matrix(rows).det())


@settings(max_examples=200)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_counts_divisors_prime_to_p(rows, p):
    M = IntMatrix.from_rows(rows)
    assert rank_mod_p(M, p) == sum(1 for e in snf(M).divisors if e % p)


def test_rank_over_rationals():
    rng = random.Random(5)
    for _ in range(100):
        rows = random_matrix(rng)
        assert rank_over(IntMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()


def test_rank_mod_p_rejects_composites():
    with pytest.raises(ValueError):
        rank_mod_p(IntMatrix.identity(2), 4)


def test_verify_detects_bad_transforms():
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    res = snf(M, transforms=True)
    bad = type(res)(res.divisors, res.rank, res.shape,
                    IntMatrix.from_rows([[2, 0], [0, 1]]) @ res.left, res.right, res.right_inv)
    assert not verify_snf(M, bad)
    with pytest.raises(ValueError):
        verify_snf(M, snf(M))


def test_primes_and_factors():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(60) == [2, 2, 3, 5]
    assert reduce(lambda x, y: x * y, factorize(9699690)) == 9699690


def test_s_of_group():
    assert s_of_group(0, []) == 0
    assert s_of_group(2, []) == 2
    assert s_of_group(1, [2, 6]) == 3
    with pytest.raises(ValueError):
        s_of_group(0, [1])


def test_subquotient_examples():
    # ker of the zero map Z^2 -> Z^1 modulo the image of (2, 0): Z/2 x Z
    out = IntMatrix.zeros(1, 2)
    inc = IntMatrix.from_rows([[2], [0]])
    assert subquotient_invariants(out, inc) == (1, (2,))
    assert subquotient_dimension(out, inc, 2) == 2
    assert subquotient_dimension(out, inc, 3) == 1
    # ker (1 1) is spanned by (1,-1); modulo 3*(1,-1) leaves Z/3
    out = IntMatrix.from_rows([[1, 1]])
    inc = IntMatrix.from_rows([[3], [-3]])
    assert subquotient_invariants(out, inc) == (0, (3,))
    with pytest.raises(ValueError):
        subquotient_invariants(out, IntMatrix.from_rows([[1], [0]]))


@settings(max_examples=100)
@given(matrices)
def test_subquotient_of_kernel_by_zero_is_free(rows):
    M = IntMatrix.from_rows(rows)
    free, torsion = subquotient_invariants(M, IntMatrix.zeros(M.cols, 1))
    assert torsion == ()
    assert free == M.cols - snf(M).rank
