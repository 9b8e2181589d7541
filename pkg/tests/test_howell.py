"""Howell elimination against brute-force enumeration oracles.

Matrices are kept tiny (dims <= 3, moduli <= 12) so that full row spans
and solution sets can be enumerated exactly.
"""

import itertools

import numpy as np
import pytest

from gwacat import howell

MODULI = [2, 4, 5, 6, 8, 9, 12]


def enumerate_span(A, m):
    """All Z/m combinations of the rows of A, as a set of tuples."""
    rows = [tuple(int(v) for v in r) for r in A % m]
    span = set()
    for coeffs in itertools.product(range(m), repeat=len(rows)):
        v = tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % m for i in range(A.shape[1]))
        span.add(v)
    return span


def random_matrix(rng, m, rows, cols):
    return rng.integers(0, m, size=(rows, cols)).astype(np.int64)


@pytest.mark.parametrize("m", MODULI)
def test_howell_form_preserves_span(m):
    rng = np.random.default_rng(m)
    for _ in range(20):
        A = random_matrix(rng, m, 3, 3)
        W = howell.howell_form(A, m)
        assert enumerate_span(A, m) == enumerate_span(W, m)


@pytest.mark.parametrize("m", MODULI)
def test_howell_form_is_canonical(m):
    rng = np.random.default_rng(100 + m)
    for _ in range(20):
        A = random_matrix(rng, m, 3, 3)
        # a different generating set of the same span: rows plus random
        # combinations, shuffled
        combos = (rng.integers(0, m, size=(3, 3)).astype(np.int64) @ A) % m
        B = np.vstack([A, combos])
        rng.shuffle(B)
        assert np.array_equal(howell.howell_form(A, m), howell.howell_form(B, m))


@pytest.mark.parametrize("m", MODULI)
def test_kernel_is_complete_and_correct(m):
    rng = np.random.default_rng(200 + m)
    for _ in range(10):
        A = random_matrix(rng, m, 3, 3)
        K = howell.kernel(A, m)
        for row in K:
            assert not ((A @ row) % m).any()
        brute = {
            x
            for x in itertools.product(range(m), repeat=3)
            if not ((A @ np.array(x, dtype=np.int64)) % m).any()
        }
        spanned = enumerate_span(K, m) if K.shape[0] else {(0, 0, 0)}
        assert brute == spanned


@pytest.mark.parametrize("m", MODULI)
def test_solve_matches_enumeration(m):
    rng = np.random.default_rng(300 + m)
    for _ in range(15):
        A = random_matrix(rng, m, 3, 2)
        b = rng.integers(0, m, size=3).astype(np.int64)
        x = howell.solve(A, b, m)
        brute_solvable = any(
            not ((A @ np.array(v, dtype=np.int64) - b) % m).any()
            for v in itertools.product(range(m), repeat=2)
        )
        if x is None:
            assert not brute_solvable
        else:
            assert not ((A @ x - b) % m).any()


@pytest.mark.parametrize("m", MODULI)
def test_same_span(m):
    rng = np.random.default_rng(400 + m)
    A = random_matrix(rng, m, 2, 3)
    doubled = np.vstack([A, A])
    assert howell.same_span(A, doubled, m)
    enlarged = np.vstack([A, np.eye(3, dtype=np.int64)])
    assert howell.same_span(A, enlarged, m) == (enumerate_span(A, m) == enumerate_span(enlarged, m))
