import functools
import random

import pytest

from hodgering import elliptic_weight1_ring, standard_form, torus_ring

# criterion number -> (passed, message); filled by test_acceptance.py
ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def weight1(n):
    return elliptic_weight1_ring(n)


@functools.lru_cache(maxsize=None)
def torus_std(d):
    return torus_ring(standard_form(d))


def random_alternating(rng, n, lo=-5, hi=5):
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(lo, hi)
            A[i][j], A[j][i] = v, -v
    return A


def singular_alternating(rng, n):
    """Alternating matrix of rank < n: u v^T - v u^T, or zero when n = 2."""
    if n == 2:
        return [[0, 0], [0, 0]]
    u = [rng.randint(-5, 5) for _ in range(n)]
    v = [rng.randint(-5, 5) for _ in range(n)]
    return [[u[i] * v[j] - v[i] * u[j] for j in range(n)] for i in range(n)]


@functools.lru_cache(maxsize=None)
def alternating_corpus(seed=2024):
    """50 random alternating matrices of sizes 2, 4, 6 plus 10 singular ones."""
    rng = random.Random(seed)
    sizes = [2, 4, 6]
    mats = [random_alternating(rng, sizes[k % 3]) for k in range(50)]
    mats += [singular_alternating(rng, sizes[k % 3]) for k in range(10)]
    return tuple(tuple(tuple(r) for r in A) for A in mats)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {msg}")
