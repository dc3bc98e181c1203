import itertools

import numpy as np
import pytest

import pnmetric as pn
from pnmetric import random_spaces as rs


@pytest.fixture
def g5():
    return pn.two_point_five_metric()


@pytest.fixture
def one_point():
    return pn.build_space(["x"], 3, [(["x", "x", "x"], 7.0)])


@pytest.fixture
def pm_xy():
    return pn.PartialMetricSpace.from_entries(
        ["x", "y"], [(("x", "x"), 1), (("y", "y"), 2), (("x", "y"), 2)]
    )


def two_point(n, aa, ab, bb):
    """n=2 space on {a, b} with the three given values."""
    assert n == 2
    return pn.build_space(["a", "b"], 2, [(["a", "a"], aa), (["a", "b"], ab), (["b", "b"], bb)])


def brute_ptri_ok(space, tol=1e-9):
    """Every ordered n-tuple, every y: the triangle axiom, no symmetry shortcuts."""
    n = space.n
    for tup in itertools.product(space.points, repeat=n):
        for y in space.points:
            lhs = space(*tup)
            rhs = space(*tup[:-1], y) + space(*([y] * (n - 1)), tup[-1]) - space(*([y] * n))
            if lhs > rhs + tol:
                return False
    return True


def brute_valid(space, tol=1e-9):
    n, pts = space.n, space.points
    for x in pts:
        for y in pts:
            sx = space(*([x] * n))
            mixed = space(*([x] * (n - 1)), y)
            if sx > mixed + tol:
                return False
            if x != y:
                sy = space(*([y] * n))
                if abs(mixed - sx) <= tol and abs(space(*([y] * (n - 1)), x) - sy) <= tol:
                    return False
    return brute_ptri_ok(space, tol)


def corpus(seed, count, k, n, strong=False):
    rng = np.random.default_rng(seed)
    return [rs.random_partial_n_metric(rng, k, n, strong=strong) for _ in range(count)]
