"""Random generators for valid (and deliberately invalid) finite spaces.

All values are small integers so that axiom verdicts never hinge on
floating point ties.  Validity is always confirmed by the exhaustive
checkers before a space is returned.
"""

from __future__ import annotations

import numpy as np

from .axioms import check_partial_metric, validate
from .spaces import (
    PartialMetricSpace,
    PartialNMetricSpace,
    from_partial_metric,
)


def point_names(k: int) -> list:
    return [chr(ord("a") + i) for i in range(k)] if k <= 26 else [f"p{i}" for i in range(k)]


def _base_metric(rng, k, low=2, high=4):
    # any values in [c, 2c] satisfy the triangle inequality
    d = np.zeros((k, k), dtype=int)
    for i in range(k):
        for j in range(i + 1, k):
            d[i, j] = d[j, i] = rng.integers(low, high + 1)
    return d


def random_partial_metric(
    rng: np.random.Generator, k: int, kind: str | None = None
) -> PartialMetricSpace:
    """A valid partial metric on ``k`` points with values in [0, 10].

    ``kind`` picks the construction: ``"weighted"`` (``d + w_x + w_y``, can
    tie self-distances with mixed values), ``"max"`` (``max(w_x, w_y) + d``,
    always strong) or ``"raw"`` (random walk through valid integer matrices).
    """
    kind = kind or rng.choice(["weighted", "max", "raw"])
    pts = point_names(k)
    if kind == "weighted":
        d = _base_metric(rng, k)
        w = rng.integers(0, 3, size=k)
        m = d + w[:, None] + w[None, :]
        np.fill_diagonal(m, 2 * w)
    elif kind == "max":
        d = _base_metric(rng, k)
        w = rng.integers(0, 7, size=k)
        m = np.maximum(w[:, None], w[None, :]) + d
        np.fill_diagonal(m, w)
    elif kind == "raw":
        # random walk over valid integer matrices, starting from a weighted one
        d = _base_metric(rng, k)
        w = rng.integers(0, 3, size=k)
        m = d + w[:, None] + w[None, :]
        np.fill_diagonal(m, 2 * w)
        for _ in range(6 * k * k):
            i, j = rng.integers(k, size=2)
            cand = m.copy()
            cand[i, j] = cand[j, i] = rng.integers(0, 11)
            if not check_partial_metric(PartialMetricSpace.from_matrix(pts, cand)):
                m = cand
    else:
        raise ValueError(f"unknown kind {kind!r}")
    pspace = PartialMetricSpace.from_matrix(pts, m)
    assert not check_partial_metric(pspace)
    return pspace


def random_metric_partial_metric(rng, k) -> PartialMetricSpace:
    """A genuine metric (zero self-distances) viewed as a partial metric."""
    return PartialMetricSpace.from_matrix(point_names(k), _base_metric(rng, k, 1, 2))


def random_table(
    rng: np.random.Generator, k: int, n: int, low: int = -3, high: int = 8
) -> PartialNMetricSpace:
    """Uniform random integer table; usually not a valid space."""
    pts = point_names(k)
    base = PartialNMetricSpace(pts, n, {key: 0.0 for key in _keys(k, n)})
    return PartialNMetricSpace(
        pts, n, {key: float(rng.integers(low, high + 1)) for key in base.multisets()}
    )


def _keys(k, n):
    from itertools import combinations_with_replacement

    return combinations_with_replacement(range(k), n)


def random_walk(
    rng: np.random.Generator,
    space: PartialNMetricSpace,
    steps: int = 30,
    profile: str = "partial_n_metric",
    keep_self: bool = False,
    spread: int = 3,
) -> PartialNMetricSpace:
    """Perturb single entries at random, keeping only moves that stay valid.

    Starting from a valid table this wanders through valid tables that are
    not of any special form.  ``keep_self`` leaves self-distances alone.
    """
    current = space
    keys = list(space.multisets())
    if keep_self:
        keys = [key for key in keys if len(set(key)) > 1]
    if not keys:
        return current
    for _ in range(steps):
        key = keys[rng.integers(len(keys))]
        table = dict(current.table)
        table[key] = table[key] + float(rng.integers(-spread, spread + 1))
        cand = PartialNMetricSpace(current.points, current.n, table)
        if validate(cand, profile).passed:
            current = cand
    return current


def add_tie(rng: np.random.Generator, space: PartialNMetricSpace, tries: int = 30):
    """Try to make some ``G(<x>^(n-1), y)`` equal ``G(<x>^n)``, breaking strongness."""
    pts = space.points
    for _ in range(tries):
        i, j = rng.choice(len(pts), size=2, replace=False)
        x, y = pts[i], pts[j]
        cand = space.replace({(x,) * (space.n - 1) + (y,): space.self_distance(x)})
        if validate(cand).passed:
            return cand
    return space


def shifted(space: PartialNMetricSpace, c: float) -> PartialNMetricSpace:
    """Add ``c`` to every value; preserves every axiom."""
    return PartialNMetricSpace(
        space.points, space.n, {k: v + c for k, v in space.table.items()}
    )


def random_partial_n_metric(
    rng: np.random.Generator,
    k: int,
    n: int,
    strong: bool = False,
    walk: bool = True,
    allow_negative: bool = True,
) -> PartialNMetricSpace:
    """A validated partial n-metric space (strong if requested)."""
    profile = "strong" if strong else "partial_n_metric"
    for _ in range(1000):
        kind = "max" if strong else None
        pspace = random_partial_metric(rng, k, kind)
        space = from_partial_metric(pspace, n)
        if walk:
            space = random_walk(rng, space, steps=4 * k * n, profile=profile)
            if not strong and k > 1 and rng.random() < 0.6:
                space = add_tie(rng, space)
        if allow_negative and rng.random() < 0.3:
            space = shifted(space, -float(rng.integers(1, 6)))
        if validate(space, profile).passed:
            return space
    raise RuntimeError("could not generate a valid space")


def random_n_metric(rng: np.random.Generator, k: int, n: int) -> PartialNMetricSpace:
    """A validated n-metric space (all self-distances zero)."""
    for _ in range(1000):
        space = from_partial_metric(random_metric_partial_metric(rng, k), n)
        space = random_walk(rng, space, steps=4 * k * n, profile="n_metric", keep_self=True)
        if validate(space, "n_metric").passed:
            return space
    raise RuntimeError("could not generate an n-metric space")


def corrupt(rng: np.random.Generator, space: PartialNMetricSpace, tries: int = 200):
    """A copy of a valid space pushed out of validity by editing entries."""
    keys = list(space.multisets())
    for _ in range(tries):
        table = dict(space.table)
        for _ in range(rng.integers(1, 3)):
            key = keys[rng.integers(len(keys))]
            table[key] = float(rng.integers(-6, 10))
        cand = PartialNMetricSpace(space.points, space.n, table)
        if not validate(cand).passed:
            return cand
    return cand


def degenerate(space: PartialNMetricSpace, x: str, y: str) -> PartialNMetricSpace:
    """Force x and y to be indistinguishable: their whole mixed chain is constant."""
    i, j = space.index(x), space.index(y)
    base = space.self_distance(x)
    table = dict(space.table)
    for key in table:
        if set(key) <= {i, j}:
            table[key] = base
    return PartialNMetricSpace(space.points, space.n, table)


def duplicate_point(space: PartialNMetricSpace, x: str, new: str) -> PartialNMetricSpace:
    """Add ``new`` as an exact copy of ``x``.

    The result is the pullback of ``space`` along the map sending ``new`` to
    ``x``, so every inequality axiom still holds but separation fails for
    the pair (x, new).
    """
    pts = list(space.points) + [new]
    src = {p: p for p in space.points}
    src[new] = x
    base = PartialNMetricSpace(pts, space.n, {k: 0.0 for k in _keys(len(pts), space.n)})
    table = {
        key: space.value([src[pts[i]] for i in key]) for key in base.multisets()
    }
    return PartialNMetricSpace(pts, space.n, table)
