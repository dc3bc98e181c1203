"""Open balls and separation properties of the ball topology on a finite space.

Ball membership is exact: ``y in B_eps(x)`` iff ``gap(x, y) < eps`` on the
stored values, with no tolerance.  Adding slack here would change which sets
are open.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NotAnNMetric
from .spaces import DEFAULT_TOL, MetricSpace, PartialNMetricSpace, associated_metric


@dataclass(frozen=True)
class Ball:
    center: str
    radius: float
    members: frozenset

    def __contains__(self, y) -> bool:
        return y in self.members

    def __le__(self, other: "Ball") -> bool:
        return self.members <= other.members

    def to_dict(self) -> dict:
        return {
            "center": self.center,
            "radius": self.radius,
            "members": sorted(self.members),
        }


def open_ball(space: PartialNMetricSpace, x: str, eps: float) -> Ball:
    sx = space.self_distance(x)
    if eps <= 0:
        return Ball(x, eps, frozenset())
    members = frozenset(y for y in space.points if space.mixed(x, y) - sx < eps)
    return Ball(x, eps, members)


def metric_ball(metric: MetricSpace, x: str, eps: float) -> Ball:
    members = frozenset(y for y in metric.points if metric.distance(x, y) < eps)
    return Ball(x, eps, members)


def radius_grid(values) -> list:
    """Positive thresholds, the midpoints between them, and one radius on each side.

    Balls on a finite space only change when the radius crosses one of the
    given threshold values, so this grid realises every distinct ball.
    """
    ts = sorted({float(v) for v in values if v > 0})
    if not ts:
        return [1.0]
    grid = [ts[0] / 2]
    for a, b in zip(ts, ts[1:]):
        grid += [a, (a + b) / 2]
    grid += [ts[-1], ts[-1] + 1.0]
    return grid


# --- basis check ---------------------------------------------------------


@dataclass
class BasisCheck:
    passed: bool
    trials: int
    counterexample: dict | None = None


def shrink_radius(space: PartialNMetricSpace, x: str, eps: float, y: str) -> float:
    """Radius of a ball around ``y`` that fits inside ``B_eps(x)``."""
    return eps - space.mixed(x, y) + space.self_distance(x)


def basis_check(
    space: PartialNMetricSpace, trials: int = 1000, seed: int = 42
) -> BasisCheck:
    """Randomised check that every point of a ball has a smaller ball inside it.

    Picks ``x``, a radius (half from the exhaustive grid, half uniform) and
    ``y`` in the ball, then tests ``y in B_delta(y) <= B_eps(x)``.
    """
    rng = random.Random(seed)
    pts = space.points
    gaps = [space.gap(x, y) for x in pts for y in pts]
    grid = radius_grid(gaps)
    top = max(grid)
    for t in range(trials):
        x = rng.choice(pts)
        eps = rng.choice(grid) if t % 2 == 0 else rng.uniform(0.0, top) or top
        outer = open_ball(space, x, eps)
        if not outer.members:
            return BasisCheck(False, t + 1, {"x": x, "eps": eps, "reason": "empty ball"})
        y = rng.choice(sorted(outer.members))
        delta = shrink_radius(space, x, eps, y)
        inner = open_ball(space, y, delta)
        if not (delta > 0 and y in inner and inner <= outer):
            return BasisCheck(
                False,
                t + 1,
                {
                    "x": x,
                    "eps": eps,
                    "y": y,
                    "delta": delta,
                    "outer": sorted(outer.members),
                    "inner": sorted(inner.members),
                },
            )
    return BasisCheck(True, trials)


# --- separation ----------------------------------------------------------


@dataclass
class SeparationClass:
    is_T0: bool
    is_T1: bool
    radii: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "is_T0": self.is_T0,
            "is_T1": self.is_T1,
            "radii": {f"{x},{y}": v for (x, y), v in self.radii.items()},
            "witnesses": {k: [list(p) for p in v] for k, v in self.witnesses.items()},
        }


def separation_class(space: PartialNMetricSpace) -> SeparationClass:
    """T0 / T1 verdicts from the separating radii ``gap(x, y)`` and ``gap(y, x)``.

    A positive ``gap(x, y)`` gives a ball around x that misses y.  T0 needs
    one of the two radii positive for every distinct pair, T1 needs both.
    """
    radii = {}
    not_t0, not_t1 = [], []
    pts = space.points
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            ex, ey = space.gap(x, y), space.gap(y, x)
            radii[(x, y)], radii[(y, x)] = ex, ey
            if not (ex > 0 or ey > 0):
                not_t0.append((x, y))
            if not (ex > 0 and ey > 0):
                not_t1.append((x, y))
    return SeparationClass(
        not not_t0, not not_t1, radii, {"not_T0": not_t0, "not_T1": not_t1}
    )


def specialization_order(space: PartialNMetricSpace) -> list:
    """Pairs ``(x, y)``, x != y, with x in the closure of {y}.

    Every ball around x contains y exactly when ``gap(x, y) <= 0``.
    """
    return [
        (x, y)
        for x in space.points
        for y in space.points
        if x != y and space.gap(x, y) <= 0
    ]


def specialization_dot(space: PartialNMetricSpace) -> str:
    lines = ["digraph specialization {"]
    for x in space.points:
        lines.append(f'  "{x}";')
    for x, y in specialization_order(space):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- comparison with the metric topology ---------------------------------


@dataclass
class TopologyComparison:
    passed: bool
    checked: int
    counterexample: dict | None = None


def compare_topologies(
    space: PartialNMetricSpace, tol: float = DEFAULT_TOL
) -> TopologyComparison:
    """Check ``B^G_(eps/n)(x) <= B^d_eps(x) <= B^G_eps(x)`` for every x and radius.

    Only defined for n-metric spaces.  The radius grid is built from every
    value at which one of the three balls can change (G gaps, their n-fold
    multiples, and metric distances), so it is exhaustive.
    """
    from .axioms import validate

    report = validate(space, "n_metric", tol=tol)
    if not report.passed:
        raise NotAnNMetric("space does not pass the n-metric profile", report)
    n = space.n
    d = associated_metric(space, check=False)
    checked = 0
    for x in space.points:
        thresholds = []
        for y in space.points:
            g = space.gap(x, y)
            thresholds += [g, n * g, d.distance(x, y)]
        for eps in radius_grid(thresholds):
            small = open_ball(space, x, eps / n)
            mid = metric_ball(d, x, eps)
            big = open_ball(space, x, eps)
            checked += 1
            if not (small <= mid <= big):
                return TopologyComparison(
                    False,
                    checked,
                    {
                        "x": x,
                        "eps": eps,
                        "G_ball_eps_over_n": sorted(small.members),
                        "metric_ball": sorted(mid.members),
                        "G_ball": sorted(big.members),
                    },
                )
    return TopologyComparison(True, checked)
