"""Exhaustive axiom checks for finite partial n-metric spaces.

Every ``check_*`` function returns a list of :class:`Violation` records,
empty when the axiom holds.  Inequalities ``a <= b`` are tested as
``a <= b + tol``; equalities as ``|a - b| <= tol``; the strict inequality of
the strong variant needs a margin larger than ``tol``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Sequence

from .errors import EvaluatorFailure
from .spaces import (
    DEFAULT_TOL,
    MetricSpace,
    PartialMetricSpace,
    PartialNMetricSpace,
)

AXIOM_TAGS = ("sep", "sep'", "ssd", "sssd", "sym", "ptri", "lower_bound", "zero_self")

PROFILES = {
    "partial_n_metric": ("sep", "ssd", "ptri"),
    "strong": ("sssd", "ptri"),
    "n_metric": ("sep", "ssd", "ptri", "zero_self"),
}

DEFAULT_CAP = 100
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 42


@dataclass(frozen=True)
class Violation:
    """One failed inequality instance.

    ``lhs`` and ``rhs`` are the two compared values, read straight from the
    table at ``witness`` so a re-evaluation reproduces them exactly.
    """

    axiom: str
    witness: tuple
    lhs: float
    rhs: float
    detail: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        out = {
            "axiom": self.axiom,
            "witness": _jsonable(self.witness),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass
class ValidationReport:
    profile: str
    violations: list
    counts: dict
    tolerance: float
    truncated: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {
            "profile": self.profile,
            "verdict": self.verdict,
            "violations": [v.to_dict() for v in self.violations],
            "counts": dict(self.counts),
            "tolerance": self.tolerance,
        }
        if self.truncated:
            out["truncated"] = self.truncated
        return out


# --- closed-form enumeration sizes -------------------------------------


def expected_counts(space: PartialNMetricSpace) -> dict:
    """Number of instances each checker visits, computed independently of them."""
    p, n = len(space), space.n
    ptri = 0
    for key in space.multisets():
        ptri += len(set(key)) * p
    return {
        "sep": p * (p - 1) // 2,
        "sep'": p * (p - 1) // 2,
        "ssd": p * p,
        "sssd": p * (p - 1),
        "ptri": ptri,
        "lower_bound": p,
        "zero_self": p,
    }


# --- individual axioms -------------------------------------------------


def check_ssd(space: PartialNMetricSpace, tol: float = DEFAULT_TOL, counts=None):
    """Small self-distances: ``G(<x>^n) <= G(<x>^(n-1), y)`` for all x, y."""
    out = []
    for x in space.points:
        sx = space.self_distance(x)
        for y in space.points:
            m = space.mixed(x, y)
            if sx > m + tol:
                out.append(Violation("ssd", (x, y), sx, m))
    _count(counts, "ssd", len(space) ** 2)
    return out


def check_sep(space: PartialNMetricSpace, tol: float = DEFAULT_TOL, counts=None):
    """Separation, backward direction: distinct points must be told apart.

    The forward direction is a tautology for tabulated spaces (both sides
    are the same table cell) so only ``x != y`` can fail.  Each offending
    unordered pair is reported once.
    """
    out = []
    pts = space.points
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if j <= i:
                continue
            mxy, sx = space.mixed(x, y), space.self_distance(x)
            myx, sy = space.mixed(y, x), space.self_distance(y)
            if abs(mxy - sx) <= tol and abs(myx - sy) <= tol:
                out.append(
                    Violation(
                        "sep", (x, y), mxy, sx, {"mixed_yx": myx, "self_y": sy}
                    )
                )
    _count(counts, "sep", len(pts) * (len(pts) - 1) // 2)
    return out


def sep_chain(space: PartialNMetricSpace, x: str, y: str) -> list:
    """``G(<x>^(n-k), <y>^k)`` for k = 0..n."""
    return [space.mixed(x, y, k) for k in range(space.n + 1)]


def check_sep_prime(space: PartialNMetricSpace, tol: float = DEFAULT_TOL, counts=None):
    """Generalised separation: the whole mixed chain between x and y is not constant."""
    out = []
    pts = space.points
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            chain = sep_chain(space, x, y)
            if max(chain) - min(chain) <= tol:
                out.append(
                    Violation("sep'", (x, y), min(chain), max(chain), {"chain": chain})
                )
    _count(counts, "sep'", len(pts) * (len(pts) - 1) // 2)
    return out


def check_sssd(space: PartialNMetricSpace, tol: float = DEFAULT_TOL, counts=None):
    """Strictly small self-distances for distinct points (margin above ``tol``)."""
    out = []
    for x in space.points:
        sx = space.self_distance(x)
        for y in space.points:
            if x == y:
                continue
            m = space.mixed(x, y)
            if not m - sx > tol:
                out.append(Violation("sssd", (x, y), sx, m))
    _count(counts, "sssd", len(space) * (len(space) - 1))
    return out


def check_ptri(space: PartialNMetricSpace, tol: float = DEFAULT_TOL, counts=None):
    """The n-ary triangle inequality.

    For a multiset ``M`` with a distinguished element ``v`` (the rest is the
    prefix) and any point ``y``::

        G(M) <= G(prefix, y) + G(<y>^(n-1), v) - G(<y>^n)

    By symmetry only distinct (M, v, y) triples need checking.
    """
    out = []
    table = space.table
    p, n = len(space), space.n
    self_d = [table[(i,) * n] for i in range(p)]
    mixed = [
        [table[tuple(sorted((i,) * (n - 1) + (j,)))] for j in range(p)]
        for i in range(p)
    ]
    checked = 0
    for key in space.multisets():
        lhs = table[key]
        for pos, v in enumerate(key):
            if pos and key[pos - 1] == v:
                continue
            prefix = key[:pos] + key[pos + 1 :]
            for y in range(p):
                checked += 1
                rhs = table[tuple(sorted(prefix + (y,)))] + mixed[y][v] - self_d[y]
                if lhs > rhs + tol:
                    out.append(
                        Violation(
                            "ptri",
                            (space.names(key), space.points[v], space.points[y]),
                            lhs,
                            rhs,
                        )
                    )
    _count(counts, "ptri", checked)
    return out


def check_lower_bound(
    space: PartialNMetricSpace, r: float, tol: float = DEFAULT_TOL, counts=None
):
    """Self-distances bounded below by ``r``; ``r = -inf`` means unbounded and always passes."""
    _count(counts, "lower_bound", len(space))
    if r == -math.inf:
        return []
    out = []
    for x in space.points:
        s = space.self_distance(x)
        if s < r - tol:
            out.append(Violation("lower_bound", (x,), r, s))
    return out


def check_zero_self(space: PartialNMetricSpace, tol: float = DEFAULT_TOL, counts=None):
    out = []
    for x in space.points:
        s = space.self_distance(x)
        if abs(s) > tol:
            out.append(Violation("zero_self", (x,), s, 0.0))
    _count(counts, "zero_self", len(space))
    return out


def check_symmetry_sampled(
    evaluator: Callable[[tuple], float],
    points: Sequence,
    n: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
):
    """Spot-check permutation invariance of a black-box n-ary function.

    ``evaluator`` is called with a tuple of ``n`` points.  Tabulated spaces
    never need this; it is meant for closures and formula-defined spaces.
    """
    rng = random.Random(seed)
    points = list(points)
    out = []
    for _ in range(samples):
        tup = tuple(rng.choice(points) for _ in range(n))
        perm = list(tup)
        rng.shuffle(perm)
        perm = tuple(perm)
        try:
            a, b = float(evaluator(tup)), float(evaluator(perm))
        except Exception as exc:
            raise EvaluatorFailure(f"evaluator failed on {tup}: {exc}") from exc
        if abs(a - b) > tol:
            out.append(Violation("sym", (tup, perm), a, b))
    return out


def check_n_metric_positivity(space: PartialNMetricSpace, tol: float = DEFAULT_TOL):
    """In an n-metric every mixed value between distinct points is positive."""
    out = []
    for x in space.points:
        for y in space.points:
            if x != y and not space.mixed(x, y) > tol:
                out.append(Violation("positivity", (x, y), space.mixed(x, y), 0.0))
    return out


def _count(counts, axiom, k):
    if counts is not None:
        counts[axiom] = counts.get(axiom, 0) + k


_CHECKERS = {
    "sep": check_sep,
    "ssd": check_ssd,
    "sssd": check_sssd,
    "ptri": check_ptri,
    "zero_self": check_zero_self,
}


def validate(
    space: PartialNMetricSpace,
    profile: str = "partial_n_metric",
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CAP,
) -> ValidationReport:
    """Run every axiom of ``profile`` and collect the violations.

    Profiles: ``partial_n_metric`` (sep, ssd, ptri), ``strong`` (sssd, ptri)
    and ``n_metric`` (partial profile plus zero self-distances).  At most
    ``cap`` violations are kept; the number dropped is in ``truncated``.
    The verdict is cached in ``space.flags[profile]``.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    counts: dict = {}
    violations = []
    for axiom in PROFILES[profile]:
        violations.extend(_CHECKERS[axiom](space, tol=tol, counts=counts))
    truncated = max(0, len(violations) - cap)
    report = ValidationReport(profile, violations[:cap], counts, tol, truncated)
    space.flags[profile] = report.passed
    if report.passed and profile == "strong":
        space.flags["partial_n_metric"] = True
    return report


def is_valid(space: PartialNMetricSpace, profile: str = "partial_n_metric", tol=DEFAULT_TOL) -> bool:
    """Cached verdict for ``profile``, computing it on first use."""
    if profile not in space.flags:
        validate(space, profile, tol=tol)
    return space.flags[profile]


# --- two-argument structures ---------------------------------------------


def check_partial_metric(pspace: PartialMetricSpace, tol: float = DEFAULT_TOL):
    """Partial metric axioms, negative values allowed.

    small self-distance ``p(x,x) <= p(x,y)``, separation, and the triangle
    ``p(x,y) <= p(x,z) + p(z,y) - p(z,z)``.  Symmetry is structural.
    """
    out = []
    pts = pspace.points
    k = len(pts)
    m = [[pspace.table[(min(i, j), max(i, j))] for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(k):
            if m[i][i] > m[i][j] + tol:
                out.append(Violation("ssd", (pts[i], pts[j]), m[i][i], m[i][j]))
    for i in range(k):
        for j in range(i + 1, k):
            vals = (m[i][i], m[i][j], m[j][j])
            if max(vals) - min(vals) <= tol:
                out.append(Violation("sep", (pts[i], pts[j]), vals[1], vals[0]))
    for i in range(k):
        for j in range(k):
            lhs = m[i][j]
            for z in range(k):
                rhs = m[i][z] + m[z][j] - m[z][z]
                if lhs > rhs + tol:
                    out.append(Violation("ptri", (pts[i], pts[j], pts[z]), lhs, rhs))
    return out


def check_metric(mspace: MetricSpace, tol: float = DEFAULT_TOL):
    """The four metric axioms: zero diagonal, positivity off it, symmetry, triangle."""
    out = []
    pts = mspace.points
    d = mspace.distance
    for x in pts:
        if abs(d(x, x)) > tol:
            out.append(Violation("zero_self", (x,), d(x, x), 0.0))
    for x in pts:
        for y in pts:
            if x != y and not d(x, y) > tol:
                out.append(Violation("positivity", (x, y), d(x, y), 0.0))
            if abs(d(x, y) - d(y, x)) > tol:
                out.append(Violation("sym", (x, y), d(x, y), d(y, x)))
            for z in pts:
                if d(x, y) > d(x, z) + d(z, y) + tol:
                    out.append(
                        Violation("triangle", (x, y, z), d(x, y), d(x, z) + d(z, y))
                    )
    return out


def verify_symmetric_tuples(space: PartialNMetricSpace, tup: Sequence[str]) -> bool:
    """Evaluate all orderings of ``tup``; True when they agree exactly."""
    values = {space.value(p) for p in permutations(tup)}
    return len(values) == 1
