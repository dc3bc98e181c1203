"""Cauchy, limit and special-limit analysis on finite sequence prefixes.

A finite prefix cannot certify a true limit, so every verdict here is about
the tail window of the prefix, with the window and tolerance recorded.  When
the tail is the full cycle of an eventually periodic sequence (every orbit
on a finite space is one) the verdicts are exact: the limits over
``m -> oo`` range over exactly the cycle points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Sequence

import numpy as np

from .errors import (
    NotCauchyOnPrefix,
    PreconditionNotMet,
    UnknownPoint,
    UniquenessViolation,
    WindowTooLarge,
)
from .spaces import DEFAULT_TOL, PartialNMetricSpace


@dataclass(frozen=True)
class SequencePrefix:
    """The first ``len(items)`` terms of a sequence in ``space``."""

    space: PartialNMetricSpace
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise ValueError("a sequence prefix needs at least one term")
        for x in self.items:
            if x not in self.space:
                raise UnknownPoint(f"unknown point {x!r}")

    def __len__(self) -> int:
        return len(self.items)

    def default_window(self) -> int:
        return min(len(self.items), max(4, len(self.items) // 4))

    def tail(self, window: int | None = None) -> tuple:
        w = self._window(window)
        return self.items[len(self.items) - w :]

    def _window(self, window):
        if window is None:
            return self.default_window()
        if window < 1:
            raise ValueError(f"window must be positive, got {window}")
        if window > len(self.items):
            raise WindowTooLarge(
                f"window {window} exceeds prefix length {len(self.items)}"
            )
        return window


@dataclass
class CauchyVerdict:
    holds_on_prefix: bool
    r_estimate: float
    window: int
    residual: float
    tolerance: float = DEFAULT_TOL

    def to_dict(self) -> dict:
        return {
            "holds_on_prefix": self.holds_on_prefix,
            "r_estimate": self.r_estimate,
            "window": self.window,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }


def _verdict(values, window, tol) -> CauchyVerdict:
    values = np.asarray(values, dtype=float)
    r = float(values.mean())
    residual = float(np.abs(values - r).max())
    return CauchyVerdict(residual <= tol, r, window, residual, tol)


def pairwise_values(space: PartialNMetricSpace, tail: Sequence[str]) -> list:
    """``G(<x_i>^(n-1), x_j)`` for every ordered index pair of the tail."""
    return [space.mixed(x, y) for x in tail for y in tail]


def estimate_cauchy(
    prefix: SequencePrefix, window: int | None = None, tol: float = DEFAULT_TOL
) -> CauchyVerdict:
    """Pairwise Cauchy test on the tail window.

    The estimate of the Cauchy value is the mean of all pairwise values in
    the window; the verdict holds when none of them strays more than ``tol``.
    """
    w = prefix._window(window)
    return _verdict(pairwise_values(prefix.space, prefix.tail(w)), w, tol)


def estimate_cauchy_full(
    prefix: SequencePrefix, window: int | None = None, tol: float = DEFAULT_TOL
) -> CauchyVerdict:
    """Same test over all n-fold multisets of tail indices instead of pairs."""
    w = prefix._window(window)
    tail = prefix.tail(w)
    space = prefix.space
    values = [
        space.value([tail[i] for i in idx])
        for idx in combinations_with_replacement(range(w), space.n)
    ]
    return _verdict(values, w, tol)


def limit_deviations(space: PartialNMetricSpace, tail: Sequence[str], a: str) -> list:
    sa = space.self_distance(a)
    return [space.mixed(a, x) - sa for x in tail]


def check_limit(
    prefix: SequencePrefix, a: str, tol: float = DEFAULT_TOL, window: int | None = None
) -> bool:
    """Whether ``G(<a>^(n-1), x_m)`` sits within ``tol`` of ``G(<a>^n)`` on the tail."""
    if a not in prefix.space:
        raise UnknownPoint(f"unknown point {a!r}")
    devs = limit_deviations(prefix.space, prefix.tail(window), a)
    return max(abs(d) for d in devs) <= tol


def check_limit_by_balls(
    prefix: SequencePrefix, a: str, tol: float = DEFAULT_TOL, window: int | None = None
) -> bool:
    """Topological phrasing: the tail lies in every ball ``B_eps(a)`` with eps > tol.

    Radii are taken from the gap values themselves plus the smallest float
    above ``tol``; between consecutive gaps ball membership cannot change.
    """
    from .topology import open_ball

    space = prefix.space
    tail = prefix.tail(window)
    radii = {space.gap(a, y) for y in space.points}
    radii = [r for r in radii if r > tol] + [float(np.nextafter(tol, np.inf))]
    return all(set(tail) <= open_ball(space, a, eps).members for eps in radii)


def _reverse_deviations(space, tail, a):
    return [space.mixed(x, a) - space.self_distance(x) for x in tail]


def check_special_limit(
    prefix: SequencePrefix, a: str, tol: float = DEFAULT_TOL, window: int | None = None
) -> bool:
    """Special limit test via its two-condition characterisation.

    ``a`` must be a limit, and ``G(<x_m>^(n-1), a) - G(<x_m>^n)`` must vanish
    on the tail.  Raises :class:`NotCauchyOnPrefix` when the tail is not
    Cauchy in the first place.
    """
    verdict = estimate_cauchy(prefix, window, tol)
    if not verdict.holds_on_prefix:
        raise NotCauchyOnPrefix(verdict)
    if not check_limit(prefix, a, tol, window):
        return False
    devs = _reverse_deviations(prefix.space, prefix.tail(window), a)
    return max(abs(d) for d in devs) <= tol


def is_special_limit_by_definition(
    prefix: SequencePrefix, a: str, tol: float = DEFAULT_TOL, window: int | None = None
) -> bool:
    """Direct reading: Cauchy value, limit value and self-distance all coincide."""
    verdict = estimate_cauchy_full(prefix, window, tol)
    if not verdict.holds_on_prefix:
        return False
    sa = prefix.space.self_distance(a)
    return check_limit(prefix, a, tol, window) and abs(verdict.r_estimate - sa) <= tol


def special_limit_search(
    prefix: SequencePrefix, tol: float = DEFAULT_TOL, window: int | None = None
):
    """The unique special limit among all points, or ``None``.

    Raises :class:`UniquenessViolation` rather than choosing when more than
    one point passes.
    """
    verdict = estimate_cauchy(prefix, window, tol)
    if not verdict.holds_on_prefix:
        raise NotCauchyOnPrefix(verdict)
    found = [a for a in prefix.space.points if check_special_limit(prefix, a, tol, window)]
    if len(found) > 1:
        raise UniquenessViolation(found)
    return found[0] if found else None


# --- basic inequalities ---------------------------------------------------


@dataclass
class InequalityReport:
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def _record(self, part, instance, lhs, rhs, tol):
        self.counts[part] = self.counts.get(part, 0) + 1
        if lhs > rhs + tol:
            self.failures.append(
                {"part": part, "instance": instance, "lhs": lhs, "rhs": rhs}
            )


def _part_a(space, xs, ys, zs):
    lhs = space.value(tuple(xs) + tuple(zs))
    rhs = space.value(tuple(ys) + tuple(zs)) + sum(
        space.mixed(y, x) - space.self_distance(y) for x, y in zip(xs, ys)
    )
    return lhs, rhs


def _part_c(space, x, y):
    n = space.n
    return space.mixed(x, y), (n - 1) * space.mixed(y, x) - (n - 2) * space.self_distance(y)


def _part_d(space, xs, y):
    n = space.n
    lhs = space.value(xs)
    rhs = sum(space.mixed(y, x) for x in xs) - (n - 1) * space.self_distance(y)
    return lhs, rhs


def verify_basic_inequalities(
    space: PartialNMetricSpace,
    exhaustive: bool = True,
    samples: int = 2000,
    seed: int = 42,
    tol: float = DEFAULT_TOL,
) -> InequalityReport:
    """Instantiate the four basic inequalities that follow from the triangle axiom.

    (a) swapping ``k`` arguments ``x_j`` for ``y_j`` costs at most the sum of
        the gaps ``gap(y_j, x_j)``;
    (b) the same with all ``n`` arguments swapped;
    (c) ``G(<x>^(n-1), y) <= (n-1) G(<y>^(n-1), x) - (n-2) G(<y>^n)``;
    (d) ``G(x_1..x_n) <= sum_j G(<y>^(n-1), x_j) - (n-1) G(<y>^n)``.

    Exhaustive mode walks every instantiation up to symmetry; otherwise
    ``samples`` random instantiations are drawn per part.
    """
    report = InequalityReport()
    pts = space.points
    n = space.n
    if exhaustive:
        pairs = list(product(pts, pts))
        for k in range(1, n + 1):
            part = "b" if k == n else "a"
            for chosen in combinations_with_replacement(pairs, k):
                xs = [x for x, _ in chosen]
                ys = [y for _, y in chosen]
                for zs in combinations_with_replacement(pts, n - k):
                    lhs, rhs = _part_a(space, xs, ys, zs)
                    report._record(part, (xs, ys, list(zs)), lhs, rhs, tol)
        for x, y in product(pts, pts):
            lhs, rhs = _part_c(space, x, y)
            report._record("c", (x, y), lhs, rhs, tol)
        for xs in combinations_with_replacement(pts, n):
            for y in pts:
                lhs, rhs = _part_d(space, xs, y)
                report._record("d", (list(xs), y), lhs, rhs, tol)
        return report

    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(1, n)
        xs = [rng.choice(pts) for _ in range(k)]
        ys = [rng.choice(pts) for _ in range(k)]
        zs = [rng.choice(pts) for _ in range(n - k)]
        lhs, rhs = _part_a(space, xs, ys, zs)
        report._record("b" if k == n else "a", (xs, ys, zs), lhs, rhs, tol)
        x, y = rng.choice(pts), rng.choice(pts)
        lhs, rhs = _part_c(space, x, y)
        report._record("c", (x, y), lhs, rhs, tol)
        xs = [rng.choice(pts) for _ in range(n)]
        lhs, rhs = _part_d(space, xs, y)
        report._record("d", (xs, y), lhs, rhs, tol)
    return report


# --- limit lemma oracles ------------------------------------------------------


@dataclass
class LemmaCheck:
    lemma: str  # "limit" (inequalities) or "special" (equalities)
    part: str
    k: int | None
    value: float | None
    target: float
    status: str  # "pass", "fail" or "unstable"

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _tail_limit(space, tail, k, rest, tol):
    """Common value of ``G(x_m1, ..., x_mk, rest)`` over the tail, or None if it wobbles."""
    values = [
        space.value(tuple(tail[i] for i in idx) + tuple(rest))
        for idx in combinations_with_replacement(range(len(tail)), k)
    ]
    values = np.asarray(values)
    mean = float(values.mean())
    if float(np.abs(values - mean).max()) > tol:
        return None
    return mean


def verify_limit_lemmas(
    prefix: SequencePrefix,
    a: str,
    b: Sequence[str] | None = None,
    tol: float = DEFAULT_TOL,
    window: int | None = None,
    lemmas: Sequence[str] = ("limit", "special"),
) -> list:
    """Evaluate the limit-property oracles for ``a`` on the tail window.

    For a limit ``a`` every tail limit is bounded by the matching value with
    ``a`` substituted; for a special limit those bounds become equalities.
    ``b`` supplies the ``n - 1`` fixed parameter points (defaults to ``a``
    repeated).  A limit that does not settle on the window is reported as
    ``"unstable"`` rather than as a failure.
    """
    space = prefix.space
    n = space.n
    b = tuple(b) if b is not None else (a,) * (n - 1)
    if len(b) != n - 1:
        raise ValueError(f"need {n - 1} parameter points, got {len(b)}")
    tail = prefix.tail(window)
    sa = space.self_distance(a)

    if "limit" in lemmas and not check_limit(prefix, a, tol, window):
        raise PreconditionNotMet(f"{a!r} is not a limit of the sequence on its tail")
    if "special" in lemmas:
        try:
            special = check_special_limit(prefix, a, tol, window)
        except NotCauchyOnPrefix:
            special = False
        if not special:
            raise PreconditionNotMet(f"{a!r} is not a special limit on the tail")

    targets = []  # (part, k, tail multiplicity, fixed rest, target)
    for k in range(1, n + 1):
        targets.append(("a", k, k, b[: n - k], space.value((a,) * k + b[: n - k])))
    targets.append(("b", n, n, (), sa))
    for k in range(1, n + 1):
        targets.append(("c", k, k, (a,) * (n - k), sa))

    out = []
    for lemma in lemmas:
        equality = lemma == "special"
        for part, k, mult, rest, target in targets:
            part_name = {"a": "b", "b": "c", "c": "d"}[part] if equality else part
            value = _tail_limit(space, tail, mult, rest, tol)
            out.append(_judge(lemma, part_name, k, value, target, equality, tol))
        # one-index limit G(<x_m>^(n-1), a)
        vals = [space.mixed(x, a) for x in tail]
        value = float(np.mean(vals)) if max(vals) - min(vals) <= 2 * tol else None
        out.append(_judge(lemma, "a" if equality else "d", None, value, sa, equality, tol))
    return out


def _judge(lemma, part, k, value, target, equality, tol):
    if value is None:
        # special limits force every one of these limits to exist
        status = "fail" if equality else "unstable"
    elif equality:
        status = "pass" if abs(value - target) <= tol else "fail"
    else:
        status = "pass" if value <= target + tol else "fail"
    return LemmaCheck(lemma, part, k, value, target, status)
