"""Finite partial n-metric spaces and the constructions built on them.

A space stores one real value per size-``n`` multiset of points.  Multisets
are keyed by the ascending tuple of point indices, so evaluation is
permutation invariant by construction and never needs to be checked.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ArityError,
    DuplicateEntry,
    InvalidSpace,
    MissingEntry,
    PartialMetricAxiomViolation,
    UnknownPoint,
)

DEFAULT_TOL = 1e-9
MAX_TABLE_DEFAULT = 10**6

Key = tuple  # ascending tuple of point indices


def table_size(num_points: int, n: int) -> int:
    """Number of size-``n`` multisets over ``num_points`` points."""
    return comb(num_points + n - 1, n)


def max_table_entries() -> int:
    raw = os.environ.get("PNMETRIC_MAX_TABLE")
    return int(raw) if raw else MAX_TABLE_DEFAULT


def _index_map(points: Sequence[str]) -> dict[str, int]:
    index = {}
    for i, p in enumerate(points):
        if p in index:
            raise ValueError(f"duplicate point identifier {p!r}")
        index[p] = i
    return index


@dataclass(frozen=True, eq=False)
class PartialNMetricSpace:
    """A finite set of points with an n-ary real valued table.

    Use :func:`build_space` to construct one from user data; the constructor
    expects an already canonical, total table.
    """

    points: tuple
    n: int
    table: Mapping[Key, float]
    flags: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.n < 2:
            raise ArityError(f"arity must be at least 2, got {self.n}")
        if not self.points:
            raise ValueError("a space needs at least one point")
        object.__setattr__(self, "_index", _index_map(self.points))
        expected = table_size(len(self.points), self.n)
        if len(self.table) != expected:
            for key in self.multisets():
                if key not in self.table:
                    raise MissingEntry(self.names(key))
            raise ValueError("table has keys that are not canonical multisets")

    # --- indexing -------------------------------------------------------

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"unknown point {x!r}") from None

    def key(self, tup: Sequence[str]) -> Key:
        """Canonical multiset key of a point tuple."""
        if len(tup) != self.n:
            raise ArityError(f"expected {self.n} points, got {len(tup)}")
        return tuple(sorted(self.index(x) for x in tup))

    def names(self, key: Iterable[int]) -> tuple:
        return tuple(self.points[i] for i in key)

    def multisets(self) -> Iterator[Key]:
        """All canonical keys in enumeration (lexicographic) order."""
        return combinations_with_replacement(range(len(self.points)), self.n)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x) -> bool:
        return x in self._index

    # --- evaluation -----------------------------------------------------

    def value(self, tup: Sequence[str]) -> float:
        return self.table[self.key(tup)]

    def __call__(self, *tup: str) -> float:
        return self.value(tup)

    def self_distance(self, x: str) -> float:
        i = self.index(x)
        return self.table[(i,) * self.n]

    def mixed(self, x: str, y: str, k: int = 1) -> float:
        """``G(<x>^(n-k), <y>^k)``; the default ``k=1`` is the workhorse value."""
        if not 0 <= k <= self.n:
            raise ArityError(f"k must lie in [0, {self.n}], got {k}")
        i, j = self.index(x), self.index(y)
        key = tuple(sorted((i,) * (self.n - k) + (j,) * k))
        return self.table[key]

    def gap(self, x: str, y: str) -> float:
        """``G(<x>^(n-1), y) - G(<x>^n)``, the ball radius needed to reach y from x."""
        return self.mixed(x, y) - self.self_distance(x)

    def entries(self) -> list:
        """(point multiset, value) pairs in canonical order."""
        return [(self.names(k), self.table[k]) for k in self.multisets()]

    def replace(self, updates: Mapping[Sequence[str], float]) -> "PartialNMetricSpace":
        """Copy of the space with some table values overwritten."""
        table = dict(self.table)
        for tup, v in updates.items():
            table[self.key(tup)] = float(v)
        return PartialNMetricSpace(self.points, self.n, table)

    def __eq__(self, other):
        if not isinstance(other, PartialNMetricSpace):
            return NotImplemented
        return (
            self.points == other.points
            and self.n == other.n
            and dict(self.table) == dict(other.table)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PartialMetricSpace:
    """Two-argument partial metric: one value per unordered pair, self-pairs included."""

    points: tuple
    table: Mapping[tuple, float]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "_index", _index_map(self.points))
        for key in combinations_with_replacement(range(len(self.points)), 2):
            if key not in self.table:
                raise MissingEntry(tuple(self.points[i] for i in key))

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"unknown point {x!r}") from None

    def __call__(self, x: str, y: str) -> float:
        i, j = sorted((self.index(x), self.index(y)))
        return self.table[(i, j)]

    @classmethod
    def from_matrix(cls, points: Sequence[str], matrix) -> "PartialMetricSpace":
        """Build from a square matrix; only the upper triangle is read."""
        m = len(points)
        table = {(i, j): float(matrix[i][j]) for i in range(m) for j in range(i, m)}
        return cls(tuple(points), table)

    @classmethod
    def from_entries(cls, points, entries) -> "PartialMetricSpace":
        index = _index_map(points)
        table = {}
        for pair, v in entries:
            if len(pair) != 2:
                raise ArityError(f"partial metric entries need 2 points, got {pair}")
            try:
                key = tuple(sorted(index[p] for p in pair))
            except KeyError as exc:
                raise UnknownPoint(f"unknown point {exc.args[0]!r}") from None
            if key in table:
                raise DuplicateEntry(tuple(points[i] for i in key))
            table[key] = float(v)
        return cls(tuple(points), table)

    def is_strong(self, tol: float = DEFAULT_TOL) -> bool:
        return all(
            self(x, x) + tol < self(x, y)
            for x in self.points
            for y in self.points
            if x != y
        )


@dataclass(frozen=True, eq=False)
class MetricSpace:
    points: tuple
    table: Mapping[tuple, float]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "_index", _index_map(self.points))

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"unknown point {x!r}") from None

    def distance(self, x: str, y: str) -> float:
        return self.table[(self.index(x), self.index(y))]

    __call__ = distance

    def matrix(self):
        import numpy as np

        m = len(self.points)
        return np.array([[self.table[(i, j)] for j in range(m)] for i in range(m)])


# --- operations ---------------------------------------------------------


def build_space(points: Sequence[str], n: int, entries) -> PartialNMetricSpace:
    """Assemble a space from ``(multiset, value)`` entries.

    Only structure is validated here (arity, known points, no duplicates,
    totality); the metric axioms are a separate step, see
    :func:`pnmetric.axioms.validate`.
    """
    if n < 2:
        raise ArityError(f"arity must be at least 2, got {n}")
    index = _index_map(points)
    table = {}
    for multiset, value in entries:
        multiset = tuple(multiset)
        if len(multiset) != n:
            raise ArityError(
                f"multiset {list(multiset)} has {len(multiset)} points, expected {n}"
            )
        try:
            key = tuple(sorted(index[p] for p in multiset))
        except KeyError as exc:
            raise UnknownPoint(f"unknown point {exc.args[0]!r}") from None
        if key in table:
            raise DuplicateEntry(tuple(points[i] for i in key))
        table[key] = float(value)
    for key in combinations_with_replacement(range(len(points)), n):
        if key not in table:
            raise MissingEntry(tuple(points[i] for i in key))
    return PartialNMetricSpace(tuple(points), n, table)


def evaluate(space: PartialNMetricSpace, tup: Sequence[str]) -> float:
    return space.value(tup)


def self_distance(space: PartialNMetricSpace, x: str) -> float:
    return space.self_distance(x)


def from_partial_metric(
    pspace: PartialMetricSpace, n: int, checked: bool = True, tol: float = DEFAULT_TOL
) -> PartialNMetricSpace:
    """Lift a partial metric to arity ``n`` by summing it over all index pairs.

    >>> p = PartialMetricSpace.from_matrix(["x", "y"], [[1, 2], [2, 2]])
    >>> G = from_partial_metric(p, 3)
    >>> G("x", "x", "y"), G("y", "y", "y")
    (5.0, 6.0)
    """
    if n < 2:
        raise ArityError(f"arity must be at least 2, got {n}")
    if checked:
        from .axioms import check_partial_metric

        violations = check_partial_metric(pspace, tol=tol)
        if violations:
            raise PartialMetricAxiomViolation(violations)
    m = len(pspace.points)
    pm = [[pspace.table[tuple(sorted((i, j)))] for j in range(m)] for i in range(m)]
    table = {}
    for key in combinations_with_replacement(range(m), n):
        total = 0.0
        for a in range(n - 1):
            row = pm[key[a]]
            for b in range(a + 1, n):
                total += row[key[b]]
        table[key] = total
    return PartialNMetricSpace(pspace.points, n, table)


def associated_metric(
    space: PartialNMetricSpace, check: bool = True, tol: float = DEFAULT_TOL
) -> MetricSpace:
    """The metric ``d(x, y) = gap(x, y) + gap(y, x)``.

    With ``check`` the space must first pass the partial n-metric profile;
    pass ``check=False`` to compute it on unvalidated tables anyway.
    """
    if check:
        from .axioms import validate

        report = validate(space, "partial_n_metric", tol=tol)
        if not report.passed:
            raise InvalidSpace("space is not a partial n-metric space", report)
    pts = space.points
    gaps = [[space.gap(x, y) for y in pts] for x in pts]
    m = len(pts)
    table = {(i, j): gaps[i][j] + gaps[j][i] for i in range(m) for j in range(m)}
    return MetricSpace(pts, table)


def is_n_metric(space: PartialNMetricSpace, tol: float = DEFAULT_TOL) -> bool:
    """True when every self-distance is zero (within ``tol``)."""
    return all(abs(space.self_distance(x)) <= tol for x in space.points)
