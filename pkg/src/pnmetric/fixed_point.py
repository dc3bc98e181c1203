"""Orbit iteration, contractivity certificates and fixed-point solving.

On a finite space every orbit is eventually periodic.  The limits that the
fixed-point theorems talk about (``m -> oo``) then range over exactly the
cycle points, so every hypothesis below is decided exactly from one pass
through the pre-period and one full cycle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .axioms import check_lower_bound, is_valid
from .errors import (
    CertificateFailed,
    HypothesesUnsatisfied,
    InvalidLambda,
    InvalidSpace,
    NoSpecialLimit,
    NotCauchy,
    TheoremContradicted,
    UnknownPoint,
)
from .sequences import (
    CauchyVerdict,
    SequencePrefix,
    check_limit,
    estimate_cauchy,
    special_limit_search,
)
from .spaces import DEFAULT_TOL, PartialNMetricSpace

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelfMap:
    space: PartialNMetricSpace
    mapping: Mapping[str, str]

    def __post_init__(self):
        mapping = dict(self.mapping)
        for x in self.space.points:
            if x not in mapping:
                raise ValueError(f"map is not defined at {x!r}")
        for x, y in mapping.items():
            if x not in self.space:
                raise UnknownPoint(f"map defined at unknown point {x!r}")
            if y not in self.space:
                raise UnknownPoint(f"map sends {x!r} to unknown point {y!r}")
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, x: str) -> str:
        try:
            return self.mapping[x]
        except KeyError:
            raise UnknownPoint(f"unknown point {x!r}") from None

    @classmethod
    def identity(cls, space):
        return cls(space, {x: x for x in space.points})

    @classmethod
    def constant(cls, space, p):
        return cls(space, {x: p for x in space.points})

    def fixed_points(self) -> list:
        return [x for x in self.space.points if self(x) == x]

    def to_dict(self) -> dict:
        return {"map": {x: self.mapping[x] for x in self.space.points}}


def all_self_maps(space: PartialNMetricSpace):
    """Every one of the ``p**p`` self-maps of the space."""
    pts = space.points
    for images in product(pts, repeat=len(pts)):
        yield SelfMap(space, dict(zip(pts, images)))


# --- orbits -------------------------------------------------------------


@dataclass
class OrbitTrace:
    """``x0, f x0, f^2 x0, ...`` up to the first repeated point.

    When a cycle is found, ``terms`` ends with the first repeat, so
    ``terms[cycle_entry + cycle_length] == terms[cycle_entry]``.
    ``step_values[m]`` caches ``G(<terms[m]>^(n-1), terms[m+1])``.
    """

    start: str
    terms: tuple
    cycle_entry: int | None
    cycle_length: int | None
    step_values: tuple

    @property
    def closed(self) -> bool:
        return self.cycle_entry is not None

    @property
    def cycle(self) -> tuple:
        if not self.closed:
            raise ValueError("orbit did not close within the step budget")
        return self.terms[self.cycle_entry : self.cycle_entry + self.cycle_length]

    @property
    def distinct_terms(self) -> tuple:
        """The pre-period followed by one copy of the cycle."""
        if self.closed:
            return self.terms[: self.cycle_entry + self.cycle_length]
        return self.terms

    def successor_index(self, i: int) -> int:
        """Position of ``f(terms[i])`` within :attr:`distinct_terms`."""
        nxt = i + 1
        if self.closed and nxt == self.cycle_entry + self.cycle_length:
            return self.cycle_entry
        return nxt

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "terms": list(self.terms),
            "cycle_entry": self.cycle_entry,
            "cycle_length": self.cycle_length,
            "step_values": list(self.step_values),
        }


def default_max_steps(space: PartialNMetricSpace) -> int:
    return 10 * len(space)


def orbit(fmap: SelfMap, x0: str, max_steps: int | None = None) -> OrbitTrace:
    space = fmap.space
    if x0 not in space:
        raise UnknownPoint(f"unknown point {x0!r}")
    if max_steps is None:
        max_steps = default_max_steps(space)
    terms = [x0]
    seen = {x0: 0}
    entry = length = None
    for _ in range(max_steps):
        nxt = fmap(terms[-1])
        terms.append(nxt)
        if nxt in seen:
            entry = seen[nxt]
            length = len(terms) - 1 - entry
            break
        seen[nxt] = len(terms) - 1
    steps = tuple(space.mixed(terms[m], terms[m + 1]) for m in range(len(terms) - 1))
    return OrbitTrace(x0, tuple(terms), entry, length, steps)


def tail_prefix(space: PartialNMetricSpace, trace: OrbitTrace) -> SequencePrefix:
    """The cycle as a sequence prefix; analysing it with full window is exact."""
    return SequencePrefix(space, trace.cycle)


def orbit_cauchy(
    space: PartialNMetricSpace, trace: OrbitTrace, tol: float = DEFAULT_TOL
) -> CauchyVerdict:
    """Exact Cauchy verdict: all pairwise values over the cycle must coincide."""
    cycle = trace.cycle
    return estimate_cauchy(SequencePrefix(space, cycle), len(cycle), tol)


# --- map properties -------------------------------------------------------


@dataclass
class NonExpansive:
    holds: bool
    witness: tuple | None = None
    image: tuple | None = None
    lhs: float | None = None
    rhs: float | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def check_nonexpansive(
    space: PartialNMetricSpace, fmap: SelfMap, tol: float = DEFAULT_TOL
) -> NonExpansive:
    """``G(f x_1, ..., f x_n) <= G(x_1, ..., x_n)`` over all multisets.

    Returns the first violating multiset in canonical order, if any.
    """
    for key in space.multisets():
        pts = space.names(key)
        image = tuple(fmap(x) for x in pts)
        lhs, rhs = space.value(image), space.table[key]
        if lhs > rhs + tol:
            return NonExpansive(False, pts, image, lhs, rhs)
    return NonExpansive(True)


def _orbit_tail(space, trace):
    if trace.closed:
        return SequencePrefix(space, trace.cycle), len(trace.cycle)
    prefix = SequencePrefix(space, trace.terms)
    return prefix, prefix.default_window()


@dataclass
class OrbitalContinuity:
    holds: bool
    z: str
    fz: str
    z_is_limit: bool
    fz_is_limit: bool
    z_deviation: float
    fz_deviation: float

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def check_orbital_continuity(
    space: PartialNMetricSpace,
    fmap: SelfMap,
    x0: str,
    z: str,
    max_steps: int | None = None,
    tol: float = DEFAULT_TOL,
    trace: OrbitTrace | None = None,
) -> OrbitalContinuity:
    """If ``z`` is a limit of the orbit of ``x0`` then so is ``f z``.

    Vacuously true when ``z`` is not a limit.  Both limit computations are
    attached to the result.
    """
    if z not in space:
        raise UnknownPoint(f"unknown point {z!r}")
    trace = trace or orbit(fmap, x0, max_steps)
    prefix, w = _orbit_tail(space, trace)
    tail = prefix.tail(w)
    fz = fmap(z)

    def deviation(a):
        sa = space.self_distance(a)
        return max(abs(space.mixed(a, x) - sa) for x in tail)

    z_lim = check_limit(prefix, z, tol, w)
    fz_lim = check_limit(prefix, fz, tol, w)
    return OrbitalContinuity(
        (not z_lim) or fz_lim, z, fz, z_lim, fz_lim, deviation(z), deviation(fz)
    )


def check_orbital_continuity_at(
    space, fmap, x0, max_steps=None, tol=DEFAULT_TOL, trace=None
) -> OrbitalContinuity | None:
    """Continuity at ``x0`` for every ``z``; returns the first failure or None."""
    trace = trace or orbit(fmap, x0, max_steps)
    for z in space.points:
        res = check_orbital_continuity(space, fmap, x0, z, tol=tol, trace=trace)
        if not res:
            return res
    return None


def is_orbitally_continuous(space, fmap, max_steps=None, tol=DEFAULT_TOL) -> bool:
    return all(
        check_orbital_continuity_at(space, fmap, x0, max_steps, tol) is None
        for x0 in space.points
    )


# --- contractivity certificates --------------------------------------------------


@dataclass
class ContractivityCertificate:
    """Outcome of testing a contractivity definition on an orbit prefix.

    ``exact`` is set when the prefix covers the pre-period and a full cycle,
    in which case the verdict is the verdict for the whole infinite orbit.
    """

    kind: str
    start: str
    r: float
    prefix_length: int
    holds_on_prefix: bool
    exact: bool
    c_estimate: float | None = None
    lam: float | None = None
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "start": self.start,
            "r": self.r,
            "prefix_length": self.prefix_length,
            "holds_on_prefix": self.holds_on_prefix,
            "exact": self.exact,
            "witnesses": self.witnesses,
        }
        if self.kind == "r_contractive":
            out["c_estimate"] = self.c_estimate
        else:
            out["lambda"] = self.lam
        return out


def _trace_for(fmap, x0, prefix_len, max_steps):
    budget = max(prefix_len, max_steps or default_max_steps(fmap.space))
    return orbit(fmap, x0, budget)


def certify_r_contractive(
    space: PartialNMetricSpace,
    fmap: SelfMap,
    x0: str,
    r: float,
    prefix_len: int = 2,
    tol: float = DEFAULT_TOL,
    max_steps: int | None = None,
) -> ContractivityCertificate:
    """Test geometric decay of the orbit step values towards ``r``.

    The conditions, for every orbit index m::

        r <= G(<x_m>^n)
        G(<x_m>^(n-1), x_(m+1)) <= r + c**m * |G(<x_0>^(n-1), x_1)|

    with one common ``c`` in [0, 1).  ``c_estimate`` is the smallest ``c``
    that works for the pre-periodic steps m >= 1.  Steps inside the cycle
    recur for arbitrarily large m, where ``c**m`` vanishes, so they must sit
    at or below ``r`` outright.
    """
    if prefix_len < 2:
        raise ValueError("prefix_len must be at least 2")
    trace = _trace_for(fmap, x0, prefix_len, max_steps)
    witnesses = []
    terms = trace.distinct_terms if trace.closed else trace.terms
    for m, x in enumerate(terms):
        s = space.self_distance(x)
        if s < r - tol:
            witnesses.append({"condition": "lower_bound", "m": m, "point": x, "value": s})

    steps = trace.step_values
    g0 = abs(steps[0]) if steps else 0.0
    # first step index that lies in the cycle (recurs forever)
    periodic_from = trace.cycle_entry if trace.closed else len(steps)
    c_est = 0.0
    for m, gm in enumerate(steps):
        excess = gm - r
        if m >= periodic_from:
            if excess > tol:
                witnesses.append({"condition": "decay", "m": m, "value": gm, "bound": r})
            continue
        if m == 0:
            if gm > r + g0 + tol:
                witnesses.append(
                    {"condition": "decay", "m": 0, "value": gm, "bound": r + g0}
                )
            continue
        if excess <= tol:
            continue
        if g0 == 0.0:
            witnesses.append({"condition": "decay", "m": m, "value": gm, "bound": r})
            continue
        c_est = max(c_est, (excess / g0) ** (1.0 / m))
    if c_est >= 1 - tol:
        witnesses.append({"condition": "rate", "c_estimate": c_est})
    holds = not witnesses
    return ContractivityCertificate(
        "r_contractive",
        x0,
        float(r),
        max(prefix_len, len(trace.terms)),
        holds,
        trace.closed,
        c_estimate=c_est,
        witnesses=witnesses,
    )


def certify_phi_contractive(
    space: PartialNMetricSpace,
    fmap: SelfMap,
    x0: str,
    r: float,
    lam: float,
    prefix_len: int = 2,
    tol: float = DEFAULT_TOL,
    max_steps: int | None = None,
) -> ContractivityCertificate:
    """Test the simultaneous-step decrease condition with ``phi(t) = lam * (t - r)``.

    For all orbit index pairs (m1, m2), writing ``g = G(<x_m1>^(n-1), x_m2)``::

        r <= G(<x_m1>^n)
        G(<x_(m1+1)>^(n-1), x_(m2+1)) <= g - phi(g)

    The value only depends on the two points, so on a closed orbit it is
    enough to check every pair of distinct orbit positions.
    """
    if not 0 < lam <= 1:
        raise InvalidLambda(f"lambda must lie in (0, 1], got {lam}")
    if prefix_len < 2:
        raise ValueError("prefix_len must be at least 2")
    trace = _trace_for(fmap, x0, prefix_len, max_steps)
    terms = trace.distinct_terms
    witnesses = []
    for m, x in enumerate(terms):
        s = space.self_distance(x)
        if s < r - tol:
            witnesses.append({"condition": "lower_bound", "m": m, "point": x, "value": s})
    if trace.closed:
        positions = range(len(terms))
        succ = trace.successor_index
    else:
        positions = range(len(terms) - 1)
        succ = lambda i: i + 1  # noqa: E731
    all_terms = trace.terms
    for m1 in positions:
        for m2 in positions:
            g = space.mixed(all_terms[m1], all_terms[m2])
            nxt = space.mixed(all_terms[succ(m1)], all_terms[succ(m2)])
            if g < r - tol:
                witnesses.append(
                    {"condition": "phi_domain", "m1": m1, "m2": m2, "value": g, "r": r}
                )
                continue
            bound = g - lam * (g - r)
            if nxt > bound + tol:
                witnesses.append(
                    {"condition": "decrease", "m1": m1, "m2": m2, "value": nxt, "bound": bound}
                )

    return ContractivityCertificate(
        "phi_r_contractive",
        x0,
        float(r),
        max(prefix_len, len(all_terms)),
        not witnesses,
        trace.closed,
        lam=float(lam),
        witnesses=witnesses,
    )


# --- completeness ------------------------------------------------------


@dataclass
class OrbitalCompleteness:
    holds: bool
    witnesses: list = field(default_factory=list)
    special_limits: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def check_orbital_completeness(
    space: PartialNMetricSpace,
    fmap: SelfMap,
    tol: float = DEFAULT_TOL,
    max_steps: int | None = None,
) -> OrbitalCompleteness:
    """Every Cauchy orbit must have a special limit; lists the starts where one is missing."""
    witnesses, limits = [], {}
    for x0 in space.points:
        trace = orbit(fmap, x0, max_steps)
        if not trace.closed:
            continue
        if not orbit_cauchy(space, trace, tol).holds_on_prefix:
            continue
        a = special_limit_search(tail_prefix(space, trace), tol, len(trace.cycle))
        limits[x0] = a
        if a is None:
            witnesses.append(x0)
    return OrbitalCompleteness(not witnesses, witnesses, limits)


# --- solving ----------------------------------------------------------------


@dataclass
class FixedPointResult:
    fixed_point: str
    self_distance_at_fp: float
    iterations: int
    theorem_case: str
    cauchy_value: float
    cases: dict
    trace: OrbitTrace
    certificate: ContractivityCertificate | None = None

    def to_dict(self) -> dict:
        out = {
            "fixed_point": self.fixed_point,
            "self_distance": self.self_distance_at_fp,
            "iterations": self.iterations,
            "theorem_case": self.theorem_case,
            "cauchy_value": self.cauchy_value,
            "cases": self.cases,
            "orbit": self.trace.to_dict(),
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


# Hypothesis sets, in the order they are tried.  Each entry names the
# conditions that must all hold.
STRONG_CASES = (
    ("strong/non-expansive", ("non_expansive",)),
    ("strong/orbital-continuity", ("orbital_continuity",)),
)
PARTIAL_CASES = (
    ("partial/non-expansive+orbital-continuity", ("non_expansive", "orbital_continuity")),
    ("partial/orbital-continuity+lower-bound-fa", ("orbital_continuity", "lower_bound_fa")),
    ("partial/non-expansive+lower-bound-a", ("non_expansive", "lower_bound_a")),
)
# contractive variants: continuity is required at x0 for every z, and the
# lower bound is the contraction target r
CONTRACTIVE_STRONG_CASES = (
    ("strong/non-expansive", ("non_expansive",)),
    ("strong/orbital-continuity-at-start", ("orbital_continuity_all",)),
)
CONTRACTIVE_PARTIAL_CASES = (
    ("partial/non-expansive+orbital-continuity-at-start", ("non_expansive", "orbital_continuity_all")),
    ("partial/non-expansive+lower-bound-r", ("non_expansive", "lower_bound_r")),
)


@dataclass
class _Analysis:
    trace: OrbitTrace
    verdict: CauchyVerdict
    a: str
    conditions: dict


def _analyse(space, fmap, x0, tol, max_steps, r=None) -> _Analysis:
    trace = orbit(fmap, x0, max_steps)
    if not trace.closed:
        raise NotCauchy(
            f"orbit of {x0!r} did not close within {len(trace.terms) - 1} steps", trace
        )
    verdict = orbit_cauchy(space, trace, tol)
    if not verdict.holds_on_prefix:
        raise NotCauchy(
            f"orbit of {x0!r} is not Cauchy: pairwise values on its cycle "
            f"{list(trace.cycle)} spread by {verdict.residual:.6g}",
            trace,
            verdict,
        )
    a = special_limit_search(tail_prefix(space, trace), tol, len(trace.cycle))
    if a is None:
        raise NoSpecialLimit(
            f"Cauchy orbit of {x0!r} has no special limit in the space", trace
        )
    fa = fmap(a)
    nonexp = check_nonexpansive(space, fmap, tol)
    cont = check_orbital_continuity(space, fmap, x0, a, tol=tol, trace=trace)
    conditions = {
        "non_expansive": nonexp,
        "orbital_continuity": cont,
        "lower_bound_fa": not check_lower_bound(space, space.self_distance(fa), tol),
        "lower_bound_a": not check_lower_bound(space, space.self_distance(a), tol),
    }
    if r is not None:
        conditions["orbital_continuity_all"] = (
            check_orbital_continuity_at(space, fmap, x0, tol=tol, trace=trace) is None
        )
        conditions["lower_bound_r"] = not check_lower_bound(space, r, tol)
    return _Analysis(trace, verdict, a, conditions)


def _describe(conditions) -> dict:
    out = {}
    for name, value in conditions.items():
        if isinstance(value, (NonExpansive, OrbitalContinuity)):
            out[name] = {"holds": bool(value), **value.to_dict()}
        else:
            out[name] = {"holds": bool(value)}
    return out


def _pick_case(case_table, conditions):
    evaluated = {}
    chosen = None
    for name, needs in case_table:
        ok = all(bool(conditions[c]) for c in needs)
        evaluated[name] = {
            "holds": ok,
            "failing": [c for c in needs if not bool(conditions[c])],
        }
        log.debug("hypothesis case %s: %s", name, "holds" if ok else "fails")
        if ok and chosen is None:
            chosen = name
    return chosen, evaluated


def _consistency(space, fmap, a, case_conditions, tol):
    """Post-hoc identities that the chosen hypotheses force at the special limit."""
    fa = fmap(a)
    sa, sfa = space.self_distance(a), space.self_distance(fa)
    if "non_expansive" in case_conditions:
        if abs(space.mixed(a, fa) - sa) > tol or space.mixed(fa, a) > sa + tol:
            raise TheoremContradicted(
                f"non-expansive map but G(<a>^(n-1), fa) != G(<a>^n) at a={a!r}"
            )
    if "orbital_continuity" in case_conditions or "orbital_continuity_all" in case_conditions:
        if abs(space.mixed(fa, a) - sfa) > tol or space.mixed(a, fa) > sfa + tol:
            raise TheoremContradicted(
                f"orbitally continuous map but G(<fa>^(n-1), a) != G(<fa>^n) at a={a!r}"
            )


def _require_valid(space, strong_mode, tol):
    profile = "strong" if strong_mode else "partial_n_metric"
    if not is_valid(space, profile, tol):
        raise InvalidSpace(f"space does not pass the {profile} profile")


def _finish(space, fmap, an, case, case_table, evaluated, certificate=None):
    a = an.a
    if fmap(a) != a:
        raise TheoremContradicted(
            f"hypotheses of {case} hold but f({a!r}) = {fmap(a)!r}"
        )
    iterations = an.trace.terms.index(a) if a in an.trace.terms else len(an.trace.terms) - 1
    cases = {"conditions": _describe(an.conditions), "hypothesis_sets": evaluated}
    return FixedPointResult(
        a,
        space.self_distance(a),
        iterations,
        case,
        an.verdict.r_estimate,
        cases,
        an.trace,
        certificate,
    )


def solve_fixed_point(
    space: PartialNMetricSpace,
    fmap: SelfMap,
    x0: str,
    max_steps: int | None = None,
    tol: float = DEFAULT_TOL,
    strong_mode: bool = False,
    check_space: bool = True,
) -> FixedPointResult:
    """Iterate ``f`` from ``x0`` and prove the special limit is a fixed point.

    The orbit must be Cauchy with a special limit ``a``; then one of the
    hypothesis sets (non-expansiveness, orbital continuity at ``x0`` for
    ``a``, lower bounds on self-distances) must hold.  Strong-space sets
    are tried first in ``strong_mode``.  The returned ``theorem_case`` names
    the first set that held.

    Raises:
        NotCauchy: the orbit's cycle is not Cauchy.
        NoSpecialLimit: the orbit is Cauchy but nothing is its special limit.
        HypothesesUnsatisfied: no hypothesis set holds; carries diagnostics.
        TheoremContradicted: hypotheses hold but ``f(a) != a``.
    """
    if check_space:
        _require_valid(space, strong_mode, tol)
    an = _analyse(space, fmap, x0, tol, max_steps)
    table = (STRONG_CASES if strong_mode else ()) + PARTIAL_CASES
    case, evaluated = _pick_case(table, an.conditions)
    if case is None:
        raise HypothesesUnsatisfied(
            f"no hypothesis set holds for special limit {an.a!r}",
            {"conditions": _describe(an.conditions), "hypothesis_sets": evaluated},
            an.a,
        )
    _consistency(space, fmap, an.a, dict(table)[case], tol)
    return _finish(space, fmap, an, case, table, evaluated)


def solve_via_contractive(
    space: PartialNMetricSpace,
    fmap: SelfMap,
    x0: str,
    kind: str,
    r: float,
    lam: float | None = None,
    max_steps: int | None = None,
    tol: float = DEFAULT_TOL,
    strong_mode: bool = False,
    prefix_len: int = 2,
    check_space: bool = True,
) -> FixedPointResult:
    """Fixed point through an r- or phi-contractivity certificate.

    The certificate pins the Cauchy value of the orbit to ``r``; the fixed
    point found then has self-distance ``r``.  The contractive hypothesis
    sets are tried first, then the general ones.

    Raises:
        CertificateFailed: the requested certificate does not hold.
        TheoremContradicted: the certificate holds but the orbit is not
            Cauchy with value ``r`` or the fixed point has the wrong
            self-distance.
    """
    if check_space:
        _require_valid(space, strong_mode, tol)
    if kind in ("r", "r_contractive"):
        cert = certify_r_contractive(space, fmap, x0, r, prefix_len, tol, max_steps)
        family = "r-contractive"
    elif kind in ("phi", "phi_r_contractive"):
        if lam is None:
            raise InvalidLambda("phi certificates need a lambda")
        cert = certify_phi_contractive(space, fmap, x0, r, lam, prefix_len, tol, max_steps)
        family = "phi-contractive"
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    if not cert.holds_on_prefix:
        raise CertificateFailed(cert)

    try:
        an = _analyse(space, fmap, x0, tol, max_steps, r=r)
    except NotCauchy as exc:
        if cert.exact:
            raise TheoremContradicted(
                f"{family} certificate holds but the orbit is not Cauchy"
            ) from exc
        raise
    if cert.exact and abs(an.verdict.r_estimate - r) > tol:
        raise TheoremContradicted(
            f"{family} certificate for r={r} but the orbit's Cauchy value is "
            f"{an.verdict.r_estimate}"
        )

    cor_table = CONTRACTIVE_STRONG_CASES if strong_mode else ()
    cor_table += CONTRACTIVE_PARTIAL_CASES
    cor_table = tuple((f"{family}/{name}", needs) for name, needs in cor_table)
    thm_table = (STRONG_CASES if strong_mode else ()) + PARTIAL_CASES
    table = cor_table + thm_table
    case, evaluated = _pick_case(table, an.conditions)
    if case is None:
        raise HypothesesUnsatisfied(
            f"no hypothesis set holds for special limit {an.a!r}",
            {"conditions": _describe(an.conditions), "hypothesis_sets": evaluated},
            an.a,
        )
    _consistency(space, fmap, an.a, dict(table)[case], tol)
    result = _finish(space, fmap, an, case, table, evaluated, cert)
    if abs(result.self_distance_at_fp - r) > tol:
        raise TheoremContradicted(
            f"fixed point {an.a!r} has self-distance {result.self_distance_at_fp}, expected r={r}"
        )
    return result
