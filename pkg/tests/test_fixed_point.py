import itertools

import numpy as np
import pytest

import pnmetric as pn
from pnmetric import fixed_point as fp
from pnmetric import random_spaces as rs

from conftest import corpus, two_point


def fmap(space, mapping):
    return fp.SelfMap(space, dict(zip(space.points, mapping)))


@pytest.fixture
def to_b(g5):
    return fp.SelfMap(g5, {"a": "b", "b": "b"})


@pytest.fixture
def swap(g5):
    return fp.SelfMap(g5, {"a": "b", "b": "a"})


def small_tables(k, values):
    """Every integer table on k points with n = 2 and entries from ``values``."""
    pts = rs.point_names(k)
    keys = list(itertools.combinations_with_replacement(range(k), 2))
    for vals in itertools.product(values, repeat=len(keys)):
        yield pn.PartialNMetricSpace(pts, 2, dict(zip(keys, map(float, vals))))


# --- maps and orbits ---------------------------------------------------------


def test_selfmap_validation(g5):
    with pytest.raises(ValueError):
        fp.SelfMap(g5, {"a": "b"})
    with pytest.raises(pn.UnknownPoint):
        fp.SelfMap(g5, {"a": "z", "b": "a"})
    assert len(list(fp.all_self_maps(g5))) == 4
    assert fp.SelfMap.identity(g5).fixed_points() == ["a", "b"]
    assert fp.SelfMap.constant(g5, "a").to_dict() == {"map": {"a": "a", "b": "a"}}


def test_orbit_examples(g5, to_b, swap):
    t = fp.orbit(to_b, "a")
    assert t.terms == ("a", "b", "b") and (t.cycle_entry, t.cycle_length) == (1, 1)
    assert t.step_values == (3.0, 0.0)
    t = fp.orbit(fp.SelfMap.identity(g5), "b")
    assert (t.cycle_entry, t.cycle_length) == (0, 1)
    t = fp.orbit(swap, "a")
    assert (t.cycle_entry, t.cycle_length) == (0, 2) and t.cycle == ("a", "b")
    with pytest.raises(pn.UnknownPoint):
        fp.orbit(swap, "q")


def test_orbit_invariants():
    rng = np.random.default_rng(50)
    space = rs.random_table(rng, 5, 2)
    for f in itertools.islice(fp.all_self_maps(space), 0, 3125, 7):
        for x0 in space.points:
            t = fp.orbit(f, x0)
            assert t.closed
            for k in range(len(t.terms) - 1):
                assert t.terms[k + 1] == f(t.terms[k])
            assert t.terms[t.cycle_entry + t.cycle_length] == t.terms[t.cycle_entry]
            assert len(set(t.distinct_terms)) == len(t.distinct_terms)


def test_orbit_budget(g5, swap):
    t = fp.orbit(swap, "a", max_steps=1)
    assert not t.closed and t.terms == ("a", "b")
    with pytest.raises(ValueError):
        t.cycle


# --- non-expansive ---------------------------------------------------------


def test_nonexpansive_s8(g5, to_b):
    res = fp.check_nonexpansive(g5, to_b)
    assert not res
    assert res.witness == ("a", "a", "a", "b", "b")
    assert (res.lhs, res.rhs) == (0, -1)


def test_nonexpansive_identity_and_constant():
    rng = np.random.default_rng(51)
    for space in corpus(51, 20, 3, 3):
        assert fp.check_nonexpansive(space, fp.SelfMap.identity(space))
    for _ in range(10):
        space = pn.from_partial_metric(rs.random_partial_metric(rng, 3), 3)
        low = min(space.points, key=space.self_distance)
        assert space.self_distance(low) == min(space.table.values())
        assert fp.check_nonexpansive(space, fp.SelfMap.constant(space, low))


def test_nonexpansive_brute_force():
    rng = np.random.default_rng(52)
    for space in corpus(52, 10, 3, 2):
        for f in fp.all_self_maps(space):
            brute = all(
                space(f(x), f(y)) <= space(x, y) + 1e-9
                for x, y in itertools.product(space.points, repeat=2)
            )
            assert bool(fp.check_nonexpansive(space, f)) == brute


# --- orbital continuity -------------------------------------------------------


def test_orbital_continuity_s8(g5, to_b):
    res = fp.check_orbital_continuity(g5, to_b, "a", "b")
    assert res and res.z_is_limit and res.fz_is_limit


def test_orbital_continuity_vacuous(g5, to_b):
    res = fp.check_orbital_continuity(g5, to_b, "a", "a")
    assert res and not res.z_is_limit


def test_orbital_continuity_witness_by_search():
    found = []
    for space in small_tables(2, range(3)):
        if not pn.validate(space).passed:
            continue
        for f in fp.all_self_maps(space):
            for x0, z in itertools.product(space.points, repeat=2):
                res = fp.check_orbital_continuity(space, f, x0, z)
                if not res:
                    found.append((space, f, x0, z, res))
    assert found
    space, f, x0, z, res = found[0]
    assert res.z_is_limit and not res.fz_is_limit
    # hand-checked instance
    space = two_point(2, 0, 1, 1)
    res = fp.check_orbital_continuity(space, fp.SelfMap(space, {"a": "b", "b": "a"}), "a", "b")
    assert not res and res.z_deviation == 0 and res.fz_deviation == 1
    assert not fp.is_orbitally_continuous(space, fp.SelfMap(space, {"a": "b", "b": "a"}))


# --- certificates -------------------------------------------------------------


def test_r_certificate_constant_orbit(g5):
    f = fp.SelfMap.identity(g5)
    cert = fp.certify_r_contractive(g5, f, "a", 0.0)
    assert cert.holds_on_prefix and cert.c_estimate == 0 and cert.exact


def test_r_certificate_s8(g5, to_b):
    cert = fp.certify_r_contractive(g5, to_b, "a", 0.0)
    assert cert.holds_on_prefix and cert.c_estimate == 0
    d = cert.to_dict()
    assert d["kind"] == "r_contractive" and d["witnesses"] == []


def test_r_certificate_lower_bound(g5, to_b):
    cert = fp.certify_r_contractive(g5, to_b, "a", 0.5)
    assert not cert.holds_on_prefix
    assert {w["condition"] for w in cert.witnesses} >= {"lower_bound"}
    with pytest.raises(ValueError):
        fp.certify_r_contractive(g5, to_b, "a", 0.0, prefix_len=1)


def test_r_certificate_rate():
    # orbit a -> b -> c -> c with step values 8, 5, then r
    pm = pn.PartialMetricSpace.from_entries(
        ["a", "b", "c"],
        [(("a", "a"), 0), (("b", "b"), 0), (("c", "c"), 0), (("a", "b"), 8), (("b", "c"), 5), (("a", "c"), 8)],
    )
    space = pn.from_partial_metric(pm, 2)
    f = fp.SelfMap(space, {"a": "b", "b": "c", "c": "c"})
    cert = fp.certify_r_contractive(space, f, "a", 0.0)
    assert cert.holds_on_prefix and cert.c_estimate == pytest.approx(5 / 8)
    pm2 = pn.PartialMetricSpace.from_entries(
        ["a", "b", "c"],
        [(("a", "a"), 0), (("b", "b"), 0), (("c", "c"), 0), (("a", "b"), 4), (("b", "c"), 5), (("a", "c"), 5)],
    )
    space2 = pn.from_partial_metric(pm2, 2)
    cert = fp.certify_r_contractive(space2, fp.SelfMap(space2, f.mapping), "a", 0.0)
    assert not cert.holds_on_prefix and cert.witnesses[0]["condition"] == "rate"


def test_phi_certificate(g5, to_b, swap):
    assert fp.certify_phi_contractive(g5, fp.SelfMap.identity(g5), "a", 0.0, 0.3).holds_on_prefix
    cert = fp.certify_phi_contractive(g5, to_b, "a", 0.0, 0.5)
    assert cert.holds_on_prefix and cert.to_dict()["lambda"] == 0.5
    # on the swap orbit G(a,a,a,a,b) = 3 maps to G(b,b,b,b,a) = 4
    cert = fp.certify_phi_contractive(g5, swap, "a", 0.0, 0.5)
    assert not cert.holds_on_prefix
    assert any(w["condition"] == "decrease" for w in cert.witnesses)
    for lam in (0, -1, 1.5):
        with pytest.raises(pn.InvalidLambda):
            fp.certify_phi_contractive(g5, to_b, "a", 0.0, lam)


# --- completeness -----------------------------------------------------------------


def test_orbital_completeness_examples(g5, to_b):
    res = fp.check_orbital_completeness(g5, to_b)
    assert res and res.special_limits == {"a": "b", "b": "b"}
    for space in corpus(53, 10, 3, 3):
        assert fp.check_orbital_completeness(space, fp.SelfMap.identity(space))


def test_no_completeness_counterexample_exists():
    """Exhaustive over small tables, valid or not: a Cauchy cycle's own points
    are always special limits, so a witness of incompleteness never appears."""
    searched = 0
    for k, values in [(2, range(-1, 3)), (3, range(0, 3))]:
        for space in small_tables(k, values):
            for f in fp.all_self_maps(space):
                try:
                    res = fp.check_orbital_completeness(space, f)
                except pn.UniquenessViolation:
                    assert not pn.validate(space).passed
                    continue
                assert res, (space, f)
                searched += 1
    assert searched > 10_000


# --- solving ------------------------------------------------------------------


def test_solve_s8_strong(g5, to_b):
    res = fp.solve_fixed_point(g5, to_b, "a", strong_mode=True)
    assert res.fixed_point == "b"
    assert res.theorem_case == "strong/orbital-continuity"
    assert res.iterations == 1 and res.self_distance_at_fp == 0
    assert res.cases["hypothesis_sets"]["strong/non-expansive"]["holds"] is False


def test_solve_s8_partial(g5, to_b):
    res = fp.solve_fixed_point(g5, to_b, "a")
    assert res.fixed_point == "b"
    assert res.theorem_case == "partial/orbital-continuity+lower-bound-fa"


def test_solve_identity(g5):
    for x in g5.points:
        res = fp.solve_fixed_point(g5, fp.SelfMap.identity(g5), x)
        assert res.fixed_point == x and res.iterations == 0
        assert res.theorem_case == "partial/non-expansive+orbital-continuity"
        res = fp.solve_fixed_point(g5, fp.SelfMap.identity(g5), x, strong_mode=True)
        assert res.theorem_case == "strong/non-expansive"


def test_solve_two_cycle(g5, swap):
    with pytest.raises(pn.NotCauchy) as info:
        fp.solve_fixed_point(g5, swap, "a")
    assert info.value.trace.cycle == ("a", "b")


def test_solve_budget(g5, swap):
    with pytest.raises(pn.NotCauchy):
        fp.solve_fixed_point(g5, swap, "a", max_steps=1)


def test_solve_hypotheses_unsatisfied():
    space = two_point(2, 0, 1, 1)
    f = fp.SelfMap(space, {"a": "b", "b": "b"})
    with pytest.raises(pn.HypothesesUnsatisfied) as info:
        fp.solve_fixed_point(space, f, "a")
    assert info.value.special_limit == "b"
    sets = info.value.cases["hypothesis_sets"]
    assert sets["partial/orbital-continuity+lower-bound-fa"]["failing"] == ["lower_bound_fa"]


def test_solve_invalid_space():
    bad = two_point(2, 0, 0, 0)
    with pytest.raises(pn.InvalidSpace):
        fp.solve_fixed_point(bad, fp.SelfMap.identity(bad), "a")
    g5 = pn.two_point_five_metric()
    weak = two_point(2, 0, 1, 1)
    with pytest.raises(pn.InvalidSpace):
        fp.solve_fixed_point(weak, fp.SelfMap.identity(weak), "a", strong_mode=True)
    assert fp.solve_fixed_point(g5, fp.SelfMap.identity(g5), "a", strong_mode=True)


def test_solve_result_dict(g5, to_b):
    d = fp.solve_fixed_point(g5, to_b, "a", strong_mode=True).to_dict()
    assert d["fixed_point"] == "b" and d["orbit"]["terms"] == ["a", "b", "b"]


def test_solve_contractive_s8(g5, to_b):
    res = fp.solve_via_contractive(g5, to_b, "a", "r", 0.0)
    assert res.fixed_point == "b" and res.self_distance_at_fp == 0
    assert res.certificate.holds_on_prefix
    res = fp.solve_via_contractive(g5, to_b, "a", "phi", 0.0, lam=0.5, strong_mode=True)
    assert res.theorem_case.startswith("phi-contractive/strong/")


def constant_map_outcomes(space, strong_mode):
    for p in space.points:
        f = fp.SelfMap.constant(space, p)
        r = space.self_distance(p)
        for x0 in space.points:
            try:
                res = fp.solve_via_contractive(space, f, x0, "r", r, strong_mode=strong_mode)
            except pn.CertificateFailed as exc:
                # only possible through the m = 0 conditions at a different start
                assert x0 != p
                assert {w["m"] for w in exc.certificate.witnesses} == {0}
                yield "no-certificate"
                continue
            except pn.HypothesesUnsatisfied:
                assert not strong_mode
                yield "refused"
                continue
            assert res.fixed_point == p and res.iterations == (x0 != p)
            assert res.self_distance_at_fp == r
            yield "solved"


def test_solve_contractive_constant():
    # strong spaces: the continuity case always applies
    outcomes = set()
    for space in corpus(54, 10, 3, 3, strong=True):
        outcomes.update(constant_map_outcomes(space, True))
    assert "solved" in outcomes and "refused" not in outcomes
    # partial spaces: p, or an honest refusal when no hypothesis set holds
    outcomes = set()
    for space in corpus(56, 10, 3, 3):
        outcomes.update(constant_map_outcomes(space, False))
    assert "solved" in outcomes


def test_solve_contractive_mismatch(g5, to_b):
    with pytest.raises(pn.CertificateFailed) as info:
        fp.solve_via_contractive(g5, to_b, "a", "r", 1.0)
    assert info.value.certificate.witnesses
    with pytest.raises(pn.CertificateFailed):
        fp.solve_via_contractive(g5, to_b, "a", "r", -1.0)
    with pytest.raises(pn.InvalidLambda):
        fp.solve_via_contractive(g5, to_b, "a", "phi", 0.0)
    with pytest.raises(ValueError):
        fp.solve_via_contractive(g5, to_b, "a", "zeta", 0.0)


def test_engine_post_hoc_identities():
    """Whenever a case fires, the identities the hypotheses force at a hold."""
    for space in corpus(55, 15, 3, 3):
        for f in fp.all_self_maps(space):
            for x0 in space.points:
                try:
                    res = fp.solve_fixed_point(space, f, x0)
                except (pn.NotCauchy, pn.HypothesesUnsatisfied):
                    continue
                a = res.fixed_point
                fa = f(a)
                assert fa == a
                if "non-expansive" in res.theorem_case:
                    assert space.mixed(a, fa) == space.self_distance(a)
                if "orbital-continuity" in res.theorem_case:
                    assert space.mixed(fa, a) == space.self_distance(fa)
