import itertools
import math

import numpy as np
import pytest

import pnmetric as pn
from pnmetric import axioms as ax
from pnmetric import random_spaces as rs
from pnmetric.spaces import MetricSpace

from conftest import brute_valid, corpus, two_point


def test_ssd_s8(g5, one_point):
    assert ax.check_ssd(g5) == []
    assert ax.check_ssd(one_point) == []


def test_ssd_violation():
    v = ax.check_ssd(two_point(2, 5, 1, 0))
    assert len(v) == 1
    assert v[0].axiom == "ssd" and v[0].witness == ("a", "b")
    assert (v[0].lhs, v[0].rhs) == (5, 1)


def test_sep(g5, one_point):
    assert ax.check_sep(g5) == []
    assert ax.check_sep(one_point) == []
    v = ax.check_sep(two_point(2, 0, 0, 0))
    assert [x.witness for x in v] == [("a", "b")]


def test_sep_chain_s8(g5):
    # read off the table multiset by multiset
    want = [g5(*("a",) * (5 - k) + ("b",) * k) for k in range(6)]
    assert want == [0, 3, -1, 2, 4, 0]
    assert ax.sep_chain(g5, "a", "b") == want
    assert ax.check_sep_prime(g5) == []
    assert len(ax.check_sep_prime(two_point(2, 0, 0, 0))) == 1


def test_sssd(g5):
    assert ax.check_sssd(g5) == []
    tie = two_point(2, 1, 1, 0)
    v = ax.check_sssd(tie)
    assert [x.witness for x in v] == [("a", "b")]


def test_sssd_from_strong_partial_metric():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = rs.random_partial_metric(rng, 4, "max")
        assert p.is_strong()
        assert ax.check_sssd(pn.from_partial_metric(p, 3)) == []


def test_ptri_instance_s8(g5):
    # M = {a,b,b,b,b}, distinguished b, y = a
    lhs = g5("a", "b", "b", "b", "b")
    rhs = g5("a", "b", "b", "b", "a") + g5("a", "a", "a", "a", "b") - g5("a", "a", "a", "a", "a")
    assert (lhs, rhs) == (4, 5)
    assert ax.check_ptri(g5) == []


def test_ptri_identity_substitution():
    # y equal to the distinguished element: rhs collapses to lhs
    rng = np.random.default_rng(0)
    space = rs.random_table(rng, 3, 3)
    n = space.n
    for tup in itertools.product(space.points, repeat=n):
        y = tup[-1]
        rhs = space(*tup[:-1], y) + space(*([y] * (n - 1)), tup[-1]) - space(*([y] * n))
        assert rhs == space(*tup)


def test_ptri_detects_edit(g5):
    bad = g5.replace({("b", "b", "a", "a", "a"): -10})
    v = ax.check_ptri(bad)
    assert v and all(x.axiom == "ptri" for x in v)


def test_lower_bound(g5):
    assert ax.check_lower_bound(g5, 0) == []
    assert [v.witness for v in ax.check_lower_bound(g5, 0.5)] == [("a",), ("b",)]
    assert ax.check_lower_bound(g5, -math.inf) == []


def test_symmetry_sampled(g5):
    ev = lambda tup: g5(*tup)  # noqa: E731
    assert ax.check_symmetry_sampled(ev, g5.points, 5) == []
    assert ax.check_symmetry_sampled(ev, g5.points, 5, seed=7) == []
    first = lambda tup: ["a", "b"].index(tup[0])  # noqa: E731
    assert ax.check_symmetry_sampled(first, g5.points, 5)


def test_symmetry_sampled_pair_sum(pm_xy):
    ev = lambda tup: sum(pm_xy(tup[i], tup[j]) for i, j in itertools.combinations(range(4), 2))  # noqa: E731
    assert ax.check_symmetry_sampled(ev, pm_xy.points, 4, samples=500) == []


def test_symmetry_sampled_failure():
    def boom(tup):
        raise RuntimeError("no")

    with pytest.raises(pn.EvaluatorFailure):
        ax.check_symmetry_sampled(boom, ["a"], 2)


@pytest.mark.parametrize("profile", ["partial_n_metric", "strong", "n_metric"])
def test_validate_s8(g5, profile):
    report = pn.validate(g5, profile)
    assert report.passed and report.verdict == "pass"
    assert g5.flags[profile] is True
    doc = report.to_dict()
    assert doc["profile"] == profile and doc["violations"] == [] and doc["tolerance"] == 1e-9


def test_validate_degenerate():
    report = pn.validate(two_point(2, 0, 0, 0), "partial_n_metric")
    assert report.verdict == "fail"
    assert [v.axiom for v in report.violations] == ["sep"]


def test_validate_unknown_profile(g5):
    with pytest.raises(ValueError):
        pn.validate(g5, "nope")


def test_counts_match_closed_form():
    rng = np.random.default_rng(3)
    for k, n in [(1, 2), (2, 5), (3, 3), (4, 2), (4, 4)]:
        space = rs.random_table(rng, k, n)
        exp = ax.expected_counts(space)
        for profile, axioms in ax.PROFILES.items():
            report = pn.validate(space, profile)
            assert report.counts == {a: exp[a] for a in axioms}
        # brute count of ptri triples: distinct (multiset, distinguished value, y)
        triples = {
            (tuple(sorted(tup)), tup[-1], y)
            for tup in itertools.product(range(k), repeat=n)
            for y in range(k)
        }
        assert exp["ptri"] == len(triples)


def test_violation_witnesses_reproduce():
    rng = np.random.default_rng(4)
    seen = set()
    for _ in range(100):
        space = rs.random_table(rng, 3, 3)
        for v in pn.validate(space, "n_metric", cap=10_000).violations + ax.check_sssd(space):
            seen.add(v.axiom)
            n = space.n
            if v.axiom == "ptri":
                ms, d, y = v.witness
                rest = list(ms)
                rest.remove(d)
                assert v.lhs == space(*ms)
                assert v.rhs == space(*rest, y) + space.mixed(y, d) - space.self_distance(y)
            elif v.axiom in ("ssd", "sssd"):
                x, y = v.witness
                assert (v.lhs, v.rhs) == (space.self_distance(x), space.mixed(x, y))
            elif v.axiom == "sep":
                x, y = v.witness
                assert (v.lhs, v.rhs) == (space.mixed(x, y), space.self_distance(x))
            elif v.axiom == "zero_self":
                assert v.lhs == space(*v.witness * n)
    assert {"ptri", "ssd", "sssd", "zero_self"} <= seen


def test_cap_truncates():
    space = pn.build_space(["a", "b", "c"], 3, [(list(ms), 0.0) for ms in itertools.combinations_with_replacement("abc", 3)])
    space = space.replace({("a", "a", "a"): 100.0, ("b", "b", "b"): 100.0})
    full = pn.validate(space, cap=10_000)
    cut = pn.validate(space, cap=2)
    assert len(cut.violations) == 2
    assert cut.truncated == len(full.violations) - 2
    assert cut.to_dict()["truncated"] == cut.truncated


@pytest.mark.parametrize("k,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_validate_agrees_with_brute_force(k, n):
    rng = np.random.default_rng(100 + 10 * k + n)
    verdicts = set()
    for _ in range(150):
        space = rs.random_table(rng, k, n, -2, 4)
        ok = pn.validate(space).passed
        verdicts.add(ok)
        assert ok == brute_valid(space)
    for space in corpus(k * n, 20, k, n):
        assert brute_valid(space)
    assert True in verdicts or k == 3


def test_strong_implies_partial():
    rng = np.random.default_rng(8)
    hits = 0
    for _ in range(200):
        space = rs.random_table(rng, 2, 3, 0, 4)
        if pn.validate(space, "strong").passed:
            hits += 1
            fresh = rs.shifted(space, 0)
            assert pn.validate(fresh, "partial_n_metric").passed
    for space in corpus(9, 30, 3, 3, strong=True):
        assert pn.validate(rs.shifted(space, 0), "partial_n_metric").passed
    assert hits > 0


def test_sep_equivalence():
    rng = np.random.default_rng(12)
    for space in corpus(13, 40, 3, 3):
        assert ax.check_sep(space) == [] and ax.check_sep_prime(space) == []
        dup = rs.duplicate_point(space, rs.point_names(3)[rng.integers(3)], "z")
        assert ax.check_ssd(dup) == [] and ax.check_ptri(dup) == []
        assert ax.check_sep(dup) and ax.check_sep_prime(dup)


def test_n_metric_positivity(g5):
    assert ax.check_n_metric_positivity(g5) == []
    rng = np.random.default_rng(2)
    for _ in range(30):
        space = rs.random_n_metric(rng, 3, 3)
        assert ax.check_n_metric_positivity(space) == []


def test_partial_metric_checker(pm_xy):
    assert ax.check_partial_metric(pm_xy) == []
    bad = pn.PartialMetricSpace.from_entries(["x", "y"], [(("x", "x"), 1), (("y", "y"), 2), (("x", "y"), 0)])
    assert ax.check_partial_metric(bad)


def sym(table):
    return {**table, **{(j, i): v for (i, j), v in table.items()}}


def test_metric_checker():
    good = MetricSpace(("a", "b"), sym({(0, 0): 0.0, (0, 1): 2.0, (1, 1): 0.0}))
    assert ax.check_metric(good) == []
    bad = MetricSpace(
        ("a", "b", "c"),
        sym({(0, 0): 0.0, (1, 1): 0.0, (2, 2): 1.0, (0, 1): 1.0, (0, 2): 5.0, (1, 2): 1.0}),
    )
    tags = {v.axiom for v in ax.check_metric(bad)}
    assert {"zero_self", "triangle"} <= tags
