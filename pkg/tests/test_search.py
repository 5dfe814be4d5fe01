"""Grid-and-descent searches over reduced cells, plus the brute oracles."""

from fractions import Fraction

import pytest

from symreduce.parsing import parse_expression, parse_system_text
from symreduce.polynomial import Poly, power_sum
from symreduce.reduction import (
    Relation,
    plan_degree_principle,
    plan_half_degree,
    plan_jsparse,
)
from symreduce.search import (
    SearchConfig,
    VERDICT_MIN,
    VERDICT_NO_WITNESS,
    VERDICT_WITNESS,
    check_feasible,
    minimize_reduced,
    oracle_feasible,
    oracle_min,
    provable_bounds,
    verify_witness,
)

CFG = SearchConfig()


def _system(text):
    return parse_system_text(text).constraints


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(box_radius=0)
    with pytest.raises(ValueError):
        SearchConfig(grid_points_per_axis=1)
    with pytest.raises(ValueError):
        SearchConfig(feasibility_tolerance=0)


def test_feasible_equality_system():
    plan = plan_degree_principle(_system("nvars: 2\np1 = 0\np2 - 2 = 0\n"))
    report = check_feasible(plan, CFG)
    assert report.verdict == VERDICT_WITNESS
    assert report.witness is not None
    assert sorted(report.witness) == pytest.approx([-1.0, 1.0], abs=1e-6)
    ok, residuals = verify_witness(plan.source, report.witness, CFG.feasibility_tolerance)
    assert ok
    assert report.note == ""


def test_feasible_orthant_jsparse():
    plan = plan_jsparse(_system("nvars: 4\np2 - 1 = 0\n"), (2,))
    report = check_feasible(plan, CFG)
    assert report.verdict == VERDICT_WITNESS
    assert all(v >= 0 for v in report.witness)
    total = sum(v * v for v in report.witness)
    assert total == pytest.approx(1.0, abs=1e-6)
    assert report.profile.distinct_positive_count <= 1


def test_proved_infeasible():
    plan = plan_degree_principle(_system("nvars: 3\np2 + 1 = 0\n"))
    report = check_feasible(plan, CFG)
    assert report.verdict == VERDICT_NO_WITNESS
    assert report.proved_infeasible
    assert "never 0" in report.note
    assert report.witness is None


def test_heuristic_negative_is_labeled():
    # p2 = 100 is outside the box, not provably impossible
    plan = plan_degree_principle(_system("nvars: 2\np2 - 100 = 0\n"))
    report = check_feasible(plan, CFG)
    assert report.verdict == VERDICT_NO_WITNESS
    assert not report.proved_infeasible
    assert "heuristic" in report.note


def test_strict_inequality_witness():
    plan = plan_degree_principle(_system("nvars: 2\np1 > 0\np2 - 1 != 0\n"))
    report = check_feasible(plan, CFG)
    assert report.verdict == VERDICT_WITNESS
    x = report.witness
    assert sum(x) > 0
    assert abs(sum(v * v for v in x) - 1.0) > CFG.feasibility_tolerance


def test_minimize_simple():
    f = parse_expression("p2", 3)
    plan = plan_half_degree(f, "nonneg_global")
    report = minimize_reduced(plan, f, CFG)
    assert report.verdict == VERDICT_MIN
    assert report.value == pytest.approx(0.0, abs=1e-9)
    assert report.witness == (0.0, 0.0, 0.0)


def test_minimize_named_instance():
    f = parse_expression("3*p4 - p2^2", 3)
    plan = plan_half_degree(f, "nonneg_global")
    report = minimize_reduced(plan, f, CFG)
    assert report.value >= -1e-9
    assert report.value == pytest.approx(0.0, abs=1e-7)


def test_minimize_orthant_witness_nonnegative():
    f = parse_expression("p1 - 3", 3)
    plan = plan_half_degree(f, "nonneg_orthant")
    report = minimize_reduced(plan, f, CFG)
    assert all(v >= 0 for v in report.witness)
    assert report.value == pytest.approx(-3.0, abs=1e-9)


def test_zero_block_zeros_are_exact():
    plan = plan_jsparse(_system("nvars: 3\np2 - 1 = 0\n"), (2,))
    report = check_feasible(plan, CFG)
    zeros = [v for v in report.witness if v == 0.0]
    # the all-equal cell solves it, or a zero block shows up exactly
    for v in zeros:
        assert v == 0.0


def test_provable_bounds():
    assert provable_bounds(power_sum(3, 2)) == (Fraction(0), None)
    assert provable_bounds(-1 * power_sum(3, 2)) == (None, Fraction(0))
    # p4 must be a generator for the certificate to be visible, so n >= 4
    f = power_sum(4, 2) + power_sum(4, 4) + 2
    assert provable_bounds(f) == (Fraction(2), None)
    assert provable_bounds(power_sum(3, 1)) == (None, None)
    # odd power sums squared still certify
    g = power_sum(2, 1) ** 2
    assert provable_bounds(g) == (Fraction(0), None)


def test_oracle_min_agrees_on_simple_cases():
    f = parse_expression("p2", 2)
    assert oracle_min(f, CFG) == pytest.approx(0.0, abs=1e-9)
    g = parse_expression("p4 - 2*p2 + 2", 2)
    assert oracle_min(g, CFG) == pytest.approx(0.0, abs=1e-6)


def test_oracle_feasible():
    point = oracle_feasible(_system("nvars: 2\np1 = 0\np2 - 2 = 0\n"), CFG)
    assert point is not None
    assert sum(point) == pytest.approx(0.0, abs=1e-6)
    assert oracle_feasible(_system("nvars: 3\np2 + 1 = 0\n"), CFG) is None


def test_verify_witness_rejects_bad_points():
    constraints = _system("nvars: 2\np2 - 2 = 0\n")
    ok, residuals = verify_witness(constraints, (1.0, 1.0), 1e-8)
    assert ok
    ok, residuals = verify_witness(constraints, (1.0, 1.1), 1e-8)
    assert not ok
    assert residuals[0] == pytest.approx(0.21, abs=1e-12)


def test_determinism():
    plan = plan_degree_principle(_system("nvars: 3\np1 = 0\np2 - 2 = 0\n"))
    a = check_feasible(plan, CFG)
    b = check_feasible(plan, CFG)
    assert a == b
    f = parse_expression("3*p4 - p2^2", 4)
    mplan = plan_half_degree(f, "nonneg_global")
    assert minimize_reduced(mplan, f, CFG) == minimize_reduced(mplan, f, CFG)


def test_seed_changes_search_paths_not_soundness():
    plan = plan_degree_principle(_system("nvars: 2\np1 = 0\np2 - 2 = 0\n"))
    for seed in (0, 1, 7):
        cfg = SearchConfig(random_seed=seed)
        report = check_feasible(plan, cfg)
        assert report.verdict == VERDICT_WITNESS
        ok, _ = verify_witness(plan.source, report.witness, cfg.feasibility_tolerance)
        assert ok


def test_feasibility_requires_relations():
    f = parse_expression("p2", 2)
    plan = plan_half_degree(f, "nonneg_global")
    with pytest.raises(ValueError):
        check_feasible(plan, CFG)
