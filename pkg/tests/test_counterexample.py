import math

import numpy as np
import pytest

from walshlab.counterexample import (
    CounterexampleSpec,
    atom,
    atom_reports,
    build_counterexample,
    divergence_experiment,
    expected_coefficients,
    paper_bound,
    partial_sum_ceiling,
    validate_alphas,
)
from walshlab.dyadic import DyadicInterval
from walshlab.summability import partial_sum
from walshlab.systems import fourier_coeffs
from walshlab.weights import MeanFamily, Monotonicity, WeightSequence, k_plus_1, make_weights

import oracles

SPEC = CounterexampleSpec(0.25, (1, 3, 5, 7))

# Independent values: literal Kaczmarz partial sums over the Walsh matrix
# (tests/oracles.py) for min|T| and the weak quasinorm, and exact rational
# arithmetic for the Hardy norm.
ORACLE_MIN_T = (3.1999999999417925, 17.3575757575814, 314.77602240885, 239.42547996520332)
ORACLE_WEAK = (3.1999999999417894, 17.357575757581383, 314.77602240884966, 2924.202018963692)
ORACLE_HARDY = 35.17749669584654


def test_spec_validation():
    with pytest.raises(ValueError):
        CounterexampleSpec(0.5, (1, 2))
    with pytest.raises(ValueError):
        CounterexampleSpec(0.25, (0, 2))
    assert not CounterexampleSpec(0.25, (3, 1)).strictly_increasing
    assert SPEC.log2_coefficient(1) == pytest.approx(9 - math.log2(3))


def test_validate_reference_alphas():
    rep = validate_alphas(SPEC)
    assert rep.ok and rep.first_failure() is None
    assert all(m > 0 for m in rep.margins_gap + rep.margins_ratio)
    assert rep.series_partial == pytest.approx(sum(a**-0.25 for a in SPEC.alphas))


@pytest.mark.parametrize(
    "alphas, reason",
    [((1, 2), "ratio"), ((1, 3, 3), "not strictly"), ((5, 3), "not strictly")],
)
def test_validate_rejects(alphas, reason):
    rep = validate_alphas(CounterexampleSpec(0.25, alphas))
    assert not rep.ok and reason in rep.first_failure()


def test_gap_condition_fails_for_adjacent_alphas_near_half():
    rep = validate_alphas(CounterexampleSpec(0.45, (1, 2)))
    assert rep.margins_gap[0] < 0
    assert "gap" in rep.first_failure()


def test_coefficients_match_literal_inner_products():
    f = build_counterexample(SPEC, 8)
    expected = expected_coefficients(SPEC, 8)
    assert np.max(np.abs(oracles.coefficients(f.values, "walsh") - expected)) <= 1e-10 * expected.max()
    assert np.max(np.abs(fourier_coeffs(f, "walsh").coeffs - expected)) <= 1e-10 * expected.max()
    assert expected[2] == expected[3] == 2.0**3
    assert expected[128] == pytest.approx(2.0**21 / 7)


@pytest.mark.parametrize("alpha", SPEC.alphas)
def test_atoms_are_extremal(alpha):
    a = atom(0.25, alpha, 8)
    rep = atom_reports(SPEC, 8)[SPEC.alphas.index(alpha)]
    assert rep and abs(rep.measured_sup - rep.bound) <= 1e-12 * rep.bound
    assert np.all(a.values[DyadicInterval(alpha, 0).cells(8).stop :] == 0)


def test_build_requires_resolution_and_valid_alphas():
    with pytest.raises(ValueError):
        build_counterexample(SPEC, 7)
    with pytest.raises(ValueError):
        build_counterexample(CounterexampleSpec(0.25, (1, 2)), 8)
    build_counterexample(CounterexampleSpec(0.25, (1, 2)), 8, validate=False)


@pytest.mark.parametrize("s", range(4))
def test_partial_sums_below_ceiling(s):
    f = build_counterexample(SPEC, 8)
    a = SPEC.alphas[s]
    for j in range(1 << a, (2 << a) + 1):
        assert partial_sum(f, j, "kaczmarz").sup_norm() <= partial_sum_ceiling(SPEC, s)


def test_bound_formula():
    assert paper_bound(0.25, 1) == pytest.approx(4 / 16)
    assert paper_bound(0.25, 3) == pytest.approx(2**6 / 48)


def test_reference_experiment_matches_oracle():
    report = divergence_experiment(SPEC, k_plus_1(), 8)
    assert report.monotonicity is Monotonicity.NON_DECREASING
    assert report.hypothesis == "non-decreasing"
    assert [r.n_k for r in report.rows] == [4, 10, 34, 130]
    for r, m, w in zip(report.rows, ORACLE_MIN_T, ORACLE_WEAK):
        assert r.min_abs_T == pytest.approx(m, rel=1e-9)
        assert r.weak_quasinorm == pytest.approx(w, rel=1e-9)
        assert r.hardy_norm == pytest.approx(ORACLE_HARDY, rel=1e-12)
        assert r.min_abs_T >= r.paper_bound
    ratios = [r.ratio for r in report.rows]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] / ratios[0] >= 10


def test_experiment_threads_identical():
    a = divergence_experiment(SPEC, k_plus_1(), 8).as_dicts()
    b = divergence_experiment(SPEC, k_plus_1(), 8, threads=4).as_dicts()
    assert a == b


def test_experiment_with_nonincreasing_weights_reports_constant():
    report = divergence_experiment(SPEC, make_weights(MeanFamily.power_v(0.7)), 8)
    assert report.hypothesis.startswith("non-increasing")
    assert report.cond1_constant > 0


def test_experiment_rejects_non_monotone_and_oversized():
    zigzag = WeightSequence(lambda k: 1.0 + (k % 2), label="zigzag")
    with pytest.raises(ValueError):
        divergence_experiment(SPEC, zigzag, 8)
    with pytest.raises(ValueError):
        divergence_experiment(CounterexampleSpec(0.25, (1, 3, 5, 7, 9)), k_plus_1(), 9)
