"""Skewness measures: frozen population values, estimator oracles, identities."""

import io
import itertools
import json
import math

import numpy as np
import pytest
from scipy import stats

from exskew import (
    DegenerateInputError,
    Sample,
    bernoulli,
    build_report,
    exponential,
    gamma,
    l_skewness,
    lognormal,
    mean,
    moment_skewness,
    normal,
    omega_product,
    quantile_skewness,
    sample,
    scaled_skewness_function,
    skewness_function,
    skewness_function_by_cdf,
    student_t,
    tajuddin_s3,
    expectile_skewness,
    uniform,
)
from exskew.skewness import report_csv_rows, report_json_dict, write_report_csv


def test_moment_skewness_closed_forms():
    assert moment_skewness(gamma(0.1, 1.0)) == pytest.approx(2.0 / math.sqrt(0.1), abs=1e-12)
    assert moment_skewness(gamma(10.0, 1.0)) == pytest.approx(2.0 / math.sqrt(10.0), abs=1e-12)
    w = math.exp(2.25)
    assert moment_skewness(lognormal(0.0, 2.25)) == pytest.approx((w + 2.0) * math.sqrt(w - 1.0), abs=1e-10)
    assert moment_skewness(normal(3.0, 2.0)) == 0.0
    assert moment_skewness(student_t(5.0)) == 0.0
    assert moment_skewness(uniform(-1.0, 4.0)) == 0.0
    assert moment_skewness(exponential(2.0)) == pytest.approx(2.0, abs=1e-12)
    p = 0.3
    assert moment_skewness(bernoulli(p)) == pytest.approx((1.0 - 2.0 * p) / math.sqrt(p * (1.0 - p)), abs=1e-12)
    with pytest.raises(ValueError):
        moment_skewness(student_t(3.0))  # third moment undefined


def test_moment_skewness_sample():
    # {0,0,1}: m2 = 2/9, m3 = 2/27, ratio 1/sqrt(2)
    assert moment_skewness(Sample([0.0, 0.0, 1.0])) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-14)
    rng = np.random.Generator(np.random.Philox(13))
    for _ in range(25):
        x = rng.gamma(2.0, 1.0, size=int(rng.integers(3, 200)))
        assert moment_skewness(Sample(x)) == pytest.approx(stats.skew(x, bias=True), abs=1e-12)
    with pytest.raises(DegenerateInputError):
        moment_skewness(Sample([2.0, 2.0, 2.0]))


def test_quantile_skewness_values():
    assert quantile_skewness(exponential(1.0), 0.25) == pytest.approx(math.log(4.0 / 3.0) / math.log(3.0), abs=1e-12)
    # scale free
    assert quantile_skewness(exponential(5.0), 0.25) == pytest.approx(quantile_skewness(exponential(1.0), 0.25), abs=1e-12)
    assert quantile_skewness(normal(1.0, 2.0), 0.25) == pytest.approx(0.0, abs=1e-12)
    assert quantile_skewness(Sample(np.arange(1.0, 10.0)), 0.25) == 0.0
    with pytest.raises(ValueError):
        quantile_skewness(exponential(1.0), 0.5)
    with pytest.raises(DegenerateInputError):
        quantile_skewness(Sample([1.0, 1.0, 1.0, 5.0]), 0.25)  # zero interquantile range


def test_expectile_skewness_bernoulli_closed_form():
    for p in (0.05, 0.3, 0.5, 0.77):
        for alpha in (0.05, 0.2, 0.45):
            want = (2.0 * alpha - 1.0) * (2.0 * p - 1.0)
            assert expectile_skewness(bernoulli(p), alpha) == pytest.approx(want, abs=1e-9)


def test_expectile_skewness_bounds_are_sharp():
    laws = (gamma(0.1, 1.0), gamma(10.0, 1.0), lognormal(0.0, 2.25), exponential(1.0),
            bernoulli(0.01), bernoulli(0.99), uniform(0.0, 1.0))
    for alpha in (0.05, 0.25, 0.45):
        bound = 1.0 - 2.0 * alpha
        for law in laws:
            assert abs(expectile_skewness(law, alpha)) < bound, law.label
        # a two-point law with nearly all mass on one side approaches the bound
        assert expectile_skewness(bernoulli(1e-4), alpha) >= bound - 1e-3
        assert expectile_skewness(bernoulli(1.0 - 1e-4), alpha) <= -(bound - 1e-3)


def test_expectile_skewness_normalization():
    d = gamma(2.0, 1.0)
    raw = expectile_skewness(d, 0.25)
    assert expectile_skewness(d, 0.25, normalized=True) == pytest.approx(raw / 0.5, abs=1e-14)
    assert abs(expectile_skewness(d, 0.25, normalized=True)) < 1.0
    s = sample(d, 200, 5)
    raw = expectile_skewness(s, 0.2)
    assert expectile_skewness(s, 0.2, normalized=True) == pytest.approx(raw / 0.6, abs=1e-14)


def test_tajuddin_s3():
    assert tajuddin_s3(Sample([1.0, 2.0, 3.0])) == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert tajuddin_s3(exponential(1.0)) == pytest.approx(1.0 - 2.0 * math.exp(-1.0), abs=1e-12)
    assert tajuddin_s3(normal(0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)
    assert tajuddin_s3(bernoulli(0.3)) == pytest.approx(2.0 * 0.7 - 1.0, abs=1e-12)


def test_s2_limit_is_s3():
    for k in (0.5, 1.0, 2.0, 10.0):
        d = gamma(k, 1.0)
        assert expectile_skewness(d, 0.4999, normalized=True) == pytest.approx(tajuddin_s3(d), abs=1e-3)


def test_s2_flattens_near_half():
    h = 0.005
    for k in (0.5, 1.0, 2.0, 10.0):
        d = gamma(k, 1.0)
        slope = (expectile_skewness(d, 0.49 + h, normalized=True)
                 - expectile_skewness(d, 0.49 - h, normalized=True)) / (2.0 * h)
        assert abs(slope) <= 0.05


def test_l_skewness_population_values():
    assert l_skewness(exponential(1.0)) == pytest.approx(1.0 / 3.0, abs=2e-4)
    # derived independently by quadrature over order-statistic weights
    assert l_skewness(gamma(2.0, 1.0)) == pytest.approx(19.0 / 81.0, abs=2e-4)
    assert l_skewness(normal(0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)
    assert l_skewness(uniform(0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)
    assert l_skewness(student_t(5.0)) == pytest.approx(0.0, abs=1e-12)


def subset_l_skewness(x):
    """Brute-force U-statistic oracle: average over all ordered subsets."""
    xs = np.sort(x)
    l2 = np.mean([(b - a) / 2.0 for a, b in itertools.combinations(xs, 2)])
    l3 = np.mean([(c - 2.0 * b + a) / 3.0 for a, b, c in itertools.combinations(xs, 3)])
    return l3 / l2


def test_l_skewness_sample_matches_subset_oracle():
    rng = np.random.Generator(np.random.Philox(77))
    for _ in range(30):
        x = rng.gamma(rng.uniform(0.5, 4.0), 1.0, size=int(rng.integers(3, 12)))
        assert l_skewness(Sample(x)) == pytest.approx(subset_l_skewness(x), abs=1e-12)
    with pytest.raises(ValueError):
        l_skewness(Sample([1.0, 2.0]))
    with pytest.raises(DegenerateInputError):
        l_skewness(Sample([4.0, 4.0, 4.0]))


def test_skewness_function_worked_values():
    assert skewness_function(exponential(1.0), 1.0) == pytest.approx(math.exp(-2.0), abs=1e-9)
    assert skewness_function(normal(0.0, 1.0), 0.7) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        skewness_function(exponential(1.0), 0.0)
    with pytest.raises(ValueError):
        skewness_function(exponential(1.0), -1.0)


def test_skewness_function_dual_representation():
    for d in (exponential(1.0), gamma(2.0, 1.5), normal(0.0, 1.0), lognormal(0.0, 1.0)):
        for t in np.arange(0.25, 3.01, 0.25):
            assert skewness_function(d, float(t)) == pytest.approx(
                skewness_function_by_cdf(d, float(t)), abs=1e-8), (d.label, t)


def test_skewness_function_bounded_and_vanishing():
    for d in (exponential(1.0), gamma(0.5, 1.0), lognormal(0.0, 1.0), uniform(0.0, 1.0)):
        for t in (0.1, 0.5, 1.0, 3.0, 10.0):
            assert abs(skewness_function(d, t)) <= 1.0, d.label
        assert abs(skewness_function(d, 50.0)) <= 1e-4, d.label


def test_skewness_function_sign_and_reflection():
    # right-skewed exponential stays positive; reflecting the sample negates
    for t in (0.25, 0.5, 1.0, 2.0):
        assert skewness_function(exponential(1.0), t) > 0.0
    x = sample(gamma(2.0, 1.0), 300, 21).values
    for t in (0.3, 0.8, 1.6):
        left = skewness_function(Sample(-x), t)
        right = -skewness_function(Sample(x), t)
        assert left == pytest.approx(right, abs=1e-12)


def test_scaled_skewness_function_affine_invariant():
    for t in (0.25, 0.5, 1.0, 2.0):
        assert scaled_skewness_function(normal(3.5, 2.5), t) == pytest.approx(
            scaled_skewness_function(normal(0.0, 1.0), t), abs=1e-9)
        assert scaled_skewness_function(exponential(0.25), t) == pytest.approx(
            scaled_skewness_function(exponential(1.0), t), abs=1e-9)
    x = sample(gamma(2.0, 1.0), 400, 12).values
    for t in (0.25, 1.0, 2.0):
        assert scaled_skewness_function(Sample(2.5 * x - 7.0), t) == pytest.approx(
            scaled_skewness_function(Sample(x), t), abs=1e-9)


def test_skewness_function_scale_relation():
    # S for cX at t equals S for X at t/c
    d1, d2 = exponential(1.0), exponential(0.5)  # X2 = 2 X1
    for t in (0.4, 1.0, 2.4):
        assert skewness_function(d2, t) == pytest.approx(skewness_function(d1, t / 2.0), abs=1e-10)


def test_omega_product_characterizes_sign():
    for t in (0.25, 0.5, 0.9):
        assert omega_product(normal(0.0, 1.0), t) == pytest.approx(1.0, abs=1e-12)
        assert omega_product(exponential(1.0), t) > 1.0
        agree = (skewness_function(gamma(3.0, 1.0), t) >= 0.0) == (omega_product(gamma(3.0, 1.0), t) >= 1.0)
        assert agree
    with pytest.raises(ValueError):
        omega_product(exponential(1.0), 0.0)
    with pytest.raises(ValueError):
        omega_product(exponential(1.0), 1.0)  # mu - t hits the support edge


def test_build_report_distribution_source():
    rep = build_report(gamma(2.0, 1.0), alphas=(0.1, 0.25), ts=(0.5, 1.0))
    assert rep.gamma_m == pytest.approx(2.0 / math.sqrt(2.0), abs=1e-12)
    assert set(rep.b2) == {0.1, 0.25} and set(rep.s2) == {0.1, 0.25}
    assert set(rep.s_function) == {0.5, 1.0}
    for a in (0.1, 0.25):
        assert rep.s2_raw[a] == pytest.approx(rep.s2[a] * (1.0 - 2.0 * a), abs=1e-14)
    assert rep.tau3 == pytest.approx(19.0 / 81.0, abs=2e-4)
    assert rep.notes == {}


def test_build_report_undefined_measures_become_notes():
    rep = build_report(student_t(2.5), alphas=(0.25,), ts=(1.0,))
    assert rep.gamma_m is None
    assert "gamma_m" in rep.notes
    rep2 = build_report(bernoulli(0.3), alphas=(0.25,), ts=(0.5,))
    assert rep2.s3 == pytest.approx(0.4, abs=1e-12)


def test_build_report_degenerate_sample_raises():
    with pytest.raises(DegenerateInputError):
        build_report(Sample([1.0, 1.0, 1.0]), alphas=(0.25,), ts=(1.0,))


def test_report_serialization():
    rep = build_report(sample(exponential(1.0), 50, 4242), alphas=(0.25,), ts=(0.5, 1.0))
    buf = io.StringIO()
    write_report_csv(rep, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "measure,parameter,value"
    rows = report_csv_rows(rep)
    assert rows[0][0] == "gamma_m"
    measures = {r[0] for r in rows}
    assert {"gamma_m", "b2", "s2_raw", "s2", "s3", "tau3", "s_function", "s_function_scaled"} <= measures
    doc = report_json_dict(rep)
    text = json.dumps(doc)
    back = json.loads(text)
    # repr-faithful floats survive a JSON round trip
    assert back["s2"]["0.25"] == rep.s2[0.25]
    assert back["gamma_m"] == rep.gamma_m
