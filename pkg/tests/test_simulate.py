"""Monte Carlo harness: determinism, accounting identities, study properties."""

import io
import json
import math

import numpy as np
import pytest

from exskew import (
    ExperimentConfig,
    MeasureSpec,
    bernoulli,
    exponential,
    gamma,
    lognormal,
    normal,
    run,
    student_t,
    theory_curves,
    true_value,
)
from exskew.simulate import TABLE_CSV_HEADER, THEORY_CSV_HEADER, write_theory_csv


def table_csv(table):
    buf = io.StringIO()
    table.to_csv(buf)
    return buf.getvalue()


def test_measure_spec_validation():
    assert MeasureSpec("s2", 0.25).key == "s2(0.25)"
    assert MeasureSpec("gamma_m").key == "gamma_m"
    with pytest.raises(ValueError):
        MeasureSpec("s2")  # alpha required
    with pytest.raises(ValueError):
        MeasureSpec("gamma_m", 0.25)  # alpha meaningless
    with pytest.raises(ValueError):
        MeasureSpec("b2", 0.5)
    with pytest.raises(ValueError):
        MeasureSpec("kurtosis")


def test_config_validation():
    m = (MeasureSpec("s2", 0.25),)
    with pytest.raises(ValueError):
        ExperimentConfig(gamma(2.0, 1.0), m, replications=0)
    with pytest.raises(ValueError):
        ExperimentConfig(gamma(2.0, 1.0), m, sample_sizes=(1,))
    with pytest.raises(ValueError):
        ExperimentConfig(gamma(2.0, 1.0), m, master_seed=-1)
    with pytest.raises(ValueError):
        ExperimentConfig(gamma(2.0, 1.0), m, master_seed=1 << 64)
    with pytest.raises(ValueError):
        ExperimentConfig(gamma(2.0, 1.0), ())


def test_config_from_json():
    doc = {"family": "gamma", "params": {"shape": 2.0, "scale": 1.0},
           "measures": [{"measure": "s2", "alpha": 0.25}, {"measure": "gamma_m"}],
           "ns": [20, 50], "reps": 10, "seed": 3}
    cfg = ExperimentConfig.from_json_dict(doc)
    assert cfg.distribution == gamma(2.0, 1.0)
    assert cfg.sample_sizes == (20, 50) and cfg.replications == 10 and cfg.master_seed == 3
    assert tuple(m.key for m in cfg.measures) == ("s2(0.25)", "gamma_m")
    with pytest.raises(ValueError):
        ExperimentConfig.from_json_dict({**doc, "family": "cauchy"})
    with pytest.raises(ValueError):
        ExperimentConfig.from_json_dict({**doc, "measures": [{"measure": "s2"}]})
    with pytest.raises(ValueError):
        ExperimentConfig.from_json_dict({**doc, "seed": -2})


def test_config_from_json_file_errors(tmp_path):
    good = tmp_path / "cfg.json"
    good.write_text(json.dumps({"family": "exponential", "params": {"rate": 1.0},
                                "measures": [{"measure": "s3"}], "ns": [20],
                                "reps": 5, "seed": 0}))
    cfg = ExperimentConfig.from_json_file(good)
    assert cfg.distribution == exponential(1.0)
    bad = tmp_path / "bad.json"
    bad.write_text('{"family": "exponential",\n  "params": oops}\n')
    with pytest.raises(ValueError, match="line 2"):
        ExperimentConfig.from_json_file(bad)


def test_run_is_deterministic():
    cfg = ExperimentConfig(gamma(2.0, 1.0), (MeasureSpec("s2", 0.25), MeasureSpec("gamma_m")),
                           sample_sizes=(20, 50), replications=50, master_seed=7)
    assert table_csv(run(cfg)) == table_csv(run(cfg))


def test_run_master_seed_matters():
    m = (MeasureSpec("s2", 0.25),)
    t1 = run(ExperimentConfig(gamma(2.0, 1.0), m, sample_sizes=(20,), replications=40, master_seed=1))
    t2 = run(ExperimentConfig(gamma(2.0, 1.0), m, sample_sizes=(20,), replications=40, master_seed=2))
    assert table_csv(t1) != table_csv(t2)


def test_run_schedule_permutation_invariance():
    m = (MeasureSpec("s2", 0.25), MeasureSpec("s3"))
    a = run(ExperimentConfig(gamma(2.0, 1.0), m, sample_sizes=(20, 50), replications=30, master_seed=5))
    b = run(ExperimentConfig(gamma(2.0, 1.0), m[::-1], sample_sizes=(50, 20), replications=30, master_seed=5))
    rows_a = {(r.measure, r.n): (r.sbias, r.svar, r.smse) for r in a.rows}
    rows_b = {(r.measure, r.n): (r.sbias, r.svar, r.smse) for r in b.rows}
    assert rows_a == rows_b


def test_single_replication_collapses_variance():
    cfg = ExperimentConfig(gamma(2.0, 1.0), (MeasureSpec("s2", 0.25),),
                           sample_sizes=(30,), replications=1, master_seed=11)
    row = run(cfg).rows[0]
    assert row.svar == 0.0
    assert row.smse == pytest.approx(row.sbias ** 2, rel=1e-12)


def test_mse_reconciliation_and_var_share():
    cfg = ExperimentConfig(lognormal(0.0, 1.0),
                           (MeasureSpec("gamma_m"), MeasureSpec("b2", 0.25), MeasureSpec("s2", 0.25)),
                           sample_sizes=(20, 100), replications=300, master_seed=13)
    table = run(cfg)
    assert table.valid
    for row in table.rows:
        assert row.smse == pytest.approx(row.svar + row.sbias ** 2, rel=1e-10)
        assert 0.0 <= row.var_share <= 1.0
        assert row.failures == 0


def test_true_values_and_symmetry_snap():
    assert true_value(gamma(0.1, 1.0), "gamma_m") == pytest.approx(6.3245553203, abs=1e-9)
    assert true_value(student_t(5.0), "s2", 0.25) == 0.0
    assert true_value(normal(0.0, 1.0), "b2", 0.25) == 0.0
    assert true_value(bernoulli(0.05), "s2", 0.25) == pytest.approx(0.9, abs=1e-12)
    with pytest.raises(ValueError):
        true_value(gamma(2.0, 1.0), "kurtosis")


def test_skipped_measures_are_reported():
    cfg = ExperimentConfig(student_t(2.5), (MeasureSpec("gamma_m"), MeasureSpec("s2", 0.25)),
                           sample_sizes=(20,), replications=20, master_seed=1)
    table = run(cfg)
    assert "gamma_m" in table.skipped
    assert "df" in table.skipped["gamma_m"]
    assert [r.measure for r in table.rows] == ["s2"]
    assert table.valid


def test_failure_accounting_marks_table_invalid():
    # constant draws are frequent for bernoulli(0.05) at n=5
    cfg = ExperimentConfig(bernoulli(0.05), (MeasureSpec("s2", 0.25),),
                           sample_sizes=(5,), replications=200, master_seed=9)
    table = run(cfg)
    row = table.rows[0]
    assert row.failures > 2
    assert not table.valid
    assert math.isfinite(row.sbias)  # aggregates computed over the successes


def test_table_serialization():
    cfg = ExperimentConfig(gamma(2.0, 1.0), (MeasureSpec("s2", 0.25),),
                           sample_sizes=(20,), replications=25, master_seed=4)
    table = run(cfg)
    text = table_csv(table)
    lines = text.splitlines()
    assert lines[0] == ",".join(TABLE_CSV_HEADER) == "measure,alpha,n,sbias,svar,smse,var_share,failures"
    assert len(lines) == 2
    doc = table.to_json_dict()
    back = json.loads(json.dumps(doc))
    assert back["distribution"] == "gamma:shape=2,scale=1"
    assert back["seed"] == 4 and back["valid"] is True
    assert back["rows"][0]["sbias"] == table.rows[0].sbias


def test_bias_decay_over_study_distributions():
    # skewed targets: standardized bias strictly shrinks from n=20 to n=1e4;
    # symmetric targets: the raw finite-sample bias stays negligible
    # relative to the estimator's spread (even order statistics, for
    # example, bias the n=20 quantile skewness by a few percent)
    measures = (MeasureSpec("gamma_m"), MeasureSpec("b2", 0.25),
                MeasureSpec("s2", 0.25), MeasureSpec("s3"))
    reps = 2000
    study = (gamma(0.1, 1.0), gamma(10.0, 1.0), lognormal(0.0, 2.25),
             lognormal(0.0, 0.01), student_t(5.0), normal(0.0, 1.0))
    for dist in study:
        cfg = ExperimentConfig(dist, measures, sample_sizes=(20, 10_000),
                               replications=reps, master_seed=404)
        table = run(cfg)
        cells = {}
        for row in table.rows:
            cells.setdefault(row.measure, {})[row.n] = row
        for measure, at in cells.items():
            standardized = table.true_values[
                measure + ("(0.25)" if measure in ("b2", "s2") else "")] != 0.0
            if standardized:
                assert abs(at[10_000].sbias) < abs(at[20].sbias), (dist.label, measure)
            else:
                for n in (20, 10_000):
                    spread = math.sqrt(at[n].svar)
                    assert abs(at[n].sbias) <= 0.25 * spread, (dist.label, measure, n)


def test_theory_curves_shape_and_bounds():
    alphas = np.linspace(0.05, 0.45, 9)
    pts = theory_curves("gamma", (0.1, 1.0, 10.0), alphas)
    assert len(pts) == 27
    by_param = {}
    for p in pts:
        by_param.setdefault(p.param, []).append(p)
        assert p.s2_raw < 1.0 - 2.0 * p.alpha  # strictly below the diagonal
        assert p.s2 == pytest.approx(p.s2_raw / (1.0 - 2.0 * p.alpha), rel=1e-12)
    for param, series in by_param.items():
        b2s = [q.b2 for q in series]
        raws = [q.s2_raw for q in series]
        assert np.all(np.diff(b2s) < 0.0), param  # decreasing in alpha
        assert np.all(np.diff(raws) < 0.0), param
    # decreasing in the shape parameter at fixed alpha
    for i, alpha in enumerate(alphas):
        col = [by_param[k][i] for k in (0.1, 1.0, 10.0)]
        assert col[0].b2 > col[1].b2 > col[2].b2
        assert col[0].s2_raw > col[1].s2_raw > col[2].s2_raw


def test_theory_curves_exponential_scale_free():
    alphas = (0.1, 0.25, 0.4)
    a = theory_curves("exponential", (0.5, 1.0, 2.0), alphas)
    by_alpha = {}
    for p in a:
        by_alpha.setdefault(p.alpha, set()).add(round(p.s2_raw, 12))
    for alpha, vals in by_alpha.items():
        assert len(vals) == 1  # rate is a pure scale parameter


def test_theory_curves_validation_and_csv():
    with pytest.raises(ValueError):
        theory_curves("normal", (1.0,), (0.25,))  # symmetric family has flat curves
    with pytest.raises(ValueError):
        theory_curves("gamma", (), (0.25,))
    with pytest.raises(ValueError):
        theory_curves("gamma", (1.0,), (0.75,))
    pts = theory_curves("lognormal", (0.25, 1.0), (0.1, 0.25))
    buf = io.StringIO()
    write_theory_csv(pts, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(THEORY_CSV_HEADER) == "family,param,alpha,b2,s2_raw,s2"
    assert len(lines) == 5
