import json
import math

import pytest

import relia_spc as rs

GAPS = rs.embedded_dataset()

MLE_A = 33.40856434613823
MLE_B = 0.003089999857692649
MMLE_A = 32.78176480674049
MMLE_B = 0.00333945261943137


def rel(x, ref):
    return abs(x - ref) / abs(ref)


def test_embedded_dataset_shape():
    assert len(GAPS) == 30
    assert GAPS[23] == 176.06


def test_conversions_round_trip_exactly():
    times = rs.cumulative_from_gaps(GAPS)
    assert times[-1] == 738.68
    assert all(b > a for a, b in zip(times, times[1:]))
    assert rs.gaps_from_cumulative(times) == GAPS


def test_model_functions_are_consistent():
    assert rel(rs.mean_value(33.396342, 0.003962, 738.68), 31.60709258) < 1e-6
    assert rs.cdf(2.0, 0.5, math.log(2.0) / 0.5) == pytest.approx(0.5, abs=1e-12)
    p = 0.99865
    t = rs.quantile(33.396342, 0.003962, p)
    assert rs.cdf(33.396342, 0.003962, t) == pytest.approx(p, abs=1e-12)
    assert rs.intensity(33.396342, 0.003962, 0.0) == 33.396342 * 0.003962


def test_fit_matches_frozen_estimates():
    result = rs.fit(GAPS)
    assert result["method"] == "mle"
    assert result["converged"] is True
    assert rel(result["b_hat"], MLE_B) < 1e-9
    assert rel(result["a_hat"], MLE_A) < 1e-9
    assert len(result["covariance"]) == 4


def test_closed_form_fit():
    result = rs.fit(GAPS, method="mmle")
    assert result["iterations"] == 0
    assert rel(result["b_hat"], MMLE_B) < 1e-9
    assert rel(result["a_hat"], MMLE_A) < 1e-9


def test_control_limits_reference_values():
    limits = rs.control_limits(33.396342, 0.003962)
    low, center, high = limits["m"]
    assert rel(low, 0.0450850610) < 1e-6
    assert rel(center, 16.6981710073) < 1e-6
    assert rel(high, 33.3512569383) < 1e-6
    assert limits["p"] == (0.00135, 0.5, 0.99865)


def test_monitor_flags_published_alarms():
    for method in ("mle", "mmle"):
        report = rs.monitor(GAPS, method=method)
        assert report["method"] == method
        assert report["alarms"] == [10, 25]
        assert len(report["points"]) == 29
        assert all(p["signal"] != "above_upper" for p in report["points"])


def test_fixed_model_monitor():
    report = rs.monitor(GAPS, a=33.396342, b=0.003962)
    assert report["method"] == "fixed"
    assert "fit" not in report
    assert report["alarms"] == [10, 25]


def test_monitor_json_is_schema_tagged():
    doc = json.loads(rs.monitor_json(GAPS))
    assert doc["schema"] == "relia-spc/report/v1"
    assert doc["alarms"] == [10, 25]
    schema = json.loads(rs.report_schema())
    assert schema["$id"] == "relia-spc/report/v1"


def test_chart_svg_marks_alarms():
    svg = rs.chart_svg(GAPS)
    assert svg.startswith("<svg ")
    assert svg.count('class="alarm"') == 2


def test_simulation_is_deterministic():
    first = rs.simulate(40.0, 0.005, 500.0, seed=7)
    again = rs.simulate(40.0, 0.005, 500.0, seed=7)
    other = rs.simulate(40.0, 0.005, 500.0, seed=8)
    assert first == again
    assert first != other
    assert all(t > 0 for t in first)
    assert all(t <= 500.0 for t in first)
    assert sorted(first) == first


def test_run_cli_in_process():
    code, out, err = rs.run_cli(["monitor", "--input", "xie2002", "--emit", "json"])
    assert code == 0
    assert err == ""
    doc = json.loads(out)
    assert doc["alarms"] == [10, 25]

    code, out, err = rs.run_cli(["fit"], stdin_text="30.02\n")
    assert code == 2
    assert "at least 2" in err


def test_error_mapping():
    with pytest.raises(ValueError):
        rs.fit([1.0, -2.0])
    with pytest.raises(RuntimeError):
        rs.fit([float(k) for k in range(1, 11)], format="cumulative")
    with pytest.raises(ValueError):
        rs.control_limits(33.4, 0.004, probs=[0.9, 0.5, 0.1])
