import math

import numpy as np
import pytest

import qdc

GHZ3 = "gghz:n=3,x=0.7071067811865476"


def test_version():
    assert qdc.__version__ == "0.1.0"


def test_noiseless_ghz_reaches_three_bits():
    rec = qdc.capacity(GHZ3, "dephasing:p=0")
    assert rec["capacity_bits"] == pytest.approx(3.0, abs=1e-9)
    assert rec["dense_codeable"] is True
    assert rec["n_senders"] == 2


def test_markovian_bell_above_threshold_is_classical():
    rec = qdc.capacity("bell", "depolarizing:p=0.19", senders=1)
    assert rec["dense_codeable"] is False
    assert rec["capacity_bits"] == pytest.approx(1.0, abs=1e-12)


def test_two_receiver_ghz_bound():
    rec = qdc.capacity("gghz:n=4,x=0.6", "dephasing:alpha=0.5,p=0.3", receivers=2)
    assert rec["capacity_bits"] == pytest.approx(qdc.gghz_two_receiver_bound(0.6), abs=1e-6)


def test_closed_forms():
    alpha = 0.5
    pc = qdc.pc_closed_form(alpha)
    assert pc == pytest.approx((1 + alpha - math.sqrt(1 + alpha * alpha)) / (2 * alpha), abs=1e-12)
    assert round(qdc.pa_closed_form(0.5), 2) == 0.44
    assert qdc.bell_depolarizing_threshold(0.0) == pytest.approx(0.189, abs=1e-3)


def test_density_matrix_and_entropy():
    rho = qdc.density_matrix(GHZ3)
    assert rho.shape == (8, 8)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert qdc.entropy(rho) == pytest.approx(0.0, abs=1e-9)
    assert qdc.entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)


def test_quench_is_reproducible():
    kw = dict(realizations=100, seed=7)
    a = qdc.quench(GHZ3, "dephasing:alpha=0.3,p=0.1,eps=0.5", **kw)
    b = qdc.quench(GHZ3, "dephasing:alpha=0.3,p=0.1,eps=0.5", threads=2, **kw)
    assert a["capacity_bits"] == b["capacity_bits"]
    assert a["realizations"] == 100
    assert a["std_error"] > 0


def test_critical_strengths():
    rec = qdc.critical("w:n=3", "dephasing:alpha=0.3", with_pa=False)
    assert rec["p_c"] == pytest.approx(0.10, abs=0.01)


def test_validation_suite_passes():
    reports = qdc.validate()
    assert reports
    assert all(r["pass"] for r in reports)


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        qdc.capacity("nosuchstate", "dephasing:p=0")
    with pytest.raises(ValueError):
        qdc.capacity(GHZ3, "dephasing:p=0.1,eps=0.5")
