import numpy as np
import pytest

from dephrasure.antideg import (
    NotAntidegradableHere,
    antidegrading_map,
    usd_povm,
    verify_antidegradable,
)
from dephrasure.channel import (
    complementary_kraus,
    dephrasure_kraus,
    phi_states,
    region_k,
)
from dephrasure.qinfo import apply_kraus, choi_of, compose_kraus


def test_usd_povm_completeness_and_positivity():
    for p in (0.05, 0.2, 0.4):
        pi0, pi1, pie = usd_povm(p)
        assert np.allclose(pi0 + pi1 + pie, np.eye(2), atol=1e-12)
        for pi in (pi0, pi1, pie):
            assert np.min(np.linalg.eigvalsh(pi)) >= -1e-12


def test_usd_povm_unambiguous():
    # outcome x never fires on phi^(1-x); failure probability is 1 - 2p
    for p in (0.1, 0.3):
        w0, w1 = phi_states(p)
        pi0, pi1, pie = usd_povm(p)
        assert abs(w1.conj() @ pi0 @ w1) < 1e-12
        assert abs(w0.conj() @ pi1 @ w0) < 1e-12
        fail0 = (w0.conj() @ pie @ w0).real
        fail1 = (w1.conj() @ pie @ w1).real
        assert fail0 == pytest.approx(1 - 2 * p, abs=1e-12)
        assert fail1 == pytest.approx(1 - 2 * p, abs=1e-12)


def test_usd_success_probability():
    p = 0.2
    w0, _ = phi_states(p)
    pi0, _, _ = usd_povm(p)
    assert (w0.conj() @ pi0 @ w0).real == pytest.approx(2 * p, abs=1e-12)


def test_x_param_value():
    report = verify_antidegradable(0.25, 0.4)
    assert report.map_kind == "usd"
    assert report.x_param == pytest.approx(1 - 0.6 * 0.5 / 0.4, abs=1e-12)
    assert report.x_param == pytest.approx(0.25, abs=1e-12)


def test_composition_recovers_channel_usd_region():
    rng = np.random.default_rng(1)
    for _ in range(10):
        p = float(rng.uniform(0.01, 0.49))
        q = float(rng.uniform(region_k(p), 0.5))
        amap = antidegrading_map(p, q)
        composed = compose_kraus(amap, complementary_kraus(p, q))
        assert np.allclose(
            choi_of(composed), choi_of(dephrasure_kraus(p, q)), atol=1e-10
        )


def test_composition_recovers_channel_trivial_region():
    for p in (0.0, 0.2, 0.5):
        for q in (0.5, 0.7, 0.9):
            amap = antidegrading_map(p, q)
            composed = compose_kraus(amap, complementary_kraus(p, q))
            assert np.allclose(
                choi_of(composed), choi_of(dephrasure_kraus(p, q)), atol=1e-10
            )


def test_antidegrading_map_action():
    p, q = 0.1, 0.47
    amap = antidegrading_map(p, q)
    rho = np.array([[0.6, 0.2], [0.2, 0.4]], dtype=complex)
    env = apply_kraus(complementary_kraus(p, q), rho)
    out = apply_kraus(amap, env)
    expect = apply_kraus(dephrasure_kraus(p, q), rho)
    assert np.allclose(out, expect, atol=1e-10)


def test_raises_below_boundary():
    with pytest.raises(NotAntidegradableHere):
        antidegrading_map(0.25, 0.2)  # k(0.25) = 1/3
    with pytest.raises(NotAntidegradableHere):
        antidegrading_map(0.1, 0.0)


def test_verify_reports_cp_failure_below_boundary():
    report = verify_antidegradable(0.25, 0.25)
    assert not report.antidegradable
    assert report.x_param < 0
    assert report.cp_min_eigenvalue < -1e-6
    # the composition identity itself still holds algebraically
    assert report.composition_residual < 1e-10


def test_verify_boundary_is_cp_marginal():
    p = 0.2
    q = region_k(p)
    report = verify_antidegradable(p, q)
    assert report.antidegradable
    assert report.x_param == pytest.approx(0.0, abs=1e-12)


def test_report_fields_on_grid():
    for p in (0.05, 0.25, 0.45):
        k = region_k(p)
        for q in (k + 0.005, (k + 0.5) / 2, 0.5):
            report = verify_antidegradable(p, q)
            assert report.antidegradable
            assert report.composition_residual < 1e-10
            assert report.cp_min_eigenvalue > -1e-10
