import numpy as np
import pytest

from dephrasure.codes import multiletter_ci, repetition_ci_opt
from dephrasure.pso import PsoConfig, optimize_code_ci, pso_minimize


def _sphere(x):
    return float(np.sum(x**2))


def test_sphere_converges():
    config = PsoConfig(bounds=((-5.0, 5.0),) * 4, seed=1)
    res = pso_minimize(_sphere, 4, config)
    assert res.best_value < 1e-6
    assert np.all(np.abs(res.best_position) < 1e-2)


def test_shifted_sphere():
    target = np.array([1.0, -2.0, 0.5])
    config = PsoConfig(bounds=((-5.0, 5.0),) * 3, seed=2)
    res = pso_minimize(lambda x: _sphere(x - target), 3, config)
    assert res.best_value < 1e-6
    assert np.allclose(res.best_position, target, atol=1e-2)


def test_deterministic_per_seed():
    config = PsoConfig(bounds=((-5.0, 5.0),) * 4, seed=7, max_iterations=50)
    r1 = pso_minimize(_sphere, 4, config)
    r2 = pso_minimize(_sphere, 4, config)
    assert r1.best_value == r2.best_value
    assert np.array_equal(r1.best_position, r2.best_position)
    r3 = pso_minimize(_sphere, 4, PsoConfig(bounds=((-5.0, 5.0),) * 4, seed=8,
                                            max_iterations=50))
    assert r3.best_value != r1.best_value


def test_positions_respect_bounds():
    bounds = ((0.5, 2.0),) * 3
    config = PsoConfig(bounds=bounds, seed=3, max_iterations=40)
    res = pso_minimize(_sphere, 3, config)
    assert np.all(res.best_position >= 0.5 - 1e-12)
    assert np.all(res.best_position <= 2.0 + 1e-12)
    # constrained optimum sits on the boundary
    assert res.best_value == pytest.approx(3 * 0.25, abs=1e-6)


def test_warm_start_is_kept_when_optimal():
    config = PsoConfig(bounds=((-5.0, 5.0),) * 4, seed=4, max_iterations=5)
    res = pso_minimize(_sphere, 4, config, warm_starts=[np.zeros(4)])
    assert res.best_value == 0.0


def test_stall_stops_early():
    config = PsoConfig(
        bounds=((-5.0, 5.0),) * 2,
        seed=5,
        max_iterations=500,
        stall_iterations=20,
        stall_tolerance=1e-12,
    )
    res = pso_minimize(_sphere, 2, config)
    assert res.iterations_run < 500


def test_config_validation():
    with pytest.raises(ValueError):
        PsoConfig(n_particles=0, bounds=((-1, 1),))
    with pytest.raises(ValueError):
        PsoConfig(bounds=((1.0, -1.0),))
    with pytest.raises(ValueError):
        PsoConfig(bounds=((-1, 1),), max_iterations=0)


def test_variant_flags_still_converge():
    config = PsoConfig(
        bounds=((-5.0, 5.0),) * 3, seed=6, per_dimension_draws=True
    )
    res = pso_minimize(_sphere, 3, config)
    assert res.best_value < 1e-6


def test_optimize_code_ci_n2_recovers_repetition():
    value, code = optimize_code_ci(0.11, 0.33, 2)
    rep, _ = repetition_ci_opt(0.11, 0.33, 2)
    assert value >= rep - 1e-6
    assert code.n_uses == 2
    assert multiletter_ci(code, 0.11, 0.33) == pytest.approx(value, abs=1e-8)


def test_optimize_code_ci_chi3_requires_n3():
    with pytest.raises(ValueError):
        optimize_code_ci(0.1, 0.3, 2, parametrization="chi3")


def test_optimize_code_ci_chi3_runs():
    value, code = optimize_code_ci(
        0.11, 0.33, 3, parametrization="chi3",
        config=PsoConfig(bounds=((-1.0, 1.0),) * 8, max_iterations=80, seed=0),
    )
    assert code.n_uses == 3
    assert code.ref_dim == 4
    assert multiletter_ci(code, 0.11, 0.33) == pytest.approx(value, abs=1e-8)
