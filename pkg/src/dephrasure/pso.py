"""Seeded, deterministic particle swarm optimization.

A gradient-free population minimizer: each particle carries a position
and a velocity; the velocity update mixes inertia with attraction
towards the particle's own best point and the swarm's best point.
Identical seeds give bit-identical trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PsoConfig:
    n_particles: int = 64
    c_inertia: float = 0.729
    c_self: float = 1.49445
    c_social: float = 1.49445
    max_iterations: int = 500
    bounds: tuple = ()  # per-dimension (lo, hi)
    seed: int = 0
    stall_tolerance: float = 1e-9
    stall_iterations: int = 50
    # the update rule as printed in some references repels from the
    # incumbents; the standard attractive signs are the default
    literal_signs: bool = False
    per_dimension_draws: bool = False

    def __post_init__(self):
        if self.n_particles < 2:
            raise ValueError("need at least 2 particles")
        if self.c_inertia < 0 or self.c_self < 0 or self.c_social < 0:
            raise ValueError("coefficients must be nonnegative")
        if self.max_iterations < 1:
            raise ValueError("need at least one iteration")
        for lo, hi in self.bounds:
            if not lo < hi:
                raise ValueError(f"degenerate bound ({lo}, {hi})")


@dataclass(frozen=True)
class PsoResult:
    best_position: np.ndarray
    best_value: float
    iterations_run: int
    evaluations: int


def pso_minimize(objective, dim, config, warm_starts=()):
    """Minimize ``objective`` over the bounded box in ``config.bounds``.

    Positions are clipped to the box after every step.  ``warm_starts``
    replace the first particles' initial positions (clipped to bounds).
    Terminates at max_iterations or when the incumbent improves by less
    than stall_tolerance over stall_iterations consecutive iterations.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if len(config.bounds) != dim:
        raise ValueError(f"need {dim} bounds, got {len(config.bounds)}")
    lo = np.array([b[0] for b in config.bounds])
    hi = np.array([b[1] for b in config.bounds])
    span = hi - lo
    rng = np.random.default_rng(config.seed)
    npart = config.n_particles

    pos = lo + rng.uniform(size=(npart, dim)) * span
    vel = rng.uniform(-1.0, 1.0, size=(npart, dim)) * span
    for i, w in enumerate(warm_starts[: npart]):
        pos[i] = np.clip(np.asarray(w, dtype=float), lo, hi)

    values = np.array([objective(x) for x in pos])
    evaluations = npart
    pbest_pos = pos.copy()
    pbest_val = values.copy()
    g_idx = int(np.argmin(pbest_val))
    gbest_pos = pbest_pos[g_idx].copy()
    gbest_val = float(pbest_val[g_idx])

    stall_anchor = gbest_val
    stall_count = 0
    iterations = 0
    for _ in range(config.max_iterations):
        iterations += 1
        draw_shape = (npart, dim) if config.per_dimension_draws else (npart, 1)
        u_self = rng.uniform(size=draw_shape)
        u_soc = rng.uniform(size=draw_shape)
        if config.literal_signs:
            attract_self = pos - pbest_pos
            attract_soc = pos - gbest_pos
        else:
            attract_self = pbest_pos - pos
            attract_soc = gbest_pos - pos
        vel = (
            config.c_inertia * vel
            + config.c_self * u_self * attract_self
            + config.c_social * u_soc * attract_soc
        )
        pos = np.clip(pos + vel, lo, hi)
        values = np.array([objective(x) for x in pos])
        evaluations += npart

        improved = values < pbest_val
        pbest_pos[improved] = pos[improved]
        pbest_val[improved] = values[improved]
        g_idx = int(np.argmin(pbest_val))
        if pbest_val[g_idx] < gbest_val:
            gbest_val = float(pbest_val[g_idx])
            gbest_pos = pbest_pos[g_idx].copy()

        stall_count += 1
        if stall_anchor - gbest_val > config.stall_tolerance:
            stall_anchor = gbest_val
            stall_count = 0
        elif stall_count >= config.stall_iterations:
            break

    return PsoResult(gbest_pos, gbest_val, iterations, evaluations)


def optimize_code_ci(p, q, n, parametrization="full", config=None):
    """Maximize the n-use coherent information over code states.

    ``full`` optimizes all real and imaginary amplitude components of a
    rank-2^n code (reference dimension 2^n, n <= 3); ``chi3`` optimizes
    the 4-coefficient non-diagonal 3-use family.  The raw parameter
    vector is normalized before evaluation; the all-zero vector is
    treated as an infeasible sentinel.  Returns (value, CodeState).
    """
    from .codes import (
        chi3_code,
        multiletter_ci,
        normalized_code,
        optimize_chi3,
        optimize_zdiag,
        repetition_ci_opt,
        repetition_code_state,
    )

    if parametrization == "chi3":
        if n != 3:
            raise ValueError("the chi3 parametrization is a 3-use family")
        seed = config.seed if config is not None else 0
        value, coeffs = optimize_chi3(p, q, seed=seed, config=config)
        return value, chi3_code(*coeffs)

    if parametrization != "full":
        raise ValueError(f"unknown parametrization {parametrization!r}")
    if n > 3:
        raise ValueError("full parametrization supports n <= 3")

    ref_dim = 2**n
    amp_len = ref_dim * 2**n
    dim = 2 * amp_len

    def objective(x):
        vec = x[:amp_len] + 1j * x[amp_len:]
        if np.linalg.norm(vec) == 0.0:
            return np.inf
        return -multiletter_ci(normalized_code(n, ref_dim, vec), p, q)

    if config is None:
        config = PsoConfig(bounds=((-1.0, 1.0),) * dim, max_iterations=150)
    if len(config.bounds) != dim:
        config = PsoConfig(
            n_particles=config.n_particles,
            c_inertia=config.c_inertia,
            c_self=config.c_self,
            c_social=config.c_social,
            max_iterations=config.max_iterations,
            bounds=((-1.0, 1.0),) * dim,
            seed=config.seed,
            stall_tolerance=config.stall_tolerance,
            stall_iterations=config.stall_iterations,
        )

    # good feasible points matter: every pure product input is a local
    # extremum with zero coherent information
    warm_starts = []
    _, rep_lam = repetition_ci_opt(p, q, n)
    rep = repetition_code_state(n, rep_lam)
    warm_starts.append(_embed_code(rep, ref_dim, n))
    _, zcoeffs = optimize_zdiag(p, q, n, seed=config.seed, n_starts=8)
    zvec = np.zeros(ref_dim * 2**n, dtype=complex)
    zvec[np.arange(2**n) * 2**n + np.arange(2**n)] = zcoeffs
    warm_starts.append(np.concatenate([zvec.real, zvec.imag]))

    result = pso_minimize(objective, dim, config, warm_starts=warm_starts)
    vec = result.best_position[:amp_len] + 1j * result.best_position[amp_len:]
    best_code = normalized_code(n, ref_dim, vec)
    return -result.best_value, best_code


def _embed_code(code, ref_dim, n):
    """Real parameter vector embedding a rank-2 code into ref_dim 2^n."""
    amps = np.zeros(ref_dim * 2**n, dtype=complex)
    small = code.amplitudes.reshape(code.ref_dim, 2**n)
    amps = amps.reshape(ref_dim, 2**n)
    amps[: code.ref_dim] = small
    amps = amps.reshape(-1)
    return np.concatenate([amps.real, amps.imag])
