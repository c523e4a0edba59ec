"""n-use codes for the dephrasure channel and their coherent information.

The n-use output is decomposed into orthogonal blocks keyed by the
binary erasure pattern: distinct patterns give orthogonal outputs, so
the joint entropy splits into a weighted sum of small block entropies
plus a classical term that cancels between the two sums of the coherent
information and is therefore omitted analytically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import minimize

from .channel import _check_prob, dephrasure_kraus, maximize_over_weights
from .qinfo import (
    binary_entropy,
    shannon_entropy,
    tensor_power_kraus,
    von_neumann_entropy,
)

DEFAULT_N_LIMIT = 6
BRUTE_FORCE_N_LIMIT = 3


@dataclass(frozen=True)
class CodeState:
    """Pure bipartite reference (x) input state for n channel uses."""

    n_uses: int
    ref_dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_uses < 1 or self.ref_dim < 1:
            raise ValueError("n_uses and ref_dim must be positive")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        expected = self.ref_dim * 2**self.n_uses
        if amps.size != expected:
            raise ValueError(
                f"amplitude vector length {amps.size} != "
                f"ref_dim * 2^n = {expected}"
            )
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ValueError("amplitude vector is zero")
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm} is not 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def input_state(self):
        """Reduced state of the n input qubits (reference traced out)."""
        mat = self.amplitudes.reshape(self.ref_dim, 2**self.n_uses)
        return mat.conj().T @ mat


def normalized_code(n_uses, ref_dim, amplitudes):
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ValueError("amplitude vector is zero")
    return CodeState(n_uses, ref_dim, amps / norm)


@dataclass(frozen=True)
class ErasurePatternBlock:
    """One branch of the n-use output for a fixed erasure pattern."""

    pattern: str  # '1' marks an erased position
    weight: float
    block: np.ndarray  # state on ref_dim * 2^(n - |pattern|)


def u_value(lam, p, n):
    """u = sqrt(1 - 4 lam (1-lam) (1 - (1-2p)^(2n)))."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda = {lam} outside [0, 1]")
    p = _check_prob(p, "p", hi=0.5)
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(np.sqrt(max(0.0, 1.0 - 4 * lam * (1 - lam) * _c_value(p, n))))


def _c_value(p, n):
    """c = 1 - (1-2p)^(2n), computed without cancellation for small p."""
    if p >= 0.5:
        return 1.0
    return -np.expm1(2 * n * np.log1p(-2 * p))


def _rep_small_eig(lam, p, n):
    """(1-u)/2 = 2 lam (1-lam) c / (1+u), stable for tiny lam."""
    c = _c_value(p, n)
    w = 4 * lam * (1 - lam) * c
    u = np.sqrt(np.clip(1.0 - w, 0.0, None))
    return w / (2 * (1 + u))


def repetition_ci(p, q, n, lam):
    """Closed-form coherent information of the weighted n-repetition code.

    ((1-q)^n - q^n) h(lambda) - (1-q)^n h((1-u)/2); the second term is
    the entropy of the dephased two-dimensional purification block.
    """
    p = _check_prob(p, "p", hi=0.5)
    q = _check_prob(q, "q")
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 0) or np.any(lam > 1):
        raise ValueError("lambda outside [0, 1]")
    s = _rep_small_eig(lam, p, n)
    out = ((1 - q) ** n - q**n) * binary_entropy(lam) - (
        1 - q
    ) ** n * binary_entropy(s)
    return float(out) if np.ndim(out) == 0 else out


def repetition_ci_opt(p, q, n):
    """Maximize repetition_ci over lambda in [0, 1/2].

    Returns (value, lambda_star).  The scan grid mixes a linear 1e-4
    grid with log-spaced points down to 1e-300: close to the g(p)
    threshold the positive window lives at exponentially small lambda.
    """
    value, lam = maximize_over_weights(
        lambda lam: repetition_ci(p, q, n, lam), 1e-4, 1e-12
    )
    return value, lam


def threshold_f(p, lam, n):
    """The ratio h((1-u)/2) / h(lambda) governing the repetition threshold.

    Monotonically decreasing to 1 - (1-2p)^(2n) as lambda -> 0.
    """
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise ValueError("threshold_f requires lambda in (0, 1)")
    p = _check_prob(p, "p", hi=0.5)
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(binary_entropy(_rep_small_eig(lam, p, n)) / binary_entropy(lam))


def repetition_code_state(n, lam):
    """CodeState form sqrt(lam)|0..0>|0..0> + sqrt(1-lam)|1..1>|1..1>."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda outside [0, 1]")
    amps = np.zeros(2 ** (n + 1), dtype=complex)
    amps[0] = np.sqrt(lam)
    amps[-1] = np.sqrt(1 - lam)
    return CodeState(n, 2, amps)


def zdiag_code(schmidt):
    """Z-diagonal code sum_s c_s |s>|s> from 2^n Schmidt coefficients."""
    coeffs = np.asarray(schmidt, dtype=float).reshape(-1)
    if np.any(coeffs < 0):
        raise ValueError("Schmidt coefficients must be nonnegative")
    n = int(np.log2(coeffs.size))
    if 2**n != coeffs.size:
        raise ValueError("Schmidt vector length must be a power of 2")
    dim = coeffs.size
    amps = np.zeros(dim * dim, dtype=complex)
    amps[np.arange(dim) * dim + np.arange(dim)] = coeffs
    return normalized_code(n, dim, amps)


def chi3_code(c1, d1, c2, d2):
    """The 5-qubit non-diagonal 3-use code.

    |0000>|psi1> + |1111>|psi1> + |0101>|psi2> + |1010>|X psi2> with
    psi_i = c_i|0> + d_i|1>; the three right-most qubits are the channel
    inputs, the two left-most qubits the reference (dimension 4).
    """
    psi1 = np.array([c1, d1], dtype=complex)
    psi2 = np.array([c2, d2], dtype=complex)
    xpsi2 = psi2[::-1]
    amps = np.zeros(4 * 8, dtype=complex)

    def put(bits, psi):
        # bits: the four leading qubits; the fifth qubit carries psi
        idx = int("".join(map(str, bits)), 2)
        amps[2 * idx] += psi[0]
        amps[2 * idx + 1] += psi[1]

    put((0, 0, 0, 0), psi1)
    put((1, 1, 1, 1), psi1)
    put((0, 1, 0, 1), psi2)
    put((1, 0, 1, 0), xpsi2)
    return normalized_code(3, 4, amps)


def _dephasing_mask(p, m):
    """(1-2p)^HammingDistance scaling matrix for m dephased qubits."""
    if m == 0:
        return np.ones((1, 1))
    idx = np.arange(2**m)
    dist = np.bitwise_count(idx[:, None] ^ idx[None, :])
    return (1.0 - 2.0 * p) ** dist


def pattern_decompose(code, p, q):
    """All 2^n erasure-pattern blocks of the n-use channel output.

    For pattern s the erased input qubits are traced out, dephasing acts
    on every survivor, and the classical weight is q^|s| (1-q)^(n-|s|).
    The reference stays untouched.
    """
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    n = code.n_uses
    psi = code.amplitudes.reshape([code.ref_dim] + [2] * n)
    blocks = []
    for bits in product((0, 1), repeat=n):
        erased = [j + 1 for j, b in enumerate(bits) if b]
        survivors = [j + 1 for j, b in enumerate(bits) if not b]
        weight = q ** len(erased) * (1 - q) ** len(survivors)
        perm = [0] + survivors + erased
        mat = np.transpose(psi, perm).reshape(
            code.ref_dim * 2 ** len(survivors), 2 ** len(erased)
        )
        rho = mat @ mat.conj().T
        mask = np.kron(
            np.ones((code.ref_dim, code.ref_dim)),
            _dephasing_mask(p, len(survivors)),
        )
        blocks.append(
            ErasurePatternBlock("".join(map(str, bits)), weight, rho * mask)
        )
    return blocks


def multiletter_ci(code, p, q, n_limit=DEFAULT_N_LIMIT):
    """Coherent information of an arbitrary code via block decomposition.

    Sum over erasure patterns of weight * [S(block without reference) -
    S(block with reference)]; the classical pattern-entropy terms cancel
    between the two sums and are omitted.
    """
    if code.n_uses > n_limit:
        raise ValueError(f"n = {code.n_uses} exceeds the limit {n_limit}")
    total = 0.0
    for blk in pattern_decompose(code, p, q):
        if blk.weight == 0.0:
            continue
        m = blk.block.shape[0] // code.ref_dim
        input_part = np.trace(
            blk.block.reshape(code.ref_dim, m, code.ref_dim, m), axis1=0, axis2=2
        )
        total += blk.weight * (
            von_neumann_entropy(input_part) - von_neumann_entropy(blk.block)
        )
    return total


def brute_force_ci(code, p, q):
    """Independent oracle: explicit n-fold Kraus map on the 3^n output.

    Computes S(N(rho)) - S((id (x) N)(psi)) with the full tensor-product
    Kraus set; exponential in n, so n <= 3 only.
    """
    n = code.n_uses
    if n > BRUTE_FORCE_N_LIMIT:
        raise ValueError(f"brute force supports n <= {BRUTE_FORCE_N_LIMIT}")
    kraus = tensor_power_kraus(dephrasure_kraus(p, q), n)
    rho = code.input_state()
    out = sum(K @ rho @ K.conj().T for K in kraus.operators)
    eye = np.eye(code.ref_dim)
    cols = [np.kron(eye, K) @ code.amplitudes for K in kraus.operators]
    v = np.column_stack(cols)
    joint = v @ v.conj().T
    return von_neumann_entropy(out) - von_neumann_entropy(joint)


def _zdiag_ci_fast(coeffs, p, q, n):
    """Coherent information of a Z-diagonal code on its 2^n-dim support.

    For code sum_s c_s |s>|s> every pattern block is supported on the
    orthonormal set {|s>_ref (x) |s_surv>}, so its matrix in that basis
    is c_s c_s' [s_erased == s'_erased] (1-2p)^d(s_surv, s'_surv) and
    the eigenproblem is only 2^n-dimensional.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    probs = coeffs**2
    idx = np.arange(2**n)
    outer = np.outer(coeffs, coeffs)
    total = 0.0
    for bits in product((0, 1), repeat=n):
        erased_mask = sum(1 << (n - 1 - j) for j, b in enumerate(bits) if b)
        surv_mask = (2**n - 1) ^ erased_mask
        k = bin(erased_mask).count("1")
        weight = q**k * (1 - q) ** (n - k)
        if weight == 0.0:
            continue
        same_erased = (idx[:, None] & erased_mask) == (idx[None, :] & erased_mask)
        dist = np.bitwise_count((idx[:, None] ^ idx[None, :]) & surv_mask)
        block = outer * same_erased * (1.0 - 2.0 * p) ** dist
        # reference traced out: diagonal state grouped by surviving bits
        grouped = np.bincount(idx & surv_mask, weights=probs, minlength=2**n)
        total += weight * (
            shannon_entropy(grouped)
            - shannon_entropy(np.clip(np.linalg.eigvalsh(block), 0.0, None))
        )
    return total


def optimize_zdiag(p, q, n, seed=0, n_starts=32, n_limit=DEFAULT_N_LIMIT):
    """Optimize the Schmidt coefficients of the Z-diagonal n-use code.

    Multi-start derivative-free local search (Powell) over the
    normalized coefficient vector, warm started from the optimal
    weighted repetition code.  Deterministic per seed.  Returns
    (value, coefficients) with coefficients in lexicographic pattern
    order.
    """
    p = _check_prob(p, "p", hi=0.5)
    q = _check_prob(q, "q", hi=0.5)
    if n > n_limit:
        raise ValueError(f"n = {n} exceeds the limit {n_limit}")
    dim = 2**n

    def objective(w):
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return np.inf
        return -_zdiag_ci_fast(np.abs(w) / norm, p, q, n)

    rep_val, rep_lam = repetition_ci_opt(p, q, n)
    warm = np.zeros(dim)
    warm[0], warm[-1] = np.sqrt(rep_lam), np.sqrt(1 - rep_lam)
    rng = np.random.default_rng(seed)
    starts = [warm] + [np.abs(rng.standard_normal(dim)) for _ in range(n_starts)]

    best_val, best_coeffs = -np.inf, warm
    for start in starts:
        res = minimize(
            objective, start, method="Powell",
            options={"maxiter": 30, "xtol": 1e-8, "ftol": 1e-10},
        )
        val = -res.fun
        if val > best_val:
            coeffs = np.abs(res.x) / np.linalg.norm(res.x)
            best_val, best_coeffs = val, coeffs
    if rep_val > best_val:  # warm-start value is always feasible
        best_val = rep_val
        best_coeffs = warm
    return best_val, best_coeffs


def optimize_chi3(p, q, seed=0, config=None):
    """Optimize the chi_3 code coefficients with particle swarm search.

    Returns (value, (c1, d1, c2, d2)) for the normalized best code.
    """
    from .pso import PsoConfig, pso_minimize

    p = _check_prob(p, "p", hi=0.5)
    q = _check_prob(q, "q", hi=0.5)

    def objective(x):
        vec = x[0::2] + 1j * x[1::2]
        if np.linalg.norm(vec) == 0.0:
            return np.inf
        code = chi3_code(*vec)
        return -multiletter_ci(code, p, q)

    if config is None:
        config = PsoConfig(
            bounds=((-1.0, 1.0),) * 8, seed=seed, max_iterations=200
        )
    # structured warm starts: the GHZ-flavored psi2 = 0 code, plus a
    # family with small psi1 ~ |+> weight — near the threshold the
    # optimum retreats into that narrow corner of the parameter box,
    # mirroring the small-lambda behavior of the repetition codes
    warms = [np.array([1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]) / np.sqrt(2)]
    for eps in (0.3, 0.1, 0.03):
        warms.append(np.array([eps, 0.0, eps, 0.0, 1.0, 0.0, 0.0, 0.0]))
    result = pso_minimize(objective, 8, config, warm_starts=warms)

    # deterministic local polish from the swarm best and each warm start
    best_val, best_x = result.best_value, result.best_position
    for start in [result.best_position] + warms:
        res = minimize(
            objective, start, method="Powell",
            options={"maxiter": 100, "xtol": 1e-10, "ftol": 1e-12},
        )
        if res.fun < best_val:
            best_val, best_x = res.fun, res.x
    vec = best_x[0::2] + 1j * best_x[1::2]
    vec = vec / np.linalg.norm(vec)
    return -best_val, tuple(vec)
