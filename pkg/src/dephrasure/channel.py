"""The dephrasure channel family and its single-letter coherent information.

The channel acts on a qubit as dephasing with probability p followed by
erasure with probability q; the output lives on a qutrit whose third
basis vector is the erasure flag.  The complementary channel is a
4-dimensional block map: a q-weighted copy of the input alongside a
(1-q)-weighted diagonal-measurement residue.
"""

from __future__ import annotations

import numpy as np

from .qinfo import KrausSet, apply_kraus, binary_entropy

# Erasure flag: third basis vector of the qutrit output.
KET_E = np.array([0.0, 0.0, 1.0], dtype=complex)

_EMBED = np.array([[1, 0], [0, 1], [0, 0]], dtype=complex)  # qubit -> qutrit
_Z = np.diag([1.0, -1.0]).astype(complex)


def _check_prob(value, name, hi=1.0):
    value = float(value)
    if not 0.0 <= value <= hi + 1e-15:
        raise ValueError(f"{name} = {value} outside [0, {hi}]")
    return min(value, hi)


def dephrasure_kraus(p, q):
    """Kraus operators (2 -> 3) of the dephrasure channel."""
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    ops = [
        np.sqrt((1 - q) * (1 - p)) * _EMBED,
        np.sqrt((1 - q) * p) * (_EMBED @ _Z),
        np.sqrt(q) * np.outer(KET_E, [1, 0]),
        np.sqrt(q) * np.outer(KET_E, [0, 1]),
    ]
    return KrausSet(2, 3, tuple(ops))


def phi_states(p):
    """The two environment states sqrt(1-p)|0> +/- sqrt(p)|1>."""
    p = _check_prob(p, "p")
    phi0 = np.array([np.sqrt(1 - p), np.sqrt(p)], dtype=complex)
    phi1 = np.array([np.sqrt(1 - p), -np.sqrt(p)], dtype=complex)
    return phi0, phi1


def complementary_kraus(p, q):
    """Kraus operators (2 -> 4) of the complementary channel.

    The 4-dimensional output is block diagonal: indices (0, 1) carry the
    q-weighted copy of the input, indices (2, 3) the (1-q)-weighted
    environment states of the dephasing part.  This ordering is part of
    the module contract (the antidegrading maps rely on it).
    """
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    phi0, phi1 = phi_states(p)
    top = np.zeros((4, 2), dtype=complex)
    top[0, 0] = top[1, 1] = np.sqrt(q)
    k0 = np.zeros((4, 2), dtype=complex)
    k0[2:, 0] = np.sqrt(1 - q) * phi0
    k1 = np.zeros((4, 2), dtype=complex)
    k1[2:, 1] = np.sqrt(1 - q) * phi1
    return KrausSet(2, 4, (top, k0, k1))


def complementary_apply(p, q, rho):
    """Direct block evaluation of the complementary channel on a qubit."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a qubit state, got shape {rho.shape}")
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    phi0, phi1 = phi_states(p)
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = q * rho
    out[2:, 2:] = (1 - q) * (
        rho[0, 0].real * np.outer(phi0, phi0.conj())
        + rho[1, 1].real * np.outer(phi1, phi1.conj())
    )
    return out


def region_g(p):
    """Threshold curve of the single-letter coherent information."""
    p = _check_prob(p, "p", hi=0.5)
    t = (1 - 2 * p) ** 2
    return t / (1 + t)


def region_j(p):
    """Boundary below which the maximally mixed state is optimal.

    The closed form is 0/0 at both endpoints; we use the limits 1/2 at
    p = 0 and the quadratic series 8/3 (1/2 - p)^2 near p = 1/2.
    """
    p = _check_prob(p, "p", hi=0.5)
    if p == 0.0:
        return 0.5
    delta = 0.5 - p
    if delta < 1e-5:
        return 8.0 / 3.0 * delta * delta
    t = 2 * p * (1 - p) * np.log((1 - p) / p)
    return (1 - 2 * p - t) / (2 - 4 * p - t)


def region_k(p):
    """Boundary of the constructively antidegradable region."""
    p = _check_prob(p, "p", hi=0.5)
    return (1 - 2 * p) / (2 * (1 - p))


def region_curves(p):
    """The boundary ordinates (g(p), j(p), k(p))."""
    return region_g(p), region_j(p), region_k(p)


def phi_matrix(p, z):
    """Environment block [[1-p, z sqrt(p(1-p))], [z sqrt(p(1-p)), p]]."""
    p = _check_prob(p, "p")
    z = float(z)
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"z = {z} outside [-1, 1]")
    off = z * np.sqrt(p * (1 - p))
    return np.array([[1 - p, off], [off, p]], dtype=complex)


def _phi_entropy(p, z):
    """S(phi_matrix(p, z)), numerically stable for |z| near 1.

    The eigenvalues are (1 +/- k)/2 with k = sqrt(1 - 4p(1-p)(1-z^2));
    the small one is computed as 2p(1-p)(1-z^2)/(1+k) to avoid
    cancellation.
    """
    w = 4 * p * (1 - p) * (1 - z) * (1 + z)
    k = np.sqrt(max(0.0, 1.0 - w))
    return binary_entropy(w / (2 * (1 + k)))


def coherent_info_z(p, q, z):
    """Coherent information of the Z-diagonal Bloch state (0, 0, z)."""
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    z = float(z)
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"z = {z} outside [-1, 1]")
    return (1 - 2 * q) * binary_entropy((1 - z) / 2) - (1 - q) * _phi_entropy(p, z)


def coherent_info_xz(p, q, x, z):
    """Coherent information of the Bloch state (x, 0, z) in closed form.

    Equals (1-q) S(Z_p(rho)) - q S(rho) - (1-q) S(Phi_{p,z}); dephasing
    shrinks the x component of the Bloch vector by (1-2p).
    """
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    x, z = float(x), float(z)
    r2 = x * x + z * z
    if r2 > 1.0 + 1e-12:
        raise ValueError(f"Bloch norm {np.sqrt(r2)} exceeds 1")
    r = np.sqrt(min(r2, 1.0))
    rp = np.sqrt(min((1 - 2 * p) ** 2 * x * x + z * z, 1.0))
    return (
        (1 - q) * binary_entropy((1 - rp) / 2)
        - q * binary_entropy((1 - r) / 2)
        - (1 - q) * _phi_entropy(p, z)
    )


def bloch_state(x, y, z):
    """Qubit density matrix with the given Bloch vector."""
    if x * x + y * y + z * z > 1.0 + 1e-12:
        raise ValueError("Bloch vector outside the unit ball")
    return 0.5 * np.array(
        [[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=complex
    )


def coherent_info_state(p, q, rho):
    """Direct route S(N(rho)) - S(N^c(rho)) through the Kraus maps."""
    from .qinfo import von_neumann_entropy

    n_out = apply_kraus(dephrasure_kraus(p, q), rho)
    c_out = complementary_apply(p, q, np.asarray(rho, dtype=complex))
    return von_neumann_entropy(n_out) - von_neumann_entropy(c_out)


def _golden_max(f, a, b, tol):
    """Golden-section maximization of a unimodal f on [a, b]."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def _lambda_grid(step):
    """Scan grid for code weights: linear plus log-spaced tail.

    Near the threshold the optimal weight is exponentially small, so a
    linear grid alone would miss the positive sliver entirely.
    """
    lin = np.arange(0.0, 0.5 + step / 2, step)
    logs = np.power(10.0, -np.arange(4.25, 300.0, 0.25))
    return np.unique(np.concatenate([lin, logs]))


def maximize_over_weights(value_fn, step, tol):
    """Maximize value_fn(lambda) over [0, 1/2] by grid plus refinement."""
    grid = _lambda_grid(step)
    vals = value_fn(grid)
    i = int(np.argmax(vals))
    lo = grid[i - 1] if i > 0 else grid[0]
    hi = grid[i + 1] if i + 1 < len(grid) else grid[-1]
    lam, val = _golden_max(lambda l: float(value_fn(l)), lo, hi, tol)
    if vals[i] > val:
        lam, val = float(grid[i]), float(vals[i])
    return val, lam


def single_letter_ci(p, q):
    """Maximal coherent information over Z-diagonal inputs.

    Returns (value, z_star) with z_star >= 0 by the z <-> -z symmetry.
    The value may be negative.  The scan runs over the weight
    lambda = (1-z)/2 in [0, 1/2] so that the exponentially thin positive
    window just below the g(p) threshold is resolved.
    """
    p = _check_prob(p, "p", hi=0.5)
    q = _check_prob(q, "q", hi=0.5)

    def value(lam):
        lam = np.asarray(lam, dtype=float)
        # 1 - z^2 = 4 lam (1 - lam) for z = 1 - 2 lam
        w = 16 * p * (1 - p) * lam * (1 - lam)
        k = np.sqrt(np.clip(1.0 - w, 0.0, None))
        return (1 - 2 * q) * binary_entropy(lam) - (1 - q) * binary_entropy(
            w / (2 * (1 + k))
        )

    val, lam = maximize_over_weights(value, 1e-3, 1e-10)
    return val, 1 - 2 * lam


def xz_grid_max(p, q, steps=201):
    """Grid maximum of the coherent information over the (x, z) quarter disk.

    Reported without any optimality claim; outside the Z-diagonal region
    the true maximizer's form is not characterized.
    """
    best = -np.inf
    best_xz = (0.0, 0.0)
    for x in np.linspace(0.0, 1.0, steps):
        zmax = np.sqrt(max(0.0, 1.0 - x * x))
        for z in np.linspace(0.0, zmax, steps):
            v = coherent_info_xz(p, q, x, z)
            if v > best:
                best, best_xz = v, (x, z)
    return best, best_xz
