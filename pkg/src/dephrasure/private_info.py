"""Ensemble private information of the dephrasure channel.

The private information of an input ensemble is the difference of the
Holevo quantities seen by the receiver and by the environment.  The
plus/minus-basis two-member family is the canonical private code for
this channel; a randomized purification-and-measurement search is
provided to probe for anything better.
"""

from __future__ import annotations

import numpy as np

from .channel import (
    _check_prob,
    complementary_apply,
    dephrasure_kraus,
    maximize_over_weights,
)
from .qinfo import apply_kraus, binary_entropy, check_density_matrix, von_neumann_entropy

_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2)


def _check_ensemble(members):
    cleaned = []
    total = 0.0
    for prob, rho in members:
        prob = float(prob)
        if prob < -1e-15:
            raise ValueError(f"negative ensemble probability {prob}")
        cleaned.append((max(prob, 0.0), check_density_matrix(rho)))
        total += prob
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"ensemble probabilities sum to {total}")
    dims = {rho.shape[0] for _, rho in cleaned}
    if len(dims) != 1:
        raise ValueError("ensemble members have mixed dimensions")
    return cleaned


def ensemble_private_info(members, p, q):
    """I(X;B) - I(X;E) for a qubit ensemble, in Holevo form.

    Each mutual information is S(average output) minus the average
    output entropy; the classical register never gets materialized as a
    matrix.
    """
    members = _check_ensemble(members)
    if members[0][1].shape[0] != 2:
        raise ValueError("dephrasure private information needs a qubit ensemble")
    kraus = dephrasure_kraus(p, q)

    avg_b = np.zeros((3, 3), dtype=complex)
    avg_e = np.zeros((4, 4), dtype=complex)
    mean_s_b = 0.0
    mean_s_e = 0.0
    for prob, rho in members:
        if prob == 0.0:
            continue
        out_b = apply_kraus(kraus, rho)
        out_e = complementary_apply(p, q, rho)
        avg_b += prob * out_b
        avg_e += prob * out_e
        mean_s_b += prob * von_neumann_entropy(out_b)
        mean_s_e += prob * von_neumann_entropy(out_e)
    holevo_b = von_neumann_entropy(avg_b) - mean_s_b
    holevo_e = von_neumann_entropy(avg_e) - mean_s_e
    return holevo_b - holevo_e


def plusminus_ensemble(lam):
    """The two-member +/- basis ensemble with weights (lam, 1-lam)."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda = {lam} outside [0, 1]")
    plus = np.outer(_PLUS, _PLUS.conj())
    minus = np.outer(_MINUS, _MINUS.conj())
    rho1 = lam * plus + (1 - lam) * minus
    rho2 = (1 - lam) * plus + lam * minus
    return [(0.5, rho1), (0.5, rho2)]


def plusminus_private_info(lam, p, q):
    """Closed form of the +/- family private information.

    (1-q)[1 - h(p + (1-lam)(1-2p))] - q[1 - h(lam)]; reduces to the
    single-letter coherent information of the maximally mixed state at
    lam in {0, 1}, and to 0 at lam = 1/2.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 0) or np.any(lam > 1):
        raise ValueError("lambda outside [0, 1]")
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")
    mix = p + (1 - lam) * (1 - 2 * p)
    out = (1 - q) * (1 - binary_entropy(mix)) - q * (1 - binary_entropy(lam))
    return float(out) if np.ndim(out) == 0 else out


def private_lower_bound(p, q):
    """Maximize the +/- family private information over the weight.

    Returns (value, lambda_star) with lambda_star in [1/2, 1] by the
    lam <-> 1-lam symmetry.  Uses the closed form, which matches the
    Holevo-form evaluation of plusminus_ensemble to within 1e-10.
    """
    p = _check_prob(p, "p", hi=0.5)
    q = _check_prob(q, "q", hi=0.5)
    # scan mu = 1 - lam over [0, 1/2]
    value, mu = maximize_over_weights(
        lambda m: plusminus_private_info(1.0 - np.asarray(m, dtype=float), p, q),
        1e-3,
        1e-10,
    )
    return value, 1.0 - mu


def _ensemble_from_state(psi):
    """App-style private code from a pure state on S (x) R (x) A.

    Measuring the 4-dimensional S register in the computational basis
    leaves subnormalized pure states on R (x) A; their norms are the
    code probabilities and the reduced A states the code states.
    """
    blocks = psi.reshape(4, 2, 2)
    members = []
    for x in range(4):
        mat = blocks[x]  # rows R, columns A
        px = float(np.sum(np.abs(mat) ** 2))
        if px < 1e-15:
            members.append((0.0, np.eye(2, dtype=complex) / 2))
            continue
        rho = (mat.T @ mat.conj()) / px
        rho = (rho + rho.conj().T) / 2
        members.append((px, rho))
    return members


def random_ensemble_search(p, q, seed=0, trials=100, refine_steps=200):
    """Randomized search for private codes, deterministic per seed.

    Samples Haar-random pure states on the 16-dimensional S (x) R (x) A
    space, derives the induced 4-member ensemble from a computational
    measurement of S, and keeps the best private information found,
    followed by a bounded local perturbation refinement.  Returns
    (best_value, best_ensemble).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    p = _check_prob(p, "p")
    q = _check_prob(q, "q")

    def haar_state(rng):
        vec = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        return vec / np.linalg.norm(vec)

    best_val = -np.inf
    best_psi = None
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        psi = haar_state(rng)
        val = ensemble_private_info(_ensemble_from_state(psi), p, q)
        if val > best_val:
            best_val, best_psi = val, psi

    rng = np.random.default_rng([seed, trials])
    sigma = 0.1
    for step in range(refine_steps):
        delta = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        cand = best_psi + sigma * delta
        cand = cand / np.linalg.norm(cand)
        val = ensemble_private_info(_ensemble_from_state(cand), p, q)
        if val > best_val:
            best_val, best_psi = val, cand
        else:
            sigma *= 0.98
    return best_val, _ensemble_from_state(best_psi)
