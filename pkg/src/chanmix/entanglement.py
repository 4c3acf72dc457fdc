"""Operator Schmidt decomposition of bipartite unitaries, operator
entanglement, the mixing-sufficiency thresholds and related bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .channel import Channel, DensityMatrix
from .linalg import (
    DimensionError,
    check_unitary,
    eig_general,
    kron,
    reshuffle,
    unvectorize,
)


@dataclass(frozen=True)
class OperatorSchmidt:
    """U = sum_i sqrt(mu_i) A_i x B_i with orthonormal operator factors."""

    coefficients: np.ndarray  # mu_i, descending
    left_ops: list
    right_ops: list


def operator_schmidt(u) -> OperatorSchmidt:
    """Schmidt-decompose a bipartite unitary via the SVD of its reshuffle."""
    u = check_unitary(u)
    d = int(round(np.sqrt(u.shape[0])))
    if d * d != u.shape[0]:
        raise DimensionError(f"dimension {u.shape[0]} is not bipartite d x d")
    ur = reshuffle(u)
    us, s, vh = np.linalg.svd(ur)
    mu = s**2
    left = [unvectorize(us[:, i]) for i in range(d * d)]
    right = [unvectorize(vh[i]) for i in range(d * d)]
    return OperatorSchmidt(mu, left, right)


def operator_entanglement(u) -> float:
    """Normalized linear entropy E(U) of the operator Schmidt spectrum.

    Computed directly from Tr[(U^R2 U^R2+)^2] without a full SVD.
    """
    u = check_unitary(u)
    d2 = u.shape[0]
    d = int(round(np.sqrt(d2)))
    if d * d != d2:
        raise DimensionError(f"dimension {d2} is not bipartite d x d")
    ur = reshuffle(u)
    gram = ur @ ur.conj().T
    purity = np.trace(gram @ gram).real
    return float((d2 / (d2 - 1)) * (1 - purity / d2**2))


def mixing_threshold(d: int) -> float:
    """E* above which operator entanglement alone guarantees mixing."""
    return (d**2 - 2) / (d**2 - 1)


def sufficiency_verdict(u, sigma: DensityMatrix) -> dict:
    """Sufficient-condition test for mixing of the dilated channel.

    For the maximally mixed environment the criterion is E(U) > E*(d); for a
    general environment it is Tr[(U^R2 (I x sigma) U^R2+)^2] < 2.  A false
    verdict does not imply the channel is non-mixing.
    """
    u = check_unitary(u)
    d = sigma.d
    if np.linalg.norm(sigma.mat - np.eye(d) / d) <= 1e-12:
        e = operator_entanglement(u)
        return {"sufficient": e > mixing_threshold(d), "witness": e}
    ur = reshuffle(u)
    core = ur @ kron(np.eye(d), sigma.mat) @ ur.conj().T
    witness = np.trace(core @ core).real
    return {"sufficient": witness < 2.0, "witness": witness}


def spectral_sum_bounds(ch: Channel, e_u: float) -> dict:
    """Spectral-sum consequences of operator entanglement for sigma = I/d.

    Reports sum_{i>=1} |lambda_i|^2 together with its bound
    (d^2-1)(1-E) and the derived bounds on |lambda_1| and |lambda_min|.
    """
    d2 = ch.d**2
    vals = np.abs(eig_general(ch.superop))
    order = np.argsort(vals)[::-1]
    rest = vals[order][1:]
    slack = max(0.0, 1.0 - e_u)
    return {
        "sum_sq": float(np.sum(rest**2)),
        "bound": (d2 - 1) * slack,
        "lambda1_bound": float(np.sqrt((d2 - 1) * slack)),
        "lambda_min_bound": float(np.sqrt(slack)),
    }


def is_dual_unitary(u, tol: float = TOL.dual_unitarity) -> bool:
    """True when the reshuffle of U is itself unitary."""
    u = check_unitary(u)
    ur = reshuffle(u)
    return np.linalg.norm(ur @ ur.conj().T - np.eye(u.shape[0])) <= tol


class NotDualUnitaryError(ValueError):
    """Purity criterion requested for a unitary that is not dual-unitary."""


def dual_unitary_purity_check(u, sigma: DensityMatrix) -> dict:
    """For dual-unitary U, mixing is guaranteed when Tr(sigma^2) < 2/d."""
    if not is_dual_unitary(u):
        raise NotDualUnitaryError("purity criterion applies only to dual-unitary operators")
    purity = np.trace(sigma.mat @ sigma.mat).real
    threshold = 2.0 / sigma.d
    return {"purity": float(purity), "threshold": threshold, "sufficient": purity < threshold}


def lu_dress(u, u1, u2, u3, u4) -> np.ndarray:
    """(u1 x u2) U (u3 x u4)."""
    return kron(u1, u2) @ check_unitary(u) @ kron(u3, u4)


def lu_orbit_check(u, u1, u2, u3, u4, sigma: DensityMatrix) -> dict:
    """Verify local-unitary invariance of the mixing-sufficiency data.

    E(U) and the Frobenius norm of the dilated superoperator are invariant
    under local dressing; the spectra themselves are generally not.
    """
    from .channel import channel_from_unitary

    for w in (u1, u2, u3, u4):
        check_unitary(w, name="local unitary")
    u_prime = lu_dress(u, u1, u2, u3, u4)
    e0 = operator_entanglement(u)
    e1 = operator_entanglement(u_prime)
    n0 = np.linalg.norm(channel_from_unitary(u, sigma).superop)
    n1 = np.linalg.norm(channel_from_unitary(u_prime, sigma).superop)
    return {
        "e_original": e0,
        "e_dressed": e1,
        "e_deviation": abs(e0 - e1),
        "norm_original": float(n0),
        "norm_dressed": float(n1),
        "norm_deviation": float(abs(n0 - n1)),
    }
