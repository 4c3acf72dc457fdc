"""Spectral classification of channels on the ergodic hierarchy, fixed
points, trace-norm convergence, Cesaro averages and the generalized
spectral form factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from . import linalg
from .channel import Channel, DensityMatrix, apply_superop, identity_channel
from .linalg import eig_general, trace_norm, unvectorize, vectorize


class DegenerateFixedPointError(RuntimeError):
    """The lambda = 1 eigenspace has dimension > 1."""

    def __init__(self, dim: int):
        super().__init__(f"fixed space is degenerate (dimension {dim})")
        self.eigenspace_dim = dim


def _spectral_order(values: np.ndarray) -> np.ndarray:
    """Descending magnitude; ties broken by descending real then imaginary part.

    Keys are rounded so solver-level noise cannot flip the tie-breaks.
    """
    key = np.lexsort((
        -np.round(values.imag, 12),
        -np.round(values.real, 12),
        -np.round(np.abs(values), 12),
    ))
    return values[key]


@dataclass(frozen=True)
class Spectrum:
    """Ordered superoperator eigenvalues, lambda_0 = 1 first."""

    values: np.ndarray

    @property
    def gap(self) -> float:
        return 1.0 - abs(self.values[1]) if len(self.values) > 1 else 1.0

    @property
    def lambda1_abs(self) -> float:
        return abs(self.values[1]) if len(self.values) > 1 else 0.0

    def mean_abs_indicator(self) -> float:
        """Alternative mixing-speed measure: 1 - mean |lambda_i|, i >= 1."""
        rest = np.abs(self.values[1:])
        return 1.0 - float(rest.mean()) if rest.size else 1.0


@dataclass(frozen=True)
class ErgodicVerdict:
    label: str  # integrable | non-ergodic | ergodic-not-mixing | mixing
    peripheral_count: int
    unit_count: int
    fixed_points: list
    epsilon: float


def spectrum(ch: Channel) -> Spectrum:
    vals = _spectral_order(eig_general(ch.superop))
    return Spectrum(vals)


def fixed_space(ch: Channel, epsilon: float = TOL.classify_analytic) -> list[np.ndarray]:
    """Orthonormal basis of the lambda = 1 eigenspace, reshaped to matrices.

    Computed as the near-null space of (L - I) via SVD.
    """
    n = ch.superop.shape[0]
    u, s, vh = np.linalg.svd(ch.superop - np.eye(n))
    basis = [unvectorize(vh[i].conj()) for i in range(n) if s[i] <= max(epsilon, 1e-12) * 10]
    return basis


def classify(sp: Spectrum, epsilon: float = TOL.classify_analytic,
             ch: Channel | None = None) -> ErgodicVerdict:
    """Place a spectrum on the hierarchy integrable / non-ergodic /
    ergodic-not-mixing / mixing.

    epsilon is the peripheral tolerance: |lambda| >= 1 - epsilon counts as
    peripheral, |lambda - 1| <= epsilon counts as a unit eigenvalue.
    """
    if not (0 < epsilon < 0.1):
        raise ValueError(f"epsilon must lie in (0, 0.1), got {epsilon}")
    vals = sp.values
    peripheral = int(np.sum(np.abs(vals) >= 1 - epsilon))
    unit = int(np.sum(np.abs(vals - 1) <= epsilon))
    if unit == len(vals):
        label = "integrable"
    elif unit > 1:
        label = "non-ergodic"
    elif peripheral > 1:
        label = "ergodic-not-mixing"
    else:
        label = "mixing"
    fps = fixed_space(ch, epsilon) if ch is not None else []
    return ErgodicVerdict(label, peripheral, unit, fps, epsilon)


def classify_channel(ch: Channel, epsilon: float = TOL.classify_analytic) -> ErgodicVerdict:
    return classify(spectrum(ch), epsilon, ch)


def fixed_point(ch: Channel, epsilon: float = TOL.classify_analytic) -> DensityMatrix:
    """The unique fixed state rho* with E(rho*) = rho*.

    Raises DegenerateFixedPointError when the lambda = 1 space is not
    one-dimensional.
    """
    basis = fixed_space(ch, epsilon)
    if len(basis) != 1:
        raise DegenerateFixedPointError(len(basis))
    raw = basis[0]
    tr = np.trace(raw)
    if abs(tr) < 1e-10:
        # a unique fixed point is a density matrix, so its eigenvector
        # cannot be traceless; this indicates a numerically broken space
        raise linalg.NumericalError("fixed-point eigenvector is traceless")
    rho = raw / tr  # removes the arbitrary phase and scale
    rho = (rho + rho.conj().T) / 2
    rho = rho / np.trace(rho).real
    w = np.linalg.eigvalsh(rho)
    if w.min() < -1e-6:
        raise linalg.NumericalError(
            f"fixed-point candidate has eigenvalue {w.min():.3e}; not a state"
        )
    if w.min() < 0:
        # clip solver-level negativity so the state validates cleanly
        wv, v = np.linalg.eigh(rho)
        wv = np.clip(wv, 0.0, None)
        rho = (v * wv) @ v.conj().T
        rho = rho / np.trace(rho).real
    return DensityMatrix(rho)


def iterate_convergence(ch: Channel, rho0: DensityMatrix, n_max: int,
                        epsilon: float = TOL.classify_analytic) -> np.ndarray:
    """Delta_n = || E^n(rho0) - rho* ||_1 for n = 0..n_max.

    Iterates on the vectorized state (cost d^4 per step) rather than
    forming superoperator powers.
    """
    rho_star = fixed_point(ch, epsilon)
    target = rho_star.mat
    vec = vectorize(rho0.mat)
    deltas = np.empty(n_max + 1)
    for n in range(n_max + 1):
        deltas[n] = trace_norm(unvectorize(vec) - target)
        if n < n_max:
            vec = ch.superop @ vec
    return deltas


def cesaro_average(ch: Channel, n_terms: int) -> Channel:
    """The averaged channel (1/(N+1)) sum_{n=0}^{N} E^n; itself CPTP."""
    if n_terms < 0:
        raise ValueError(f"Cesaro average requires N >= 0, got {n_terms}")
    acc = np.eye(ch.superop.shape[0], dtype=complex)
    power = np.eye(ch.superop.shape[0], dtype=complex)
    for _ in range(n_terms):
        power = power @ ch.superop
        acc += power
    return Channel(acc / (n_terms + 1), ch.d)


def generalized_sff(ch: Channel, n_max: int, check_tol: float = 1e-9) -> np.ndarray:
    """K(n) = Tr(L^n) / d^2 for n = 1..n_max.

    Computed both as a direct trace of superoperator powers and from the
    eigenvalue power sums; the two must agree to check_tol.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    d2 = ch.d**2
    vals = eig_general(ch.superop)
    power = np.eye(d2, dtype=complex)
    out = np.empty(n_max)
    lam = np.ones_like(vals)
    for n in range(1, n_max + 1):
        power = power @ ch.superop
        lam = lam * vals
        k_trace = np.trace(power) / d2
        k_spec = np.sum(lam) / d2
        if abs(k_trace - k_spec) > check_tol * max(1.0, abs(k_trace)):
            raise linalg.NumericalError(
                f"SFF trace/spectral mismatch at n={n}: {k_trace} vs {k_spec}"
            )
        out[n - 1] = k_trace.real
    return out


def scrambling_time(k_values, d: int) -> int | None:
    """Smallest n (1-based) with K(n) <= 1/d, or None if never reached."""
    k_values = np.asarray(k_values, dtype=float)
    if k_values.size == 0:
        raise ValueError("empty K(n) sequence")
    hits = np.nonzero(k_values <= 1.0 / d)[0]
    return int(hits[0]) + 1 if hits.size else None
