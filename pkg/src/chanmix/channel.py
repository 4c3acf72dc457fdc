"""Quantum channels: construction from bipartite unitaries and
interconversion between superoperator, Choi and Kraus representations.

A channel on local dimension d is stored canonically as its d^2 x d^2
superoperator acting on row-major vectorized states; the Choi matrix is
its reshuffle and the Kraus operators come from diagonalizing the Choi.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from . import linalg
from .linalg import (
    BipartiteIndex,
    DimensionError,
    as_matrix,
    check_unitary,
    eig_hermitian,
    kron,
    partial_trace,
    reshuffle,
    unvectorize,
    vectorize,
)


class NotCompletelyPositiveError(ValueError):
    """Choi matrix has an eigenvalue below the PSD tolerance."""


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix (Hermitian, PSD, unit trace)."""

    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat)
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got {m.shape}")
        if abs(np.trace(m) - 1.0) > TOL.state_trace:
            raise ValueError(f"density matrix trace {np.trace(m)} != 1")
        h = linalg.check_hermitian(m, rel=1e-8)
        w = np.linalg.eigvalsh(h)
        if w.min() < TOL.state_min_eig:
            raise ValueError(f"density matrix has negative eigenvalue {w.min():.3e}")
        object.__setattr__(self, "mat", h)

    @property
    def d(self) -> int:
        return self.mat.shape[0]

    @staticmethod
    def maximally_mixed(d: int) -> "DensityMatrix":
        return DensityMatrix(np.eye(d) / d)

    @staticmethod
    def pure(vec) -> "DensityMatrix":
        v = np.asarray(vec, dtype=complex).reshape(-1)
        v = v / np.linalg.norm(v)
        return DensityMatrix(np.outer(v, v.conj()))


@dataclass(frozen=True)
class Channel:
    """CPTP map in superoperator form; Choi and Kraus are derived caches."""

    superop: np.ndarray
    d: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        m = as_matrix(self.superop)
        if m.shape != (self.d**2, self.d**2):
            raise DimensionError(
                f"superoperator shape {m.shape} does not match d={self.d}"
            )
        object.__setattr__(self, "superop", m)

    @property
    def choi(self) -> np.ndarray:
        if "choi" not in self._cache:
            self._cache["choi"] = reshuffle(self.superop)
        return self._cache["choi"]

    @property
    def kraus(self) -> list[np.ndarray]:
        if "kraus" not in self._cache:
            self._cache["kraus"] = kraus_from_choi(self)
        return self._cache["kraus"]

    def verify_cptp(self, psd_tol: float = TOL.choi_psd, tp_tol: float = 1e-8) -> None:
        """Raise if the channel fails complete positivity or trace preservation."""
        w, v = eig_hermitian(self.choi, rel=1e-6)
        if w.min() < psd_tol:
            raise NotCompletelyPositiveError(
                f"Choi matrix has eigenvalue {w.min():.3e} below tolerance {psd_tol:.1e}"
            )
        acc = np.zeros((self.d, self.d), dtype=complex)
        for a in self.kraus:
            acc += a.conj().T @ a
        dev = np.linalg.norm(acc - np.eye(self.d))
        if dev > tp_tol:
            raise ValueError(f"trace preservation violated: ||sum A+A - I|| = {dev:.3e}")


def channel_from_unitary(u, sigma: DensityMatrix, unitarity_tol: float = TOL.unitarity) -> Channel:
    """Dilate a bipartite unitary and an environment state into a channel.

    superop = R2( U^R2 (I x sigma) U^R2+ ).
    """
    u = check_unitary(u, unitarity_tol)
    d = sigma.d
    if u.shape[0] != d * d:
        raise DimensionError(f"unitary dimension {u.shape[0]} != d^2 = {d * d}")
    ur = reshuffle(u)
    core = ur @ kron(np.eye(d), sigma.mat) @ ur.conj().T
    return Channel(reshuffle(core), d)


def apply_superop(ch: Channel, rho: DensityMatrix) -> DensityMatrix:
    """Act with the channel on a state through the vectorized representation."""
    if rho.d != ch.d:
        raise DimensionError(f"state dimension {rho.d} != channel dimension {ch.d}")
    out = unvectorize(ch.superop @ vectorize(rho.mat))
    # roundoff cleanup: the result of a CPTP map on a valid state is valid
    out = (out + out.conj().T) / 2
    out = out / np.trace(out).real
    return DensityMatrix(out)


def brute_force_apply(u, sigma: DensityMatrix, rho: DensityMatrix) -> DensityMatrix:
    """Independent oracle: Tr_2[ U (rho x sigma) U^dagger ]."""
    u = check_unitary(u)
    d = rho.d
    if sigma.d != d or u.shape[0] != d * d:
        raise DimensionError("dimension mismatch between U, sigma and rho")
    full = u @ kron(rho.mat, sigma.mat) @ u.conj().T
    out = partial_trace(full, BipartiteIndex(d, d), keep=1)
    return DensityMatrix((out + out.conj().T) / 2)


def kraus_from_choi(ch: Channel, cutoff: float = TOL.kraus_cutoff) -> list[np.ndarray]:
    """Kraus operators A_i = sqrt(g_i) unvec(gamma_i) from the Choi eigenbasis."""
    w, v = eig_hermitian(ch.choi, rel=1e-6)
    if w.min() < TOL.choi_psd:
        raise NotCompletelyPositiveError(
            f"Choi matrix has eigenvalue {w.min():.3e}; channel is not completely positive"
        )
    ops = []
    for g, vec in zip(w, v.T):
        if g > cutoff * ch.d:
            ops.append(np.sqrt(g) * unvectorize(vec))
    ops.reverse()  # largest weight first
    return ops


def channel_from_kraus(kraus, tp_tol: float = 1e-8) -> Channel:
    """Assemble superop = sum_i A_i x A_i^* after checking trace preservation."""
    ops = [as_matrix(a) for a in kraus]
    if not ops:
        raise ValueError("empty Kraus set")
    d = ops[0].shape[0]
    acc = np.zeros((d, d), dtype=complex)
    for a in ops:
        if a.shape != (d, d):
            raise DimensionError("Kraus operators must share a square shape")
        acc += a.conj().T @ a
    dev = np.linalg.norm(acc - np.eye(d))
    if dev > tp_tol:
        raise ValueError(f"Kraus set is not trace preserving: deviation {dev:.3e}")
    superop = np.zeros((d * d, d * d), dtype=complex)
    for a in ops:
        superop += np.kron(a, a.conj())
    return Channel(superop, d)


def adjoint_channel(ch: Channel) -> Channel:
    """Heisenberg-picture adjoint; its spectrum is the conjugate spectrum."""
    return Channel(ch.superop.conj().T, ch.d)


def compose(ch1: Channel, ch2: Channel) -> Channel:
    """(ch1 o ch2)(rho) = ch1(ch2(rho))."""
    if ch1.d != ch2.d:
        raise DimensionError("cannot compose channels of different dimension")
    return Channel(ch1.superop @ ch2.superop, ch1.d)


def identity_channel(d: int) -> Channel:
    return Channel(np.eye(d * d, dtype=complex), d)


def channel_power(ch: Channel, n: int) -> Channel:
    if n < 0:
        raise ValueError(f"channel power requires n >= 0, got {n}")
    return Channel(np.linalg.matrix_power(ch.superop, n), ch.d)
