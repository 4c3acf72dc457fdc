"""Analytic channel families: the two-qubit canonical (Weyl-chamber)
unitaries with closed-form channel spectra, block-diagonal unitaries,
named gates and Haar-random unitaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .channel import Channel, DensityMatrix, channel_from_unitary
from .ergodicity import ErgodicVerdict, Spectrum, classify, spectrum
from .linalg import DimensionError, check_unitary, matrix_exponential_i

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class WeylPoint:
    """Canonical two-qubit interaction coordinates, 0 <= |z| <= y <= x <= pi/4."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (0 <= abs(self.z) <= self.y + 1e-12 and self.y <= self.x + 1e-12
                and self.x <= np.pi / 4 + 1e-12):
            raise ValueError(
                f"Weyl point ({self.x}, {self.y}, {self.z}) violates 0 <= |z| <= y <= x <= pi/4"
            )


# vertices of the case lines analysed on the chamber
NAMED_POINTS = {
    "local": WeylPoint(0.0, 0.0, 0.0),
    "cnot": WeylPoint(np.pi / 4, 0.0, 0.0),
    "dcnot": WeylPoint(np.pi / 4, np.pi / 4, 0.0),
    "swap": WeylPoint(np.pi / 4, np.pi / 4, np.pi / 4),
}


def weyl_unitary(p: WeylPoint) -> np.ndarray:
    """exp[-i (x XX + y YY + z ZZ)] in its explicit 4x4 form."""
    cm, cp = np.cos(p.x - p.y), np.cos(p.x + p.y)
    sm, sp = np.sin(p.x - p.y), np.sin(p.x + p.y)
    em, ep = np.exp(-1j * p.z), np.exp(1j * p.z)
    return np.array(
        [
            [em * cm, 0, 0, -1j * em * sm],
            [0, ep * cp, -1j * ep * sp, 0],
            [0, -1j * ep * sp, ep * cp, 0],
            [-1j * em * sm, 0, 0, em * cm],
        ],
        dtype=complex,
    )


def weyl_generator(p: WeylPoint) -> np.ndarray:
    """The Hermitian generator x XX + y YY + z ZZ."""
    return (
        p.x * np.kron(PAULI_X, PAULI_X)
        + p.y * np.kron(PAULI_Y, PAULI_Y)
        + p.z * np.kron(PAULI_Z, PAULI_Z)
    )


def weyl_channel_spectrum_analytic(p: WeylPoint) -> np.ndarray:
    """Closed-form spectrum (1, l1, l2, l3) of the sigma = I/2 dilated channel."""
    l1 = 0.5 * (np.cos(2 * (p.x + p.y)) + np.cos(2 * (p.x - p.y)))
    l2 = np.cos(2 * p.y) * np.cos(2 * p.z)
    l3 = np.cos(2 * p.x) * np.cos(2 * p.z)
    return np.array([1.0, l1, l2, l3])


def bell_basis() -> np.ndarray:
    """Columns are the Bell vectors diagonalizing every Weyl-point superoperator."""
    s = 1 / np.sqrt(2)
    return np.array(
        [
            [s, s, 0, 0],
            [0, 0, s, s],
            [0, 0, s, -s],
            [s, -s, 0, 0],
        ],
        dtype=complex,
    )


def weyl_channel(p: WeylPoint) -> Channel:
    return channel_from_unitary(weyl_unitary(p), DensityMatrix.maximally_mixed(2))


def weyl_line(start: WeylPoint, end: WeylPoint, steps: int,
              epsilon: float = TOL.classify_analytic):
    """Classify channels along a straight segment of the chamber.

    Returns a list of (WeylPoint, Spectrum, ErgodicVerdict) triples.
    """
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    out: list[tuple[WeylPoint, Spectrum, ErgodicVerdict]] = []
    for t in np.linspace(0.0, 1.0, steps):
        p = WeylPoint(
            (1 - t) * start.x + t * end.x,
            (1 - t) * start.y + t * end.y,
            (1 - t) * start.z + t * end.z,
        )
        ch = weyl_channel(p)
        sp = spectrum(ch)
        out.append((p, sp, classify(sp, epsilon, ch)))
    return out


@dataclass(frozen=True)
class BlockDiagonalSpec:
    """d unitary d x d blocks assembled into a block-diagonal bipartite unitary."""

    blocks: list

    def __post_init__(self):
        d = len(self.blocks)
        for b in self.blocks:
            u = np.asarray(b, dtype=complex)
            if u.shape != (d, d):
                raise DimensionError(
                    f"need {d} blocks of shape {d}x{d}, got shape {u.shape}"
                )
            check_unitary(u, name="block")


def block_diagonal_unitary(spec: BlockDiagonalSpec) -> np.ndarray:
    d = len(spec.blocks)
    u = np.zeros((d * d, d * d), dtype=complex)
    for i, b in enumerate(spec.blocks):
        u[i * d:(i + 1) * d, i * d:(i + 1) * d] = b
    return u


def block_diagonal_channel(spec: BlockDiagonalSpec):
    """Channel of a block-diagonal unitary with sigma = I/d, plus its
    analytic eigenvalues lambda_ij = Tr(u_i u_j^dagger) / d."""
    d = len(spec.blocks)
    ch = channel_from_unitary(block_diagonal_unitary(spec), DensityMatrix.maximally_mixed(d))
    lam = np.array(
        [np.trace(ui @ np.asarray(uj, dtype=complex).conj().T) / d
         for ui in map(np.asarray, spec.blocks) for uj in spec.blocks]
    )
    return ch, lam


def haar_random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The R diagonal is rephased to positive reals so the distribution is
    exactly Haar; deterministic for a given seed.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def swap_gate(d: int = 2) -> np.ndarray:
    u = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            u[i * d + j, j * d + i] = 1.0
    return u


def cnot_gate() -> np.ndarray:
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )
