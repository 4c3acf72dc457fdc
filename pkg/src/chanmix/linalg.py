"""Dense complex matrix core: vectorization, reshuffling, partial trace,
eigen/SVD wrappers and the matrix file format.

Index convention (normative for the whole package): in a bipartite space
subsystem 1 is the slow index, so the composite basis vector |i alpha> sits
at position i * d2 + alpha.  Vectorization is row-major: <ij|A> = <i|A|j>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import TOL


class DimensionError(ValueError):
    """Input dimensions are incompatible with the requested operation."""


class NumericalError(RuntimeError):
    """An underlying eigen/SVD solver failed to converge."""


class HermiticityError(ValueError):
    """Input violates the hermiticity tolerance."""


@dataclass(frozen=True)
class BipartiteIndex:
    """Dimensions of a bipartite factorization; subsystem 1 is slow."""

    d1: int
    d2: int

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def check(self, n: int) -> None:
        if self.d1 * self.d2 != n:
            raise DimensionError(
                f"bipartite index {self.d1}x{self.d2} does not factor dimension {n}"
            )


def as_matrix(a) -> np.ndarray:
    """Validate and return a 2-D complex ndarray with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def vectorize(a) -> np.ndarray:
    """Row-major vectorization |A> with component i*d + j = A[i, j]."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"vectorize requires a square matrix, got {m.shape}")
    return m.reshape(-1)


def unvectorize(v) -> np.ndarray:
    """Inverse of :func:`vectorize`; length must be a perfect square."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise DimensionError(f"vector length {v.size} is not a perfect square")
    return v.reshape(d, d)


def reshuffle(a, idx: BipartiteIndex | None = None) -> np.ndarray:
    """Reshuffle R2: <i alpha|A|j beta>  ->  <ij|A^R2|alpha beta>.

    Involution on square inputs with d1 == d2 (the only case used here).
    """
    m = as_matrix(a)
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"reshuffle requires a square matrix, got {m.shape}")
    if idx is None:
        d = int(round(np.sqrt(n)))
        if d * d != n:
            raise DimensionError(f"dimension {n} is not a perfect square")
        idx = BipartiteIndex(d, d)
    idx.check(n)
    if idx.d1 != idx.d2:
        raise DimensionError("reshuffle is defined here for equal subsystem dimensions")
    d = idx.d1
    return m.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(n, n)


def kron(a, b) -> np.ndarray:
    """Tensor product with subsystem 1 slow (A) and subsystem 2 fast (B)."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(a, idx: BipartiteIndex, keep: int) -> np.ndarray:
    """Trace out one subsystem; keep=1 keeps the slow factor, keep=2 the fast."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"partial trace requires a square matrix, got {m.shape}")
    idx.check(m.shape[0])
    t = m.reshape(idx.d1, idx.d2, idx.d1, idx.d2)
    if keep == 1:
        return np.einsum("igjg->ij", t)
    if keep == 2:
        return np.einsum("gagb->ab", t)
    raise ValueError(f"keep must be 1 or 2, got {keep}")


def eig_general(a) -> np.ndarray:
    """Eigenvalues (with multiplicity) of a general square matrix.

    Works for defective matrices; eigenvectors are never required here.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"eigenvalues require a square matrix, got {m.shape}")
    try:
        return scipy.linalg.eigvals(m)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericalError(f"general eigensolver failed: {exc}") from exc


def check_hermitian(a, rel: float = TOL.hermiticity_rel) -> np.ndarray:
    """Return the symmetrized (A + A^dagger)/2, or raise if A is too far from Hermitian."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"hermiticity check requires a square matrix, got {m.shape}")
    dev = np.linalg.norm(m - m.conj().T)
    scale = max(np.linalg.norm(m), 1.0)
    if dev > rel * scale:
        raise HermiticityError(
            f"matrix deviates from Hermitian by {dev:.3e} (allowed {rel * scale:.3e})"
        )
    return (m + m.conj().T) / 2


def eig_hermitian(a, rel: float = TOL.hermiticity_rel):
    """Eigendecomposition of a (tolerantly) Hermitian matrix.

    Returns (ascending real eigenvalues, unitary eigenvector matrix V) with
    A = V diag(w) V^dagger.
    """
    h = check_hermitian(a, rel)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"hermitian eigensolver failed: {exc}") from exc
    return w, v


def singular_values(a) -> np.ndarray:
    m = as_matrix(a)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc


def trace_norm(a) -> float:
    """Sum of singular values of A."""
    return float(np.sum(singular_values(a)))


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def matrix_exponential_i(h, sign: int = +1, rel: float = TOL.hermiticity_rel) -> np.ndarray:
    """Unitary exp(sign * i * H) of a Hermitian H, via its eigenbasis."""
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    w, v = eig_hermitian(h, rel)
    phases = np.exp(1j * sign * w)
    return (v * phases) @ v.conj().T


def is_unitary(u, tol: float = TOL.unitarity) -> bool:
    m = as_matrix(u)
    if m.shape[0] != m.shape[1]:
        return False
    return np.linalg.norm(m @ m.conj().T - np.eye(m.shape[0])) <= tol


def check_unitary(u, tol: float = TOL.unitarity, name: str = "U") -> np.ndarray:
    m = as_matrix(u)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got {m.shape}")
    dev = np.linalg.norm(m @ m.conj().T - np.eye(m.shape[0]))
    if dev > tol:
        raise ValueError(f"{name} is not unitary: ||UU+ - I||_F = {dev:.3e} > {tol:.1e}")
    return m


# --- matrix file format ---------------------------------------------------
# JSON object {"rows": n, "cols": m, "re": [...], "im": [...]} row-major.


def save_matrix(path, a) -> None:
    m = as_matrix(a)
    payload = {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": m.real.reshape(-1).tolist(),
        "im": m.imag.reshape(-1).tolist(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        payload = json.load(fh)
    try:
        rows, cols = int(payload["rows"]), int(payload["cols"])
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix file {path}: {exc}") from exc
    if re.size != rows * cols or im.size != rows * cols:
        raise ValueError(
            f"matrix file {path}: entry count {re.size}/{im.size} != {rows}x{cols}"
        )
    return (re + 1j * im).reshape(rows, cols)
