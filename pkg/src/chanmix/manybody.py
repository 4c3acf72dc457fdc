"""Many-body channels: quasiperiodic short-range fermion chain and the
SYK model, exponentiated to a half-chain system/bath channel.

Fermions live on L sites mapped to spins by the Jordan-Wigner string;
site 1 is the slowest tensor factor and the first L/2 sites form the
system of the bipartition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import Channel, DensityMatrix
from .linalg import matrix_exponential_i, reshuffle

GOLDEN_ALPHA = (np.sqrt(5) - 1) / 2

_ANNIHILATE = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1| in {empty, occupied}
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

MAX_SITES_DEFAULT = 12


@dataclass(frozen=True)
class ManyBodySpec:
    model: str  # "sr" | "syk"
    n_sites: int
    v: float = 1.0
    h: float = 0.0
    alpha: float = GOLDEN_ALPHA
    j: float = 1.0
    seed: int = 0
    realizations: int = 1
    max_sites: int = MAX_SITES_DEFAULT

    def __post_init__(self):
        if self.model not in ("sr", "syk"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.n_sites % 2 != 0:
            raise ValueError(f"n_sites must be even for a half-chain bipartition, got {self.n_sites}")
        if not (2 <= self.n_sites <= self.max_sites):
            raise ValueError(f"n_sites={self.n_sites} outside [2, {self.max_sites}]")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        for name in ("v", "h", "alpha", "j"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def d_system(self) -> int:
        return 2 ** (self.n_sites // 2)


def build_fock_operators(n_sites: int, max_sites: int = MAX_SITES_DEFAULT) -> list[np.ndarray]:
    """Annihilation operators c_i (1-based site order) under Jordan-Wigner.

    c_i = Z^(i-1) x a x I^(L-i); creation operators are the adjoints.
    """
    if not (1 <= n_sites <= max_sites):
        raise ValueError(f"n_sites={n_sites} outside [1, {max_sites}]")
    ops = []
    for i in range(n_sites):
        factors = [_PAULI_Z] * i + [_ANNIHILATE] + [np.eye(2)] * (n_sites - i - 1)
        op = factors[0]
        for f in factors[1:]:
            op = np.kron(op, f)
        ops.append(op)
    return ops


def build_h_sr(spec: ManyBodySpec) -> np.ndarray:
    """Open-boundary hopping + nearest-neighbor interaction + quasiperiodic field."""
    if spec.model != "sr":
        raise ValueError("spec.model must be 'sr'")
    L = spec.n_sites
    cs = build_fock_operators(L, spec.max_sites)
    dim = 2**L
    h = np.zeros((dim, dim), dtype=complex)
    ns = [c.conj().T @ c for c in cs]
    for i in range(L - 1):
        hop = cs[i].conj().T @ cs[i + 1]
        h -= hop + hop.conj().T
        h += spec.v * ns[i] @ ns[i + 1]
    for i in range(L):
        h += spec.h * np.cos(2 * np.pi * spec.alpha * (i + 1)) * ns[i]
    return h


def _pair_indices(L: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(L) for j in range(i + 1, L)]


def sample_syk_couplings(L: int, j: float, rng: np.random.Generator) -> np.ndarray:
    """Couplings J_{ij;kl} on canonical pairs (i<j, k<l) as a matrix over
    pair indices, satisfying J_{ij;kl} = J*_{kl;ij}.

    Each independent entry is complex Gaussian with E|J|^2 = j^2 / L^3;
    entries fixed by the Hermiticity relation (diagonal in pair space)
    are real with the same variance.
    """
    pairs = _pair_indices(L)
    n = len(pairs)
    sd = j / np.sqrt(L**3)
    a = np.zeros((n, n), dtype=complex)
    for p in range(n):
        a[p, p] = rng.normal(0.0, sd)
        for q in range(p + 1, n):
            a[p, q] = rng.normal(0.0, sd / np.sqrt(2)) + 1j * rng.normal(0.0, sd / np.sqrt(2))
            a[q, p] = np.conj(a[p, q])
    return a


@lru_cache(maxsize=4)
def _pair_operator_stacks(L: int, max_sites: int):
    """Stacked c+_i c+_j and c_k c_l over canonical pairs (i<j)."""
    cs = build_fock_operators(L, max_sites)
    pairs = _pair_indices(L)
    create = np.stack([cs[i].conj().T @ cs[j].conj().T for i, j in pairs])
    destroy = np.stack([cs[k] @ cs[l] for k, l in pairs])
    return create, destroy


def build_h_syk(spec: ManyBodySpec, realization_index: int = 0) -> np.ndarray:
    """SYK Hamiltonian: all-to-all random four-fermion couplings.

    The tuple sum runs over all (i,j,k,l) with fully antisymmetrized
    couplings, and the Hermitian-conjugate term is added explicitly;
    this reproduces the reported L=8 ensemble statistics.  Deterministic
    for a given (seed, realization_index).
    """
    if spec.model != "syk":
        raise ValueError("spec.model must be 'syk'")
    L = spec.n_sites
    rng = np.random.default_rng((spec.seed, realization_index))
    a = sample_syk_couplings(L, spec.j, rng)
    create, destroy = _pair_operator_stacks(L, spec.max_sites)
    # antisymmetry folds the full tuple sum onto canonical pairs with weight 4
    mixed = np.tensordot(a, destroy, axes=(1, 0))  # sum over (kl) pair index
    s = 4.0 * np.einsum("pab,pbc->ac", create, mixed)
    return s + s.conj().T


def build_hamiltonian(spec: ManyBodySpec, realization_index: int = 0) -> np.ndarray:
    if spec.model == "sr":
        return build_h_sr(spec)
    return build_h_syk(spec, realization_index)


def manybody_unitary(spec: ManyBodySpec, realization_index: int = 0) -> np.ndarray:
    """U_H = exp(+iH) on the full 2^L dimensional chain."""
    return matrix_exponential_i(build_hamiltonian(spec, realization_index), +1, rel=1e-8)


def manybody_channel(spec: ManyBodySpec, realization_index: int = 0) -> Channel:
    """Half-chain channel L_H = (1/d) R2( U^R2 U^R2+ ) with d = 2^(L/2)."""
    u = manybody_unitary(spec, realization_index)
    d = spec.d_system
    ur = reshuffle(u)
    superop = reshuffle(ur @ ur.conj().T) / d
    return Channel(superop, d)


ANALYSES = ("spectrum", "gap", "entanglement", "delta_n", "sff")


def _realization_rows(spec: ManyBodySpec, realization: int, outputs, value,
                      n_max: int, epsilon: float) -> dict:
    """All requested analyses for one (parameter value, realization)."""
    from . import entanglement as ent
    from .ergodicity import (
        generalized_sff,
        iterate_convergence,
        scrambling_time,
        spectrum as spectrum_of,
    )

    u = manybody_unitary(spec, realization)
    ch = manybody_channel(spec, realization)
    sp = spectrum_of(ch)
    rows: dict[str, list] = {}
    if "spectrum" in outputs:
        rows["spectrum"] = [
            {"param_value": value, "realization": realization, "eig_index": i,
             "re": v.real, "im": v.imag, "abs": abs(v)}
            for i, v in enumerate(sp.values)
        ]
    if "gap" in outputs or "entanglement" in outputs:
        e_u = ent.operator_entanglement(u)
        e_star = ent.mixing_threshold(spec.d_system)
        rows["scalars"] = [{
            "param_value": value, "realization": realization,
            "lambda1_abs": sp.lambda1_abs, "gap": sp.gap,
            "op_ent": e_u, "e_star": e_star,
            "sufficient": e_u > e_star,
            "mean_abs_indicator": sp.mean_abs_indicator(),
        }]
    if "delta_n" in outputs:
        deltas = iterate_convergence(ch, neel_state(spec.n_sites // 2), n_max, epsilon)
        rows["delta_n"] = [
            {"param_value": value, "realization": realization, "n": n, "delta_n": dn}
            for n, dn in enumerate(deltas)
        ]
    if "sff" in outputs:
        ks = generalized_sff(ch, n_max)
        ns = scrambling_time(ks, spec.d_system)
        rows["sff"] = [
            {"param_value": value, "realization": realization, "n": n + 1,
             "K_n": k, "n_s": ns}
            for n, k in enumerate(ks)
        ]
    return rows


def _mean_rows(table: list[dict], group_keys: tuple, value_keys: tuple) -> list[dict]:
    """Ensemble means over realizations, reduced in fixed row order."""
    groups: dict[tuple, list[dict]] = {}
    for row in table:
        groups.setdefault(tuple(row[k] for k in group_keys), []).append(row)
    out = []
    for key, rows in groups.items():
        mean = dict(zip(group_keys, key))
        mean["realization"] = "mean"
        for vk in value_keys:
            vals = [r[vk] for r in rows if r[vk] is not None]
            if vals and isinstance(vals[0], bool):
                mean[vk] = all(vals)
            elif vals:
                mean[vk] = float(np.mean(vals))
            else:
                mean[vk] = None
        out.append(mean)
    return out


_MEAN_SPEC = {
    "spectrum": (("param_value", "eig_index"), ("re", "im", "abs")),
    "scalars": (("param_value",),
                ("lambda1_abs", "gap", "op_ent", "e_star", "sufficient",
                 "mean_abs_indicator")),
    "delta_n": (("param_value", "n"), ("delta_n",)),
    "sff": (("param_value", "n"), ("K_n", "n_s")),
}


def sweep(spec_template: ManyBodySpec, parameter: str, values, outputs,
          n_max: int = 30, epsilon: float | None = None, workers: int = 1) -> dict:
    """Run the requested analyses over a parameter sweep.

    Returns a dict of row tables keyed by analysis ("scalars" merges gap and
    entanglement).  Per-point failures are collected under "failures" rather
    than aborting the sweep.  Realizations use per-realization seeds so runs
    are reproducible regardless of worker count.
    """
    from concurrent.futures import ThreadPoolExecutor
    from dataclasses import replace

    from .config import TOL

    if parameter not in ("h", "L"):
        raise ValueError(f"sweep parameter must be 'h' or 'L', got {parameter!r}")
    values = list(values)
    if not values:
        raise ValueError("empty sweep values")
    unknown = set(outputs) - set(ANALYSES)
    if unknown:
        raise ValueError(f"unknown analyses: {sorted(unknown)}")
    eps = TOL.classify_manybody if epsilon is None else epsilon

    tasks = []
    for value in values:
        if parameter == "h":
            spec = replace(spec_template, h=float(value))
        else:
            spec = replace(spec_template, n_sites=int(value))
        for r in range(spec.realizations):
            tasks.append((spec, r, value))

    def run(task):
        spec, r, value = task
        try:
            return _realization_rows(spec, r, outputs, value, n_max, eps), None
        except Exception as exc:  # aggregated, not fatal
            return None, {"param_value": value, "realization": r, "error": str(exc)}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    tables: dict[str, list] = {}
    failures: list[dict] = []
    for rows, failure in results:
        if failure is not None:
            failures.append(failure)
            continue
        for name, rs in rows.items():
            tables.setdefault(name, []).extend(rs)
    for name, (group_keys, value_keys) in _MEAN_SPEC.items():
        if name in tables:
            tables[name] = tables[name] + _mean_rows(tables[name], group_keys, value_keys)
    if failures:
        tables["failures"] = failures
    return tables


def neel_state(l_sys: int) -> DensityMatrix:
    """Pure product state with odd sites (1-based) of the system occupied."""
    if l_sys < 1:
        raise ValueError("need at least one system site")
    occupied = [i for i in range(l_sys) if i % 2 == 0]
    index = 0
    for i in occupied:
        index |= 1 << (l_sys - 1 - i)  # site 1 is the slow bit
    vec = np.zeros(2**l_sys, dtype=complex)
    vec[index] = 1.0
    return DensityMatrix.pure(vec)
