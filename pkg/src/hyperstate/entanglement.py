"""Entanglement of pure states: reduced states, Schmidt spectra, negativities,
biseparable overlap and the geometric measure."""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hypergraph import Hypergraph, mask_to_vertices, popcount
from .statevec import DENSE_MAX, StateVector, build_state

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-12
# Schmidt values below this are rounding noise; their square roots would be ~1e-8
SCHMIDT_ZERO = 1e-14


def check_cut(n: int, mask: int) -> None:
    if not 0 < mask < (1 << n) - 1:
        raise ValueError(f"subset mask {mask} must be a nonempty proper subset of {n} qubits")


def canonical_cut(n: int, mask: int) -> int:
    """Representative of ``{M, complement}``: the side holding qubit 0."""
    check_cut(n, mask)
    return mask if mask & 1 else ((1 << n) - 1) ^ mask


def bipartitions(n: int) -> list[int]:
    """Canonical cut masks (qubit 0 on the stored side), ascending."""
    return [m for m in range(1, (1 << n) - 1) if m & 1]


def _split(s: StateVector, mask: int) -> np.ndarray:
    """Amplitudes as a ``2^|A| x 2^|B|`` matrix; row index bits follow ascending qubits of A."""
    check_cut(s.n, mask)
    if s.n > DENSE_MAX:
        raise ValueError(f"dense states are capped at n={DENSE_MAX}")
    a = mask_to_vertices(mask)
    b = [q for q in range(s.n) if not (mask >> q) & 1]
    t = s.tensor()
    # C-order reshape treats the first axis as most significant
    t = t.transpose(list(reversed(a)) + list(reversed(b)))
    return t.reshape(1 << len(a), 1 << len(b))


def reduced_state(s: StateVector, subset: int) -> np.ndarray:
    """Partial trace onto the qubits in ``subset``."""
    m = _split(s, subset)
    return m @ m.conj().T


def eigenvalues(h: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Spectrum of a Hermitian matrix by cyclic complex Jacobi rotations, descending."""
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.conj().T, atol=HERMITIAN_TOL * max(1.0, np.abs(a).max()), rtol=0):
        raise ValueError("matrix is not Hermitian")
    dim = a.shape[0]
    scale = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diagonal(a)))
        if off <= tol * scale:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-17 * scale:
                    a[p, q] = a[q, p] = 0
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2 * r)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                w = np.conj(apq) / r
                # G = diag(1, w) @ [[c, s], [-s, c]] zeroes a[p, q] under G^H a G
                g = np.array([[c, s], [-s * w, c * w]])
                cols = a[:, [p, q]] @ g
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = g.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0
    return np.sort(np.diagonal(a).real)[::-1]


def schmidt(s: StateVector, cut: int) -> np.ndarray:
    """Squared Schmidt coefficients across ``cut``, descending."""
    side = cut if 2 * popcount(cut) <= s.n else ((1 << s.n) - 1) ^ cut
    lam = eigenvalues(reduced_state(s, side))
    return np.where(lam < SCHMIDT_ZERO, 0.0, lam)


def negativity(s: StateVector, cut: int) -> float:
    """``sum_{i<j} sqrt(lambda_i lambda_j)`` over the Schmidt spectrum."""
    root = np.sqrt(schmidt(s, cut))
    return float((root.sum() ** 2 - (root**2).sum()) / 2)


def genuine_negativity(s: StateVector) -> float:
    return min(negativity(s, m) for m in bipartitions(s.n))


def biseparable_overlap(s: StateVector) -> float:
    """Largest Schmidt value over all bipartitions."""
    return max(float(schmidt(s, m)[0]) for m in bipartitions(s.n))


def witness_threshold(H: Hypergraph) -> float:
    """Coefficient ``alpha`` of the fidelity witness ``alpha * 1 - |H><H|``."""
    return biseparable_overlap(build_state(H))


def single_qubit_max_eigs(s: StateVector) -> list[float]:
    return [float(schmidt(s, 1 << q)[0]) for q in range(s.n)]


def pair_max_eigs(s: StateVector) -> dict[tuple[int, int], float]:
    out = {}
    for a in range(s.n):
        for b in range(a + 1, s.n):
            out[(a, b)] = float(eigenvalues(reduced_state(s, (1 << a) | (1 << b)))[0])
    return out


# -- geometric measure -------------------------------------------------------


@dataclass(frozen=True)
class GeoConfig:
    restarts: int = 256
    max_sweeps: int = 500
    tol: float = 1e-13
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class GeometricResult:
    value: float
    overlap: float
    best_product_state: tuple[np.ndarray, ...]
    sweeps: int


@lru_cache(maxsize=None)
def _env_subscripts(n: int) -> tuple[str, ...]:
    letters = string.ascii_lowercase[:n]
    out = []
    for k in range(n):
        operands = [letters] + [f"z{letters[j]}" for j in range(n) if j != k]
        out.append(",".join(operands) + f"->z{letters[k]}")
    return tuple(out)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    idx = int(np.argmax(np.abs(v) > 1e-12))
    return v * (abs(v[idx]) / v[idx])


def geometric_measure(s: StateVector, cfg: GeoConfig = GeoConfig()) -> GeometricResult:
    """``1 - max |<phi|s>|^2`` over product states, by batched alternating updates.

    Each restart starts from a seeded Haar-random product state; sweeping over
    qubits, the local vector is replaced by the normalized contraction of the
    state with all other local vectors, which never decreases the overlap.
    """
    n = s.n
    t = s.tensor()
    rng = np.random.default_rng(cfg.seed)
    phi = rng.standard_normal((n, cfg.restarts, 2)) + 1j * rng.standard_normal((n, cfg.restarts, 2))
    phi /= np.linalg.norm(phi, axis=2, keepdims=True)
    subs = _env_subscripts(n)
    if n == 1:
        v = t / np.linalg.norm(t)
        return GeometricResult(0.0, 1.0, (_fix_phase(v),), 0)
    prev = np.zeros(cfg.restarts)
    sweeps, last = 0, None
    for sweeps in range(1, cfg.max_sweeps + 1):
        for k in range(n):
            others = [phi[j].conj() for j in range(n) if j != k]
            env = np.einsum(subs[k], t, *others, optimize=True)
            norm = np.linalg.norm(env, axis=1)
            if np.any(norm < prev - 1e-12):
                raise AssertionError("alternating update decreased the overlap")
            prev = norm
            phi[k] = env / np.where(norm > 0, norm, 1)[:, None]
        if last is not None and np.max(np.abs(norm - last)) < cfg.tol:
            break
        last = norm.copy()
    best = int(np.argmax(prev))
    ov = float(prev[best])
    vecs = tuple(_fix_phase(phi[j, best].copy()) for j in range(n))
    return GeometricResult(max(0.0, 1.0 - ov * ov), ov, vecs, sweeps)


def product_overlap(s: StateVector, vecs) -> complex:
    """``<phi_1 ... phi_n | s>``."""
    t = s.tensor()
    for v in reversed(vecs):
        t = t @ np.conj(v)
    return complex(t)
