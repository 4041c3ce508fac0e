"""Dense state vectors, hypergraph-state amplitudes and Walsh-Hadamard statistics.

Amplitude index convention: bit ``i`` of the integer index is the value of qubit ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, link, popcount

DENSE_MAX = 7
SUPPORT_MAX = 16
EQ_TOL = 1e-12
UNITARY_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def z_phase(alpha: float) -> np.ndarray:
    """``diag(1, e^{i alpha})``."""
    return np.array([[1, 0], [0, np.exp(1j * alpha)]], dtype=complex)


def x_phase(alpha: float) -> np.ndarray:
    return HADAMARD @ z_phase(alpha) @ HADAMARD


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary (QR of a complex Gaussian, phases fixed)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return u.shape == (2, 2) and np.allclose(u.conj().T @ u, I2, atol=tol, rtol=0)


@dataclass(frozen=True)
class StateVector:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got shape {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_kets(cls, terms: dict[str, complex], normalize: bool = True) -> "StateVector":
        """Build from ``{"0011": c, ...}``; character ``j`` of the key is qubit ``j``."""
        n = len(next(iter(terms)))
        amps = np.zeros(1 << n, dtype=complex)
        for ket, c in terms.items():
            if len(ket) != n:
                raise ValueError("inconsistent ket lengths")
            amps[sum(1 << j for j, ch in enumerate(ket) if ch == "1")] += c
        if normalize:
            amps /= np.linalg.norm(amps)
        return cls(n, amps)

    def tensor(self) -> np.ndarray:
        """Amplitudes as an ``n``-axis tensor with axis ``k`` = qubit ``k``."""
        return self.amps.reshape((2,) * self.n).transpose(tuple(reversed(range(self.n))))

    @classmethod
    def from_tensor(cls, t: np.ndarray) -> "StateVector":
        n = t.ndim
        return cls(n, np.ascontiguousarray(t.transpose(tuple(reversed(range(n))))).reshape(-1))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def _indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def boolean_f(H: Hypergraph, x: int) -> int:
    """``f(x) = XOR over edges of AND of the edge's bits``; the sign is the empty monomial."""
    if not 0 <= x < 1 << H.n:
        raise ValueError("bitstring out of range")
    f = 1 if H.sign == -1 else 0
    for e in H.edges:
        if x & e == e:
            f ^= 1
    return f


def f_table(n: int, masks, constant: int = 0) -> np.ndarray:
    """Truth table (uint8, length ``2^n``) of ``constant XOR sum_e prod_{i in e} x_i``."""
    idx = _indices(n)
    f = np.full(1 << n, constant & 1, dtype=np.uint8)
    for e in masks:
        f ^= ((idx & e) == e).astype(np.uint8)
    return f


def boolean_table(H: Hypergraph) -> np.ndarray:
    return f_table(H.n, H.edges, 1 if H.sign == -1 else 0)


def build_state(H: Hypergraph) -> StateVector:
    if H.n > DENSE_MAX:
        raise ValueError(f"dense states are capped at n={DENSE_MAX}")
    signs = 1.0 - 2.0 * boolean_table(H)
    return StateVector(H.n, signs * 2.0 ** (-H.n / 2))


def plus_state(n: int) -> StateVector:
    return StateVector(n, np.full(1 << n, 2.0 ** (-n / 2)))


def apply_ce(s: StateVector, e: int) -> StateVector:
    """Controlled phase on the qubits of ``e``; ``e = 0`` is the global sign."""
    if not 0 <= e < 1 << s.n:
        raise ValueError("edge mask out of range")
    idx = _indices(s.n)
    amps = s.amps.copy()
    amps[(idx & e) == e] *= -1
    return StateVector(s.n, amps)


def apply_local(s: StateVector, k: int, u: np.ndarray) -> StateVector:
    if not 0 <= k < s.n:
        raise IndexError(f"qubit {k} out of range")
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ValueError("gate is not unitary")
    view = s.amps.reshape(1 << (s.n - 1 - k), 2, 1 << k)
    return StateVector(s.n, np.einsum("ab,xby->xay", u, view).reshape(-1))


def apply_product(s: StateVector, unitaries) -> StateVector:
    """Apply ``unitaries[k]`` on qubit ``k`` for every qubit."""
    for k, u in enumerate(unitaries):
        s = apply_local(s, k, u)
    return s


def apply_x_mask(s: StateVector, mask: int) -> StateVector:
    """Pauli X on every qubit in ``mask`` (an index permutation)."""
    return StateVector(s.n, s.amps[_indices(s.n) ^ mask])


def apply_z_mask(s: StateVector, mask: int) -> StateVector:
    parity = np.bitwise_count(_indices(s.n) & mask) & 1
    return StateVector(s.n, s.amps * (1 - 2 * parity.astype(float)))


def overlap(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return complex(np.vdot(a.amps, b.amps))


def equal_up_to_phase(a: StateVector, b: StateVector, tol: float = 1e-10) -> bool:
    if a.n != b.n:
        return False
    ov = overlap(a, b)
    if abs(ov) < 1e-300:
        return False
    phase = ov / abs(ov)
    return bool(np.max(np.abs(a.amps * phase - b.amps)) < tol)


def _walsh_inplace(v: np.ndarray) -> np.ndarray:
    n = v.shape[0]
    h = 1
    while h < n:
        v = v.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v = np.stack((a + b, a - b), axis=1)
        h *= 2
    return v.reshape(n)


def walsh_unnormalized(d) -> np.ndarray:
    """``sum_x d(x) (-1)^{x.w}`` by butterflies; exact on integer input."""
    d = np.asarray(d)
    size = d.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError("length must be a power of two")
    return _walsh_inplace(d.copy())


def walsh_transform(d) -> np.ndarray:
    """``fhat(w) = 2^{-n} sum_x d(x) (-1)^{x.w}``."""
    d = np.asarray(d, dtype=float)
    return walsh_unnormalized(d) / d.shape[0]


@dataclass(frozen=True)
class SupportStats:
    F: int
    d: int
    supp_fpm: int
    F_i: tuple[int, ...]
    offdiag_i: tuple[float, ...]


def support_stats(H: Hypergraph) -> SupportStats:
    if H.n > SUPPORT_MAX:
        raise ValueError(f"support statistics are capped at n={SUPPORT_MAX}")
    n = H.n
    f = boolean_table(H)
    fpm = walsh_unnormalized(1 - 2 * f.astype(np.int64))
    F_i = []
    for i in range(n):
        lk = link(H, i)
        fi = f_table(n, [m for m in lk if m], 1 if 0 in lk else 0)
        # the link never involves qubit i, so every value is counted twice
        F_i.append(int(fi.sum()) // 2)
    return SupportStats(
        F=int(f.sum()),
        d=max((popcount(e) for e in H.edges), default=0),
        supp_fpm=int(np.count_nonzero(fpm)),
        F_i=tuple(F_i),
        offdiag_i=tuple((2 ** (n - 1) - 2 * Fi) / 2**n for Fi in F_i),
    )


def dyadic_strings(s: StateVector, tol: float = EQ_TOL) -> list[str] | None:
    """``['+', '-', ...] * 1/sqrt(2^n)`` rendering when every amplitude is real ``+-2^{-n/2}``."""
    unit = 2.0 ** (-s.n / 2)
    out = []
    for a in s.amps:
        if abs(a.imag) > tol or abs(abs(a.real) - unit) > tol:
            return None
        out.append(("+" if a.real > 0 else "-") + f"1/sqrt({1 << s.n})")
    return out


def state_to_json(s: StateVector) -> dict:
    return {"n": s.n, "amps": [[float(a.real), float(a.imag)] for a in s.amps]}


def state_from_json(obj: dict) -> StateVector:
    return StateVector(int(obj["n"]), np.array([complex(re, im) for re, im in obj["amps"]]))
