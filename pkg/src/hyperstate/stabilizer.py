"""Nonlocal stabilizer of hypergraph states, handled symbolically.

An element is ``phase * X^{x_mask} * prod_{f in diag_edges} C_f``; the diagonal
part acts first. Products are formed exactly by conjugating controlled-phase
factors through X strings, so no dense matrices are needed except for checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, link, mask_to_vertices, xor_reduce
from .statevec import StateVector, apply_z_mask, build_state

DENSE_CHECK_MAX = 5


@dataclass(frozen=True)
class StabilizerElement:
    n: int
    x_mask: int = 0
    phase: int = 1
    diag_edges: frozenset[int] = frozenset()

    @classmethod
    def make(cls, n: int, x_mask: int, phase: int, factors) -> "StabilizerElement":
        """XOR-reduce ``factors``; an empty mask contributes ``C_{} = -1`` to the phase."""
        reduced = xor_reduce(factors)
        if 0 in reduced:
            phase = -phase
            reduced = reduced - {0}
        return cls(n, x_mask, phase, frozenset(reduced))

    @classmethod
    def identity(cls, n: int) -> "StabilizerElement":
        return cls(n)

    def __mul__(self, other: "StabilizerElement") -> "StabilizerElement":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        moved = []
        for f in self.diag_edges:
            moved.extend(conjugate_by_x(f, other.x_mask))
        return StabilizerElement.make(
            self.n,
            self.x_mask ^ other.x_mask,
            self.phase * other.phase,
            moved + list(other.diag_edges),
        )

    def diagonal(self) -> np.ndarray:
        """The +-1 diagonal of the controlled-phase part."""
        idx = np.arange(1 << self.n)
        d = np.ones(1 << self.n)
        for f in self.diag_edges:
            d[(idx & f) == f] *= -1
        return d

    def to_dense(self) -> np.ndarray:
        dim = 1 << self.n
        idx = np.arange(dim)
        m = np.zeros((dim, dim), dtype=complex)
        m[idx ^ self.x_mask, idx] = self.phase * self.diagonal()
        return m

    def describe(self) -> str:
        """Readable operator string, e.g. ``-X1 X2 X3`` or ``X1 C{2,3}``."""
        parts = [f"X{v + 1}" for v in mask_to_vertices(self.x_mask)]
        for f in sorted(self.diag_edges, key=lambda m: (bin(m).count("1"), mask_to_vertices(m))):
            vs = [v + 1 for v in mask_to_vertices(f)]
            parts.append(f"Z{vs[0]}" if len(vs) == 1 else "C{" + ",".join(map(str, vs)) + "}")
        body = " ".join(parts) if parts else "1"
        return ("-" if self.phase == -1 else "") + body


def conjugate_by_x(f: int, x_mask: int) -> list[int]:
    """Masks ``f \\ g`` for every ``g`` within ``f & x_mask``: ``X C_f X = prod C_{f\\g}``."""
    K = f & x_mask
    return [f & ~g for g in subsets(K)]


def subsets(mask: int):
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def generator(H: Hypergraph, i: int) -> StabilizerElement:
    """``g_i = X_i (x) prod_{e containing i} C_{e \\ {i}}``, times the hypergraph's sign handling."""
    return StabilizerElement.make(H.n, 1 << i, 1, link(H, i))


def group_element(H: Hypergraph, x: int) -> StabilizerElement:
    if not 0 <= x < 1 << H.n:
        raise ValueError("index out of range")
    out = StabilizerElement.identity(H.n)
    for i in mask_to_vertices(x):
        out = out * generator(H, i)
    return out


def apply_element(s: StateVector, g: StabilizerElement) -> StateVector:
    if s.n != g.n:
        raise ValueError("dimension mismatch")
    amps = s.amps * g.diagonal()
    amps = amps[np.arange(1 << s.n) ^ g.x_mask]
    return StateVector(s.n, g.phase * amps)


def check_stabilized(H: Hypergraph, state: StateVector | None = None) -> bool:
    """Whether every generator of ``H`` fixes ``state`` (default: the state of ``H``) exactly."""
    s = build_state(H) if state is None else state
    return all(
        np.array_equal(apply_element(s, generator(H, i)).amps, s.amps) for i in range(H.n)
    )


def basis_state(H: Hypergraph, k: int) -> StateVector:
    """``Z^k |H>``; these ``2^n`` states form an orthonormal basis."""
    return apply_z_mask(build_state(H), k)


def _require_dense(n: int) -> None:
    if n > DENSE_CHECK_MAX:
        raise ValueError(f"dense checks are capped at n={DENSE_CHECK_MAX}")


def projector_check(H: Hypergraph) -> float:
    """Max deviation between ``2^-n sum_x S_x`` and ``|H><H|``."""
    _require_dense(H.n)
    dim = 1 << H.n
    total = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        total += group_element(H, x).to_dense()
    psi = build_state(H).amps
    return float(np.max(np.abs(total / dim - np.outer(psi, psi.conj()))))


def projector_product_check(H: Hypergraph) -> float:
    """Max deviation between ``prod_i (g_i + 1)/2`` and ``|H><H|``."""
    _require_dense(H.n)
    dim = 1 << H.n
    prod = np.eye(dim, dtype=complex)
    for i in range(H.n):
        prod = prod @ ((generator(H, i).to_dense() + np.eye(dim)) / 2)
    psi = build_state(H).amps
    return float(np.max(np.abs(prod - np.outer(psi, psi.conj()))))


# -- dense verification of the commutation rules -----------------------------


def dense_ce(n: int, e: int) -> np.ndarray:
    """Dense ``C_e``; ``C_{} = -1``."""
    idx = np.arange(1 << n)
    return np.diag(np.where((idx & e) == e, -1.0, 1.0)).astype(complex)


def dense_x(n: int, mask: int) -> np.ndarray:
    dim = 1 << n
    idx = np.arange(dim)
    m = np.zeros((dim, dim), dtype=complex)
    m[idx ^ mask, idx] = 1
    return m


def verify_lemma1(n: int, e: int, k: int) -> bool:
    """``X_k C_e X_k = C_e C_{e\\k}`` and ``C_e X_k C_e = X_k C_{e\\k}`` for ``k`` in ``e``."""
    _require_dense(n)
    if not (e >> k) & 1:
        raise ValueError("k must belong to e")
    ce, xk, rest = dense_ce(n, e), dense_x(n, 1 << k), dense_ce(n, e & ~(1 << k))
    first = np.allclose(xk @ ce @ xk, ce @ rest, atol=1e-12, rtol=0)
    second = np.allclose(ce @ xk @ ce, xk @ rest, atol=1e-12, rtol=0)
    return bool(first and second)


def verify_lemma2(n: int, e: int, K: int) -> bool:
    """``C_e X_K = X_K prod_{f subset K} C_{e\\f}`` for ``K`` within ``e``."""
    _require_dense(n)
    if K & ~e:
        raise ValueError("K must be a subset of e")
    xK = dense_x(n, K)
    rhs = xK.copy()
    for f in subsets(K):
        rhs = rhs @ dense_ce(n, e & ~f)
    return bool(np.allclose(dense_ce(n, e) @ xK, rhs, atol=1e-12, rtol=0))


def lemma_table(n: int):
    """Yield ``(rule, e, k_or_K, ok)`` over every admissible pair on ``n`` qubits."""
    for e in range(1, 1 << n):
        for k in mask_to_vertices(e):
            yield ("rules", e, 1 << k, verify_lemma1(n, e, k))
    for e in range(1, 1 << n):
        for K in subsets(e):
            if K:
                yield ("power-set", e, K, verify_lemma2(n, e, K))


def commute_dense(a: StabilizerElement, b: StabilizerElement) -> bool:
    A, B = a.to_dense(), b.to_dense()
    return bool(np.allclose(A @ B, B @ A, atol=1e-12, rtol=0))


def all_generators(H: Hypergraph) -> list[StabilizerElement]:
    return [generator(H, i) for i in range(H.n)]


def product_of_generators(H: Hypergraph) -> StabilizerElement:
    return group_element(H, (1 << H.n) - 1)


__all__ = [
    "StabilizerElement",
    "all_generators",
    "apply_element",
    "basis_state",
    "check_stabilized",
    "commute_dense",
    "conjugate_by_x",
    "generator",
    "group_element",
    "lemma_table",
    "product_of_generators",
    "projector_check",
    "projector_product_check",
    "verify_lemma1",
    "verify_lemma2",
]
