"""GHZ-type arguments for fully connected k-uniform hypergraph states."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hypergraph import Hypergraph, popcount, xor_reduce
from .stabilizer import (
    StabilizerElement,
    apply_element,
    dense_ce,
    generator,
    product_of_generators,
)
from .statevec import DENSE_MAX, build_state, overlap, walsh_unnormalized

SYMBOLIC_MAX = 64
TERM_BRUTE_MAX = 20
LHV_MAX_BITS = 26


def lucas_odd(a: int, b: int) -> bool:
    """``C(a, b)`` is odd iff every bit of ``b`` is set in ``a``."""
    return 0 <= b <= a and (b & ~a) == 0


@dataclass(frozen=True)
class ParityCertificate:
    n: int
    k: int
    checks: tuple[tuple[int, int, int], ...]
    admissible: bool

    def failing(self) -> list[tuple[int, int, int]]:
        out = []
        for alpha, value, parity in self.checks:
            want = 1 if alpha == 0 else 0
            if parity != want:
                out.append((alpha, value, parity))
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "admissible": self.admissible,
            "checks": [
                {"alpha": a, "binomial": str(v), "parity": p} for a, v, p in self.checks
            ],
        }


def admissible(n: int, k: int) -> ParityCertificate:
    """``C(n,k)`` odd and ``C(n-a, k-a)`` even for ``0 < a < k``."""
    if not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    checks = tuple(
        (a, math.comb(n - a, k - a), 1 if lucas_odd(n - a, k - a) else 0) for a in range(k)
    )
    ok = checks[0][2] == 1 and all(p == 0 for _, _, p in checks[1:])
    return ParityCertificate(n, k, checks, ok)


def admissible_bigint(n: int, k: int) -> bool:
    """The same test by exact binomials."""
    return math.comb(n, k) % 2 == 1 and all(math.comb(n - a, k - a) % 2 == 0 for a in range(1, k))


def family(r: int, s: int) -> tuple[int, int]:
    if r < 1 or s < 0:
        raise ValueError("need r >= 1 and s >= 0")
    k = 2**r
    n = 2 ** (r + 1) - 1 + 2 * s * k
    assert admissible(n, k).admissible, (n, k)
    return n, k


def complete_uniform(n: int, k: int) -> Hypergraph:
    return Hypergraph(n, tuple(sum(1 << v for v in c) for c in itertools.combinations(range(n), k)))


@dataclass(frozen=True)
class InequalitySpec:
    n: int
    k: int
    hypergraph: Hypergraph
    terms: tuple[StabilizerElement, ...]
    quantum_value: float | None
    classical_bound: float


def mermin_operator(n: int, k: int, with_value: bool = True) -> InequalitySpec:
    """``sum_i g_i + prod_i g_i``; the product must collapse to ``-X^n``."""
    cert = admissible(n, k)
    if not cert.admissible:
        raise ValueError(f"({n},{k}) is not admissible; failing checks (alpha, C, parity): {cert.failing()}")
    if n > SYMBOLIC_MAX:
        raise ValueError(f"symbolic construction is capped at n={SYMBOLIC_MAX}")
    H = complete_uniform(n, k) if n <= 16 else None
    if H is None:
        raise ValueError("hypergraphs are limited to 16 vertices")
    gens = tuple(generator(H, i) for i in range(n))
    prod = product_of_generators(H)
    full = (1 << n) - 1
    if prod != StabilizerElement(n, full, -1, frozenset()):
        raise AssertionError(f"generator product did not reduce to -X^n: {prod.describe()}")
    spec = InequalitySpec(n, k, H, gens + (prod,), None, classical_bound_terms(n))
    if with_value and n <= DENSE_MAX:
        spec = InequalitySpec(n, k, H, spec.terms, quantum_value(spec), spec.classical_bound)
    return spec


def term_expectations(spec: InequalitySpec) -> list[float]:
    if spec.n > DENSE_MAX:
        raise ValueError(f"dense expectation values are capped at n={DENSE_MAX}")
    s = build_state(spec.hypergraph)
    return [overlap(s, apply_element(s, t)).real for t in spec.terms]


def quantum_value(spec: InequalitySpec) -> float:
    return float(sum(term_expectations(spec)))


def classical_bound_terms(n: int) -> float:
    """``max_t sum(t) - prod(t)`` over sign patterns ``t``."""
    if not 1 <= n <= 30:
        raise ValueError("need 1 <= n <= 30")
    if n > TERM_BRUTE_MAX:
        # the value only depends on the number m of negative entries
        return float(max(n - 2 * m - (-1) ** m for m in range(n + 1)))
    best = -math.inf
    chunk = 1 << min(n, 16)
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        neg = np.bitwise_count(idx).astype(np.int64)
        total = n - 2 * neg
        prod = 1 - 2 * (neg & 1)
        best = max(best, int((total - prod).max()))
    return float(best)


def diag_values(spec: InequalitySpec) -> np.ndarray:
    """``d[u, i]``: value of the diagonal part of ``g_i`` when qubits in ``u`` read ``z = -1``."""
    n = spec.n
    u = np.arange(1 << n, dtype=np.int64)
    out = np.empty((1 << n, n), dtype=np.int8)
    for i, g in enumerate(spec.terms[:n]):
        vals = np.ones(1 << n, dtype=np.int8)
        for f in g.diag_edges:
            c = np.where((u & f) == f, -1, 1).astype(np.int8)
            assert np.all(np.abs(c) == 1)
            vals *= c
        out[:, i] = g.phase * vals
    return out


def local_hv_max(spec: InequalitySpec) -> float:
    """Best local deterministic assignment of X and Z outcomes."""
    n = spec.n
    if 2 * n > LHV_MAX_BITS:
        raise ValueError(f"brute force needs 2n <= {LHV_MAX_BITS}")
    d = diag_values(spec).astype(np.int64)
    xs = np.arange(1 << n, dtype=np.int64)
    X = 1 - 2 * ((xs[:, None] >> np.arange(n)) & 1)
    prodx = X.prod(axis=1)
    best = -math.inf
    chunk = max(1, (1 << 22) >> n)
    for start in range(0, 1 << n, chunk):
        vals = X @ d[start : start + chunk].T - prodx[:, None]
        best = max(best, int(vals.max()))
    return float(best)


def z_expansion(H: Hypergraph, i: int) -> dict[int, Fraction]:
    """Coefficients of ``prod_{e containing i} C_{e minus i}`` in the ``{1, Z}`` basis of the other qubits.

    Keys are Z-support masks in the full labelling (bit ``i`` never set).
    """
    if H.n > DENSE_MAX:
        raise ValueError(f"expansion is capped at n={DENSE_MAX}")
    n = H.n
    g = generator(H, i)
    others = [q for q in range(n) if q != i]
    idx = np.arange(1 << (n - 1), dtype=np.int64)
    full_idx = np.zeros_like(idx)
    for j, q in enumerate(others):
        full_idx |= ((idx >> j) & 1) << q
    diag = (g.phase * g.diagonal()[full_idx]).astype(np.int64)
    w = walsh_unnormalized(diag)
    denom = 1 << (n - 1)
    out = {}
    for j in range(1 << (n - 1)):
        mask = 0
        for b, q in enumerate(others):
            if (j >> b) & 1:
                mask |= 1 << q
        out[mask] = Fraction(int(w[j]), denom)
    return out


def reconstruct_diagonal(coeffs: dict[int, Fraction], n: int, i: int) -> list[Fraction]:
    """Evaluate ``sum_m c_m Z^m`` on every basis state of the qubits other than ``i``."""
    others = [q for q in range(n) if q != i]
    out = []
    for j in range(1 << (n - 1)):
        x = 0
        for b, q in enumerate(others):
            if (j >> b) & 1:
                x |= 1 << q
        out.append(sum((c if popcount(m & x) % 2 == 0 else -c) for m, c in coeffs.items()))
    return out


def expansion_by_weight(coeffs: dict[int, Fraction]) -> dict[int, set[Fraction]]:
    out: dict[int, set[Fraction]] = {}
    for m, c in coeffs.items():
        out.setdefault(popcount(m), set()).add(c)
    return out


def _a_factors(n: int, k: int, i: int) -> tuple[list[int], list[int]]:
    rest = [q for q in range(n) if q != i]
    lhs = []
    for j in rest:
        for c in itertools.combinations(rest, k - 1):
            if j in c:
                lhs.append(sum(1 << v for v in c))
    rhs = [sum(1 << v for v in c) for c in itertools.combinations(rest, k - 1)]
    return lhs, rhs


def a_observable_identity(n: int, k: int, i: int) -> bool:
    """``prod_{j != i} A_j == prod_{e containing i} C_{e minus i}`` as XOR-reduced factor sets.

    ``A_j`` multiplies ``C_e`` over the ``(k-1)``-subsets of the other vertices that contain ``j``.
    """
    if not 0 <= i < n or not 2 <= k <= n:
        raise ValueError("bad (n, k, i)")
    lhs, rhs = _a_factors(n, k, i)
    return xor_reduce(lhs) == xor_reduce(rhs)


def a_observable_identity_dense(n: int, k: int, i: int) -> bool:
    if n > 5:
        raise ValueError("dense check is capped at n=5")
    lhs, rhs = _a_factors(n, k, i)
    dim = 1 << n
    L, R = np.eye(dim), np.eye(dim)
    for f in lhs:
        L = L @ dense_ce(n, f)
    for f in rhs:
        R = R @ dense_ce(n, f)
    return bool(np.allclose(L, R, atol=1e-12, rtol=0))


def describe_terms(spec: InequalitySpec) -> list[str]:
    out = [t.describe() for t in spec.terms[:-1]]
    last = spec.terms[-1]
    out.append(last.describe())
    return out


def diag_factor_count(spec: InequalitySpec, i: int) -> int:
    return len(spec.terms[i].diag_edges)

