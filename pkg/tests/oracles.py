"""Independent reference implementations used only by the tests.

They share no code with the package beyond the Hypergraph container.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np
from hypothesis import strategies as st

from hyperstate.hypergraph import Hypergraph

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def kron_all(ops):
    # qubit 0 is the least significant bit, so it goes last in the Kronecker chain
    return reduce(np.kron, list(reversed(ops)))


def local_op(n, k, op):
    return kron_all([op if q == k else I2 for q in range(n)])


def dense_hypergraph_state(n, edge_sets, sign=1):
    """|+>^n followed by explicit diagonal controlled-phase matrices."""
    psi = np.ones(1 << n, dtype=complex) / np.sqrt(1 << n)
    for e in edge_sets:
        diag = np.ones(1 << n)
        for x in range(1 << n):
            if all((x >> (v - 1)) & 1 for v in e):
                diag[x] = -1
        psi = diag * psi
    return sign * psi


def partial_transpose_negativity(psi, n, side_qubits):
    """Sum of |negative eigenvalues| of the partial transpose (numpy eigvalsh)."""
    rho = np.outer(psi, psi.conj())
    t = rho.reshape([2] * (2 * n))
    # axis j (< n) of the reshaped ket index is qubit n-1-j
    axes = list(range(2 * n))
    for q in side_qubits:
        a, b = n - 1 - q, 2 * n - 1 - q
        axes[a], axes[b] = axes[b], axes[a]
    pt = t.transpose(axes).reshape(1 << n, 1 << n)
    w = np.linalg.eigvalsh(pt)
    return float(-w[w < 0].sum())


def walsh_direct(d):
    return np.array(
        [sum(d[x] * (-1) ** bin(x & w).count("1") for x in range(len(d))) for w in range(len(d))]
    )


def gf2_solve(M, k):
    """Solve M l = k over GF(2) by Gauss-Jordan elimination; None if singular."""
    M = np.array(M, dtype=np.int64) % 2
    n = M.shape[0]
    aug = np.concatenate([M, np.array(k, dtype=np.int64).reshape(n, 1) % 2], axis=1)
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r, col]), None)
        if piv is None:
            return None
        aug[[row, piv]] = aug[[piv, row]]
        for r in range(n):
            if r != row and aug[r, col]:
                aug[r] ^= aug[row]
        row += 1
    return aug[:, n]


def all_pauli_images(psi, n):
    """Every X^a Z^b image of a state (dense)."""
    out = []
    for a in range(1 << n):
        for b in range(1 << n):
            ops = []
            for q in range(n):
                op = I2
                if (b >> q) & 1:
                    op = Z @ op
                if (a >> q) & 1:
                    op = X @ op
                ops.append(op)
            out.append(kron_all(ops) @ psi)
    return out


@st.composite
def hypergraphs(draw, min_n=1, max_n=5, with_local=True):
    n = draw(st.integers(min_n, max_n))
    masks = [m for m in range(1, 1 << n) if with_local or m & (m - 1)]
    chosen = draw(st.lists(st.sampled_from(masks), unique=True, max_size=len(masks))) if masks else []
    sign = draw(st.sampled_from([1, -1])) if with_local else 1
    return Hypergraph(n, tuple(chosen), sign)


def full_edge_hypergraphs(rng, n, p=0.4):
    full = (1 << n) - 1
    masks = [m for m in range(1, full) if m & (m - 1) and rng.random() < p]
    return Hypergraph.from_masks(n, masks + [full])


def uniform_edges(n, k):
    return [sum(1 << v for v in c) for c in itertools.combinations(range(n), k)]


def _truth(n, pred):
    return sum(1 << x for x in range(1 << n) if pred(x))


def full_edge_sweep(n, low_bits=20):
    """Exhaustive check over every hypergraph on n <= 5 vertices containing the full edge.

    Each Boolean function is a 2^n-bit truth table packed in a uint64, so the
    three claims become popcount tests: F odd, no maximally mixed qubit
    (the X_i-shifted table differs in exactly half the bits iff offdiag_i = 0),
    and every Walsh coefficient nonzero. Local (1-element) edges and the sign
    only add affine terms, which preserve all three claims, so non-local edge
    sets cover everything. Returns (number checked, number of violations).
    """
    assert 2 <= n <= 6
    full = (1 << n) - 1
    masks = [m for m in range(1, full) if m & (m - 1)]
    dt = np.uint64
    monos = [_truth(n, lambda x, m=m: x & m == m) for m in masks]
    top = _truth(n, lambda x: x == full)
    lin = [dt(_truth(n, lambda x, w=w: bin(x & w).count("1") & 1)) for w in range(1 << n)]
    shifts = [(dt(_truth(n, lambda x, i=i: not (x >> i) & 1)), dt(1 << i)) for i in range(n)]
    lo = min(low_bits, len(masks))
    base = np.zeros(1, dtype=dt)
    for m in monos[:lo]:
        base = np.concatenate([base, base ^ dt(m)])
    half = 1 << (n - 1)
    bad = 0
    for hi in range(1 << (len(masks) - lo)):
        c = top
        for j, m in enumerate(monos[lo:]):
            if (hi >> j) & 1:
                c ^= m
        T = base ^ dt(c)
        ok = (np.bitwise_count(T) & 1) == 1
        for keep, sh in shifts:
            moved = ((T & keep) << sh) | ((T >> sh) & keep)
            ok &= np.bitwise_count(T ^ moved) != half
        for L in lin:
            ok &= np.bitwise_count(T ^ L) != half
        bad += int(np.count_nonzero(~ok))
    return 1 << len(masks), bad
