"""Local-unitary equivalence: trace decompositions, the phase-fixed standard
form, genericity of LME states and the hypergraph LU decision."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .classify import lp_equivalent, pauli_equivalent_fixed_labels
from .entanglement import bipartitions, reduced_state, schmidt
from .hypergraph import Hypergraph, Permutation, permute, strip_local
from .statevec import (
    DENSE_MAX,
    PAULI_X,
    StateVector,
    apply_local,
    apply_product,
    boolean_table,
    build_state,
    equal_up_to_phase,
    support_stats,
    walsh_unnormalized,
    z_phase,
)

DIAG_TOL = 1e-10
FORM_TOL = 1e-9
GENERIC_TOL = 1e-10
COEFF_ZERO = 1e-9
DEGENERATE_TOL = 1e-10
LU_DECISION_MAX = 6

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class TraceDecomposition:
    state: StateVector
    local_units: tuple[np.ndarray, ...]
    eigs: tuple[tuple[float, float], ...]
    x_flips: int = 0

    @property
    def degenerate(self) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(self.eigs) if abs(a - b) < DEGENERATE_TOL)

    @property
    def is_sorted(self) -> bool:
        return all(a >= b - DEGENERATE_TOL for a, b in self.eigs)


def _eigvecs_2x2(rho: np.ndarray) -> tuple[np.ndarray, tuple[float, float]]:
    """Unitary with eigenvector rows, ordered so the vector nearest ``|0>`` comes first."""
    w, v = np.linalg.eigh(rho)
    vecs = []
    for j in range(2):
        u = v[:, j]
        lead = u[0] if abs(u[0]) > 1e-12 else u[1]
        vecs.append((u * (abs(lead) / lead), float(w[j])))
    vecs.sort(key=lambda p: (-round(abs(p[0][0]), 12), -round(p[0][1].real, 12)))
    U = np.array([vecs[0][0].conj(), vecs[1][0].conj()])
    return U, (vecs[0][1], vecs[1][1])


def _check_dense(s: StateVector) -> None:
    if s.n > DENSE_MAX:
        raise ValueError(f"dense states are capped at n={DENSE_MAX}")


def trace_decomposition(s: StateVector) -> TraceDecomposition:
    """Diagonalize every single-qubit reduction by a local unitary."""
    _check_dense(s)
    units, eigs = [], []
    out = s
    for i in range(s.n):
        U, mu = _eigvecs_2x2(reduced_state(out, 1 << i))
        out = apply_local(out, i, U)
        units.append(U)
        eigs.append(mu)
    for i in range(s.n):
        rho = reduced_state(out, 1 << i)
        if abs(rho[0, 1]) > DIAG_TOL:
            raise AssertionError(f"reduction of qubit {i} not diagonal: {abs(rho[0, 1]):.3g}")
    return TraceDecomposition(out, tuple(units), tuple(eigs))


def sorted_trace_decomposition(t: TraceDecomposition) -> TraceDecomposition:
    """Apply X wherever the ``|0>`` population is the smaller eigenvalue."""
    state, units, eigs, flips = t.state, list(t.local_units), list(t.eigs), t.x_flips
    for i, (a, b) in enumerate(t.eigs):
        if a < b - DEGENERATE_TOL:
            state = apply_local(state, i, PAULI_X)
            units[i] = PAULI_X @ units[i]
            eigs[i] = (b, a)
            flips ^= 1 << i
    return TraceDecomposition(state, tuple(units), tuple(eigs), flips)


def sorting_branches(t: TraceDecomposition) -> list[TraceDecomposition]:
    """The sorted decomposition, plus both orders on every degenerate qubit."""
    base = sorted_trace_decomposition(t)
    out = []
    deg = base.degenerate
    for choice in itertools.product((0, 1), repeat=len(deg)):
        state, units, flips = base.state, list(base.local_units), base.x_flips
        for q, c in zip(deg, choice):
            if c:
                state = apply_local(state, q, PAULI_X)
                units[q] = PAULI_X @ units[q]
                flips ^= 1 << q
        out.append(TraceDecomposition(state, tuple(units), base.eigs, flips))
    return out


# -- GF(2) helpers -------------------------------------------------------------


def _bits(x: int, n: int) -> np.ndarray:
    return np.array([(x >> i) & 1 for i in range(n)], dtype=np.int64)


def gf2_rank(rows) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        r = int(r)
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def greedy_independent(vectors) -> tuple[list[int], int | None]:
    """Greedy GF(2)-independent subsequence, and the first vector dependent on its predecessors."""
    basis: dict[int, int] = {}
    chosen, first_dep = [], None
    for v in vectors:
        r = v
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                break
            r ^= basis[top]
        if r:
            basis[r.bit_length() - 1] = r
            chosen.append(v)
        elif v and first_dep is None:
            first_dep = v
    return chosen, first_dep


# -- standard form -------------------------------------------------------------


@dataclass(frozen=True)
class PhaseFixing:
    lambda_set: tuple[int, ...]
    lambda_bar: tuple[int, ...]
    M: np.ndarray
    global_phase_rule: str


@dataclass(frozen=True)
class StandardForm:
    form: StateVector
    status: str
    reason: str = ""
    phase_fixing: PhaseFixing | None = None
    unitaries: tuple[np.ndarray, ...] = ()
    global_phase: float = 0.0
    alphas: tuple[float, ...] = field(default=())

    @property
    def unique(self) -> bool:
        return self.status == "unique"


def _mod2pi(a):
    return np.mod(a, TWO_PI)


def standard_form(s: StateVector) -> StandardForm:
    """Phase-fixed sorted trace decomposition; ``inconclusive`` outside the generic case."""
    _check_dense(s)
    n = s.n
    t = sorted_trace_decomposition(trace_decomposition(s))
    if t.degenerate:
        return StandardForm(t.state, "inconclusive", f"degenerate single-qubit spectrum on qubits {list(t.degenerate)}")
    lam = t.state.amps
    support = [x for x in range(1 << n) if abs(lam[x]) > COEFF_ZERO]
    bar, first_dep = greedy_independent([x for x in support if x])
    if abs(lam[0]) > COEFF_ZERO:
        anchor, rule = 0, "lambda_0"
    elif first_dep is not None:
        anchor, rule = first_dep, f"first_dependent:{first_dep}"
    else:
        anchor, rule = None, "none"
    M = np.array([_bits(x, n) for x in bar], dtype=np.int64).reshape(len(bar), n)
    fixing = PhaseFixing(tuple(support), tuple(bar), M, rule)
    chosen = ([anchor] if anchor is not None else []) + bar
    A = np.array([np.concatenate(([1], _bits(x, n))) for x in chosen], dtype=float)
    target = -np.angle(lam[chosen])
    beta, *_ = np.linalg.lstsq(A, target, rcond=None)
    if np.max(np.abs(np.exp(1j * (A @ beta)) - np.exp(1j * target))) > 1e-9:
        return StandardForm(t.state, "inconclusive", "anchor phase conflicts with the independent rows", fixing)
    # every supported coefficient must be pinned by an integer combination of chosen rows
    rows = np.array([np.concatenate(([1], _bits(x, n))) for x in support], dtype=float)
    coef, *_ = np.linalg.lstsq(A.T, rows.T, rcond=None)
    if np.max(np.abs(A.T @ coef - rows.T), initial=0) > 1e-9 or np.max(np.abs(coef - np.round(coef)), initial=0) > 1e-9:
        return StandardForm(t.state, "inconclusive", "phase fixing is not unique (non-unimodular row set)", fixing)
    beta = _mod2pi(beta)
    alpha0, alphas = float(beta[0]), beta[1:]
    if np.max(np.abs(lam.imag)) < 1e-12 and A.shape[0] == A.shape[1]:
        # real coefficients force every phase to 0 or pi
        r = np.mod(alpha0, np.pi)
        assert min(r, np.pi - r) < 1e-9, f"real state gave alpha_0 = {alpha0}"
    W = tuple(z_phase(a) @ U for a, U in zip(alphas, t.local_units))
    form = StateVector(n, np.exp(1j * alpha0) * apply_product(s, W).amps)
    expect = np.exp(1j * alpha0) * apply_product(t.state, [z_phase(a) for a in alphas]).amps
    assert np.max(np.abs(form.amps - expect)) < 1e-9
    return StandardForm(form, "unique", "", fixing, W, alpha0, tuple(float(a) for a in alphas))


@dataclass(frozen=True)
class LUResult:
    verdict: str
    witnesses: tuple[np.ndarray, ...] = ()
    reason: str = ""
    deviation: float | None = None


def spectra_mismatch(a: StateVector, b: StateVector, tol: float = FORM_TOL) -> int | None:
    """First cut mask whose Schmidt spectra differ; these are LU invariants."""
    for m in bipartitions(a.n):
        if np.max(np.abs(schmidt(a, m) - schmidt(b, m))) > tol:
            return m
    return None


def apply_witnesses(b: StateVector, witnesses) -> StateVector:
    return apply_product(b, witnesses)


def lu_equivalent_generic(a: StateVector, b: StateVector, tol: float = FORM_TOL) -> LUResult:
    """Compare standard forms; when equal, return verified ``U_i`` with ``(x) U_i |b> ~ |a>``."""
    if a.n != b.n:
        return LUResult("inequivalent", reason="different qubit counts")
    cut = spectra_mismatch(a, b, tol)
    if cut is not None:
        return LUResult("inequivalent", reason=f"Schmidt spectra differ across cut {cut:#b}")
    sa, sb = standard_form(a), standard_form(b)
    for tag, sf in (("a", sa), ("b", sb)):
        if not sf.unique:
            return LUResult("inconclusive", reason=f"standard form of {tag}: {sf.reason}")
    dev = float(np.max(np.abs(sa.form.amps - sb.form.amps)))
    if dev > tol:
        return LUResult("inequivalent", reason="standard forms differ", deviation=dev)
    witnesses = tuple(Wa.conj().T @ Wb for Wa, Wb in zip(sa.unitaries, sb.unitaries))
    mapped = apply_witnesses(b, witnesses)
    if not equal_up_to_phase(mapped, a, tol):
        raise AssertionError("witness unitaries failed re-verification")
    return LUResult("equivalent", witnesses, deviation=dev)


# -- LME states ----------------------------------------------------------------


def is_lme(s: StateVector, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(np.abs(s.amps) - 2.0 ** (-s.n / 2))) < tol)


def z_basis_form(s: StateVector) -> StateVector:
    """Rotate each qubit about Z so its reduction has a real off-diagonal."""
    if not is_lme(s):
        raise ValueError("state is not of LME form (equal-modulus amplitudes)")
    out = s
    for i in range(s.n):
        rho = reduced_state(out, 1 << i)
        x, y = 2 * rho[0, 1].real, -2 * rho[0, 1].imag
        beta = float(np.arctan2(y, x)) if abs(y) > 1e-15 else 0.0
        if beta:
            out = apply_local(out, i, z_phase(-beta))
    return out


@dataclass(frozen=True)
class GenericCheck:
    generic: bool
    witness_k: int | None = None
    condition: str = ""
    reason: str = ""


def hadamard_coefficients(H: Hypergraph) -> np.ndarray:
    """Unnormalized ``<w|H^n|H>``: the Walsh transform of ``(-1)^f``."""
    return walsh_unnormalized(1 - 2 * boolean_table(H).astype(np.int64))


def is_generic_lme(H: Hypergraph) -> GenericCheck:
    """Test (i) no maximally mixed qubit, (ii) a nonvanishing Hadamard-basis witness ``k``.

    Condition (ii) first looks for ``k`` with ``<0|`` and every ``<e_j|`` of
    ``H^n Z^k |H>`` nonzero; failing that, for ``<0|`` nonzero together with
    a support of full GF(2) rank (odd-determinant form).
    """
    if H.n > DENSE_MAX:
        raise ValueError(f"genericity test needs n <= {DENSE_MAX}")
    stats = support_stats(H)
    mixed = [i for i, o in enumerate(stats.offdiag_i) if abs(o) <= GENERIC_TOL]
    if mixed:
        return GenericCheck(False, reason=f"maximally mixed reductions on qubits {mixed}")
    c = hadamard_coefficients(H)
    n = H.n
    size = 1 << n
    for k in range(size):
        if c[k] != 0 and all(c[k ^ (1 << j)] != 0 for j in range(n)):
            return GenericCheck(True, k, "unit_vectors")
    for k in range(size):
        if c[k] != 0:
            supp = [w for w in range(size) if c[w ^ k] != 0]
            if gf2_rank(supp) == n:
                return GenericCheck(True, k, "odd_determinant")
    return GenericCheck(False, reason="no Hadamard-basis witness k")


# -- integer linear algebra ----------------------------------------------------


def int_det(M) -> int:
    """Exact determinant of an integer matrix (Bareiss)."""
    a = [[int(v) for v in row] for row in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_adjugate(M) -> list[list[int]]:
    a = [[int(v) for v in row] for row in M]
    n = len(a)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for r, row in enumerate(a) if r != i]
            adj[j][i] = (-1) ** (i + j) * int_det(minor)
    return adj


def lemma3_solve(M, k) -> np.ndarray:
    """Binary ``l`` with ``M l = k (mod 2)``, via the integer adjugate of an odd-determinant ``M``."""
    M = np.asarray(M, dtype=np.int64)
    k = np.asarray(k, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or k.shape != (M.shape[0],):
        raise ValueError("M must be square and k must match its size")
    if int_det(M.tolist()) % 2 == 0:
        raise ValueError("M is singular over GF(2)")
    adj = np.array(int_adjugate(M.tolist()), dtype=np.int64)
    l = (adj @ k) % 2
    if not np.array_equal((M @ l) % 2, k % 2):
        raise AssertionError("adjugate solution failed the congruence check")
    return l


# -- hypergraph decision -------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    verdict: str
    method: str
    detail: str = ""
    witnesses: tuple[np.ndarray, ...] = ()
    permutation: tuple[int, ...] | None = None


def hypergraph_lu_decision(H1: Hypergraph, H2: Hypergraph, up_to_permutation: bool = True) -> Decision:
    """LU equivalence of two hypergraph states (optionally modulo qubit relabeling)."""
    if H1.n != H2.n:
        return Decision("inequivalent", "size", "different vertex counts")
    n = H1.n
    if n > LU_DECISION_MAX:
        raise ValueError(f"decision supported for n <= {LU_DECISION_MAX}")
    g1, g2 = is_generic_lme(H1), is_generic_lme(H2)
    if g1.generic and g2.generic:
        same = lp_equivalent(H1, H2) if up_to_permutation else pauli_equivalent_fixed_labels(H1, H2)
        detail = f"witness k: {g1.witness_k} ({g1.condition}), {g2.witness_k} ({g2.condition})"
        return Decision("equivalent" if same else "inequivalent", "theorem4", detail)
    a = build_state(H1)
    images = [tuple(range(n))]
    if up_to_permutation:
        images = list(itertools.permutations(range(n)))
    seen = set()
    inconclusive = ""
    for image in images:
        G = strip_local(permute(H2, Permutation(image)))
        if G in seen:
            continue
        seen.add(G)
        res = lu_equivalent_generic(a, build_state(G))
        if res.verdict == "equivalent":
            return Decision("equivalent", "standard_form", "", res.witnesses, image)
        if res.verdict == "inconclusive":
            inconclusive = res.reason
            if "of a:" in res.reason:
                break
    if inconclusive:
        return Decision("inconclusive", "standard_form", inconclusive)
    return Decision("inequivalent", "standard_form")
