"""Acceptance criteria 1-9, one PASS/FAIL line per criterion.

Run under pytest (lines appear with ``-s`` or in the captured output) or
directly as ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import json
import math
import os
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from hyperstate import classify as C  # noqa: E402
from hyperstate import reference as R  # noqa: E402
from hyperstate.cli import main  # noqa: E402
from hyperstate.entanglement import (  # noqa: E402
    GeoConfig,
    biseparable_overlap,
    bipartitions,
    genuine_negativity,
    geometric_measure,
    negativity,
)
from hyperstate.hypergraph import (  # noqa: E402
    Hypergraph,
    apply_x,
    apply_z,
    canonical_edges,
    strip_local,
    structure,
)
from hyperstate.luequiv import (  # noqa: E402
    apply_witnesses,
    is_generic_lme,
    lu_equivalent_generic,
    standard_form,
)
from hyperstate.nonclassical import (  # noqa: E402
    a_observable_identity,
    admissible,
    admissible_bigint,
    expansion_by_weight,
    family,
    local_hv_max,
    mermin_operator,
    reconstruct_diagonal,
    z_expansion,
)
from hyperstate.stabilizer import check_stabilized, lemma_table, projector_check  # noqa: E402
from hyperstate.statevec import (  # noqa: E402
    HADAMARD,
    StateVector,
    apply_product,
    apply_x_mask,
    apply_z_mask,
    build_state,
    equal_up_to_phase,
    random_unitary,
    support_stats,
    walsh_transform,
    walsh_unnormalized,
)

# tolerances as stated by the criteria
EG3_TOL = 1e-4
ALG_TOL = 1e-9
EG4_TOL = 1e-3
EG5_TOL = 1e-3
EG6_TOL = 2e-3
PHASE_TOL = 1e-10
PROJ_TOL = 1e-12
NEG_TOL = 1e-9

SEED = 20240531
RESULTS: dict[int, tuple[bool, str]] = {}


def report(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}", flush=True)


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# -- 1 ---------------------------------------------------------------------------


def criterion_1() -> tuple[bool, str]:
    def run():
        s = build_state(Hypergraph.from_sets(3, [[1, 2, 3]]))
        negs = [negativity(s, m) for m in bipartitions(3)]
        return geometric_measure(s, GeoConfig(restarts=256)).value, negs, biseparable_overlap(s), genuine_negativity(s)

    (eg, negs, alpha, ng), dt = _timed(run)
    r3 = math.sqrt(3) / 4
    checks = {
        "E_G": abs(eg - 0.32391) <= EG3_TOL,
        "cuts": all(abs(v - r3) <= NEG_TOL for v in negs),
        "alpha_S": alpha == 0.75,
        "N_G": abs(ng - r3) <= NEG_TOL,
        "runtime": dt < 1.0,
    }
    return all(checks.values()), f"E_G={eg:.6f} N_G={ng:.12f} alpha_S={alpha!r} t={dt:.2f}s {_failed(checks)}"


def _failed(checks: dict) -> str:
    bad = [k for k, v in checks.items() if not v]
    return f"failed: {', '.join(bad)}" if bad else ""


# -- 2 ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def four_qubit_classes():
    return tuple(C.filtered_classes(C.enumerate_classes(4)))


def criterion_2(tmp_dir: str) -> tuple[bool, str]:
    out = os.path.join(tmp_dir, "classes4.json")
    t = time.perf_counter()
    with contextlib.redirect_stdout(io.StringIO()):
        code = main(["classify", "--n", "4", "--no-fingerprints", "--threads", "1", "--out", out])
    dt = time.perf_counter() - t
    with open(out) as fh:
        rep = json.load(fh)
    checks = {
        "exit": code == 0,
        "27 classes": rep["count"] == 27,
        "2 graph classes": len(rep["graph_state_classes"]) == 2,
        "filter": all(c["max_cardinality"] >= 3 and c["connected"] for c in rep["classes"]),
        "runtime": dt < 60,
    }
    return all(checks.values()), (
        f"{rep['count']} hypergraph classes, {len(rep['graph_state_classes'])} graph classes, t={dt:.1f}s {_failed(checks)}"
    )


# -- 3 ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def four_qubit_fingerprints():
    cfg = GeoConfig(restarts=256, seed=SEED)
    return tuple(C.fingerprint(r.representative, cfg) for r in four_qubit_classes())


def criterion_3() -> tuple[bool, str]:
    t = time.perf_counter()
    fps = list(four_qubit_fingerprints())
    match = C.match_rows(fps, R.FOUR_QUBIT_ROWS, eg_tol=EG4_TOL)
    forms = C.match_closed_forms(GeoConfig(restarts=256, seed=SEED), list(four_qubit_classes()), fps, eg_tol=EG4_TOL)
    dt = time.perf_counter() - t
    v_forms = {k: v for k, v in forms.items() if k.startswith("V")}
    checks = {
        "27 classes": len(fps) == 27,
        "bijection": match.bijective and len(match.mapping) == 27,
        "closed forms": all(v.ok for v in v_forms.values()),
        "runtime": dt < 600,
    }
    missing = sorted(set(r.label for r in R.FOUR_QUBIT_ROWS) - set(match.mapping.values()), key=int)
    return all(checks.values()), (
        f"{len(match.mapping)}/27 classes matched, rows without a class: {missing}, "
        f"closed forms ok {sum(v.ok for v in v_forms.values())}/{len(v_forms)}, t={dt:.1f}s {_failed(checks)}"
    )


# -- 4 ---------------------------------------------------------------------------


def hadamard_all(s: StateVector) -> StateVector:
    return apply_product(s, [HADAMARD] * s.n)


def criterion_4() -> tuple[bool, str]:
    classes = {k: C.enumerate_uniform_classes(5, k, True) for k in (3, 4, 5)}
    fig = Hypergraph.from_sets(5, R.FIVE_QUBIT_UNIFORM_EDGES)
    checks = {"k=3 one class": len(classes[3]) == 1, "k=4,5 none": not classes[4] and not classes[5]}
    detail = f"classes k=3,4,5: {[len(classes[k]) for k in (3, 4, 5)]}"
    if len(classes[3]) == 1:
        rep = classes[3][0].representative
        checks["figure edges"] = canonical_edges(5, fig.edges) == classes[3][0].canonical_key
        s = build_state(rep)
        eg = geometric_measure(s, GeoConfig(restarts=256, seed=SEED)).value
        ng, alpha = genuine_negativity(s), biseparable_overlap(s)
        checks["E_G"] = abs(eg - R.FIVE_QUBIT_EG) <= EG5_TOL
        checks["N_G"] = abs(ng - 0.5) <= ALG_TOL
        checks["alpha_S"] = abs(alpha - R.GAMMA1) <= ALG_TOL
        checks["F1 form"] = equal_up_to_phase(hadamard_all(build_state(fig)), R.closed_form_five_qubit(), PHASE_TOL)
        detail += f", E_G={eg:.6f} N_G={ng:.12f} alpha_S={alpha:.12f}"
    return all(checks.values()), f"{detail} {_failed(checks)}"


# -- 5 ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def six_qubit_classes():
    return tuple(C.enumerate_uniform_classes(6, 3, True, threads=0))


def criterion_5() -> tuple[bool, str]:
    t = time.perf_counter()
    records = list(six_qubit_classes())
    cfg = GeoConfig(restarts=256, seed=SEED)
    egs = [geometric_measure(build_state(r.representative), cfg).value for r in records]
    idx = [C.uniform_class_of(Hypergraph.from_sets(6, edges), records) for edges in R.SIX_QUBIT_UNIFORM_EDGES]
    dt = time.perf_counter() - t
    gaps = [abs(a - b) for a, b in itertools.combinations(egs, 2)]
    checks = {
        "24 classes": len(records) == 24,
        "rows distinct": None not in idx and len(set(idx)) == len(idx),
        "E_G row 1": idx[0] is not None and abs(egs[idx[0]] - R.SIX_QUBIT_EG[1]) <= EG6_TOL,
        "E_G row 21": idx[20] is not None and abs(egs[idx[20]] - R.SIX_QUBIT_EG[21]) <= EG6_TOL,
        "E_G pairwise distinct": min(gaps, default=0) > EG6_TOL,
        "no 2-body maximally mixed": not any(C.all_pairs_maximally_mixed(r.representative) for r in records),
        "runtime": dt < 1800,
    }
    r1 = egs[idx[0]] if idx[0] is not None else float("nan")
    r21 = egs[idx[20]] if idx[20] is not None else float("nan")
    return all(checks.values()), (
        f"{len(records)} classes, E_G row1={r1:.6f} row21={r21:.6f}, min E_G gap={min(gaps, default=0):.2e}, "
        f"t={dt:.1f}s {_failed(checks)}"
    )


# -- 6 ---------------------------------------------------------------------------


def criterion_6() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    worst, stab_ok = 0.0, True
    for _ in range(200):
        n = int(rng.integers(1, 6))
        masks = [m for m in range(1, 1 << n) if rng.random() < 0.35]
        H = Hypergraph.from_masks(n, masks, int(rng.choice([1, -1])))
        stab_ok &= check_stabilized(H)
        worst = max(worst, projector_check(H))
    lemma = [ok for n in range(1, 6) for *_, ok in lemma_table(n)]
    checks = {"stabilized": stab_ok, "projector": worst < PROJ_TOL, "lemmas": all(lemma)}
    return all(checks.values()), (
        f"projector max dev {worst:.1e}, lemma checks {sum(lemma)}/{len(lemma)} {_failed(checks)}"
    )


# -- 7 ---------------------------------------------------------------------------


def criterion_7() -> tuple[bool, str]:
    s32 = mermin_operator(3, 2)
    s74 = mermin_operator(7, 4)
    lhv32 = local_hv_max(s32)
    lhv74, dt = _timed(lambda: local_hv_max(s74))
    coeffs = z_expansion(s74.hypergraph, 0)
    weights = expansion_by_weight(coeffs)
    want = {0: {0.375}, 2: {0.125}, 4: {-0.125}, 6: {0.625}}
    even_ok = all({float(c * 128) / 128 for c in weights.get(w, ())} == v for w, v in want.items())
    even_ok &= all(c * 128 == round(c * 128) for c in coeffs.values())
    odd_ok = all(c == 0 for w, cs in weights.items() if w % 2 for c in cs)
    diag = (s74.terms[0].phase * s74.terms[0].diagonal()).tolist()
    rest = [q for q in range(7) if q != 0]
    idx = [sum(((j >> b) & 1) << q for b, q in enumerate(rest)) for j in range(64)]
    recon_ok = [float(v) for v in reconstruct_diagonal(coeffs, 7, 0)] == [diag[i] for i in idx]
    lucas_ok = all(admissible(n, k).admissible == admissible_bigint(n, k) for n in range(2, 65) for k in range(2, n + 1))
    fam_ok = all(admissible(*family(r, s)).admissible for r in range(1, 5) for s in range(4))
    checks = {
        "(3,2) quantum": abs(s32.quantum_value - 4) < 1e-12,
        "(3,2) bounds": s32.classical_bound == 2 and lhv32 == 2,
        "(7,4) quantum": abs(s74.quantum_value - 8) < 1e-12,
        "(7,4) term bound": s74.classical_bound == 6,
        "(7,4) LHV": lhv74 == 6 and dt < 1.0,
        "z-expansion": even_ok and odd_ok and recon_ok,
        "Lucas": lucas_ok,
        "family": fam_ok,
        "A identity": a_observable_identity(7, 4, 0),
    }
    coef_str = ", ".join(f"w{w}:{sorted(int(c * 128) for c in weights[w])}/128" for w in (0, 2, 4, 6))
    return all(checks.values()), (
        f"(3,2) {s32.quantum_value:g} vs {s32.classical_bound:g}; (7,4) {s74.quantum_value:g} vs "
        f"{s74.classical_bound:g}, LHV {lhv74:g} in {dt:.2f}s; {coef_str} {_failed(checks)}"
    )


# -- 8 ---------------------------------------------------------------------------


def _random_generic(rng, count):
    out = []
    while len(out) < count:
        n = int(rng.integers(3, 6))
        H = oracles.full_edge_hypergraphs(rng, n)
        if is_generic_lme(H).generic:
            out.append(H)
    return out


def _random_pauli_partner(rng, H):
    G = H
    for _ in range(int(rng.integers(1, 2 * H.n))):
        k = int(rng.integers(H.n))
        G = apply_x(G, k) if rng.random() < 0.5 else apply_z(G, k)
    return strip_local(G)


def criterion_8() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    worst, witness_ok, unique_ok, images = 0.0, True, True, 0
    for H in _random_generic(rng, 20):
        s = build_state(H)
        ref = standard_form(s)
        unique_ok &= ref.unique
        for _ in range(50):
            img = apply_product(s, [random_unitary(rng) for _ in range(H.n)])
            sf = standard_form(img)
            unique_ok &= sf.unique
            if sf.unique and ref.unique:
                worst = max(worst, float(np.max(np.abs(sf.form.amps - ref.form.amps))))
            res = lu_equivalent_generic(s, img)
            witness_ok &= res.verdict == "equivalent" and equal_up_to_phase(apply_witnesses(img, res.witnesses), s, ALG_TOL)
            images += 1
    agree, equiv, pairs = 0, 0, 0
    while pairs < 100:
        n = 4 if pairs % 2 == 0 else 5
        H1 = oracles.full_edge_hypergraphs(rng, n)
        H2 = _random_pauli_partner(rng, H1) if rng.random() < 0.5 else oracles.full_edge_hypergraphs(rng, n)
        lp = C.pauli_equivalent_fixed_labels(H1, H2)
        lu = lu_equivalent_generic(build_state(H1), build_state(H2))
        agree += lu.verdict != "inconclusive" and lp == (lu.verdict == "equivalent")
        equiv += lp
        pairs += 1
    checks = {
        "unique forms": unique_ok,
        "forms agree": worst <= ALG_TOL,
        "witnesses": witness_ok,
        "cross-validation": agree == pairs,
    }
    return all(checks.values()), (
        f"{images} LU images, max form deviation {worst:.1e}; LP vs standard form agree on {agree}/{pairs} pairs "
        f"({equiv} equivalent) {_failed(checks)}"
    )


# -- 9 ---------------------------------------------------------------------------


def criterion_9() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    sound = rigid = maxcard = neg = walsh = eq33 = True
    for _ in range(100):
        n = int(rng.integers(1, 7))
        H = Hypergraph.from_masks(n, [m for m in range(1, 1 << n) if rng.random() < 0.3], int(rng.choice([1, -1])))
        s = build_state(H)
        for k in range(n):
            sound &= np.array_equal(build_state(apply_x(H, k)).amps, apply_x_mask(s, 1 << k).amps)
            sound &= np.array_equal(build_state(apply_z(H, k)).amps, apply_z_mask(s, 1 << k).amps)
        d = (1 - 2 * ((s.amps.real < 0) ^ (H.sign < 0))).astype(float)
        walsh &= np.allclose(walsh_unnormalized(walsh_transform(d)), d, atol=1e-12, rtol=0)
        f = (1 - d) / 2
        delta = np.zeros(1 << n)
        delta[0] = 1
        eq33 &= np.allclose(walsh_transform(d), delta - 2 * walsh_transform(f), atol=1e-12, rtol=0)
        if n >= 2:
            for cut in bipartitions(n):
                side = [q for q in range(n) if (cut >> q) & 1]
                neg &= abs(negativity(s, cut) - oracles.partial_transpose_negativity(s.amps, n, side)) <= NEG_TOL
        top = structure(H).max_cardinality
        if top >= 1:
            maxcard &= all(structure(apply_x(H, k)).max_cardinality == top for k in range(n))
        if n <= 5:
            base = structure(strip_local(H)).max_cardinality
            maxcard &= all(structure(G).max_cardinality == base for G in C.pauli_orbit(H))
    for _ in range(20):
        n = int(rng.integers(3, 7))
        edges = [m for m in oracles.uniform_edges(n, 3) if rng.random() < 0.5] or oracles.uniform_edges(n, 3)[:1]
        H = Hypergraph.from_masks(n, edges)
        for G in C.pauli_orbit(H):
            u = structure(G).uniform_k
            rigid &= not (u == 3 and G != H)
    checked, bad = 0, 0
    for n in range(3, 6):
        c, b = oracles.full_edge_sweep(n)
        checked, bad = checked + c, bad + b
    for _ in range(200):
        n = int(rng.integers(3, 6))
        H = oracles.full_edge_hypergraphs(rng, n, p=0.5)
        H = Hypergraph.from_masks(n, list(H.edges) + [1 << q for q in range(n) if rng.random() < 0.5])
        st = support_stats(H)
        bad += int(not (st.F % 2 == 1 and all(Fi != 2 ** (n - 2) for Fi in st.F_i) and st.supp_fpm == 2**n))
    checks = {
        "X/Z soundness": sound,
        "max-cardinality": maxcard,
        "uniform rigidity": rigid,
        "negativity": neg,
        "Walsh involution": walsh,
        "sign/indicator identity": eq33,
        "full-edge claims": bad == 0,
    }
    return all(checks.values()), f"full-edge sweep {checked} hypergraphs, violations {bad} {_failed(checks)}"


# -- pytest entry points -----------------------------------------------------------


def _run(n, fn, *args):
    ok, detail = fn(*args)
    report(n, ok, detail)
    assert ok, detail


def test_criterion_1_three_qubit():
    _run(1, criterion_1)


def test_criterion_2_four_qubit_enumeration(tmp_path):
    _run(2, criterion_2, str(tmp_path))


def test_criterion_3_reference_table():
    _run(3, criterion_3)


def test_criterion_4_five_qubit_uniform():
    _run(4, criterion_4)


@pytest.mark.slow
def test_criterion_5_six_qubit_uniform():
    _run(5, criterion_5)


def test_criterion_6_stabilizer():
    _run(6, criterion_6)


def test_criterion_7_nonclassicality():
    _run(7, criterion_7)


def test_criterion_8_lu_machinery():
    _run(8, criterion_8)


def test_criterion_9_properties():
    _run(9, criterion_9)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        runs = [
            (1, criterion_1, ()),
            (2, criterion_2, (tmp,)),
            (3, criterion_3, ()),
            (4, criterion_4, ()),
            (5, criterion_5, ()),
            (6, criterion_6, ()),
            (7, criterion_7, ()),
            (8, criterion_8, ()),
            (9, criterion_9, ()),
        ]
        for n, fn, args in runs:
            report(n, *fn(*args))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
