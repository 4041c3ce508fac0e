"""Reference values that the computations cannot reproduce literally, with the corrected versions."""

import itertools

import numpy as np

from hyperstate import classify as C
from hyperstate import reference as R
from hyperstate.entanglement import (
    biseparable_overlap,
    bipartitions,
    genuine_negativity,
    pair_max_eigs,
    schmidt,
    single_qubit_max_eigs,
)
from hyperstate.hypergraph import Hypergraph
from hyperstate.statevec import HADAMARD, apply_product, build_state, overlap


class TestFourQubitTable:
    def test_amended_rows_bijective(self, four_qubit):
        _, fps, _ = four_qubit
        m = C.match_rows(fps, R.amended_four_qubit_rows())
        assert not m.unmatched and not m.ambiguous
        assert sorted(m.mapping.values(), key=int) == [str(i) for i in range(1, 28)]

    def test_literal_rows_leave_five_unmatched(self, four_qubit):
        _, fps, _ = four_qubit
        m = C.match_rows(fps)
        assert len(m.unmatched) == 5
        missing = {r.label for r in R.FOUR_QUBIT_ROWS} - set(m.mapping.values())
        assert missing == {"19", "21", "24", "25", "26"}

    def test_five_eighths_rows_attain_alt_value(self, four_qubit):
        classes, _, by_row = four_qubit
        for row in ("19", "21", "24", "25", "26"):
            pairs = pair_max_eigs(build_state(classes[by_row[row]].representative)).values()
            assert min(abs(v - R.GAMMA2_ALT) for v in pairs) < 1e-12
            assert min(abs(v - R.GAMMA2) for v in pairs) > 0.03

    def test_gamma2_attained_elsewhere(self, four_qubit):
        classes, _, by_row = four_qubit
        pairs = pair_max_eigs(build_state(classes[by_row["5"]].representative)).values()
        assert min(abs(v - R.GAMMA2) for v in pairs) < 1e-12


class TestClusterRow:
    def test_pair_multiset(self):
        G = Hypergraph.from_sets(4, [[1, 2], [2, 3], [3, 4]])
        pairs = pair_max_eigs(build_state(G))
        listed = sorted(R.FOUR_QUBIT_GRAPH_ROWS[1].pairs)
        for a in range(4):
            got = sorted(pairs[tuple(sorted((a, b)))] for b in range(4) if b != a)
            assert np.allclose(got, [0.25, 0.25, 0.5])
            assert not np.allclose(got, listed)

    def test_whole_lc_class(self):
        G = Hypergraph.from_sets(4, [[1, 2], [2, 3], [3, 4]])
        seen = {G}
        todo = [G]
        while todo:
            g = todo.pop()
            for v in range(4):
                h = C.local_complement(g, v)
                if h not in seen:
                    seen.add(h)
                    todo.append(h)
        for g in seen:
            vals = sorted(pair_max_eigs(build_state(g)).values())
            assert np.allclose(vals, [0.25] * 4 + [0.5] * 2)


class TestFiveQubitForm:
    def test_literal_form_singles(self):
        got = single_qubit_max_eigs(R.closed_form_five_qubit(1))
        assert np.allclose(got, [0.75, 0.75, 0.75, 0.5, 0.5])

    def test_sign_corrected_form(self):
        H = Hypergraph.from_sets(5, R.FIVE_QUBIT_UNIFORM_EDGES)
        s = apply_product(build_state(H), [HADAMARD] * 5)
        fixed = R.closed_form_five_qubit(-1)
        assert abs(abs(overlap(fixed, s)) - 1) < 1e-12
        assert np.allclose(single_qubit_max_eigs(fixed), 0.5)
        assert abs(biseparable_overlap(fixed) - R.GAMMA1) < 1e-9

    def test_no_pauli_fix(self):
        lit = R.closed_form_five_qubit(1)
        target = apply_product(build_state(Hypergraph.from_sets(5, R.FIVE_QUBIT_UNIFORM_EDGES)), [HADAMARD] * 5)
        X = np.array([[0, 1], [1, 0]])
        Z = np.diag([1, -1])
        paulis = [np.eye(2), X, Z, X @ Z]
        best = max(abs(overlap(target, apply_product(lit, list(ps)))) for ps in itertools.product(paulis, repeat=5))
        assert best < 1 - 1e-3


class TestSixQubitForm:
    def test_renormalized(self):
        s = R.closed_form_six_qubit_first()
        assert abs(s.norm() - 1) < 1e-12

    def test_matches_first_class(self):
        s = R.closed_form_six_qubit_first()
        t = build_state(Hypergraph.from_sets(6, R.SIX_QUBIT_UNIFORM_EDGES[0]))
        assert np.allclose(single_qubit_max_eigs(s), 0.5)
        assert abs(biseparable_overlap(s) - biseparable_overlap(t)) < 1e-12
        assert abs(genuine_negativity(s) - genuine_negativity(t)) < 1e-12
        for m in bipartitions(6):
            assert np.allclose(schmidt(s, m), schmidt(t, m), atol=1e-12)
