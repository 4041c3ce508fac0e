"""Published reference values used to identify enumerated classes.

Four-qubit rows hold (E_G, single-qubit max eigenvalues A..D, two-qubit max
eigenvalues AB, AC, AD, biseparable overlap, genuine negativity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .statevec import StateVector

GAMMA1 = (3 + math.sqrt(5)) / 8
GAMMA2 = (2 + math.sqrt(2)) / 8
GAMMA3 = (4 + math.sqrt(7)) / 8


def _gamma4() -> float:
    z = complex(8, 3 * math.sqrt(237))
    root = z ** (1 / 3)
    value = (8 + 13 / root + root) / 24
    assert abs(value.imag) < 1e-12
    return value.real


GAMMA4 = _gamma4()

# the two-qubit value actually attained where a 5/8 single-qubit row lists GAMMA2
GAMMA2_ALT = (2 + math.sqrt(3)) / 8

_G1, _G2, _G3, _G4 = GAMMA1, GAMMA2, GAMMA3, GAMMA4
_R3, _R7, _R15 = math.sqrt(3) / 4, math.sqrt(7) / 8, math.sqrt(15) / 8


@dataclass(frozen=True)
class FourQubitRow:
    label: str
    E_G: float
    singles: tuple[float, float, float, float]
    pairs: tuple[float, float, float]
    alpha_BS: float
    N_gen: float


def _row(label, eg, a, b, c, d, ab, ac, ad, alpha, neg):
    return FourQubitRow(str(label), eg, (a, b, c, d), (ab, ac, ad), alpha, neg)


h, q, f5, s7 = 0.5, 0.75, 5 / 8, 7 / 8

FOUR_QUBIT_ROWS: tuple[FourQubitRow, ...] = (
    _row(1, 0.50000, h, h, q, q, q, h, h, q, _R3),
    _row(2, 0.65651, h, h, h, q, h, h, h, q, _R3),
    _row(3, 0.65277, h, h, h, h, h, h, h, h, h),
    _row(4, 0.34549, q, q, q, q, q, _G1, _G1, q, _R3),
    _row(5, 0.57322, h, h, q, q, q, _G2, _G2, q, _R3),
    _row(6, 0.50000, q, q, q, h, h, _G1, _G1, q, _R3),
    _row(7, 0.62500, h, h, h, q, h, _G2, _G2, q, _R3),
    _row(8, 0.63572, q, q, h, h, h, _G1, _G1, q, _R3),
    _row(9, 0.63572, h, h, h, h, h, _G2, _G2, h, h),
    _row(10, 0.50000, q, q, h, q, _G1, _G1, _G1, q, _R3),
    _row(11, 0.59872, h, h, h, q, _G1, _G2, _G2, q, _R3),
    _row(12, 0.37500, q, q, q, q, _G1, _G1, _G1, q, _R3),
    _row(13, 0.62500, h, h, q, q, _G1, _G2, _G2, q, _R3),
    _row(14, 0.57161, h, h, h, h, _G1, _G1, _G1, _G1, h),
    _row(15, 0.58726, q, q, h, h, _G1, _G2, _G2, q, _R3),
    _row(16, 0.43750, q, q, q, q, _G1, _G1, _G1, q, _R3),
    _row(17, 0.19018, s7, s7, s7, s7, _G3, _G3, _G3, s7, _R7),
    _row(18, 0.43187, f5, f5, s7, s7, _G3, _G4, _G4, s7, _R7),
    _row(19, 0.64376, f5, f5, f5, f5, _G3, _G2, _G2, _G3, 3 / 8),
    _row(20, 0.46240, f5, f5, f5, s7, _G4, _G4, _G4, s7, _R7),
    _row(21, 0.65277, f5, f5, f5, f5, _G4, _G2, _G2, f5, _R15),
    _row(22, 0.46097, f5, f5, f5, f5, _G4, _G4, _G4, f5, _R15),
    _row(23, 0.54497, f5, f5, f5, s7, _G4, _G4, _G4, s7, _R7),
    _row(24, 0.55656, f5, f5, f5, f5, _G2, _G4, _G2, f5, _R15),
    _row(25, 0.62926, f5, f5, f5, f5, _G4, _G2, _G2, f5, _R15),
    _row(26, 0.53879, f5, f5, f5, f5, _G2, _G4, _G2, f5, _R15),
    _row(27, 0.55637, f5, f5, f5, f5, _G4, _G4, _G4, f5, _R15),
)



def amended_four_qubit_rows() -> tuple[FourQubitRow, ...]:
    """Rows with GAMMA2 replaced by GAMMA2_ALT wherever the single-qubit values are 5/8."""
    out = []
    for row in FOUR_QUBIT_ROWS:
        if all(abs(v - 5 / 8) < 1e-12 or abs(v - 7 / 8) < 1e-12 for v in row.singles):
            pairs = tuple(GAMMA2_ALT if v == GAMMA2 else v for v in row.pairs)
            row = FourQubitRow(row.label, row.E_G, row.singles, pairs, row.alpha_BS, row.N_gen)
        out.append(row)
    return tuple(out)


FOUR_QUBIT_GRAPH_ROWS: tuple[FourQubitRow, ...] = (
    _row("GHZ", 0.5, h, h, h, h, h, h, h, h, h),
    _row("Cluster", 0.75, h, h, h, h, h, 0.25, h, h, h),
)

# three-uniform six-qubit hypergraphs with maximally mixed single-qubit reductions
SIX_QUBIT_UNIFORM_EDGES: tuple[tuple[tuple[int, int, int], ...], ...] = (
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 3, 6), (2, 3, 4), (2, 3, 5), (2, 3, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5), (2, 4, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6), (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 4, 5), (2, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 3, 6), (2, 4, 5)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 4, 5), (2, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6), (2, 3, 4), (2, 3, 5), (2, 4, 6), (2, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6), (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 4, 5), (2, 5, 6), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 4, 5), (1, 5, 6), (2, 3, 4), (2, 4, 5), (2, 5, 6), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6), (2, 3, 4), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 4, 5), (2, 3, 4), (2, 3, 6), (2, 4, 5), (2, 4, 6), (3, 4, 5), (3, 4, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 5), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6), (2, 3, 4), (2, 3, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6)),
    ((1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 5), (2, 3, 6), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 4, 5), (1, 4, 6), (2, 3, 5), (2, 3, 6), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 4, 5), (1, 4, 6), (1, 5, 6), (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6), (2, 5, 6), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 4, 5), (1, 4, 6), (1, 5, 6), (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6), (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)),
)

SIX_QUBIT_EG = {1: 0.600, 21: 0.817}

FIVE_QUBIT_UNIFORM_EDGES = ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5), (2, 3, 4), (2, 3, 5))
FIVE_QUBIT_EG = 0.6000


# -- closed-form states -------------------------------------------------------


def _kets(terms: dict[str, complex]) -> StateVector:
    return StateVector.from_kets(terms, normalize=False)


def _add(acc: dict, ket: str, c: complex) -> None:
    acc[ket] = acc.get(ket, 0) + c


def _flip(bits: str) -> str:
    return "".join("1" if b == "0" else "0" for b in bits)


def closed_form_four_qubit() -> dict[int, StateVector]:
    """Simple-basis forms of selected four-qubit classes, keyed by row index."""
    r8 = 1 / math.sqrt(8)
    dicke = ["0011", "0101", "0110", "1001", "1010", "1100"]
    out = {
        1: _kets({k: 0.5 for k in ("0000", "0001", "1100", "1111")}),
        2: _kets({k: 0.5 for k in ("0000", "0111", "1010", "1100")}),
        4: _kets({k: 0.5 for k in ("0000", "0001", "0010", "1111")}),
        6: _kets({k: 0.5 for k in ("0000", "0010", "0111", "1001")}),
        8: _kets({k: 0.5 for k in ("0000", "1001", "1010", "1111")}),
        10: _kets({"0000": 2 * r8, "0011": r8, "0110": r8, "1010": r8, "1111": -r8}),
        12: _kets({"0000": 2 * r8, "0010": r8, "0111": -r8, "1011": r8, "1110": r8}),
    }
    v3 = {k: r8 for k in dicke}
    v3["0000"], v3["1111"] = r8, -r8
    out[3] = _kets(v3)
    v14 = {k: r8 for k in dicke}
    v14["0001"], v14["1110"] = r8, -r8
    out[14] = _kets(v14)
    gamma = {"00": 0.5, "01": 0.5, "10": -0.5, "11": 0.5}
    gamma_bar = {"00": 0.5, "01": -0.5, "10": 0.5, "11": 0.5}
    v9: dict[str, complex] = {}
    _add(v9, "0000", 0.5)
    _add(v9, "1111", -0.5)
    for k, c in gamma.items():
        _add(v9, "01" + k, c / 2)
    for k, c in gamma_bar.items():
        _add(v9, "10" + k, c / 2)
    out[9] = _kets(v9)
    return dict(sorted(out.items()))


def closed_form_five_qubit(eta_bar_sign: int = 1) -> StateVector:
    """``GHZ_5/sqrt2 + |eta>|00>/2 + s |eta_bar>|11>/2`` with ``s = eta_bar_sign``."""
    eta = {"100": 0.5, "010": 0.5, "001": 0.5, "111": -0.5}
    acc: dict[str, complex] = {}
    _add(acc, "00000", 0.5)
    _add(acc, "11111", 0.5)
    for k, c in eta.items():
        _add(acc, k + "00", c / 2)
        _add(acc, _flip(k) + "11", eta_bar_sign * c / 2)
    return _kets(acc)


def closed_form_six_qubit_first() -> StateVector:
    acc: dict[str, complex] = {}
    _add(acc, "000000", 1 / 8)
    _add(acc, "111111", -1 / 8)
    for k in ("001", "010", "100"):
        _add(acc, k + "000", 1 / 8)
    for k in ("110", "101", "011"):
        _add(acc, k + "111", 1 / 8)
    s = _kets(acc)
    return StateVector(s.n, s.amps / np.linalg.norm(s.amps))


def three_qubit_ghz() -> StateVector:
    return _kets({"000": 1 / math.sqrt(2), "111": 1 / math.sqrt(2)})

