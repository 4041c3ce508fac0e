"""Local-Pauli + permutation classes of hypergraph states and their invariants."""

from __future__ import annotations

import itertools
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import reference
from .entanglement import (
    GeoConfig,
    biseparable_overlap,
    genuine_negativity,
    geometric_measure,
    pair_max_eigs,
    single_qubit_max_eigs,
)
from .hypergraph import (
    Hypergraph,
    all_permutations,
    apply_x,
    canonical_edges,
    is_connected,
    mask_to_vertices,
    popcount,
    strip_local,
    structure,
)
from .statevec import DENSE_MAX, StateVector, build_state

ORBIT_CAP = 10**7
FULL_SWEEP_MAX = 4
UNIFORM_EDGE_MAX = 24
ALG_TOL = 1e-9
EG_TOL = 2e-3


class OrbitInvariantError(AssertionError):
    """Connectivity or max cardinality changed along a local Pauli move."""


def resolve_threads(threads: int | None = None) -> int:
    """``threads`` if positive, else ``HYPERSTATE_THREADS``, else the CPU count."""
    if threads:
        return max(1, int(threads))
    env = os.environ.get("HYPERSTATE_THREADS", "").strip()
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"HYPERSTATE_THREADS must be an integer, got {env!r}") from None
        if value > 0:
            return value
    return os.cpu_count() or 1


@dataclass(frozen=True)
class OrbitRecord:
    canonical_key: tuple[int, ...]
    representative: Hypergraph
    orbit_size: int
    max_cardinality: int
    connected: bool


@dataclass(frozen=True)
class ClassInvariants:
    single_qubit_max_eigs: tuple[float, ...]
    two_qubit_max_eigs: tuple[float, ...]
    alpha_BS: float
    genuine_neg: float
    E_G: float


# -- orbits --------------------------------------------------------------------


def _check_move(a: Hypergraph, b: Hypergraph) -> None:
    sa, sb = structure(a), structure(b)
    if sa.max_cardinality != sb.max_cardinality or sa.connected != sb.connected:
        raise OrbitInvariantError(
            f"local Pauli move changed structure: {a} -> {b} "
            f"(max card {sa.max_cardinality}->{sb.max_cardinality}, "
            f"connected {sa.connected}->{sb.connected})"
        )


def pauli_orbit(H: Hypergraph, cap: int = ORBIT_CAP) -> set[Hypergraph]:
    """All stripped normal forms reachable from ``H`` by single-qubit X moves."""
    if H.n > DENSE_MAX:
        raise ValueError(f"orbits are supported for n <= {DENSE_MAX}")
    start = strip_local(H)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for k in range(H.n):
            nxt = strip_local(apply_x(cur, k))
            if nxt not in seen:
                _check_move(cur, nxt)
                seen.add(nxt)
                if len(seen) > cap:
                    raise RuntimeError(f"orbit of {H} exceeds the cap of {cap} members")
                queue.append(nxt)
    return seen


def class_key(H: Hypergraph) -> tuple[int, ...]:
    """Least permutation-canonical edge tuple over the Pauli orbit."""
    return min(canonical_edges(H.n, G.edges) for G in pauli_orbit(H))


def lp_equivalent(H1: Hypergraph, H2: Hypergraph) -> bool:
    """Equivalence under local Paulis and qubit permutations."""
    if H1.n != H2.n:
        raise ValueError(f"size mismatch: {H1.n} vs {H2.n}")
    o1, o2 = pauli_orbit(H1), pauli_orbit(H2)
    if len(o1) != len(o2):
        return False
    k1 = min(canonical_edges(H1.n, G.edges) for G in o1)
    k2 = min(canonical_edges(H2.n, G.edges) for G in o2)
    return k1 == k2


def pauli_equivalent_fixed_labels(H1: Hypergraph, H2: Hypergraph) -> bool:
    """Equivalence under local Paulis alone (no relabeling)."""
    if H1.n != H2.n:
        raise ValueError(f"size mismatch: {H1.n} vs {H2.n}")
    return strip_local(H2) in pauli_orbit(H1)


# -- exhaustive sweep ----------------------------------------------------------


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return out


def _nonlocal_masks(n: int) -> list[int]:
    return [m for m in range(1, 1 << n) if m & (m - 1)]


def _decode(n: int, masks: list[int], index: int) -> Hypergraph:
    return Hypergraph(n, tuple(masks[j] for j in range(len(masks)) if (index >> j) & 1))


def _encode(pos: dict[int, int], H: Hypergraph) -> int:
    return sum(1 << pos[e] for e in H.edges)


def _generator_perms(n: int) -> list[tuple[int, ...]]:
    if n < 2:
        return []
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(list(range(1, n)) + [0])
    return [swap, cycle]


def _records(n: int, groups, decode) -> list[OrbitRecord]:
    out = []
    for members in groups:
        hs = [decode(i) for i in members]
        key = min(tuple(sorted(h.edges)) for h in hs)
        # display the sparsest member; the lex-min tuple favours many small edges
        rep = Hypergraph(n, min((tuple(sorted(h.edges)) for h in hs), key=lambda t: (len(t), t)))
        st = structure(rep)
        for h in hs:
            sh = structure(h)
            if sh.connected != st.connected or sh.max_cardinality != st.max_cardinality:
                raise OrbitInvariantError(f"class of {rep} mixes structures")
        out.append(OrbitRecord(key, rep, len(hs), st.max_cardinality, st.connected))
    out.sort(key=lambda r: (r.max_cardinality, len(r.canonical_key), r.canonical_key))
    return out


def enumerate_classes(n: int) -> list[OrbitRecord]:
    """Every local-Pauli + permutation class of ``n``-vertex hypergraphs (stripped forms)."""
    if not 1 <= n <= FULL_SWEEP_MAX:
        raise ValueError(f"the exhaustive sweep is limited to n <= {FULL_SWEEP_MAX}")
    masks = _nonlocal_masks(n)
    pos = {m: j for j, m in enumerate(masks)}
    total = 1 << len(masks)
    uf = _UnionFind(total)
    perms = _generator_perms(n)
    for index in range(total):
        H = _decode(n, masks, index)
        for k in range(n):
            G = strip_local(apply_x(H, k))
            _check_move(H, G)
            uf.union(index, _encode(pos, G))
        for image in perms:
            moved = Hypergraph(n, tuple(_relabel(e, image) for e in H.edges))
            uf.union(index, _encode(pos, moved))
    groups = sorted(uf.groups().values())
    return _records(n, groups, lambda i: _decode(n, masks, i))


def _relabel(mask: int, image) -> int:
    out = 0
    for v in mask_to_vertices(mask):
        out |= 1 << image[v]
    return out


def filtered_classes(records: list[OrbitRecord]) -> list[OrbitRecord]:
    """Classes with an edge of size >= 3 on a connected hypergraph."""
    return [r for r in records if r.max_cardinality >= 3 and r.connected]


def local_complement(H: Hypergraph, a: int) -> Hypergraph:
    """Toggle every edge between neighbours of ``a``; graphs only."""
    if any(popcount(e) != 2 for e in H.edges):
        raise ValueError("local complementation needs a graph (2-edges only)")
    nbrs = [v for v in range(H.n) if v != a and any(e == (1 << a) | (1 << v) for e in H.edges)]
    toggles = [(1 << b) | (1 << c) for b, c in itertools.combinations(nbrs, 2)]
    return Hypergraph.from_masks(H.n, list(H.edges) + toggles)


def graph_state_classes(n: int) -> list[OrbitRecord]:
    """Connected graph states up to permutation and local complementation."""
    pairs = [(1 << a) | (1 << b) for a, b in itertools.combinations(range(n), 2)]
    pos = {m: j for j, m in enumerate(pairs)}
    graphs = [
        Hypergraph(n, tuple(pairs[j] for j in range(len(pairs)) if (i >> j) & 1))
        for i in range(1 << len(pairs))
    ]
    connected = [i for i, g in enumerate(graphs) if is_connected(n, g.edges)]
    uf = _UnionFind(1 << len(pairs))
    perms = _generator_perms(n)
    for i in connected:
        g = graphs[i]
        for a in range(n):
            uf.union(i, _encode(pos, local_complement(g, a)))
        for image in perms:
            uf.union(i, _encode(pos, Hypergraph(n, tuple(_relabel(e, image) for e in g.edges))))
    keep = set(connected)
    groups = sorted(m for m in uf.groups().values() if m[0] in keep)
    return _records(n, groups, lambda i: graphs[i])


# -- uniform sweep -------------------------------------------------------------


def _uniform_chunk(n: int, monos: np.ndarray, start: int, stop: int, mixed: bool) -> np.ndarray:
    m = monos.shape[0]
    idx = np.arange(start, stop, dtype=np.int64)
    bits = ((idx[:, None] >> np.arange(m)) & 1).astype(np.int32)
    f = (bits @ monos) & 1
    if not mixed:
        return idx
    s = (1 - 2 * f).astype(np.int32)
    xs = np.arange(1 << n)
    keep = np.ones(len(idx), dtype=bool)
    for i in range(n):
        # offdiag of qubit i vanishes iff this correlation sum is zero
        keep &= (s * s[:, xs ^ (1 << i)]).sum(axis=1) == 0
    return idx[keep]


def _perm_tables(n: int, kmasks: list[int]) -> np.ndarray:
    """``tab[p, byte_slot, byte]``: image bits of one byte of a uniform index under perm ``p``."""
    m = len(kmasks)
    where = {e: j for j, e in enumerate(kmasks)}
    slots = (m + 7) // 8
    perms = all_permutations(n)
    tab = np.zeros((len(perms), slots, 256), dtype=np.int64)
    for p, image in enumerate(perms):
        target = [where[_relabel(e, image)] for e in kmasks]
        for slot in range(slots):
            for byte in range(256):
                out = 0
                for b in range(8):
                    j = slot * 8 + b
                    if j < m and (byte >> b) & 1:
                        out |= 1 << target[j]
                tab[p, slot, byte] = out
    return tab


def _min_image(indices: np.ndarray, tab: np.ndarray) -> np.ndarray:
    best = indices.copy()
    for p in range(tab.shape[0]):
        img = np.zeros_like(indices)
        for slot in range(tab.shape[1]):
            img |= tab[p, slot][(indices >> (8 * slot)) & 255]
        np.minimum(best, img, out=best)
    return best


def uniform_survivors(
    n: int, k: int, require_maximally_mixed: bool = True, threads: int | None = 1, chunk: int = 1 << 14
) -> tuple[list[int], np.ndarray]:
    """Edge masks of the complete ``k``-uniform hypergraph and surviving edge-subset indices."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    kmasks = [sum(1 << v for v in c) for c in itertools.combinations(range(n), k)]
    if len(kmasks) > UNIFORM_EDGE_MAX:
        raise ValueError(f"C({n},{k}) = {len(kmasks)} edges exceeds the sweep cap of {UNIFORM_EDGE_MAX}")
    xs = np.arange(1 << n)
    monos = np.array([(xs & e) == e for e in kmasks], dtype=np.int32).reshape(len(kmasks), 1 << n)
    total = 1 << len(kmasks)
    bounds = [(a, min(a + chunk, total)) for a in range(0, total, chunk)]
    work = lambda ab: _uniform_chunk(n, monos, ab[0], ab[1], require_maximally_mixed)  # noqa: E731
    workers = resolve_threads(threads)
    if workers == 1:
        parts = [work(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, bounds))
    return kmasks, np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def enumerate_uniform_classes(
    n: int, k: int, require_maximally_mixed: bool = True, threads: int | None = 1
) -> list[OrbitRecord]:
    """Permutation classes of ``k``-uniform hypergraphs, optionally only those
    whose single-qubit reductions are all maximally mixed."""
    kmasks, surv = uniform_survivors(n, k, require_maximally_mixed, threads)
    if len(surv) == 0:
        return []
    keys = _min_image(surv, _perm_tables(n, kmasks))
    out = []
    for key in np.unique(keys):
        size = int(np.count_nonzero(keys == key))
        edges = tuple(kmasks[j] for j in range(len(kmasks)) if (int(key) >> j) & 1)
        canon = canonical_edges(n, edges)
        rep = Hypergraph(n, canon)
        st = structure(rep)
        out.append(OrbitRecord(canon, rep, size, st.max_cardinality, st.connected))
    out.sort(key=lambda r: (r.max_cardinality, len(r.canonical_key), r.canonical_key))
    return out


def uniform_class_of(H: Hypergraph, records: list[OrbitRecord]) -> int | None:
    """Index of the record whose permutation class contains ``H``."""
    key = canonical_edges(H.n, strip_local(H).edges)
    for i, r in enumerate(records):
        if r.canonical_key == key:
            return i
    return None


# -- fingerprints --------------------------------------------------------------


def fingerprint_state(s: StateVector, cfg: GeoConfig = GeoConfig()) -> ClassInvariants:
    return ClassInvariants(
        single_qubit_max_eigs=tuple(sorted(single_qubit_max_eigs(s))),
        two_qubit_max_eigs=tuple(sorted(pair_max_eigs(s).values())),
        alpha_BS=biseparable_overlap(s),
        genuine_neg=genuine_negativity(s),
        E_G=geometric_measure(s, cfg).value,
    )


def fingerprint(H: Hypergraph, cfg: GeoConfig = GeoConfig()) -> ClassInvariants:
    return fingerprint_state(build_state(H), cfg)


def row_invariants(row: reference.FourQubitRow) -> ClassInvariants:
    """Invariants implied by a four-qubit reference row.

    Each listed pair AB, AC, AD shares its spectrum with the complementary pair.
    """
    return ClassInvariants(
        single_qubit_max_eigs=tuple(sorted(row.singles)),
        two_qubit_max_eigs=tuple(sorted(row.pairs * 2)),
        alpha_BS=row.alpha_BS,
        genuine_neg=row.N_gen,
        E_G=row.E_G,
    )


def invariants_close(a: ClassInvariants, b: ClassInvariants, tol: float = ALG_TOL, eg_tol: float = EG_TOL) -> bool:
    if len(a.single_qubit_max_eigs) != len(b.single_qubit_max_eigs):
        return False
    if len(a.two_qubit_max_eigs) != len(b.two_qubit_max_eigs):
        return False
    spectra = np.concatenate(
        [
            np.subtract(a.single_qubit_max_eigs, b.single_qubit_max_eigs),
            np.subtract(a.two_qubit_max_eigs, b.two_qubit_max_eigs),
            [a.alpha_BS - b.alpha_BS, a.genuine_neg - b.genuine_neg],
        ]
    )
    return bool(np.all(np.abs(spectra) <= tol) and abs(a.E_G - b.E_G) <= eg_tol)


@dataclass(frozen=True)
class TableMatch:
    mapping: dict[int, str]
    unmatched: tuple[int, ...]
    ambiguous: dict[int, tuple[str, ...]]

    @property
    def bijective(self) -> bool:
        labels = list(self.mapping.values())
        return not self.unmatched and not self.ambiguous and len(set(labels)) == len(labels)


def match_rows(
    fps: list[ClassInvariants], rows=reference.FOUR_QUBIT_ROWS, eg_tol: float = EG_TOL
) -> TableMatch:
    """Match each fingerprint to the reference rows it agrees with."""
    targets = [(r.label, row_invariants(r)) for r in rows]
    mapping, unmatched, ambiguous = {}, [], {}
    for i, fp in enumerate(fps):
        hits = tuple(label for label, inv in targets if invariants_close(fp, inv, eg_tol=eg_tol))
        if len(hits) == 1:
            mapping[i] = hits[0]
        elif not hits:
            unmatched.append(i)
        else:
            ambiguous[i] = hits
    return TableMatch(mapping, tuple(unmatched), ambiguous)


@dataclass(frozen=True)
class ClosedFormMatch:
    name: str
    expected_row: str
    class_indices: tuple[int, ...]
    row_labels: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return len(self.class_indices) == 1 and self.row_labels == (self.expected_row,)


def match_closed_forms(
    cfg: GeoConfig = GeoConfig(),
    classes: list[OrbitRecord] | None = None,
    fps: list[ClassInvariants] | None = None,
    eg_tol: float = EG_TOL,
) -> dict[str, ClosedFormMatch]:
    """Match the simple-basis four-qubit forms, and the five-qubit form, to enumerated classes."""
    if classes is None:
        classes = filtered_classes(enumerate_classes(4))
    if fps is None:
        fps = [fingerprint(r.representative, cfg) for r in classes]
    table = match_rows(fps, eg_tol=eg_tol)
    out = {}
    for row, state in reference.closed_form_four_qubit().items():
        fp = fingerprint_state(state, cfg)
        hits = tuple(i for i, c in enumerate(fps) if invariants_close(fp, c, eg_tol=eg_tol))
        labels = tuple(table.mapping.get(i, "?") for i in hits)
        out[f"V{row}"] = ClosedFormMatch(f"V{row}", str(row), hits, labels)
    five = enumerate_uniform_classes(5, 3, True)
    five_fps = [fingerprint(r.representative, cfg) for r in five]
    fp = fingerprint_state(reference.closed_form_five_qubit(), cfg)
    hits = tuple(i for i, c in enumerate(five_fps) if invariants_close(fp, c, eg_tol=eg_tol))
    out["F1"] = ClosedFormMatch("F1", "uniform-5-3", hits, tuple("uniform-5-3" for _ in hits))
    return out


def pairwise_distinct(fps: list[ClassInvariants], eg_tol: float = EG_TOL) -> bool:
    """No two fingerprints agree on every entry."""
    return not any(
        invariants_close(a, b, eg_tol=eg_tol) for a, b in itertools.combinations(fps, 2)
    )


def all_pairs_maximally_mixed(H: Hypergraph, tol: float = ALG_TOL) -> bool:
    return all(abs(v - 0.25) <= tol for v in pair_max_eigs(build_state(H)).values())


def class_table_rows(records: list[OrbitRecord], fps: list[ClassInvariants]) -> list[dict]:
    """Plain-dict rows for JSON/CSV output."""
    rows = []
    for i, (r, fp) in enumerate(zip(records, fps), start=1):
        rows.append(
            {
                "class": i,
                "edges": r.representative.edge_sets(),
                "orbit_size": r.orbit_size,
                "max_cardinality": r.max_cardinality,
                "E_G": fp.E_G,
                "single_qubit_max_eigs": list(fp.single_qubit_max_eigs),
                "two_qubit_max_eigs": list(fp.two_qubit_max_eigs),
                "alpha_BS": fp.alpha_BS,
                "N_gen": fp.genuine_neg,
            }
        )
    return rows


