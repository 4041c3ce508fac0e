"""Hypergraphs as bitmask edge sets, and the local Pauli rewrite rules on them.

Vertices are 0-indexed internally (bit ``i`` of an edge mask is vertex ``i``).
The text and JSON formats are 1-indexed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_VERTICES = 16
MAX_CANONICAL_VERTICES = 8


class HypergraphFormatError(ValueError):
    """Raised for malformed hypergraph text or JSON input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_vertices(mask: int) -> list[int]:
    """0-indexed vertices of a mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def xor_reduce(masks: Iterable[int]) -> frozenset[int]:
    """Keep the masks that occur an odd number of times."""
    out: set[int] = set()
    for m in masks:
        out ^= {m}
    return frozenset(out)


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph on ``n`` vertices with a global sign.

    ``edges`` is a sorted tuple of distinct nonzero masks. The sign stands for
    an empty edge (the overall factor -1).
    """

    n: int
    edges: tuple[int, ...] = ()
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        edges = tuple(sorted(self.edges))
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edges")
        limit = 1 << self.n
        for e in edges:
            if not 0 < e < limit:
                raise ValueError(f"edge mask {e} out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], sign: int = 1) -> "Hypergraph":
        """Build from masks with XOR semantics; empty masks flip the sign."""
        reduced = xor_reduce(masks)
        if 0 in reduced:
            sign = -sign
        return cls(n, tuple(m for m in reduced if m), sign)

    @classmethod
    def from_sets(cls, n: int, edges: Iterable[Iterable[int]], sign: int = 1) -> "Hypergraph":
        """Build from 1-indexed vertex lists, e.g. ``[(1, 2, 3), (1, 2, 3, 4)]``."""
        masks = []
        for e in edges:
            vs = list(e)
            if any(not 1 <= v <= n for v in vs):
                raise ValueError(f"vertex out of range in edge {vs}")
            if len(set(vs)) != len(vs):
                raise ValueError(f"repeated vertex in edge {vs}")
            masks.append(vertices_to_mask(v - 1 for v in vs))
        if len(set(masks)) != len(masks):
            raise ValueError("duplicate edges")
        return cls.from_masks(n, masks, sign)

    def edge_sets(self) -> list[list[int]]:
        """Edges as 1-indexed ascending vertex lists, ordered by (size, vertices)."""
        sets = [[v + 1 for v in mask_to_vertices(e)] for e in self.edges]
        return sorted(sets, key=lambda s: (len(s), s))

    def toggle(self, mask: int) -> "Hypergraph":
        return Hypergraph.from_masks(self.n, list(self.edges) + [mask], self.sign)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Permutation:
    """Vertex relabeling ``v -> image[v]``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    def apply_mask(self, mask: int) -> int:
        out = 0
        for v in mask_to_vertices(mask):
            out |= 1 << self.image[v]
        return out


def _check_vertex(H: Hypergraph, k: int) -> None:
    if not 0 <= k < H.n:
        raise IndexError(f"vertex {k} out of range for n={H.n}")


def edges_containing(H: Hypergraph, k: int) -> frozenset[int]:
    _check_vertex(H, k)
    bit = 1 << k
    return frozenset(e for e in H.edges if e & bit)


def link(H: Hypergraph, k: int) -> frozenset[int]:
    """XOR-reduced set of ``e \\ {k}`` over edges containing ``k``; may contain 0."""
    bit = 1 << k
    return xor_reduce(e & ~bit for e in edges_containing(H, k))


def apply_x(H: Hypergraph, k: int) -> Hypergraph:
    """Hypergraph of ``X_k |H>``: symmetric difference with the link of ``k``."""
    return Hypergraph.from_masks(H.n, list(H.edges) + list(link(H, k)), H.sign)


def apply_z(H: Hypergraph, k: int) -> Hypergraph:
    _check_vertex(H, k)
    return H.toggle(1 << k)


def apply_y(H: Hypergraph, k: int) -> Hypergraph:
    """``Z_k X_k``; equals ``Y_k`` only up to the global phase ``i``, which is not tracked."""
    return apply_z(apply_x(H, k), k)


def permute(H: Hypergraph, p: Permutation) -> Hypergraph:
    if len(p.image) != H.n:
        raise ValueError(f"permutation acts on {len(p.image)} vertices, hypergraph has {H.n}")
    return Hypergraph(H.n, tuple(p.apply_mask(e) for e in H.edges), H.sign)


def strip_local(H: Hypergraph) -> Hypergraph:
    """Drop 1-edges and the sign; neither affects entanglement."""
    return Hypergraph(H.n, tuple(e for e in H.edges if e & (e - 1)), 1)


@dataclass(frozen=True)
class Structure:
    max_cardinality: int
    uniform_k: int | None
    connected: bool
    neighbor_counts: tuple[int, ...]


def _components(n: int, edges: Iterable[int]) -> list[int]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        vs = mask_to_vertices(e)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[rb] = ra
    return [find(v) for v in range(n)]


def is_connected(n: int, edges: Iterable[int]) -> bool:
    return len(set(_components(n, edges))) == 1


def structure(H: Hypergraph) -> Structure:
    sizes = {popcount(e) for e in H.edges}
    neighbors = []
    for i in range(H.n):
        bit = 1 << i
        union = 0
        for e in H.edges:
            if e & bit:
                union |= e
        neighbors.append(popcount(union & ~bit))
    return Structure(
        max_cardinality=max(sizes, default=0),
        uniform_k=sizes.pop() if len(sizes) == 1 else None,
        connected=is_connected(H.n, H.edges),
        neighbor_counts=tuple(neighbors),
    )


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


def _relabel_table(n: int) -> list[list[int]]:
    """``table[p][mask]`` is the image of ``mask`` under the p-th permutation."""
    tables = []
    for image in all_permutations(n):
        row = [0] * (1 << n)
        for mask in range(1, 1 << n):
            out = 0
            for v in mask_to_vertices(mask):
                out |= 1 << image[v]
            row[mask] = out
        tables.append(row)
    return tables


_RELABEL_CACHE: dict[int, list[list[int]]] = {}


def relabel_tables(n: int) -> list[list[int]]:
    if n not in _RELABEL_CACHE:
        _RELABEL_CACHE[n] = _relabel_table(n)
    return _RELABEL_CACHE[n]


def canonical_edges(n: int, edges: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least sorted edge tuple over all vertex relabelings."""
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"canonical form needs n <= {MAX_CANONICAL_VERTICES}, got {n}")
    best = None
    for row in relabel_tables(n):
        key = tuple(sorted(row[e] for e in edges))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def perm_canonical(H: Hypergraph) -> Hypergraph:
    return Hypergraph(H.n, canonical_edges(H.n, H.edges), H.sign)


# -- text / JSON -------------------------------------------------------------


def to_text(H: Hypergraph) -> str:
    edges = ",".join("+".join(str(v) for v in e) for e in H.edge_sets())
    text = f"n={H.n}; edges={edges}"
    if H.sign == -1:
        text += "; sign=-1"
    return text


def parse_text(line: str, lineno: int | None = None) -> Hypergraph:
    """Parse ``n=<int>; edges=1+2+3,1+2+3+4`` (optionally ``; sign=-1``)."""
    fields: dict[str, tuple[str, int]] = {}
    col = 1
    for part in line.split(";"):
        stripped = part.strip()
        offset = col + len(part) - len(part.lstrip())
        col += len(part) + 1
        if not stripped:
            continue
        if "=" not in stripped:
            raise HypergraphFormatError(f"expected key=value, got {stripped!r}", lineno, offset)
        key, value = stripped.split("=", 1)
        key = key.strip()
        if key in fields:
            raise HypergraphFormatError(f"repeated field {key!r}", lineno, offset)
        fields[key] = (value.strip(), offset + len(key) + 1)
    unknown = set(fields) - {"n", "edges", "sign"}
    if unknown:
        raise HypergraphFormatError(f"unknown field(s) {sorted(unknown)}", lineno)
    if "n" not in fields:
        raise HypergraphFormatError("missing n=", lineno)
    value, ncol = fields["n"]
    try:
        n = int(value)
    except ValueError:
        raise HypergraphFormatError(f"bad vertex count {value!r}", lineno, ncol) from None
    sign = 1
    if "sign" in fields:
        svalue, scol = fields["sign"]
        if svalue not in ("1", "+1", "-1"):
            raise HypergraphFormatError(f"bad sign {svalue!r}", lineno, scol)
        sign = -1 if svalue == "-1" else 1
    edges: list[list[int]] = []
    evalue, ecol = fields.get("edges", ("", 0))
    pos = ecol
    for token in evalue.split(",") if evalue else []:
        raw = token.strip()
        try:
            vs = [int(v) for v in raw.split("+")]
        except ValueError:
            raise HypergraphFormatError(f"malformed edge {raw!r}", lineno, pos) from None
        edges.append(vs)
        pos += len(token) + 1
    return _build_checked(n, edges, sign, lineno)


def _build_checked(n, edges, sign, lineno=None) -> Hypergraph:
    if not 1 <= n <= MAX_VERTICES:
        raise HypergraphFormatError(f"vertex count must be in 1..{MAX_VERTICES}", lineno)
    seen = set()
    for vs in edges:
        if not vs:
            raise HypergraphFormatError("empty edge", lineno)
        for v in vs:
            if not 1 <= v <= n:
                raise HypergraphFormatError(f"vertex {v} out of range 1..{n}", lineno)
        if len(set(vs)) != len(vs):
            raise HypergraphFormatError(f"repeated vertex in edge {vs}", lineno)
        key = frozenset(vs)
        if key in seen:
            raise HypergraphFormatError(f"duplicate edge {sorted(vs)}", lineno)
        seen.add(key)
    return Hypergraph.from_sets(n, edges, sign)


def to_json(H: Hypergraph) -> dict:
    return {"n": H.n, "edges": H.edge_sets(), "sign": H.sign}


def from_json(obj: dict | str) -> Hypergraph:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise HypergraphFormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "n" not in obj:
        raise HypergraphFormatError("expected an object with key 'n'")
    n = obj["n"]
    edges = obj.get("edges", [])
    sign = obj.get("sign", 1)
    if not isinstance(n, int) or sign not in (1, -1):
        raise HypergraphFormatError("bad 'n' or 'sign'")
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and all(isinstance(v, int) for v in e) for e in edges
    ):
        raise HypergraphFormatError("'edges' must be a list of integer lists")
    for e in edges:
        if e != sorted(e):
            raise HypergraphFormatError(f"edge {e} is not in ascending order")
    return _build_checked(n, edges, sign)


def load(path: str) -> list[Hypergraph]:
    """Read hypergraphs from a ``.json`` file (object or list) or a text file."""
    with open(path) as fh:
        return loads(fh.read(), as_json=path.endswith(".json"))


def loads(content: str, as_json: bool = False) -> list[Hypergraph]:
    if as_json or content.lstrip().startswith(("{", "[")):
        try:
            obj = json.loads(content)
        except json.JSONDecodeError as exc:
            raise HypergraphFormatError(exc.msg, exc.lineno, exc.colno) from None
        items = obj if isinstance(obj, list) else [obj]
        return [from_json(item) for item in items]
    out = []
    for lineno, line in enumerate(content.splitlines(), start=1):
        if line.strip() and not line.lstrip().startswith("#"):
            out.append(parse_text(line, lineno))
    return out
