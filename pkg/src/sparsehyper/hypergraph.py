"""Canonical r-uniform hypergraphs on dense integer vertex ids.

A :class:`Hypergraph` is immutable once built. Edges are kept both as sorted
vertex tuples and as integer bitmasks (bit ``i`` set iff vertex ``i`` is in the
edge); union sizes are computed on the masks.

Text format::

    n r m
    a_1 a_2 ... a_r        (m lines, strictly increasing ids)
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed hypergraph text; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n-1``.

    Use :func:`build` rather than the constructor; it validates and
    normalizes the edge list. ``labels[i]`` is the id vertex ``i`` had in the
    hypergraph this one was derived from (by :func:`link` or
    :func:`delete_vertices`); it is the identity for freshly built graphs and
    does not take part in equality.
    """

    n: int
    r: int
    edges: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] = field(default=(), repr=False)
    _masks: tuple[int, ...] = field(default=(), repr=False)
    _index: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.r, self.edges) == (other.n, other.r, other.edges)

    def __hash__(self):
        return hash((self.n, self.r, self.edges))

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def edge_id(self, edge: Iterable[int]) -> int:
        """Position of ``edge`` in the edge list; ``KeyError`` if absent."""
        key = tuple(sorted(edge))
        ids = self.incidence(len(key)).get(key, ())
        for i in ids:
            if self.edges[i] == key:
                return i
        raise KeyError(key)

    def incidence(self, size: int) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Map every ``size``-subset contained in some edge to the ids of the
        edges containing it (ascending). Built lazily, once per size."""
        cached = self._index.get(size)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._index.get(size)
            if cached is None:
                acc: dict[tuple[int, ...], list[int]] = {}
                for i, edge in enumerate(self.edges):
                    for sub in combinations(edge, size):
                        acc.setdefault(sub, []).append(i)
                cached = {k: tuple(v) for k, v in acc.items()}
                self._index[size] = cached
        return cached

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.n
        for edge in self.edges:
            for v in edge:
                deg[v] += 1
        return deg

    def subgraph(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """Keep only the listed edges; the vertex set is unchanged."""
        keep = sorted(set(edge_ids))
        edges = tuple(self.edges[i] for i in keep)
        return _make(self.n, self.r, edges, self.labels)

    def __repr__(self):
        return f"Hypergraph(n={self.n}, r={self.r}, m={len(self.edges)})"


def _make(n, r, edges, labels=()):
    labels = tuple(labels) if labels else tuple(range(n))
    return Hypergraph(n, r, edges, labels, tuple(mask_of(e) for e in edges))


def build(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and normalize an edge list into a :class:`Hypergraph`.

    Duplicate edges are merged. Raises ``ValueError`` naming the first edge
    with the wrong size or an out-of-range id.
    """
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if r < 1:
        raise ValueError(f"uniformity must be positive, got {r}")
    normalized = set()
    for raw in edges:
        raw = list(raw)
        edge = tuple(sorted(set(raw)))
        if len(edge) != r or len(raw) != r:
            raise ValueError(f"edge {tuple(raw)} does not have {r} distinct vertices")
        if edge[0] < 0 or edge[-1] >= n:
            raise ValueError(f"edge {tuple(raw)} has a vertex outside [0, {n})")
        normalized.add(edge)
    return _make(n, r, tuple(sorted(normalized)))


def complete(n: int, r: int) -> Hypergraph:
    """All r-subsets of ``range(n)``."""
    return _make(n, r, tuple(combinations(range(n), r)))


def _check_subset(H: Hypergraph, T: Sequence[int]) -> tuple[int, ...]:
    key = tuple(sorted(set(T)))
    if len(key) != len(T):
        raise ValueError(f"subset {tuple(T)} has repeated vertices")
    if len(key) >= H.r:
        raise ValueError(f"subset {key} must have fewer than r={H.r} vertices")
    if key and (key[0] < 0 or key[-1] >= H.n):
        raise ValueError(f"subset {key} has a vertex outside [0, {H.n})")
    return key


def codegree(H: Hypergraph, T: Sequence[int]) -> int:
    """Number of edges of ``H`` containing every vertex of ``T``."""
    key = _check_subset(H, T)
    if not key:
        return len(H.edges)
    return len(H.incidence(len(key)).get(key, ()))


def union_size(H: Hypergraph, edge_ids: Iterable[int]) -> int:
    m = 0
    for i in edge_ids:
        if not 0 <= i < len(H.edges):
            raise IndexError(f"unknown edge id {i}")
        m |= H.masks[i]
    return m.bit_count()


def union_vertices(H: Hypergraph, edge_ids: Iterable[int]) -> tuple[int, ...]:
    m = 0
    for i in edge_ids:
        m |= H.masks[i]
    return vertices_of(m)


def _relabel(H: Hypergraph, removed: set[int], edges, r) -> Hypergraph:
    survivors = [v for v in range(H.n) if v not in removed]
    new_id = {v: i for i, v in enumerate(survivors)}
    new_edges = tuple(sorted(tuple(new_id[v] for v in e) for e in edges))
    return _make(len(survivors), r, new_edges, [H.labels[v] for v in survivors])


def link(H: Hypergraph, T: Sequence[int]) -> Hypergraph:
    """The (r-|T|)-graph ``{A - T : T <= A}`` on the vertices outside ``T``.

    Vertices are re-indexed densely in increasing order; ``labels`` maps the
    new ids back.
    """
    key = _check_subset(H, T)
    tset = set(key)
    if key:
        ids = H.incidence(len(key)).get(key, ())
    else:
        ids = range(len(H.edges))
    edges = [tuple(v for v in H.edges[i] if v not in tset) for i in ids]
    return _relabel(H, tset, edges, H.r - len(key))


def delete_vertices(H: Hypergraph, X: Iterable[int]) -> Hypergraph:
    """Remove the vertices in ``X`` and every edge meeting ``X``."""
    xs = set(X)
    for v in xs:
        if not 0 <= v < H.n:
            raise ValueError(f"vertex {v} outside [0, {H.n})")
    xm = mask_of(xs)
    edges = [e for e, m in zip(H.edges, H.masks) if not m & xm]
    return _relabel(H, xs, edges, H.r)


def serialize(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.r} {len(H.edges)}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"non-integer token in {' '.join(tokens)!r}") from None


def parse(text: str) -> Hypergraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError(1, "missing header 'n r m'")
    header = lines[0].split(" ")
    if len(header) != 3:
        raise ParseError(1, f"header must be 'n r m', got {lines[0]!r}")
    n, r, m = _ints(header, 1)
    if n < 0 or r < 1 or m < 0:
        raise ParseError(1, f"invalid header values {lines[0]!r}")
    if len(lines) - 1 < m:
        raise ParseError(len(lines) + 1, f"expected {m} edge lines, found {len(lines) - 1}")
    if len(lines) - 1 > m:
        raise ParseError(m + 2, f"unexpected extra line {lines[m + 1]!r}")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        ids = _ints(line.split(" "), lineno)
        if len(ids) != r:
            raise ParseError(lineno, f"expected {r} ids, got {len(ids)}")
        if any(a >= b for a, b in zip(ids, ids[1:])):
            raise ParseError(lineno, "ids must be strictly increasing")
        if ids[0] < 0 or ids[-1] >= n:
            raise ParseError(lineno, f"id outside [0, {n})")
        edges.append(ids)
    return build(n, r, edges)


def read(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(H))


def fano() -> Hypergraph:
    """The Fano plane: lines ``{i, i+1, i+3} mod 7``."""
    return build(7, 3, [{i, (i + 1) % 7, (i + 3) % 7} for i in range(7)])
