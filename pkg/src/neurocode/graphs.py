"""Graphs attached to a code: the codeword containment graph, the general
relationship complex built from a canonical form, and its 1-skeleton."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Hashable

from .codes import Code, Codeword, SimplicialComplex, _maximal_masks, indices_of
from .ideal import CanonicalForm


def _vertex_key(v: Hashable):
    return v.sort_key() if isinstance(v, Codeword) else v


def _vertex_label(v: Hashable) -> str:
    return v.label if isinstance(v, Codeword) else str(v)


@dataclass(frozen=True, eq=False)
class CodeGraph:
    """Undirected graph with unique hashable vertex labels and no loops."""

    vertices: tuple
    edges: frozenset[frozenset]

    def __post_init__(self) -> None:
        verts = tuple(sorted(set(self.vertices), key=_vertex_key))
        edges = frozenset(frozenset(e) for e in self.edges)
        vset = set(verts)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"edge {set(e)} must join two distinct vertices")
            if not e <= vset:
                raise ValueError(f"edge {set(e)} has an unknown endpoint")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodeGraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v) -> int:
        if v not in set(self.vertices):
            raise ValueError(f"unknown vertex {v!r}")
        return sum(1 for e in self.edges if v in e)

    def sorted_edges(self) -> list[tuple]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=pos.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (pos[p[0]], pos[p[1]]))


def ccg(code: Code) -> CodeGraph:
    """Codeword containment graph: an edge wherever one word strictly
    contains the other."""
    words = code.sorted_words
    edges = set()
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            ab = a.bits & b.bits
            if ab == a.bits or ab == b.bits:
                edges.add(frozenset((a, b)))
    return CodeGraph(words, frozenset(edges))


def _bfs_distances(adj: dict, start) -> dict:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: CodeGraph) -> bool:
    if not g.vertices:
        return True
    adj = g.adjacency()
    return len(_bfs_distances(adj, g.vertices[0])) == len(g.vertices)


def is_complete(g: CodeGraph) -> bool:
    m = len(g.vertices)
    return len(g.edges) == m * (m - 1) // 2


def is_regular(g: CodeGraph, k: int) -> bool:
    adj = g.adjacency()
    return all(len(nbrs) == k for nbrs in adj.values())


def distance(g: CodeGraph, u, v) -> int | float:
    """Shortest path length between two vertices; inf when unreachable."""
    vset = set(g.vertices)
    if u not in vset or v not in vset:
        raise ValueError(f"unknown vertex in distance query: {u!r}, {v!r}")
    dist = _bfs_distances(g.adjacency(), u)
    return dist.get(v, math.inf)


def diameter(g: CodeGraph) -> int | float:
    """Largest pairwise distance; 0 for a single vertex, inf if disconnected."""
    if len(g.vertices) <= 1:
        return 0
    adj = g.adjacency()
    worst = 0
    for v in g.vertices:
        dist = _bfs_distances(adj, v)
        if len(dist) < len(g.vertices):
            return math.inf
        worst = max(worst, max(dist.values()))
    return worst


def _minimal_supports(cf: CanonicalForm) -> list[int]:
    supports = {f.support for f in cf.elements}
    return sorted(s for s in supports
                  if not any(t != s and t & s == t for t in supports))


def gr_complex(cf: CanonicalForm) -> SimplicialComplex:
    """General relationship complex: all neuron sets supporting no element.

    A set sigma is a face iff no canonical-form element has its variable
    support inside sigma, so the complex is the independence complex of the
    support hypergraph. Facets are found by descending from the full set,
    branching on one violated support at a time.
    """
    n = cf.n
    supports = _minimal_supports(cf)
    full = (1 << n) - 1
    visited: set[int] = set()
    independent: list[int] = []
    stack = [full]
    while stack:
        mask = stack.pop()
        if mask in visited:
            continue
        visited.add(mask)
        violated = next((s for s in supports if s & mask == s), None)
        if violated is None:
            independent.append(mask)
            continue
        bits = violated
        while bits:
            low = bits & -bits
            stack.append(mask & ~low)
            bits ^= low
    facets = _maximal_masks(independent)
    return SimplicialComplex(n, frozenset(Codeword(n, m) for m in facets))


def grg(cf: CanonicalForm) -> CodeGraph:
    """General relationship graph, the 1-skeleton of the relationship complex,
    computed directly from element supports."""
    n = cf.n
    supports = _minimal_supports(cf)
    vertices = [i for i in range(1, n + 1)
                if not any(s & ~(1 << (i - 1)) == 0 for s in supports)]
    edges = set()
    for a, i in enumerate(vertices):
        for j in vertices[a + 1:]:
            pair = (1 << (i - 1)) | (1 << (j - 1))
            if not any(s & ~pair == 0 for s in supports):
                edges.add(frozenset((i, j)))
    return CodeGraph(tuple(vertices), frozenset(edges))


def to_dot(g: CodeGraph) -> str:
    """Deterministic DOT text: all vertices first, then edges, both sorted."""
    lines = ["graph {"]
    for v in g.vertices:
        lines.append(f'  "{_vertex_label(v)}";')
    for u, v in g.sorted_edges():
        lines.append(f'  "{_vertex_label(u)}" -- "{_vertex_label(v)}";')
    lines.append("}")
    return "\n".join(lines)


def graph_to_json_obj(g: CodeGraph) -> dict:
    return {
        "vertices": [_json_vertex(v) for v in g.vertices],
        "edges": [[_json_vertex(u), _json_vertex(v)] for u, v in g.sorted_edges()],
    }


def _json_vertex(v):
    return v.label if isinstance(v, Codeword) else v


def complex_to_json_obj(sc: SimplicialComplex) -> dict:
    return {"n": sc.n, "facets": [list(indices_of(f.bits)) for f in sc.sorted_facets]}
