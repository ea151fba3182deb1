"""Explicit arrangement families, graphic arrangements and chordality."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .arrangement import Arrangement, ArrangementError
from .roots import RootSystem, RootSystemError, iter_bits

__all__ = [
    "Graph",
    "build_Jn",
    "build_Kn",
    "build_Jn_r",
    "build_Jn_st",
    "build_Jn_rst",
    "graphic_arrangement",
    "arrangement_graph",
    "is_chordal",
    "find_chordless_cycle",
    "ideal_to_graph",
    "union_of_cliques",
]


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset

    def __init__(self, n_vertices: int, edges: Iterable = ()):
        norm = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < n_vertices and 0 <= j < n_vertices):
                raise ValueError(f"edge {e} outside vertices 0..{n_vertices - 1}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n_vertices)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    @classmethod
    def complete(cls, n_vertices: int) -> "Graph":
        return cls(n_vertices, combinations(range(n_vertices), 2))


def union_of_cliques(n_vertices: int, cliques: Iterable[Iterable[int]]) -> Graph:
    edges = set()
    for c in cliques:
        edges.update(combinations(sorted(set(c)), 2))
    return Graph(n_vertices, edges)


def _unit(n: int, i: int) -> list[int]:
    v = [0] * n
    v[i - 1] = 1
    return v


def _diff(n: int, i: int, j: int, sign: int = -1) -> list[int]:
    v = [0] * n
    v[i - 1] = 1
    v[j - 1] = sign
    return v


def _j_family(n: int, removed: set[tuple[int, int]]) -> Arrangement:
    normals = [_unit(n, i) for i in range(1, n + 1)]
    normals += [_diff(n, i, j) for i, j in combinations(range(1, n + 1), 2) if (i, j) not in removed]
    return Arrangement(n, normals)


def build_Jn(n: int) -> Arrangement:
    """Coordinate hyperplanes x_i = 0 and all diagonals x_i = x_j in Q^n."""
    if n < 1:
        raise ArrangementError("J_n needs n >= 1")
    return _j_family(n, set())


def build_Kn(n: int) -> Arrangement:
    """Coordinate hyperplanes x_i = 0 and all anti-diagonals x_i = -x_j."""
    if n < 2:
        raise ArrangementError("K_n needs n >= 2")
    normals = [_unit(n, i) for i in range(1, n + 1)]
    normals += [_diff(n, i, j, 1) for i, j in combinations(range(1, n + 1), 2)]
    return Arrangement(n, normals)


def _removed_r(n, r):
    return {(i, j) for i in range(1, r + 1) for j in range(r + 1, n + 1)}


def _removed_st(n, s, t):
    return {(i, j) for i in range(1, s + 1) for j in range(s + 1, t + 1)}


def _removed_rst(n, r, s, t):
    return _removed_r(n, r) | {(i, j) for i in range(r + 1, s + 1) for j in range(s + 1, t + 1)}


def build_Jn_r(n: int, r: int) -> Arrangement:
    if not 1 <= r < n - 1:
        raise ArrangementError(f"J_n(r) needs 1 <= r < n-1, got n={n}, r={r}")
    return _j_family(n, _removed_r(n, r))


def build_Jn_st(n: int, s: int, t: int) -> Arrangement:
    if not 1 <= s < t < n:
        raise ArrangementError(f"J_n(s,t) needs 1 <= s < t < n, got n={n}, s={s}, t={t}")
    return _j_family(n, _removed_st(n, s, t))


def build_Jn_rst(n: int, r: int, s: int, t: int) -> Arrangement:
    if not 1 <= r < s < t < n:
        raise ArrangementError(f"J_n(r,s,t) needs 1 <= r < s < t < n, got n={n}, r={r}, s={s}, t={t}")
    return _j_family(n, _removed_rst(n, r, s, t))


def graphic_arrangement(g: Graph) -> Arrangement:
    """Hyperplanes x_i = x_j for the edges, with vertex 0 pinned at the origin.

    Vertices ``1..n`` are the coordinates of ``Q^n``; an edge ``(0, i)`` gives
    ``x_i = 0``. This is the essential form of the graphic arrangement.
    """
    n = g.n_vertices - 1
    normals = []
    for i, j in sorted(g.edges):
        normals.append(_unit(n, j) if i == 0 else _diff(n, i, j))
    return Arrangement(n, normals)


def arrangement_graph(arr: Arrangement) -> Graph:
    """Inverse of ``graphic_arrangement``: x_i = 0 is the edge (0, i)."""
    edges = []
    for v in arr.normals:
        nz = [(k + 1, c) for k, c in enumerate(v) if c]
        if len(nz) == 1 and abs(nz[0][1]) == 1:
            edges.append((0, nz[0][0]))
        elif len(nz) == 2 and nz[0][1] == -nz[1][1] and abs(nz[0][1]) == 1:
            edges.append((nz[0][0], nz[1][0]))
        else:
            raise ArrangementError(f"normal {v} is not of the form e_i or e_i - e_j")
    return Graph(arr.dim + 1, edges)


def _mcs_order(adj: list[set[int]]) -> list[int]:
    """Maximum cardinality search; returns vertices in visit order."""
    n = len(adj)
    weight = [0] * n
    done = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for u in adj[v]:
            if not done[u]:
                weight[u] += 1
    return order


def _peo_violation(adj, peo):
    """First vertex whose later neighbours are not a clique, with a non-adjacent pair."""
    pos = {v: k for k, v in enumerate(peo)}
    for v in peo:
        later = [u for u in adj[v] if pos[u] > pos[v]]
        for a, b in combinations(later, 2):
            if b not in adj[a]:
                return v, a, b
    return None


def is_chordal(g: Graph) -> list[int] | None:
    """A perfect elimination ordering, or None when ``g`` has a chordless cycle."""
    adj = g.adjacency()
    peo = _mcs_order(adj)[::-1]
    if _peo_violation(adj, peo) is None:
        return peo
    return None


def _shortest_path(adj, src, dst, banned):
    prev = {src: None}
    q = deque([src])
    while q:
        x = q.popleft()
        if x == dst:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in adj[x]:
            if y not in prev and y not in banned:
                prev[y] = x
                q.append(y)
    return None


def find_chordless_cycle(g: Graph) -> list[int] | None:
    """An induced cycle of length >= 4, or None when ``g`` is chordal."""
    adj = g.adjacency()
    for v in range(g.n_vertices):
        for a, b in combinations(sorted(adj[v]), 2):
            if b in adj[a]:
                continue
            banned = (adj[v] | {v}) - {a, b}
            path = _shortest_path(adj, a, b, banned)
            if path is not None:
                return [v] + path
    return None


def ideal_to_graph(rs: RootSystem, I) -> Graph:
    """Edge (i, j) for each root e_{i+1} - e_{j+1} outside the ideal."""
    if rs.type_label != "A":
        raise RootSystemError(f"ideal_to_graph needs type A, got {rs.name}")
    edges = []
    for k in iter_bits(I.complement_mask):
        c = rs.positive_roots[k].euclid_coords
        i = next(p for p, x in enumerate(c) if x == 1)
        j = next(p for p, x in enumerate(c) if x == -1)
        edges.append((i, j))
    return Graph(rs.rank + 1, edges)
