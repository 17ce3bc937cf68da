"""Finite simple undirected graphs, distances, balls, components and paths.

Vertices are the dense range ``0 .. n-1``. Paths are plain tuples of vertex
ids; :func:`check_path` validates one against a particular graph.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

from .errors import InputError

INF = math.inf

Path = tuple[int, ...]


class Graph:
    """Immutable simple graph on vertices ``0 .. n-1``."""

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._adj = tuple(frozenset(a) for a in adj)
        self._m = sum(len(a) for a in adj) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> Graph:
        edges = [(u, v) for u, nbrs in enumerate(adjacency) for v in nbrs if u < v]
        g = cls(len(adjacency), edges)
        for u, nbrs in enumerate(adjacency):
            if frozenset(nbrs) != g._adj[u]:
                raise InputError(f"adjacency of {u} is not symmetric")
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list with ``u < v``."""
        return sorted((u, v) for u in range(self._n) for v in self._adj[u] if u < v)

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``keep`` plus the new-id -> old-id map."""
        old = sorted(set(keep))
        check_vertices(self, old)
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u in old for v in self._adj[u] if v in index and u < v]
        return Graph(len(old), edges), old

    def without(self, removed: Iterable[int]) -> tuple[Graph, list[int]]:
        """``G \\ removed`` with the new-id -> old-id map."""
        gone = set(removed)
        return self.induced(v for v in range(self._n) if v not in gone)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def check_vertices(g: Graph, vs: Iterable[int]) -> None:
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InputError(f"vertex {v!r} is not a vertex of {g!r}")


def bfs_distances(g: Graph, sources: Iterable[int], allowed: set[int] | frozenset[int] | None = None,
                  limit: float = INF) -> dict[int, int]:
    """Multi-source BFS; distances to every vertex reached within ``limit``.

    With ``allowed`` the search runs in the induced subgraph on ``allowed``;
    sources outside it are ignored.
    """
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s not in dist and (allowed is None or s in allowed):
            dist[s] = 0
            queue.append(s)
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= limit:
            continue
        for w in adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = du + 1
                queue.append(w)
    return dist


def dist(g: Graph, x: Iterable[int], y: Iterable[int], allowed: set[int] | frozenset[int] | None = None) -> float:
    """Length of a shortest path with one end in ``x`` and the other in ``y``.

    Returns ``INF`` when either set is empty or no such path exists. With
    ``allowed`` the distance is measured in the induced subgraph on it, and
    vertices outside it count as absent.
    """
    xs, ys = set(x), set(y)
    check_vertices(g, xs | ys)
    if allowed is not None:
        xs &= allowed
        ys &= allowed
    if not xs or not ys:
        return INF
    if xs & ys:
        return 0
    seen = set(xs)
    frontier = list(xs)
    d = 0
    adj = g.adj
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w in seen or (allowed is not None and w not in allowed):
                    continue
                if w in ys:
                    return d
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return INF


def ball(g: Graph, x: Iterable[int], r: float) -> frozenset[int]:
    """All vertices within distance ``r`` of ``x``."""
    xs = list(x)
    check_vertices(g, xs)
    if r < 0:
        raise InputError(f"radius must be non-negative, got {r}")
    return frozenset(bfs_distances(g, xs, limit=r))


def induced_components(g: Graph, z: Iterable[int]) -> list[frozenset[int]]:
    """Components of ``G[z]``, ordered by their minimum vertex."""
    zs = set(z)
    check_vertices(g, zs)
    comps = []
    seen: set[int] = set()
    for v in sorted(zs):
        if v in seen:
            continue
        comp = frozenset(bfs_distances(g, [v], allowed=zs))
        seen |= comp
        comps.append(comp)
    return comps


def component_index(g: Graph, z: Iterable[int]) -> dict[int, int]:
    """Map each vertex of ``z`` to the index of its component of ``G[z]``."""
    return {v: i for i, comp in enumerate(induced_components(g, z)) for v in comp}


def subpath(p: Sequence[int], u: int, v: int) -> Path:
    """``P[u, v]``: the contiguous piece of ``p`` from ``u`` to ``v``, oriented u -> v."""
    try:
        i, j = p.index(u), p.index(v)
    except ValueError:
        raise InputError(f"{u} or {v} is not on path {tuple(p)}") from None
    if i <= j:
        return tuple(p[i:j + 1])
    return tuple(reversed(p[j:i + 1]))


def check_path(g: Graph, p: Sequence[int]) -> None:
    """Raise :class:`InputError` unless ``p`` is a path of ``g``."""
    if len(p) == 0:
        raise InputError("empty path")
    check_vertices(g, p)
    if len(set(p)) != len(p):
        raise InputError(f"path {tuple(p)} repeats a vertex")
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise InputError(f"path {tuple(p)} uses non-edge ({a}, {b})")


def is_path(g: Graph, p: Sequence[int]) -> bool:
    try:
        check_path(g, p)
    except InputError:
        return False
    return True


def shortest_path(g: Graph, sources: Iterable[int], targets: Iterable[int],
                  allowed: set[int] | frozenset[int] | None = None) -> Path | None:
    """A shortest path from ``sources`` to ``targets`` (inside ``allowed``), or None.

    Among shortest paths the one whose vertex sequence is lexicographically
    least is returned, so results are reproducible.
    """
    srcs = {s for s in sources if allowed is None or s in allowed}
    tgts = {t for t in targets if allowed is None or t in allowed}
    if not srcs or not tgts:
        return None
    back = bfs_distances(g, tgts, allowed=allowed)
    reachable = [s for s in srcs if s in back]
    if not reachable:
        return None
    best = min(back[s] for s in reachable)
    cur = min(s for s in reachable if back[s] == best)
    path = [cur]
    while back[cur] > 0:
        cur = min(w for w in g.adj[cur] if back.get(w) == back[cur] - 1)
        path.append(cur)
    return tuple(path)


def path_length(p: Sequence[int]) -> int:
    return len(p) - 1
