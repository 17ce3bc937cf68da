"""Uniform binary trees, bounded-length subdivision search, exact path-width.

``H_d`` uses heap numbering: the root is 0 and the children of ``i`` are
``2i+1`` and ``2i+2``. It has ``2**d - 1`` vertices and its leaves sit at
depth ``d - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityError, InputError
from .graph import Graph, Path, check_vertices, is_path

PATHWIDTH_CAP = 18


def tree_size(d: int) -> int:
    return 2 ** d - 1


def tree_parent(i: int) -> int:
    return (i - 1) // 2


def tree_children(i: int, d: int) -> tuple[int, ...]:
    n = tree_size(d)
    return tuple(c for c in (2 * i + 1, 2 * i + 2) if c < n)


def make_binary_tree(d: int) -> Graph:
    """The uniform binary tree ``H_d`` (root 0, heap order)."""
    if d < 2:
        raise InputError(f"H_d needs d >= 2, got {d}")
    n = tree_size(d)
    return Graph(n, [(tree_parent(c), c) for c in range(1, n)])


@dataclass(frozen=True)
class SubdivisionWitness:
    """An embedding of a subdivision of ``H_depth`` into a host graph.

    ``branch_map[i]`` is the host vertex of tree vertex ``i``;
    ``edge_paths[c - 1]`` is the host path for tree edge ``(parent(c), c)``,
    running from the parent's image to the child's image.
    """

    depth: int
    branch_map: tuple[int, ...]
    edge_paths: tuple[Path, ...]

    @property
    def max_edge_length(self) -> int:
        return max((len(p) - 1 for p in self.edge_paths), default=0)

    def tree_edges(self) -> Iterator[tuple[tuple[int, int], Path]]:
        for c, p in enumerate(self.edge_paths, start=1):
            yield (tree_parent(c), c), p

    def vertices(self) -> frozenset[int]:
        return frozenset(self.branch_map).union(*map(set, self.edge_paths))

    def relabel(self, old_of_new: list[int]) -> SubdivisionWitness:
        """Map a witness found in a subgraph back to the parent graph's ids."""
        return SubdivisionWitness(
            self.depth,
            tuple(old_of_new[v] for v in self.branch_map),
            tuple(tuple(old_of_new[v] for v in p) for p in self.edge_paths),
        )

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "branch_map": list(self.branch_map),
            "edge_paths": [list(p) for p in self.edge_paths],
        }

    @classmethod
    def from_json(cls, obj: dict) -> SubdivisionWitness:
        return cls(int(obj["depth"]), tuple(obj["branch_map"]), tuple(tuple(p) for p in obj["edge_paths"]))


def validate_witness(g: Graph, w: SubdivisionWitness, l: int | None = None,
                     d: int | None = None) -> tuple[bool, str]:
    """Check that ``w`` is a subdivision of ``H_d`` in ``g`` with edge paths of length <= ``l``.

    Returns ``(ok, reason)``; ``reason`` is empty on success.
    """
    depth = w.depth if d is None else d
    if w.depth != depth:
        return False, f"witness is for H_{w.depth}, expected H_{depth}"
    if depth < 2:
        return False, f"depth {depth} < 2"
    n = tree_size(depth)
    if len(w.branch_map) != n:
        return False, f"branch map has {len(w.branch_map)} entries, H_{depth} has {n} vertices"
    if len(w.edge_paths) != n - 1:
        return False, f"{len(w.edge_paths)} edge paths, H_{depth} has {n - 1} edges"
    if any(not isinstance(v, int) or not 0 <= v < g.n for v in w.branch_map):
        return False, "branch map uses a non-vertex"
    if len(set(w.branch_map)) != n:
        return False, "branch map is not injective"
    used = set(w.branch_map)
    for (p, c), path in w.tree_edges():
        if len(path) < 2:
            return False, f"edge ({p}, {c}) has a path of length < 1"
        if l is not None and len(path) - 1 > l:
            return False, f"edge ({p}, {c}) has length {len(path) - 1} > {l}"
        if not is_path(g, path):
            return False, f"edge ({p}, {c}) is not a path of the host"
        if path[0] != w.branch_map[p] or path[-1] != w.branch_map[c]:
            return False, f"edge ({p}, {c}) does not join the mapped endpoints"
        for v in path[1:-1]:
            if v in used:
                return False, f"edge ({p}, {c}) reuses vertex {v}"
            used.add(v)
    return True, ""


def _search_order(d: int) -> list[tuple[int, int | None]]:
    """(tree vertex, already-placed tree neighbour) pairs: branch vertices first, leaves last."""
    n = tree_size(d)
    leaves = set(range(tree_size(d - 1), n))
    if d == 2:
        return [(0, None), (1, 0), (2, 0)]
    order: list[tuple[int, int | None]] = [(1, None)]
    seen = {1}
    i = 0
    while i < len(order):
        x = order[i][0]
        i += 1
        nbrs = list(tree_children(x, d)) + ([tree_parent(x)] if x else [])
        for y in sorted(nbrs):
            if y not in seen and y not in leaves:
                seen.add(y)
                order.append((y, x))
    order += [(leaf, tree_parent(leaf)) for leaf in sorted(leaves)]
    return order


def _edge_child(x: int, y: int) -> int:
    return x if x and tree_parent(x) == y else y


def contains_subdivision(g: Graph, d: int, l: int) -> SubdivisionWitness | None:
    """Exhaustively search ``g`` for a subdivision of ``H_d`` whose edges have length 1..l.

    Returns a witness or None. Exponential in the worst case; meant for
    graphs of a few dozen vertices.
    """
    if d < 2:
        raise InputError(f"d must be >= 2, got {d}")
    if l < 1:
        raise InputError(f"l must be >= 1, got {l}")
    n_tree = tree_size(d)
    if g.n < n_tree:
        return None
    tree_deg = [len(tree_children(i, d)) + (1 if i else 0) for i in range(n_tree)]
    leaves_start = tree_size(d - 1)
    order = _search_order(d)
    adj = g.adj
    img = [-1] * n_tree
    paths: list[Path | None] = [None] * n_tree
    used: set[int] = set()

    def routes(src: int, need: int) -> Iterator[Path]:
        # Iterative deepening: all simple routes through unused vertices, shortest first.
        max_len = min(l, g.n - len(used))
        for length in range(1, max_len + 1):
            stack = [(src, (src,))]
            while stack:
                u, pth = stack.pop()
                depth = len(pth) - 1
                for w in sorted(adj[u], reverse=True):
                    if w in used or w in pth:
                        continue
                    if depth + 1 == length:
                        if need == 0 or sum(1 for z in adj[w] if z not in used and z not in pth) >= need:
                            yield pth + (w,)
                    else:
                        stack.append((w, pth + (w,)))

    def sibling_ok(x: int, v: int) -> bool:
        # H_d swaps sibling subtrees; only keep embeddings with img(left) < img(right).
        if x == 0:
            return True
        sib = x + 1 if x % 2 == 1 else x - 1
        if sib >= n_tree or img[sib] < 0:
            return True
        return img[sib] < v if x > sib else v < img[sib]

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        x, anchor = order[pos]
        if anchor is None:
            for v in range(g.n):
                if g.degree(v) < tree_deg[x]:
                    continue
                img[x] = v
                used.add(v)
                if place(pos + 1):
                    return True
                used.discard(v)
                img[x] = -1
            return False
        src = img[anchor]
        if x >= leaves_start:
            # A leaf route can always be cut back to its first edge.
            for v in sorted(adj[src]):
                if v in used or not sibling_ok(x, v):
                    continue
                img[x] = v
                paths[x] = (src, v)
                used.add(v)
                if place(pos + 1):
                    return True
                used.discard(v)
                img[x] = -1
            return False
        for route in routes(src, tree_deg[x] - 1):
            v = route[-1]
            if not sibling_ok(x, v):
                continue
            img[x] = v
            paths[_edge_child(x, anchor)] = route
            used.update(route[1:])
            if place(pos + 1):
                return True
            used.difference_update(route[1:])
            img[x] = -1
        return False

    if not place(0):
        return None
    edge_paths = []
    for c in range(1, n_tree):
        p = paths[c]
        assert p is not None
        # routes were laid from the already-placed neighbour; orient parent -> child
        edge_paths.append(p if p[0] == img[tree_parent(c)] else tuple(reversed(p)))
    return SubdivisionWitness(d, tuple(img), tuple(edge_paths))


def pathwidth_exact(g: Graph) -> int:
    """Exact path-width via the vertex separation number subset DP."""
    n = g.n
    if n > PATHWIDTH_CAP:
        raise CapacityError(f"pathwidth_exact is capped at {PATHWIDTH_CAP} vertices, got {n}")
    if n == 0:
        return 0
    size = 1 << n
    subsets = np.arange(size, dtype=np.int64)
    # boundary[S] = #{v in S with a neighbour outside S}
    boundary = np.zeros(size, dtype=np.int64)
    for v in range(n):
        nmask = 0
        for w in g.adj[v]:
            nmask |= 1 << w
        in_s = (subsets >> v) & 1
        has_out = (nmask & ~subsets) != 0
        boundary += in_s * has_out
    popcount = np.zeros(size, dtype=np.int64)
    for v in range(n):
        popcount += (subsets >> v) & 1
    best = np.full(size, np.iinfo(np.int64).max, dtype=np.int64)
    best[0] = 0
    for p in range(1, n + 1):
        layer = subsets[popcount == p]
        cand = np.full(layer.shape, np.iinfo(np.int64).max, dtype=np.int64)
        for v in range(n):
            bit = 1 << v
            has = (layer & bit) != 0
            prev = best[layer[has] ^ bit]
            cand[has] = np.minimum(cand[has], prev)
        best[layer] = np.maximum(cand, boundary[layer])
    return int(best[size - 1])


def check_bags(g: Graph, bags: list[frozenset[int]]) -> tuple[bool, str]:
    """Check a bag sequence against the path-decomposition definition."""
    for b in bags:
        check_vertices(g, b)
    covered = set().union(*bags) if bags else set()
    if covered != set(g.vertices()):
        return False, "some vertex is in no bag"
    for u, v in g.edges():
        if not any(u in b and v in b for b in bags):
            return False, f"edge ({u}, {v}) is in no bag"
    for v in g.vertices():
        idx = [i for i, b in enumerate(bags) if v in b]
        if idx[-1] - idx[0] + 1 != len(idx):
            return False, f"bags containing {v} are not contiguous"
    return True, ""
