"""Bite closure, carving, and web-growth heights.

All three routines rely on the host excluding short subdivisions of a
binary tree. Rather than assume it, each one builds an explicit
:class:`~coarse_menger.trees.SubdivisionWitness` whenever the assumption
turns out to be false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DisciplineError, InputError, InvariantError
from .graph import INF, Graph, Path, bfs_distances, check_path, check_vertices, component_index
from .trees import SubdivisionWitness, tree_size, validate_witness


@dataclass(frozen=True)
class BiteClosure:
    y: frozenset[int]
    history: tuple[Path, ...]


def bite_threshold(l: int, d: int) -> int:
    return 2 * (d - 2) * (l - 1)


def _least_route(g: Graph, u: int, v: int, outside: set[int], length: int) -> Path:
    # lexicographically least u..v path of the given length with interior in `outside`
    back = bfs_distances(g, [w for w in g.adj[v] if w in outside], allowed=outside, limit=length - 2)
    path = [u]
    cur = u
    for step in range(length - 1, 0, -1):
        cur = min(w for w in g.adj[cur] if back.get(w) == step - 1)
        path.append(cur)
    path.append(v)
    return tuple(path)


def find_bite(g: Graph, y, l: int, d: int) -> Path | None:
    """A bite for ``y``, or None when none exists.

    A bite is a path of length 2..l whose ends lie in ``y``, whose interior
    avoids ``y``, and whose ends are more than ``2(d-2)(l-1)`` apart in
    ``G[y]``. The least end pair wins, then the least shortest route.
    """
    ys = set(y)
    check_vertices(g, ys)
    if l < 2:
        return None
    outside = set(g.vertices()) - ys
    if not outside:
        return None
    threshold = bite_threshold(l, d)
    for u in sorted(ys):
        starts = [w for w in g.adj[u] if w in outside]
        if not starts:
            continue
        interior = bfs_distances(g, starts, allowed=outside, limit=l - 2)
        # length of the shortest bite-shaped route from u to each end v
        reach: dict[int, int] = {}
        for o, depth in interior.items():
            for v in g.adj[o]:
                if v in ys and v > u:
                    reach[v] = min(reach.get(v, INF), depth + 2)
        if not reach:
            continue
        inside = bfs_distances(g, [u], allowed=ys)
        for v in sorted(reach):
            if inside.get(v, INF) > threshold:
                return _least_route(g, u, v, outside, reach[v])
    return None


def _tree_index_under(child: int, j: int) -> int:
    """Heap index in H_m of vertex ``j`` of H_{m-1} hung below root child ``child``."""
    depth = (j + 1).bit_length() - 1
    offset = j - (2 ** depth - 1)
    return 2 ** (depth + 1) - 1 + (child - 1) * 2 ** depth + offset


def _hang(root: int, left: tuple[Path, SubdivisionWitness | None, int],
          right: tuple[Path, SubdivisionWitness | None, int], m: int) -> SubdivisionWitness:
    """Join two H_{m-1} pieces below ``root`` through the given edge paths."""
    n = tree_size(m)
    branch = [-1] * n
    edges: list[Path | None] = [None] * (n - 1)
    branch[0] = root
    for child, (link, sub, end) in ((1, left), (2, right)):
        branch[child] = end
        edges[child - 1] = link
        if sub is None:
            continue
        for j, host in enumerate(sub.branch_map):
            branch[_tree_index_under(child, j)] = host
        for c, p in enumerate(sub.edge_paths, start=1):
            edges[_tree_index_under(child, c) - 1] = p
    return SubdivisionWitness(m, tuple(branch), tuple(edges))  # type: ignore[arg-type]


def _split_at(p: Path, v: int) -> tuple[Path, Path]:
    i = p.index(v)
    return tuple(reversed(p[:i + 1])), tuple(p[i:])


def _replay_bites(g: Graph, z: frozenset[int], history: tuple[Path, ...], v: int, m: int,
                  l: int) -> SubdivisionWitness:
    first = {}
    for i, bite in enumerate(history):
        for x in bite[1:-1]:
            first.setdefault(x, i)
    to_z = bfs_distances(g, z)

    def build(x: int, k: int) -> SubdivisionWitness:
        if to_z.get(x, INF) <= (l - 1) * (k - 2) or x not in first:
            raise InvariantError(f"bite replay: vertex {x} too close to the seed set for H_{k}")
        bite = history[first[x]]
        to_u1, to_u2 = _split_at(bite, x)
        u1, u2 = to_u1[-1], to_u2[-1]
        if k == 2:
            return _hang(x, (to_u1, None, u1), (to_u2, None, u2), 2)
        return _hang(x, (to_u1, build(u1, k - 1), u1), (to_u2, build(u2, k - 1), u2), k)

    return build(v, m)


def close_bites(g: Graph, z, l: int, d: int) -> BiteClosure | SubdivisionWitness:
    """Grow ``z`` by bites until none is left.

    If some vertex of the closure ends up farther than ``(d-2)(l-1)`` from
    ``z``, the bite history is replayed into an ``(l-1)``-subdivision of
    ``H_d`` and that witness is returned instead.
    """
    zs = frozenset(z)
    check_vertices(g, zs)
    y = set(zs)
    history: list[Path] = []
    while True:
        bite = find_bite(g, y, l, d)
        if bite is None:
            break
        history.append(bite)
        y.update(bite)
    bound = (d - 2) * (l - 1)
    to_z = bfs_distances(g, zs)
    far = [v for v in y if to_z.get(v, INF) > bound]
    if far:
        v = min(far, key=lambda x: (-to_z.get(x, INF), x))
        w = _replay_bites(g, zs, tuple(history), v, d, l)
        ok, why = validate_witness(g, w, l - 1, d)
        if not ok:
            raise InvariantError(f"bite replay produced an invalid witness: {why}")
        return w
    return BiteClosure(frozenset(y), tuple(history))


def carve_violations(g: Graph, a, b, l: int, d: int) -> list[str]:
    """Every failed property of ``b`` as a carve of ``a`` (empty when all hold)."""
    a, b = frozenset(a), frozenset(b)
    out = []
    if not b <= a:
        out.append("B is not a subset of A")
    rest = frozenset(g.vertices()) - a
    near_rest = bfs_distances(g, rest, limit=(d - 2) * (l - 1))
    for v in sorted(a - b):
        if v not in near_rest:
            out.append(f"(i) {v} is farther than {(d - 2) * (l - 1)} from V \\ A")
    keep = frozenset(g.vertices()) - b
    bite = find_bite(g, keep, l, d)
    if bite is not None and not g.has_edge(bite[0], bite[-1]):
        out.append(f"(ii) path {bite} re-enters V \\ B between far-apart ends")
    cap = (d - 2) * l * (l - 1)
    for u in sorted(keep):
        near = bfs_distances(g, [u], limit=l)
        inside = bfs_distances(g, [u], allowed=keep, limit=cap)
        for v in near:
            if v in keep and v > u and v not in inside:
                out.append(f"(iii) dist({u},{v}) <= {l} but > {cap} once B is removed")
    return out


def carve(g: Graph, a, l: int, d: int) -> frozenset[int] | SubdivisionWitness:
    """A subset ``B`` of ``a`` whose deletion keeps short distances short.

    For ``d = 2`` any path of length two is already an ``(l-1)``-subdivision
    of ``H_2``, so one is returned as the witness when it exists. Otherwise
    the host is a matching and ``B = a``. The stretch bound is 0 then, so
    an edge outside ``a`` could never meet it, and it is not checked for
    ``d = 2``.
    """
    if l < 2 or d < 2:
        raise InputError(f"carve needs l >= 2 and d >= 2, got l={l}, d={d}")
    a = frozenset(a)
    check_vertices(g, a)
    if d == 2:
        hub = next((v for v in g.vertices() if g.degree(v) >= 2), None)
        if hub is None:
            return a
        x, y = sorted(g.adj[hub])[:2]
        return SubdivisionWitness(2, (hub, x, y), ((hub, x), (hub, y)))
    if not a:
        return frozenset()
    res = close_bites(g, frozenset(g.vertices()) - a, l, d)
    if isinstance(res, SubdivisionWitness):
        return res
    b = frozenset(g.vertices()) - res.y
    bad = carve_violations(g, a, b, l, d)
    if bad:
        raise InvariantError("carve: " + "; ".join(bad[:3]))
    return b


@dataclass
class WebGrowthReport:
    heights: dict[int, int]
    first_index: dict[int, int]
    # v -> ("interior", i) or ("three", sorted component ids of G[z] within reach)
    classification: dict[int, tuple] = field(default_factory=dict)
    unclassified: list[int] = field(default_factory=list)
    witness: SubdivisionWitness | None = None

    @property
    def ok(self) -> bool:
        return not self.unclassified

    @property
    def max_height(self) -> int:
        return max(self.heights.values(), default=0)


def check_web_growth(g: Graph, z, m_seq: list[Path], l: int, d: int) -> WebGrowthReport:
    """Heights and the three-component property for a disciplined growth ``m_seq`` of ``z``.

    Raises :class:`DisciplineError` if some ``M_i`` is too long, has interior
    inside the current set, or does not join two different components of it.
    A vertex of height ``>= d-1`` makes the report carry a witness for an
    ``(l-1)``-subdivision of ``H_d``.
    """
    zs = frozenset(z)
    check_vertices(g, zs)
    cur = set(zs)
    heights = {v: 0 for v in zs}
    first: dict[int, int] = {}
    prefix_sets = [frozenset(cur)]
    for i, mp in enumerate(m_seq):
        try:
            check_path(g, mp)
        except Exception as exc:
            raise DisciplineError(i, str(exc)) from None
        if len(mp) - 1 > l or len(mp) < 2:
            raise DisciplineError(i, f"length {len(mp) - 1} outside 1..{l}")
        if any(x in cur for x in mp[1:-1]):
            raise DisciplineError(i, "an internal vertex is already in the set")
        comp = component_index(g, cur)
        u1, u2 = mp[0], mp[-1]
        if u1 not in comp or u2 not in comp:
            raise DisciplineError(i, "an end is outside the current set")
        if comp[u1] == comp[u2]:
            raise DisciplineError(i, "both ends lie in the same component")
        h = 1 + min(heights[u1], heights[u2])
        for x in mp[1:-1]:
            heights[x] = h
            first[x] = i
        cur.update(mp)
        prefix_sets.append(frozenset(cur))

    report = WebGrowthReport(heights, first)
    zcomp = component_index(g, zs)
    reach = d * (l - 1)
    for v in sorted(first):
        i = first[v]
        mp = m_seq[i]
        if mp[0] in zs and mp[-1] in zs:
            report.classification[v] = ("interior", i)
            continue
        near = bfs_distances(g, [v], allowed=prefix_sets[i + 1], limit=reach)
        comps = sorted({zcomp[x] for x in near if x in zcomp})
        if len(comps) >= 3:
            report.classification[v] = ("three", tuple(comps))
        else:
            report.unclassified.append(v)

    if report.max_height >= d - 1 and d >= 2:
        top = min((v for v in first if heights[v] >= d - 1), key=lambda x: (-heights[x], x))
        report.witness = _replay_growth(m_seq, first, heights, top, d)
        ok, why = validate_witness(g, report.witness, l - 1, d)
        if not ok:
            raise InvariantError(f"height replay produced an invalid witness: {why}")
    return report


def _replay_growth(m_seq: list[Path], first: dict[int, int], heights: dict[int, int], v: int,
                   m: int) -> SubdivisionWitness:
    def build(x: int, k: int) -> SubdivisionWitness:
        if heights.get(x, 0) < k - 1:
            raise InvariantError(f"height replay: {x} has height {heights.get(x, 0)} < {k - 1}")
        mp = m_seq[first[x]]
        to_u1, to_u2 = _split_at(mp, x)
        u1, u2 = to_u1[-1], to_u2[-1]
        if k == 2:
            return _hang(x, (to_u1, None, u1), (to_u2, None, u2), 2)
        return _hang(x, (to_u1, build(u1, k - 1), u1), (to_u2, build(u2, k - 1), u2), k)

    return build(v, m)
