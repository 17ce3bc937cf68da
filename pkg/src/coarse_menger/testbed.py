"""Instance generators and brute-force oracles.

Random choices come from :class:`LCG`, a fixed 64-bit linear congruential
stream, so a (kind, params, seed) triple yields the same instance on any
platform or language that reimplements it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import CapacityError, InputError
from .graph import Graph, Path, bfs_distances, check_vertices, component_index
from .trees import make_binary_tree, tree_size

ORACLE_MAX_VERTICES = 25
ORACLE_MAX_PATHS = 4
SEPARATOR_MAX_SUBSETS = 500_000


@dataclass(frozen=True)
class Instance:
    graph: Graph
    s: frozenset[int]
    t: frozenset[int]
    params: dict = field(default_factory=dict)
    label: str = "instance"
    seed: int | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))
        object.__setattr__(self, "t", frozenset(self.t))
        check_vertices(self.graph, self.s | self.t)
        if not self.label:
            raise InputError("instance label must be nonempty")
        if self.names is not None and len(self.names) != self.graph.n:
            raise InputError("names must list one name per vertex")

    def __hash__(self) -> int:
        return hash((self.graph, self.s, self.t, self.label, self.seed))


class LCG:
    """64-bit LCG (Knuth's MMIX constants); each draw is the top 31 bits of the state."""

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state >> 33

    def below(self, n: int) -> int:
        if n <= 0:
            raise InputError("below() needs a positive bound")
        return self.next() % n

    def chance(self, p: float) -> bool:
        return self.next() < p * (1 << 31)

    def sample(self, items: list, m: int) -> list:
        pool = list(items)
        out = []
        for _ in range(min(m, len(pool))):
            out.append(pool.pop(self.below(len(pool))))
        return out


def _chordless_st_paths(g: Graph, s: frozenset[int], t: frozenset[int]) -> list[Path]:
    # Any family of far-apart S-T paths can be shrunk to one made of such paths.
    out = []
    adj = g.adj
    for src in sorted(s):
        if src in t:
            out.append((src,))
            continue
        stack = [(src,)]
        while stack:
            p = stack.pop()
            last = p[-1]
            inside = set(p)
            for w in sorted(adj[last], reverse=True):
                if w in inside or w in s:
                    continue
                if any(x in inside for x in adj[w] if x != last):
                    continue
                q = p + (w,)
                if w in t:
                    out.append(q)
                else:
                    stack.append(q)
    return out


def oracle_far_paths(g: Graph, s, t, m: int, c: int, force: bool = False) -> list[Path] | None:
    """``m`` S-T paths pairwise more than ``c`` apart, or None if none exist."""
    s, t = frozenset(s), frozenset(t)
    check_vertices(g, s | t)
    if not force and (g.n > ORACLE_MAX_VERTICES or m > ORACLE_MAX_PATHS):
        raise CapacityError(f"oracle_far_paths capped at {ORACLE_MAX_VERTICES} vertices and "
                            f"{ORACLE_MAX_PATHS} paths; pass force=True to override")
    if m <= 0:
        return []
    paths = {}
    for p in _chordless_st_paths(g, s, t):
        mask = 0
        for v in p:
            mask |= 1 << v
        paths.setdefault(mask, p)
    items = sorted(paths.items(), key=lambda kv: (len(kv[1]), kv[1]))
    masks = [mk for mk, _ in items]
    reach = []
    for _, p in items:
        r = 0
        for v in bfs_distances(g, p, limit=c):
            r |= 1 << v
        reach.append(r)
    chosen: list[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == m:
            return True
        for i in range(start, len(items)):
            if all(masks[i] & reach[j] == 0 for j in chosen):
                chosen.append(i)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return [items[i][1] for i in chosen]
    return None


def separates(g: Graph, s, t, x, r: int) -> bool:
    """True when every S-T path passes within ``r`` of ``x``."""
    covered = bfs_distances(g, x, limit=r) if x else {}
    rest = [v for v in g.vertices() if v not in covered]
    comp = component_index(g, rest)
    s_comps = {comp[v] for v in s if v in comp}
    return not any(comp.get(v) in s_comps for v in t if v in comp)


def oracle_separator(g: Graph, s, t, k: int, r: int, force: bool = False) -> frozenset[int] | None:
    """Smallest-first search for ``X`` with ``|X| <= k`` whose radius-r ball separates S from T."""
    s, t = frozenset(s), frozenset(t)
    check_vertices(g, s | t)
    total = sum(comb(g.n, i) for i in range(min(k, g.n) + 1))
    if not force and total > SEPARATOR_MAX_SUBSETS:
        raise CapacityError(f"oracle_separator would test {total} sets; pass force=True to override")
    for size in range(min(k, g.n) + 1):
        for x in combinations(range(g.n), size):
            if separates(g, s, t, x, r):
                return frozenset(x)
    return None


FIGURE1_NAMES = tuple([f"u{i}" for i in range(8)] + [f"v{i}" for i in range(8)] + ["a1", "b7"])


def _fig_id(name: str) -> int:
    return FIGURE1_NAMES.index(name)


FIGURE1_PAIRS = tuple((_fig_id(a), _fig_id(b)) for a, b in [
    ("a1", "v4"), ("v0", "u4"), ("u1", "u5"), ("u2", "v5"), ("v2", "v7"), ("v3", "u6"), ("u3", "b7")])


def gen_figure1() -> Instance:
    """Two 8-vertex paths plus the seven bridging pairs of a small two-path example."""
    p1 = [(_fig_id(f"u{i}"), _fig_id(f"u{i + 1}")) for i in range(7)]
    p2 = [(_fig_id(f"v{i}"), _fig_id(f"v{i + 1}")) for i in range(7)]
    g = Graph(len(FIGURE1_NAMES), p1 + p2 + list(FIGURE1_PAIRS))
    s = {_fig_id(x) for x in ("u0", "v0", "a1")}
    t = {_fig_id(x) for x in ("u7", "v7", "b7")}
    return Instance(g, s, t, {"k": 2, "c": 2, "d": 3}, "figure1", None, FIGURE1_NAMES)


def figure1_paths() -> tuple[Path, Path]:
    return (tuple(_fig_id(f"u{i}") for i in range(8)), tuple(_fig_id(f"v{i}") for i in range(8)))


def bounded_pw_graph(w: int, n: int, rng: LCG, p: float = 0.5) -> tuple[list[tuple[int, int]], list[frozenset[int]]]:
    """Random graph built along a bag sequence of width ``w``; returns (edges, bags)."""
    if w < 0 or n < 1:
        raise InputError("need w >= 0 and n >= 1")
    bag: list[int] = []
    bags = []
    edges = []
    for v in range(n):
        if len(bag) == w + 1:
            bag.pop(rng.below(len(bag)))
        picked = [u for u in bag if rng.chance(p)]
        if bag and not picked:
            picked = [bag[rng.below(len(bag))]]
        edges += [(u, v) for u in picked]
        bag.append(v)
        bags.append(frozenset(bag))
    return edges, bags


def family_bags(params: dict, seed: int = 0) -> list[frozenset[int]]:
    """The generating bag sequence of ``gen_family("random_bounded_pw", params, seed)``."""
    _, bags = bounded_pw_graph(int(params["width"]), int(params["n"]), LCG(seed), float(params.get("p", 0.5)))
    return bags


def _subdivide_edges(n0: int, edges: list[tuple[int, int]], n: int) -> tuple[int, list[tuple[int, int]]]:
    out = []
    nxt = n0
    for u, v in sorted((min(e), max(e)) for e in edges):
        chain = [u] + list(range(nxt, nxt + n - 1)) + [v]
        nxt += n - 1
        out += list(zip(chain, chain[1:]))
    return nxt, out


FAMILY_KINDS = ("binary_tree", "subdivided_tree", "grid", "caterpillar", "random_bounded_pw")


def gen_family(kind: str, params: dict, seed: int = 0) -> Instance:
    """Deterministic instance of a named family.

    Shape parameters per kind: binary_tree ``depth``; subdivided_tree
    ``depth``, ``length``; grid ``rows``, ``cols``; caterpillar ``spine``,
    ``legs``; random_bounded_pw ``width``, ``n``, optional ``p`` and
    ``terminals``. Optional ``k``, ``c``, ``d`` go to the instance params.
    """
    rng = LCG(seed)
    solve_params = {key: int(params.get(key, dflt)) for key, dflt in (("k", 1), ("c", 1), ("d", 3))}
    try:
        if kind in ("binary_tree", "subdivided_tree"):
            depth = int(params["depth"])
            h = make_binary_tree(depth)
            leaves = list(range(tree_size(depth - 1), tree_size(depth)))
            half = len(leaves) // 2
            s, t = leaves[:half], leaves[half:]
            if kind == "binary_tree":
                g = h
            else:
                n, edges = _subdivide_edges(h.n, h.edges(), int(params["length"]))
                g = Graph(n, edges)
            label = f"{kind}({depth})" if kind == "binary_tree" else f"{kind}({depth},{params['length']})"
        elif kind == "grid":
            rows, cols = int(params["rows"]), int(params["cols"])
            if rows < 1 or cols < 1:
                raise InputError("grid needs rows, cols >= 1")
            edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
            edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
            g = Graph(rows * cols, edges)
            s = [r * cols for r in range(rows)]
            t = [r * cols + cols - 1 for r in range(rows)]
            label = f"grid({rows},{cols})"
        elif kind == "caterpillar":
            spine, legs = int(params["spine"]), int(params["legs"])
            if spine < 1 or legs < 0:
                raise InputError("caterpillar needs spine >= 1, legs >= 0")
            edges = [(i, i + 1) for i in range(spine - 1)]
            leg_of: list[list[int]] = []
            nxt = spine
            for i in range(spine):
                mine = list(range(nxt, nxt + legs))
                edges += [(i, x) for x in mine]
                leg_of.append(mine)
                nxt += legs
            g = Graph(nxt, edges)
            third = max(1, spine // 3)
            s = [x for i in range(third) for x in leg_of[i]] or [0]
            t = [x for i in range(spine - third, spine) for x in leg_of[i]] or [spine - 1]
            label = f"caterpillar({spine},{legs})"
        elif kind == "random_bounded_pw":
            w, n = int(params["width"]), int(params["n"])
            edges, _ = bounded_pw_graph(w, n, rng, float(params.get("p", 0.5)))
            g = Graph(n, edges)
            m = int(params.get("terminals", 2))
            quarter = max(1, n // 4)
            s = rng.sample(list(range(quarter)), 1 + rng.below(m))
            t = rng.sample(list(range(n - quarter, n)), 1 + rng.below(m))
            label = f"random_bounded_pw({w},{n})"
        else:
            raise InputError(f"unknown family {kind!r}; choose from {', '.join(FAMILY_KINDS)}")
    except KeyError as exc:
        raise InputError(f"family {kind} needs parameter {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad parameters for {kind}: {exc}") from None
    return Instance(g, frozenset(s), frozenset(t), solve_params, label, seed)


def subdivide_instance(inst: Instance, n: int) -> Instance:
    """Replace every edge by an ``n``-edge path; original vertices keep their ids and c scales by n."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    total, edges = _subdivide_edges(inst.graph.n, inst.graph.edges(), n)
    params = dict(inst.params)
    if "c" in params:
        params["c"] = params["c"] * n
    names = None
    if inst.names is not None:
        names = inst.names + tuple(f"_sub{i}" for i in range(inst.graph.n, total))
    return Instance(Graph(total, edges), inst.s, inst.t, params, f"{inst.label}/sub{n}", inst.seed, names)
