"""Settings, barriers, jump sets and augmenting sequences.

A setting is a pair of disjoint terminal sets plus ``k`` vertex-disjoint
S-T paths. Everything here is combinatorial on the path system: distances
"in the path union" are index differences along a single path and infinite
across paths. Pairs are ordered ``(a, b)`` tuples; a jump set is any
collection of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError, InvariantError, PreconditionError
from .graph import INF, Graph, Path, check_vertices

Pair = tuple[int, int]


@dataclass(frozen=True)
class Setting:
    """Disjoint ``s``, ``t`` and ``paths[h]`` running from ``s`` to ``t``."""

    s: frozenset[int]
    t: frozenset[int]
    paths: tuple[Path, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))
        object.__setattr__(self, "t", frozenset(self.t))
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))
        if self.s & self.t:
            raise InputError("S and T must be disjoint in a setting")
        pos: dict[int, tuple[int, int]] = {}
        for h, p in enumerate(self.paths):
            if not p:
                raise InputError(f"path {h} is empty")
            if p[0] not in self.s or p[-1] not in self.t:
                raise InputError(f"path {h} does not run from S to T")
            if any(v in self.s or v in self.t for v in p[1:-1]):
                raise InputError(f"path {h} has an internal terminal")
            for i, v in enumerate(p):
                if v in pos:
                    raise InputError(f"vertex {v} lies on two paths or twice on one")
                pos[v] = (h, i)
        object.__setattr__(self, "_pos", pos)

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def pos(self) -> dict[int, tuple[int, int]]:
        """vertex -> (path index, position along it)."""
        return self._pos  # type: ignore[attr-defined]

    def on_paths(self, v: int) -> bool:
        return v in self.pos

    def universe(self) -> frozenset[int]:
        return frozenset(self.pos) | self.s | self.t

    def free_s(self, v: int) -> bool:
        return v in self.s and v not in self.pos

    def free_t(self, v: int) -> bool:
        return v in self.t and v not in self.pos

    def path_dist(self, u: int, v: int) -> float:
        """Distance in the union of the paths."""
        pu, pv = self.pos.get(u), self.pos.get(v)
        if pu is None or pv is None or pu[0] != pv[0]:
            return INF
        return abs(pu[1] - pv[1])

    def check_in(self, g: Graph) -> None:
        """Raise unless the paths are genuine paths of ``g``."""
        check_vertices(g, self.s | self.t)
        for p in self.paths:
            check_vertices(g, p)
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    raise InputError(f"({a}, {b}) is not an edge")

    def reversed(self) -> Setting:
        """The same paths run backwards with S and T exchanged."""
        return Setting(self.t, self.s, tuple(tuple(reversed(p)) for p in self.paths))


def check_jump_set(f: Iterable[Pair], st: Setting) -> frozenset[Pair]:
    uni = st.universe()
    out = set()
    for pair in f:
        a, b = pair
        if a == b or a not in uni or b not in uni:
            raise InputError(f"pair {pair} is not an ordered pair of distinct setting vertices")
        out.add((a, b))
    return frozenset(out)


def reverse_pairs(f: Iterable[Pair]) -> frozenset[Pair]:
    return frozenset((b, a) for a, b in f)


@dataclass(frozen=True)
class Barrier:
    """``spans[h] = (lo, hi)``: the barrier on path ``h`` is positions lo..hi."""

    spans: tuple[tuple[int, int], ...]

    def length(self) -> int:
        return max((hi - lo for lo, hi in self.spans), default=0)

    def vertices(self, st: Setting) -> frozenset[int]:
        return frozenset(v for (lo, hi), p in zip(self.spans, st.paths) for v in p[lo:hi + 1])

    def subpaths(self, st: Setting) -> tuple[Path, ...]:
        return tuple(p[lo:hi + 1] for (lo, hi), p in zip(self.spans, st.paths))


def jumps(pair: Pair, barrier: Barrier, st: Setting) -> bool:
    a, b = pair
    uni = st.universe()
    if a == b or a not in uni or b not in uni:
        raise InputError(f"pair {pair} is not in F0")
    pa, pb = st.pos.get(a), st.pos.get(b)
    if pa is not None:
        lo, hi = barrier.spans[pa[0]]
        if pa[1] >= lo:
            return False
    elif a not in st.s:
        return False
    if pb is not None:
        lo, hi = barrier.spans[pb[0]]
        if pb[1] <= hi:
            return False
    elif b not in st.t:
        return False
    return True


@dataclass(frozen=True)
class AugmentingSequence:
    pairs: tuple[Pair, ...]
    c: int

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(p[0] for p in self.pairs)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(p[1] for p in self.pairs)


def sequence_problems(pairs: Iterable[Pair], c: int, st: Setting, partial: bool = False) -> list[str]:
    """Why ``pairs`` fails to be a (partial) c-augmenting sequence; empty if it is one."""
    pairs = list(pairs)
    out = []
    if not pairs:
        return ["empty sequence"]
    uni = st.universe()
    for a, b in pairs:
        if a == b or a not in uni or b not in uni:
            out.append(f"({a}, {b}) is not in F0")
    if not st.free_s(pairs[0][0]):
        out.append("a_1 is not in S outside the paths")
    if not partial and not st.free_t(pairs[-1][1]):
        out.append("b_n is not in T outside the paths")
    for i in range(len(pairs) - 1):
        b, a = pairs[i][1], pairs[i + 1][0]
        pb, pa = st.pos.get(b), st.pos.get(a)
        if pb is None or pa is None or pb[0] != pa[0]:
            out.append(f"b_{i + 1} and a_{i + 2} are not on a common path")
        elif pb[1] - pa[1] < c + 1:
            out.append(f"a_{i + 2} is not at least {c + 1} earlier than b_{i + 1}")
    return out


def is_augmenting(pairs: Iterable[Pair], c: int, st: Setting) -> bool:
    return not sequence_problems(pairs, c, st)


def _vkey(v: int, st: Setting) -> tuple[int, int]:
    p = st.pos.get(v)
    if p is not None:
        return p
    return (-1, v) if v in st.s else (st.k, v)


def find_augmenting_sequence(f: Iterable[Pair], c: int, st: Setting) -> AugmentingSequence | Barrier:
    """A c-augmenting sequence from ``f``, or a c-barrier that nothing in ``f`` jumps."""
    if c < 0:
        raise InputError(f"c must be >= 0, got {c}")
    pairs = sorted(check_jump_set(f, st), key=lambda p: (_vkey(p[0], st), _vkey(p[1], st)))
    reach = [0] * st.k
    seq_to: list[tuple[Pair, ...] | None] = [None] * st.k
    while True:
        spans = tuple((max(0, v - c), v) for v in reach)
        barrier = Barrier(spans)
        found = None
        for a, b in pairs:
            if jumps((a, b), barrier, st):
                pb = st.pos.get(b)
                if pb is None or pb[1] > reach[pb[0]]:
                    found = (a, b)
                    break
        if found is None:
            return barrier
        a, b = found
        pa = st.pos.get(a)
        prefix = () if pa is None else seq_to[pa[0]]
        assert prefix is not None
        seq = prefix + (found,)
        pb = st.pos.get(b)
        if pb is None:
            return AugmentingSequence(seq, c)
        reach[pb[0]] = pb[1]
        seq_to[pb[0]] = seq


def is_jumping(f: Iterable[Pair], c: int, st: Setting) -> tuple[bool, Barrier | None]:
    res = find_augmenting_sequence(f, c, st)
    if isinstance(res, Barrier):
        return False, res
    return True, None


def _require_jumping(f: frozenset[Pair], c: int, st: Setting, what: str) -> None:
    ok, barrier = is_jumping(f, c, st)
    if not ok:
        raise PreconditionError(f"{what}: the pair set is not {c}-jumping", barrier)


def minimize_sequence(f: Iterable[Pair], c: int, st: Setting) -> AugmentingSequence:
    """A shortest c-augmenting sequence in ``f``.

    Ties go to the lexicographically least run of ``b_i`` keys (path index,
    position), then ``a_i`` keys.
    """
    fs = check_jump_set(f, st)
    _require_jumping(fs, c, st, "minimize_sequence")
    pairs = sorted(fs, key=lambda p: (_vkey(p[1], st), _vkey(p[0], st)))

    def follows(p: Pair, q: Pair) -> bool:
        pb, qa = st.pos.get(p[1]), st.pos.get(q[0])
        return pb is not None and qa is not None and pb[0] == qa[0] and pb[1] - qa[1] >= c + 1

    succ = {p: [q for q in pairs if follows(p, q)] for p in pairs}
    pred: dict[Pair, list[Pair]] = {p: [] for p in pairs}
    for p, qs in succ.items():
        for q in qs:
            pred[q].append(p)
    # to_goal[p] = fewest pairs in a sequence that starts with p and ends in free T
    to_goal: dict[Pair, int] = {}
    queue: deque[Pair] = deque()
    for p in pairs:
        if st.free_t(p[1]):
            to_goal[p] = 1
            queue.append(p)
    while queue:
        q = queue.popleft()
        for p in pred[q]:
            if p not in to_goal:
                to_goal[p] = to_goal[q] + 1
                queue.append(p)
    starts = [p for p in pairs if st.free_s(p[0]) and p in to_goal]
    if not starts:
        raise InvariantError("minimize_sequence: jumping set without an augmenting sequence")
    n = min(to_goal[p] for p in starts)
    cur = next(p for p in starts if to_goal[p] == n)
    seq = [cur]
    while to_goal[cur] > 1:
        cur = next(q for q in succ[cur] if to_goal.get(q) == to_goal[cur] - 1)
        seq.append(cur)
    out = AugmentingSequence(tuple(seq), c)
    bad = minimality_problems(out, st)
    if bad:
        raise InvariantError("minimize_sequence: " + bad[0])
    return out


def minimality_problems(seq: AugmentingSequence, st: Setting) -> list[str]:
    """Violations of the ordering guarantees of a shortest sequence."""
    out = []
    c = seq.c
    ends = [(p[0], p[1]) for p in seq.pairs]
    for i in range(len(ends)):
        for j in range(i + 1, len(ends)):
            for ui, u in enumerate(ends[i]):
                for vi, v in enumerate(ends[j]):
                    pu, pv = st.pos.get(u), st.pos.get(v)
                    if pu is None or pv is None or pu[0] != pv[0]:
                        continue
                    if pu[1] < pv[1]:
                        continue
                    if ui == 1 and vi == 0 and (abs(pu[1] - pv[1]) <= c or j == i + 1):
                        continue
                    out.append(f"pairs {i + 1} and {j + 1} are out of order on path {pu[0]}")
    return out


def is_separated(f: Iterable[Pair], ell: float, st: Setting, side: str = "both") -> bool:
    """Pairwise path-union distances exceed ``ell`` among a's and/or among b's."""
    items = sorted(f)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if side in ("a", "both") and st.path_dist(items[i][0], items[j][0]) <= ell:
                return False
            if side in ("b", "both") and st.path_dist(items[i][1], items[j][1]) <= ell:
                return False
    return True


def separate_tops(f: Iterable[Pair], p: int, q: int, st: Setting) -> frozenset[Pair]:
    """A p-jumping subset of ``f`` whose second coordinates are pairwise more than q apart."""
    if p < 0 or q < 0:
        raise InputError("p and q must be non-negative")
    pairs = sorted(check_jump_set(f, st), key=lambda x: (_vkey(x[0], st), _vkey(x[1], st)))
    reach = [0] * st.k
    seq_to: list[tuple[Pair, ...] | None] = [None] * st.k
    while True:
        spans = tuple((max(0, v - p), min(len(path) - 1, v + q)) for v, path in zip(reach, st.paths))
        barrier = Barrier(spans)
        found = next((pr for pr in pairs if jumps(pr, barrier, st)), None)
        if found is None:
            raise PreconditionError(f"separate_tops: the pair set is not {p + q}-jumping", barrier)
        a, b = found
        pa = st.pos.get(a)
        prefix = () if pa is None else seq_to[pa[0]]
        if prefix is None:
            raise InvariantError("separate_tops: jumped from an unreached path")
        seq = prefix + (found,)
        pb = st.pos.get(b)
        if pb is None:
            d = frozenset(seq)
            if sequence_problems(seq, p, st) or not is_separated(d, q, st, "b"):
                raise InvariantError("separate_tops: produced sequence is not end-separated")
            return d
        reach[pb[0]] = pb[1]
        seq_to[pb[0]] = seq


def separate_all(f: Iterable[Pair], c: int, st: Setting) -> frozenset[Pair]:
    """A c-jumping, 2c-separated subset of a 5c-jumping ``f``."""
    first = separate_tops(f, 3 * c, 2 * c, st)
    rst = st.reversed()
    second = separate_tops(reverse_pairs(first), c, 2 * c, rst)
    d = reverse_pairs(second)
    ok, _ = is_jumping(d, c, st)
    if not ok or not is_separated(d, 2 * c, st):
        raise InvariantError("separate_all: output lost its guarantees")
    return d


@dataclass(frozen=True)
class PathSystem:
    """Output of :func:`get_paths`.

    ``jump_steps[i]`` lists the positions ``j`` at which ``paths[i]`` steps
    from ``paths[i][j]`` to ``paths[i][j+1]`` along a sequence pair rather
    than along a setting path.
    """

    paths: tuple[Path, ...]
    sequence: AugmentingSequence
    jump_steps: tuple[tuple[int, ...], ...]


def get_paths(d_set: Iterable[Pair], c: int, st: Setting) -> list[Path]:
    """k+1 disjoint S-T paths through the setting and the pairs, far apart along the paths."""
    return list(get_path_system(d_set, c, st).paths)


def get_path_system(d_set: Iterable[Pair], c: int, st: Setting,
                    seq: AugmentingSequence | None = None) -> PathSystem:
    ds = check_jump_set(d_set, st)
    if not is_separated(ds, 2 * c, st):
        raise PreconditionError(f"get_paths: the pair set is not {2 * c}-separated")
    if seq is None:
        seq = minimize_sequence(ds, c, st)
    n = len(seq)
    # per path, how many of the R_i contain each edge (edge j joins positions j, j+1)
    cover = [[0] * max(0, len(p) - 1) for p in st.paths]
    vcover = [[0] * len(p) for p in st.paths]
    for i in range(n - 1):
        b, a = seq.pairs[i][1], seq.pairs[i + 1][0]
        h, hi = st.pos[b]
        _, lo = st.pos[a]
        for j in range(lo, hi):
            cover[h][j] += 1
        for j in range(lo, hi + 1):
            vcover[h][j] += 1
    for h, row in enumerate(vcover):
        for j, cnt in enumerate(row):
            if cnt > 2:
                raise InvariantError(f"get_paths: vertex {st.paths[h][j]} lies in {cnt} of the R_i")
    out_arcs: dict[int, list[tuple[int, bool]]] = {}
    indeg: dict[int, int] = {}

    def arc(x: int, y: int, jump: bool) -> None:
        out_arcs.setdefault(x, []).append((y, jump))
        indeg[y] = indeg.get(y, 0) + 1

    for h, p in enumerate(st.paths):
        for j in range(len(p) - 1):
            if cover[h][j] == 0:
                arc(p[j], p[j + 1], False)
            elif cover[h][j] == 2:
                arc(p[j + 1], p[j], False)
    for a, b in seq.pairs:
        arc(a, b, True)

    sources = [seq.pairs[0][0]] + [p[0] for p in st.paths]
    sinks = {seq.pairs[-1][1]} | {p[-1] for p in st.paths}
    ends = {v for pair in seq.pairs for v in pair}
    for v in set(st.pos) | {seq.pairs[0][0], seq.pairs[-1][1]}:
        o, i = len(out_arcs.get(v, ())), indeg.get(v, 0)
        want = (1, 0) if v in sources else (0, 1) if v in sinks else (1, 1)
        if (o, i) == (0, 0) and v not in ends and v in st.pos:
            # strictly inside exactly one R_i: both path edges are dropped, so v is unused
            h, j = st.pos[v]
            if 0 < j < len(st.paths[h]) - 1 and cover[h][j - 1] == cover[h][j] == 1:
                continue
        if (o, i) != want:
            raise InvariantError(f"get_paths: vertex {v} has out/in degree {(o, i)}, expected {want}")

    paths = []
    steps = []
    owner: dict[int, int] = {}
    for idx, src in enumerate(sources):
        walk = [src]
        js = []
        cur = src
        while cur in out_arcs:
            nxt, jump = out_arcs[cur][0]
            if jump:
                js.append(len(walk) - 1)
            walk.append(nxt)
            cur = nxt
            if len(walk) > len(st.universe()) + 1:
                raise InvariantError("get_paths: walk does not terminate")
        if cur not in st.t:
            raise InvariantError(f"get_paths: walk from {src} ends at {cur}, outside T")
        for v in walk:
            if v in owner:
                raise InvariantError(f"get_paths: paths {owner[v]} and {idx} share vertex {v}")
            owner[v] = idx
        paths.append(tuple(walk))
        steps.append(tuple(js))
    for h, p in enumerate(st.paths):
        for i in range(len(p)):
            for j in range(i + 1, min(len(p), i + c + 1)):
                oi, oj = owner.get(p[i]), owner.get(p[j])
                if oi is not None and oj is not None and oi != oj:
                    raise InvariantError(f"get_paths: outputs {oi} and {oj} are {j - i} apart on path {h}")
    return PathSystem(tuple(paths), seq, tuple(steps))


def shortcut_trace(seq: AugmentingSequence, partition: Iterable[Iterable[int]]
                   ) -> tuple[AugmentingSequence, tuple[tuple[int, int], ...]]:
    """Collapse each class of ``partition`` (0-based indices) to at most one pair.

    Returns the new sequence and, for each new pair, the original indices
    ``(i, j)`` that supplied its first and second coordinates.
    """
    n = len(seq)
    classes = [sorted(set(cls)) for cls in partition]
    flat = [i for cls in classes for i in cls]
    if sorted(flat) != list(range(n)) or any(not cls for cls in classes):
        raise InputError(f"not a partition of 0..{n - 1} into nonempty classes")
    pairs = list(seq.pairs)
    origin = [(i, i) for i in range(n)]
    label = [None] * n
    for ci, cls in enumerate(classes):
        for i in cls:
            label[i] = ci  # type: ignore[call-overload]
    while True:
        by_class: dict[int, list[int]] = {}
        for pos, ci in enumerate(label):
            by_class.setdefault(ci, []).append(pos)  # type: ignore[arg-type]
        big = [ps for ps in by_class.values() if len(ps) >= 2]
        if not big:
            break
        ps = min(big)
        i, j = ps[0], ps[-1]
        pairs = pairs[:i] + [(pairs[i][0], pairs[j][1])] + pairs[j + 1:]
        origin = origin[:i] + [(origin[i][0], origin[j][1])] + origin[j + 1:]
        label = label[:i + 1] + label[j + 1:]
    out = AugmentingSequence(tuple(pairs), seq.c)
    return out, tuple(origin)


def shortcut(seq: AugmentingSequence, partition: Iterable[Iterable[int]]) -> AugmentingSequence:
    return shortcut_trace(seq, partition)[0]


def menger_disjoint_paths(g: Graph, s: Iterable[int], t: Iterable[int], k: int) -> list[Path] | frozenset[int]:
    """k+1 vertex-disjoint S-T paths, or a vertex set of size <= k meeting every S-T path.

    Returned paths have no internal vertex in S or T.
    """
    ss, ts = frozenset(s), frozenset(t)
    check_vertices(g, ss | ts)
    if k < 0:
        raise InputError(f"k must be >= 0, got {k}")
    n = g.n
    src, sink = 2 * n, 2 * n + 1
    big = k + 2
    cap: dict[tuple[int, int], int] = {}
    nbrs: list[list[int]] = [[] for _ in range(2 * n + 2)]

    def add(x: int, y: int, w: int) -> None:
        if (x, y) not in cap:
            nbrs[x].append(y)
            nbrs[y].append(x)
            cap.setdefault((y, x), 0)
        cap[(x, y)] = cap.get((x, y), 0) + w

    for v in range(n):
        add(2 * v, 2 * v + 1, 1)
    for u, v in g.edges():
        add(2 * u + 1, 2 * v, big)
        add(2 * v + 1, 2 * u, big)
    for v in sorted(ss):
        add(src, 2 * v, big)
    for v in sorted(ts):
        add(2 * v + 1, sink, big)
    orig = dict(cap)

    def augment() -> bool:
        prev = {src: src}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y not in prev and cap[(x, y)] > 0:
                    prev[y] = x
                    if y == sink:
                        while y != src:
                            x = prev[y]
                            cap[(x, y)] -= 1
                            cap[(y, x)] += 1
                            y = x
                        return True
                    queue.append(y)
        return False

    flow = 0
    while flow < k + 1 and augment():
        flow += 1
    if flow <= k:
        seen = {src}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y not in seen and cap[(x, y)] > 0:
                    seen.add(y)
                    queue.append(y)
        return frozenset(v for v in range(n) if 2 * v in seen and 2 * v + 1 not in seen)
    used = {e: orig[e] - cap[e] for e in orig if orig[e] > 0 and orig[e] - cap[e] > 0}
    paths = []
    for _ in range(k + 1):
        x = next(y for y in nbrs[src] if used.get((src, y), 0) > 0)
        used[(src, x)] -= 1
        walk = []
        while x != sink:
            if x % 2 == 0:
                walk.append(x // 2)
            y = next(z for z in nbrs[x] if used.get((x, z), 0) > 0)
            used[(x, y)] -= 1
            x = y
        paths.append(_trim(tuple(walk), ss, ts))
    return paths


def _trim(p: Path, s: frozenset[int], t: frozenset[int]) -> Path:
    # shorten to the piece between its last S vertex and the first T vertex after that
    i = max(j for j, v in enumerate(p) if v in s)
    j = next(j for j in range(i, len(p)) if p[j] in t)
    return p[i:j + 1]
