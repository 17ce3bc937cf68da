"""Recursive coarse Menger solver with self-checking certificates.

:func:`solve` returns one of three outcomes, each checkable on its own by
:func:`verify_certificate`:

* :class:`FarPaths`: ``k+1`` connected pieces, each meeting S and T, pairwise
  more than ``c`` apart;
* :class:`Separator`: at most ``k`` centres whose radius-``c9`` balls meet
  every S-T path;
* a :class:`~coarse_menger.trees.SubdivisionWitness`: a ``c8``-subdivision of
  ``H_d``, meaning the exclusion hypothesis behind the radii does not hold.

The existence argument this follows works by contradiction from the absence
of a separator. Here each such appeal becomes a concrete test: whenever no
far-apart structure can be extended, the ball around the current candidate
centres is checked, and if it separates S from T it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .augment import (AugmentingSequence, Barrier, Pair, Setting, find_augmenting_sequence,
                      get_path_system, jumps, menger_disjoint_paths, minimize_sequence,
                      separate_all, shortcut_trace)
from .errors import InputError, InvariantError
from .graph import (INF, Graph, Path, bfs_distances, check_vertices, component_index, dist,
                    shortest_path)
from .shrink import carve, check_web_growth
from .trees import SubdivisionWitness, validate_witness

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstantTable:
    k: int
    c: int
    d: int
    c1: int = 0
    c2: int = 0
    c3: int = 0
    c4: int = 0
    c5: int = 0
    c6: int = 0
    c7: int = 0
    c8: int = 0
    c9: int = 0

    @property
    def f_value(self) -> int:
        return self.c8

    @property
    def g_value(self) -> int:
        return self.c9

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in
                ("k", "c", "d", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9")}

    def chain_problems(self) -> list[str]:
        """Lines of the inequality chain that the stored values break."""
        if self.k == 0:
            return []
        k, d = self.k, self.d
        c = max(self.c, 2)
        lo, hi = constants(k - 1, c * c * d, d), constants(k - 1, self.c7, d)
        need = [
            ("c1", c),
            ("c2", self.c1 + c + d * (c - 1)),
            ("c3", 2 * (c + self.c2) + 2 * c * d),
            ("c4", self.c3 ** 2 * d),
            ("c5", 5 * self.c4),
            ("c6", self.c3),
            ("c7", self.c6 + 2 * self.c3 * d),
            ("c8", max(c, lo.c8, hi.c8)),
            ("c9", max(c * d, self.c2 + self.c5, lo.c9, hi.c9)),
        ]
        return [f"{name} = {getattr(self, name)} < {want}" for name, want in need if getattr(self, name) < want]


@lru_cache(maxsize=None)
def constants(k: int, c: int, d: int) -> ConstantTable:
    """The smallest constants satisfying the chain, with ``c`` raised to 2 when k >= 1."""
    if k < 0 or c < 0 or d < 0:
        raise InputError(f"k, c, d must be non-negative, got {(k, c, d)}")
    if k == 0:
        return ConstantTable(0, c, d)
    ce = max(c, 2)
    c1 = ce
    c2 = c1 + ce + d * (ce - 1)
    c3 = 2 * (ce + c2) + 2 * ce * d
    c4 = c3 * c3 * d
    c5 = 5 * c4
    c6 = c3
    c7 = c6 + 2 * c3 * d
    lo, hi = constants(k - 1, ce * ce * d, d), constants(k - 1, c7, d)
    c8 = max(ce, lo.c8, hi.c8)
    c9 = max(ce * d, c2 + c5, lo.c9, hi.c9)
    return ConstantTable(k, c, d, c1, c2, c3, c4, c5, c6, c7, c8, c9)


def f_const(k: int, c: int, d: int) -> int:
    return constants(k, c, d).c8


def g_const(k: int, c: int, d: int) -> int:
    return constants(k, c, d).c9


@dataclass(frozen=True)
class FarPaths:
    """Connected pieces given as vertex tuples (in path order when the piece is a path)."""

    parts: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"kind": "far_paths", "parts": [list(p) for p in self.parts]}


@dataclass(frozen=True)
class Separator:
    x: frozenset[int]
    radius: int

    def to_json(self) -> dict:
        return {"kind": "separator", "x": sorted(self.x), "radius": self.radius}


Certificate = Union[FarPaths, Separator, SubdivisionWitness]


def certificate_kind(cert: Certificate) -> str:
    if isinstance(cert, FarPaths):
        return "far_paths"
    if isinstance(cert, Separator):
        return "separator"
    return "witness"


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, SubdivisionWitness):
        return {"kind": "witness", **cert.to_json()}
    return cert.to_json()


def verify_certificate(g: Graph, s, t, k: int, c: int, d: int, table: ConstantTable,
                       cert: Certificate) -> tuple[bool, str]:
    """Check ``cert`` against its defining property. Returns ``(ok, reason)``."""
    s, t = frozenset(s), frozenset(t)
    try:
        check_vertices(g, s | t)
    except InputError as exc:
        return False, str(exc)
    if isinstance(cert, FarPaths):
        if len(cert.parts) != k + 1:
            return False, f"{len(cert.parts)} parts, expected {k + 1}"
        sets = []
        for i, part in enumerate(cert.parts):
            vs = frozenset(part)
            if not vs:
                return False, f"part {i} is empty"
            try:
                check_vertices(g, vs)
            except InputError as exc:
                return False, f"part {i}: {exc}"
            if len(set(component_index(g, vs).values())) != 1:
                return False, f"part {i} is not connected"
            if not vs & s or not vs & t:
                return False, f"part {i} misses S or T"
            sets.append(vs)
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                dd = dist(g, sets[i], sets[j])
                if dd <= c:
                    return False, f"parts {i} and {j} are at distance {dd}"
        return True, ""
    if isinstance(cert, Separator):
        if len(cert.x) > k:
            return False, f"|X| = {len(cert.x)} > k = {k}"
        if cert.radius > table.c9:
            return False, f"radius {cert.radius} exceeds {table.c9}"
        try:
            check_vertices(g, cert.x)
        except InputError as exc:
            return False, str(exc)
        covered = bfs_distances(g, cert.x, limit=cert.radius)
        rest = frozenset(v for v in g.vertices() if v not in covered)
        comp = component_index(g, rest)
        s_comps = {comp[v] for v in s if v in comp}
        for v in t:
            if v in comp and comp[v] in s_comps:
                return False, f"an S-T path avoids the radius-{cert.radius} ball"
        return True, ""
    if isinstance(cert, SubdivisionWitness):
        if d < 2:
            return False, "witness needs d >= 2"
        return validate_witness(g, cert, table.c8, d)
    return False, f"unknown certificate type {type(cert).__name__}"


@dataclass(frozen=True)
class Leap:
    """A leap oriented from ``path[0]`` to ``path[-1]``.

    ``x``/``y`` are the anchor vertices at distance ``c2`` along the path
    from the first and last end, when the kind has them.
    """

    kind: int
    path: Path
    x: int | None = None
    y: int | None = None

    def reversed(self) -> Leap:
        return Leap(self.kind, tuple(reversed(self.path)), self.y, self.x)


def leap_problems(g: Graph, st: Setting, leap: Leap, c2: int, to_vp: dict[int, int]) -> list[str]:
    """Violations of the defining shape of ``leap``'s kind."""
    p = leap.path
    out = []
    if len(p) < 2 or len(set(p)) != len(p) or any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
        return ["not a path of length >= 1"]

    def far(v: int) -> bool:
        return to_vp.get(v, INF) > c2

    on = st.on_paths
    terminals = st.s | st.t
    a, b = p[0], p[-1]
    if leap.kind == 1:
        if not (on(a) and on(b)):
            out.append("type 1 ends must lie on the paths")
        if len(p) - 1 < 2 * c2 or leap.x != p[c2] or leap.y != p[-1 - c2]:
            out.append("type 1 anchors are not at distance c2 from the ends")
        elif not all(far(v) for v in p[c2 + 1:len(p) - 1 - c2]):
            out.append("type 1 middle leaves the far shell")
    elif leap.kind in (2, 3):
        if on(b) and not on(a):
            p = tuple(reversed(p))
            a, b = b, a
        if not on(a) or b not in terminals or on(b):
            out.append(f"type {leap.kind} needs one end on the paths and one terminal end off them")
        elif leap.kind == 2:
            if not far(b) or len(p) - 1 < c2 or not all(far(v) for v in p[c2 + 1:]):
                out.append("type 2 tail leaves the far shell")
        else:
            if far(b) or len(p) - 1 != to_vp.get(b, INF) or any(on(v) for v in p[1:]):
                out.append("type 3 is not a geodesic to the paths")
    elif leap.kind == 4:
        if not ((a in st.s and b in st.t) or (a in st.t and b in st.s)):
            out.append("type 4 must join S to T")
        if not all(far(v) for v in p):
            out.append("type 4 leaves the far shell")
    else:
        out.append(f"unknown kind {leap.kind}")
    return out


@dataclass
class SolveTrace:
    """Optional record of which branches a run took (for tests and diagnostics)."""

    events: list[str] = field(default_factory=list)

    def add(self, msg: str) -> None:
        self.events.append(msg)
        log.debug(msg)


def _st_reachable(g: Graph, s, t, allowed=None) -> Path | None:
    return shortest_path(g, s, t, allowed=allowed)


def _trim(p: Path, s: frozenset[int], t: frozenset[int]) -> Path:
    i = max(j for j, v in enumerate(p) if v in s)
    j = next(j for j in range(i, len(p)) if p[j] in t)
    return p[i:j + 1]


def _map_cert(cert: Certificate, old: list[int]) -> Certificate:
    if isinstance(cert, FarPaths):
        return FarPaths(tuple(tuple(old[v] for v in part) for part in cert.parts))
    if isinstance(cert, Separator):
        return Separator(frozenset(old[v] for v in cert.x), cert.radius)
    return cert.relabel(old)


def solve(g: Graph, s, t, k: int, c: int, d: int, *, table: ConstantTable | None = None,
          trace: SolveTrace | None = None) -> Certificate:
    """Far paths, a small separator, or a short binary-tree subdivision.

    ``table`` replaces the top-level constants; it exists so the late
    assembly stage can be exercised on small graphs, where the real
    constants make every barrier ball cover the whole graph.
    """
    s, t = frozenset(s), frozenset(t)
    check_vertices(g, s | t)
    if k < 0 or c < 0:
        raise InputError(f"k and c must be non-negative, got k={k}, c={c}")
    if d < 2:
        raise InputError(f"d must be >= 2, got {d}")
    tab = table if table is not None else constants(k, c, d)
    cert = _solve(g, s, t, k, c, d, tab, trace or SolveTrace())
    ok, why = verify_certificate(g, s, t, k, c, d, tab, cert)
    if not ok:
        raise InvariantError(f"solve produced an invalid {certificate_kind(cert)}: {why}")
    return cert


def _solve(g: Graph, s: frozenset[int], t: frozenset[int], k: int, c: int, d: int,
           tab: ConstantTable, tr: SolveTrace) -> Certificate:
    first = _st_reachable(g, s, t)
    if first is None:
        tr.add(f"k={k}: no S-T path")
        return Separator(frozenset(), tab.c9)
    if k == 0:
        tr.add("k=0: single path")
        return FarPaths((first,))
    if c == 0:
        res = menger_disjoint_paths(g, s, t, k)
        tr.add("c=0: classical disjoint paths")
        if isinstance(res, frozenset):
            return Separator(res, tab.c9)
        return FarPaths(tuple(res))
    ce = max(c, 2)
    if s & t:
        return _solve_shared(g, s, t, k, ce, d, tab, tr)
    paths = _near_geodesics(g, s, t, k, ce, d, tab, tr)
    if not isinstance(paths, list):
        return paths
    st = Setting(s, t, tuple(paths))
    return _leap_loop(g, st, k, c, d, tab, tr)


def _solve_shared(g, s, t, k, ce, d, tab, tr) -> Certificate:
    r = min(s & t)
    a = frozenset(bfs_distances(g, [r], limit=ce + (d - 2) * (ce - 1)))
    b = carve(g, a, ce, d)
    if isinstance(b, SubdivisionWitness):
        tr.add("shared terminal: carve found a subdivision")
        return b
    sub, old = g.without(b)
    new = {v: i for i, v in enumerate(old)}
    sub_s = frozenset(new[v] for v in s if v in new)
    sub_t = frozenset(new[v] for v in t if v in new)
    tr.add(f"shared terminal {r}: recursing on {sub.n} vertices")
    inner = _solve(sub, sub_s, sub_t, k - 1, ce * ce * d, d, constants(k - 1, ce * ce * d, d), tr)
    inner = _map_cert(inner, old)
    if isinstance(inner, SubdivisionWitness):
        return inner
    if isinstance(inner, Separator):
        return Separator(inner.x | {r}, max(tab.c9, inner.radius))
    return FarPaths(inner.parts + ((r,),))


def _path_inside(g: Graph, part, s, t) -> Path:
    vs = frozenset(part)
    p = shortest_path(g, s & vs, t & vs, allowed=vs)
    if p is None:
        raise InvariantError("a far piece has no S-T path inside it")
    return p


def _near_geodesics(g, s, t, k, ce, d, tab, tr) -> list[Path] | Certificate:
    if k == 1:
        p = shortest_path(g, s, t)
        assert p is not None
        paths = [p]
        tr.add("k=1: geodesic base path")
    else:
        inner = _solve(g, s, t, k - 1, tab.c7, d, constants(k - 1, tab.c7, d), tr)
        if not isinstance(inner, FarPaths):
            tr.add(f"k={k}: recursion at k-1 returned {certificate_kind(inner)}")
            if isinstance(inner, Separator):
                return Separator(inner.x, max(tab.c9, inner.radius))
            return inner
        base = [_path_inside(g, part, s, t) for part in inner.parts]
        a = frozenset(g.vertices()) - frozenset(v for p in base for v in p)
        b = carve(g, a, tab.c3, d)
        if isinstance(b, SubdivisionWitness):
            tr.add("near-geodesic carve found a subdivision")
            return b
        keep = frozenset(g.vertices()) - b
        paths = []
        for p in base:
            q = shortest_path(g, [p[0]], [p[-1]], allowed=keep)
            if q is None:
                raise InvariantError("carved graph disconnects the ends of a base path")
            paths.append(q)
        tr.add(f"k={k}: {len(paths)} near-geodesic paths")
    paths = [_trim(p, s, t) for p in paths]
    bound = (d - 2) * tab.c3 * (tab.c3 - 1)
    for p in paths:
        for i, u in enumerate(p):
            near = bfs_distances(g, [u], limit=tab.c3)
            for j in range(i + bound + 1, len(p)):
                if p[j] in near:
                    raise InvariantError(f"path {p} is not near-geodesic at {u}, {p[j]}")
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            if dist(g, paths[i], paths[j]) <= tab.c6:
                raise InvariantError("base paths are not pairwise far apart")
    return paths


def _extend(barrier: Barrier, st: Setting, c5: int) -> Barrier:
    spans = []
    for (lo, hi), p in zip(barrier.spans, st.paths):
        want = min(c5, len(p) - 1)
        hi = min(len(p) - 1, lo + want)
        lo = max(0, hi - want)
        spans.append((lo, hi))
    return Barrier(tuple(spans))


def _leap_loop(g: Graph, st: Setting, k: int, c: int, d: int, tab: ConstantTable,
               tr: SolveTrace) -> Certificate:
    vp = frozenset(st.pos)
    to_vp = bfs_distances(g, vp)
    c2, c5, c9 = tab.c2, tab.c5, tab.c9
    jump_set: set[Pair] = set()
    leaps: dict[Pair, Leap] = {}
    rounds = 0
    while True:
        res = find_augmenting_sequence(jump_set, c5, st)
        if isinstance(res, AugmentingSequence):
            tr.add(f"leap set is {c5}-jumping after {rounds} rounds")
            return _assemble(g, st, res, leaps, k, c, d, tab, to_vp, tr)
        rounds += 1
        barrier = _extend(res, st, c5)
        qs = frozenset(p[(lo + hi) // 2] for (lo, hi), p in zip(barrier.spans, st.paths))
        to_q = bfs_distances(g, qs, limit=c9 + 1)
        avoid = frozenset(v for v in g.vertices() if to_q.get(v, INF) > c9)
        p = shortest_path(g, st.s, st.t, allowed=avoid)
        if p is None:
            tr.add(f"barrier centres {sorted(qs)} separate at radius {c9}")
            return Separator(qs, c9)
        leap = _extract_leap(g, st, barrier, p, to_q, to_vp, tab)
        if leap.kind == 4:
            tr.add("type 4 leap found")
            return FarPaths(tuple(st.paths) + (leap.path,))
        bad = leap_problems(g, st, leap, c2, to_vp)
        if bad:
            raise InvariantError(f"extracted type {leap.kind} leap is malformed: {bad[0]}")
        u, v = leap.path[0], leap.path[-1]
        pair = (u, v) if jumps((u, v), barrier, st) else (v, u)
        if not jumps(pair, barrier, st):
            raise InvariantError(f"type {leap.kind} leap does not jump the barrier")
        tr.add(f"type {leap.kind} leap {pair}")
        jump_set.update({(u, v), (v, u)})
        leaps[(u, v)] = leap
        leaps[(v, u)] = leap.reversed()


def _extract_leap(g: Graph, st: Setting, barrier: Barrier, p: Path, to_q: dict[int, int],
                  to_vp: dict[int, int], tab: ConstantTable) -> Leap:
    c2, c9 = tab.c2, tab.c9
    a_side = frozenset(v for (lo, _), q in zip(barrier.spans, st.paths) for v in q[:lo])
    b_side = frozenset(v for (_, hi), q in zip(barrier.spans, st.paths) for v in q[hi + 1:])
    vp = frozenset(st.pos)
    to_a = bfs_distances(g, a_side, limit=c2)
    to_b = bfs_distances(g, b_side, limit=c2)
    clear = {v for v in g.vertices() if to_q.get(v, INF) > c9}
    xs = frozenset(v for v in to_a if v in clear)
    ys = frozenset(v for v in to_b if v in clear)
    if xs & ys:
        raise InvariantError("the near sides of a barrier meet away from its centres")

    def geodesic(v: int, side: frozenset[int]) -> Path:
        j = shortest_path(g, [v], vp)
        if j is None or j[-1] not in side:
            raise InvariantError(f"geodesic from {v} does not land on the expected side")
        return j

    sy = sorted(st.s & ys)
    if sy:
        j = geodesic(sy[0], b_side)
        return Leap(3, tuple(reversed(j)))
    tx = sorted(st.t & xs)
    if tx:
        j = geodesic(tx[0], a_side)
        return Leap(3, tuple(reversed(j)))
    first_y = next((j for j, v in enumerate(p) if v in st.t or v in ys), None)
    if first_y is None:
        raise InvariantError("avoiding path never reaches T")
    last_x = max((i for i in range(first_y) if p[i] in st.s or p[i] in xs), default=None)
    if last_x is None:
        raise InvariantError("S side and T side of the avoiding path overlap")
    x, y = p[last_x], p[first_y]
    q = p[last_x:first_y + 1]
    if x not in xs and y not in ys:
        return Leap(4, q)
    if x in xs:
        jx = geodesic(x, a_side)
        if len(jx) - 1 != c2:
            raise InvariantError(f"tail from {x} has length {len(jx) - 1}, expected {c2}")
        if y not in ys:
            path = tuple(reversed(jx)) + q[1:]
            return Leap(2, path, x=x)
        jy = geodesic(y, b_side)
        if len(jy) - 1 != c2:
            raise InvariantError(f"tail from {y} has length {len(jy) - 1}, expected {c2}")
        path = tuple(reversed(jx)) + q[1:-1] + jy
        return Leap(1, path, x=x, y=y)
    jy = geodesic(y, b_side)
    if len(jy) - 1 != c2:
        raise InvariantError(f"tail from {y} has length {len(jy) - 1}, expected {c2}")
    path = tuple(reversed(q[:-1] + jy))
    return Leap(2, path, x=y)


def _seg(path: Path, n: int) -> Path:
    return path[:n + 1]


def _assemble(g: Graph, st: Setting, seq5: AugmentingSequence, leaps: dict[Pair, Leap], k: int,
              c: int, d: int, tab: ConstantTable, to_vp: dict[int, int], tr: SolveTrace) -> Certificate:
    ce = max(c, 2)
    c1, c2, c4 = tab.c1, tab.c2, tab.c4
    jump_set = frozenset(leaps)
    sep = separate_all(jump_set, c4, st)
    seq = minimize_sequence(sep, c4, st)
    n = len(seq)
    tr.add(f"assembly: separated sequence of length {n}")
    lp = [leaps[pair] for pair in seq.pairs]

    def in_far(v: int, r: int) -> bool:
        return to_vp.get(v, INF) > r

    # occurrences: (i, 0) is a_i, (i, 1) is b_i, 0-based i
    occ = [(i, 1) for i in range(n - 1)] + [(i, 0) for i in range(1, n)]
    vert = {w: seq.pairs[w[0]][w[1]] for w in occ}
    seg = {}
    for w in occ:
        path = lp[w[0]].path if w[1] == 0 else tuple(reversed(lp[w[0]].path))
        seg[w] = _seg(path, c2)
    outer = {w: tuple(v for v in seg[w] if in_far(v, c1)) for w in occ}
    inner = {w: tuple(v for v in seg[w] if not in_far(v, c1)) for w in occ}
    for w in occ:
        if inner[w] != seg[w][:len(inner[w])]:
            raise InvariantError(f"segment at {vert[w]} re-enters the near zone")
    mate: dict[tuple[int, int], tuple[int, int]] = {}
    for i, u in enumerate(occ):
        for w in occ[i + 1:]:
            if st.path_dist(vert[u], vert[w]) <= c4:
                if u[1] == w[1] or u in mate or w in mate:
                    raise InvariantError("mating is not a matching between a's and b's")
                mate[u], mate[w] = w, u
    ridge = [tuple(v for v in leap.path if in_far(v, c1)) for leap in lp]
    far1 = frozenset(v for v in g.vertices() if in_far(v, c1))
    z = set(v for r in ridge for v in r)
    for u, w in mate.items():
        if u < w and outer[u] and outer[w]:
            conn = shortest_path(g, outer[u], outer[w], allowed=far1)
            if conn is not None and len(conn) - 1 <= ce:
                z.update(conn)
    z0 = frozenset(z)
    outer_sets = [frozenset(outer[w]) for w in occ if outer[w]]
    m_seq = _grow_web(g, z0, outer_sets, ce)
    report = check_web_growth(g, z0, m_seq, ce, d)
    if report.witness is not None:
        tr.add("web growth found a subdivision")
        return report.witness
    web = z0 | frozenset(v for m in m_seq for v in m)
    comps = component_index(g, web)
    classes: dict[int, list[int]] = {}
    singles = []
    for i, r in enumerate(ridge):
        if not r:
            if i not in (0, n - 1) or lp[i].kind != 3:
                raise InvariantError(f"leap {i} has no far part but is not a short end leap")
            singles.append([i])
            continue
        cid = {comps[v] for v in r}
        if len(cid) != 1:
            raise InvariantError(f"far part of leap {i} is split across components")
        classes.setdefault(cid.pop(), []).append(i)
    partition = list(classes.values()) + singles
    short_seq, origin = shortcut_trace(seq, partition)
    class_of = {i: cid for cid, idxs in classes.items() for i in idxs}
    tr.add(f"assembly: shortcut to {len(short_seq)} pairs over {len(partition)} classes")

    def near_end(i: int, side: int) -> tuple[Path, int]:
        w = (i, side)
        if w not in seg:
            v = seq.pairs[i][side]
            return (v,), v
        return inner[w], inner[w][-1]

    bridges: dict[Pair, frozenset[int]] = {}
    for (ia, ib), pair in zip(origin, short_seq.pairs):
        pa_seg, sp = near_end(ia, 0)
        qb_seg, sq = near_end(ib, 1)
        if ia in class_of:
            room = frozenset(v for v, cid in comps.items() if cid == class_of[ia]) | {sp, sq}
            qpath = shortest_path(g, [sp], [sq], allowed=room)
            if qpath is None:
                raise InvariantError(f"no route inside the web between {sp} and {sq}")
        else:
            qpath = lp[ia].path
        bridges[pair] = frozenset(pa_seg) | frozenset(qpath) | frozenset(qb_seg)
    system = get_path_system(frozenset(short_seq.pairs), c4, st)
    parts = []
    for walk, steps in zip(system.paths, system.jump_steps):
        seen: dict[int, None] = {}
        for j, v in enumerate(walk):
            seen.setdefault(v)
            if j in steps:
                for u in sorted(bridges[(walk[j], walk[j + 1])]):
                    seen.setdefault(u)
        parts.append(_path_inside(g, seen, st.s, st.t))
    sets = [frozenset(p) for p in parts]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if dist(g, sets[i], sets[j]) <= c:
                raise InvariantError(f"assembled pieces {i} and {j} are within distance {c}")
    tr.add("assembly: far pieces built")
    return FarPaths(tuple(parts))


def _grow_web(g: Graph, z: frozenset[int], outer_sets: list[frozenset[int]], c: int) -> list[Path]:
    """Greedily add short paths joining two components of the growing web."""
    cur = set(z)
    m_seq: list[Path] = []

    def touches(v: int) -> frozenset[int]:
        return frozenset(i for i, o in enumerate(outer_sets) if v in o)

    while True:
        comp = component_index(g, cur)
        found = None
        for u in sorted(cur):
            starts = [w for w in g.adj[u] if w not in cur]
            if not starts:
                continue
            outside = frozenset(v for v in g.vertices() if v not in cur)
            depth = bfs_distances(g, starts, allowed=outside, limit=c - 2)
            ends = sorted(v for o in depth for v in g.adj[o]
                          if v in cur and comp[v] != comp[u] and len(touches(u) | touches(v)) <= 1)
            for v in ends:
                back = bfs_distances(g, [w for w in g.adj[v] if w in outside], allowed=outside, limit=c - 2)
                meet = [o for o in g.adj[u] if o in back]
                if not meet:
                    continue
                length = min(back[o] for o in meet) + 2
                if length > c:
                    continue
                path = [u]
                node = min(o for o in meet if back[o] == length - 2)
                path.append(node)
                while back[node] > 0:
                    node = min(w for w in g.adj[node] if back.get(w) == back[node] - 1)
                    path.append(node)
                path.append(v)
                found = tuple(path)
                break
            if found:
                break
        if found is None:
            return m_seq
        m_seq.append(found)
        cur.update(found)
