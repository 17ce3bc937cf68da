"""Acceptance criteria 1-10, each checked at its stated tolerance and time limit."""

from __future__ import annotations

import math
import time
from itertools import combinations

import numpy as np
import pytest

from coarse_menger.augment import (Setting, get_paths, is_jumping, is_separated, menger_disjoint_paths,
                                   minimize_sequence, separate_all)
from coarse_menger.graph import Graph
from coarse_menger.shrink import BiteClosure, carve, close_bites
from coarse_menger.solver import Separator, constants, solve, verify_certificate
from coarse_menger.testbed import (LCG, FIGURE1_PAIRS, figure1_paths, gen_family, gen_figure1,
                                   oracle_far_paths, subdivide_instance)
from coarse_menger.trees import SubdivisionWitness, contains_subdivision, pathwidth_exact

import _oracles as O
from _gen import planted_jump_set, random_graph, random_pairs, random_setting_data

criterion = pytest.mark.criterion


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


# ---- 1 ----------------------------------------------------------------------

@criterion(1, "worked example: 2-jumping, minimal length 7, not 1-separated, no far triple")
def test_criterion_1_figure1():
    t0 = time.perf_counter()
    inst = gen_figure1()
    g, s, t = inst.graph, inst.s, inst.t
    p1, p2 = figure1_paths()
    st = Setting(s, t, (p1, p2))
    pairs = frozenset(FIGURE1_PAIRS)
    jumping, _ = is_jumping(pairs, 2, st)
    seq = minimize_sequence(pairs, 2, st)
    u1, u2 = p1[1], p1[2]
    edges = g.edges()
    # every vertex-disjoint triple of S-T paths has two members joined by a path edge
    path_edges = {frozenset(e) for p in (p1, p2) for e in zip(p, p[1:])}
    paths = O.all_simple_paths(g.n, edges, s, t)
    sets = sorted({frozenset(p) for p in paths}, key=len)
    minimal = [a for a in sets if not any(b < a for b in sets)]
    triples = 0
    unjoined = 0
    for a, b, c in combinations(minimal, 3):
        if a & b or a & c or b & c:
            continue
        triples += 1
        joined = any(frozenset((x, y)) in path_edges
                     for xs, ys in ((a, b), (a, c), (b, c)) for x in xs for y in ys)
        unjoined += not joined
    far = oracle_far_paths(g, s, t, 3, 1)
    disjoint = oracle_far_paths(g, s, t, 3, 0)
    elapsed = time.perf_counter() - t0
    ok = (jumping and len(seq) == 7 and not is_separated(pairs, 1, st) and st.path_dist(u1, u2) == 1
          and triples > 0 and unjoined == 0 and far is None and disjoint is not None and elapsed < 5)
    _report(1, ok, f"jumping={jumping} len={len(seq)} triples={triples} unjoined={unjoined} {elapsed:.2f}s")
    assert jumping
    assert len(seq) == 7
    assert not is_separated(pairs, 1, st) and st.path_dist(u1, u2) == 1
    assert triples > 0 and unjoined == 0
    assert far is None and disjoint is not None
    assert elapsed < 5


# ---- 2 ----------------------------------------------------------------------

@criterion(2, "sequence search agrees with exhaustive barrier enumeration")
def test_criterion_2_jumping_equivalence():
    t0 = time.perf_counter()
    rng = LCG(42)
    agree = total = yes = 0
    for _ in range(240):
        k = 1 + rng.below(2)
        s, t, paths = random_setting_data(rng, k, 4 + rng.below(17), rng.below(3), rng.below(3))
        st = Setting(s, t, paths)
        c = rng.below(4)
        pairs = random_pairs(rng, s, t, paths, 2 + rng.below(14))
        fast, _ = is_jumping(pairs, c, st)
        slow = O.jumping_by_enumeration(pairs, c, paths, s, t)
        total += 1
        agree += fast == slow
        yes += slow
    elapsed = time.perf_counter() - t0
    ok = agree == total and total >= 200 and elapsed < 60
    _report(2, ok, f"{agree}/{total} agree ({yes} jumping) {elapsed:.1f}s")
    assert total >= 200 and 0 < yes < total
    assert agree == total
    assert elapsed < 60


# ---- 3 ----------------------------------------------------------------------

@criterion(3, "get_paths on c-jumping 2c-separated sets: k+1 disjoint, far along the paths")
def test_criterion_3_get_paths_contract():
    t0 = time.perf_counter()
    rng = LCG(7)
    done = good = 0
    while done < 120:
        c = 1 + rng.below(2)
        k = 1 + rng.below(3)
        s, t, paths = random_setting_data(rng, k, 30 * k, 1 + rng.below(2), 1 + rng.below(2))
        if min(len(p) for p in paths) < 5 * c + 3:
            continue
        st = Setting(s, t, paths)
        f, _ = planted_jump_set(rng, s, t, paths, 5 * c, rng.below(8))
        assert is_jumping(f, 5 * c, st)[0]
        d_set = separate_all(f, c, st)
        assert is_jumping(d_set, c, st)[0] and is_separated(d_set, 2 * c, st)
        out = get_paths(d_set, c, st)  # InvariantError here would mean a degree assertion fired
        done += 1
        owner = {}
        valid = len(out) == k + 1
        allowed = {frozenset(e) for p in paths for e in zip(p, p[1:])} | {frozenset(pr) for pr in d_set}
        for i, p in enumerate(out):
            valid &= p[0] in s and p[-1] in t
            valid &= all(frozenset(e) in allowed for e in zip(p, p[1:]))
            for v in p:
                valid &= v not in owner
                owner[v] = i
        for p in paths:
            for i in range(len(p)):
                for j in range(i + 1, min(len(p), i + c + 1)):
                    oi, oj = owner.get(p[i]), owner.get(p[j])
                    valid &= not (oi is not None and oj is not None and oi != oj)
        good += valid
    elapsed = time.perf_counter() - t0
    ok = good == done and elapsed < 60
    _report(3, ok, f"{good}/{done} valid {elapsed:.1f}s")
    assert good == done
    assert elapsed < 60


# ---- shared pool for 4 and 5 -------------------------------------------------

def _shrink_pool(size: int = 130, seed: int = 99):
    rng = LCG(seed)
    pool = []
    while len(pool) < size:
        kind = rng.below(5)
        if kind == 0:
            n = 6 + rng.below(35)
            g = Graph(n, [(i, (i + 1) % n) for i in range(n)])
        elif kind == 1:
            r, c = 2 + rng.below(4), 2 + rng.below(8)
            g = gen_family("grid", {"rows": r, "cols": c}).graph
        elif kind == 2:
            depth = 3 + rng.below(2)
            g = gen_family("subdivided_tree", {"depth": depth, "length": 1 + rng.below(2)}).graph
        elif kind == 3:
            g = gen_family("random_bounded_pw", {"width": 1 + rng.below(3), "n": 10 + rng.below(31)},
                           seed=rng.below(10_000)).graph
        else:
            g = random_graph(rng, 8 + rng.below(20), 0.12)
        if g.n > 40 or g.n == 0:
            continue
        z = frozenset(rng.sample(list(range(g.n)), 1 + rng.below(min(4, g.n))))
        l, d = 2 + rng.below(3), 2 + rng.below(3)
        pool.append((g, z, l, d))
    return pool


@criterion(4, "bite closure: near and bite-free, or a valid subdivision")
def test_criterion_4_bite_dichotomy():
    t0 = time.perf_counter()
    closures = witnesses = good = 0
    pool = _shrink_pool()
    for g, z, l, d in pool:
        edges = g.edges()
        res = close_bites(g, z, l, d)
        if isinstance(res, SubdivisionWitness):
            witnesses += 1
            good += O.witness_is_valid(g.n, edges, d, res.branch_map, res.edge_paths, l - 1) and res.depth == d
            continue
        assert isinstance(res, BiteClosure)
        closures += 1
        dm = O.floyd_warshall(g.n, edges)
        y = sorted(res.y)
        near = all(O.set_dist(dm, [v], z) <= (d - 2) * (l - 1) for v in y)
        # no bite: no two far-apart vertices of y joined by a short route outside y
        dy = O.induced_fw(g.n, edges, y)
        outside = set(range(g.n)) - set(res.y)
        bite = False
        for u, v in combinations(y, 2):
            if dy[u, v] <= 2 * (d - 2) * (l - 1):
                continue
            keep = outside | {u, v}
            sub = [(a, b) for a, b in edges if a in keep and b in keep and {a, b} != {u, v}]
            if O.floyd_warshall(g.n, sub)[u, v] <= l:
                bite = True
                break
        good += near and not bite
    elapsed = time.perf_counter() - t0
    ok = good == len(pool) and elapsed < 120
    _report(4, ok, f"{good}/{len(pool)} ({closures} closures, {witnesses} witnesses) {elapsed:.1f}s")
    assert len(pool) >= 100 and closures > 0 and witnesses > 0
    assert good == len(pool)
    assert elapsed < 120


@criterion(5, "carve keeps short distances short outside B")
def test_criterion_5_carve_distances():
    t0 = time.perf_counter()
    rng = LCG(5)
    checked = good = witnesses = 0
    for g, z, l, d in _shrink_pool(220, 55):
        a = frozenset(v for v in g.vertices() if v not in z and rng.chance(0.5))
        b = carve(g, a, l, d)
        if isinstance(b, SubdivisionWitness):
            witnesses += 1
            continue
        checked += 1
        edges = g.edges()
        dg = O.floyd_warshall(g.n, edges)
        keep = [v for v in g.vertices() if v not in b]
        dk = O.induced_fw(g.n, edges, keep)
        cap = (d - 2) * l * (l - 1)
        fine = b <= a
        for u, v in combinations(keep, 2):
            if dg[u, v] <= l and dk[u, v] > cap:
                fine = False
        good += fine
    _report(5, good == checked, f"{good}/{checked} carves ({witnesses} witnesses) {time.perf_counter() - t0:.1f}s")
    assert checked >= 100
    assert good == checked


# ---- 6 and 7 -------------------------------------------------------------------

KINDS = ("binary_tree", "subdivided_tree", "grid", "caterpillar", "random_bounded_pw")


def _solver_pool():
    rng = LCG(2024)
    out = []
    i = 0
    while len(out) < 320:
        kind = KINDS[i % 5]
        i += 1
        k, c = rng.below(3), rng.below(3)
        if kind == "binary_tree":
            p = {"depth": 2 + rng.below(4)}
        elif kind == "subdivided_tree":
            p = {"depth": 2 + rng.below(3), "length": 1 + rng.below(3)}
        elif kind == "grid":
            p = {"rows": 1 + rng.below(4), "cols": 2 + rng.below(8)}
        elif kind == "caterpillar":
            p = {"spine": 2 + rng.below(10), "legs": rng.below(3)}
        else:
            p = {"width": 1 + rng.below(3), "n": 6 + rng.below(35)}
        p.update(k=k, c=c, d=3)
        inst = gen_family(kind, p, seed=i)
        if inst.graph.n <= 40:
            out.append(inst)
    return out


_SOLVED: list = []


def _solved():
    if not _SOLVED:
        for inst in _solver_pool():
            k, c, d = inst.params["k"], inst.params["c"], inst.params["d"]
            _SOLVED.append((inst, solve(inst.graph, inst.s, inst.t, k, c, d)))
    return _SOLVED


@criterion(6, "solver soundness on generated families")
def test_criterion_6_soundness():
    t0 = time.perf_counter()
    solved = _solved()
    good = 0
    for inst, cert in solved:
        k, c, d = inst.params["k"], inst.params["c"], inst.params["d"]
        ok, _ = verify_certificate(inst.graph, inst.s, inst.t, k, c, d, constants(k, c, d), cert)
        good += ok
    elapsed = time.perf_counter() - t0
    _report(6, good == len(solved) and elapsed < 600, f"{good}/{len(solved)} verified {elapsed:.1f}s")
    assert len(solved) >= 300
    assert good == len(solved)
    assert elapsed < 600


@criterion(7, "conditional completeness: no far paths and no subdivision gives a separator")
def test_criterion_7_completeness():
    applicable = good = 0
    for inst, cert in _solved():
        g = inst.graph
        if g.n > 22:
            continue
        k, c, d = inst.params["k"], inst.params["c"], inst.params["d"]
        tab = constants(k, c, d)
        has_witness = tab.c8 >= 1 and contains_subdivision(g, d, tab.c8) is not None
        if has_witness or oracle_far_paths(g, inst.s, inst.t, k + 1, c) is not None:
            continue
        applicable += 1
        good += isinstance(cert, Separator) and cert.radius == tab.c9
    _report(7, good == applicable, f"{good}/{applicable} applicable instances gave a separator")
    assert applicable >= 50
    assert good == applicable


# ---- 8 ---------------------------------------------------------------------------

@criterion(8, "vertex-disjoint path count equals brute-force minimum vertex cut")
def test_criterion_8_menger():
    rng = LCG(8)
    good = 0
    for _ in range(210):
        n = 2 + rng.below(13)
        g = random_graph(rng, n, 0.1 + 0.4 * rng.below(100) / 100)
        s = rng.sample(list(range(n)), 1 + rng.below(3))
        t = rng.sample(list(range(n)), 1 + rng.below(3))
        edges = g.edges()
        kappa = O.min_vertex_cut(n, edges, s, t)
        cut = menger_disjoint_paths(g, s, t, n)
        fine = isinstance(cut, frozenset) and len(cut) == kappa
        fine &= not O.st_connected(n, edges, s, t, cut)
        if kappa >= 1:
            paths = menger_disjoint_paths(g, s, t, kappa - 1)
            fine &= isinstance(paths, list) and len(paths) == kappa
            seen = set()
            for p in paths if isinstance(paths, list) else []:
                fine &= p[0] in s and p[-1] in t and len(set(p)) == len(p)
                fine &= all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
                fine &= not (seen & set(p))
                seen |= set(p)
        good += fine
    _report(8, good == 210, f"{good}/210 graphs")
    assert good == 210


# ---- 9 ---------------------------------------------------------------------------

@criterion(9, "any subdivision of H_d forces path-width at least (d-1)/2")
def test_criterion_9_pathwidth():
    rng = LCG(9)
    graphs = []
    for depth in (3, 4):
        for length in (1, 2):
            graphs.append(gen_family("subdivided_tree", {"depth": depth, "length": length}).graph)
    for r in range(1, 4):
        for c in range(2, 6):
            graphs.append(gen_family("grid", {"rows": r, "cols": c}).graph)
    while len(graphs) < 120:
        if rng.below(2):
            g = gen_family("random_bounded_pw", {"width": 1 + rng.below(3), "n": 7 + rng.below(10)},
                           seed=rng.below(10_000)).graph
        else:
            g = random_graph(rng, 7 + rng.below(10), 0.15 + 0.2 * rng.below(10) / 10)
        graphs.append(g)
    found = good = 0
    for g in graphs:
        if g.n > 16:
            continue
        for d in (3, 4):
            w = contains_subdivision(g, d, max(1, g.n))
            if w is None:
                continue
            found += 1
            good += O.witness_is_valid(g.n, g.edges(), d, w.branch_map, w.edge_paths, g.n) \
                and pathwidth_exact(g) >= math.ceil((d - 1) / 2)
    _report(9, good == found, f"{good}/{found} witnesses respect the bound")
    assert found >= 30
    assert good == found


# ---- 10 --------------------------------------------------------------------------

@criterion(10, "subdivision scales every original distance by exactly n")
def test_criterion_10_scaling():
    rng = LCG(10)
    count = good = 0
    while count < 60:
        kind = KINDS[rng.below(5)]
        params = {"binary_tree": {"depth": 2 + rng.below(3)},
                  "subdivided_tree": {"depth": 2 + rng.below(2), "length": 1 + rng.below(2)},
                  "grid": {"rows": 1 + rng.below(3), "cols": 2 + rng.below(4)},
                  "caterpillar": {"spine": 2 + rng.below(5), "legs": rng.below(3)},
                  "random_bounded_pw": {"width": 1 + rng.below(2), "n": 5 + rng.below(10)}}[kind]
        inst = gen_family(kind, params, seed=rng.below(1000))
        n = 1 + rng.below(4)
        out = subdivide_instance(inst, n)
        d_in = O.floyd_warshall(inst.graph.n, inst.graph.edges())
        d_out = O.floyd_warshall(out.graph.n, out.graph.edges())
        m = inst.graph.n
        count += 1
        good += bool(np.array_equal(d_out[:m, :m], n * d_in)) and out.s == inst.s and out.t == inst.t
    _report(10, good == count, f"{good}/{count} instances")
    assert good == count
