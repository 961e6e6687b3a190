"""Named verification suites: each is a list of checks returning (passed, detail)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import cofukaya_presentations as cp
from . import cyclic_combinatorics as cc
from . import fukaya_sheaf as fs
from . import matrix_factorizations as mf
from . import ribbon_surfaces as rs
from .exact_linalg import QQ, Field, cohomology, stabilized_truncated_cohomology
from .path_model import path_model_hom_dims, rank_one_lf


@dataclass
class RunConfig:
    field: Field = QQ
    trunc: int = 4
    pathlen: int = 6
    seed: int = 0

    def __post_init__(self):
        if self.trunc < 1:
            raise ValueError("truncation start must be >= 1")
        if self.pathlen < 2:
            raise ValueError("path-length bound must be >= 2")


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    seconds: float
    detail: str = ""


def _dual_route(M, N, W: int) -> tuple:
    """SNF dims and truncation dims of Hom(M, N); raises nothing, returns both."""
    C = mf.hom_complex(M, N)
    return cohomology(C).dims, stabilized_truncated_cohomology(C, W)


# ---------------------------------------------------------------------------
# individual checks


def check_universal_triangle(cfg: RunConfig):
    rep = mf.verify_universal_triangle_relations(cfg.field)
    bad = [name for name, ok in rep if not ok]
    return not bad, f"{len(rep)} identities, failing: {bad}" if bad else f"{len(rep)} identities hold"


def check_distinguished_triangles(cfg: RunConfig, max_n: int = 5):
    count = 0
    cross = 0
    for n in range(2, max_n + 1):
        N = n + 1
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    if not mf.is_ccw(n, i, j, k):
                        continue
                    a, b, g = mf.distinguished_triangle(n, i, j, k, cfg.field)
                    _, b2, _ = mf.distinguished_triangle(n, j, k, i, cfg.field)
                    if not (a.is_closed() and b.is_closed() and g.is_closed()):
                        return False, f"non-closed map in ({i},{j},{k}), n={n}"
                    for comp in (mf.compose_chain(b, a), mf.compose_chain(g, b), mf.compose_chain(b2, g)):
                        if not mf.is_coboundary(comp):
                            return False, f"composite not a coboundary in ({i},{j},{k}), n={n}"
                    C = mf.cone(a)
                    Ejk = mf.rank_one(n, j, k, field=cfg.field)
                    if not mf.is_homotopy_equivalent(C, Ejk):
                        return False, f"cone(alpha) not equivalent to [{j},{k}], n={n}"
                    for X, Y in ((C, Ejk), (Ejk, C)):
                        snf, tr = _dual_route(X, Y, cfg.trunc)
                        if snf != tr:
                            return False, f"SNF {snf} != truncation {tr} on cone Hom, n={n}"
                        cross += 1
                    count += 1
    return True, f"{count} triangles, {cross} dual-route Hom checks"


def check_coxeter_random(cfg: RunConfig, max_n: int = 6, samples: int = 25):
    rng = random.Random(cfg.seed)
    for n in range(1, max_n + 1):
        for _ in range(samples):
            M = mf.random_graded_mf(n, rng, cfg.field)
            P = M
            for _ in range(n + 1):
                P = mf.grading_shift(P)
            if P != M:
                return False, f"Pi^{n + 1} != id on a random object, n={n}"
    return True, f"{samples} random objects for each n <= {max_n}"


def check_coxeter_rotation(cfg: RunConfig, max_n: int = 6):
    count = 0
    for n in range(1, max_n + 1):
        t = cc.rotation(n)
        objs = [mf.rank_one(n, i, j, field=cfg.field) for i in range(n + 1) for j in range(n + 1)]
        objs += [mf.rank_one(n, i, i, primed=True, field=cfg.field) for i in range(n + 1)]
        for M in objs:
            if mf.cocyclic_pushforward(t, M) != mf.grading_shift(M):
                return False, f"rotation pushforward differs from Pi on {M.shifts}, n={n}"
            count += 1
    return True, f"{count} rank-one objects"


def check_coxeter_orbits(cfg: RunConfig, max_n: int = 6):
    """The orbit of [i,j] under Pi has exactly n+1 elements."""
    for n in range(1, max_n + 1):
        for i, j in mf.rank_one_pairs(n):
            M = mf.rank_one(n, i, j, field=cfg.field)
            orbit = {M}
            P = M
            for _ in range(n):
                P = mf.grading_shift(P)
                orbit.add(P)
            if len(orbit) != n + 1:
                return False, f"orbit of [{i},{j}] has {len(orbit)} elements, n={n}"
    return True, f"orbits of size n+1 for n <= {max_n}"


def check_cosegal(cfg: RunConfig, lo: int = 2, hi: int = 8):
    bad = [n for n in range(lo, hi + 1) if not cp.cosegal_check(n, cfg.field)]
    return not bad, f"chains n={lo}..{hi}" + (f", failing {bad}" if bad else " isomorphic to A^n")


def check_cosegal_path_counts(cfg: RunConfig, hi: int = 8):
    for n in range(2, hi + 1):
        C, A = cp.A_chain(n, cfg.field), cp.build_A(n, cfg.field)
        iso = cp.find_isomorphism(C, A)
        if iso is None:
            return False, f"no isomorphism at n={n}"
        omap = iso[0]
        pc, pa = cp.path_counts(C, cfg.pathlen), cp.path_counts(A, cfg.pathlen)
        if any(pa[(omap[s], omap[t], par)] != v for (s, t, par), v in pc.items()):
            return False, f"path counts differ at n={n}"
    return True, f"path counts up to length {cfg.pathlen} agree"


def check_oracle(cfg: RunConfig, max_n: int = 5):
    pairs = 0
    for n in range(1, max_n + 1):
        for a in mf.rank_one_pairs(n):
            for b in mf.rank_one_pairs(n):
                M, N = mf.rank_one(n, *a, field=cfg.field), mf.rank_one(n, *b, field=cfg.field)
                snf, tr = _dual_route(M, N, cfg.trunc)
                want = mf.oracle_hom_dims(n, a, b, cfg.field)
                if snf != want:
                    return False, f"Hom({a},{b}) = {snf}, oracle {want}, n={n}"
                if tr != snf:
                    return False, f"truncation {tr} != SNF {snf} on Hom({a},{b}), n={n}"
                pairs += 1
    return True, f"{pairs} ordered pairs match the A_n oracle (SNF and truncation)"


def check_path_model(cfg: RunConfig, max_n: int = 4):
    count = 0
    for n in range(1, max_n + 1):
        objs = [(i, j, False) for i, j in mf.rank_one_pairs(n)]
        objs += [(i, i, p) for i in range(n + 1) for p in (False, True)]
        for a in objs:
            for b in objs:
                snf = mf.hom_cohomology_dims(mf.rank_one(n, a[0], a[1], a[2], cfg.field),
                                             mf.rank_one(n, b[0], b[1], b[2], cfg.field))
                pm = path_model_hom_dims(rank_one_lf(n, *a), rank_one_lf(n, *b), field=cfg.field)
                if snf != pm:
                    return False, f"path model {pm} != SNF {snf} for {a}, {b}, n={n}"
                count += 1
    return True, f"{count} pairs agree with the path model"


def check_duality(cfg: RunConfig, max_n: int = 4):
    rng = random.Random(cfg.seed)
    for n in range(1, max_n + 1):
        N = n + 1
        for i, j in mf.rank_one_pairs(n):
            D = mf.dual_object(mf.rank_one(n, i, j, field=cfg.field))
            # equal after negating both maps, i.e. isomorphic through diag(1, -1)
            flipped = mf.GradedMF(n, D.shifts0, D.shifts1, -D.phi, -D.psi)
            if flipped != mf.rank_one(n, -j, -i, field=cfg.field):
                return False, f"dual of [{i},{j}] is not [{-j % N},{-i % N}]"
        for _ in range(10):
            M = mf.random_graded_mf(n, rng, cfg.field)
            Nn = mf.random_graded_mf(n, rng, cfg.field)
            if mf.dual_object(mf.dual_object(M)) != M:
                return False, "dual is not an involution"
            if mf.hom_cohomology_dims(M, Nn) != mf.hom_cohomology_dims(mf.dual_object(Nn), mf.dual_object(M)):
                return False, "Hom(M, N) and Hom(N*, M*) differ"
        for m in range(0, 3):
            for f in cc.all_maps(cc.ordinal(m), cc.ordinal(n)):
                if cc.dual_map(cc.dual_map(f)) != f:
                    return False, "dual of cyclic maps is not an involution"
    return True, f"object and map duality for n <= {max_n}"


def check_waldhausen(cfg: RunConfig, max_n: int = 5):
    count = 0
    for n in range(1, max_n + 1):
        D = mf.waldhausen_diagram(n, cfg.field)
        objs, edges = D["objects"], D["edges"]
        for (a, b), f in edges.items():
            for (b2, c), g in edges.items():
                if b2 != b:
                    continue
                if mf.compose_chain(g, f) != edges[(a, c)]:
                    return False, f"edge composite {a}->{b}->{c} differs from the direct edge, n={n}"
                count += 1
        for i in range(n + 1):
            if not mf.is_zero_object(objs[(i, i)]):
                return False, f"F({i},{i}) is not a zero object"
        for j in range(n + 1):
            for k in range(j + 1, n + 1):
                f = edges.get(((0, j), (0, k)))
                if f is None:
                    continue
                if not mf.is_homotopy_equivalent(mf.cone(f), objs[(j, k)]):
                    return False, f"cone(E0{j} -> E0{k}) not equivalent to E{j}{k}, n={n}"
    return True, f"{count} composable pairs strictly functorial for n <= {max_n}"


def check_nerve_2segal(cfg: RunConfig):
    cats = {"poset(2)": cc.poset_category(2), "Z/3": cc.cyclic_group_category(3),
            "idempotent arrow": cc.idempotent_arrow_category()}
    count = 0
    for name, C in cats.items():
        X = cc.nerve_simplicial_data(C, 6)
        for n in (4, 5, 6):
            for T in cc.triangulations(n):
                if not cc.check_2segal_sets(X, n, T):
                    return False, f"membrane map fails for {name}, n={n}, T={T}"
                count += 1
    X = cc.doubled_cell_counterexample()
    if any(cc.check_2segal_sets(X, 3, T) for T in cc.triangulations(3)):
        return False, "planted counterexample passed"
    return True, f"{count} membrane bijections; counterexample rejected"


def check_surfaces(cfg: RunConfig):
    want = {
        "theta": rs.MarkedSurface(0, (), 3),
        "affine_line": rs.MarkedSurface(0, (1,), 1),
        "torus1": rs.MarkedSurface(1, (), 1),
        "projective_line": rs.MarkedSurface(0, (1, 1), 0),
    }
    for name, S in want.items():
        got = rs.surface_of(rs.builtin_graph(name))
        if got != S:
            return False, f"{name}: {got.describe()}"
    return True, "built-in graphs reproduce their surfaces"


def check_random_moves(cfg: RunConfig, count: int = 200):
    rng = random.Random(cfg.seed)
    moves = 0
    for _ in range(count):
        G = rs.random_ribbon_graph(rng)
        S = rs.surface_of(G)
        for h, h2 in G.internal_edges():
            if not G.is_loop(h):
                if rs.surface_of(rs.contract_edge(G, h)) != S:
                    return False, f"contract_edge changed the surface of {G.to_json()}"
                moves += 1
            if rs.is_flippable(G, h):
                if rs.surface_of(rs.flip_edge(G, h)) != S:
                    return False, f"flip_edge changed the surface of {G.to_json()}"
                moves += 1
    return True, f"{moves} moves on {count} random graphs"


def check_stasheff(cfg: RunConfig):
    import networkx as nx

    catalan = [2, 5, 14, 42, 132]
    for n, c in zip(range(3, 8), catalan):
        H = rs.stasheff_flip_graph(n)
        if H.number_of_nodes() != c or not nx.is_connected(H):
            return False, f"flip graph of P{n + 1} has {H.number_of_nodes()} nodes"
    return True, "flip graphs connected with Catalan vertex counts"


def check_presentations(cfg: RunConfig):
    F = cfg.field
    L = cfg.pathlen
    if not cp.check_d_squared(cp.build_D(F), L):
        return False, "d^2 != 0 on D"
    if not cp.embeds_F_in_D(F):
        return False, "F does not embed in D"
    if not cp.is_isomorphic(cp.recipe("affine_line", F).presentation, cp.loop_quiver(F)):
        return False, "affine-line recipe is not the loop quiver"
    if not cp.is_isomorphic(cp.recipe("projective_line", F).presentation, cp.kronecker_quiver(F)):
        return False, "projective-line recipe is not the Kronecker quiver"
    Q = cp.recipe("sphere3", F).presentation
    if not cp.check_d_squared(Q, L):
        return False, "d^2 != 0 on the sphere presentation"
    loops = cp.sphere3_loops(Q)
    if not cp.is_exact(Q, loops["x_B y_B"], 6):
        return False, "x_B y_B not exact within path length 6"
    if not cp.is_exact(Q, loops["y_B x_B"], 6):
        return False, "y_B x_B not exact within path length 6"
    if cp.is_exact(Q, loops["x_B"], 6) or cp.is_exact(Q, loops["y_B"], 6):
        return False, "x_B or y_B itself is exact"
    T = cp.recipe("torus1", F).presentation
    if not cp.check_d_squared(T, 4):
        return False, "d^2 != 0 on the torus presentation"
    return True, "loop quiver, Kronecker quiver, sphere exactness at length 6, torus d^2"


def _annulus_curves():
    return [fs.annulus_wrapped_arc(n) for n in range(1, 5)] + [fs.annulus_loop(2), fs.annulus_loop(3)]


def check_annulus(cfg: RunConfig):
    G = rs.affine_line()
    curves = _annulus_curves()
    X = [fs.compile_curve(G, c, cfg.field) for c in curves]
    table = fs.hom_table(X)
    oracle = [[fs.kx_ext_dims(fs.skyscraper_module(a, cfg.field), fs.skyscraper_module(b, cfg.field))
               for b in curves] for a in curves]
    if table != oracle:
        return False, f"annulus table {table} != k[x] oracle {oracle}"
    for n in range(1, 5):
        if table[n - 1][n - 1] != (n, n):
            return False, f"End(arc{n}) = {table[n - 1][n - 1]}"
    if table[4][4] != (1, 1) or table[4][5] != (0, 0) or table[5][4] != (0, 0):
        return False, "lambda-curve values wrong"
    return True, "6x6 annulus table equals the k[x] Ext oracle"


def square_arcs(G: rs.RibbonGraph, field: Field = QQ) -> list:
    n = 3
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    return [fs.compile_curve(G, fs.arc_between_tails(G, rs.polygon_tail_vertex(n, i),
                                                     rs.polygon_tail_vertex(n, j)), field) for i, j in pairs]


def check_square_flip(cfg: RunConfig):
    n = 3
    A = rs.triangulation_to_dual(n, [(0, 1, 2), (0, 2, 3)])
    B = rs.triangulation_to_dual(n, [(0, 1, 3), (1, 2, 3)])
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    ta = fs.hom_table(square_arcs(A, cfg.field))
    tb = fs.hom_table(square_arcs(B, cfg.field))
    tt = [[mf.hom_cohomology_dims(mf.rank_one(n, *a, field=cfg.field), mf.rank_one(n, *b, field=cfg.field))
           for b in pairs] for a in pairs]
    if ta != tb:
        return False, "tables differ across the two triangulations"
    if ta != tt:
        return False, "glued table differs from the direct T^3 table"
    return True, "6x6 table equal on both triangulations and to T^3"


def theta_curves(G: rs.RibbonGraph) -> list:
    out = []
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            hi, hj = G.vertices[0][i], G.vertices[0][j]
            for lam in (1, 2):
                out.append(fs.CurveSpec("closed", ((0, hi, hj), (1, G.alpha[hj], G.alpha[hi])), lam))
    return out


def check_theta_symmetry(cfg: RunConfig):
    G = rs.theta()
    curves = theta_curves(G)
    base = fs.hom_table([fs.compile_curve(G, c, cfg.field) for c in curves])
    auts = rs.automorphisms(G)
    for p in auts:
        img = [fs.relabel_curve(c, p, G) for c in curves]
        if fs.hom_table([fs.compile_curve(G, c, cfg.field) for c in img]) != base:
            return False, "an automorphism changed the Hom table"
    return True, f"{len(auts)} automorphisms preserve the {len(curves)}x{len(curves)} table"


def check_gauge(cfg: RunConfig):
    A = rs.affine_line()
    c = fs.annulus_loop(6, wraps=2)
    tests = [fs.compile_curve(A, fs.annulus_loop(6), cfg.field), fs.compile_curve(A, fs.annulus_wrapped_arc(1), cfg.field)]
    ok = fs.monodromy_gauge_check(A, c, tests, [{0: 6}, {1: 6}, {0: 2, 1: 3}], cfg.field)
    return ok, "monodromy placement does not change Hom rows"


# ---------------------------------------------------------------------------
# registry


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "triangles": [("universal triangle relations", check_universal_triangle),
                  ("distinguished triangles n <= 5", check_distinguished_triangles)],
    "coxeter": [("Pi^(n+1) = id on random objects", check_coxeter_random),
                ("rotation pushforward = Pi", check_coxeter_rotation),
                ("Pi orbits of size n+1", check_coxeter_orbits)],
    "cosegal": [("A2 chains isomorphic to A^n", check_cosegal),
                ("chain path counts", check_cosegal_path_counts)],
    "oracle": [("A_n Hom/Ext oracle n <= 5", check_oracle),
               ("loop-factorization path model n <= 4", check_path_model)],
    "flips": [("square flip and T^3 table", check_square_flip),
              ("theta automorphisms", check_theta_symmetry),
              ("surface invariants under random moves", check_random_moves),
              ("flip graphs", check_stasheff)],
    "duality": [("object and map duality", check_duality)],
    "waldhausen": [("Waldhausen diagrams n <= 5", check_waldhausen)],
    "nerve2segal": [("cyclic nerve membranes", check_nerve_2segal)],
    "surfaces": [("built-in surfaces", check_surfaces)],
    "presentations": [("example presentations", check_presentations)],
    "annulus": [("annulus Hom table vs k[x]", check_annulus),
                ("monodromy gauge", check_gauge)],
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, cfg: RunConfig | None = None) -> list[CheckResult]:
    cfg = cfg or RunConfig()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}")
    out = []
    for s in names:
        for label, fn in SUITES[s]:
            t = time.perf_counter()
            try:
                ok, detail = fn(cfg)
            except Exception as exc:  # a crash counts as a failed check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            out.append(CheckResult(s, label, bool(ok), time.perf_counter() - t, detail))
    return out
