"""Local systems of matrix factorizations on a ribbon graph and their glued Hom.

An object assigns a graded matrix factorization to every vertex of valency at
least 2 and a closed even gluing map to every internal edge, going from the
restriction at the designated flag to the restriction at the other flag.
Restriction is pushforward along the collapse map of the flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    QQ,
    Complex2P,
    Field,
    Poly,
    rref,
    cohomology,
    stabilized_truncated_cohomology,
)
from .matrix_factorizations import (
    GMat,
    GradedMF,
    MFMorphism,
    block_matrix,
    compose_chain,
    cocyclic_pushforward,
    cone,
    direct_sum,
    hom_basis,
    hom_complex,
    is_zero_object,
    morphism_to_vector,
    pushforward_morphism,
    rank_one,
    vector_to_morphism,
    zero_object,
)
from .ribbon_surfaces import EdgeGluing, GraphError, RibbonGraph, flip_edge, gluing_data


class ItineraryError(ValueError):
    pass


def _gluing_table(G: RibbonGraph) -> dict:
    return {g.edge: g for g in gluing_data(G)}


def _edge_key(G: RibbonGraph, h: int) -> tuple:
    """The edge containing h, oriented with its designated half-edge first."""
    table = _gluing_table(G)
    for e in (((h, G.alpha[h])), (G.alpha[h], h)):
        if e in table:
            return e
    raise GraphError(f"half-edge {h} is not on an internal edge")


@dataclass(frozen=True)
class LocalSystem:
    graph: RibbonGraph
    locals: tuple  # per vertex: GradedMF over T^(valency-1), or None for 1-valent vertices
    gluings: dict  # designated edge (h, h') -> closed even MFMorphism
    label: str = ""

    def __post_init__(self):
        G = self.graph
        if len(self.locals) != len(G.vertices):
            raise ValueError("one local object per vertex")
        for v, M in enumerate(self.locals):
            if G.valency(v) == 1:
                if M is not None:
                    raise ValueError("1-valent vertices carry no local object")
            elif M is None or M.n != G.valency(v) - 1:
                raise ValueError(f"local object at vertex {v} lives in the wrong category")
        table = _gluing_table(G)
        if set(self.gluings) != set(table):
            raise ValueError("gluings must be given for exactly the internal edges")
        for e, g in self.gluings.items():
            gd = table[e]
            if g.source != restrict(self, gd.flag) or g.target != restrict(self, gd.other_flag):
                raise ValueError(f"gluing on {e} has the wrong endpoints")
            if g.degree != 0 or not g.is_closed():
                raise ValueError(f"gluing on {e} is not closed of degree 0")

    @property
    def field(self) -> Field:
        for M in self.locals:
            if M is not None:
                return M.field
        return QQ

    def gluings_invertible(self) -> bool:
        """Each gluing is an isomorphism in the homotopy category (its cone is zero)."""
        return all(is_zero_object(cone(g)) for g in self.gluings.values())


def restrict_object(G: RibbonGraph, M: GradedMF, flag: tuple) -> GradedMF:
    """Pushforward of an object at v along the collapse map of the flag (v, h)."""
    v, h = flag
    if G.vertex_of.get(h) != v:
        raise GraphError(f"half-edge {h} is not at vertex {v}")
    gd = _gluing_table(G)[_edge_key(G, h)]
    f = gd.collapse if gd.flag == (v, h) else gd.other_collapse
    return cocyclic_pushforward(f, M)


def restrict(X: LocalSystem, flag: tuple) -> GradedMF:
    return restrict_object(X.graph, X.locals[flag[0]], flag)


def _restrict_morphism(G: RibbonGraph, gd: EdgeGluing, which: int, m: MFMorphism) -> MFMorphism:
    return pushforward_morphism(gd.collapse if which == 0 else gd.other_collapse, m)


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class CurveSpec:
    kind: str  # "arc" or "closed"
    itinerary: tuple  # ((v, entry half-edge, exit half-edge), ...)
    monodromy: object = 1
    name: str = ""

    @classmethod
    def from_json(cls, data: dict, field: Field = QQ) -> "CurveSpec":
        mono = data.get("monodromy", 1)
        return cls(data["kind"], tuple(tuple(int(x) for x in s) for s in data["itinerary"]),
                   field(mono), data.get("name", ""))

    def to_json(self, field: Field = QQ) -> dict:
        return {"kind": self.kind, "itinerary": [list(s) for s in self.itinerary],
                "monodromy": field.to_json(field(self.monodromy)), "name": self.name}


def crossings(G: RibbonGraph, c: CurveSpec) -> list[tuple]:
    """Edge crossings as (designated edge, visit leaving, visit arriving)."""
    it = c.itinerary
    k = len(it)
    pairs = list(zip(range(k - 1), range(1, k)))
    if c.kind == "closed":
        pairs.append((k - 1, 0))
    out = []
    for a, b in pairs:
        out.append((_edge_key(G, it[a][2]), a, b))
    return out


def validate_curve(G: RibbonGraph, c: CurveSpec, field: Field = QQ) -> None:
    if c.kind not in ("arc", "closed"):
        raise ItineraryError("kind must be 'arc' or 'closed'")
    if not c.itinerary:
        raise ItineraryError("empty itinerary")
    for v, a, b in c.itinerary:
        if not 0 <= v < len(G.vertices):
            raise ItineraryError(f"no vertex {v}")
        if G.vertex_of.get(a) != v or G.vertex_of.get(b) != v:
            raise ItineraryError(f"half-edges {a}, {b} are not both at vertex {v}")
        if a == b:
            raise ItineraryError("a visit must enter and leave through different half-edges")
        if G.valency(v) < 2:
            raise ItineraryError("curves do not visit 1-valent vertices")
    it = c.itinerary
    steps = list(zip(it, it[1:]))
    if c.kind == "closed":
        steps.append((it[-1], it[0]))
        if field(c.monodromy) == field(0):
            raise ItineraryError("monodromy must be nonzero")
    for (v, _, out), (w, inn, _) in steps:
        if G.alpha[out] != inn:
            raise ItineraryError(f"exit {out} at vertex {v} is not paired with entry {inn} at vertex {w}")
        if G.is_tail_edge(out):
            raise ItineraryError("a curve cannot pass through a tail edge")
    if c.kind == "arc":
        if not G.is_tail_edge(it[0][1]) or not G.is_tail_edge(it[-1][2]):
            raise ItineraryError("arcs start and end on tail edges")


def compile_curve(G: RibbonGraph, c: CurveSpec, field: Field = QQ,
                  monodromy_at: dict | None = None) -> LocalSystem:
    """Local system of a curve: [entry, exit] per visit, identity gluings per crossing.

    The monodromy sits on the lexicographically least crossing unless
    ``monodromy_at`` maps crossing indices (in ``crossings`` order sorted) to scalars.
    """
    validate_curve(G, c, field)
    visits_at: dict = {}
    for idx, (v, a, b) in enumerate(c.itinerary):
        visits_at.setdefault(v, []).append(idx)
    locals_ = []
    slot = {}  # visit index -> (vertex, summand position)
    for v in range(len(G.vertices)):
        if G.valency(v) == 1:
            locals_.append(None)
            continue
        n = G.valency(v) - 1
        parts = []
        for idx in visits_at.get(v, []):
            _, a, b = c.itinerary[idx]
            slot[idx] = (v, len(parts))
            parts.append(rank_one(n, G.position[a], G.position[b], field=field))
        locals_.append(direct_sum(*parts) if parts else zero_object(n, field))
    locals_ = tuple(locals_)

    cr = sorted(crossings(G, c))
    scal = {i: field(1) for i in range(len(cr))}
    if c.kind == "closed":
        if monodromy_at is None:
            scal[0] = field(c.monodromy)
        else:
            for i, lam in monodromy_at.items():
                scal[i] = field(lam)
    table = _gluing_table(G)
    gluings = {}
    for e, gd in table.items():
        A = restrict_object(G, locals_[gd.flag[0]], gd.flag)
        B = restrict_object(G, locals_[gd.other_flag[0]], gd.other_flag)
        entries: dict = {}
        for i, (e2, a, b) in enumerate(cr):
            if e2 != e:
                continue
            h = e[0]
            # the summand at the designated flag is the visit using h
            src_visit, tgt_visit = (a, b) if c.itinerary[a][2] == h else (b, a)
            sv, sp = slot[src_visit]
            tv, tp = slot[tgt_visit]
            entries[(tp, sp)] = scal[i]
        a_blk = {(r, s): Poly.const(field, x) for (r, s), x in entries.items()}
        gm0 = GMat.from_dict(field, 2, B.shifts0, A.shifts0, a_blk)
        gm1 = GMat.from_dict(field, 2, B.shifts1, A.shifts1, a_blk)
        gluings[e] = MFMorphism.from_blocks(A, B, 0, gm0, gm1)
    return LocalSystem(G, locals_, gluings, c.name)


def direct_sum_systems(*Xs: LocalSystem) -> LocalSystem:
    G = Xs[0].graph
    locals_ = tuple(None if G.valency(v) == 1 else direct_sum(*(X.locals[v] for X in Xs))
                    for v in range(len(G.vertices)))
    gluings = {}
    for e in Xs[0].gluings:
        gs = [X.gluings[e] for X in Xs]
        F, N = gs[0].source.field, 2

        def diag(pick, rows, cols):
            grid = []
            for i, gi in enumerate(gs):
                grid.append([pick(gi) if i == j else GMat.zero(F, N, rows(gi), cols(gj))
                             for j, gj in enumerate(gs)])
            return block_matrix(grid)

        a = diag(lambda g: g.blocks()[0], lambda g: g.target.shifts0, lambda g: g.source.shifts0)
        b = diag(lambda g: g.blocks()[1], lambda g: g.target.shifts1, lambda g: g.source.shifts1)
        src = direct_sum(*(g.source for g in gs))
        tgt = direct_sum(*(g.target for g in gs))
        gluings[e] = MFMorphism.from_blocks(src, tgt, 0, a, b)
    return LocalSystem(G, locals_, gluings, "+".join(X.label for X in Xs))


# ---------------------------------------------------------------------------
# glued Hom


def glued_hom_complex(X: LocalSystem, Y: LocalSystem) -> Complex2P:
    """C^p = (+)_v Hom^p(X_v, Y_v) + (+)_e Hom^(p-1)(X|_(v,h), Y|_(v',h')).

    d(a, b) = (d a, delta a - d b) with
    delta(a)_e = g^Y_e res_(v,h)(a) - res_(v',h')(a) g^X_e.
    """
    if X.graph != Y.graph:
        raise ValueError("local systems live on different graphs")
    G = X.graph
    field = X.field
    zero = Poly.zero(field)
    verts = [v for v in range(len(G.vertices)) if G.valency(v) > 1]
    table = _gluing_table(G)
    edges = sorted(table)
    vcx = {v: hom_complex(X.locals[v], Y.locals[v]) for v in verts}
    eobj = {e: (X.gluings[e].source, Y.gluings[e].target) for e in edges}
    ecx = {e: hom_complex(*eobj[e]) for e in edges}

    def layout(p):
        offs, k = {}, 0
        for v in verts:
            offs[("v", v)] = k
            k += vcx[v].rank(p)
        for e in edges:
            offs[("e", e)] = k
            k += ecx[e].rank(p - 1)
        return offs, k

    def dmat(p):
        src, ns = layout(p)
        tgt, nt = layout(p + 1)
        M = [[zero] * ns for _ in range(nt)]

        def put(r0, c0, block, sign=1):
            for i, row in enumerate(block):
                for j, x in enumerate(row):
                    if x:
                        M[r0 + i][c0 + j] = M[r0 + i][c0 + j] + (x if sign == 1 else -x)

        for v in verts:
            put(tgt[("v", v)], src[("v", v)], vcx[v].differential(p))
        for e in edges:
            put(tgt[("e", e)], src[("e", e)], ecx[e].differential(p - 1), -1)
        for e in edges:
            gd = table[e]
            gX, gY = X.gluings[e], Y.gluings[e]
            R = tgt[("e", e)]
            for v in {gd.flag[0], gd.other_flag[0]}:
                Xv, Yv = X.locals[v], Y.locals[v]
                C0 = src[("v", v)]
                for j, pos in enumerate(hom_basis(Xv, Yv, p)):
                    unit = vector_to_morphism(Xv, Yv, p, [Poly.const(field, 1) if k == j else zero
                                                          for k in range(len(hom_basis(Xv, Yv, p)))])
                    terms = []
                    if v == gd.flag[0]:
                        terms.append(compose_chain(gY, _restrict_morphism(G, gd, 0, unit)))
                    if v == gd.other_flag[0]:
                        terms.append(-compose_chain(_restrict_morphism(G, gd, 1, unit), gX))
                    acc = terms[0]
                    for t in terms[1:]:
                        acc = acc + t
                    vec = morphism_to_vector(acc)
                    for i, x in enumerate(vec):
                        if x:
                            M[R + i][C0 + j] = M[R + i][C0 + j] + x
        return tuple(tuple(r) for r in M), ns, nt

    d0, n0, n1 = dmat(0)
    d1, _, _ = dmat(1)
    C = Complex2P(field, n0, n1, d0, d1)
    if not C.is_complex():
        raise ValueError("glued differential does not square to zero")
    return C


@dataclass(frozen=True)
class GluedHom:
    dims: tuple
    truncated: tuple | None
    ranks: tuple


def hom_cohomology_full(X: LocalSystem, Y: LocalSystem, cross_check: bool = True, W: int = 4) -> GluedHom:
    C = glued_hom_complex(X, Y)
    H = cohomology(C)
    if H.H0.free_rank or H.H1.free_rank:
        raise ValueError("glued Hom has a free k[u]-part")
    dims = H.dims
    trunc = None
    if cross_check:
        trunc = stabilized_truncated_cohomology(C, W)
        if trunc != dims:
            raise AssertionError(f"Smith form {dims} and truncation {trunc} disagree")
    return GluedHom(dims, trunc, (C.rank0, C.rank1))


def hom_cohomology(X: LocalSystem, Y: LocalSystem, cross_check: bool = True, W: int = 4) -> tuple:
    """(dim H^0, dim H^1) of the glued Hom complex."""
    return hom_cohomology_full(X, Y, cross_check, W).dims


def hom_table(objs: Sequence[LocalSystem], cross_check: bool = True, W: int = 4) -> list[list[tuple]]:
    return [[hom_cohomology(X, Y, cross_check, W) for Y in objs] for X in objs]


# ---------------------------------------------------------------------------
# itinerary helpers


def arc_between_tails(G: RibbonGraph, t1: int, t2: int, name: str = "") -> CurveSpec:
    """Shortest arc from tail vertex t1 to tail vertex t2 through inner vertices."""
    h1 = G.alpha[G.vertices[t1][0]]
    h2 = G.alpha[G.vertices[t2][0]]
    start, goal = G.vertex_of[h1], G.vertex_of[h2]
    prev = {start: None}
    queue = [start]
    while queue:
        v = queue.pop(0)
        if v == goal:
            break
        for h in G.vertices[v]:
            if G.is_tail_edge(h):
                continue
            w = G.vertex_of[G.alpha[h]]
            if w not in prev:
                prev[w] = (v, h)
                queue.append(w)
    if goal not in prev:
        raise ItineraryError("tails are not connected through inner vertices")
    path = []
    v = goal
    while prev[v] is not None:
        u, h = prev[v]
        path.append((u, h))
        v = u
    path.reverse()
    it = []
    entry = h1
    for u, h in path:
        it.append((u, entry, h))
        entry = G.alpha[h]
    it.append((goal, entry, h2))
    return CurveSpec("arc", tuple(it), 1, name)


def annulus_wrapped_arc(n: int, name: str = "") -> CurveSpec:
    """On the affine-line graph: from the open end, n times around the loop, back out."""
    if n < 1:
        raise ValueError("n >= 1")
    it = [(0, 0, 1)] + [(0, 2, 1)] * (n - 1) + [(0, 2, 0)]
    return CurveSpec("arc", tuple(it), 1, name or f"arc{n}")


def annulus_loop(lam, wraps: int = 1, name: str = "") -> CurveSpec:
    """On the affine-line graph: closed curve around the loop with monodromy lam."""
    return CurveSpec("closed", tuple([(0, 2, 1)] * wraps), lam, name or f"loop({lam})")


# ---------------------------------------------------------------------------
# invariance checks


def relabel_curve(c: CurveSpec, perm: dict, G: RibbonGraph) -> CurveSpec:
    """Image of a curve under a half-edge automorphism of G."""
    it = tuple((G.vertex_of[perm[a]], perm[a], perm[b]) for _, a, b in c.itinerary)
    return CurveSpec(c.kind, it, c.monodromy, c.name)


@dataclass
class FlipReport:
    table_before: list
    table_after: list
    cells: list  # (i, j, before, after, equal)

    @property
    def equal(self) -> bool:
        return all(c[-1] for c in self.cells)


def flip_compare(G: RibbonGraph, h: int, matched: Sequence[tuple], field: Field = QQ) -> FlipReport:
    """Hom tables of matched curve pairs on G and on flip(G, h)."""
    G2 = flip_edge(G, h)
    A = [compile_curve(G, a, field) for a, _ in matched]
    B = [compile_curve(G2, b, field) for _, b in matched]
    ta, tb = hom_table(A), hom_table(B)
    cells = [(i, j, ta[i][j], tb[i][j], ta[i][j] == tb[i][j])
             for i in range(len(A)) for j in range(len(A))]
    return FlipReport(ta, tb, cells)


def monodromy_gauge_check(G: RibbonGraph, c: CurveSpec, tests: Sequence[LocalSystem],
                          placements: Sequence[dict], field: Field = QQ) -> bool:
    """Different placements of the same total monodromy give equal Hom rows and End."""
    if c.kind != "closed":
        raise ValueError("gauge check needs a closed curve")
    rows = []
    for pl in placements:
        X = compile_curve(G, c, field, monodromy_at=pl)
        rows.append((hom_cohomology(X, X), tuple(hom_cohomology(X, T) for T in tests),
                     tuple(hom_cohomology(T, X) for T in tests)))
    return all(r == rows[0] for r in rows)


# ---------------------------------------------------------------------------
# k[x] oracle for the annulus


def _companion(g: Poly) -> list[list]:
    """Matrix of multiplication by x on k[x]/(g), g monic after scaling."""
    F = g.field
    cs = [c / g.coeffs[-1] for c in g.coeffs]
    d = len(cs) - 1
    m = [[F(0)] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = F(1)
    for i in range(d):
        m[i][d - 1] = -cs[i]
    return m


def kx_ext_dims(f: Poly, g: Poly) -> tuple:
    """(dim Hom, dim Ext^1) over k[x] from k[x]/(f) to k[x]/(g).

    Hom is the kernel of f acting on k[x]/(g) and Ext^1 its cokernel, so both
    have the same dimension for finite-length modules.
    """
    F = f.field
    C = _companion(g)
    d = len(C)
    if d == 0:
        return (0, 0)
    acc = [[F(0)] * d for _ in range(d)]
    power = [[F(int(i == j)) for j in range(d)] for i in range(d)]
    for c in f.coeffs:
        acc = [[acc[i][j] + c * power[i][j] for j in range(d)] for i in range(d)]
        power = [[sum((power[i][k] * C[k][j] for k in range(d)), F(0)) for j in range(d)] for i in range(d)]
    _, r, _, _ = rref(acc, F)
    return (d - r, d - r)


def skyscraper_module(c: CurveSpec, field: Field = QQ) -> Poly:
    """Annulus dictionary: the n-wrapped arc is k[x]/x^n, the once-wrapped lambda-curve k[x]/(x - lambda)."""
    if c.kind == "arc":
        n = len(c.itinerary) - 1
        return Poly.monomial(field, 1, n)
    if len(c.itinerary) != 1:
        raise ValueError("only once-wrapped closed curves have a skyscraper model here")
    return Poly(field, [-field(c.monodromy), 1])
