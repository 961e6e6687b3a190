"""Quiver presentations of 2-periodic dg categories and their strict colimits.

A presentation has objects, generators with parity, a differential on the
generators, and optional relations.  Morphisms are k-linear combinations of
paths; a path is stored as (source, target, generators in application order),
so (f, g) means g after f.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .exact_linalg import QQ, Field, rank_sparse


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    src: str
    tgt: str
    parity: int


def identity_path(x: str) -> tuple:
    return (x, x, ())


def gen_path(g: Generator) -> tuple:
    return (g.src, g.tgt, (g.name,))


def _add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + v * scale
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _compose(after: dict, first: dict) -> dict:
    """after o first, for linear combinations of paths."""
    out: dict = {}
    for (s1, t1, g1), c1 in first.items():
        for (s2, t2, g2), c2 in after.items():
            if t1 != s2:
                continue
            key = (s1, t2, g1 + g2)
            nv = out.get(key, 0) + c1 * c2
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


@dataclass(frozen=True)
class Equivalence:
    x: str
    y: str
    s: str
    t: str
    eta: str
    theta: str


@dataclass
class DgQuiver:
    objects: tuple
    generators: dict  # name -> Generator
    differential: dict  # name -> {path: coeff}; missing means closed
    relations: list = dc_field(default_factory=list)  # each a {path: coeff} set to zero
    equivalences: list = dc_field(default_factory=list)
    field: Field = QQ
    name: str = ""

    def __post_init__(self):
        self.objects = tuple(self.objects)
        for g in self.generators.values():
            if g.src not in self.objects or g.tgt not in self.objects:
                raise ValueError(f"generator {g.name} has unknown endpoints")
            if g.parity not in (0, 1):
                raise ValueError("parity must be 0 or 1")
        for name, comb in self.differential.items():
            g = self.generators[name]
            for (s, t, gens), c in comb.items():
                if (s, t) != (g.src, g.tgt):
                    raise ValueError(f"d({name}) has a term with the wrong endpoints")
                if self.path_parity(gens) != (g.parity + 1) % 2:
                    raise ValueError(f"d({name}) must have the opposite parity")
                self._check_path((s, t, gens))
        for r in self.relations:
            for p in r:
                self._check_path(p)

    def _check_path(self, p: tuple):
        s, t, gens = p
        cur = s
        for gname in gens:
            g = self.generators[gname]
            if g.src != cur:
                raise ValueError(f"path {gens} is not composable")
            cur = g.tgt
        if cur != t:
            raise ValueError(f"path {gens} ends at the wrong object")

    # paths and the differential

    def path_parity(self, gens: Sequence[str]) -> int:
        return sum(self.generators[g].parity for g in gens) % 2

    def d_generator(self, name: str) -> dict:
        return dict(self.differential.get(name, {}))

    def d_path(self, p: tuple) -> dict:
        """Leibniz: d(g o f) = dg o f + (-1)^|g| g o df."""
        s, t, gens = p
        out: dict = {}
        for i, gname in enumerate(gens):
            sign = -1 if self.path_parity(gens[i + 1:]) else 1
            before = {(s, self.generators[gname].src, gens[:i]): 1} if i else {identity_path(s): 1}
            after_src = self.generators[gname].tgt
            after = {(after_src, t, gens[i + 1:]): 1}
            term = _compose(after, _compose(self.d_generator(gname), before))
            out = _add(out, term, sign)
        return out

    def d(self, comb: dict) -> dict:
        out: dict = {}
        for p, c in comb.items():
            out = _add(out, self.d_path(p), c)
        return out

    def paths(self, src: str, tgt: str, max_len: int, parity: int | None = None) -> list[tuple]:
        out = []
        out_gens: dict = {}
        for g in sorted(self.generators.values()):
            out_gens.setdefault(g.src, []).append(g)
        frontier = [(src, ())]
        for length in range(max_len + 1):
            nxt = []
            for cur, gens in frontier:
                if cur == tgt and (parity is None or self.path_parity(gens) == parity):
                    out.append((src, tgt, gens))
                if length < max_len:
                    for g in out_gens.get(cur, []):
                        nxt.append((g.tgt, gens + (g.name,)))
            frontier = nxt
        return out

    def ideal_span(self, src: str, tgt: str, max_len: int) -> list[dict]:
        """Elements q o r o p of the relation ideal with all terms of length <= max_len."""
        out = []
        for r in self.relations:
            if not r:
                continue
            rl = max(len(p[2]) for p in r)
            (rs, rt, _) = next(iter(r))
            for p in self.paths(src, rs, max_len - rl):
                for q in self.paths(rt, tgt, max_len - rl - len(p[2])):
                    out.append(_compose({q: 1}, _compose(r, {p: 1})))
        return out

    def to_json(self) -> dict:
        def comb_json(c):
            return [[self.field.to_json(self.field(v)), list(p[2]) if p[2] else ["id", p[0]]]
                    for p, v in sorted(c.items(), key=lambda kv: (len(kv[0][2]), kv[0]))]

        return {
            "objects": list(self.objects),
            "generators": [{"name": g.name, "src": g.src, "tgt": g.tgt, "parity": g.parity}
                           for g in sorted(self.generators.values())],
            "differentials": {k: comb_json(v) for k, v in sorted(self.differential.items()) if v},
            "relations": [comb_json(r) for r in self.relations],
        }

    @classmethod
    def from_json(cls, data: dict, field: Field = QQ) -> "DgQuiver":
        gens = {g["name"]: Generator(g["name"], str(g["src"]), str(g["tgt"]), int(g["parity"]))
                for g in data["generators"]}

        def path(p):
            if len(p) == 2 and p[0] == "id":
                return identity_path(str(p[1]))
            if not p or any(x not in gens for x in p):
                raise ValueError(f"bad path {p}")
            return (gens[p[0]].src, gens[p[-1]].tgt, tuple(p))

        def comb(terms):
            out: dict = {}
            for c, p in terms:
                out = _add(out, {path(p): field(c)})
            return out

        diff = {k: comb(v) for k, v in data.get("differentials", {}).items()}
        if any(k not in gens for k in diff):
            raise ValueError("differential of an unknown generator")
        rels = [comb(r) for r in data.get("relations", [])]
        return cls(tuple(str(o) for o in data["objects"]), gens, diff, rels, field=field)

    def summary(self) -> dict:
        return {"objects": len(self.objects), "generators": len(self.generators),
                "even": sum(1 for g in self.generators.values() if g.parity == 0),
                "odd": sum(1 for g in self.generators.values() if g.parity == 1),
                "nonzero_differentials": sum(1 for v in self.differential.values() if v),
                "relations": len(self.relations)}


def in_span(target: dict, spanning: Sequence[dict], field: Field = QQ) -> bool:
    """Is target a linear combination of the spanning combinations?"""
    keys: dict = {}

    def row(c):
        return {keys.setdefault(p, len(keys)): field(v) for p, v in c.items() if v}

    rows = [row(c) for c in spanning]
    t = row(target)
    if not t:
        return True
    r1 = rank_sparse(rows, field)
    r2 = rank_sparse(rows + [t], field)
    return r1 == r2


def in_ideal(Q: DgQuiver, comb: dict, L: int) -> bool:
    if not comb:
        return True
    (s, t, _) = next(iter(comb))
    return in_span(comb, Q.ideal_span(s, t, L), Q.field)


def check_d_squared(Q: DgQuiver, L: int = 6) -> bool:
    """d(d(g)) = 0 for every generator and d(r) in the ideal for every relation, up to length L."""
    for name in Q.generators:
        dd = Q.d(Q.d_generator(name))
        if dd and not in_ideal(Q, dd, L):
            return False
    for r in Q.relations:
        dr = Q.d(r)
        if dr and not in_ideal(Q, dr, L):
            return False
    return True


def is_exact(Q: DgQuiver, comb: dict, L: int = 6) -> bool:
    """Is comb = d(w) + (ideal element) with every path of length <= L?"""
    if not comb:
        return True
    (s, t, gens) = next(iter(comb))
    par = Q.path_parity(gens)
    if Q.d(comb) and not in_ideal(Q, Q.d(comb), L):
        return False
    spanning = []
    for p in Q.paths(s, t, L, (par + 1) % 2):
        dp = Q.d_path(p)
        if all(len(x[2]) <= L for x in dp):
            spanning.append(dp)
    spanning += Q.ideal_span(s, t, L)
    return in_span(comb, spanning, Q.field)


def path_counts(Q: DgQuiver, L: int) -> dict:
    """(src, tgt, parity) -> number of paths of length <= L."""
    out = {}
    for s in Q.objects:
        for t in Q.objects:
            for par in (0, 1):
                out[(s, t, par)] = len(Q.paths(s, t, L, par))
    return out


# ---------------------------------------------------------------------------
# the basic presentations


def build_A(n: int, field: Field = QQ) -> DgQuiver:
    """Path category of 1 -> 2 -> ... -> n, concentrated in even degree."""
    if n < 1:
        raise ValueError("n >= 1")
    objs = tuple(str(i) for i in range(1, n + 1))
    gens = {f"a{i}": Generator(f"a{i}", str(i), str(i + 1), 0) for i in range(1, n)}
    return DgQuiver(objs, gens, {}, field=field, name=f"A{n}")


def build_F(field: Field = QQ) -> DgQuiver:
    """Three objects and closed odd generators around the triangle."""
    gens = {"f1": Generator("f1", "0", "1", 1), "f2": Generator("f2", "1", "2", 1),
            "f3": Generator("f3", "2", "0", 1)}
    return DgQuiver(("0", "1", "2"), gens, {}, field=field, name="F")


def build_D(field: Field = QQ) -> DgQuiver:
    """F with odd homotopies h21, h32, h13 and the three unit relations.

    d(h21) = f2 f1, d(h32) = f3 f2, d(h13) = f1 f3;
    h32 f1 + f3 h21 = id_0, h13 f2 + f1 h32 = id_1, h21 f3 + f2 h13 = id_2.
    """
    F = build_F(field)
    gens = dict(F.generators)
    gens["h21"] = Generator("h21", "0", "2", 1)
    gens["h32"] = Generator("h32", "1", "0", 1)
    gens["h13"] = Generator("h13", "2", "1", 1)
    diff = {
        "h21": {("0", "2", ("f1", "f2")): 1},
        "h32": {("1", "0", ("f2", "f3")): 1},
        "h13": {("2", "1", ("f3", "f1")): 1},
    }
    rels = [
        {("0", "0", ("f1", "h32")): 1, ("0", "0", ("h21", "f3")): 1, identity_path("0"): -1},
        {("1", "1", ("f2", "h13")): 1, ("1", "1", ("h32", "f1")): 1, identity_path("1"): -1},
        {("2", "2", ("f3", "h21")): 1, ("2", "2", ("h13", "f2")): 1, identity_path("2"): -1},
    ]
    return DgQuiver(("0", "1", "2"), gens, diff, rels, field=field, name="D")


def embeds_F_in_D(field: Field = QQ) -> bool:
    """F maps into D generator-to-generator, preserving endpoints, parity and closedness."""
    F, D = build_F(field), build_D(field)
    for name, g in F.generators.items():
        h = D.generators.get(name)
        if h is None or (h.src, h.tgt, h.parity) != (g.src, g.tgt, g.parity) or D.d_generator(name):
            return False
    return True


# ---------------------------------------------------------------------------
# colimits, equivalences, simplification


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        if x not in self.parent:
            raise ValueError(f"unknown item {x} in an identification")
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def colimit(quivers: Sequence[DgQuiver], object_ids: Iterable[tuple] = (),
            generator_ids: Iterable[tuple] = (), name: str = "") -> DgQuiver:
    """Disjoint union followed by the given identifications.

    Identifications are pairs ((i, label), (j, label)).  Objects are renamed
    "i.label" and generators "i.name", except that a class keeps its label
    unchanged when the label is unique across all inputs.
    """
    field = quivers[0].field
    all_objs = [(i, x) for i, Q in enumerate(quivers) for x in Q.objects]
    all_gens = [(i, g) for i, Q in enumerate(quivers) for g in Q.generators]
    uo = _UnionFind(all_objs)
    for a, b in object_ids:
        uo.union(tuple(a), tuple(b))
    ug = _UnionFind(all_gens)
    for a, b in generator_ids:
        ug.union(tuple(a), tuple(b))

    def pretty(classes):
        label_count: dict = {}
        for rep in classes:
            label_count[rep[1]] = label_count.get(rep[1], 0) + 1
        return {rep: (rep[1] if label_count[rep[1]] == 1 else f"{rep[0]}.{rep[1]}") for rep in classes}

    obj_reps = sorted({uo.find(x) for x in all_objs})
    oname = pretty(obj_reps)
    gen_reps = sorted({ug.find(x) for x in all_gens})
    gname = pretty(gen_reps)

    def O(i, x):
        return oname[uo.find((i, x))]

    def Gn(i, g):
        return gname[ug.find((i, g))]

    gens = {}
    for i, g in all_gens:
        G = quivers[i].generators[g]
        new = Generator(Gn(i, g), O(i, G.src), O(i, G.tgt), G.parity)
        old = gens.get(new.name)
        if old is not None and old != new:
            raise ValueError(f"ill-typed identification of generator {g}")
        gens[new.name] = new

    def rename(i, comb):
        return {(O(i, s), O(i, t), tuple(Gn(i, x) for x in gs)): c for (s, t, gs), c in comb.items()}

    diff: dict = {}
    for i, g in all_gens:
        d = rename(i, quivers[i].d_generator(g))
        key = Gn(i, g)
        if key in diff and diff[key] != d:
            raise ValueError(f"identified generators {key} have different differentials")
        diff[key] = d
    rels = []
    for i, Q in enumerate(quivers):
        for r in Q.relations:
            rr = rename(i, r)
            if rr not in rels:
                rels.append(rr)
    eqs = []
    for i, Q in enumerate(quivers):
        for e in Q.equivalences:
            eqs.append(Equivalence(O(i, e.x), O(i, e.y), Gn(i, e.s), Gn(i, e.t), Gn(i, e.eta), Gn(i, e.theta)))
    objs = tuple(oname[r] for r in obj_reps)
    return DgQuiver(objs, gens, {k: v for k, v in diff.items() if v}, rels, eqs, field, name)


def adjoin_equivalence(Q: DgQuiver, x: str, y: str, parity: int = 0, tag: str = "") -> DgQuiver:
    """Adjoin closed s: x -> y, t: y -> x of the given parity and odd eta, theta with
    d(eta) = t s - id_x and d(theta) = s t - id_y.
    """
    if x not in Q.objects or y not in Q.objects:
        raise ValueError("unknown object")
    if x == y and parity == 0:
        raise ValueError("an even self-equivalence adds nothing")
    tag = tag or f"{x}{y}"
    s, t, eta, theta = f"s_{tag}", f"t_{tag}", f"eta_{tag}", f"theta_{tag}"
    for nm in (s, t, eta, theta):
        if nm in Q.generators:
            raise ValueError(f"generator {nm} already exists")
    gens = dict(Q.generators)
    gens[s] = Generator(s, x, y, parity)
    gens[t] = Generator(t, y, x, parity)
    # t s has parity 2*parity = 0, so eta and theta are odd
    gens[eta] = Generator(eta, x, x, 1)
    gens[theta] = Generator(theta, y, y, 1)
    diff = dict(Q.differential)
    diff[eta] = {(x, x, (s, t)): 1, identity_path(x): -1}
    diff[theta] = {(y, y, (t, s)): 1, identity_path(y): -1}
    eqs = list(Q.equivalences) + [Equivalence(x, y, s, t, eta, theta)]
    return DgQuiver(Q.objects, gens, diff, list(Q.relations), eqs, Q.field, Q.name)


def _occurs(Q: DgQuiver, name: str, skip: Iterable[str] = ()) -> bool:
    skip = set(skip)
    for k, comb in Q.differential.items():
        if k in skip:
            continue
        if any(name in p[2] for p in comb):
            return True
    return any(name in p[2] for r in Q.relations for p in r)


def _substitute(Q: DgQuiver, comb: dict, y: str, repl: dict) -> dict:
    """Replace every occurrence of generator y in comb by the combination repl."""
    out: dict = {}
    for (s, t, gens), c in comb.items():
        terms = {identity_path(s): 1}
        for g in gens:
            G = Q.generators[g]
            piece = repl if g == y else {(G.src, G.tgt, (g,)): 1}
            terms = _compose(piece, terms)
        out = _add(out, terms, c)
    return out


def elimination_candidates(Q: DgQuiver) -> list[tuple]:
    """Pairs (x, y, coeff) with d(x) = coeff*y + r, y a generator absent from r,
    and x absent from every other differential and relation.
    """
    out = []
    for x in sorted(Q.generators):
        dx = Q.d_generator(x)
        if _occurs(Q, x, skip=[x]):
            continue
        for (s, t, gens), c in sorted(dx.items()):
            if len(gens) != 1:
                continue
            y = gens[0]
            if y == x:
                continue
            rest = {p: v for p, v in dx.items() if p != (s, t, gens)}
            if any(y in p[2] for p in rest):
                continue
            out.append((x, y, c))
    return out


def eliminate_pair(Q: DgQuiver, x: str, y: str) -> DgQuiver:
    dx = Q.d_generator(x)
    G = Q.generators[y]
    c = dx[(G.src, G.tgt, (y,))]
    rest = {p: v for p, v in dx.items() if p != (G.src, G.tgt, (y,))}
    repl = {p: -Q.field(v) / Q.field(c) for p, v in rest.items()}
    gens = {k: v for k, v in Q.generators.items() if k not in (x, y)}
    diff = {}
    for k, comb in Q.differential.items():
        if k in (x, y):
            continue
        new = _substitute(Q, comb, y, repl)
        if new:
            diff[k] = new
    rels = [r2 for r2 in (_substitute(Q, r, y, repl) for r in Q.relations) if r2]
    eqs = [e for e in Q.equivalences if not {e.s, e.t, e.eta, e.theta} & {x, y}]
    return DgQuiver(Q.objects, gens, diff, rels, eqs, Q.field, Q.name)


def _collapse_equivalence(Q: DgQuiver, e: Equivalence) -> DgQuiver | None:
    """Drop an object joined to the rest only through the equivalence e."""
    own = {e.s, e.t, e.eta, e.theta}
    for victim in (e.x, e.y):
        touching = [g for g in Q.generators.values() if victim in (g.src, g.tgt) and g.name not in own]
        if touching or any(victim in (p[0], p[1]) for r in Q.relations for p in r):
            continue
        if victim == e.x == e.y:
            continue
        gens = {k: v for k, v in Q.generators.items() if k not in own}
        diff = {k: v for k, v in Q.differential.items() if k not in own}
        eqs = [f for f in Q.equivalences if f != e]
        return DgQuiver(tuple(o for o in Q.objects if o != victim), gens, diff, list(Q.relations), eqs,
                        Q.field, Q.name)
    return None


def simplify(Q: DgQuiver, rng: random.Random | None = None, log: list | None = None) -> DgQuiver:
    """Eliminate contractible generator pairs and collapse free equivalence ends until stable.

    With ``rng`` the order of eliminations is randomized.
    """
    while True:
        done = False
        for e in (rng.sample(Q.equivalences, len(Q.equivalences)) if rng else list(Q.equivalences)):
            R = _collapse_equivalence(Q, e)
            if R is not None:
                if log is not None:
                    log.append(f"collapsed equivalence {e.x} ~ {e.y}")
                Q = R
                done = True
                break
        if done:
            continue
        cands = elimination_candidates(Q)
        if not cands:
            return Q
        x, y, _ = rng.choice(cands) if rng else cands[0]
        if log is not None:
            log.append(f"eliminated ({x}, {y})")
        Q = eliminate_pair(Q, x, y)


# ---------------------------------------------------------------------------
# isomorphism of presentations


def _signature(Q: DgQuiver, comb: dict, gmap: dict, omap: dict) -> dict:
    return {(omap[s], omap[t], tuple(gmap[g] for g in gens)): c for (s, t, gens), c in comb.items()}


def find_isomorphism(P: DgQuiver, Q: DgQuiver):
    """Object and generator bijections carrying P onto Q, or None."""
    if len(P.objects) != len(Q.objects) or len(P.generators) != len(Q.generators):
        return None
    if len(P.relations) != len(Q.relations):
        return None
    pg = sorted(P.generators.values())
    qg = sorted(Q.generators.values())

    def obj_maps():
        for perm in itertools.permutations(Q.objects):
            yield dict(zip(P.objects, perm))

    for omap in obj_maps():
        # candidate lists per generator
        cands = []
        ok = True
        for g in pg:
            c = [h for h in qg if (h.src, h.tgt, h.parity) == (omap[g.src], omap[g.tgt], g.parity)]
            if not c:
                ok = False
                break
            cands.append(c)
        if not ok:
            continue
        used: set = set()
        gmap: dict = {}

        def bt(k):
            if k == len(pg):
                for g in pg:
                    if _signature(P, P.d_generator(g.name), gmap, omap) != Q.d_generator(gmap[g.name]):
                        return False
                rp = [_signature(P, r, gmap, omap) for r in P.relations]
                return all(r in Q.relations for r in rp)
            for h in cands[k]:
                if h.name in used:
                    continue
                used.add(h.name)
                gmap[pg[k].name] = h.name
                if bt(k + 1):
                    return True
                used.discard(h.name)
                gmap.pop(pg[k].name, None)
            return False

        if bt(0):
            return omap, dict(gmap)
    return None


def is_isomorphic(P: DgQuiver, Q: DgQuiver) -> bool:
    return find_isomorphism(P, Q) is not None


# ---------------------------------------------------------------------------
# coSegal chains and the example recipes


def A_chain(n: int, field: Field = QQ) -> DgQuiver:
    """n-1 copies of A^2 glued target-to-source along A^1's."""
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return build_A(1, field)
    pieces = [build_A(2, field) for _ in range(n - 1)]
    ids = [((i, "2"), (i + 1, "1")) for i in range(n - 2)]
    return colimit(pieces, ids, name=f"chain{n}")


def cosegal_check(n: int, field: Field = QQ) -> bool:
    C = A_chain(n, field)
    A = build_A(n, field)
    return not C.differential and is_isomorphic(C, A)


def loop_quiver(field: Field = QQ) -> DgQuiver:
    return DgQuiver(("*",), {"x": Generator("x", "*", "*", 0)}, {}, field=field, name="loop")


def kronecker_quiver(field: Field = QQ) -> DgQuiver:
    gens = {"a": Generator("a", "A", "B", 0), "b": Generator("b", "A", "B", 0)}
    return DgQuiver(("A", "B"), gens, {}, field=field, name="Kronecker")


@dataclass
class Recipe:
    presentation: DgQuiver
    choices: list  # one line per gluing step


def recipe_affine_line(field: Field = QQ) -> Recipe:
    """A^2 glued to A^1 along both end objects."""
    Q = colimit([build_A(2, field), build_A(1, field)], [((0, "1"), (1, "1")), ((0, "2"), (1, "1"))],
                name="affine_line")
    log = ["strict pushout along A1+A1 -> A2 (object inclusion, a cofibration)"]
    return Recipe(simplify(Q, log=log), log)


def recipe_projective_line(field: Field = QQ) -> Recipe:
    """Two A^2 sharing the source object, then the targets identified."""
    Q = colimit([build_A(2, field), build_A(2, field), build_A(1, field)],
                [((0, "1"), (1, "1")), ((0, "2"), (2, "1")), ((1, "2"), (2, "1"))],
                name="projective_line")
    log = ["strict pushout along A1 -> A2 (shared source)",
           "strict pushout along A1+A1 -> A2+A2 (targets identified)"]
    return Recipe(simplify(Q, log=log), log)


def two_triangles(opposite: bool, field: Field = QQ) -> DgQuiver:
    """Two copies of D on objects A = 0, B = 1 and C = 2 (C' = 2' when not opposite).

    Same direction: the copies share A and B.  Opposite direction: the second
    copy is glued with 0' = A, 1' = C, 2' = B, so all three objects are shared.
    """
    D1, D2 = build_D(field), build_D(field)
    if opposite:
        ids = [((0, "0"), (1, "0")), ((0, "1"), (1, "2")), ((0, "2"), (1, "1"))]
    else:
        ids = [((0, "0"), (1, "0")), ((0, "1"), (1, "1"))]
    return colimit([D1, D2], ids, name="two_triangles")


def recipe_sphere3(field: Field = QQ) -> Recipe:
    Q = two_triangles(True, field)
    log = ["strict pushout of two D's along their three objects (opposite orientation)"]
    return Recipe(simplify(Q, log=log), log)


def recipe_torus1(field: Field = QQ) -> Recipe:
    Q = two_triangles(False, field)
    # the cone objects 0.2 and 1.2 of the two triangles
    c1, c2 = [o for o in Q.objects if o.endswith("2")]
    Q = adjoin_equivalence(Q, c1, c2, 0, tag="C")
    log = ["strict pushout of two D's along A and B (same orientation)",
           f"adjoined an even equivalence {c1} ~ {c2} (cone objects identified)"]
    return Recipe(simplify(Q, log=log), log)


def recipe_polygon(n: int, field: Field = QQ) -> Recipe:
    Q = A_chain(n, field)
    log = [f"strict pushouts of {max(n - 1, 0)} A2's along A1's"]
    return Recipe(simplify(Q, log=log), log)


def sphere3_loops(Q: DgQuiver) -> dict:
    """x_B = beta' beta and y_B = alpha alpha' at B, and both products.

    In the glued presentation: alpha = f1 (A -> B), beta = f2 (B -> C) from the
    first copy, alpha' = f3 (B -> A), beta' = f2 (C -> B) from the second.
    """
    g = {k: Q.generators[k] for k in Q.generators}

    def find(copy, name):
        for k in (f"{copy}.{name}", name):
            if k in g:
                return k
        raise KeyError(name)

    f1, f2 = find(0, "f1"), find(0, "f2")
    f3p, f2p = find(1, "f3"), find(1, "f2")
    B = g[f1].tgt
    x = (B, B, (f2, f2p))
    y = (B, B, (f3p, f1))
    return {"x_B": {x: 1}, "y_B": {y: 1},
            "x_B y_B": {(B, B, y[2] + x[2]): 1}, "y_B x_B": {(B, B, x[2] + y[2]): 1}}


RECIPES = {
    "affine_line": recipe_affine_line,
    "projective_line": recipe_projective_line,
    "torus1": recipe_torus1,
    "sphere3": recipe_sphere3,
}


def recipe(name: str, field: Field = QQ) -> Recipe:
    if name.startswith("polygon(") and name.endswith(")"):
        return recipe_polygon(int(name[len("polygon("):-1]), field)
    if name not in RECIPES:
        raise ValueError(f"unknown example {name!r}")
    return RECIPES[name](field)
