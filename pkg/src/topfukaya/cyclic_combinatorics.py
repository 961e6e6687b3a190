"""Cyclic ordinals, degree-1 circle maps, paths in the circular quiver, cyclic nerves.

A map <m> -> <n> is stored by a lift v[0..m]; extending by
v[i + m + 1] = v[i] + n + 1 gives a non-decreasing map Z -> Z.  The canonical
lift has 0 <= v[0] <= n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class CyclicOrdinal:
    """The cyclic ordinal <size - 1>.

    ``level`` counts dualizations mod 2.  It fixes how labels of the dual are
    read: at level 0 the dual element y is the interstice (y, y+1), at level 1
    it is the interstice (y-1, y).  This makes I** = I on the nose.
    """

    size: int
    labels: tuple | None = None
    level: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("cyclic ordinal must be nonempty")
        if self.labels is not None:
            if len(self.labels) != self.size or len(set(self.labels)) != self.size:
                raise ValueError("labels must be distinct and match the size")
        object.__setattr__(self, "level", self.level % 2)

    @property
    def n(self) -> int:
        return self.size - 1

    def same_shape(self, other: "CyclicOrdinal") -> bool:
        return self.size == other.size and self.level == other.level


def ordinal(n: int, level: int = 0) -> CyclicOrdinal:
    """<n>, with n+1 elements."""
    return CyclicOrdinal(n + 1, None, level)


@dataclass(frozen=True)
class CyclicMap:
    source: CyclicOrdinal
    target: CyclicOrdinal
    values: tuple

    def __post_init__(self):
        m1, n1 = self.source.size, self.target.size
        v = tuple(int(x) for x in self.values)
        if len(v) != m1:
            raise ValueError("lift length must equal the source size")
        shift = (v[0] // n1) * n1
        v = tuple(x - shift for x in v)
        if any(b < a for a, b in zip(v, v[1:])) or v[-1] > v[0] + n1:
            raise ValueError(f"{v} is not a degree-1 monotone lift")
        object.__setattr__(self, "values", v)

    def lift(self, x: int) -> int:
        """The lift F: Z -> Z."""
        m1, n1 = self.source.size, self.target.size
        q, r = divmod(x, m1)
        return self.values[r] + q * n1

    def __call__(self, x: int) -> int:
        return self.lift(x) % self.target.size

    def galois(self, y: int) -> int:
        """max{x : F(x) <= y}"""
        m1, n1 = self.source.size, self.target.size
        # F(x + m1) = F(x) + n1, so search one period
        best = None
        for r in range(m1):
            # largest q with values[r] + q*n1 <= y
            q = (y - self.values[r]) // n1
            x = r + q * m1
            if best is None or x > best:
                best = x
        return best


def identity_map(I: CyclicOrdinal) -> CyclicMap:
    return CyclicMap(I, I, tuple(range(I.size)))


def rotation(n: int) -> CyclicMap:
    """t_n: i -> i + 1 on <n>."""
    I = ordinal(n)
    return CyclicMap(I, I, tuple(range(1, n + 2)))


def compose_cyclic(g: CyclicMap, f: CyclicMap) -> CyclicMap:
    if f.target != g.source:
        raise ValueError("cannot compose: target(f) != source(g)")
    return CyclicMap(f.source, g.target, tuple(g.lift(f.lift(x)) for x in range(f.source.size)))


def dual_ordinal(I: CyclicOrdinal) -> CyclicOrdinal:
    return CyclicOrdinal(I.size, None, I.level + 1)


def dual_map(f: CyclicMap) -> CyclicMap:
    """f*: J* -> I*, sending an interstice of J to the interstice of I it pulls back to."""
    cI, cJ = f.source.level, f.target.level
    vals = tuple(f.galois(y - cJ) + cI for y in range(f.target.size))
    return CyclicMap(dual_ordinal(f.target), dual_ordinal(f.source), vals)


def all_maps(src: CyclicOrdinal, tgt: CyclicOrdinal) -> list[CyclicMap]:
    """Every degree-1 map, by brute force over lifts."""
    m1, n1 = src.size, tgt.size
    out = []
    for v0 in range(n1):
        for rest in itertools.combinations_with_replacement(range(v0, v0 + n1 + 1), m1 - 1):
            out.append(CyclicMap(src, tgt, (v0,) + rest))
    return out


def collapse_map(size: int, p: int, image_of_p: int = 0, level: int = 0) -> CyclicMap:
    """Degree-1 surjection <size-1> -> <1> sending p to ``image_of_p`` and the rest to the other point."""
    vals = []
    for x in range(size):
        want = image_of_p if x == p else 1 - image_of_p
        if not vals:
            vals.append(want)
        else:
            prev = vals[-1]
            vals.append(prev + ((want - prev) % 2))
    return CyclicMap(CyclicOrdinal(size, None, level), CyclicOrdinal(2, None, level), tuple(vals))


@dataclass(frozen=True, order=True)
class QPath:
    """The path in Q^n starting at ``start`` of length ``length``."""

    n: int
    start: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("path length must be non-negative")
        object.__setattr__(self, "start", self.start % (self.n + 1))

    @property
    def end(self) -> int:
        return (self.start + self.length) % (self.n + 1)

    @property
    def winding(self) -> int:
        return self.length // (self.n + 1)

    def then(self, other: "QPath") -> "QPath":
        """Concatenation: first self, then other."""
        if other.n != self.n or other.start != self.end:
            raise ValueError("paths are not composable")
        return QPath(self.n, self.start, self.length + other.length)


def induced_path_map(f: CyclicMap, p: QPath) -> QPath:
    if p.n + 1 != f.source.size:
        raise ValueError("path does not live in the source quiver")
    a = f.lift(p.start)
    b = f.lift(p.start + p.length)
    return QPath(f.target.size - 1, a, b - a)


# ---------------------------------------------------------------------------
# finite categories and cyclic nerves


@dataclass(frozen=True)
class FiniteCategory:
    """Objects, named morphisms with endpoints, and a composition table.

    ``compose[(g, f)]`` is g after f.
    """

    objects: tuple
    morphisms: dict  # name -> (src, tgt)
    identities: dict  # object -> name
    compose: dict

    def __post_init__(self):
        for x in self.objects:
            i = self.identities[x]
            if self.morphisms[i] != (x, x):
                raise ValueError("identity has wrong endpoints")
        for (g, f), h in self.compose.items():
            if self.morphisms[f][1] != self.morphisms[g][0]:
                raise ValueError("composition table entry for non-composable pair")
            if self.morphisms[h] != (self.morphisms[f][0], self.morphisms[g][1]):
                raise ValueError("composite has wrong endpoints")
        for f, (a, b) in self.morphisms.items():
            for g, (c, d) in self.morphisms.items():
                if c == b and (g, f) not in self.compose:
                    raise ValueError(f"missing composite {g}.{f}")
        for f, (a, b) in self.morphisms.items():
            if self.compose[(self.identities[b], f)] != f or self.compose[(f, self.identities[a])] != f:
                raise ValueError("identities are not neutral")
            for g, (c, d) in self.morphisms.items():
                if c != b:
                    continue
                for h, (e, _) in self.morphisms.items():
                    if e != d:
                        continue
                    if self.compose[(h, self.compose[(g, f)])] != self.compose[(self.compose[(h, g)], f)]:
                        raise ValueError("composition is not associative")

    def hom(self, a, b) -> list:
        return sorted(m for m, ends in self.morphisms.items() if ends == (a, b))

    def comp(self, g, f):
        return self.compose[(g, f)]

    @classmethod
    def from_json(cls, data: dict) -> "FiniteCategory":
        objects = tuple(data["objects"])
        morphisms = {m["name"]: (m["src"], m["tgt"]) for m in data["morphisms"]}
        identities = dict(data["identities"])
        compose = {(g, f): h for g, f, h in data["compose"]}
        return cls(objects, morphisms, identities, compose)


def poset_category(n: int) -> FiniteCategory:
    """The linear order 0 < 1 < ... < n as a category."""
    objs = tuple(range(n + 1))
    mors = {f"{a}{b}": (a, b) for a in objs for b in objs if a <= b}
    ids = {a: f"{a}{a}" for a in objs}
    comp = {}
    for g, (b, c) in mors.items():
        for f, (a, b2) in mors.items():
            if b2 == b:
                comp[(g, f)] = f"{a}{c}"
    return FiniteCategory(objs, mors, ids, comp)


def cyclic_group_category(k: int) -> FiniteCategory:
    mors = {f"g{i}": ("*", "*") for i in range(k)}
    comp = {(f"g{i}", f"g{j}"): f"g{(i + j) % k}" for i in range(k) for j in range(k)}
    return FiniteCategory(("*",), mors, {"*": "g0"}, comp)


def idempotent_arrow_category() -> FiniteCategory:
    """a has an idempotent e, one arrow p: a -> b with p e = p."""
    mors = {"1a": ("a", "a"), "e": ("a", "a"), "p": ("a", "b"), "1b": ("b", "b")}
    comp = {
        ("1a", "1a"): "1a", ("1a", "e"): "e", ("e", "1a"): "e", ("e", "e"): "e",
        ("p", "1a"): "p", ("p", "e"): "p", ("1b", "p"): "p", ("1b", "1b"): "1b",
    }
    return FiniteCategory(("a", "b"), mors, {"a": "1a", "b": "1b"}, comp)


class CyclicNerve:
    """NC_n(C): cyclic chains x_0 -> x_1 -> ... -> x_n -> x_0.

    An element is a tuple (g_0, ..., g_n) with g_k: x_k -> x_{k+1 mod n+1}.
    """

    def __init__(self, C: FiniteCategory):
        self.C = C

    def level(self, n: int) -> list[tuple]:
        C = self.C
        out = []

        def extend(chain, start):
            if len(chain) == n + 1:
                if C.morphisms[chain[-1]][1] == start:
                    out.append(tuple(chain))
                return
            cur = C.morphisms[chain[-1]][1]
            for m, (a, _) in sorted(C.morphisms.items()):
                if a == cur:
                    extend(chain + [m], start)

        for m, (a, _) in sorted(C.morphisms.items()):
            extend([m], a)
        return out

    def vertex(self, x: tuple, k: int):
        return self.C.morphisms[x[k]][0]

    def face(self, x: tuple, i: int) -> tuple:
        """Delete vertex x_i by composing the two arrows meeting there."""
        n = len(x) - 1
        if n == 0:
            raise ValueError("no faces at level 0")
        comp = self.C.comp
        if i == 0:
            return tuple(x[1:n]) + (comp(x[0], x[n]),)
        return tuple(x[: i - 1]) + (comp(x[i], x[i - 1]),) + tuple(x[i + 1:])

    def degeneracy(self, x: tuple, i: int) -> tuple:
        """Repeat vertex x_i with an identity."""
        obj = self.vertex(x, i)
        return tuple(x[:i]) + (self.C.identities[obj],) + tuple(x[i:])

    def rotation(self, x: tuple) -> tuple:
        return (x[-1],) + tuple(x[:-1])


# ---------------------------------------------------------------------------
# set-level 2-Segal membranes


@dataclass
class SimplicialData:
    """Levels X_0..X_N with face maps, enough to test membranes."""

    levels: dict  # k -> list of elements
    face: Callable  # (x, i) -> element one level down

    def restrict(self, x, level: int, vertices: Sequence[int]):
        """Restrict an element of X_level to the sub-simplex on ``vertices``."""
        keep = set(vertices)
        for i in range(level, -1, -1):
            if i not in keep:
                x = self.face(x, i)
        return x


def nerve_simplicial_data(C: FiniteCategory, N: int) -> SimplicialData:
    NC = CyclicNerve(C)
    return SimplicialData({k: NC.level(k) for k in range(N + 1)}, NC.face)


def validate_triangulation(n: int, T: Iterable[Sequence[int]]) -> list[tuple]:
    tris = sorted(tuple(sorted(t)) for t in T)
    if n < 2:
        raise ValueError("polygon needs at least 3 vertices")
    if len(tris) != n - 1:
        raise ValueError("a triangulation of P_{n+1} has n-1 triangles")
    diags = set()
    for t in tris:
        if len(set(t)) != 3 or not all(0 <= v <= n for v in t):
            raise ValueError(f"bad triangle {t}")
        for a, b in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2])):
            if b - a not in (1, n):
                diags.add((a, b))
    if len(diags) != n - 2:
        raise ValueError("wrong number of diagonals")
    for (a, b), (c, d) in itertools.combinations(sorted(diags), 2):
        if a < c < b < d or c < a < d < b:
            raise ValueError("crossing diagonals")
    edges = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2])):
            edges[e] = edges.get(e, 0) + 1
    for e, cnt in edges.items():
        if cnt > (2 if e in diags else 1):
            raise ValueError("triangles overlap")
    return tris


def membrane_set(X: SimplicialData, n: int, T: Iterable[Sequence[int]]) -> list[tuple]:
    """Limit over the simplices of the triangulation: compatible 2-simplices."""
    tris = validate_triangulation(n, T)
    X2 = X.levels[2]

    def edge_restr(s, tri, e):
        return X.restrict(s, 2, [tri.index(v) for v in e])

    def vert_restr(s, tri, v):
        return X.restrict(s, 2, [tri.index(v)])

    out = []

    def search(k, chosen):
        if k == len(tris):
            out.append(tuple(chosen))
            return
        tri = tris[k]
        for s in X2:
            ok = True
            for prev_tri, prev_s in zip(tris[:k], chosen):
                shared = sorted(set(tri) & set(prev_tri))
                if len(shared) == 2:
                    if edge_restr(s, tri, shared) != edge_restr(prev_s, prev_tri, shared):
                        ok = False
                        break
                elif len(shared) == 1:
                    if vert_restr(s, tri, shared[0]) != vert_restr(prev_s, prev_tri, shared[0]):
                        ok = False
                        break
            if ok:
                search(k + 1, chosen + [s])

    search(0, [])
    return out


def check_2segal_sets(X: SimplicialData, n: int, T: Iterable[Sequence[int]]) -> bool:
    """Is X_n -> (membranes of T) a bijection?"""
    tris = validate_triangulation(n, T)
    if n not in X.levels:
        raise ValueError("level not available")
    mem = membrane_set(X, n, tris)
    images = [tuple(X.restrict(x, n, t) for t in tris) for x in X.levels[n]]
    return len(set(images)) == len(images) and set(images) == set(mem)


def triangulations(n: int) -> list[tuple]:
    """All triangulations of the polygon with vertices 0..n, as sorted triangle tuples."""

    def tri(lo, hi):
        if hi - lo < 2:
            return [()]
        res = []
        for m in range(lo + 1, hi):
            for left in tri(lo, m):
                for right in tri(m, hi):
                    res.append(left + right + ((lo, m, hi),))
        return res

    return sorted(tuple(sorted(t)) for t in tri(0, n))


def doubled_cell_counterexample(C: FiniteCategory | None = None) -> SimplicialData:
    """Nerve of C up to level 3 with one 2-simplex duplicated.

    The copy has the same faces as the original, so membranes gain elements
    that no 3-simplex maps to.
    """
    C = C or poset_category(1)
    base = nerve_simplicial_data(C, 3)
    levels = dict(base.levels)
    original = levels[2][0]
    ghost = ("ghost",) + original
    levels[2] = levels[2] + [ghost]

    def face(x, i):
        if x and x[0] == "ghost":
            return base.face(x[1:], i)
        return base.face(x, i)

    return SimplicialData(levels, face)
