"""Ribbon graphs, the marked surfaces they span, and the moves between them.

Vertices are the cycles of sigma (counterclockwise half-edge order), edges are
the pairs of alpha, and boundary walks are the orbits of sigma after alpha.
A half-edge at a 1-valent vertex is a tail; it models an open end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .cyclic_combinatorics import CyclicMap, collapse_map, triangulations, validate_triangulation


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class RibbonGraph:
    """``vertices[v]`` lists the half-edges at v in counterclockwise order."""

    vertices: tuple
    alpha: tuple  # alpha[h] = the other half of h's edge

    def __post_init__(self):
        verts = tuple(tuple(int(h) for h in c) for c in self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        H = len(self.alpha)
        seen = sorted(h for c in verts for h in c)
        if seen != list(range(H)):
            raise GraphError("vertex cycles must partition the half-edges 0..N-1")
        if any(len(c) == 0 for c in verts):
            raise GraphError("empty vertex")
        for h, a in enumerate(self.alpha):
            if not 0 <= a < H or a == h or self.alpha[a] != h:
                raise GraphError("alpha must be a fixed-point-free involution")
        if not self._connected():
            raise GraphError("graph is disconnected")

    @classmethod
    def from_pairs(cls, vertices: Sequence[Sequence[int]], pairs: Iterable[Sequence[int]]) -> "RibbonGraph":
        H = sum(len(c) for c in vertices)
        alpha = [-1] * H
        for a, b in pairs:
            if not (0 <= a < H and 0 <= b < H) or alpha[a] != -1 or alpha[b] != -1:
                raise GraphError("alpha pairs must cover each half-edge exactly once")
            alpha[a], alpha[b] = b, a
        if -1 in alpha:
            raise GraphError("unpaired half-edge")
        return cls(tuple(tuple(c) for c in vertices), tuple(alpha))

    @classmethod
    def from_json(cls, data: dict) -> "RibbonGraph":
        g = cls.from_pairs(data["sigma_cycles"], data["alpha_pairs"])
        if "half_edges" in data and int(data["half_edges"]) != len(g.alpha):
            raise GraphError("half_edges count does not match the cycles")
        return g

    def to_json(self) -> dict:
        return {"half_edges": len(self.alpha), "sigma_cycles": [list(c) for c in self.vertices],
                "alpha_pairs": [list(e) for e in self.edges]}

    # basic structure

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        owner = {h: v for v, c in enumerate(self.vertices) for h in c}
        G = nx.Graph()
        G.add_nodes_from(range(len(self.vertices)))
        G.add_edges_from((owner[h], owner[a]) for h, a in enumerate(self.alpha))
        return nx.is_connected(G)

    @cached_property
    def vertex_of(self) -> dict:
        return {h: v for v, c in enumerate(self.vertices) for h in c}

    @cached_property
    def position(self) -> dict:
        return {h: i for c in self.vertices for i, h in enumerate(c)}

    @property
    def half_edges(self) -> int:
        return len(self.alpha)

    def sigma(self, h: int) -> int:
        c = self.vertices[self.vertex_of[h]]
        return c[(self.position[h] + 1) % len(c)]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((h, a) for h, a in enumerate(self.alpha) if h < a)

    def valency(self, v: int) -> int:
        return len(self.vertices[v])

    @property
    def tails(self) -> frozenset:
        """Half-edges at 1-valent vertices."""
        return frozenset(c[0] for c in self.vertices if len(c) == 1)

    def is_tail_edge(self, h: int) -> bool:
        return h in self.tails or self.alpha[h] in self.tails

    def is_loop(self, h: int) -> bool:
        return self.vertex_of[h] == self.vertex_of[self.alpha[h]]

    def internal_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if not self.is_tail_edge(e[0])]

    def edge_of(self, h: int) -> tuple[int, int]:
        return tuple(sorted((h, self.alpha[h])))


def boundary_walks(G: RibbonGraph) -> list[tuple]:
    """Orbits of h -> sigma(alpha(h)), each starting at its least half-edge."""
    seen = set()
    walks = []
    for h in range(G.half_edges):
        if h in seen:
            continue
        w = []
        x = h
        while x not in seen:
            seen.add(x)
            w.append(x)
            x = G.sigma(G.alpha[x])
        walks.append(tuple(w))
    return walks


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class MarkedSurface:
    genus: int
    boundary_components: tuple  # marked-point count per boundary component
    interior_punctures: int

    @property
    def marked_points(self) -> int:
        return sum(self.boundary_components) + self.interior_punctures

    def is_stable(self) -> bool:
        b = len(self.boundary_components)
        if any(m < 1 for m in self.boundary_components) or self.marked_points == 0:
            return False
        if self.genus == 0 and b == 0 and self.interior_punctures <= 2:
            return False
        if self.genus == 0 and b == 1 and self.interior_punctures == 0 and self.boundary_components[0] <= 2:
            return False
        return True

    def describe(self) -> str:
        return (f"genus {self.genus}, {len(self.boundary_components)} boundary components "
                f"with marked points {list(self.boundary_components)}, "
                f"{self.interior_punctures} interior marked points")

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary_components": list(self.boundary_components),
                "interior_punctures": self.interior_punctures, "stable": self.is_stable()}


def surface_of(G: RibbonGraph) -> MarkedSurface:
    V, E = len(G.vertices), len(G.edges)
    walks = boundary_walks(G)
    b = len(walks)
    twice_g = 2 - b - V + E
    if twice_g % 2 or twice_g < 0:
        raise GraphError("non-integral genus; inconsistent graph data")
    tails = G.tails
    bdry = []
    punct = 0
    for w in walks:
        t = sum(1 for h in w if h in tails)
        if t:
            bdry.append(t)
        else:
            punct += 1
    return MarkedSurface(twice_g // 2, tuple(sorted(bdry)), punct)


# ---------------------------------------------------------------------------
# moves


def _relabel(vertices: Sequence[Sequence[int]], alpha_pairs: Iterable[tuple]) -> RibbonGraph:
    """Renumber surviving half-edges compactly, keeping their relative order."""
    keep = sorted(h for c in vertices for h in c)
    new = {h: i for i, h in enumerate(keep)}
    return RibbonGraph.from_pairs([[new[h] for h in c] for c in vertices],
                                  [(new[a], new[b]) for a, b in alpha_pairs])


def contract_edge(G: RibbonGraph, h: int) -> RibbonGraph:
    """Contract the edge containing half-edge h; the merged vertex replaces the lower id."""
    h2 = G.alpha[h]
    if G.is_loop(h):
        raise GraphError("cannot contract a loop")
    if G.is_tail_edge(h):
        raise GraphError("cannot contract a tail edge")
    v, w = G.vertex_of[h], G.vertex_of[h2]
    cv, cw = G.vertices[v], G.vertices[w]
    pv, pw = G.position[h], G.position[h2]
    av = cv[pv + 1:] + cv[:pv]
    bw = cw[pw + 1:] + cw[:pw]
    merged = av + bw
    lo, hi = min(v, w), max(v, w)
    verts = [list(c) for c in G.vertices]
    verts[lo] = list(merged)
    del verts[hi]
    pairs = [e for e in G.edges if h not in e]
    return _relabel(verts, pairs)


def is_flippable(G: RibbonGraph, h: int) -> bool:
    h2 = G.alpha[h]
    return (not G.is_loop(h) and G.valency(G.vertex_of[h]) == 3 and G.valency(G.vertex_of[h2]) == 3
            and not G.is_tail_edge(h))


def flip_edge(G: RibbonGraph, h: int) -> RibbonGraph:
    """v(h, a1, a2), v'(h', b1, b2) becomes v(h, a2, b1), v'(h', b2, a1).

    Half-edge labels are kept, so the flipped edge is still {h, h'}.
    """
    if not is_flippable(G, h):
        raise GraphError("flip needs a non-loop edge with 3-valent endpoints")
    h2 = G.alpha[h]
    v, w = G.vertex_of[h], G.vertex_of[h2]
    cv, cw = G.vertices[v], G.vertices[w]
    pv, pw = G.position[h], G.position[h2]
    a1, a2 = cv[(pv + 1) % 3], cv[(pv + 2) % 3]
    b1, b2 = cw[(pw + 1) % 3], cw[(pw + 2) % 3]
    verts = [list(c) for c in G.vertices]
    verts[v] = [h, a2, b1]
    verts[w] = [h2, b2, a1]
    return RibbonGraph(tuple(tuple(c) for c in verts), G.alpha)


def canonical_form(G: RibbonGraph) -> tuple:
    """Least encoding over breadth-first relabelings from every half-edge."""
    best = None
    for start in range(G.half_edges):
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y in (G.sigma(x), G.alpha[x]):
                if y not in label:
                    label[y] = len(order)
                    order.append(y)
        code = (tuple(label[G.sigma(x)] for x in order), tuple(label[G.alpha[x]] for x in order))
        if best is None or code < best:
            best = code
    return best


def is_isomorphic(G: RibbonGraph, H: RibbonGraph) -> bool:
    return G.half_edges == H.half_edges and canonical_form(G) == canonical_form(H)


def automorphisms(G: RibbonGraph) -> list[dict]:
    """All half-edge bijections commuting with sigma and alpha."""
    out = []
    start = 0
    for target in range(G.half_edges):
        m = {start: target}
        stack = [start]
        ok = True
        while stack and ok:
            x = stack.pop()
            for f in (G.sigma, lambda h: G.alpha[h]):
                y, fy = f(x), f(m[x])
                if y in m:
                    if m[y] != fy:
                        ok = False
                        break
                else:
                    m[y] = fy
                    stack.append(y)
        if ok and len(set(m.values())) == G.half_edges:
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# triangulated polygons


def triangulation_to_dual(n: int, T: Iterable[Sequence[int]]) -> RibbonGraph:
    """Dual graph of a triangulation of the polygon on vertices 0..n.

    Triangle t (sorted a < b < c) is vertex t with half-edges 3t, 3t+1, 3t+2
    facing the sides (a,b), (b,c), (c,a).  Side (k, k+1) of the polygon gets a
    tail vertex, numbered after the triangles in order of k.
    """
    tris = validate_triangulation(n, T)
    nt = len(tris)
    verts = []
    side_half = {}
    for t, (a, b, c) in enumerate(tris):
        verts.append([3 * t, 3 * t + 1, 3 * t + 2])
        for k, side in enumerate(((a, b), (b, c), (a, c))):
            side_half.setdefault(side, []).append(3 * t + k)
    pairs = []
    base = 3 * nt
    for k in range(n + 1):
        side = tuple(sorted((k, (k + 1) % (n + 1))))
        hs = side_half.pop(side)
        if len(hs) != 1:
            raise GraphError("polygon side shared by two triangles")
        verts.append([base + k])
        pairs.append((hs[0], base + k))
    for side, hs in side_half.items():
        if len(hs) != 2:
            raise GraphError(f"diagonal {side} not shared by two triangles")
        pairs.append(tuple(hs))
    return RibbonGraph.from_pairs(verts, pairs)


def polygon_tail_vertex(n: int, k: int) -> int:
    """Vertex id of the tail on polygon side (k, k+1) in triangulation_to_dual output."""
    return (n - 1) + k


def fan_triangulation(n: int) -> list[tuple]:
    return [(0, k, k + 1) for k in range(1, n)]


def _diagonals(T) -> frozenset:
    n = max(max(t) for t in T)
    out = set()
    for a, b, c in T:
        for x, y in ((a, b), (b, c), (a, c)):
            if y - x not in (1, n):
                out.add((x, y))
    return frozenset(out)


def stasheff_flip_graph(n: int) -> nx.Graph:
    """Triangulations of the polygon 0..n, adjacent when they differ by one diagonal."""
    if n < 2:
        raise ValueError("need n >= 2")
    Ts = triangulations(n)
    G = nx.Graph()
    diags = {T: _diagonals(T) for T in Ts}
    G.add_nodes_from(Ts)
    for i, S in enumerate(Ts):
        for T in Ts[i + 1:]:
            if len(diags[S] - diags[T]) == 1:
                G.add_edge(S, T)
    return G


# ---------------------------------------------------------------------------
# gluing data


@dataclass(frozen=True)
class EdgeGluing:
    edge: tuple  # (h, h') with h on the designated flag
    flag: tuple  # (v, h)
    other_flag: tuple  # (v', h')
    collapse: CyclicMap  # Ed(v) -> Vert(e), h -> 0 and the rest -> 1
    other_collapse: CyclicMap  # Ed(v') -> Vert(e), h' -> 1 and the rest -> 0


def gluing_data(G: RibbonGraph) -> list[EdgeGluing]:
    """Collapse maps for both flags of every internal edge.

    The two ends of an edge are labeled 0 (the end at the designated flag, the
    lexicographically least (vertex, position)) and 1.
    """
    out = []
    for a, b in G.internal_edges():
        fa = (G.vertex_of[a], G.position[a])
        fb = (G.vertex_of[b], G.position[b])
        h, h2 = (a, b) if fa < fb else (b, a)
        v, w = G.vertex_of[h], G.vertex_of[h2]
        c1 = collapse_map(G.valency(v), G.position[h], 0)
        c2 = collapse_map(G.valency(w), G.position[h2], 1)
        out.append(EdgeGluing((h, h2), (v, h), (w, h2), c1, c2))
    return out


# ---------------------------------------------------------------------------
# built-in graphs


def affine_line() -> RibbonGraph:
    """Loop with a tail: v = (tail, loop, loop), w = tail end."""
    return RibbonGraph.from_pairs([[0, 1, 2], [3]], [(0, 3), (1, 2)])


def projective_line() -> RibbonGraph:
    """Two 3-valent vertices joined by a chord and an arc, each with a tail.

    a = (tail 0, chord 1, arc 2), b = (arc 3, tail 4, chord 5).
    """
    return RibbonGraph.from_pairs([[0, 1, 2], [3, 4, 5], [6], [7]], [(0, 6), (1, 5), (2, 3), (4, 7)])


def theta() -> RibbonGraph:
    """Two vertices, three parallel edges, planar orders."""
    return RibbonGraph.from_pairs([[0, 1, 2], [3, 4, 5]], [(0, 3), (1, 5), (2, 4)])


def torus1() -> RibbonGraph:
    """Two vertices, three edges, orders giving a single boundary walk."""
    return RibbonGraph.from_pairs([[0, 1, 2], [3, 4, 5]], [(0, 3), (1, 4), (2, 5)])


def polygon_fan(n: int) -> RibbonGraph:
    return triangulation_to_dual(n, fan_triangulation(n))


BUILTIN_GRAPHS = {
    "affine_line": affine_line,
    "annulus": affine_line,
    "projective_line": projective_line,
    "theta": theta,
    "torus1": torus1,
}


def builtin_graph(name: str) -> RibbonGraph:
    if name.startswith("polygon_fan(") and name.endswith(")"):
        return polygon_fan(int(name[len("polygon_fan("):-1]))
    if name not in BUILTIN_GRAPHS:
        raise GraphError(f"unknown built-in graph {name!r}")
    return BUILTIN_GRAPHS[name]()


def random_ribbon_graph(rng: random.Random, max_vertices: int = 6, max_tails: int = 3,
                        attempts: int = 200) -> RibbonGraph:
    """Random connected graph with 3-valent inner vertices, some tails and loops."""
    for _ in range(attempts):
        nv = rng.randint(1, max_vertices)
        nt = rng.randint(0, max_tails)
        if (3 * nv + nt) % 2:
            nt += 1 if nt < max_tails else -1
        if nt < 0 or (3 * nv + nt) % 2:
            continue
        # inner half-edges 0..3nv-1, tails pair with inner half-edges
        inner = list(range(3 * nv))
        verts = [[3 * i, 3 * i + 1, 3 * i + 2] for i in range(nv)]
        rng.shuffle(inner)
        pairs = []
        tail_ids = list(range(3 * nv, 3 * nv + nt))
        if nt > len(inner):
            continue
        for t in tail_ids:
            pairs.append((inner.pop(), t))
            verts.append([t])
        if len(inner) % 2:
            continue
        for i in range(0, len(inner), 2):
            pairs.append((inner[i], inner[i + 1]))
        try:
            return RibbonGraph.from_pairs(verts, pairs)
        except GraphError:
            continue
    raise RuntimeError("could not generate a connected graph")
