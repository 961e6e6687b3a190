import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from topfukaya import ribbon_surfaces as rs

graphs = st.integers(0, 10 ** 6).map(lambda s: rs.random_ribbon_graph(random.Random(s)))


def test_rejects_bad_input():
    with pytest.raises(rs.GraphError):
        rs.RibbonGraph.from_pairs([[0, 1], [2, 3]], [(0, 1), (2, 3)])  # disconnected
    with pytest.raises(rs.GraphError):
        rs.RibbonGraph.from_pairs([[0, 1, 2]], [(0, 1)])  # unpaired half-edge
    with pytest.raises(rs.GraphError):
        rs.RibbonGraph.from_pairs([[0, 1]], [(0, 1), (1, 0)])
    with pytest.raises(rs.GraphError):
        rs.RibbonGraph(((0, 1), (1,)), (1, 0))
    with pytest.raises(rs.GraphError):
        rs.builtin_graph("moebius")


@pytest.mark.parametrize("name,want", [
    ("theta", rs.MarkedSurface(0, (), 3)),
    ("affine_line", rs.MarkedSurface(0, (1,), 1)),
    ("annulus", rs.MarkedSurface(0, (1,), 1)),
    ("torus1", rs.MarkedSurface(1, (), 1)),
    ("projective_line", rs.MarkedSurface(0, (1, 1), 0)),
])
def test_builtin_surfaces(name, want):
    assert rs.surface_of(rs.builtin_graph(name)) == want


def test_walks_of_theta_and_torus():
    assert len(rs.boundary_walks(rs.theta())) == 3
    assert len(rs.boundary_walks(rs.torus1())) == 1


@given(graphs)
def test_euler_relation(G):
    S = rs.surface_of(G)
    b = len(S.boundary_components) + S.interior_punctures
    assert len(G.vertices) - len(G.edges) + b == 2 - 2 * S.genus
    walks = rs.boundary_walks(G)
    assert sorted(h for w in walks for h in w) == list(range(G.half_edges))


@given(graphs)
def test_moves_preserve_surface(G):
    S = rs.surface_of(G)
    for h, _ in G.internal_edges():
        if not G.is_loop(h):
            assert rs.surface_of(rs.contract_edge(G, h)) == S
        if rs.is_flippable(G, h):
            assert rs.surface_of(rs.flip_edge(G, h)) == S


@given(graphs)
def test_json_round_trip(G):
    assert rs.RibbonGraph.from_json(G.to_json()) == G


@given(graphs)
def test_canonical_form_is_label_invariant(G):
    rng = random.Random(len(G.alpha))
    perm = list(range(G.half_edges))
    rng.shuffle(perm)
    H = rs.RibbonGraph(tuple(tuple(perm[h] for h in c) for c in G.vertices),
                       tuple(perm[G.alpha[perm.index(k)]] for k in range(G.half_edges)))
    assert rs.is_isomorphic(G, H)


def test_contract_theta_edge():
    G = rs.contract_edge(rs.theta(), 0)
    assert len(G.vertices) == 1 and len(G.edges) == 2
    assert rs.surface_of(G) == rs.MarkedSurface(0, (), 3)


def test_contract_refuses_loops_and_tails():
    with pytest.raises(rs.GraphError):
        rs.contract_edge(rs.affine_line(), 1)
    with pytest.raises(rs.GraphError):
        rs.contract_edge(rs.affine_line(), 0)


def test_flip_twice_returns_to_isomorphic_graph():
    for name in ("theta", "torus1", "projective_line"):
        G = rs.builtin_graph(name)
        for h, _ in G.internal_edges():
            if rs.is_flippable(G, h):
                assert rs.is_isomorphic(rs.flip_edge(rs.flip_edge(G, h), h), G)


def test_square_flip_changes_triangulation():
    A = rs.triangulation_to_dual(3, [(0, 1, 2), (0, 2, 3)])
    B = rs.triangulation_to_dual(3, [(0, 1, 3), (1, 2, 3)])
    h = next(a for a, b in A.internal_edges())
    assert rs.is_isomorphic(rs.flip_edge(A, h), B)
    assert rs.surface_of(A) == rs.MarkedSurface(0, (4,), 0)


def test_flip_projective_line_chord():
    G = rs.projective_line()
    assert rs.is_flippable(G, 1)
    assert rs.surface_of(rs.flip_edge(G, 1)) == rs.surface_of(G)


@pytest.mark.parametrize("n,count", [(2, 1), (3, 2), (4, 5), (5, 14), (6, 42), (7, 132)])
def test_triangulation_counts(n, count):
    assert len(rs.triangulations(n)) == count


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_stasheff_graph(n):
    H = rs.stasheff_flip_graph(n)
    assert nx.is_connected(H)
    # each triangulation of an (n+1)-gon has n-2 diagonals, one flip each
    assert all(d == n - 2 for _, d in H.degree())


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_polygon_duals(n):
    for T in rs.triangulations(n):
        G = rs.triangulation_to_dual(n, T)
        assert rs.surface_of(G) == rs.MarkedSurface(0, (n + 1,), 0)
        for k in range(n + 1):
            assert G.valency(rs.polygon_tail_vertex(n, k)) == 1


def test_bad_triangulation():
    with pytest.raises((rs.GraphError, ValueError)):
        rs.triangulation_to_dual(3, [(0, 1, 2), (1, 2, 3)])


def test_gluing_data():
    G = rs.theta()
    gd = rs.gluing_data(G)
    assert len(gd) == 3
    for g in gd:
        v, h = g.flag
        assert g.collapse.values[G.position[h]] % 2 == 0
        w, h2 = g.other_flag
        assert g.other_collapse.values[G.position[h2]] % 2 == 1
        assert G.alpha[h] == h2


def test_stability():
    assert rs.MarkedSurface(0, (1,), 1).is_stable()
    assert not rs.MarkedSurface(0, (2,), 0).is_stable()
    assert not rs.MarkedSurface(0, (), 2).is_stable()
    assert rs.MarkedSurface(1, (), 1).is_stable()


def test_automorphisms_of_theta():
    assert len(rs.automorphisms(rs.theta())) == 6
