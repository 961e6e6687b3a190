import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topfukaya.cyclic_combinatorics import (
    CyclicMap,
    CyclicNerve,
    FiniteCategory,
    QPath,
    all_maps,
    check_2segal_sets,
    collapse_map,
    compose_cyclic,
    cyclic_group_category,
    doubled_cell_counterexample,
    dual_map,
    dual_ordinal,
    idempotent_arrow_category,
    identity_map,
    induced_path_map,
    nerve_simplicial_data,
    ordinal,
    poset_category,
    rotation,
    triangulations,
    validate_triangulation,
)


@st.composite
def cyclic_maps(draw, src=None, tgt=None):
    m = src if src is not None else draw(st.integers(0, 3))
    n = tgt if tgt is not None else draw(st.integers(0, 3))
    v0 = draw(st.integers(0, n))
    rest = sorted(draw(st.lists(st.integers(v0, v0 + n + 1), min_size=m, max_size=m)))
    return CyclicMap(ordinal(m), ordinal(n), (v0, *rest))


@st.composite
def composable_triples(draw):
    a, b, c, d = (draw(st.integers(0, 3)) for _ in range(4))
    return draw(cyclic_maps(a, b)), draw(cyclic_maps(b, c)), draw(cyclic_maps(c, d))


def test_lift_normalization_and_validation():
    f = CyclicMap(ordinal(1), ordinal(2), (3, 4))
    assert f.values == (0, 1)
    with pytest.raises(ValueError):
        CyclicMap(ordinal(1), ordinal(2), (0, 4))
    with pytest.raises(ValueError):
        CyclicMap(ordinal(1), ordinal(2), (2, 1))


@given(composable_triples())
def test_composition_associative(fgh):
    f, g, h = fgh
    assert compose_cyclic(h, compose_cyclic(g, f)) == compose_cyclic(compose_cyclic(h, g), f)


@given(cyclic_maps())
def test_identities_neutral(f):
    assert compose_cyclic(identity_map(f.target), f) == f
    assert compose_cyclic(f, identity_map(f.source)) == f


@pytest.mark.parametrize("m,n", [(0, 0), (1, 1), (1, 2), (2, 1), (2, 3), (3, 2)])
def test_map_count_matches_formula(m, n):
    # degree-1 monotone circle maps <m> -> <n>
    assert len(all_maps(ordinal(m), ordinal(n))) == (n + 1) * comb(m + n + 1, m)


def test_map_count_matches_brute_force_lifts():
    m, n = 2, 1
    brute = set()
    for v in itertools.product(range(0, 2 * (n + 1) + 1), repeat=m + 1):
        if v[0] <= n and all(a <= b for a, b in zip(v, v[1:])) and v[-1] <= v[0] + n + 1:
            brute.add(v)
    assert {f.values for f in all_maps(ordinal(m), ordinal(n))} == brute


@pytest.mark.parametrize("n", range(0, 6))
def test_rotation_order(n):
    t = rotation(n)
    p = identity_map(ordinal(n))
    for k in range(1, n + 2):
        p = compose_cyclic(t, p)
        assert (p == identity_map(ordinal(n))) == (k == n + 1)


@given(cyclic_maps())
def test_galois_connection(f):
    for y in range(-3, 6):
        x = f.galois(y)
        assert f.lift(x) <= y < f.lift(x + 1)


def test_dual_ordinal_size():
    for n in range(5):
        assert dual_ordinal(ordinal(n)).size == n + 1
        assert dual_ordinal(dual_ordinal(ordinal(n))) == ordinal(n)


@given(cyclic_maps())
def test_dual_involution(f):
    assert dual_map(dual_map(f)) == f


@given(composable_triples())
def test_dual_contravariant(fgh):
    f, g, _ = fgh
    assert dual_map(compose_cyclic(g, f)) == compose_cyclic(dual_map(f), dual_map(g))


def test_dual_of_identity():
    for n in range(4):
        I = ordinal(n)
        assert dual_map(identity_map(I)) == identity_map(dual_ordinal(I))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dual_of_interstice_inclusion_is_collapse(n):
    for p in range(n + 1):
        # 0 -> b_p, 1 -> b_{p-1}, the long way round
        inc = CyclicMap(ordinal(1, 1), ordinal(n, 1), (p, p + n))
        assert dual_map(inc) == collapse_map(n + 1, p, 0)
        # the other orientation gives the other labeling of the two ends
        q = (p - 1) % (n + 1)
        inc2 = CyclicMap(ordinal(1, 1), ordinal(n, 1), (q, q + 1))
        assert dual_map(inc2) == collapse_map(n + 1, p, 1)


def test_collapse_values():
    c = collapse_map(3, 1, 0)
    assert [c(x) for x in range(3)] == [1, 0, 1]


def test_induced_path_identity_and_vertices():
    f = CyclicMap(ordinal(2), ordinal(3), (0, 2, 3))
    for s in range(3):
        for length in range(7):
            p = QPath(2, s, length)
            assert induced_path_map(identity_map(ordinal(2)), p) == p
            q = induced_path_map(f, p)
            assert q.start == f(s) and q.end == f(p.end)


@pytest.mark.parametrize("h", [0, 1, 2])
def test_collapse_on_arrows(h):
    c = collapse_map(3, h, 0)
    into = induced_path_map(c, QPath(2, h - 1, 1))
    out = induced_path_map(c, QPath(2, h, 1))
    assert (into.start, into.end, into.length) == (1, 0, 1)
    assert (out.start, out.end, out.length) == (0, 1, 1)
    other = induced_path_map(c, QPath(2, h + 1, 1))
    assert other.length == 0


@given(cyclic_maps(), st.integers(0, 3), st.integers(0, 8))
def test_induced_path_functorial(f, s, length):
    g = rotation(f.target.n)
    p = QPath(f.source.n, s, length)
    assert induced_path_map(compose_cyclic(g, f), p) == induced_path_map(g, induced_path_map(f, p))


# finite categories and nerves


def test_category_validation_rejects_nonassociative():
    mors = {"1": ("*", "*"), "a": ("*", "*"), "b": ("*", "*")}
    table = {("1", "1"): "1", ("1", "a"): "a", ("a", "1"): "a", ("1", "b"): "b", ("b", "1"): "b",
             ("a", "a"): "b", ("a", "b"): "1", ("b", "a"): "a", ("b", "b"): "b"}
    with pytest.raises(ValueError, match="associative"):
        FiniteCategory(("*",), mors, {"*": "1"}, table)


def test_category_from_json():
    data = {"objects": ["*"], "morphisms": [{"name": "1", "src": "*", "tgt": "*"}],
            "identities": {"*": "1"}, "compose": [["1", "1", "1"]]}
    C = FiniteCategory.from_json(data)
    assert CyclicNerve(C).level(3) == [("1",) * 4]


def test_nerve_of_two_element_poset():
    assert len(CyclicNerve(poset_category(1)).level(1)) == 2


@pytest.mark.parametrize("C", [poset_category(2), cyclic_group_category(3), idempotent_arrow_category()])
def test_nerve_rotation_order(C):
    N = CyclicNerve(C)
    for n in range(4):
        for x in N.level(n):
            y = x
            for _ in range(n + 1):
                y = N.rotation(y)
            assert y == x


def test_triangulation_validation():
    assert len(triangulations(4)) == 5
    with pytest.raises(ValueError):
        validate_triangulation(3, [(0, 1, 2), (1, 2, 3)])
    with pytest.raises(ValueError):
        validate_triangulation(3, [(0, 1, 2)])


@pytest.mark.parametrize("C", [poset_category(2), cyclic_group_category(3), idempotent_arrow_category()])
def test_nerves_are_2segal(C):
    X = nerve_simplicial_data(C, 5)
    for n in (3, 4, 5):
        for T in triangulations(n):
            assert check_2segal_sets(X, n, T)


def test_trivial_category_2segal():
    X = nerve_simplicial_data(cyclic_group_category(1), 4)
    assert all(len(X.levels[k]) == 1 for k in X.levels)
    assert all(check_2segal_sets(X, 4, T) for T in triangulations(4))


def test_doubled_cell_fails():
    X = doubled_cell_counterexample()
    assert not any(check_2segal_sets(X, 3, T) for T in triangulations(3))
