import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topfukaya.cyclic_combinatorics import CyclicMap, collapse_map, compose_cyclic, identity_map, ordinal, rotation
from topfukaya.exact_linalg import GF, QQ, Poly, cohomology, stabilized_truncated_cohomology
from topfukaya.matrix_factorizations import (
    GMat,
    GradedMF,
    MFMorphism,
    an_ext_oracle,
    bounding_homotopy,
    cocyclic_pushforward,
    compose_chain,
    cone,
    differential,
    direct_sum,
    distinguished_triangle,
    dual_object,
    grading_shift,
    hom_basis,
    hom_cohomology_dims,
    hom_complex,
    is_ccw,
    is_coboundary,
    is_homotopy_equivalent,
    is_zero_object,
    oracle_hom_dims,
    pushforward_morphism,
    random_graded_mf,
    rank_one,
    rank_one_pairs,
    rank_one_to_interval,
    suspension,
    vector_to_morphism,
    verify_universal_triangle_relations,
    waldhausen_diagram,
    waldhausen_edge,
    zero_object,
)

objects = st.tuples(st.integers(1, 4), st.integers(0, 10 ** 6)).map(
    lambda t: random_graded_mf(t[0], random.Random(t[1])))


def random_morphism(M, N, degree, rng, field=QQ):
    vec = [Poly(field, [rng.randint(-2, 2) for _ in range(rng.randint(0, 2))]) for _ in hom_basis(M, N, degree)]
    return vector_to_morphism(M, N, degree, vec)


@st.composite
def object_pairs(draw):
    n = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    return n, rng, random_graded_mf(n, rng), random_graded_mf(n, rng), random_graded_mf(n, rng)


# graded matrices and objects


def test_gmat_product_carries_u():
    F = QQ
    a = GMat.from_dict(F, 3, (2,), (0,), {(0, 0): Poly.const(F, 1)})  # z^2: R(0) -> R(2)
    b = GMat.from_dict(F, 3, (0,), (2,), {(0, 0): Poly.const(F, 1)})  # z: R(2) -> R(0)
    assert (b @ a).entries[0][0] == Poly.monomial(F, 1, 1)


def test_rank_one_shapes():
    M = rank_one(3, 1, 3)
    assert M.shifts1 == (1,) and M.shifts0 == (3,)
    assert rank_one(3, 2, 2).phi.entries[0][0] == Poly.const(QQ, 1)
    assert rank_one(3, 2, 2, primed=True).phi.entries[0][0] == Poly.monomial(QQ, 1, 1)


def test_invalid_factorization_rejected():
    F = QQ
    one = Poly.const(F, 1)
    M = GradedMF(1, (0,), (0,), GMat.from_dict(F, 2, (0,), (0,), {(0, 0): one}),
                 GMat.from_dict(F, 2, (0,), (0,), {(0, 0): one}))
    with pytest.raises(ValueError):
        M.validated()


@given(objects)
def test_factorization_invariant_under_constructions(M):
    n = M.n
    for X in (M, suspension(M), grading_shift(M), dual_object(M), direct_sum(M, M)):
        assert X.is_factorization()
    f = collapse_map(M.N, 0, 0) if M.N > 1 else identity_map(ordinal(n))
    assert cocyclic_pushforward(f, M).is_factorization()
    assert cocyclic_pushforward(rotation(n), M).is_factorization()


@given(objects)
def test_shift_has_order_n_plus_one(M):
    P = M
    for _ in range(M.N):
        P = grading_shift(P)
    assert P == M


def test_shift_example():
    assert grading_shift(rank_one(2, 0, 1)) == rank_one(2, 1, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_rotation_pushforward_is_shift(n):
    for i in range(n + 1):
        for j in range(n + 1):
            M = rank_one(n, i, j)
            assert cocyclic_pushforward(rotation(n), M) == grading_shift(M)


@pytest.mark.parametrize("n", range(1, 7))
def test_coxeter_orbit_of_simple(n):
    # [0,1] -> [1,2] -> ... -> [n-1,n] -> [n,0] reads k[n,n] -> ... -> k[1,1] -> S k[1,n]
    M = rank_one(n, 0, 1)
    seen = []
    for _ in range(n + 1):
        i, j = M.shifts1[0], M.shifts0[0]
        seen.append(rank_one_to_interval(n, i, j))
        M = grading_shift(M)
    want = [((n - k, n - k), False) for k in range(n)] + [((1, n), True)]
    assert seen == want
    assert M == rank_one(n, 0, 1)


def test_pushforward_identity_and_functoriality():
    rng = random.Random(3)
    for _ in range(10):
        M = random_graded_mf(2, rng)
        assert cocyclic_pushforward(identity_map(ordinal(2)), M) == M
        f = CyclicMap(ordinal(2), ordinal(3), (0, 1, 3))
        g = CyclicMap(ordinal(3), ordinal(1), (0, 0, 1, 1))
        lhs = cocyclic_pushforward(compose_cyclic(g, f), M)
        assert lhs == cocyclic_pushforward(g, cocyclic_pushforward(f, M))


@pytest.mark.parametrize("p", [0, 1, 2])
def test_collapse_pushforward_of_rank_one(p):
    c = collapse_map(3, p, 0)
    for b in range(3):
        if b == p:
            continue
        assert cocyclic_pushforward(c, rank_one(2, p, b)) == rank_one(1, 0, 1)
    others = [x for x in range(3) if x != p]
    assert is_zero_object(cocyclic_pushforward(c, rank_one(2, *others)))


# morphisms and Hom


@given(object_pairs(), st.integers(0, 1))
def test_differential_squares_to_zero(data, degree):
    n, rng, M, N, _ = data
    f = random_morphism(M, N, degree, rng)
    assert differential(differential(f)).is_zero()


@given(object_pairs(), st.integers(0, 1), st.integers(0, 1))
def test_leibniz(data, dg, df):
    n, rng, X, Y, Z = data
    f = random_morphism(X, Y, df, rng)
    g = random_morphism(Y, Z, dg, rng)
    lhs = differential(compose_chain(g, f))
    right = compose_chain(g, differential(f))
    rhs = compose_chain(differential(g), f) + (right.scale(-1) if dg else right)
    assert lhs == rhs


@given(object_pairs())
def test_hom_complex_matches_differential(data):
    n, rng, M, N, _ = data
    C = hom_complex(M, N)
    assert C.is_complex()
    for degree in (0, 1):
        f = random_morphism(M, N, degree, rng)
        vec = tuple(f.mat.entries[i][j] for i, j in hom_basis(M, N, degree))
        want = differential(f)
        got = C.apply(degree, vec)
        assert got == tuple(want.mat.entries[i][j] for i, j in hom_basis(M, N, degree + 1))


@given(object_pairs())
def test_snf_and_truncation_agree(data):
    n, rng, M, N, _ = data
    C = hom_complex(M, N)
    assert stabilized_truncated_cohomology(C, 4) == cohomology(C).dims


@given(object_pairs())
def test_pushforward_commutes_with_composition(data):
    n, rng, X, Y, Z = data
    f, g = random_morphism(X, Y, 0, rng), random_morphism(Y, Z, 1, rng)
    t = rotation(n)
    assert pushforward_morphism(t, compose_chain(g, f)) == compose_chain(
        pushforward_morphism(t, g), pushforward_morphism(t, f))


def test_identity_composition():
    rng = random.Random(0)
    M, N = random_graded_mf(2, rng), random_graded_mf(2, rng)
    f = random_morphism(M, N, 1, rng)
    assert compose_chain(MFMorphism.identity(N), f) == f
    assert compose_chain(f, MFMorphism.identity(M)) == f


def test_end_of_simple_in_t1():
    assert hom_cohomology_dims(rank_one(1, 0, 1), rank_one(1, 0, 1)) == (1, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_diagonal_objects_are_zero(n):
    for i in range(n + 1):
        for primed in (False, True):
            Z = rank_one(n, i, i, primed=primed)
            assert is_zero_object(Z)
            for a in rank_one_pairs(n):
                assert hom_cohomology_dims(Z, rank_one(n, *a)) == (0, 0)
                assert hom_cohomology_dims(rank_one(n, *a), Z) == (0, 0)


def test_adjacent_simples_in_t2():
    # [0,1] = k[2,2] and [1,2] = k[1,1]; with 1 -> 2 only Ext^1(k[1,1], k[2,2]) is nonzero
    assert hom_cohomology_dims(rank_one(2, 0, 1), rank_one(2, 1, 2)) == (0, 0)
    assert hom_cohomology_dims(rank_one(2, 1, 2), rank_one(2, 0, 1)) == (0, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_table(n):
    for a in rank_one_pairs(n):
        for b in rank_one_pairs(n):
            assert hom_cohomology_dims(rank_one(n, *a), rank_one(n, *b)) == oracle_hom_dims(n, a, b)


def test_oracle_values():
    assert an_ext_oracle(3, (1, 2), (1, 2)) == (1, 0)
    assert an_ext_oracle(2, (1, 2), (1, 1)) == (1, 0)
    assert an_ext_oracle(2, (1, 1), (1, 2)) == (0, 0)
    assert an_ext_oracle(2, (1, 1), (2, 2)) == (0, 1)


def test_oracle_over_prime_field():
    F = GF(5)
    for a in rank_one_pairs(3):
        for b in rank_one_pairs(3):
            got = hom_cohomology_dims(rank_one(3, *a, field=F), rank_one(3, *b, field=F))
            assert got == oracle_hom_dims(3, a, b, F)


# cones, triangles, equivalences


def test_cone_of_identity_is_zero():
    M = rank_one(2, 0, 1)
    C = cone(MFMorphism.identity(M))
    assert is_zero_object(C)
    assert hom_cohomology_dims(C, C) == (0, 0)


def test_cone_of_zero_map_is_sum():
    A, B = rank_one(2, 0, 1), rank_one(2, 1, 2)
    C = cone(MFMorphism.zero(A, B, 0))
    parts = (B, suspension(A))
    total = [0, 0]
    for X in parts:
        for Y in parts:
            h = hom_cohomology_dims(X, Y)
            total[0] += h[0]
            total[1] += h[1]
    assert hom_cohomology_dims(C, C) == tuple(total)
    assert is_homotopy_equivalent(C, direct_sum(*parts))


def test_triangle_012():
    a, b, g = distinguished_triangle(2, 0, 1, 2)
    assert a.is_closed() and b.is_closed() and g.is_closed()
    assert is_homotopy_equivalent(cone(a), rank_one(2, 1, 2))
    assert is_coboundary(compose_chain(b, a))
    h = bounding_homotopy(compose_chain(b, a))
    assert differential(h) == compose_chain(b, a)


def test_non_ccw_rejected():
    assert not is_ccw(3, 0, 2, 1)
    with pytest.raises(ValueError):
        distinguished_triangle(3, 0, 2, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_all_triangles(n):
    N = n + 1
    for i in range(N):
        for j in range(N):
            for k in range(N):
                if not is_ccw(n, i, j, k):
                    continue
                a, b, g = distinguished_triangle(n, i, j, k)
                assert is_coboundary(compose_chain(b, a)) and is_coboundary(compose_chain(g, b))
                assert is_homotopy_equivalent(cone(a), rank_one(n, j, k))


def test_suspension_swaps_indices_up_to_equivalence():
    for i, j in rank_one_pairs(3):
        assert is_homotopy_equivalent(suspension(rank_one(3, i, j)), rank_one(3, j, i))


def test_equivalence_negative_cases():
    assert is_homotopy_equivalent(rank_one(3, 0, 2), rank_one(3, 0, 2))
    assert not is_homotopy_equivalent(rank_one(3, 0, 1), rank_one(3, 2, 3))
    assert not is_homotopy_equivalent(rank_one(3, 0, 1), zero_object(3))


def test_universal_triangle():
    report = verify_universal_triangle_relations()
    assert len(report) == 9
    assert all(ok for _, ok in report)


# duality


@given(objects)
def test_dual_is_involution(M):
    assert dual_object(dual_object(M)) == M


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dual_of_rank_one(n):
    for i, j in rank_one_pairs(n):
        D = dual_object(rank_one(n, i, j))
        assert GradedMF(n, D.shifts0, D.shifts1, -D.phi, -D.psi) == rank_one(n, -j, -i)
        assert is_homotopy_equivalent(D, rank_one(n, -j, -i))


@pytest.mark.parametrize("n", [2, 3])
def test_dual_hom_symmetry(n):
    for a in rank_one_pairs(n):
        for b in rank_one_pairs(n):
            M, N = rank_one(n, *a), rank_one(n, *b)
            assert hom_cohomology_dims(M, N) == hom_cohomology_dims(dual_object(N), dual_object(M))


# Waldhausen diagrams


def test_waldhausen_n1():
    D = waldhausen_diagram(1)
    assert is_zero_object(D["objects"][(0, 0)]) and is_zero_object(D["objects"][(1, 1)])


def test_waldhausen_cone():
    D = waldhausen_diagram(3)
    f = D["edges"][((0, 1), (0, 3))]
    assert is_homotopy_equivalent(cone(f), D["objects"][(1, 3)])


def test_waldhausen_associative_chain():
    e1 = waldhausen_edge(3, (0, 1), (1, 2))
    e2 = waldhausen_edge(3, (1, 2), (2, 3))
    assert compose_chain(e2, e1) == waldhausen_edge(3, (0, 1), (2, 3))
