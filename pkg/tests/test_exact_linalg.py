from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topfukaya.exact_linalg import (
    GF,
    QQ,
    Complex2P,
    NotStabilized,
    Poly,
    cohomology,
    lift_representative,
    poly_matmul,
    rank_sparse,
    rref,
    smith_normal_form,
    solve_linear,
    stabilized_truncated_cohomology,
    truncated_cohomology,
)
from topfukaya.matrix_factorizations import hom_complex, rank_one


def P(*cs, field=QQ):
    return Poly(field, cs)


U = P(0, 1)
ONE = P(1)
ZERO = P()


# fields and polynomials


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(3) * F(5) == F(1)
    assert F(1) / F(3) == F(5)
    assert F(Fraction(1, 2)) * F(2) == F(1)


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        GF(9)


def test_mixing_fields_rejected():
    with pytest.raises(ValueError):
        P(1) + P(1, field=GF(5))


def test_poly_division():
    f = P(1, 2, 1)  # (1 + u)^2
    q, r = f.divmod(P(1, 1))
    assert q == P(1, 1) and r == ZERO
    assert P(0, 0, 3).shift(2) == P(0, 0, 0, 0, 3)


polys = st.lists(st.integers(-3, 3), max_size=4).map(lambda cs: Poly(QQ, cs))


@given(polys, polys)
def test_division_identity(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


# dense linear algebra


def test_rref_identity():
    _, rank, ker, _ = rref([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank == 3 and ker == []


def test_rref_zero():
    _, rank, ker, _ = rref([[0, 0, 0], [0, 0, 0]])
    assert rank == 0 and len(ker) == 3


def test_rref_rank_one_kernel():
    _, rank, ker, _ = rref([[1, 2], [2, 4]])
    assert rank == 1
    assert ker == [(Fraction(-2), Fraction(1))]


def test_solve_linear():
    assert solve_linear([[1, 1], [1, -1]], [2, 0]) == [1, 1]
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=4))


@given(matrices)
def test_sparse_rank_matches_dense(m):
    _, r, _, _ = rref(m)
    rows = [{j: Fraction(v) for j, v in enumerate(row) if v} for row in m]
    assert rank_sparse(rows) == r
    F = GF(101)
    rows_p = [{j: F(v) for j, v in enumerate(row) if v} for row in m]
    assert rank_sparse(rows_p, F) == rref(m, F)[1]


@given(matrices)
def test_kernel_vectors_are_in_kernel(m):
    _, _, ker, _ = rref(m)
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


# Smith normal form


def _factors(m):
    return [f.coeffs for f in smith_normal_form(m, QQ).invariant_factors]


def test_snf_one_by_one():
    assert _factors([[U]]) == [U.coeffs]


def test_snf_reorders_by_divisibility():
    assert _factors([[U * U, ZERO], [ZERO, U]]) == [U.coeffs, (U * U).coeffs]


def test_snf_jordan_block():
    assert _factors([[U, ONE], [ZERO, U]]) == [ONE.coeffs, (U * U).coeffs]


poly_matrices = st.tuples(st.integers(1, 3), st.integers(1, 3)).flatmap(
    lambda s: st.lists(st.lists(polys, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


@given(poly_matrices)
def test_snf_reassembles(m):
    S = smith_normal_form(m, QQ)
    assert poly_matmul(QQ, poly_matmul(QQ, S.U, m), S.V) == S.D
    n = len(m)
    eye = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
    assert poly_matmul(QQ, S.U, S.Uinv) == eye
    fs = S.invariant_factors
    for a, b in zip(fs, fs[1:]):
        assert (b % a).is_zero()
    assert all(f.lead == 1 for f in fs)


# cohomology


def u_complex():
    return Complex2P(QQ, 1, 1, ((U,),), ((ZERO,),))


def test_u_complex_cohomology():
    H = cohomology(u_complex())
    # d0 = u is injective, so H0 = 0 and H1 = coker(u) = k
    assert H.H0.free_rank == 0 and H.H0.dim == 0
    assert H.H1.dim == 1 and H.H1.torsion == (U,)


def test_zero_differentials_are_free():
    Z = Complex2P(QQ, 2, 3, tuple((ZERO,) * 2 for _ in range(3)), tuple((ZERO,) * 3 for _ in range(2)))
    H = cohomology(Z)
    assert (H.H0.free_rank, H.H1.free_rank) == (2, 3)
    assert H.H0.dim is None


def test_end_of_simple_in_t1():
    H = cohomology(hom_complex(rank_one(1, 0, 1), rank_one(1, 0, 1)))
    assert H.dims == (1, 0)


def test_truncation_stabilizes_on_u_complex():
    for W in (1, 2, 3):
        assert truncated_cohomology(u_complex(), W) == (0, 1)
    assert stabilized_truncated_cohomology(u_complex(), 1) == (0, 1)


def test_truncation_flags_free_part():
    Z = Complex2P(QQ, 1, 1, ((ZERO,),), ((ZERO,),))
    assert truncated_cohomology(Z, 4) == (4, 4)
    with pytest.raises(NotStabilized):
        stabilized_truncated_cohomology(Z, 4)


def test_truncation_matches_snf_on_t3():
    C = hom_complex(rank_one(3, 0, 2), rank_one(3, 0, 2))
    assert stabilized_truncated_cohomology(C, 4) == cohomology(C).dims


def test_representative_of_u_complex():
    C = u_complex()
    assert lift_representative(C, 1, 0) == (ONE,)


def test_representative_identity_class():
    M = rank_one(1, 0, 1)
    C = hom_complex(M, M)
    H = cohomology(C)
    rep = lift_representative(C, 0, 0, H)
    assert any(p for p in rep)
    assert H.H0.coordinates(rep) == [1]


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_diagonal_complex_dimensions(degs):
    # d0 = diag(u^k), d1 = 0: H1 = (+) k[u]/(u^k), H0 = 0
    n = len(degs)
    d0 = tuple(tuple(Poly.monomial(QQ, 1, k) if i == j else ZERO for j in range(n)) for i, k in enumerate(degs))
    d1 = tuple((ZERO,) * n for _ in range(n))
    C = Complex2P(QQ, n, n, d0, d1)
    assert cohomology(C).dims == (0, sum(degs))
    assert stabilized_truncated_cohomology(C, max(degs)) == (0, sum(degs))
