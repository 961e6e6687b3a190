import pytest

from topfukaya import fukaya_sheaf as fs
from topfukaya import matrix_factorizations as mf
from topfukaya import ribbon_surfaces as rs
from topfukaya.exact_linalg import GF, QQ, Poly
from topfukaya.suites import RunConfig, check_gauge, check_square_flip

P1_O = fs.CurveSpec("arc", ((0, 0, 1), (1, 5, 4)), name="O")
P1_O1 = fs.CurveSpec("arc", ((0, 0, 2), (1, 3, 4)), name="O(1)")
P1_OM1 = fs.CurveSpec("arc", ((0, 0, 1), (1, 5, 3), (0, 2, 1), (1, 5, 4)), name="O(-1)")


def test_compiled_arc_is_valid_local_system():
    G = rs.affine_line()
    X = fs.compile_curve(G, fs.annulus_wrapped_arc(2))
    assert X.gluings_invertible()
    assert len(X.locals[0].shifts0) == 3 and X.locals[1] is None


@pytest.mark.parametrize("bad", [
    fs.CurveSpec("arc", ()),
    fs.CurveSpec("spiral", ((0, 0, 1),)),
    fs.CurveSpec("arc", ((0, 0, 0),)),
    fs.CurveSpec("arc", ((0, 0, 1), (0, 1, 0))),  # exit 1 pairs with 2, not 1
    fs.CurveSpec("arc", ((0, 1, 2),)),  # starts on the loop
    fs.CurveSpec("closed", ((0, 2, 1),), 0),
    fs.CurveSpec("arc", ((5, 0, 1),)),
    fs.CurveSpec("arc", ((1, 3, 3),)),
])
def test_itinerary_errors(bad):
    with pytest.raises(fs.ItineraryError):
        fs.compile_curve(rs.affine_line(), bad)


def test_curve_json_round_trip():
    c = fs.annulus_loop(QQ(3) / 2)
    assert fs.CurveSpec.from_json(c.to_json()) == c


def test_kronecker_table():
    G = rs.projective_line()
    X = [fs.compile_curve(G, c) for c in (P1_O, P1_O1)]
    assert fs.hom_table(X) == [[(1, 0), (2, 0)], [(0, 0), (1, 0)]]


def test_wrapped_arc_behaves_as_minus_one_twist():
    G = rs.projective_line()
    Om1, O = fs.compile_curve(G, P1_OM1), fs.compile_curve(G, P1_O)
    assert fs.hom_cohomology(Om1, O) == (2, 0)
    assert fs.hom_cohomology(O, Om1) == (0, 0)
    assert fs.hom_cohomology(Om1, Om1) == (1, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_wrapped_arc_endomorphisms(n):
    X = fs.compile_curve(rs.affine_line(), fs.annulus_wrapped_arc(n))
    assert fs.hom_cohomology(X, X) == (n, n)


def test_annulus_against_kx():
    G = rs.affine_line()
    curves = [fs.annulus_wrapped_arc(1), fs.annulus_wrapped_arc(2), fs.annulus_loop(0 + 2), fs.annulus_loop(3)]
    X = [fs.compile_curve(G, c) for c in curves]
    table = fs.hom_table(X)
    oracle = [[fs.kx_ext_dims(fs.skyscraper_module(a), fs.skyscraper_module(b)) for b in curves] for a in curves]
    assert table == oracle


def test_loops_distinguished_by_hom_not_end():
    G = rs.affine_line()
    a, b = fs.compile_curve(G, fs.annulus_loop(2)), fs.compile_curve(G, fs.annulus_loop(5))
    assert fs.hom_cohomology(a, a) == fs.hom_cohomology(b, b) == (1, 1)
    assert fs.hom_cohomology(a, a) != fs.hom_cohomology(b, a)


def test_additivity():
    G = rs.affine_line()
    a, b = fs.compile_curve(G, fs.annulus_wrapped_arc(1)), fs.compile_curve(G, fs.annulus_loop(1))
    s = fs.direct_sum_systems(a, b)
    h = [fs.hom_cohomology(x, y) for x in (a, b) for y in (a, b)]
    assert fs.hom_cohomology(s, s) == (sum(x[0] for x in h), sum(x[1] for x in h))


def test_truncation_cross_check_matches():
    G = rs.affine_line()
    X = fs.compile_curve(G, fs.annulus_wrapped_arc(2))
    full = fs.hom_cohomology_full(X, X)
    assert full.dims == (2, 2)


def test_prime_field():
    F = GF(7)
    G = rs.projective_line()
    X = [fs.compile_curve(G, c, F) for c in (P1_O, P1_O1)]
    assert fs.hom_table(X) == [[(1, 0), (2, 0)], [(0, 0), (1, 0)]]


def test_kx_oracle():
    x = Poly.monomial(QQ, 1, 1)
    assert fs.kx_ext_dims(x, Poly.monomial(QQ, 1, 3)) == (1, 1)
    assert fs.kx_ext_dims(Poly(QQ, [-1, 1]), x) == (0, 0)


def test_single_visit_local_matches_rank_one():
    G = rs.polygon_fan(3)
    c = fs.arc_between_tails(G, rs.polygon_tail_vertex(3, 0), rs.polygon_tail_vertex(3, 1))
    X = fs.compile_curve(G, c)
    assert len(c.itinerary) == 1
    v, a, b = c.itinerary[0]
    assert X.locals[v] == mf.rank_one(2, G.position[a], G.position[b])


def test_square_flip():
    assert check_square_flip(RunConfig())[0]


def test_gauge():
    assert check_gauge(RunConfig())[0]

