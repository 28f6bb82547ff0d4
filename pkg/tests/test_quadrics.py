import pytest
from hypothesis import given, settings
from strategies import coeff_vectors, rationals, small, unimodular

from fano221 import quadrics as qd
from fano221.exact.linalg import det, matmul
from fano221.exact.mpoly import MPoly, parse_poly
from fano221.exact.rational import Q

S = qd.symbolic_s()


@settings(max_examples=40)
@given(unimodular(), unimodular())
def test_sym4_homomorphism_and_det(g, h):
    assert qd.sym4(g @ h) == matmul(qd.sym4(g), qd.sym4(h))
    assert det(qd.sym4(g)) == 1


def test_sym4_rejects_non_unimodular():
    with pytest.raises(qd.NotUnimodular):
        qd.sym4(qd.SL2Elem(Q(2), Q(0), Q(0), Q(1)))


@settings(max_examples=30)
@given(unimodular(), small, small.filter(lambda q: q != 0))
def test_c4_preserved(g, a, b):
    p = qd.c4_point(a, b)
    assert qd.is_on_c4(p)
    assert qd.is_on_c4(qd.apply_sym4(g, p))
    assert qd.v3_member(p)


def test_point_off_c4():
    assert not qd.is_on_c4((Q(1), Q(0), Q(1), Q(0), Q(0)))


@settings(max_examples=25)
@given(coeff_vectors, unimodular())
def test_matrix_action_matches_substitution(s, g):
    assert qd.pullback(s, g) == qd.pullback_by_substitution(s, g)


@settings(max_examples=15)
@given(coeff_vectors, unimodular(), unimodular())
def test_right_action(s, g1, g2):
    assert qd.pullback(qd.pullback(s, g1), g2) == qd.pullback(s, g1 @ g2)


@settings(max_examples=20)
@given(coeff_vectors, small)
def test_unipotent_fast_path(s, t):
    assert qd.pullback_unipotent(s, "upper", t) == qd.pullback(s, qd.SL2Elem.upper(t))
    assert qd.pullback_unipotent(s, "lower", t) == qd.pullback(s, qd.SL2Elem.lower(t))


def test_f_basis_contains_c4():
    u, v = MPoly.vars("u", "v")
    point = qd.c4_point(u, v)
    for f in qd.F:
        assert f.subs(dict(zip(qd.XS, point))).is_zero()


def test_express_in_basis_roundtrip():
    s = (Q(1), Q(-2), Q(3, 4), Q(0), Q(5), Q(-1, 3))
    assert tuple(qd.express_in_basis(qd.expand(s))) == s


def test_not_through_c4():
    with pytest.raises(qd.NotThroughC4):
        qd.express_in_basis(parse_poly("x0^2"))


def test_involutions():
    assert qd.involution_act(S, "iota") == (S[4], S[3], S[2], S[1], S[0], S[5])
    assert qd.involution_act(S, "tau") == (S[0], -S[1], S[2], -S[3], S[4], S[5])


def test_cstar_weights():
    assert qd.cstar_weights() == (6, 5, 4, 3, 2, 4)


@given(coeff_vectors, rationals.filter(lambda q: q != 0))
def test_cstar_even_is_square(s, lam):
    s = (s[0], Q(0), s[2], Q(0), s[4], s[5])
    assert qd.cstar_act_even(s, lam * lam) == qd.cstar_act(s, lam)


def test_cstar_even_rejects_odd_weights():
    with pytest.raises(ValueError):
        qd.cstar_act_even((1, 1, 0, 0, 0, 1), Q(2))


def test_hessian_factorization():
    f1, f2 = qd.HESSIAN_FACTORS
    assert qd.hessian_poly() == -2 * f1 * f2


def test_hessian_specialization():
    expected = parse_poly("32*s5^2*(3*s5+s2)*(s2-s5)^2")
    assert qd.hessian_poly().subs({"s0": 0, "s1": 0}) == expected


@settings(max_examples=15)
@given(coeff_vectors, unimodular())
def test_smoothness_is_invariant(s, g):
    assert qd.is_smooth(s) == qd.is_smooth(qd.pullback(s, g))


def test_projective_helpers():
    a = (Q(0), Q(2), Q(4), Q(0), Q(0), Q(6))
    assert qd.normalize(a) == (0, 1, 2, 0, 0, 3)
    assert qd.projectively_equal(a, (0, 1, 2, 0, 0, 3))
    assert not qd.projectively_equal(a, (0, 1, 2, 0, 0, 4))


@pytest.mark.parametrize("text", ["1,2,3", "0,0,0,0,0,0", "1,a,0,0,0,1"])
def test_parse_coeffs_errors(text):
    with pytest.raises((ValueError, TypeError)):
        qd.parse_coeffs(text)
