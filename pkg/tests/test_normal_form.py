import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import rationals, unimodular

from fano221 import normal_form as nf
from fano221 import quadrics as qd
from fano221.exact.extension import num
from fano221.exact.mpoly import MPoly, parse_poly
from fano221.exact.rational import Q
from fano221.sampling import disguised_normal_form, smooth_quadric

s2 = MPoly.var("s2")


def qs(*xs):
    return tuple(Q(x) for x in xs)


@pytest.mark.parametrize("s,case,params", [
    (qs(0, 1, 0, 0, 0, 1), 5, {}),
    (qs(1, 0, 0, 0, 0, 1), 3, {}),
    (qs(0, 0, 2, 1, 0, 1), 4, {"lam": Q(3, 2)}),
    (qs(1, 0, 3, 0, 0, 5), 4, {"lam": Q(5)}),
    (qs(1, 0, 0, 0, 1, 1), 1, {"mu": Q(1)}),
    (qs(0, 0, 0, 0, 0, 1), 1, {"mu": Q(0)}),
    (qs(0, 0, 1, 0, 0, -1), 2, {"lam": Q(-3), "mu": Q(0)}),
    (qs(1, 1, 0, 0, 0, 1), 5, {}),
])
def test_examples(s, case, params):
    r = nf.classify(s)
    assert r.label.case == case
    assert {k: num(v).as_rational() for k, v in r.label.params.items()} == params
    assert r.replay_ok


def test_singular_rejected_with_factor_names():
    with pytest.raises(nf.SingularQuadric) as err:
        nf.classify(qs(0, 0, 1, 1, 0, 1))
    assert "s0*s4 - s1*s3" in str(err.value)


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        nf.classify(qs(0, 0, 0, 0, 0, 0))


def test_witness_replay_generic():
    s = smooth_quadric(random.Random(3))
    r = nf.classify(s)
    replayed = r.witness.replay(tuple(num(x) for x in s))
    assert qd.projectively_equal(replayed, r.normal_form)
    assert r.label.case in (1, 2, 3, 4, 5)


@pytest.mark.parametrize("case", [1, 3, 4, 5])
def test_disguised_special_cases(case):
    rng = random.Random(case)
    s = disguised_normal_form(rng, case)
    assert nf.classify(s).label.case == case


@settings(max_examples=6)
@given(unimodular())
def test_case_invariance(g):
    s = qs(2, -1, 1, 3, Q(1, 3), -1)
    assert qd.is_smooth(s)
    assert nf.classify(qd.pullback(s, g)).label.case == nf.classify(s).label.case


def test_constraint_holds_on_result():
    r = nf.classify(smooth_quadric(random.Random(11)))
    assert not num(r.label.constraint_value).is_zero()
    assert qd.is_smooth(r.normal_form)


# -- derived elimination data -------------------------------------------------------

def test_h_homogeneous_matches_h_up_to_sign_of_s2():
    chart = nf.h_homogeneous().subs({"s0": 1, "s3": 1})
    assert chart == nf.H_POLY.subs({"s2": -s2})


def test_s3_elimination_shape():
    a, b, g = nf.s3_elimination()
    assert g.degree("c") == 6
    chart = g.subs({"s0": 1, "s3": 1, "s1": 0})
    assert chart == -2 * nf.REFERENCE_G1.subs({"s2": -s2})


def test_reference_identities():
    r = nf.reference_identities()
    assert r["res_g_over_h_cubed"] == 64
    assert r["s3_at_b_star_over_g1"] == -2
    assert r["s1_denominator_is_g2"]
    assert r["combo_b_free"] and r["combo"] == parse_poly("2*c^3 - 4*s2*c + 1")
    assert r["res_h0_is_h"]


def test_degeneration_identity_symbolic():
    s0, s1 = MPoly.vars("s0", "s1")
    out = nf.degeneration_identity((s0, s1, s2, 0, 0, 1))
    assert out["holds"]


def test_degeneration_identity_pattern_check():
    with pytest.raises(ValueError):
        nf.degeneration_identity((1, 0, 0, 1, 0, 1))


# -- GIT table and smoothness loci ---------------------------------------------------

@pytest.mark.parametrize("vec,status", [
    (qs(0, 0, 0, 0, 0, 1), "polystable"),
    (qs(0, 0, 3, 0, 0, 5), "polystable"),
    (qs(1, 0, 0, 0, 0, 1), "strictly-semistable"),
    (qs(1, 0, 3, 0, 0, 5), "strictly-semistable"),
    (qs(0, 1, 0, 0, 0, 1), "strictly-semistable"),
    (qs(1, 0, 3, 0, 1, 5), "stable"),
    (qs(0, 0, 3, 0, 0, 3), "stable"),  # lam = 3 is excluded from the row
])
def test_git_lookup(vec, status):
    assert nf.git_lookup(tuple(num(x) for x in vec))[1] == status


def test_case_smoothness_loci():
    mu, lam = MPoly.vars("mu", "lam")
    one = nf.case_smoothness_locus(1)
    assert one.exquo(parse_poly(nf.CASE_CONSTRAINTS[1])).is_constant()
    four = nf.case_smoothness_locus(4)
    assert four == 96 * lam**2 * (lam - 3) ** 2 * (lam + 1)


@given(rationals)
def test_case_one_constraint_matches_smoothness(m):
    vec = nf.normal_form_vector(1, {"mu": m})
    assert qd.is_smooth(vec) == ((m * m - 4) * (m * m - 3) != 0)


# -- canonical choice between cases 1 and 2 -----------------------------------------

@settings(max_examples=20)
@given(st.tuples(*[rationals] * 6), unimodular())
def test_quartic_invariants_are_invariant(s, g):
    assert qd.quartic_invariants(qd.pullback(s, g)) == qd.quartic_invariants(s)


def test_invariant_quadratic_matches_hessian_factor():
    s = qd.symbolic_s()
    i, _ = qd.quartic_invariants(s)
    sigma = s[5] - s[2] / 3
    assert qd.HESSIAN_FACTORS[0] == i - 3 * sigma * sigma


@pytest.mark.parametrize("a", [Q(3, 2), Q(-3, 2)])
def test_harmonic_case_two_shape_is_case_one(a):
    s = qs(1, 0, a, 0, 1, 2)
    assert qd.is_smooth(s)
    r = nf.classify(s)
    assert r.label.case == 1 and "harmonic" in r.trail


@pytest.mark.parametrize("case,params", [(1, {"mu": Q(1)}), (2, {"lam": Q(1), "mu": Q(5)})])
def test_case_label_matches_j_invariant(case, params):
    vec = nf.normal_form_vector(case, params)
    _, j = qd.quartic_invariants(vec)
    assert (j == 0) == (case == 1)
