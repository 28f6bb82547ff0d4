import pytest

from fano221 import invariants as inv
from fano221 import oracle
from fano221.exact.integrate import integrate_iterated
from fano221.exact.mpoly import MPoly, parse_poly
from fano221.exact.rational import Q

u, v, n = MPoly.vars("u", "v", "n")


def test_s_divisor_h():
    r = inv.s_divisor("H")
    assert (r.value, r.beta, r.tau) == (Q(51, 112), Q(61, 112), Q(3, 2))
    assert [p[2] for p in r.pieces] == [Q(25, 2), Q(1, 4)]


def test_s_divisor_e():
    r = inv.s_divisor("E")
    assert (r.value, r.beta, r.tau) == (Q(19, 56), Q(37, 56), 1)


def test_prefactor_linearity():
    for s in "HE":
        assert inv.s_divisor(s, 56).value * 2 == inv.s_divisor(s).value
    assert inv.s_w2_exceptional(volume=56)[0] * 2 == inv.s_w2_exceptional()[0]


def test_s_w2_exceptional():
    value, terms = inv.s_w2_exceptional()
    assert value == Q(111, 56)
    first = Q(3, 28) * integrate_iterated(parse_poly("2*u^2 - v^2 - 12*u + 14"),
                                          ("v", 0, 3 - u), ("u", 0, 1)).constant_value()
    assert terms[0].value == first
    assert 2 / value == Q(112, 111)


def test_point_invariants():
    assert inv.s_w3_point(False) == Q(51, 56)
    assert inv.s_w3_point(True) == Q(111, 112)
    assert inv.f_o_value() == Q(9, 112)
    # O on C2~ instead of C1~ gives the same value by symmetry
    assert sum(inv.point_on_curve(inv.POINT_FLAGS["O on C2~"])) == Q(111, 112)


def test_f_o_integrand_by_hand():
    integrand = parse_poly("(6 - 2*u - v)*(v + u - 3)")
    value = Q(6, 28) * integrate_iterated(integrand, ("v", 3 - u, 4 - 2 * u), ("u", 0, 1)).constant_value()
    assert value == Q(9, 112)


def test_delta_certificate():
    cert = inv.delta_bound_generic_point()
    assert [c for _, c in cert.candidates] == [Q(112, 51), Q(112, 111), Q(112, 111)]
    assert cert.bound == Q(112, 111) and cert.holds


def test_e_terms():
    assert inv.e_ord_term() == Q(27, 224)
    assert [inv.e_ord_term(m) for m in (0, 1)] == [0, Q(27, 448)]
    assert inv.e_volume_term() == (23 * n + 546) / 896
    for k in (0, 2, 4, 6):
        assert inv.e_volume_term(Q(k)) == Q(23 * k + 546, 896)


@pytest.mark.parametrize("k,total", [(0, Q(654, 896)), (2, Q(700, 896)), (4, Q(746, 896)), (6, Q(99, 112))])
def test_s_w2_curve_on_e(k, total):
    assert inv.s_w2_curve_on_E(k) == total
    assert total <= Q(99, 112)


def test_s_w2_curve_on_e_rejects_n():
    with pytest.raises(ValueError):
        inv.s_w2_curve_on_E(5)


def test_beta_certificates():
    rows = inv.beta_certificate_curve_case()
    bounds = {k: c.bound for k, _, c in rows}
    assert bounds[0] == Q(448, 327) and bounds[6] == Q(112, 99)
    assert all(c.holds for _, _, c in rows)
    assert rows[0][2].candidates[0][1] == Q(56, 19) == 1 / inv.s_divisor("E").value


# -- float oracle -------------------------------------------------------------------

@pytest.mark.parametrize("approx,exact", [
    (oracle.s_w_g, lambda: inv.s_w2_exceptional()[0]),
    (oracle.s_w_o_main, lambda: inv.s_w3_point(False)),
    (oracle.f_o, inv.f_o_value),
    (oracle.e_ord_term, inv.e_ord_term),
])
def test_oracle_agrees(approx, exact):
    assert oracle.rel_err(approx(), exact()) <= 1e-6


@pytest.mark.parametrize("k", [0, 2, 4, 6])
def test_oracle_volume_term(k):
    assert oracle.rel_err(oracle.e_volume_term(k), inv.e_volume_term(Q(k))) <= 1e-6


def test_oracle_fn_volume_branches():
    import numpy as np

    vals = oracle.fn_volume(np.array([1.0, 1.0, -1.0]), np.array([1.0, 3.0, 2.0]), 2)
    assert list(vals) == [0.5, 4.0, 0.0]
