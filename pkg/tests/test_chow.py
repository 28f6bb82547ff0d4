import pytest
from hypothesis import given
from strategies import rationals

from fano221 import chow
from fano221.exact.mpoly import MPoly

H, E = chow.H, chow.E
u, n = MPoly.vars("u", "n")

divs = rationals.flatmap(lambda a: rationals.map(lambda b: chow.DivClass(a, b)))


def test_table():
    assert chow.triple(H, H, H) == 2
    assert chow.triple(H, H, E) == 0
    assert chow.triple(H, E, E) == -4
    assert chow.triple(E, E, E) == -10


def test_normal_bundle():
    assert chow.deg_normal_bundle() == 10
    assert chow.triple(E, E, E) == -chow.deg_normal_bundle()


def test_named_classes():
    assert chow.E_PRIME == 3 * H - 2 * E
    assert chow.triple(chow.H_PRIME, chow.H_PRIME, chow.H_PRIME) == 2
    assert chow.anticanonical_degree() == 28


@given(divs, divs, divs, divs, rationals)
def test_trilinear_symmetric(a, b, c, d, k):
    t = chow.triple(a, b, c)
    assert t == chow.triple(b, c, a) == chow.triple(c, b, a)
    assert chow.triple(a + d * k, b, c) == t + k * chow.triple(d, b, c)


def test_fibres():
    assert (chow.FIBRE.h, chow.FIBRE.e) == (0, -1)
    assert (chow.FIBRE_PRIME.h, chow.FIBRE_PRIME.e) == (1, 2)
    assert chow.curve_pair(H, chow.FIBRE) == 0
    assert chow.curve_pair(E, chow.FIBRE_PRIME) == 2
    assert chow.curve_pair(chow.ANTICANONICAL, chow.FIBRE) == 1
    assert chow.curve_pair(chow.ANTICANONICAL, chow.FIBRE_PRIME) == 1


def test_pairing_with_parameter():
    d = chow.DivClass(3 - u, -1)
    assert chow.curve_pair(d, chow.FIBRE_PRIME) == 1 - u


def test_restriction_examples():
    r = chow.restrict_to_E(chow.E_PRIME, n)
    assert (r.a, r.b) == (2, n + 2)
    r = chow.restrict_to_E(chow.DivClass(3, -1 - u), n)
    assert r.a == 1 + u and r.b == (n + 14 - (10 - n) * u) / 2
    for k in chow.VALID_N:
        assert chow.restrict_to_E(chow.H_PRIME, k).square() == 6


@given(divs)
def test_restriction_compatible_with_self_intersection(d):
    for k in chow.VALID_N:
        assert chow.triple(d, d, E) == chow.restrict_to_E(d, k).square()


@pytest.mark.parametrize("bad", [1, 3, 8, -2])
def test_restriction_rejects_n(bad):
    with pytest.raises(ValueError):
        chow.restrict_to_E(H, bad)


def test_fn_pairing():
    s = chow.FnClass(1, 0, 4)
    f = chow.FnClass(0, 1, 4)
    assert s.square() == -4 and s.dot(f) == 1 and f.square() == 0
