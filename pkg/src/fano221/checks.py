"""Verification suites behind ``fano221 verify``.

Every check records where its expected value comes from:
``golden`` (a published constant), ``derived`` (computed by an independent
route) or ``property`` (a randomized law).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import chow, invariants, oracle, quadrics, zariski
from .exact.extension import Tower, dynamic_evaluate, ext_invert, num
from .exact.integrate import integrate_iterated
from .exact.linalg import det, matmul, resultant
from .exact.mpoly import MPoly, parse_poly, poly
from .exact.rational import ONE, Q, fmt
from .normal_form import H_POLY, classify, degeneration_identity, reference_identities
from .sampling import quadric_corpus, rational, unimodular

DEFAULT_SEED = 20240607
SUITES = ("core", "action", "classify", "chow", "zariski", "delta")


@dataclass
class Check:
    name: str
    anchor: str
    expected: str
    computed: str
    passed: bool
    origin: str


def _show(x) -> str:
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_show(y) for y in x) + "]"
    if isinstance(x, MPoly) and x.is_constant():
        x = x.constant_value()
    try:
        return fmt(x)
    except TypeError:
        return str(x)


def _eq(name, anchor, expected, computed, origin="golden") -> Check:
    ok = poly(expected) == poly(computed) if not isinstance(expected, (list, tuple)) else \
        len(expected) == len(computed) and all(poly(a) == poly(b) for a, b in zip(expected, computed))
    return Check(name, anchor, _show(expected), _show(computed), ok, origin)


def _law(name, anchor, failures: int, trials: int) -> Check:
    return Check(name, anchor, f"0 failures in {trials}", f"{failures} failures in {trials}",
                 failures == 0, "property")


# ---------------------------------------------------------------------------

def _random_poly(rng, names, terms=4, deg=3):
    out = MPoly()
    for _ in range(terms):
        mono = MPoly.const(rational(rng))
        for n in names:
            mono = mono * MPoly.var(n) ** rng.randint(0, deg)
        out = out + mono
    return out


def _cofactor_det(m):
    if len(m) == 1:
        return poly(m[0][0])
    total = MPoly()
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total = total + (-1) ** j * poly(m[0][j]) * _cofactor_det(minor)
    return total


def suite_core(rng: random.Random, trials: int = 20) -> list:
    names = ("x0", "x1", "u")
    ring = 0
    for _ in range(trials):
        p, q, r = (_random_poly(rng, names) for _ in range(3))
        if not ((p + q) * r == p * r + q * r and p * q == q * p and (p * q) * r == p * (q * r)):
            ring += 1
        if not q.is_zero() and (p * q).exquo(q) != p:
            ring += 1
    dets = 0
    for _ in range(trials // 2):
        m = [[_random_poly(rng, ("u",), 2, 2) for _ in range(4)] for _ in range(4)]
        if det(m) != _cofactor_det(m):
            dets += 1
    res = 0
    c = MPoly.var("c")
    for _ in range(trials // 2):
        common = c - rational(rng)
        f = common * (c**2 + rational(rng) * c + rational(rng))
        g = common * (c + rational(rng))
        h = c**3 - rational(rng) * c + 1 + MPoly.var("u")
        if not resultant(f, g, "c").is_zero() or resultant(h, h.diff("c") + 1, "c").is_zero():
            res += 1
    fubini = 0
    u, v = MPoly.vars("u", "v")
    for _ in range(trials // 2):
        p = _random_poly(rng, ("u", "v"), 3, 3)
        a, b, cc, d = (rational(rng) for _ in range(4))
        one = integrate_iterated(p, ("u", a, b), ("v", cc, d))
        two = integrate_iterated(p, ("v", cc, d), ("u", a, b))
        if one != two:
            fubini += 1
    inv = 0

    def inverse_roundtrip(tower: Tower):
        field, t = tower.adjoin_root([num(-2), num(0), num(0), num(1)], "t")
        x = t * t + t * rational(rng) + rational(rng)
        return (x * ext_invert(x) - 1).is_zero()

    for _ in range(trials // 2):
        ok, _ = dynamic_evaluate(inverse_roundtrip)
        inv += 0 if ok else 1
    return [
        _law("ring laws and exact division", "polynomial arithmetic", ring, trials),
        _law("Bareiss determinant = cofactor expansion", "determinant", dets, trials // 2),
        _law("resultant vanishes iff common factor", "resultant", res, trials // 2),
        _law("iterated integrals commute", "integration", fubini, trials // 2),
        _law("x * x^-1 = 1 in Q(2^(1/3))", "extension fields", inv, trials // 2),
    ]


def suite_action(rng: random.Random, trials: int = 100) -> list:
    hom = 0
    for _ in range(trials):
        g, h = unimodular(rng), unimodular(rng)
        lhs = quadrics.sym4(g @ h)
        rhs = matmul(quadrics.sym4(g), quadrics.sym4(h))
        if lhs != rhs or det(quadrics.sym4(g)) != 1:
            hom += 1
    c4 = 0
    for _ in range(trials // 4):
        g = unimodular(rng)
        p = quadrics.c4_point(rational(rng), rational(rng) or ONE)
        if not quadrics.is_on_c4(quadrics.apply_sym4(g, p)):
            c4 += 1
    action = 0
    for _ in range(trials // 10):
        s, g = tuple(rational(rng) for _ in range(6)), unimodular(rng)
        if tuple(quadrics.pullback(s, g)) != tuple(quadrics.pullback_by_substitution(s, g)):
            action += 1
    s = quadrics.symbolic_s()
    refs = reference_identities()
    hess = quadrics.hessian_poly()
    fac = quadrics.HESSIAN_FACTORS
    return [
        _law("sym4 is a homomorphism with det 1", "sym4", hom, trials),
        _law("sym4 preserves C4", "C4 invariance", c4, trials // 4),
        _law("action matrix = substitution", "pullback", action, trials // 10),
        _eq("iota on coefficients", "involutions", [s[4], s[3], s[2], s[1], s[0], s[5]],
            list(quadrics.involution_act(s, "iota"))),
        _eq("tau on coefficients", "involutions", [s[0], -s[1], s[2], -s[3], s[4], s[5]],
            list(quadrics.involution_act(s, "tau"))),
        _eq("C* weights", "torus action", [6, 5, 4, 3, 2, 4], list(quadrics.cstar_weights())),
        _eq("Hessian = -2 * product of factors", "Hessian", -2 * fac[0] * fac[1], hess),
        _eq("Hessian at s0 = s1 = 0", "Hessian", parse_poly("32*s5^2*(3*s5+s2)*(s2-s5)^2"),
            hess.subs({"s0": 0, "s1": 0})),
        _eq("Res_c(g1, g2) = h^3", "elimination", refs["h_cubed"], refs["res_g"]),
        _eq("Res_c(g1, g2) / h^3", "elimination", 64, refs["res_g_over_h_cubed"], "derived"),
        _eq("Res_c(s4', s3' - 2b s4') = h", "elimination", H_POLY, refs["res_h0"]),
        Check("s3' - 2b s4' is free of b", "elimination", "degree 0 in b",
              f"degree {max(refs['combo'].degree('b'), 0)} in b", refs["combo_b_free"], "golden"),
    ]


def suite_classify(rng: random.Random, count: int = 25, conjugates: int = 10) -> list:
    corpus = quadric_corpus(rng, count)
    bad_case = bad_replay = bad_invariance = 0
    for s in corpus:
        result = classify(s)
        if result.label.case not in (1, 2, 3, 4, 5):
            bad_case += 1
        replayed = result.witness.replay(tuple(num(x) for x in s))
        if not quadrics.projectively_equal(replayed, result.normal_form):
            bad_replay += 1
        for _ in range(conjugates):
            other = classify(quadrics.pullback(s, unimodular(rng)))
            if other.label.case != result.label.case:
                bad_invariance += 1
    examples = [((0, 1, 0, 0, 0, 1), 5), ((1, 0, 0, 0, 0, 1), 3), ((0, 0, 1, 0, 0, -1), 2)]
    checks = [
        _law("classification ends in cases 1-5", "classification", bad_case, count),
        _law("witness replays to the normal form", "classification", bad_replay, count),
        _law("case invariant under random pullback", "classification", bad_invariance,
             count * conjugates),
    ]
    for s, case in examples:
        got = classify(tuple(Q(x) for x in s)).label.case
        checks.append(_eq(f"classify {','.join(map(str, s))}", "normal forms", case, got))
    s0, s1, s2 = MPoly.vars("s0", "s1", "s2")
    deg = degeneration_identity((s0, s1, s2, 0, 0, 1))
    checks.append(_eq("degeneration identity", "test configuration", deg["expected"], deg["substituted"]))
    return checks


def suite_chow(rng: random.Random) -> list:
    H, E = chow.H, chow.E
    table = chow.intersection_table()
    n = MPoly.var("n")
    checks = [
        _eq("H^3", "intersection table", 2, chow.triple(H, H, H)),
        _eq("H^2 E", "intersection table", 0, chow.triple(H, H, E)),
        _eq("H E^2", "intersection table", -4, chow.triple(H, E, E)),
        _eq("E^3", "intersection table", -10, chow.triple(E, E, E)),
        _eq("deg N", "normal bundle", 10, chow.deg_normal_bundle()),
        _eq("(2H - E)^3", "intersection table", 2, chow.triple(chow.H_PRIME, chow.H_PRIME, chow.H_PRIME), "derived"),
        _eq("(-K)^3", "anticanonical degree", 28, chow.anticanonical_degree()),
        _eq("E . f'", "curve classes", 2, chow.curve_pair(E, chow.FIBRE_PRIME), "derived"),
        _eq("-K . f", "curve classes", 1, chow.curve_pair(chow.ANTICANONICAL, chow.FIBRE), "derived"),
        _eq("-K . f'", "curve classes", 1, chow.curve_pair(chow.ANTICANONICAL, chow.FIBRE_PRIME), "derived"),
        _eq("E'|_E", "restriction to E", [2, n + 2],
            [chow.restrict_to_E(chow.E_PRIME, n).a, chow.restrict_to_E(chow.E_PRIME, n).b]),
        _eq("E^3 = -deg N", "normal bundle", -chow.deg_normal_bundle(), table[(0, 3)], "derived"),
    ]
    bad = 0
    for _ in range(50):
        d = chow.DivClass(rational(rng), rational(rng))
        for k in chow.VALID_N:
            if chow.triple(d, d, E) != chow.restrict_to_E(d, k).square():
                bad += 1
    checks.append(_law("d.d.E = (d|_E)^2", "restriction to E", bad, 200))
    return checks


def suite_zariski(rng: random.Random) -> list:
    u, v = MPoly.vars("u", "v")
    ph = zariski.threefold_path("H")
    pe = zariski.threefold_path("E")
    checks = [
        _eq("tau(H)", "threefold path", Q(3, 2), ph.tau),
        _eq("N(u) for S = H on [1, 3/2]", "threefold path", u - 1, ph.pieces[1].negative["E'"]),
        _eq("tau(E)", "threefold path", 1, pe.tau),
        _eq("nef threshold for S = E", "threefold path", Q(1, 2), pe.pieces[0].hi),
        _eq("N(u) for S = E on [1/2, 1]", "threefold path", 2 * u - 1, pe.pieces[1].negative["E'"]),
        Check("path decompositions valid", "threefold path", "[]",
              str(zariski.verify_path(ph, chow.H) + zariski.verify_path(pe, chow.E)),
              not (zariski.verify_path(ph, chow.H) or zariski.verify_path(pe, chow.E)), "property"),
        Check("restriction to S matches P^2 . H", "H-surface", "[]",
              str(invariants.restriction_consistency()), not invariants.restriction_consistency(), "derived"),
    ]
    chambers = invariants.blowup_chambers()
    flat = [(sc, ch) for sc in chambers for ch in sc.chambers]
    squares = [sq for sc in chambers for sq, _ in zariski.chamber_squares(sc, zariski.DP4_BLOWUP)]
    expected_sq = [parse_poly("2*u^2 - v^2 - 12*u + 14"), parse_poly("(2*u+v-4)*(2*u+v-8)"),
                   parse_poly("(4*u-6+v)*(4*u-6-v)")]
    checks += [
        _eq("t(u) on [0, 1]", "blown-up dP4", 4 - 2 * u, chambers[0].threshold),
        _eq("t(u) on [1, 3/2]", "blown-up dP4", 6 - 4 * u, chambers[1].threshold),
        _eq("first breakpoint", "blown-up dP4", 3 - u, flat[0][1].v_hi),
        _eq("N on the second chamber", "blown-up dP4", [u + v - 3, u + v - 3],
            [flat[1][1].negative.get("C1~", 0), flat[1][1].negative.get("C2~", 0)]),
        _eq("P^2 per chamber", "blown-up dP4", expected_sq, squares),
        _eq("P^2 continuous across v = 3 - u", "blown-up dP4", 0,
            (squares[0] - squares[1]).subs({"v": 3 - u}), "derived"),
    ]
    ts = invariants.e_thresholds()
    checks += [
        _eq("t(u) on E", "E-surface", [1 + u, 3 - 3 * u], [t for _, _, t in ts]),
        _eq("(P|_E)^2 on [1/2, 1]", "E-surface", 54 * (1 - u) ** 2,
            chow.restrict_to_E(pe.pieces[1].positive, MPoly.var("n")).square()),
        _eq("vol(s + f) on F_0", "Hirzebruch volume", 2, zariski.hirzebruch_vol(1, 1, 0), "derived"),
    ]
    return checks


def suite_delta(rng: random.Random) -> list:
    sh, se = invariants.s_divisor("H"), invariants.s_divisor("E")
    swg, _ = invariants.s_w2_exceptional()
    s_off, s_on = invariants.s_w3_point(False), invariants.s_w3_point(True)
    f_o = invariants.f_o_value()
    cert = invariants.delta_bound_generic_point()
    ord_term = invariants.e_ord_term()
    vol = invariants.e_volume_term()
    n = MPoly.var("n")
    rows = invariants.beta_certificate_curve_case()
    checks = [
        _eq("S_X(H)", "S-invariants", Q(51, 112), sh.value),
        _eq("beta(H)", "S-invariants", Q(61, 112), sh.beta),
        _eq("S_X(E)", "S-invariants", Q(19, 56), se.value),
        _eq("beta(E)", "S-invariants", Q(37, 56), se.beta),
        _eq("S(W;G)", "generic point", Q(111, 56), swg),
        _eq("S(W;O), O off the curves", "generic point", Q(51, 56), s_off),
        _eq("S(W;O), O on the curves", "generic point", Q(111, 112), s_on),
        _eq("F_O", "generic point", Q(9, 112), f_o),
        _eq("delta bound", "generic point", Q(112, 111), cert.bound),
        _eq("delta candidates", "generic point", [Q(112, 51), Q(112, 111), Q(112, 111)],
            [c for _, c in cert.candidates]),
        _eq("ord-term", "E-surface", Q(27, 224), ord_term),
        _eq("volume term", "E-surface", (23 * n + 546) / 896, vol),
        _eq("S(W^E;C) at n = 6", "E-surface", Q(99, 112), rows[-1][1]),
        Check("certificates exceed 1 for all n", "E-surface", "all > 1",
              ", ".join(f"n={k}: {fmt(c.bound)}" for k, _, c in rows),
              all(c.bound > 1 for _, _, c in rows) and cert.bound > 1, "golden"),
        _eq("prefactor linearity", "S-invariants", sh.value / 2, invariants.s_divisor("H", 56).value,
            "derived"),
    ]
    pairs = [
        ("S(W;G)", oracle.s_w_g(), swg),
        ("S(W;O) main term", oracle.s_w_o_main(), s_off),
        ("F_O", oracle.f_o(), f_o),
        ("ord-term", oracle.e_ord_term(), ord_term),
    ] + [(f"volume term n={k}", oracle.e_volume_term(k), vol.subs({"n": k}).constant_value())
         for k in chow.VALID_N]
    for label, approx, exact in pairs:
        err = oracle.rel_err(approx, exact)
        checks.append(Check(f"Simpson oracle: {label}", "quadrature", "rel err <= 1e-06",
                            f"{err:.2e}", err <= 1e-6, "derived"))
    return checks


def run_suite(name: str, seed: int = DEFAULT_SEED, count: int = 25) -> list:
    if name == "all":
        out = []
        for sub in SUITES:
            out.extend(run_suite(sub, seed, count))
        return out
    rng = random.Random(f"{name}:{seed}")
    if name == "classify":
        return suite_classify(rng, count)
    fn = {"core": suite_core, "action": suite_action, "chow": suite_chow,
          "zariski": suite_zariski, "delta": suite_delta}.get(name)
    if fn is None:
        raise KeyError(name)
    return fn(rng)
