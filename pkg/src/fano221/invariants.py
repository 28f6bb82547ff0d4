"""Abban-Zhuang estimates for the generic member of the family.

S-invariants are integrals of volumes along the Zariski paths computed in
``zariski``; everything is exact. ``volume`` (the anticanonical degree) is a
parameter so that the prefactor linearity can be checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .chow import ANTICANONICAL, H, VALID_N, FnClass, restrict_to_E, triple
from .exact.integrate import integrate, integrate_iterated
from .exact.mpoly import MPoly, poly
from .exact.rational import ONE, ZERO, Q
from .zariski import (
    DP4,
    DP4_BLOWUP,
    DP4_PULLBACK,
    U,
    V,
    CurveConfig,
    chamber_squares,
    fn_threshold,
    pull_back,
    surface_chambers,
    threefold_path,
)

N_VAR = MPoly.var("n")


def _degree():
    return triple(ANTICANONICAL, ANTICANONICAL, ANTICANONICAL)


@dataclass
class SReport:
    target: str
    tau: object
    pieces: list  # (lo, hi, contribution)
    value: object
    beta: object
    notes: list = field(default_factory=list)


@dataclass
class DeltaCertificate:
    target: str
    candidates: list  # (label, value)
    bound: object

    @property
    def holds(self) -> bool:
        return self.bound > 1


def s_divisor(surface: str, volume=None) -> SReport:
    """S_X(S) = 1/(-K)^3 * integral of P(u)^3 over [0, tau]; A_X(S) = 1."""
    volume = _degree() if volume is None else Q(volume)
    path = threefold_path(surface)
    pieces = []
    total = ZERO
    for piece in path.pieces:
        cube = poly(triple(piece.positive, piece.positive, piece.positive))
        part = integrate(cube, "u", piece.lo, piece.hi).constant_value()
        pieces.append((piece.lo, piece.hi, part))
        total += part
    value = total / volume
    return SReport(f"surface-{surface}", path.tau, pieces, value, ONE - value)


# ---------------------------------------------------------------------------
# the H-surface: a smooth quartic del Pezzo S with the curves C1, C2, Z1, Z2

# P(u)|_S on the two pieces of the H-path, in terms of the dP4 curves
H_SURFACE_RESTRICTIONS = (
    (Q(0), Q(1), {"C1": (3 - 2 * U) / 2, "C2": (3 - 2 * U) / 2, "Z1": poly(Q(1, 2)), "Z2": poly(Q(1, 2))}),
    (Q(1), Q(3, 2), {"C1": 3 - 2 * U, "Z1": 3 - 2 * U}),
)


def restriction_consistency() -> list:
    """(P(u)|_S)^2 on S against P(u)^2 . H on X; returns mismatching pieces."""
    path = threefold_path("H")
    bad = []
    for (lo, hi, combo), piece in zip(H_SURFACE_RESTRICTIONS, path.pieces):
        on_s = poly(DP4.pair(combo, combo))
        on_x = poly(triple(piece.positive, piece.positive, H))
        if (lo, hi) != (piece.lo, piece.hi) or on_s != on_x:
            bad.append((lo, hi))
    return bad


def blowup_chambers():
    """Chambers of g^*(P(u)|_S) - vG on the blow-up of S at a general point."""
    out = []
    for lo, hi, combo in H_SURFACE_RESTRICTIONS:
        cls = pull_back(combo, DP4_PULLBACK)
        cls["G"] = poly(cls.get("G", 0)) - V
        out.extend(surface_chambers(cls, DP4_BLOWUP, (lo, hi)))
    return out


def _double(expr, ch, u0, u1):
    return integrate_iterated(expr, ("v", ch.v_lo, ch.v_hi), ("u", u0, u1)).constant_value()


@dataclass
class ChamberTerm:
    u_lo: object
    u_hi: object
    v_lo: MPoly
    v_hi: MPoly
    integrand: MPoly
    value: object


def s_w2_exceptional(cfg: CurveConfig = DP4_BLOWUP, volume=None, curve: str = "G"):
    """S(W^S; G) = 3/(-K)^3 * sum over chambers of the integral of P~^2.

    The ord-term drops out because a general point of S avoids Supp N(u).
    Returns (value, per-chamber terms).
    """
    volume = _degree() if volume is None else Q(volume)
    terms = []
    for sc in blowup_chambers():
        for ch, (square, _) in zip(sc.chambers, chamber_squares(sc, cfg, curve)):
            terms.append(ChamberTerm(sc.u_lo, sc.u_hi, ch.v_lo, ch.v_hi, square,
                                     3 * _double(square, ch, sc.u_lo, sc.u_hi) / volume))
    return sum((t.value for t in terms), ZERO), terms


def _ord_on_curve(ch, cfg: CurveConfig, through: set):
    # curves of the negative part through O meet G transversally
    out = MPoly()
    for name, coeff in ch.negative.items():
        if name in through:
            out = out + poly(coeff) * cfg.gram[cfg.index(name)][cfg.index("G")]
    return out


def point_on_curve(through: set, cfg: CurveConfig = DP4_BLOWUP, volume=None, curve: str = "G"):
    """S(W^{S,G}; O) split as (main term, F_O) for a point O on the given curves."""
    volume = _degree() if volume is None else Q(volume)
    main = ZERO
    f_o = ZERO
    for sc in blowup_chambers():
        for ch, (_, pg) in zip(sc.chambers, chamber_squares(sc, cfg, curve)):
            main += 3 * _double(pg * pg, ch, sc.u_lo, sc.u_hi) / volume
            order = _ord_on_curve(ch, cfg, through)
            if not order.is_zero():
                f_o += 6 * _double(pg * order, ch, sc.u_lo, sc.u_hi) / volume
    return main, f_o


POINT_FLAGS = {"O generic": set(), "O on C1~": {"C1~"}, "O on C2~": {"C2~"}}


def s_w3_point(on_curves: bool, volume=None):
    main, f_o = point_on_curve(POINT_FLAGS["O on C1~" if on_curves else "O generic"], volume=volume)
    return main + f_o


def f_o_value(volume=None):
    return point_on_curve(POINT_FLAGS["O on C1~"], volume=volume)[1]


def delta_bound_generic_point() -> DeltaCertificate:
    """Flag H-surface, exceptional curve G of a general point, point O in G."""
    s_h = s_divisor("H").value
    s_g = s_w2_exceptional()[0]
    s_o = max(s_w3_point(False), s_w3_point(True))
    candidates = [("1/S_X(H)", ONE / s_h), ("2/S(W;G)", 2 / s_g), ("1/max S(W;O)", ONE / s_o)]
    return DeltaCertificate("delta-generic", candidates, min(v for _, v in candidates))


# ---------------------------------------------------------------------------
# the E-surface F_n and a section-like curve C on it

ORD_MULTIPLICITIES = (0, 1, 2)  # possible ord_C(E'|_E); 2 is the worst case


def _e_restrictions(n):
    path = threefold_path("E")
    return path, [(p.lo, p.hi, restrict_to_E(p.positive, n), p.negative) for p in path.pieces]


def e_ord_term(multiplicity=2, volume=None):
    """3/(-K)^3 * integral of (P|_E)^2 * ord_C(N(u)|_E)."""
    volume = _degree() if volume is None else Q(volume)
    _, pieces = _e_restrictions(N_VAR)
    total = ZERO
    for lo, hi, cls, negative in pieces:
        coeff = poly(negative.get("E'", 0))
        if coeff.is_zero():
            continue
        integrand = poly(cls.square()) * coeff * multiplicity
        total += integrate(integrand, "u", lo, hi).constant_value()
    return 3 * total / volume


def e_volume_term(n=N_VAR, volume=None):
    """3/(-K)^3 * double integral of vol(P(u)|_E - v s); polynomial in n when n is symbolic.

    The volume is read off the nef branch of the F_n case split after
    confirming at the chamber vertices that the whole region is nef for
    every admissible n.
    """
    volume = _degree() if volume is None else Q(volume)
    _, pieces = _e_restrictions(n)
    total = MPoly()
    checked = VALID_N if isinstance(n, MPoly) else (n,)
    for lo, hi, cls, _ in pieces:
        shifted = FnClass(poly(cls.a) - V, cls.b, cls.n)
        t, nef = fn_threshold(shifted, (lo, hi), checked)
        if not nef:
            raise ValueError("P(u)|_E - v s leaves the nef cone before its pseudoeffective threshold")
        vol = -poly(shifted.n) * poly(shifted.a) ** 2 + 2 * poly(shifted.a) * poly(shifted.b)
        total = total + integrate_iterated(vol, ("v", 0, t), ("u", lo, hi))
    total = total * 3 / volume
    return total.constant_value() if total.is_constant() else total


def e_thresholds():
    """t(u) per piece of the E-path (independent of n)."""
    _, pieces = _e_restrictions(N_VAR)
    out = []
    for lo, hi, cls, _ in pieces:
        t, _ = fn_threshold(FnClass(poly(cls.a) - V, cls.b, cls.n), (lo, hi))
        out.append((lo, hi, t))
    return out


def s_w2_curve_on_E(n, multiplicity=2, volume=None):
    """Upper bound for S(W^E; C) at a given n (ord_C(E'|_E) <= multiplicity)."""
    if n not in VALID_N:
        raise ValueError(f"n must be one of {VALID_N}")
    return e_ord_term(multiplicity, volume) + e_volume_term(Q(n), volume)


def beta_certificate_curve_case() -> list:
    """Per n: min{1/S_X(E), 1/S(W^E; C)} with the worst-case ord-term."""
    inv_e = ONE / s_divisor("E").value
    out = []
    for n in VALID_N:
        s = s_w2_curve_on_E(n)
        candidates = [("1/S_X(E)", inv_e), ("1/S(W^E;C)", ONE / s)]
        out.append((n, s, DeltaCertificate(f"beta-curve n={n}", candidates,
                                           min(v for _, v in candidates))))
    return out


FORMULA_ONLY = (
    "F_P(W^{S,C}) with the N'(u)|_C term: same integrator as point_on_curve, "
    "no reference value to compare against"
)
