"""Zariski decompositions along one- and two-parameter families.

On X the pseudoeffective cone is spanned by E and E', and the Mori cone
by the fibres f and f'; a class stops being nef when it becomes negative
on one fibre, and the matching exceptional divisor enters its negative part.

On surfaces the caller supplies a finite configuration of curves with a
Gram matrix; all classes are affine in (u, v) so sign conditions are
checked at the vertices of each chamber.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .chow import (
    ANTICANONICAL,
    E,
    E_PRIME,
    FIBRE,
    FIBRE_PRIME,
    H,
    DivClass,
    FnClass,
    curve_pair,
)
from .exact.linalg import det
from .exact.mpoly import MPoly, poly
from .exact.rational import ONE, ZERO, Q

U, V = MPoly.vars("u", "v")


class NotAffine(ValueError):
    pass


class NotNegativeDefinite(ValueError):
    pass


def _affine_root(expr: MPoly, var: str):
    """Solve an affine equation expr = 0 for ``var``; returns a polynomial in the other variables."""
    expr = poly(expr)
    if expr.degree(var) != 1:
        raise NotAffine(f"{expr} is not affine in {var}")
    slope = expr.coeff(var, 1)
    if not slope.is_constant():
        raise NotAffine(f"{expr} has a non-constant slope in {var}")
    return -expr.coeff(var, 0) / slope.constant_value()


def _check_affine(expr, variables=("u", "v")):
    p = poly(expr)
    if p.degree() > 1:
        raise NotAffine(f"{p} is not affine")
    extra = set(p.gens) - set(variables)
    if extra:
        raise NotAffine(f"{p} depends on {sorted(extra)}")


# ---------------------------------------------------------------------------
# the threefold

@dataclass
class PathPiece:
    lo: object
    hi: object
    positive: DivClass
    negative: dict  # name -> coefficient polynomial in u


@dataclass
class DivisorPath:
    surface: str
    pieces: list
    tau: object


SURFACES = {"H": H, "E": E}
# fibre classes and the exceptional divisors they sweep out
RULINGS = (("f", FIBRE, "E", E), ("f'", FIBRE_PRIME, "E'", E_PRIME))


def threefold_path(surface: str) -> DivisorPath:
    """Piecewise Zariski decomposition of -K_X - u S for S = H or S = E."""
    if surface not in SURFACES:
        raise ValueError(f"unsupported surface {surface!r}")
    s = SURFACES[surface]
    d = ANTICANONICAL - s * U
    pieces = []
    lo = ZERO
    negative: dict = {}
    positive = d
    for _ in range(len(RULINGS) + 1):
        pairings = [(name, gamma, ename, ediv, poly(curve_pair(positive, gamma)))
                    for name, gamma, ename, ediv in RULINGS]
        # first u > lo where a fibre pairing changes sign
        events = []
        for name, gamma, ename, ediv, val in pairings:
            if val.degree("u") == 1 and val.coeff("u", 1).constant_value() < 0:
                events.append((_affine_root(val, "u").constant_value(), name, gamma, ename, ediv))
        # where the positive part itself vanishes
        end = _vanishing_point(positive)
        nxt = [e for e in events if e[0] > lo]
        nxt.sort(key=lambda e: e[0])
        if nxt and (end is None or nxt[0][0] < end):
            hi, name, gamma, ename, ediv = nxt[0]
            pieces.append(PathPiece(lo, hi, positive, dict(negative)))
            # beyond hi, subtract c(u) * ediv with (positive - c ediv) . gamma = 0
            c = poly(curve_pair(positive, gamma)) / curve_pair(ediv, gamma)
            negative[ename] = poly(negative.get(ename, 0)) + c
            positive = positive - ediv * c
            lo = hi
            continue
        if end is None:
            raise ValueError("positive part never vanishes")
        pieces.append(PathPiece(lo, end, positive, dict(negative)))
        return DivisorPath(surface, pieces, end)
    raise RuntimeError("too many pieces")


def _vanishing_point(d: DivClass):
    """The u where both coefficients of d vanish, if any."""
    a, b = poly(d.alpha), poly(d.beta)
    roots = []
    for c in (a, b):
        if c.is_zero():
            continue
        if c.degree("u") != 1:
            return None
        roots.append(_affine_root(c, "u").constant_value())
    if roots and all(r == roots[0] for r in roots):
        return roots[0]
    return None


def verify_path(path: DivisorPath, surface_class: DivClass) -> list:
    """Decomposition identity and nefness of P at piece endpoints; returns failures."""
    problems = []
    target = ANTICANONICAL - surface_class * U
    for piece in path.pieces:
        total = piece.positive
        for name, c in piece.negative.items():
            total = total + dict(E=E, **{"E'": E_PRIME})[name] * c
        if poly(total.alpha) != poly(target.alpha) or poly(total.beta) != poly(target.beta):
            problems.append(f"P + N != D on [{piece.lo}, {piece.hi}]")
        for u in (piece.lo, piece.hi):
            for _, gamma, _, _ in RULINGS:
                if poly(curve_pair(piece.positive, gamma)).subs({"u": u}).constant_value() < 0:
                    problems.append(f"P not nef at u = {u}")
            for name, c in piece.negative.items():
                if poly(c).subs({"u": u}).constant_value() < 0:
                    problems.append(f"negative coefficient of {name} at u = {u}")
    return problems


# ---------------------------------------------------------------------------
# surfaces

@dataclass
class CurveConfig:
    names: tuple
    gram: tuple
    incidence: dict = field(default_factory=dict)  # point -> set of curve names

    def __post_init__(self):
        n = len(self.names)
        g = tuple(tuple(Q(x) for x in row) for row in self.gram)
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("Gram matrix shape does not match the curve list")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix is not symmetric")
        self.gram = g

    def index(self, name):
        return self.names.index(name)

    def pair(self, x: dict, y: dict):
        """Intersection of two combinations {name: coeff}."""
        total = 0
        for a, ca in x.items():
            for b, cb in y.items():
                gab = self.gram[self.index(a)][self.index(b)]
                if gab:
                    total = total + ca * cb * gab
        return total

    def sub_gram(self, names):
        idx = [self.index(n) for n in names]
        return [[self.gram[i][j] for j in idx] for i in idx]


def is_negative_definite(gram) -> bool:
    """Leading principal minors of -G are all positive."""
    n = len(gram)
    for k in range(1, n + 1):
        minor = det([[-gram[i][j] for j in range(k)] for i in range(k)]).constant_value()
        if minor <= 0:
            return False
    return True


DP4 = CurveConfig(
    ("C1", "C2", "Z1", "Z2"),
    ((0, 1, 2, 1), (1, 0, 1, 2), (2, 1, 0, 1), (1, 2, 1, 0)),
)


def blow_up_config(cfg: CurveConfig, through: Sequence[str], exceptional: str = "G",
                   rename=lambda n: n + "~") -> tuple:
    """Blow up a smooth point lying on the curves ``through`` (each smooth there).

    Returns the configuration of strict transforms plus the exceptional curve,
    and the pullback map {old name: {new name: coeff}}.
    """
    names = tuple(rename(n) for n in cfg.names) + (exceptional,)
    n = len(cfg.names)
    mult = [1 if name in through else 0 for name in cfg.names]
    gram = [[cfg.gram[i][j] - mult[i] * mult[j] for j in range(n)] + [mult[i]] for i in range(n)]
    gram.append(mult + [-1])
    pullback = {
        old: ({rename(old): ONE, exceptional: Q(mult[i])} if mult[i] else {rename(old): ONE})
        for i, old in enumerate(cfg.names)
    }
    return CurveConfig(names, tuple(tuple(r) for r in gram)), pullback


def _named_blowup():
    cfg, pull = blow_up_config(DP4, DP4.names)
    cfg.incidence = {"O on curves": {"C1~", "C2~"}, "O generic": set()}
    return cfg, pull


DP4_BLOWUP, DP4_PULLBACK = _named_blowup()


def hirzebruch_config(n) -> CurveConfig:
    return CurveConfig(("s", "f"), ((-n, 1), (1, 0)))


def named_config(name: str, n=None) -> CurveConfig:
    if name == "dp4":
        return DP4
    if name == "dp4-blowup":
        return DP4_BLOWUP
    if name == "hirzebruch-n":
        if n is None:
            raise ValueError("hirzebruch-n needs n")
        return hirzebruch_config(n)
    raise ValueError(f"unknown configuration {name!r}")


def pull_back(combo: dict, pullback: dict) -> dict:
    out: dict = {}
    for name, c in combo.items():
        for new, k in pullback[name].items():
            out[new] = poly(out.get(new, 0)) + poly(c) * k
    return {k: v for k, v in out.items() if not poly(v).is_zero()}


@dataclass
class Chamber:
    v_lo: MPoly
    v_hi: MPoly
    positive: dict
    negative: dict
    support: tuple


@dataclass
class SurfaceChambers:
    u_lo: object
    u_hi: object
    chambers: list

    @property
    def threshold(self) -> MPoly:
        return self.chambers[-1].v_hi


def _solve_support(cfg: CurveConfig, cls: dict, support: tuple) -> dict:
    """Coefficients x_C (C in support) with (cls - sum x_C C) . C' = 0 for C' in support."""
    if not support:
        return {}
    g = cfg.sub_gram(support)
    rhs = [poly(cfg.pair(cls, {c: ONE})) for c in support]
    n = len(support)
    # Cramer's rule: the Gram block is constant, the right-hand sides are affine
    d = det(g).constant_value()
    out = {}
    for k, c in enumerate(support):
        total = MPoly()
        for i in range(n):
            minor = [[g[r][col] for col in range(n) if col != k] for r in range(n) if r != i]
            cof = det(minor).constant_value() * (-1) ** (i + k)
            total = total + rhs[i] * cof
        out[c] = total / d
    return out


def _values_at(expr, u, v):
    return poly(expr).subs({"u": u, "v": v}).constant_value()


def surface_chambers(cls: dict, cfg: CurveConfig, u_interval) -> list:
    """Zariski chambers of cls(u, v) over u in ``u_interval`` and v >= 0.

    Returns a list of SurfaceChambers (one per u-subinterval; the interval is
    split where the order of two breakpoints changes).
    """
    for c in cls.values():
        _check_affine(c)
    u0, u1 = (Q(x) for x in u_interval)
    return _chambers_on(cls, cfg, u0, u1)


def _chambers_on(cls, cfg, u0, u1):
    chambers = []
    support: tuple = ()
    v_lo = MPoly()
    for _ in range(len(cfg.names) + 1):
        x = _solve_support(cfg, cls, support)
        positive = dict(cls)
        for c, coeff in x.items():
            positive[c] = poly(positive.get(c, 0)) - coeff
        pairings = {c: poly(cfg.pair(positive, {c: ONE})) for c in cfg.names if c not in support}
        # candidate breakpoints: where a pairing decreasing in v reaches zero
        roots = {}
        for c, val in pairings.items():
            if val.degree("v") < 1:
                continue
            if val.coeff("v", 1).constant_value() >= 0:
                continue
            roots.setdefault(_affine_root(val, "v"), []).append(c)
        candidates = sorted(roots.items(), key=lambda item: (
            _values_at(item[0], u0, 0), _values_at(item[0], u1, 0)))
        candidates = [item for item in candidates if _strictly_above(item[0], v_lo, u0, u1)]
        if not candidates:
            raise ValueError("class stays nef for all v; no pseudoeffective threshold")
        first_root, joiners = candidates[0]
        for other_root, _ in candidates[1:]:
            split = _crossing(first_root, other_root, u0, u1)
            if split is not None:
                return _chambers_on(cls, cfg, u0, split) + _chambers_on(cls, cfg, split, u1)
        chamber = Chamber(v_lo, first_root, positive, x, support)
        _validate_chamber(chamber, cfg, u0, u1)
        chambers.append(chamber)
        new_support = support + tuple(sorted(joiners, key=cfg.index))
        if not is_negative_definite(cfg.sub_gram(new_support)):
            square = poly(cfg.pair(positive, positive)).subs({"v": first_root})
            if not square.is_zero():
                raise NotNegativeDefinite("support stops being negative definite before P^2 = 0")
            return [SurfaceChambers(u0, u1, chambers)]
        support = new_support
        v_lo = first_root
    raise RuntimeError("chamber search did not terminate")


def _strictly_above(root, v_lo, u0, u1) -> bool:
    a = _values_at(root - v_lo, u0, 0)
    b = _values_at(root - v_lo, u1, 0)
    return a >= 0 and b >= 0 and (a > 0 or b > 0)


def _crossing(r1, r2, u0, u1):
    diff = poly(r2) - poly(r1)
    if diff.degree("u") < 1:
        return None
    cross = _affine_root(diff, "u").constant_value()
    if u0 < cross < u1:
        return cross
    return None


def chamber_vertices(ch: Chamber, u0, u1) -> list:
    return [(u, _values_at(v, u, 0)) for u in (u0, u1) for v in (ch.v_lo, ch.v_hi)]


def _validate_chamber(ch: Chamber, cfg: CurveConfig, u0, u1):
    for u, v in chamber_vertices(ch, u0, u1):
        if v < _values_at(ch.v_lo, u, 0):
            raise ValueError("empty chamber")
        for c in cfg.names:
            val = _values_at(cfg.pair(ch.positive, {c: ONE}), u, v)
            if c in ch.support:
                if val != 0:
                    raise ValueError(f"P . {c} != 0 on the support")
            elif val < 0:
                raise ValueError(f"P . {c} < 0 at (u, v) = ({u}, {v})")
        for c, coeff in ch.negative.items():
            if _values_at(coeff, u, v) < 0:
                raise ValueError(f"negative coefficient of {c}")
    if not is_negative_definite(cfg.sub_gram(ch.support)) and ch.support:
        raise NotNegativeDefinite("support Gram matrix is not negative definite")


def chamber_squares(sc: SurfaceChambers, cfg: CurveConfig, curve: str = "G") -> list:
    """(P^2, P . curve) on each chamber, as polynomials in (u, v)."""
    return [
        (poly(cfg.pair(ch.positive, ch.positive)), poly(cfg.pair(ch.positive, {curve: ONE})))
        for ch in sc.chambers
    ]


# ---------------------------------------------------------------------------
# Hirzebruch surfaces

def hirzebruch_vol(a, b, n):
    """Volume of a s + b f on F_n.

    With rational data returns a rational. With polynomial data returns the
    list of (condition, expression) pieces for the caller to integrate.
    """
    a_p, b_p = poly(a), poly(b)
    if a_p.is_constant() and b_p.is_constant() and not isinstance(n, MPoly):
        a, b, n = a_p.constant_value(), b_p.constant_value(), Q(n)
        if a < 0 or b < 0:
            return ZERO
        if b >= n * a:
            return -n * a * a + 2 * a * b
        return b * b / n
    pieces = [
        ("a < 0 or b < 0", MPoly()),
        ("b >= n*a >= 0", -poly(n) * a_p * a_p + 2 * a_p * b_p),
    ]
    if not (isinstance(n, (int,)) and n == 0):
        pieces.append(("0 <= b < n*a", b_p * b_p / n if not isinstance(n, MPoly) else None))
    return pieces


def fn_threshold(cls: FnClass, u_interval, n_values=(0, 2, 4, 6)):
    """Pseudoeffective threshold in v of cls(u, v) (a decreasing in v), and a nefness check.

    Returns (t(u), nef_everywhere) where nef_everywhere means b >= n a and
    a, b >= 0 on the whole region 0 <= v <= t(u), checked at the vertices.
    """
    a, b = poly(cls.a), poly(cls.b)
    _check_affine(a)
    t = _affine_root(a, "v")
    u0, u1 = (Q(x) for x in u_interval)
    nef = True
    for n in n_values:
        bn = b.subs({"n": n}) if "n" in b.gens else b
        tn = t.subs({"n": n}) if "n" in t.gens else t
        _check_affine(bn)
        for u in (u0, u1):
            for v in (ZERO, _values_at(tn, u, 0)):
                av, bv = _values_at(a.subs({"n": n}), u, v), _values_at(bn, u, v)
                if av < 0 or bv < 0 or bv < n * av:
                    nef = False
    return t, nef
