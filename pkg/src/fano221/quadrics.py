"""The SL2 representation on P^4 and its action on quadrics through C4.

Quadrics through the twisted quartic are written ``sum s_i f_i``; a
coefficient vector is any length-6 sequence whose entries are rationals,
polynomials (``MPoly``) or extension-field elements (``Num``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .exact.extension import Num
from .exact.linalg import det
from .exact.mpoly import MPoly, evaluate, parse_poly, poly
from .exact.rational import ONE, ZERO, Q

XS = tuple(f"x{i}" for i in range(5))
SS = tuple(f"s{i}" for i in range(6))

F_TEXT = (
    "x3^2 - x2*x4",
    "x2*x3 - x1*x4",
    "x2^2 - x0*x4",
    "x1*x2 - x0*x3",
    "x1^2 - x0*x2",
    "3*x2^2 - 4*x1*x3 + x0*x4",
)
F = tuple(parse_poly(t) for t in F_TEXT)

V3_CUBIC = parse_poly("x0*x3^2 - 2*x1*x2*x3 - x0*x2*x4 + x1^2*x4 + x2^3")

# the two factors of the Hessian determinant, up to the constant -2
HESSIAN_FACTOR_TEXT = (
    "s0*s4 - s1*s3 + s2^2 + 2*s2*s5 - 3*s5^2",
    "4*s0*s2*s4 - s0*s3^2 - 4*s0*s4*s5 - s1^2*s4 + 4*s1*s3*s5 - 16*s2*s5^2 + 16*s5^3",
)
HESSIAN_FACTORS = tuple(parse_poly(t) for t in HESSIAN_FACTOR_TEXT)

MONOMIALS = tuple(combinations_with_replacement(range(5), 2))


class NotThroughC4(ValueError):
    """A quadratic form is not in the span of f0..f5."""

    def __init__(self, residual):
        super().__init__(f"quadric does not contain C4; residual {residual}")
        self.residual = residual


class NotUnimodular(ValueError):
    pass


def _is_zero(x) -> bool:
    if isinstance(x, Num):
        return x.is_zero()
    if isinstance(x, MPoly):
        return x.is_zero()
    return x == 0


# ---------------------------------------------------------------------------
# SL2 elements and sym4

@dataclass(frozen=True)
class SL2Elem:
    a: object
    b: object
    c: object
    d: object

    def det(self):
        return self.a * self.d - self.b * self.c

    def check(self) -> "SL2Elem":
        if not _is_zero(self.det() - 1):
            raise NotUnimodular(f"ad - bc = {self.det()} is not 1")
        return self

    def __matmul__(self, other: "SL2Elem") -> "SL2Elem":
        return SL2Elem(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @classmethod
    def identity(cls):
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def upper(cls, b):
        return cls(ONE, b, ZERO, ONE)

    @classmethod
    def lower(cls, c):
        return cls(ONE, ZERO, c, ONE)

    @classmethod
    def diagonal(cls, mu):
        return cls(mu, ZERO, ZERO, 1 / mu)

    @classmethod
    def symbolic(cls):
        return cls(*MPoly.vars("a", "b", "c", "d"))


def sym4(g: SL2Elem, check: bool = True):
    """The 5x5 matrix of g acting on binary quartics."""
    if check:
        g.check()
    a, b, c, d = g.a, g.b, g.c, g.d
    return [
        [a**4, 4 * a**3 * b, 6 * a**2 * b**2, 4 * a * b**3, b**4],
        [a**3 * c, a**3 * d + 3 * a**2 * b * c, 3 * a**2 * b * d + 3 * a * b**2 * c,
         3 * a * b**2 * d + b**3 * c, b**3 * d],
        [a**2 * c**2, 2 * a**2 * c * d + 2 * a * b * c**2,
         a**2 * d**2 + 4 * a * b * c * d + b**2 * c**2,
         2 * a * b * d**2 + 2 * b**2 * c * d, b**2 * d**2],
        [c**3 * a, 3 * a * c**2 * d + b * c**3, 3 * a * c * d**2 + 3 * b * c**2 * d,
         a * d**3 + 3 * b * c * d**2, d**3 * b],
        [c**4, 4 * c**3 * d, 6 * c**2 * d**2, 4 * c * d**3, d**4],
    ]


# ---------------------------------------------------------------------------
# quadratic forms, Gram matrices and the f-basis

def form_coeffs(q: MPoly) -> list:
    """Coefficients of the 15 monomials x_i x_j (i <= j); entries may be polynomials."""
    q = poly(q)
    out = []
    for i, j in MONOMIALS:
        c = q.coeff(f"x{i}", 2 if i == j else 1)
        if i != j:
            c = c.coeff(f"x{j}", 1)
        out.append(c)
    return out


def form_from_coeffs(coeffs: Sequence) -> MPoly:
    x = MPoly.vars(*XS)
    total = MPoly()
    for (i, j), c in zip(MONOMIALS, coeffs):
        total = total + poly(c) * x[i] * x[j]
    return total


def gram_of_form(q: MPoly) -> list:
    """Symmetric matrix G with q(x) = x^T G x."""
    g = [[ZERO] * 5 for _ in range(5)]
    for (i, j), c in zip(MONOMIALS, form_coeffs(q)):
        val = c.constant_value()
        if i == j:
            g[i][i] = val
        else:
            g[i][j] = g[j][i] = val / 2
    return g


def form_of_gram(g) -> MPoly:
    coeffs = [Q(g[i][i]) if i == j else Q(g[i][j]) + Q(g[j][i]) for i, j in MONOMIALS]
    return form_from_coeffs(coeffs)


def _basis_matrix():
    """15 x 6 rational matrix: column k holds the monomial coefficients of f_k."""
    cols = [[c.constant_value() for c in form_coeffs(f)] for f in F]
    return [[cols[k][r] for k in range(6)] for r in range(15)]


@lru_cache(maxsize=None)
def _left_inverse():
    """Pick 6 monomial rows with an invertible 6x6 block and invert it exactly."""
    a = _basis_matrix()
    chosen, rows = [], []
    for r in range(15):
        trial = rows + [a[r]]
        if _rank(trial) == len(trial):
            chosen.append(r)
            rows = trial
        if len(chosen) == 6:
            break
    inv = _invert(rows)
    return tuple(chosen), inv


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][c] / m[rank][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _invert(rows):
    n = len(rows)
    m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = ONE / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [r[n:] for r in m]


def _combine(coeffs, weights):
    total = None
    for w, c in zip(weights, coeffs):
        if w == 0:
            continue
        term = c * w
        total = term if total is None else total + term
    return total if total is not None else coeffs[0] * 0


def express_in_basis(q: MPoly) -> tuple:
    """The unique (s_0..s_5) with q = sum s_i f_i; raises NotThroughC4 otherwise.

    Works for forms whose coefficients are polynomials in other variables.
    """
    y = form_coeffs(q)
    rows, inv = _left_inverse()
    sub = [y[r] for r in rows]
    s = [_simplify(_combine(sub, inv[k])) for k in range(6)]
    a = _basis_matrix()
    residual = {}
    for r, (i, j) in enumerate(MONOMIALS):
        back = _combine(s, a[r])
        diff = y[r] - back
        if not diff.is_zero():
            residual[f"x{i}*x{j}"] = str(diff)
    if residual:
        raise NotThroughC4(residual)
    return tuple(s)


def _simplify(p):
    p = poly(p)
    return p.constant_value() if p.is_constant() else p


def expand(s: Sequence) -> MPoly:
    """sum s_i f_i as a polynomial in x (entries rational or polynomial)."""
    total = MPoly()
    for si, f in zip(s, F):
        total = total + poly(si) * f
    return total


def symbolic_s():
    return MPoly.vars(*SS)


# ---------------------------------------------------------------------------
# the action on coefficient vectors

def _substitute_linear(q: MPoly, m) -> MPoly:
    """q(M x) for a 5x5 matrix M."""
    x = MPoly.vars(*XS)
    images = {}
    for i in range(5):
        row = MPoly()
        for j in range(5):
            row = row + poly(m[i][j]) * x[j]
        images[f"x{i}"] = row
    return q.subs(images)


def pullback_by_substitution(s: Sequence, g: SL2Elem) -> tuple:
    """Substitute x -> sym4(g) x into sum s_i f_i and re-express in the f-basis."""
    m = sym4(g)
    return express_in_basis(_substitute_linear(expand(s), m))


@lru_cache(maxsize=None)
def action_matrix():
    """R with pullback(s, g)_j = sum_i R[j][i](a, b, c, d) s_i, derived symbolically."""
    m = sym4(SL2Elem.symbolic(), check=False)
    cols = [express_in_basis(_substitute_linear(f, m)) for f in F]
    return tuple(tuple(poly(cols[i][j]) for i in range(6)) for j in range(6))


def _eval_entries(g: SL2Elem):
    values = {"a": g.a, "b": g.b, "c": g.c, "d": g.d}
    return [[evaluate(entry, values) for entry in row] for row in action_matrix()]


def apply_matrix(r, s: Sequence) -> tuple:
    out = []
    for row in r:
        acc = None
        for rij, si in zip(row, s):
            if _is_zero_literal(rij) or _is_zero_literal(si):
                continue
            term = rij * si
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else _zero_like(s))
    return tuple(out)


def _is_zero_literal(x) -> bool:
    if isinstance(x, Num):
        return x.field.is_literal_zero(x.raw)
    if isinstance(x, MPoly):
        return x.is_zero()
    return x == 0


def _zero_like(s):
    for x in s:
        if isinstance(x, (Num, MPoly)):
            return x * 0
    return ZERO


@lru_cache(maxsize=None)
def unipotent_table(kind: str):
    """T[j][k] = rational coefficient row of t^k in R(upper(t)) or R(lower(t)), row j."""
    t = MPoly.var("t")
    g = SL2Elem.upper(t) if kind == "upper" else SL2Elem.lower(t)
    values = {"a": g.a, "b": g.b, "c": g.c, "d": g.d}
    table = []
    for row in action_matrix():
        entries = [poly(evaluate(e, values)).coefficients_in("t") for e in row]
        top = max((max(e) for e in entries if e), default=0)
        table.append(tuple(
            tuple(e[k].constant_value() if k in e else ZERO for e in entries)
            for k in range(top + 1)
        ))
    return tuple(table)


def pullback_unipotent(s: Sequence, kind: str, t) -> tuple:
    """pullback(s, upper(t)) or pullback(s, lower(t)) grouped by powers of t."""
    powers = [None, t]
    out = []
    for rows in unipotent_table(kind):
        acc = None
        for k, weights in enumerate(rows):
            comb = None
            for w, si in zip(weights, s):
                if w == 0 or _is_zero_literal(si):
                    continue
                term = si * w
                comb = term if comb is None else comb + term
            if comb is None:
                continue
            if k:
                while len(powers) <= k:
                    powers.append(powers[-1] * t)
                comb = comb * powers[k]
            acc = comb if acc is None else acc + comb
        out.append(acc if acc is not None else _zero_like(s))
    return tuple(out)


def pullback(s: Sequence, g: SL2Elem, check: bool = True) -> tuple:
    """phi^*(Q) for Q = sum s_i f_i and phi = g; a right action:
    pullback(pullback(s, g1), g2) == pullback(s, g1 @ g2)."""
    if check:
        g.check()
    return apply_matrix(_eval_entries(g), s)


@lru_cache(maxsize=None)
def _permutation_action(kind: str):
    x = MPoly.vars(*XS)
    if kind == "iota":
        images = {f"x{i}": x[4 - i] for i in range(5)}
    elif kind == "tau":
        images = {f"x{i}": (-1) ** i * x[i] for i in range(5)}
    else:
        raise ValueError(f"unknown involution {kind!r}")
    cols = [express_in_basis(f.subs(images)) for f in F]
    return tuple(tuple(cols[i][j] for i in range(6)) for j in range(6))


def involution_act(s: Sequence, which: str) -> tuple:
    """Action of iota (x_i -> x_{4-i}) or tau (x_i -> (-1)^i x_i), derived by substitution."""
    return apply_matrix(_permutation_action(which), s)


@lru_cache(maxsize=None)
def cstar_weights() -> tuple:
    """Weights w_i with f_i(x0, l x1, ..., l^4 x4) = l^{w_i} f_i."""
    lam = MPoly.var("lam")
    x = MPoly.vars(*XS)
    images = {f"x{i}": lam**i * x[i] for i in range(5)}
    weights = []
    for k, f in enumerate(F):
        s = express_in_basis(f.subs(images))
        for j, sj in enumerate(s):
            if j != k and not poly(sj).is_zero():
                raise AssertionError("f-basis is not a weight basis")
        coeff = poly(s[k])
        w = coeff.degree("lam")
        if coeff != lam**w:
            raise AssertionError("unexpected weight coefficient")
        weights.append(w)
    return tuple(weights)


def cstar_act(s: Sequence, lam) -> tuple:
    if _is_zero(lam):
        raise ValueError("the C* parameter must be nonzero")
    return tuple(si * lam**w for si, w in zip(s, cstar_weights()))


def cstar_act_even(s: Sequence, nu) -> tuple:
    """C*-action by a square root of ``nu`` on vectors with s1 = s3 = 0.

    Only even weights survive, so the result depends on nu alone.
    """
    if _is_zero(nu):
        raise ValueError("the C* parameter must be nonzero")
    weights = cstar_weights()
    for i, w in enumerate(weights):
        if w % 2 and not _is_zero(s[i]):
            raise ValueError("odd-weight coordinates must vanish for a squared C* parameter")
    return tuple(si * nu ** (w // 2) if w % 2 == 0 else si for si, w in zip(s, weights))


def quartic_part(s: Sequence) -> tuple:
    """Coordinates (a0, ..., a4) of the binary quartic carried by s.

    f0, f1, f2 + f5/3, f3, f4 span the 5-dimensional summand and f5 the
    trivial one, so s5 - s2/3 is invariant and the quartic is
    sum binom(4, i) a_i x^(4-i) y^i with the scalings below.
    """
    return (s[0], s[1] / 2, s[2] * 2 / 3, s[3] / 2, s[4])


def quartic_invariants(s: Sequence) -> tuple:
    """The invariants I (degree 2) and J (catalecticant, degree 3) of the quartic part."""
    a = quartic_part(s)
    i = a[0] * a[4] - 4 * a[1] * a[3] + 3 * a[2] * a[2]
    j = (a[0] * a[2] * a[4] + 2 * a[1] * a[2] * a[3]
         - a[2] ** 3 - a[0] * a[3] ** 2 - a[1] ** 2 * a[4])
    return i, j


# ---------------------------------------------------------------------------
# Hessian, points, membership

@lru_cache(maxsize=None)
def hessian_poly() -> MPoly:
    """det of the matrix of second partials of sum s_i f_i, as a polynomial in s."""
    q = expand(symbolic_s())
    m = [[q.diff(XS[i]).diff(XS[j]) for j in range(5)] for i in range(5)]
    return det(m)


def hessian_det(s: Sequence):
    return evaluate(hessian_poly(), dict(zip(SS, s)))


def hessian_factor_values(s: Sequence) -> list:
    return [evaluate(f, dict(zip(SS, s))) for f in HESSIAN_FACTORS]


def is_smooth(s: Sequence) -> bool:
    return not _is_zero(hessian_det(s))


def c4_point(u, v) -> tuple:
    if _is_zero(u) and _is_zero(v):
        raise ValueError("(u, v) must not both vanish")
    return (u**4, u**3 * v, u**2 * v**2, u * v**3, v**4)


def _at(p: MPoly, point):
    return evaluate(p, dict(zip(XS, point)))


def is_on_c4(point) -> bool:
    return all(_is_zero(_at(f, point)) for f in F[:5])


def v3_member(point) -> bool:
    return _is_zero(_at(V3_CUBIC, point))


def apply_sym4(g: SL2Elem, point) -> tuple:
    m = sym4(g)
    return tuple(sum((m[i][j] * point[j] for j in range(5)), ZERO * 0) for i in range(5))


# ---------------------------------------------------------------------------
# projective helpers

def normalize(s: Sequence) -> tuple:
    """Divide by the first nonzero coordinate in the order s0..s5."""
    for x in s:
        if not _is_zero(x):
            return tuple(y / x for y in s)
    raise ValueError("the zero vector is not a point of P^5")


def projectively_equal(s: Sequence, t: Sequence) -> bool:
    """s and t are proportional (cross-multiplication test)."""
    if all(_is_zero(x) for x in s) or all(_is_zero(x) for x in t):
        return False
    return all(_is_zero(s[i] * t[j] - s[j] * t[i]) for i in range(6) for j in range(i + 1, 6))


def parse_coeffs(text: str) -> tuple:
    parts = [p for p in text.split(",")]
    if len(parts) != 6:
        raise ValueError("expected six comma-separated coefficients s0,...,s5")
    s = tuple(Q(p) for p in parts)
    if all(x == 0 for x in s):
        raise ValueError("all coefficients are zero")
    return s
