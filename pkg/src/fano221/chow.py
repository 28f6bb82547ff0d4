"""Numerical intersection theory on the blow-up X of Q along C4.

Divisors are written alpha*H + beta*E with H the pullback of a hyperplane
and E the exceptional divisor. Coefficients may be rationals or
polynomials (in u, v, n, ...).
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact.linalg import solve_rational
from .exact.mpoly import MPoly, poly
from .exact.rational import Q

# input geometry: Q is a quadric threefold, C4 a smooth rational quartic
QUADRIC_DEGREE = 2
CURVE_DEGREE = 4
CURVE_GENUS = 0
CANONICAL_OF_Q = -3  # K_Q = -3 * hyperplane


def deg_normal_bundle(genus: int = CURVE_GENUS, degree: int = CURVE_DEGREE,
                      k_q: int = CANONICAL_OF_Q):
    """deg N_{C/Q} = 2g - 2 - K_Q . C."""
    return Q(2 * genus - 2 - k_q * degree)


def intersection_table() -> dict:
    """H^i E^j for i + j = 3."""
    return {
        (3, 0): Q(QUADRIC_DEGREE),
        (2, 1): Q(0),
        (1, 2): Q(-CURVE_DEGREE),
        (0, 3): -deg_normal_bundle(),
    }


def _coerce(x):
    p = poly(x)
    return p.constant_value() if p.is_constant() else p


@dataclass(frozen=True)
class DivClass:
    alpha: object
    beta: object

    def __post_init__(self):
        object.__setattr__(self, "alpha", _coerce(self.alpha))
        object.__setattr__(self, "beta", _coerce(self.beta))

    def __add__(self, other):
        return DivClass(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        return DivClass(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self):
        return DivClass(-self.alpha, -self.beta)

    def __mul__(self, k):
        return DivClass(self.alpha * k, self.beta * k)

    __rmul__ = __mul__

    def subs(self, bindings):
        return DivClass(poly(self.alpha).subs(bindings), poly(self.beta).subs(bindings))

    def __str__(self):
        return f"({self.alpha})H + ({self.beta})E"


H = DivClass(1, 0)
E = DivClass(0, 1)
ANTICANONICAL = 3 * H - E
H_PRIME = 2 * H - E  # pullback of a hyperplane from Q'
E_PRIME = 3 * H_PRIME - ANTICANONICAL  # from -K_X = 3H' - E'


def triple(d1: DivClass, d2: DivClass, d3: DivClass):
    """Trilinear intersection number d1 . d2 . d3."""
    table = intersection_table()
    total = 0
    for a1, b1 in ((d1.alpha, 1), (d1.beta, 0)):
        for a2, b2 in ((d2.alpha, 1), (d2.beta, 0)):
            for a3, b3 in ((d3.alpha, 1), (d3.beta, 0)):
                i = b1 + b2 + b3
                total = total + a1 * a2 * a3 * table[(i, 3 - i)]
    return _coerce(total)


def anticanonical_degree():
    return triple(ANTICANONICAL, ANTICANONICAL, ANTICANONICAL)


@dataclass(frozen=True)
class CurveClass:
    """A curve class recorded by its pairings (H . gamma, E . gamma)."""

    h: object
    e: object


FIBRE = CurveClass(Q(0), Q(-1))  # fibre of pi: E . f = -1, H . f = 0


def _other_fibre() -> CurveClass:
    # the fibre f' of pi' satisfies H' . f' = 0 and E' . f' = -1
    rows = [[H_PRIME.alpha, H_PRIME.beta], [E_PRIME.alpha, E_PRIME.beta]]
    sol, residual = solve_rational(rows, [0, -1])
    assert all(r == 0 for r in residual)
    return CurveClass(sol[0], sol[1])


FIBRE_PRIME = _other_fibre()


def curve_pair(d: DivClass, gamma: CurveClass):
    return _coerce(d.alpha * gamma.h + d.beta * gamma.e)


# ---------------------------------------------------------------------------
# the exceptional divisor E = F_n

VALID_N = (0, 2, 4, 6)


@dataclass(frozen=True)
class FnClass:
    """a * s + b * f on the Hirzebruch surface F_n (s^2 = -n, s.f = 1, f^2 = 0)."""

    a: object
    b: object
    n: object

    def dot(self, other: "FnClass"):
        return _coerce(-self.n * self.a * other.a + self.a * other.b + self.b * other.a)

    def square(self):
        return self.dot(self)

    def __sub__(self, other):
        return FnClass(_coerce(self.a - other.a), _coerce(self.b - other.b), self.n)

    def __str__(self):
        return f"({self.a})s + ({self.b})f"


def _check_n(n):
    if isinstance(n, MPoly):
        if n != MPoly.var("n"):
            raise ValueError("symbolic n must be the variable n")
        return n
    if n not in VALID_N:
        raise ValueError(f"n must be one of {VALID_N}")
    return Q(n)


def restrict_to_E(d: DivClass, n) -> FnClass:
    """Restriction to E = F_n: H|_E = 4f and -E|_E = s + (n - 10)/2 f.

    The second rule comes from -E|_E . f = 1 and (-E|_E)^2 = E^3 = -10.
    """
    n = _check_n(n)
    e3 = intersection_table()[(0, 3)]
    shift = (n + e3) / 2  # a with 2a - n = E^3
    h_part = Q(CURVE_DEGREE)
    a = -d.beta
    b = d.alpha * h_part - d.beta * shift
    return FnClass(_coerce(a), _coerce(b), n)
