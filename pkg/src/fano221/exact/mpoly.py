"""Sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent vectors to nonzero rational
coefficients. Variables live in one global order (see ``VARIABLE_ORDER``);
each polynomial only carries the variables that actually occur in it, so
two equal polynomials always have identical internal data.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .rational import ONE, ZERO, Q, Rational, fmt, is_rational

VARIABLE_ORDER = (
    ["x0", "x1", "x2", "x3", "x4"]
    + ["s0", "s1", "s2", "s3", "s4", "s5"]
    + ["u", "v", "b", "c", "lam", "mu", "n", "t"]
)
_RANK = {name: i for i, name in enumerate(VARIABLE_ORDER)}


def var_key(name: str):
    return (_RANK.get(name, len(_RANK)), name)


class MPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Rational] | None = None, gens: Iterable[str] = ()):
        gens = tuple(gens)
        terms = dict(terms or {})
        if list(gens) != sorted(gens, key=var_key) or len(set(gens)) != len(gens):
            order = sorted(set(gens), key=var_key)
            if len(order) != len(gens):
                raise ValueError("duplicate generator names")
            perm = [gens.index(g) for g in order]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
            gens = tuple(order)
        clean = {}
        for exp, coeff in terms.items():
            if len(exp) != len(gens):
                raise ValueError("exponent vector length does not match generators")
            if coeff:
                clean[exp] = Q(coeff)
        # drop generators that never occur
        used = [i for i in range(len(gens)) if any(e[i] for e in clean)]
        if len(used) != len(gens):
            gens = tuple(gens[i] for i in used)
            clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        self.gens = gens
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, value) -> "MPoly":
        return cls({(): Q(value)}, ())

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({(1,): ONE}, (name,))

    @classmethod
    def vars(cls, *names: str):
        return tuple(cls.var(n) for n in names)

    @classmethod
    def coerce(cls, value) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        return cls.const(value)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.gens

    def constant_value(self) -> Rational:
        if self.gens:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), ZERO)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable. The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        if name not in self.gens:
            return 0
        i = self.gens.index(name)
        return max(e[i] for e in self.terms)

    def free_symbols(self) -> set:
        return set(self.gens)

    def coefficients_in(self, name: str) -> dict:
        """Split as sum_k coeff_k * name**k; returns {k: MPoly}."""
        if name not in self.gens:
            return {0: self} if self.terms else {}
        i = self.gens.index(name)
        rest = self.gens[:i] + self.gens[i + 1:]
        buckets: dict = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MPoly(t, rest) for k, t in buckets.items()}

    def coeff(self, name: str, k: int) -> "MPoly":
        return self.coefficients_in(name).get(k, ZERO_POLY)

    def leading_term(self):
        """Lex-leading (exponent, coeff) in the global variable order."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    # -- alignment ----------------------------------------------------------
    def _lift(self, gens: tuple) -> dict:
        if gens == self.gens:
            return self.terms
        idx = [gens.index(g) for g in self.gens]
        n = len(gens)
        out = {}
        for e, c in self.terms.items():
            full = [0] * n
            for j, k in zip(idx, e):
                full[j] = k
            out[tuple(full)] = c
        return out

    @staticmethod
    def _union(a: "MPoly", b: "MPoly") -> tuple:
        if a.gens == b.gens:
            return a.gens
        return tuple(sorted(set(a.gens) | set(b.gens), key=var_key))

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        gens = self._union(self, other)
        out = dict(self._lift(gens))
        for e, c in other._lift(gens).items():
            out[e] = out.get(e, ZERO) + c
        return MPoly(out, gens)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if is_rational(other):
            q = Q(other)
            return MPoly({e: c * q for e, c in self.terms.items()}, self.gens)
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        gens = self._union(self, other)
        a, b = self._lift(gens), other._lift(gens)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, ZERO) + ca * cb
        return MPoly(out, gens)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_rational(other):
            return self * (ONE / Q(other))
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if other.is_constant():
            return self * (ONE / other.constant_value())
        return self.exquo(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result, base = ONE_POLY, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return False
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- division -----------------------------------------------------------
    def exquo(self, divisor: "MPoly") -> "MPoly":
        """Exact quotient; raises ArithmeticError when the division leaves a remainder."""
        divisor = _as_poly(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        gens = self._union(self, divisor)
        rem = dict(self._lift(gens))
        dv = divisor._lift(gens)
        lead_e = max(dv)
        lead_c = dv[lead_e]
        quot: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(x - y for x, y in zip(e, lead_e))
            if min(shift, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            q = c / lead_c
            quot[shift] = q
            for de, dc in dv.items():
                key = tuple(x + y for x, y in zip(de, shift))
                val = rem.get(key, ZERO) - q * dc
                if val:
                    rem[key] = val
                else:
                    rem.pop(key, None)
        return MPoly(quot, gens)

    # -- calculus and substitution -----------------------------------------
    def diff(self, name: str) -> "MPoly":
        if name not in self.gens:
            return ZERO_POLY
        i = self.gens.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly(out, self.gens)

    def antiderivative(self, name: str) -> "MPoly":
        gens = self.gens if name in self.gens else tuple(sorted(self.gens + (name,), key=var_key))
        i = gens.index(name)
        out = {}
        for e, c in self._lift(gens).items():
            ne = list(e)
            ne[i] += 1
            out[tuple(ne)] = c / ne[i]
        return MPoly(out, gens)

    def subs(self, bindings: Mapping[str, object]) -> "MPoly":
        """Simultaneous substitution of variables by polynomials or rationals.

        This is a ring homomorphism: ``p.subs(m) * q.subs(m) == (p * q).subs(m)``.
        """
        active = {k: _as_poly(v) for k, v in bindings.items() if k in self.gens}
        if not active:
            return self
        keep = tuple(g for g in self.gens if g not in active)
        keep_idx = [self.gens.index(g) for g in keep]
        sub_idx = [(self.gens.index(g), active[g]) for g in active]
        cache: dict = {}

        def power(i, p, k):
            key = (i, k)
            if key not in cache:
                cache[key] = p ** k
            return cache[key]

        result = ZERO_POLY
        # group by the kept exponents to limit the number of polynomial products
        groups: dict = {}
        for e, c in self.terms.items():
            groups.setdefault(tuple(e[i] for i, _ in sub_idx), []).append((tuple(e[j] for j in keep_idx), c))
        for sub_exp, items in groups.items():
            factor = ONE_POLY
            for (i, p), k in zip(sub_idx, sub_exp):
                if k:
                    factor = factor * power(i, p, k)
            rest = MPoly({e: c for e, c in items}, keep)
            result = result + factor * rest
        return result

    def eval(self, values: Mapping[str, object]):
        """Evaluate at rationals; returns a rational if every variable is bound."""
        out = self.subs(values)
        return out.constant_value() if out.is_constant() else out

    # -- display ------------------------------------------------------------
    def sorted_terms(self):
        def key(item):
            e, _ = item
            return (-sum(e), tuple(-x for x in e))
        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            if not mono:
                body = fmt(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{fmt(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MPoly({self})"


def _as_poly(value):
    if isinstance(value, MPoly):
        return value
    if is_rational(value):
        return MPoly.const(value)
    try:
        return MPoly.const(Q(value))
    except TypeError:
        return NotImplemented


ZERO_POLY = MPoly()
ONE_POLY = MPoly.const(1)


def poly(value) -> MPoly:
    """Coerce a rational or polynomial to ``MPoly``."""
    out = _as_poly(value)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(value).__name__} to MPoly")
    return out


def parse_poly(text: str) -> MPoly:
    """Parse a small polynomial expression such as ``"3*x2^2 - 4*x1*x3"``."""
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
            if isinstance(node.op, ast.Pow):
                return left ** int(right.constant_value())
        if isinstance(node, ast.UnaryOp):
            inner = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return -inner
            if isinstance(node.op, ast.UAdd):
                return inner
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.const(node.value)
        if isinstance(node, ast.Name):
            return MPoly.var(node.id)
        raise ValueError(f"unsupported syntax in polynomial: {text!r}")

    return walk(tree)


def evaluate(p: MPoly, values: Mapping[str, object]):
    """Evaluate ``p`` at values that may be rationals, polynomials or field elements.

    Rational and polynomial values are substituted symbolically; any remaining
    variables must be bound to objects supporting ``+`` and ``*`` (such as
    extension-field elements), and the result has their type.
    """
    plain = {k: v for k, v in values.items() if isinstance(v, MPoly) or is_rational(v)}
    other = {k: v for k, v in values.items() if k not in plain and k in p.gens}
    rest = p.subs(plain) if plain else p
    if not other:
        return rest.constant_value() if rest.is_constant() else rest
    missing = set(rest.gens) - set(other)
    if missing:
        raise ValueError(f"unbound variables {sorted(missing)}")
    names = rest.gens
    powers = {name: [None, other[name]] for name in names}

    def pw(name, k):
        table = powers[name]
        while len(table) <= k:
            table.append(table[-1] * other[name])
        return table[k]

    total = None
    for e, c in rest.terms.items():
        term = None
        for name, k in zip(names, e):
            if k:
                f = pw(name, k)
                term = f if term is None else term * f
        if term is None:
            # constant term: needs an element to attach to
            continue
        term = term * c
        total = term if total is None else total + term
    const = rest.terms.get(tuple(0 for _ in names), ZERO)
    if total is None:
        anyval = next(iter(other.values()))
        return anyval * 0 + const
    return total + const if const else total
