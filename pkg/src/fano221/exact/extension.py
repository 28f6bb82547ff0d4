"""Algebraic extensions of the rationals by dynamic evaluation.

A field is either ``QQ`` or ``Extension(base, modulus)``, where the modulus
is a monic squarefree polynomial over ``base``. The modulus need not be
irreducible: whenever an inversion or a zero test meets a zero divisor, a
:class:`SplitSignal` is raised carrying the discovered factorization. The
driver :func:`dynamic_evaluate` then reruns the computation in each branch.

Raw elements are ``mpq`` at level zero and tuples of base raw elements
(low degree first, no trailing zeros) above it. :class:`Num` wraps a raw
element together with its field and provides the usual operators.
"""
from __future__ import annotations

from typing import Callable, Sequence

from .rational import ONE, ZERO, Q, fmt, is_rational


class SplitSignal(Exception):
    """An extension modulus turned out to factor as ``factor * cofactor``."""

    def __init__(self, field: "Extension", factor: tuple, cofactor: tuple):
        super().__init__(f"modulus of {field.name} splits")
        self.field = field
        self.factor = factor
        self.cofactor = cofactor


class BranchFailure(Exception):
    """The current branch of a split computation cannot finish."""


class NotInvertible(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# fields

class RationalField:
    name = "QQ"
    depth = 0
    index = -1
    base = None
    degree = 1

    zero = ZERO
    one = ONE

    def is_literal_zero(self, x) -> bool:
        return x == 0

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def scale(self, x, q):
        return x * q

    def inv(self, x):
        if x == 0:
            raise NotInvertible("division by zero")
        return ONE / x

    def from_rational(self, q):
        return Q(q)

    def lift_from(self, field, x):
        if field is not self:
            raise ValueError("cannot lift into QQ")
        return x

    def key(self, x):
        return (int(x.numerator), int(x.denominator))

    def to_str(self, x) -> str:
        return fmt(x)

    def as_rational(self, x):
        return x

    def chain(self):
        return [self]

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Extension:
    """``base[name] / (modulus)`` with ``modulus`` monic and squarefree."""

    def __init__(self, base, modulus: Sequence, name: str, index: int):
        modulus = tuple(modulus)
        if len(modulus) < 3:
            raise ValueError("extension modulus must have degree at least 2")
        if not base.is_literal_zero(base.sub(modulus[-1], base.one)):
            raise ValueError("extension modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.name = name
        self.index = index
        self.degree = len(modulus) - 1
        self.depth = base.depth + 1
        self.zero = ()
        self.one = (base.one,)

    # -- raw arithmetic -----------------------------------------------------
    def is_literal_zero(self, x) -> bool:
        return not x

    def _trim(self, x):
        b = self.base
        x = list(x)
        while x and b.is_literal_zero(x[-1]):
            x.pop()
        return tuple(x)

    def add(self, x, y):
        b = self.base
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, c in enumerate(y):
            out[i] = b.add(out[i], c)
        return self._trim(out)

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scale(self, x, q):
        if q == 0:
            return ()
        return self._trim(self.base.scale(c, q) for c in x)

    def mul(self, x, y):
        if not x or not y:
            return ()
        if self.base is QQ:
            return self._mul_qq(x, y)
        prod = upoly_mul(self.base, list(x), list(y))
        return self._reduce(prod)

    def _mul_qq(self, x, y):
        # same algorithm as the generic path, with mpq arithmetic inlined
        prod = [ZERO] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        prod[i + j] += a * c
        m, d = self.modulus, self.degree
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for i in range(d):
                    if m[i]:
                        prod[base + i] -= c * m[i]
        prod = prod[:d]
        while prod and not prod[-1]:
            prod.pop()
        return tuple(prod)

    def _reduce(self, p):
        b = self.base
        m = self.modulus
        d = self.degree
        p = list(p)
        for k in range(len(p) - 1, d - 1, -1):
            c = p[k]
            if b.is_literal_zero(c):
                continue
            for i in range(d):
                mi = m[i]
                if not b.is_literal_zero(mi):
                    p[k - d + i] = b.sub(p[k - d + i], b.mul(c, mi))
            p[k] = b.zero
        return self._trim(p[:d])

    def inv(self, x):
        if not x:
            raise NotInvertible(f"division by zero in {self.name}")
        if len(x) == 1:
            return (self.base.inv(x[0]),)
        g, s, _ = upoly_xgcd(self.base, list(x), list(self.modulus))
        if len(g) > 1:
            factor = tuple(g)
            cofactor, rem = upoly_divmod(self.base, list(self.modulus), g)
            assert not rem
            raise SplitSignal(self, factor, tuple(cofactor))
        # g is the constant 1 (monic)
        return self._reduce(s)

    def from_rational(self, q):
        c = self.base.from_rational(q)
        return () if self.base.is_literal_zero(c) else (c,)

    def lift_from(self, field, x):
        if field is self:
            return x
        inner = self.base.lift_from(field, x)
        return () if self.base.is_literal_zero(inner) else (inner,)

    def key(self, x):
        return tuple(self.base.key(c) for c in x)

    def as_rational(self, x):
        if not x:
            return ZERO
        if len(x) > 1:
            return None
        return self.base.as_rational(x[0])

    def to_str(self, x) -> str:
        if not x:
            return "0"
        parts = []
        for k in range(len(x) - 1, -1, -1):
            c = x[k]
            if self.base.is_literal_zero(c):
                continue
            cs = self.base.to_str(c)
            mono = "" if k == 0 else (self.name if k == 1 else f"{self.name}^{k}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif any(ch in cs[1:] for ch in "+-") or " " in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def modulus_str(self) -> str:
        return upoly_str(self.base, self.modulus, self.name)

    def chain(self):
        return self.base.chain() + [self]

    def __repr__(self):
        return f"Extension({self.name}: {self.modulus_str()} = 0, degree {self.degree})"


# ---------------------------------------------------------------------------
# dense univariate polynomials over a field (lists of raws, low degree first)

def upoly_trim(field, p):
    p = list(p)
    while p and field.is_literal_zero(p[-1]):
        p.pop()
    return p


def upoly_add(field, p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = field.add(out[i], c)
    return upoly_trim(field, out)


def upoly_sub(field, p, q):
    return upoly_add(field, p, [field.neg(c) for c in q])


def upoly_mul(field, p, q):
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if field.is_literal_zero(a):
            continue
        for j, b in enumerate(q):
            if field.is_literal_zero(b):
                continue
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return upoly_trim(field, out)


def upoly_scale(field, p, c):
    return upoly_trim(field, [field.mul(a, c) for a in p])


def upoly_divmod(field, p, q):
    """Quotient and remainder; inverting the leading coefficient of ``q`` may split."""
    q = upoly_trim(field, q)
    if not q:
        raise NotInvertible("polynomial division by zero")
    lead_inv = field.inv(q[-1])
    rem = upoly_trim(field, p)
    dq = len(q) - 1
    if len(rem) <= dq:
        return [], rem
    quot = [field.zero] * (len(rem) - dq)
    while len(rem) > dq:
        k = len(rem) - 1 - dq
        c = field.mul(rem[-1], lead_inv)
        quot[k] = c
        for i in range(dq):
            if not field.is_literal_zero(q[i]):
                rem[k + i] = field.sub(rem[k + i], field.mul(c, q[i]))
        rem.pop()
        rem = upoly_trim(field, rem)
    return upoly_trim(field, quot), rem


def upoly_monic(field, p):
    p = upoly_trim(field, p)
    if not p:
        return p
    return upoly_scale(field, p, field.inv(p[-1]))


def upoly_gcd(field, p, q):
    a, b = upoly_trim(field, p), upoly_trim(field, q)
    while b:
        _, r = upoly_divmod(field, a, b)
        a, b = b, r
    return upoly_monic(field, a)


def upoly_xgcd(field, p, q):
    """Monic g with g = s*p + t*q."""
    r0, r1 = upoly_trim(field, p), upoly_trim(field, q)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        quo, rem = upoly_divmod(field, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, upoly_sub(field, s0, upoly_mul(field, quo, s1))
        t0, t1 = t1, upoly_sub(field, t0, upoly_mul(field, quo, t1))
    if not r0:
        return [], [], []
    c = field.inv(r0[-1])
    return upoly_scale(field, r0, c), upoly_scale(field, s0, c), upoly_scale(field, t0, c)


def upoly_deriv(field, p):
    return upoly_trim(field, [field.scale(c, k) for k, c in enumerate(p) if k])


def upoly_squarefree(field, p):
    """Monic squarefree part p / gcd(p, p')."""
    p = upoly_monic(field, p)
    g = upoly_gcd(field, p, upoly_deriv(field, p))
    if len(g) <= 1:
        return p
    quo, rem = upoly_divmod(field, p, g)
    assert not rem
    return upoly_monic(field, quo)


def upoly_eval(field, p, x):
    acc = field.zero
    for c in reversed(p):
        acc = field.add(field.mul(acc, x), c)
    return acc


def upoly_key(field, p):
    return (len(p), tuple(field.key(c) for c in p))


def upoly_str(field, p, var="t") -> str:
    p = upoly_trim(field, p)
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if field.is_literal_zero(c):
            continue
        cs = field.to_str(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        elif any(ch in cs[1:] for ch in "+-") or " " in cs:
            parts.append(f"({cs})*{mono}")
        else:
            parts.append(f"{cs}*{mono}")
    text = parts[0]
    for part in parts[1:]:
        text += " - " + part[1:] if part.startswith("-") else " + " + part
    return text


# ---------------------------------------------------------------------------
# modular unit certificates
#
# If every modulus and the element are p-integral and the image of x in the
# reduction mod p is a unit, then x is a unit: a zero divisor x*y = 0 with y
# scaled to be primitive would reduce to a zero divisor mod p.

CERT_PRIME = (1 << 61) - 1


class _Inconclusive(Exception):
    pass


class _ModImage:
    """Reduction mod p of a field in the tower; ``inv`` raises _Inconclusive."""

    def __init__(self, field, p: int):
        self.p = p
        self.source = field
        self.base = None if field.base is None else _mod_image(field.base, p)
        if self.base is None:
            self.zero, self.one = 0, 1
        else:
            self.zero, self.one = (), (self.base.one,)
            self.modulus = self.image(field.modulus, field.base)
            self.degree = len(self.modulus) - 1

    def image(self, raw_poly, field):
        img = _mod_image(field, self.p)
        return [img.reduce(c) for c in raw_poly]

    def reduce(self, x):
        if self.base is None:
            den = int(x.denominator)
            if den % self.p == 0:
                raise _Inconclusive
            return int(x.numerator) * pow(den, -1, self.p) % self.p
        return self._trim([self.base.reduce(c) for c in x])

    def _trim(self, x):
        x = list(x)
        while x and self.base.is_literal_zero(x[-1]):
            x.pop()
        return tuple(x)

    def is_literal_zero(self, x):
        return not x if self.base is not None else x == 0

    def add(self, x, y):
        if self.base is None:
            return (x + y) % self.p
        return self._trim(upoly_add(self.base, list(x), list(y)))

    def neg(self, x):
        if self.base is None:
            return (-x) % self.p
        return tuple(self.base.neg(c) for c in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scale(self, x, k):
        if self.base is None:
            return x * k % self.p
        return self._trim(self.base.scale(c, k) for c in x)

    def mul(self, x, y):
        if self.base is None:
            return x * y % self.p
        if self.base.base is None and x and y:
            return self._mul_ints(x, y)
        return self._reduce_monic(upoly_mul(self.base, list(x), list(y)))

    def _mul_ints(self, x, y):
        p, m, d = self.p, self.modulus, self.degree
        prod = [0] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    prod[i + j] += a * c
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(d):
                    prod[k - d + i] -= c * m[i]
        prod = [v % p for v in prod[:d]]
        while prod and not prod[-1]:
            prod.pop()
        return tuple(prod)

    def _reduce_monic(self, p):
        b, m, d = self.base, self.modulus, self.degree
        p = list(p)
        for k in range(len(p) - 1, d - 1, -1):
            c = p[k]
            if b.is_literal_zero(c):
                continue
            for i in range(d):
                if not b.is_literal_zero(m[i]):
                    p[k - d + i] = b.sub(p[k - d + i], b.mul(c, m[i]))
        return self._trim(p[:d])

    def inv(self, x):
        if self.base is None:
            if x == 0:
                raise _Inconclusive
            return pow(x, -1, self.p)
        if not x:
            raise _Inconclusive
        if len(x) == 1:
            return (self.base.inv(x[0]),)
        g, s, _ = upoly_xgcd(self.base, list(x), list(self.modulus))
        if len(g) != 1:
            raise _Inconclusive
        return self._reduce_monic(s)


_MOD_CACHE: dict = {}


def _mod_image(field, p):
    key = (id(field), p)
    hit = _MOD_CACHE.get(key)
    if hit is None or hit.source is not field:
        hit = _ModImage(field, p)
        _MOD_CACHE[key] = hit
    return hit


def certified_unit(field, raw, p: int = CERT_PRIME) -> bool:
    """True when ``raw`` is provably a unit; False means "not certified"."""
    try:
        img = _mod_image(field, p)
        img.inv(img.reduce(raw))
        return True
    except _Inconclusive:
        return False


# ---------------------------------------------------------------------------
# element wrapper

def _common(f, g):
    if f is g:
        return f
    lo, hi = (f, g) if f.depth <= g.depth else (g, f)
    walk = hi
    while walk.depth > lo.depth:
        walk = walk.base
    if walk is not lo:
        raise ValueError(f"elements of unrelated fields {f!r} and {g!r}")
    return hi


class Num:
    """An element of a field in an extension tower."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    @classmethod
    def rational(cls, q, field=QQ) -> "Num":
        return cls(field, field.from_rational(q))

    def lift(self, field) -> "Num":
        if field is self.field:
            return self
        return Num(field, field.lift_from(self.field, self.raw))

    def _pair(self, other):
        if isinstance(other, Num):
            f = _common(self.field, other.field)
            return f, self.lift(f).raw, other.lift(f).raw
        if is_rational(other):
            f = self.field
            return f, self.raw, f.from_rational(other)
        return None

    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return Num(f, f.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return Num(f, f.sub(a, b))

    def __rsub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return Num(f, f.sub(b, a))

    def __neg__(self):
        return Num(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        if is_rational(other):
            return Num(self.field, self.field.scale(self.raw, Q(other)))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return Num(f, f.mul(a, b))

    __rmul__ = __mul__

    def inverse(self) -> "Num":
        return Num(self.field, self.field.inv(self.raw))

    def __truediv__(self, other):
        if is_rational(other):
            return self * (ONE / Q(other))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return Num(f, f.mul(a, f.inv(b)))

    def __rtruediv__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return Num(f, f.mul(b, f.inv(a)))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Num(self.field, self.field.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self) -> bool:
        """Zero test; a nonzero representative that is a zero divisor raises SplitSignal."""
        if self.field.is_literal_zero(self.raw):
            return True
        if certified_unit(self.field, self.raw):
            return False
        self.field.inv(self.raw)
        return False

    def __eq__(self, other):
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.is_zero()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def as_rational(self):
        """The rational value if the representative is a rational constant, else None."""
        return self.field.as_rational(self.raw)

    def __str__(self):
        return self.field.to_str(self.raw)

    def __repr__(self):
        return f"Num({self}; {self.field.name})"


def num(value, field=QQ) -> Num:
    if isinstance(value, Num):
        return value
    return Num.rational(value, field)


def ext_invert(x: Num) -> Num:
    """Inverse of ``x``; raises SplitSignal when the modulus has a common factor with x."""
    return x.inverse()


# ---------------------------------------------------------------------------
# towers and the dynamic-evaluation driver

class Tower:
    """Records the extensions adjoined during one run of a computation."""

    def __init__(self, refinements: dict | None = None):
        self.refinements = dict(refinements or {})
        self.count = 0
        self.levels: list = []

    def adjoin_root(self, coeffs: Sequence, name: str):
        """Adjoin a root of ``sum coeffs[k] * t^k``; returns (field, root).

        ``coeffs`` are Nums (or rationals). The squarefree part is taken
        automatically and a linear factor produces no new level.
        """
        coeffs = [num(c) for c in coeffs]
        base = QQ
        for c in coeffs:
            base = _common(base, c.field)
        raws = [c.lift(base).raw for c in coeffs]
        index = self.count
        self.count += 1
        if index in self.refinements:
            modulus = list(self.refinements[index])
        else:
            raws = upoly_trim(base, raws)
            # a nonliteral leading zero surfaces here as a split
            modulus = upoly_squarefree(base, raws)
        if len(modulus) < 2:
            raise BranchFailure(f"no root to adjoin for {name}")
        if len(modulus) == 2:
            return base, Num(base, base.neg(modulus[0]))
        field = Extension(base, modulus, name, index)
        self.levels.append(field)
        return field, Num(field, (base.zero, base.one))

    def adjoin_radical(self, k: int, value, name: str):
        """Adjoin a root of t^k - value; rational perfect powers stay rational."""
        value = num(value)
        q = value.as_rational()
        if q is not None:
            from .rational import is_perfect_power

            root = is_perfect_power(q, k)
            if root is not None:
                self.count += 1
                return value.field, Num.rational(root, value.field)
        coeffs = [-value] + [num(0, value.field)] * (k - 1) + [num(1, value.field)]
        return self.adjoin_root(coeffs, name)


def _branch_order(field, sig: SplitSignal):
    return sorted([sig.factor, sig.cofactor], key=lambda p: upoly_key(field.base, p))


def dynamic_evaluate(fn: Callable[[Tower], object], max_splits: int = 64):
    """Run ``fn(tower)``, restarting in a branch whenever a modulus splits.

    Branches are visited with the lowest-degree factor first, ties broken by
    coefficients; the first branch that does not raise BranchFailure wins.
    Returns (result, tower).
    """

    def explore(refinements, budget):
        tower = Tower(refinements)
        try:
            return fn(tower), tower
        except SplitSignal as sig:
            if budget <= 0:
                raise BranchFailure("too many modulus splits") from sig
            idx = sig.field.index
            kept = {k: v for k, v in refinements.items() if k < idx}
            failure = None
            for branch in _branch_order(sig.field, sig):
                try:
                    return explore({**kept, idx: branch}, budget - 1)
                except BranchFailure as exc:
                    failure = exc
            raise BranchFailure(f"every branch of {sig.field.name} failed") from failure

    return explore({}, max_splits)
