"""Seeded random inputs: rationals, unimodular matrices, smooth quadrics through C4."""
from __future__ import annotations

import random

from .exact.rational import Q
from .normal_form import normal_form_vector
from .quadrics import SL2Elem, is_smooth, pullback


def rational(rng: random.Random, bound: int = 5, den: int = 3):
    return Q(rng.randint(-bound, bound), rng.randint(1, den))


def unimodular(rng: random.Random, bound: int = 3, den: int = 2) -> SL2Elem:
    while True:
        a, b, c = (rational(rng, bound, den) for _ in range(3))
        if a != 0:
            return SL2Elem(a, b, c, (1 + b * c) / a)


def smooth_quadric(rng: random.Random) -> tuple:
    while True:
        s = tuple(rational(rng) for _ in range(6))
        if any(s) and is_smooth(s):
            return s


def disguised_normal_form(rng: random.Random, case: int) -> tuple:
    """A random smooth point in the orbit of a rational member of ``case``."""
    while True:
        params = {"mu": rational(rng), "lam": rational(rng)}
        s = normal_form_vector(case, params)
        if not is_smooth(s):
            continue
        out = pullback(s, unimodular(rng))
        if is_smooth(out):
            return tuple(Q(x) for x in out)


def quadric_corpus(rng: random.Random, count: int) -> list:
    """Fully random quadrics interleaved with disguised special cases."""
    out = []
    special = (1, 3, 4, 5)
    for i in range(count):
        if i % 5 == 4:
            out.append(disguised_normal_form(rng, special[(i // 5) % 4]))
        else:
            out.append(smooth_quadric(rng))
    return out
