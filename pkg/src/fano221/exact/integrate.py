"""Exact definite integration of polynomials."""
from __future__ import annotations

from .mpoly import MPoly, poly


def integrate(p, var: str, lo, hi) -> MPoly:
    """Integral of ``p`` d``var`` from ``lo`` to ``hi``; the bounds may be polynomials free of ``var``."""
    p, lo, hi = poly(p), poly(lo), poly(hi)
    if var in lo.gens or var in hi.gens:
        raise ValueError(f"integration bounds must not contain {var}")
    anti = p.antiderivative(var)
    return anti.subs({var: hi}) - anti.subs({var: lo})


def integrate_iterated(p, *ranges) -> MPoly:
    """Iterated integral; ``ranges`` are (var, lo, hi) from the innermost outwards."""
    out = poly(p)
    for var, lo, hi in ranges:
        out = integrate(out, var, lo, hi)
    return out
