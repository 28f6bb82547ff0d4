"""Exact arithmetic: rationals, sparse polynomials, linear algebra, extensions."""
from .extension import (
    QQ,
    BranchFailure,
    Extension,
    Num,
    SplitSignal,
    Tower,
    dynamic_evaluate,
    ext_invert,
    num,
)
from .integrate import integrate, integrate_iterated
from .linalg import det, resultant, sylvester
from .mpoly import MPoly, parse_poly, poly
from .rational import Q, fmt, parse

__all__ = [
    "QQ", "BranchFailure", "Extension", "Num", "SplitSignal", "Tower",
    "dynamic_evaluate", "ext_invert", "num", "integrate", "integrate_iterated",
    "det", "resultant", "sylvester", "MPoly", "parse_poly", "poly", "Q", "fmt", "parse",
]
