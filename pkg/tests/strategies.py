from hypothesis import strategies as st

from fano221.exact.mpoly import MPoly
from fano221.exact.rational import Q
from fano221.quadrics import SL2Elem

rationals = st.builds(Q, st.integers(-9, 9), st.integers(1, 5))
nonzero_rationals = rationals.filter(lambda q: q != 0)
small = st.builds(Q, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def polys(draw, names=("x0", "u", "v"), max_terms=4, max_deg=3):
    out = MPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        term = MPoly.const(draw(rationals))
        for n in names:
            term = term * MPoly.var(n) ** draw(st.integers(0, max_deg))
        out = out + term
    return out


@st.composite
def unimodular(draw, entries=small):
    a = draw(entries.filter(lambda q: q != 0))
    b, c = draw(entries), draw(entries)
    return SL2Elem(a, b, c, (1 + b * c) / a)


coeff_vectors = st.tuples(*[small] * 6).filter(lambda s: any(s))
