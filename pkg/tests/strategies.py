"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from mgn_divisors.divisor_algebra import AdjointParams, DivisorClass, Space, index_set_of
from mgn_divisors.index_set import IRR, MarkedGenus, TSubset, enumerate_indices

SMALL = [MarkedGenus(g, n) for g, n in [(1, 2), (1, 3), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (5, 0)]]

rationals = st.builds(Fraction, st.integers(-48, 48), st.sampled_from([1, 2, 3, 4, 6, 8, 10, 12, 24]))
unit = st.integers(0, 24).map(lambda k: Fraction(k, 24))


@st.composite
def ambients(draw, pool=SMALL):
    return draw(st.sampled_from(pool))


@st.composite
def tsubsets(draw, ambient=None):
    amb = ambient if ambient is not None else draw(ambients())
    idx = enumerate_indices(amb)
    chosen = draw(st.lists(st.sampled_from(idx), unique=True, max_size=len(idx))) if idx else []
    return TSubset(amb, frozenset(chosen))


@st.composite
def divisor_classes(draw, ambient=None, space=Space.MGN):
    amb = ambient if ambient is not None else draw(ambients())
    keys = index_set_of(amb, space)
    coeffs = {k: draw(rationals) for k in keys}
    return DivisorClass(space, amb, draw(rationals), draw(rationals), coeffs)


@st.composite
def adjoint_params(draw, ambient=None, space=Space.MGN):
    amb = ambient if ambient is not None else draw(ambients())
    keys = index_set_of(amb, space)
    a = draw(st.integers(0, 48).map(lambda k: Fraction(k, 24)))
    return AdjointParams(amb, a, draw(unit), {k: draw(unit) for k in keys}, space)
