"""Shared hypothesis strategies for the property suite."""

from fractions import Fraction

from hypothesis import strategies as st

from tlmarkov.diagrams import RestrictedSequence
from tlmarkov.qpoly import Polynomial, RationalFunction


def coefficients(bound: int = 8):
    return st.one_of(
        st.integers(-bound, bound),
        st.fractions(
            min_value=-bound, max_value=bound, max_denominator=4
        ).map(Fraction),
    )


def polynomials(max_degree: int = 6, bound: int = 8):
    return st.lists(coefficients(bound), min_size=0, max_size=max_degree + 1).map(
        lambda cs: Polynomial(tuple(cs))
    )


def nonzero_polynomials(max_degree: int = 6, bound: int = 8):
    return polynomials(max_degree, bound).filter(lambda p: not p.is_zero)


def rational_functions(max_degree: int = 4, bound: int = 6):
    return st.tuples(
        polynomials(max_degree, bound), nonzero_polynomials(max_degree, bound)
    ).map(lambda pair: RationalFunction(*pair))


def nonzero_rational_functions(max_degree: int = 4, bound: int = 6):
    return rational_functions(max_degree, bound).filter(lambda r: not r.is_zero)


@st.composite
def restricted_sequences(draw, min_size: int = 1, max_size: int = 8):
    n = draw(st.integers(min_size, max_size))
    entries = [1]
    for _ in range(n - 1):
        entries.append(draw(st.integers(1, entries[-1] + 1)))
    return RestrictedSequence(tuple(entries))
