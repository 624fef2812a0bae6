"""Shared hypothesis strategies for randomized algebra tests."""

from fractions import Fraction

from hypothesis import strategies as st

from singint import IntegrandMonomial, IntegrandSum, ValuePoly


def rationals(max_num: int = 30, max_den: int = 12) -> st.SearchStrategy[Fraction]:
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def nonzero_rationals() -> st.SearchStrategy[Fraction]:
    return rationals().filter(lambda r: r != 0)


@st.composite
def ring_monomials(draw) -> ValuePoly:
    return ValuePoly.monomial(
        draw(rationals()),
        w=draw(st.integers(min_value=-4, max_value=4)),
        d0=draw(st.integers(min_value=0, max_value=3)),
        a=draw(st.integers(min_value=0, max_value=3)),
        g=draw(st.integers(min_value=0, max_value=3)),
    )


@st.composite
def value_polys(draw, max_terms: int = 4) -> ValuePoly:
    terms = draw(st.lists(ring_monomials(), min_size=0, max_size=max_terms))
    total = ValuePoly()
    for term in terms:
        total = total + term
    return total


@st.composite
def integrand_monomials(draw, max_q: int = 2, allow_bare: bool = True) -> IntegrandMonomial:
    shapes = st.tuples(
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=4),
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=max_q),
    )
    if not allow_bare:
        shapes = shapes.filter(lambda s: s != (0, 0, 0, 0))
    shape = draw(shapes)
    return IntegrandMonomial(*shape, coeff=draw(value_polys(max_terms=2)))


@st.composite
def integrand_sums(draw, max_terms: int = 4, max_q: int = 2,
                   allow_bare: bool = True) -> IntegrandSum:
    terms = draw(st.lists(integrand_monomials(max_q=max_q, allow_bare=allow_bare),
                          min_size=0, max_size=max_terms))
    return IntegrandSum(tuple(terms))


@st.composite
def reducible_sums(draw, max_terms: int = 4) -> IntegrandSum:
    """Sums the reducer accepts everywhere on its pipeline.

    No bare-measure term, and p + q <= 2 per term: the field equation turns
    ddD^p delta^q into delta^(p+q) pieces, and delta powers above 2 have no
    rule by design.
    """
    term = integrand_monomials(max_q=2, allow_bare=False).filter(
        lambda t: t.p + t.q <= 2)
    terms = draw(st.lists(term, min_size=0, max_size=max_terms))
    return IntegrandSum(tuple(terms))
