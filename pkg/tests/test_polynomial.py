from hypothesis import given
from hypothesis import strategies as st

from app.core.polynomial import BivariatePolynomial, shifted_power_row
from tests.settings import STANDARD_SETTINGS

x = BivariatePolynomial.x()
y = BivariatePolynomial.y()
one = BivariatePolynomial.constant(1)

polynomials = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.integers(-50, 50),
    max_size=6,
).map(BivariatePolynomial)


def test_text_order():
    assert str(x * x + x + y) == "x^2 + x + y"
    assert str(x + y + y * y) == "x + y + y^2"
    assert str((x + y) ** 2) == "x^2 + 2xy + y^2"


def test_negative_and_zero():
    assert str(x + BivariatePolynomial.constant(-1)) == "x - 1"
    assert str(BivariatePolynomial()) == "0"
    assert BivariatePolynomial({(1, 1): 0}).is_zero()


def test_shifted_rows():
    assert shifted_power_row(0) == (1,)
    assert shifted_power_row(2) == (1, -2, 1)


def test_from_shifted_expands():
    assert BivariatePolynomial.from_shifted({(1, 0): 1}) == x + BivariatePolynomial.constant(-1)
    # U_{1,2}: {} -> (1,0), {e} x2 -> (0,0), E -> (0,1)
    assert BivariatePolynomial.from_shifted({(1, 0): 1, (0, 0): 2, (0, 1): 1}) == x + y


def test_degrees_and_divisibility():
    p = x * x * y + x * y * y
    assert p.degree_x() == 2 and p.degree_y() == 2
    assert p.divisible_by_monomial(1, 1)
    assert not p.divisible_by_monomial(2, 0)


def test_triples_are_sorted_with_decimal_coefficients():
    p = y + BivariatePolynomial.constant(2 ** 70) * x
    assert p.to_triples() == [(0, 1, "1"), (1, 0, str(2 ** 70))]
    assert BivariatePolynomial.from_triples(p.to_triples()) == p


@given(polynomials, polynomials, st.integers(-3, 3), st.integers(-3, 3))
@STANDARD_SETTINGS
def test_arithmetic_matches_evaluation(p, q, a, b):
    assert (p + q).evaluate(a, b) == p.evaluate(a, b) + q.evaluate(a, b)
    assert (p * q).evaluate(a, b) == p.evaluate(a, b) * q.evaluate(a, b)
    assert p.swap_variables().evaluate(a, b) == p.evaluate(b, a)


@given(polynomials)
@STANDARD_SETTINGS
def test_equality_and_hash(p):
    copy = BivariatePolynomial(p.terms)
    assert copy == p
    assert hash(copy) == hash(p)
    assert p * one == p
