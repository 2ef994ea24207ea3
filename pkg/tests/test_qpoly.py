"""Exact polynomial and rational-function arithmetic, and the Delta family."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    nonzero_polynomials,
    nonzero_rational_functions,
    polynomials,
    rational_functions,
)
from tlmarkov.qpoly import (
    ONE,
    Q,
    RF_ONE,
    RF_ZERO,
    ZERO,
    PoleError,
    Polynomial,
    RationalFunction,
    chebyshev,
    chebyshev_root,
    eval_at,
    poly_arith,
    poly_divrem,
    poly_gcd,
    ratfun_arith,
)


def poly(*coeffs):
    return Polynomial(tuple(coeffs))


def rf(num, den=(1,)):
    return RationalFunction(poly(*num), poly(*den))


# ---------------------------------------------------------------------------
# Polynomial ring operations
# ---------------------------------------------------------------------------


def test_add_inverse_is_zero():
    assert poly_arith("add", Q, -Q) == ZERO


def test_monomial_product():
    assert poly_arith("mul", Q, Q) == poly(0, 0, 1)


def schoolbook_product(a: Polynomial, b: Polynomial) -> Polynomial:
    out = [0] * (len(a.coeffs) + len(b.coeffs))
    for i, c in enumerate(a.coeffs):
        for j, d in enumerate(b.coeffs):
            out[i + j] += c * d
    return Polynomial(tuple(out))


def test_square_against_convolution_oracle():
    a = poly(-1, 0, 1)  # q^2 - 1
    assert poly_arith("mul", a, a) == schoolbook_product(a, a) == poly(1, 0, -2, 0, 1)


def test_scale():
    assert poly_arith("scale", Q, Fraction(1, 2)) == poly(0, Fraction(1, 2))
    assert poly_arith("neg", poly(1, -2)) == poly(-1, 2)


def test_invariants_of_representation():
    assert poly(0, 1, 0).coeffs == (0, 1)
    assert poly().coeffs == ()
    assert poly(Fraction(2, 1)).coeffs == (2,)
    with pytest.raises(TypeError):
        poly(0.5)


@given(polynomials(), polynomials())
def test_mul_matches_schoolbook(a, b):
    assert a * b == schoolbook_product(a, b)


def test_kronecker_path_matches_schoolbook():
    # large enough to cross the packed-integer multiplication threshold
    a = Polynomial(tuple((-1) ** i * (i + 1) for i in range(40)))
    b = Polynomial(tuple((i % 7) - 3 for i in range(41)))
    assert a * b == schoolbook_product(a, b)


@given(
    st.lists(st.integers(-50, 50), min_size=1, max_size=30),
    st.lists(st.integers(-50, 50), min_size=1, max_size=30),
)
def test_packed_exact_division_inverts_multiplication(a_coeffs, b_coeffs):
    from tlmarkov.qpoly import _int_divexact, _int_mul

    a = [c for c in a_coeffs]
    b = [c for c in b_coeffs]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return
    product = _int_mul(a, b)
    assert _int_divexact(product, b) == a
    assert _int_divexact(product, a) == b


def test_packed_division_detects_inexactness():
    from tlmarkov.qpoly import _int_divexact

    assert _int_divexact([1, 1], [3, 1]) is None
    assert _int_divexact([0, 0, 1], [2]) is None  # divisible over Q, not over Z
    assert _int_divexact([-1, 0, 1], [-1, 1]) == [1, 1]


@given(polynomials(), polynomials(), polynomials())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


# ---------------------------------------------------------------------------
# Division and gcd
# ---------------------------------------------------------------------------


def test_divrem_examples():
    assert poly_divrem(poly(0, -2, 0, 1), Q) == (poly(-2, 0, 1), ZERO)
    assert poly_divrem(Q, poly(0, 0, 1)) == (ZERO, Q)
    assert poly_divrem(poly(-1, 0, 1), poly(-1, 1)) == (poly(1, 1), ZERO)


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divrem(Q, ZERO)


@given(polynomials(), nonzero_polynomials())
def test_divrem_reconstructs(a, b):
    quot, rem = poly_divrem(a, b)
    assert b * quot + rem == a
    assert rem.degree < b.degree


def test_gcd_examples():
    assert poly_gcd(poly(-1, 0, 1), poly(-1, 1)) == poly(-1, 1)
    assert poly_gcd(Q, poly(-1, 0, 1)) == ONE
    assert poly_gcd(poly(0, -2, 0, 1), poly(-1, 0, 1)) == ONE


def test_gcd_of_zeros_rejected():
    with pytest.raises(ValueError):
        poly_gcd(ZERO, ZERO)


@given(nonzero_polynomials(max_degree=4), nonzero_polynomials(max_degree=4))
def test_gcd_divides_both_and_is_monic(a, b):
    g = poly_gcd(a, b)
    assert g.is_monic
    assert poly_divrem(a, g)[1].is_zero
    assert poly_divrem(b, g)[1].is_zero


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def test_inverse_pair():
    assert ratfun_arith("mul", rf((1,), (0, 1)), rf((0, 1))) == RF_ONE


def test_common_denominator_subtraction():
    assert ratfun_arith("sub", rf((0, 1)), rf((1,), (0, 1))) == rf((-1, 0, 1), (0, 1))


def test_nested_denominator_addition():
    a = rf((-1,), (0, 1))  # -1/q
    b = rf((-1,), (0, -1, 0, 1))  # -1/(q(q^2-1))
    assert ratfun_arith("add", a, b) == rf((0, -1), (-1, 0, 1))  # -q/(q^2-1)


def test_division_by_zero_rational_function():
    with pytest.raises(ZeroDivisionError):
        ratfun_arith("div", RF_ONE, RF_ZERO)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(ONE, ZERO)


@given(rational_functions())
def test_outputs_are_reduced(x):
    assert x.den.is_monic
    if x.is_zero:
        assert x.num == ZERO and x.den == ONE
    else:
        assert poly_gcd(x.num, x.den) == ONE


@given(rational_functions(), rational_functions(), rational_functions())
@settings(max_examples=60)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RF_ZERO


@given(nonzero_rational_functions())
def test_multiplicative_inverse(a):
    assert a * (RF_ONE / a) == RF_ONE


# ---------------------------------------------------------------------------
# Chebyshev family
# ---------------------------------------------------------------------------


def test_delta_base_cases():
    assert chebyshev(-1) == ZERO
    assert chebyshev(0) == ONE
    assert chebyshev(1) == Q
    assert chebyshev(3) == poly(0, -2, 0, 1)


def test_delta_rejects_below_minus_one():
    with pytest.raises(ValueError):
        chebyshev(-2)


@pytest.mark.parametrize("k", range(1, 21))
def test_delta_recursion(k):
    assert chebyshev(k) == Q * chebyshev(k - 1) - chebyshev(k - 2)


def cofactor_determinant(rows):
    """Independent determinant oracle: first-row cofactor expansion."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = ZERO
    for j, head in enumerate(rows[0]):
        if head.is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = head * cofactor_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


@pytest.mark.parametrize("k", range(1, 9))
def test_delta_equals_tridiagonal_determinant(k):
    rows = [
        [
            Q if i == j else (ONE if abs(i - j) == 1 else ZERO)
            for j in range(k)
        ]
        for i in range(k)
    ]
    assert chebyshev(k) == cofactor_determinant(rows)


@pytest.mark.parametrize("k", range(0, 12))
def test_delta_monic_of_degree_k(k):
    assert chebyshev(k).degree == k
    assert chebyshev(k).is_monic


@pytest.mark.parametrize("m", range(1, 9))
def test_delta_vanishes_at_its_principal_root(m):
    assert abs(eval_at(chebyshev(m), 2.0 * math.cos(math.pi / (m + 1)))) < 1e-9


@pytest.mark.parametrize("m", list(range(1, 9)) + [20, 64])
def test_certified_root_isolation(m):
    root = chebyshev_root(m, bits=128)
    assert abs(eval_at(chebyshev(m), root)) < Fraction(1, 2**90)
    assert abs(root - Fraction(2.0 * math.cos(math.pi / (m + 1)))) < Fraction(1, 2**40)


def test_root_isolation_bounds():
    with pytest.raises(ValueError):
        chebyshev_root(0)
    with pytest.raises(ValueError):
        chebyshev_root(65)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def test_exact_evaluation():
    assert eval_at(chebyshev(2), 1) == 0
    assert eval_at(chebyshev(3), Fraction(1, 2)) == Fraction(1, 8) - 1
    assert eval_at(rf((1,), (0, 1)), Fraction(1, 3)) == 3


def test_float_evaluation():
    assert eval_at(chebyshev(1), 2.0 * math.cos(math.pi / 2)) == pytest.approx(0.0)
    assert abs(eval_at(chebyshev(3), 1.41421356)) < 1e-7
    assert abs(eval_at(chebyshev(3), math.sqrt(2.0))) < 1e-12


def test_pole_detection():
    with pytest.raises(PoleError) as info:
        eval_at(rf((1,), (0, 1)), 0)
    assert info.value.magnitude == 0.0
    with pytest.raises(PoleError) as info:
        eval_at(rf((1,), (0, 1)), 1e-13)
    assert info.value.magnitude == pytest.approx(1e-13)
    # configurable tolerance
    assert eval_at(rf((1,), (0, 1)), 1e-13, pole_tolerance=1e-14) == pytest.approx(1e13)


@given(polynomials(), st.fractions(min_value=-4, max_value=4, max_denominator=8))
def test_exact_eval_matches_direct_sum(p, x):
    expected = sum(
        (Fraction(c) * Fraction(x) ** i for i, c in enumerate(p.coeffs)),
        Fraction(0),
    )
    assert p.evaluate(Fraction(x)) == expected


# ---------------------------------------------------------------------------
# Rendering and serialization
# ---------------------------------------------------------------------------


def test_rendering():
    assert str(chebyshev(3)) == "q^3 - 2*q"
    assert str(ZERO) == "0"
    assert str(poly(1, 0, -1)) == "-q^2 + 1"
    assert str(rf((0, -1), (-1, 0, 1))) == "-q/(q^2 - 1)"
    assert str(rf((-1, 0, 1), (0, 1))) == "(q^2 - 1)/q"
    assert str(rf((1,), (0, 0, 1))) == "1/q^2"


@given(polynomials())
def test_polynomial_json_round_trip(p):
    assert Polynomial.from_json(p.to_json()) == p


@given(rational_functions())
def test_rational_function_json_round_trip(x):
    assert RationalFunction.from_json(x.to_json()) == x


def test_json_uses_decimal_free_strings():
    obj = rf((Fraction(-1, 2), 1), (0, 1)).to_json()
    assert obj["num"]["coeffs"] == ["-1/2", "1"]
    assert obj["den"]["coeffs"] == ["0", "1"]


def test_dispatch_rejects_unknown_ops():
    with pytest.raises(ValueError):
        poly_arith("pow", Q, Q)
    with pytest.raises(ValueError):
        ratfun_arith("mod", RF_ONE, RF_ONE)
