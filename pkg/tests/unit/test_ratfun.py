"""Тесты рациональных функций и дробно-линейных отображений."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import pytest

from app.algebra.fields import FieldDescriptor, Scalar, make_field
from app.algebra.poly import Polynomial
from app.algebra.ratfun import (
    INFINITY,
    ConstantPoleCollision,
    IdentityMap,
    MobiusMap,
    NotDegreeOne,
    Point,
    RationalFunction,
    ZeroFunction,
    conjugate,
    format_rational,
    mobius_fixed_points,
    mobius_inverse,
    rf_compose,
    valuation_at_zero,
)

Q = make_field("Q")
F5 = make_field("F5")
F4 = make_field("F4", "t^2+t+1")

Coefficient = Union[Scalar, Tuple[int, ...]]


def ratio(
    field: FieldDescriptor, numerator: Sequence[Coefficient], denominator: Sequence[Coefficient] = (1,)
) -> RationalFunction:
    return RationalFunction(Polynomial.of(field, numerator), Polynomial.of(field, denominator))


def test_fraction_is_reduced_and_denominator_monic() -> None:
    f = ratio(Q, (-1, 0, 1), (-2, 2))

    assert f.numerator == Polynomial.of(Q, [Fraction(1, 2), Fraction(1, 2)])
    assert f.denominator == Polynomial.of(Q, [1])
    assert f.is_polynomial()
    assert format_rational(f) == "1/2x+1/2"


def test_zero_denominator_is_rejected() -> None:
    with pytest.raises(ZeroFunction):
        ratio(Q, (1,), (0,))


def test_zero_has_no_inverse() -> None:
    with pytest.raises(ZeroFunction):
        RationalFunction.constant(Q, 0).inverse()


@pytest.mark.parametrize(
    ("f", "text"),
    [
        (ratio(Q, (1,), (0, 1)), "1/x"),
        (ratio(Q, (1,), (0, 1, 1)), "1/(x^2+x)"),
        (ratio(Q, (1, 1), (0, 0, 1)), "(x+1)/x^2"),
        (ratio(Q, (0, 2), (1, 1)), "2x/(x+1)"),
        (ratio(Q, (Fraction(1, 2),), (0, 1)), "(1/2)/x"),
        (ratio(F4, ((1, 1),), (0, 1)), "(t+1)/x"),
        (ratio(F5, (0, 0, 3)), "3x^2"),
    ],
)
def test_format_rational(f: RationalFunction, text: str) -> None:
    assert format_rational(f) == text


def test_arithmetic_stays_reduced() -> None:
    x = RationalFunction.x(Q)
    f = 1 / x + 1 / (x + 1)

    assert f == ratio(Q, (1, 2), (0, 1, 1))
    assert f - 1 / x == 1 / (x + 1)
    assert (x + 1) ** -2 * (x + 1) ** 2 == RationalFunction.constant(Q, 1)


@pytest.mark.parametrize(
    ("f", "g", "expected"),
    [
        (ratio(Q, (1,), (0, 1)), ratio(Q, (1, 1)), ratio(Q, (1,), (1, 1))),
        (ratio(Q, (0, 0, 1)), ratio(Q, (1,), (0, 1)), ratio(Q, (1,), (0, 0, 1))),
        (ratio(Q, (1,), (0, 1, 1)), ratio(Q, (-1, 1)), ratio(Q, (1,), (0, -1, 1))),
        (ratio(F5, (0, 1), (1, 1)), ratio(F5, (0, 2)), ratio(F5, (0, 2), (1, 2))),
    ],
)
def test_rf_compose(f: RationalFunction, g: RationalFunction, expected: RationalFunction) -> None:
    assert rf_compose(f, g) == expected


def test_constant_into_pole() -> None:
    with pytest.raises(ConstantPoleCollision):
        rf_compose(ratio(Q, (1,), (0, 1)), RationalFunction.constant(Q, 0))


def test_constant_outside_pole_evaluates() -> None:
    result = rf_compose(ratio(Q, (1,), (0, 1)), RationalFunction.constant(Q, 2))

    assert result == RationalFunction.constant(Q, Fraction(1, 2))


@pytest.mark.parametrize(
    ("f", "valuation"),
    [
        (ratio(Q, (0, 0, 1), (1, 1)), 2),
        (ratio(Q, (1,), (0, 0, 0, 1)), -3),
        (ratio(Q, (1, 1)), 0),
        (ratio(Q, (0, 1), (0, 0, 1, 1)), -1),
    ],
)
def test_valuation_at_zero(f: RationalFunction, valuation: int) -> None:
    assert valuation_at_zero(f) == valuation


def test_valuation_of_zero_function() -> None:
    with pytest.raises(ZeroFunction):
        valuation_at_zero(RationalFunction.constant(Q, 0))


def test_mobius_is_normalized() -> None:
    m = MobiusMap.of(Q, 2, 4, 0, 2)

    assert m.entries() == [Q.one, Q.element(2), Q.zero, Q.one]
    assert str(m) == "x+2"
    assert MobiusMap.of(Q, 0, 3, 3, 0) == MobiusMap.of(Q, 0, 1, 1, 0)


def test_singular_mobius_is_rejected() -> None:
    with pytest.raises(NotDegreeOne):
        MobiusMap.of(Q, 1, 1, 1, 1)


def test_from_rational_requires_degree_one() -> None:
    with pytest.raises(NotDegreeOne):
        MobiusMap.from_rational(ratio(Q, (0, 0, 1)))

    m = MobiusMap.from_rational(ratio(Q, (1, 1), (2, 1)))
    assert str(m) == "(x+1)/(x+2)"


def test_inverse_and_compose() -> None:
    m = MobiusMap.of(F5, 1, 1, 1, 2)

    assert mobius_inverse(m).compose(m).is_identity()
    assert m.compose(mobius_inverse(m)).is_identity()
    shift = MobiusMap.affine(F5.one, F5.element(2))
    assert conjugate(MobiusMap.affine(F5.element(3), F5.zero), shift)(F5.zero) == F5.element(4)


def test_action_on_projective_line() -> None:
    m = MobiusMap.of(Q, 0, 1, 1, 0)

    assert m(Q.zero) is INFINITY
    assert m(INFINITY) == Q.zero
    assert m(Q.element(2)) == Q.element(Fraction(1, 2))
    assert MobiusMap.affine(Q.element(2), Q.one)(INFINITY) is INFINITY


@pytest.mark.parametrize(
    ("m", "expected"),
    [
        (MobiusMap.of(Q, 1, 1, 0, 1), [INFINITY]),
        (MobiusMap.of(Q, 2, 0, 0, 1), [Q.zero, INFINITY]),
        (MobiusMap.of(Q, 3, 2, 0, 1), [Q.element(-1), INFINITY]),
        (MobiusMap.of(Q, 0, 1, 1, 0), [Q.element(-1), Q.one]),
        (MobiusMap.of(Q, 0, 2, 1, 0), []),
        (MobiusMap.of(F5, 0, 1, 1, 0), [F5.one, F5.element(4)]),
        (MobiusMap.of(F5, 0, 2, 1, 0), []),
        (MobiusMap.of(Q, 1, 0, 1, 1), [Q.zero]),
    ],
)
def test_mobius_fixed_points(m: MobiusMap, expected: List[Point]) -> None:
    assert mobius_fixed_points(m) == expected


def test_identity_has_no_distinguished_fixed_point() -> None:
    with pytest.raises(IdentityMap):
        mobius_fixed_points(MobiusMap.identity(Q))
