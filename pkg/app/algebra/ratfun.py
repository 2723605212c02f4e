"""Рациональные функции как несократимые дроби и дробно-линейные отображения."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Union

from app.algebra.errors import AlgebraError, ObstructionError
from app.algebra.fields import FieldDescriptor, FieldElement, FieldMismatch, Scalar
from app.algebra.poly import Polynomial, format_polynomial, polynomial_gcd
from app.logging import get_logger

logger = get_logger(__name__)


class ZeroFunction(AlgebraError):
    """Операция не определена для нулевой функции."""


class ConstantPoleCollision(AlgebraError):
    """Подстановка константы в полюс функции."""


class NotDegreeOne(AlgebraError):
    """Функция не является дробно-линейной."""


class IdentityMap(ObstructionError):
    """Тождественное отображение: неподвижна каждая точка."""


@dataclass(frozen=True)
class PointAtInfinity:
    """Бесконечно удалённая точка K ∪ {∞}."""

    def __str__(self) -> str:
        return "inf"


INFINITY = PointAtInfinity()

Point = Union[FieldElement, PointAtInfinity]


@dataclass(frozen=True)
class RationalFunction:
    """Несократимая дробь numerator/denominator с приведённым знаменателем."""

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self) -> None:
        if self.numerator.field != self.denominator.field:
            raise FieldMismatch("Числитель и знаменатель над разными полями")
        if self.denominator.is_zero():
            raise ZeroFunction("Знаменатель рациональной функции равен нулю")
        if self.numerator.is_zero():
            object.__setattr__(self, "denominator", Polynomial.constant(self.field, 1))
            return
        common = polynomial_gcd(self.numerator, self.denominator)
        numerator = self.numerator // common
        denominator = self.denominator // common
        lead_inverse = denominator.leading_coefficient.inverse()
        object.__setattr__(self, "numerator", numerator.scale(lead_inverse))
        object.__setattr__(self, "denominator", denominator.scale(lead_inverse))

    @property
    def field(self) -> FieldDescriptor:
        return self.numerator.field

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "RationalFunction":
        return cls(f, Polynomial.constant(f.field, 1))

    @classmethod
    def constant(cls, field: FieldDescriptor, value: Scalar) -> "RationalFunction":
        return cls.from_polynomial(Polynomial.constant(field, value))

    @classmethod
    def x(cls, field: FieldDescriptor) -> "RationalFunction":
        return cls.from_polynomial(Polynomial.x(field))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_constant(self) -> bool:
        return self.numerator.is_constant() and self.denominator.is_constant()

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise AlgebraError(f"{self} не является многочленом")
        return self.numerator

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise AlgebraError(f"{self} не является константой")
        return self.numerator.coefficient(0)

    @property
    def degree(self) -> int:
        """Степень как отображения: максимум степеней числителя и знаменателя."""
        return max(self.numerator.degree or 0, self.denominator.degree or 0)

    def _coerce(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch(f"Смешение полей {self.field} и {other.field}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(other)
        return RationalFunction.constant(self.field, other)

    def __add__(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroFunction("Нулевая функция необратима")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Union["RationalFunction", Polynomial, Scalar]) -> "RationalFunction":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.numerator ** exponent, self.denominator ** exponent)

    def __str__(self) -> str:
        return format_rational(self)


def format_rational(f: RationalFunction, variable: str = "x") -> str:
    """Каноническая запись; знаменатель печатается, только если он не константа."""
    numerator = format_polynomial(f.numerator, variable)
    if f.denominator.is_constant():
        return numerator
    denominator = format_polynomial(f.denominator, variable)
    if _term_count(f.numerator) > 1 or "/" in numerator or "+" in numerator:
        numerator = f"({numerator})"
    if _term_count(f.denominator) > 1:
        denominator = f"({denominator})"
    return f"{numerator}/{denominator}"


def _term_count(f: Polynomial) -> int:
    return sum(1 for coefficient in f.coefficients if not coefficient.is_zero())


def _evaluate_at(f: Polynomial, g: RationalFunction) -> RationalFunction:
    result = RationalFunction.constant(g.field, 0)
    for coefficient in reversed(f.coefficients):
        result = result * g + coefficient
    return result


def rf_compose(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """Несократимая запись f(g(x))."""
    if f.field != g.field:
        raise FieldMismatch(f"Смешение полей {f.field} и {g.field}")
    numerator = _evaluate_at(f.numerator, g)
    denominator = _evaluate_at(f.denominator, g)
    if denominator.is_zero():
        raise ConstantPoleCollision(f"Значение {g} является полюсом функции {f}")
    return numerator / denominator


def valuation_at_zero(f: RationalFunction) -> int:
    """Порядок нуля (отрицательный для полюса) в точке 0."""
    if f.is_zero():
        raise ZeroFunction("Порядок нулевой функции в нуле не определён")
    return (f.numerator.valuation() or 0) - (f.denominator.valuation() or 0)


@dataclass(frozen=True)
class MobiusMap:
    """Отображение (ax+b)/(cx+d), ad − bc ≠ 0; первый ненулевой из a, b, c, d равен 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self) -> None:
        field = self.a.field
        entries = [field.element(value) for value in (self.a, self.b, self.c, self.d)]
        a, b, c, d = entries
        if (a * d - b * c).is_zero():
            raise NotDegreeOne("Определитель ad − bc равен нулю")
        pivot = next(value for value in entries if not value.is_zero())
        scale = pivot.inverse()
        for name, value in zip("abcd", entries):
            object.__setattr__(self, name, value * scale)

    @property
    def field(self) -> FieldDescriptor:
        return self.a.field

    @classmethod
    def of(cls, field: FieldDescriptor, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> "MobiusMap":
        return cls(field.element(a), field.element(b), field.element(c), field.element(d))

    @classmethod
    def identity(cls, field: FieldDescriptor) -> "MobiusMap":
        return cls.of(field, 1, 0, 0, 1)

    @classmethod
    def affine(cls, alpha: FieldElement, beta: FieldElement) -> "MobiusMap":
        field = alpha.field
        return cls(alpha, field.element(beta), field.zero, field.one)

    @classmethod
    def from_rational(cls, f: RationalFunction) -> "MobiusMap":
        if f.degree != 1:
            raise NotDegreeOne(f"{f} не является отображением степени один")
        numerator, denominator = f.numerator, f.denominator
        return cls(
            numerator.coefficient(1),
            numerator.coefficient(0),
            denominator.coefficient(1),
            denominator.coefficient(0),
        )

    def as_rational(self) -> RationalFunction:
        field = self.field
        return RationalFunction(
            Polynomial(field, (self.b, self.a)), Polynomial(field, (self.d, self.c))
        )

    def entries(self) -> List[FieldElement]:
        return [self.a, self.b, self.c, self.d]

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_polynomial(self) -> bool:
        return self.c.is_zero()

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self∘other."""
        if other.field != self.field:
            raise FieldMismatch(f"Смешение полей {self.field} и {other.field}")
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __call__(self, point: Point) -> Point:
        """Действие на K ∪ {∞}."""
        if isinstance(point, PointAtInfinity):
            return INFINITY if self.c.is_zero() else self.a / self.c
        point = self.field.element(point)
        denominator = self.c * point + self.d
        if denominator.is_zero():
            return INFINITY
        return (self.a * point + self.b) / denominator

    def __str__(self) -> str:
        return format_rational(self.as_rational())


def mobius_inverse(m: MobiusMap) -> MobiusMap:
    """Обратное отображение (dx − b)/(−cx + a)."""
    return MobiusMap(m.d, -m.b, -m.c, m.a)


def conjugate(m: MobiusMap, v: MobiusMap) -> MobiusMap:
    """v⁻¹∘m∘v."""
    return mobius_inverse(v).compose(m).compose(v)


def _point_key(point: Point) -> tuple:
    if isinstance(point, PointAtInfinity):
        return (1,)
    return (0, point.sort_key())


def _rational_quadratic_roots(a2: FieldElement, a1: FieldElement, a0: FieldElement) -> List[FieldElement]:
    """Рациональные корни a2·x² + a1·x + a0 по теореме о рациональных корнях."""
    field = a2.field
    values = [a2.value, a1.value, a0.value]
    common = lcm(*(value.denominator for value in values))  # type: ignore[union-attr]
    c2, c1, c0 = (int(value * common) for value in values)  # type: ignore[operator]
    if c0 == 0:
        # x·(c2·x + c1) = 0
        return [field.zero, field.element(Fraction(-c1, c2))]
    roots: List[FieldElement] = []
    candidates = {
        Fraction(sign * p, q)
        for p in _divisors(abs(c0))
        for q in _divisors(abs(c2))
        for sign in (1, -1)
    }
    for candidate in candidates:
        if c2 * candidate * candidate + c1 * candidate + c0 == 0:
            roots.append(field.element(candidate))
    return roots


def _divisors(value: int) -> List[int]:
    small = [d for d in range(1, int(value ** 0.5) + 2) if d * d <= value and value % d == 0]
    return sorted(set(small + [value // d for d in small]))


def mobius_fixed_points(m: MobiusMap) -> List[Point]:
    """Неподвижные точки в K ∪ {∞}, конечные по возрастанию, ∞ последней."""
    if m.is_identity():
        raise IdentityMap("Тождественное отображение фиксирует каждую точку")
    field = m.field
    points: List[Point] = []
    a2, a1, a0 = m.c, m.d - m.a, -m.b
    if a2.is_zero():
        points.append(INFINITY)
        if not a1.is_zero():
            points.append(-a0 / a1)
    elif field.is_finite:
        points.extend(
            element for element in field.elements() if (a2 * element * element + a1 * element + a0).is_zero()
        )
    else:
        points.extend(_rational_quadratic_roots(a2, a1, a0))
    unique = {_point_key(point): point for point in points}
    ordered = [unique[key] for key in sorted(unique)]
    logger.debug("Неподвижные точки %s: %s", m, ", ".join(str(point) for point in ordered) or "нет")
    return ordered

