"""Разбор пользовательских выражений в элементы поля, многочлены и отображения."""

from __future__ import annotations

from app.algebra.errors import AlgebraError
from app.algebra.expression import (
    DivisionByZeroFunction,
    Evaluator,
    ExpressionSyntaxError,
    parse_ast,
)
from app.algebra.fields import FieldDescriptor, FieldElement
from app.algebra.poly import Polynomial
from app.algebra.ratfun import MobiusMap, RationalFunction


class _RationalVisitor:
    """Вычисление дерева выражения в поле K(x)."""

    def __init__(self, field: FieldDescriptor) -> None:
        self._field = field

    def integer(self, value: int) -> RationalFunction:
        return RationalFunction.constant(self._field, value)

    def variable(self, name: str, position: int) -> RationalFunction:
        if name == "x":
            return RationalFunction.x(self._field)
        if self._field.extension_degree == 1:
            raise ExpressionSyntaxError(f"Генератор t недоступен в поле {self._field}", position)
        return RationalFunction.constant(self._field, self._field.generator())

    def negate(self, value: RationalFunction) -> RationalFunction:
        return -value

    def add(self, left: RationalFunction, right: RationalFunction) -> RationalFunction:
        return left + right

    def subtract(self, left: RationalFunction, right: RationalFunction) -> RationalFunction:
        return left - right

    def multiply(self, left: RationalFunction, right: RationalFunction) -> RationalFunction:
        return left * right

    def divide(self, left: RationalFunction, right: RationalFunction, position: int) -> RationalFunction:
        if right.is_zero():
            raise DivisionByZeroFunction(f"Деление на нулевую функцию (позиция {position})")
        return left / right

    def power(self, base: RationalFunction, exponent: int, position: int) -> RationalFunction:
        if exponent < 0 and base.is_zero():
            raise DivisionByZeroFunction(f"Отрицательная степень нуля (позиция {position})")
        return base ** exponent


def parse_expression(text: str, field: FieldDescriptor) -> RationalFunction:
    """Несократимая рациональная функция, заданная строкой."""
    return Evaluator(_RationalVisitor(field)).evaluate(parse_ast(text))


def parse_polynomial(text: str, field: FieldDescriptor) -> Polynomial:
    value = parse_expression(text, field)
    if not value.is_polynomial():
        raise AlgebraError(f"Ожидался многочлен, получено {value}")
    return value.as_polynomial()


def parse_scalar(text: str, field: FieldDescriptor) -> FieldElement:
    """Константа поля; в F_{p^k} допускаются выражения от t вроде "t+1"."""
    value = parse_expression(text, field)
    if not value.is_constant():
        raise AlgebraError(f"Ожидалась константа, получено {value}")
    return value.constant_value()


def parse_mobius(text: str, field: FieldDescriptor) -> MobiusMap:
    return MobiusMap.from_rational(parse_expression(text, field))
