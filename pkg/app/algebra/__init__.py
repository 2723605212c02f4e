"""Точная арифметика: поля, многочлены, рациональные функции, линейная алгебра."""

from .fields import FieldDescriptor, FieldElement, make_field
from .poly import Polynomial
from .ratfun import MobiusMap, RationalFunction

__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "MobiusMap",
    "Polynomial",
    "RationalFunction",
    "make_field",
]
