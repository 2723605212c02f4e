"""Интерфейс командной строки: разбор выражений, отчёты и подкоманды."""

from .parsing import parse_expression, parse_mobius, parse_polynomial, parse_scalar
from .runner import run

__all__ = ["parse_expression", "parse_mobius", "parse_polynomial", "parse_scalar", "run"]
