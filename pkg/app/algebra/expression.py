"""Грамматика выражений: токенизатор, синтаксическое дерево и парсер.

Модуль не зависит от поля коэффициентов: дерево вычисляется посетителем,
который решает, что означают литералы, переменные и операции.

    expr  := term (('+'|'-') term)*
    term  := unary (('*'|'/') unary | <неявное умножение>)*
    unary := '-' unary | power
    power := atom ('^' exponent)?
    exponent := '-'? integer ('^' exponent)?
    atom  := integer | 'x' | 't' | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Generic, Iterator, List, Protocol, TypeVar, Union

from app.algebra.errors import ExpressionError

T = TypeVar("T")

VARIABLES = ("x", "t")

_TOKEN_PATTERN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


class ExpressionSyntaxError(ExpressionError):
    """Синтаксическая ошибка с позицией в исходной строке."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (позиция {position})")
        self.position = position


class NonIntegerExponent(ExpressionError):
    """Показатель степени не является целым литералом."""

    def __init__(self, position: int) -> None:
        super().__init__(f"Показатель степени должен быть целым числом (позиция {position})")
        self.position = position


class DivisionByZeroFunction(ExpressionError):
    """Деление на нулевую функцию."""


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Integer:
    value: int
    position: int = 0


@dataclass(frozen=True)
class Variable:
    name: str
    position: int = 0


@dataclass(frozen=True)
class Negation:
    operand: "Node"
    position: int = 0


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Node"
    right: "Node"
    position: int = 0


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    position: int = 0


@dataclass(frozen=True)
class Group:
    inner: "Node"
    position: int = 0


Node = Union[Integer, Variable, Negation, BinaryOp, Power, Group]


class ExpressionVisitor(Protocol[T]):
    """Интерпретация дерева в конкретной алгебре."""

    def integer(self, value: int) -> T: ...

    def variable(self, name: str, position: int) -> T: ...

    def negate(self, value: T) -> T: ...

    def add(self, left: T, right: T) -> T: ...

    def subtract(self, left: T, right: T) -> T: ...

    def multiply(self, left: T, right: T) -> T: ...

    def divide(self, left: T, right: T, position: int) -> T: ...

    def power(self, base: T, exponent: int, position: int) -> T: ...


def tokenize(text: str) -> Iterator[Token]:
    """Разбить строку на токены, сохраняя позиции."""
    position = 0
    length = len(text)
    while position < length:
        if text[position:].strip() == "":
            break
        match = _TOKEN_PATTERN.match(text, position)
        if not match:
            offset = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExpressionSyntaxError(f"Неожиданный символ {text[offset]!r}", offset)
        kind = match.lastgroup or "op"
        token_text = match.group(kind)
        start = match.start(kind)
        if kind == "name" and token_text not in VARIABLES:
            # склеенные имена вроде "tx" разбираются как неявное произведение
            if all(char in VARIABLES for char in token_text):
                for index, char in enumerate(token_text):
                    yield Token("name", char, start + index)
                position = match.end()
                continue
            raise ExpressionSyntaxError(f"Неизвестное имя {token_text!r}", start)
        yield Token(kind, token_text, start)
        position = match.end()
    yield Token("end", "", length)


class _Parser:
    """Рекурсивный спуск по грамматике модуля."""

    def __init__(self, text: str) -> None:
        self._tokens: List[Token] = list(tokenize(text))
        self._index = 0

    @property
    def _current(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._current
        self._index += 1
        return token

    def _accept(self, text: str) -> bool:
        if self._current.kind == "op" and self._current.text == text:
            self._index += 1
            return True
        return False

    def parse(self) -> Node:
        node = self._expr()
        if self._current.kind != "end":
            raise ExpressionSyntaxError(
                f"Лишний токен {self._current.text!r}", self._current.position
            )
        return node

    def _expr(self) -> Node:
        node = self._term()
        while self._current.kind == "op" and self._current.text in "+-":
            token = self._advance()
            node = BinaryOp(token.text, node, self._term(), token.position)
        return node

    def _term(self) -> Node:
        node = self._unary()
        while True:
            token = self._current
            if token.kind == "op" and token.text in "*/":
                self._advance()
                node = BinaryOp(token.text, node, self._unary(), token.position)
            elif token.kind == "name" or (token.kind == "op" and token.text == "("):
                node = BinaryOp("*", node, self._unary(), token.position)
            else:
                return node

    def _unary(self) -> Node:
        token = self._current
        if self._accept("-"):
            return Negation(self._unary(), token.position)
        return self._power()

    def _power(self) -> Node:
        base = self._atom()
        token = self._current
        if self._accept("^"):
            return Power(base, self._exponent(), token.position)
        return base

    def _exponent(self) -> int:
        negative = self._accept("-")
        token = self._current
        if token.kind != "int":
            raise NonIntegerExponent(token.position)
        self._advance()
        value = int(token.text)
        caret = self._current
        if self._accept("^"):
            tail = self._exponent()
            if tail < 0:
                raise NonIntegerExponent(caret.position)
            value = value ** tail
        return -value if negative else value

    def _atom(self) -> Node:
        token = self._current
        if token.kind == "int":
            self._advance()
            return Integer(int(token.text), token.position)
        if token.kind == "name":
            self._advance()
            return Variable(token.text, token.position)
        if self._accept("("):
            inner = self._expr()
            if not self._accept(")"):
                raise ExpressionSyntaxError("Ожидалась ')'", self._current.position)
            return Group(inner, token.position)
        if token.kind == "end":
            raise ExpressionSyntaxError("Неожиданный конец выражения", token.position)
        raise ExpressionSyntaxError(f"Неожиданный токен {token.text!r}", token.position)


def parse_ast(text: str) -> Node:
    """Построить синтаксическое дерево выражения."""
    return _Parser(text).parse()


class Evaluator(Generic[T]):
    """Обход дерева с делегированием операций посетителю."""

    def __init__(self, visitor: ExpressionVisitor[T]) -> None:
        self._visitor = visitor

    def evaluate(self, node: Node) -> T:
        visitor = self._visitor
        if isinstance(node, Integer):
            return visitor.integer(node.value)
        if isinstance(node, Variable):
            return visitor.variable(node.name, node.position)
        if isinstance(node, Group):
            return self.evaluate(node.inner)
        if isinstance(node, Negation):
            return visitor.negate(self.evaluate(node.operand))
        if isinstance(node, Power):
            return visitor.power(self.evaluate(node.base), node.exponent, node.position)
        left = self.evaluate(node.left)
        right = self.evaluate(node.right)
        if node.op == "+":
            return visitor.add(left, right)
        if node.op == "-":
            return visitor.subtract(left, right)
        if node.op == "*":
            return visitor.multiply(left, right)
        return visitor.divide(left, right, node.position)
