"""Тесты токенизатора и синтаксического дерева выражений."""

from __future__ import annotations

import pytest

from app.algebra.expression import (
    BinaryOp,
    ExpressionSyntaxError,
    Group,
    Integer,
    Negation,
    Node,
    NonIntegerExponent,
    Power,
    Token,
    Variable,
    parse_ast,
    tokenize,
)


def test_glued_names_split_into_variables() -> None:
    assert list(tokenize("2tx")) == [
        Token("int", "2", 0),
        Token("name", "t", 1),
        Token("name", "x", 2),
        Token("end", "", 3),
    ]


def test_whitespace_is_skipped() -> None:
    kinds = [token.kind for token in tokenize(" x +  1 ")]

    assert kinds == ["name", "op", "int", "end"]


@pytest.mark.parametrize(
    ("text", "tree"),
    [
        ("x^2^3", Power(Variable("x", 0), 8, 1)),
        ("x^-1", Power(Variable("x", 0), -1, 1)),
        ("2x", BinaryOp("*", Integer(2, 0), Variable("x", 1), 1)),
        ("-x^2", Negation(Power(Variable("x", 1), 2, 2), 0)),
        (
            "1-x-x",
            BinaryOp("-", BinaryOp("-", Integer(1, 0), Variable("x", 2), 1), Variable("x", 4), 3),
        ),
        (
            "(x+1)x",
            BinaryOp(
                "*",
                Group(BinaryOp("+", Variable("x", 1), Integer(1, 3), 2), 0),
                Variable("x", 5),
                5,
            ),
        ),
    ],
)
def test_parse_ast(text: str, tree: Node) -> None:
    assert parse_ast(text) == tree


def test_product_binds_tighter_than_sum() -> None:
    tree = parse_ast("1+2*x")

    assert isinstance(tree, BinaryOp)
    assert tree.op == "+"
    assert tree.right == BinaryOp("*", Integer(2, 2), Variable("x", 4), 3)


@pytest.mark.parametrize(
    ("text", "position"),
    [
        ("x+", 2),
        ("(x+1", 4),
        ("x $ 1", 2),
        ("y", 0),
        ("x)", 1),
        ("", 0),
    ],
)
def test_syntax_errors_report_position(text: str, position: int) -> None:
    with pytest.raises(ExpressionSyntaxError) as error:
        parse_ast(text)

    assert error.value.position == position
    assert f"позиция {position}" in str(error.value)


@pytest.mark.parametrize(
    ("text", "position"),
    [
        ("x^y", 2),
        ("x^(2)", 2),
        ("x^2^-1", 3),
    ],
)
def test_exponent_must_be_integer(text: str, position: int) -> None:
    with pytest.raises(NonIntegerExponent) as error:
        parse_ast(text)

    assert error.value.position == position
