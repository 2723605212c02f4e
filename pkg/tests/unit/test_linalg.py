"""Тесты точной линейной алгебры."""

from __future__ import annotations

from typing import List

from hypothesis import given
from hypothesis import strategies as st

from app.algebra.fields import FieldDescriptor, FieldElement, make_field
from app.algebra.linalg import nullspace, rref, solve_linear

Q = make_field("Q")
F5 = make_field("F5")


def matrix(field: FieldDescriptor, rows: List[List[int]]) -> List[List[FieldElement]]:
    return [[field.element(value) for value in row] for row in rows]


def apply(rows: List[List[FieldElement]], vector: List[FieldElement]) -> List[FieldElement]:
    return [sum((a * v for a, v in zip(row, vector)), vector[0].field.zero) for row in rows]


def test_rref_of_rank_one_matrix() -> None:
    reduced, pivots = rref(matrix(Q, [[1, 2], [2, 4]]))

    assert pivots == [0]
    assert reduced == matrix(Q, [[1, 2], [0, 0]])


def test_nullspace_has_one_vector_per_free_column() -> None:
    basis = nullspace(Q, matrix(Q, [[1, 2], [2, 4]]), 2)

    assert basis == [[Q.element(-2), Q.one]]


def test_consistent_system() -> None:
    solution = solve_linear(Q, matrix(Q, [[1, 2], [2, 4]]), [Q.one, Q.element(2)], 2)

    assert solution.particular == (Q.one, Q.zero)
    assert solution.nullspace == ((Q.element(-2), Q.one),)


def test_inconsistent_system() -> None:
    solution = solve_linear(Q, matrix(Q, [[1, 2], [2, 4]]), [Q.one, Q.element(3)], 2)

    assert solution.particular is None
    assert solution.nullspace == ()


def test_invertible_system_over_prime_field() -> None:
    solution = solve_linear(F5, matrix(F5, [[2, 0], [0, 3]]), [F5.one, F5.one], 2)

    assert solution.particular == (F5.element(3), F5.element(2))
    assert solution.nullspace == ()


def test_empty_system_leaves_all_columns_free() -> None:
    solution = solve_linear(F5, [], None, 2)

    assert solution.particular == (F5.zero, F5.zero)
    assert len(solution.nullspace) == 2


residues = st.integers(min_value=0, max_value=4)


@given(
    st.lists(st.lists(residues, min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(residues, min_size=4, max_size=4),
)
def test_solutions_satisfy_system(rows: List[List[int]], rhs: List[int]) -> None:
    a = matrix(F5, rows)
    b = [F5.element(value) for value in rhs[: len(rows)]]
    solution = solve_linear(F5, a, b, 3)

    for vector in solution.nullspace:
        assert all(value.is_zero() for value in apply(a, list(vector)))
    if solution.particular is not None:
        assert apply(a, list(solution.particular)) == b
        _, pivots = rref(a)
        assert len(solution.nullspace) == 3 - len(pivots)
