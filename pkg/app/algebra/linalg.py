"""Точная линейная алгебра над полем: приведённый ступенчатый вид, ядро, частное решение."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from app.algebra.fields import FieldDescriptor, FieldElement

Matrix = List[List[FieldElement]]
Vector = List[FieldElement]


@dataclass(frozen=True)
class LinearSolution:
    """Решение системы A·v = b: частное решение (если есть) и базис ядра."""

    particular: Optional[Tuple[FieldElement, ...]]
    nullspace: Tuple[Tuple[FieldElement, ...], ...]


def rref(matrix: Sequence[Sequence[FieldElement]]) -> Tuple[Matrix, List[int]]:
    """Приведённый ступенчатый вид и список столбцов-опор."""
    rows = [list(row) for row in matrix]
    if not rows:
        return rows, []
    columns = len(rows[0])
    pivots: List[int] = []
    pivot_row = 0
    for column in range(columns):
        selected = next(
            (index for index in range(pivot_row, len(rows)) if not rows[index][column].is_zero()),
            None,
        )
        if selected is None:
            continue
        rows[pivot_row], rows[selected] = rows[selected], rows[pivot_row]
        inverse = rows[pivot_row][column].inverse()
        rows[pivot_row] = [value * inverse for value in rows[pivot_row]]
        for index, row in enumerate(rows):
            if index == pivot_row or row[column].is_zero():
                continue
            factor = row[column]
            rows[index] = [value - factor * pivot for value, pivot in zip(row, rows[pivot_row])]
        pivots.append(column)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows, pivots


def nullspace(field: FieldDescriptor, matrix: Sequence[Sequence[FieldElement]], columns: int) -> List[Vector]:
    """Базис ядра: по одному вектору на каждую свободную переменную."""
    return list(map(list, solve_linear(field, matrix, None, columns).nullspace))


def solve_linear(
    field: FieldDescriptor,
    matrix: Sequence[Sequence[FieldElement]],
    rhs: Optional[Sequence[FieldElement]],
    columns: int,
) -> LinearSolution:
    """Решить A·v = rhs (при rhs=None система однородна)."""
    augmented = [
        list(row) + ([rhs[index]] if rhs is not None else [field.zero])
        for index, row in enumerate(matrix)
    ]
    reduced, pivots = rref(augmented) if augmented else ([], [])
    if columns in pivots:
        return LinearSolution(None, ())
    free = [column for column in range(columns) if column not in pivots]
    basis = []
    for free_column in free:
        vector = [field.zero] * columns
        vector[free_column] = field.one
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row_index][free_column]
        basis.append(tuple(vector))
    particular = [field.zero] * columns
    for row_index, pivot in enumerate(pivots):
        particular[pivot] = reduced[row_index][columns]
    return LinearSolution(tuple(particular), tuple(basis))
