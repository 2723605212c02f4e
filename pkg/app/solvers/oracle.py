"""Независимые эталоны: полный перебор над малыми полями и прямая линейная система.

Здесь же подсчёты числа решений из классических результатов
(Уэллс, Маллен, Парк) и поиск контрпримеров к смешанным случаям.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from app.algebra.errors import BudgetExceeded, ObstructionError, ParameterOutOfRange
from app.algebra.fields import FieldDescriptor, FieldElement, Scalar, multiplicative_order
from app.algebra.linalg import solve_linear
from app.algebra.poly import Polynomial, affine_substitute, polynomial_gcd
from app.algebra.ratfun import RationalFunction, rf_compose
from app.logging import get_logger
from app.solvers.affine import AffineEquation, SolutionSpace, solve_affine, verify_affine

logger = get_logger(__name__)

DEFAULT_BUDGET = 10_000_000


class InfiniteField(ObstructionError):
    """Перебор невозможен над бесконечным полем."""


def _require_finite(field: FieldDescriptor) -> int:
    if field.cardinality is None:
        raise InfiniteField(f"Поле {field} бесконечно, перебор невозможен")
    return field.cardinality


def _check_budget(required: int, budget: int) -> None:
    logger.debug("Размер перебора %s при бюджете %s", required, budget)
    if required > budget:
        raise BudgetExceeded(required, budget)


def _substitution_columns(equation: AffineEquation, n: int) -> List[List[FieldElement]]:
    """Столбец i: коэффициенты (αx+β)^i − γx^i, длина n+1."""
    field = equation.field
    columns = []
    for i in range(n + 1):
        monomial = Polynomial.monomial(field, i)
        image = affine_substitute(monomial, equation.alpha, equation.beta) - monomial.scale(equation.gamma)
        columns.append(image.coefficient_vector(n + 1))
    return columns


def enumerate_solutions(
    field: FieldDescriptor,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
    n: int,
    budget: int = DEFAULT_BUDGET,
) -> List[Polynomial]:
    """Все f степени ≤ n с f(αx+β) = γf(x)+δ, перебором коэффициентов.

    Коэффициенты задаются от старшего к младшему; после выбора f_k
    коэффициент невязки при x^k окончательно определён, и ветвь
    отсекается, если он не равен нулю.
    """
    q = _require_finite(field)
    if n < 0:
        raise ParameterOutOfRange(f"Граница степени должна быть неотрицательной, получено {n}")
    _check_budget(q ** (n + 1), budget)
    equation = AffineEquation.of(field, alpha, beta, gamma, delta)
    columns = _substitution_columns(equation, n)
    target = [equation.delta] + [field.zero] * n
    elements = list(field.elements())
    found: List[Polynomial] = []

    def descend(k: int, chosen: Tuple[FieldElement, ...], residual: List[FieldElement]) -> None:
        if k < 0:
            f = Polynomial(field, tuple(reversed(chosen)))
            if verify_affine(f, equation.alpha, equation.beta, equation.gamma, equation.delta):
                found.append(f)
            return
        for value in elements:
            updated = [r + value * c for r, c in zip(residual, columns[k])]
            if updated[k] != target[k]:
                continue
            descend(k - 1, chosen + (value,), updated)

    descend(n, (), [field.zero] * (n + 1))
    logger.debug("Перебор над %s: найдено %s решений степени ≤ %s", field, len(found), n)
    return found


def linear_system_solutions(
    field: FieldDescriptor, alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar, n: int
) -> SolutionSpace:
    """Пространство решений как решение (n+1)×(n+1) линейной системы."""
    if n < 0:
        raise ParameterOutOfRange(f"Граница степени должна быть неотрицательной, получено {n}")
    equation = AffineEquation.of(field, alpha, beta, gamma, delta)
    columns = _substitution_columns(equation, n)
    matrix = [[columns[i][row] for i in range(n + 1)] for row in range(n + 1)]
    rhs = [equation.delta] + [field.zero] * n
    solution = solve_linear(field, matrix, rhs, n + 1)
    if solution.particular is None:
        return SolutionSpace.empty(field, n, equation)
    particular = Polynomial(field, solution.particular)
    basis = tuple(Polynomial(field, vector) for vector in solution.nullspace)
    return SolutionSpace(field, n, particular, basis, equation)


@dataclass(frozen=True)
class CountResult:
    """Число решений, ожидаемое значение по формуле и способ подсчёта."""

    count: int
    expected: Optional[int]
    method: str

    @property
    def matches(self) -> bool:
        return self.expected is None or self.count == self.expected


def _count_solutions(equation: AffineEquation, n: int, budget: int) -> Tuple[int, str]:
    field = equation.field
    q = _require_finite(field)
    args = (equation.alpha, equation.beta, equation.gamma, equation.delta)
    if q ** (n + 1) <= budget:
        return len(enumerate_solutions(field, *args, n, budget=budget)), "enumeration"
    logger.warning("Перебор %s^%s превышает бюджет %s, считаем по размерности", q, n + 1, budget)
    space = solve_affine(*args, n)
    if space.is_empty():
        return 0, "dimension"
    return q ** len(space.basis), "dimension"


def count_commuting_translation(
    field: FieldDescriptor, beta: Scalar, budget: int = DEFAULT_BUDGET
) -> CountResult:
    """#{f : deg f < q, f(x+β) = f(x)+β}; по Уэллсу q^{q/p}."""
    q = _require_finite(field)
    equation = AffineEquation.of(field, 1, beta, 1, beta)
    if equation.beta.is_zero():
        raise ParameterOutOfRange("β должно быть ненулевым")
    count, method = _count_solutions(equation, q - 1, budget)
    return CountResult(count, q ** (q // field.characteristic), method)


def count_commuting_scaling(
    field: FieldDescriptor, alpha: Scalar, beta: Scalar, budget: int = DEFAULT_BUDGET
) -> CountResult:
    """#{f : deg f < q, f(αx+β) = αf(x)+β}; по Маллену q^{(q−1)/s}."""
    q = _require_finite(field)
    equation = AffineEquation.of(field, alpha, beta, alpha, beta)
    if equation.alpha.is_one():
        raise ParameterOutOfRange("α должно быть отлично от 1")
    order = multiplicative_order(equation.alpha)
    assert order is not None
    count, method = _count_solutions(equation, q - 1, budget)
    return CountResult(count, q ** ((q - 1) // order), method)


def count_park(
    field: FieldDescriptor, beta: Scalar, delta: Scalar, budget: int = DEFAULT_BUDGET
) -> CountResult:
    """#{f : deg f < p², f(x+β) = f(x)+δ} над F_p при β, δ ≠ 0; равно p^p."""
    _require_finite(field)
    if field.extension_degree != 1:
        raise ParameterOutOfRange(f"Подсчёт в режиме park определён над простым полем, получено {field}")
    equation = AffineEquation.of(field, 1, beta, 1, delta)
    if equation.beta.is_zero() or equation.delta.is_zero():
        raise ParameterOutOfRange("β и δ должны быть ненулевыми")
    p = field.characteristic
    count, method = _count_solutions(equation, p * p - 1, budget)
    return CountResult(count, p ** p, method)


def count_custom(
    field: FieldDescriptor,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
    budget: int = DEFAULT_BUDGET,
) -> CountResult:
    """#{f : deg f < q, f(αx+β) = γf(x)+δ}; ожидание берётся из размерности."""
    q = _require_finite(field)
    equation = AffineEquation.of(field, alpha, beta, gamma, delta)
    space = solve_affine(equation.alpha, equation.beta, equation.gamma, equation.delta, q - 1)
    expected = 0 if space.is_empty() else q ** len(space.basis)
    count, method = _count_solutions(equation, q - 1, budget)
    return CountResult(count, expected, method)


def _monic_polynomials(field: FieldDescriptor, degree: int) -> Iterator[Polynomial]:
    elements = list(field.elements())
    for lower in itertools.product(elements, repeat=degree):
        yield Polynomial(field, tuple(lower) + (field.one,))


def _rational_candidates(
    field: FieldDescriptor, max_num_deg: int, max_den_deg: int
) -> Iterator[RationalFunction]:
    """Несократимые непостоянные A/B с приведённым B в заданных степенях."""
    elements = list(field.elements())
    numerators = [
        Polynomial(field, tuple(vector))
        for vector in itertools.product(elements, repeat=max_num_deg + 1)
    ]
    for den_degree in range(max_den_deg + 1):
        for denominator in _monic_polynomials(field, den_degree):
            for numerator in numerators:
                if numerator.is_zero():
                    continue
                if not polynomial_gcd(numerator, denominator).is_constant():
                    continue
                if numerator.is_constant() and denominator.is_constant():
                    continue
                yield RationalFunction(numerator, denominator)


def _candidate_count(q: int, max_num_deg: int, max_den_deg: int) -> int:
    return q ** (max_num_deg + 1) * sum(q ** j for j in range(max_den_deg + 1))


@dataclass(frozen=True)
class MixedHit:
    """Найденная функция и параметр уравнения, которому она удовлетворяет."""

    f: RationalFunction
    parameter: FieldElement


def search_mixed_counterexamples(
    field: FieldDescriptor, max_num_deg: int, max_den_deg: int, budget: int = DEFAULT_BUDGET
) -> List[MixedHit]:
    """Все f в коробке степеней с f(αx) = f(x)+1 для некоторого α ∈ K*; ожидается пусто."""
    q = _require_finite(field)
    _check_budget(_candidate_count(q, max_num_deg, max_den_deg) * (q - 1), budget)
    alphas = list(field.nonzero_elements())
    hits: List[MixedHit] = []
    for f in _rational_candidates(field, max_num_deg, max_den_deg):
        numerator, denominator = f.numerator, f.denominator
        shifted = numerator + denominator
        for alpha in alphas:
            left = affine_substitute(numerator, alpha, field.zero) * denominator
            right = shifted * affine_substitute(denominator, alpha, field.zero)
            if left == right:
                hits.append(MixedHit(f, alpha))
    logger.debug("Поиск f(αx) = f(x)+1 над %s: найдено %s", field, len(hits))
    return hits


def search_translation_multipliers(
    field: FieldDescriptor, max_num_deg: int, max_den_deg: int, budget: int = DEFAULT_BUDGET
) -> List[MixedHit]:
    """Все f в коробке степеней с f(x+1) = γf(x) для некоторого γ ∈ K*."""
    q = _require_finite(field)
    _check_budget(_candidate_count(q, max_num_deg, max_den_deg), budget)
    shift = RationalFunction.x(field) + 1
    hits: List[MixedHit] = []
    for f in _rational_candidates(field, max_num_deg, max_den_deg):
        ratio = rf_compose(f, shift) / f
        if ratio.is_constant():
            hits.append(MixedHit(f, ratio.constant_value()))
    logger.debug("Поиск f(x+1) = γf(x) над %s: найдено %s", field, len(hits))
    return hits


def solution_sets_agree(spaces: Sequence[SolutionSpace]) -> bool:
    """Совпадают ли пространства после приведения к каноническому виду."""
    canonical = [space.canonical() for space in spaces]
    return all(space == canonical[0] for space in canonical[1:])
