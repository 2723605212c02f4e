"""Решение f(αx+β) = γf(x)+δ в многочленах степени не выше n.

Два независимых метода: прямой разбор случаев по структуре пространства
решений и построение через снятие старших членов (индукция по степени).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.algebra.errors import AlgebraError, ParameterOutOfRange
from app.algebra.fields import FieldDescriptor, FieldElement, Scalar, discrete_log, multiplicative_order
from app.algebra.linalg import rref
from app.algebra.poly import (
    Polynomial,
    ZeroAlpha,
    additive_algebra_basis,
    affine_substitute,
    linear_combination,
    progression_basis,
)
from app.logging import get_logger

logger = get_logger(__name__)


class ZeroGamma(AlgebraError):
    """Множитель γ равен нулю."""


class NotASolution(AlgebraError):
    """Многочлен не удовлетворяет уравнению."""


@dataclass(frozen=True)
class AffineEquation:
    """Уравнение f(αx+β) = γf(x)+δ."""

    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement
    delta: FieldElement

    def __post_init__(self) -> None:
        field_ = self.alpha.field
        for name in ("beta", "gamma", "delta"):
            object.__setattr__(self, name, field_.element(getattr(self, name)))
        if self.alpha.is_zero():
            raise ZeroAlpha("α должно быть ненулевым")
        if self.gamma.is_zero():
            raise ZeroGamma("γ должно быть ненулевым")

    @classmethod
    def of(cls, field_: FieldDescriptor, alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar) -> "AffineEquation":
        return cls(field_.element(alpha), field_.element(beta), field_.element(gamma), field_.element(delta))

    @property
    def field(self) -> FieldDescriptor:
        return self.alpha.field

    def residual(self, f: Polynomial) -> Polynomial:
        """f(αx+β) − γf(x) − δ."""
        return affine_substitute(f, self.alpha, self.beta) - f.scale(self.gamma) - self.delta

    def holds(self, f: Polynomial) -> bool:
        return self.residual(f).is_zero()

    def homogeneous(self) -> "AffineEquation":
        return AffineEquation(self.alpha, self.beta, self.gamma, self.field.zero)

    def __str__(self) -> str:
        return f"f({self.alpha}x+{self.beta}) = {self.gamma}f(x)+{self.delta}"


@dataclass(frozen=True)
class SolutionSpace:
    """Аффинное пространство решений: частное решение плюс линейная оболочка базиса."""

    field: FieldDescriptor
    degree_bound: int
    particular: Optional[Polynomial]
    basis: Tuple[Polynomial, ...] = ()
    equation: Optional[AffineEquation] = dataclass_field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.particular is None and self.basis:
            raise AlgebraError("Пустое пространство не может иметь базиса")
        object.__setattr__(
            self, "basis", tuple(sorted(self.basis, key=lambda b: b.degree or 0))
        )

    @classmethod
    def empty(cls, field_: FieldDescriptor, n: int, equation: Optional[AffineEquation] = None) -> "SolutionSpace":
        return cls(field_, n, None, (), equation)

    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dimension(self) -> Optional[int]:
        return None if self.is_empty() else len(self.basis)

    @property
    def has_nonconstant(self) -> bool:
        """Есть ли в пространстве решение вне K."""
        if self.particular is None:
            return False
        return not self.particular.is_constant() or any(not b.is_constant() for b in self.basis)

    def canonical(self) -> "SolutionSpace":
        """Ступенчатый базис с опорами в старших степенях и редуцированное частное решение."""
        if self.particular is None:
            return self
        size = self.degree_bound + 1
        rows = [list(reversed(b.coefficient_vector(size))) for b in self.basis]
        reduced, pivots = rref(rows)
        basis = [
            Polynomial(self.field, tuple(reversed(row)))
            for row in reduced[: len(pivots)]
        ]
        particular = self.particular
        for b in basis:
            top = b.degree or 0
            particular = particular - b.scale(particular.coefficient(top))
        return SolutionSpace(self.field, self.degree_bound, particular, tuple(basis), self.equation)

    def free_coefficients(self) -> List[int]:
        """Номера коэффициентов, которые можно задавать произвольно."""
        return [b.degree or 0 for b in self.canonical().basis]

    def sample(self, coefficients: Sequence[Scalar]) -> Polynomial:
        if self.particular is None:
            raise AlgebraError("Пространство решений пусто")
        if len(coefficients) != len(self.basis):
            raise ParameterOutOfRange(
                f"Ожидалось {len(self.basis)} коэффициентов, получено {len(coefficients)}"
            )
        values = [self.field.element(c) for c in coefficients]
        return self.particular + linear_combination(self.field, values, self.basis)

    def members(self) -> Iterator[Polynomial]:
        """Все элементы пространства над конечным полем."""
        if self.particular is None:
            return
        elements = list(self.field.elements())
        for combination in itertools.product(elements, repeat=len(self.basis)):
            yield self.sample(combination)

    def contains(self, f: Polynomial) -> bool:
        if self.particular is None:
            return False
        if (f.degree or 0) > self.degree_bound:
            return False
        if self.equation is None:
            raise AlgebraError("Пространство построено без уравнения")
        return self.equation.holds(f)


def verify_affine(f: Polynomial, alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar) -> bool:
    """Точная проверка тождества f(αx+β) = γf(x)+δ по коэффициентам."""
    return AffineEquation.of(f.field, alpha, beta, gamma, delta).holds(f)


def _check_bound(n: int) -> None:
    if n < 0:
        raise ParameterOutOfRange(f"Граница степени должна быть неотрицательной, получено {n}")


def solve_affine(alpha: FieldElement, beta: Scalar, gamma: Scalar, delta: Scalar, n: int) -> SolutionSpace:
    """Полное пространство решений степени ≤ n разбором случаев."""
    _check_bound(n)
    equation = AffineEquation.of(alpha.field, alpha, beta, gamma, delta)
    field_ = equation.field
    alpha, beta, gamma, delta = equation.alpha, equation.beta, equation.gamma, equation.delta
    x = Polynomial.x(field_)

    if alpha.is_one():
        if not gamma.is_one():
            # старшие коэффициенты f(x+β) и γf(x) различны: остаются константы
            logger.debug("α = 1, γ ≠ 1: единственное постоянное решение")
            constant = Polynomial.constant(field_, delta / (1 - gamma))
            return SolutionSpace(field_, n, constant, (), equation)
        if beta.is_zero():
            if not delta.is_zero():
                logger.debug("f(x) = f(x) + δ при δ ≠ 0: решений нет")
                return SolutionSpace.empty(field_, n, equation)
            logger.debug("α = γ = 1, β = δ = 0: подходит любой многочлен")
            basis = tuple(Polynomial.monomial(field_, m) for m in range(n + 1))
            return SolutionSpace(field_, n, Polynomial(field_), basis, equation)
        particular = x.scale(delta / beta)
        if (particular.degree or 0) > n:
            return SolutionSpace.empty(field_, n, equation)
        if field_.characteristic == 0:
            basis = (Polynomial.constant(field_, 1),)
        else:
            basis = tuple(additive_algebra_basis(beta, n))
        logger.debug("Случай сдвига: частное %s, размерность %s", particular, len(basis))
        return SolutionSpace(field_, n, particular, basis, equation)

    center = beta / (1 - alpha)
    exponents = discrete_log(alpha, gamma, n)
    basis_list: List[Polynomial] = []
    if exponents:
        order = multiplicative_order(alpha) or 0
        basis_list = progression_basis(center, exponents[0], order, n)
    if not gamma.is_one():
        particular: Optional[Polynomial] = Polynomial.constant(field_, delta / (1 - gamma))
    elif delta.is_zero():
        particular = Polynomial(field_)
    else:
        particular = None
        basis_list = []
    logger.debug(
        "Случай растяжения: центр %s, показатели %s, частное %s", center, exponents, particular
    )
    return SolutionSpace(field_, n, particular, tuple(basis_list), equation)


# степень образа -> (прообраз, образ)
_PivotTable = Dict[int, Tuple[Polynomial, Polynomial]]


def _reduce_leading_terms(target: Polynomial, pivots: _PivotTable) -> Tuple[Polynomial, Polynomial]:
    """Снять старшие члены target образами из pivots: (набранный прообраз, остаток)."""
    preimage = Polynomial(target.field)
    remainder = target
    while not remainder.is_zero():
        pivot = pivots.get(remainder.degree or 0)
        if pivot is None:
            break
        source, image = pivot
        factor = remainder.leading_coefficient / image.leading_coefficient
        preimage = preimage + source.scale(factor)
        remainder = remainder - image.scale(factor)
    return preimage, remainder


def solve_affine_by_peeling(
    alpha: FieldElement, beta: Scalar, gamma: Scalar, delta: Scalar, n: int
) -> SolutionSpace:
    """То же пространство, построенное индукцией по степени.

    Оператор L(f) = f(αx+β) − γf(x) не повышает степень. Для m = 0..n у x^m
    снимаются старшие члены образа уже найденными образами меньших степеней;
    если образ обнулился, получено однородное решение со старшим членом x^m,
    иначе его старшая степень становится новой опорой. Частное решение
    получается тем же снятием из правой части δ.
    """
    _check_bound(n)
    equation = AffineEquation.of(alpha.field, alpha, beta, gamma, delta)
    homogeneous = equation.homogeneous()
    field_ = equation.field
    pivots: _PivotTable = {}
    basis: List[Polynomial] = []
    for degree in range(n + 1):
        monomial = Polynomial.monomial(field_, degree)
        reduced, image = _reduce_leading_terms(homogeneous.residual(monomial), pivots)
        source = monomial - reduced
        if image.is_zero():
            basis.append(source)
        else:
            pivots[image.degree or 0] = (source, image)

    particular, leftover = _reduce_leading_terms(Polynomial.constant(field_, equation.delta), pivots)
    if not leftover.is_zero():
        logger.debug("Снятие старших членов: δ = %s не лежит в образе", equation.delta)
        return SolutionSpace.empty(field_, n, equation)
    if not equation.holds(particular):
        raise NotASolution(f"Построенное частное решение {particular} не удовлетворяет {equation}")
    logger.debug("Снятие старших членов: %s опор, %s базисных решений", len(pivots), len(basis))
    return SolutionSpace(field_, n, particular, tuple(basis), equation)
