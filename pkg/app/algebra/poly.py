"""Плотные многочлены от одной переменной над полем коэффициентов."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.algebra.errors import AlgebraError
from app.algebra.fields import FieldDescriptor, FieldElement, FieldMismatch, Scalar


class ZeroAlpha(AlgebraError):
    """Коэффициент α при x равен нулю."""


class ZeroBeta(AlgebraError):
    """Сдвиг β равен нулю там, где требуется ненулевой."""


class CharacteristicZero(AlgebraError):
    """Операция определена только в положительной характеристике."""


@dataclass(frozen=True)
class Polynomial:
    """Многочлен: coefficients[i] при x^i, старший коэффициент ненулевой."""

    field: FieldDescriptor
    coefficients: Tuple[FieldElement, ...] = ()

    def __post_init__(self) -> None:
        normalized = [self.field.element(c) for c in self.coefficients]
        while normalized and normalized[-1].is_zero():
            normalized.pop()
        object.__setattr__(self, "coefficients", tuple(normalized))

    @classmethod
    def of(cls, field: FieldDescriptor, coefficients: Iterable[Union[Scalar, Tuple[int, ...]]]) -> "Polynomial":
        return cls(field, tuple(field.element(c) for c in coefficients))

    @classmethod
    def x(cls, field: FieldDescriptor) -> "Polynomial":
        return cls.of(field, [0, 1])

    @classmethod
    def constant(cls, field: FieldDescriptor, value: Scalar) -> "Polynomial":
        return cls.of(field, [value])

    @classmethod
    def monomial(cls, field: FieldDescriptor, degree: int, coefficient: Scalar = 1) -> "Polynomial":
        return cls.of(field, [0] * degree + [coefficient])

    # --- свойства -----------------------------------------------------------

    @property
    def degree(self) -> Optional[int]:
        """Степень; у нулевого многочлена None."""
        return len(self.coefficients) - 1 if self.coefficients else None

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_constant(self) -> bool:
        return len(self.coefficients) <= 1

    @property
    def leading_coefficient(self) -> FieldElement:
        return self.coefficients[-1] if self.coefficients else self.field.zero

    def coefficient(self, index: int) -> FieldElement:
        if 0 <= index < len(self.coefficients):
            return self.coefficients[index]
        return self.field.zero

    def coefficient_vector(self, length: int) -> List[FieldElement]:
        """Коэффициенты с дополнением нулями до длины length."""
        return [self.coefficient(i) for i in range(length)]

    def valuation(self) -> Optional[int]:
        """Кратность x; у нулевого многочлена None."""
        for index, coefficient in enumerate(self.coefficients):
            if not coefficient.is_zero():
                return index
        return None

    # --- арифметика ---------------------------------------------------------

    def _coerce(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"Смешение полей {self.field} и {other.field}")
            return other
        return Polynomial.constant(self.field, other)

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = self._coerce(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(
            self.field,
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)),
        )

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, tuple(-c for c in self.coefficients))

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field)
        product = [self.field.zero] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] = product[i + j] + a * b
        return Polynomial(self.field, tuple(product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise AlgebraError("Отрицательная степень многочлена")
        result = Polynomial.constant(self.field, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Деление на нулевой многочлен")
        quotient = [self.field.zero] * max(len(self.coefficients) - len(divisor.coefficients) + 1, 0)
        remainder = list(self.coefficients)
        lead_inverse = divisor.leading_coefficient.inverse()
        shift_limit = len(divisor.coefficients) - 1
        while len(remainder) - 1 >= shift_limit and remainder:
            factor = remainder[-1] * lead_inverse
            shift = len(remainder) - 1 - shift_limit
            quotient[shift] = factor
            for index, coefficient in enumerate(divisor.coefficients):
                remainder[shift + index] = remainder[shift + index] - factor * coefficient
            while remainder and remainder[-1].is_zero():
                remainder.pop()
        return Polynomial(self.field, tuple(quotient)), Polynomial(self.field, tuple(remainder))

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[1]

    def scale(self, factor: Scalar) -> "Polynomial":
        return Polynomial(self.field, tuple(c * factor for c in self.coefficients))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.leading_coefficient.inverse())

    def __call__(self, point: Scalar) -> FieldElement:
        """Значение в точке по схеме Горнера."""
        value = self.field.zero
        point = self.field.element(point)
        for coefficient in reversed(self.coefficients):
            value = value * point + coefficient
        return value

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(f: Polynomial, variable: str = "x") -> str:
    """Каноническая запись: убывающие степени, коэффициент слитно с переменной."""
    terms: List[str] = []
    for degree in range(len(f.coefficients) - 1, -1, -1):
        coefficient = f.coefficients[degree]
        if coefficient.is_zero():
            continue
        text = str(coefficient)
        if degree == 0:
            terms.append(text)
            continue
        power = variable if degree == 1 else f"{variable}^{degree}"
        if coefficient.is_one():
            terms.append(power)
        elif text == "-1":
            terms.append("-" + power)
        elif "+" in text:
            terms.append(f"({text}){power}")
        else:
            terms.append(text + power)
    if not terms:
        return "0"
    result = terms[0]
    for term in terms[1:]:
        result += term if term.startswith("-") else "+" + term
    return result


def polynomial_gcd(left: Polynomial, right: Polynomial) -> Polynomial:
    """Приведённый НОД алгоритмом Евклида."""
    a, b = left, right
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def compose(f: Polynomial, g: Polynomial) -> Polynomial:
    """f(g(x)) по схеме Горнера."""
    if f.field != g.field:
        raise FieldMismatch(f"Смешение полей {f.field} и {g.field}")
    result = Polynomial(f.field)
    for coefficient in reversed(f.coefficients):
        result = result * g + coefficient
    return result


def affine_substitute(f: Polynomial, alpha: FieldElement, beta: FieldElement) -> Polynomial:
    """f(αx+β) через биномиальное разложение каждого члена."""
    field = f.field
    alpha = field.element(alpha)
    beta = field.element(beta)
    if alpha.is_zero():
        raise ZeroAlpha("Подстановка αx+β требует α ≠ 0")
    size = len(f.coefficients)
    result = [field.zero] * size
    alpha_powers = [alpha ** j for j in range(size)]
    beta_powers = [beta ** j for j in range(size)]
    for i, coefficient in enumerate(f.coefficients):
        if coefficient.is_zero():
            continue
        for j in range(i + 1):
            result[j] = result[j] + coefficient * comb(i, j) * alpha_powers[j] * beta_powers[i - j]
    return Polynomial(field, tuple(result))


def additive_algebra_basis(beta: FieldElement, n: int) -> List[Polynomial]:
    """Степени t^j, t = x^p − β^{p−1}x, с j·p ≤ n: базис K[t] в степенях ≤ n."""
    field = beta.field
    p = field.characteristic
    if p == 0:
        raise CharacteristicZero("В характеристике 0 инварианты сдвига исчерпываются константами")
    if beta.is_zero():
        raise ZeroBeta("Сдвиг β должен быть ненулевым")
    x = Polynomial.x(field)
    t = x ** p - x.scale(beta ** (p - 1))
    basis = [Polynomial.constant(field, 1)]
    for _ in range(1, n // p + 1):
        basis.append(basis[-1] * t)
    return basis


def progression_exponents(e: int, s: int, n: int) -> List[int]:
    """Показатели e, e+s, e+2s, … не выше n; при s = 0 только e."""
    if e > n or e < 0:
        return []
    if s == 0:
        return [e]
    return list(range(e, n + 1, s))


def progression_basis(c: FieldElement, e: int, s: int, n: int) -> List[Polynomial]:
    """Многочлены (x−c)^m для m из прогрессии показателей, в мономиальном базисе."""
    field = c.field
    return [
        affine_substitute(Polynomial.monomial(field, m), field.one, -c)
        for m in progression_exponents(e, s, n)
    ]


def linear_combination(
    field: FieldDescriptor, coefficients: Sequence[FieldElement], polynomials: Sequence[Polynomial]
) -> Polynomial:
    result = Polynomial(field)
    for coefficient, polynomial in zip(coefficients, polynomials):
        result = result + polynomial.scale(coefficient)
    return result
