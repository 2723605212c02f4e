"""Точная арифметика полей ℚ, F_p и F_{p^k}.

Элементы хранятся в каноническом виде: несократимая дробь для ℚ, вычет
0..p-1 для F_p и кортеж из k вычетов (младшая степень первой) для F_{p^k}.
Все значения неизменяемы.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple, Union

from app.algebra.errors import AlgebraError, FieldSpecError
from app.algebra.expression import Evaluator, parse_ast
from app.logging import get_logger

logger = get_logger(__name__)

RawValue = Union[Fraction, int, Tuple[int, ...]]
Scalar = Union["FieldElement", int, Fraction]

_FIELD_SPEC = re.compile(
    r"^\s*(?:(?P<rationals>Q)|F\s*(?P<order>\d+)(?:\s*\^\s*(?P<degree>\d+))?)\s*(?:mod\s+(?P<modulus>.+?))?\s*$"
)


class NonPrimeCharacteristic(FieldSpecError):
    """Характеристика не простая (или порядок не степень простого)."""


class ReducibleModulus(FieldSpecError):
    """Модуль расширения приводим над F_p."""


class ModulusDegreeMismatch(FieldSpecError):
    """Степень модуля не совпадает со степенью расширения."""


class NonMonicModulus(FieldSpecError):
    """Модуль расширения не приведён."""


class FieldMismatch(AlgebraError):
    """Операнды принадлежат разным полям."""


class ZeroElement(AlgebraError):
    """Операция не определена для нулевого элемента."""


def _is_prime(value: int) -> bool:
    if value < 2:
        return False
    divisor = 2
    while divisor * divisor <= value:
        if value % divisor == 0:
            return False
        divisor += 1
    return True


def _trim(coefficients: List[int]) -> List[int]:
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return coefficients


def _poly_mul_mod_p(left: Tuple[int, ...], right: Tuple[int, ...], p: int) -> List[int]:
    if not left or not right:
        return []
    product = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a == 0:
            continue
        for j, b in enumerate(right):
            product[i + j] = (product[i + j] + a * b) % p
    return _trim(product)


def _poly_rem_mod_p(dividend: List[int], divisor: Tuple[int, ...], p: int) -> List[int]:
    """Остаток от деления многочленов над F_p (делитель ненулевой)."""
    remainder = _trim([c % p for c in dividend])
    degree = len(divisor) - 1
    lead_inverse = pow(divisor[-1], p - 2, p)
    while len(remainder) - 1 >= degree and remainder:
        factor = remainder[-1] * lead_inverse % p
        shift = len(remainder) - 1 - degree
        for index, coefficient in enumerate(divisor):
            remainder[shift + index] = (remainder[shift + index] - factor * coefficient) % p
        _trim(remainder)
    return remainder


class _ModulusVisitor:
    """Вычисление многочлена от t над F_p для описания модуля."""

    def __init__(self, p: int) -> None:
        self._p = p

    def integer(self, value: int) -> List[int]:
        return _trim([value % self._p])

    def variable(self, name: str, position: int) -> List[int]:
        if name != "t":
            raise FieldSpecError(f"Модуль задаётся многочленом от t (позиция {position})")
        return [0, 1]

    def negate(self, value: List[int]) -> List[int]:
        return _trim([(-c) % self._p for c in value])

    def add(self, left: List[int], right: List[int]) -> List[int]:
        size = max(len(left), len(right))
        padded_left = left + [0] * (size - len(left))
        padded_right = right + [0] * (size - len(right))
        return _trim([(a + b) % self._p for a, b in zip(padded_left, padded_right)])

    def subtract(self, left: List[int], right: List[int]) -> List[int]:
        return self.add(left, self.negate(right))

    def multiply(self, left: List[int], right: List[int]) -> List[int]:
        return _poly_mul_mod_p(tuple(left), tuple(right), self._p)

    def divide(self, left: List[int], right: List[int], position: int) -> List[int]:
        if len(right) != 1:
            raise FieldSpecError(f"В модуле допустимо деление только на константу (позиция {position})")
        inverse = pow(right[0], self._p - 2, self._p)
        return _trim([c * inverse % self._p for c in left])

    def power(self, base: List[int], exponent: int, position: int) -> List[int]:
        if exponent < 0:
            raise FieldSpecError(f"Отрицательная степень в модуле (позиция {position})")
        result = [1]
        for _ in range(exponent):
            result = _poly_mul_mod_p(tuple(result), tuple(base), self._p)
        return result


def _format_residue_polynomial(value: Tuple[int, ...]) -> str:
    terms = []
    for degree in range(len(value) - 1, -1, -1):
        coefficient = value[degree]
        if coefficient == 0:
            continue
        if degree == 0:
            terms.append(str(coefficient))
            continue
        prefix = "" if coefficient == 1 else str(coefficient)
        power = "t" if degree == 1 else f"t^{degree}"
        terms.append(prefix + power)
    return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class FieldDescriptor:
    """Описание поля коэффициентов: ℚ, F_p или F_{p^k} с явным модулем."""

    characteristic: int
    extension_degree: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise NonPrimeCharacteristic(
                f"Характеристика {self.characteristic} не является простым числом"
            )
        if self.extension_degree < 1:
            raise ModulusDegreeMismatch("Степень расширения должна быть положительной")
        if self.characteristic == 0 and (self.extension_degree != 1 or self.modulus):
            raise ModulusDegreeMismatch("Расширения ℚ не поддерживаются")
        if self.extension_degree == 1:
            if self.modulus is not None:
                raise ModulusDegreeMismatch("Простое поле задаётся без модуля")
            return
        if self.modulus is None:
            raise ModulusDegreeMismatch(
                f"Для F_{self.characteristic}^{self.extension_degree} нужен модуль степени {self.extension_degree}"
            )
        if len(self.modulus) - 1 != self.extension_degree:
            raise ModulusDegreeMismatch(
                f"Степень модуля {len(self.modulus) - 1} не равна {self.extension_degree}"
            )
        if self.modulus[-1] != 1:
            raise NonMonicModulus("Модуль расширения должен быть приведённым")
        if not self._modulus_irreducible():
            raise ReducibleModulus(
                f"Модуль {_format_residue_polynomial(self.modulus)} приводим над F_{self.characteristic}"
            )

    def _modulus_irreducible(self) -> bool:
        p = self.characteristic
        assert self.modulus is not None
        for degree in range(1, self.extension_degree // 2 + 1):
            for lower in itertools.product(range(p), repeat=degree):
                factor = tuple(lower) + (1,)
                if not _poly_rem_mod_p(list(self.modulus), factor, p):
                    logger.debug(
                        "Модуль делится на %s", _format_residue_polynomial(factor)
                    )
                    return False
        return True

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    @property
    def cardinality(self) -> Optional[int]:
        """Число элементов p^k, либо None для бесконечного поля."""
        if not self.is_finite:
            return None
        return self.characteristic ** self.extension_degree

    def __str__(self) -> str:
        if not self.is_finite:
            return "Q"
        if self.extension_degree == 1:
            return f"F{self.characteristic}"
        assert self.modulus is not None
        return (
            f"F{self.characteristic}^{self.extension_degree} mod "
            f"{_format_residue_polynomial(self.modulus)}"
        )

    # --- элементы ---------------------------------------------------------

    def element(self, value: Union[int, Fraction, Tuple[int, ...], "FieldElement"]) -> "FieldElement":
        """Привести значение к каноническому элементу поля."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"Элемент поля {value.field} использован в поле {self}")
            return value
        return FieldElement(self, self._normalize(value))

    def _normalize(self, value: Union[int, Fraction, Tuple[int, ...]]) -> RawValue:
        p = self.characteristic
        if p == 0:
            if isinstance(value, tuple):
                raise FieldMismatch("Кортеж вычетов не является элементом ℚ")
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroElement(f"Знаменатель {value.denominator} обращается в ноль в F_{p}")
            residue = value.numerator * pow(value.denominator, p - 2, p) % p
            return self._normalize(residue)
        if self.extension_degree == 1:
            if isinstance(value, tuple):
                if any(value[1:]):
                    raise FieldMismatch("Кортеж вычетов не является элементом простого поля")
                value = value[0] if value else 0
            return value % p
        if isinstance(value, int):
            coefficients = [value % p]
        else:
            assert self.modulus is not None
            coefficients = _poly_rem_mod_p(list(value), self.modulus, p)
        padded = list(coefficients) + [0] * (self.extension_degree - len(coefficients))
        return tuple(padded)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def generator(self) -> "FieldElement":
        """Образ t в F_p[t]/(модуль)."""
        if self.extension_degree == 1:
            raise FieldMismatch(f"Поле {self} не содержит генератора t")
        return self.element((0, 1))

    def elements(self) -> Iterator["FieldElement"]:
        """Все элементы конечного поля в каноническом порядке."""
        if not self.is_finite:
            raise AlgebraError("Поле ℚ бесконечно")
        p = self.characteristic
        if self.extension_degree == 1:
            for residue in range(p):
                yield FieldElement(self, residue)
            return
        for digits in itertools.product(range(p), repeat=self.extension_degree):
            yield FieldElement(self, tuple(digits))

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        return (element for element in self.elements() if not element.is_zero())

    def random_element(self, rng: random.Random, height: int = 5) -> "FieldElement":
        """Случайный элемент; для ℚ с числителем и знаменателем не выше height."""
        if not self.is_finite:
            return self.element(Fraction(rng.randint(-height, height), rng.randint(1, height)))
        if self.extension_degree == 1:
            return self.element(rng.randrange(self.characteristic))
        return self.element(
            tuple(rng.randrange(self.characteristic) for _ in range(self.extension_degree))
        )

    # --- операции над каноническими значениями ------------------------------

    def _add(self, left: RawValue, right: RawValue) -> RawValue:
        p = self.characteristic
        if p == 0 or self.extension_degree == 1:
            result = left + right  # type: ignore[operator]
            return result if p == 0 else result % p
        return tuple((a + b) % p for a, b in zip(left, right))  # type: ignore[arg-type]

    def _negate(self, value: RawValue) -> RawValue:
        p = self.characteristic
        if p == 0:
            return -value  # type: ignore[operator]
        if self.extension_degree == 1:
            return (-value) % p  # type: ignore[operator]
        return tuple((-a) % p for a in value)  # type: ignore[union-attr]

    def _multiply(self, left: RawValue, right: RawValue) -> RawValue:
        p = self.characteristic
        if p == 0 or self.extension_degree == 1:
            result = left * right  # type: ignore[operator]
            return result if p == 0 else result % p
        return self._normalize(tuple(_poly_mul_mod_p(left, right, p)))  # type: ignore[arg-type]

    def _inverse(self, value: RawValue) -> RawValue:
        p = self.characteristic
        if p == 0:
            return 1 / value  # type: ignore[operator]
        if self.extension_degree == 1:
            return pow(value, p - 2, p)  # type: ignore[arg-type]
        # a^(q-2) = a^(-1) в мультипликативной группе порядка q-1
        result: RawValue = self._normalize(1)
        base = value
        exponent = self.cardinality - 2  # type: ignore[operator]
        while exponent:
            if exponent & 1:
                result = self._multiply(result, base)
            base = self._multiply(base, base)
            exponent >>= 1
        return result


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Элемент поля в канонической форме."""

    field: FieldDescriptor
    value: RawValue

    def _coerce(self, other: Scalar) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"Смешение полей {self.field} и {other.field}")
            return other
        return self.field.element(other)

    def is_zero(self) -> bool:
        return self.value == self.field._normalize(0)

    def is_one(self) -> bool:
        return self.value == self.field._normalize(1)

    def __add__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        return FieldElement(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field._negate(self.value))

    def __sub__(self, other: Scalar) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        return FieldElement(self.field, self.field._multiply(self.value, other.value))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroElement("Ноль необратим")
        return FieldElement(self.field, self.field._inverse(self.value))

    def __truediv__(self, other: Scalar) -> "FieldElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.element(other)
            except ZeroElement:
                return False
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def sort_key(self) -> Tuple[int, ...]:
        """Ключ канонического порядка элементов."""
        if isinstance(self.value, Fraction):
            return (self.value.numerator, self.value.denominator)
        if isinstance(self.value, int):
            return (self.value,)
        return tuple(self.value)

    def __lt__(self, other: "FieldElement") -> bool:
        return self.sort_key() < self._coerce(other).sort_key()

    def __str__(self) -> str:
        if isinstance(self.value, tuple):
            return _format_residue_polynomial(self.value)
        return str(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.field})"


def make_field(spec: str, modulus: Optional[str] = None) -> FieldDescriptor:
    """Разобрать описание поля: `Q`, `F<p>`, `F<p>^<k> mod <многочлен от t>`.

    Порядок вида F<q> с q = p^k тоже допустим, модуль можно передать
    отдельно (флаг --mod интерфейса командной строки).
    """
    match = _FIELD_SPEC.match(spec)
    if not match:
        raise FieldSpecError(f"Некорректное описание поля: {spec!r}")
    if match.group("rationals"):
        if match.group("modulus") or modulus:
            raise ModulusDegreeMismatch("Поле ℚ задаётся без модуля")
        return FieldDescriptor(0)

    order = int(match.group("order"))
    if match.group("degree"):
        p, k = order, int(match.group("degree"))
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"Основание {p} не является простым числом")
    else:
        p, k = _split_prime_power(order)

    modulus_text = match.group("modulus") or modulus
    if modulus_text and match.group("modulus") and modulus and modulus.strip() != modulus_text.strip():
        raise FieldSpecError("Модуль указан дважды с разными значениями")
    if not modulus_text:
        return FieldDescriptor(p, k)
    coefficients = Evaluator(_ModulusVisitor(p)).evaluate(parse_ast(modulus_text))
    field = FieldDescriptor(p, k, tuple(coefficients))
    logger.debug("Построено поле %s", field)
    return field


def _split_prime_power(order: int) -> Tuple[int, int]:
    if order < 2:
        raise NonPrimeCharacteristic(f"Порядок {order} не является степенью простого")
    p = next(d for d in range(2, order + 1) if order % d == 0)
    k = 0
    rest = order
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"Порядок {order} не является степенью простого")
    return p, k


def multiplicative_order(a: FieldElement) -> Optional[int]:
    """Мультипликативный порядок; None означает бесконечный порядок."""
    if a.is_zero():
        raise ZeroElement("Порядок нуля не определён")
    field = a.field
    if not field.is_finite:
        if a == 1:
            return 1
        if a == -1:
            return 2
        return None
    power = a
    order = 1
    while not power.is_one():
        power = power * a
        order += 1
    return order


def discrete_log(alpha: FieldElement, gamma: FieldElement, bound: int) -> List[int]:
    """Все e из [0, bound] с alpha^e = gamma, перебором умножений."""
    if alpha.is_zero() or gamma.is_zero():
        raise ZeroElement("Дискретный логарифм определён для ненулевых элементов")
    order = multiplicative_order(alpha)
    power = alpha.field.one
    if order is not None:
        for exponent in range(min(order, bound + 1)):
            if power == gamma:
                return list(range(exponent, bound + 1, order))
            power = power * alpha
        return []
    for exponent in range(bound + 1):
        if power == gamma:
            return [exponent]
        power = power * alpha
    return []
