"""Базовые категории ошибок алгебраического ядра."""

from __future__ import annotations


class AlgebraError(ValueError):
    """Общая ошибка вычислений: некорректный вход или нарушение предусловия."""


class FieldSpecError(AlgebraError):
    """Некорректное описание поля коэффициентов."""


class ExpressionError(AlgebraError):
    """Ошибка разбора или вычисления выражения."""


class ObstructionError(AlgebraError):
    """Математическое препятствие: ответ не существует над данным полем."""


class BudgetExceeded(AlgebraError):
    """Перебор превышает заданный бюджет кандидатов."""

    def __init__(self, required: int, budget: int) -> None:
        super().__init__(f"Требуется {required} кандидатов, бюджет {budget}")
        self.required = required
        self.budget = budget


class NotSemiconjugate(AlgebraError):
    """Тройка (f, g, h) не удовлетворяет f∘g = h∘f."""


class ParameterOutOfRange(AlgebraError):
    """Параметр вне допустимого диапазона (граница степени, показатель)."""
