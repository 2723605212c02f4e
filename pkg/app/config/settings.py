"""Объекты и функции для загрузки конфигурации приложения."""

from __future__ import annotations

import os
from dataclasses import dataclass

from dotenv import load_dotenv


@dataclass(frozen=True)
class Settings:
    """Собранные настройки приложения."""

    log_level: str = "INFO"
    enumeration_budget: int = 10_000_000
    psi_degree_bound: int = 3
    default_field: str = "Q"
    report_json: bool = False
    selftest_seed: int = 0
    selftest_max_degree: int = 3

    @classmethod
    def load(cls) -> "Settings":
        """Загрузить конфигурацию из `.env` и переменных окружения."""
        load_dotenv()

        enumeration_budget = _get_int_env("ENUMERATION_BUDGET", default=10_000_000)
        if enumeration_budget <= 0:
            raise ValueError("ENUMERATION_BUDGET должен быть положительным числом")

        psi_degree_bound = _get_int_env("PSI_DEGREE_BOUND", default=3)
        selftest_max_degree = _get_int_env("SELFTEST_MAX_DEGREE", default=3)
        for name, value in (
            ("PSI_DEGREE_BOUND", psi_degree_bound),
            ("SELFTEST_MAX_DEGREE", selftest_max_degree),
        ):
            if value < 0:
                raise ValueError(f"{name} не может быть отрицательным")

        return cls(
            log_level=(os.getenv("LOG_LEVEL") or "INFO").upper(),
            enumeration_budget=enumeration_budget,
            psi_degree_bound=psi_degree_bound,
            default_field=(os.getenv("DEFAULT_FIELD") or "Q").strip(),
            report_json=_env_flag("REPORT_JSON", False),
            selftest_seed=_get_int_env("SELFTEST_SEED", default=0),
            selftest_max_degree=selftest_max_degree,
        )


def _env_flag(name: str, default: bool = True) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "y", "on"}


def _get_int_env(name: str, *, default: int) -> int:
    """Получить целое значение из переменной окружения."""

    raw_value = os.getenv(name)
    if raw_value is None or raw_value.strip() == "":
        return default

    try:
        return int(raw_value)
    except ValueError as error:
        raise ValueError(f"Некорректное числовое значение для переменной {name}") from error
