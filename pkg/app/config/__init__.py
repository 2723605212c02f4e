"""Модуль с объектами конфигурации приложения."""

from .settings import Settings

__all__ = ["Settings"]
