"""Точка входа: python -m app.main <команда> [флаги]."""

from __future__ import annotations

import logging
import sys
from typing import List, Optional

from app.cli.runner import run
from app.config import Settings
from app.logging import configure_logging, get_logger


def main(argv: Optional[List[str]] = None) -> int:
    """Запустить команду с инициализацией конфигурации и логированием."""
    configure_logging("INFO")
    logger = get_logger(__name__)

    try:
        settings = Settings.load()
    except ValueError as error:
        logger.error("Ошибка загрузки конфигурации: %s", error)
        return 2

    logging.getLogger().setLevel(settings.log_level)
    logger.debug("Конфигурация загружена: %s", settings)
    return run(argv, settings)


if __name__ == "__main__":
    sys.exit(main())
