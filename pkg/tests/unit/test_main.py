"""Тесты точки входа."""

from __future__ import annotations

from typing import List, NoReturn, Optional

import pytest

from app import main as app_main
from app.config.settings import Settings


def test_main_passes_arguments_and_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    settings = Settings(log_level="DEBUG", default_field="F3")
    calls: list[tuple[Optional[List[str]], Settings]] = []

    monkeypatch.setattr(app_main.Settings, "load", classmethod(lambda cls: settings))

    def fake_run(argv: Optional[List[str]], loaded: Settings) -> int:
        calls.append((argv, loaded))
        return 3

    monkeypatch.setattr(app_main, "run", fake_run)

    assert app_main.main(["selftest"]) == 3
    assert calls == [(["selftest"], settings)]


def test_main_reports_configuration_error(monkeypatch: pytest.MonkeyPatch) -> None:
    def broken(cls: type) -> NoReturn:
        raise ValueError("ENUMERATION_BUDGET должен быть положительным числом")

    monkeypatch.setattr(app_main.Settings, "load", classmethod(broken))
    monkeypatch.setattr(app_main, "run", lambda *_: pytest.fail("run не должен вызываться"))

    assert app_main.main(["selftest"]) == 2
