"""Быстрый набор самопроверок для команды selftest."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, List, Tuple

from app.algebra.errors import AlgebraError
from app.algebra.fields import FieldDescriptor, make_field
from app.config import Settings
from app.logging import get_logger
from app.solvers.affine import solve_affine, solve_affine_by_peeling
from app.solvers.normalform import FormKind, decompose_semiconjugate
from app.solvers.oracle import (
    count_commuting_scaling,
    count_commuting_translation,
    enumerate_solutions,
    linear_system_solutions,
    search_mixed_counterexamples,
    solution_sets_agree,
)
from app.solvers.samples import random_normal_form

logger = get_logger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _differential_sweep(field: FieldDescriptor, max_degree: int, budget: int) -> str:
    checked = 0
    elements = list(field.elements())
    nonzero = list(field.nonzero_elements())
    for alpha, beta, gamma, delta in itertools.product(nonzero, elements, nonzero, elements):
        for n in range(max_degree + 1):
            args = (alpha, beta, gamma, delta, n)
            direct = solve_affine(*args)
            spaces = [direct, solve_affine_by_peeling(*args), linear_system_solutions(field, *args)]
            if not solution_sets_agree(spaces):
                raise AssertionError(f"Методы расходятся на {args} над {field}")
            enumerated = set(enumerate_solutions(field, *args, budget=budget))
            if enumerated != set(direct.members()):
                raise AssertionError(f"Перебор расходится с решателем на {args} над {field}")
            checked += 1
    return f"{checked} случаев"


def _wells_counts(budget: int) -> str:
    fields = [make_field("F2"), make_field("F3"), make_field("F4", "t^2+t+1"), make_field("F5")]
    for field in fields:
        result = count_commuting_translation(field, 1, budget=budget)
        if not result.matches:
            raise AssertionError(f"Над {field}: {result.count} ≠ {result.expected}")
    return "F2, F3, F4, F5"


def _mullen_counts(budget: int) -> str:
    field = make_field("F5")
    for alpha, beta in itertools.product((2, 3, 4), (0, 1)):
        result = count_commuting_scaling(field, alpha, beta, budget=budget)
        if not result.matches:
            raise AssertionError(f"α = {alpha}, β = {beta}: {result.count} ≠ {result.expected}")
    return "F5, α ∈ {2, 3, 4}"


def _round_trip(seed: int, rounds: int = 10) -> str:
    rng = random.Random(seed)
    for field, kind in itertools.product((make_field("Q"), make_field("F5")), FormKind):
        if kind is FormKind.EMPTY:
            continue
        for _ in range(rounds):
            f, g, h = random_normal_form(field, kind, rng).reconstruct()
            if decompose_semiconjugate(f, g, h).reconstruct() != (f, g, h):
                raise AssertionError(f"Круговой проход не сошёлся для f = {f} над {field}")
    return f"seed {seed}"


def _mixed_search(budget: int) -> str:
    hits = search_mixed_counterexamples(make_field("F3"), 2, 2, budget=budget)
    if hits:
        raise AssertionError(f"Найдено {len(hits)} решений f(αx) = f(x)+1")
    return "F3, степени ≤ 2"


def run_selftest(settings: Settings, budget: int) -> List[CheckResult]:
    """Выполнить все проверки; сбой одной не останавливает остальные."""
    checks: List[Tuple[str, Callable[[], str]]] = [
        ("differential-F2", lambda: _differential_sweep(make_field("F2"), settings.selftest_max_degree, budget)),
        ("differential-F3", lambda: _differential_sweep(make_field("F3"), settings.selftest_max_degree, budget)),
        ("wells-counts", lambda: _wells_counts(budget)),
        ("mullen-counts", lambda: _mullen_counts(budget)),
        ("normal-form-round-trip", lambda: _round_trip(settings.selftest_seed)),
        ("mixed-search", lambda: _mixed_search(budget)),
    ]
    results = []
    for name, check in checks:
        try:
            detail = check()
        except (AssertionError, AlgebraError) as error:
            logger.error("Проверка %s не пройдена: %s", name, error)
            results.append(CheckResult(name, False, str(error)))
        else:
            logger.info("Проверка %s пройдена: %s", name, detail)
            results.append(CheckResult(name, True, detail))
    return results
