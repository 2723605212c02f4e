"""Разбор командной строки и выполнение подкоманд."""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from app.algebra.errors import AlgebraError
from app.algebra.fields import FieldDescriptor, FieldElement, make_field
from app.algebra.ratfun import format_rational
from app.cli import report as reports
from app.cli.parsing import parse_expression, parse_mobius, parse_polynomial, parse_scalar
from app.cli.report import Report
from app.cli.selftest import run_selftest
from app.config import Settings
from app.logging import get_logger
from app.solvers.affine import solve_affine, solve_affine_by_peeling, verify_affine
from app.solvers.normalform import (
    NotInvariant,
    decompose_semiconjugate,
    normalize_linear,
    rewrite_translation_invariant,
    solve_semiconjugacy,
)
from app.solvers.oracle import (
    count_commuting_scaling,
    count_commuting_translation,
    count_custom,
    count_park,
    enumerate_solutions,
    search_mixed_counterexamples,
    search_translation_multipliers,
)

logger = get_logger(__name__)

Handler = Callable[[argparse.Namespace, FieldDescriptor, Settings, Report], None]


def _equation_arguments(parser: argparse.ArgumentParser, *, degree: bool = True) -> None:
    parser.add_argument("--alpha", required=True, help="α, ненулевой")
    parser.add_argument("--beta", required=True, help="β")
    parser.add_argument("--gamma", required=True, help="γ, ненулевой")
    parser.add_argument("--delta", required=True, help="δ")
    if degree:
        parser.add_argument("--degree", type=int, required=True, help="граница степени n")


def _equation(args: argparse.Namespace, field: FieldDescriptor, report: Report) -> Tuple[FieldElement, ...]:
    values = tuple(parse_scalar(getattr(args, name), field) for name in ("alpha", "beta", "gamma", "delta"))
    for name, value in zip(("alpha", "beta", "gamma", "delta"), values):
        report.inputs[name] = str(value)
    return values


def _solve(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    alpha, beta, gamma, delta = _equation(args, field, report)
    report.inputs["degree"] = str(args.degree)
    method = solve_affine_by_peeling if args.command == "solve-peel" else solve_affine
    reports.describe_space(report, method(alpha, beta, gamma, delta, args.degree))


def _verify(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    f = parse_polynomial(args.f, field)
    report.inputs["f"] = str(f)
    alpha, beta, gamma, delta = _equation(args, field, report)
    holds = verify_affine(f, alpha, beta, gamma, delta)
    report.add("kind", "verdict", "verdict")
    report.add("holds", holds, "true" if holds else "false")
    if not holds:
        report.status = reports.FALSE


def _normalize(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    g = parse_mobius(args.g, field)
    report.inputs["g"] = str(g)
    v, canonical = normalize_linear(g)
    reports.describe_canonical(report, v, canonical)


def _decompose(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    f = parse_expression(args.f, field)
    g = parse_mobius(args.g, field)
    h = parse_mobius(args.h, field)
    report.inputs.update({"f": format_rational(f), "g": str(g), "h": str(h)})
    reports.describe_normal_form(report, decompose_semiconjugate(f, g, h))


def _family(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    g = parse_mobius(args.g, field)
    h = parse_mobius(args.h, field)
    bound = settings.psi_degree_bound if args.bound is None else args.bound
    report.inputs.update({"g": str(g), "h": str(h), "bound": str(bound)})
    family = solve_semiconjugacy(g, h, bound)
    reports.describe_family(report, family)
    if args.psi is not None and not family.is_empty():
        psi = parse_expression(args.psi, field)
        report.inputs["psi"] = format_rational(psi)
        if args.e is not None:
            report.inputs["e"] = str(args.e)
        sample = family.sample(psi, args.e)
        report.add("sample", reports.rational_document(sample), format_rational(sample))


def _enumerate(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    alpha, beta, gamma, delta = _equation(args, field, report)
    report.inputs["degree"] = str(args.degree)
    members = enumerate_solutions(field, alpha, beta, gamma, delta, args.degree, budget=args.budget)
    report.add("kind", "enumeration", "enumeration")
    reports.describe_polynomials(report, "members", members)
    report.add("count", len(members), str(len(members)))
    if not members:
        report.status = reports.EMPTY


def _require(args: argparse.Namespace, names: Sequence[str]) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise AlgebraError(f"Режим {args.mode} требует параметров {', '.join(missing)}")


def _count(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    report.inputs["mode"] = args.mode
    if args.mode == "wells":
        _require(args, ["beta"])
        beta = parse_scalar(args.beta, field)
        report.inputs["beta"] = str(beta)
        result = count_commuting_translation(field, beta, budget=args.budget)
    elif args.mode == "mullen":
        _require(args, ["alpha", "beta"])
        alpha, beta = parse_scalar(args.alpha, field), parse_scalar(args.beta, field)
        report.inputs.update({"alpha": str(alpha), "beta": str(beta)})
        result = count_commuting_scaling(field, alpha, beta, budget=args.budget)
    elif args.mode == "park":
        _require(args, ["beta", "delta"])
        beta, delta = parse_scalar(args.beta, field), parse_scalar(args.delta, field)
        report.inputs.update({"beta": str(beta), "delta": str(delta)})
        result = count_park(field, beta, delta, budget=args.budget)
    else:
        _require(args, ["alpha", "beta", "gamma", "delta"])
        alpha, beta, gamma, delta = _equation(args, field, report)
        result = count_custom(field, alpha, beta, gamma, delta, budget=args.budget)
    reports.describe_count(report, result)


def _search_mixed(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    report.inputs.update(
        {"num_degree": str(args.num_degree), "den_degree": str(args.den_degree), "kind": args.kind}
    )
    if args.kind == "scaling":
        hits = search_mixed_counterexamples(field, args.num_degree, args.den_degree, budget=args.budget)
        report.add("kind", "search", "search")
        reports.describe_hits(report, hits, "alpha")
        if hits:
            report.status = reports.FALSE
        return
    hits = search_translation_multipliers(field, args.num_degree, args.den_degree, budget=args.budget)
    report.add("kind", "search", "search")
    reports.describe_hits(report, hits, "gamma")
    # f(x+1) = γf(x) допустимо только при γ = 1 и f из K(x^p−x)
    for hit in hits:
        if not hit.parameter.is_one():
            report.status = reports.FALSE
            return
        try:
            rewrite_translation_invariant(hit.f)
        except NotInvariant:
            report.status = reports.FALSE
            return


def _selftest(args: argparse.Namespace, field: FieldDescriptor, settings: Settings, report: Report) -> None:
    results = run_selftest(settings, args.budget)
    report.add("kind", "selftest", "selftest")
    report.add(
        "checks",
        [{"name": item.name, "passed": item.passed, "detail": item.detail} for item in results],
        ", ".join(f"{item.name}={'ok' if item.passed else 'FAIL'}" for item in results),
    )
    if not all(item.passed for item in results):
        report.status = reports.FALSE


HANDLERS: Dict[str, Handler] = {
    "solve": _solve,
    "solve-peel": _solve,
    "verify": _verify,
    "normalize": _normalize,
    "decompose": _decompose,
    "family": _family,
    "enumerate": _enumerate,
    "count": _count,
    "search-mixed": _search_mixed,
    "selftest": _selftest,
}


def build_parser() -> argparse.ArgumentParser:
    """Парсер с общими флагами, допустимыми до и после подкоманды."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help="Q, F<p>, F<q> или F<p>^<k> mod <многочлен>")
    common.add_argument("--mod", default=argparse.SUPPRESS, help="модуль расширения, многочлен от t")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="вывод в JSON")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="бюджет перебора")

    parser = argparse.ArgumentParser(
        prog="python -m app.main",
        description="Точные решения f(αx+β) = γf(x)+δ и f∘g = h∘f",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in ("solve", "solve-peel"):
        _equation_arguments(subparsers.add_parser(name, parents=[common], help="пространство решений"))

    verify = subparsers.add_parser("verify", parents=[common], help="проверить тождество для f")
    verify.add_argument("--f", required=True)
    _equation_arguments(verify, degree=False)

    normalize = subparsers.add_parser("normalize", parents=[common], help="нормальная форма g")
    normalize.add_argument("--g", required=True)

    decompose = subparsers.add_parser("decompose", parents=[common], help="разложить f∘g = h∘f")
    for flag in ("--f", "--g", "--h"):
        decompose.add_argument(flag, required=True)

    family = subparsers.add_parser("family", parents=[common], help="все f с f∘g = h∘f")
    family.add_argument("--g", required=True)
    family.add_argument("--h", required=True)
    family.add_argument("--bound", type=int, default=None, help="граница степени ψ")
    family.add_argument(
        "--psi",
        default=None,
        help="ψ для построения примера; параметр ψ записывается через x, t остаётся генератором расширения",
    )
    family.add_argument("--e", type=int, default=None, help="показатель e для примера")

    _equation_arguments(subparsers.add_parser("enumerate", parents=[common], help="полный перебор"))

    count = subparsers.add_parser("count", parents=[common], help="число решений степени < q")
    count.add_argument("--mode", choices=("wells", "mullen", "park", "custom"), required=True)
    for flag in ("--alpha", "--beta", "--gamma", "--delta"):
        count.add_argument(flag, default=None)

    search = subparsers.add_parser("search-mixed", parents=[common], help="поиск решений смешанных случаев")
    search.add_argument("--num-degree", type=int, default=2)
    search.add_argument("--den-degree", type=int, default=2)
    search.add_argument("--kind", choices=("scaling", "translation"), default="scaling")

    subparsers.add_parser("selftest", parents=[common], help="набор самопроверок")
    return parser


def run(
    argv: Optional[List[str]] = None,
    settings: Optional[Settings] = None,
    stdout: Optional[TextIO] = None,
) -> int:
    """Выполнить команду и вернуть код завершения."""
    settings = settings or Settings.load()
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else 2

    as_json = getattr(args, "json", settings.report_json)
    args.budget = getattr(args, "budget", settings.enumeration_budget)
    report = Report(command=args.command)
    logger.info("Запуск команды %s", args.command)
    try:
        if args.budget <= 0:
            raise AlgebraError("Бюджет перебора должен быть положительным")
        field = make_field(getattr(args, "field", settings.default_field), getattr(args, "mod", None))
        report.field = field
        HANDLERS[args.command](args, field, settings, report)
    except AlgebraError as error:
        logger.error("Команда %s завершилась ошибкой: %s", args.command, error)
        reports.describe_error(report, error)
    except Exception:
        logger.exception("Непредвиденная ошибка при выполнении %s", args.command)
        raise

    stdout.write(report.render(as_json) + "\n")
    logger.info("Команда %s завершена со статусом %s", args.command, report.status)
    return report.exit_code
