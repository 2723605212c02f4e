"""Текстовые и JSON-отчёты команд.

Оба представления строятся одновременно из одних и тех же значений,
поэтому математическое содержание у них совпадает.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Sequence

from app.algebra.errors import AlgebraError, BudgetExceeded, NotSemiconjugate, ObstructionError
from app.algebra.fields import FieldDescriptor, FieldElement
from app.algebra.poly import Polynomial, format_polynomial
from app.algebra.ratfun import MobiusMap, RationalFunction, format_rational
from app.solvers.affine import SolutionSpace
from app.solvers.normalform import CanonicalLinear, FormKind, NormalForm, SolutionFamily
from app.solvers.oracle import CountResult, MixedHit

SUCCESS = "success"
FALSE = "false"
EMPTY = "empty"
USAGE_ERROR = "usage_error"
OBSTRUCTION = "obstruction"
BUDGET_EXCEEDED = "budget_exceeded"

EXIT_CODES = {
    SUCCESS: 0,
    FALSE: 1,
    EMPTY: 1,
    USAGE_ERROR: 2,
    OBSTRUCTION: 3,
    BUDGET_EXCEEDED: 4,
}


def field_document(field_: FieldDescriptor) -> Dict[str, Any]:
    document: Dict[str, Any] = {"char": field_.characteristic, "degree": field_.extension_degree}
    if field_.modulus is not None:
        document["modulus"] = list(field_.modulus)
    return document


def element_document(value: FieldElement) -> str:
    return str(value)


def polynomial_document(f: Polynomial) -> List[str]:
    """Коэффициенты, начиная со свободного члена."""
    return [str(c) for c in f.coefficients]


def rational_document(f: RationalFunction) -> Dict[str, List[str]]:
    return {
        "numerator": polynomial_document(f.numerator),
        "denominator": polynomial_document(f.denominator),
    }


def mobius_document(m: MobiusMap) -> List[str]:
    return [str(value) for value in m.entries()]


@dataclass
class Report:
    """Результат команды: общий заголовок, поля результата и статус."""

    command: str
    field: Optional[FieldDescriptor] = None
    inputs: Dict[str, str] = dataclass_field(default_factory=dict)
    status: str = SUCCESS
    result: Dict[str, Any] = dataclass_field(default_factory=dict)
    lines: List[str] = dataclass_field(default_factory=list)

    def add(self, key: str, document: Any, text: str) -> None:
        self.result[key] = document
        self.lines.append(f"{key}: {text}")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_document(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "field": field_document(self.field) if self.field is not None else None,
            "inputs": dict(self.inputs),
            "result": dict(self.result),
            "status": self.status,
        }

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.to_document(), ensure_ascii=False, indent=2)
        header = [f"command: {self.command}"]
        if self.field is not None:
            header.append(f"field: {self.field}")
        header.extend(f"{key}: {value}" for key, value in self.inputs.items())
        return "\n".join(header + self.lines + [f"status: {self.status}"])


def status_for_error(error: AlgebraError) -> str:
    if isinstance(error, BudgetExceeded):
        return BUDGET_EXCEEDED
    if isinstance(error, ObstructionError):
        return OBSTRUCTION
    if isinstance(error, NotSemiconjugate):
        return FALSE
    return USAGE_ERROR


def describe_error(report: Report, error: AlgebraError) -> None:
    report.result.clear()
    report.lines.clear()
    report.status = status_for_error(error)
    report.add("kind", "error", "error")
    report.add("error", type(error).__name__, type(error).__name__)
    report.add("message", str(error), str(error))


def _join(items: Sequence[str]) -> str:
    return ", ".join(items) if items else "-"


def describe_space(report: Report, space: SolutionSpace) -> None:
    if space.is_empty():
        report.status = EMPTY
        report.add("kind", "empty", "empty")
        return
    canonical = space.canonical()
    assert canonical.particular is not None
    report.add("kind", "affine-space", "affine-space")
    report.add("particular", polynomial_document(canonical.particular), format_polynomial(canonical.particular))
    report.add(
        "basis",
        [polynomial_document(b) for b in canonical.basis],
        _join([format_polynomial(b) for b in canonical.basis]),
    )
    report.add("dimension", len(canonical.basis), str(len(canonical.basis)))
    free = canonical.free_coefficients()
    report.add("free_coefficients", free, _join([str(index) for index in free]))


def describe_polynomials(report: Report, key: str, polynomials: Sequence[Polynomial]) -> None:
    report.add(
        key,
        [polynomial_document(f) for f in polynomials],
        _join([format_polynomial(f) for f in polynomials]),
    )


def describe_canonical(report: Report, v: MobiusMap, canonical: CanonicalLinear) -> None:
    report.add("kind", canonical.kind.value, canonical.kind.value)
    report.add("v", mobius_document(v), str(v))
    if canonical.alpha is not None:
        report.add("alpha", element_document(canonical.alpha), str(canonical.alpha))


def describe_normal_form(report: Report, form: NormalForm) -> None:
    witness: Dict[str, Any] = {
        "u": mobius_document(form.u),
        "v": mobius_document(form.v),
        "psi": rational_document(form.psi),
    }
    text = [f"u = {form.u}", f"v = {form.v}"]
    if form.kind is FormKind.TRANS_TRANS:
        assert form.delta is not None
        witness["delta"] = element_document(form.delta)
        text.append(f"delta = {form.delta}")
    else:
        assert form.alpha is not None
        witness["alpha"] = element_document(form.alpha)
        witness["e"] = form.e
        witness["s"] = form.s
        text.extend([f"alpha = {form.alpha}", f"e = {form.e}", f"s = {form.s}"])
    text.append(f"psi = {format_rational(form.psi)}")
    report.add("kind", form.kind.value, form.kind.value)
    report.add("witness", witness, "; ".join(text))
    core = form.core()
    report.add("core", rational_document(core), format_rational(core))


def describe_family(report: Report, family: SolutionFamily) -> None:
    report.add("kind", family.kind.value, family.kind.value)
    if family.is_empty():
        report.status = EMPTY
        report.add("reason", family.reason, family.reason)
        return
    assert family.u is not None and family.v is not None
    witness: Dict[str, Any] = {"u": mobius_document(family.u), "v": mobius_document(family.v)}
    text = [f"u = {family.u}", f"v = {family.v}"]
    if family.kind is FormKind.TRANS_TRANS:
        assert family.delta is not None
        witness["delta"] = element_document(family.delta)
        text.append(f"delta = {family.delta}")
    else:
        assert family.alpha is not None
        witness["alpha"] = element_document(family.alpha)
        witness["s"] = family.s
        witness["e"] = list(family.exponents)
        text.extend(
            [
                f"alpha = {family.alpha}",
                f"s = {family.s}",
                f"e in {{{_join([str(e) for e in family.exponents])}}}",
            ]
        )
    report.add("witness", witness, "; ".join(text))
    report.add("bound", family.bound, str(family.bound))


def describe_count(report: Report, count: CountResult) -> None:
    report.add("kind", "count", "count")
    report.add("count", count.count, str(count.count))
    report.add("expected", count.expected, str(count.expected))
    report.add("method", count.method, count.method)
    if not count.matches:
        report.status = FALSE


def describe_hits(report: Report, hits: Sequence[MixedHit], parameter: str) -> None:
    report.add(
        "members",
        [{"f": rational_document(hit.f), parameter: element_document(hit.parameter)} for hit in hits],
        _join([f"{format_rational(hit.f)} ({parameter} = {hit.parameter})" for hit in hits]),
    )
    report.add("count", len(hits), str(len(hits)))
