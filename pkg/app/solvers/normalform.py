"""Нормальные формы дробно-линейных отображений и решений f∘g = h∘f.

Отображение g степени один сопряжением приводится к αx или x+1; после
этого уравнение f∘g = h∘f сводится к F(x+1) = F(x)+δ или F(αx) = γF(x),
решения которых описываются явно.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from app.algebra.errors import AlgebraError, NotSemiconjugate, ObstructionError, ParameterOutOfRange
from app.algebra.fields import FieldDescriptor, FieldElement, discrete_log, multiplicative_order
from app.algebra.linalg import nullspace
from app.algebra.poly import Polynomial
from app.algebra.ratfun import (
    INFINITY,
    MobiusMap,
    RationalFunction,
    ZeroFunction,
    conjugate,
    mobius_fixed_points,
    mobius_inverse,
    rf_compose,
    valuation_at_zero,
)
from app.logging import get_logger

logger = get_logger(__name__)


class NoFixedPointInField(ObstructionError):
    """У отображения нет неподвижных точек в K ∪ {∞}."""


class NotInvariant(AlgebraError):
    """Функция не инвариантна относительно сдвига x ↦ x+1."""


class NotScalingRelated(AlgebraError):
    """Отношение f(αx)/f(x) не является константой."""


class LinearKind(str, Enum):
    IDENTITY = "identity"
    TRANSLATION = "translation"
    SCALING = "scaling"


class FormKind(str, Enum):
    TRANS_TRANS = "trans-trans"
    SCALE_SCALE = "scale-scale"
    EMPTY = "empty"


@dataclass(frozen=True)
class CanonicalLinear:
    """Канонический представитель класса сопряжённости: x, x+1 или αx."""

    kind: LinearKind
    alpha: Optional[FieldElement] = None

    def as_map(self, field: FieldDescriptor) -> MobiusMap:
        if self.kind is LinearKind.TRANSLATION:
            return MobiusMap.affine(field.one, field.one)
        if self.kind is LinearKind.SCALING:
            assert self.alpha is not None
            return MobiusMap.affine(self.alpha, field.zero)
        return MobiusMap.identity(field)

    def __str__(self) -> str:
        if self.kind is LinearKind.SCALING:
            return f"scaling({self.alpha})"
        return self.kind.value


def _anchor_at_infinity(g: MobiusMap) -> Tuple[MobiusMap, FieldElement, FieldElement]:
    """Сопряжение w, переводящее неподвижную точку g в ∞: w⁻¹∘g∘w = αx+β."""
    field = g.field
    points = mobius_fixed_points(g)
    if not points:
        raise NoFixedPointInField(f"У {g} нет неподвижных точек над {field}")
    if INFINITY in points:
        anchor = MobiusMap.identity(field)
    else:
        rho = points[0]
        # ρ + 1/x = (ρx + 1)/x
        anchor = MobiusMap(field.element(rho), field.one, field.one, field.zero)
    affine = conjugate(g, anchor)
    if not affine.c.is_zero():
        raise AlgebraError(f"Сопряжение {g} при помощи {anchor} не дало многочлена")
    logger.debug("Якорь для %s: %s, получено %s", g, anchor, affine)
    return anchor, affine.a / affine.d, affine.b / affine.d


def normalize_linear(g: MobiusMap) -> Tuple[MobiusMap, CanonicalLinear]:
    """Найти v с v⁻¹∘g∘v ∈ {x, x+1, αx}."""
    field = g.field
    if g.is_identity():
        return MobiusMap.identity(field), CanonicalLinear(LinearKind.IDENTITY)
    anchor, alpha, beta = _anchor_at_infinity(g)
    if alpha.is_one():
        shift = MobiusMap.affine(beta, field.zero)
        canonical = CanonicalLinear(LinearKind.TRANSLATION)
    else:
        shift = MobiusMap.affine(field.one, beta / (1 - alpha))
        canonical = CanonicalLinear(LinearKind.SCALING, alpha)
    v = anchor.compose(shift)
    if conjugate(g, v) != canonical.as_map(field):
        raise AlgebraError(f"Нормализация {g} не сошлась")
    logger.debug("Нормализация %s: v = %s, форма %s", g, v, canonical)
    return v, canonical


def _translation_core(delta: FieldElement, psi: RationalFunction) -> RationalFunction:
    """δx + ψ(x^p − x); в характеристике 0 ψ постоянна."""
    field = psi.field
    x = RationalFunction.x(field)
    p = field.characteristic
    if p == 0:
        if not psi.is_constant():
            raise ParameterOutOfRange("В характеристике 0 ψ должна быть константой")
        return x * delta + psi
    return x * delta + rf_compose(psi, x ** p - x)


def _scaling_core(e: int, s: int, psi: RationalFunction) -> RationalFunction:
    """x^e·ψ(x^s); при s = 0 ψ(x^0) = ψ(1)."""
    x = RationalFunction.x(psi.field)
    return x ** e * rf_compose(psi, x ** s)


def rewrite_translation_invariant(f: RationalFunction) -> RationalFunction:
    """ψ с ψ(x^p − x) = f для f, инвариантной относительно x ↦ x+1."""
    field = f.field
    x = RationalFunction.x(field)
    if rf_compose(f, x + 1) != f:
        raise NotInvariant(f"{f} не инвариантна относительно x ↦ x+1")
    p = field.characteristic
    if p == 0 or f.is_constant():
        return f
    numerator, denominator = f.numerator, f.denominator
    t = Polynomial.x(field) ** p - Polynomial.x(field)
    c_size = (numerator.degree or 0) // p + 1
    d_size = (denominator.degree or 0) // p + 1
    powers = [Polynomial.constant(field, 1)]
    for _ in range(max(c_size, d_size)):
        powers.append(powers[-1] * t)
    # неизвестные: коэффициенты C, затем D; A·D(T) − B·C(T) = 0
    columns = [-(denominator * powers[i]) for i in range(c_size)]
    columns += [numerator * powers[j] for j in range(d_size)]
    rows = max((column.degree or 0) for column in columns) + 1
    matrix = [[column.coefficient(row) for column in columns] for row in range(rows)]
    for vector in nullspace(field, matrix, len(columns)):
        c_part, d_part = vector[:c_size], vector[c_size:]
        if all(value.is_zero() for value in d_part):
            continue
        psi = RationalFunction(Polynomial(field, tuple(c_part)), Polynomial(field, tuple(d_part)))
        if rf_compose(psi, RationalFunction.from_polynomial(t)) == f:
            logger.debug("Инвариант сдвига %s = ψ(x^p−x), ψ = %s", f, psi)
            return psi
    raise NotInvariant(f"Не удалось выразить {f} через x^{p}−x")


def _contract(f: Polynomial, s: int) -> Polynomial:
    """g с g(x^s) = f; все показатели f должны делиться на s."""
    coefficients = f.coefficients
    if any(not value.is_zero() and index % s for index, value in enumerate(coefficients)):
        raise NotScalingRelated(f"Показатели {f} не лежат в одном классе по модулю {s}")
    return Polynomial(f.field, tuple(coefficients[::s]))


@dataclass(frozen=True)
class ScalingForm:
    """f = x^e·ψ(x^s), f(αx) = γf(x)."""

    e: int
    s: int
    psi: RationalFunction
    gamma: FieldElement


def extract_scaling_form(f: RationalFunction, alpha: FieldElement) -> ScalingForm:
    if f.is_zero():
        raise ZeroFunction("Нулевая функция не имеет формы x^e·ψ(x^s)")
    field = f.field
    x = RationalFunction.x(field)
    ratio = rf_compose(f, x * alpha) / f
    if not ratio.is_constant():
        raise NotScalingRelated(f"{f}(αx)/{f} не константа при α = {alpha}")
    gamma = ratio.constant_value()
    e = valuation_at_zero(f)
    unit = f / x ** e
    s = multiplicative_order(alpha) or 0
    if s == 0:
        if not unit.is_constant():
            raise NotScalingRelated(f"{f} не имеет вида c·x^e при α бесконечного порядка")
        psi = unit
    else:
        psi = RationalFunction(_contract(unit.numerator, s), _contract(unit.denominator, s))
    if alpha ** e != gamma:
        raise NotScalingRelated(f"α^e = {alpha ** e} не совпадает с γ = {gamma}")
    logger.debug("Форма растяжения %s: e=%s, s=%s, ψ=%s", f, e, s, psi)
    return ScalingForm(e, s, psi, gamma)


@dataclass(frozen=True)
class NormalForm:
    """Свидетель f = u⁻¹∘(ядро)∘v⁻¹ с ядром δx+ψ(x^p−x) или x^e·ψ(x^s)."""

    kind: FormKind
    u: MobiusMap
    v: MobiusMap
    psi: RationalFunction
    delta: Optional[FieldElement] = None
    alpha: Optional[FieldElement] = None
    e: Optional[int] = None
    s: Optional[int] = None

    @property
    def field(self) -> FieldDescriptor:
        return self.u.field

    def core(self) -> RationalFunction:
        if self.kind is FormKind.TRANS_TRANS:
            assert self.delta is not None
            return _translation_core(self.delta, self.psi)
        assert self.e is not None and self.s is not None
        return _scaling_core(self.e, self.s, self.psi)

    def canonical_pair(self) -> Tuple[MobiusMap, MobiusMap]:
        """(G, H) = (v⁻¹∘g∘v, u∘h∘u⁻¹)."""
        field = self.field
        if self.kind is FormKind.TRANS_TRANS:
            assert self.delta is not None
            return MobiusMap.affine(field.one, field.one), MobiusMap.affine(field.one, self.delta)
        assert self.alpha is not None and self.e is not None
        return MobiusMap.affine(self.alpha, field.zero), MobiusMap.affine(self.alpha ** self.e, field.zero)

    def reconstruct(self) -> Tuple[RationalFunction, MobiusMap, MobiusMap]:
        """Восстановить (f, g, h) из свидетеля."""
        u_inverse = mobius_inverse(self.u)
        f = rf_compose(
            u_inverse.as_rational(),
            rf_compose(self.core(), mobius_inverse(self.v).as_rational()),
        )
        big_g, big_h = self.canonical_pair()
        g = self.v.compose(big_g).compose(mobius_inverse(self.v))
        h = u_inverse.compose(big_h).compose(self.u)
        return f, g, h


def _semiconjugates(f: RationalFunction, g: MobiusMap, h: MobiusMap) -> bool:
    return rf_compose(f, g.as_rational()) == rf_compose(h.as_rational(), f)


def decompose_semiconjugate(f: RationalFunction, g: MobiusMap, h: MobiusMap) -> NormalForm:
    """Нормальная форма непостоянной f с f∘g = h∘f."""
    if f.is_constant():
        raise ParameterOutOfRange("f должна быть непостоянной")
    if not _semiconjugates(f, g, h):
        raise NotSemiconjugate(f"f∘g ≠ h∘f для f = {f}, g = {g}, h = {h}")
    field = f.field
    v, big_g = normalize_linear(g)

    if big_g.kind is LinearKind.IDENTITY:
        if not h.is_identity():
            raise NotSemiconjugate("При g = x непостоянная f требует h = x")
        form = extract_scaling_form(f, field.one)
        result = NormalForm(
            FormKind.SCALE_SCALE, MobiusMap.identity(field), v, form.psi,
            alpha=field.one, e=form.e, s=form.s,
        )
    elif big_g.kind is LinearKind.TRANSLATION:
        if h.is_identity():
            u, delta = MobiusMap.identity(field), field.zero
        else:
            anchor, gamma, delta = _anchor_at_infinity(h)
            if not gamma.is_one():
                raise NotSemiconjugate(f"f(x+1) = γf(x)+δ с γ = {gamma} ≠ 1 не имеет решений")
            u = mobius_inverse(anchor)
        big_f = _conjugate_function(f, u, v)
        psi = rewrite_translation_invariant(big_f - RationalFunction.x(field) * delta)
        result = NormalForm(FormKind.TRANS_TRANS, u, v, psi, delta=delta)
    else:
        alpha = big_g.alpha
        assert alpha is not None
        if h.is_identity():
            u, gamma = MobiusMap.identity(field), field.one
        else:
            w, big_h = normalize_linear(h)
            if big_h.kind is not LinearKind.SCALING:
                raise NotSemiconjugate("f(αx) = f(x)+1 не имеет решений")
            u, gamma = mobius_inverse(w), big_h.alpha
        big_f = _conjugate_function(f, u, v)
        form = extract_scaling_form(big_f, alpha)
        if form.gamma != gamma:
            raise NotSemiconjugate(f"Множитель {form.gamma} не совпадает с каноническим {gamma}")
        result = NormalForm(FormKind.SCALE_SCALE, u, v, form.psi, alpha=alpha, e=form.e, s=form.s)

    if result.reconstruct()[0] != f:
        raise AlgebraError(f"Нормальная форма не восстанавливает {f}")
    logger.debug("Разложение %s: %s", f, result)
    return result


def _conjugate_function(f: RationalFunction, u: MobiusMap, v: MobiusMap) -> RationalFunction:
    """F = u∘f∘v."""
    return rf_compose(u.as_rational(), rf_compose(f, v.as_rational()))


@dataclass(frozen=True)
class SolutionFamily:
    """Все непостоянные f с f∘g = h∘f, параметризованные ψ (и e)."""

    kind: FormKind
    g: MobiusMap
    h: MobiusMap
    bound: int
    u: Optional[MobiusMap] = None
    v: Optional[MobiusMap] = None
    delta: Optional[FieldElement] = None
    alpha: Optional[FieldElement] = None
    s: Optional[int] = None
    exponents: Tuple[int, ...] = ()
    reason: str = ""

    @property
    def field(self) -> FieldDescriptor:
        return self.g.field

    def is_empty(self) -> bool:
        return self.kind is FormKind.EMPTY

    def sample(self, psi: RationalFunction, e: Optional[int] = None) -> RationalFunction:
        """Конкретная f семейства при заданных ψ и e."""
        if self.is_empty():
            raise ParameterOutOfRange(f"Семейство пусто: {self.reason}")
        assert self.u is not None and self.v is not None
        if psi.field != self.field:
            raise ParameterOutOfRange(f"ψ задана над {psi.field}, семейство над {self.field}")
        if psi.degree > self.bound:
            raise ParameterOutOfRange(f"Степень ψ = {psi.degree} превышает границу {self.bound}")
        if self.kind is FormKind.TRANS_TRANS:
            assert self.delta is not None
            core = _translation_core(self.delta, psi)
        else:
            assert self.s is not None
            if e is None:
                e = self.exponents[0]
            if e not in self.exponents:
                raise ParameterOutOfRange(f"Показатель e = {e} не из списка {list(self.exponents)}")
            core = _scaling_core(e, self.s, psi)
        f = _conjugate_function(core, mobius_inverse(self.u), mobius_inverse(self.v))
        if f.is_constant():
            raise ParameterOutOfRange(f"При ψ = {psi} получается постоянная функция")
        return f

    def contains(self, f: RationalFunction) -> bool:
        if self.is_empty() or f.is_constant():
            return False
        try:
            form = decompose_semiconjugate(f, self.g, self.h)
        except NotSemiconjugate:
            return False
        if form.kind is not self.kind:
            return False
        if self.kind is FormKind.TRANS_TRANS:
            return form.psi.degree <= self.bound
        assert form.e is not None and self.s is not None
        if self.s == 0:
            return form.e in self.exponents
        # x^e·ψ(x^s) = x^(e−sk)·(x^k·ψ)(x^s): перебираем допустимые сдвиги e
        x = RationalFunction.x(self.field)
        for exponent in self.exponents:
            shift, remainder = divmod(form.e - exponent, self.s)
            if remainder == 0 and (form.psi * x ** shift).degree <= self.bound:
                return True
        return False


def _symmetric_exponents(alpha: FieldElement, gamma: FieldElement, bound: int) -> List[int]:
    """Все e из [−bound, bound] с α^e = γ."""
    positive = discrete_log(alpha, gamma, bound)
    negative = [-exponent for exponent in discrete_log(alpha.inverse(), gamma, bound)]
    return sorted(set(positive + negative))


def solve_semiconjugacy(g: MobiusMap, h: MobiusMap, bound: int) -> SolutionFamily:
    """Описание всех непостоянных решений f∘g = h∘f."""
    if bound < 0:
        raise ParameterOutOfRange(f"Граница степени ψ должна быть неотрицательной, получено {bound}")
    field = g.field
    identity = MobiusMap.identity(field)
    v, big_g = normalize_linear(g)

    def empty(reason: str) -> SolutionFamily:
        logger.debug("Семейство для g = %s, h = %s пусто: %s", g, h, reason)
        return SolutionFamily(FormKind.EMPTY, g, h, bound, reason=reason)

    if big_g.kind is LinearKind.IDENTITY:
        if not h.is_identity():
            return empty("при g = x непостоянная f требует h = x")
        exponents = tuple(range(-bound, bound + 1))
        return SolutionFamily(
            FormKind.SCALE_SCALE, g, h, bound, identity, v, alpha=field.one, s=1, exponents=exponents
        )

    if big_g.kind is LinearKind.TRANSLATION:
        if h.is_identity():
            u, delta = identity, field.zero
        else:
            anchor, gamma, delta = _anchor_at_infinity(h)
            if not gamma.is_one():
                return empty(f"f(x+1) = γf(x)+δ при γ = {gamma} ≠ 1 имеет только постоянные решения")
            u = mobius_inverse(anchor)
        if field.characteristic == 0 and delta.is_zero():
            return empty("в характеристике 0 инварианты сдвига постоянны")
        return SolutionFamily(FormKind.TRANS_TRANS, g, h, bound, u, v, delta=delta)

    alpha = big_g.alpha
    assert alpha is not None
    if h.is_identity():
        u, gamma = identity, field.one
    else:
        w, big_h = normalize_linear(h)
        if big_h.kind is not LinearKind.SCALING:
            return empty("f(αx) = f(x)+1 не имеет решений")
        assert big_h.alpha is not None
        u, gamma = mobius_inverse(w), big_h.alpha
    s = multiplicative_order(alpha) or 0
    exponents = _symmetric_exponents(alpha, gamma, bound)
    if s == 0:
        # x^0·ψ(1) постоянна
        exponents = [exponent for exponent in exponents if exponent != 0]
    if not exponents:
        return empty(f"γ = {gamma} не является степенью α = {alpha} с |e| ≤ {bound}")
    return SolutionFamily(
        FormKind.SCALE_SCALE, g, h, bound, u, v, alpha=alpha, s=s, exponents=tuple(exponents)
    )
