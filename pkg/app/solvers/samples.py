"""Случайные построения нормальных форм для проверок на круговой проход."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from app.algebra.fields import FieldDescriptor, FieldElement, multiplicative_order
from app.algebra.poly import Polynomial
from app.algebra.ratfun import MobiusMap, NotDegreeOne, RationalFunction
from app.solvers.normalform import FormKind, NormalForm

_RATIONAL_MULTIPLIERS = (2, 3, -1, -2, Fraction(1, 2), Fraction(-3, 2))


def random_mobius(field: FieldDescriptor, rng: random.Random) -> MobiusMap:
    while True:
        a, b, c, d = (field.random_element(rng, height=3) for _ in range(4))
        try:
            return MobiusMap(a, b, c, d)
        except NotDegreeOne:
            continue


def random_nonzero(field: FieldDescriptor, rng: random.Random) -> FieldElement:
    while True:
        value = field.random_element(rng, height=3)
        if not value.is_zero():
            return value


def random_rational(field: FieldDescriptor, rng: random.Random, degree: int) -> RationalFunction:
    """Ненулевая A/B с deg A, deg B ≤ degree и B(0) ≠ 0."""
    while True:
        numerator = Polynomial(
            field, tuple(field.random_element(rng, height=3) for _ in range(rng.randint(0, degree) + 1))
        )
        denominator = Polynomial(
            field,
            tuple(field.random_element(rng, height=3) for _ in range(rng.randint(0, degree)))
            + (field.one,),
        )
        if numerator.is_zero() or denominator(0).is_zero():
            continue
        return RationalFunction(numerator, denominator)


def _scaling_multiplier(field: FieldDescriptor, rng: random.Random) -> FieldElement:
    if not field.is_finite:
        return field.element(rng.choice(_RATIONAL_MULTIPLIERS))
    candidates: List[FieldElement] = [a for a in field.nonzero_elements() if not a.is_one()]
    return rng.choice(candidates)


def random_normal_form(
    field: FieldDescriptor, kind: FormKind, rng: random.Random, psi_degree: int = 3
) -> NormalForm:
    """Случайный свидетель заданного вида с непостоянной f."""
    while True:
        u, v = random_mobius(field, rng), random_mobius(field, rng)
        if kind is FormKind.TRANS_TRANS:
            delta = field.random_element(rng, height=3)
            if field.characteristic == 0:
                psi = RationalFunction.constant(field, field.random_element(rng, height=3))
            else:
                psi = random_rational(field, rng, psi_degree)
            form = NormalForm(kind, u, v, psi, delta=delta)
        else:
            alpha = _scaling_multiplier(field, rng)
            s = multiplicative_order(alpha) or 0
            e = rng.randint(-3, 3)
            if s == 0:
                psi = RationalFunction.constant(field, random_nonzero(field, rng))
            else:
                psi = random_rational(field, rng, psi_degree)
            form = NormalForm(kind, u, v, psi, alpha=alpha, e=e, s=s)
        if not form.core().is_constant():
            return form
