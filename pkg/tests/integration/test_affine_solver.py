"""Интеграционные тесты решателя f(αx+β) = γf(x)+δ."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, List, Tuple, Type

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.errors import ParameterOutOfRange
from app.algebra.fields import FieldDescriptor, Scalar, make_field
from app.algebra.poly import Polynomial, ZeroAlpha
from app.solvers.affine import (
    SolutionSpace,
    ZeroGamma,
    solve_affine,
    solve_affine_by_peeling,
    verify_affine,
)
from app.solvers.oracle import enumerate_solutions, linear_system_solutions, solution_sets_agree

Q = make_field("Q")
F2 = make_field("F2")
F3 = make_field("F3")
F5 = make_field("F5")


def poly(field: FieldDescriptor, *coefficients: Scalar) -> Polynomial:
    return Polynomial.of(field, coefficients)


def solve(
    field: FieldDescriptor,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
    n: int,
    method: Callable[..., SolutionSpace] = solve_affine,
) -> SolutionSpace:
    return method(field.element(alpha), beta, gamma, delta, n)


@pytest.mark.parametrize(
    ("field", "params", "n", "particular", "basis"),
    [
        (Q, (1, 0, 1, 0), 2, (), [(1,), (0, 1), (0, 0, 1)]),
        (F3, (1, 1, 1, 1), 3, (0, 1), [(1,), (0, 2, 0, 1)]),
        (F5, (2, 0, 2, 0), 5, (), [(0, 1), (0, 0, 0, 0, 0, 1)]),
        (Q, (2, 1, 4, 0), 3, (), [(1, 2, 1)]),
        (F2, (1, 1, 1, 0), 4, (), [(1,), (0, 1, 1), (0, 0, 1, 0, 1)]),
        (Q, (3, 0, 9, 0), 2, (), [(0, 0, 1)]),
    ],
)
def test_solution_spaces(
    field: FieldDescriptor,
    params: Tuple[int, ...],
    n: int,
    particular: Tuple[int, ...],
    basis: List[Tuple[int, ...]],
) -> None:
    space = solve(field, *params, n)

    assert space.particular == poly(field, *particular)
    assert space.basis == tuple(poly(field, *b) for b in basis)
    assert space.dimension == len(basis)
    assert solution_sets_agree([space, solve(field, *params, n, method=solve_affine_by_peeling)])


def test_impossible_shift_is_empty() -> None:
    space = solve(Q, 1, 0, 1, 5, 9)

    assert space.is_empty()
    assert space.dimension is None
    assert list(space.members()) == []
    assert solve(Q, 1, 0, 1, 5, 9, method=solve_affine_by_peeling).is_empty()


def test_rational_translation_keeps_linear_particular() -> None:
    space = solve(Q, 1, 2, 1, 3, 4)

    assert space.particular == poly(Q, 0, Fraction(3, 2))
    assert space.basis == (poly(Q, 1),)
    assert space.sample([5]) == poly(Q, 5, Fraction(3, 2))


def test_constant_only_when_gamma_differs_from_one() -> None:
    space = solve(Q, 1, 1, 3, 4, 5)

    assert space.particular == poly(Q, -2)
    assert space.basis == ()


def test_translation_structure_in_characteristic_three() -> None:
    space = solve(F3, 1, 1, 1, 1, 6)
    t = poly(F3, 0, 2, 0, 1)

    assert space.particular == poly(F3, 0, 1)
    assert space.basis == (poly(F3, 1), t, t * t)
    assert space.dimension == 1 + 6 // 3
    members = list(space.members())
    assert len(members) == 27
    assert all(verify_affine(f, 1, 1, 1, 1) for f in members)


@pytest.mark.parametrize(
    ("field", "f", "params", "holds"),
    [
        (F3, (0, 0, 0, 1), (1, 1, 1, 1), True),
        (Q, (0, 1), (1, 1, 1, 1), True),
        (Q, (0, 0, 1), (1, 1, 1, 1), False),
        (F5, (0, 1, 0, 0, 0, 1), (2, 0, 2, 0), True),
    ],
)
def test_verify_affine(
    field: FieldDescriptor, f: Tuple[int, ...], params: Tuple[int, ...], holds: bool
) -> None:
    assert verify_affine(poly(field, *f), *params) is holds


def test_peeling_keeps_leading_monomials() -> None:
    space = solve(F2, 1, 1, 1, 0, 4, method=solve_affine_by_peeling)

    # x^4 снимается через образ x: (x+1)^4 − x^4 = 1
    assert space.basis == (poly(F2, 1), poly(F2, 0, 1, 1), poly(F2, 0, 1, 0, 0, 1))
    assert all(b.leading_coefficient.is_one() for b in space.basis)
    assert solution_sets_agree([space, solve(F2, 1, 1, 1, 0, 4)])


def test_peeling_finds_particular_in_image() -> None:
    space = solve(Q, 1, 2, 1, 3, 4, method=solve_affine_by_peeling)

    assert space.particular == poly(Q, 0, Fraction(3, 2))
    assert space.basis == (poly(Q, 1),)


def test_peeling_scaling_pivots() -> None:
    space = solve(Q, 2, 1, 4, 0, 3, method=solve_affine_by_peeling)

    assert space.particular == Polynomial(Q)
    assert space.basis == (poly(Q, 1, 2, 1),)


def test_contains_checks_equation_and_degree() -> None:
    space = solve(F3, 1, 1, 1, 1, 3)

    assert space.contains(poly(F3, 0, 0, 0, 1))
    assert not space.contains(poly(F3, 0, 0, 1))
    assert not space.contains(poly(F3, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1))


def test_sample_requires_matching_coefficients() -> None:
    space = solve(F3, 1, 1, 1, 1, 3)

    with pytest.raises(ParameterOutOfRange):
        space.sample([1])


def test_free_coefficients() -> None:
    assert solve(F5, 2, 0, 2, 0, 5).free_coefficients() == [1, 5]
    assert solve(F3, 1, 1, 1, 1, 6).free_coefficients() == [0, 3, 6]


@pytest.mark.parametrize(
    ("alpha", "gamma", "n", "error"),
    [
        (0, 1, 2, ZeroAlpha),
        (1, 0, 2, ZeroGamma),
        (2, 2, -1, ParameterOutOfRange),
    ],
)
def test_invalid_parameters(alpha: int, gamma: int, n: int, error: Type[Exception]) -> None:
    with pytest.raises(error):
        solve(Q, alpha, 0, gamma, 0, n)


@pytest.mark.parametrize("field", [F2, F3])
def test_methods_agree_with_enumeration(field: FieldDescriptor) -> None:
    elements = list(field.elements())
    nonzero = list(field.nonzero_elements())
    for alpha, beta, gamma, delta in itertools.product(nonzero, elements, nonzero, elements):
        for n in range(5):
            args = (alpha, beta, gamma, delta, n)
            direct = solve_affine(*args)
            spaces = [direct, solve_affine_by_peeling(*args), linear_system_solutions(field, *args)]
            assert solution_sets_agree(spaces), args
            assert set(enumerate_solutions(field, *args)) == set(direct.members()), args


residues = st.integers(min_value=0, max_value=4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), residues, st.integers(1, 4), residues, st.integers(0, 6))
def test_every_basis_element_solves_homogeneous_equation(
    alpha: int, beta: int, gamma: int, delta: int, n: int
) -> None:
    space = solve_affine(F5.element(alpha), beta, gamma, delta, n)
    if space.is_empty():
        return
    assert space.particular is not None
    assert verify_affine(space.particular, alpha, beta, gamma, delta)
    for b in space.basis:
        assert verify_affine(b, alpha, beta, gamma, 0)
        assert (b.degree or 0) <= n


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), residues, st.integers(1, 4), residues, st.integers(0, 8))
def test_peeling_basis_has_distinct_monic_leading_terms(
    alpha: int, beta: int, gamma: int, delta: int, n: int
) -> None:
    space = solve(F5, alpha, beta, gamma, delta, n, method=solve_affine_by_peeling)

    degrees = [b.degree or 0 for b in space.basis]
    assert len(set(degrees)) == len(degrees)
    assert all(b.leading_coefficient.is_one() for b in space.basis)
    assert solution_sets_agree([space, solve(F5, alpha, beta, gamma, delta, n)])
