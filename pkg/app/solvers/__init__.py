"""Решатели: аффинное уравнение, нормальные формы и эталонные переборы."""

from .affine import SolutionSpace, solve_affine, solve_affine_by_peeling, verify_affine
from .normalform import NormalForm, SolutionFamily, decompose_semiconjugate, solve_semiconjugacy

__all__ = [
    "NormalForm",
    "SolutionFamily",
    "SolutionSpace",
    "decompose_semiconjugate",
    "solve_affine",
    "solve_affine_by_peeling",
    "solve_semiconjugacy",
    "verify_affine",
]
