"""Seeded random elements for property checks; every draw goes through a ``random.Random``."""

from __future__ import annotations

import random

from .comm_algebra import AlgebraElement, AlgebraSpec, Monomial, StandardSpec
from .field_lattice import BlockGroupElement, NumberField, Scalar
from .field_lattice.matrices import det
from .witt_lie import WittElement


def random_scalar(field: NumberField, rng: random.Random, height: int = 3, nonzero: bool = False) -> Scalar:
    while True:
        cs = [rng.randint(-height, height) for _ in range(field.degree)]
        if rng.random() < 0.25:
            cs[0] = f"{cs[0]}/{rng.randint(1, height)}"
        s = field(cs)
        if s or not nonzero:
            return s


def random_exponent(n_vars: int, rng: random.Random, max_degree: int) -> tuple[int, ...]:
    m = [0] * n_vars
    if n_vars:
        for _ in range(rng.randint(0, max_degree)):
            m[rng.randrange(n_vars)] += 1
    return tuple(m)


def random_coords(rank: int, rng: random.Random, box: int = 2) -> tuple[int, ...]:
    return tuple(rng.randint(-box, box) for _ in range(rank))


def random_grades(spec: AlgebraSpec, rng: random.Random, count: int, box: int = 2) -> list[tuple[int, ...]]:
    """Up to ``count`` distinct Gamma-coordinate tuples (fewer when Gamma is small)."""
    r = spec.gamma.rank
    if r == 0:
        return [()]
    grades: list = []
    for _ in range(8 * count):
        a = random_coords(r, rng, box)
        if a not in grades:
            grades.append(a)
        if len(grades) == count:
            break
    return grades


def random_element(spec: AlgebraSpec, rng: random.Random, max_terms: int = 4, max_degree: int = 2,
                   max_grades: int = 3, box: int = 2, nonzero: bool = False) -> AlgebraElement:
    while True:
        grades = random_grades(spec, rng, rng.randint(1, max_grades), box)
        terms: dict = {}
        for _ in range(rng.randint(1, max_terms)):
            mon = Monomial(random_exponent(spec.n_vars, rng, max_degree), rng.choice(grades))
            terms[mon] = random_scalar(spec.field, rng, nonzero=True)
        u = AlgebraElement(spec, terms)
        if u or not nonzero:
            return u


def random_root_vector(spec: AlgebraSpec, rng: random.Random, box: int = 3) -> AlgebraElement:
    a = random_coords(spec.gamma.rank, rng, box)
    return spec.term(random_scalar(spec.field, rng, nonzero=True), None, coords=a)


def random_witt(spec: StandardSpec, rng: random.Random, max_terms: int = 3, max_degree: int = 2,
                max_grades: int = 3, box: int = 2) -> WittElement:
    coeffs = [spec.zero() for _ in range(spec.ell)]
    grades = random_grades(spec, rng, rng.randint(1, max_grades), box)
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randrange(spec.ell)
        mon = Monomial(random_exponent(spec.n_vars, rng, max_degree), rng.choice(grades))
        coeffs[i] = coeffs[i] + AlgebraElement(spec, {mon: random_scalar(spec.field, rng, nonzero=True)})
    return WittElement(spec, coeffs)


def random_block_element(l2: int, l3: int, field: NumberField, rng: random.Random,
                         height: int = 3) -> BlockGroupElement:
    """Entries are random scalars of height <= ``height``; A and C are redrawn until invertible."""

    def block(r, c):
        return [[random_scalar(field, rng, height) for _ in range(c)] for _ in range(r)]

    while True:
        A, C = block(l2, l2), block(l3, l3)
        if (not l2 or det(A, field)) and (not l3 or det(C, field)):
            return BlockGroupElement(A, block(l3, l2), C, field, l2, l3)
