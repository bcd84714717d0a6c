"""Finitely generated additive subgroups of F^n with a canonical Z-basis.

A vector of F^n is flattened to n*d rational coordinates (d = [F:Q]); the
subgroup is the Z-span of the flattened generators, put in Hermite normal form
after clearing one global denominator. The resulting rational basis does not
depend on the generating set.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from gmpy2 import mpq

from ..errors import DimensionMismatch
from .intlattice import hnf
from .matrices import QQ, rank
from .numberfield import NumberField, Scalar

GroupVector = tuple  # tuple[Scalar, ...]


def as_group_vector(v: Sequence, field: NumberField) -> GroupVector:
    return tuple(field(x) for x in v)


def flatten(v: Sequence[Scalar]) -> list[mpq]:
    out = []
    for s in v:
        out.extend(s.c)
    return out


def _unflatten(row: Sequence[mpq], field: NumberField, n: int) -> GroupVector:
    d = field.degree
    return tuple(Scalar(field, tuple(mpq(x) for x in row[j * d:(j + 1) * d])) for j in range(n))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Subgroup:
    """The Z-span of finitely many vectors of F^n.

    ``basis`` is the canonical Z-basis (rows); ``hnf_rows`` is that basis scaled
    by ``scale``, the least positive integer making it integral.
    """

    __slots__ = ("field", "ambient_dim", "generators", "basis", "hnf_rows", "scale", "_pivots")

    def __init__(self, generators: Iterable[Sequence], field: NumberField, n: int):
        gens = []
        for g in generators:
            if len(g) != n:
                raise DimensionMismatch(f"generator {list(map(str, g))} has length {len(g)}, expected {n}")
            gens.append(as_group_vector(g, field))
        self.field = field
        self.ambient_dim = n
        self.generators = tuple(gens)
        flat = [flatten(g) for g in gens]
        den = 1
        for row in flat:
            for x in row:
                den = _lcm(den, int(x.denominator))
        ints = [[int(x * den) for x in row] for row in flat if any(row)]
        h = hnf(ints)
        rational = [[mpq(x, den) for x in row] for row in h]
        scale = 1
        for row in rational:
            for x in row:
                scale = _lcm(scale, int(x.denominator))
        self.scale = scale
        self.hnf_rows = tuple(tuple(int(x * scale) for x in row) for row in rational)
        self.basis = tuple(_unflatten(row, field, n) for row in rational)
        self._pivots = tuple(next(i for i, x in enumerate(row) if x) for row in self.hnf_rows)

    @classmethod
    def zero(cls, field: NumberField, n: int = 0) -> "Subgroup":
        return cls((), field, n)

    @classmethod
    def lattice(cls, field: NumberField, n: int) -> "Subgroup":
        """Z^n inside F^n."""
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence) -> tuple[int, ...] | None:
        """Integer coordinates of ``v`` in the canonical basis, or None if v is not in the group."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        w = flatten(as_group_vector(v, self.field))
        w = [x * self.scale for x in w]
        if any(x.denominator != 1 for x in w):
            return None
        w = [int(x) for x in w]
        coords = []
        for row, p in zip(self.hnf_rows, self._pivots):
            q, r = divmod(w[p], row[p])
            if r:
                return None
            coords.append(q)
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        if any(w):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def vector(self, coords: Sequence[int]) -> GroupVector:
        if len(coords) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        out = [self.field.zero] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c:
                out = [x + y * c for x, y in zip(out, b)]
        return tuple(out)

    def is_nondegenerate(self) -> bool:
        n = self.ambient_dim
        if n == 0:
            return True
        if self.rank < n:
            return False
        return rank([list(b) for b in self.basis], self.field) == n

    def projection_rank(self, start: int, stop: int | None = None) -> int:
        """Z-rank of the projection onto coordinates ``start:stop``."""
        d = self.field.degree
        stop = self.ambient_dim if stop is None else stop
        cols = [[mpq(x) for x in row[start * d:stop * d]] for row in self.hnf_rows]
        if not cols or not cols[0]:
            return 0
        return rank(cols, QQ)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return (
            self.field is other.field
            and self.ambient_dim == other.ambient_dim
            and self.scale == other.scale
            and self.hnf_rows == other.hnf_rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.scale, self.hnf_rows))

    def __repr__(self):
        rows = ["(" + ", ".join(str(x) for x in b) + ")" for b in self.basis]
        return f"Subgroup(n={self.ambient_dim}, basis=[{', '.join(rows)}])"


def canonical_basis(gens: Iterable[Sequence], field: NumberField, n: int) -> Subgroup:
    return Subgroup(gens, field, n)


def member(gamma: Subgroup, v: Sequence) -> bool:
    return gamma.coordinates(v) is not None


def zrank(gamma: Subgroup) -> int:
    return gamma.rank


def is_nondegenerate(gamma: Subgroup) -> bool:
    return gamma.is_nondegenerate()
