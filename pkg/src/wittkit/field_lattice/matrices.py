"""Dense exact linear algebra over a field.

Matrices are lists of rows. Every routine takes the ``field`` whose ``zero`` and
``one`` it should use; pass a :class:`NumberField` for Scalar entries or
:data:`QQ` for plain ``mpq`` entries.
"""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from ..errors import DimensionMismatch


class _Rationals:
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, x):
        return mpq(x)

    def __repr__(self):
        return "QQ"


QQ = _Rationals()


def identity(n: int, field) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, field) -> list[list]:
    return [[field.zero] * c for _ in range(r)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], field) -> list[list]:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [field.zero] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] = acc[j] + x * bk[j]
        out.append(acc)
    return out


def vec_mat(v: Sequence, m: Sequence[Sequence], field) -> list:
    """Row vector times matrix."""
    if len(v) != len(m):
        raise DimensionMismatch("row vector length does not match matrix rows")
    return mat_mul([list(v)], m, field)[0] if m else []


def mat_vec(m: Sequence[Sequence], v: Sequence, field) -> list:
    out = []
    for row in m:
        acc = field.zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(m: Sequence[Sequence], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [x - fac * y if y else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Sequence[Sequence], field) -> int:
    return len(rref(m, field)[1])


def nullspace(m: Sequence[Sequence], field, ncols: int | None = None) -> list[list]:
    """Basis of {x : m x = 0}; one vector per free column, RREF-normalised."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return identity(ncols, field)
    red, pivots = rref(m, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(m: Sequence[Sequence], field) -> list[list]:
    """Basis of {y : y m = 0}."""
    if not m:
        return []
    return nullspace(transpose(m), field, ncols=len(m))


def inverse(m: Sequence[Sequence], field) -> list[list]:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(r) + e for r, e in zip(m, identity(n, field))]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve_left(m: Sequence[Sequence], b: Sequence[Sequence], field) -> list[list] | None:
    """Some X with X m = b (rows of b in the row space of m), or None."""
    # X m = b  <=>  m^T X^T = b^T
    mt = transpose(m)
    out = []
    for brow in b:
        aug = [list(r) + [x] for r, x in zip(mt, brow)]
        red, pivots = rref(aug, field)
        nvars = len(m)
        if nvars in pivots:
            return None
        x = [field.zero] * nvars
        for row, p in zip(red, pivots):
            x[p] = row[nvars]
        out.append(x)
    return out


def det(m: Sequence[Sequence], field):
    n = len(m)
    rows = [list(r) for r in m]
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        pv = rows[c][c]
        result = result * pv
        inv = field.one / pv
        for i in range(c + 1, n):
            if rows[i][c]:
                fac = rows[i][c] * inv
                rows[i] = [x - fac * y for x, y in zip(rows[i], rows[c])]
    return result


def is_zero_matrix(m: Sequence[Sequence]) -> bool:
    return not any(x for row in m for x in row)


class RowSpace:
    """Incrementally grown row space kept in reduced echelon form.

    Used where vectors arrive one at a time (closure computations, Krylov
    sequences); ``add`` reports whether the dimension grew.
    """

    def __init__(self, ncols: int, field):
        self.ncols = ncols
        self.field = field
        self._rows: dict[int, list] = {}  # pivot column -> normalised row

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for p, row in self._rows.items():
            if v[p]:
                fac = v[p]
                v = [x - fac * y if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = self.field.one / v[p]
        v = [x * inv if x else x for x in v]
        for q, row in self._rows.items():
            if row[p]:
                fac = row[p]
                self._rows[q] = [x - fac * y if y else x for x, y in zip(row, v)]
        self._rows[p] = v
        return True

    def basis(self) -> list[list]:
        return [self._rows[p] for p in sorted(self._rows)]

    def pivots(self) -> list[int]:
        return sorted(self._rows)
