"""Integer lattice kernels: Hermite normal form, integer kernels, basis shortening."""

from __future__ import annotations

from typing import Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form.

    Returns ``(H, U)`` where ``U`` is unimodular, ``U @ rows`` equals ``H``
    padded with zero rows, and ``H`` holds the nonzero rows: echelon form,
    positive pivots, entries above each pivot reduced into ``[0, pivot)``.
    The trailing rows of ``U`` form a basis of the integer left kernel.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c]:
                p, q = a[r][c], a[i][c]
                g, x, y = xgcd(p, q)
                pg, qg = p // g, q // g
                ar, ai = a[r], a[i]
                a[r] = [x * s + y * t for s, t in zip(ar, ai)]
                a[i] = [-qg * s + pg * t for s, t in zip(ar, ai)]
                ur, ui = u[r], u[i]
                u[r] = [x * s + y * t for s, t in zip(ur, ui)]
                u[i] = [-qg * s + pg * t for s, t in zip(ur, ui)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-s for s in a[r]]
            u[r] = [-s for s in u[r]]
        piv = a[r][c]
        for i in range(r):
            k = a[i][c] // piv
            if k:
                a[i] = [s - k * t for s, t in zip(a[i], a[r])]
                u[i] = [s - k * t for s, t in zip(u[i], u[r])]
        r += 1
    # rows with index >= r are zero; move the transform rows accordingly
    return a[:r], u


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    return hnf_with_transform(rows)[0] if rows else []


def integer_kernel(mat: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {y in Z^ncols : mat y = 0}."""
    if not mat:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    cols = [list(col) for col in zip(*mat)]  # ncols rows
    h, u = hnf_with_transform(cols)
    return [u[i] for i in range(len(h), ncols)]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def shorten_basis(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    """Greedy pairwise size reduction; keeps the lattice, shortens the vectors."""
    b = [list(v) for v in basis if any(v)]
    changed = True
    while changed:
        changed = False
        b.sort(key=lambda v: (_dot(v, v), v))
        for i in range(len(b)):
            for j in range(len(b)):
                if i == j:
                    continue
                nj = _dot(b[j], b[j])
                if not nj:
                    continue
                k = (2 * _dot(b[i], b[j]) + nj) // (2 * nj)
                if k:
                    cand = [x - k * y for x, y in zip(b[i], b[j])]
                    if _dot(cand, cand) < _dot(b[i], b[i]):
                        b[i] = cand
                        changed = True
    b.sort(key=lambda v: (_dot(v, v), v))
    return b
