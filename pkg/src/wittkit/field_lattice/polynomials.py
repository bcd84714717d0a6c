"""Univariate polynomials over a number field and the spectral tools built on them.

Polynomials are lists of Scalars from the constant term upward, trimmed so
the leading coefficient is nonzero (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from typing import Sequence

from .matrices import identity, inverse, mat_mul, rref, transpose


def trim(p: Sequence) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def monic(p: Sequence) -> list:
    p = trim(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def add(p: Sequence, q: Sequence, field) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else field.zero) + (q[i] if i < len(q) else field.zero) for i in range(n)])


def mul(p: Sequence, q: Sequence, field) -> list:
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p: Sequence, q: Sequence, field) -> tuple[list, list]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    quo = [field.zero] * max(len(r) - len(q) + 1, 0)
    lead_inv = q[-1].inverse()
    while len(r) >= len(q):
        shift = len(r) - len(q)
        c = r[-1] * lead_inv
        quo[shift] = c
        for i, b in enumerate(q):
            r[i + shift] = r[i + shift] - c * b
        r = trim(r)
    return trim(quo), r


def gcd(p: Sequence, q: Sequence, field) -> list:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b, field)[1]
    return monic(a)


def lcm(p: Sequence, q: Sequence, field) -> list:
    if not trim(p) or not trim(q):
        return []
    quo, rem = divmod_poly(mul(p, q, field), gcd(p, q, field), field)
    assert not rem
    return monic(quo)


def derivative(p: Sequence) -> list:
    return trim([c * i for i, c in enumerate(p)][1:])


def squarefree_part(p: Sequence, field) -> list:
    p = monic(p)
    if len(p) <= 1:
        return p
    quo, rem = divmod_poly(p, gcd(p, derivative(p), field), field)
    assert not rem
    return monic(quo)


def is_squarefree(p: Sequence, field) -> bool:
    return len(gcd(p, derivative(p), field)) <= 1


def is_monomial_power(p: Sequence) -> bool:
    """True when p = x^k for some k >= 0."""
    p = trim(p)
    return bool(p) and not any(p[:-1]) and p[-1] == 1


def eval_matrix(p: Sequence, m: Sequence[Sequence], field) -> list[list]:
    n = len(m)
    out = [[field.zero] * n for _ in range(n)]
    eye = identity(n, field)
    for c in reversed(trim(p)):
        out = mat_mul(out, m, field)
        if c:
            out = [[x + c * e if e else x for x, e in zip(ro, re)] for ro, re in zip(out, eye)]
    return out


def _components(m: Sequence[Sequence]) -> list[list[int]]:
    n = len(m)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(n):
            if m[i][j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _local_minpoly(m: Sequence[Sequence], k: int, field) -> list:
    """Minimal polynomial of the Krylov sequence e_k, M e_k, M^2 e_k, ..."""
    n = len(m)
    vecs = [[field.one if i == k else field.zero for i in range(n)]]
    while True:
        last = vecs[-1]
        nxt = [sum((row[j] * last[j] for j in range(n) if row[j] and last[j]), field.zero) for row in m]
        # solve nxt = sum c_i vecs[i]
        cols = transpose(vecs)
        aug = [list(r) + [x] for r, x in zip(cols, nxt)]
        red, piv = rref(aug, field)
        j = len(vecs)
        if j not in piv:
            coeffs = [field.zero] * j
            for row, p in zip(red, piv):
                coeffs[p] = row[j]
            return [-c for c in coeffs] + [field.one]
        vecs.append(nxt)


def _blocks(m: Sequence[Sequence]):
    for idx in _components(m):
        yield idx, [[m[i][j] for j in idx] for i in idx]


def minimal_polynomial(m: Sequence[Sequence], field) -> list:
    """Exact minimal polynomial (monic), computed block by block."""
    result = [field.one]
    for _, block in _blocks(m):
        for k in range(len(block)):
            result = lcm(result, _local_minpoly(block, k, field), field)
    return result


def jordan_decomposition(m: Sequence[Sequence], field) -> tuple[list[list], list[list], list]:
    """Split M = S + N with S semisimple, N nilpotent, SN = NS.

    Newton iteration S <- S - p(S) p'(S)^{-1} on the squarefree part p of the
    minimal polynomial; exact and finite. Returns (S, N, minimal polynomial).
    """
    n = len(m)
    s_full = [[field.zero] * n for _ in range(n)]
    minpoly = [field.one]
    for idx, block in _blocks(m):
        mp = [field.one]
        for k in range(len(block)):
            mp = lcm(mp, _local_minpoly(block, k, field), field)
        minpoly = lcm(minpoly, mp, field)
        p = squarefree_part(mp, field)
        dp = derivative(p)
        s = [list(r) for r in block]
        for _ in range(64):
            ps = eval_matrix(p, s, field)
            if not any(x for r in ps for x in r):
                break
            corr = mat_mul(ps, inverse(eval_matrix(dp, s, field), field), field)
            s = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(s, corr)]
        else:  # pragma: no cover - Newton converges quadratically
            raise RuntimeError("Jordan decomposition did not converge")
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                s_full[i][j] = s[a][b]
    nil = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(m, s_full)]
    return s_full, nil, minpoly
