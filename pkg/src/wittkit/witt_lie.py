"""The Lie algebra W = A D of a standard presentation.

Elements are sums u_1 d_1 + ... + u_l d_l over the standard derivations. The
finite-dimensional windows in :class:`Truncation` are stable under every
constant-coefficient derivation, so adjoint matrices, root spaces and Jordan
decompositions computed on them are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Sequence

from .comm_algebra import (
    AlgebraElement,
    AlgebraSpec,
    Derivation,
    DiffOp,
    Monomial,
    StandardSpec,
    _sort_key,
)
from .errors import DimensionMismatch, SpecMismatch, UnstableTruncation
from .field_lattice import Scalar
from .field_lattice import polynomials as poly
from .field_lattice.matrices import nullspace


def _require_standard(spec: AlgebraSpec) -> StandardSpec:
    if not isinstance(spec, StandardSpec):
        raise TypeError("Witt elements are defined over a StandardSpec")
    return spec


class WittElement:
    """sum_i coeffs[i] * d_{i+1}; immutable."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: StandardSpec, coeffs: Sequence[AlgebraElement]):
        _require_standard(spec)
        if len(coeffs) != spec.ell:
            raise DimensionMismatch(f"expected {spec.ell} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.spec is not spec and c.spec != spec:
                raise SpecMismatch("coefficient from another algebra")
        self.spec = spec
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, spec: StandardSpec) -> "WittElement":
        return cls(spec, [spec.zero()] * spec.ell)

    @classmethod
    def basis(cls, spec: StandardSpec, i: int, coeff: AlgebraElement | None = None) -> "WittElement":
        """coeff * d_i (coeff defaults to 1), 1-based i."""
        _require_standard(spec)
        if not 1 <= i <= spec.ell:
            raise IndexError(f"no standard derivation {i}")
        cs = [spec.zero()] * spec.ell
        cs[i - 1] = spec.one() if coeff is None else coeff
        return cls(spec, cs)

    @classmethod
    def from_derivation(cls, spec: StandardSpec, der: Derivation) -> "WittElement":
        """A Standard or Combination derivation as a constant-coefficient Witt element."""
        if der.kind == "standard":
            return cls.basis(spec, der.index)
        if der.kind == "combination":
            if len(der.coeffs) != spec.ell:
                raise DimensionMismatch("combination length differs from l")
            return cls(spec, [spec.one() * c for c in der.coeffs])
        raise ValueError(f"{der} is not in the span of the standard derivations")

    def items(self) -> list[tuple[int, Monomial, Scalar]]:
        """(i, monomial, coefficient) in canonical order, i 1-based."""
        out = []
        for i, c in enumerate(self.coeffs, start=1):
            for mon, v in c.items():
                out.append((i, mon, v))
        out.sort(key=lambda r: (_sort_key(r[1]), r[0]))
        return out

    def _same(self, other: "WittElement"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise SpecMismatch("elements of different Witt algebras")

    def __add__(self, other: "WittElement") -> "WittElement":
        self._same(other)
        return WittElement(self.spec, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return WittElement(self.spec, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return WittElement(self.spec, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, WittElement):
            return (self.spec is other.spec or self.spec == other.spec) and self.coeffs == other.coeffs
        if isinstance(other, int) and other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"WittElement({self})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c:
                s = str(c)
                parts.append(f"({s})*d{i}" if len(c) > 1 else f"{s}*d{i}")
        return " + ".join(parts) if parts else "0"


def bracket(w1: WittElement, w2: WittElement) -> WittElement:
    """[u d, v d'] = u d(v) d' - v d'(u) d, extended bilinearly."""
    w1._same(w2)
    spec = w1.spec
    ops = spec.standard_operators()
    out = []
    for j in range(spec.ell):
        acc = spec.zero()
        for i in range(spec.ell):
            if w1.coeffs[i] and w2.coeffs[j]:
                acc = acc + w1.coeffs[i] * ops[i](w2.coeffs[j])
            if w2.coeffs[i] and w1.coeffs[j]:
                acc = acc - w2.coeffs[i] * ops[i](w1.coeffs[j])
        out.append(acc)
    return WittElement(spec, out)


def ad(der: Derivation | DiffOp, w: WittElement) -> WittElement:
    """[d, w] for a constant-coefficient derivation d (d need not lie in D)."""
    op = w.spec.operator(der)
    return WittElement(w.spec, [op(c) for c in w.coeffs])


def pairing(spec: AlgebraSpec, alpha: Sequence, der: Derivation | DiffOp) -> Scalar:
    """alpha(d): the eigenvalue of d's grading part on x^alpha (alpha any vector of F^n)."""
    op = spec.operator(der)
    f = spec.field
    if len(alpha) != spec.grading_dim:
        raise DimensionMismatch(f"grade has length {len(alpha)}, expected {spec.grading_dim}")
    acc = f.zero
    for a, g in zip(alpha, op.gpart):
        a = f(a)
        if a and g:
            acc = acc + a * g
    return acc


def root_space(spec: StandardSpec, beta: Sequence) -> list[WittElement]:
    """{x^beta d_i} when beta lies in Gamma, otherwise empty."""
    _require_standard(spec)
    coords = spec.gamma.coordinates(beta)
    if coords is None:
        return []
    x = spec.term(1, None, coords=coords)
    return [WittElement.basis(spec, i, x) for i in range(1, spec.ell + 1)]


@dataclass(frozen=True)
class Truncation:
    """The window spanned by t^m x^alpha d_i with |m| <= max_degree and alpha in support."""

    max_degree: int
    support: tuple  # grade vectors

    def __init__(self, max_degree: int, support: Iterable[Sequence]):
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        object.__setattr__(self, "max_degree", int(max_degree))
        object.__setattr__(self, "support", tuple(tuple(a) for a in support))

    def exponents(self, n_vars: int) -> list[tuple[int, ...]]:
        ms = [m for m in cartesian(range(self.max_degree + 1), repeat=n_vars) if sum(m) <= self.max_degree]
        ms.sort(key=lambda m: (sum(m), m))
        return ms

    def grade_coords(self, spec: AlgebraSpec) -> list[tuple[int, ...]]:
        return sorted({spec.grade_coords(a) for a in self.support})

    def basis(self, spec: StandardSpec) -> list[tuple[Monomial, int]]:
        """Ordered basis: grades in coordinate order, then deg-lex in m, then the index i."""
        _require_standard(spec)
        out = []
        for a in self.grade_coords(spec):
            for m in self.exponents(spec.n_vars):
                for i in range(1, spec.ell + 1):
                    out.append((Monomial(m, a), i))
        return out

    def coordinates(self, w: WittElement) -> list[Scalar]:
        """Coordinates of w in :meth:`basis`; raises when w leaves the window."""
        index = {b: k for k, b in enumerate(self.basis(w.spec))}
        f = w.spec.field
        vec = [f.zero] * len(index)
        for i, mon, c in w.items():
            k = index.get((mon, i))
            if k is None:
                raise UnstableTruncation(f"term {mon} d{i} lies outside the truncation")
            vec[k] = c
        return vec

    def element(self, spec: StandardSpec, vec: Sequence[Scalar]) -> WittElement:
        cs: list[dict] = [{} for _ in range(spec.ell)]
        for (mon, i), c in zip(self.basis(spec), vec):
            if c:
                cs[i - 1][mon] = c
        return WittElement(spec, [AlgebraElement(spec, d) for d in cs])


def ad_matrix(der: Derivation | DiffOp, T: Truncation, spec: StandardSpec) -> list[list[Scalar]]:
    """Matrix of ad_d on T's basis; column k is the image of the k-th basis vector."""
    basis = T.basis(spec)
    index = {b: k for k, b in enumerate(basis)}
    op = spec.operator(der)
    f = spec.field
    n = len(basis)
    mat = [[f.zero] * n for _ in range(n)]
    for col, (mon, i) in enumerate(basis):
        img = op(AlgebraElement(spec, {mon: f.one}))
        for mon2, c in img.items():
            row = index.get((mon2, i))
            if row is None:
                raise UnstableTruncation(f"ad image leaves the truncation at {mon2} d{i}")
            mat[row][col] = c
    return mat


def truncated_root_space(spec: StandardSpec, beta: Sequence, T: Truncation) -> list[WittElement]:
    """Joint kernel on T of ad d_i (i <= l1) and ad d_{l1+j} - beta_j (j <= l2+l3).

    Computed by exact nullspace, independently of Gamma-membership of beta.
    """
    f = spec.field
    if len(beta) != spec.grading_dim:
        raise DimensionMismatch(f"beta has length {len(beta)}, expected {spec.grading_dim}")
    beta = [f(b) for b in beta]
    rows: list[list[Scalar]] = []
    for i in range(1, spec.ell + 1):
        m = ad_matrix(Derivation.standard(i), T, spec)
        if i > spec.l1:
            shift = beta[i - spec.l1 - 1]
            if shift:
                m = [[x - shift if r == c else x for c, x in enumerate(row)] for r, row in enumerate(m)]
        rows.extend(m)
    n = len(T.basis(spec))
    if n == 0:
        return []
    return [T.element(spec, v) for v in nullspace(rows, f, ncols=n)]


@dataclass(frozen=True)
class LocallyNilpotent:
    minimal_polynomial: tuple

    name = "LocallyNilpotent"


@dataclass(frozen=True)
class Semisimple:
    minimal_polynomial: tuple

    name = "Semisimple"


@dataclass(frozen=True)
class Mixed:
    semisimple_part: DiffOp
    nilpotent_part: DiffOp
    minimal_polynomial: tuple

    name = "Mixed"


class ClassificationMismatch(AssertionError):
    """The structural verdict disagrees with the spectral data on the truncation."""


def classify_operator(der: Derivation | DiffOp, T: Truncation, spec: StandardSpec):
    """Structural verdict from d's parts, checked against ad_d on T.

    LocallyNilpotent when d pairs to zero with Gamma (then d acts through
    d/dt only); Semisimple when d has no d/dt part; otherwise Mixed with its
    commuting semisimple and nilpotent parts. The check: the minimal
    polynomial is x^k, squarefree, or the exact Jordan decomposition of
    ad_d on T coincides with ad of the two parts, respectively.
    """
    op = spec.operator(der)
    f = spec.field
    mat = ad_matrix(op, T, spec)
    zero_t = [f.zero] * spec.n_vars
    zero_g = [f.zero] * spec.grading_dim
    if not any(op.weights):
        mp = poly.minimal_polynomial(mat, f)
        if mat and not poly.is_monomial_power(mp):
            raise ClassificationMismatch(f"{der}: expected nilpotent, minimal polynomial {mp}")
        return LocallyNilpotent(tuple(mp))
    if not any(op.tpart):
        mp = poly.minimal_polynomial(mat, f)
        if not poly.is_squarefree(mp, f):
            raise ClassificationMismatch(f"{der}: expected semisimple, minimal polynomial {mp}")
        return Semisimple(tuple(mp))
    ss = DiffOp(spec, zero_t, op.gpart)
    nil = DiffOp(spec, op.tpart, zero_g)
    s_mat, n_mat, mp = poly.jordan_decomposition(mat, f)
    if s_mat != ad_matrix(ss, T, spec) or n_mat != ad_matrix(nil, T, spec):
        raise ClassificationMismatch(f"{der}: Jordan parts differ from the structural split")
    return Mixed(ss, nil, tuple(mp))
