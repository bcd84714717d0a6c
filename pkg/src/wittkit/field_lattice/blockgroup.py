"""The block-triangular group G(l2, l3) and its action on subgroups of F^(l2+l3).

An element is the invertible matrix [[A, 0], [B, C]] with A of size l2 x l2,
C of size l3 x l3 and B of size l3 x l2; it acts on row vectors by
alpha -> alpha g^{-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from ..errors import DegenerateSubgroup, DimensionMismatch
from .intlattice import hnf, integer_kernel, shorten_basis
from .matrices import QQ, det, inverse, mat_mul, nullspace, rref, vec_mat
from .numberfield import NumberField, Scalar
from .subgroup import Subgroup


def _square(m, k, name):
    if len(m) != k or any(len(r) != k for r in m):
        raise DimensionMismatch(f"block {name} must be {k}x{k}")


class BlockGroupElement:
    __slots__ = ("l2", "l3", "A", "B", "C", "field")

    def __init__(self, A: Sequence[Sequence], B: Sequence[Sequence], C: Sequence[Sequence],
                 field: NumberField, l2: int | None = None, l3: int | None = None):
        l2 = len(A) if l2 is None else l2
        l3 = len(C) if l3 is None else l3
        _square(A, l2, "A")
        _square(C, l3, "C")
        if l2 == 0 and not B:
            B = [[] for _ in range(l3)]
        if len(B) != l3 or any(len(r) != l2 for r in B):
            raise DimensionMismatch(f"block B must be {l3}x{l2}")
        self.l2, self.l3, self.field = l2, l3, field
        self.A = tuple(tuple(field(x) for x in r) for r in A)
        self.B = tuple(tuple(field(x) for x in r) for r in B)
        self.C = tuple(tuple(field(x) for x in r) for r in C)
        if l2 and not det(self.A, field):
            raise ZeroDivisionError("block A is singular")
        if l3 and not det(self.C, field):
            raise ZeroDivisionError("block C is singular")

    @classmethod
    def identity(cls, l2: int, l3: int, field: NumberField) -> "BlockGroupElement":
        eye = lambda k: [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        return cls(eye(l2), [[0] * l2 for _ in range(l3)], eye(l3), field, l2, l3)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], l2: int, l3: int, field: NumberField) -> "BlockGroupElement":
        n = l2 + l3
        if len(m) != n or any(len(r) != n for r in m):
            raise DimensionMismatch(f"expected a {n}x{n} matrix")
        m = [[field(x) for x in r] for r in m]
        if any(m[i][j] for i in range(l2) for j in range(l2, n)):
            raise ValueError("upper-right block must vanish")
        return cls([r[:l2] for r in m[:l2]], [r[:l2] for r in m[l2:]], [r[l2:] for r in m[l2:]], field, l2, l3)

    def matrix(self) -> list[list[Scalar]]:
        z = self.field.zero
        top = [list(r) + [z] * self.l3 for r in self.A]
        bottom = [list(b) + list(c) for b, c in zip(self.B, self.C)]
        return top + bottom

    def inverse(self) -> "BlockGroupElement":
        return BlockGroupElement.from_matrix(inverse(self.matrix(), self.field), self.l2, self.l3, self.field)

    def __mul__(self, other: "BlockGroupElement") -> "BlockGroupElement":
        if (self.l2, self.l3) != (other.l2, other.l3):
            raise DimensionMismatch("block shapes differ")
        return BlockGroupElement.from_matrix(mat_mul(self.matrix(), other.matrix(), self.field),
                                             self.l2, self.l3, self.field)

    def __eq__(self, other):
        if not isinstance(other, BlockGroupElement):
            return NotImplemented
        return (self.l2, self.l3, self.A, self.B, self.C) == (other.l2, other.l3, other.A, other.B, other.C)

    def __hash__(self):
        return hash((self.l2, self.l3, self.A, self.B, self.C))

    def act(self, alpha: Sequence) -> tuple:
        """alpha -> alpha g^{-1}."""
        return tuple(vec_mat(list(alpha), inverse(self.matrix(), self.field), self.field))

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.matrix()]
        return f"BlockGroupElement({', '.join(rows)})"


def block_act(g: BlockGroupElement, gamma: Subgroup) -> Subgroup:
    n = g.l2 + g.l3
    if gamma.ambient_dim != n:
        raise DimensionMismatch(f"group element acts on dimension {n}, subgroup lives in {gamma.ambient_dim}")
    ginv = inverse(g.matrix(), g.field)
    images = [vec_mat(list(b), ginv, g.field) for b in gamma.basis]
    return Subgroup(images, gamma.field, n)


@dataclass(frozen=True)
class OrbitInvariants:
    """Z-ranks that G(l2, l3) cannot change."""

    zrank: int
    slice_rank: int       # rank of gamma intersected with F^l2 x 0
    projection_rank: int  # rank of the projection onto the last l3 coordinates

    NAMES = ("zrank", "slice_rank", "projection_rank")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.zrank, self.slice_rank, self.projection_rank)


def orbit_invariants(gamma: Subgroup, l2: int, l3: int) -> OrbitInvariants:
    if gamma.ambient_dim != l2 + l3:
        raise DimensionMismatch("subgroup dimension does not match l2 + l3")
    proj = gamma.projection_rank(l2) if l3 else 0
    return OrbitInvariants(gamma.rank, gamma.rank - proj, proj)


@dataclass(frozen=True)
class Equivalent:
    g: BlockGroupElement
    method: str


@dataclass(frozen=True)
class Inequivalent:
    invariant: str
    left: object
    right: object


@dataclass(frozen=True)
class Unknown:
    candidates_tried: int


def adapted_basis(gamma: Subgroup, l2: int, l3: int) -> list[list[Scalar]] | None:
    """A Z-basis of gamma that is itself an element of G(l2, l3), if one exists.

    Exists exactly when gamma is a full lattice (rank l2+l3) whose slice
    gamma ∩ (F^l2 x 0) has rank l2; then gamma = Z^n * basis.
    """
    n = l2 + l3
    inv = orbit_invariants(gamma, l2, l3)
    if inv.zrank != n or inv.slice_rank != l2:
        return None
    d = gamma.field.degree
    cut = l2 * d
    permuted = [list(r[cut:]) + list(r[:cut]) for r in gamma.hnf_rows]
    h = hnf(permuted)
    width = len(permuted[0]) - cut
    slice_rows = [r for r in h if not any(r[:width])]
    other = [r for r in h if any(r[:width])]
    rows = []
    for r in slice_rows + other:
        orig = r[width:] + r[:width]
        rows.append([Scalar(gamma.field, tuple(mpq(x, gamma.scale) for x in orig[j * d:(j + 1) * d]))
                     for j in range(n)])
    return rows


def _int_det(m: list[list[int]]) -> int:
    return int(det([[mpq(x) for x in r] for r in m], QQ))


class _OrbitSearch:
    """Search for X = g^{-1} with gamma X = gamma' among unimodular basis changes.

    Writing B, B' for the canonical bases, gamma X = gamma' holds iff
    B X = U B' for some U in GL_r(Z). The pairs (X, U) with X block lower
    triangular form a rational vector space; its integer points in U form a
    lattice, which is enumerated in growing boxes.
    """

    def __init__(self, gamma: Subgroup, gamma2: Subgroup, l2: int, l3: int):
        self.field = f = gamma.field
        self.l2, self.l3 = l2, l3
        self.n = n = l2 + l3
        self.r = r = gamma.rank
        self.gamma, self.gamma2 = gamma, gamma2
        d = f.degree
        B = [list(b) for b in gamma.basis]
        B2 = [list(b) for b in gamma2.basis]
        self.B2 = B2
        free = [(k, j) for k in range(n) for j in range(n) if not (k < l2 and j >= l2)]
        self.free = free
        nx = len(free) * d
        nu = r * r
        powers = [f.one]
        for _ in range(d - 1):
            powers.append(powers[-1] * f.theta)
        rows = []
        for i in range(r):
            for j in range(n):
                for e in range(d):
                    row = [mpq(0)] * (nx + nu)
                    for vi, (k, jj) in enumerate(free):
                        if jj != j or not B[i][k]:
                            continue
                        for c in range(d):
                            row[vi * d + c] = (B[i][k] * powers[c]).c[e]
                    for l in range(r):
                        row[nx + i * r + l] = -B2[l][j].c[e]
                    rows.append(row)
        sol = nullspace(rows, QQ, ncols=nx + nu)
        uproj = [v[nx:] for v in sol]
        red, _ = rref(uproj, QQ) if uproj else ([], [])
        # integer points of span(red): kernel of its orthogonal complement
        perp = nullspace(red, QQ, ncols=nu) if red else [[mpq(int(i == j)) for j in range(nu)] for i in range(nu)]
        ints = []
        for v in perp:
            den = 1
            for x in v:
                den = den * int(x.denominator) // _gcd(den, int(x.denominator))
            ints.append([int(x * den) for x in v])
        lattice = integer_kernel(ints, nu) if ints else [[int(i == j) for j in range(nu)] for i in range(nu)]
        self.lattice = shorten_basis(lattice)
        # rows of B that are F-independent determine X from U
        _, piv = rref([list(col) for col in zip(*B)], f)
        self.rows_idx = piv
        self.Binv = inverse([B[i] for i in piv], f)

    def candidate(self, coeffs: Sequence[int]) -> BlockGroupElement | None:
        r = self.r
        flat = [sum(c * v[t] for c, v in zip(coeffs, self.lattice)) for t in range(r * r)]
        U = [flat[i * r:(i + 1) * r] for i in range(r)]
        if abs(_int_det(U)) != 1:
            return None
        f = self.field
        UB2 = [[sum((self.B2[l][j] * U[i][l] for l in range(r) if U[i][l]), f.zero) for j in range(self.n)]
               for i in self.rows_idx]
        X = mat_mul(self.Binv, UB2, f)
        if not det(X, f):
            return None
        try:
            g = BlockGroupElement.from_matrix(inverse(X, f), self.l2, self.l3, f)
        except (ValueError, ZeroDivisionError):
            return None
        if block_act(g, self.gamma) != self.gamma2:
            return None
        return g

    def run(self, budget: int) -> tuple[BlockGroupElement | None, int]:
        s = len(self.lattice)
        tried = 0
        if s == 0:
            return None, 0
        h = 1
        while tried < budget:
            for c in itertools.product(range(-h, h + 1), repeat=s):
                if max(abs(x) for x in c) != h:
                    continue
                first = next(x for x in c if x)
                if first < 0:
                    continue
                tried += 1
                g = self.candidate(c)
                if g is not None:
                    return g, tried
                if tried >= budget:
                    break
            h += 1
        return None, tried


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def orbit_decide(gamma: Subgroup, gamma2: Subgroup, l2: int, l3: int, budget: int = 20000):
    """Decide whether some g in G(l2, l3) carries gamma onto gamma2.

    Returns :class:`Equivalent` (with a replay-verified g), :class:`Inequivalent`
    (naming a G-invariant that differs) or :class:`Unknown`.
    """
    n = l2 + l3
    for name, gm in (("gamma", gamma), ("gamma'", gamma2)):
        if gm.ambient_dim != n:
            raise DimensionMismatch(f"{name} lives in dimension {gm.ambient_dim}, expected {n}")
        if not gm.is_nondegenerate():
            raise DegenerateSubgroup(f"{name} is degenerate")
    if gamma.field is not gamma2.field:
        return Inequivalent("field", gamma.field.descriptor(), gamma2.field.descriptor())
    inv1 = orbit_invariants(gamma, l2, l3)
    inv2 = orbit_invariants(gamma2, l2, l3)
    for name, a, b in zip(OrbitInvariants.NAMES, inv1.as_tuple(), inv2.as_tuple()):
        if a != b:
            return Inequivalent(name, a, b)
    field = gamma.field
    if gamma == gamma2:
        return Equivalent(BlockGroupElement.identity(l2, l3, field), "identity")
    b1 = adapted_basis(gamma, l2, l3)
    b2 = adapted_basis(gamma2, l2, l3)
    if b1 is not None and b2 is not None:
        # gamma = Z^n b1 and gamma2 = Z^n b2, so g^{-1} = b1^{-1} b2
        g = BlockGroupElement.from_matrix(mat_mul(inverse(b2, field), b1, field), l2, l3, field)
        assert block_act(g, gamma) == gamma2
        return Equivalent(g, "adapted-basis")
    g, tried = _OrbitSearch(gamma, gamma2, l2, l3).run(budget)
    if g is not None:
        return Equivalent(g, "lattice-search")
    return Unknown(tried)
