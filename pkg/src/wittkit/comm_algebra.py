"""The commutative algebra A = F[t_1..t_p] ⊗ F[Gamma] with constant-coefficient derivations.

Two presentations share one arithmetic core:

* :class:`StandardSpec` -- the triple (l1, l2, l3) with t-variables
  t_1..t_{l1+l2} and Gamma inside F^(l2+l3);
* :class:`RawSpec` -- k = k1 + k2 with t-variables t_1..t_{k1}, Gamma inside
  F^k and a mixing matrix attaching down-grading parts to the last k2
  standard derivations.

Elements are sparse maps from monomials t^m x^alpha to nonzero scalars. The
grade alpha is stored by its integer coordinates in the canonical basis of
Gamma, so grade arithmetic is integer arithmetic. An optional bilinear
cocycle twists the product: x^a x^b = f(a, b) x^(a+b).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    DegenerateSubgroup,
    DimensionMismatch,
    IndexOutOfRange,
    NonHomogeneous,
    NotInGamma,
    NotRootVector,
    SpecMismatch,
)
from .field_lattice import NumberField, Scalar, Subgroup


class Monomial(NamedTuple):
    """t^m x^alpha with alpha given by its Gamma-coordinates ``a``."""

    m: tuple
    a: tuple


def _sort_key(mon: Monomial):
    return (sum(mon.m), mon.m, mon.a)


class Cocycle:
    """f(a, b) = prod_k lam_k ** (a S_k b^T), a and b in Gamma-coordinates.

    Symmetric S_k make f symmetric; bilinearity of the exponent gives the
    cocycle identity and f(a, 0) = 1.
    """

    __slots__ = ("base_points",)

    def __init__(self, base_points: Iterable[tuple] = ()):
        pts = []
        for lam, s in base_points:
            if not isinstance(lam, Scalar):
                raise TypeError("cocycle base values must be Scalars")
            if not lam:
                raise ValueError("cocycle base values must be nonzero")
            s = tuple(tuple(int(x) for x in row) for row in s)
            r = len(s)
            if any(len(row) != r for row in s):
                raise DimensionMismatch("cocycle exponent matrix must be square")
            if any(s[i][j] != s[j][i] for i in range(r) for j in range(r)):
                raise ValueError("cocycle exponent matrix must be symmetric")
            pts.append((lam, s))
        sizes = {len(s) for _, s in pts}
        if len(sizes) > 1:
            raise DimensionMismatch("all exponent matrices must share one size")
        self.base_points = tuple(pts)

    @classmethod
    def trivial(cls) -> "Cocycle":
        return cls(())

    @property
    def is_trivial(self) -> bool:
        return not self.base_points

    @property
    def rank(self) -> int | None:
        return len(self.base_points[0][1]) if self.base_points else None

    @staticmethod
    def _form(s, a, b) -> int:
        return sum(a[i] * s[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])

    def exponents(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(self._form(s, a, b) for _, s in self.base_points)

    def value(self, a: Sequence[int], b: Sequence[int]) -> Scalar | int:
        out = 1
        for lam, s in self.base_points:
            e = self._form(s, a, b)
            if e:
                out = lam ** e if out == 1 else out * lam ** e
        return out

    __call__ = value

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.base_points == other.base_points

    def __hash__(self):
        return hash(self.base_points)

    def __repr__(self):
        if self.is_trivial:
            return "Cocycle.trivial()"
        return "Cocycle(" + ", ".join(f"({lam}, {list(map(list, s))})" for lam, s in self.base_points) + ")"


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    violation: tuple | None = None  # (identity name, a, b, c)

    def __bool__(self):
        return self.ok


def validate_cocycle(f: Cocycle | Callable, rank: int, sample_depth: int = 2, one=1) -> CocycleCheck:
    """Check symmetry, normalisation and the cocycle law on scaled basis vectors.

    ``f`` takes two Gamma-coordinate tuples. The sample set is {k e_i : |k| <= sample_depth}.
    """
    pts = {tuple(0 for _ in range(rank))}
    for i in range(rank):
        for k in range(-sample_depth, sample_depth + 1):
            pts.add(tuple(k if j == i else 0 for j in range(rank)))
    pts = sorted(pts)
    zero = tuple(0 for _ in range(rank))
    add = lambda x, y: tuple(p + q for p, q in zip(x, y))
    for a in pts:
        if f(a, zero) != one:
            return CocycleCheck(False, ("normalisation", a, zero, None))
    for a, b in cartesian(pts, repeat=2):
        if f(a, b) != f(b, a):
            return CocycleCheck(False, ("symmetry", a, b, None))
    for a, b, c in cartesian(pts, repeat=3):
        if f(a, b) * f(add(a, b), c) != f(a, add(b, c)) * f(b, c):
            return CocycleCheck(False, ("cocycle", a, b, c))
    return CocycleCheck(True)


@dataclass(frozen=True)
class Derivation:
    """A constant-coefficient derivation named independently of any algebra.

    Indices are 1-based, matching the usual labels t_1, d_1, ... :

    * ``Derivation.down(i)`` -- partial derivative in t_i;
    * ``Derivation.grading(j)`` -- x^alpha -> alpha_j x^alpha;
    * ``Derivation.standard(i)`` -- the i-th standard derivation d_i of the algebra;
    * ``Derivation.combination(a)`` -- sum_i a_i d_i over the standard derivations.
    """

    kind: str
    index: int | None = None
    coeffs: tuple | None = None

    @classmethod
    def down(cls, i: int) -> "Derivation":
        return cls("down", i)

    @classmethod
    def grading(cls, j: int) -> "Derivation":
        return cls("grading", j)

    @classmethod
    def standard(cls, i: int) -> "Derivation":
        return cls("standard", i)

    @classmethod
    def combination(cls, coeffs: Sequence) -> "Derivation":
        return cls("combination", None, tuple(coeffs))

    def __str__(self):
        if self.kind == "combination":
            return "combination(" + ", ".join(map(str, self.coeffs)) + ")"
        return f"{self.kind}({self.index})"


class DiffOp:
    """A resolved derivation: sum_i tpart_i d/dt_i + sum_j gpart_j d*_j on one algebra.

    ``weights[k]`` is the grading eigenvalue on the k-th canonical basis vector
    of Gamma, so the eigenvalue on x^alpha is sum_k a_k weights[k].
    """

    __slots__ = ("spec", "tpart", "gpart", "weights")

    def __init__(self, spec: "AlgebraSpec", tpart: Sequence[Scalar], gpart: Sequence[Scalar]):
        f = spec.field
        self.spec = spec
        self.tpart = tuple(f(x) for x in tpart)
        self.gpart = tuple(f(x) for x in gpart)
        self.weights = tuple(
            sum((b * g for b, g in zip(row, self.gpart) if b and g), f.zero) for row in spec.gamma.basis
        )

    def eigenvalue(self, a: Sequence[int]) -> Scalar:
        f = self.spec.field
        acc = f.zero
        for k, w in zip(a, self.weights):
            if k and w:
                acc = acc + w * k
        return acc

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return DiffOp(self.spec, [x + y for x, y in zip(self.tpart, other.tpart)],
                      [x + y for x, y in zip(self.gpart, other.gpart)])

    def scaled(self, c) -> "DiffOp":
        return DiffOp(self.spec, [x * c for x in self.tpart], [x * c for x in self.gpart])

    def __call__(self, u: "AlgebraElement") -> "AlgebraElement":
        return _apply(self, u)

    def __eq__(self, other):
        return isinstance(other, DiffOp) and (self.tpart, self.gpart) == (other.tpart, other.gpart)

    def __hash__(self):
        return hash((self.tpart, self.gpart))

    def __repr__(self):
        t = ", ".join(map(str, self.tpart))
        g = ", ".join(map(str, self.gpart))
        return f"DiffOp(t=[{t}], grading=[{g}])"


class AlgebraSpec:
    """Common data of a presentation: field, Gamma, number of t-variables, cocycle."""

    field: NumberField
    gamma: Subgroup
    n_vars: int
    cocycle: Cocycle

    def __init__(self, gamma: Subgroup, n_vars: int, cocycle: Cocycle | None):
        self.gamma = gamma
        self.field = gamma.field
        self.n_vars = n_vars
        self.cocycle = cocycle or Cocycle.trivial()
        if not self.cocycle.is_trivial:
            if self.cocycle.rank != gamma.rank:
                raise DimensionMismatch(
                    f"cocycle exponent matrices are {self.cocycle.rank}x{self.cocycle.rank}, "
                    f"Gamma has rank {gamma.rank}")
            for lam, _ in self.cocycle.base_points:
                if lam.field is not self.field:
                    raise ValueError("cocycle values live in a different field")
        self._ops: dict = {}
        self._zero_m = (0,) * n_vars
        self._zero_a = (0,) * gamma.rank

    # -- standard derivations, supplied by subclasses
    @property
    def n_standard(self) -> int:
        raise NotImplementedError

    def _standard_parts(self, i: int) -> tuple[list, list]:
        raise NotImplementedError

    @property
    def grading_dim(self) -> int:
        return self.gamma.ambient_dim

    @property
    def twisted(self) -> bool:
        return not self.cocycle.is_trivial

    def operator(self, der: Derivation | DiffOp) -> DiffOp:
        """Resolve a :class:`Derivation` to a :class:`DiffOp` on this algebra."""
        if isinstance(der, DiffOp):
            if der.spec is not self and der.spec != self:
                raise SpecMismatch("operator belongs to another algebra")
            return der
        op = self._ops.get(der)
        if op is not None:
            return op
        f = self.field
        zt = [f.zero] * self.n_vars
        zg = [f.zero] * self.grading_dim
        if der.kind == "down":
            if not 1 <= der.index <= self.n_vars:
                raise IndexOutOfRange(f"no variable t_{der.index} (have {self.n_vars})")
            zt[der.index - 1] = f.one
            op = DiffOp(self, zt, zg)
        elif der.kind == "grading":
            if not 1 <= der.index <= self.grading_dim:
                raise IndexOutOfRange(f"no grading coordinate {der.index} (have {self.grading_dim})")
            zg[der.index - 1] = f.one
            op = DiffOp(self, zt, zg)
        elif der.kind == "standard":
            if not 1 <= der.index <= self.n_standard:
                raise IndexOutOfRange(f"no standard derivation {der.index} (have {self.n_standard})")
            t, g = self._standard_parts(der.index)
            op = DiffOp(self, t, g)
        elif der.kind == "combination":
            if len(der.coeffs) != self.n_standard:
                raise IndexOutOfRange(
                    f"combination has {len(der.coeffs)} coefficients, expected {self.n_standard}")
            t, g = zt, zg
            for i, c in enumerate(der.coeffs, start=1):
                c = f(c)
                if c:
                    ti, gi = self._standard_parts(i)
                    t = [x + c * y for x, y in zip(t, ti)]
                    g = [x + c * y for x, y in zip(g, gi)]
            op = DiffOp(self, t, g)
        else:
            raise ValueError(f"unknown derivation kind {der.kind!r}")
        self._ops[der] = op
        return op

    def standard_operators(self) -> list[DiffOp]:
        return [self.operator(Derivation.standard(i)) for i in range(1, self.n_standard + 1)]

    # -- element construction
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {Monomial(self._zero_m, self._zero_a): self.field.one})

    def grade_coords(self, alpha: Sequence) -> tuple[int, ...]:
        coords = self.gamma.coordinates(alpha)
        if coords is None:
            raise NotInGamma(f"({', '.join(map(str, alpha))}) is not in Gamma")
        return coords

    def grade_vector(self, a: Sequence[int]) -> tuple:
        return self.gamma.vector(a)

    def term(self, coeff=1, m: Sequence[int] | None = None, alpha: Sequence | None = None,
             coords: Sequence[int] | None = None) -> "AlgebraElement":
        """coeff * t^m x^alpha; give the grade as a vector ``alpha`` or as Gamma-``coords``."""
        m = tuple(int(x) for x in m) if m is not None else self._zero_m
        if len(m) != self.n_vars:
            raise DimensionMismatch(f"exponent vector has length {len(m)}, expected {self.n_vars}")
        if any(x < 0 for x in m):
            raise ValueError("exponents must be nonnegative")
        if coords is not None:
            a = tuple(int(x) for x in coords)
            if len(a) != self.gamma.rank:
                raise DimensionMismatch(f"expected {self.gamma.rank} Gamma-coordinates")
        elif alpha is not None:
            a = self.grade_coords(alpha)
        else:
            a = self._zero_a
        return AlgebraElement(self, {Monomial(m, a): self.field(coeff)})

    def element(self, terms: Mapping | Iterable) -> "AlgebraElement":
        """Build from (m, alpha) -> coeff items, alpha a grade vector."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        out = self.zero()
        for (m, alpha), c in items:
            out = out + self.term(c, m, alpha)
        return out

    def variable(self, i: int) -> "AlgebraElement":
        m = [0] * self.n_vars
        m[i - 1] = 1
        return self.term(1, m)

    def x(self, alpha: Sequence) -> "AlgebraElement":
        return self.term(1, None, alpha)

    # -- identity
    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


def _check_gamma(gamma: Subgroup, n: int):
    if gamma.ambient_dim != n:
        raise DimensionMismatch(f"Gamma lives in dimension {gamma.ambient_dim}, expected {n}")


class StandardSpec(AlgebraSpec):
    """A(l1, l2, l3; Gamma) with standard derivations

    d_i = d/dt_i (i <= l1), d_{l1+j} = d*_j + d/dt_{l1+j} (j <= l2),
    d_{l1+l2+l} = d*_{l2+l} (l <= l3).
    """

    def __init__(self, l1: int, l2: int, l3: int, gamma: Subgroup, cocycle: Cocycle | None = None):
        if min(l1, l2, l3) < 0:
            raise ValueError("l1, l2, l3 must be nonnegative")
        if l1 + l2 + l3 == 0:
            raise ValueError("l1 + l2 + l3 must be positive")
        _check_gamma(gamma, l2 + l3)
        if not gamma.is_nondegenerate():
            raise DegenerateSubgroup("Gamma must contain an F-basis of F^(l2+l3)")
        self.l1, self.l2, self.l3 = l1, l2, l3
        super().__init__(gamma, l1 + l2, cocycle)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.l1, self.l2, self.l3)

    @property
    def ell(self) -> int:
        return self.l1 + self.l2 + self.l3

    @property
    def n_standard(self) -> int:
        return self.ell

    def _standard_parts(self, i: int):
        f = self.field
        t = [f.zero] * self.n_vars
        g = [f.zero] * self.grading_dim
        if i <= self.l1 + self.l2:
            t[i - 1] = f.one
        if i > self.l1:
            g[i - self.l1 - 1] = f.one
        return t, g

    def as_raw(self) -> "RawSpec":
        """The same algebra presented with k1 = l1 + l2, Gamma padded by l1 zero coordinates."""
        f = self.field
        k1 = self.l1 + self.l2
        gens = [[f.zero] * self.l1 + list(b) for b in self.gamma.basis]
        gamma = Subgroup(gens, f, self.ell)
        mixing = [[f.zero] * k1 for _ in range(self.l3)]
        return RawSpec(k1, self.l3, gamma, mixing, self.cocycle)

    def _key(self):
        return (self.triple, self.gamma, self.cocycle)

    def __repr__(self):
        return f"StandardSpec({self.l1}, {self.l2}, {self.l3}, {self.gamma!r})"


class RawSpec(AlgebraSpec):
    """A(k1, k2; Gamma, F, f) with d_i = d*_i + d/dt_i (i <= k1) and
    d_{k1+j} = d*_{k1+j} + sum_i mixing[j][i] d/dt_i.
    """

    def __init__(self, k1: int, k2: int, gamma: Subgroup, mixing: Sequence[Sequence] | None = None,
                 cocycle: Cocycle | None = None):
        if min(k1, k2) < 0 or k1 + k2 == 0:
            raise ValueError("need k1, k2 >= 0 with k1 + k2 > 0")
        _check_gamma(gamma, k1 + k2)
        f = gamma.field
        if mixing is None:
            mixing = [[0] * k1 for _ in range(k2)]
        if len(mixing) != k2 or any(len(r) != k1 for r in mixing):
            raise DimensionMismatch(f"mixing matrix must be {k2}x{k1}")
        self.k1, self.k2 = k1, k2
        self.mixing = tuple(tuple(f(x) for x in r) for r in mixing)
        super().__init__(gamma, k1, cocycle)

    @property
    def k(self) -> int:
        return self.k1 + self.k2

    @property
    def n_standard(self) -> int:
        return self.k

    def _standard_parts(self, i: int):
        f = self.field
        g = [f.zero] * self.k
        g[i - 1] = f.one
        if i <= self.k1:
            t = [f.zero] * self.k1
            t[i - 1] = f.one
        else:
            t = list(self.mixing[i - self.k1 - 1])
        return t, g

    def _key(self):
        return (self.k1, self.k2, self.gamma, self.mixing, self.cocycle)

    def __repr__(self):
        return f"RawSpec(k1={self.k1}, k2={self.k2}, {self.gamma!r})"


class AlgebraElement:
    """A finite sum of c * t^m x^alpha; immutable, zero coefficients never stored."""

    __slots__ = ("spec", "_terms")

    def __init__(self, spec: AlgebraSpec, terms: dict):
        self.spec = spec
        self._terms = {k: v for k, v in terms.items() if v}

    def _same(self, other: "AlgebraElement"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise SpecMismatch("elements of different algebras")

    def items(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in canonical order: deg-lex on m, then Gamma-coordinates."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coefficient(self, m: Sequence[int], a: Sequence[int]) -> Scalar:
        return self._terms.get(Monomial(tuple(m), tuple(a)), self.spec.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def grades(self) -> list[tuple[int, ...]]:
        return sorted({mon.a for mon in self._terms})

    def degree(self) -> int:
        return max((sum(mon.m) for mon in self._terms), default=0)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return self + self.spec.one() * other
        self._same(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out[k] + v if k in out else v
        return AlgebraElement(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.spec, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self.spec.field(other)
        if not c:
            return AlgebraElement(self.spec, {})
        return AlgebraElement(self.spec, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return (self.spec is other.spec or self.spec == other.spec) and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mon, c in self.items():
            factors = []
            for i, e in enumerate(mon.m, start=1):
                if e == 1:
                    factors.append(f"t{i}")
                elif e:
                    factors.append(f"t{i}^{e}")
            if any(mon.a):
                vec = self.spec.gamma.vector(mon.a)
                factors.append("x^(" + ",".join(map(str, vec)) + ")")
            cs = str(c)
            if not self.spec.field.degree == 1 and not c.is_rational():
                cs = f"({cs})"
            if factors:
                mono = "*".join(factors)
                parts.append(mono if c == 1 else (f"-{mono}" if c == -1 else f"{cs}*{mono}"))
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """(z x^a)(w x^b) = f(a, b) z w x^(a+b), extended bilinearly."""
    u._same(v)
    spec = u.spec
    cocycle = spec.cocycle if spec.twisted else None
    out: dict = {}
    for (m1, a1), c1 in u._terms.items():
        for (m2, a2), c2 in v._terms.items():
            key = Monomial(tuple(x + y for x, y in zip(m1, m2)), tuple(x + y for x, y in zip(a1, a2)))
            c = c1 * c2
            if cocycle is not None:
                fv = cocycle.value(a1, a2)
                if fv != 1:
                    c = c * fv
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
    return AlgebraElement(spec, out)


def _apply(op: DiffOp, u: AlgebraElement) -> AlgebraElement:
    out: dict = {}
    tp = [(i, c) for i, c in enumerate(op.tpart) if c]
    for (m, a), c in u._terms.items():
        ev = op.eigenvalue(a)
        if ev:
            key = Monomial(m, a)
            out[key] = out[key] + ev * c if key in out else ev * c
        for i, ti in tp:
            if m[i]:
                m2 = m[:i] + (m[i] - 1,) + m[i + 1:]
                key = Monomial(m2, a)
                val = ti * c * m[i]
                out[key] = out[key] + val if key in out else val
    return AlgebraElement(u.spec, out)


def apply_derivation(der: Derivation | DiffOp, u: AlgebraElement) -> AlgebraElement:
    return _apply(u.spec.operator(der), u)


def invert(u: AlgebraElement) -> AlgebraElement:
    """Inverse of a root vector c x^alpha: c^-1 f(alpha, -alpha)^-1 x^-alpha."""
    if len(u) != 1:
        raise NotRootVector("a root vector has exactly one term")
    (m, a), c = next(iter(u._terms.items()))
    if any(m):
        raise NotRootVector("root vectors carry no t-dependence")
    spec = u.spec
    neg = tuple(-x for x in a)
    coeff = c.inverse()
    fv = spec.cocycle.value(a, neg)
    if fv != 1:
        coeff = coeff * fv.inverse()
    return AlgebraElement(spec, {Monomial(m, neg): coeff})


def grade_decompose(u: AlgebraElement) -> dict[tuple, AlgebraElement]:
    """Split u by grade; keys are grade vectors, in canonical coordinate order."""
    parts: dict = {}
    for mon, c in u.items():
        parts.setdefault(mon.a, {})[mon] = c
    return {u.spec.gamma.vector(a): AlgebraElement(u.spec, t) for a, t in sorted(parts.items())}


def homogeneous_grade(u: AlgebraElement) -> tuple[int, ...] | None:
    gs = u.grades()
    return gs[0] if len(gs) == 1 else None


def filtration_level(u: AlgebraElement, alpha: Sequence) -> int:
    """Least n with (d - alpha(d))^(n+1) u = 0 for every d in D; here the total t-degree."""
    a = u.spec.grade_coords(alpha)
    if any(mon.a != a for mon in u._terms):
        raise NonHomogeneous("element is not homogeneous of the given grade")
    return u.degree()
