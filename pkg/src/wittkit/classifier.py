"""Normal forms, cocycle trivialisation, structure keys and explicit isomorphisms.

* :func:`standard_form` rewrites a raw presentation (k1, k2; Gamma, mixing)
  as a standard triple (l1, l2, l3; Gamma') by a linear change of the
  t-variables and of the grading coordinates.
* :func:`trivialize_cocycle` splits a bilinear cocycle as a coboundary, so
  every twisted algebra is carried isomorphically onto the untwisted one.
* :func:`decide_isomorphic` compares triples and block-group orbits and,
  when the orbits agree, returns a witness sigma built by :func:`build_sigma`.

For g = [[A, 0], [B, C]] carrying Gamma to Gamma' (alpha -> alpha g^-1), sigma
is conjugation by the algebra isomorphism

    phi(x^alpha) = x^(alpha g^-1),
    phi(t_{l1+i}) = sum_k t'_{l1+k} P_{ki},   P = (A^T)^-1,
    phi(t_i) = t'_i (i <= l1),

which sends d_{l1+j} to sum_i g_{ij} d'_{l1+i} and fixes d_i for i <= l1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .comm_algebra import (
    AlgebraElement,
    AlgebraSpec,
    Cocycle,
    Derivation,
    Monomial,
    RawSpec,
    StandardSpec,
)
from .errors import DimensionMismatch, PreconditionViolation
from .field_lattice import (
    BlockGroupElement,
    OrbitInvariants,
    Scalar,
    Subgroup,
    adapted_basis,
    block_act,
    orbit_decide,
    orbit_invariants,
)
from .field_lattice import blockgroup as bg
from .field_lattice.matrices import QQ, identity, inverse, rref, solve_left, transpose
from .witt_lie import WittElement, bracket


# -- cocycle trivialisation

class Trivialization:
    """g: Gamma -> F^x with f(a, b) = g(a) g(b) / g(a + b).

    For f = prod lam^(a S b) the exponent of lam in g(a) is
    -(a S a - diag(S) . a) / 2, an integer for every integral symmetric S.
    """

    __slots__ = ("cocycle", "gamma")

    def __init__(self, cocycle: Cocycle, gamma: Subgroup):
        if not cocycle.is_trivial and cocycle.rank != gamma.rank:
            raise DimensionMismatch("cocycle rank differs from the rank of Gamma")
        self.cocycle = cocycle
        self.gamma = gamma

    def exponents(self, a: Sequence[int]) -> tuple[int, ...]:
        out = []
        for _, s in self.cocycle.base_points:
            q = Cocycle._form(s, a, a) - sum(s[i][i] * a[i] for i in range(len(a)))
            assert q % 2 == 0
            out.append(-(q // 2))
        return tuple(out)

    def __call__(self, a: Sequence[int]) -> Scalar:
        f = self.gamma.field
        val = f.one
        for (lam, _), e in zip(self.cocycle.base_points, self.exponents(a)):
            if e:
                val = val * lam ** e
        return val

    def at(self, alpha: Sequence) -> Scalar:
        coords = self.gamma.coordinates(alpha)
        if coords is None:
            raise PreconditionViolation("grade outside Gamma")
        return self(coords)

    def transport(self, u: AlgebraElement, target: AlgebraSpec | None = None) -> AlgebraElement:
        """x^alpha -> g(alpha) x^alpha, an algebra isomorphism onto the untwisted algebra."""
        target = target or untwisted(u.spec)
        out = {}
        for mon, c in u.items():
            out[mon] = c * self(mon.a)
        return AlgebraElement(target, out)


def trivialize_cocycle(f: Cocycle, gamma: Subgroup) -> Trivialization:
    return Trivialization(f, gamma)


def with_cocycle(spec: AlgebraSpec, cocycle: Cocycle | None) -> AlgebraSpec:
    if isinstance(spec, StandardSpec):
        return StandardSpec(spec.l1, spec.l2, spec.l3, spec.gamma, cocycle)
    return RawSpec(spec.k1, spec.k2, spec.gamma, spec.mixing, cocycle)


def untwisted(spec: AlgebraSpec) -> AlgebraSpec:
    return spec if not spec.twisted else with_cocycle(spec, None)


# -- standard form

def _int_inverse(m: list[list[int]]) -> list[list[int]]:
    inv = inverse([[mpq(x) for x in r] for r in m], QQ)
    if any(x.denominator != 1 for r in inv for x in r):
        raise ArithmeticError("grade map is not unimodular")
    return [[int(x) for x in r] for r in inv]


@dataclass(frozen=True)
class StandardFormRecord:
    """How a raw presentation maps onto its standard form.

    ``coordinates``: the selected grading coordinates J (1-based);
    ``grade_matrix`` P: beta = alpha_J P;
    ``variable_matrix`` V: t = V s, s the new variables;
    ``derivation_matrix``: row i holds raw d_{i} in the new standard basis;
    ``grade_map``: raw Gamma-coordinates a -> new coordinates a U.
    """

    raw: RawSpec
    spec: StandardSpec
    coordinates: tuple
    grade_matrix: tuple
    variable_matrix: tuple
    derivation_matrix: tuple
    grade_map: tuple

    def map_grade(self, alpha: Sequence) -> tuple:
        f = self.raw.field
        a_j = [f(alpha[j - 1]) for j in self.coordinates]
        r = len(a_j)
        return tuple(sum((a_j[i] * self.grade_matrix[i][c] for i in range(r)), f.zero) for c in range(r))

    def map_coords(self, a: Sequence[int]) -> tuple[int, ...]:
        U = self.grade_map
        return tuple(sum(a[i] * U[i][c] for i in range(len(a))) for c in range(len(U[0]) if U else 0))

    def variable_image(self, i: int) -> AlgebraElement:
        """t_i as a linear form in the new variables."""
        spec = self.spec
        out = spec.zero()
        for k, v in enumerate(self.variable_matrix[i - 1], start=1):
            if v:
                out = out + spec.variable(k) * v
        return out

    def map_element(self, u: AlgebraElement) -> AlgebraElement:
        if u.spec != self.raw:
            raise PreconditionViolation("element does not belong to the raw algebra")
        spec = self.spec
        images = [self.variable_image(i) for i in range(1, self.raw.n_vars + 1)]
        out = spec.zero()
        for mon, c in u.items():
            term = spec.term(c, None, coords=self.map_coords(mon.a))
            for img, e in zip(images, mon.m):
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def map_derivation(self, i: int) -> Derivation:
        return Derivation.combination(self.derivation_matrix[i - 1])


def _intersect_kernel(rows: list[list[Scalar]], first: int, field) -> list[list[Scalar]]:
    """Rows of span(rows) whose first ``first`` entries vanish, as an RREF basis of the remainder."""
    red, piv = rref(rows, field)
    keep = [row[first:] for row, p in zip(red, piv) if p >= first]
    return rref(keep, field)[0] if keep else []


def standard_form(raw: RawSpec) -> tuple[StandardSpec, StandardFormRecord]:
    """Rewrite a raw presentation in standard form.

    J is the leftmost-greedy F-independent set of coordinate functionals of
    Gamma (alpha = alpha_J E on Gamma). A raw derivation sum c_i d_i acts
    through its t-part tau(c) and its grading functional rho(c) = E c; the
    pure down-grading ones span tau(ker rho) (dimension l1), the pure grading
    ones rho(ker tau) (dimension l3), and the e_i (i <= k1) completing
    tau(ker rho) to a basis give the l2 mixed derivations.
    """
    if not isinstance(raw, RawSpec):
        raise TypeError("standard_form expects a RawSpec")
    f = raw.field
    k, k1 = raw.k, raw.k1
    gens = [list(b) for b in raw.gamma.basis]
    # greedy independent coordinate functionals
    J: list[int] = []
    for j in range(k):
        cols = [[g[c] for c in J + [j]] for g in gens]
        if gens and rref(cols, f)[1] == list(range(len(J) + 1)):
            J.append(j)
    r = len(J)
    # E (r x k): alpha = alpha_J E for alpha in the F-span of Gamma
    if r:
        sub = [[g[c] for c in J] for g in gens]
        # G_J E = G  <=>  E^T G_J^T = G^T
        E = transpose(solve_left(transpose(sub), transpose(gens), f))
    else:
        E = []
    ops = raw.standard_operators()
    # rows (tau(e_i) | rho(e_i))
    R = []
    for i, op in enumerate(ops):
        rho = [sum((E[a][c] * op.gpart[c] for c in range(k) if op.gpart[c]), f.zero) for a in range(r)]
        R.append(list(op.tpart) + rho)
    down = _intersect_kernel([row[k1:] + row[:k1] for row in R], r, f)      # tau(ker rho)
    grading = _intersect_kernel(R, k1, f)                                   # rho(ker tau)
    l1, l3 = len(down), len(grading)
    span = [list(v) for v in down]
    mixed_idx = []
    for i in range(k1):
        e = [f.one if c == i else f.zero for c in range(k1)]
        if len(rref(span + [e], f)[1]) > len(span):
            span.append(e)
            mixed_idx.append(i)
    l2 = len(mixed_idx)
    if l1 + l2 + l3 == 0:
        raise PreconditionViolation("every derivation of the raw algebra vanishes")
    assert l2 + l3 == r and l1 + l2 == k1
    # mixed grading functionals, reduced modulo the pure grading block
    mixed_rho = []
    for i in mixed_idx:
        p = list(R[i][k1:])
        for q in grading:
            piv = next(c for c, x in enumerate(q) if x)
            if p[piv]:
                fac = p[piv]
                p = [x - fac * y for x, y in zip(p, q)]
        mixed_rho.append(p)
    V = transpose(span) if span else []          # k1 x k1, columns = new vector fields
    P = transpose(mixed_rho + [list(q) for q in grading]) if r else []
    images = []
    for b in gens:
        aj = [b[c] for c in J]
        images.append([sum((aj[i] * P[i][c] for i in range(r)), f.zero) for c in range(r)])
    gamma2 = Subgroup(images, f, r)
    U = [list(gamma2.coordinates(v)) for v in images]
    cocycle = None
    if raw.twisted:
        Ui = _int_inverse(U)
        pts = []
        for lam, s in raw.cocycle.base_points:
            s2 = [[sum(Ui[a][i] * s[i][j] * Ui[b][j] for i in range(len(s)) for j in range(len(s)))
                   for b in range(len(s))] for a in range(len(s))]
            pts.append((lam, s2))
        cocycle = Cocycle(pts)
    spec = StandardSpec(l1, l2, l3, gamma2, cocycle)
    # new standard basis as (tau | rho) rows
    new_rows = []
    for a in range(l1):
        new_rows.append(list(down[a]) + [f.zero] * r)
    for j, i in enumerate(mixed_idx):
        new_rows.append([f.one if c == i else f.zero for c in range(k1)] + list(mixed_rho[j]))
    for q in grading:
        new_rows.append([f.zero] * k1 + list(q))
    # raw rows in these terms: R = X new_rows
    X = solve_left(new_rows, R, f)
    assert X is not None
    record = StandardFormRecord(
        raw, spec,
        tuple(j + 1 for j in J),
        tuple(tuple(row) for row in P),
        tuple(tuple(row) for row in V),
        tuple(tuple(row) for row in X),
        tuple(tuple(row) for row in U),
    )
    return spec, record


# -- structure keys

@dataclass(frozen=True)
class StructureKey:
    """Triple, field and orbit invariants, plus an orbit representative when one is known.

    ``representative`` is the canonical HNF of the orbit representative Z^n
    when Gamma has an adapted basis (always the case over Q), else the marker
    ``"invariants-only"``. Equal keys are necessary for isomorphism.
    """

    triple: tuple
    field: tuple
    invariants: tuple
    representative: object

    @property
    def complete(self) -> bool:
        return self.representative != "invariants-only"


def structure_key(spec: StandardSpec) -> StructureKey:
    inv = orbit_invariants(spec.gamma, spec.l2, spec.l3)
    n = spec.l2 + spec.l3
    if n == 0 or adapted_basis(spec.gamma, spec.l2, spec.l3) is not None:
        rep = Subgroup.lattice(spec.field, n).hnf_rows
    else:
        rep = "invariants-only"
    return StructureKey(spec.triple, spec.field.descriptor(), inv.as_tuple(), rep)


# -- isomorphism witnesses

class IsoWitness:
    """sigma: W(source) -> W(target) induced by g in G(l2, l3).

    ``variable_transform`` is P = (A^T)^-1 (t~'_{l1+j} = sum_i t'_{l1+i} P_ij),
    ``derivation_transform`` the l x l matrix whose row j gives d~'_j in
    the target's standard basis (identity on the first l1 indices, g^T on the
    grading block). Twisted algebras are handled by composing with the
    trivialisations of both cocycles.
    """

    def __init__(self, g: BlockGroupElement, source: StandardSpec, target: StandardSpec,
                 variable_transform=None, derivation_transform=None):
        self.g = g
        self.source = source
        self.target = target
        f = source.field
        l1, l2, l3 = source.triple
        A = [list(r) for r in g.A]
        self.variable_transform = tuple(tuple(r) for r in (
            variable_transform if variable_transform is not None
            else (transpose(inverse(A, f)) if l2 else [])))
        if derivation_transform is None:
            m = g.matrix()
            ell = source.ell
            dt = identity(ell, f)
            for j in range(l2 + l3):
                for i in range(l2 + l3):
                    dt[l1 + j][l1 + i] = m[i][j]
            derivation_transform = dt
        self.derivation_transform = tuple(tuple(r) for r in derivation_transform)
        self._ginv = inverse(g.matrix(), f) if l2 + l3 else []
        self._triv_s = Trivialization(source.cocycle, source.gamma)
        self._triv_t = Trivialization(target.cocycle, target.gamma)
        self._var_images = None
        self._der_images = None

    def _variables(self) -> list[AlgebraElement]:
        if self._var_images is None:
            t = self.target
            l1, l2 = t.l1, t.l2
            imgs = [t.variable(i) for i in range(1, l1 + 1)]
            for j in range(l2):
                acc = t.zero()
                for i in range(l2):
                    c = self.variable_transform[i][j]
                    if c:
                        acc = acc + t.variable(l1 + i + 1) * c
                imgs.append(acc)
            self._var_images = imgs
        return self._var_images

    def map_grade(self, a: Sequence[int]) -> tuple[int, ...]:
        src, tgt = self.source, self.target
        alpha = src.grade_vector(a)
        if not self._ginv:
            return ()
        image = [sum((alpha[i] * self._ginv[i][c] for i in range(len(alpha)) if alpha[i]), src.field.zero)
                 for c in range(len(alpha))]
        coords = tgt.gamma.coordinates(image)
        if coords is None:
            raise PreconditionViolation("g does not carry Gamma into Gamma'")
        return coords

    def map_algebra(self, u: AlgebraElement) -> AlgebraElement:
        """phi: A(source) -> A(target)."""
        tgt = self.target
        imgs = self._variables()
        out = tgt.zero()
        for mon, c in u.items():
            a2 = self.map_grade(mon.a)
            coeff = c
            if self.source.twisted:
                coeff = coeff * self._triv_s(mon.a)
            if tgt.twisted:
                coeff = coeff / self._triv_t(a2)
            term = tgt.term(coeff, None, coords=a2)
            for img, e in zip(imgs, mon.m):
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def _derivations(self) -> list[WittElement]:
        if self._der_images is None:
            tgt = self.target
            self._der_images = [WittElement(tgt, [tgt.one() * c for c in row]) for row in self.derivation_transform]
        return self._der_images

    def __call__(self, w: WittElement) -> WittElement:
        if w.spec != self.source:
            raise PreconditionViolation("element does not belong to the source algebra")
        tgt = self.target
        ders = self._derivations()
        coeffs = [tgt.zero() for _ in range(tgt.ell)]
        for j, u in enumerate(w.coeffs):
            if not u:
                continue
            img = self.map_algebra(u)
            for i, c in enumerate(ders[j].coeffs):
                if c:
                    coeffs[i] = coeffs[i] + img * c
        return WittElement(tgt, coeffs)

    def inverse(self) -> "IsoWitness":
        return build_sigma(self.g.inverse(), self.target, self.source)

    def corrupted(self) -> "IsoWitness":
        """The same witness with the variable transform replaced by the identity (for fault injection)."""
        l2 = self.source.l2
        return IsoWitness(self.g, self.source, self.target,
                          variable_transform=identity(l2, self.source.field),
                          derivation_transform=self.derivation_transform)


def build_sigma(g: BlockGroupElement, s: StandardSpec, s2: StandardSpec) -> IsoWitness:
    if s.triple != s2.triple:
        raise PreconditionViolation("triples differ")
    if s.field is not s2.field:
        raise PreconditionViolation("fields differ")
    if (g.l2, g.l3) != (s.l2, s.l3):
        raise PreconditionViolation("g has the wrong block shape")
    if s.l2 + s.l3 and block_act(g, s.gamma) != s2.gamma:
        raise PreconditionViolation("g does not carry Gamma onto Gamma'")
    return IsoWitness(g, s, s2)


@dataclass(frozen=True)
class HomomorphismReport:
    passed: bool
    samples: int
    untested: bool = False
    counterexample: tuple | None = None  # (u, v, sigma([u,v]), [sigma u, sigma v])


def verify_homomorphism(w: IsoWitness, sample_count: int = 100, seed: int = 0,
                        max_degree: int = 2) -> HomomorphismReport:
    """Check sigma([u, v]) = [sigma(u), sigma(v)] on random pairs."""
    from .sampling import random_witt

    if sample_count <= 0:
        return HomomorphismReport(True, 0, untested=True)
    rng = random.Random(seed)
    for _ in range(sample_count):
        u = random_witt(w.source, rng, max_degree=max_degree)
        v = random_witt(w.source, rng, max_degree=max_degree)
        lhs = w(bracket(u, v))
        rhs = bracket(w(u), w(v))
        if lhs != rhs:
            return HomomorphismReport(False, sample_count, counterexample=(u, v, lhs, rhs))
    return HomomorphismReport(True, sample_count)


# -- decision

@dataclass(frozen=True)
class Equivalent:
    witness: IsoWitness
    method: str
    report: HomomorphismReport

    name = "EQUIVALENT"


@dataclass(frozen=True)
class Inequivalent:
    reason: str
    left: object
    right: object

    name = "INEQUIVALENT"


@dataclass(frozen=True)
class Unknown:
    candidates_tried: int

    name = "UNKNOWN"


def decide_isomorphic(s: StandardSpec, s2: StandardSpec, budget: int = 20000,
                      verify_samples: int = 100, seed: int = 0):
    """Three-valued isomorphism test; Equivalent answers carry a verified witness."""
    if s.triple != s2.triple:
        return Inequivalent("triple", s.triple, s2.triple)
    if s.field is not s2.field:
        return Inequivalent("field", s.field.descriptor(), s2.field.descriptor())
    k1, k2 = structure_key(s), structure_key(s2)
    for name, a, b in zip(OrbitInvariants.NAMES, k1.invariants, k2.invariants):
        if a != b:
            return Inequivalent(name, a, b)
    res = orbit_decide(s.gamma, s2.gamma, s.l2, s.l3, budget) if s.l2 + s.l3 else \
        bg.Equivalent(BlockGroupElement.identity(0, 0, s.field), "identity")
    if isinstance(res, bg.Inequivalent):
        return Inequivalent(res.invariant, res.left, res.right)
    if isinstance(res, bg.Unknown):
        return Unknown(res.candidates_tried)
    witness = build_sigma(res.g, s, s2)
    report = verify_homomorphism(witness, verify_samples, seed)
    if not report.passed:  # pragma: no cover - sigma is an isomorphism by construction
        raise AssertionError(f"witness failed verification: {report.counterexample}")
    return Equivalent(witness, res.method, report)
