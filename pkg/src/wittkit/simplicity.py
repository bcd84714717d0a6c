"""Certificates that a nonzero element generates the whole algebra as a D-stable ideal.

A certificate is a list of steps, each mapping any D-stable ideal into itself
(multiplication by an algebra element, a shifted derivation from D, a nonzero
scaling). Replaying the steps from the source element must give exactly 1.

The construction follows the grading argument:

1. pick a grade alpha of u and a derivation d in D whose eigenvalues
   beta(d) separate the grades of u; the operators (d - beta(d))^N kill
   the beta-component (N = 1 + its t-degree) while acting invertibly on
   grade alpha;
2. multiply by x^(-alpha) to land in grade 0;
3. on grade 0 every standard derivation acts as a plain d/dt, so
   differentiating along the leading exponent leaves a nonzero constant;
4. scale by its inverse.
"""

from __future__ import annotations

import json
from itertools import product as cartesian
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .comm_algebra import (
    AlgebraElement,
    AlgebraSpec,
    Derivation,
    Monomial,
    StandardSpec,
    apply_derivation,
)
from .errors import PreconditionViolation, ZeroElement
from .field_lattice import Scalar
from .field_lattice.matrices import RowSpace, rref
from .witt_lie import pairing
from .serialization import (
    DocumentError,
    compact,
    element_from_doc,
    element_to_doc,
    scalar_from_json,
    scalar_to_json,
)


@dataclass(frozen=True)
class MulMonomial:
    """v -> element * v."""

    element: AlgebraElement

    def apply(self, v: AlgebraElement) -> AlgebraElement:
        return self.element * v


@dataclass(frozen=True)
class ApplyShiftedDer:
    """v -> (d - shift)(v) with d a standard derivation or a combination of them."""

    der: Derivation
    shift: Scalar

    def __post_init__(self):
        if self.der.kind not in ("standard", "combination"):
            raise ValueError("certificate derivations must lie in the span of the standard derivations")

    def apply(self, v: AlgebraElement) -> AlgebraElement:
        out = apply_derivation(self.der, v)
        return out - v * self.shift if self.shift else out


@dataclass(frozen=True)
class Scale:
    c: Scalar

    def __post_init__(self):
        if not self.c:
            raise ValueError("scale factor must be nonzero")

    def apply(self, v: AlgebraElement) -> AlgebraElement:
        return v * self.c


CertificateStep = MulMonomial | ApplyShiftedDer | Scale


@dataclass(frozen=True)
class Certificate:
    source: AlgebraElement
    steps: tuple = dc_field(default=())

    def trace(self) -> list[AlgebraElement]:
        vals = [self.source]
        for s in self.steps:
            vals.append(s.apply(vals[-1]))
        return vals

    def replay(self) -> AlgebraElement:
        v = self.source
        for s in self.steps:
            v = s.apply(v)
        return v

    def verify(self) -> bool:
        return self.replay() == self.source.spec.one()

    def __len__(self):
        return len(self.steps)


# -- separation

def _grading_indices(spec: AlgebraSpec) -> list[int]:
    """Standard derivations (1-based) with a nonzero grading part."""
    return [i for i, op in enumerate(spec.standard_operators(), start=1) if any(op.gpart)]


def _distinct(values: list) -> bool:
    return len(set(values)) == len(values)


def separating_derivation(spec: AlgebraSpec, support: Sequence[Sequence]) -> Derivation:
    """A derivation in D whose eigenvalues on the given grades are pairwise distinct.

    Single standard derivations are tried first (those with a grading part),
    then the moment-curve combinations sum_k c^k d_{i_k}, c = 1, 2, ...;
    for c large enough these separate any finite set of distinct grades.
    """
    grades = [tuple(spec.field(x) for x in b) for b in support]
    if not grades:
        raise PreconditionViolation("support must be nonempty")
    if not _distinct(grades):
        raise PreconditionViolation("support contains a repeated grade")
    idx = _grading_indices(spec)
    if len(grades) == 1:
        return Derivation.standard(idx[0] if idx else 1)
    for i in idx:
        d = Derivation.standard(i)
        if _distinct([pairing(spec, b, d) for b in grades]):
            return d
    n = spec.n_standard
    c = 1
    while True:
        coeffs = [0] * n
        for k, i in enumerate(idx):
            coeffs[i - 1] = c ** k
        d = Derivation.combination(coeffs)
        if _distinct([pairing(spec, b, d) for b in grades]):
            return d
        c += 1


# -- certificates

def _leading_exponent(u: AlgebraElement) -> tuple[int, ...]:
    return u.items()[-1][0].m


def simplicity_certificate(u: AlgebraElement) -> Certificate:
    """A replay-verified certificate that the D-stable ideal generated by u contains 1."""
    if not u:
        raise ZeroElement("the zero element generates the zero ideal")
    spec = u.spec
    one = spec.one()
    if u == one:
        return Certificate(u, ())
    steps: list = []
    parts: dict = {}
    for mon, c in u.items():
        parts.setdefault(mon.a, {})[mon] = c
    comps = {a: AlgebraElement(spec, t) for a, t in parts.items()}
    alpha = min(comps, key=lambda a: (comps[a].degree(), a))
    v = u
    if len(comps) > 1:
        vectors = {a: spec.grade_vector(a) for a in comps}
        d = separating_derivation(spec, [vectors[a] for a in sorted(comps)])
        for beta in sorted(comps):
            if beta == alpha:
                continue
            shift = pairing(spec, vectors[beta], d)
            for _ in range(1 + comps[beta].degree()):
                step = ApplyShiftedDer(d, shift)
                steps.append(step)
                v = step.apply(v)
        assert v.grades() == [alpha], "separation left more than one grade"
    if any(alpha):
        # the cocycle factor f(-alpha, alpha) is absorbed by the final Scale
        step = MulMonomial(spec.term(1, None, coords=tuple(-x for x in alpha)))
        steps.append(step)
        v = step.apply(v)
    m = _leading_exponent(v)
    for i, e in enumerate(m, start=1):
        for _ in range(e):
            step = ApplyShiftedDer(Derivation.standard(i), spec.field.zero)
            steps.append(step)
            v = step.apply(v)
    (mon, c), = v.items()
    assert not any(mon.m) and not any(mon.a)
    steps.append(Scale(c.inverse()))
    cert = Certificate(u, tuple(steps))
    if not cert.verify():  # pragma: no cover - guarded by construction
        raise AssertionError("certificate failed replay")
    return cert


# -- text format

HEADER = "CERT v1"


def _der_token(der: Derivation, field) -> str:
    if der.kind == "standard":
        return str(der.index)
    return compact([scalar_to_json(field(c)) for c in der.coeffs])


def format_certificate(cert: Certificate) -> str:
    f = cert.source.spec.field
    lines = [HEADER, "SOURCE " + compact(element_to_doc(cert.source))]
    for s in cert.steps:
        if isinstance(s, MulMonomial):
            lines.append("MUL " + compact(element_to_doc(s.element)))
        elif isinstance(s, ApplyShiftedDer):
            lines.append(f"DER {_der_token(s.der, f)} SHIFT {compact(scalar_to_json(s.shift))}")
        else:
            lines.append("SCALE " + compact(scalar_to_json(s.c)))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, spec: AlgebraSpec) -> Certificate:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != HEADER:
        raise DocumentError(f"line 1: expected {HEADER!r}")
    if len(lines) < 2 or not lines[1].startswith("SOURCE "):
        raise DocumentError("line 2: expected SOURCE <element>")
    f = spec.field

    def load(s, ln):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"line {ln}: {exc.msg}") from None

    source = element_from_doc(spec, load(lines[1][7:], 2), "line 2")
    steps = []
    for ln, line in enumerate(lines[2:], start=3):
        op, _, rest = line.partition(" ")
        where = f"line {ln}"
        try:
            if op == "MUL":
                steps.append(MulMonomial(element_from_doc(spec, load(rest, ln), where)))
            elif op == "SCALE":
                steps.append(Scale(scalar_from_json(f, load(rest, ln), where)))
            elif op == "DER":
                tok, sep, shift = rest.partition(" SHIFT ")
                if not sep:
                    raise DocumentError(f"{where}: expected DER <index> SHIFT <scalar>")
                val = load(tok, ln)
                if isinstance(val, int) and not isinstance(val, bool):
                    if not 1 <= val <= spec.n_standard:
                        raise DocumentError(f"{where}: derivation index {val} out of range")
                    der = Derivation.standard(val)
                elif isinstance(val, list):
                    if len(val) != spec.n_standard:
                        raise DocumentError(f"{where}: combination needs {spec.n_standard} coefficients")
                    der = Derivation.combination([scalar_from_json(f, x, where) for x in val])
                else:
                    raise DocumentError(f"{where}: bad derivation {tok!r}")
                steps.append(ApplyShiftedDer(der, scalar_from_json(f, load(shift, ln), where)))
            else:
                raise DocumentError(f"{where}: unknown step {op!r}")
        except DocumentError:
            raise
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from None
    return Certificate(source, tuple(steps))


# -- closure probe

@dataclass(frozen=True)
class Reached1:
    rounds: int
    dimension: int

    name = "Reached1"


@dataclass(frozen=True)
class StableCandidate:
    """A window-truncated subspace closed under every in-window operation, not containing 1.

    Stability is asserted only inside the window; this is a candidate, not a proof.
    """

    basis: tuple  # AlgebraElements
    rounds: int

    name = "StableCandidate"


@dataclass(frozen=True)
class Exhausted:
    rounds: int
    dimension: int

    name = "Exhausted"


def ideal_closure_probe(u: AlgebraElement, ders: Sequence[Derivation], degree_bound: int,
                        grade_window: Sequence[Sequence], max_rounds: int = 64):
    """Close {u} under the given derivations, multiplication by monomials and
    linear span, inside the window {t^m x^alpha : |m| <= degree_bound, alpha in grade_window}.

    The window is widened to contain 0 and the grades and degree of u. A
    product is kept only when it lies in the window; the subspace of the
    current span whose product with a monomial stays inside is computed
    exactly, so nothing is truncated silently.
    """
    if not u:
        raise ZeroElement("the zero element generates the zero ideal")
    spec = u.spec
    f = spec.field
    D = max(int(degree_bound), u.degree())
    window = {spec.grade_coords(a) for a in grade_window} | set(u.grades()) | {spec._zero_a}
    window = sorted(window)
    exps = sorted((m for m in cartesian(range(D + 1), repeat=spec.n_vars) if sum(m) <= D),
                  key=lambda m: (sum(m), m))
    basis = [Monomial(m, a) for a in window for m in exps]
    index = {b: k for k, b in enumerate(basis)}
    N = len(basis)
    ops = [spec.operator(d) for d in ders]

    def vec(e: AlgebraElement) -> list:
        out = [f.zero] * N
        for mon, c in e.items():
            out[index[mon]] = c
        return out

    def elem(v: Sequence) -> AlgebraElement:
        return AlgebraElement(spec, {basis[k]: c for k, c in enumerate(v) if c})

    space = RowSpace(N, f)
    one_vec = vec(spec.one())
    rounds = 0

    def close_under_ders(pending: list) -> None:
        while pending:
            e = pending.pop()
            for op in ops:
                img = op(e)
                if img and space.add(vec(img)):
                    pending.append(img)

    space.add(vec(u))
    close_under_ders([u])
    diffs = sorted({tuple(x - y for x, y in zip(a, b)) for a in window for b in window})
    multipliers = [spec.term(1, m, coords=a) for a in diffs for m in exps]
    while rounds < max_rounds:
        if space.contains(one_vec):
            return Reached1(rounds, len(space))
        rounds += 1
        grew = False
        current = space.basis()
        for mu in multipliers:
            (mmu, cmu), = mu.items()
            inside = [k for k, b in enumerate(basis)
                      if Monomial(tuple(x + y for x, y in zip(b.m, mmu.m)),
                                  tuple(x + y for x, y in zip(b.a, mmu.a))) in index]
            inside_set = set(inside)
            outside = [k for k in range(N) if k not in inside_set]
            order = outside + inside
            permuted = [[row[k] for k in order] for row in current]
            red, piv = rref(permuted, f)
            for row, p in zip(red, piv):
                if p < len(outside):
                    continue
                v = [f.zero] * N
                for pos, k in enumerate(order):
                    v[k] = row[pos]
                prod = mu * elem(v)
                if space.add(vec(prod)):
                    grew = True
                    close_under_ders([prod])
        if not grew:
            if space.contains(one_vec):
                return Reached1(rounds, len(space))
            return StableCandidate(tuple(elem(r) for r in space.basis()), rounds)
    if space.contains(one_vec):
        return Reached1(rounds, len(space))
    return Exhausted(rounds, len(space))
