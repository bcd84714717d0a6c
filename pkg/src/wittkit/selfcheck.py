"""Seeded property suites behind ``wittkit selfcheck``.

Each suite draws from its own ``random.Random(f"{seed}:{name}")`` and returns
a :class:`SuiteResult` whose digest hashes every canonical value it checked,
so equal seeds give byte-identical reports whatever the thread count.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .classifier import decide_isomorphic, standard_form, structure_key, trivialize_cocycle, untwisted
from .comm_algebra import Cocycle, Derivation, RawSpec, StandardSpec, apply_derivation, invert, validate_cocycle
from .field_lattice import NumberField, Subgroup, block_act
from .sampling import (
    random_block_element,
    random_element,
    random_root_vector,
    random_witt,
)
from .serialization import format_element, format_spec
from .simplicity import Reached1, format_certificate, ideal_closure_probe, simplicity_certificate
from .witt_lie import Truncation, bracket, classify_operator, root_space, truncated_root_space, pairing


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: int
    digest: str

    def line(self) -> str:
        status = "PASS" if not self.failures else f"FAIL({self.failures})"
        return f"{self.name}: {status} checks={self.checks} digest={self.digest}"


class _Recorder:
    def __init__(self):
        self.h = hashlib.sha256()
        self.checks = 0
        self.failures = 0

    def check(self, ok: bool, *values):
        self.checks += 1
        if not ok:
            self.failures += 1
        for v in values:
            self.h.update(str(v).encode())
            self.h.update(b"\0")


def _q() -> NumberField:
    return NumberField.of([0, 1])


def _k() -> NumberField:
    return NumberField.of([-2, 0, 1])


def _unit(n, field):
    return Subgroup([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)


def _specs():
    Q, K = _q(), _k()
    return [
        StandardSpec(1, 1, 1, _unit(2, Q)),
        StandardSpec(1, 1, 1, _unit(2, K)),
        StandardSpec(0, 0, 1, Subgroup([[1], [K.theta]], K, 1)),
        StandardSpec(2, 0, 0, Subgroup.zero(Q, 0)),
        StandardSpec(0, 1, 1, _unit(2, Q), Cocycle([(Q(2), [[1, 0], [0, 1]])])),
    ]


def suite_algebra(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    for spec in _specs()[:2]:
        ders = [Derivation.standard(i) for i in range(1, spec.n_standard + 1)]
        for _ in range(n):
            u, v, w = (random_element(spec, rng) for _ in range(3))
            uv = u * v
            rec.check(uv == v * u and uv * w == u * (v * w), format_element(uv))
            d = rng.choice(ders)
            rec.check(apply_derivation(d, uv) == apply_derivation(d, u) * v + u * apply_derivation(d, v))
    return rec


def suite_lie(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    for spec in (_specs()[0], _specs()[2]):
        for _ in range(n):
            u, v, w = (random_witt(spec, rng) for _ in range(3))
            uv = bracket(u, v)
            jac = bracket(uv, w) + bracket(bracket(v, w), u) + bracket(bracket(w, u), v)
            rec.check(uv == -bracket(v, u) and not jac, format_element(uv))
    return rec


def suite_roots(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    spec = _specs()[0]
    f = spec.field
    for _ in range(n):
        a = tuple(rng.randint(-3, 3) for _ in range(2))
        beta = spec.grade_vector(a)
        T = Truncation(1, [beta])
        got = truncated_root_space(spec, beta, T)
        want = root_space(spec, beta)
        rec.check(len(got) == spec.ell and set(map(str, got)) == set(map(str, want)), a)
        off = (f(a[0]) + f(1) / 2, f(a[1]))
        rec.check(root_space(spec, off) == [], off)
    return rec


def suite_operators(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    spec = _specs()[0]
    T = Truncation(2, [(0, 0), (1, 0), (0, 1), (1, 1), (-1, 2)])
    expected = {1: "LocallyNilpotent", 2: "Mixed", 3: "Semisimple"}
    for i, name in expected.items():
        res = classify_operator(Derivation.standard(i), T, spec)
        rec.check(res.name == name, i, res.name, res.minimal_polynomial)
    return rec


def suite_certificates(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    for spec in _specs():
        for _ in range(n):
            u = random_element(spec, rng, max_terms=5, max_degree=3, max_grades=3, nonzero=True)
            cert = simplicity_certificate(u)
            rec.check(cert.verify(), format_certificate(cert))
    return rec


def suite_negative_controls(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    Q = _q()
    a = StandardSpec(2, 0, 0, Subgroup.zero(Q, 0))
    b = StandardSpec(1, 0, 1, _unit(1, Q))
    c = StandardSpec(0, 1, 0, _unit(1, Q))
    cases = [
        (a.variable(2), [Derivation.down(1)], []),
        (b.variable(1), [Derivation.standard(2)], [(-1,), (0,), (1,)]),
        (c.variable(1), [Derivation.grading(1)], [(-1,), (0,), (1,)]),
    ]
    for u, ders, window in cases:
        res = ideal_closure_probe(u, ders, 3, window)
        rec.check(res.name == "StableCandidate", res.name, len(getattr(res, "basis", ())))
    spec = _specs()[0]
    for _ in range(n):
        u = random_element(spec, rng, nonzero=True)
        res = ideal_closure_probe(u, [Derivation.standard(i) for i in (1, 2, 3)], u.degree(),
                                  [spec.grade_vector(g) for g in u.grades()])
        rec.check(isinstance(res, Reached1), res)
    return rec


def suite_root_vectors(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    for spec in _specs():
        for _ in range(n):
            u = random_root_vector(spec, rng)
            ui = invert(u)
            alpha = spec.grade_vector(u.grades()[0])
            ok = u * ui == spec.one()
            for i in range(1, spec.n_standard + 1):
                d = Derivation.standard(i)
                ok = ok and apply_derivation(d, ui) == ui * (-pairing(spec, alpha, d))
            rec.check(ok, format_element(ui))
    return rec


def suite_classification(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    for _ in range(n):
        field = rng.choice([_q(), _k()])
        l2 = rng.randint(0, 2)
        l3 = rng.randint(0, 2 - l2)
        l1 = rng.randint(0 if l2 + l3 else 1, 1)
        gamma = _unit(l2 + l3, field)
        s = StandardSpec(l1, l2, l3, gamma)
        g = random_block_element(l2, l3, field, rng)
        s2 = StandardSpec(l1, l2, l3, block_act(g, gamma))
        res = decide_isomorphic(s, s2, verify_samples=10, seed=rng.randrange(1 << 30))
        rec.check(res.name == "EQUIVALENT" and structure_key(s) == structure_key(s2), format_spec(s2), res.name)
    raw = RawSpec(0, 2, Subgroup([[1, 2]], _q(), 2))
    spec, _ = standard_form(raw)
    rec.check(spec.triple == (0, 0, 1), format_spec(spec))
    return rec


def suite_separation(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    Q, K = _q(), _k()
    pairs = [
        (StandardSpec(0, 0, 1, _unit(1, K)), StandardSpec(0, 0, 1, Subgroup([[1], [K.theta]], K, 1)), "zrank"),
        (StandardSpec(1, 0, 0, Subgroup.zero(Q, 0)), StandardSpec(0, 0, 1, _unit(1, Q)), "triple"),
        (StandardSpec(0, 0, 1, _unit(1, Q)), StandardSpec(0, 0, 1, _unit(1, K)), "field"),
    ]
    for s, s2, reason in pairs:
        res = decide_isomorphic(s, s2)
        rec.check(res.name == "INEQUIVALENT" and res.reason == reason, res)
    return rec


def suite_cocycles(rng: random.Random, n: int) -> _Recorder:
    rec = _Recorder()
    spec = _specs()[4]
    triv = trivialize_cocycle(spec.cocycle, spec.gamma)
    plain = untwisted(spec)
    rec.check(bool(validate_cocycle(spec.cocycle, spec.gamma.rank)))
    for _ in range(n):
        u, v = random_root_vector(spec, rng), random_root_vector(spec, rng)
        lhs = triv.transport(u * v, plain)
        rhs = triv.transport(u, plain) * triv.transport(v, plain)
        rec.check(lhs == rhs, format_element(lhs))
    return rec


SUITES: dict[str, tuple[Callable, int]] = {
    "algebra-laws": (suite_algebra, 40),
    "lie-laws": (suite_lie, 30),
    "root-spaces": (suite_roots, 10),
    "operator-classes": (suite_operators, 1),
    "certificates": (suite_certificates, 8),
    "negative-controls": (suite_negative_controls, 5),
    "root-vectors": (suite_root_vectors, 10),
    "classification": (suite_classification, 10),
    "separation": (suite_separation, 1),
    "cocycle-transport": (suite_cocycles, 50),
}


def run_suite(name: str, seed: int) -> SuiteResult:
    fn, n = SUITES[name]
    rec = fn(random.Random(f"{seed}:{name}"), n)
    return SuiteResult(name, rec.checks, rec.failures, rec.h.hexdigest()[:16])


def run_selfcheck(seed: int, threads: int = 1) -> tuple[str, bool]:
    """Run every suite; the report lists suites in a fixed order."""
    names = list(SUITES)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda nm: run_suite(nm, seed), names))
    else:
        results = [run_suite(nm, seed) for nm in names]
    ok = all(r.failures == 0 for r in results)
    lines = [f"selfcheck seed={seed}"] + [r.line() for r in results]
    lines.append("RESULT " + ("PASS" if ok else "FAIL"))
    return "\n".join(lines) + "\n", ok
