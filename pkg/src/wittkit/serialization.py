"""JSON documents for specs, elements and group elements, plus derivation labels.

Scalars are written as lists of d exact rational strings (power-basis
coordinates); on input a bare integer or ``"p/q"`` string is accepted as a
rational scalar. Canonical output is byte-stable and ends with one newline.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from .comm_algebra import AlgebraElement, AlgebraSpec, Cocycle, Derivation, Monomial, RawSpec, StandardSpec
from .errors import WittError
from .field_lattice import BlockGroupElement, NumberField, Scalar, Subgroup, rational_str
from .witt_lie import WittElement


class DocumentError(WittError, ValueError):
    """A document failed to parse or validate; the message names the offending field."""


def _fail(path: str, msg: str):
    raise DocumentError(f"{path}: {msg}")


def scalar_to_json(s: Scalar) -> list[str]:
    return [rational_str(c) for c in s.c]


def scalar_from_json(field: NumberField, x: Any, path: str = "scalar") -> Scalar:
    if isinstance(x, bool) or isinstance(x, float):
        _fail(path, f"expected an exact rational, got {x!r}")
    try:
        if isinstance(x, list):
            if len(x) != field.degree:
                _fail(path, f"expected {field.degree} coordinates, got {len(x)}")
            return field(x)
        if isinstance(x, (int, str)):
            return field(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        if isinstance(exc, DocumentError):
            raise
        _fail(path, f"bad rational {x!r} ({exc})")
    _fail(path, f"expected a scalar, got {type(x).__name__}")


def vector_to_json(v: Sequence[Scalar]) -> list:
    return [scalar_to_json(s) for s in v]


def vector_from_json(field: NumberField, x: Any, n: int, path: str) -> tuple:
    if not isinstance(x, list):
        _fail(path, "expected a list of scalars")
    if len(x) != n:
        _fail(path, f"dimension mismatch: expected length {n}, got {len(x)}")
    return tuple(scalar_from_json(field, s, f"{path}[{i}]") for i, s in enumerate(x))


def _int_list(x: Any, n: int, path: str) -> tuple[int, ...]:
    if not isinstance(x, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in x):
        _fail(path, "expected a list of integers")
    if len(x) != n:
        _fail(path, f"dimension mismatch: expected length {n}, got {len(x)}")
    return tuple(x)


# -- specs

def spec_to_doc(spec: AlgebraSpec) -> dict:
    f = spec.field
    doc: dict = {"field": list(f.descriptor())}
    if f.degree > 4:
        doc["assume_irreducible"] = True
    if isinstance(spec, StandardSpec):
        doc["triple"] = list(spec.triple)
    else:
        doc["raw"] = {"k1": spec.k1, "k2": spec.k2, "mixing": [vector_to_json(r) for r in spec.mixing]}
    doc["gamma"] = [vector_to_json(b) for b in spec.gamma.basis]
    if spec.twisted:
        doc["cocycle"] = [{"lambda": scalar_to_json(lam), "S": [list(r) for r in s]}
                          for lam, s in spec.cocycle.base_points]
    return doc


def _dump(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def dumps_doc(doc: dict) -> str:
    """One top-level key per line, values in compact JSON."""
    lines = [f"  {_dump(k)}: {_dump(v)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def format_spec(spec: AlgebraSpec) -> str:
    return dumps_doc(spec_to_doc(spec))


def spec_from_doc(doc: Any) -> AlgebraSpec:
    if not isinstance(doc, dict):
        _fail("document", "expected a JSON object")
    known = {"field", "assume_irreducible", "triple", "raw", "gamma", "cocycle"}
    for k in doc:
        if k not in known:
            _fail(k, "unknown field")
    if "field" not in doc:
        _fail("field", "missing")
    fp = doc["field"]
    if not isinstance(fp, list) or not fp:
        _fail("field", "expected a nonempty list of rational coefficients")
    trust = doc.get("assume_irreducible", False)
    if not isinstance(trust, bool):
        _fail("assume_irreducible", "expected true or false")
    try:
        field = NumberField.of([_plain_rational(c, f"field[{i}]") for i, c in enumerate(fp)], trust)
    except DocumentError:
        raise
    except WittError as exc:
        _fail("field", f"reducible or unverifiable min_poly: {exc}")
    except (ValueError, TypeError) as exc:
        _fail("field", str(exc))
    if ("triple" in doc) == ("raw" in doc):
        _fail("triple", "give exactly one of 'triple' and 'raw'")
    if "triple" in doc:
        triple = doc["triple"]
        if not isinstance(triple, list) or len(triple) != 3 or any(
                isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in triple):
            _fail("triple", "expected three nonnegative integers")
        if sum(triple) == 0:
            _fail("triple", "l1 + l2 + l3 must be positive")
        n = triple[1] + triple[2]
    else:
        raw = doc["raw"]
        if not isinstance(raw, dict) or set(raw) - {"k1", "k2", "mixing"}:
            _fail("raw", "expected an object with k1, k2 and optional mixing")
        k1, k2 = raw.get("k1"), raw.get("k2")
        for name, v in (("k1", k1), ("k2", k2)):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                _fail(f"raw.{name}", "expected a nonnegative integer")
        if k1 + k2 == 0:
            _fail("raw", "k1 + k2 must be positive")
        n = k1 + k2
    gens = doc.get("gamma", [])
    if not isinstance(gens, list):
        _fail("gamma", "expected a list of generators")
    vecs = [vector_from_json(field, g, n, f"gamma[{i}]") for i, g in enumerate(gens)]
    gamma = Subgroup(vecs, field, n)
    cocycle = None
    if "cocycle" in doc:
        cocycle = _cocycle_from_json(field, doc["cocycle"], gamma.rank)
    try:
        if "triple" in doc:
            return StandardSpec(*triple, gamma, cocycle)
        mixing = raw.get("mixing", [[0] * k1 for _ in range(k2)])
        if not isinstance(mixing, list) or len(mixing) != k2:
            _fail("raw.mixing", f"expected {k2} rows")
        rows = [vector_from_json(field, r, k1, f"raw.mixing[{i}]") for i, r in enumerate(mixing)]
        return RawSpec(k1, k2, gamma, rows, cocycle)
    except DocumentError:
        raise
    except WittError as exc:
        _fail("gamma", str(exc))


def _plain_rational(x, path):
    if isinstance(x, (bool, float)) or not isinstance(x, (int, str)):
        _fail(path, f"expected an exact rational, got {x!r}")
    return x


def _cocycle_from_json(field: NumberField, x: Any, rank: int) -> Cocycle:
    if not isinstance(x, list):
        _fail("cocycle", "expected a list of base points")
    pts = []
    for i, bp in enumerate(x):
        path = f"cocycle[{i}]"
        if not isinstance(bp, dict) or set(bp) != {"lambda", "S"}:
            _fail(path, "expected an object with 'lambda' and 'S'")
        lam = scalar_from_json(field, bp["lambda"], f"{path}.lambda")
        s = bp["S"]
        if not isinstance(s, list) or len(s) != rank:
            _fail(f"{path}.S", f"expected a {rank}x{rank} integer matrix (rank of Gamma)")
        s = [_int_list(r, rank, f"{path}.S[{j}]") for j, r in enumerate(s)]
        pts.append((lam, s))
    try:
        return Cocycle(pts)
    except (ValueError, TypeError) as exc:
        _fail("cocycle", str(exc))


def _loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{what}: syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_spec(text: str) -> AlgebraSpec:
    return spec_from_doc(_loads(text, "spec"))


def read_spec(path: str) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


# -- elements

def _term_doc(spec: AlgebraSpec, mon: Monomial, c: Scalar) -> dict:
    return {"coeff": scalar_to_json(c), "m": list(mon.m), "alpha": vector_to_json(spec.grade_vector(mon.a))}


def element_to_doc(u: AlgebraElement) -> dict:
    return {"terms": [_term_doc(u.spec, mon, c) for mon, c in u.items()]}


def witt_to_doc(w: WittElement) -> dict:
    terms = []
    for i, mon, c in w.items():
        t = _term_doc(w.spec, mon, c)
        t["d"] = i
        terms.append(t)
    return {"terms": terms}


def _parse_terms(spec: AlgebraSpec, doc: Any, witt: bool, what: str):
    if not isinstance(doc, dict) or "terms" not in doc or set(doc) != {"terms"}:
        _fail(what, "expected an object with a 'terms' list")
    if not isinstance(doc["terms"], list):
        _fail(f"{what}.terms", "expected a list")
    f = spec.field
    out = []
    for k, t in enumerate(doc["terms"]):
        path = f"{what}.terms[{k}]"
        keys = {"coeff", "m", "alpha"} | ({"d"} if witt else set())
        if not isinstance(t, dict) or set(t) - keys or not {"coeff"} <= set(t):
            _fail(path, f"expected keys {sorted(keys)}")
        c = scalar_from_json(f, t["coeff"], f"{path}.coeff")
        m = _int_list(t.get("m", [0] * spec.n_vars), spec.n_vars, f"{path}.m")
        if any(x < 0 for x in m):
            _fail(f"{path}.m", "exponents must be nonnegative")
        alpha = vector_from_json(f, t.get("alpha", [0] * spec.grading_dim), spec.grading_dim, f"{path}.alpha")
        coords = spec.gamma.coordinates(alpha)
        if coords is None:
            _fail(f"{path}.alpha", "grade is not in Gamma")
        d = None
        if witt:
            d = t.get("d")
            if isinstance(d, bool) or not isinstance(d, int) or not 1 <= d <= spec.ell:
                _fail(f"{path}.d", f"expected a derivation index in 1..{spec.ell}")
        out.append((d, spec.term(c, m, coords=coords)))
    return out


def element_from_doc(spec: AlgebraSpec, doc: Any, what: str = "element") -> AlgebraElement:
    out = spec.zero()
    for _, t in _parse_terms(spec, doc, False, what):
        out = out + t
    return out


def witt_from_doc(spec: StandardSpec, doc: Any, what: str = "element") -> WittElement:
    if not isinstance(spec, StandardSpec):
        _fail(what, "Witt elements need a standard spec")
    cs = [spec.zero() for _ in range(spec.ell)]
    for d, t in _parse_terms(spec, doc, True, what):
        cs[d - 1] = cs[d - 1] + t
    return WittElement(spec, cs)


def is_witt_doc(doc: Any) -> bool:
    return isinstance(doc, dict) and isinstance(doc.get("terms"), list) and any(
        isinstance(t, dict) and "d" in t for t in doc["terms"])


def format_element(u: AlgebraElement | WittElement) -> str:
    doc = witt_to_doc(u) if isinstance(u, WittElement) else element_to_doc(u)
    return compact(doc) + "\n"


def compact(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(",", ":"))


def parse_json(text: str, what: str) -> Any:
    return _loads(text, what)


# -- group elements

def group_element_to_doc(g: BlockGroupElement) -> dict:
    return {"l2": g.l2, "l3": g.l3, "matrix": [vector_to_json(r) for r in g.matrix()]}


def group_element_from_doc(field: NumberField, doc: Any) -> BlockGroupElement:
    if not isinstance(doc, dict) or set(doc) != {"l2", "l3", "matrix"}:
        _fail("g", "expected an object with l2, l3 and matrix")
    l2, l3 = doc["l2"], doc["l3"]
    n = l2 + l3
    if not isinstance(doc["matrix"], list) or len(doc["matrix"]) != n:
        _fail("g.matrix", f"expected {n} rows")
    rows = [vector_from_json(field, r, n, f"g.matrix[{i}]") for i, r in enumerate(doc["matrix"])]
    try:
        return BlockGroupElement.from_matrix(rows, l2, l3, field)
    except (ValueError, ZeroDivisionError) as exc:
        _fail("g", str(exc))


# -- derivation labels

def format_derivation(der: Derivation, field: NumberField) -> str:
    if der.kind == "combination":
        return "combination:" + compact([scalar_to_json(field(c)) for c in der.coeffs])
    return f"{der.kind}:{der.index}"


def parse_derivation(text: str, field: NumberField) -> Derivation:
    kind, sep, rest = text.partition(":")
    if not sep:
        _fail("derivation", f"expected kind:index, got {text!r}")
    if kind == "combination":
        vals = _loads(rest, "derivation")
        if not isinstance(vals, list):
            _fail("derivation", "combination expects a JSON list of scalars")
        return Derivation.combination([scalar_from_json(field, v, f"derivation[{i}]") for i, v in enumerate(vals)])
    if kind not in ("down", "grading", "standard"):
        _fail("derivation", f"unknown kind {kind!r}")
    try:
        idx = int(rest)
    except ValueError:
        _fail("derivation", f"bad index {rest!r}")
    return Derivation(kind, idx)
