"""Command-line front end.

Exit codes: 0 success / EQUIVALENT / REACHED1 / certificate accepted;
1 INEQUIVALENT / STABLE_CANDIDATE / certificate rejected / selfcheck failure;
2 UNKNOWN / EXHAUSTED; 64 usage error; 65 invalid input data; 66 unreadable file.

Element, grade and group-element arguments accept either a path to a JSON
file or inline JSON (anything starting with ``{`` or ``[``).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence

from .classifier import (
    build_sigma,
    decide_isomorphic,
    standard_form,
    structure_key,
    verify_homomorphism,
)
from .comm_algebra import RawSpec, StandardSpec, apply_derivation
from .errors import WittError
from .serialization import (
    DocumentError,
    compact,
    element_from_doc,
    format_element,
    format_spec,
    group_element_from_doc,
    group_element_to_doc,
    parse_derivation,
    parse_json,
    parse_spec,
    vector_from_json,
    vector_to_json,
    witt_from_doc,
)
from .simplicity import (
    Exhausted,
    Reached1,
    format_certificate,
    ideal_closure_probe,
    parse_certificate,
    simplicity_certificate,
)
from .witt_lie import Truncation, bracket, root_space, truncated_root_space

EX_OK, EX_NEGATIVE, EX_UNKNOWN = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_NOINPUT = 64, 65, 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"{path}: {exc.strerror}") from None


def _load_arg(arg: str, what: str) -> Any:
    text = arg if arg.lstrip()[:1] in ("{", "[") else _read(arg)
    return parse_json(text, what)


def _spec(path: str):
    try:
        return parse_spec(_read(path))
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def _standard(path: str) -> StandardSpec:
    spec = _spec(path)
    if not isinstance(spec, StandardSpec):
        raise DocumentError(f"{path}: this command needs a spec with a 'triple' (run standardize first)")
    return spec


def _element(spec, arg: str, what: str):
    return element_from_doc(spec, _load_arg(arg, what), what)


def _witt(spec, arg: str, what: str):
    return witt_from_doc(spec, _load_arg(arg, what), what)


# -- commands

def cmd_mul(a, out) -> int:
    spec = _spec(a.spec)
    out.write(format_element(_element(spec, a.lhs, "lhs") * _element(spec, a.rhs, "rhs")))
    return EX_OK


def cmd_derive(a, out) -> int:
    spec = _spec(a.spec)
    der = parse_derivation(a.der, spec.field)
    out.write(format_element(apply_derivation(der, _element(spec, a.elem, "elem"))))
    return EX_OK


def cmd_bracket(a, out) -> int:
    spec = _standard(a.spec)
    out.write(format_element(bracket(_witt(spec, a.lhs, "lhs"), _witt(spec, a.rhs, "rhs"))))
    return EX_OK


def cmd_roots(a, out) -> int:
    spec = _standard(a.spec)
    beta = vector_from_json(spec.field, _load_arg(a.beta, "beta"), spec.grading_dim, "beta")
    basis = root_space(spec, beta)
    # independent check: the exact joint eigenspace on a window around beta
    support = [beta] if basis else []
    window = truncated_root_space(spec, beta, Truncation(a.degree, support)) if support else []
    if sorted(map(format_element, window)) != sorted(map(format_element, basis)):
        raise AssertionError("root space disagrees with the truncated eigenspace")
    out.write(f"ROOTS {'IN_GAMMA' if basis else 'NOT_IN_GAMMA'} dim={len(basis)}\n")
    for w in basis:
        out.write(format_element(w))
    return EX_OK


def cmd_cert(a, out) -> int:
    spec = _spec(a.spec)
    text = format_certificate(simplicity_certificate(_element(spec, a.elem, "elem")))
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(text)
    return EX_OK


def cmd_check_cert(a, out) -> int:
    spec = _spec(a.spec)
    try:
        cert = parse_certificate(_read(a.cert), spec)
    except DocumentError as exc:
        out.write(f"REJECTED {exc}\n")
        return EX_NEGATIVE
    result = cert.replay()
    if result == spec.one():
        out.write(f"ACCEPTED steps={len(cert)}\n")
        return EX_OK
    out.write("REJECTED replay ends at " + format_element(result))
    return EX_NEGATIVE


def cmd_closure(a, out) -> int:
    spec = _spec(a.spec)
    u = _element(spec, a.elem, "elem")
    ders = [parse_derivation(s, spec.field) for s in a.ders.split(",") if s]
    window_doc = _load_arg(a.window, "window") if a.window else []
    if not isinstance(window_doc, list):
        raise DocumentError("window: expected a list of grade vectors")
    window = [vector_from_json(spec.field, v, spec.grading_dim, f"window[{i}]") for i, v in enumerate(window_doc)]
    res = ideal_closure_probe(u, ders, a.degree, window, a.max_rounds)
    if isinstance(res, Reached1):
        out.write(f"REACHED1 rounds={res.rounds} dim={res.dimension}\n")
        return EX_OK
    if isinstance(res, Exhausted):
        out.write(f"EXHAUSTED rounds={res.rounds} dim={res.dimension}\n")
        return EX_UNKNOWN
    out.write(f"STABLE_CANDIDATE rounds={res.rounds} dim={len(res.basis)}\n")
    for b in res.basis:
        out.write(format_element(b))
    return EX_NEGATIVE


def cmd_standardize(a, out) -> int:
    spec = _spec(a.spec)
    if isinstance(spec, RawSpec):
        spec, _ = standard_form(spec)
    out.write(format_spec(spec))
    return EX_OK


def cmd_key(a, out) -> int:
    key = structure_key(_standard(a.spec))
    doc = {
        "triple": list(key.triple),
        "field": list(key.field),
        "invariants": dict(zip(("zrank", "slice_rank", "projection_rank"), key.invariants)),
        "representative": key.representative if not key.complete else [list(r) for r in key.representative],
    }
    out.write(compact(doc) + "\n")
    return EX_OK


def cmd_iso(a, out) -> int:
    s, s2 = _standard(a.spec1), _standard(a.spec2)
    res = decide_isomorphic(s, s2, a.budget)
    if res.name == "EQUIVALENT":
        out.write(f"EQUIVALENT method={res.method} verified={res.report.samples}\n")
        out.write(compact(group_element_to_doc(res.witness.g)) + "\n")
        return EX_OK
    if res.name == "INEQUIVALENT":
        out.write(f"INEQUIVALENT {res.reason} {compact(_plain(res.left))} {compact(_plain(res.right))}\n")
        return EX_NEGATIVE
    out.write(f"UNKNOWN tried={res.candidates_tried}\n")
    return EX_UNKNOWN


def _plain(x):
    return list(x) if isinstance(x, tuple) else x


def cmd_sigma(a, out) -> int:
    s, s2 = _standard(a.spec), _standard(a.target)
    g = group_element_from_doc(s.field, _load_arg(a.g, "g"))
    witness = build_sigma(g, s, s2)
    if a.elem:
        out.write(format_element(witness(_witt(s, a.elem, "elem"))))
    if a.verify is not None:
        if a.seed is None:
            raise UsageError("--verify needs an explicit --seed")
        rep = verify_homomorphism(witness, a.verify, a.seed)
        status = "UNTESTED" if rep.untested else ("PASS" if rep.passed else "FAIL")
        out.write(f"HOMOMORPHISM {status} samples={rep.samples}\n")
        if not rep.passed:
            u, v, lhs, rhs = rep.counterexample
            for w in (u, v, lhs, rhs):
                out.write(format_element(w))
            return EX_NEGATIVE
    return EX_OK


def cmd_selfcheck(a, out) -> int:
    from .selfcheck import run_selfcheck

    report, ok = run_selfcheck(a.seed, a.threads)
    out.write(report)
    return EX_OK if ok else EX_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wittkit", description="Exact Witt-type algebras: arithmetic, certificates, classification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("mul", cmd_mul, "product of two algebra elements")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)

    sp = add("derive", cmd_derive, "apply a derivation (standard:i, down:i, grading:j, combination:[...])")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--der", required=True)
    sp.add_argument("--elem", required=True)

    sp = add("bracket", cmd_bracket, "Lie bracket of two Witt elements")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)

    sp = add("roots", cmd_roots, "root space of a grade vector")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--degree", type=int, default=1, help="t-degree of the checking window")

    sp = add("cert", cmd_cert, "simplicity certificate for a nonzero element")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--elem", required=True)
    sp.add_argument("--out")

    sp = add("check-cert", cmd_check_cert, "replay a certificate file")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--cert", required=True)

    sp = add("closure", cmd_closure, "window-truncated ideal closure probe")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--elem", required=True)
    sp.add_argument("--ders", required=True, help="comma-separated derivation labels")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--window", help="JSON list of grade vectors")
    sp.add_argument("--max-rounds", type=int, default=64)

    sp = add("standardize", cmd_standardize, "print the canonical standard form of a spec")
    sp.add_argument("--spec", required=True)

    sp = add("key", cmd_key, "structure key of a standard spec")
    sp.add_argument("--spec", required=True)

    sp = add("iso", cmd_iso, "decide isomorphism of two standard specs")
    sp.add_argument("spec1")
    sp.add_argument("spec2")
    sp.add_argument("--budget", type=int, default=20000)

    sp = add("sigma", cmd_sigma, "apply or verify the isomorphism induced by g")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--elem")
    sp.add_argument("--verify", type=int, metavar="N")
    sp.add_argument("--seed", type=int)

    sp = add("selfcheck", cmd_selfcheck, "run the deterministic property suites")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--threads", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except UsageError as exc:
        sys.stderr.write(f"wittkit: usage: {exc}\n")
        return EX_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"wittkit: {exc}\n")
        return EX_NOINPUT
    except (WittError, ValueError, IndexError, TypeError, ZeroDivisionError) as exc:
        sys.stderr.write(f"wittkit: error: {exc}\n")
        return EX_DATAERR


def entry() -> None:  # console script
    sys.exit(main())
