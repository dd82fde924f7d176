"""Command-line front end.

Exit codes: 0 for success or a true verdict, 1 for a mathematical "false"
(invalid automorphism, failed axiom, infeasible decomposition), 2 for usage
and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Sequence

from . import __version__
from .algebra import PRESETS, AlgebraError, preset
from .derivations import (
    Derivation,
    DerivationError,
    apply_derivation,
    center_probe,
    check_embedding,
    decompose,
    inner,
    torus_embed,
)
from .hopf import antipode, coproduct, rejected_antipode_images, verify_hopf_axioms
from .morphisms import (
    AutParams,
    apply,
    classify_box,
    compose,
    expected_box,
    is_hopf_automorphism,
    respects_relations,
)
from .parser import ParseError, parse, parse_scalar, render
from .reproduce import CHECKS, reproduce

OK, FALSE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def output_schema() -> dict:
    """JSON schema shipped with the package for ``--format json`` output."""
    text = resources.files("uqsl3").joinpath("data/cli_output.schema.json").read_text()
    return json.loads(text)


def _emit(args, payload: dict, text: str | list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text if isinstance(text, str) else "\n".join(text))


def _elem(x) -> dict:
    return {"text": render(x), "value": x.to_json()}


# ---------------------------------------------------------------- algebra


def cmd_nf(args) -> int:
    x = parse(args.expr, preset(args.algebra))
    _emit(args, {"command": "nf", "algebra": args.algebra, "result": _elem(x)}, render(x))
    return OK


def cmd_mul(args) -> int:
    sig = preset(args.algebra)
    x = parse(args.left, sig) * parse(args.right, sig)
    _emit(args, {"command": "mul", "algebra": args.algebra, "result": _elem(x)}, render(x))
    return OK


def cmd_relcheck(args) -> int:
    sig = preset(args.algebra)
    rels = {}
    for name, raw in sig.relations():
        x = sig.zero()
        for c, word in raw:
            x = x + sig.word_element(word).scale(c)
        rels[name] = render(x)
    ok = all(v == "0" for v in rels.values())
    lines = [f"{name}: {v}" for name, v in rels.items()]
    lines.append("all relations hold" if ok else "some relations fail")
    _emit(args, {"command": "relcheck", "algebra": args.algebra, "ok": ok, "relations": rels}, lines)
    return OK if ok else FALSE


def _hopf_algebra(args) -> str:
    return "UcheckGE0" if args.algebra is None else args.algebra


def cmd_coproduct(args) -> int:
    name = _hopf_algebra(args)
    t = coproduct(parse(args.expr, preset(name)))
    _emit(args, {"command": "coproduct", "algebra": name, "result": {"text": str(t), "value": t.to_json()}}, str(t))
    return OK


def cmd_antipode(args) -> int:
    name = _hopf_algebra(args)
    x = antipode(parse(args.expr, preset(name)))
    _emit(args, {"command": "antipode", "algebra": name, "result": _elem(x)}, render(x))
    return OK


def cmd_hopf_axioms(args) -> int:
    name = _hopf_algebra(args)
    images = rejected_antipode_images() if args.rejected_antipode else None
    if images is not None and name != "UcheckGE0":
        raise UsageError("--rejected-antipode applies to UcheckGE0 only")
    rep = verify_hopf_axioms(args.bound or 3, preset(name), images, seed=args.seed)
    text = f"ok: {rep.checked} checks" if rep.ok else f"fail: {rep.failure}"
    payload = {"command": "hopf-axioms", "algebra": name, "ok": rep.ok, "checked": rep.checked}
    if not rep.ok:
        payload["failure"] = rep.failure
    _emit(args, payload, text)
    return OK if rep.ok else FALSE


# ----------------------------------------------------------- automorphisms


def _params(args) -> AutParams:
    return AutParams(
        a1=parse_scalar(args.a1),
        a2=parse_scalar(args.a2),
        b1=parse_scalar(args.b1),
        b2=parse_scalar(args.b2),
        a=args.a,
        b=args.b,
        c=args.c,
        d=args.d,
        swap=args.swap,
    )


def _parse_spec(text: str) -> AutParams:
    """``a=1,b=0,c=0,d=-1,b1=r`` style parameter list."""
    fields: dict = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep:
            raise UsageError(f"expected key=value, got {item!r}")
        if key in ("a", "b", "c", "d"):
            try:
                fields[key] = int(val)
            except ValueError:
                raise UsageError(f"{key} must be an integer, got {val!r}") from None
        elif key in ("a1", "a2", "b1", "b2"):
            fields[key] = parse_scalar(val)
        elif key == "swap":
            fields[key] = val.strip().lower() in ("1", "true", "yes")
        else:
            raise UsageError(f"unknown parameter {key!r}")
    return AutParams(**fields)


def _aut_report(p: AutParams, verdict, command: str) -> dict:
    out = {
        "command": command,
        "params": p.to_json(),
        "valid": bool(verdict),
        "constraints": p.constraints(),
    }
    if verdict.witness:
        out["witness"] = verdict.witness
    return out


def cmd_aut_check(args) -> int:
    p = _params(args)
    v = respects_relations(p)
    _emit(args, _aut_report(p, v, "aut check"), "valid" if v else f"invalid: {v.witness}")
    return OK if v else FALSE


def cmd_aut_hopf_check(args) -> int:
    p = _params(args)
    v = respects_relations(p)
    if v:
        v = is_hopf_automorphism(p)
    _emit(args, _aut_report(p, v, "aut hopf-check"), "valid" if v else f"invalid: {v.witness}")
    return OK if v else FALSE


def cmd_aut_classify(args) -> int:
    bound = 1 if args.bound is None else args.bound
    got = classify_box(bound)
    ok = got == expected_box(bound)
    lines = [f"({a}, {b}, {c}, {d}){' swap' if sw else ''}" for a, b, c, d, sw in got]
    lines.append(f"{len(got)} tuples; {'matches' if ok else 'DIFFERS FROM'} b = c, a + b + d = 0")
    payload = {
        "command": "aut classify",
        "bound": bound,
        "count": len(got),
        "tuples": [{"a": a, "b": b, "c": c, "d": d, "swap": sw} for a, b, c, d, sw in got],
        "matches_constraints": ok,
    }
    _emit(args, payload, lines)
    return OK if ok else FALSE


def cmd_aut_compose(args) -> int:
    p, q = _parse_spec(args.p), _parse_spec(args.q)
    for name, x in (("first", p), ("second", q)):
        if not x.is_valid():
            raise UsageError(f"{name} parameter set is not a valid automorphism")
    pq = compose(p, q)
    sig = preset("UcheckGE0")
    agrees = all(apply(pq, sig.gen(g)) == apply(p, apply(q, sig.gen(g))) for g in ("K1", "K2", "E1", "E2"))
    text = ", ".join(f"{k}={v}" for k, v in pq.to_json().items() if k != "swap")
    _emit(args, {"command": "aut compose", "params": pq.to_json(), "agrees": agrees}, text)
    return OK if agrees else FALSE


# ------------------------------------------------------------- derivations


def _derivation(args) -> Derivation:
    sig = preset("Uplus")
    if args.inner is not None:
        if args.e1 is not None or args.e2 is not None:
            raise UsageError("give either --inner or --e1/--e2, not both")
        return inner(parse(args.inner, sig))
    e1 = parse(args.e1 or "0", sig)
    e2 = parse(args.e2 or "0", sig)
    return Derivation(e1, e2)


def cmd_der_apply(args) -> int:
    D = _derivation(args)
    if not D.is_well_defined():
        raise UsageError("the images do not define a derivation (Serre relations not preserved)")
    x = apply_derivation(D, parse(args.expr, preset("Uplus")))
    _emit(args, {"command": "der apply", "result": _elem(x)}, render(x))
    return OK


def cmd_der_decompose(args) -> int:
    D = _derivation(args)
    if not D.is_well_defined():
        raise UsageError("the images do not define a derivation (Serre relations not preserved)")
    try:
        dec = decompose(D, args.bound)
    except DerivationError as e:
        _emit(args, {"command": "der decompose", "ok": False, "failure": str(e)}, f"infeasible: {e}")
        return FALSE
    payload = {
        "command": "der decompose",
        "ok": True,
        "t": _elem(dec.t),
        "mu1": dec.mu1.to_text(),
        "mu2": dec.mu2.to_text(),
        "bound": dec.bound,
        "kernel_dim": dec.kernel_dim,
    }
    text = [f"t = {render(dec.t)}", f"mu1 = {dec.mu1.to_text()}", f"mu2 = {dec.mu2.to_text()}"]
    _emit(args, payload, text)
    return OK


def cmd_der_center(args) -> int:
    name = args.algebra or "Uplus"
    if name not in ("Uplus", "Q3"):
        raise UsageError("der center supports --algebra Uplus or Q3")
    bound = args.bound if args.bound is not None else (4 if name == "Uplus" else 3)
    basis = center_probe(bound, name)
    only = all(x.is_scalar() for x in basis)
    payload = {
        "command": "der center",
        "algebra": name,
        "bound": bound,
        "basis": [_elem(x) for x in basis],
        "only_scalars": only,
    }
    lines = [render(x) for x in basis] + [f"center within bound {bound}: {'scalars only' if only else 'non-scalar elements found'}"]
    _emit(args, payload, lines)
    return OK if only else FALSE


def cmd_der_embed(args) -> int:
    if args.expr is None:
        rep = check_embedding()
        payload = {"command": "der embed", "ok": rep.ok, "checks": rep.details}
        if not rep.ok:
            payload["failure"] = rep.failure
        lines = [f"{k}: {v}" for k, v in rep.details.items()]
        lines.append("embedding ok" if rep.ok else f"fail: {rep.failure}")
        _emit(args, payload, lines)
        return OK if rep.ok else FALSE
    name = args.algebra or "Uplus"
    y = torus_embed(parse(args.expr, preset(name)))
    _emit(args, {"command": "der embed", "ok": True, "result": _elem(y)}, render(y))
    return OK


def cmd_reproduce(args) -> int:
    ids = list(CHECKS) if args.ident == "all" else [args.ident]
    if any(i not in CHECKS for i in ids):
        raise UsageError(f"unknown theorem identifier {args.ident!r}; choose from all, {', '.join(CHECKS)}")
    outcomes = [reproduce(i, args.seed) for i in ids]
    ok = all(o.ok for o in outcomes)
    payload = {"command": "reproduce", "ok": ok, "results": [o.to_json() for o in outcomes]}
    _emit(args, payload, [o.line() for o in outcomes])
    return OK if ok else FALSE


# ------------------------------------------------------------------ parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--algebra", choices=PRESETS, default=None, help="algebra preset")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--bound", type=int, default=None, help="degree or box bound")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return p


def _aut_flags(p: argparse.ArgumentParser) -> None:
    for name in ("a", "b", "c", "d"):
        p.add_argument(f"--{name}", type=int, default=0)
    for name in ("a1", "a2", "b1", "b2"):
        p.add_argument(f"--{name}", default="1", help="nonzero scalar expression")
    p.add_argument("--swap", action="store_true", help="exchange the indices 1 and 2")


def _der_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--e1", help="image of E1")
    p.add_argument("--e2", help="image of E2")
    p.add_argument("--inner", metavar="T", help="use the inner derivation ad_T")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = argparse.ArgumentParser(prog="uqsl3", description="Exact computations in two-parameter quantum sl3.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nf, default_algebra="Uplus")

    p = sub.add_parser("mul", parents=[common], help="product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_mul, default_algebra="Uplus")

    p = sub.add_parser("relcheck", parents=[common], help="normalize every defining relation")
    p.set_defaults(func=cmd_relcheck, default_algebra="Uplus")

    p = sub.add_parser("coproduct", parents=[common], help="coproduct of an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("antipode", parents=[common], help="antipode of an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("hopf-axioms", parents=[common], help="verify the Hopf axioms up to --bound")
    p.add_argument("--rejected-antipode", action="store_true", help="use the rejected antipode candidate (fails the axioms)")
    p.set_defaults(func=cmd_hopf_axioms)

    aut = sub.add_parser("aut", help="automorphisms of the augmented algebra")
    asub = aut.add_subparsers(dest="aut_command", required=True)
    p = asub.add_parser("check", parents=[common], help="does the candidate respect every relation?")
    _aut_flags(p)
    p.set_defaults(func=cmd_aut_check)
    p = asub.add_parser("hopf-check", parents=[common], help="is the candidate a Hopf automorphism?")
    _aut_flags(p)
    p.set_defaults(func=cmd_aut_hopf_check)
    p = asub.add_parser("classify", parents=[common], help="brute-force classification in a box")
    p.set_defaults(func=cmd_aut_classify)
    p = asub.add_parser("compose", parents=[common], help="compose two parameter sets (Q applied first)")
    p.add_argument("p", metavar="P", help="e.g. a=1,b=0,c=0,d=-1,b1=r")
    p.add_argument("q", metavar="Q")
    p.set_defaults(func=cmd_aut_compose)

    der = sub.add_parser("der", help="derivations of U+")
    dsub = der.add_subparsers(dest="der_command", required=True)
    p = dsub.add_parser("apply", parents=[common], help="apply a derivation to an expression")
    _der_flags(p)
    p.add_argument("expr")
    p.set_defaults(func=cmd_der_apply)
    p = dsub.add_parser("decompose", parents=[common], help="write D = ad_t + mu1 D1 + mu2 D2")
    _der_flags(p)
    p.set_defaults(func=cmd_der_decompose)
    p = dsub.add_parser("center", parents=[common], help="probe the center within a bound")
    p.set_defaults(func=cmd_der_center)
    p = dsub.add_parser("embed", parents=[common], help="quantum torus embedding")
    p.add_argument("expr", nargs="?")
    p.set_defaults(func=cmd_der_embed)

    p = sub.add_parser("reproduce", parents=[common], help="run the scripted check for a theorem")
    p.add_argument("ident", metavar="ID", help=f"all, {', '.join(CHECKS)}")
    p.set_defaults(func=cmd_reproduce)
    return top


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    default = getattr(args, "default_algebra", None)
    if args.algebra is None and default is not None:
        args.algebra = default
    try:
        return args.func(args)
    except (ParseError, UsageError, AlgebraError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
