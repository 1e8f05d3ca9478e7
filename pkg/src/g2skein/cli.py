"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 the engine got
stuck or could not decide (the offending object is printed as JSON).

>>> run(["dims"])
1111:4 1212:3 2222:5
0
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .qalg import LaurentPoly, RatFunc
from .skein import Report, Stuck, Undecided, default_registry, evaluate_closed, rule_table, verify_relations
from .web import Web, WebError, WebSum

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _poly_json(p: LaurentPoly) -> dict[str, str]:
    return {str(e): str(c) for e, c in p}


def _value_json(v: RatFunc, q1: bool) -> dict:
    out = {"text": str(v), "num": _poly_json(v.num), "den": _poly_json(v.den)}
    if v.is_laurent():
        out["laurent"] = _poly_json(v.as_laurent())
    if q1:
        out["q1"] = str(v.eval_at(1))
    return out


def _emit_value(v: RatFunc, args) -> None:
    data = _value_json(v, args.q1)
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(data["q1"] if args.q1 else data["text"])


def _parse_colors(text: str) -> tuple[int, ...]:
    try:
        cols = tuple(int(c) for c in text.split(",") if c.strip())
    except ValueError:
        raise InputError(f"bad colors {text!r}") from None
    if not cols or any(c not in (1, 2) for c in cols):
        raise InputError(f"colors must be a comma-separated list of 1 and 2, got {text!r}")
    return cols


# -- commands ------------------------------------------------------------------------------


def cmd_eval(args) -> int:
    try:
        with open(args.web) as fh:
            w = Web.from_json(fh.read())
    except OSError as e:
        raise InputError(str(e)) from None
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"invalid web JSON: {e}") from None
    if not w.is_closed:
        raise InputError(f"web has boundary coloring {w.coloring}; only closed webs evaluate to scalars")
    _emit_value(evaluate_closed(w), args)
    return EXIT_OK


def cmd_invariant(args) -> int:
    from .braid import BraidWord, invariant

    try:
        b = BraidWord.parse(args.braid, _parse_colors(args.colors))
        if b.top_colors() != b.colors:
            raise ValueError("colors must be constant along each component of the closure")
    except ValueError as e:
        raise InputError(str(e)) from None
    _emit_value(invariant(b), args)
    return EXIT_OK


def _suite_torus(nmax: int) -> Report:
    from .braid import invariant, torus_reference, torus_word
    from .rep import cr_power, trace
    from .skein import run_case

    rep = Report()
    space = {(1, 1): ("End11", -12), (2, 2): ("End22", -24), (1, 2): ("Hom12", 0)}
    for colors, (sp, k) in space.items():
        for n in range(nmax + 1):
            if colors == (1, 2) and n % 2:
                continue

            def case(n=n, colors=colors, sp=sp, k=k):
                ref = torus_reference(n, colors)
                direct = invariant(torus_word(n, colors))
                spectral = trace(cr_power(sp, n)) * RatFunc.q(k * n)
                return direct == ref and spectral == ref

            run_case(rep, f"T(2,{n}) colors {colors}", case)
    return rep


def _suite_projectors() -> Report:
    from .rep import choose_reading, verify_cabled, verify_projectors, verify_spectral_vs_crossing

    reading, results = choose_reading()
    rep = Report()
    rep.add(f"ambiguous factor: reading '{reading}'", "pass", json.dumps(results, sort_keys=True))
    rep.extend(verify_projectors(reading))
    rep.extend(verify_spectral_vs_crossing(reading))
    rep.extend(verify_cabled(reading))
    return rep


def cmd_verify(args) -> int:
    if args.suite == "relations":
        rep = verify_relations()
    elif args.suite == "reidemeister":
        from .braid import reidemeister_suite

        rep = reidemeister_suite()
    elif args.suite == "projectors":
        rep = _suite_projectors()
    else:
        rep = _suite_torus(args.nmax)
    if args.json:
        print(json.dumps({"suite": args.suite, **rep.to_json()}, sort_keys=True))
    else:
        print(rep.text())
        print(f"{args.suite}: {'ok' if rep.ok else 'FAILED'}")
    if rep.ok:
        return EXIT_OK
    if any(c.status == "fail" for c in rep.cases):
        return EXIT_FAIL
    return EXIT_ENGINE


def cmd_tables(args) -> int:
    if args.rules:
        if args.json:
            rows = [
                {"name": r.name, "group": r.group, "pattern": r.signature(), "coefficients": list(r.coeff_strings)}
                for r in rule_table()
            ]
            print(json.dumps(rows, sort_keys=True))
        else:
            print(rule_table().dump())
    else:
        from .rep import LABELS, entry

        rows = []
        for space, labels in LABELS.items():
            for lab in labels:
                e = entry(space, lab)
                coeffs = [str(c) for c in e.values]
                rows.append({"space": space, "label": lab, "printed": list(e.coefficients), "expanded": coeffs})
        if args.json:
            print(json.dumps(rows, sort_keys=True))
        else:
            for r in rows:
                printed = ", ".join(r["printed"]) or "(derived by conjugation)"
                print(f"{r['space']}[{r['label']}] | {printed} | {', '.join(r['expanded'])}")
    return EXIT_OK


def cmd_dims(args) -> int:
    sizes = default_registry().sizes()
    if args.json:
        print(json.dumps({"".join(map(str, s)): n for s, n in sizes.items()}, sort_keys=True))
    else:
        print(" ".join(f"{''.join(map(str, s))}:{n}" for s, n in sizes.items()))
    return EXIT_OK


# -- entry points ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--q1", action="store_true", help="specialize values at q=1")
    p = argparse.ArgumentParser(prog="g2skein", description="G2 web evaluation and link invariants")
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("eval", parents=[common], help="evaluate a closed web given as JSON")
    e.add_argument("--web", required=True, metavar="FILE")
    e.set_defaults(func=cmd_eval)
    i = sub.add_parser("invariant", parents=[common], help="normalized invariant of a braid closure")
    i.add_argument("--braid", required=True, help='signed generators, e.g. "1 1 -2"')
    i.add_argument("--colors", required=True, help="strand colors, e.g. 1,1")
    i.set_defaults(func=cmd_invariant)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=["relations", "reidemeister", "projectors", "torus"])
    v.add_argument("--nmax", type=int, default=6, help="largest crossing count for the torus suite")
    v.set_defaults(func=cmd_verify)
    t = sub.add_parser("tables", parents=[common], help="dump the rule or projector tables")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--rules", action="store_true")
    g.add_argument("--projectors", action="store_true")
    t.set_defaults(func=cmd_tables)
    d = sub.add_parser("dims", parents=[common], help="sizes of the registered four-point bases")
    d.set_defaults(func=cmd_dims)
    return p


def _serialize(obj) -> str:
    if isinstance(obj, Web):
        return obj.dumps()
    if isinstance(obj, WebSum):
        return json.dumps([{"coeff": str(c), "web": w.to_json()} for w, c in obj], sort_keys=True)
    return json.dumps(str(obj))


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if getattr(args, "nmax", 0) < 0:
        print("error: --nmax must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, WebError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (Stuck, Undecided) as e:
        print(f"engine: {e}", file=sys.stderr)
        obj = getattr(e, "web", None) or getattr(e, "obj", None)
        if obj is not None:
            print(_serialize(obj), file=sys.stderr)
        return EXIT_ENGINE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
