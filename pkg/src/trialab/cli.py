"""``trialab`` command line.

Exit codes: 0 when every check passes or a construction succeeds, 1 when
violations are found, 2 for input errors (bad files, failed hypotheses).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import crossed as cx
from . import io
from .algebra import (check_morphism, check_structure, direct_sum, opposite_triassociative, quotient,
                      swap_ternary_orientation)
from .errors import PreconditionError, TrialabError
from .functors import T_VARIANTS, t_from_leibniz, t_from_triassoc, ternary_from_assoc_averaging
from .linalg import format_scalar, to_scalar
from .operators import (OPERATOR_TAGS, OperatorKind, check_operator, derive_from_operator, rb_iterated_vs_ternary,
                        search_operators)
from .report import ViolationReport


def _params(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise TrialabError(f"--param expects name=value, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def _load(args, path, kind):
    return io.load_as(path, kind, _params(getattr(args, "param", None)))


def _report(args, rep: ViolationReport) -> int:
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, ensure_ascii=False))
    else:
        print("\n".join(rep.lines()))
    return 0 if rep.ok else 1


def _emit(args, obj, note=None) -> int:
    text = io.dumps(obj, note)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _flags(args, values: dict) -> int:
    if args.json:
        print(json.dumps(values, indent=2))
    else:
        for k, v in values.items():
            print(f"{k}\t{str(v).lower()}")
    return 0 if all(values.values()) else 1


def _operator(args) -> OperatorKind:
    return OperatorKind.parse(args.operator, args.weight)


# check -----------------------------------------------------------------------

def cmd_check_structure(args):
    return _report(args, check_structure(_load(args, args.algebra, "algebra")))


def cmd_check_operator(args):
    a = _load(args, args.algebra, "algebra")
    return _report(args, check_operator(a, _load(args, args.map, "map"), _operator(args)))


def cmd_check_morphism(args):
    f = _load(args, args.map, "map")
    return _report(args, check_morphism(f, _load(args, args.src, "algebra"), _load(args, args.dst, "algebra")))


def cmd_check_action(args):
    return _report(args, cx.check_action(_load(args, args.action, "action")))


def cmd_check_cm(args):
    return _report(args, cx.check_crossed_module(_load(args, args.cm, "crossed-module")))


def cmd_check_cm_morphism(args):
    rep = cx.check_crossed_morphism(_load(args, args.alpha, "map"), _load(args, args.beta, "map"),
                                    _load(args, args.src, "crossed-module"), _load(args, args.dst, "crossed-module"))
    return _report(args, rep)


# construct / derive / functor --------------------------------------------------

def cmd_quotient(args):
    q, proj = quotient(_load(args, args.algebra, "algebra"), _load(args, args.ideal, "subspace"))
    if args.projection:
        io.save(proj, args.projection)
    return _emit(args, q)


def cmd_direct_sum(args):
    return _emit(args, direct_sum(_load(args, args.a, "algebra"), _load(args, args.b, "algebra")))


def cmd_semidirect(args):
    act = _load(args, args.action, "action")
    rep = cx.check_action(act)
    if not rep.ok:
        raise PreconditionError("the action is not valid", rep)
    return _emit(args, cx.semidirect(act))


def cmd_from_ideal(args):
    return _emit(args, cx.crossed_from_ideal(_load(args, args.algebra, "algebra"), _load(args, args.ideal, "subspace")))


def cmd_derive(args):
    a = _load(args, args.algebra, "algebra")
    return _emit(args, derive_from_operator(a, _load(args, args.map, "map"), _operator(args)))


def cmd_functor(args):
    a = _load(args, args.algebra, "algebra")
    if args.which == "t-tri":
        out = t_from_triassoc(a, args.variant)
    elif args.which == "t-leibniz":
        out = t_from_leibniz(a)
    elif args.which == "swap":
        out = swap_ternary_orientation(a)
    elif args.which == "opposite":
        out = opposite_triassociative(a)
    else:
        if not args.beta:
            raise TrialabError("assoc-averaging needs --beta MAP")
        out = ternary_from_assoc_averaging(a, _load(args, args.beta, "map"))
    return _emit(args, out)


def cmd_induce(args):
    cm = _load(args, args.cm, "crossed-module")
    if args.source == "triassoc":
        return _emit(args, cx.induce_ternary_cm_from_triassoc(cm))
    return _emit(args, cx.induce_ternary_cm_from_leibniz(cm))


def cmd_twist_rb(args):
    doc = io.load(args.input, _params(args.param))
    r_acted, r_acting = _load(args, args.r_acted, "map"), _load(args, args.r_acting, "map")
    if doc.type == "crossed-module":
        first, second = cx.rb_twist_leibniz_cm(doc.payload, r_acted, r_acting, args.weight or 0)
        if args.ternary_output:
            io.save(second, args.ternary_output)
        return _emit(args, first)
    if doc.type == "action":
        if args.weight not in (None, "0"):
            raise TrialabError("Rota-Baxter actions of ternary brackets are weight zero")
        return _emit(args, cx.rb_twist_ternary_action(doc.payload, r_acted, r_acting))
    raise TrialabError(f"{args.input}: expected a Leibniz crossed module or a ternary action, got a {doc.type}")


def cmd_twist_averaging(args):
    cm = _load(args, args.cm, "crossed-module")
    return _emit(args, cx.averaging_twist_triassoc_cm(cm, _load(args, args.b_acted, "map"),
                                                      _load(args, args.b_acting, "map")))


# prop / search -------------------------------------------------------------------

def cmd_prop(args):
    which = args.which
    if which == "shift":
        return _report(args, cx.shift_morphism_check(_load(args, args.input, "crossed-module")))
    if which == "semidirect-maps":
        return _report(args, cx.semidirect_morphism_maps(_load(args, args.input, "crossed-module")))
    if which == "cm-properties":
        p = cx.crossed_module_properties(_load(args, args.input, "crossed-module"))
        return _flags(args, {"ker_in_ann": p.ker_in_ann, "image_is_ideal": p.image_is_ideal,
                             "image_acts_trivially_on_ann": p.image_acts_trivially_on_ann})
    if which == "rb-equality":
        if not args.map:
            raise TrialabError("rb-equality needs --map R")
        ok = rb_iterated_vs_ternary(_load(args, args.input, "algebra"), _load(args, args.map, "map"), args.weight or 0)
        return _flags(args, {"equal": ok})
    return _flags(args, {"equal": cx.functor_semidirect_compat(_load(args, args.input, "action"))})


def cmd_search(args):
    a = _load(args, args.algebra, "algebra")
    try:
        grid = [to_scalar(g) for g in args.grid.split(",") if g.strip()]
    except ValueError:
        raise TrialabError(f"bad --grid {args.grid!r}: expected comma-separated rationals") from None
    found = search_operators(a, OperatorKind.parse(args.kind, args.weight), grid)
    if args.json:
        print(json.dumps([io.to_document(m) for m in found], indent=2))
    else:
        for m in found:
            rows = "; ".join(" ".join(format_scalar(x) for x in r) for r in m.entries)
            print(f"FOUND\t[{rows}]")
        print(f"TOTAL\t{len(found)}")
    return 0


# parser ----------------------------------------------------------------------------

def _common(p, output=False):
    p.add_argument("--json", action="store_true", help="structured JSON report")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="value for a symbolic map parameter")
    if output:
        p.add_argument("-o", "--output", metavar="PATH", help="write the result here instead of stdout")


def _operator_flags(p, name="--operator"):
    p.add_argument(name, dest="operator" if name == "--operator" else "kind", required=True, choices=OPERATOR_TAGS)
    p.add_argument("--weight", metavar="P/Q", help="Rota-Baxter weight (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trialab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run an identity checker").add_subparsers(dest="what", required=True)
    p = check.add_parser("structure", help="axioms of the algebra's kind")
    p.add_argument("algebra")
    p.set_defaults(fn=cmd_check_structure)
    p = check.add_parser("operator", help="operator identity")
    p.add_argument("algebra")
    p.add_argument("map")
    _operator_flags(p)
    p.set_defaults(fn=cmd_check_operator)
    p = check.add_parser("morphism", help="MAP is a morphism SRC -> DST")
    for n in ("map", "src", "dst"):
        p.add_argument(n)
    p.set_defaults(fn=cmd_check_morphism)
    p = check.add_parser("action", help="action axioms via the semidirect product")
    p.add_argument("action")
    p.set_defaults(fn=cmd_check_action)
    p = check.add_parser("crossed-module", help="crossed module conditions")
    p.add_argument("cm")
    p.set_defaults(fn=cmd_check_cm)
    p = check.add_parser("crossed-morphism", help="(ALPHA, BETA) between crossed modules")
    for n in ("alpha", "beta", "src", "dst"):
        p.add_argument(n)
    p.set_defaults(fn=cmd_check_cm_morphism)
    for p in check.choices.values():
        _common(p)

    cons = sub.add_parser("construct", help="build new algebras").add_subparsers(dest="what", required=True)
    p = cons.add_parser("quotient")
    p.add_argument("algebra")
    p.add_argument("ideal")
    p.add_argument("--projection", metavar="PATH", help="also write the projection map")
    p.set_defaults(fn=cmd_quotient)
    p = cons.add_parser("direct-sum")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_direct_sum)
    p = cons.add_parser("semidirect")
    p.add_argument("action")
    p.set_defaults(fn=cmd_semidirect)
    p = cons.add_parser("from-ideal", help="crossed module of an ideal inclusion")
    p.add_argument("algebra")
    p.add_argument("ideal")
    p.set_defaults(fn=cmd_from_ideal)
    for p in cons.choices.values():
        _common(p, output=True)

    p = sub.add_parser("derive", help="algebra deformed by an operator")
    p.add_argument("algebra")
    p.add_argument("map")
    _operator_flags(p)
    _common(p, output=True)
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("functor", help="constructions into ternary Leibniz algebras")
    p.add_argument("which", choices=("t-tri", "t-leibniz", "swap", "opposite", "assoc-averaging"))
    p.add_argument("algebra")
    p.add_argument("--variant", choices=T_VARIANTS, default="main")
    p.add_argument("--beta", metavar="MAP", help="averaging operator for assoc-averaging")
    _common(p, output=True)
    p.set_defaults(fn=cmd_functor)

    p = sub.add_parser("induce", help="induced ternary crossed module")
    p.add_argument("target", choices=("ternary-cm",))
    p.add_argument("cm")
    p.add_argument("--from", dest="source", required=True, choices=("triassoc", "leibniz"))
    _common(p, output=True)
    p.set_defaults(fn=cmd_induce)

    tw = sub.add_parser("twist", help="twisted crossed modules and actions").add_subparsers(dest="what", required=True)
    p = tw.add_parser("rb", help="Leibniz crossed module or ternary action twisted by Rota-Baxter maps")
    p.add_argument("input")
    p.add_argument("r_acted")
    p.add_argument("r_acting")
    p.add_argument("--weight", metavar="P/Q")
    p.add_argument("--ternary-output", metavar="PATH", help="also write the induced ternary crossed module")
    p.set_defaults(fn=cmd_twist_rb)
    p = tw.add_parser("averaging", help="triassociative crossed module twisted by averaging maps")
    p.add_argument("cm")
    p.add_argument("b_acted")
    p.add_argument("b_acting")
    p.set_defaults(fn=cmd_twist_averaging)
    for p in tw.choices.values():
        _common(p, output=True)

    p = sub.add_parser("prop", help="structural propositions")
    p.add_argument("which", choices=("shift", "semidirect-maps", "cm-properties", "rb-equality", "t-semidirect"))
    p.add_argument("input")
    p.add_argument("--map", metavar="R", help="Rota-Baxter map for rb-equality")
    p.add_argument("--weight", metavar="P/Q")
    _common(p)
    p.set_defaults(fn=cmd_prop)

    p = sub.add_parser("search", help="grid search")
    p.add_argument("target", choices=("operators",))
    p.add_argument("algebra")
    _operator_flags(p, "--kind")
    p.add_argument("--grid", default="-1,0,1", help="comma-separated entry values")
    _common(p)
    p.set_defaults(fn=cmd_search)
    return parser


def _join_negative_values(argv: list) -> list:
    # "--grid -1,0,1" would otherwise read the value as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--weight"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.fn(args)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.report is not None:
            for line in e.report.lines():
                print(line, file=sys.stderr)
        return 2
    except (TrialabError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
