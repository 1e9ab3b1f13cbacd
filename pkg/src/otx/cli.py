"""``otx`` command line.

Exit status: 0 on success or a true answer, 1 on a false answer (inequivalent,
identity violated), 2 on usage errors, 3 when a machine cannot be loaded or
evaluated.
"""

from __future__ import annotations

import argparse
import sys

from .canonical import canonize
from .core import characteristic_values, otimes_merge
from .decisions import bounded_equivalent, classify, equivalent
from .errors import OtxError
from .learning import learn_transducer, make_machine_teacher
from .machines import evaluate, factored_eval
from .serialize import dumps, fixture_names, load_machine, save_machine

OK, FALSE, USAGE, MACHINE_ERROR = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _yes_no(x) -> str:
    return "n/a" if x is None else ("yes" if x else "no")


def _emit(out, text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_eval(args, out):
    m = load_machine(args.machine)
    o = evaluate(m, args.input)
    print(o.render() if args.origins else o.letters, file=out)
    return OK


def cmd_factored(args, out):
    m = load_machine(args.machine)
    parts = args.parts.split("|")
    try:
        underlined = [int(k) for k in args.underline.split(",") if k.strip()]
    except ValueError:
        raise _UsageError(f"--underline expects part numbers like 1,3, got {args.underline!r}")
    print(factored_eval(m, parts, underlined), file=out)
    return OK


def cmd_canonize(args, out):
    c = canonize(load_machine(args.machine))
    if args.output:
        save_machine(c, args.output)
    else:
        out.write(dumps(c))
    return OK


def cmd_equiv(args, out):
    m1, m2 = load_machine(args.first), load_machine(args.second)
    if args.bounded is not None:
        verdict = bounded_equivalent(m1, m2, args.bounded)
    else:
        verdict = equivalent(m1, m2)
    if verdict:
        print("equivalent", file=out)
        return OK
    w = verdict.witness
    print("not equivalent", file=out)
    print(f"witness: v={w.v!r} a={w.a!r} w={w.w!r}", file=out)
    print(f"  first:  {w.first}", file=out)
    print(f"  second: {w.second}", file=out)
    return FALSE


def cmd_classify(args, out):
    result = classify(load_machine(args.machine))
    for key in ("order_preserving", "one_way_deterministic", "first_order"):
        print(f"{key}: {_yes_no(result[key])}", file=out)
    return OK


def cmd_learn(args, out):
    teacher = make_machine_teacher(load_machine(args.teacher))
    trace = (lambda line: print(f"# {line}", file=out)) if args.trace else None
    device, stats = learn_transducer(teacher, trace=trace)
    print(stats.summary(), file=out)
    if args.output:
        save_machine(device, args.output)
    else:
        out.write(dumps(device))
    return OK


def cmd_reconstruct(args, out):
    m = load_machine(args.machine)
    direct = evaluate(m, args.input)
    xs = characteristic_values(direct)
    for i, x in enumerate(xs, start=1):
        print(f"x{i}: {x}", file=out)
    merged = otimes_merge(xs, len(args.input))
    print(f"merged: {merged.render()}", file=out)
    print(f"direct: {direct.render()}", file=out)
    same = merged == direct
    print("identity holds" if same else "identity violated", file=out)
    return OK if same else FALSE


def cmd_fixtures(args, out):
    for name in fixture_names():
        print(name, file=out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otx", description="Regular string transducers with origin semantics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a machine on one input")
    p.add_argument("machine")
    p.add_argument("--input", required=True)
    p.add_argument("--origins", action="store_true", help="print letter@origin pairs")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("factored", help="factored output f(u|v|w)")
    p.add_argument("machine")
    p.add_argument("--parts", required=True, help="input parts separated by |")
    p.add_argument("--underline", default="", help="comma separated 1-based part numbers")
    p.set_defaults(func=cmd_factored)

    p = sub.add_parser("canonize", help="canonical lookaround device as JSON")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_canonize)

    p = sub.add_parser("equiv", help="origin equivalence of two machines")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--bounded", type=int, metavar="N",
                   help="compare all inputs up to length N instead")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("classify", help="order preservation, one-way determinism, first-order")
    p.add_argument("machine")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("learn", help="learn the canonical device from a machine teacher")
    p.add_argument("--teacher", required=True)
    p.add_argument("--trace", action="store_true", help="show observation table growth")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("reconstruct", help="check f(w) = x1 ⊗ ... ⊗ xn on one input")
    p.add_argument("machine")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("fixtures", help="list the bundled machines")
    p.set_defaults(func=cmd_fixtures)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if getattr(args, "bounded", None) is not None and args.bounded < 0:
        print("otx: error: --bounded must be non-negative", file=err)
        return USAGE
    try:
        return args.func(args, out)
    except _UsageError as e:
        print(f"otx: error: {e}", file=err)
        return USAGE
    except OtxError as e:
        print(f"otx: {type(e).__name__}: {e}", file=err)
        return MACHINE_ERROR
    except OSError as e:
        print(f"otx: {e}", file=err)
        return MACHINE_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
