"""Command line front end: ``crtk <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

import argparse
import json
import os
import sys

from . import dynamics, enumeration, graph, residue, verify
from .arith import parse_nat
from .errors import CrtkError, DynSyntaxError, NatSyntaxError
from .form import is_reduced_form, prefix_status


def _nat(text):
    try:
        return parse_nat(text)
    except NatSyntaxError as e:
        raise argparse.ArgumentTypeError(str(e))


def _dyn(text):
    try:
        return dynamics.parse_dynstring(text)
    except DynSyntaxError as e:
        raise argparse.ArgumentTypeError(str(e))


def _default_threads():
    try:
        return max(1, int(os.environ.get("CRTK_THREADS", "1")))
    except ValueError:
        return 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--budget", type=int, metavar="N", help="step budget")
    common.add_argument("--threads", type=int, metavar="N", default=_default_threads(),
                        help="worker processes for range/enumeration work (env CRTK_THREADS)")
    common.add_argument("--timing", action="store_true", help="include elapsed times")

    # global flags go after the subcommand: crtk rd 7 --json
    p = argparse.ArgumentParser(prog="crtk",
                                description="Reduced Collatz dynamics and residue classes.")
    sub = p.add_subparsers(dest="cmd", metavar="COMMAND")
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    s = add("rd", "reduced dynamics of x")
    s.add_argument("x", type=_nat)
    s.add_argument("--rle", action="store_true")
    s = add("dynam", "first n transformations of x")
    s.add_argument("x", type=_nat)
    s.add_argument("n", type=int)
    s.add_argument("--rle", action="store_true")
    s = add("apply", "apply a dynamics string to x")
    s.add_argument("s", type=_dyn)
    s.add_argument("x", type=_nat)
    s = add("d2r", "residue class of a dynamics string")
    s.add_argument("s", type=_dyn)
    s = add("r2d", "dynamics shared by the class i mod 2^t")
    s.add_argument("i", type=_nat)
    s.add_argument("t", type=int)
    s = add("form", "classify a string against the ratio line")
    s.add_argument("s", type=_dyn)
    s = add("enumerate", "all reduced patterns up to length L (CSV)")
    s.add_argument("L", type=int)
    s = add("coverage", "coverage ratio R(1..n) (CSV)")
    s.add_argument("n", type=int)
    s = add("graph", "reduced dynamics graph to depth L (DOT, or JSON with --json)")
    s.add_argument("L", type=int)
    s.add_argument("--dot", action="store_true", help="DOT output (default)")
    s = add("verify", "iterate x down to 1")
    s.add_argument("x", type=_nat)
    s.add_argument("--oracle", action="store_true", help="re-run with the classic rule and compare")
    s.add_argument("--checkpoint", metavar="FILE", help="resume from / save state to FILE")
    s = add("verify-range", "check reduced dynamics exists for every x in [a, b]")
    s.add_argument("a", type=_nat)
    s.add_argument("b", type=_nat)
    s.add_argument("--full", action="store_true", help="descend to 1 instead of below x")
    s.add_argument("--list", action="store_true", help="also print RD[x] for each x")
    s = add("fork", "forking point of two odd integers")
    s.add_argument("x1", type=_nat)
    s.add_argument("x2", type=_nat)
    return p


def _kv(pairs):
    return "".join(f"{k}: {v}\n" for k, v in pairs)


def _run(args):
    """Return ``(json_payload, text)`` for the parsed command."""
    cmd = args.cmd
    budget = args.budget
    if cmd == "rd":
        s = dynamics.reduced_dynamics(args.x, budget or dynamics.DEFAULT_BUDGET)
        return ({"x": str(args.x), "rd": s, "length": len(s), "cnt_I": s.count("I")},
                dynamics.format_dynstring(s, args.rle) + "\n")
    if cmd == "dynam":
        s = dynamics.dynam(args.x, args.n)
        return ({"x": str(args.x), "n": args.n, "dynam": s},
                dynamics.format_dynstring(s, args.rle) + "\n")
    if cmd == "apply":
        tr = dynamics.apply(args.s, args.x)
        return tr.to_json(), " ".join(map(str, tr.values)) + "\n"
    if cmd == "d2r":
        c = residue.d2r(args.s)
        return c.to_json(), f"{c}\n"
    if cmd == "r2d":
        c = residue.ResidueClass(args.i, args.t)
        s = residue.r2d(c)
        return {"i": str(c.i), "t": c.t, "dynam": s}, s + "\n"
    if cmd == "form":
        v = is_reduced_form(args.s)
        return ({"pattern": args.s, "status": v.status.value,
                 "first_violation": v.first_violation,
                 "prefix_status": [st.value for st in prefix_status(args.s)]},
                f"{v}\n")
    if cmd == "enumerate":
        records = list(enumeration.enumerate_forms(args.L, workers=args.threads))
        return [r.to_json() for r in records], enumeration.records_to_csv(records)
    if cmd == "coverage":
        table = enumeration.coverage(args.n)
        return table.to_json(), table.to_csv()
    if cmd == "graph":
        root = graph.build_graph(args.L)
        return json.loads(graph.export_json(root)), graph.export_dot(root)
    if cmd == "verify":
        rep = verify.verify_to_one(args.x, budget or dynamics.DEFAULT_BUDGET,
                                   oracle=args.oracle, checkpoint=args.checkpoint)
        pairs = [(k, v) for k, v in rep.to_json(args.timing).items()]
        return rep.to_json(args.timing), _kv(pairs)
    if cmd == "verify-range":
        rep = verify.verify_range(args.a, args.b, budget or verify.RANGE_BUDGET,
                                  full=args.full, workers=args.threads,
                                  list_patterns=args.list)
        d = rep.to_json(args.timing)
        text = _kv([
            ("range", f"{rep.a}..{rep.b}"),
            ("count", rep.count),
            ("all_found", rep.all_found),
            ("max_length", rep.max_length),
            ("argmax", rep.argmax),
            ("histogram", " ".join(f"{k}:{v}" for k, v in d["histogram"].items())),
            ("exhausted", " ".join(d["exhausted"])),
            ("anomalies", " ".join(d["anomalies"])),
        ] + ([("elapsed", f"{rep.elapsed:.3f}")] if args.timing else []))
        if rep.patterns is not None:
            text += "".join(f"{x} {p if p is not None else '-'}\n" for x, p in rep.patterns.items())
        return d, text
    if cmd == "fork":
        t = residue.forking_point(args.x1, args.x2)
        return ({"x1": str(args.x1), "x2": str(args.x2), "t": t},
                ("identical" if t is None else str(t)) + "\n")
    raise AssertionError(cmd)


def _emit(text, out):
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = _run(args)
    except (CrtkError, ValueError) as e:
        err = e.to_dict() if isinstance(e, CrtkError) else {"error": "value_error", "message": str(e)}
        if args.json:
            _emit(json.dumps(err) + "\n", args.out)
        else:
            print(f"crtk {args.cmd}: error: {err['message']}", file=sys.stderr)
        return 1
    if args.json:
        text = json.dumps(payload, indent=None if args.cmd == "graph" else 1) + "\n"
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
