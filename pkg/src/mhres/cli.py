"""Command-line interface.

Every subcommand takes the system as ``--l 1,1 --d 1,1 --s 1,1,2`` (or
``--system file.json``).  Exit codes: 1 invalid input, 2 a square matrix was
required but m is not determinantal, 3 an internal consistency check failed.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys as _sys

from .combinatorics import InvalidSystemError, critical_degree, resultant_degrees, validate_system
from .complex import format_blocks, format_cohs, make_complex
from .export import (dumps, matrix_to_csv, matrix_to_json, matrix_to_latex, system_from_json,
                     system_to_json)
from .matrices import ConstructionError, DegreeMismatchError, assemble_matrix, mult_map
from .polyring import NonExactDivisionError, Poly, format_poly, parse_poly
from .search import (det_boxes, enumerate_det_vectors, has_deter, min_dim_probe, pure_vectors,
                     unmixed_pure_exists)
from .verify import random_assignment, verify_report

log = logging.getLogger("mhres")

EXIT_INVALID, EXIT_NOT_DETERMINANTAL, EXIT_INTERNAL = 1, 2, 3


class NotDeterminantalError(ValueError):
    pass


def int_list(text: str) -> list[int]:
    """Strict comma-separated integers; negative entries allowed (``3,-1``)."""
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def load_system(args):
    if args.system:
        with open(args.system, encoding="utf-8") as fh:
            return system_from_json(json.load(fh))
    if args.l is None or args.d is None or args.s is None:
        raise InvalidSystemError("give --l, --d and --s (or --system FILE)")
    return validate_system(args.l, args.d, args.s), None


def _check_m(sys, m):
    if len(m) != sys.r:
        raise InvalidSystemError(f"--m needs {sys.r} entries, got {len(m)}")
    return tuple(m)


# -- subcommands -------------------------------------------------------------------

def cmd_make_system(args, out):
    sys, _ = load_system(args)
    assignment = random_assignment(sys, args.seed) if args.coeffs == "random" else None
    out(dumps(system_to_json(sys, assignment)))


def cmd_degrees(args, out):
    sys, _ = load_system(args)
    per, total = resultant_degrees(sys)
    out(dumps({"per_poly": list(per), "total": total, "critical_degree": list(critical_degree(sys))}))


def cmd_vectors(args, out):
    sys, _ = load_system(args)
    vecs = enumerate_det_vectors(sys)
    if args.json:
        out(dumps([{"m": list(m), "dim": dim} for m, dim in vecs]))
    else:
        out(str([[*m, dim] for m, dim in vecs]))


def cmd_boxes(args, out):
    sys, _ = load_system(args)
    if sys.r >= 6 and not args.allow_large_r:
        raise InvalidSystemError(f"r={sys.r} means {sys.r}! permutations; pass --allow-large-r")
    boxes = det_boxes(sys, max_r=max(sys.r, 5))
    out(dumps([{"intervals": b.intervals(), "perm": list(b.perm)} for b in boxes]))


def cmd_has_deter(args, out):
    sys, _ = load_system(args)
    ok, perm = has_deter(sys, max_r=max(sys.r, 5))
    out(dumps({"has_deter": ok, "perm": list(perm) if perm else None}))


def cmd_pure(args, out):
    sys, _ = load_system(args)
    if all(v == 1 for v in sys.s):
        out(dumps({"unmixed": True, "pure_exists": unmixed_pure_exists(sys)}))
    else:
        out(dumps({"unmixed": False,
                   "vectors": [{"m": list(m), "kind": kind} for m, kind in pure_vectors(sys)]}))


def cmd_complex(args, out):
    sys, _ = load_system(args)
    cx = make_complex(sys, _check_m(sys, args.m))
    if args.render == "blocks":
        out(format_blocks(cx))
    elif args.render == "cohs":
        out(format_cohs(cx))
    else:
        out(dumps(cx.to_dict()))


def _read_poly(text: str, sys) -> Poly:
    """A polynomial given as text (``c0 + c1*x1``) or as {"(e1,...,en)": coefficient} JSON."""
    text = text.strip()
    if not text.startswith("{"):
        return parse_poly(text, sys.groups())
    table = json.loads(text)
    p = Poly()
    for key, val in table.items():
        exps = [int(v) for v in key.strip("()").split(",") if v.strip()]
        if len(exps) != sys.n:
            raise InvalidSystemError(f"exponent {key} needs {sys.n} entries")
        mono, pos = [], 0
        for k, lk in enumerate(sys.l, start=1):
            mono += [(("x", k, j), exps[pos + j - 1]) for j in range(1, lk + 1) if exps[pos + j - 1]]
            pos += lk
        p += parse_poly(str(val)) * Poly({tuple(sorted(mono)): 1})
    return p


def cmd_multmap(args, out):
    sys, _ = load_system(args)
    g = _read_poly(args.g, sys)
    rows, cols, entries = mult_map(sys, g, _check_m(sys, args.source), _check_m(sys, args.target))
    out(dumps({"rows": [str(r) for r in rows], "cols": [str(c) for c in cols],
               "entries": [[format_poly(e) for e in row] for row in entries]}))


def cmd_matrix(args, out):
    sys, f = load_system(args)
    m = _check_m(sys, args.m)
    cx = make_complex(sys, m)
    if args.format == "csv" and not cx.is_determinantal():
        log.warning("m=%s is not determinantal; writing the rectangular matrix", m)
    bm = assemble_matrix(sys, m, f=f, complex_=cx, method=args.method)
    if args.block:
        bm = bm.restrict(*args.block)
    if args.format == "json":
        out(dumps(matrix_to_json(bm)))
    elif args.format == "csv":
        out(matrix_to_csv(bm, random_assignment(sys, args.seed)).rstrip("\n"))
    else:
        out(matrix_to_latex(bm))


def cmd_verify(args, out):
    sys, _ = load_system(args)
    m = _check_m(sys, args.m)
    if not make_complex(sys, m).is_determinantal():
        raise NotDeterminantalError(f"m={m} is not determinantal")
    log.info("verify m=%s seed=%d trials=%d", m, args.seed, args.trials)
    out(dumps(verify_report(sys, m, trials=args.trials, seed=args.seed, degrees=not args.no_degrees)))


def cmd_probe(args, out):
    sys, _ = load_system(args)
    out(dumps(min_dim_probe(sys).to_dict()))


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", type=int_list, help="group sizes, e.g. 1,1")
    common.add_argument("--d", type=int_list, help="base degrees, e.g. 1,1")
    common.add_argument("--s", type=int_list, help="scaling factors s_0..s_n, e.g. 1,1,2")
    common.add_argument("--system", help="system JSON file instead of --l/--d/--s")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mhres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-system", parents=[common], help="generic or random system as JSON")
    p.add_argument("--coeffs", choices=["symbolic", "random"], default="symbolic")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_make_system)

    sub.add_parser("degrees", parents=[common], help="resultant degrees").set_defaults(func=cmd_degrees)

    p = sub.add_parser("vectors", parents=[common], help="all determinantal degree vectors")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_vectors)

    p = sub.add_parser("boxes", parents=[common], help="determinantal boxes")
    p.add_argument("--allow-large-r", action="store_true", help="run the r! sweep for r >= 6")
    p.set_defaults(func=cmd_boxes)

    sub.add_parser("has-deter", parents=[common], help="existence of a determinantal formula"
                   ).set_defaults(func=cmd_has_deter)
    sub.add_parser("pure", parents=[common], help="pure formulae").set_defaults(func=cmd_pure)
    sub.add_parser("probe", parents=[common], help="minimum-dimension report").set_defaults(func=cmd_probe)

    p = sub.add_parser("complex", parents=[common], help="terms of the complex for m")
    p.add_argument("--m", type=int_list, required=True)
    p.add_argument("--render", choices=["blocks", "cohs", "json"], default="cohs")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("multmap", parents=[common], help="matrix of a multiplication map")
    p.add_argument("--g", required=True, help="polynomial text or exponent JSON")
    p.add_argument("--source", type=int_list, required=True)
    p.add_argument("--target", type=int_list, required=True)
    p.set_defaults(func=cmd_multmap)

    p = sub.add_parser("matrix", parents=[common], help="matrix of K_1 -> K_0")
    p.add_argument("--m", type=int_list, required=True)
    p.add_argument("--format", choices=["json", "csv", "latex"], default="json")
    p.add_argument("--block", type=int_list, help="keep only blocks K_(1,a) -> K_(0,b), given as a,b")
    p.add_argument("--method", choices=["cech", "bezoutian"], default="cech")
    p.add_argument("--seed", type=int, default=0, help="coefficients for --format csv")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", parents=[common], help="planted-root and degree checks")
    p.add_argument("--m", type=int_list, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-degrees", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=print) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "block", None) is not None and len(args.block) != 2:
        parser.error("--block takes two integers a,b")
    try:
        args.func(args, out)
    except NotDeterminantalError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_NOT_DETERMINANTAL
    except (ConstructionError, NonExactDivisionError) as exc:
        print(f"internal error: {exc}", file=_sys.stderr)
        return EXIT_INTERNAL
    except (InvalidSystemError, DegreeMismatchError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INVALID
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
