"""Command-line front end.

Three subcommands:

  descent table  --type B4 --sigma 2 --format csv
  descent verify --suite positivity --type F4 --seed 11
  descent mult   --type A2 --left "x[1]" --right "x[1] - 2*y[2]" --basis y

Global flags: --no-cache skips the on-disk structure-constant cache,
--seed feeds the randomized suites, --allow-rank7 unlocks rank-7 types
(a memory estimate is printed before anything large is built). The cache
directory is taken from the DESCENT_CACHE_DIR environment variable.

Exit status: 0 on success, 1 when a verification suite fails, 2 on bad
input (unknown type, unavailable automorphism, unparseable expression).
"""

import argparse
import json
import sys

from . import algebra as alg
from . import cartan
from . import table as tbl
from . import verify as vfy
from .coxeter import build_system
from .errors import DescentError, RankCapExceeded, UnsupportedType
from .exprs import parse_expression

_RANK7_BYTES_PER_ELEMENT_MISC = 32


def rank7_memory_estimate(type_label):
    """Rough peak-memory estimate, in bytes, for building a system.

    Dominated by the element table: each element carries its signed root
    permutation during the search (2 bytes per root) plus the two
    generator-action rows (int32 each side).
    """
    comps = cartan.parse_label(type_label)
    order = cartan.order_for_components(comps)
    nroots = sum(cartan.component_nroots(fam, p) for fam, p in comps)
    rank = cartan.total_rank(comps)
    per_elt = nroots * 2 + rank * 4 * 2 + _RANK7_BYTES_PER_ELEMENT_MISC
    return order * per_elt


def _maybe_print_rank7_estimate(type_label, allow_rank7):
    if not allow_rank7:
        return
    comps = cartan.parse_label(type_label)
    if cartan.total_rank(comps) < 7:
        return
    est = rank7_memory_estimate(type_label)
    print("estimated memory for %s: %.1f MB (order %d)"
          % (type_label, est / 1e6,
             cartan.order_for_components(comps)), file=sys.stderr)


def _build(type_label, args):
    _maybe_print_rank7_estimate(type_label, args.allow_rank7)
    return build_system(type=type_label, allow_rank7=args.allow_rank7,
                        cache=not args.no_cache)


def cmd_table(args):
    if args.sigma == "all":
        sigma_order = None
    else:
        try:
            sigma_order = int(args.sigma)
        except ValueError:
            raise UnsupportedType(
                "--sigma expects a positive integer or 'all', got %r"
                % args.sigma)
        if sigma_order < 1:
            raise UnsupportedType("--sigma expects a positive integer")
    if args.type == "all":
        labels = tbl.SUPPORTED_TYPES
    else:
        labels = [args.type]
    rows = []
    for label in labels:
        system = _build(label, args)
        if sigma_order is None:
            orders = tbl.available_sigma_orders(system)
        elif args.type == "all":
            # roster mode keeps only the types carrying that order
            orders = [k for k in tbl.available_sigma_orders(system)
                      if k == sigma_order]
        else:
            orders = [sigma_order]
        for k in orders:
            rows.append(tbl.build_row(label, k, system=system,
                                      allow_rank7=args.allow_rank7))
    print(tbl.render(rows, args.format))
    return 0


def cmd_verify(args):
    _maybe_print_rank7_estimate(args.type, args.allow_rank7)
    report = vfy.run_suite(args.suite, args.type, seed=args.seed,
                           allow_rank7=args.allow_rank7,
                           cache=not args.no_cache)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, default=str))
    else:
        print(report.render_text())
    return 0 if report.passed else 1


def cmd_mult(args):
    system = _build(args.type, args)
    left = parse_expression(system, args.left)
    right = parse_expression(system, args.right)
    product = alg.multiply(left, right).in_basis(args.basis)
    print(product)
    return 0


def _add_common(sub):
    sub.add_argument("--no-cache", action="store_true",
                     help="do not read or write the structure-constant "
                          "cache on disk")
    sub.add_argument("--allow-rank7", action="store_true",
                     help="permit rank-7 constructions (prints a memory "
                          "estimate first)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="descent",
        description="Exact computations in descent algebras of finite "
                    "Coxeter groups.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_table = subs.add_parser(
        "table",
        help="radical dimension table rows for one type or the full roster")
    p_table.add_argument("--type", required=True,
                         help="Cartan type label such as B4, I2(7), A2xA1, "
                              "or 'all' for the built-in roster")
    p_table.add_argument("--sigma", default="all",
                         help="diagram automorphism order (default: every "
                              "available order)")
    p_table.add_argument("--format", default="text",
                         choices=("text", "json", "csv"))
    _add_common(p_table)
    p_table.set_defaults(func=cmd_table)

    p_verify = subs.add_parser(
        "verify", help="run one named invariant suite against one system")
    p_verify.add_argument("--suite", required=True,
                          help="one of: %s" % ", ".join(vfy.SUITES))
    p_verify.add_argument("--type", required=True)
    p_verify.add_argument("--seed", type=int, default=0,
                          help="seed for the randomized suites")
    p_verify.add_argument("--format", default="text",
                          choices=("text", "json"))
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_mult = subs.add_parser(
        "mult", help="multiply two descent-algebra expressions")
    p_mult.add_argument("--type", required=True)
    p_mult.add_argument("--left", required=True,
                        help="expression such as 'x[1] + 2*y[2,3]'")
    p_mult.add_argument("--right", required=True)
    p_mult.add_argument("--basis", default="x", choices=("x", "y", "xp"),
                        help="basis for printing the product")
    _add_common(p_mult)
    p_mult.set_defaults(func=cmd_mult)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is not None and args.seed < 0:
        parser.error("--seed must be a nonnegative integer")
    try:
        return args.func(args)
    except RankCapExceeded as exc:
        print("error: %s; pass --allow-rank7 to proceed" % exc,
              file=sys.stderr)
        return 2
    except DescentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
