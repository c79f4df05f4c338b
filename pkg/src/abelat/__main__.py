import argparse
import functools
import sys
from typing import List, Optional

from . import (
    Analyzer,
    DomainError,
    EutaxyCertificate,
    GroupSpecError,
    NoMinimalBasisError,
    NotEutacticError,
    VerificationError,
    build_certificate,
    canonical_basis,
    check_certificate,
    min_basis,
    min_distance,
    min_vectors_any,
    parse_group_spec,
    reports_to_csv,
    sweep,
)
from .utils import dumps, load_json, save_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IMPOSSIBLE = 2
EXIT_VERIFICATION = 3


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_args(argv: Optional[List[str]] = None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        help="Machine readable output.",
    )
    common.add_argument(
        "--strict",
        action="store_true",
        help="Exit with code 2 when the lattice is not eutactic or has no basis of minimal vectors.",
    )
    common.add_argument(
        "--debug",
        action="store_true",
        help="Print debug messages.",
    )
    common.add_argument(
        "--timings",
        action="store_true",
        help="Add the elapsed seconds of every step to the output.",
    )

    parser = ArgumentParser(prog="abelat", description="Exact lattices of finite abelian groups.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    analyze = subparsers.add_parser("analyze", parents=[common], help="Full analysis of one group.")
    analyze.add_argument("spec", type=str, help="Group such as 'C4xC2'.")

    sweep_parser = subparsers.add_parser("sweep", parents=[common], help="Analyze every group up to an order.")
    sweep_parser.add_argument(
        "max_order_pos",
        nargs="?",
        type=int,
        default=None,
        metavar="max_order",
        help="Largest group order.",
    )
    sweep_parser.add_argument(
        "--max-order",
        type=int,
        default=None,
        help=f"Largest group order (default {Analyzer.DEFAULT_MAX_ORDER}, at most {Analyzer.HARD_MAX_ORDER}).",
    )
    sweep_parser.add_argument(
        "--all-presentations",
        action="store_true",
        help="Run every ordering of the invariant and primary decompositions.",
    )
    sweep_parser.add_argument(
        "--allow-large",
        action="store_true",
        help=f"Allow orders above {Analyzer.DEFAULT_MAX_ORDER}.",
    )
    sweep_parser.add_argument("--output", type=str, default=None, help="Write the table to this file.")

    basis = subparsers.add_parser("basis", parents=[common], help="Basis of minimal vectors.")
    basis.add_argument("spec", type=str)
    basis.add_argument(
        "--construction",
        choices=["general", "sha", "orbit"],
        default="general",
        help="Construction of the basis.",
    )
    basis.add_argument(
        "--strategy",
        choices=["difference", "inverse"],
        default="difference",
        help="Replacement strategy of the general construction.",
    )

    minvecs = subparsers.add_parser("minvecs", parents=[common], help="Minimal vectors of (Delta A)^r.")
    minvecs.add_argument("spec", type=str)
    minvecs.add_argument("--power", type=int, default=2)

    certificate = subparsers.add_parser("certificate", parents=[common], help="Build a eutaxy certificate.")
    certificate.add_argument("spec", type=str)
    certificate.add_argument("--output", type=str, default=None, help="Write the certificate to this file.")

    verify = subparsers.add_parser("verify", parents=[common], help="Check a certificate file.")
    verify.add_argument("path", type=str)

    lattice = subparsers.add_parser("lattice", parents=[common], help="Canonical basis and Gram matrix.")
    lattice.add_argument("spec", type=str)
    lattice.add_argument("--power", type=int, default=2)
    lattice.add_argument("--gram-text", action="store_true", help="Print the Gram matrix as plain text.")

    args = parser.parse_args(argv)
    if args.command == "sweep":
        if args.max_order is None:
            args.max_order = args.max_order_pos
        if args.max_order is None:
            args.max_order = Analyzer.DEFAULT_MAX_ORDER
    return args


def _format_value(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def cmd_analyze(args, logging_func) -> int:
    analyzer = Analyzer(parse_group_spec(args.spec), logging_func=logging_func)
    report = analyzer.run(save_report=False)
    data = report.to_dict(include_timings=args.timings)
    if args.json:
        print(dumps(data))
    else:
        for key, value in data.items():
            print(f"{key}: {_format_value(value)}")
    if args.strict and not (analyzer.is_eutactic and analyzer.has_minimal_basis):
        for err in analyzer.errors:
            print(err, file=sys.stderr)
        return EXIT_IMPOSSIBLE
    return EXIT_OK


def cmd_sweep(args, logging_func) -> int:
    reports = sweep(
        args.max_order,
        all_presentations=args.all_presentations,
        allow_large=args.allow_large,
        logging_func=logging_func,
    )
    if args.json:
        text = dumps([r.to_dict(include_timings=args.timings) for r in reports]) + "\n"
    else:
        text = reports_to_csv(reports, include_timings=args.timings)
    if args.output is not None:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_basis(args, logging_func) -> int:
    group = parse_group_spec(args.spec)
    basis = min_basis(group, construction=args.construction, strategy=args.strategy)
    logging_func(f"{basis!r}: norms {basis.norms}, unimodular {basis.unimodular}")
    print(dumps(basis.to_json()))
    return EXIT_OK


def cmd_minvecs(args, logging_func) -> int:
    group = parse_group_spec(args.spec)
    vectors = min_vectors_any(group, args.power)
    minimum = min_distance(group, args.power)
    if args.json:
        print(dumps({
            "group": group.spec,
            "power": args.power,
            "min_norm": minimum,
            "count": len(vectors),
            "vectors": [list(v.to_integers()) for v in vectors],
        }))
    else:
        print(f"# {group.spec}, power {args.power}: {len(vectors)} vectors of squared norm {minimum}")
        for v in vectors:
            print(" ".join(str(c) for c in v.to_integers()))
    return EXIT_OK


def cmd_certificate(args, logging_func) -> int:
    cert = build_certificate(parse_group_spec(args.spec))
    logging_func(f"{cert!r}")
    if args.output is not None:
        save_json(cert.to_json(), args.output)
        print(args.output)
    else:
        print(dumps(cert.to_json()))
    return EXIT_OK


def cmd_verify(args, logging_func) -> int:
    try:
        cert = EutaxyCertificate.from_json(load_json(args.path))
    except (KeyError, TypeError, ValueError, FileNotFoundError) as err:
        print(f"Could not read certificate {args.path}: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        check_certificate(cert)
    except VerificationError as err:
        if args.json:
            print(dumps({"group": cert.group.spec, "verified": False, "check": err.check}))
        print(err, file=sys.stderr)
        return EXIT_VERIFICATION
    if args.json:
        print(dumps({"group": cert.group.spec, "verified": True, "check": None}))
    else:
        print(f"{cert.group.spec}: certificate verified")
    return EXIT_OK


def cmd_lattice(args, logging_func) -> int:
    lattice = canonical_basis(parse_group_spec(args.spec), args.power)
    if args.gram_text:
        print(lattice.gram_text(), end="")
    else:
        print(dumps(lattice.to_json()))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "basis": cmd_basis,
    "minvecs": cmd_minvecs,
    "certificate": cmd_certificate,
    "verify": cmd_verify,
    "lattice": cmd_lattice,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging_func = functools.partial(print, file=sys.stderr) if args.debug else Analyzer.DEFAULT_LOGGING_FUNC
    try:
        return COMMANDS[args.command](args, logging_func)
    except (NoMinimalBasisError, NotEutacticError) as err:
        print(err, file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except VerificationError as err:
        print(err, file=sys.stderr)
        return EXIT_VERIFICATION
    except (GroupSpecError, DomainError) as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    # Example of command:
    # python -m abelat analyze C4xC2 --json
    sys.exit(main())
