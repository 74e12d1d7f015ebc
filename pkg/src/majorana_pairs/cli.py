"""
Command-line interface.

Exit codes: 0 success, 1 domain failure (verification failed or a
mathematical precondition is violated), 2 usage, I/O or parse error.
The default tolerance is 1e-10, or ``$ACP_DEFAULT_TOL`` when set.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

import numpy as np

from . import closed_form, pairs
from .errors import (
    BadDimension,
    DimensionMismatch,
    IoError,
    NonSquare,
    OddDimension,
    PairError,
    ParseError,
)
from .io_format import format_report, read_matrix, write_matrix, write_report
from .matrix_core import RandomSource, expm_oracle, frobenius, hermitian_eig, involution_residual, kron

EIGEN_CLUSTER_TOL = 1e-8
USAGE_ERRORS = (ParseError, IoError, DimensionMismatch, BadDimension, NonSquare)
_Z_PATTERN = re.compile(r"^([^,\s]+),([^,\s]+)$")


class UsageError(Exception):
    pass


def parse_complex(text):
    """Parse ``"re,im"`` into a complex number."""
    match = _Z_PATTERN.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        z = complex(float(match.group(1)), float(match.group(2)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None
    if not np.isfinite(z):
        raise argparse.ArgumentTypeError("z must be finite")
    return z


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def env_default_tol():
    raw = os.environ.get("ACP_DEFAULT_TOL")
    if raw is None:
        return 1e-10
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"ACP_DEFAULT_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise UsageError("ACP_DEFAULT_TOL must be positive")
    return tol


def _out(line=""):
    sys.stdout.write(line + "\n")


def _read_pair(args):
    if args.b is None:
        raise UsageError("this command needs both --a and --b")
    return pairs.InvolutionPair.certify(read_matrix(args.a), read_matrix(args.b), args.tol)


def cmd_generate(args):
    if args.method == "random":
        pair = pairs.random_pair(args.size, RandomSource(args.seed), args.tol)
    elif args.method == "canonical":
        pair = pairs.canonical_pair(args.size, args.tol)
    else:
        pair = pairs.pauli_chain_pair(args.size, args.tol)
    write_matrix(pair.a, args.out_a)
    write_matrix(pair.b, args.out_b)
    _out(f"generated {args.method} pair, n = {pair.n}")
    sys.stdout.write(format_report(pair.report()))
    return 0


def cmd_verify(args):
    report = pairs.verify_pair(read_matrix(args.a), read_matrix(args.b), args.tol)
    sys.stdout.write(format_report(report))
    if args.out:
        write_report(report, args.out)
    return 0 if report.passed else 1


def cmd_derive(args):
    a = read_matrix(args.input)
    b = pairs.derive_partner(a, args.tol)
    write_matrix(b, args.out)
    sys.stdout.write(format_report(pairs.verify_pair(a, b, 10 * args.tol)))
    return 0


def cmd_lift(args):
    pair = _read_pair(args)
    if args.op == "kron":
        if args.c is None:
            raise UsageError("--op kron needs --c")
        lifted = pairs.lift_kron(read_matrix(args.c), pair, args.tol)
    elif args.op == "dirsum":
        lifted = pairs.lift_direct_sum(pair)
    else:
        lifted = pairs.lift_star(pair)
    write_matrix(lifted.a, args.out_a)
    write_matrix(lifted.b, args.out_b)
    _out(f"lifted by {args.op}, n = {lifted.n}")
    sys.stdout.write(format_report(lifted.report()))
    return 0


def _resolve_form(args, a):
    if args.form != "auto":
        return args.form
    if args.b is not None and args.nilpotent:
        return "nilpotent"
    if args.b is not None:
        return "product"
    if a.shape[0] == a.shape[1] and involution_residual(a) <= args.tol:
        return "involution"
    return "oracle"


def cmd_expm(args):
    a = read_matrix(args.a)
    z = args.z
    form = _resolve_form(args, a)
    if form == "involution":
        result = closed_form.exp_involution(a, z, args.tol)
        operand = a
    elif form == "oracle":
        if args.b is None:
            operand = a
        else:
            b = read_matrix(args.b)
            operand = a + 1j * b if args.nilpotent else a @ b
        result = expm_oracle(z * operand)
    else:
        pair = _read_pair(args)
        if form == "product":
            result = closed_form.exp_product(pair, z)
            operand = pair.a @ pair.b
        elif form == "kron-pair":
            result = closed_form.exp_kron_pair(pair, z)
            operand = kron(pair.a, pair.b)
        else:
            result = closed_form.exp_nilpotent(pair, z)
            operand = pairs.nilpotent(pair)
    reference = expm_oracle(z * operand)
    deviation = frobenius(result - reference) / frobenius(reference)
    write_matrix(result, args.out)
    _out(f"form: {form}")
    _out(f"oracle_deviation: {deviation!r}")
    return 0


def cmd_spectrum(args):
    spec = hermitian_eig(read_matrix(args.input), args.tol)
    plus = int(np.sum(np.abs(spec.values - 1) <= EIGEN_CLUSTER_TOL))
    minus = int(np.sum(np.abs(spec.values + 1) <= EIGEN_CLUSTER_TOL))
    _out("eigenvalues: " + " ".join(repr(float(v)) for v in spec.values))
    _out(f"plus_one: {plus}")
    _out(f"minus_one: {minus}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="majorana-pairs",
        description="Construct and verify anticommuting Hermitian involution pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-10 or $ACP_DEFAULT_TOL)")
        return p

    p = add("generate", cmd_generate, "write a certified pair A, B")
    p.add_argument("--method", choices=("random", "canonical", "pauli-chain"), default="random")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out-a", required=True)
    p.add_argument("--out-b", required=True)

    p = add("verify", cmd_verify, "check the pair conditions for A, B")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", help="also write the report to this file")

    p = add("derive", cmd_derive, "construct a partner B for a traceless involution A")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)

    p = add("lift", cmd_lift, "lift a pair to a higher dimension")
    p.add_argument("--op", choices=("kron", "dirsum", "star"), required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", help="involution C for --op kron")
    p.add_argument("--out-a", required=True)
    p.add_argument("--out-b", required=True)

    p = add("expm", cmd_expm, "closed-form or oracle matrix exponential")
    p.add_argument(
        "--form",
        choices=("auto", "involution", "product", "kron-pair", "nilpotent", "oracle"),
        default="auto",
    )
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--nilpotent", action="store_true", help="treat the pair as N = A + iB")
    p.add_argument("--z", type=parse_complex, required=True, help="complex scalar as 're,im'")
    p.add_argument("--out", required=True)

    p = add("spectrum", cmd_spectrum, "eigenvalues of a Hermitian matrix and its +1/-1 counts")
    p.add_argument("--in", dest="input", required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.tol is None:
            args.tol = env_default_tol()
        elif not args.tol > 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OddDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        # an odd --size is a bad flag value; an odd input matrix is a domain failure
        return 2 if args.command == "generate" else 1
    except USAGE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except PairError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
