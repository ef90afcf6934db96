"""Command-line front end: ``qcdm <command> ...``.

Exit codes: 0 success, 1 domain error (invalid state, zero-probability
selection, ...), 2 usage or input-file error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import composite, conditional, scenarios, state
from .errors import DimensionError, InvalidStateError, QcdmError
from .qsm import QsmParseError, document, emit_qsm, read_qsm

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _indices(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated factor indices, got {text!r}")


def _scalar(x):
    # + 0.0 maps -0.0 to 0.0
    return format(x + 0.0, ".12g")


def _load_state(path, tol):
    doc = read_qsm(path)
    return state.validate(doc.entries, doc.dims, tol)


def _emit_state(rho, out):
    out.write(emit_qsm(document(rho.mat, rho.dims)))


def cmd_validate(args, out):
    doc = read_qsm(args.file)
    rho = state.validate(doc.entries, doc.dims, args.tol)
    out.write("valid: dims " + " ".join(str(d) for d in rho.dims) + "\n")


def cmd_expect(args, out):
    rho = _load_state(args.state, args.tol)
    f = state.Observable(read_qsm(args.observable).entries)
    out.write(f"expectation = {_scalar(state.expectation(f, rho, args.tol))}\n")


def cmd_dispersion(args, out):
    rho = _load_state(args.state, args.tol)
    f = state.Observable(read_qsm(args.observable).entries)
    out.write(f"dispersion = {_scalar(state.dispersion(f, rho, args.tol))}\n")


def cmd_reduce(args, out):
    rho = _load_state(args.state, args.tol)
    _emit_state(composite.partial_trace(rho, args.keep, args.tol), out)


def cmd_condition(args, out):
    rho = _load_state(args.state, args.tol)
    effect = conditional.Effect(read_qsm(args.effect).entries, os.path.basename(args.effect), args.tol)
    outcome = conditional.condition(rho, effect, args.on, args.tol)
    out.write(f"p = {_scalar(outcome.probability)}\n")
    _emit_state(outcome.state, out)


def cmd_decompose(args, out):
    rho = _load_state(args.state, args.tol)
    paths = [p for p in args.family.split(",") if p]
    effects = [
        conditional.Effect(read_qsm(p).entries, os.path.basename(p), args.tol) for p in paths
    ]
    family = conditional.EffectFamily(effects, args.tol)
    outcomes = conditional.decompose_reduced(rho, family, args.on, args.tol)
    for k, o in enumerate(outcomes):
        out.write(f"branch {k} {o.label}\n")
        out.write(f"p = {_scalar(o.probability)}\n")
        if o.state is None:
            out.write("state undefined\n")
        else:
            _emit_state(o.state, out)


def cmd_demo(args, out):
    report = scenarios.entanglement_swap(args.tol)
    out.write("reduced_14\n")
    _emit_state(report.reduced_14, out)
    out.write(f"p = {_scalar(report.selection_probability)}\n")
    out.write("conditional_14\n")
    _emit_state(report.conditional_14, out)
    out.write(f"fidelity_with_singlet = {_scalar(report.fidelity_with_singlet)}\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=state.TOL, help="tolerance (default 1e-9)")

    parser = _Parser(prog="qcdm", description="Conditional density matrix calculus.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check density-matrix conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, func, help_ in (
        ("expect", cmd_expect, "expectation value Tr(F rho)"),
        ("dispersion", cmd_dispersion, "dispersion Tr(Q^2 rho)"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("state")
        p.add_argument("observable")
        p.set_defaults(func=func)

    p = sub.add_parser("reduce", parents=[common], help="partial trace")
    p.add_argument("state")
    p.add_argument("--keep", type=_indices, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("condition", parents=[common], help="conditional density matrix")
    p.add_argument("state")
    p.add_argument("--effect", required=True)
    p.add_argument("--on", type=_indices, required=True)
    p.set_defaults(func=cmd_condition)

    p = sub.add_parser("decompose", parents=[common], help="decompose the reduced state")
    p.add_argument("state")
    p.add_argument("--family", required=True)
    p.add_argument("--on", type=_indices, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("demo", parents=[common], help="reference calculations")
    p.add_argument("name", choices=["swap"])
    p.set_defaults(func=cmd_demo)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    try:
        args.func(args, stdout)
    except QsmParseError as exc:
        stderr.write(f"qcdm: parse error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"qcdm: {exc.strerror}: {exc.filename}\n")
        return EXIT_USAGE
    except DimensionError as exc:
        stderr.write(f"qcdm: {exc}\n")
        return EXIT_USAGE
    except InvalidStateError as exc:
        stderr.write("qcdm: invalid state\n")
        for v in exc.violations:
            stderr.write(f"  {v}\n")
        return EXIT_DOMAIN
    except (QcdmError, ValueError) as exc:
        stderr.write(f"qcdm: {exc}\n")
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
