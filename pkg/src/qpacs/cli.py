"""Command-line front end: ``qpacs <subcommand> ...``.

Exit status is 0 on success, 2 on a usage error and 1 when a computation fails.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from .errors import QPACSError
from .moments import DEFAULT_TOL
from .operator_words import hillery_quadrature_square, normal_order, quadrature_power
from .states import pacs_state
from .sweeps import PRESETS, SweepSpec, SweepSpecError, evaluate_point, run_figure, run_sweep, write_rows


def _range(text: str) -> tuple[float, float, int]:
    try:
        start, stop, count = text.split(":")
        return float(start), float(stop), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}") from None


def _state_args(p: argparse.ArgumentParser, order: bool = True) -> None:
    p.add_argument("--q", type=float, default=0.9, help="deformation parameter (1 = undeformed limit)")
    p.add_argument("--alpha-re", type=float, default=1.0)
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--m", type=int, default=0, help="number of added photons")
    if order:
        p.add_argument("--order", "-N", dest="N", type=int, default=1)


def _global_flags(p, tol, threads, out):
    p.add_argument("--tol", type=float, default=tol, help="series tolerance")
    p.add_argument("--threads", type=int, default=threads, help="worker processes for sweeps")
    p.add_argument("--out", default=out, help="output file (directory for `figure`)")
    return p


def build_parser() -> argparse.ArgumentParser:
    top = _global_flags(argparse.ArgumentParser(add_help=False), DEFAULT_TOL, 1, None)
    # subcommands accept the same flags; SUPPRESS keeps them from resetting earlier values
    common = _global_flags(argparse.ArgumentParser(add_help=False), *(argparse.SUPPRESS,) * 3)

    parser = argparse.ArgumentParser(
        prog="qpacs", parents=[top],
        description="q-deformed photon-added coherent states: squeezing and photon statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", parents=[common], help="single expectation value")
    _state_args(p, order=False)
    p.add_argument("--N", type=int, required=True, help="creation power (or number power)")
    p.add_argument("--L", type=int, default=None, help="annihilation power")
    p.add_argument("--ordering", choices=("normal", "antinormal", "number-power"), default="normal")

    p = sub.add_parser("normal-order", parents=[common], help="normal-order a ladder word")
    p.add_argument("word", nargs="*", help="letters A / Ad (also A+, A†), left to right")
    p.add_argument("--quadrature", type=int, default=None, metavar="J",
                   help="expand Y(phi)^J instead of a word")
    p.add_argument("--hillery", type=int, default=None, metavar="N", help="expand Y_N(phi)^2")

    for name, help_text in (("hillery", "Hillery-type squeezing S_H"),
                            ("hong-mandel", "Hong-Mandel-type squeezing S_HM")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        _state_args(p)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--phi", type=float, default=None)
        g.add_argument("--phi-sweep", type=_range, default=None, metavar="START:STOP:COUNT")
        g.add_argument("--alpha-sweep", type=_range, default=None, metavar="START:STOP:COUNT",
                       help="sweep |alpha| keeping the phase of --alpha-re/--alpha-im")

    for name, help_text in (("correlation", "correlation function g^(N)(0)"),
                            ("mandel", "Mandel parameter Q_N")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        _state_args(p)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--alpha-sweep", type=_range, default=None, metavar="START:STOP:COUNT")
        g.add_argument("--q-sweep", type=_range, default=None, metavar="START:STOP:COUNT")

    p = sub.add_parser("sweep", parents=[common], help="generic one-axis sweep")
    p.add_argument("--quantity", required=True,
                   choices=("hillery", "hong-mandel", "hong_mandel", "correlation", "mandel", "moment"))
    p.add_argument("--axis", required=True, choices=("phi", "alpha_abs", "q"))
    p.add_argument("--range", dest="rng", type=_range, required=True, metavar="START:STOP:COUNT")
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--alpha-re", type=float, default=None)
    p.add_argument("--alpha-im", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--order", "-N", dest="N", type=int, default=None)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--ordering", choices=("normal", "antinormal", "number-power"), default=None)

    p = sub.add_parser("figure", parents=[common], help="reproduce a figure preset as CSV files")
    p.add_argument("preset", choices=sorted(PRESETS))

    p = sub.add_parser("state", parents=[common], help="PACS coefficients as level,re,im rows")
    _state_args(p, order=False)
    return parser


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _alpha(args) -> complex:
    return complex(args.alpha_re, args.alpha_im)


def _single_or_sweep(quantity: str, args, fixed: dict, axis_args) -> int:
    axis = None
    for name, rng in axis_args:
        if rng is not None:
            axis = (name, rng)
    if axis is None:
        row = evaluate_point(quantity, {"L": 0, "ordering": "normal", "phi": 0.0, **fixed}, args.tol)
        with _output(args.out) as out:
            write_rows([row], quantity, out)
        if row["error"]:
            print(f"qpacs: {quantity} failed: {row['error']}", file=sys.stderr)
            return 1
        return 0
    name, (start, stop, count) = axis
    key = {"phi": "phi", "alpha_abs": None, "q": "q"}[name]
    if key:
        fixed.pop(key, None)
    spec = SweepSpec(quantity, name, start, stop, count, fixed)
    with _output(args.out) as out:
        return run_sweep(spec, out, tol=args.tol, threads=args.threads, err=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args, parser)
    except SweepSpecError as exc:
        print(f"qpacs: {exc}", file=sys.stderr)
        return 2
    except (QPACSError, ValueError, ArithmeticError) as exc:
        print(f"qpacs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(args, parser) -> int:
    cmd = args.command
    if cmd == "normal-order":
        chosen = [x is not None for x in (args.quadrature, args.hillery)] + [bool(args.word)]
        if sum(chosen) != 1:
            parser.error("give exactly one of: a word, --quadrature J, --hillery N")
        with _output(args.out) as out:
            if args.word:
                print(normal_order(args.word).to_text(), file=out)
            else:
                exp = quadrature_power(args.quadrature) if args.quadrature else hillery_quadrature_square(args.hillery)
                print(f"prefactor {exp.prefactor}", file=out)
                for w in exp.weights():
                    print(f"phase weight {w:+d}", file=out)
                    print(exp.phase_terms[w].to_text(), file=out)
        return 0

    if cmd == "figure":
        out_dir = args.out or f"figures/{args.preset}"
        return run_figure(args.preset, out_dir, tol=args.tol, threads=args.threads)

    if cmd == "state":
        st = pacs_state(_alpha(args), args.m, args.q)
        with _output(args.out) as out:
            out.write("level,re,im\n")
            for k, re, im in st.to_rows():
                out.write(f"{k},{re:.17e},{im:.17e}\n")
        return 0

    if cmd == "moment":
        L = args.N if args.L is None else args.L
        if args.ordering == "number-power" and L != args.N:
            parser.error("number-power takes only --N")
        fixed = {"q": args.q, "alpha": _alpha(args), "m": args.m, "N": args.N, "L": L,
                 "ordering": args.ordering}
        return _single_or_sweep("moment", args, fixed, [])

    if cmd in ("hillery", "hong-mandel"):
        quantity = cmd.replace("-", "_")
        fixed = {"q": args.q, "alpha": _alpha(args), "m": args.m, "N": args.N,
                 "phi": 0.0 if args.phi is None else args.phi}
        return _single_or_sweep(quantity, args, fixed,
                                [("phi", args.phi_sweep), ("alpha_abs", args.alpha_sweep)])

    if cmd in ("correlation", "mandel"):
        fixed = {"q": args.q, "alpha": _alpha(args), "m": args.m, "N": args.N}
        return _single_or_sweep(cmd, args, fixed,
                                [("alpha_abs", args.alpha_sweep), ("q", args.q_sweep)])

    if cmd == "sweep":
        quantity = args.quantity.replace("-", "_")
        fixed = {}
        for key in ("q", "m", "N", "L", "phi", "ordering"):
            val = getattr(args, key)
            if val is not None:
                fixed[key] = val
        if args.alpha_re is not None or args.alpha_im is not None:
            fixed["alpha"] = complex(args.alpha_re or 0.0, args.alpha_im or 0.0)
        start, stop, count = args.rng
        spec = SweepSpec(quantity, args.axis, start, stop, count, fixed)
        with _output(args.out) as out:
            return run_sweep(spec, out, tol=args.tol, threads=args.threads, err=sys.stderr)

    parser.error(f"unknown command {cmd}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
