"""Command-line interface: ``walshlab <command> [options]``.

Exit status is 2 for argument errors, 1 for failed checks or violated
preconditions and 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import io as wio
from .checks import run_all
from .counterexample import CounterexampleSpec, divergence_experiment
from .dyadic import GridFunction, integrate
from .summability import (
    dirichlet_kernel,
    fejer_kernel,
    maximal_operator,
    mean_stack,
    norlund_kernel,
    t_kernel,
    weight_diagnostics,
)
from .signals import make_signal
from .systems import SystemKind, fourier_coeffs, synthesize
from .weights import NAMED_CUSTOM, MeanFamily, Orientation, WeightSequence, make_weights


def load_custom_weights(ref: str) -> WeightSequence:
    if ref in NAMED_CUSTOM:
        return NAMED_CUSTOM[ref]()
    path = Path(ref)
    if not path.is_file():
        raise ValueError(f"no named weights or file called {ref!r}")
    return wio.read_weights(path)


def family_arg(text: str) -> MeanFamily:
    try:
        return MeanFamily.parse(text, custom_loader=load_custom_weights)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def weights_arg(text: str) -> WeightSequence:
    return make_weights(family_arg(text))


def alphas_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.split(",") if a.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"alphas must be comma-separated integers, got {text!r}") from None


class CommandError(Exception):
    """Precondition failure reported with exit status 1."""


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _note(message: str, args) -> None:
    # keep stdout clean when it carries the payload
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    print(message, file=stream)


def _input_grid(args, parser) -> GridFunction:
    if args.input and args.signal:
        parser.error("give either --input or --signal, not both")
    if args.input:
        try:
            return wio.read_grid(args.input)
        except (OSError, ValueError) as exc:
            raise CommandError(f"cannot read {args.input}: {exc}") from None
    if args.signal:
        if args.resolution is None:
            parser.error("--signal needs --resolution")
        try:
            return make_signal(args.signal, args.resolution)
        except ValueError as exc:
            parser.error(str(exc))
    parser.error("an input is required (--input or --signal)")


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("WALSHLAB_THREADS")
    return int(env) if env else 1


def cmd_transform(args, parser):
    if args.inverse:
        if not args.input:
            parser.error("--inverse needs --input with a coefficient file")
        try:
            coeffs = wio.read_coeffs(args.input)
        except (OSError, ValueError) as exc:
            raise CommandError(f"cannot read {args.input}: {exc}") from None
        _emit(wio.format_grid(synthesize(coeffs)), args.out)
        return 0
    f = _input_grid(args, parser)
    _emit(wio.format_coeffs(fourier_coeffs(f, args.system)), args.out)
    return 0


def cmd_kernel(args, parser):
    if args.resolution is None:
        parser.error("kernel needs --resolution")
    meta = {"kernel": args.type, "n": args.n, "system": args.system}
    if args.type == "dirichlet":
        g = dirichlet_kernel(args.n, args.system, args.resolution)
    elif args.type == "fejer":
        g = fejer_kernel(args.n, args.system, args.resolution)
    else:
        if args.family is None:
            parser.error("--type t needs --family")
        fam = args.family
        w = make_weights(fam)
        orient = Orientation.parse(args.orientation) if args.orientation else fam.orientation
        build = t_kernel if orient is Orientation.T else norlund_kernel
        g = build(args.n, w, args.system, args.resolution)
        meta = {"family": fam.name, "orientation": orient.value, **meta}
    _emit(wio.format_grid(g, **meta), args.out)
    return 0


def _family_and_orientation(args):
    fam = args.family
    orient = Orientation.parse(args.orientation) if args.orientation else fam.orientation
    return fam, make_weights(fam), orient


def cmd_mean(args, parser):
    f = _input_grid(args, parser)
    fam, w, orient = _family_and_orientation(args)
    g = GridFunction(mean_stack(f, [args.n], w, args.system, orient)[0])
    meta = {"family": fam.name, "orientation": orient.value, "n": args.n, "system": args.system}
    _emit(wio.format_grid(g, **meta), args.out)
    return 0


def cmd_maximal(args, parser):
    f = _input_grid(args, parser)
    fam, w, orient = _family_and_orientation(args)
    g = maximal_operator(f, w, args.nmax, args.system, orientation=orient, threads=_threads(args))
    meta = {"family": fam.name, "orientation": orient.value, "nmax": args.nmax, "system": args.system}
    _emit(wio.format_grid(g, **meta), args.out)
    summary = {
        "family": fam.name,
        "nmax": args.nmax,
        "system": args.system,
        "sup_maximal": g.sup_norm(),
        "sup_input": f.sup_norm(),
        "mean_maximal": integrate(g),
    }
    _note(json.dumps(summary), args)
    return 0


def cmd_converge(args, parser):
    f = _input_grid(args, parser)
    fam, w, orient = _family_and_orientation(args)
    nmax = args.nmax or len(f)
    Q = w.Q(nmax)
    ns = np.arange(1, nmax + 1)
    ns = ns[Q[ns] > 0]
    means = mean_stack(f, ns, w, args.system, orient)
    err = np.abs(means - f.values[None, :])
    rows = [
        {"n": int(n), "sup_error": float(e.max()), "l1_error": float(e.mean())}
        for n, e in zip(ns, err)
    ]
    _emit(wio.format_table(rows, ("n", "sup_error", "l1_error"), args.json), args.out)
    return 0


def cmd_weights(args, parser):
    fam = args.family
    diag = weight_diagnostics(make_weights(fam), args.nmax, args.nmin)
    _emit(wio.format_table(diag.rows(), diag.columns, args.json), args.out)
    _note(
        json.dumps({"family": fam.name, "node_constant": diag.node_constant, "cond1_constant": diag.cond1_constant}),
        args,
    )
    return 0


def cmd_counterexample(args, parser):
    try:
        spec = CounterexampleSpec(args.p, args.alphas)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    if spec.K < 2:
        raise CommandError("need at least two alphas")
    try:
        report = divergence_experiment(spec, args.weights, args.resolution, threads=_threads(args))
    except (ValueError, IndexError) as exc:
        raise CommandError(str(exc)) from None
    columns = ("k", "alpha_k", "n_k", "min_abs_T", "paper_bound", "weak_quasinorm", "hardy_norm", "ratio")
    _emit(wio.format_table(report.as_dicts(), columns, args.json), args.out)
    _note(f"# weights={args.weights.label} hypothesis: {report.hypothesis}", args)
    return 0


def cmd_selfcheck(args, parser):
    t0 = time.perf_counter()
    results = run_all(args.only or None)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} ({r.seconds:.2f}s): {r.detail}")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {time.perf_counter() - t0:.2f}s")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walshlab", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None, help="worker threads (env WALSHLAB_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_opts(p, table=False):
        p.add_argument("--input", help="grid function CSV")
        p.add_argument("--signal", help="signal spec, e.g. random:7 or walsh:5")
        p.add_argument("--resolution", "-N", type=int, help="resolution for --signal")
        p.add_argument("--system", choices=[s.value for s in SystemKind], default="walsh")
        p.add_argument("--out", help="output file (default stdout)")
        if table:
            p.add_argument("--json", action="store_true", help="emit the table as JSON")

    p = sub.add_parser("transform", help="Fourier coefficients of a grid function")
    io_opts(p)
    p.add_argument("--inverse", action="store_true", help="synthesise a grid from a coefficient CSV")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("kernel", help="Dirichlet, Fejer or T kernel")
    p.add_argument("--type", choices=("dirichlet", "fejer", "t"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", type=family_arg)
    p.add_argument("--orientation", choices=("t", "norlund"))
    p.add_argument("--resolution", "-N", type=int)
    p.add_argument("--system", choices=[s.value for s in SystemKind], default="walsh")
    p.add_argument("--out")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("mean", help="one T or Norlund mean")
    io_opts(p)
    p.add_argument("--family", type=family_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orientation", choices=("t", "norlund"))
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("maximal", help="maximal operator over n <= nmax")
    io_opts(p)
    p.add_argument("--family", type=family_arg, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--orientation", choices=("t", "norlund"))
    p.set_defaults(func=cmd_maximal)

    p = sub.add_parser("converge", help="per-n approximation errors")
    io_opts(p, table=True)
    p.add_argument("--family", type=family_arg, required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--orientation", choices=("t", "norlund"))
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("weights", help="growth diagnostics of a weight sequence")
    p.add_argument("--family", type=family_arg, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--nmin", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("counterexample", help="divergence table of the lacunary construction")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--alphas", type=alphas_arg, required=True)
    p.add_argument("--weights", type=weights_arg, required=True, help="family name or custom:<name|csv>")
    p.add_argument("--resolution", "-N", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("selfcheck", help="run the identity and reproduction suite")
    p.add_argument("--only", action="append", help="run only the named check (repeatable)")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "out"):
        args.out = None
    try:
        return args.func(args, parser)
    except CommandError as exc:
        print(f"walshlab {args.command}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, IndexError) as exc:
        print(f"walshlab {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
