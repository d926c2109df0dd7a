"""Command-line front door: state I/O, suite invocation, CLT runs.

Exit codes: 0 pass, 1 suite violation, 2 usage/parse error, 3 numeric
precondition failure.  All floats print with 17 significant digits so
outputs are byte-identical across runs and platforms.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import conv, experiments, magic, states, weyl
from .errors import DvconvError, ParseError, UnsupportedDimension
from .zmod import gmatrix_new

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

RANDOM_PRESETS = ("random-pure", "random-mixed")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".dvconv-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _load_state(descriptor: str, d: int, n: int, seed: int | None) -> states.DensityMatrix:
    """Resolve a preset name, seeded random preset, or JSON file path."""
    if descriptor in states.PRESETS:
        return states.preset_state(descriptor, d, n)
    if descriptor in RANDOM_PRESETS:
        if seed is None:
            raise ParseError(f"preset {descriptor!r} requires --seed")
        rank = 1 if descriptor == "random-pure" else d**n
        return states.random_density(seed, d, n, rank)
    if not os.path.exists(descriptor):
        raise ParseError(f"state descriptor {descriptor!r} is neither a preset "
                         f"({', '.join(states.PRESETS + RANDOM_PRESETS)}) nor a file")
    with open(descriptor) as fh:
        return states.state_from_json(json.load(fh))


def _spec_from_args(args, d: int, n: int) -> conv.ConvolutionSpec:
    if d == 2:
        raise ParseError("convolution is undefined at d=2: no positive "
                         "invertible parameter matrix exists mod 2")
    if args.spec is not None:
        if d in (3, 5):
            raise ParseError(f"no {args.spec} parameters exist at d={d}")
        if args.spec == "beam-splitter":
            return conv.beam_splitter_spec(d, n)
        return conv.amplifier_spec(d, n)
    if args.G is not None:
        entries = [int(v) for v in args.G.split(",")]
        if len(entries) != 4:
            raise ParseError("--G expects four comma-separated entries")
        return conv.ConvolutionSpec(d, n, gmatrix_new(entries, d))
    return conv.default_spec(d, n)


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--G", help="comma-separated g00,g01,g10,g11 over Z_d")
    p.add_argument("--spec", choices=["beam-splitter", "amplifier"],
                   help="named parameter matrix")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gap(args) -> int:
    if args.state is None:
        raise ParseError("gap needs --preset or --input")
    rho = _load_state(args.state, args.d, args.n, args.seed)
    table = weyl.char_function(rho)
    if args.emit_char:
        _atomic_write(args.emit_char,
                      json.dumps(states.char_to_json(table), sort_keys=True))
    ok, group = states.is_msps(rho)
    out = {
        "d": rho.d,
        "n": rho.n,
        "magic_gap": magic.magic_gap(rho),
        "log_magic_gap": magic.log_magic_gap(rho),
        "pauli_rank": weyl.pauli_rank(rho),
        "is_msps": ok,
    }
    mv = magic.mean_vector(rho)
    out["mean_vector"] = list(mv.k)
    out["mean_state_generators"] = [list(g) for g in mv.group.generators]
    if args.json:
        print(json.dumps(out, sort_keys=True, default=str))
    else:
        print(f"MG        {_fmt(out['magic_gap'])}")
        print(f"LMG       {_fmt(out['log_magic_gap'])}")
        print(f"PauliRank {out['pauli_rank']}")
        print(f"IsMSPS    {str(out['is_msps']).lower()}")
        print(f"MeanVec   {out['mean_vector']}")
        print(f"Group     {out['mean_state_generators']}")
    return EXIT_PASS


def cmd_convolve(args) -> int:
    spec = _spec_from_args(args, args.d, args.n)
    a = _load_state(args.a, args.d, args.n, args.seed)
    b = _load_state(args.b, args.d, args.n,
                    None if args.seed is None else args.seed + 1)
    out = conv.convolve(a, b, spec)
    if args.check_duality:
        dual = conv.convolve_characteristic(
            weyl.char_function(a), weyl.char_function(b), spec)
        dev = float(np.max(np.abs(weyl.char_function(out).values - dual.values)))
        print(f"duality-deviation {_fmt(dev)}")
    _atomic_write(args.out, json.dumps(states.state_to_json(out), sort_keys=True))
    return EXIT_PASS


def cmd_clt(args) -> int:
    spec = conv.beam_splitter_spec(args.d, args.n)
    rho = _load_state(args.state, args.d, args.n, args.seed)
    series = experiments.clt_run(rho, spec, args.steps)
    if args.format == "json":
        payload = {
            "d": series.d, "n": series.n,
            "displacement": list(series.displacement),
            "magic_gap": series.mg, "base_norm": series.base_norm,
            "steps": series.steps,
        }
        text = json.dumps(payload, sort_keys=True, default=float, indent=2) + "\n"
    else:
        lines = ["N,norm,bound," + ",".join(
            f"H_{a}" for a in experiments.ALPHAS_SECOND_LAW)]
        for s in series.steps:
            row = [str(s["N"]), _fmt(s["norm"]), _fmt(s["bound"])]
            row += [_fmt(s["entropies"][a]) for a in experiments.ALPHAS_SECOND_LAW]
            lines.append(",".join(row))
        text = "\n".join(lines) + "\n"
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_suite(args) -> int:
    fn = experiments.SUITES[args.name]
    kwargs = {}
    if args.name not in ("stability", "min-output"):
        kwargs["seed"] = args.seed if args.seed is not None else 0
        kwargs["trials"] = args.trials
    if args.name == "clt":
        kwargs["steps"] = args.steps
    report = fn(**kwargs)
    text = report.to_json() + "\n" if args.format == "json" else report.to_csv()
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    print(f"suite {args.name}: {'PASS' if report.passed else 'FAIL'} "
          f"(max violation {_fmt(report.max_violation)})", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_VIOLATION


def cmd_enumerate(args) -> int:
    if args.kind == "msps":
        items = states.enumerate_msps(args.d, args.n)
    else:
        items = states.enumerate_pure_stabilizers(args.d, args.n)
    payload = [states.state_to_json(s) for s in items]
    text = json.dumps(payload, sort_keys=True)
    if args.out:
        _atomic_write(args.out, text)
    else:
        print(text)
    return EXIT_PASS


def cmd_capacity_bounds(args) -> int:
    spec = _spec_from_args(args, args.d, args.n)
    sigma = _load_state(args.sigma, args.d, args.n, args.seed)
    chan = conv.ConvolutionChannel(spec, sigma)
    lower, upper = conv.holevo_bounds(chan)
    print(f"lower {_fmt(lower)}")
    print(f"upper {_fmt(upper)}")
    if args.rho0:
        rho0 = _load_state(args.rho0, args.d, args.n,
                           None if args.seed is None else args.seed + 2)
        val = conv.holevo_weyl_ensemble(chan, rho0)
        print(f"weyl-ensemble {_fmt(val)}")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dvconv",
        description="Discrete-variable quantum convolution toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gap", help="magic gap, LMG, Pauli rank, mean vector")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--preset", dest="state")
    p.add_argument("--input", dest="state")
    p.add_argument("--seed", type=int)
    p.add_argument("--emit-char", help="write the characteristic table to a file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_gap)

    p = sub.add_parser("convolve", help="write rho boxtimes sigma as a JSON state")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--check-duality", action="store_true")
    _add_spec_args(p)
    p.set_defaults(fn=cmd_convolve)

    p = sub.add_parser("clt", help="iterated beam-splitter convolution series")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--preset", dest="state", default="random-pure")
    p.add_argument("--input", dest="state")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=cmd_clt)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("name", choices=sorted(experiments.SUITES))
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--jobs", type=int, default=1,
                   help="accepted for compatibility; suites run serially")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("enumerate", help="enumerate MSPS or pure stabilizers")
    p.add_argument("kind", choices=["msps", "stabilizers"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("capacity-bounds", help="Holevo capacity sandwich")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--sigma", required=True)
    p.add_argument("--rho0")
    p.add_argument("--seed", type=int)
    _add_spec_args(p)
    p.set_defaults(fn=cmd_capacity_bounds)

    return parser


def _reject_invalid_config(args) -> None:
    """RunConfig invariants rejected at parse time."""
    if args.command in ("convolve", "clt", "capacity-bounds") and args.d == 2:
        raise ParseError("d=2 is rejected for convolution commands")
    if args.command == "clt" and args.d in (3, 5):
        raise ParseError(f"no beam-splitter parameters exist at d={args.d}")
    spec_name = getattr(args, "spec", None)
    if spec_name is not None and args.d in (3, 5):
        raise ParseError(f"no {spec_name} parameters exist at d={args.d}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _reject_invalid_config(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedDimension, DvconvError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
