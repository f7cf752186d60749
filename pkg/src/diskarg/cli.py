"""Command-line entry point: ``diskarg <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import experiments as ex
from .blaschke import product_log
from .bounded import log_f
from .errors import AtZeroError, TailBoundExceeded
from .fraccalc import rl_integral
from .geometry import BoundaryPoint
from .local_zeros import L_value
from .measures import BoundedFunctionSpec, frostman_integral, frostman_sum

EXIT_BUDGET = 2


def _parse_levels(text: str):
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _parse_complex(text: str) -> complex:
    text = text.strip()
    if "," in text:
        re, im = text.split(",")
        return complex(float(re), float(im))
    return complex(text.replace("i", "j"))


def _generate(args) -> BoundedFunctionSpec:
    kind = args.kind
    vertex = BoundaryPoint(args.vertex_theta)
    if kind == "power":
        return BoundedFunctionSpec(zeros=ex.gen_power_radial(args.beta, args.count, vertex))
    if kind == "example1":
        return ex.example1_spec(vertex)
    if kind == "example2":
        return ex.example2_spec(args.alpha)
    rng = np.random.default_rng(args.seed)
    if kind == "conjugate":
        base = ex.random_zero_sequence(rng, n_max=args.count)
        return BoundedFunctionSpec(zeros=ex.gen_conjugate_pairs(base))
    if kind == "random":
        return ex.random_spec(rng)
    raise SystemExit(f"unknown generator {kind!r}")


def _load_spec(args) -> BoundedFunctionSpec:
    if getattr(args, "spec", None):
        if args.spec == "-":
            return BoundedFunctionSpec.from_json(sys.stdin.read())
        with open(args.spec) as fh:
            return BoundedFunctionSpec.from_json(fh.read())
    if getattr(args, "kind", None):
        return _generate(args)
    raise SystemExit("give --spec FILE or --kind GENERATOR")


def _emit(text: str, args):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dumps(obj) -> str:
    return json.dumps(ex._jsonable(obj), indent=2, sort_keys=True)


def cmd_eval(args):
    spec = _load_spec(args)
    z = _parse_complex(args.z)
    out = {"z": [z.real, z.imag]}
    try:
        pl = product_log(spec.zeros, z, args.tol)
        lf = log_f(spec, z, args.tol)
    except AtZeroError:
        out.update({"at_zero": True, "f": [0.0, 0.0]})
        _emit(_dumps(out), args)
        return 0
    except TailBoundExceeded as exc:
        raise SystemExit(f"tail bound exceeded: {exc}")
    out.update(
        {
            "at_zero": False,
            "log_f": [lf.real, lf.imag],
            "arg_f": lf.imag,
            "abs_f": math.exp(lf.real),
            "log_B": [pl.value.real, pl.value.imag],
            "tail_bound": pl.tail_bound,
            "on_cut": pl.on_cut,
            "cut_multiplicity": pl.cut_multiplicity,
        }
    )
    if args.h is not None:
        L = L_value(spec, z, args.h, args.tol)
        out["L"] = [L.real, L.imag]
    _emit(_dumps(out), args)
    return 0


def cmd_frostman(args):
    spec = _load_spec(args)
    res = frostman_integral(spec.complete_measure, BoundaryPoint(args.vertex_theta), args.gamma)
    _emit(_dumps(res.__dict__), args)
    return 0


def _sweep_kwargs(args):
    return dict(
        grid_angles=args.grid_angles,
        rtol=args.tol,
        failure_budget=args.failure_budget,
    )


def _finish_sweep(rep, args):
    text = rep.to_csv() if args.out == "csv" else rep.to_json(indent=2, sort_keys=True)
    _emit(text, args)
    if rep.failure_budget_exceeded:
        sys.stderr.write(f"quadrature failures ({rep.total_failures}) exceed the budget\n")
        return EXIT_BUDGET
    return 0


def cmd_sweep(args):
    spec = _load_spec(args)
    rep = ex.verify_theorem_arg(
        spec, BoundaryPoint(args.vertex_theta), args.gamma, args.sigma, _parse_levels(args.levels), **_sweep_kwargs(args)
    )
    return _finish_sweep(rep, args)


def cmd_sweep_lnb(args):
    spec = _load_spec(args)
    rep = ex.verify_theorem_lnb(
        spec, BoundaryPoint(args.vertex_theta), args.gamma, args.sigma, args.h, _parse_levels(args.levels), **_sweep_kwargs(args)
    )
    return _finish_sweep(rep, args)


def cmd_gen(args):
    _emit(_generate(args).to_json(indent=2), args)
    return 0


_RL_FUNCTIONS = {
    "one": lambda x: np.ones_like(x),
    "x": lambda x: x,
    "kernel": lambda x: np.abs(1 - x * np.exp(0.3j)) ** -2,
}


def cmd_oracle(args):
    out = {"oracle": args.oracle}
    if args.oracle == "rl":
        f = _RL_FUNCTIONS[args.function]
        ref = ex.oracle_naive_rl(f, args.gamma, args.r, args.panels)
        main = rl_integral(f, args.gamma, args.r).value
        out.update({"function": args.function, "gamma": args.gamma, "r": args.r, "oracle_value": ref, "main_value": main})
    else:
        spec = _load_spec(args)
        if args.oracle == "product":
            z = _parse_complex(args.z)
            ref = ex.oracle_naive_product(spec.zeros, z)
            main = complex(np.exp(product_log(spec.zeros, z, args.tol).value))
            out.update({"oracle_value": [ref.real, ref.imag], "main_value": [main.real, main.imag]})
        else:
            vertex = BoundaryPoint(args.vertex_theta)
            ref = ex.oracle_frostman(spec.zeros, vertex, args.gamma)
            main = frostman_sum(type(spec.zeros)(spec.zeros.zeros), vertex, args.gamma)
            out.update({"oracle_value": ref, "main_value": main})
    _emit(_dumps(out), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diskarg", description="Blaschke products, fractional integrals and Frostman sweeps.")
    sub = p.add_subparsers(dest="command", required=True)

    def spec_opts(sp):
        sp.add_argument("--spec", help="BoundedFunctionSpec JSON file ('-' for stdin)")
        gen_opts(sp, required=False)

    def gen_opts(sp, required):
        sp.add_argument("--kind", required=required, choices=["power", "conjugate", "example1", "example2", "random"])
        sp.add_argument("--beta", type=float, default=4.0)
        sp.add_argument("--count", type=int, default=1000)
        sp.add_argument("--alpha", type=float, default=0.5)
        sp.add_argument("--seed", type=int, default=0)

    def common(sp):
        sp.add_argument("--vertex-theta", type=float, default=0.0)
        sp.add_argument("--gamma", type=float, default=0.5)
        sp.add_argument("--tol", type=float, default=1e-10)
        sp.add_argument("--output", help="write to this file instead of stdout")

    e = sub.add_parser("eval", help="evaluate one spec at one point")
    spec_opts(e)
    common(e)
    e.add_argument("--z", required=True, help="point as 're,im' or '0.5+0.2j'")
    e.add_argument("--h", type=float, default=None, help="also report L(z, h, f)")
    e.set_defaults(func=cmd_eval)

    f = sub.add_parser("frostman", help="Frostman integral of the complete measure")
    spec_opts(f)
    common(f)
    f.set_defaults(func=cmd_frostman)

    for name, fn in (("sweep", cmd_sweep), ("sweep-lnb", cmd_sweep_lnb)):
        s = sub.add_parser(name, help="radius-ladder sweep" + (" of L(z, h, f)" if name == "sweep-lnb" else ""))
        spec_opts(s)
        common(s)
        s.set_defaults(tol=1e-8)
        s.add_argument("--sigma", type=float, default=2.0)
        s.add_argument("--levels", default="4:16", help="'lo:hi' or comma list of j (radius 1 - 2^-j)")
        s.add_argument("--grid-angles", type=int, default=65)
        s.add_argument("--h", type=float, default=0.5)
        s.add_argument("--failure-budget", type=float, default=0.05)
        s.add_argument("--out", choices=["csv", "json"], default="csv")
        s.set_defaults(func=fn)

    g = sub.add_parser("gen", help="emit a generated spec as JSON")
    gen_opts(g, required=True)
    g.add_argument("--vertex-theta", type=float, default=0.0)
    g.add_argument("--output")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="run a brute-force reference next to the main path")
    o.add_argument("oracle", choices=["product", "rl", "frostman"])
    spec_opts(o)
    common(o)
    o.add_argument("--z", default="0.5,0.5")
    o.add_argument("--r", type=float, default=0.81)
    o.add_argument("--panels", type=int, default=10**6)
    o.add_argument("--function", choices=sorted(_RL_FUNCTIONS), default="one")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
