"""Command-line interface.

Subcommands: kernel, decompose, cubature, cbc, discretize, fit, run.
The default output directory comes from the TORUSDISC_OUT environment
variable (falling back to the current directory).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import kernels
from .coeffio import read_coeffs, write_coeffs
from .cubature import (cbc_search, dual_weight_sum, fibonacci_rule,
                       korobov_rule, random_rule, worst_case_error)
from .discretization import estimate_er
from .dyadic import (FAMILIES, HOELDER_H, ClassSpec, block_norm,
                     blocks_for_box, h_seminorm)
from .rates import fit_rate
from .runner import load_config, read_result_csv, run_experiment


def _cmd_kernel(args):
    if args.kind == "dirichlet":
        f = kernels.dirichlet(args.order)
    elif args.kind == "fejer":
        f = kernels.fejer(args.order)
    elif args.kind == "vallee_poussin":
        f = kernels.vallee_poussin(args.order)
    elif args.kind == "block":
        f = kernels.block_kernel(args.order)
    else:
        f, tail = kernels.bernoulli(args.r, args.trunc, dim=args.dim)
        print(f"# l2 tail bound of the truncation: {tail!r}", file=sys.stderr)
    if args.dim > 1 and args.kind != "bernoulli":
        from .trig import tensor
        f = tensor(*([f] * args.dim))
    if args.grid:
        vals = f.sample((args.grid,) * f.dim).real
        for v in vals.reshape(-1):
            print(repr(float(v)))
    else:
        write_coeffs(f, sys.stdout)
    return 0


def _cmd_decompose(args):
    with open(args.coeffs, encoding="utf-8") as fh:
        f = read_coeffs(fh)
    for b in blocks_for_box(f.box):
        nrm = block_norm(f, b.s, args.p)
        if nrm:
            print(f"s={','.join(str(x) for x in b.s)} "
                  f"norm={nrm!r} scaled={2.0 ** (args.r * b.l1) * nrm!r}")
    print(f"h_seminorm(r={args.r}, p={args.p}) = "
          f"{h_seminorm(f, args.r, args.p)!r}")
    return 0


def _build_rule_arg(text, dim, seed):
    """Parse fibonacci:N | korobov:M:a1,a2,... | random:M."""
    kind, _, rest = text.partition(":")
    if kind == "fibonacci":
        return fibonacci_rule(int(rest))
    if kind == "korobov":
        m, gen = rest.split(":", 1)
        return korobov_rule(int(m), tuple(int(x) for x in gen.split(",")))
    if kind == "random":
        return random_rule(int(rest), dim, seed)
    raise ValueError(f"unknown rule spec {text!r}")


def _cmd_cubature(args):
    rule = _build_rule_arg(args.rule, args.dim, args.seed)
    spec = ClassSpec(args.family, args.r, args.p, args.B)
    rep = worst_case_error(rule, spec, trunc=args.trunc)
    print(f"m = {rule.m}, d = {rule.dim}, family = {args.family}, r = {args.r}")
    print(f"worst-case error = {rep.value!r} (+ tail {rep.tail!r}) [{rep.method}]")
    return 0


def _cmd_cbc(args):
    a = cbc_search(args.m, args.dim, args.r, trunc=args.trunc)
    score = dual_weight_sum(args.m, a, args.r,
                            trunc=None if args.trunc is None else (args.trunc,) * args.dim)
    print("a = " + ",".join(str(x) for x in a))
    print(f"dual sum = {score!r}")
    return 0


def _cmd_discretize(args):
    rule = _build_rule_arg(args.points, args.dim, args.seed)
    spec = ClassSpec(HOELDER_H, args.r, args.p)
    kappa = None
    if args.algebra_a is not None:
        kappa = worst_case_error(rule, ClassSpec("fourier_hull", args.r, args.p),
                                 trunc=args.trunc)
    rep = estimate_er(rule.nodes, spec, args.samples, args.seed,
                      block_cap=args.block_cap, weights=rule.weights,
                      transfer_kappa=kappa, transfer_a=args.algebra_a)
    print(f"m = {rep.m}, samples = {args.samples}, r = {args.r}, p = {args.p}")
    print(f"empirical sup (lower evidence)  = {rep.empirical_sup!r}")
    print(f"witness lower bound             = {rep.witness_lower!r}")
    if rep.transfer_upper is not None:
        print(f"transferred upper bound (a = {args.algebra_a}) = {rep.transfer_upper!r}")
    return 0


def _cmd_fit(args):
    rows = read_result_csv(args.csv)
    pts = [(row[0], row[6]) for row in rows]
    fit = fit_rate(pts, freeze_b=args.freeze_b)
    print(fit.summary())
    return 0


def _cmd_run(args):
    cfg = load_config(args.config)
    run_experiment(cfg)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="torusdisc")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="emit kernel coefficients or grid values")
    p.add_argument("kind", choices=["dirichlet", "fejer", "vallee_poussin",
                                    "block", "bernoulli"])
    p.add_argument("--order", type=int, default=1, help="order j or block index s")
    p.add_argument("--r", type=float, default=2.0, help="Bernoulli smoothness")
    p.add_argument("--trunc", type=int, default=64, help="Bernoulli truncation")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--grid", type=int, default=0, help="print values on this grid instead")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("decompose", help="block decomposition and h-seminorm")
    p.add_argument("coeffs", help="coefficient file")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("cubature", help="rule construction and worst-case error")
    p.add_argument("rule", help="fibonacci:N | korobov:M:a1,a2 | random:M")
    p.add_argument("--family", choices=list(FAMILIES), default="fourier_hull")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_cubature)

    p = sub.add_parser("cbc", help="component-by-component generator search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--trunc", type=int, default=None)
    p.set_defaults(func=_cmd_cbc)

    p = sub.add_parser("discretize", help="er estimation, witness, transfer bound")
    p.add_argument("points", help="fibonacci:N | korobov:M:a1,a2 | random:M")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--block-cap", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--algebra-a", type=float, default=None,
                   help="quasi-algebra parameter enabling the transfer bound")
    p.set_defaults(func=_cmd_discretize)

    p = sub.add_parser("fit", help="rate fit on a runner CSV")
    p.add_argument("csv")
    p.add_argument("--freeze-b", type=float, default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("run", help="full config-driven experiment")
    p.add_argument("config")
    p.set_defaults(func=_cmd_run)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
