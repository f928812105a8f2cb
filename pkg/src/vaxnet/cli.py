"""Command-line interface: simulate, hardness, gen-hrg.

Flags can also come from a TOML config file (--config); explicit flags win.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from . import harness, hrg
from .graph import dump_edge_list, load_edge_list
from .hardness import convert, densest_subgraph_bruteforce, special_case, verify_claim1
from .strategies import STRATEGY_NAMES


def _parse_hrg(text: str, seed: int) -> hrg.HrgParams:
    """Parse 'n=4039,m=88234,b=2.5,T=0.6' into HrgParams."""
    fields = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        if not value:
            raise ValueError(f"bad --hrg fragment {part!r}; expected key=value")
        fields[key.strip()] = value.strip()
    try:
        return hrg.HrgParams(
            n=int(fields.pop("n")),
            target_m=int(fields.pop("m")),
            exponent_b=float(fields.pop("b", 2.5)),
            temperature=float(fields.pop("T", 0.6)),
            seed=seed,
        )
    except KeyError as exc:
        raise ValueError(f"--hrg is missing required key {exc}") from None
    finally:
        if fields:
            raise ValueError(f"unknown --hrg keys: {sorted(fields)}")


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="vaxnet",
        description="Vaccination-strategy simulations on weighted contact networks",
    )
    top.add_argument("-v", "--verbose", action="store_true")
    sub = top.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a strategy x alpha sweep")
    sim.add_argument("--config", help="TOML file with the same keys as the flags")
    sim.add_argument("--graph", help="edge-list file (SNAP format)")
    sim.add_argument("--hrg", help="hyperbolic random graph, e.g. n=4039,m=88234,b=2.5,T=0.6")
    sim.add_argument("--directed", action="store_true", default=None,
                     help="treat the input edge list as directed and symmetrize")
    sim.add_argument("--strategies", help="comma-separated strategy names (default: all 16)")
    sim.add_argument("--alphas", help="comma-separated vaccination fractions")
    sim.add_argument("--reps", type=int, help="repetitions (default 100)")
    sim.add_argument("--seed", type=int, help="master seed (default 0)")
    sim.add_argument("--beta", type=float, help="infection rate (default 2.0)")
    sim.add_argument("--gamma", type=float, help="recovery rate (default 0.6)")
    sim.add_argument("--init-infected", type=int,
                     help="initially infectious nodes (default: 0.5%% of n)")
    sim.add_argument("--max-rounds", type=int)
    sim.add_argument("--workers", type=int)
    sim.add_argument("--label", help="dataset label used in the CSV")
    sim.add_argument("--out", help="CSV output path (default: print summary only)")

    hard = sub.add_parser("hardness", help="check Claim 1 on a small instance")
    hard.add_argument("--h-graph", required=True, help="edge-list file for H")
    hard.add_argument("--k", type=int, required=True, help="vaccination budget")

    gen = sub.add_parser("gen-hrg", help="generate a hyperbolic random graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--b", type=float, default=2.5)
    gen.add_argument("--T", type=float, default=0.6)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    return top


_SIM_DEFAULTS = {
    "graph": None,
    "hrg": None,
    "directed": False,
    "strategies": list(STRATEGY_NAMES),
    "alphas": list(harness.DEFAULT_ALPHAS),
    "reps": 100,
    "seed": 0,
    "beta": 2.0,
    "gamma": 0.6,
    "init_infected": None,
    "max_rounds": 100_000,
    "workers": 1,
    "label": "",
    "out": None,
}


def _merged_options(args: argparse.Namespace) -> dict:
    """Defaults < config file < explicit CLI flags."""
    opts = dict(_SIM_DEFAULTS)
    if args.config:
        with open(args.config, "rb") as fh:
            config = tomllib.load(fh)
        unknown = set(config) - set(opts)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        opts.update(config)
    for key in _SIM_DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    if isinstance(opts["strategies"], str):
        opts["strategies"] = _csv_list(opts["strategies"])
    if isinstance(opts["alphas"], str):
        opts["alphas"] = [float(a) for a in _csv_list(opts["alphas"])]
    return opts


def _cmd_simulate(args: argparse.Namespace) -> int:
    opts = _merged_options(args)
    if bool(opts["graph"]) == bool(opts["hrg"]):
        raise ValueError("exactly one of --graph / --hrg is required")
    if opts["hrg"]:
        dataset = _parse_hrg(opts["hrg"], opts["seed"])
    else:
        dataset = opts["graph"]

    spec = harness.ExperimentSpec(
        dataset=dataset,
        strategies=opts["strategies"],
        alphas=opts["alphas"],
        repetitions=opts["reps"],
        master_seed=opts["seed"],
        beta=opts["beta"],
        gamma=opts["gamma"],
        initial_infectious=opts["init_infected"] or 0,  # filled below
        max_rounds=opts["max_rounds"],
        dataset_label=opts["label"],
        directed=opts["directed"],
        workers=opts["workers"],
    )
    g = harness.load_dataset(spec)
    if spec.initial_infectious == 0:
        spec.initial_infectious = max(1, round(0.005 * g.n))  # the 0.5% rule
    rows = harness.run_experiment(spec, graph=g)
    if opts["out"]:
        harness.write_csv(rows, opts["out"])
        print(f"wrote {len(rows)} rows to {opts['out']}")
    print(harness.summarize(rows))
    return 0


def _cmd_hardness(args: argparse.Namespace) -> int:
    h = load_edge_list(args.h_graph)
    known = special_case(h, args.k)
    if known is not None:
        print(f"special case applies: OPT_H({args.k}) = {known}")
    _, opt_h = densest_subgraph_bruteforce(h, args.k)
    res = verify_claim1(h, args.k)
    print(f"H: n={h.n} m={h.m} k={args.k}")
    print(f"OPT_H = {opt_h}")
    print(f"OPT_G = {res.opt_g}")
    verdict = "holds" if res.holds else "VIOLATED"
    print(f"Claim 1 (OPT_G = OPT_H + n_H + 1): {verdict}")
    return 0 if res.holds else 1


def _cmd_gen_hrg(args: argparse.Namespace) -> int:
    params = hrg.HrgParams(
        n=args.n, target_m=args.m, exponent_b=args.b,
        temperature=args.T, seed=args.seed,
    )
    g = hrg.generate(params)
    dump_edge_list(g, args.out)
    print(f"wrote HRG with n={g.n}, m={g.m} to {args.out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "hardness":
            return _cmd_hardness(args)
        if args.command == "gen-hrg":
            return _cmd_gen_hrg(args)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
