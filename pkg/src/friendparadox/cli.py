"""``paradox`` command-line interface.

Exit codes: 0 success, 1 internal error, 2 bad input or usage.
Every stochastic command takes ``--seed`` (falling back to the
``PARADOX_SEED`` environment variable) and is a pure function of its
inputs, flags and seed.
"""
from __future__ import annotations

import argparse
import json
import os
import pathlib
import sys
import traceback

import numpy as np

from . import __version__
from .graph import AttributeMap, DiGraph, Graph, InputError, load_attributes, load_edge_list
from .nullmodels import (configuration_model, place_attributes, powerlaw_degree_sequence,
                         rewire_to_assortativity, shuffle_attributes)
from .paradox import gfp_gap, gsfp_fraction, mean_comparison_flags, sfp_by_degree, sfp_fraction
from .perception import illusion_search, majority_illusion, threshold_cascade
from .polling import friend_poll, node_poll
from .predictor import predict_correlated, predict_independent
from .report import build_report, dumps
from .structure import DegreeModel, build_degree_model, degree_attribute_correlation


class UsageError(Exception):
    pass


# helpers -------------------------------------------------------------------

def _read_graph(path: str, directed: bool = False) -> Graph | DiGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            return load_edge_list(fh, directed=directed)
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from None


def _read_undirected(path: str) -> Graph:
    return _read_graph(path, directed=False)


def _read_attrs(path: str, g: Graph) -> AttributeMap:
    with open(path, encoding="utf-8", newline="") as fh:
        try:
            return load_attributes(fh, g)
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PARADOX_SEED")
    if env is None:
        raise UsageError("--seed is required (or set PARADOX_SEED)")
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"PARADOX_SEED must be an integer, got {env!r}") from None


def _name(args) -> str:
    return args.name or pathlib.Path(args.graph).stem


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        pathlib.Path(path).write_text(text, encoding="utf-8")


def _fmt(x: float) -> str:
    return repr(float(x))


def _parse_labels(g: Graph, spec: str) -> list[int]:
    labels = [s.strip() for s in spec.split(",") if s.strip()]
    if not labels:
        raise InputError("empty node list")
    try:
        return [g.index(lab) for lab in labels]
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


# commands ------------------------------------------------------------------

def cmd_analyze(args) -> None:
    g = _read_graph(args.graph, directed=args.directed)
    attrs = None
    if args.attrs:
        attrs = _read_attrs(args.attrs, g)
    seed = _seed(args) if args.predict else args.seed
    report = build_report(g, attrs, name=_name(args), threshold=args.threshold,
                          count_all=args.count_all, predict=args.predict,
                          samples=args.samples, seed=seed,
                          timestamp=not args.no_timestamp)
    _write(dumps(report), args.out)


def cmd_model(args) -> None:
    g = _read_undirected(args.graph)
    _write(dumps(build_degree_model(g).to_dict()), args.out)


def cmd_sfp_by_degree(args) -> None:
    g = _read_undirected(args.graph)
    curve = sfp_by_degree(g, args.mode)
    if args.csv:
        rows = ["degree,fraction"] + [f"{k},{_fmt(f)}" for k, (f, _) in curve.items()]
        _write("\n".join(rows) + "\n", args.csv)
    payload = {
        "name": _name(args),
        "mode": args.mode,
        "curve": {str(k): {"fraction": f, "count": c} for k, (f, c) in curve.items()},
    }
    _write(dumps(payload), args.out)


def cmd_predict(args) -> None:
    if (args.graph is None) == (args.model is None):
        raise UsageError("give exactly one of GRAPH or --model")
    seed = _seed(args) if args.mode == "correlated" else args.seed
    if args.model:
        with open(args.model, encoding="utf-8") as fh:
            try:
                model = DegreeModel.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise InputError(f"{args.model}: {exc}") from None
        g = None
    else:
        g = _read_undirected(args.graph)
        model = build_degree_model(g)

    notice = None
    correlated = None
    rho = args.rho if args.rho is not None else model.transsortativity
    if args.mode == "correlated":
        if rho is None:
            notice = "transsortativity undefined; correlated mode skipped"
        else:
            correlated = predict_correlated(model, rho, args.samples, seed, args.sfp)
    if notice:
        print(notice, file=sys.stderr)

    payload = {
        "name": args.name or pathlib.Path(args.graph or args.model).stem,
        "mode": args.mode,
        "seed": seed,
        "independent": predict_independent(model, args.sfp).to_dict(),
        "correlated": None if correlated is None else correlated.to_dict(),
        "notice": notice,
    }
    if g is not None:
        payload["observed"] = sfp_fraction(g, args.sfp)
        payload["measured_by_degree"] = {
            str(k): {"fraction": f, "count": c} for k, (f, c) in sfp_by_degree(g, args.sfp).items()
        }
    _write(dumps(payload), args.out)


def cmd_rewire(args) -> None:
    g = _read_undirected(args.graph)
    seed = _seed(args)
    res = rewire_to_assortativity(g, args.target, args.max_iters, seed, args.tol)
    if args.graph_out:
        _write(res.graph.to_edge_list(), args.graph_out)
    _write(dumps(res.to_dict() | {"seed": seed}), args.out)


def cmd_shuffle_test(args) -> None:
    g = _read_undirected(args.graph)
    attrs = _read_attrs(args.attrs, g)
    seed = _seed(args)
    observed = {
        "gsfp_fraction": gsfp_fraction(g, attrs, args.mode),
        "degree_attribute_correlation": degree_attribute_correlation(g, attrs),
        "gfp_gap": gfp_gap(g, attrs).lhs,
        "mean_comparison_fraction": float(mean_comparison_flags(g, attrs).mean()),
    }
    trials = []
    for child in np.random.SeedSequence(seed).spawn(args.trials):
        shuffled = shuffle_attributes(attrs, child)
        trials.append({
            "gsfp_fraction": gsfp_fraction(g, shuffled, args.mode),
            "degree_attribute_correlation": degree_attribute_correlation(g, shuffled),
            "gfp_gap": gfp_gap(g, shuffled).lhs,
            "mean_comparison_fraction": float(mean_comparison_flags(g, shuffled).mean()),
        })
    below = sum(t["gsfp_fraction"] < observed["gsfp_fraction"] for t in trials)
    rhos = [abs(t["degree_attribute_correlation"]) for t in trials
            if t["degree_attribute_correlation"] is not None]
    payload = {
        "name": _name(args),
        "mode": args.mode,
        "seed": seed,
        "trials": args.trials,
        "observed": observed,
        "summary": {
            "fraction_below_observed": below / args.trials,
            "mean_abs_correlation": float(np.mean(rhos)) if rhos else None,
            "mean_gsfp_fraction": float(np.mean([t["gsfp_fraction"] for t in trials])),
            "mean_mean_comparison_fraction": float(np.mean([t["mean_comparison_fraction"] for t in trials])),
        },
        "shuffled": trials,
    }
    _write(dumps(payload), args.out)


def cmd_illusion_search(args) -> None:
    g = _read_undirected(args.graph)
    seed = _seed(args)
    res = illusion_search(g, args.size, args.threshold, args.budget, seed, args.count_all)
    attrs = res.attributes(g.n)
    if args.attrs_out:
        _write(attrs.to_csv(g.labels), args.attrs_out)
    cascade = threshold_cascade(g, res.nodes, args.threshold)
    payload = {
        "name": _name(args),
        "seed": seed,
        "set_size": args.size,
        "threshold": args.threshold,
        "nodes": [g.labels[i] for i in res.nodes],
        "illusion_fraction": res.illusion_fraction,
        "illusioned_nodes": round(res.illusion_fraction * int((attrs.values == 0).sum())),
        "iterations": res.iterations,
        "cascade_final_size": len(cascade.active),
        "illusion": majority_illusion(g, attrs, args.threshold, args.count_all).to_dict(),
    }
    _write(dumps(payload), args.out)


def cmd_poll(args) -> None:
    g = _read_undirected(args.graph)
    attrs = _read_attrs(args.attrs, g)
    seed = _seed(args)
    if args.method == "node":
        res = node_poll(g, attrs, args.n, seed, args.trials)
    else:
        res = friend_poll(g, attrs, args.n, args.correction, seed, args.trials)
    payload = res.to_dict() | {"seed": seed, "truth": attrs.prevalence}
    _write(dumps(payload), args.out)


def cmd_cascade(args) -> None:
    g = _read_undirected(args.graph)
    if args.seeds:
        seeds = _parse_labels(g, args.seeds)
    elif args.seed_attrs:
        seeds = [int(i) for i in np.flatnonzero(_read_attrs(args.seed_attrs, g).values)]
    else:
        raise UsageError("give --seeds or --seed-attrs")
    res = threshold_cascade(g, seeds, args.phi)
    if args.csv:
        _write(res.rounds_csv(), args.csv)
    payload = {
        "name": _name(args),
        "phi": args.phi,
        "seeds": [g.labels[i] for i in sorted(set(seeds))],
        "final_size": len(res.active),
        "rounds": res.rounds,
        "history": list(res.history),
        "active": [g.labels[i] for i in sorted(res.active)],
    }
    _write(dumps(payload), args.out)


def cmd_place(args) -> None:
    g = _read_undirected(args.graph)
    seed = _seed(args)
    res = place_attributes(g, args.prevalence, args.rho, args.max_iters, seed, args.tol)
    _write(res.attributes.to_csv(g.labels), args.attrs_out)
    _write(dumps({"achieved_value": res.achieved_value, "iterations_used": res.iterations_used,
                  "target": res.target, "seed": seed}), args.out)


def cmd_generate(args) -> None:
    seed = _seed(args)
    ss = np.random.SeedSequence(seed)
    seq_seed, graph_seed = ss.spawn(2)
    if args.degrees:
        text = pathlib.Path(args.degrees).read_text(encoding="utf-8")
        try:
            seq = [int(tok) for tok in text.split()]
        except ValueError as exc:
            raise InputError(f"{args.degrees}: {exc}") from None
    else:
        seq = powerlaw_degree_sequence(args.n, args.exponent, args.kmin, args.kmax, seq_seed)
    g = configuration_model(seq, graph_seed)
    _write(g.to_edge_list(), args.out)


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paradox", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_, graph=True):
        sp = sub.add_parser(name, help=help_, description=help_)
        if graph:
            sp.add_argument("graph", metavar="GRAPH", help="edge-list file")
        sp.add_argument("--out", "-o", help="output path (default stdout)")
        sp.add_argument("--seed", type=int, help="random seed (fallback: $PARADOX_SEED)")
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "full paradox report as JSON")
    sp.add_argument("--attrs", help="node,value CSV")
    sp.add_argument("--directed", action="store_true", help="read arcs u->v (u follows v)")
    sp.add_argument("--threshold", type=float, default=0.5)
    sp.add_argument("--count-all", action="store_true",
                    help="count trait holders in the illusion fraction too")
    sp.add_argument("--predict", action="store_true", help="attach strong-paradox predictions")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--name", help="network name (default: file stem)")
    sp.add_argument("--no-timestamp", action="store_true")

    add("model", cmd_model, "degree model (histogram + P(k'|k)) as JSON")

    sp = add("sfp-by-degree", cmd_sfp_by_degree, "strong-paradox fraction per degree")
    sp.add_argument("--mode", choices=("weak", "strict"), default="weak")
    sp.add_argument("--csv", help="write degree,fraction CSV here")
    sp.add_argument("--name")

    sp = sub.add_parser("predict", help="predict strong-paradox prevalence")
    sp.add_argument("graph", metavar="GRAPH", nargs="?")
    sp.add_argument("--model", help="degree-model JSON instead of a graph")
    sp.add_argument("--mode", choices=("independent", "correlated"), default="independent")
    sp.add_argument("--sfp", choices=("weak", "strict"), default="weak")
    sp.add_argument("--rho", type=float, help="neighbour correlation (default: transsortativity)")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--name")
    sp.add_argument("--out", "-o")
    sp.set_defaults(func=cmd_predict)

    sp = add("rewire", cmd_rewire, "degree-preserving rewiring toward a target assortativity")
    sp.add_argument("--target", type=float, required=True)
    sp.add_argument("--max-iters", type=int, default=100_000)
    sp.add_argument("--tol", type=float, default=0.01)
    sp.add_argument("--graph-out", help="write the rewired edge list here")

    sp = add("shuffle-test", cmd_shuffle_test, "compare paradoxes before/after shuffling the trait")
    sp.add_argument("--attrs", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--mode", choices=("weak", "strict"), default="weak")
    sp.add_argument("--name")

    sp = add("illusion-search", cmd_illusion_search, "search a trait set maximising the majority illusion")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--threshold", type=float, default=0.5)
    sp.add_argument("--budget", type=int, default=20_000)
    sp.add_argument("--count-all", action="store_true")
    sp.add_argument("--attrs-out", help="write the found set as node,value CSV")
    sp.add_argument("--name")

    sp = add("poll", cmd_poll, "estimate prevalence by node or friend polling")
    sp.add_argument("--attrs", required=True)
    sp.add_argument("--method", choices=("node", "friend"), default="node")
    sp.add_argument("--correction", choices=("none", "inverse-degree"), default="none")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=1)

    sp = add("cascade", cmd_cascade, "synchronous threshold cascade")
    sp.add_argument("--seeds", help="comma-separated node labels")
    sp.add_argument("--seed-attrs", help="node,value CSV; nodes with value 1 are seeds")
    sp.add_argument("--phi", type=float, default=0.5)
    sp.add_argument("--csv", help="write per-round activation counts here")
    sp.add_argument("--name")

    sp = add("place", cmd_place, "plant a binary trait with a target degree correlation")
    sp.add_argument("--prevalence", type=float, required=True)
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--max-iters", type=int, default=200_000)
    sp.add_argument("--tol", type=float, default=0.02)
    sp.add_argument("--attrs-out", required=True)

    sp = add("generate", cmd_generate, "configuration-model graph as an edge list", graph=False)
    sp.add_argument("--degrees", help="file of whitespace-separated degrees")
    sp.add_argument("--n", type=int, default=1000, help="power-law sequence length")
    sp.add_argument("--exponent", type=float, default=2.5)
    sp.add_argument("--kmin", type=int, default=1)
    sp.add_argument("--kmax", type=int)
    return p


STOCHASTIC = ("predict", "rewire", "shuffle-test", "illusion-search", "poll", "place", "generate")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"paradox: error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError, KeyError, OSError) as exc:
        print(f"paradox: error: {exc}", file=sys.stderr)
        return 2
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
