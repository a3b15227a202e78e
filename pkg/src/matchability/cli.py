"""Command line interface.

Subcommands: stats, profile, sweep, recover, harden, match.
Exit codes: 0 success, 2 input error, 3 resource (budget) error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from . import harness
from .edgelist import read_edge_list, write_edge_list
from .errors import DomainError, InputError, ResourceError
from .generators import noise_hardening
from .graphs import largest_component
from .matcher import FaqOptions, faq_match


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="base RNG seed")
    parser.add_argument("--threads", type=int, default=None, help="worker threads")
    parser.add_argument("--out", default=None, help="output CSV path (default stdout)")
    parser.add_argument("--config", default=None, help="YAML experiment config")


def _add_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", default=None, help="edge-list file for a fixed graph")
    parser.add_argument("--model", default=None, help='generator, e.g. "er_gnp(n=500;alpha=0.3)"')
    parser.add_argument("--one-indexed", action="store_true", default=None)
    parser.add_argument("--n", type=int, default=None, help="vertex count override for files")
    parser.add_argument(
        "--largest-component", action="store_true", default=None,
        help="restrict file input to its largest connected component",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchability",
        description="Corrupting-channel matchability estimators and graph matching",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="summary statistics of edge-list files")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--one-indexed", action="store_true")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--largest-component", action="store_true")
    p.add_argument("--out", default=None, help="also write tidy CSV here")

    p = sub.add_parser("profile", help="matchability feasibility profile")
    _add_common(p)
    _add_source(p)
    p.add_argument("--id", default=None, help="experiment id echoed in rows")
    p.add_argument("--k-grid", default=None, help="comma list; ints or fractions of n")
    p.add_argument("--m", type=int, default=None, help="permutation sample size per k")
    p.add_argument("--replicates", type=int, default=None)

    p = sub.add_parser("sweep", help="feasibility profiles across graph models")
    _add_common(p)
    p.add_argument("--id", default=None)
    p.add_argument("--suite-n", type=int, default=None, help="n for the built-in model suite")
    p.add_argument("--suite-degree", type=int, default=None, help="mean degree for the suite")
    p.add_argument("--k-grid", default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--replicates", type=int, default=None)

    p = sub.add_parser("recover", help="corruption-recovery accuracy curve")
    _add_common(p)
    _add_source(p)
    p.add_argument("--id", default=None)
    p.add_argument("--p-grid", default=None, help="comma list of channel probabilities")
    p.add_argument("--c-grid", default=None, help="comma list of top-degree fractions")
    p.add_argument("--replicates", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)

    p = sub.add_parser("harden", help="inject ER noise to restore matchability")
    p.add_argument("--input", required=True)
    p.add_argument("--p", type=float, required=True, help="channel noise to harden against")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--one-indexed", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output edge-list path")

    p = sub.add_parser("match", help="one-shot matching of two edge lists")
    p.add_argument("--graph-a", required=True)
    p.add_argument("--graph-b", required=True)
    p.add_argument("--one-indexed", action="store_true")
    p.add_argument("--init", default="barycenter", choices=["identity", "barycenter", "random"])
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=30)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--complement", default="never", choices=["never", "auto", "always"])
    p.add_argument("--p-estimate", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the vertex mapping CSV here")
    return parser


def _split_tokens(s: str) -> list[str]:
    return [t for t in (piece.strip() for piece in s.split(",")) if t]


def _parse_k_tokens(s: str) -> list:
    out = []
    for t in _split_tokens(s):
        out.append(int(t) if t.isdigit() else float(t))
    return out


def _config_blocks(path, kind: str) -> tuple[dict, list[dict]]:
    with open(path) as fh:
        doc = yaml.safe_load(fh) or {}
    blocks = [b for b in doc.get("experiments", []) if b.get("kind") == kind]
    if not blocks:
        raise InputError(f"config {path} has no experiments of kind {kind!r}")
    return doc, blocks


def _spec_from_block(kind: str, block: dict, doc: dict, args) -> harness.ExperimentSpec:
    def pick(flag, key, default):
        if flag is not None:
            return flag
        if key in block:
            return block[key]
        return doc.get(key, default)

    spec = harness.ExperimentSpec(
        kind=kind,
        experiment_id=pick(getattr(args, "id", None), "id", kind),
        replicates=int(pick(getattr(args, "replicates", None), "replicates", 1)),
        m=int(pick(getattr(args, "m", None), "m", 1000)),
        restarts=int(pick(getattr(args, "restarts", None), "restarts", 0)),
        seed=int(pick(args.seed, "seed", 0)),
        threads=int(pick(args.threads, "threads", 1)),
        one_indexed=bool(pick(getattr(args, "one_indexed", None), "one_indexed", False)),
        n_override=pick(getattr(args, "n", None), "n", None),
        use_largest_component=bool(
            pick(getattr(args, "largest_component", None), "largest_component", False)
        ),
    )

    model_flag = getattr(args, "model", None)
    if model_flag:
        spec.generator = harness.generator_from_string(model_flag)
    elif "generator" in block:
        gen = block["generator"]
        spec.generator = (
            harness.generator_from_string(gen)
            if isinstance(gen, str)
            else harness.generator_from_dict(gen)
        )
    input_flag = getattr(args, "input", None)
    if input_flag:
        spec.input_path = input_flag
        spec.generator = None
    elif spec.generator is None and "input" in block:
        spec.input_path = block["input"]

    if kind == "model_sweep":
        suite_n = getattr(args, "suite_n", None)
        suite_degree = getattr(args, "suite_degree", None)
        if suite_n is not None or suite_degree is not None:
            if suite_n is None or suite_degree is None:
                raise InputError("the built-in suite needs both --suite-n and --suite-degree")
            spec.models = harness.paper_model_suite(suite_n, suite_degree)
        elif "models" in block:
            models = []
            for entry in block["models"]:
                entry = dict(entry)
                tag = entry.pop("tag", None) or entry.get("model")
                models.append((tag, harness.generator_from_dict(entry)))
            spec.models = models
        elif "suite" in block:
            spec.models = harness.paper_model_suite(
                int(block["suite"]["n"]), int(block["suite"]["degree"])
            )
        else:
            raise InputError("model sweep needs models, suite, or --suite-n/--suite-degree")

    k_flag = getattr(args, "k_grid", None)
    if k_flag is not None:
        spec.k_grid = _parse_k_tokens(k_flag)
    elif "k_grid" in block:
        spec.k_grid = list(block["k_grid"])

    p_flag = getattr(args, "p_grid", None)
    if p_flag is not None:
        spec.p_grid = harness.parse_grid_tokens(_split_tokens(p_flag))
    elif "p_grid" in block:
        spec.p_grid = harness.parse_grid_tokens(block["p_grid"])

    c_flag = getattr(args, "c_grid", None)
    if c_flag is not None:
        spec.c_grid = [float(t) for t in _split_tokens(c_flag)]
    elif "c_grid" in block:
        spec.c_grid = [float(c) for c in block["c_grid"]]

    return spec


def _run_experiments(kind: str, args) -> int:
    if args.config:
        doc, blocks = _config_blocks(args.config, kind)
    else:
        doc, blocks = {}, [{}]
    all_rows = []
    all_timings = []
    for block in blocks:
        spec = _spec_from_block(kind, block, doc, args)
        rows, timings = harness.run_experiment(spec)
        all_rows.extend(rows)
        all_timings.extend(timings)
    out = args.out if args.out is not None else doc.get("out")
    if out:
        harness.write_rows(all_rows, out)
        harness.write_timings(all_timings, str(out) + ".timings.csv")
    else:
        sys.stdout.write(harness.rows_to_csv(all_rows))
    return 0


def _cmd_stats(args) -> int:
    rows = harness.run_summary_stats(
        args.inputs,
        one_indexed=args.one_indexed,
        n_override=args.n,
        use_largest_component=args.largest_component,
    )
    print(harness.stats_table(rows))
    if args.out:
        harness.write_rows(rows, args.out)
    return 0


def _cmd_harden(args) -> int:
    graph = read_edge_list(args.input, n=args.n, one_indexed=args.one_indexed)
    hardened = noise_hardening(graph, args.p, args.seed)
    write_edge_list(hardened, args.out, header=f"hardened against p={args.p}")
    print(f"wrote {hardened.edge_count()} edges to {args.out}")
    return 0


def _cmd_match(args) -> int:
    a = read_edge_list(args.graph_a, one_indexed=args.one_indexed)
    b = read_edge_list(args.graph_b, one_indexed=args.one_indexed)
    opts = FaqOptions(
        init=args.init,
        restarts=args.restarts,
        max_iters=args.max_iters,
        tol=args.tol,
        complement_mode=args.complement,
        p_estimate=args.p_estimate,
    )
    res = faq_match(a, b, opts, seed=args.seed)
    print(
        f"objective={res.objective} iterations={res.iterations} "
        f"converged={res.converged} restarts_used={res.restarts_used} "
        f"complemented={res.complemented}"
    )
    mapping = "vertex_a,vertex_b\n" + "".join(
        f"{i},{v}\n" for i, v in enumerate(res.P_hat.sigma.tolist())
    )
    if args.out:
        Path(args.out).write_text(mapping)
    else:
        sys.stdout.write(mapping)
    return 0


_KINDS = {
    "profile": "feasibility_profile",
    "sweep": "model_sweep",
    "recover": "recovery_curve",
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "harden":
            return _cmd_harden(args)
        if args.command == "match":
            return _cmd_match(args)
        return _run_experiments(_KINDS[args.command], args)
    except (InputError, DomainError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
