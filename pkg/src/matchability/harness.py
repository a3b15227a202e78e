"""Experiment runner: feasibility profiles, recovery curves, model sweeps.

Experiments are declared as :class:`ExperimentSpec` (built from CLI flags
or a YAML config) and produce tidy CSV rows, one metric per row.  Output
is deterministic for a fixed (spec, seed) pair regardless of thread
count: each task derives its own seed from the task path and rows merge
in spec order.  Per-task wall times go to a separate timings sidecar so
the results file stays byte-reproducible.
"""

from __future__ import annotations

import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._rng import derive_seed
from .channel import UniformChannelSpec, corrupt_uniform
from .edgelist import read_edge_list
from .errors import InputError
from .estimators import matchability_profile
from .generators import (
    ErGnm,
    ErGnp,
    GeneratorSpec,
    NewmanWatts,
    PrefAttach,
    RandomRegular,
    RingLattice,
    WattsStrogatz,
    generate,
)
from .graphs import Graph, Permutation, largest_component, summary_stats
from .matcher import FaqOptions, accuracy_by_degree, faq_match, match_accuracy

CSV_HEADER = "experiment,kind,source,n,seed,replicate,k,p,c,metric,value"

_GENERATOR_NAMES = {
    "er_gnp": (ErGnp, ("n", "alpha")),
    "er_gnm": (ErGnm, ("n", "m")),
    "ring_lattice": (RingLattice, ("n", "d")),
    "newman_watts": (NewmanWatts, ("n", "d", "beta")),
    "watts_strogatz": (WattsStrogatz, ("n", "d", "beta")),
    "pref_attach": (PrefAttach, ("n", "gamma", "d")),
    "random_regular": (RandomRegular, ("n", "d")),
}


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    kind: str
    source: str
    n: int
    seed: int
    replicate: str
    k: str
    p: str
    c: str
    metric: str
    value: float

    def to_csv(self) -> str:
        return ",".join(
            [
                self.experiment,
                self.kind,
                self.source.replace(",", ";"),
                str(self.n),
                str(self.seed),
                self.replicate,
                self.k,
                self.p,
                self.c,
                self.metric,
                repr(float(self.value)),
            ]
        )


@dataclass
class ExperimentSpec:
    kind: str
    experiment_id: str = "exp"
    generator: GeneratorSpec | None = None
    input_path: str | None = None
    one_indexed: bool = False
    n_override: int | None = None
    use_largest_component: bool = False
    models: list[tuple[str, GeneratorSpec]] = field(default_factory=list)
    p_grid: list[tuple[str, float]] = field(default_factory=list)
    k_grid: list[float] = field(default_factory=list)
    c_grid: list[float] = field(default_factory=list)
    replicates: int = 1
    m: int = 1000
    restarts: int = 0
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.replicates < 1:
            raise InputError("replicates must be >= 1")
        if self.threads < 1:
            raise InputError("threads must be >= 1")


def generator_label(spec: GeneratorSpec) -> str:
    for name, (cls, fields) in _GENERATOR_NAMES.items():
        if type(spec) is cls:
            args = ";".join(f"{f}={getattr(spec, f)}" for f in fields)
            return f"{name}({args})"
    return type(spec).__name__


def generator_from_dict(d: dict) -> GeneratorSpec:
    d = dict(d)
    name = d.pop("model", None)
    if name not in _GENERATOR_NAMES:
        raise InputError(f"unknown generator model {name!r}")
    cls, fields = _GENERATOR_NAMES[name]
    missing = [f for f in fields if f not in d]
    extra = [f for f in d if f not in fields]
    if missing or extra:
        raise InputError(f"{name} takes fields {fields}; missing {missing}, extra {extra}")
    kwargs = {}
    for f in fields:
        raw = d[f]
        kwargs[f] = int(raw) if f in {"n", "m", "d"} else float(raw)
    return cls(**kwargs)


def generator_from_string(s: str) -> GeneratorSpec:
    match = re.fullmatch(r"\s*(\w+)\s*\(([^)]*)\)\s*", s)
    if not match:
        raise InputError(f"cannot parse generator spec {s!r}; expected name(k=v,...)")
    name, body = match.groups()
    d: dict = {"model": name}
    for part in filter(None, (p.strip() for p in re.split("[,;]", body))):
        if "=" not in part:
            raise InputError(f"bad generator argument {part!r}")
        key, val = part.split("=", 1)
        d[key.strip()] = val.strip()
    return generator_from_dict(d)


def parse_grid_tokens(entries) -> list[tuple[str, float]]:
    """Keep the configured spelling of each grid value for CSV echoing."""
    out = []
    for e in entries:
        token = e if isinstance(e, str) else repr(float(e))
        out.append((token, float(token)))
    return out


def resolve_k_grid(entries, n: int) -> list[int]:
    """Counts pass through; fractions in (0, 1] become max(2, round(f*n))."""
    ks = []
    for e in entries:
        is_fraction = isinstance(e, float) and (e <= 1.0 or not e.is_integer())
        if is_fraction:
            if not 0.0 < e <= 1.0:
                raise InputError(f"fractional k entry must lie in (0, 1], got {e}")
            ks.append(max(2, min(n, round(e * n))))
        else:
            k = int(e)
            if k < 2:
                raise InputError(f"k counts must be >= 2, got {k}")
            ks.append(k)
    return ks


def paper_model_suite(n: int, degree: int) -> list[tuple[str, GeneratorSpec]]:
    """The five-model comparison at matched mean degree."""
    if degree % 2:
        raise InputError("model suite degree must be even (WS constraint)")
    pa_d = max(1, degree // 2)
    return [
        ("er_gnm", ErGnm(n, n * degree // 2)),
        ("ws_beta_0.05", WattsStrogatz(n, degree, 0.05)),
        ("ws_beta_0.75", WattsStrogatz(n, degree, 0.75)),
        ("pa_gamma_1", PrefAttach(n, 1.0, pa_d)),
        ("pa_gamma_2", PrefAttach(n, 2.0, pa_d)),
    ]


def _load_input_graph(spec: ExperimentSpec) -> Graph:
    graph = read_edge_list(
        spec.input_path, n=spec.n_override, one_indexed=spec.one_indexed
    )
    if spec.use_largest_component:
        graph = largest_component(graph)
    return graph


def _run_tasks(tasks, threads: int):
    """Run (label, fn) tasks, preserving order; returns (results, timings)."""

    def work(i):
        t0 = time.perf_counter()
        out = tasks[i][1]()
        return out, time.perf_counter() - t0

    if threads <= 1 or len(tasks) <= 1:
        done = [work(i) for i in range(len(tasks))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            done = list(ex.map(work, range(len(tasks))))
    results = [r for r, _ in done]
    timings = [(tasks[i][0], dt) for i, (_, dt) in enumerate(done)]
    return results, timings


def _mean_rows(rows: list[ResultRow]) -> list[ResultRow]:
    """Replicate-averaged companions, keyed by everything but the replicate."""
    groups: dict[tuple, list[ResultRow]] = {}
    order: list[tuple] = []
    for row in rows:
        key = (row.experiment, row.kind, row.source, row.n, row.k, row.p, row.c, row.metric)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(row)
    means = []
    for key in order:
        members = groups[key]
        value = sum(r.value for r in members) / len(members)
        first = members[0]
        means.append(
            ResultRow(
                experiment=first.experiment,
                kind=first.kind,
                source=first.source,
                n=first.n,
                seed=first.seed,
                replicate="mean",
                k=first.k,
                p=first.p,
                c=first.c,
                metric=first.metric,
                value=value,
            )
        )
    return means


def _profile_rows(spec, source_label, graph_for_rep, model_index=0):
    """Shared feasibility-profile machinery for profile and sweep runs."""

    def task(rep):
        def run():
            graph = graph_for_rep(rep)
            ks = resolve_k_grid(spec.k_grid, graph.n)
            prof = matchability_profile(
                graph, ks, spec.m, seed=derive_seed(spec.seed, 1, model_index, rep)
            )
            rows = []
            for rec in prof.records:
                for metric, value in (
                    ("xhat_mean", rec.xhat_mean),
                    ("xhat_norm", rec.xhat_norm),
                    ("xhat_min", float(rec.xhat_min)),
                    ("phat_star", rec.phat_star),
                ):
                    rows.append(
                        ResultRow(
                            experiment=spec.experiment_id,
                            kind=spec.kind,
                            source=source_label,
                            n=graph.n,
                            seed=spec.seed,
                            replicate=str(rep),
                            k=str(rec.k),
                            p="",
                            c="",
                            metric=metric,
                            value=value,
                        )
                    )
            return rows

        return run

    return [(f"{source_label}/rep{rep}", task(rep)) for rep in range(spec.replicates)]


def run_feasibility_profile(spec: ExperimentSpec):
    if not spec.k_grid:
        raise InputError("feasibility profile needs a k grid")
    if spec.generator is not None:
        label = generator_label(spec.generator)

        def graph_for_rep(rep, _g=spec.generator):
            return generate(_g, seed=derive_seed(spec.seed, 0, 0, rep))

    elif spec.input_path:
        label = str(spec.input_path)
        fixed = _load_input_graph(spec)

        def graph_for_rep(rep, _f=fixed):
            return _f

    else:
        raise InputError("profile needs a generator or an input edge list")
    tasks = _profile_rows(spec, label, graph_for_rep)
    results, timings = _run_tasks(tasks, spec.threads)
    rows = [row for chunk in results for row in chunk]
    return rows + _mean_rows(rows), timings


def run_model_sweep(spec: ExperimentSpec):
    if not spec.models:
        raise InputError("model sweep needs a model list")
    if not spec.k_grid:
        raise InputError("model sweep needs a k grid")
    tasks = []
    for mi, (tag, gen_spec) in enumerate(spec.models):
        def graph_for_rep(rep, _g=gen_spec, _mi=mi):
            return generate(_g, seed=derive_seed(spec.seed, 0, _mi, rep))

        tasks.extend(_profile_rows(spec, tag, graph_for_rep, model_index=mi))
    results, timings = _run_tasks(tasks, spec.threads)
    rows = [row for chunk in results for row in chunk]
    return rows + _mean_rows(rows), timings


def run_recovery_curve(spec: ExperimentSpec):
    if not spec.p_grid:
        raise InputError("recovery curve needs a p grid")
    if spec.generator is not None:
        label = generator_label(spec.generator)
        base = generate(spec.generator, seed=derive_seed(spec.seed, 0, 0, 0))
    elif spec.input_path:
        label = str(spec.input_path)
        base = _load_input_graph(spec)
    else:
        raise InputError("recovery needs a generator or an input edge list")
    identity = Permutation.identity(base.n)
    c_grid = list(spec.c_grid)

    def task(pi, token, p, rep):
        def run():
            b = corrupt_uniform(
                base,
                UniformChannelSpec(p, identity),
                seed=derive_seed(spec.seed, 1, pi, rep),
            )
            res = faq_match(
                base,
                b,
                FaqOptions(init="identity", restarts=spec.restarts),
                seed=derive_seed(spec.seed, 2, pi, rep),
            )
            common = dict(
                experiment=spec.experiment_id,
                kind=spec.kind,
                source=label,
                n=base.n,
                seed=spec.seed,
                replicate=str(rep),
                k="",
                p=token,
            )
            rows = [
                ResultRow(c="", metric="accuracy", value=match_accuracy(res.P_hat, identity), **common)
            ]
            for c in c_grid:
                rows.append(
                    ResultRow(
                        c=repr(float(c)),
                        metric="accuracy_by_degree",
                        value=accuracy_by_degree(res.P_hat, identity, base, c),
                        **common,
                    )
                )
            return rows

        return run

    tasks = [
        (f"p={token}/rep{rep}", task(pi, token, p, rep))
        for pi, (token, p) in enumerate(spec.p_grid)
        for rep in range(spec.replicates)
    ]
    results, timings = _run_tasks(tasks, spec.threads)
    rows = [row for chunk in results for row in chunk]
    return rows + _mean_rows(rows), timings


def run_summary_stats(paths, one_indexed=False, n_override=None, use_largest_component=False):
    """SummaryStats rows for each edge-list input."""
    rows = []
    for path in paths:
        graph = read_edge_list(path, n=n_override, one_indexed=one_indexed)
        if use_largest_component:
            graph = largest_component(graph)
        stats = summary_stats(graph)
        for metric, value in (
            ("n", float(stats.n)),
            ("mean_degree", stats.mean_degree),
            ("density", stats.density),
            ("clustering", stats.clustering),
            ("skewness", stats.skewness),
            ("rsd", stats.rsd),
        ):
            rows.append(
                ResultRow(
                    experiment="stats",
                    kind="summary_stats",
                    source=str(path),
                    n=stats.n,
                    seed=0,
                    replicate="0",
                    k="",
                    p="",
                    c="",
                    metric=metric,
                    value=value,
                )
            )
    return rows


def stats_table(rows: list[ResultRow]) -> str:
    """Aligned text table, one line per input."""
    metrics = ["n", "mean_degree", "density", "clustering", "skewness", "rsd"]
    by_source: dict[str, dict[str, float]] = {}
    for row in rows:
        by_source.setdefault(row.source, {})[row.metric] = row.value
    header = f"{'network':<32}" + "".join(f"{m:>14}" for m in metrics)
    lines = [header]
    for source, vals in by_source.items():
        cells = []
        for m in metrics:
            v = vals[m]
            cells.append(f"{int(v):>14}" if m == "n" else f"{v:>14.4f}")
        lines.append(f"{source:<32}" + "".join(cells))
    return "\n".join(lines)


def write_rows(rows: list[ResultRow], path) -> None:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.to_csv() + "\n")


def write_timings(timings, path) -> None:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write("task,wall_time_s\n")
        for label, dt in timings:
            fh.write(f"{label},{dt!r}\n")


def rows_to_csv(rows: list[ResultRow]) -> str:
    return CSV_HEADER + "\n" + "".join(row.to_csv() + "\n" for row in rows)


RUNNERS = {
    "feasibility_profile": run_feasibility_profile,
    "model_sweep": run_model_sweep,
    "recovery_curve": run_recovery_curve,
}


def run_experiment(spec: ExperimentSpec):
    if spec.kind not in RUNNERS:
        raise InputError(f"unknown experiment kind {spec.kind!r}")
    return RUNNERS[spec.kind](spec)
