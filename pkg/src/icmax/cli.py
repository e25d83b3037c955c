"""Command-line front end and experiment harness.

Three subcommands:

  optimize      run selected optimizers for one or more targets, write a
                JSON report plus per-(target, algorithm) trace CSVs
  compare-perf  exact-vs-approximate quality/runtime table over sampled
                targets on one graph
  gen           write a generated benchmark graph as an edge list

Configuration comes from an optional flat key=value file plus command-line
flags; flags win. All result artifacts are deterministic for a fixed config
and seed; wall-clock measurements are segregated into timings.json and the
timing columns of the perf table so everything else stays byte-stable.

Exit codes: 0 success, 1 invalid configuration, 2 data error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
import scipy.linalg

from .graphs import (
    Graph,
    ParseError,
    generate_ba,
    generate_ws,
    largest_connected_component,
    load_edge_list,
    write_edge_list,
)
from .greedy import (
    BASELINE_STRATEGIES,
    GreedyTrace,
    approxi_sm,
    baseline_select,
    brute_force_optimum,
    default_candidates,
    exact_sm,
    insertion_trace,
)
from .linalg import SolverSpec, SolverConvergenceError, solver_deviation_notes
from .rand import child_seed, seeded_rng

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

ALGORITHMS = ("exact", "approx", "random", "top-degree", "top-cent", "oracle")
FORMATS = ("json", "csv")


class ConfigError(ValueError):
    """Invalid run configuration; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one harness invocation depends on.

    Exactly one of graph_path / generate supplies the graph; exactly one of
    targets / random_targets supplies the target nodes (ids are in the input
    file's namespace). Solver fields mirror SolverSpec.
    """

    graph_path: str | None = None
    generate: str | None = None
    targets: tuple[int, ...] = ()
    random_targets: int = 0
    k: int = 1
    algorithms: tuple[str, ...] = ("exact",)
    epsilon: float = 0.3
    weight: float = 1.0
    seed: int = 0
    solver_mode: str = "practical"
    residual_target: float = 1e-8
    max_iterations: int = 50_000
    m_cap: int | None = None
    sketch_constant: float = 24.0
    out: str = "results"
    formats: tuple[str, ...] = ("json", "csv")
    perf_targets: int = 20

    def validate(self) -> None:
        if (self.graph_path is None) == (self.generate is None):
            raise ConfigError("exactly one of graph/generate must be given")
        if self.graph_path is not None and not Path(self.graph_path).exists():
            raise ConfigError(f"graph file not found: {self.graph_path}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
        if self.targets and self.random_targets:
            raise ConfigError("give explicit targets or a random-target count, not both")
        if self.random_targets < 0:
            raise ConfigError("random_targets must be >= 0")
        if not 0.0 < self.epsilon <= 0.5:
            raise ConfigError("epsilon must be in (0, 1/2]")
        if self.weight <= 0.0:
            raise ConfigError("candidate weight must be positive")
        if self.m_cap is not None and self.m_cap < 1:
            raise ConfigError("m_cap must be >= 1")
        if self.sketch_constant <= 0.0:
            raise ConfigError("sketch_constant must be positive")
        if self.perf_targets < 1:
            raise ConfigError("perf_targets must be >= 1")
        for fmt in self.formats:
            if fmt not in FORMATS:
                raise ConfigError(f"unknown format {fmt!r}; expected one of {FORMATS}")
        if not self.formats:
            raise ConfigError("at least one output format is required")
        # constructing the spec validates mode/residual/max_iterations
        try:
            self.solver_spec()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def solver_spec(self, seed: int | None = None) -> SolverSpec:
        return SolverSpec(
            mode=self.solver_mode,
            residual_target=self.residual_target,
            max_iterations=self.max_iterations,
            seed=self.seed if seed is None else seed,
        )


# -- config file + flag merging ------------------------------------------

_LIST_KEYS = {"targets", "algorithms", "formats"}
_INT_KEYS = {"random_targets", "k", "seed", "max_iterations", "m_cap", "perf_targets"}
_FLOAT_KEYS = {"epsilon", "weight", "residual_target", "sketch_constant"}
_STR_KEYS = {"graph_path", "generate", "solver_mode", "out"}

# accepted spellings in config files, normalized to RunConfig field names
_KEY_ALIASES = {
    "graph": "graph_path",
    "target": "targets",
    "algo": "algorithms",
    "format": "formats",
}


def parse_config_file(path) -> dict[str, str]:
    """Flat key=value lines; '#' starts a comment; blank lines ignored."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        key = _KEY_ALIASES.get(key, key)
        if key not in _LIST_KEYS | _INT_KEYS | _FLOAT_KEYS | _STR_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def _coerce(key: str, value: str):
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        if key == "targets":
            return tuple(int(t) for t in value.split(",") if t.strip() != "")
        if key in _LIST_KEYS:
            return tuple(t.strip() for t in value.split(",") if t.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    return value


def build_config(file_values: dict[str, str], overrides: dict) -> RunConfig:
    """Defaults <- config file <- CLI overrides (None means not given)."""
    merged: dict = {}
    for key, value in file_values.items():
        merged[key] = _coerce(key, value)
    for key, value in overrides.items():
        if value is None or value == [] or value == ():
            continue
        merged[key] = tuple(value) if key in _LIST_KEYS else value
    config = RunConfig(**merged)
    config.validate()
    return config


# -- graph plumbing -------------------------------------------------------


def parse_generator_spec(spec: str, default_seed: int = 0):
    """'ws N K P [seed=S]' or 'ba N ATTACH [seed=S]' -> Graph factory call."""
    tokens = spec.replace(",", " ").split()
    if not tokens:
        raise ConfigError("empty generator spec")
    family, params = tokens[0].lower(), tokens[1:]
    seed = default_seed
    if params and params[-1].startswith("seed="):
        try:
            seed = int(params[-1].split("=", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad seed in generator spec {spec!r}") from exc
        params = params[:-1]
    if family not in ("ws", "ba"):
        raise ConfigError(f"unknown generator family {family!r}; expected ws or ba")
    try:
        if family == "ws":
            n, k_ring, p_rewire = int(params[0]), int(params[1]), float(params[2])
            extra = params[3:]
        else:
            n, attach = int(params[0]), int(params[1])
            extra = params[2:]
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"malformed generator spec {spec!r}") from exc
    if extra:
        raise ConfigError(f"trailing tokens in generator spec {spec!r}: {extra}")
    try:
        if family == "ws":
            return generate_ws(n, k_ring, p_rewire, seed), f"ws-{n}-{k_ring}-{p_rewire}"
        return generate_ba(n, attach, seed), f"ba-{n}-{attach}"
    except ValueError as exc:
        raise ConfigError(f"generator spec {spec!r}: {exc}") from exc


def _obtain_graph(config: RunConfig) -> tuple[Graph, np.ndarray, str]:
    """Returns (LCC graph, internal->original id map, label)."""
    if config.graph_path is not None:
        g, ids = load_edge_list(config.graph_path)
        label = Path(config.graph_path).stem
    else:
        g, label = parse_generator_spec(config.generate, default_seed=child_seed(config.seed, 40))
        ids = np.arange(g.n)
    full_n = g.n
    g, lcc_ids = largest_connected_component(g)
    ids = ids[lcc_ids]
    if g.n < full_n:
        print(
            f"warning: graph is disconnected; using largest component "
            f"({g.n} of {full_n} nodes)",
            file=sys.stderr,
        )
    return g, ids, label


def _resolve_targets(config: RunConfig, g: Graph, ids: np.ndarray) -> list[int]:
    """Internal ids of the requested targets."""
    if config.random_targets:
        if config.random_targets > g.n:
            raise ConfigError(f"cannot sample {config.random_targets} targets from {g.n} nodes")
        rng = seeded_rng(config.seed, 41)
        return sorted(int(t) for t in rng.choice(g.n, size=config.random_targets, replace=False))
    if not config.targets:
        raise ConfigError("no targets given; use explicit target ids or a random-target count")
    lookup = {int(orig): internal for internal, orig in enumerate(ids)}
    out = []
    for t in config.targets:
        if t not in lookup:
            raise ConfigError(f"target {t} is not a node of the (largest component of the) graph")
        out.append(lookup[t])
    return out


# -- running algorithms ---------------------------------------------------


def _oracle_trace(g: Graph, v: int, candidates, k: int) -> GreedyTrace:
    """Brute-force optimum, replayed as an insertion trace for uniform output."""
    edges, _ = brute_force_optimum(g, v, candidates, k)
    chosen_others = {u if w == v else w for u, w in edges}
    picked = sorted((c for c in candidates if c.other in chosen_others), key=lambda c: c.other)
    return insertion_trace(g, v, picked, "oracle", seed=0)


def run_algorithm(
    algo: str, g: Graph, v: int, k: int, config: RunConfig
) -> GreedyTrace:
    candidates = default_candidates(g, v, config.weight)
    if k > len(candidates):
        raise ConfigError(
            f"target {v}: k={k} exceeds the {len(candidates)} available candidate edges"
        )
    if algo == "exact":
        return exact_sm(g, v, candidates, k)
    if algo == "approx":
        spec = config.solver_spec(seed=child_seed(config.seed, 50, v))
        return approxi_sm(
            g,
            v,
            candidates,
            k,
            config.epsilon,
            spec,
            m_cap=config.m_cap,
            sketch_constant=config.sketch_constant,
        )
    if algo == "oracle":
        return _oracle_trace(g, v, candidates, k)
    if algo in BASELINE_STRATEGIES:
        return baseline_select(g, v, candidates, k, algo, seed=child_seed(config.seed, 51, v))
    raise ConfigError(f"unknown algorithm {algo!r}")


@dataclass
class RunReport:
    """In-memory result of cmd_optimize: traces plus derived aggregates.

    traces[target][algorithm] uses internal node ids; serialization maps
    them back through id_map. wall_seconds is kept apart from the
    deterministic payload.
    """

    config: RunConfig
    graph_label: str
    id_map: np.ndarray
    traces: dict[int, dict[str, GreedyTrace]]
    wall_seconds: dict[int, dict[str, float]]
    deviation_flags: list[str] = field(default_factory=list)

    def aggregate_series(self, value: str) -> dict[str, list[float]]:
        """Per-algorithm mean trajectory over targets; index = step (0 = start)."""
        out: dict[str, list[float]] = {}
        for algo in self.config.algorithms:
            per_target = []
            for target_traces in self.traces.values():
                trace = target_traces[algo]
                if value == "resistance":
                    series = [trace.initial_resistance] + [s.resistance for s in trace.steps]
                else:
                    series = [trace.initial_centrality] + [s.centrality for s in trace.steps]
                per_target.append(series)
            out[algo] = [float(sum(col)) / len(per_target) for col in zip(*per_target)]
        return out

    def payload(self) -> dict:
        """Deterministic JSON payload (no wall-clock data)."""
        ids = self.id_map
        traces_out: dict[str, dict] = {}
        for target, per_algo in self.traces.items():
            entry = {}
            for algo, trace in per_algo.items():
                d = trace.to_dict()
                d["target"] = int(ids[trace.target])
                for step in d["steps"]:
                    step["edge"] = [int(ids[step["edge"][0]]), int(ids[step["edge"][1]])]
                entry[algo] = d
            traces_out[str(int(ids[target]))] = entry
        config_echo = asdict(self.config)
        return {
            "graph": self.graph_label,
            "config": config_echo,
            "deviation_flags": list(self.deviation_flags),
            "traces": traces_out,
            "aggregates": {
                "mean_resistance": self.aggregate_series("resistance"),
                "mean_centrality": self.aggregate_series("centrality"),
            },
        }

    def timings_payload(self) -> dict:
        ids = self.id_map
        per_target = {
            str(int(ids[t])): {algo: secs for algo, secs in per_algo.items()}
            for t, per_algo in self.wall_seconds.items()
        }
        totals: dict[str, float] = {}
        for per_algo in self.wall_seconds.values():
            for algo, secs in per_algo.items():
                totals[algo] = totals.get(algo, 0.0) + secs
        return {"seconds_per_target": per_target, "seconds_total": totals}


def _deviation_flags(config: RunConfig, report_traces) -> list[str]:
    flags = []
    if "approx" in config.algorithms:
        flags.extend(solver_deviation_notes(config.solver_spec()))
        if config.m_cap is not None:
            flags.append(
                f"estimator sample count capped at {config.m_cap}; the e^(+-eps) "
                "estimate guarantee is voided"
            )
        if config.sketch_constant != 24.0:
            flags.append(
                f"resistance sketch uses constant {config.sketch_constant} instead of 24; "
                "the sketch accuracy guarantee is voided"
            )
    for per_algo in report_traces.values():
        for trace in per_algo.values():
            if trace.value_mode != "exact":
                flags.append(
                    "per-step resistance values in at least one approx trace are "
                    "solver estimates, not exact recomputations"
                )
                break
        else:
            continue
        break
    return flags


def _check_target_capacity(config: RunConfig, g: Graph, ids: np.ndarray, targets: list[int]) -> None:
    for v in targets:
        available = g.n - 1 - g.degree(v)
        if config.k > available:
            raise ConfigError(
                f"target {int(ids[v])}: k={config.k} exceeds the "
                f"{available} available candidate edges"
            )


def cmd_optimize(config: RunConfig) -> RunReport:
    config.validate()
    g, ids, label = _obtain_graph(config)
    targets = _resolve_targets(config, g, ids)
    _check_target_capacity(config, g, ids, targets)

    traces: dict[int, dict[str, GreedyTrace]] = {}
    walls: dict[int, dict[str, float]] = {}
    for v in targets:
        traces[v] = {}
        walls[v] = {}
        for algo in config.algorithms:
            started = time.perf_counter()
            traces[v][algo] = run_algorithm(algo, g, v, config.k, config)
            walls[v][algo] = time.perf_counter() - started

    report = RunReport(config, label, ids, traces, walls)
    report.deviation_flags = _deviation_flags(config, traces)
    _write_optimize_outputs(report)
    return report


def _format_float(x: float) -> str:
    return repr(float(x))


def trace_csv_lines(trace: GreedyTrace, ids: np.ndarray) -> list[str]:
    lines = ["step,edge_u,edge_v,R_v,I_v"]
    lines.append(
        f"0,,,{_format_float(trace.initial_resistance)},{_format_float(trace.initial_centrality)}"
    )
    for i, s in enumerate(trace.steps, start=1):
        u, v = int(ids[s.edge[0]]), int(ids[s.edge[1]])
        lines.append(f"{i},{u},{v},{_format_float(s.resistance)},{_format_float(s.centrality)}")
    return lines


def _write_optimize_outputs(report: RunReport) -> None:
    out = Path(report.config.out)
    out.mkdir(parents=True, exist_ok=True)
    ids = report.id_map
    if "json" in report.config.formats:
        (out / "report.json").write_text(
            json.dumps(report.payload(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if "csv" in report.config.formats:
        for target, per_algo in report.traces.items():
            for algo, trace in per_algo.items():
                name = f"trace_target{int(ids[target])}_{algo}.csv"
                (out / name).write_text("\n".join(trace_csv_lines(trace, ids)) + "\n", encoding="utf-8")
        for value, fname in (("resistance", "aggregate_resistance.csv"), ("centrality", "aggregate_centrality.csv")):
            series = report.aggregate_series(value)
            algos = list(report.config.algorithms)
            lines = ["step," + ",".join(algos)]
            for step in range(report.config.k + 1):
                row = [str(step)] + [_format_float(series[a][step]) for a in algos]
                lines.append(",".join(row))
            (out / fname).write_text("\n".join(lines) + "\n", encoding="utf-8")
    (out / "timings.json").write_text(
        json.dumps(report.timings_payload(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def cmd_compare_perf(config: RunConfig) -> dict:
    config.validate()
    if "exact" not in config.algorithms or "approx" not in config.algorithms:
        raise ConfigError("compare-perf requires both 'exact' and 'approx' algorithms")
    g, ids, label = _obtain_graph(config)

    if config.targets or config.random_targets:
        targets = _resolve_targets(config, g, ids)
    else:
        count = min(config.perf_targets, g.n)
        rng = seeded_rng(config.seed, 41)
        targets = sorted(int(t) for t in rng.choice(g.n, size=count, replace=False))
    _check_target_capacity(config, g, ids, targets)

    times = {"exact": [], "approx": []}
    finals = {"exact": [], "approx": []}
    for v in targets:
        for algo in ("approx", "exact"):
            started = time.perf_counter()
            trace = run_algorithm(algo, g, v, config.k, config)
            times[algo].append(time.perf_counter() - started)
            finals[algo].append(trace.final_centrality)

    def mean(xs):
        return float(sum(xs)) / len(xs)

    row = {
        "graph": label,
        "n": g.n,
        "m": g.m,
        "k": config.k,
        "targets": len(targets),
        "mean_time_approx": mean(times["approx"]),
        "mean_time_exact": mean(times["exact"]),
        "time_ratio": mean(times["approx"]) / mean(times["exact"]),
        "mean_centrality_approx": mean(finals["approx"]),
        "mean_centrality_exact": mean(finals["exact"]),
        "centrality_ratio": mean(finals["approx"]) / mean(finals["exact"]),
    }

    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    # full table includes wall-clock columns and is inherently run-dependent
    table_cols = [
        "graph",
        "mean_time_approx",
        "mean_time_exact",
        "time_ratio",
        "mean_centrality_approx",
        "mean_centrality_exact",
        "centrality_ratio",
    ]
    lines = [",".join(table_cols)]
    lines.append(
        ",".join(
            row[c] if c == "graph" else _format_float(row[c]) for c in table_cols
        )
    )
    (out / "perf_table.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    # deterministic companion: centrality columns only
    det_cols = ["graph", "n", "m", "k", "targets",
                "mean_centrality_approx", "mean_centrality_exact", "centrality_ratio"]
    det_lines = [",".join(det_cols)]
    det_lines.append(
        ",".join(
            str(row[c]) if c in ("graph", "n", "m", "k", "targets") else _format_float(row[c])
            for c in det_cols
        )
    )
    (out / "perf_results.csv").write_text("\n".join(det_lines) + "\n", encoding="utf-8")
    return row


def cmd_gen(spec_tokens: list[str], out_path: str, seed: int = 0) -> Path:
    for tok in spec_tokens:  # a trailing seed= token wins over --seed
        if tok.startswith("seed="):
            try:
                seed = int(tok.split("=", 1)[1])
            except ValueError:
                pass  # parse_generator_spec reports this properly
    g, label = parse_generator_spec(" ".join(spec_tokens), default_seed=seed)
    comments = [f"generated: {label} seed={seed}", f"n={g.n} m={g.m}"]
    return write_edge_list(g, out_path, comments=comments)


# -- argument parsing ------------------------------------------------------


def _add_shared_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file; flags override it")
    p.add_argument("--graph", dest="graph_path", help="edge-list file to load")
    p.add_argument("--generate", help="generator spec, e.g. 'ws 1000 4 0.1' or 'ba 500 2'")
    p.add_argument("--target", dest="targets", type=int, action="append",
                   help="target node id (repeatable; ids from the input file)")
    p.add_argument("--random-targets", dest="random_targets", type=int,
                   help="sample this many distinct targets instead of naming them")
    p.add_argument("--k", type=int, help="number of edges to add")
    p.add_argument("--algo", dest="algorithms", action="append", choices=ALGORITHMS,
                   help="algorithm to run (repeatable)")
    p.add_argument("--epsilon", type=float, help="accuracy parameter for approx")
    p.add_argument("--weight", type=float, help="candidate edge weight")
    p.add_argument("--seed", type=int, help="master seed for all randomness")
    p.add_argument("--solver-mode", dest="solver_mode", choices=["practical", "paper-literal"])
    p.add_argument("--residual-target", dest="residual_target", type=float)
    p.add_argument("--max-iterations", dest="max_iterations", type=int)
    p.add_argument("--m-cap", dest="m_cap", type=int,
                   help="cap the estimator sample count (voids the accuracy guarantee)")
    p.add_argument("--sketch-constant", dest="sketch_constant", type=float,
                   help="leading constant of the resistance sketch size (default 24)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--format", dest="formats", action="append", choices=FORMATS,
                   help="output format (repeatable; default json and csv)")
    p.add_argument("--perf-targets", dest="perf_targets", type=int,
                   help="number of sampled targets for compare-perf (default 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icmax",
        description="maximize a node's information centrality by adding incident edges",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimize", help="run optimizers and write traces")
    _add_shared_flags(p_opt)

    p_perf = sub.add_parser("compare-perf", help="exact-vs-approx quality and runtime table")
    _add_shared_flags(p_perf)

    p_gen = sub.add_parser("gen", help="generate a benchmark graph file")
    p_gen.add_argument("spec", nargs="+",
                       help="generator spec tokens, e.g. ws 50 4 0.1 [seed=7]")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="output edge-list path")
    return parser


_CONFIG_KEYS = (
    "graph_path", "generate", "targets", "random_targets", "k", "algorithms",
    "epsilon", "weight", "seed", "solver_mode", "residual_target",
    "max_iterations", "m_cap", "sketch_constant", "out", "formats", "perf_targets",
)


def _config_from_args(args: argparse.Namespace, default_algorithms: tuple[str, ...]) -> RunConfig:
    file_values = parse_config_file(args.config) if args.config else {}
    overrides = {key: getattr(args, key, None) for key in _CONFIG_KEYS}
    if overrides.get("targets"):
        overrides["targets"] = tuple(overrides["targets"])
    merged_has_algos = bool(file_values.get("algorithms")) or bool(overrides.get("algorithms"))
    config = build_config(file_values, {k: v for k, v in overrides.items() if v is not None})
    if not merged_has_algos:
        config = replace(config, algorithms=default_algorithms)
        config.validate()
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            path = cmd_gen(args.spec, args.out, seed=args.seed)
            print(path)
        elif args.command == "optimize":
            config = _config_from_args(args, default_algorithms=("exact",))
            report = cmd_optimize(config)
            for flag in report.deviation_flags:
                print(f"note: {flag}", file=sys.stderr)
            print(Path(config.out).resolve())
        else:
            config = _config_from_args(args, default_algorithms=("exact", "approx"))
            row = cmd_compare_perf(config)
            for flag in _deviation_flags(config, {}):
                print(f"note: {flag}", file=sys.stderr)
            print(
                f"{row['graph']}: centrality ratio {row['centrality_ratio']:.4f}, "
                f"time ratio {row['time_ratio']:.4f}"
            )
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
