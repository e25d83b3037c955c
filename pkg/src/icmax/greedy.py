"""Edge-selection optimizers.

Greedy maximization of a target node's information centrality by adding k
new incident edges: the exact dense greedy, the solver-and-sketch
approximate greedy, three non-adaptive baselines, and a brute-force oracle
for small instances.

All optimizers consume an explicit candidate list and return a GreedyTrace
holding the chosen edges and the per-step resistance/centrality trajectory.
Randomized components draw every bit of randomness from the seed they are
handed, so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .graphs import Graph, is_connected
from .linalg import (
    SolverSpec,
    _cg_multi,
    approx_eff_res,
    build_laplacian,
    make_preconditioner,
    pseudoinverse,
    sherman_morrison_update,
    solver_tolerance,
)
from .centrality import rank_all_by_centrality
from .rand import child_seed, rademacher, seeded_rng

# Above this size approxi_sm stops maintaining a dense pseudoinverse for
# trace values and chains estimated resistances instead.
EXACT_TRACE_LIMIT = 2000

_VREFF_BLOCK = 256
_BRUTE_FORCE_GUARD = 1_000_000

VALUES_EXACT = "exact"
VALUES_ESTIMATED = "estimated"


class CandidateEdge(NamedTuple):
    other: int
    target: int
    weight: float


class GainEstimate(NamedTuple):
    edge: CandidateEdge
    gain: float


class TraceStep(NamedTuple):
    edge: tuple[int, int]
    weight: float
    gain: float
    resistance: float
    centrality: float


@dataclass(frozen=True)
class GreedyTrace:
    """Outcome of one optimizer run.

    steps[i].resistance is R_v after inserting the first i+1 edges;
    initial_resistance is R_v of the untouched graph. value_mode records
    whether those resistances are exact or chained solver estimates.
    """

    algorithm: str
    target: int
    seed: int
    initial_resistance: float
    initial_centrality: float
    steps: tuple[TraceStep, ...]
    step_seconds: tuple[float, ...]
    value_mode: str = VALUES_EXACT

    def __post_init__(self):
        if self.value_mode not in (VALUES_EXACT, VALUES_ESTIMATED):
            raise ValueError(f"unknown value_mode {self.value_mode!r}")
        if len(self.step_seconds) != len(self.steps):
            raise ValueError("one timing entry per step required")
        prev = self.initial_resistance
        for step in self.steps:
            ok = step.resistance < prev if self.value_mode == VALUES_EXACT else step.resistance <= prev
            if not ok:
                raise ValueError(
                    f"resistance must decrease along the trace; got {prev} -> {step.resistance}"
                )
            prev = step.resistance

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(step.edge for step in self.steps)

    @property
    def final_resistance(self) -> float:
        return self.steps[-1].resistance if self.steps else self.initial_resistance

    @property
    def final_centrality(self) -> float:
        return self.steps[-1].centrality if self.steps else self.initial_centrality

    def to_dict(self) -> dict:
        """Serializable algorithmic content. Timings are reported separately
        so that identical (input, seed) runs produce identical payloads."""
        return {
            "algorithm": self.algorithm,
            "target": self.target,
            "seed": self.seed,
            "value_mode": self.value_mode,
            "initial_resistance": self.initial_resistance,
            "initial_centrality": self.initial_centrality,
            "steps": [
                {
                    "edge": list(step.edge),
                    "weight": step.weight,
                    "gain": step.gain,
                    "resistance": step.resistance,
                    "centrality": step.centrality,
                }
                for step in self.steps
            ],
        }


def default_candidates(g: Graph, v: int, weight: float = 1.0) -> list[CandidateEdge]:
    """One candidate per non-neighbor of v, all at the given weight, by id."""
    if not 0 <= v < g.n:
        raise ValueError(f"node id {v} out of range for n={g.n}")
    if weight <= 0.0 or not math.isfinite(weight):
        raise ValueError("candidate weight must be positive and finite")
    taken = set(g.neighbors(v))
    taken.add(v)
    return [CandidateEdge(u, v, weight) for u in range(g.n) if u not in taken]


def _check_candidates(g: Graph, v: int, candidates: Sequence[CandidateEdge], k: int) -> list[CandidateEdge]:
    if not 0 <= v < g.n:
        raise ValueError(f"node id {v} out of range for n={g.n}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > len(candidates):
        raise ValueError(f"k={k} exceeds the {len(candidates)} available candidates")
    seen: set[int] = set()
    out = []
    for c in candidates:
        c = CandidateEdge(int(c.other), int(c.target), float(c.weight))
        if c.target != v:
            raise ValueError(f"candidate {c} does not target node {v}")
        if c.other == v:
            raise ValueError("candidate would form a self-loop")
        if not 0 <= c.other < g.n:
            raise ValueError(f"candidate endpoint {c.other} out of range")
        if g.has_edge(c.other, v):
            raise ValueError(f"candidate ({c.other}, {v}) already exists in the graph")
        if c.other in seen:
            raise ValueError(f"duplicate candidate endpoint {c.other}")
        if c.weight <= 0.0 or not math.isfinite(c.weight):
            raise ValueError("candidate weight must be positive and finite")
        seen.add(c.other)
        out.append(c)
    # ascending other-endpoint: the argmax-first rule then realizes the
    # global lexicographic edge tie-break
    out.sort(key=lambda c: c.other)
    return out


def _exact_gains(p: np.ndarray, v: int, candidates: Sequence[CandidateEdge]) -> np.ndarray:
    """Marginal resistance drops for every candidate, vectorized over columns."""
    n = p.shape[0]
    others = np.array([c.other for c in candidates], dtype=np.int64)
    weights = np.array([c.weight for c in candidates], dtype=np.float64)
    cols = p[:, others] - p[:, [v]]  # column i = p b_i with b_i = e_other - e_v
    sq_norms = np.einsum("ij,ij->j", cols, cols)
    at_v = cols[v, :]
    at_other = cols[others, np.arange(len(candidates))]
    denom = 1.0 + weights * (at_other - at_v)
    return weights * (n * at_v**2 + sq_norms) / denom


def _trace_values(p: np.ndarray, v: int) -> tuple[float, float]:
    n = p.shape[0]
    r = float(n * p[v, v] + np.trace(p))
    return r, n / r


def exact_sm(g: Graph, v: int, candidates: Sequence[CandidateEdge], k: int) -> GreedyTrace:
    """Exact greedy: k rounds of best-marginal-gain selection.

    One dense pseudoinverse up front, then each round scores every live
    candidate in closed form and applies a rank-1 update for the winner.
    O(n^3 + k n^2 + k n |candidates|) overall. The returned selection is
    within a (1 - 1/e) factor of the optimal resistance reduction.
    """
    live = _check_candidates(g, v, candidates, k)
    p = pseudoinverse(build_laplacian(g))
    r0, i0 = _trace_values(p, v)
    steps: list[TraceStep] = []
    times: list[float] = []
    for _ in range(k):
        started = time.perf_counter()
        gains = _exact_gains(p, v, live)
        best = int(np.argmax(gains))
        chosen = live.pop(best)
        p = sherman_morrison_update(p, (chosen.other, v), chosen.weight)
        r, i = _trace_values(p, v)
        times.append(time.perf_counter() - started)
        edge = (min(chosen.other, v), max(chosen.other, v))
        steps.append(TraceStep(edge, chosen.weight, float(gains[best]), r, i))
    return GreedyTrace("exact", v, 0, r0, i0, tuple(steps), tuple(times))


class VReffResult(NamedTuple):
    """Gain estimates plus the intermediates one round of the approximate
    greedy needs for bookkeeping."""

    gains: list[GainEstimate]
    m_literal: int
    m_used: int
    resistance_estimate: float


def _vreff_comp_full(
    g: Graph,
    v: int,
    candidates: Sequence[CandidateEdge],
    epsilon: float,
    spec: SolverSpec,
    *,
    m_cap: int | None = None,
    sketch_constant: float = 24.0,
) -> VReffResult:
    n = g.n
    lap = build_laplacian(g)
    pre = make_preconditioner(lap)  # shared by every solve this round
    tol1 = solver_tolerance(spec, epsilon, n, g.w_max, power=8)
    tol2 = solver_tolerance(spec, epsilon, n, g.w_max, power=9)

    m_literal = math.ceil(432.0 * epsilon**-2 * math.log(2.0 * n))
    m_used = m_literal if m_cap is None else min(m_literal, int(m_cap))

    others = np.array([c.other for c in candidates], dtype=np.int64)
    weights = np.array([c.weight for c in candidates], dtype=np.float64)

    # (1/M) sum_i (b_e^T y_i)^2 accumulated blockwise; same stream also
    # feeds the z_i^T y_i trace estimate used for the resistance chain.
    rng = seeded_rng(spec.seed, 10)
    t_sums = np.zeros(len(candidates), dtype=np.float64)
    trace_sum = 0.0
    produced = 0
    while produced < m_used:
        width = min(_VREFF_BLOCK, m_used - produced)
        z = rademacher(rng, (n, width))
        rhs = z - z.mean(axis=0, keepdims=True)
        y = _cg_multi(lap, rhs, tol1, spec.max_iterations, pre=pre)
        y -= y.mean(axis=0, keepdims=True)
        trace_sum += float(np.einsum("ij,ij->", z, y))
        if len(candidates):
            diff = y[others, :] - y[[v], :]
            t_sums += np.einsum("ij,ij->i", diff, diff)
        produced += width

    e_v = np.zeros(n, dtype=np.float64)
    e_v[v] = 1.0
    rhs = (e_v - e_v.mean())[:, None]
    x = _cg_multi(lap, rhs, tol2, spec.max_iterations, pre=pre)[:, 0]
    x -= x.mean()

    resistance_estimate = float(n * x[v] + trace_sum / m_used)

    if not len(candidates):
        return VReffResult([], m_literal, m_used, resistance_estimate)

    pairs = [(c.other, v) for c in candidates]
    r_hat = approx_eff_res(
        g,
        pairs,
        epsilon / 3.0,
        seed=child_seed(spec.seed, 11),
        spec=spec,
        sketch_constant=sketch_constant,
        pre=pre,
    )
    r_vec = np.array([r_hat[pair] for pair in pairs], dtype=np.float64)

    alpha = (x[others] - x[v]) ** 2
    estimates = weights * (n * alpha + t_sums / m_used) / (1.0 + weights * r_vec)
    gains = [GainEstimate(c, float(est)) for c, est in zip(candidates, estimates)]
    return VReffResult(gains, m_literal, m_used, resistance_estimate)


def vreff_comp(
    g: Graph,
    v: int,
    candidates: Sequence[CandidateEdge],
    epsilon: float,
    spec: SolverSpec | None = None,
    *,
    m_cap: int | None = None,
    sketch_constant: float = 24.0,
) -> list[GainEstimate]:
    """Estimated marginal resistance drops for every candidate.

    Hybrid estimator: the numerator combines a direct solve against e_v with
    a Rademacher trace estimate over M = ceil(432 eps^-2 ln(2n)) samples; the
    denominator resistance comes from the sketch route at accuracy eps/3.
    With the literal M each estimate is within a factor e^{+-eps} of the
    exact gain with high probability. m_cap truncates M below the literal
    count, voiding that guarantee but keeping the estimator usable when M is
    impractically large.
    """
    if not 0.0 < epsilon <= 1.5:
        raise ValueError("epsilon must be in (0, 3/2]")
    spec = spec or SolverSpec()
    live = _check_candidates(g, v, candidates, 0)
    return _vreff_comp_full(
        g, v, live, epsilon, spec, m_cap=m_cap, sketch_constant=sketch_constant
    ).gains


def approxi_sm(
    g: Graph,
    v: int,
    candidates: Sequence[CandidateEdge],
    k: int,
    epsilon: float,
    spec: SolverSpec | None = None,
    *,
    m_cap: int | None = None,
    sketch_constant: float = 24.0,
    exact_trace_limit: int = EXACT_TRACE_LIMIT,
) -> GreedyTrace:
    """Approximate greedy: k rounds of estimated-gain selection.

    Each round re-estimates all live candidates on the current working graph
    at accuracy argument 3*epsilon (the estimator's own literal calling
    convention) and inserts the argmax. Per-round randomness is split off
    the spec seed, so the whole run is reproducible from (inputs, seed).

    Trace values: up to exact_trace_limit nodes the per-step R_v is exact
    (dense rank-1 updates); beyond that the trace chains the estimator's own
    resistance values and is marked "estimated".
    """
    if not 0.0 < epsilon <= 0.5:
        raise ValueError("epsilon must be in (0, 1/2]")
    spec = spec or SolverSpec()
    live = _check_candidates(g, v, candidates, k)
    if not is_connected(g):
        raise ValueError("approximate greedy requires a connected graph")

    exact_values = g.n <= exact_trace_limit
    p = pseudoinverse(build_laplacian(g)) if exact_values else None
    if exact_values:
        r0, i0 = _trace_values(p, v)
    elif k == 0:
        probe = _vreff_comp_full(
            g, v, [], 3.0 * epsilon, replace(spec, seed=child_seed(spec.seed, 20, 0)),
            m_cap=m_cap, sketch_constant=sketch_constant,
        )
        r0 = probe.resistance_estimate
        i0 = g.n / r0
    else:
        r0 = i0 = math.nan  # filled from the first round's estimate

    working = g
    r_prev = r0
    steps: list[TraceStep] = []
    times: list[float] = []
    for round_idx in range(k):
        started = time.perf_counter()
        round_spec = replace(spec, seed=child_seed(spec.seed, 20, round_idx))
        result = _vreff_comp_full(
            working,
            v,
            live,
            3.0 * epsilon,
            round_spec,
            m_cap=m_cap,
            sketch_constant=sketch_constant,
        )
        if round_idx == 0 and not exact_values:
            r_prev = result.resistance_estimate
            r0 = result.resistance_estimate
            i0 = g.n / r0
        gains = np.array([ge.gain for ge in result.gains], dtype=np.float64)
        best = int(np.argmax(gains))
        chosen = live.pop(best)
        working = working.with_edges([(chosen.other, v, chosen.weight)])
        if exact_values:
            p = sherman_morrison_update(p, (chosen.other, v), chosen.weight)
            r, i = _trace_values(p, v)
        else:
            r = min(r_prev - float(gains[best]), r_prev)
            i = g.n / r
        times.append(time.perf_counter() - started)
        edge = (min(chosen.other, v), max(chosen.other, v))
        steps.append(TraceStep(edge, chosen.weight, float(gains[best]), r, i))
        r_prev = r
    return GreedyTrace(
        "approx",
        v,
        spec.seed,
        r0,
        i0,
        tuple(steps),
        tuple(times),
        value_mode=VALUES_EXACT if exact_values else VALUES_ESTIMATED,
    )


BASELINE_STRATEGIES = ("random", "top-degree", "top-cent")


def baseline_select(
    g: Graph,
    v: int,
    candidates: Sequence[CandidateEdge],
    k: int,
    strategy: str,
    seed: int = 0,
) -> GreedyTrace:
    """Non-adaptive baselines: pick k candidates up front, insert them all.

    random samples uniformly without replacement; top-degree prefers
    candidates whose other endpoint has the largest original-graph degree;
    top-cent prefers the highest information-centrality endpoints. Ties fall
    back to ascending node id. The trace still records exact R_v per step.
    """
    live = _check_candidates(g, v, candidates, k)
    if strategy not in BASELINE_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {BASELINE_STRATEGIES}")
    if strategy == "random":
        rng = seeded_rng(seed, 30)
        order = rng.permutation(len(live))
        picked = [live[int(j)] for j in order[:k]]
    elif strategy == "top-degree":
        picked = sorted(live, key=lambda c: (-g.degree(c.other), c.other))[:k]
    else:
        ranking = rank_all_by_centrality(g)
        position = {score.node: rank for rank, score in enumerate(ranking)}
        picked = sorted(live, key=lambda c: (position[c.other], c.other))[:k]

    return insertion_trace(g, v, picked, strategy, seed)


def insertion_trace(
    g: Graph, v: int, picked: Sequence[CandidateEdge], algorithm: str, seed: int = 0
) -> GreedyTrace:
    """Trace from inserting a fixed candidate sequence in the given order,
    with exact per-step values."""
    p = pseudoinverse(build_laplacian(g))
    r_prev, i0 = _trace_values(p, v)
    r0 = r_prev
    steps: list[TraceStep] = []
    times: list[float] = []
    for chosen in picked:
        started = time.perf_counter()
        p = sherman_morrison_update(p, (chosen.other, v), chosen.weight)
        r, i = _trace_values(p, v)
        times.append(time.perf_counter() - started)
        edge = (min(chosen.other, v), max(chosen.other, v))
        steps.append(TraceStep(edge, chosen.weight, r_prev - r, r, i))
        r_prev = r
    return GreedyTrace(algorithm, v, seed, r0, i0, tuple(steps), tuple(times))


def brute_force_optimum(
    g: Graph, v: int, candidates: Sequence[CandidateEdge], k: int
) -> tuple[tuple[tuple[int, int], ...], float]:
    """Exhaustive search over all k-subsets of candidates.

    Returns the subset minimizing R_v (lexicographically first among exact
    ties) and that optimal resistance. Every subset is evaluated from
    scratch through the grounded Laplacian, independent of the update-based
    optimizers. Guarded to C(|candidates|, k) <= 1e6 subsets.
    """
    live = _check_candidates(g, v, candidates, k)
    if not is_connected(g):
        raise ValueError("brute force requires a connected graph")
    total = math.comb(len(live), k)
    if total > _BRUTE_FORCE_GUARD:
        raise ValueError(f"{total} subsets exceed the {_BRUTE_FORCE_GUARD} enumeration guard")

    keep = np.arange(g.n) != v
    base = build_laplacian(g).toarray()[np.ix_(keep, keep)]
    # grounded index of node u: v's row/column is gone
    grounded = np.where(np.arange(g.n) < v, np.arange(g.n), np.arange(g.n) - 1)
    eye = np.eye(g.n - 1)

    best_r = math.inf
    best_subset: tuple[CandidateEdge, ...] = ()
    for subset in combinations(live, k):
        lap = base.copy()
        for c in subset:
            gi = grounded[c.other]
            lap[gi, gi] += c.weight  # edge (other, v): only the diagonal survives grounding
        factor = scipy.linalg.cho_factor(lap, lower=True, check_finite=False)
        r = float(np.trace(scipy.linalg.cho_solve(factor, eye, check_finite=False)))
        if r < best_r:
            best_r = r
            best_subset = subset
    edges = tuple((min(c.other, v), max(c.other, v)) for c in best_subset)
    return edges, best_r
