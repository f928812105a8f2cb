"""Experiment orchestration: dataset x strategy x alpha sweeps with seeded
repetitions, aggregation, and CSV persistence.

Substream layout (all via numpy SeedSequence lists, so results are
reproducible bit-for-bit regardless of worker count):

  [seed, rep, 0]                  disease parameter draws for repetition rep
  [seed, rep, 1, strat_idx]       per-repetition strategy rng (random scores)
  [seed, rep, 2, strat_idx, a_idx] state init + simulation

Disease parameters are sampled once per repetition and shared by every
strategy, so strategies are compared on identical draws.
"""

from __future__ import annotations

import io
import logging
import multiprocessing
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from . import hrg, strategies
from .graph import Graph, jaccard_weights, load_edge_list
from .model import (
    DEFAULT_MAX_ROUNDS,
    initialize_state,
    run_to_absorption,
    sample_disease_params,
)
from .strategies import STRUCTURAL, StrategyId, select_vaccinees

log = logging.getLogger(__name__)

CSV_HEADER = "dataset,strategy,alpha,mean_survival,sd_survivors,reps,mean_rounds"
DEFAULT_ALPHAS = tuple(round(0.05 * i, 2) for i in range(1, 13))


@dataclass
class ExperimentSpec:
    dataset: Union[str, Path, hrg.HrgParams]
    strategies: Sequence[str]
    alphas: Sequence[float]
    repetitions: int
    master_seed: int
    beta: float = 2.0
    gamma: float = 0.6
    initial_infectious: int = 1
    max_rounds: int = DEFAULT_MAX_ROUNDS
    dataset_label: str = ""
    directed: bool = False
    use_jaccard: bool = True
    workers: int = 1

    def validate(self) -> None:
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.initial_infectious < 1:
            raise ValueError("initial_infectious must be >= 1")
        for a in self.alphas:
            if not 0.0 <= a <= 1.0:
                raise ValueError(f"alpha {a} outside [0, 1]")
        for name in self.strategies:
            StrategyId(name)  # raises on unknown names

    @property
    def label(self) -> str:
        if self.dataset_label:
            return self.dataset_label
        if isinstance(self.dataset, hrg.HrgParams):
            return f"hrg_n{self.dataset.n}_m{self.dataset.target_m}"
        return Path(self.dataset).stem


@dataclass
class ResultRow:
    dataset: str
    strategy: str
    alpha: float
    mean_survival: float
    sd_survivors: float
    reps: int
    mean_rounds: float


def load_dataset(spec: ExperimentSpec) -> Graph:
    if isinstance(spec.dataset, hrg.HrgParams):
        g = hrg.generate(spec.dataset)
    else:
        g = load_edge_list(spec.dataset, directed=spec.directed)
    if spec.use_jaccard:
        g = jaccard_weights(g)
    return g


def _structural_scores(g: Graph, sids: Sequence[StrategyId]) -> dict:
    """Compute each needed structure-only score vector once."""
    needed = {sid for sid in sids if sid in STRUCTURAL}
    if StrategyId.HYBRID in sids:
        needed.add(StrategyId.BETWEENNESS)
    cache = {}
    for sid in needed:
        log.info("computing %s scores", sid.value)
        cache[sid] = strategies.score(sid, g, None)
    return cache


# Worker globals, set once per process (fork) to avoid re-pickling the graph.
_CTX: dict = {}


def _init_worker(g, spec, sids, cache):
    _CTX["g"] = g
    _CTX["spec"] = spec
    _CTX["sids"] = sids
    _CTX["cache"] = cache


def _run_repetition(rep: int):
    g: Graph = _CTX["g"]
    spec: ExperimentSpec = _CTX["spec"]
    sids = _CTX["sids"]
    cache = _CTX["cache"]
    seed = spec.master_seed

    params = sample_disease_params(
        g, spec.beta, spec.gamma, np.random.default_rng([seed, rep, 0])
    )
    survivors = np.empty((len(sids), len(spec.alphas)))
    rounds = np.empty_like(survivors)
    for si, sid in enumerate(sids):
        if sid in cache:
            sv = cache[sid]
        elif sid is StrategyId.HYBRID:
            sv = strategies.hybrid_score(
                g, params, betweenness=cache[StrategyId.BETWEENNESS]
            )
        else:
            sv = strategies.score(
                sid, g, params, np.random.default_rng([seed, rep, 1, si])
            )
        for ai, alpha in enumerate(spec.alphas):
            plan = select_vaccinees(sv, alpha)
            rng = np.random.default_rng([seed, rep, 2, si, ai])
            st = initialize_state(g, plan.nodes, spec.initial_infectious, rng)
            out = run_to_absorption(st, g, params, rng, spec.max_rounds)
            if out.truncated:
                log.warning(
                    "rep %d strategy %s alpha %.2f truncated at %d rounds",
                    rep, sid.value, alpha, spec.max_rounds,
                )
            survivors[si, ai] = g.n - out.dead
            rounds[si, ai] = out.rounds
    return survivors, rounds


def run_experiment(spec: ExperimentSpec, graph: Graph | None = None):
    """Execute the full sweep; returns ResultRow list sorted for the CSV."""
    spec.validate()
    g = load_dataset(spec) if graph is None else graph
    sids = [StrategyId(name) for name in spec.strategies]
    cache = _structural_scores(g, sids)

    reps = range(spec.repetitions)
    if spec.workers > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(
            spec.workers, initializer=_init_worker, initargs=(g, spec, sids, cache)
        ) as pool:
            results = pool.map(_run_repetition, reps)
    else:
        _init_worker(g, spec, sids, cache)
        results = [_run_repetition(r) for r in reps]

    survivors = np.stack([r[0] for r in results])  # (reps, strat, alpha)
    rounds = np.stack([r[1] for r in results])

    rows = []
    for si, sid in enumerate(sids):
        for ai, alpha in enumerate(spec.alphas):
            surv = survivors[:, si, ai]
            rows.append(
                ResultRow(
                    dataset=spec.label,
                    strategy=sid.value,
                    alpha=float(alpha),
                    mean_survival=float(surv.mean() / g.n),
                    sd_survivors=float(surv.std(ddof=1)) if len(surv) > 1 else 0.0,
                    reps=spec.repetitions,
                    mean_rounds=float(rounds[:, si, ai].mean()),
                )
            )
    rows.sort(key=lambda r: (r.dataset, r.strategy, r.alpha))
    return rows


def format_csv(rows: Sequence[ResultRow]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(
            f"{r.dataset},{r.strategy},{r.alpha:.6f},{r.mean_survival:.6f},"
            f"{r.sd_survivors:.6f},{r.reps},{r.mean_rounds:.6f}\n"
        )
    return buf.getvalue()


def write_csv(rows: Sequence[ResultRow], path) -> None:
    Path(path).write_text(format_csv(rows))


def summarize(rows: Sequence[ResultRow]) -> str:
    """Fixed-width text table of the result rows."""
    header = f"{'dataset':<24} {'strategy':<14} {'alpha':>6} {'survival':>9} {'sd':>10} {'reps':>5}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r.dataset:<24} {r.strategy:<14} {r.alpha:>6.2f} "
            f"{r.mean_survival:>9.4f} {r.sd_survivors:>10.2f} {r.reps:>5}"
        )
    return "\n".join(lines)
