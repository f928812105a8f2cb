"""Discrete-time stochastic SIR + Death + Vaccination process.

Synchronous rounds: every transition in round t+1 is decided from the
round-t state.  A susceptible node is infected with probability
min(1, beta * omega_i(v) * (infectious neighbor weight) / (total neighbor
weight)); an infectious node first draws death (omega_d), then recovery
(gamma * omega_r).  Recovered, dead and vaccinated nodes are frozen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .graph import Graph

DEFAULT_MAX_ROUNDS = 100_000


class Compartment(IntEnum):
    SUSCEPTIBLE = 0
    INFECTIOUS = 1
    RECOVERED = 2
    DEAD = 3
    VACCINATED = 4


S, I, R, D, V = Compartment


@dataclass
class DiseaseParams:
    """Global rates plus per-node infection/recovery/death weights."""

    beta: float
    gamma: float
    omega_i: np.ndarray
    omega_r: np.ndarray
    omega_d: np.ndarray

    def validate(self, n: int) -> None:
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if not 0 <= self.gamma <= 1:
            raise ValueError("gamma must lie in [0, 1]")
        for name, arr, hi in (
            ("omega_i", self.omega_i, 1.0),
            ("omega_r", self.omega_r, 1.0),
            ("omega_d", self.omega_d, 1.0),
        ):
            arr = np.asarray(arr)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have length n={n}")
            if arr.size and (arr.min() < 0.0 or arr.max() > hi):
                raise ValueError(f"{name} values must lie in [0, {hi}]")


@dataclass
class EpidemicState:
    compartments: np.ndarray  # int8, one Compartment value per node
    round: int = 0

    def counts(self) -> np.ndarray:
        return np.bincount(self.compartments, minlength=5)


@dataclass
class Outcome:
    susceptible: int
    infectious: int
    recovered: int
    dead: int
    vaccinated: int
    rounds: int
    survival_ratio: float
    truncated: bool = False

    @property
    def n(self) -> int:
        return (
            self.susceptible
            + self.infectious
            + self.recovered
            + self.dead
            + self.vaccinated
        )


def sample_disease_params(
    g: Graph, beta: float, gamma: float, rng: np.random.Generator
) -> DiseaseParams:
    """Draw omega_i, omega_r ~ U[0,1] and omega_d ~ U[0,0.1] per node."""
    p = DiseaseParams(
        beta=beta,
        gamma=gamma,
        omega_i=rng.uniform(0.0, 1.0, g.n),
        omega_r=rng.uniform(0.0, 1.0, g.n),
        omega_d=rng.uniform(0.0, 0.1, g.n),
    )
    p.validate(g.n)
    return p


def initialize_state(
    g: Graph,
    vaccinated,
    initial_infectious_count: int,
    rng: np.random.Generator,
) -> EpidemicState:
    """Vaccinate the given nodes, then seed infectious nodes uniformly at
    random among the remaining ones."""
    comp = np.full(g.n, S, dtype=np.int8)
    vacc = np.asarray(sorted(vaccinated), dtype=np.int64)
    if vacc.size:
        if vacc.min() < 0 or vacc.max() >= g.n:
            raise IndexError("vaccinated node id out of range")
        comp[vacc] = V
    pool = np.flatnonzero(comp == S)
    if initial_infectious_count > pool.size:
        raise ValueError(
            f"cannot seed {initial_infectious_count} infectious nodes; only "
            f"{pool.size} unvaccinated nodes available"
        )
    if initial_infectious_count > 0:
        seeds = rng.choice(pool, size=initial_infectious_count, replace=False)
        comp[seeds] = I
    return EpidemicState(compartments=comp, round=0)


def infection_probability(
    v: int, st: EpidemicState, g: Graph, p: DiseaseParams
) -> float:
    """Per-round infection probability of a susceptible node, clamped to 1."""
    if st.compartments[v] != S:
        raise ValueError(f"node {v} is not susceptible")
    sl = slice(g.indptr[v], g.indptr[v + 1])
    nbrs = g.indices[sl]
    if nbrs.size == 0:
        return 0.0
    w = g.adj_weights[sl]
    total = w.sum()
    infectious = w[st.compartments[nbrs] == I].sum()
    if infectious == 0.0:
        return 0.0
    return min(1.0, p.beta * p.omega_i[v] * infectious / total)


def _infection_probabilities(comp: np.ndarray, g: Graph, p: DiseaseParams):
    """Infection probabilities for all susceptible nodes (0 elsewhere)."""
    prob = np.zeros(g.n)
    inf_idx = np.flatnonzero(comp == I)
    if inf_idx.size == 0:
        return prob
    pressure = np.asarray(g.csr[inf_idx].sum(axis=0)).ravel()
    sus = np.flatnonzero((comp == S) & (pressure > 0.0))
    if sus.size:
        prob[sus] = np.minimum(
            1.0,
            p.beta * p.omega_i[sus] * pressure[sus] / g.weighted_degrees[sus],
        )
    return prob


def _advance(comp: np.ndarray, g: Graph, p: DiseaseParams, rng, prob=None):
    """One synchronous round in place; returns the new compartment array."""
    if prob is None:
        prob = _infection_probabilities(comp, g, p)
    new = comp.copy()

    cand = np.flatnonzero(prob > 0.0)
    if cand.size:
        hit = cand[rng.random(cand.size) < prob[cand]]
        new[hit] = I

    inf_idx = np.flatnonzero(comp == I)
    if inf_idx.size:
        dies = rng.random(inf_idx.size) < p.omega_d[inf_idx]
        recovers = (~dies) & (
            rng.random(inf_idx.size) < p.gamma * p.omega_r[inf_idx]
        )
        new[inf_idx[dies]] = D
        new[inf_idx[recovers]] = R
    return new


def step(
    st: EpidemicState, g: Graph, p: DiseaseParams, rng: np.random.Generator
) -> EpidemicState:
    return EpidemicState(
        compartments=_advance(st.compartments, g, p, rng),
        round=st.round + 1,
    )


def run_to_absorption(
    st0: EpidemicState,
    g: Graph,
    p: DiseaseParams,
    rng: np.random.Generator,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Outcome:
    """Iterate rounds until no transition has positive probability.

    That covers the usual no-infectious-left case and also frozen
    configurations where infectious nodes have omega_d = gamma*omega_r = 0
    (as in the hardness reduction instances).  Hitting max_rounds sets the
    truncation flag instead of raising.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    comp = st0.compartments.copy()
    rounds = st0.round
    clearable = (p.omega_d > 0.0) | (p.gamma * p.omega_r > 0.0)
    truncated = False
    # Once no susceptible node sees infectious pressure, the infectious set
    # can only shrink, so infections are impossible for the rest of the run.
    infections_possible = True
    no_prob = np.zeros(g.n)
    steps = 0
    while True:
        prob = no_prob
        if infections_possible:
            prob = _infection_probabilities(comp, g, p)
            if not (prob > 0.0).any():
                infections_possible = False
        inf_mask = comp == I
        active = (inf_mask & clearable).any() or infections_possible
        if not active:
            break
        if steps >= max_rounds:
            truncated = True
            break
        comp = _advance(comp, g, p, rng, prob=prob)
        rounds += 1
        steps += 1

    counts = np.bincount(comp, minlength=5)
    n = g.n
    return Outcome(
        susceptible=int(counts[S]),
        infectious=int(counts[I]),
        recovered=int(counts[R]),
        dead=int(counts[D]),
        vaccinated=int(counts[V]),
        rounds=rounds,
        survival_ratio=(n - int(counts[D])) / n,
        truncated=truncated,
    )
