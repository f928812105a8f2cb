"""Vaccination-strategy simulation toolkit for weighted contact networks."""

from .centrality import (
    ConvergenceError,
    ScoreVector,
    betweenness_centrality,
    closeness_centrality,
    eigenvector_centrality,
)
from .graph import (
    EdgeListError,
    Graph,
    dump_edge_list,
    edge_list_text,
    jaccard_weights,
    load_edge_list,
)
from .harness import ExperimentSpec, ResultRow, run_experiment, summarize, write_csv
from .hrg import HrgParams, generate
from .model import (
    Compartment,
    DiseaseParams,
    EpidemicState,
    Outcome,
    infection_probability,
    initialize_state,
    run_to_absorption,
    sample_disease_params,
    step,
)
from .strategies import (
    STRATEGY_NAMES,
    StrategyId,
    VaccinationPlan,
    score,
    select_vaccinees,
)

__version__ = "0.1.0"
