"""Markov random graphs with decaying edge probabilities.

Library layout:

- :mod:`markovgraph.recurrence` -- the quadratic decay map x(1 - a x), its
  term envelopes, partial-sum sandwich, harmonic numbers;
- :mod:`markovgraph.graphgen` -- the graph model: exact edge-probability
  tables, seeded sampling, subset-independence probabilities and bounds;
- :mod:`markovgraph.stable` -- greedy and exact independent-set algorithms
  with graph-statistic lower bounds;
- :mod:`markovgraph.bernoulli` -- the dependent Bernoulli chain, exact
  moments, and concentration diagnostics;
- :mod:`markovgraph.theory` -- closed-form bound evaluators and the
  upper-bound root-finder;
- :mod:`markovgraph.experiments` / :mod:`markovgraph.cli` -- the
  reproducible experiment harness.
"""

from .graphgen import (
    EdgeProbTable,
    GraphParams,
    MarkovGraph,
    edge_prob_table,
    exact_subset_independence,
    sample_degrees,
    sample_graph,
)
from .recurrence import RecurrenceParams, generate, harmonic, step
from .stable import (
    AlphaResult,
    exact_alpha,
    greedy_in_order,
    greedy_min_degree,
    turan_bounds,
)
from .bernoulli import ChainParams, exact_mean_partial_sum, simulate_chain
from .theory import alpha_lower, alpha_upper, prime_count, upper_root

__version__ = "0.1.0"

__all__ = [
    "AlphaResult",
    "ChainParams",
    "EdgeProbTable",
    "GraphParams",
    "MarkovGraph",
    "RecurrenceParams",
    "alpha_lower",
    "alpha_upper",
    "edge_prob_table",
    "exact_alpha",
    "exact_mean_partial_sum",
    "exact_subset_independence",
    "generate",
    "greedy_in_order",
    "greedy_min_degree",
    "harmonic",
    "prime_count",
    "sample_degrees",
    "sample_graph",
    "simulate_chain",
    "step",
    "turan_bounds",
    "upper_root",
]
