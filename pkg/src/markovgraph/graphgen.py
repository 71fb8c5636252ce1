"""Markov random graphs with decaying edge probabilities.

A graph on vertices v_0..v_{n-1} is grown vertex by vertex.  Edges from the
new vertex v_i to v_0..v_{i-1} form a Markov chain indexed by the lower
endpoint: the edge to v_0 appears with probability p, and after an edge is
present the success probability of the next one is multiplied by the decay
r in (0, 1]; after an absence it repeats the previous marginal.  Chains of
different vertices are independent, and the marginal probability of an edge
whose lower endpoint is v_j depends only on j, following the recurrence
p_{j+1} = p_j (1 - gamma p_j) with gamma = 1 - r.  r = 1 collapses the
model to the binomial random graph.

Indexing: vertices are 0-based; ``EdgeProbTable.probs[j]`` is the marginal
of any edge whose lower endpoint is vertex j (chain position j+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import recurrence
from .rng import derive_seed

_LOG_FLOOR = -750.0  # exp underflows to exactly 0.0


@dataclass(frozen=True)
class GraphParams:
    """Model inputs: vertex count, initial probability, decay, seed."""

    n: int
    p: float
    r: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"p must be in (0,1], got {self.p}")
        if not 0.0 < self.r <= 1.0:
            raise ValueError(f"r must be in (0,1], got {self.r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def gamma(self) -> float:
        return 1.0 - self.r


@dataclass
class EdgeProbTable:
    """Exact marginal edge probabilities p_1..p_{n-1}.

    probs[j] is the marginal of edges with lower endpoint j (0-based); the
    sequence starts at p and obeys p_{next} = p_cur (1 - gamma p_cur), so
    it is strictly decreasing for r < 1 and constant p for r = 1.
    """

    probs: np.ndarray
    p: float
    r: float
    _log_survival: np.ndarray | None = field(default=None, repr=False)
    _log_decay_products: np.ndarray | None = field(default=None, repr=False)

    @property
    def gamma(self) -> float:
        return 1.0 - self.r

    @property
    def n(self) -> int:
        return len(self.probs) + 1

    def log_survival(self) -> np.ndarray:
        """Prefix sums L[k] = sum_{t<=k} log(1 - p_t), L[0] = 0 (clamped)."""
        if self._log_survival is None:
            with np.errstate(divide="ignore"):
                lq = np.log1p(-self.probs)
            lq[~np.isfinite(lq)] = _LOG_FLOOR
            self._log_survival = np.concatenate([[0.0], np.cumsum(lq)])
        return self._log_survival

    def log_decay_products(self) -> np.ndarray:
        """Prefix sums D[k] = sum_{t<=k} log(gamma p_t), D[0] = 0 (clamped)."""
        if self._log_decay_products is None:
            with np.errstate(divide="ignore"):
                ld = np.log(self.gamma * self.probs)
            ld[~np.isfinite(ld)] = _LOG_FLOOR
            self._log_decay_products = np.concatenate([[0.0], np.cumsum(ld)])
        return self._log_decay_products


def edge_prob_table(params: GraphParams) -> EdgeProbTable:
    """Iterate the marginal recurrence once for all n-1 chain positions."""
    count = max(params.n - 1, 1)
    probs = np.empty(count)
    x = params.p
    probs[0] = x
    g = params.gamma
    for j in range(1, count):
        x = x * (1.0 - g * x)
        probs[j] = x
    if params.n == 1:
        probs = probs[:0]
    return EdgeProbTable(probs=probs, p=params.p, r=params.r)


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic 2x2 transition of one chain step.

    Row 0 (previous edge absent): (1 - p_j, p_j).
    Row 1 (previous edge present): (1 - r p_j, r p_j).
    """

    matrix: tuple[tuple[float, float], tuple[float, float]]

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix)


def transition_matrix(table: EdgeProbTable, j: int) -> TransitionMatrix:
    """Transition from the chain variable at table index j to the next one.

    j indexes ``table.probs`` (0-based); valid for 0 <= j <= n-3 so that a
    successor variable exists.
    """
    if not 0 <= j <= len(table.probs) - 2:
        raise IndexError(
            f"transition index {j} out of range [0, {len(table.probs) - 2}]"
        )
    pj = float(table.probs[j])
    r = table.r
    return TransitionMatrix(((1.0 - pj, pj), (1.0 - r * pj, r * pj)))


@dataclass(frozen=True)
class MarkovGraph:
    """A sampled simple undirected graph with provenance.

    rows[v] is the neighbour bitmask of vertex v (bit u set iff edge {u,v}).
    """

    n: int
    rows: tuple[int, ...]
    m: int
    params: GraphParams
    seed_used: int

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degrees(self) -> np.ndarray:
        return np.array([row.bit_count() for row in self.rows], dtype=np.int64)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.rows[v] & ((1 << v) - 1)  # lower endpoints only
            while row:
                lsb = row & -row
                out.append((lsb.bit_length() - 1, v))
                row ^= lsb
        return out


def _chain_seeds(params: GraphParams) -> np.ndarray:
    return np.array(
        [derive_seed(params.seed, i) for i in range(params.n)], dtype=np.uint64
    )


def sample_graph(params: GraphParams) -> MarkovGraph:
    """Draw one graph; deterministic given (params, seed).

    Each vertex's edge chain is generated from its own substream
    derive_seed(seed, i), so chains may be produced in any order (or in
    parallel) with identical results.
    """
    from . import _kernels

    rows = [0] * params.n
    m = 0
    if params.n > 1:
        table = edge_prob_table(params)
        logq = table.log_survival()
        buf = np.empty(params.n, dtype=np.int64)
        for i in range(1, params.n):
            cnt = _kernels.chain_one_positions(
                table.probs, logq, params.r, i, np.uint64(derive_seed(params.seed, i)), buf
            )
            for k in range(cnt):
                u = int(buf[k]) - 1  # chain position t -> lower vertex t-1
                rows[i] |= 1 << u
                rows[u] |= 1 << i
            m += cnt
    return MarkovGraph(
        n=params.n, rows=tuple(rows), m=m, params=params, seed_used=params.seed
    )


def sample_edge_list(params: GraphParams) -> tuple[np.ndarray, np.ndarray]:
    """Edge endpoints (lower, upper) of one sampled graph, identical in law
    and in seed-determinism to :func:`sample_graph`, but without bitmask
    assembly; suitable for large n."""
    from . import _kernels

    if params.n == 1:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    table = edge_prob_table(params)
    logq = table.log_survival()
    buf = np.empty(params.n, dtype=np.int64)
    lowers: list[np.ndarray] = []
    uppers: list[np.ndarray] = []
    for i in range(1, params.n):
        cnt = _kernels.chain_one_positions(
            table.probs, logq, params.r, i, np.uint64(derive_seed(params.seed, i)), buf
        )
        if cnt:
            lowers.append(buf[:cnt].copy() - 1)
            uppers.append(np.full(cnt, i, dtype=np.int64))
    if not lowers:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(lowers), np.concatenate(uppers)


def sample_degrees(params: GraphParams) -> np.ndarray:
    """Per-vertex degrees of one sampled graph (never materialized).

    Same per-chain substreams as :func:`sample_graph`: for equal params the
    degree vector equals ``sample_graph(params).degrees()`` exactly.
    """
    from . import _kernels

    if params.n == 1:
        return np.zeros(1, dtype=np.int64)
    table = edge_prob_table(params)
    return _kernels.degree_sample(
        table.probs, table.log_survival(), params.r, params.n, _chain_seeds(params)
    )


def chain_zero_probability(table: EdgeProbTable, positions) -> float:
    """P{chain is 0 at every given position} by forward marginalization.

    ``positions`` are 0-based lower-vertex indices (chain position = index
    + 1), strictly increasing.  The pair (w0, w1) tracks the joint
    probability of the chain state at the current position and zeros at all
    constrained positions so far; constrained positions zero out w1.
    """
    pos = list(positions)
    if not pos:
        return 1.0
    if any(b <= a for a, b in zip(pos, pos[1:])):
        raise ValueError("positions must be strictly increasing")
    if pos[0] < 0 or pos[-1] >= len(table.probs):
        raise ValueError("position out of table range")
    r = table.r
    probs = table.probs
    constrained = set(pos)
    w0, w1 = 1.0 - probs[0], probs[0]
    if 0 in constrained:
        w1 = 0.0
    for u in range(1, pos[-1] + 1):
        q = probs[u - 1]
        w0, w1 = w0 * (1.0 - q) + w1 * (1.0 - r * q), w0 * q + w1 * (r * q)
        if u in constrained:
            w1 = 0.0
    return w0 + w1


def exact_subset_independence(table: EdgeProbTable, subset) -> float:
    """Exact probability that a vertex subset is independent.

    Chains of distinct vertices are independent, so the probability
    factorizes over the subset members in increasing order: each factor is
    the probability that the member's chain is 0 at all earlier members'
    positions, computed exactly by :func:`chain_zero_probability`.
    """
    js = list(subset)
    if any(b <= a for a, b in zip(js, js[1:])):
        raise ValueError("subset must be sorted strictly ascending")
    if js and (js[0] < 0 or js[-1] >= table.n):
        raise ValueError("vertex index out of range")
    result = 1.0
    for idx in range(1, len(js)):
        result *= chain_zero_probability(table, js[:idx])
    return result


def conditional_probs(table: EdgeProbTable, k: int, j: int) -> tuple[float, float]:
    """(P{X_j=0 | X_k=0}, P{X_j=1 | X_k=1}) for chain positions k < j
    (1-based), via the product of the intervening transition matrices.

    Both conditionals are sandwiched by the one-step rows:
    1 - p_{j-1} <= P{X_j=0|X_k=0} <= 1 - r p_{j-1} and
    r p_{j-1} <= P{X_j=1|X_k=1} <= p_{j-1}.
    """
    if not 1 <= k < j <= len(table.probs):
        raise ValueError(f"need 1 <= k < j <= {len(table.probs)}")
    g = table.gamma
    q0, q1 = 0.0, 1.0  # P{X_t = 1 | X_k = 0 resp. 1}
    for t in range(k, j):
        pt = table.probs[t - 1]
        q0 = pt * (1.0 - g * q0)
        q1 = pt * (1.0 - g * q1)
    return 1.0 - q0, q1


def disconnection_bounds(
    v: int, m: int, table: EdgeProbTable
) -> tuple[float, float]:
    """Bounds on P{vertex v is disconnected from A} over every subset A of
    size m contained in {0, ..., v-1}:

        lower = (1 - p) * prod over the m-1 largest marginals (1 - probs[k])
        upper = prod_{k=v-m}^{v-1} (1 - r * probs[k])

    independent of which subset is chosen.
    """
    if m < 1:
        raise ValueError("subset size must be >= 1")
    if v < m:
        raise ValueError(f"vertex {v} must lie above a size-{m} subset")
    probs = table.probs
    lower = (1.0 - probs[0]) * float(np.prod(1.0 - probs[: m - 1]))
    upper = float(np.prod(1.0 - table.r * probs[v - m : v]))
    return lower, upper


def table_envelope(table: EdgeProbTable) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form envelope for the marginal table at positions j >= 2
    (1-based): l_j(gamma p)/gamma <= p_j <= min(p_{j-1}, 1/(gamma j)).

    Arrays are indexed like ``table.probs`` with NaN at position 1 (the
    start value is exact).  Requires r < 1.
    """
    if table.r >= 1.0:
        raise ValueError("the envelope is only defined for r < 1")
    g = table.gamma
    y1 = g * table.p
    f1y = y1 * (1.0 - y1)
    n_star = (1.0 / f1y - 1.0) ** 2
    j = np.arange(1, len(table.probs) + 1, dtype=float)
    lower = np.where(
        j >= n_star, 1.0 / (np.sqrt(j) + 1.0) ** 2, f1y / j
    ) / g
    upper = np.minimum(
        np.concatenate([[np.inf], table.probs[:-1]]), 1.0 / (g * j)
    )
    lower[0] = np.nan
    upper[0] = np.nan
    return lower, upper


def independence_threshold(p: float, r: float) -> float:
    """(1/tau - 1)^2 with tau = f_1(gamma p); the validity threshold of
    :func:`independence_prob_upper`."""
    g = 1.0 - r
    tau = recurrence.step(g * p, 1.0)
    return (1.0 / tau - 1.0) ** 2


def independence_prob_upper(n: int, k: int, p: float, r: float) -> float:
    """Uniform upper bound on the probability that any k-subset of the
    n-vertex graph is independent:

        prod_{i=1}^{k-1} (1 - (r/gamma) / (sqrt(n-i)+1)^2)^i

    Valid once n - k + 1 >= (1/tau - 1)^2, tau = gamma p (1 - gamma p).
    """
    if not 0.0 < r < 1.0:
        raise ValueError("decay r must be in (0,1) for this bound")
    if k < 1 or k > n:
        raise ValueError(f"subset size k={k} out of range for n={n}")
    thr = independence_threshold(p, r)
    if n - k + 1 < thr:
        raise ValueError(
            f"bound invalid: requires n - k + 1 >= (1/tau - 1)^2 = {thr:.6g}, "
            f"got n - k + 1 = {n - k + 1}"
        )
    g = 1.0 - r
    i = np.arange(1, k)
    factors = 1.0 - (r / g) / (np.sqrt(n - i) + 1.0) ** 2
    return float(np.prod(factors**i))
