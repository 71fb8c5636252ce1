"""Dependent Bernoulli chains with decaying success probabilities.

The chain Y_1, Y_2, ... has Y_1 ~ Bern(p1) and transitions

    P{Y_{k+1} = 1 | Y_k = 0} = p_k,
    P{Y_{k+1} = 1 | Y_k = 1} = (1 - beta) * p_k,

so the marginals follow p_{k+1} = f_beta(p_k) = p_k (1 - beta p_k) and the
partial sum S_n = Y_1 + ... + Y_n satisfies S_n / log n -> 1/beta.  With
beta = gamma = 1 - r this is exactly the edge chain of the Markov random
graph; the module keeps the general parameterization.

Exact quantities (mean, second moment, joint probabilities) are computed by
dynamic programming over the marginal recurrence, never by sampling, so the
Monte Carlo helpers can be validated against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .rng import derive_seed, generator

SECOND_MOMENT_LIMIT = 20_000
_LOG_FLOOR = -750.0


@dataclass(frozen=True)
class ChainParams:
    """Initial probability, recurrence coefficient, length, seed.

    ``beta`` is the coefficient of the marginal recurrence; the decay
    factor applied after a success is 1 - beta.
    """

    p1: float
    beta: float
    n: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.p1 <= 1.0:
            raise ValueError(f"p1 must be in (0,1], got {self.p1}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0,1], got {self.beta}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def decay(self) -> float:
        return 1.0 - self.beta


@dataclass(frozen=True)
class MomentSummary:
    mean_Sn: float
    second_moment_Sn: float
    variance: float
    n: int
    source: str


def marginal_probs(params: ChainParams, n: int | None = None) -> np.ndarray:
    """Marginals p_1..p_n of the chain (probs[k] belongs to Y_{k+1})."""
    n = params.n if n is None else n
    out = np.empty(n)
    x = params.p1
    out[0] = x
    b = params.beta
    for k in range(1, n):
        x = x * (1.0 - b * x)
        out[k] = x
    return out


def simulate_chain(params: ChainParams, return_trajectory: bool = False):
    """One trajectory; returns S_n, or (S_n, trajectory) on request.

    Reference implementation with an explicit state walk; the lazy sampler
    in :func:`sample_sums_at` is validated against it.
    """
    probs = marginal_probs(params)
    rng = generator(params.seed)
    u = rng.random(params.n)
    state = 1 if u[0] < params.p1 else 0
    total = state
    traj = np.empty(params.n, dtype=np.int8) if return_trajectory else None
    if traj is not None:
        traj[0] = state
    d = params.decay
    for k in range(1, params.n):
        q = probs[k - 1] * (d if state else 1.0)
        state = 1 if u[k] < q else 0
        total += state
        if traj is not None:
            traj[k] = state
    if return_trajectory:
        return total, traj
    return total


def exact_mean_partial_sum(params: ChainParams) -> float:
    """E[S_n] = sum of the first n marginals (exact, no sampling)."""
    return float(exact_means_at(params, [params.n])[0])


def exact_means_at(params: ChainParams, checkpoints: Sequence[int]) -> np.ndarray:
    """E[S_n] at ascending checkpoints in one pass over the recurrence."""
    from . import _kernels

    cps = np.asarray(list(checkpoints), dtype=np.int64)
    if len(cps) == 0 or cps[0] < 1 or np.any(np.diff(cps) <= 0):
        raise ValueError("checkpoints must be ascending positive integers")
    return _kernels.recurrence_prefix_sums(params.p1, params.beta, cps)


def _second_moment_scan(
    params: ChainParams, checkpoints: Sequence[int]
) -> list[MomentSummary]:
    """Exact E[S_n^2] at each checkpoint via the pairwise-joint DP.

    For i < j, P{Y_i = 1, Y_j = 1} = p_i * q_j where q is iterated as
    q <- p_t (1 - beta q) from q = 1 at t = i; the scan carries all active
    conditionals as one vector so the total cost is O(n_max^2) flops.
    """
    n_max = checkpoints[-1]
    probs = marginal_probs(params, n_max)
    means = np.cumsum(probs)
    beta = params.beta
    q = np.empty(n_max)
    q[0] = 1.0
    m = 1
    z = 0.0
    out: list[MomentSummary] = []
    targets = iter(checkpoints)
    target = next(targets)
    t = 1
    while True:
        if t == target:
            es = float(means[t - 1])
            es2 = es + 2.0 * z
            out.append(
                MomentSummary(
                    mean_Sn=es,
                    second_moment_Sn=es2,
                    variance=es2 - es * es,
                    n=t,
                    source="exact",
                )
            )
            nxt = next(targets, None)
            if nxt is None:
                return out
            target = nxt
        # extend to Y_{t+1}: q entries become P{Y_{t+1}=1 | Y_i=1}
        q[:m] *= -beta
        q[:m] += 1.0
        q[:m] *= probs[t - 1]
        z += float(np.dot(probs[:m], q[:m]))
        q[m] = 1.0
        m += 1
        t += 1


def exact_second_moment(
    params: ChainParams, limit: int = SECOND_MOMENT_LIMIT
) -> MomentSummary:
    """Exact E[S_n^2]; quadratic cost, so refused above ``limit``."""
    if params.n > limit:
        raise ValueError(
            f"second-moment DP is O(n^2); n={params.n} exceeds limit {limit}"
        )
    return _second_moment_scan(params, [params.n])[0]


def exact_second_moments_at(
    params: ChainParams, checkpoints: Sequence[int], limit: int = SECOND_MOMENT_LIMIT
) -> list[MomentSummary]:
    cps = sorted(set(int(c) for c in checkpoints))
    if cps[0] < 1:
        raise ValueError("checkpoints must be positive")
    if cps[-1] > limit:
        raise ValueError(f"largest checkpoint {cps[-1]} exceeds limit {limit}")
    return _second_moment_scan(params, cps)


def moment_bound(params: ChainParams) -> float:
    """Closed-form cap on E[S_n^2]:

        (2 (1 - beta) / beta) E[S_n] + (log n / beta)^2.

    Holds on the tested grid for n >= 100 (and empirically from n ~ 5);
    at very small n with beta near 1 the cap can dip below the exact
    second moment, so nothing below n = 2 is accepted and callers should
    treat tiny-n values with care.
    """
    if params.n < 2:
        raise ValueError("moment bound requires n >= 2")
    es = exact_mean_partial_sum(params)
    b = params.beta
    return (2.0 * (1.0 - b) / b) * es + (math.log(params.n) / b) ** 2


def _chain_tables(params: ChainParams, n: int) -> tuple[np.ndarray, np.ndarray]:
    probs = marginal_probs(params, n)
    with np.errstate(divide="ignore"):
        lq = np.log1p(-probs)
    lq[~np.isfinite(lq)] = _LOG_FLOOR
    return probs, np.concatenate([[0.0], np.cumsum(lq)])


def sample_sums_at(
    params: ChainParams, checkpoints: Sequence[int], trials: int
) -> np.ndarray:
    """S_n at each checkpoint for ``trials`` independent trajectories,
    shape (trials, len(checkpoints)).

    Trajectories are sampled lazily (jumping between successes), so the
    cost per trial is O(S_n log n) rather than O(n); trial t uses
    substream derive_seed(params.seed, t).
    """
    from . import _kernels

    cps = np.asarray(sorted(set(int(c) for c in checkpoints)), dtype=np.int64)
    if cps[0] < 1 or cps[-1] > params.n:
        raise ValueError("checkpoints must lie in [1, n]")
    probs, logq = _chain_tables(params, int(cps[-1]))
    out = np.empty((trials, len(cps)), dtype=np.int64)
    for t in range(trials):
        out[t] = _kernels.chain_ones_at_checkpoints(
            probs, logq, params.decay, cps, np.uint64(derive_seed(params.seed, t))
        )
    return out


@dataclass(frozen=True)
class ConcentrationRow:
    n: int
    exact_mean: float
    exact_scaled_mean: float  # E[S_n] / log n
    empirical_scaled_mean: float
    tail_frequency: float  # fraction with |S_n/log n - 1/beta| > eps
    eps: float
    trials: int


def concentration_report(
    params: ChainParams,
    trials: int,
    checkpoints: Sequence[int] | None = None,
    eps: float | None = None,
) -> list[ConcentrationRow]:
    """Exact and empirical behaviour of S_n / log n at several lengths.

    The exact column is deterministic; empirical columns use trial
    substreams of params.seed.  ``eps`` defaults to half the limit 1/beta.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if checkpoints is None:
        checkpoints = [10**k for k in range(2, 8) if 10**k <= params.n]
    cps = sorted(set(int(c) for c in checkpoints))
    if eps is None:
        eps = 0.5 / params.beta
    exact = exact_means_at(params, cps)
    sums = sample_sums_at(params, cps, trials)
    rows = []
    target = 1.0 / params.beta
    for idx, n in enumerate(cps):
        ln = math.log(n)
        scaled = sums[:, idx] / ln
        rows.append(
            ConcentrationRow(
                n=n,
                exact_mean=float(exact[idx]),
                exact_scaled_mean=float(exact[idx]) / ln,
                empirical_scaled_mean=float(scaled.mean()),
                tail_frequency=float(np.mean(np.abs(scaled - target) > eps)),
                eps=eps,
                trials=trials,
            )
        )
    return rows


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """Wilson score interval for a binomial proportion (default 95%)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials**2)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _as_sequence_fn(seq) -> Callable[[int], float]:
    if callable(seq):
        return seq
    arr = list(seq)
    return lambda k: arr[k - 1]


def sandwich_marginals(
    a_seq, b_seq, p1: float, n: int, selection: str | Callable = "midpoint"
) -> np.ndarray:
    """Marginal sequence with p_{k+1} chosen inside
    [f_{a_k}(p_k), f_{b_k}(p_k)].

    ``a_seq``/``b_seq`` are arrays or callables on k >= 1 with values in
    (0, 1] and a_k >= b_k, so the interval is ordered.  ``selection`` is
    'midpoint' or a callable (lo, hi, k) -> value in [lo, hi].
    """
    a_fn, b_fn = _as_sequence_fn(a_seq), _as_sequence_fn(b_seq)
    if selection == "midpoint":
        select = lambda lo, hi, k: 0.5 * (lo + hi)
    elif callable(selection):
        select = selection
    else:
        raise ValueError(f"unknown selection rule {selection!r}")
    out = np.empty(n)
    x = p1
    out[0] = x
    for k in range(1, n):
        ak, bk = a_fn(k), b_fn(k)
        if not (0.0 < bk <= ak <= 1.0):
            raise ValueError(
                f"need 0 < b_k <= a_k <= 1 at k={k}, got a={ak}, b={bk}"
            )
        lo = x * (1.0 - ak * x)
        hi = x * (1.0 - bk * x)
        x = select(lo, hi, k)
        if not lo <= x <= hi:
            raise ValueError(f"selection left the sandwich at k={k}")
        out[k] = x
    return out


def sandwiched_chain(
    a_seq,
    b_seq,
    p1: float,
    n: int,
    seed: int = 0,
    selection: str | Callable = "midpoint",
    return_trajectory: bool = False,
):
    """Simulate a chain whose marginals follow :func:`sandwich_marginals`.

    The step from p_k to the selected p_{k+1} implies an effective
    coefficient beta'_k = (p_k - p_{k+1}) / p_k^2 in [b_k, a_k]; the
    transition keeps the usual structure with decay 1 - beta'_k.
    Returns the same outputs as :func:`simulate_chain`.
    """
    probs = sandwich_marginals(a_seq, b_seq, p1, n, selection)
    rng = generator(seed)
    u = rng.random(n)
    state = 1 if u[0] < p1 else 0
    total = state
    traj = np.empty(n, dtype=np.int8) if return_trajectory else None
    if traj is not None:
        traj[0] = state
    for k in range(1, n):
        pk, pk1 = probs[k - 1], probs[k]
        if state:
            beta_k = (pk - pk1) / (pk * pk) if pk > 0 else 0.0
            q = (1.0 - beta_k) * pk
        else:
            q = pk
        state = 1 if u[k] < q else 0
        total += state
        if traj is not None:
            traj[k] = state
    if return_trajectory:
        return total, traj
    return total
