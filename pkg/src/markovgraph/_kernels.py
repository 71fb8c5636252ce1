"""Numba kernels for the hot loops.

Everything here is a plain scalar loop compiled with numba; the surrounding
modules own validation and array preparation.  Uniform variates inside
kernels come from an inlined splitmix64 stream so that results are exactly
reproducible from a 64-bit seed, with no dependence on thread count.

Log tables passed into the samplers must be finite: callers clamp
``log(0)`` to ``_LOG_FLOOR`` (exp of which underflows to 0.0) so that
differences of prefix sums never produce NaN.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_U64 = np.uint64
_INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53

LOG_FLOOR = -750.0  # exp(LOG_FLOOR) == 0.0 in float64


@njit(cache=True, inline="always")
def _next_u01(state):
    """Advance a splitmix64 stream; return a uniform in (0, 1]."""
    state[0] = state[0] + _U64(0x9E3779B97F4A7C15)
    z = state[0]
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    z = z ^ (z >> _U64(31))
    return (np.float64(z >> _U64(11)) + 1.0) * _INV_2_53


@njit(cache=True)
def check_recurrence_bounds(x1, a, n_max):
    """Iterate x_{k+1} = x_k (1 - a x_k) and check every term and partial sum
    against the closed-form envelopes.

    Term bounds for n >= 2:
        l_n(a*x1)/a <= x_n <= min(1/(4a), (1/a) / (n - 1 + 1/x1))
    where l_n(y) = 1/(sqrt(n)+1)^2 once n >= (1/f1(y) - 1)^2, else f1(y)/n.

    Partial-sum bounds for n >= ceil((1/f1(y1) - 1)^2), y1 = a*x1:
        (y1 + eta(y1) + 2/(1+sqrt(n)) + log n)/a <= sum_{i<=n} x_i
                                  <= (y1 + log(1 + (n-1) y1))/a.

    Returns (term_violations, monotonicity_violations, sum_violations,
    final_sum).
    """
    y1 = a * x1
    f1y = y1 * (1.0 - y1)
    thr = (1.0 / f1y - 1.0) ** 2
    thr_sum = math.ceil(thr)
    inv_a = 1.0 / a
    inv4a = 0.25 / a
    invx1 = 1.0 / x1
    eta = 2.0 * (1.0 - f1y) * math.log(f1y) - (2.5 + math.log(2.0)) * f1y
    x = x1
    s = x1
    term_viol = 0
    mono_viol = 0
    sum_viol = 0
    prev = x1
    for n in range(2, n_max + 1):
        x = x * (1.0 - a * x)
        s += x
        if x >= prev:
            mono_viol += 1
        prev = x
        sq = math.sqrt(n)
        if n >= thr:
            lo = inv_a / ((sq + 1.0) ** 2)
        else:
            lo = f1y / n * inv_a
        up = inv_a / (n - 1.0 + invx1)
        if up > inv4a:
            up = inv4a
        if x < lo or x > up:
            term_viol += 1
        if n >= thr_sum:
            lo_s = (y1 + eta + 2.0 / (1.0 + sq) + math.log(n)) * inv_a
            up_s = (y1 + math.log(1.0 + (n - 1.0) * y1)) * inv_a
            if s < lo_s or s > up_s:
                sum_viol += 1
    return term_viol, mono_viol, sum_viol, s


@njit(cache=True)
def recurrence_prefix_sums(x1, a, checkpoints):
    """Partial sums of the recurrence at sorted checkpoint lengths."""
    out = np.empty(len(checkpoints))
    x = x1
    s = x1
    idx = 0
    n = 1
    while idx < len(checkpoints):
        target = checkpoints[idx]
        while n < target:
            x = x * (1.0 - a * x)
            s += x
            n += 1
        out[idx] = s
        idx += 1
    return out


@njit(cache=True)
def compensated_harmonic_check(n_max, euler_gamma):
    """Kahan-summed harmonic numbers checked against the Euler-Maclaurin
    envelope and log(n+1)+1 for every n <= n_max.  Returns violation count."""
    s = 0.0
    c = 0.0
    viol = 0
    for n in range(1, n_max + 1):
        y = 1.0 / n - c
        t = s + y
        c = (t - s) - y
        s = t
        ln = math.log(n)
        lo = euler_gamma + ln + 0.5 / n - 0.125 / (n * n)
        up = euler_gamma + ln + 0.5 / n
        up2 = math.log(n + 1.0) + 1.0
        if up2 < up:
            up = up2
        if s < lo or s > up:
            viol += 1
    return viol


@njit(cache=True)
def chain_one_positions(probs, logq, decay, horizon, seed, out):
    """Sample the positions (1-based, <= horizon) where the dependent
    Bernoulli chain equals 1, jumping directly between successes.

    probs[k] is the marginal of position k+1; logq[k] = sum_{t<=k}
    log(1 - probs[t-1]) with logq[0] = 0 (log(0) clamped to LOG_FLOOR);
    ``decay`` multiplies the success probability right after a success.
    Chain law: X_1 ~ Bern(probs[0]); from a 0 at position s,
    X_{s+1} ~ Bern(probs[s-1]); from a 1, X_{s+1} ~ Bern(decay*probs[s-1]).

    Returns the number of ones written into ``out`` (caller sizes it to
    horizon).
    """
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    count = 0
    s = 0  # last position known to hold a 0 (0 = virtual start)
    while True:
        u = _next_u01(state)
        # First 1 at position t > s: survival(t) = P{zeros through t} is
        #   exp(logq[1] + logq[t-1])    from the start (s = 0)
        #   exp(logq[t-1] - logq[s-1])  from a zero at s >= 1
        # T = min{t : survival(t) < u}; probe k = t-1 over [s, horizon-1].
        if s == 0:
            target = math.log(u) - logq[1]
        else:
            target = math.log(u) + logq[s - 1]
        if logq[horizon - 1] >= target:
            return count  # no success within the horizon
        lo = s
        hi = horizon - 1  # logq[hi] < target guaranteed
        while lo < hi:
            mid = (lo + hi) // 2
            if logq[mid] < target:
                hi = mid
            else:
                lo = mid + 1
        t = lo + 1
        out[count] = t
        count += 1
        # run of consecutive ones after the success at t
        while t < horizon:
            q = decay * probs[t - 1]
            if _next_u01(state) < q:
                t += 1
                out[count] = t
                count += 1
            else:
                s = t + 1
                break
        else:
            return count


@njit(cache=True)
def degree_sample(probs, logq, decay, n, chain_seeds):
    """Per-vertex degrees of one sampled graph, without materializing it.

    Chain for vertex i (0-based, i >= 1) runs over positions 1..i and is
    seeded with chain_seeds[i], the same per-chain substream convention as
    the materializing sampler.  Returns the degree array of length n.
    """
    deg = np.zeros(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for i in range(1, n):
        cnt = chain_one_positions(probs, logq, decay, i, chain_seeds[i], buf)
        deg[i] += cnt
        for k in range(cnt):
            deg[buf[k] - 1] += 1
    return deg


@njit(cache=True)
def chain_ones_at_checkpoints(probs, logq, decay, checkpoints, seed):
    """Partial-sum counts S_n of one chain trajectory at sorted checkpoint
    lengths (the trajectory is sampled once up to max(checkpoints))."""
    horizon = checkpoints[-1]
    buf = np.empty(horizon, dtype=np.int64)
    cnt = chain_one_positions(probs, logq, decay, horizon, seed, buf)
    out = np.empty(len(checkpoints), dtype=np.int64)
    j = 0
    for idx in range(len(checkpoints)):
        limit = checkpoints[idx]
        while j < cnt and buf[j] <= limit:
            j += 1
        out[idx] = j
    return out


@njit(cache=True)
def greedy_stream(probs, logd, seed):
    """Size of the greedy independent set over vertices 0..n-1 in natural
    order, sampling only the edges the algorithm inspects.

    The chain restricted to the current set's positions is itself Markov;
    the two-point conditional from a sampled value at position a to the
    next constrained position b is

        P{X_b=1 | X_a=0} = p_b + p_a * D,
        P{X_b=1 | X_a=1} = p_b - (1 - p_a) * D,
        D = (-1)^{b-a+1} * prod_{k=a}^{b-1} (gamma * p_k),

    with the product from logd[k] = sum_{t<=k} log(gamma * probs[t-1])
    (log(0) clamped to LOG_FLOOR).  Distributionally identical to running
    greedy on a fully sampled graph.
    """
    n = len(probs) + 1
    stab = np.empty(n, dtype=np.int64)
    stab[0] = 0  # vertex 0 has no earlier neighbours
    size = 1
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    for v in range(1, n):
        accept = True
        a = 0
        xa = 0
        pa = 0.0
        for t in range(size):
            b = stab[t] + 1  # 1-based chain position of set member
            pb = probs[b - 1]
            if a == 0:
                q = pb
            else:
                d = math.exp(logd[b - 1] - logd[a - 1])
                if (b - a) % 2 == 0:
                    d = -d
                q = (pb - (1.0 - pa) * d) if xa == 1 else (pb + pa * d)
            xb = 1 if _next_u01(state) < q else 0
            a = b
            xa = xb
            pa = pb
            if xb == 1:
                accept = False
                break
        if accept:
            stab[size] = v
            size += 1
    return size
