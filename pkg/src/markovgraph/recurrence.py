"""The quadratic decay recurrence x_{n+1} = f_a(x_n), f_a(x) = x(1 - a x).

This map drives every probability sequence in the package: its terms decay
like 1/(a n) and its partial sums grow like (log n)/a.  The module provides
the exact iteration together with closed-form term envelopes, partial-sum
sandwich bounds, and harmonic-number estimates, all checkable at full
floating-point strictness (the bounds carry analytic slack, so no tolerance
is needed).

Conventions: ``a`` is the quadratic coefficient in (0, 1]; ``x1`` the start
value in (0, 1).  The maximum of f_a sits at x = 1/(2a) with value 1/(4a),
and f_a scales as a*f_a(x) = f_1(a*x), so all envelopes are stated for the
normalized sequence y_n = a*x_n started at y1 = a*x1 and divided by ``a``.
The Euler-Mascheroni constant is named EULER_GAMMA throughout the code base
to keep it apart from the decay complement gamma = 1 - r used elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class RecurrenceParams:
    """Start value, coefficient, and length of a recurrence run."""

    x1: float
    a: float
    n: int

    def __post_init__(self) -> None:
        if not 0.0 < self.x1 < 1.0:
            raise ValueError(f"x1 must be in (0,1), got {self.x1}")
        if not 0.0 < self.a <= 1.0:
            raise ValueError(f"a must be in (0,1], got {self.a}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class TermBounds:
    """Envelope for a single term x_n, plus the regime threshold.

    ``threshold_n_star`` is (1/f_1(a*x1) - 1)^2; at or above it the lower
    bound switches from f_1(a*x1)/(a n) to 1/(a (sqrt(n)+1)^2).
    """

    lower: float
    upper: float
    threshold_n_star: float


@dataclass(frozen=True)
class HarmonicEstimate:
    """Exact harmonic number H_n with its Euler-Maclaurin envelope."""

    value: float
    lower: float
    upper: float


def step(x: float, a: float) -> float:
    """One application of f_a: x -> x(1 - a x)."""
    return x * (1.0 - a * x)


def generate(params: RecurrenceParams) -> np.ndarray:
    """The first n terms x_1, ..., x_n of the recurrence.

    Strictly decreasing for x1 in (0,1); every term stays in (0, x1].
    """
    out = np.empty(params.n)
    x = params.x1
    out[0] = x
    for k in range(1, params.n):
        x = x * (1.0 - params.a * x)
        out[k] = x
    return out


def _normalized_start(params: RecurrenceParams) -> tuple[float, float, float]:
    """(y1, f_1(y1), threshold n*) for the normalized sequence y = a*x."""
    y1 = params.a * params.x1
    f1y = y1 * (1.0 - y1)
    n_star = (1.0 / f1y - 1.0) ** 2
    return y1, f1y, n_star


def term_bounds(n: int, params: RecurrenceParams) -> TermBounds:
    """Closed-form sandwich for the n-th term, n >= 2.

    lower = l_n(a*x1)/a with l_n(y) = 1/(sqrt(n)+1)^2 for n >= n*, else
    f_1(y)/n; upper = min(1/(4a), (1/a)/(n - 1 + 1/x1)).  The exact term
    from :func:`generate` satisfies lower <= x_n <= upper.
    """
    if n < 2:
        raise ValueError(f"term bounds require n >= 2, got {n}")
    a = params.a
    _, f1y, n_star = _normalized_start(params)
    if n >= n_star:
        lower = 1.0 / ((math.sqrt(n) + 1.0) ** 2) / a
    else:
        lower = f1y / n / a
    upper = min(0.25 / a, (1.0 / a) / (n - 1.0 + 1.0 / params.x1))
    return TermBounds(lower=lower, upper=upper, threshold_n_star=n_star)


def sum_threshold(params: RecurrenceParams) -> int:
    """Smallest integer n for which partial_sum_bounds is valid."""
    _, _, n_star = _normalized_start(params)
    return int(math.ceil(n_star))


def partial_sum_bounds(n: int, params: RecurrenceParams) -> tuple[float, float]:
    """Sandwich for sum_{i<=n} x_i, valid once n >= ceil(n*).

    Both bounds are computed for the normalized sequence started at
    y1 = a*x1 and divided by a:

        lower = (y1 + eta(y1) + 2/(1+sqrt(n)) + log n)/a
        upper = (y1 + log(1 + (n-1)*y1))/a

    with eta(y) = 2(1-f_1(y)) log f_1(y) - (5/2 + log 2) f_1(y).
    """
    y1, f1y, n_star = _normalized_start(params)
    if n < math.ceil(n_star):
        raise ValueError(
            f"partial sum bounds require n >= ceil(n*) = {math.ceil(n_star)}, got {n}"
        )
    a = params.a
    eta = 2.0 * (1.0 - f1y) * math.log(f1y) - (2.5 + math.log(2.0)) * f1y
    lower = (y1 + eta + 2.0 / (1.0 + math.sqrt(n)) + math.log(n)) / a
    upper = (y1 + math.log(1.0 + (n - 1.0) * y1)) / a
    return lower, upper


def harmonic(n: int) -> HarmonicEstimate:
    """H_n = sum_{i<=n} 1/i with a two-sided Euler-Maclaurin envelope.

    upper additionally takes the Riemann-sum cap log(n+1) + 1.
    """
    if n < 1:
        raise ValueError(f"harmonic requires n >= 1, got {n}")
    value = float(math.fsum(1.0 / i for i in range(1, n + 1)))
    ln = math.log(n)
    lower = EULER_GAMMA + ln + 0.5 / n - 0.125 / (n * n)
    upper = min(EULER_GAMMA + ln + 0.5 / n, math.log(n + 1.0) + 1.0)
    return HarmonicEstimate(value=value, lower=lower, upper=upper)


def check_bounds_exhaustive(
    params: RecurrenceParams,
) -> tuple[int, int, int, float]:
    """Run the recurrence to params.n checking every term against
    term_bounds, monotonicity, and every admissible prefix against
    partial_sum_bounds.

    Returns (term_violations, monotonicity_violations, sum_violations,
    final_partial_sum).  Compiled; the full acceptance grid at n = 10^6
    finishes in seconds.
    """
    from . import _kernels

    return _kernels.check_recurrence_bounds(params.x1, params.a, params.n)


def partial_sums_at(params: RecurrenceParams, checkpoints: list[int]) -> np.ndarray:
    """Exact partial sums at ascending checkpoint lengths (single pass)."""
    cps = np.asarray(checkpoints, dtype=np.int64)
    if len(cps) == 0 or np.any(np.diff(cps) <= 0) or cps[0] < 1:
        raise ValueError("checkpoints must be ascending positive integers")
    from . import _kernels

    return _kernels.recurrence_prefix_sums(params.x1, params.a, cps)


def check_harmonic_exhaustive(n_max: int) -> int:
    """Violation count of the harmonic envelope for every n <= n_max,
    using a compensated (Kahan) running sum so float error stays below the
    analytic slack of the bounds."""
    from . import _kernels

    return _kernels.compensated_harmonic_check(n_max, EULER_GAMMA)
