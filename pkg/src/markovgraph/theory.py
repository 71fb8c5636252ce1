"""Closed-form evaluators for the stability-number, degree, and chromatic
bounds of the decaying-edge model, plus the root-finder for the upper-bound
constant and the prime-counting function.

Every asymptotic bound is returned as a BoundReport carrying its validity
condition, since at desk-scale n the with-high-probability statements are
trend-level only.  ``gamma`` always denotes 1 - r; the Euler-Mascheroni
constant lives in :mod:`markovgraph.recurrence` as EULER_GAMMA.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: float
    validity: str
    kind: str  # "lower" | "upper"

    def __post_init__(self) -> None:
        if self.kind not in ("lower", "upper"):
            raise ValueError(f"kind must be lower/upper, got {self.kind!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"bound {self.name} is not finite: {self.value}")


@dataclass(frozen=True)
class RootResult:
    """Root of the upper-bound criterion function.

    For small r the root sits within an unrepresentable distance of 1 (the
    gap is exp(-(1-r)/r) to leading order), so ``one_minus_c_star`` carries
    the gap at full precision while ``c_star`` may round to 1.0.
    """

    c_star: float
    residual: float
    iterations: int
    one_minus_c_star: float


def f_r_eval(c: float, r: float) -> float:
    """c (1 - log c) + (r / (1 - r)) (c + log(1 - c)); the sign of this
    function at c decides whether c*n can upper-bound the stability number."""
    if not 0.0 < c < 1.0:
        raise ValueError(f"c must be in (0,1), got {c}")
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must be in (0,1), got {r}")
    return c * (1.0 - math.log(c)) + (r / (1.0 - r)) * (c + math.log1p(-c))


def f_r_eval_delta(delta: float, r: float) -> float:
    """f_r evaluated at c = 1 - delta without forming c explicitly, so the
    region where the root hugs 1 stays numerically resolvable."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0,1), got {delta}")
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must be in (0,1), got {r}")
    c = 1.0 - delta
    return c * (1.0 - math.log1p(-delta)) + (r / (1.0 - r)) * (c + math.log(delta))


def root_bound(r: float) -> float:
    """The closed-form cap exp(-r) + r/10 on the root c*."""
    return math.exp(-r) + 0.1 * r


def root_bound_gap(r: float) -> float:
    """(1 - 1/(1 - c(r))) r - log c(r) at c(r) = exp(-r) + r/10.

    Negative on (0, 1); approximately -0.1197 at r = 1.
    """
    c = root_bound(r)
    return (1.0 - 1.0 / (1.0 - c)) * r - math.log(c)


def upper_root(r: float, tol: float = 1e-12) -> RootResult:
    """The unique root c* of f_r in (0, 1) by bisection.

    A point with f_r > 0 is located by the geometric scan c = 2^-k (f_r is
    positive near 0); a point with f_r < 0 by the scan delta = 4^-k toward
    c = 1, where f_r tends to -infinity.  Bisection then runs on the
    bracket, geometrically in delta = 1 - c because for small r the root
    gap 1 - c* is exponentially small, until the residual drops below
    ``tol`` or the bracket collapses.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must be in (0,1), got {r}")
    d_pos = None  # f > 0 side (c small, delta large)
    c = 0.5
    for _ in range(200):
        if f_r_eval(c, r) > 0.0:
            d_pos = 1.0 - c
            break
        c *= 0.5
    if d_pos is None:
        raise RuntimeError(f"no positive bracketing point found for r={r}")
    d_neg = None  # f < 0 side (c near 1, delta small)
    d = 0.25
    for _ in range(600):
        if f_r_eval_delta(d, r) < 0.0:
            d_neg = d
            break
        d *= 0.25
        if d == 0.0:
            break
    if d_neg is None:
        raise RuntimeError(f"no negative bracketing point found for r={r}")
    iterations = 0
    mid = d_neg
    for _ in range(400):
        mid = math.sqrt(d_neg * d_pos)
        if mid <= d_neg or mid >= d_pos:
            break
        iterations += 1
        val = f_r_eval_delta(mid, r)
        if abs(val) <= tol:
            break
        if val < 0.0:
            d_neg = mid
        else:
            d_pos = mid
    return RootResult(
        c_star=1.0 - mid,
        residual=abs(f_r_eval_delta(mid, r)),
        iterations=iterations,
        one_minus_c_star=mid,
    )


def alpha_upper(n: int, r: float) -> BoundReport:
    """Linear upper bound (exp(-r) + r/10) n on the stability number."""
    if not 0.0 < r <= 1.0:
        raise ValueError(f"r must be in (0,1], got {r}")
    return BoundReport(
        name="alpha-upper-linear",
        value=root_bound(r) * n,
        validity="w.h.p. as n -> infinity; constant < 1 for all r in (0,1]",
        kind="upper",
    )


def alpha_upper_sharp(n: int, r: float, eps: float, tol: float = 1e-12) -> BoundReport:
    """The sharper (c* + eps) n variant via the computed root."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    root = upper_root(r, tol)
    return BoundReport(
        name="alpha-upper-root",
        value=(root.c_star + eps) * n,
        validity=f"w.h.p. as n -> infinity, any eps > 0 (eps={eps})",
        kind="upper",
    )


def alpha_lower(n: int, r: float, eps: float) -> tuple[BoundReport, BoundReport]:
    """The two lower-bound forms: gamma/(2+eps) n/log n, and the
    prime-counting form gamma/(2(2 eps + 1)) pi(n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    g = 1.0 - r
    log_form = BoundReport(
        name="alpha-lower-log",
        value=g / (2.0 + eps) * n / math.log(n),
        validity=f"w.h.p. as n -> infinity, eps={eps}",
        kind="lower",
    )
    prime_form = BoundReport(
        name="alpha-lower-prime",
        value=g / (2.0 * (2.0 * eps + 1.0)) * prime_count(n),
        validity=f"w.h.p. as n -> infinity, eps={eps}",
        kind="lower",
    )
    return log_form, prime_form


def alpha_lower_prime_unsimplified(n: int, r: float, eps: float) -> BoundReport:
    """Prime-form lower bound with the unsimplified constant
    gamma/((2+eps)(1+eps)); implied directly by the n/log n form and the
    Prime Number Theorem, and never below the simplified variant."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    g = 1.0 - r
    return BoundReport(
        name="alpha-lower-prime-unsimplified",
        value=g / ((2.0 + eps) * (1.0 + eps)) * prime_count(n),
        validity=f"w.h.p. as n -> infinity, eps={eps}",
        kind="lower",
    )


def prime_count(n: int) -> int:
    """pi(n): number of primes <= n, by a sieve of Eratosthenes."""
    if n < 2:
        return 0
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, int(math.isqrt(n)) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return int(sieve.sum())


def prime_counts_upto(n: int) -> np.ndarray:
    """pi(k) for every k <= n (index k), for bulk comparisons."""
    if n < 0:
        raise ValueError("n must be >= 0")
    sieve = np.ones(n + 1, dtype=bool)
    sieve[: min(2, n + 1)] = False
    for q in range(2, int(math.isqrt(n)) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return np.cumsum(sieve)


@dataclass(frozen=True)
class DegreeBoundReports:
    min_degree_upper: BoundReport
    max_degree_lower: BoundReport
    avg_degree_target: BoundReport


def degree_bounds(n: int, r: float, eps: float = 0.0) -> DegreeBoundReports:
    """Degree extremes implied by average-degree concentration at 2/gamma
    log n: min degree <= (2/gamma + eps) log n, max degree >= (2/gamma -
    eps) log n; the concentration target itself is reported alongside."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if eps < 0.0:
        raise ValueError("eps must be >= 0")
    if r >= 1.0:
        raise ValueError("degree bounds require r < 1")
    g = 1.0 - r
    ln = math.log(n)
    validity = f"w.h.p. as n -> infinity, eps={eps}"
    return DegreeBoundReports(
        min_degree_upper=BoundReport(
            "min-degree-upper", (2.0 / g + eps) * ln, validity, "upper"
        ),
        max_degree_lower=BoundReport(
            "max-degree-lower", (2.0 / g - eps) * ln, validity, "lower"
        ),
        avg_degree_target=BoundReport(
            "avg-degree-target",
            2.0 / g * ln,
            "concentration limit of d(G)/log n times log n; approached at "
            "rate 1/log n",
            "lower",
        ),
    )


def chromatic_bounds(
    n: int, m: int, r: float, eps: float = 0.0
) -> tuple[BoundReport, BoundReport]:
    """Lower bounds on the chromatic and edge-chromatic numbers:
    chi >= n^2/(n^2 - 2m) and chi' >= (2/gamma - eps) log n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"edge count {m} out of range")
    if 2 * m >= n * n:
        raise ValueError("chromatic bound degenerate: 2m >= n^2")
    if r >= 1.0:
        raise ValueError("edge-chromatic bound requires r < 1")
    g = 1.0 - r
    chi = BoundReport(
        name="chromatic-lower",
        value=n * n / (n * n - 2.0 * m),
        validity="any graph with these vertex/edge counts",
        kind="lower",
    )
    chi_edge = BoundReport(
        name="edge-chromatic-lower",
        value=(2.0 / g - eps) * math.log(n),
        validity=f"w.h.p. as n -> infinity, eps={eps}",
        kind="lower",
    )
    return chi, chi_edge


def greedy_bound(n: int, r: float) -> tuple[BoundReport, BoundReport]:
    """Greedy independent-set size guarantee n^(gamma/(gamma+1)), plus the
    integer-exponent variant n^(1/(tau+1)) with tau = ceil(1/gamma)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if r >= 1.0:
        raise ValueError("greedy bound requires r < 1")
    g = 1.0 - r
    smooth_exponent = g / (g + 1.0)
    tau = math.ceil(1.0 / g)
    ceil_exponent = 1.0 / (tau + 1.0)
    validity = "w.h.p. as n -> infinity, up to a constant factor"
    return (
        BoundReport("greedy-size-smooth", n**smooth_exponent, validity, "lower"),
        BoundReport("greedy-size-ceil", n**ceil_exponent, validity, "lower"),
    )
