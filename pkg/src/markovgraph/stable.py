"""Independent-set computation: greedy heuristics, an exact branch-and-bound
solver, and graph-statistic lower bounds on the stability number.

All routines work on MarkovGraph bitmask rows, so membership and neighbour
operations are single big-int ANDs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphgen import GraphParams, MarkovGraph, edge_prob_table

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class VertexSet:
    """A vertex subset as both sorted tuple and bitmask."""

    vertices: tuple[int, ...]
    mask: int

    def __len__(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        verts = []
        mm = mask
        while mm:
            lsb = mm & -mm
            verts.append(lsb.bit_length() - 1)
            mm ^= lsb
        return cls(vertices=tuple(verts), mask=mask)

    def is_independent(self, graph: MarkovGraph) -> bool:
        return all((graph.rows[v] & self.mask) == 0 for v in self.vertices)

    def is_maximal(self, graph: MarkovGraph) -> bool:
        """No vertex outside the set can be added without breaking
        independence (assumes the set is independent)."""
        closed = self.mask
        for v in self.vertices:
            closed |= graph.rows[v]
        return closed == (1 << graph.n) - 1


@dataclass(frozen=True)
class DegreeStats:
    m: int
    min_deg: int
    max_deg: int
    avg_deg: float


@dataclass(frozen=True)
class AlphaResult:
    """Outcome of the exact solver.

    When ``complete`` the stability number is ``lower`` (== upper);
    otherwise the budget ran out and [lower, upper] brackets it.
    """

    lower: int
    upper: int
    complete: bool
    nodes: int

    @property
    def value(self) -> int:
        if not self.complete:
            raise RuntimeError(
                f"solver hit its node budget; alpha in [{self.lower}, {self.upper}]"
            )
        return self.lower


def greedy_in_order(graph: MarkovGraph, order=None) -> VertexSet:
    """Scan ``order`` (default: natural order v_0..v_{n-1}) and add each
    vertex with no neighbour already chosen.  Output is independent and
    maximal."""
    if order is None:
        order = range(graph.n)
    order = list(order)
    if sorted(order) != list(range(graph.n)):
        raise ValueError("order must be a permutation of 0..n-1")
    chosen = 0
    for v in order:
        if graph.rows[v] & chosen == 0:
            chosen |= 1 << v
    return VertexSet.from_mask(chosen)


def greedy_min_degree(graph: MarkovGraph) -> VertexSet:
    """Repeatedly take a minimum-degree vertex of the residual graph (ties
    broken by lowest index) and delete its closed neighbourhood."""
    alive = (1 << graph.n) - 1
    chosen = 0
    rows = graph.rows
    while alive:
        best_v = -1
        best_d = graph.n + 1
        mm = alive
        while mm:
            lsb = mm & -mm
            v = lsb.bit_length() - 1
            d = (rows[v] & alive).bit_count()
            if d < best_d:
                best_d = d
                best_v = v
                if d == 0:
                    break
            mm ^= lsb
        chosen |= 1 << best_v
        alive &= ~(rows[best_v] | (1 << best_v))
    return VertexSet.from_mask(chosen)


def _deg_le2_alpha(rows: tuple[int, ...], cand: int) -> int:
    """Exact stability number of an induced subgraph in which every vertex
    has degree <= 2: a disjoint union of paths and cycles, so alpha is
    ceil(t/2) per t-vertex path and floor(t/2) per t-cycle."""
    total = 0
    seen = 0
    mm = cand
    while mm:
        lsb = mm & -mm
        start = lsb.bit_length() - 1
        mm ^= lsb
        if (seen >> start) & 1:
            continue
        comp_size = 0
        deg_sum = 0
        stack = [start]
        seen |= 1 << start
        while stack:
            u = stack.pop()
            comp_size += 1
            nb = rows[u] & cand
            deg_sum += nb.bit_count()
            t = nb & ~seen
            while t:
                l2 = t & -t
                seen |= l2
                stack.append(l2.bit_length() - 1)
                t ^= l2
        if deg_sum // 2 < comp_size:  # path
            total += (comp_size + 1) // 2
        else:  # cycle
            total += comp_size // 2
    return total


def exact_alpha(graph: MarkovGraph, budget: int = DEFAULT_BUDGET) -> AlphaResult:
    """Exact stability number by branch and bound.

    Branches on a maximum-degree vertex v of the residual graph with
    alpha(G) = max(alpha(G - v), 1 + alpha(G - N[v])), prunes against the
    incumbent with the residual-size bound, and evaluates residual graphs
    of maximum degree <= 2 in closed form.  ``budget`` caps the number of
    expanded nodes; on exhaustion the result carries the incumbent and the
    best still-open upper bound instead of an exact value.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    rows = graph.rows
    n = graph.n
    best = len(greedy_min_degree(graph))
    stack: list[tuple[int, int]] = [((1 << n) - 1, 0)]
    nodes = 0
    while stack:
        cand, size = stack.pop()
        nodes += 1
        if nodes > budget:
            stack.append((cand, size))
            upper = best
            for c, s in stack:
                upper = max(upper, s + c.bit_count())
            return AlphaResult(lower=best, upper=upper, complete=False, nodes=nodes - 1)
        if size + cand.bit_count() <= best:
            continue
        if cand == 0:
            best = size
            continue
        best_v = -1
        best_d = -1
        mm = cand
        while mm:
            lsb = mm & -mm
            v = lsb.bit_length() - 1
            d = (rows[v] & cand).bit_count()
            if d > best_d:
                best_d = d
                best_v = v
            mm ^= lsb
        if best_d <= 2:
            best = max(best, size + _deg_le2_alpha(rows, cand))
            continue
        v = best_v
        stack.append((cand & ~(1 << v), size))  # exclude v
        stack.append((cand & ~(rows[v] | (1 << v)), size + 1))  # include v
    return AlphaResult(lower=best, upper=best, complete=True, nodes=nodes)


def degree_stats(graph: MarkovGraph) -> DegreeStats:
    degs = graph.degrees()
    m = int(degs.sum()) // 2
    return DegreeStats(
        m=m,
        min_deg=int(degs.min()),
        max_deg=int(degs.max()),
        avg_deg=2.0 * m / graph.n,
    )


def turan_bounds(n: int, m: int) -> float:
    """Lower bound on the stability number of any n-vertex, m-edge graph:
    max(n^2/(n + 2m), (2n - m)/3)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"edge count {m} out of range for n={n}")
    return max(n * n / (n + 2 * m), (2 * n - m) / 3)


def performance_ratio(alpha_reference: int, found: int) -> float:
    """Ratio of the reference stability number to an algorithm's output."""
    if found < 1:
        raise ValueError("found set size must be >= 1")
    if alpha_reference < found:
        raise ValueError("reference alpha cannot be below the found size")
    return alpha_reference / found


def greedy_stream_size(params: GraphParams) -> int:
    """Size of greedy_in_order (natural order) on a graph drawn from
    ``params``, sampling lazily so n in the hundreds of thousands is cheap.

    Distributionally identical to
    ``len(greedy_in_order(sample_graph(params)))`` but consumes its own
    uniform stream, so it does not reproduce that exact graph.
    """
    from . import _kernels

    if params.n == 1:
        return 1
    table = edge_prob_table(params)
    return int(
        _kernels.greedy_stream(
            table.probs, table.log_decay_products(), np.uint64(params.seed)
        )
    )
