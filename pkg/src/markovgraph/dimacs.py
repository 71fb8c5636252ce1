"""DIMACS edge-format serialization with a JSON provenance sidecar.

Files carry a ``p edge n m`` header and one ``e u v`` line per undirected
edge, 1-indexed.  The sidecar ``<path>.json`` records {n, p, r, seed, m} so
a sampled graph can be regenerated or audited.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .graphgen import GraphParams, MarkovGraph


def write_graph(graph: MarkovGraph, path: str | Path) -> None:
    """Write a graph as DIMACS plus its JSON sidecar."""
    lowers, uppers = zip(*graph.edges()) if graph.m else ((), ())
    write_edge_list(
        path,
        graph.n,
        np.array(lowers, dtype=np.int64),
        np.array(uppers, dtype=np.int64),
        graph.params,
    )


def write_edge_list(
    path: str | Path,
    n: int,
    lowers: np.ndarray,
    uppers: np.ndarray,
    params: GraphParams | None = None,
) -> None:
    path = Path(path)
    m = len(lowers)
    with path.open("w", encoding="ascii", newline="\n") as fh:
        fh.write(f"p edge {n} {m}\n")
        for u, v in zip(lowers, uppers):
            fh.write(f"e {int(u) + 1} {int(v) + 1}\n")
    sidecar = {"n": n, "m": m}
    if params is not None:
        sidecar.update({"p": params.p, "r": params.r, "seed": params.seed})
    with path.with_suffix(path.suffix + ".json").open("w", encoding="ascii") as fh:
        json.dump(sidecar, fh, sort_keys=True)
        fh.write("\n")


def read_graph(path: str | Path) -> MarkovGraph:
    """Parse a DIMACS file back into a MarkovGraph, validating bounds,
    self-loops, duplicates, and the header edge count.

    The sidecar, when present, restores (p, r, seed); otherwise placeholder
    parameters (p=1, r=1, seed=0) are attached.
    """
    path = Path(path)
    n = None
    m_header = None
    rows: list[int] = []
    m = 0
    with path.open("r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise ValueError(f"{path}:{lineno}: duplicate problem line")
                if len(parts) != 4 or parts[1] != "edge":
                    raise ValueError(f"{path}:{lineno}: malformed problem line")
                n, m_header = int(parts[2]), int(parts[3])
                rows = [0] * n
            elif parts[0] == "e":
                if n is None:
                    raise ValueError(f"{path}:{lineno}: edge before problem line")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"{path}:{lineno}: vertex out of range")
                if u == v:
                    raise ValueError(f"{path}:{lineno}: self-loop")
                if (rows[u] >> v) & 1:
                    raise ValueError(f"{path}:{lineno}: duplicate edge")
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                m += 1
            else:
                raise ValueError(f"{path}:{lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise ValueError(f"{path}: missing problem line")
    if m != m_header:
        raise ValueError(f"{path}: header declares {m_header} edges, found {m}")
    sidecar_path = path.with_suffix(path.suffix + ".json")
    p, r, seed = 1.0, 1.0, 0
    if sidecar_path.exists():
        with sidecar_path.open("r", encoding="ascii") as fh:
            side = json.load(fh)
        if side.get("n") != n or side.get("m") != m:
            raise ValueError(f"{sidecar_path}: sidecar disagrees with DIMACS body")
        p = float(side.get("p", p))
        r = float(side.get("r", r))
        seed = int(side.get("seed", seed))
    params = GraphParams(n=n, p=p, r=r, seed=seed)
    return MarkovGraph(n=n, rows=tuple(rows), m=m, params=params, seed_used=seed)
