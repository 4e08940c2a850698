"""Perception bias, the majority illusion, and threshold cascades."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .graph import AttributeMap, Graph
from .paradox import friend_excess

__all__ = [
    "IllusionReport",
    "IllusionSearchResult",
    "CascadeResult",
    "local_perception",
    "global_perception_bias",
    "local_perception_bias",
    "majority_illusion",
    "illusion_fraction",
    "illusion_search",
    "threshold_cascade",
]


def _check(g: Graph, a: AttributeMap) -> None:
    a.require_binary()
    if len(a) != g.n:
        raise ValueError("attribute map size does not match graph")


def local_perception(g: Graph, a: AttributeMap) -> np.ndarray:
    """Fraction of each node's neighbours that hold the trait."""
    _check(g, a)
    if g.n and g.degrees.min() == 0:
        raise ValueError("local perception undefined for isolated nodes")
    hits = np.bincount(g.edge_sources(), weights=a.values[g.indices], minlength=g.n)
    return hits / g.degrees


def global_perception_bias(g: Graph, a: AttributeMap) -> float:
    """E{f(Y)} - E{f(X)}: prevalence seen through a random friend minus the
    true prevalence."""
    _check(g, a)
    if g.m == 0:
        raise ValueError("graph has no edges; random friend undefined")
    return friend_excess(g, a.values)


def local_perception_bias(g: Graph, a: AttributeMap) -> float:
    """Unweighted mean over nodes of local perception, minus prevalence."""
    return float(local_perception(g, a).mean() - a.values.mean())


def _illusion(perception: np.ndarray, values: np.ndarray, threshold: float,
              count_all: bool) -> float:
    seen = perception >= threshold
    if count_all:
        return float(seen.mean())
    pool = values == 0
    if not pool.any():
        return 0.0
    return float(np.count_nonzero(seen & pool) / np.count_nonzero(pool))


def illusion_fraction(g: Graph, a: AttributeMap, threshold: float = 0.5,
                      count_all: bool = False) -> float:
    """Fraction of trait-free nodes (all nodes if ``count_all``) whose local
    perception reaches ``threshold``."""
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    return _illusion(local_perception(g, a), a.values, threshold, count_all)


@dataclass(frozen=True)
class IllusionReport:
    global_prevalence: float
    perceived_global: float
    global_bias: float
    local_bias: float
    illusion_fraction: float
    threshold: float
    count_all: bool
    per_node_local_perception: tuple[float, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "global_prevalence": self.global_prevalence,
            "perceived_global": self.perceived_global,
            "global_bias": self.global_bias,
            "local_bias": self.local_bias,
            "illusion_fraction": self.illusion_fraction,
            "threshold": self.threshold,
            "count_all": self.count_all,
            "per_node_local_perception": list(self.per_node_local_perception),
        }


def majority_illusion(g: Graph, a: AttributeMap, threshold: float = 0.5,
                      count_all: bool = False) -> IllusionReport:
    """Bias and majority-illusion statistics for a binary trait.

    By default only nodes without the trait count towards
    ``illusion_fraction``; pass ``count_all=True`` to include every node.
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    perception = local_perception(g, a)
    prevalence = float(a.values.mean())
    bias = global_perception_bias(g, a)
    return IllusionReport(
        global_prevalence=prevalence,
        perceived_global=prevalence + bias,
        global_bias=bias,
        local_bias=float(perception.mean() - prevalence),
        illusion_fraction=_illusion(perception, a.values, threshold, count_all),
        threshold=threshold,
        count_all=count_all,
        per_node_local_perception=tuple(float(x) for x in perception),
    )


@dataclass(frozen=True)
class IllusionSearchResult:
    nodes: tuple[int, ...]
    illusion_fraction: float
    iterations: int

    def attributes(self, n: int) -> AttributeMap:
        values = np.zeros(n)
        values[list(self.nodes)] = 1
        return AttributeMap(values, kind="binary")


def illusion_search(g: Graph, set_size: int, threshold: float = 0.5,
                    budget: int = 20000, seed: int | None = 0,
                    count_all: bool = False) -> IllusionSearchResult:
    """Find a trait set of ``set_size`` nodes that maximises the majority
    illusion.

    Starts from the ``set_size`` highest-degree nodes (ties broken by id),
    then runs ``budget`` random swap proposals (one member out, one
    non-member in).  A swap is kept when it does not lower the illusion
    fraction, so the search can drift across plateaus; the best set seen
    is returned.
    """
    if not 1 <= set_size < g.n:
        raise ValueError("set_size must satisfy 1 <= set_size < n")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    if g.degrees.min() == 0:
        raise ValueError("illusion search needs every node to have a neighbour")
    rng = np.random.default_rng(seed)
    deg = g.degrees
    src = g.edge_sources()
    order = np.lexsort((np.arange(g.n), -deg))
    values = np.zeros(g.n)
    values[order[:set_size]] = 1

    def score(vals: np.ndarray) -> float:
        hits = np.bincount(src, weights=vals[g.indices], minlength=g.n)
        return _illusion(hits / deg, vals, threshold, count_all)

    current = score(values)
    best, best_values = current, values.copy()
    for it in range(1, budget + 1):
        if best == 1.0:
            return IllusionSearchResult(tuple(int(i) for i in np.flatnonzero(best_values)), best, it - 1)
        inside = np.flatnonzero(values == 1)
        outside = np.flatnonzero(values == 0)
        i = inside[rng.integers(len(inside))]
        j = outside[rng.integers(len(outside))]
        values[i], values[j] = 0, 1
        proposal = score(values)
        if proposal >= current:
            current = proposal
            if current > best:
                best, best_values = current, values.copy()
        else:
            values[i], values[j] = 1, 0
    return IllusionSearchResult(tuple(int(i) for i in np.flatnonzero(best_values)), best, budget)


@dataclass(frozen=True)
class CascadeResult:
    active: frozenset[int]
    rounds: int
    #: active-node count after round 0 (seeds), 1, 2, ...
    history: tuple[int, ...]

    def rounds_csv(self) -> str:
        lines = ["round,active,newly_active"]
        prev = 0
        for r, count in enumerate(self.history):
            lines.append(f"{r},{count},{count - prev}")
            prev = count
        return "\n".join(lines) + "\n"


def threshold_cascade(g: Graph, seeds: Iterable[int], phi: float) -> CascadeResult:
    """Synchronous threshold contagion.

    Each round, every inactive node whose fraction of active neighbours is at
    least ``phi`` activates; nothing deactivates.  Stops after the first
    round that changes nothing.  ``rounds`` counts the rounds in which at
    least one node activated.
    """
    if not 0 < phi <= 1:
        raise ValueError("phi must lie in (0, 1]")
    seed_ids = sorted({int(s) for s in seeds})
    if not seed_ids:
        raise ValueError("seed set must be non-empty")
    if seed_ids[0] < 0 or seed_ids[-1] >= g.n:
        raise ValueError("seed outside [0, n)")
    active = np.zeros(g.n, dtype=bool)
    active[seed_ids] = True
    deg = g.degrees
    src = g.edge_sources()
    history = [int(active.sum())]
    rounds = 0
    while True:
        hits = np.bincount(src, weights=active[g.indices], minlength=g.n)
        # hits/deg >= phi, rearranged to avoid dividing by zero degrees
        ready = ~active & (deg > 0) & (hits >= phi * deg - 1e-12)
        if not ready.any():
            break
        active |= ready
        rounds += 1
        history.append(int(active.sum()))
    return CascadeResult(frozenset(int(i) for i in np.flatnonzero(active)), rounds, tuple(history))
