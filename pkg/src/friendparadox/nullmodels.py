"""Null-model graphs and controlled perturbations.

All generators take a ``seed`` (anything accepted by
``numpy.random.default_rng``) and are deterministic given it.  Swap-based
searches are greedy: a proposal is kept when it does not move the
statistic further from its target.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import AttributeMap, Graph
from .structure import degree_assortativity, degree_attribute_correlation

__all__ = [
    "RewireResult",
    "PlacementResult",
    "is_graphical",
    "powerlaw_degree_sequence",
    "configuration_model",
    "rewire_to_assortativity",
    "shuffle_attributes",
    "place_attributes",
]


def is_graphical(degree_seq: Sequence[int]) -> bool:
    """Erdős–Gallai test for a simple-graph degree sequence."""
    d = np.sort(np.asarray([int(x) for x in degree_seq], dtype=np.int64))[::-1]
    if d.size == 0:
        return True
    if d[-1] < 0 or int(d.sum()) % 2:
        return False
    n = len(d)
    k = np.arange(1, n + 1)
    prefix = np.cumsum(d)
    suffix = np.concatenate([np.cumsum(d[::-1])[::-1], [0]])  # suffix[i] = sum(d[i:])
    # entries >= k form a prefix of the sorted sequence; in d[k:] they contribute k each
    at_least = n - np.searchsorted(d[::-1], k, side="left")
    split = np.maximum(at_least, k)
    tail = k * (split - k) + suffix[split]
    return bool(np.all(prefix <= k * (k - 1) + tail))


def powerlaw_degree_sequence(n: int, exponent: float = 2.5, kmin: int = 1,
                             kmax: int | None = None, seed=None) -> list[int]:
    """Draw ``n`` degrees from a discrete power law ``P(k) ~ k^-exponent`` on
    ``[kmin, kmax]`` (default ``kmax = floor(sqrt(n))``, the structural
    cutoff), bumping one entry to make the sum even."""
    rng = np.random.default_rng(seed)
    if kmax is None:
        kmax = max(kmin, int(np.sqrt(n)))
    ks = np.arange(kmin, kmax + 1)
    p = ks.astype(float) ** -exponent
    p /= p.sum()
    seq = rng.choice(ks, size=n, p=p)
    if seq.sum() % 2:
        i = int(np.argmin(seq))
        seq[i] += 1
    return [int(x) for x in seq]


def configuration_model(degree_seq: Sequence[int], seed=None,
                        max_repair: int | None = None) -> Graph:
    """Random simple graph with exactly the given degree sequence.

    Stubs are matched uniformly at random; self-loops and repeated edges are
    then repaired by double-edge swaps between a defective edge and a random
    partner edge, rejecting any swap that raises the total defect count.
    Degrees are never changed.  Raises ``ValueError`` for non-graphical sequences or when the
    repair budget (default ``100 * m + 1000`` proposals) runs out.
    """
    seq = np.asarray([int(x) for x in degree_seq], dtype=np.int64)
    n = len(seq)
    if not is_graphical(seq):
        raise ValueError("degree sequence is not graphical")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), seq)
    rng.shuffle(stubs)
    pairs = np.sort(stubs.reshape(-1, 2), axis=1)
    m = len(pairs)
    edges = [tuple(p) for p in pairs.tolist()]
    mult = Counter(edges)

    def defective(e):
        return e[0] == e[1] or mult[e] > 1

    def defects(keys):
        # self-loops count every copy, other pairs every copy beyond the first
        return sum(mult[e] if e[0] == e[1] else max(0, mult[e] - 1) for e in keys)

    bad = [i for i, e in enumerate(edges) if defective(e)]
    budget = 100 * m + 1000 if max_repair is None else max_repair
    tries = 0
    while bad:
        pos = int(rng.integers(len(bad)))
        i = bad[pos]
        if not defective(edges[i]):
            bad[pos] = bad[-1]
            bad.pop()
            continue
        if tries >= budget:
            raise ValueError("configuration model repair budget exhausted")
        tries += 1
        j = int(rng.integers(m))
        if j == i:
            continue
        (a, b), (c, d) = edges[i], edges[j]
        if rng.random() < 0.5:
            c, d = d, c
        e1 = (min(a, c), max(a, c))
        e2 = (min(b, d), max(b, d))
        keys = {edges[i], edges[j], e1, e2}
        before = defects(keys)
        old_i, old_j = edges[i], edges[j]
        mult[old_i] -= 1
        mult[old_j] -= 1
        mult[e1] += 1
        mult[e2] += 1
        if defects(keys) > before:
            mult[e1] -= 1
            mult[e2] -= 1
            mult[old_i] += 1
            mult[old_j] += 1
            continue
        edges[i], edges[j] = e1, e2
        bad.append(j)
    return Graph(n, edges)


@dataclass(frozen=True)
class RewireResult:
    graph: Graph
    achieved_value: float | None
    iterations_used: int
    target: float

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "m": self.graph.m,
            "achieved_value": self.achieved_value,
            "iterations_used": self.iterations_used,
            "target": self.target,
        }


def rewire_to_assortativity(g: Graph, target_r: float, max_iters: int = 100000,
                            seed=None, tol: float = 0.01) -> RewireResult:
    """Degree-preserving double-edge swaps toward a target assortativity.

    Degrees are fixed, so only the cross moment ``sum d_u d_v`` over edges
    changes with each swap and the new coefficient is updated in O(1).
    Stops as soon as ``|r - target_r| <= tol`` or after ``max_iters``
    proposals.
    """
    if not -1 <= target_r <= 1:
        raise ValueError("target_r must lie in [-1, 1]")
    if g.m < 2:
        raise ValueError("rewiring needs at least two edges")
    r0 = degree_assortativity(g)
    if r0 is None:
        # regular graph: every rewiring keeps the coefficient undefined
        return RewireResult(g, None, 0, target_r)
    deg = [int(x) for x in g.degrees]
    count = 2 * g.m
    sx = sum(k * k for k in deg)
    sxx = sum(k ** 3 for k in deg)
    denom = count * sxx - sx * sx
    edges = [tuple(e) for e in g.edges.tolist()]
    present = set(edges)
    cross = 2 * sum(deg[u] * deg[v] for u, v in edges)

    def coefficient(c: int) -> float:
        return (count * c - sx * sx) / denom

    r = coefficient(cross)
    rng = np.random.default_rng(seed)
    it = 0
    while it < max_iters and abs(r - target_r) > tol:
        it += 1
        i, j = rng.integers(g.m, size=2)
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if rng.random() < 0.5:
            c, d = d, c
        if a == d or c == b:
            continue
        e1 = (min(a, d), max(a, d))
        e2 = (min(c, b), max(c, b))
        if e1 in present or e2 in present:
            continue
        new_cross = cross + 2 * (deg[a] * deg[d] + deg[c] * deg[b]
                                 - deg[a] * deg[b] - deg[c] * deg[d])
        r_new = coefficient(new_cross)
        if abs(r_new - target_r) <= abs(r - target_r):
            present.discard(edges[i])
            present.discard(edges[j])
            present.update((e1, e2))
            edges[i], edges[j] = e1, e2
            cross, r = new_cross, r_new
    out = Graph(g.n, edges, g.labels)
    return RewireResult(out, degree_assortativity(out), it, target_r)


def shuffle_attributes(a: AttributeMap, seed=None) -> AttributeMap:
    """Uniformly random permutation of the values across nodes."""
    rng = np.random.default_rng(seed)
    return AttributeMap(rng.permutation(a.values), kind=a.kind)


@dataclass(frozen=True)
class PlacementResult:
    attributes: AttributeMap
    achieved_value: float | None
    iterations_used: int
    target: float


def place_attributes(g: Graph, prevalence: float, target_rho: float,
                     max_iters: int = 200000, seed=None,
                     tol: float = 0.02) -> PlacementResult:
    """Binary trait on ``round(prevalence * n)`` nodes with a degree-trait
    correlation close to ``target_rho``.

    Starts from a uniformly random placement and swaps one holder with one
    non-holder at a time.  With the holder count fixed, the correlation is
    an affine function of the summed holder degree, so each proposal costs
    O(1).  Infeasible targets end at the closest placement found.
    """
    n = g.n
    k = int(round(prevalence * n))
    if not 1 <= k < n:
        raise ValueError("prevalence * n must round to an integer in [1, n)")
    if not -1 <= target_rho <= 1:
        raise ValueError("target_rho must lie in [-1, 1]")
    rng = np.random.default_rng(seed)
    values = np.zeros(n)
    values[rng.choice(n, size=k, replace=False)] = 1
    deg = g.degrees.astype(float)
    sd_d = deg.std()
    if sd_d == 0:
        return PlacementResult(AttributeMap(values, kind="binary"), None, 0, target_rho)
    mean_d = deg.mean()
    p = k / n
    scale = n * sd_d * np.sqrt(p * (1 - p))

    def rho(holder_degree_sum: float) -> float:
        return (holder_degree_sum - k * mean_d) / scale

    holder_sum = float(deg[values == 1].sum())
    current = rho(holder_sum)
    it = 0
    while it < max_iters and abs(current - target_rho) > tol:
        it += 1
        i = int(rng.integers(n))
        j = int(rng.integers(n))
        if values[i] == values[j]:
            continue
        if values[i] == 0:
            i, j = j, i
        new_sum = holder_sum - deg[i] + deg[j]
        proposal = rho(new_sum)
        if abs(proposal - target_rho) <= abs(current - target_rho):
            values[i], values[j] = 0, 1
            holder_sum, current = new_sum, proposal
    attrs = AttributeMap(values, kind="binary")
    return PlacementResult(attrs, degree_attribute_correlation(g, attrs), it, target_rho)
