"""Degree correlations: assortativity, transsortativity, degree-attribute
correlation, and the conditional neighbour-degree table.

Correlations that are undefined because a margin has zero variance are
returned as ``None`` rather than 0.  Assortativity and transsortativity
are accumulated in exact integer arithmetic so that the result does not
depend on summation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import AttributeMap, Graph, integer_values

__all__ = [
    "DegreeModel",
    "degree_assortativity",
    "transsortativity",
    "degree_attribute_correlation",
    "build_degree_model",
]


def _pearson_from_sums(count: int, sx: int, sxx: int, syy: int, sxy: int, sy: int) -> float | None:
    # r = (N*Sxy - Sx*Sy) / sqrt((N*Sxx - Sx^2)(N*Syy - Sy^2)), exact until the last step
    vx = count * sxx - sx * sx
    vy = count * syy - sy * sy
    if count == 0 or vx == 0 or vy == 0:
        return None
    num = count * sxy - sx * sy
    if vx == vy:
        r = float(Fraction(num, vx))
    else:
        r = num / (vx ** 0.5 * vy ** 0.5)
    return max(-1.0, min(1.0, r))


def degree_assortativity(g: Graph) -> float | None:
    """Pearson correlation of the degrees at the two ends of each edge,
    every edge counted in both orientations."""
    d = [int(x) for x in g.degrees]
    count = 2 * g.m
    sx = sum(k * k for k in d)          # each node appears d times as an edge end
    sxx = sum(k ** 3 for k in d)
    sxy = 2 * sum(d[u] * d[v] for u, v in g.edges.tolist())
    return _pearson_from_sums(count, sx, sxx, sxx, sxy, sx)


def transsortativity(g: Graph) -> float | None:
    """Pearson correlation of (d_j, d_l) over all ordered pairs j != l of
    neighbours sharing a common node.

    For a centre whose neighbour degrees sum to ``S`` with squares summing
    to ``Q``, its ``k(k-1)`` ordered pairs contribute ``(k-1)S`` to the
    first moment, ``(k-1)Q`` to the second and ``S^2 - Q`` to the cross
    moment.
    """
    d = g.degrees
    nd = d[g.indices]
    src = g.edge_sources()
    s = np.bincount(src, weights=nd, minlength=g.n).astype(np.int64)
    q = np.bincount(src, weights=nd * nd, minlength=g.n).astype(np.int64)
    k = d.astype(np.int64)
    count = int(np.sum(k * (k - 1)))
    if count == 0:
        return None
    sx = int(np.sum((k - 1) * s))
    sxx = int(np.sum((k - 1) * q))
    sxy = sum(int(a) * int(a) - int(b) for a, b in zip(s, q))
    return _pearson_from_sums(count, sx, sxx, sxx, sxy, sx)


def degree_attribute_correlation(g: Graph, a: AttributeMap) -> float | None:
    """Pearson correlation over nodes of (degree, attribute value).

    Integer-valued traits go through the exact-sum route.
    """
    if len(a) != g.n:
        raise ValueError("attribute map size does not match graph")
    ints = integer_values(a.values)
    if ints is not None:
        dk = [int(k) for k in g.degrees]
        return _pearson_from_sums(g.n, sum(dk), sum(k * k for k in dk), sum(x * x for x in ints),
                                  sum(k * x for k, x in zip(dk, ints)), sum(ints))
    d = g.degrees.astype(float)
    f = a.values
    sd, sf = d.std(), f.std()
    if sd == 0 or sf == 0:
        return None
    r = float(np.mean((d - d.mean()) * (f - f.mean())) / (sd * sf))
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class DegreeModel:
    """Degree histogram plus the edge-end conditional distribution P(k'|k).

    ``conditional_table[k][k2]`` is the probability that a uniformly chosen
    neighbour of a uniformly chosen degree-``k`` node has degree ``k2``.
    """
    degree_histogram: dict[int, int]
    conditional_table: dict[int, dict[int, float]]
    assortativity: float | None
    transsortativity: float | None

    @property
    def n(self) -> int:
        return sum(self.degree_histogram.values())

    def to_dict(self) -> dict:
        return {
            "degree_histogram": {str(k): c for k, c in self.degree_histogram.items()},
            "conditional_table": {
                str(k): {str(k2): p for k2, p in row.items()}
                for k, row in self.conditional_table.items()
            },
            "assortativity": self.assortativity,
            "transsortativity": self.transsortativity,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DegreeModel":
        try:
            hist = {int(k): int(c) for k, c in data["degree_histogram"].items()}
            table = {
                int(k): {int(k2): float(p) for k2, p in row.items()}
                for k, row in data["conditional_table"].items()
            }
            assort = data.get("assortativity")
            trans = data.get("transsortativity")
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed degree model: {exc}") from None
        model = cls(hist, table,
                    None if assort is None else float(assort),
                    None if trans is None else float(trans))
        model.check()
        return model

    def check(self, tol: float = 1e-9) -> None:
        """Validate row normalisation and edge-end symmetry."""
        for k, row in self.conditional_table.items():
            if k not in self.degree_histogram:
                raise ValueError(f"degree {k} has a conditional row but no nodes")
            if abs(sum(row.values()) - 1.0) > tol:
                raise ValueError(f"conditional row for degree {k} does not sum to 1")
            if any(p < 0 for p in row.values()):
                raise ValueError(f"negative probability in row {k}")
        for k, row in self.conditional_table.items():
            for k2, p in row.items():
                w = k * self.degree_histogram[k] * p
                back = self.conditional_table.get(k2, {}).get(k, 0.0)
                w2 = k2 * self.degree_histogram.get(k2, 0) * back
                if abs(w - w2) > tol * max(1.0, w):
                    raise ValueError(f"edge-end counts not symmetric for ({k}, {k2})")

    def tail_probability(self, k: int, mode: str = "weak") -> float:
        """P(neighbour degree >= k | k) (weak) or P(... > k | k) (strict)."""
        if k not in self.conditional_table:
            raise KeyError(f"degree {k} absent from conditional table")
        row = self.conditional_table[k]
        if mode == "weak":
            return float(sum(p for k2, p in row.items() if k2 >= k))
        if mode == "strict":
            return float(sum(p for k2, p in row.items() if k2 > k))
        raise ValueError(f"mode must be 'weak' or 'strict', got {mode!r}")


def build_degree_model(g: Graph) -> DegreeModel:
    if g.m == 0:
        raise ValueError("graph has no edges")
    d = g.degrees
    ks, counts = np.unique(d, return_counts=True)
    hist = {int(k): int(c) for k, c in zip(ks, counts)}
    own = d[g.edge_sources()]
    other = d[g.indices]
    pairs, pair_counts = np.unique(np.stack([own, other], axis=1), axis=0, return_counts=True)
    table: dict[int, dict[int, float]] = {}
    for (k, k2), c in zip(pairs.tolist(), pair_counts.tolist()):
        table.setdefault(k, {})[k2] = c / (k * hist[k])
    return DegreeModel(hist, table, degree_assortativity(g), transsortativity(g))
