"""Friendship-paradox statistics: canonical, strong, generalized, directed.

Conventions used throughout:

* A *random node* ``X`` is uniform over nodes; a *random friend* ``Y`` is a
  uniformly chosen edge end, i.e. a node drawn proportionally to degree.
  Expectations over ``Y`` are evaluated in closed form, never sampled.
* "Most neighbours" means a strict majority: more than ``k/2`` of the
  ``k`` neighbours.  ``mode="weak"`` compares with ``>=``, ``mode="strict"``
  with ``>``.  Weak is the default.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .graph import AttributeMap, DiGraph, Graph, integer_values

__all__ = [
    "FPGap",
    "GFPGap",
    "ParadoxSummary",
    "DirectedParadoxSummary",
    "fp_gap",
    "fp_flags",
    "fp_indicator",
    "fp_fraction",
    "sfp_flags",
    "sfp_indicator",
    "sfp_fraction",
    "sfp_by_degree",
    "friend_mean",
    "friend_excess",
    "gfp_gap",
    "gsfp_flags",
    "gsfp_indicator",
    "gsfp_fraction",
    "mean_comparison_flags",
    "directed_paradoxes",
    "paradox_summary",
]

MODES = ("weak", "strict")


class FPGap(NamedTuple):
    lhs: float
    rhs: float


class GFPGap(NamedTuple):
    lhs: float
    rhs: float
    #: rho * sd(d) * sd(f) / E{d}; None when either standard deviation is 0
    correlation_form: float | None


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be 'weak' or 'strict', got {mode!r}")


def _require_edges(g: Graph) -> None:
    if g.n == 0:
        raise ValueError("empty graph")
    if g.m == 0:
        raise ValueError("graph has no edges; random friend undefined")


def friend_mean(g: Graph, values: np.ndarray) -> float:
    """E{x(Y)} for Y a degree-proportional random node: sum(d*x) / sum(d)."""
    d = g.degrees
    return float(np.dot(d, values) / d.sum())


def friend_excess(g: Graph, values: np.ndarray) -> float:
    """E{x(Y)} - E{x(X)}, exact for integer-valued ``x``."""
    ints = integer_values(values)
    if ints is None:
        return friend_mean(g, values) - float(values.mean())
    d = [int(k) for k in g.degrees]
    weighted = sum(k * x for k, x in zip(d, ints))
    return float(Fraction(weighted, sum(d)) - Fraction(sum(ints), g.n))


# Canonical FP ---------------------------------------------------------------

def fp_gap(g: Graph) -> FPGap:
    """Both sides of the mean-friend-degree identity.

    ``lhs = E{d(Y)} - E{d(X)}`` is evaluated exactly from the integer sums of
    degrees and squared degrees; ``rhs = var{d(X)} / E{d(X)}`` in floating
    point from the (population) variance.
    The two agree up to rounding on every graph.
    """
    _require_edges(g)
    d = g.degrees
    total = int(d.sum())
    squares = int(np.dot(d, d))
    lhs = float(Fraction(squares, total) - Fraction(total, g.n))
    rhs = float(np.var(d.astype(float))) / (total / g.n)
    return FPGap(lhs, rhs)


def _neighbor_sums(g: Graph, values: np.ndarray) -> np.ndarray:
    src = g.edge_sources()
    return np.bincount(src, weights=values[g.indices], minlength=g.n)


def fp_flags(g: Graph) -> np.ndarray:
    """Per node: is the mean neighbour degree strictly above the own degree?

    Compared as ``sum(neighbour degrees) > d*d`` in integers to avoid
    rounding at ties.  Isolated nodes are never flagged.
    """
    d = g.degrees
    sums = np.bincount(g.edge_sources(), weights=d[g.indices], minlength=g.n)
    return (d > 0) & (np.rint(sums).astype(np.int64) > d * d)


def fp_indicator(g: Graph, node: int) -> bool:
    return bool(fp_flags(g)[node])


def fp_fraction(g: Graph) -> float:
    return float(fp_flags(g).mean())


# Strong FP -----------------------------------------------------------------

def _majority_flags(g: Graph, values: np.ndarray, mode: str) -> np.ndarray:
    _check_mode(mode)
    src = g.edge_sources()
    own = values[src]
    other = values[g.indices]
    hits = other >= own if mode == "weak" else other > own
    counts = np.bincount(src, weights=hits, minlength=g.n).astype(np.int64)
    return 2 * counts > g.degrees


def sfp_flags(g: Graph, mode: str = "weak") -> np.ndarray:
    """Per node: do more than half of the neighbours have degree >= (weak)
    or > (strict) the node's own degree?"""
    return _majority_flags(g, g.degrees, mode)


def sfp_indicator(g: Graph, node: int, mode: str = "weak") -> bool:
    _check_mode(mode)
    k = g.degree(node)
    nd = g.degrees[g.neighbors(node)]
    hits = int(np.count_nonzero(nd >= k if mode == "weak" else nd > k))
    return 2 * hits > k


def sfp_fraction(g: Graph, mode: str = "weak") -> float:
    if g.n == 0:
        raise ValueError("empty graph")
    return float(sfp_flags(g, mode).mean())


def sfp_by_degree(g: Graph, mode: str = "weak") -> dict[int, tuple[float, int]]:
    """Map degree -> (fraction of nodes of that degree in SFP, node count)."""
    flags = sfp_flags(g, mode)
    out = {}
    for k in np.unique(g.degrees):
        sel = g.degrees == k
        out[int(k)] = (float(flags[sel].mean()), int(sel.sum()))
    return out


# Generalized FP --------------------------------------------------------------

def gfp_gap(g: Graph, a: AttributeMap) -> GFPGap:
    """Attribute version of the FP identity.

    ``lhs = E{f(Y)} - E{f(X)}``; ``rhs = cov(f(X), d(X)) / E{d(X)}``.  The
    correlation factorisation is reported separately and is ``None`` when
    degree or attribute variance vanishes.
    """
    _require_edges(g)
    if len(a) != g.n:
        raise ValueError("attribute map size does not match graph")
    f = a.values
    d = g.degrees.astype(float)
    mean_d = d.mean()
    lhs = friend_excess(g, f)
    cov = float(np.mean((d - mean_d) * (f - f.mean())))
    ints = integer_values(f)
    if ints is None:
        rhs = cov / mean_d
    else:
        # n^2 cov / (n mean_d) with every sum an integer
        dk = [int(k) for k in g.degrees]
        n_cov = g.n * sum(k * x for k, x in zip(dk, ints)) - sum(dk) * sum(ints)
        rhs = float(Fraction(n_cov, g.n * sum(dk)))
    sd_d, sd_f = float(d.std()), float(f.std())
    corr_form = None
    if sd_d > 0 and sd_f > 0:
        rho = cov / (sd_d * sd_f)
        corr_form = rho * sd_d * sd_f / mean_d
    return GFPGap(lhs, rhs, corr_form)


def gsfp_flags(g: Graph, a: AttributeMap, mode: str = "weak") -> np.ndarray:
    """Strong-paradox flags with an attribute in place of degree."""
    if len(a) != g.n:
        raise ValueError("attribute map size does not match graph")
    return _majority_flags(g, a.values, mode)


def gsfp_indicator(g: Graph, a: AttributeMap, node: int, mode: str = "weak") -> bool:
    _check_mode(mode)
    k = g.degree(node)
    own = a.values[node]
    nv = a.values[g.neighbors(node)]
    hits = int(np.count_nonzero(nv >= own if mode == "weak" else nv > own))
    return 2 * hits > k


def gsfp_fraction(g: Graph, a: AttributeMap, mode: str = "weak") -> float:
    return float(gsfp_flags(g, a, mode).mean())


def mean_comparison_flags(g: Graph, a: AttributeMap) -> np.ndarray:
    """Per node: is the mean attribute of the neighbours above the own value?

    This is the node-level generalized paradox (mean-of-friends vs self);
    isolated nodes are never flagged.
    """
    sums = _neighbor_sums(g, a.values)
    d = g.degrees
    with np.errstate(invalid="ignore", divide="ignore"):
        means = sums / d
    return (d > 0) & (means > a.values)


# Summaries -----------------------------------------------------------------

@dataclass(frozen=True)
class ParadoxSummary:
    mean_degree: float
    degree_variance: float
    friend_mean_degree: float
    fp_gap: float
    fp_fraction: float
    sfp_fraction_weak: float
    sfp_fraction_strict: float
    fp_flags: tuple[bool, ...] = field(repr=False)
    sfp_flags_weak: tuple[bool, ...] = field(repr=False)
    sfp_flags_strict: tuple[bool, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return asdict(self) | {
            "fp_flags": list(self.fp_flags),
            "sfp_flags_weak": list(self.sfp_flags_weak),
            "sfp_flags_strict": list(self.sfp_flags_strict),
        }


def paradox_summary(g: Graph) -> ParadoxSummary:
    gap = fp_gap(g)
    d = g.degrees
    fp = fp_flags(g)
    weak = sfp_flags(g, "weak")
    strict = sfp_flags(g, "strict")
    return ParadoxSummary(
        mean_degree=float(d.mean()),
        degree_variance=float(np.var(d.astype(float))),
        friend_mean_degree=friend_mean(g, d.astype(float)),
        fp_gap=gap.lhs,
        fp_fraction=float(fp.mean()),
        sfp_fraction_weak=float(weak.mean()),
        sfp_fraction_strict=float(strict.mean()),
        fp_flags=tuple(bool(x) for x in fp),
        sfp_flags_weak=tuple(bool(x) for x in weak),
        sfp_flags_strict=tuple(bool(x) for x in strict),
    )


# Directed ------------------------------------------------------------------

#: (neighbour relation, compared quantity) for paradoxes 1-4
DIRECTED_PARADOXES = {
    1: ("friends", "followers"),
    2: ("followers", "friends"),
    3: ("friends", "friends"),
    4: ("followers", "followers"),
}


@dataclass(frozen=True)
class DirectedParadoxSummary:
    """Network gaps, per-node flags and mean per-node gaps for the four
    directed paradoxes (keys 1-4, see ``DIRECTED_PARADOXES``).

    ``gaps[i]`` is the mean compared quantity of a neighbour drawn through a
    uniformly random arc minus its mean over uniformly random nodes.
    ``node_gaps[i]`` averages, over nodes with at least one relevant
    neighbour, the neighbour mean minus the node's own value.
    """
    gaps: dict[int, float]
    node_gaps: dict[int, float | None]
    flags: dict[int, tuple[bool, ...]] = field(repr=False)
    fractions: dict[int, float] = field(default_factory=dict)
    friend_follower_correlation: float | None = None

    def to_dict(self) -> dict:
        return {
            "gaps": {str(k): v for k, v in self.gaps.items()},
            "node_gaps": {str(k): v for k, v in self.node_gaps.items()},
            "fractions": {str(k): v for k, v in self.fractions.items()},
            "flags": {str(k): list(v) for k, v in self.flags.items()},
            "friend_follower_correlation": self.friend_follower_correlation,
        }


def _pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    x = x.astype(float)
    y = y.astype(float)
    sx, sy = x.std(), y.std()
    if sx == 0 or sy == 0:
        return None
    r = float(np.mean((x - x.mean()) * (y - y.mean())) / (sx * sy))
    return max(-1.0, min(1.0, r))


def directed_paradoxes(g: DiGraph) -> DirectedParadoxSummary:
    """Evaluate the four directed friendship paradoxes exactly.

    1. friends have more followers; 2. followers have more friends;
    3. friends have more friends; 4. followers have more followers.
    Paradoxes 3 and 4 share the network gap ``cov(in, out) / mean`` and so
    carry the sign of the friend/follower correlation.
    """
    if g.m == 0:
        raise ValueError("digraph has no arcs")
    out_d, in_d = g.out_degrees, g.in_degrees
    quantity = {"friends": out_d, "followers": in_d}
    m = g.m
    mean = m / g.n
    tails, heads = g.arcs[:, 0], g.arcs[:, 1]
    gaps, node_gaps, flags, fractions = {}, {}, {}, {}
    for key, (relation, what) in DIRECTED_PARADOXES.items():
        q = quantity[what]
        if relation == "friends":
            # neighbour reached through an arc's head; centre is the tail
            centre, nbr, size = tails, heads, out_d
        else:
            centre, nbr, size = heads, tails, in_d
        gaps[key] = float(q[nbr].sum() / m - mean)
        sums = np.bincount(centre, weights=q[nbr], minlength=g.n)
        has = size > 0
        with np.errstate(invalid="ignore", divide="ignore"):
            nbr_mean = sums / size
        node_flags = has & (np.rint(sums).astype(np.int64) > size * q)
        flags[key] = tuple(bool(x) for x in node_flags)
        fractions[key] = float(node_flags.mean())
        node_gaps[key] = float(np.mean(nbr_mean[has] - q[has])) if has.any() else None
    return DirectedParadoxSummary(
        gaps=gaps,
        node_gaps=node_gaps,
        flags=flags,
        fractions=fractions,
        friend_follower_correlation=_pearson(out_d, in_d),
    )
