"""Estimating trait prevalence by polling random nodes or random friends.

A random friend is a uniformly chosen edge end, so friends are drawn in
proportion to degree.  The raw friend-poll mean therefore estimates
``E{f(Y)}``; reweighting each response by ``1/d`` (self-normalised) brings
it back to the node prevalence ``E{f(X)}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import AttributeMap, Graph

__all__ = ["PollResult", "node_poll", "friend_poll"]

CORRECTIONS = ("none", "inverse_degree")


@dataclass(frozen=True)
class PollResult:
    estimate: float
    sample_size: int
    method: str  # "node" | "friend_raw" | "friend_corrected"
    standard_error: float
    replicate_estimates: tuple[float, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "sample_size": self.sample_size,
            "method": self.method,
            "standard_error": self.standard_error,
            "replicate_estimates": list(self.replicate_estimates),
        }


def _streams(seed, trials: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def _summarise(estimates: list[float], n_samples: int, method: str) -> PollResult:
    est = np.asarray(estimates)
    mean = float(est.mean())
    if len(est) > 1:
        se = float(est.std(ddof=1))
        reps = tuple(float(x) for x in est)
    else:
        se = float(np.sqrt(mean * (1 - mean) / n_samples))
        reps = ()
    return PollResult(mean, n_samples, method, se, reps)


def _validate(g: Graph, a: AttributeMap, n_samples: int, trials: int) -> None:
    a.require_binary()
    if len(a) != g.n:
        raise ValueError("attribute map size does not match graph")
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")


def node_poll(g: Graph, a: AttributeMap, n_samples: int, seed=None,
              trials: int = 1) -> PollResult:
    """Mean trait value over uniform node draws (with replacement).

    With ``trials > 1`` the estimate is the mean over replicates and the
    standard error their sample standard deviation; otherwise the binomial
    plug-in ``sqrt(p(1-p)/n)`` is reported.
    """
    _validate(g, a, n_samples, trials)
    f = a.values
    estimates = [float(f[rng.integers(g.n, size=n_samples)].mean()) for rng in _streams(seed, trials)]
    return _summarise(estimates, n_samples, "node")


def friend_poll(g: Graph, a: AttributeMap, n_samples: int, correction: str = "none",
                seed=None, trials: int = 1) -> PollResult:
    """Poll random friends (uniform edge ends, with replacement).

    ``correction="inverse_degree"`` returns the ratio estimator
    ``sum(f/d) / sum(1/d)`` over the sampled friends.
    """
    _validate(g, a, n_samples, trials)
    correction = correction.replace("-", "_")
    if correction not in CORRECTIONS:
        raise ValueError(f"correction must be one of {CORRECTIONS}")
    if g.m == 0:
        raise ValueError("graph has no edges; random friend undefined")
    f = a.values
    inv = 1.0 / g.degrees[g.indices]
    ends = g.indices
    estimates = []
    for rng in _streams(seed, trials):
        pick = rng.integers(len(ends), size=n_samples)
        fy = f[ends[pick]]
        if correction == "none":
            estimates.append(float(fy.mean()))
        else:
            w = inv[pick]
            estimates.append(float(np.dot(fy, w) / w.sum()))
    method = "friend_raw" if correction == "none" else "friend_corrected"
    return _summarise(estimates, n_samples, method)
