"""Predicting strong-paradox prevalence from degree structure.

Independent model
    The ``k`` neighbours of a degree-``k`` node are treated as i.i.d. draws
    from the conditional neighbour-degree distribution ``P(k'|k)``.  With
    ``p = P(k' >= k | k)`` (``>`` in strict mode) the node is in the paradox
    with probability ``P(Binomial(k, p) > k/2)``.

Correlated model
    Neighbour degrees are coupled through a Gaussian copula with
    exchangeable correlation ``rho_nn`` (typically the measured
    transsortativity) and marginals ``P(k'|k)``.  Estimated by Monte Carlo;
    each degree class draws from its own substream of ``(seed, k)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special, stats

from .graph import Graph
from .paradox import sfp_by_degree, sfp_fraction
from .structure import DegreeModel, build_degree_model

__all__ = [
    "SfpPrediction",
    "PredictionReport",
    "binomial_pmf",
    "majority_probability",
    "exchangeable_normals",
    "sample_neighbor_degrees",
    "predict_independent",
    "predict_correlated",
    "prediction_report",
]

#: offset applied when clamping an infeasible negative correlation
CLAMP_EPS = 1e-9
#: maximum number of normal variates held in memory at once
CHUNK = 2_000_000


def binomial_pmf(k: int, p: float) -> np.ndarray:
    return stats.binom.pmf(np.arange(k + 1), k, p)


def majority_probability(k: int, p: float) -> float:
    """P(Binomial(k, p) > k/2), summed term by term."""
    if k == 0:
        return 0.0
    pmf = binomial_pmf(k, p)
    return float(min(1.0, pmf[k // 2 + 1:].sum()))


@dataclass(frozen=True)
class SfpPrediction:
    per_degree: dict[int, float]
    overall: float
    mode: str  # "independent" | "correlated"
    sfp_mode: str  # "weak" | "strict"
    samples: int | None = None
    rho_nn: float | None = None
    standard_error: dict[int, float] = field(default_factory=dict)
    overall_standard_error: float | None = None
    #: degrees at which rho_nn was clamped to keep the correlation matrix PSD
    clamped: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "sfp_mode": self.sfp_mode,
            "overall": self.overall,
            "per_degree": {str(k): v for k, v in self.per_degree.items()},
            "samples": self.samples,
            "rho_nn": self.rho_nn,
            "standard_error": {str(k): v for k, v in self.standard_error.items()},
            "overall_standard_error": self.overall_standard_error,
            "clamped": list(self.clamped),
        }


def _weights(model: DegreeModel) -> dict[int, float]:
    n = model.n
    return {k: c / n for k, c in model.degree_histogram.items()}


def predict_independent(model: DegreeModel, mode: str = "weak") -> SfpPrediction:
    if not model.conditional_table:
        raise ValueError("degree model has an empty conditional table")
    per = {}
    for k in sorted(model.degree_histogram):
        per[k] = 0.0 if k == 0 else majority_probability(k, model.tail_probability(k, mode))
    w = _weights(model)
    overall = sum(w[k] * per[k] for k in per)
    return SfpPrediction(per, overall, "independent", mode)


def _feasible_rho(rho: float, k: int) -> tuple[float, bool]:
    if k > 1 and rho < -1.0 / (k - 1):
        return -1.0 / (k - 1) + CLAMP_EPS, True
    return rho, False


def exchangeable_normals(size: int, k: int, rho: float, rng: np.random.Generator) -> np.ndarray:
    """``size`` draws of a k-vector of standard normals with pairwise
    correlation ``rho`` (requires ``rho >= -1/(k-1)``).

    Uses ``Z_i = s E_i + c sum(E)`` with ``s = sqrt(1 - rho)`` and ``c``
    solving ``k c^2 + 2 s c = rho``, which covers negative correlations too.
    """
    if k > 1 and rho < -1.0 / (k - 1) - 1e-12:
        raise ValueError("correlation matrix not positive semidefinite")
    e = rng.standard_normal((size, k))
    s = np.sqrt(1.0 - rho)
    c = (-s + np.sqrt(max(s * s + k * rho, 0.0))) / k
    return s * e + c * e.sum(axis=1, keepdims=True)


def sample_neighbor_degrees(model: DegreeModel, k: int, rho: float, size: int,
                            rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` neighbour-degree vectors for a degree-``k`` node through
    the Gaussian copula: correlated normals, mapped to uniforms, then through
    the inverse CDF of ``P(k'|k)``."""
    row = model.conditional_table[k]
    support = np.array(sorted(row))
    cdf = np.cumsum([row[x] for x in support])
    cdf[-1] = 1.0
    u = special.ndtr(exchangeable_normals(size, k, rho, rng))
    idx = np.minimum(np.searchsorted(cdf, u, side="left"), len(support) - 1)
    return support[idx]


def _copula_majority(model, k, rho, samples, rng, mode) -> float:
    """Fraction of sampled neighbourhoods where more than k/2 neighbours pass.

    For ``rho >= 0`` the exchangeable normals factor as
    ``sqrt(rho) W + sqrt(1 - rho) E_i``; given the common factor ``W`` the
    pass indicators are i.i.d., so the count is drawn as a binomial.  For
    negative ``rho`` full vectors are sampled in chunks.
    """
    p = model.tail_probability(k, mode)
    if p <= 0.0 or p >= 1.0:
        return 1.0 if p >= 1.0 else 0.0
    if rho >= 0:
        # a neighbour passes when U > 1 - p, i.e. Z > ndtri(1 - p)
        cut = special.ndtri(1.0 - p)
        w = rng.standard_normal(samples)
        if rho >= 1.0:
            q = (w > cut).astype(float)
        else:
            q = special.ndtr((np.sqrt(rho) * w - cut) / np.sqrt(1.0 - rho))
        counts = rng.binomial(k, q)
        return float(np.count_nonzero(2 * counts > k) / samples)
    hits = 0
    per_chunk = max(1, CHUNK // k)
    done = 0
    while done < samples:
        size = min(per_chunk, samples - done)
        nd = sample_neighbor_degrees(model, k, rho, size, rng)
        passed = nd >= k if mode == "weak" else nd > k
        hits += int(np.count_nonzero(2 * passed.sum(axis=1) > k))
        done += size
    return hits / samples


def predict_correlated(model: DegreeModel, rho_nn: float, samples: int = 100_000,
                       seed: int = 0, mode: str = "weak") -> SfpPrediction:
    if not -1 < rho_nn < 1:
        raise ValueError("rho_nn must lie in (-1, 1)")
    if samples < 10_000:
        raise ValueError("samples must be at least 10^4")
    if not model.conditional_table:
        raise ValueError("degree model has an empty conditional table")
    per, se, clamped = {}, {}, []
    for k in sorted(model.degree_histogram):
        if k == 0:
            per[k], se[k] = 0.0, 0.0
            continue
        rho, was_clamped = _feasible_rho(rho_nn, k)
        if was_clamped:
            clamped.append(k)
        rng = np.random.default_rng([int(seed), int(k)])
        est = _copula_majority(model, k, rho, samples, rng, mode)
        per[k] = est
        se[k] = float(np.sqrt(est * (1 - est) / samples))
    w = _weights(model)
    overall = sum(w[k] * per[k] for k in per)
    overall_se = float(np.sqrt(sum((w[k] * se[k]) ** 2 for k in per)))
    return SfpPrediction(per, overall, "correlated", mode, samples, rho_nn,
                         se, overall_se, tuple(clamped))


@dataclass(frozen=True)
class PredictionReport:
    name: str
    sfp_mode: str
    observed: float
    measured_by_degree: dict[int, tuple[float, int]]
    independent: SfpPrediction
    correlated: SfpPrediction | None
    notice: str | None = None

    def row(self) -> str:
        """One table row: network, observed %, predicted % (correlated model
        when available, otherwise independent)."""
        pred = self.correlated or self.independent
        return f"{self.name}\t{100 * self.observed:.2f}%\t{100 * pred.overall:.2f}%"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "sfp_mode": self.sfp_mode,
            "observed": self.observed,
            "measured_by_degree": {
                str(k): {"fraction": f, "count": c} for k, (f, c) in self.measured_by_degree.items()
            },
            "independent": self.independent.to_dict(),
            "correlated": None if self.correlated is None else self.correlated.to_dict(),
            "notice": self.notice,
        }


def prediction_report(g: Graph, mode: str = "weak", samples: int = 100_000,
                      seed: int = 0, name: str = "graph",
                      model: DegreeModel | None = None) -> PredictionReport:
    """Measured strong-paradox curve next to both model predictions.

    The correlated prediction uses the graph's transsortativity; when that is
    undefined it is skipped and ``notice`` says so.
    """
    model = model or build_degree_model(g)
    independent = predict_independent(model, mode)
    correlated, notice = None, None
    rho = model.transsortativity
    if rho is None:
        notice = "transsortativity undefined; correlated mode skipped"
    elif not -1 < rho < 1:
        notice = f"transsortativity {rho} outside (-1, 1); correlated mode skipped"
    else:
        correlated = predict_correlated(model, rho, samples, seed, mode)
    return PredictionReport(
        name=name,
        sfp_mode=mode,
        observed=sfp_fraction(g, mode),
        measured_by_degree=sfp_by_degree(g, mode),
        independent=independent,
        correlated=correlated,
        notice=notice,
    )
