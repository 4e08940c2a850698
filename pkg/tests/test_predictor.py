import math

import numpy as np
import pytest

from friendparadox.graph import Graph
from friendparadox.nullmodels import configuration_model, powerlaw_degree_sequence
from friendparadox.paradox import sfp_fraction
from friendparadox.predictor import (PredictionReport, _copula_majority, binomial_pmf,
                                     exchangeable_normals, majority_probability,
                                     predict_correlated, predict_independent,
                                     prediction_report, sample_neighbor_degrees)
from friendparadox.structure import DegreeModel, build_degree_model


def exact_majority(k, p):
    return sum(math.comb(k, j) * p ** j * (1 - p) ** (k - j) for j in range(k + 1) if 2 * j > k)


@pytest.mark.parametrize("k", [1, 2, 5, 10, 37, 120])
@pytest.mark.parametrize("p", [0.0, 0.13, 0.5, 0.77, 1.0])
def test_binomial_tail(k, p):
    assert binomial_pmf(k, p).sum() == pytest.approx(1, abs=1e-12)
    assert majority_probability(k, p) == pytest.approx(exact_majority(k, p), abs=1e-12)


def test_majority_monotone_in_p():
    ps = np.linspace(0, 1, 41)
    for k in range(1, 30):
        vals = [majority_probability(k, p) for p in ps]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


def test_independent_cycle(c5):
    model = build_degree_model(c5)
    assert predict_independent(model, "weak").per_degree == {2: 1.0}
    assert predict_independent(model, "strict").per_degree == {2: 0.0}


def test_independent_star(star5):
    pred = predict_independent(build_degree_model(star5), "weak")
    assert pred.per_degree == {1: 1.0, 4: 0.0}
    assert pred.overall == pytest.approx(0.8, abs=1e-15)


def test_overall_is_weighted_mean(karate):
    model = build_degree_model(karate)
    pred = predict_independent(model)
    w = {k: c / karate.n for k, c in model.degree_histogram.items()}
    assert pred.overall == pytest.approx(sum(w[k] * pred.per_degree[k] for k in w), abs=1e-9)


def test_stochastic_dominance_raises_prediction(karate):
    model = build_degree_model(karate)
    base = predict_independent(model)
    # move all neighbour mass of every row onto the largest neighbour degree
    shifted = {k: {max(row): 1.0} for k, row in model.conditional_table.items()}
    bumped = DegreeModel(model.degree_histogram, shifted, None, None)
    up = predict_independent(bumped)
    for k in base.per_degree:
        assert up.per_degree[k] >= base.per_degree[k]


def test_independent_matches_configuration_model():
    g = configuration_model(powerlaw_degree_sequence(3000, 2.5, kmin=2, seed=2), seed=2)
    pred = predict_independent(build_degree_model(g))
    assert abs(pred.overall - sfp_fraction(g)) <= 0.03


def test_missing_degree_row():
    model = DegreeModel({1: 2, 3: 1}, {1: {1: 1.0}}, None, None)
    with pytest.raises(KeyError):
        predict_independent(model)


def test_zero_correlation_matches_independent(karate):
    model = build_degree_model(karate)
    ind = predict_independent(model)
    cor = predict_correlated(model, 0.0, 100_000, seed=1)
    for k, p in ind.per_degree.items():
        se = math.sqrt(p * (1 - p) / 100_000)
        assert abs(cor.per_degree[k] - p) <= 3 * se


@pytest.mark.parametrize("rho", [-0.6, 0.0, 0.4, 0.9])
def test_single_neighbour_ignores_correlation(star5, rho):
    model = DegreeModel({1: 3, 2: 1}, {1: {1: 0.3, 2: 0.7}, 2: {1: 1.0}}, None, None)
    pred = predict_correlated(model, rho, 50_000, seed=3)
    p = model.tail_probability(1)
    assert abs(pred.per_degree[1] - p) <= 3 * math.sqrt(p * (1 - p) / 50_000)


def test_correlated_karate_not_worse(karate):
    model = build_degree_model(karate)
    measured = sfp_fraction(karate)
    ind = predict_independent(model).overall
    cor = predict_correlated(model, model.transsortativity, 100_000, seed=1).overall
    assert abs(cor - measured) <= abs(ind - measured) + 0.02


def test_correlated_deterministic_and_schedule_free(karate):
    model = build_degree_model(karate)
    a = predict_correlated(model, 0.3, 20_000, seed=8)
    assert a == predict_correlated(model, 0.3, 20_000, seed=8)
    # a single degree class computed alone gets the same substream
    k = 5
    alone = DegreeModel({k: model.degree_histogram[k]}, {k: model.conditional_table[k]}, None, None)
    assert predict_correlated(alone, 0.3, 20_000, seed=8).per_degree[k] == a.per_degree[k]


def test_negative_correlation_clamped(karate):
    model = build_degree_model(karate)
    pred = predict_correlated(model, -0.3, 20_000, seed=1)
    assert pred.clamped == tuple(k for k in sorted(model.degree_histogram) if k - 1 > 1 / 0.3)
    assert all(0 <= v <= 1 for v in pred.per_degree.values())


def test_correlated_errors(karate):
    model = build_degree_model(karate)
    with pytest.raises(ValueError):
        predict_correlated(model, 0.2, 100, seed=0)
    with pytest.raises(ValueError):
        predict_correlated(model, 1.0, 20_000, seed=0)


def test_exchangeable_normals_moments():
    rng = np.random.default_rng(0)
    for k, rho in [(4, 0.5), (6, -0.15), (3, -0.45)]:
        z = exchangeable_normals(200_000, k, rho, rng)
        c = np.corrcoef(z, rowvar=False)
        off = c[~np.eye(k, dtype=bool)]
        assert np.allclose(z.var(axis=0), 1, atol=0.02)
        assert np.allclose(off, rho, atol=0.02)
    with pytest.raises(ValueError):
        exchangeable_normals(10, 4, -0.5, rng)


def test_copula_marginals():
    model = DegreeModel({3: 4, 1: 6, 5: 2}, {3: {1: 0.5, 3: 0.25, 5: 0.25}}, None, None)
    rng = np.random.default_rng(1)
    draws = sample_neighbor_degrees(model, 3, 0.5, 100_000, rng)
    for value, p in model.conditional_table[3].items():
        assert (draws == value).mean() == pytest.approx(p, abs=0.01)


@pytest.mark.parametrize("rho", [0.3, 0.7])
def test_factorised_path_matches_full_vectors(karate, rho):
    model = build_degree_model(karate)
    for k in (3, 4, 6):
        fast = _copula_majority(model, k, rho, 100_000, np.random.default_rng(0), "weak")
        nd = sample_neighbor_degrees(model, k, rho, 100_000, np.random.default_rng(1))
        full = np.mean(2 * (nd >= k).sum(axis=1) > k)
        se = math.sqrt(2 * fast * (1 - fast) / 100_000)
        assert abs(fast - full) <= 4 * se + 1e-12


def test_report_cycle(c5):
    rep = prediction_report(c5, "weak", 10_000, seed=0, name="C5")
    assert rep.observed == 1.0
    assert rep.independent.overall == 1.0
    assert rep.correlated is None
    assert rep.notice == "transsortativity undefined; correlated mode skipped"


def test_report_karate(karate):
    rep = prediction_report(karate, "weak", 20_000, seed=0, name="karate")
    for value in (rep.observed, rep.independent.overall, rep.correlated.overall):
        assert 0 <= value <= 1
    name, observed, predicted = rep.row().split("\t")
    assert name == "karate" and observed.endswith("%") and predicted.endswith("%")


def test_report_row_rendering():
    # tab-separated name, observed %, predicted % with two decimals
    from friendparadox.predictor import SfpPrediction
    ind = SfpPrediction({}, 0.7976, "independent", "weak")
    rep = PredictionReport("citations", "weak", 0.7871, {}, ind, None)
    assert rep.row() == "citations\t78.71%\t79.76%"


def test_isolated_degree_predicts_zero():
    g = Graph(4, [(0, 1), (1, 2)])
    pred = predict_independent(build_degree_model(g))
    assert pred.per_degree[0] == 0.0
