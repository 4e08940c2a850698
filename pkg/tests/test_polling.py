import math

import numpy as np
import pytest

from conftest import planted_graph
from friendparadox.graph import AttributeMap
from friendparadox.nullmodels import place_attributes, shuffle_attributes
from friendparadox.paradox import friend_mean
from friendparadox.polling import friend_poll, node_poll


def test_node_poll_star(star5, star_red):
    res = node_poll(star5, star_red, 200_000, seed=0)
    assert res.estimate == pytest.approx(0.2, abs=3 * math.sqrt(0.16 / 200_000))
    assert res.method == "node"


def test_all_ones(karate):
    ones = AttributeMap(np.ones(karate.n))
    assert node_poll(karate, ones, 7, seed=1).estimate == 1.0
    assert friend_poll(karate, ones, 7, "inverse_degree", seed=1).estimate == 1.0


def test_friend_poll_star_expectations(star5, star_red):
    n = 200_000
    raw = friend_poll(star5, star_red, n, "none", seed=0)
    assert raw.estimate == pytest.approx(0.5, abs=3 * math.sqrt(0.25 / n))
    corrected = friend_poll(star5, star_red, n, "inverse_degree", seed=0)
    assert corrected.estimate == pytest.approx(0.2, abs=0.005)
    assert corrected.method == "friend_corrected"


def test_raw_friend_poll_targets_friend_mean(karate):
    f = np.zeros(karate.n)
    f[np.argsort(-karate.degrees, kind="stable")[:5]] = 1
    a = AttributeMap(f)
    target = friend_mean(karate, f)
    res = friend_poll(karate, a, 100_000, "none", seed=3)
    assert abs(res.estimate - target) <= 3 * math.sqrt(target * (1 - target) / 100_000)


def test_node_poll_unbiased():
    g = planted_graph(seed=21)
    a = place_attributes(g, 0.2, 0.0, seed=1).attributes
    res = node_poll(g, a, 500, seed=4, trials=200)
    assert len(res.replicate_estimates) == 200
    assert abs(res.estimate - 0.2) <= 0.02
    assert res.standard_error == pytest.approx(np.std(res.replicate_estimates, ddof=1))


def test_shuffled_attributes_remove_raw_bias(planted):
    g, placement = planted
    a = placement.attributes
    # over random shuffles the trait is independent of degree, so the raw
    # friend poll averages to the true prevalence
    estimates = [friend_poll(g, shuffle_attributes(a, s), 500, "none", seed=s).estimate
                 for s in range(300)]
    se = np.std(estimates, ddof=1) / math.sqrt(len(estimates))
    assert abs(np.mean(estimates) - 0.2) <= 3 * se


def test_corrected_and_node_poll_agree(planted):
    g, placement = planted
    a = placement.attributes
    node = node_poll(g, a, 500, seed=6, trials=300)
    corr = friend_poll(g, a, 500, "inverse-degree", seed=6, trials=300)
    se = math.hypot(node.standard_error, corr.standard_error) / math.sqrt(300)
    assert abs(node.estimate - corr.estimate) <= 3 * se


def test_single_trial_plugin_error(star5, star_red):
    res = node_poll(star5, star_red, 100, seed=0)
    p = res.estimate
    assert res.standard_error == pytest.approx(math.sqrt(p * (1 - p) / 100))
    assert res.replicate_estimates == ()


def test_deterministic(karate):
    a = AttributeMap((karate.degrees > 4).astype(float))
    assert friend_poll(karate, a, 50, "none", seed=9, trials=5) == friend_poll(karate, a, 50, "none", seed=9, trials=5)


def test_errors(star5, star_red):
    with pytest.raises(ValueError):
        node_poll(star5, AttributeMap([0.3, 0, 0, 0, 0]), 10, seed=0)
    with pytest.raises(ValueError):
        friend_poll(star5, star_red, 0, seed=0)
    with pytest.raises(ValueError):
        friend_poll(star5, star_red, 10, "bogus", seed=0)
