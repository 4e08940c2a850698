import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import planted_graph
from friendparadox.graph import AttributeMap, Graph
from friendparadox.paradox import gfp_gap
from friendparadox.perception import (global_perception_bias, illusion_fraction, illusion_search,
                                      local_perception, local_perception_bias, majority_illusion,
                                      threshold_cascade)


def test_global_bias_star(star5, star_red):
    assert global_perception_bias(star5, star_red) == 0.3


def test_global_bias_constant(karate):
    assert global_perception_bias(karate, AttributeMap(np.ones(karate.n))) == pytest.approx(0, abs=1e-15)


def test_global_bias_planted():
    g = planted_graph()
    f = np.zeros(g.n)
    f[np.argsort(-g.degrees, kind="stable")[:100]] = 1
    a = AttributeMap(f)
    bias = global_perception_bias(g, a)
    gap = gfp_gap(g, a)
    assert bias > 0
    assert bias == gap.lhs  # same computation, bit for bit
    assert abs(bias - gap.rhs) <= 1e-9


def test_requires_binary(star5):
    with pytest.raises(ValueError):
        global_perception_bias(star5, AttributeMap([0.5, 0, 0, 0, 0]))
    with pytest.raises(ValueError):
        majority_illusion(star5, AttributeMap([2, 0, 0, 0, 0]))


def test_local_bias_star(star5, star_red):
    assert list(local_perception(star5, star_red)) == [0, 1, 1, 1, 1]
    assert local_perception_bias(star5, star_red) == pytest.approx(0.6, abs=1e-15)


def test_local_bias_constant(karate):
    a = AttributeMap(np.ones(karate.n))
    assert local_perception_bias(karate, a) == 0
    assert local_perception(karate, a).mean() == a.prevalence


def test_two_hub_witness():
    # two red hubs, each with 10 private non-red leaves, hubs linked to each other
    leaves = 10
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(leaves)]
    edges += [(1, 2 + leaves + i) for i in range(leaves)]
    g = Graph(2 + 2 * leaves, edges)
    f = np.zeros(g.n)
    f[:2] = 1
    a = AttributeMap(f)
    mean_local = local_perception(g, a).mean()
    assert mean_local >= 4 * a.prevalence


def test_illusion_star(star5, star_red):
    rep = majority_illusion(star5, star_red)
    assert rep.illusion_fraction == 1.0
    assert rep.global_bias == rep.perceived_global - rep.global_prevalence
    assert majority_illusion(star5, AttributeMap(np.zeros(5))).illusion_fraction == 0.0


def test_illusion_count_all_flag(star5, star_red):
    assert illusion_fraction(star5, star_red, count_all=True) == 0.8


def test_illusion_threshold_inclusive():
    # node 0 sees exactly half of its two friends red
    g = Graph(3, [(0, 1), (0, 2)])
    a = AttributeMap([0, 1, 0])
    assert illusion_fraction(g, a, 0.5) == 0.5


def test_illusion_search_star(star5):
    res = illusion_search(star5, 1, 0.5, 100, seed=0)
    assert res.nodes == (0,)
    assert res.illusion_fraction == 1.0


def test_illusion_search_exhaustive_small(path4):
    # every 1- and 2-node placement enumerated
    import itertools
    for size in (1, 2):
        best = 0.0
        for combo in itertools.combinations(range(4), size):
            f = np.zeros(4)
            f[list(combo)] = 1
            best = max(best, illusion_fraction(path4, AttributeMap(f)))
        assert illusion_search(path4, size, 0.5, 500, seed=1).illusion_fraction == best


def test_illusion_search_all_but_one(karate):
    res = illusion_search(karate, karate.n - 1, 0.5, 50, seed=0)
    f = res.attributes(karate.n)
    lone = int(np.flatnonzero(f.values == 0)[0])
    expected = 1.0 if local_perception(karate, f)[lone] >= 0.5 else 0.0
    assert res.illusion_fraction == expected == 1.0


def test_illusion_search_deterministic(karate):
    a = illusion_search(karate, 8, 0.5, 3000, seed=4)
    b = illusion_search(karate, 8, 0.5, 3000, seed=4)
    assert a == b


def test_illusion_search_errors(star5):
    with pytest.raises(ValueError):
        illusion_search(star5, 2, 0.5, 0, seed=0)
    with pytest.raises(ValueError):
        illusion_search(star5, 5, 0.5, 10, seed=0)


def test_cascade_star(star5):
    res = threshold_cascade(star5, {0}, 0.5)
    assert len(res.active) == 5 and res.rounds == 1
    res = threshold_cascade(star5, {1}, 0.5)
    assert res.active == frozenset({1}) and res.rounds == 0


def test_cascade_rounds_csv(star5):
    res = threshold_cascade(star5, {0}, 0.5)
    assert res.rounds_csv() == "round,active,newly_active\n0,1,1\n1,5,4\n"


def test_cascade_phi_one(path4):
    # with phi = 1 a node needs every neighbour active
    res = threshold_cascade(path4, {1}, 1.0)
    assert res.active == frozenset({0, 1})


def test_cascade_small_phi_reaches_component():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (4, 5)])
    res = threshold_cascade(g, {0}, 1e-6)
    assert res.active == frozenset({0, 1, 2, 3})


def test_cascade_errors(star5):
    with pytest.raises(ValueError):
        threshold_cascade(star5, set(), 0.5)
    with pytest.raises(ValueError):
        threshold_cascade(star5, {0}, 0.0)


def test_cascade_from_illusion_set(karate):
    res = illusion_search(karate, 8, 0.5, 20000, seed=0)
    cascade = threshold_cascade(karate, res.nodes, 0.5)
    assert len(cascade.active) >= 32


@settings(max_examples=150, deadline=None)
@given(
    st.integers(0, 10_000),
    st.floats(0.05, 1.0),
    st.integers(1, 6),
    st.integers(0, 6),
)
def test_cascade_monotone(seed, phi, base, extra):
    rng = np.random.default_rng(seed)
    n = 25
    pairs = {tuple(sorted(map(int, rng.choice(n, 2, replace=False)))) for _ in range(45)}
    g = Graph(n, sorted(pairs))
    small = set(map(int, rng.choice(n, base, replace=False)))
    big = small | set(map(int, rng.choice(n, extra, replace=False))) if extra else set(small)
    assert threshold_cascade(g, small, phi).active <= threshold_cascade(g, big, phi).active
