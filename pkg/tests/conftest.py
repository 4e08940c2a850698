import json
import pathlib

import numpy as np
import pytest

from friendparadox import (AttributeMap, configuration_model, cycle_graph, karate_club,
                           path_graph, place_attributes, powerlaw_degree_sequence, star_graph)

DATA = pathlib.Path(__file__).parent / "data"
KARATE_FILE = pathlib.Path(__file__).parents[1] / "src" / "friendparadox" / "data" / "karate.edgelist"


@pytest.fixture
def star5():
    return star_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def path4():
    return path_graph(4)


@pytest.fixture(scope="session")
def karate():
    return karate_club()


@pytest.fixture(scope="session")
def karate_oracle():
    return json.loads((DATA / "karate_oracle.json").read_text())


@pytest.fixture
def star_red(star5):
    """STAR5 with the trait on the centre only."""
    return AttributeMap([1, 0, 0, 0, 0])


def planted_graph(seed=11):
    """1000-node power-law configuration-model graph (exponent 2.5, kmin 2)."""
    return configuration_model(powerlaw_degree_sequence(1000, 2.5, kmin=2, seed=seed), seed=seed)


@pytest.fixture(scope="session")
def planted():
    """Planted-correlation workload: graph plus a 20% trait at rho ~ 0.6."""
    g = planted_graph()
    placement = place_attributes(g, 0.2, 0.6, seed=5)
    return g, placement


def random_graphs(count, n=300, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        s = int(rng.integers(1 << 30))
        yield configuration_model(powerlaw_degree_sequence(n, 2.3, seed=s), seed=s)


ACCEPTANCE: list[str] = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line for an acceptance criterion, then assert it."""
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
