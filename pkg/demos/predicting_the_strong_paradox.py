"""Predicting how many nodes are outnumbered by more popular friends from degree statistics alone."""
import friendparadox as fp
from friendparadox.nullmodels import configuration_model, powerlaw_degree_sequence
from friendparadox.predictor import prediction_report
from friendparadox.structure import transsortativity

graphs = {
    "karate": fp.karate_club(),
    "power law 2.2": configuration_model(powerlaw_degree_sequence(5000, 2.2, seed=1), seed=1),
    "power law 3.0": configuration_model(powerlaw_degree_sequence(5000, 3.0, kmin=2, seed=2), seed=2),
}

# The independent model treats a node's neighbours as independent draws from
# the neighbour-degree distribution of its degree class; the correlated one
# adds the measured correlation between neighbours of a common node.
print(f"{'graph':14s} {'observed':>9s} {'independent':>12s} {'correlated':>11s} {'rho_nn':>7s}")
for name, g in graphs.items():
    rep = prediction_report(g, samples=50_000, seed=0, name=name)
    cor = "-" if rep.correlated is None else f"{rep.correlated.overall:.2%}"
    print(f"{name:14s} {rep.observed:9.2%} {rep.independent.overall:12.2%} {cor:>11s} "
          f"{transsortativity(g):+7.3f}")
