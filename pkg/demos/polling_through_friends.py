"""Asking friends over-counts traits that popular people have, and how to undo it."""
import friendparadox as fp
from friendparadox.nullmodels import configuration_model, place_attributes, powerlaw_degree_sequence
from friendparadox.polling import friend_poll, node_poll

g = configuration_model(powerlaw_degree_sequence(2000, 2.5, kmin=2, seed=3), seed=3)

# A trait held by 20% of nodes, concentrated on the well connected
trait = place_attributes(g, prevalence=0.2, target_rho=0.5, seed=3).attributes
print(f"true prevalence {trait.prevalence:.3f}")

for label, poll in [
    ("random nodes", node_poll(g, trait, 300, seed=0, trials=100)),
    ("random friends", friend_poll(g, trait, 300, "none", seed=0, trials=100)),
    ("friends, reweighted by 1/degree", friend_poll(g, trait, 300, "inverse_degree", seed=0, trials=100)),
]:
    print(f"{label:32s} {poll.estimate:.3f} +/- {poll.standard_error:.3f}")

# Friend sampling reaches hubs more often, so the raw estimate is inflated;
# weighting each answer by the inverse of its degree removes that tilt.
