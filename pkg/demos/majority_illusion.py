"""A rare trait can look like the majority view from most seats in a network."""
import friendparadox as fp
from friendparadox.perception import illusion_search, majority_illusion, threshold_cascade

g = fp.karate_club()

# Colour 8 of 34 members so that as many of the rest as possible see a red majority
found = illusion_search(g, set_size=8, threshold=0.5, seed=0)
red = found.attributes(g.n)
print("red members:", sorted(g.labels[i] for i in found.nodes))

report = majority_illusion(g, red)
print(f"true prevalence      {report.global_prevalence:.3f}")
print(f"seen through friends {report.perceived_global:.3f}")
print(f"non-red nodes with a red majority among friends: {report.illusion_fraction:.1%}")

# If red were a behaviour adopted once half your friends do it, it would spread
cascade = threshold_cascade(g, found.nodes, phi=0.5)
print(f"cascade: {len(cascade.active)}/{g.n} active after {cascade.rounds} rounds")
print("active per round:", cascade.history)
