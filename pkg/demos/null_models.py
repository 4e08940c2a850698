"""Is the paradox about who holds the trait, or about the wiring?"""
import numpy as np

from friendparadox.nullmodels import (configuration_model, place_attributes, powerlaw_degree_sequence,
                                      rewire_to_assortativity, shuffle_attributes)
from friendparadox.paradox import gsfp_fraction, sfp_fraction
from friendparadox.structure import degree_assortativity, degree_attribute_correlation

seq = powerlaw_degree_sequence(1000, 2.5, kmin=2, seed=7)
g = configuration_model(seq, seed=7)

# Plant a trait that correlates with degree, then shuffle it across nodes
placed = place_attributes(g, 0.2, 0.6, seed=7)
base = gsfp_fraction(g, placed.attributes)
shuffled = [shuffle_attributes(placed.attributes, s) for s in range(50)]
print(f"planted: rho {placed.achieved_value:.3f}, strong paradox for the trait {base:.3f}")
print(f"shuffled: mean rho {np.mean([degree_attribute_correlation(g, s) for s in shuffled]):+.3f}, "
      f"mean strong paradox {np.mean([gsfp_fraction(g, s) for s in shuffled]):.3f}")

# Keep every degree but rewire the edges toward different mixing patterns
print(f"\nstart: assortativity {degree_assortativity(g):+.3f}, sfp {sfp_fraction(g):.3f}")
for target in (-0.2, 0.0, 0.2):
    res = rewire_to_assortativity(g, target, seed=7)
    print(f"target {target:+.1f}: reached {res.achieved_value:+.3f} "
          f"in {res.iterations_used} swaps, sfp {sfp_fraction(res.graph):.3f}")
