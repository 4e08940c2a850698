"""Your friends have more friends than you do, on average."""
import numpy as np

import friendparadox as fp
from friendparadox.paradox import fp_gap, sfp_by_degree, sfp_fraction

g = fp.karate_club()
d = g.degrees

# A random node versus a random friend (a uniformly chosen edge end)
print(f"mean degree of a random node:   {d.mean():.3f}")
print(f"mean degree of a random friend: {np.dot(d, d) / d.sum():.3f}")

# The difference is exactly the degree variance over the mean
gap = fp_gap(g)
print(f"gap {gap.lhs:.6f}  variance/mean {gap.rhs:.6f}")

# The stronger, per-node version: most of my friends are more popular than me
print(f"nodes where most friends have at least their degree: {sfp_fraction(g, 'weak'):.1%}")
print(f"...strictly more: {sfp_fraction(g, 'strict'):.1%}")

print("\ndegree  fraction  nodes")
for k, (frac, count) in sfp_by_degree(g).items():
    print(f"{k:>6}  {frac:8.2f}  {count:>5}")

# Low-degree nodes almost always experience it, hubs never do
