"""The deletion loop on a hypergraph with planted bad configurations.

A bad configuration for (r, k, t) is t-1 edges on at most
x = (t-1)r - (t-2)k - 1 vertices. Each step deletes one, every edge meeting
its vertex set X in k-1 vertices, and X itself. Vertex counts fall by exactly
x per step and edge counts by (t-1) + |I(X)|.
"""

import random

from sparsehyper import density_increment
from sparsehyper.generators import planted_instance

r, t = 3, 4
H = planted_instance(r, t, blocks=3, rng=random.Random(11), background=12)
G, trace = density_increment(H, t, e=t + 1)

print("parameters:", {key: trace.header()[key] for key in ("r", "k", "t", "x", "alpha_squared", "b")})
print(f"start: {len(H)} edges on {H.n} vertices")
for s in trace.steps:
    print(f"step {s.j}: X={s.X} removes {len(s.configuration)} + {len(s.I_of_X)} edges "
          f"-> {s.e_next} edges on {s.v_next} vertices")
print(f"status {trace.status}; final graph free: {trace.conclusions['free']}")
print("\ntrace CSV:")
print(trace.to_csv(), end="")
