"""Peeling a random 3-graph until every vertex lies in 0 or at least e edges."""

import random

from sparsehyper import peel, peel_bound
from sparsehyper.generators import random_hypergraph

rng = random.Random(3)
H = random_hypergraph(14, 3, 30, rng)
k, e = 2, 4
G, log = peel(H, k, e)

print(f"start: {len(H)} edges on {H.n} vertices")
for x in log[:8]:
    print(f"  remove {x.edge}: vertex {x.subset[0]} had degree {x.codegree}")
if len(log) > 8:
    print(f"  ... {len(log) - 8} more")
print(f"end:   {len(G)} edges, {len(log)} removed (never more than {peel_bound(H.n, k, e)})")
print("degrees after peeling:", sorted({len(G.incidence(1).get((v,), ())) for v in range(G.n)}))

# a random removal order reaches a (possibly different) valid end state
G2, log2 = peel(H, k, e, rng=random.Random(0))
print(f"random order: {len(G2)} edges kept, {len(log2)} removed")
