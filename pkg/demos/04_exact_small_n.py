"""Exact maximum edge counts at small n, and the chain of constrained maxima."""

from sparsehyper import ConstraintFamily, chain_check, exact_max

print("f_3(n, v, 3) by branch and bound")
print("n   v=5 v=6 v=7")
for n in range(3, 9):
    row = [exact_max(n, 3, ConstraintFamily.of((v, 3))) for v in (5, 6, 7)]
    print(f"{n:<3} " + " ".join(f"{res.optimum:>3}" for res in row))

res = exact_max(7, 3, ConstraintFamily.of((5, 3)))
print(f"\nat n=7, (5,3): {res.optimum} edges ({res.status}, {res.nodes} nodes)")
print("witness:", res.witness.edges)

rep = chain_check(6, 3, 3)
print(f"\nchain at n=6, e=3: {rep.values}; monotone={rep.monotone}, case1={rep.case1}")
