"""The Fano plane as a test bed for freeness checks.

Seven lines on seven points, every pair of points on exactly one line. Any
three lines span at least six points, so the plane is (5,3)-free; three
lines forming a triangle span exactly six, so it is not (6,3)-free.
"""

from sparsehyper import FreenessConstraint, enumerate_violations, fano, find_violation, link, serialize

F = fano()
print("Fano plane in text format:")
print(serialize(F))

for v in (5, 6, 7):
    verdict = find_violation(F, FreenessConstraint(v, 3))
    line = f"(v={v}, e=3): {verdict.status}"
    if verdict.witness:
        line += f"  witness {verdict.witness.edges(F)} on {len(verdict.witness.X)} points"
    print(line)

tri = enumerate_violations(F, FreenessConstraint(6, 3), max_count=100)
print(f"\n{len(tri.configurations)} triples of lines span 6 points or fewer (the triangles).")

L = link(F, (0,))
pairs = [tuple(L.labels[v] for v in e) for e in L.edges]
print(f"link of point 0: {pairs}  (a perfect matching on the other six points)")
