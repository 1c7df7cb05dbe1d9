"""Known limits of f_r(n, er-(e-1)k, e) / n^k and the growth-exponent bounds."""

from sparsehyper import bes_bounds, crucial_constants, known_limit

for r, k, e in [(3, 2, 3), (3, 2, 4), (4, 2, 3), (5, 3, 3), (4, 1, 3), (3, 2, 5)]:
    rec = known_limit(r, k, e)
    value = rec.value if rec.value is not None else "unknown"
    flags = f"  flags: {', '.join(rec.flags)}" if rec.flags else ""
    print(f"r={r} k={k} e={e}: {value}{flags}")

b = bes_bounds(1000, 3, 6, 4)
print(f"\nf_3(n, 6, 4) grows like n^{b.lower_exponent} (exponent bounds {b.lower_exponent}..{b.upper_exponent})")

for r in (3, 4, 5):
    c = crucial_constants(r)
    print(f"r={r}: alpha^2={c.alpha_squared}, delta={c.delta}, b={c.b}")
