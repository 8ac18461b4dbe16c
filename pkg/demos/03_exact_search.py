"""
Exact maxima by search
======================

The largest simplex-free family is the complement of a minimum hitting
set of all simplices in the power set.
"""

import time

from simplexfree import SearchProblem, canonical_form, enumerate_optimal, max_simplex_free

for n, d in [(4, 2), (4, 3), (5, 2), (5, 3), (6, 3)]:
    t = time.perf_counter()
    out = max_simplex_free(SearchProblem(n, d), long_running=True)
    print(f"n={n} d={d}: {out.status} {out.optimum}  ({time.perf_counter() - t:.2f}s)")

# all optimal families at n = 5, d = 3: five stars, one up to relabeling
fams, out = enumerate_optimal(SearchProblem(5, 3))
print(out.optimal_count, "families,", out.optimal_orbit_count, "orbit")
for f in fams:
    print("  missing masks:", [m for m in range(32) if m not in f])
print(canonical_form(fams[0]).sets())

# a size cap, and the variant that insists on one set of the cap size
print(max_simplex_free(SearchProblem(5, 2, size_cap=3)).optimum)
print(max_simplex_free(SearchProblem.g(5, 2, 2)).optimum)

# decision mode stops at the first family of the requested size
print(max_simplex_free(SearchProblem(5, 3, target=28)).status)
