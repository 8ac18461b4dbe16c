"""
Star values against exact search
================================

Every cell small enough to solve exactly, compared to the star value and to
the link-decomposition bound.
"""

from simplexfree import exact_g, exact_oracle, lemma_bound, star_value, verify_conjecture

for d in (2, 3):
    rep = verify_conjecture(5, d)
    for row in rep.rows:
        print(row)
    print(f"d={d}: complete={rep.complete} all_match={rep.all_match}")

# exact g next to the bound built from exact smaller values; the star
# construction is only expected to be optimal for 1 <= k <= n-d-1
print(" n d k   g  bound  star")
for n in range(3, 6):
    for d in (2, 3):
        for k in range(1, n - d):
            g = exact_g(n, d, k)
            b = lemma_bound(n, d, k, exact_oracle).value
            print(f"{n:2d}{d:2d}{k:2d}{g:4d}{b:7d}{star_value(n, d, k).value:6d}")
