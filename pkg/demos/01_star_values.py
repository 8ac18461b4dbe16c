"""
Star families and their sizes
=============================

Closed-form sizes next to the families that realise them.
"""

from simplexfree import build_star_family, d4_gap, milner_bounds, star_value

# the star through x: every set containing x, plus small sets avoiding x
for d in (1, 2, 3):
    print(f"d={d}:", [star_value(n, d).value for n in range(1, 9)])

# each value comes with a status saying how much is actually known
print(star_value(5, 3))
print(star_value(9, 4))
print(star_value(6, 3, 2))

# sizes agree with the families themselves
fam = build_star_family(6, 0, 3)
print(len(fam), "sets; smallest few:", fam.sets()[:6])

# triangle-free bounds under a size cap
for n in range(3, 7):
    print(n, [str(b) for b in milner_bounds(n)])

# for d = 4 the slack comparison turns strict from n = 8 on
for n in range(4, 12):
    a, b = d4_gap(n)
    print(n, a, b, a > b)
