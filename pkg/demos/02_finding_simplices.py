"""
Detecting simplices
===================

Witness search on a few small families.
"""

from simplexfree import (SetFamily, build_star_family, elements_of, enumerate_simplices,
                         find_simplex, is_simplex)

# the three 2-subsets of {0,1,2} form a triangle
tri = SetFamily.from_sets(3, [[0, 1], [0, 2], [1, 2]])
w = find_simplex(tri, 2)
print(w, w.to_json())

# a simplex needs an empty total intersection but nonempty drop-one intersections
print(is_simplex([0b011, 0b101, 0b110], 2))
print(is_simplex([0b001, 0b010, 0b100], 2))

# the power set of a 4-set holds exactly one 3-simplex: its four triples
full = SetFamily.power_set(4)
print([s.sets for s in enumerate_simplices(full, 3)])

# the star is clean, and adding back any missing set creates a witness
star = build_star_family(5, 0, 3)
print("star simplex-free:", find_simplex(star, 3) is None)
missing = [m for m in range(32) if m not in star]
for m in missing:
    print(elements_of(m), "->", find_simplex(star.with_members(star.members + (m,)), 3))
