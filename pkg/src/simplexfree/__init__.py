"""Exact computations for d-simplex-free set families."""

from .family import (DuplicateSetWarning, ElementRangeError, FamilyError, GroundSizeError,
                     LinkDecomposition, MalformedFamilyError, SetFamily, apply_permutation,
                     canonical_form, decompose_by_outside, elements_of, invert_permutation,
                     mask_of, parse_family, serialize_family)
from .formulas import (BoundValue, binom, build_star_family, d4_gap, f_d1, known_value,
                       lemma_bound, lemma_bound_d2, milner_bounds, star_value)
from .search import (SearchOutcome, SearchProblem, enumerate_optimal, exact_f, exact_g,
                     exact_oracle, max_simplex_free, verify_conjecture)
from .simplex import (BudgetExceeded, SimplexWitness, enumerate_simplices, find_simplex,
                      is_simplex, is_simplex_free)

__version__ = "0.1.0"
