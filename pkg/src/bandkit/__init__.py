"""Normal forms, identity checking and scheme solving for bands."""

from .canonical import b_canonical, band_satisfies
from .errors import BandkitError, BudgetExceeded, NoSolution, NotInduced
from .finite import (Budget, FiniteBand, WordOperation, adjoin_identity, and_semilattice,
                     dual_band, direct_product, enumerate_word_operations, eval_word,
                     free_band, free_band_elements, induced_by_word, left_zero, make_band,
                     minor, right_zero, satisfies_by_evaluation, word_operation)
from .schemes import (Scheme, associated_permutation, check_scheme, comes_from,
                      derived_scheme, is_essential, scheme_from_word, solve_scheme)
from .varieties import (ALL_BANDS, TRIVIAL, Atom, Variety, dual, h_m, i_m, invariant,
                        join, leq, parse_variety, satisfies)
from .words import (content, e_suffix, epsilon, format_word, identify, parse_word,
                    reverse, s_prefix, sigma, substitute)

__version__ = "0.1.0"
