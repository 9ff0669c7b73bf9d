"""Exact computation of knot invariants organized around Seifert forms.

The package has three layers:

* an exact arithmetic kernel (integer/Laurent polynomials, Sturm root
  isolation, certified interval signatures),
* knot-level invariants (Alexander polynomial, Arf, Levine-Tristram
  signature function, the rho(0) circle integral),
* combinatorial calculi (uni-trivalent diagram algebra graded by grope
  degree, grope trees and commutator brackets).
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    InputError,
    KnotbenchError,
    PossiblySingularError,
    PreconditionError,
)

__all__ = [
    "BudgetExceededError",
    "InputError",
    "KnotbenchError",
    "PossiblySingularError",
    "PreconditionError",
    "__version__",
]
