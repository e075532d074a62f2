"""pbcat: finitary partial Brown categories, checked mechanically.

The package builds zig-zag mapping categories, the simplicial categories
C_n(M) and the Rezk nerve levels N^R_n(M) of a finite partial Brown category,
verifies the PBC axioms, Segal conditions, adjunctions and retractions they
support, and assembles the Weiss bicategory W(M) = delta C(M), with integer
homology of loop-free categories as numerical evidence.
"""

from .fincat import (  # noqa: F401
    Adjunction,
    BudgetExceededError,
    CategoryError,
    CheckReport,
    EquivalenceResult,
    FinCategory,
    Functor,
    NatTransformation,
    PushoutCocone,
    Violation,
    WideSubcategory,
    check_equivalence,
    combine,
    enumerate_nat_trans,
    fiber,
    fiber_product,
    opposite,
    pushout,
    validate_category,
    verify_adjunction,
)

__version__ = "0.1.0"
