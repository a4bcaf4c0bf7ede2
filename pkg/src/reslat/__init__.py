"""Finite residuated lattices: validation, filters, n-fold filter classes,
quotients, exhaustive enumeration, and a statement-checking suite."""

from .core import (
    RawAlgebra,
    ResiduatedLattice,
    check_identities,
    classify_lattice,
    from_tables,
    validate,
)
from .enumeration import (
    are_isomorphic,
    canonical_form,
    enumerate_bounded_lattices,
    enumerate_residuated,
)
from .filters import (
    all_filters,
    generated_filter,
    is_deductive_system,
    is_filter,
    is_locally_finite_quotient_consistent,
    is_maximal,
    is_semi_maximal,
    maximal_filters,
    prime_kinds,
    quotient,
    radical,
)
from .io import load, load_fixture, parse, serialize
from .nfold import (
    classify_filter,
    is_n_fold_boolean,
    is_n_fold_fantastic,
    is_n_fold_implicative,
    is_n_fold_normal,
    is_n_fold_obstinate,
    is_n_fold_positive_implicative,
    section_is_filter,
)
from .theorems import implication_diagram, run_corpus_suite, run_theorem_suite

__version__ = "0.1.0"
