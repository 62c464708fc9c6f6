"""Exact computation and verification of QSSEP loop polynomials."""

from .combinatorics import (
    CyclicPermutation,
    GuardExceeded,
    NonCrossingPartition,
    SetPartition,
    canonicalize_cycle,
    catalan,
    conjugate_by_adjacent,
    enumerate_nc,
    is_noncrossing,
    kreweras,
    mobius_nc,
    mobius_via_lattice,
    small_schroeder,
    split_by_transposition,
)
from .loops import (
    delta,
    equivalence_classes,
    exchange_step,
    generate_all,
    q_via_cumulants,
    q_via_trees,
    verify_axioms,
)
from .polynomial import MultilinearPolynomial

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop all memoized enumerations and polynomials (for cold timings)."""
    from . import combinatorics, cumulants, loops, trees

    for fn in (
        combinatorics._enumerate_nc,
        combinatorics._lattice_mobius,
        combinatorics.catalan,
        combinatorics.small_schroeder,
        cumulants._nc_table,
        loops._prime_corner_groups,
        loops.loop_polynomial,
        loops._generated,
        trees._trees,
        trees.prime_trees,
        trees.corner_groups,
        trees.n_leaves,
        trees._prime_index,
    ):
        fn.cache_clear()
