"""Free and classical cumulants, exact.

The symbolic path turns a cycle into its loop polynomial by summing over
NC(n); the numeric paths evaluate κ_n(Π_{u_1}, ..., Π_{u_n}) where the
Π_u = 1_[0,u] are indicator variables on [0,1], so that every mixed moment
is a minimum.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Callable, Mapping, Sequence

from .combinatorics import (
    NC_GUARD,
    CyclicPermutation,
    GuardExceeded,
    SetPartition,
    catalan,
    enumerate_nc,
    kreweras,
    mobius_nc,
    set_partitions,
)
from .polynomial import MultilinearPolynomial

CLASSICAL_GUARD = 9


@lru_cache(maxsize=None)
def _nc_table(n: int) -> tuple[tuple[tuple[tuple[int, ...], ...], int], ...]:
    """(blocks with 0-based positions, μ(π)) for every π in NC(n)."""
    return tuple(
        (tuple(tuple(x - 1 for x in b) for b in p.blocks), mobius_nc(p)) for p in enumerate_nc(n)
    )


def symbolic_free_cumulant(sigma: CyclicPermutation, k: int | None = None) -> MultilinearPolynomial:
    """Loop polynomial as a signed sum over NC(n).

    Position j carries the label σ^j(k); each block contributes -x at its
    smallest label and π is weighted by |μ(π)|, the number of prime trees
    with corner partition π.
    """
    if k is None:
        k = min(sigma.word)
    if k not in sigma.support:
        raise ValueError(f"k={k} is not in the support of ({sigma})")
    labels = sigma.orbit(k)
    terms: dict[tuple[int, ...], int] = {}
    for blocks, mu in _nc_table(len(sigma)):
        mono = tuple(sorted(min(labels[j] for j in b) for b in blocks))
        # -∏(-x) = (-1)^(|π|+1) x^mono
        coeff = abs(mu) if len(blocks) % 2 else -abs(mu)
        terms[mono] = terms.get(mono, 0) + coeff
    return MultilinearPolynomial(terms)


def _check_unit_interval(u: Sequence) -> list[Fraction]:
    vals = [Fraction(x) for x in u]
    if not vals:
        raise ValueError("need at least one argument")
    if len(vals) > NC_GUARD:
        raise GuardExceeded(f"free cumulant of order {len(vals)} exceeds {NC_GUARD}")
    for v in vals:
        if not 0 <= v <= 1:
            raise ValueError(f"argument {v} outside [0, 1]")
    return vals


def numeric_free_cumulant_min(u: Sequence) -> Fraction:
    """κ_n(Π_{u_1}, ..., Π_{u_n}) = Σ_{π∈NC(n)} μ(π) ∏_blocks min(u over block).

    Summed in integers over a common denominator D: a term with r blocks
    is an integer over D^r.
    """
    vals = _check_unit_interval(u)
    n = len(vals)
    den = lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (den // v.denominator) for v in vals]
    by_blocks = [0] * (n + 1)
    for blocks, mu in _nc_table(n):
        term = mu
        for b in blocks:
            term *= min(ints[j] for j in b)
        by_blocks[len(blocks)] += term
    return Fraction(sum(s * den ** (n - r) for r, s in enumerate(by_blocks)), den**n)


def numeric_free_cumulant_recursive(u: Sequence) -> Fraction:
    """Same quantity from the moment-cumulant relation, peeling off the block of the first argument.

    φ(a_1 ... a_n) = Σ_{V ∋ 1} κ(a_V) ∏_{gaps of V} φ(a_gap), and every
    moment of indicators is a minimum. No Möbius values are used. With a
    common denominator D, K(V) = D^{|V|} κ(a_V) is an integer.
    """
    vals = _check_unit_interval(u)
    den = lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (den // v.denominator) for v in vals]

    @lru_cache(maxsize=None)
    def scaled_kappa(pos: tuple[int, ...]) -> int:
        m = len(pos)
        total = min(ints[j] for j in pos) * den ** (m - 1)
        # V holds index 0 of pos plus a proper subset of the others
        for mask in range((1 << (m - 1)) - 1):
            idx = [0] + [i + 1 for i in range(m - 1) if mask >> i & 1]
            term = scaled_kappa(tuple(pos[i] for i in idx))
            for a, b in zip(idx, idx[1:] + [m]):
                if b - a > 1:
                    term *= min(ints[j] for j in pos[a + 1 : b]) * den ** (b - a - 2)
            total -= term
        return total

    return Fraction(scaled_kappa(tuple(range(len(vals)))), den ** len(vals))


def classical_cumulant(
    moment: Mapping[tuple[int, ...], Fraction] | Callable[[tuple[int, ...]], Fraction],
    n: int | Sequence[int],
) -> Fraction:
    """C_n(a_1..a_n) = Σ_{π∈P_n} (-1)^{|π|-1} (|π|-1)! ∏_blocks E[a_block].

    ``moment`` maps a sorted tuple of indices to E of the product of those
    a's. ``n`` is either the order (indices 1..n) or an explicit index tuple.
    """
    indices = tuple(range(1, n + 1)) if isinstance(n, int) else tuple(n)
    if not indices:
        raise ValueError("empty cumulant")
    if len(indices) > CLASSICAL_GUARD:
        raise GuardExceeded(f"classical cumulant of order {len(indices)} exceeds {CLASSICAL_GUARD}")
    get = moment if callable(moment) else moment.__getitem__
    total = Fraction(0)
    for part in set_partitions(indices):
        r = len(part)
        term = Fraction((-1) ** (r - 1) * factorial(r - 1))
        for b in part:
            term *= get(tuple(sorted(b)))
        total += term
    return total


def sign_identity_check(pi: SetPartition) -> bool:
    """∏_{p∈K(π)} (-1)^{|p|-1} == -∏_{p∈π} (-1)."""
    lhs = 1
    for b in kreweras(pi).blocks:
        lhs *= (-1) ** (len(b) - 1)
    return lhs == -((-1) ** len(pi))


def prime_tree_count(pi: SetPartition) -> int:
    """∏ Cat_{|p|-1} over the blocks of K(π)."""
    out = 1
    for b in kreweras(pi).blocks:
        out *= catalan(len(b) - 1)
    return out
