"""Loop polynomials Q_σ: three constructions and the axiom verifier."""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .combinatorics import (
    CyclicPermutation,
    GuardExceeded,
    all_cycles,
    conjugate_by_adjacent,
    split_by_transposition,
)
from .cumulants import symbolic_free_cumulant
from .polynomial import (
    MultilinearPolynomial,
    coefficient_of,
    decompose,
    multiply_disjoint,
    recompose,
    substitute_unit,
)
from .trees import corner_groups, prime_trees

log = logging.getLogger(__name__)

TREE_ALGO_GUARD = 8
GENERATE_GUARD = 7
VERIFY_GUARD = 7

ALGORITHMS = ("trees", "cumulants", "exchange")


class InconsistentPropagation(AssertionError):
    """Two conjugation paths produced different polynomials for one cycle."""


def _resolve_k(sigma: CyclicPermutation, k: int | None) -> int:
    if k is None:
        return min(sigma.word)
    if k not in sigma.support:
        raise ValueError(f"k={k} is not in the support of ({sigma})")
    return k


@lru_cache(maxsize=None)
def _prime_corner_groups(m: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(corner_groups(t) for t in prime_trees(m))


def q_via_trees(sigma: CyclicPermutation, k: int | None = None) -> MultilinearPolynomial:
    """-Σ over prime trees with n+1 leaves of ∏_v (-x_{i(v)})."""
    k = _resolve_k(sigma, k)
    n = len(sigma)
    if n > TREE_ALGO_GUARD:
        raise GuardExceeded(f"q_via_trees: cycle length {n} exceeds {TREE_ALGO_GUARD}")
    labels = sigma.orbit(k)
    terms: dict[tuple[int, ...], int] = {}
    for groups in _prime_corner_groups(n + 1):
        mono = tuple(sorted(min(labels[c - 1] for c in g) for g in groups))
        coeff = 1 if len(groups) % 2 else -1
        terms[mono] = terms.get(mono, 0) + coeff
    return MultilinearPolynomial(terms)


def q_via_cumulants(sigma: CyclicPermutation, k: int | None = None) -> MultilinearPolynomial:
    return symbolic_free_cumulant(sigma, _resolve_k(sigma, k))


@lru_cache(maxsize=None)
def loop_polynomial(sigma: CyclicPermutation) -> MultilinearPolynomial:
    """Cached Q_σ (tree formula), valid for cycles on any finite index set."""
    return q_via_trees(sigma)


def delta(sigma: CyclicPermutation, i: int) -> MultilinearPolynomial:
    """Δ = ([x_i] Q_{σ⁻}) · ([x_{i+1}] Q_{σ⁺})."""
    minus, plus = split_by_transposition(sigma, i)
    return multiply_disjoint(
        coefficient_of(loop_polynomial(minus), i),
        coefficient_of(loop_polynomial(plus), i + 1),
    )


def exchange_step(q: MultilinearPolynomial, sigma: CyclicPermutation, i: int) -> MultilinearPolynomial:
    """Q_{s_i σ s_i} from Q_σ: B' = C + Δ, C' = B - Δ, A and D unchanged."""
    a, b, c, d = decompose(q, i)
    dl = delta(sigma, i)
    return recompose(a, c + dl, b - dl, d, i)


def generate_all(n: int, guard: int = GENERATE_GUARD) -> dict[CyclicPermutation, MultilinearPolynomial]:
    """Q for every cycle of length n by a breadth-first conjugation walk from (12...n)."""
    if n < 1 or n > guard:
        raise GuardExceeded(f"generate_all: n={n} outside 1..{guard}")
    seed = CyclicPermutation(tuple(range(1, n + 1)))
    table = {seed: q_via_trees(seed)}
    queue = deque([seed])
    while queue:
        sigma = queue.popleft()
        q = table[sigma]
        for i in range(1, n):
            conj = conjugate_by_adjacent(sigma, i)
            q_conj = exchange_step(q, sigma, i)
            if conj in table:
                if table[conj] != q_conj:
                    raise InconsistentPropagation(f"({conj}) reached with two different values via i={i}")
            else:
                table[conj] = q_conj
                queue.append(conj)
    return dict(sorted(table.items()))


def _standardize(sigma: CyclicPermutation) -> tuple[CyclicPermutation, dict[int, int]]:
    order = sorted(sigma.word)
    down = {v: j + 1 for j, v in enumerate(order)}
    return sigma.relabel(down), {j + 1: v for j, v in enumerate(order)}


def q_via_exchange(sigma: CyclicPermutation, k: int | None = None) -> MultilinearPolynomial:
    """Q_σ looked up in the conjugation walk over cycles of the same length."""
    _resolve_k(sigma, k)
    std, up = _standardize(sigma)
    q = _generated(len(sigma))[std]
    return MultilinearPolynomial({tuple(up[v] for v in m): c for m, c in q.items()})


@lru_cache(maxsize=None)
def _generated(n: int):
    return generate_all(n)


def compute(sigma: CyclicPermutation, k: int | None = None, algo: str = "trees") -> MultilinearPolynomial:
    if algo == "trees":
        return q_via_trees(sigma, k)
    if algo == "cumulants":
        return q_via_cumulants(sigma, k)
    if algo == "exchange":
        return q_via_exchange(sigma, k)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {', '.join(ALGORITHMS)}")


def _compute_word(args):
    word, algo = args
    return compute(CyclicPermutation(word), None, algo)


def compute_table(n: int, algo: str = "trees", jobs: int = 1) -> dict[CyclicPermutation, MultilinearPolynomial]:
    cycles = all_cycles(n)
    if algo == "exchange":
        return {s: q_via_exchange(s) for s in cycles}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_compute_word, [(s.word, algo) for s in cycles], chunksize=8))
    else:
        values = [compute(s, None, algo) for s in cycles]
    return dict(zip(cycles, values))


def equivalence_classes(
    n: int, algo: str = "trees", jobs: int = 1
) -> list[tuple[MultilinearPolynomial, list[CyclicPermutation]]]:
    """Cycles of length n grouped by their loop polynomial, ordered by representative."""
    groups: dict[MultilinearPolynomial, list[CyclicPermutation]] = {}
    for sigma, q in compute_table(n, algo, jobs).items():
        groups.setdefault(q, []).append(sigma)
    classes = [(q, sorted(members)) for q, members in groups.items()]
    classes.sort(key=lambda c: c[1][0])
    return classes


# ----------------------------------------------------------------------
# axiom verification
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    ok: bool
    condition: str
    sigma: CyclicPermutation
    i: int

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.condition} sigma={self.sigma} i={self.i}"


@dataclass
class VerificationReport:
    n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        out.append(f"CHECKS={len(self.checks)} FAILURES={len(self.failures)}")
        return out


BASE_CASES = {
    1: MultilinearPolynomial({(1,): 1}),
    2: MultilinearPolynomial({(1,): 1, (1, 2): -1}),
}


def _sigma_checks(n, sigma, q):
    checks = []
    squarefree = all(len(set(m)) == len(m) and set(m) <= set(range(1, n + 1)) for m in q.terms)
    checks.append(Check(squarefree, "multilinear", sigma, 0))
    if n in BASE_CASES:
        checks.append(Check(q == BASE_CASES[n], "base", sigma, 0))
    if n >= 2:
        boundary = all(1 in m for m in q.terms) and substitute_unit(q, n).is_zero()
        checks.append(Check(boundary, "boundary", sigma, 0))
    return checks


def _pair_checks(sigma, i, q, q_conj):
    a, b, c, d = decompose(q, i)
    a2, b2, c2, d2 = decompose(q_conj, i)
    dl = delta(sigma, i)
    return [
        Check(a == a2 and d == d2 and b + c == b2 + c2, "continuity", sigma, i),
        Check(b - c2 == dl and b2 - c == dl, "exchange", sigma, i),
        Check((b + b2) - (c + c2) == dl + dl, "exchange-doubled", sigma, i),
    ]


def verify_axioms(
    n: int,
    table: dict[CyclicPermutation, MultilinearPolynomial] | None = None,
    guard: int = VERIFY_GUARD,
    jobs: int = 1,
) -> VerificationReport:
    """Check every defining condition of the loop polynomials on all cycles of length n.

    ``table`` defaults to the tree formula; pass a modified table to confirm
    that a corrupted family is rejected.
    """
    if n < 1 or n > guard:
        raise GuardExceeded(f"verify_axioms: n={n} outside 1..{guard}")
    if table is None:
        table = compute_table(n, "trees", jobs)
    report = VerificationReport(n)
    for sigma in all_cycles(n):
        q = table[sigma]
        report.checks.extend(_sigma_checks(n, sigma, q))
        for i in range(1, n):
            report.checks.extend(_pair_checks(sigma, i, q, table[conjugate_by_adjacent(sigma, i)]))
    log.info("verified n=%d: %d checks, %d failures", n, len(report.checks), len(report.failures))
    return report
