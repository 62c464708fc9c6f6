import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from looppoly.combinatorics import all_cycles, enumerate_nc, one_block, set_partitions, singletons
from looppoly.cumulants import (
    classical_cumulant,
    numeric_free_cumulant_min,
    numeric_free_cumulant_recursive,
    sign_identity_check,
    symbolic_free_cumulant,
)
from looppoly.polynomial import evaluate
from printed import PRINTED, cycle

unit = st.fractions(0, 1, max_denominator=30)


def random_point(rng, n, denominator=97):
    return sorted(Fraction(rng.randint(0, denominator), denominator) for _ in range(n))


@pytest.mark.parametrize(
    "sigma, k, key",
    [(cycle(1), 1, (1,)), (cycle(1, 2), 2, (1, 2)), (cycle(1, 2, 3), 1, (1, 2, 3)), (cycle(1, 2, 3), 3, (1, 2, 3))],
)
def test_symbolic_small_cases(sigma, k, key):
    assert symbolic_free_cumulant(sigma, k) == PRINTED[key]


def test_symbolic_rejects_foreign_k():
    with pytest.raises(ValueError):
        symbolic_free_cumulant(cycle(1, 2, 3), 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_symbolic_k_independent(n):
    for s in all_cycles(n):
        values = {symbolic_free_cumulant(s, k) for k in s.word}
        assert len(values) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_symbolic_inverse_cycle(n):
    for s in all_cycles(n):
        assert symbolic_free_cumulant(s) == symbolic_free_cumulant(s.inverse())


def test_numeric_low_orders():
    a, b, c = Fraction(2, 5), Fraction(1, 7), Fraction(3, 4)
    assert numeric_free_cumulant_min([a]) == a
    assert numeric_free_cumulant_min([a, b]) == min(a, b) - a * b
    assert numeric_free_cumulant_recursive([a, b]) == min(a, b) - a * b
    # κ_3 = φ(abc) - φ(ab)φ(c) - φ(ac)φ(b) - φ(bc)φ(a) + 2φ(a)φ(b)φ(c)
    k3 = min(a, b, c) - min(a, b) * c - min(a, c) * b - min(b, c) * a + 2 * a * b * c
    assert numeric_free_cumulant_min([a, b, c]) == k3
    assert numeric_free_cumulant_recursive([a, b, c]) == k3


def test_numeric_matches_q12_on_ordered_points():
    a, b = Fraction(1, 3), Fraction(5, 6)
    assert numeric_free_cumulant_min([a, b]) == evaluate(PRINTED[(1, 2)], {1: a, 2: b})


def test_numeric_rejects_out_of_range():
    with pytest.raises(ValueError):
        numeric_free_cumulant_min([Fraction(3, 2)])
    with pytest.raises(ValueError):
        numeric_free_cumulant_recursive([Fraction(-1, 2), Fraction(1, 2)])


@settings(max_examples=100, deadline=None)
@given(st.lists(unit, min_size=1, max_size=6), st.integers(0, 5))
def test_numeric_paths_agree_and_rotate(u, shift):
    value = numeric_free_cumulant_min(u)
    assert numeric_free_cumulant_recursive(u) == value
    shift %= len(u)
    assert numeric_free_cumulant_min(u[shift:] + u[:shift]) == value


@pytest.mark.parametrize("n", range(1, 6))
def test_cumulant_of_ordered_point_is_loop_polynomial(n):
    rng = random.Random(n)
    for s in all_cycles(n):
        q = symbolic_free_cumulant(s)
        for _ in range(10):
            x = random_point(rng, n)
            point = dict(zip(range(1, n + 1), x))
            k = rng.choice(s.word)
            u = [point[j] for j in s.orbit(k)]
            assert evaluate(q, point) == numeric_free_cumulant_min(u)


# --- classical cumulants -----------------------------------------------


def random_moments(rng, n):
    from itertools import combinations

    return {
        c: Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        for r in range(1, n + 1)
        for c in combinations(range(1, n + 1), r)
    }


def test_classical_low_orders():
    m = {(1,): Fraction(2), (2,): Fraction(3), (1, 2): Fraction(10)}
    assert classical_cumulant(m, 1) == 2
    assert classical_cumulant(m, 2) == 10 - 2 * 3


@pytest.mark.parametrize("n", range(1, 6))
def test_classical_cumulants_reproduce_moments(n):
    rng = random.Random(100 + n)
    moments = random_moments(rng, n)
    total = Fraction(0)
    for part in set_partitions(range(1, n + 1)):
        term = Fraction(1)
        for b in part:
            term *= classical_cumulant(moments, sorted(b))
        total += term
    assert total == moments[tuple(range(1, n + 1))]


def test_classical_cumulants_of_constant_vanish():
    # a_1 = ... = a_4 = 1 almost surely
    assert classical_cumulant(lambda idx: Fraction(1), 1) == 1
    assert classical_cumulant(lambda idx: Fraction(1), 4) == 0


# --- sign identity -----------------------------------------------------


@pytest.mark.parametrize("n", range(1, 9))
def test_sign_identity(n):
    assert sign_identity_check(one_block(n))
    assert sign_identity_check(singletons(n))
    assert all(sign_identity_check(p) for p in enumerate_nc(n))
