"""Schröder trees, their corner partitions, and polygon dissections.

Trees are plain nested tuples: a leaf is ``()`` and an internal vertex is the
tuple of its (at least two) children, left to right. Text form::

    tree := "*" | "(" tree (" " tree)+ ")"
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .combinatorics import (
    CyclicPermutation,
    GuardExceeded,
    NonCrossingPartition,
    SetPartition,
)

Tree = tuple
LEAF: Tree = ()
TREE_GUARD = 10


def is_leaf(t: Tree) -> bool:
    return len(t) == 0


@lru_cache(maxsize=None)
def n_leaves(t: Tree) -> int:
    if not t:
        return 1
    return sum(n_leaves(c) for c in t)


def n_internal(t: Tree) -> int:
    if not t:
        return 0
    return 1 + sum(n_internal(c) for c in t)


def format_tree(t: Tree) -> str:
    if not t:
        return "*"
    return "(" + " ".join(format_tree(c) for c in t) + ")"


def parse_tree(text: str) -> Tree:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of tree {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "*":
            return LEAF
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r} in tree {text!r}")
        children = []
        while pos < len(tokens) and tokens[pos] != ")":
            children.append(node())
        if pos >= len(tokens):
            raise ValueError(f"unbalanced parentheses in {text!r}")
        pos += 1
        if len(children) < 2:
            raise ValueError(f"internal vertex with fewer than 2 children in {text!r}")
        return tuple(children)

    t = node()
    if pos != len(tokens):
        raise ValueError(f"trailing input in tree {text!r}")
    return t


def _compositions(n: int, parts_min: int = 2) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of n with at least ``parts_min`` parts."""

    def rec(rem: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(1, rem + 1):
            for tail in rec(rem - first):
                yield (first,) + tail

    for comp in rec(n):
        if len(comp) >= parts_min:
            yield comp


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (LEAF,)
    out: list[Tree] = []
    for comp in _compositions(n):
        combos: list[Tree] = [()]
        for size in comp:
            combos = [c + (s,) for c in combos for s in _trees(size)]
        out.extend(combos)
    out.sort(key=lambda t: (n_leaves(t[0]), format_tree(t)))
    return tuple(out)


def enumerate_trees(n_leaves: int, guard: int = TREE_GUARD) -> list[Tree]:
    if n_leaves < 1 or n_leaves > guard:
        raise GuardExceeded(f"enumerate_trees: {n_leaves} leaves outside 1..{guard}")
    return list(_trees(n_leaves))


def is_prime(t: Tree) -> bool:
    if not t:
        raise ValueError("primality is undefined for the single-leaf tree")
    return is_leaf(t[-1])


@lru_cache(maxsize=None)
def prime_trees(m: int) -> tuple[Tree, ...]:
    """Prime Schröder trees with m >= 2 leaves, in enumeration order."""
    if m < 2:
        raise ValueError("prime trees need at least 2 leaves")
    if m > TREE_GUARD:
        raise GuardExceeded(f"prime_trees: {m} leaves exceeds {TREE_GUARD}")
    return tuple(t for t in _trees(m) if is_leaf(t[-1]))


# ----------------------------------------------------------------------
# corners
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def corner_groups(t: Tree) -> tuple[tuple[int, ...], ...]:
    """Corner labels (1..n-1) owned by each internal vertex, vertices in preorder.

    The corner between children c_j and c_{j+1} gets the next label as soon as
    the subtree c_j has been fully explored.
    """
    if not t:
        raise ValueError("the single-leaf tree has no corners")
    groups: list[list[int]] = []
    counter = 0

    def visit(node: Tree) -> None:
        nonlocal counter
        mine: list[int] = []
        groups.append(mine)
        for j, child in enumerate(node):
            if child:
                visit(child)
            if j < len(node) - 1:
                counter += 1
                mine.append(counter)

    visit(t)
    return tuple(tuple(g) for g in groups)


def label_corners(t: Tree) -> list[int]:
    """``out[c-1]`` is the preorder index of the internal vertex owning corner c."""
    groups = corner_groups(t)
    owner = [0] * sum(len(g) for g in groups)
    for v, g in enumerate(groups):
        for c in g:
            owner[c - 1] = v
    return owner


def tree_partition(t: Tree) -> NonCrossingPartition:
    """π(t): corner labels grouped by owning vertex."""
    groups = corner_groups(t)
    return NonCrossingPartition(n_leaves(t) - 1, groups)


def leaf_forest_partition(t: Tree) -> SetPartition:
    """Leaves (numbered left to right) connected after every vertex keeps only
    its first and last edge."""
    counter = 0
    comps: dict[int, list[int]] = defaultdict(list)
    fresh = iter(range(10**9))

    def visit(node: Tree, comp: int) -> None:
        nonlocal counter
        if not node:
            counter += 1
            comps[comp].append(counter)
            return
        last = len(node) - 1
        for j, child in enumerate(node):
            visit(child, comp if j in (0, last) else next(fresh))

    visit(t, next(fresh))
    return SetPartition(counter, tuple(tuple(v) for v in comps.values()))


@lru_cache(maxsize=None)
def _prime_index(n: int) -> dict[NonCrossingPartition, tuple[Tree, ...]]:
    index: dict[NonCrossingPartition, list[Tree]] = defaultdict(list)
    for t in prime_trees(n + 1):
        index[tree_partition(t)].append(t)
    return {k: tuple(v) for k, v in index.items()}


def prime_trees_for_partition(pi: SetPartition) -> list[Tree]:
    """Prime trees with n+1 leaves whose corner partition is pi."""
    key = NonCrossingPartition(pi.n, pi.blocks)
    return list(_prime_index(pi.n).get(key, ()))


# ----------------------------------------------------------------------
# monomials
# ----------------------------------------------------------------------


def corner_minima(t: Tree, labels: tuple[int, ...]) -> list[int]:
    """Smallest corner label at each internal vertex; ``labels[c-1]`` labels corner c."""
    return [min(labels[c - 1] for c in g) for g in corner_groups(t)]


class SignedMonomial(NamedTuple):
    sign: int
    variables: tuple[int, ...]


def tree_monomial(t: Tree, k: int, sigma: CyclicPermutation) -> SignedMonomial:
    """The monomial ∏_v (-x_{i(v)}) with i(v) the smallest corner label at v.

    Corners are labelled σ(k), σ²(k), ..., k from left to right.
    """
    if not t or not is_prime(t):
        raise ValueError("tree_monomial needs a prime tree")
    if n_leaves(t) != len(sigma) + 1:
        raise ValueError(f"tree has {n_leaves(t)} leaves, cycle has length {len(sigma)}")
    if k not in sigma.support:
        raise ValueError(f"k={k} is not in the support of ({sigma})")
    mins = corner_minima(t, sigma.orbit(k))
    variables = tuple(sorted(mins))
    if len(set(variables)) != len(variables):
        raise AssertionError("vertex minima collided")
    return SignedMonomial((-1) ** len(variables), variables)


# ----------------------------------------------------------------------
# dissections
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Dissection:
    """Diagonals of a convex polygon with vertices 1..polygon_size, clockwise."""

    polygon_size: int
    diagonals: frozenset[tuple[int, int]]

    def __post_init__(self):
        N = self.polygon_size
        if N < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        diags = frozenset(tuple(sorted(d)) for d in self.diagonals)
        for a, b in diags:
            if not (1 <= a < b <= N):
                raise ValueError(f"({a},{b}) is not a pair of distinct polygon vertices")
            if b - a == 1 or (a, b) == (1, N):
                raise ValueError(f"({a},{b}) joins adjacent vertices")
        for a, b in diags:
            for c, d in diags:
                if a < c < b < d:
                    raise ValueError(f"diagonals ({a},{b}) and ({c},{d}) cross")
        object.__setattr__(self, "diagonals", diags)

    def touches(self, v: int) -> bool:
        return any(v in d for d in self.diagonals)


def tree_to_dissection(t: Tree) -> Dissection:
    """Dual dissection of the (n+1)-gon; the root face contains edge [n, n+1]."""
    if not t:
        raise ValueError("the single-leaf tree has no dual dissection")
    n = n_leaves(t)
    top = n + 1
    diagonals = set()
    counter = 0

    def visit(node: Tree, is_root: bool) -> None:
        nonlocal counter
        if not node:
            counter += 1
            return
        first = counter + 1
        for child in node:
            visit(child, False)
        if not is_root:
            lo = first - 1 or top
            diagonals.add((min(lo, counter), max(lo, counter)))

    visit(t, True)
    return Dissection(top, frozenset(diagonals))


def dissection_to_tree(d: Dissection) -> Tree:
    N = d.polygon_size
    n = N - 1
    # vertex N is written 0 so that the base edge [n, N] closes the range 0..n
    reach: dict[int, set[int]] = defaultdict(set)
    for a, b in d.diagonals:
        a, b = (0 if a == N else a), (0 if b == N else b)
        a, b = min(a, b), max(a, b)
        reach[a].add(b)

    def face(lo: int, hi: int) -> Tree:
        children = []
        cur = lo
        while cur < hi:
            ends = [v for v in reach[cur] if v <= hi and (cur, v) != (lo, hi)]
            if ends:
                nxt = max(ends)
                children.append(face(cur, nxt))
            else:
                nxt = cur + 1
                children.append(LEAF)
            cur = nxt
        return tuple(children)

    return face(0, n)
