"""Cyclic permutations, set partitions and the non-crossing partition lattice.

Conventions used throughout the package:

* a cycle is stored as its word ``k, σ(k), σ²(k), ...`` rotated so that it
  starts at the minimum of its support;
* ``s_i σ`` means "apply σ first, then the transposition (i i+1)";
* partitions keep their blocks sorted by minimum, elements ascending;
* in the Kreweras complement the primed point ``i'`` sits on the circle
  just before the point ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator, Sequence

NC_GUARD = 12
LATTICE_GUARD = 8


class GuardExceeded(ValueError):
    """Raised when a request exceeds a desk-scale enumeration bound."""


def _check_guard(n: int, limit: int, what: str) -> None:
    if n < 1 or n > limit:
        raise GuardExceeded(f"{what}: n={n} outside supported range 1..{limit}")


# ----------------------------------------------------------------------
# cyclic permutations
# ----------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CyclicPermutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if not word:
            raise ValueError("empty cycle word")
        if len(set(word)) != len(word):
            raise ValueError(f"repeated entries in cycle word {list(word)}")
        if any(x < 1 for x in word):
            raise ValueError(f"cycle entries must be positive: {list(word)}")
        m = word.index(min(word))
        object.__setattr__(self, "word", word[m:] + word[:m])

    @classmethod
    def parse(cls, text: str) -> "CyclicPermutation":
        """Read ``"2,4,1"`` (or ``"(2,4,1)"``) as a cycle word."""
        body = text.strip().strip("()")
        try:
            return cls(tuple(int(tok) for tok in body.split(",") if tok.strip()))
        except ValueError as exc:
            raise ValueError(f"malformed cycle {text!r}: {exc}") from None

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __call__(self, x: int) -> int:
        w = self.word
        return w[(w.index(x) + 1) % len(w)]

    def orbit(self, k: int) -> tuple[int, ...]:
        """``(σ(k), σ²(k), ..., σⁿ(k) = k)``."""
        w = self.word
        j = w.index(k)
        n = len(w)
        return tuple(w[(j + s) % n] for s in range(1, n + 1))

    def inverse(self) -> "CyclicPermutation":
        return CyclicPermutation(self.word[::-1])

    def relabel(self, mapping) -> "CyclicPermutation":
        return CyclicPermutation(tuple(mapping.get(x, x) for x in self.word))

    def __str__(self) -> str:
        return ",".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"CyclicPermutation({self})"


def canonicalize_cycle(word: Sequence[int]) -> CyclicPermutation:
    return CyclicPermutation(tuple(word))


def _require_adjacent(sigma: CyclicPermutation, i: int) -> None:
    if i not in sigma.support or i + 1 not in sigma.support:
        raise ValueError(f"{i} and {i + 1} must both lie in the support of ({sigma})")


def conjugate_by_adjacent(sigma: CyclicPermutation, i: int) -> CyclicPermutation:
    """``s_i σ s_i``: swap the labels i and i+1 in the word."""
    _require_adjacent(sigma, i)
    return sigma.relabel({i: i + 1, i + 1: i})


def split_by_transposition(
    sigma: CyclicPermutation, i: int
) -> tuple[CyclicPermutation, CyclicPermutation]:
    """Return ``(σ⁻, σ⁺)``, the two cycles of ``s_i σ``.

    ``σ⁻`` is the one containing ``i``, ``σ⁺`` the one containing ``i+1``;
    fixed points come back as singleton cycles.
    """
    _require_adjacent(sigma, i)
    swap = {i: i + 1, i + 1: i}

    def step(x: int) -> int:
        y = sigma(x)
        return swap.get(y, y)

    def cycle_of(start: int) -> CyclicPermutation:
        out = [start]
        x = step(start)
        while x != start:
            out.append(x)
            x = step(x)
        return CyclicPermutation(tuple(out))

    return cycle_of(i), cycle_of(i + 1)


def all_cycles(n: int) -> list[CyclicPermutation]:
    """The (n-1)! cycles on {1..n}, in lexicographic order of their words."""
    if n < 1:
        raise ValueError("n must be positive")
    return [CyclicPermutation((1,) + rest) for rest in permutations(range(2, n + 1))]


# ----------------------------------------------------------------------
# set partitions
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SetPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(x) for x in b)) for b in self.blocks))
        if any(not b for b in blocks):
            raise ValueError("empty block")
        flat = [x for b in blocks for x in b]
        if sorted(flat) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None):
        blocks = [tuple(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, tuple(blocks))

    @classmethod
    def _trusted(cls, n: int, blocks: tuple[tuple[int, ...], ...]):
        # blocks already canonical and valid; skips the O(|blocks|^2) checks
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def labels(self) -> tuple[int, ...]:
        """Block index of each element 1..n (restricted growth form)."""
        lab = [0] * self.n
        for j, b in enumerate(self.blocks):
            for x in b:
                lab[x - 1] = j
        return tuple(lab)

    def refines(self, other: "SetPartition") -> bool:
        """``self <= other`` in refinement order (every block inside one of other's)."""
        if self.n != other.n:
            return False
        lo = other.labels()
        return all(len({lo[x - 1] for x in b}) == 1 for b in self.blocks)

    def rotate(self, shift: int = 1) -> "SetPartition":
        n = self.n
        return type(self)(n, tuple(tuple((x - 1 + shift) % n + 1 for x in b) for b in self.blocks))

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def _crossing(blocks: Sequence[Sequence[int]]) -> bool:
    for j, a in enumerate(blocks):
        for b in blocks[j + 1 :]:
            # merge the two blocks; they cross iff the owner sequence has >= 4 runs
            tags = [t for _, t in sorted([(x, 0) for x in a] + [(x, 1) for x in b])]
            runs = 1 + sum(1 for u, v in zip(tags, tags[1:]) if u != v)
            if runs >= 4:
                return True
    return False


def is_noncrossing(p: SetPartition) -> bool:
    return not _crossing(p.blocks)


class NonCrossingPartition(SetPartition):
    def __post_init__(self):
        super().__post_init__()
        if _crossing(self.blocks):
            raise ValueError(f"partition {self} is crossing")


def one_block(n: int) -> NonCrossingPartition:
    return NonCrossingPartition(n, (tuple(range(1, n + 1)),))


def singletons(n: int) -> NonCrossingPartition:
    return NonCrossingPartition(n, tuple((x,) for x in range(1, n + 1)))


def set_partitions(elements: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``elements`` (Bell-many), blocks in order of first element."""
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for j in range(len(part)):
            yield part[:j] + [[first] + part[j]] + part[j + 1 :]


def _nc_blocks(lo: int, hi: int) -> list[list[tuple[int, ...]]]:
    """Non-crossing partitions of the interval lo..hi as block lists."""
    if lo > hi:
        return [[]]
    out = []
    rest = list(range(lo + 1, hi + 1))
    # choose the block of lo; gaps between its elements are filled independently
    for r in range(len(rest) + 1):
        for tail in combinations(rest, r):
            block = (lo,) + tail
            bounds = list(block) + [hi + 1]
            pieces = [[[block]]]
            for a, b in zip(bounds, bounds[1:]):
                pieces.append(_nc_blocks(a + 1, b - 1))
            combos = [[]]
            for options in pieces:
                combos = [c + o for c in combos for o in options]
            out.extend(combos)
    return out


@lru_cache(maxsize=None)
def _enumerate_nc(n: int) -> tuple[NonCrossingPartition, ...]:
    parts = [NonCrossingPartition._trusted(n, tuple(sorted(b))) for b in _nc_blocks(1, n)]
    parts.sort(key=lambda p: p.labels())
    return tuple(parts)


def enumerate_nc(n: int) -> list[NonCrossingPartition]:
    """NC(n), sorted by restricted growth string."""
    _check_guard(n, NC_GUARD, "enumerate_nc")
    return list(_enumerate_nc(n))


# ----------------------------------------------------------------------
# Kreweras complement and Möbius function
# ----------------------------------------------------------------------


def kreweras(p: SetPartition) -> NonCrossingPartition:
    """Kreweras complement with primed point i' placed just before i.

    Computed as the standard complement (primes after the points) followed by a
    shift of labels by one.
    """
    if not isinstance(p, NonCrossingPartition):
        p = NonCrossingPartition(p.n, p.blocks)
    n = p.n
    prev = {}
    for b in p.blocks:
        for j, x in enumerate(b):
            prev[b[(j + 1) % len(b)]] = x
    seen: set[int] = set()
    blocks = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x % n + 1)
            x = prev[x % n + 1]
        blocks.append(tuple(cyc))
    return NonCrossingPartition(n, tuple(blocks))


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan: n must be nonnegative")
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def small_schroeder(n: int) -> int:
    """Number of Schröder trees with n leaves (1, 1, 3, 11, 45, 197, ...)."""
    if n < 1:
        raise ValueError("small_schroeder: n must be positive")
    if n <= 2:
        return 1
    # (m+1) s_{m+1} = 3(2m-1) s_m - (m-2) s_{m-1}, applied with m = n-1
    m = n - 1
    value, rem = divmod(3 * (2 * m - 1) * small_schroeder(m) - (m - 2) * small_schroeder(m - 1), m + 1)
    assert rem == 0
    return value


def mobius_nc(p: SetPartition) -> int:
    """μ(p, 1_n) from the signed-Catalan product over the blocks of K(p)."""
    out = 1
    for b in kreweras(p).blocks:
        out *= (-1) ** (len(b) - 1) * catalan(len(b) - 1)
    return out


@lru_cache(maxsize=None)
def _lattice_mobius(n: int) -> dict[NonCrossingPartition, int]:
    parts = sorted(_enumerate_nc(n), key=len)  # coarsest first
    labels = {q: q.labels() for q in parts}
    mu: dict[NonCrossingPartition, int] = {}
    for x in parts:
        if len(x) == 1:
            mu[x] = 1
            continue
        lx = labels[x]
        total = 0
        for y, my in mu.items():
            # x < y strictly: y coarser, so y's label is constant on x's blocks
            ly = labels[y]
            if len(set(zip(lx, ly))) == len(x):
                total += my
        mu[x] = -total
    return mu


def mobius_via_lattice(p: SetPartition) -> int:
    """μ(p, 1_n) by direct inversion of the zeta matrix of NC(n)."""
    _check_guard(p.n, LATTICE_GUARD, "mobius_via_lattice")
    return _lattice_mobius(p.n)[NonCrossingPartition(p.n, p.blocks)]


# K∘K relabels every π by x -> x + KK_ROTATION (mod n); found by direct search for n <= 7.
KK_ROTATION = 1
