"""Exact multilinear polynomials with integer coefficients.

A monomial is a sorted tuple of variable indices (``()`` is the constant
term). Products are only defined between polynomials in disjoint variables,
so squarefreeness is preserved without any reduction rule.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class OverlappingSupport(ValueError):
    pass


class MultilinearPolynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None):
        acc: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            key = tuple(sorted(mono))
            if len(set(key)) != len(key):
                raise ValueError(f"monomial {key} is not squarefree")
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> "MultilinearPolynomial":
        obj = cls.__new__(cls)
        obj._terms = {m: c for m, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "MultilinearPolynomial":
        return cls._raw({(): c})

    @classmethod
    def var(cls, i: int) -> "MultilinearPolynomial":
        return cls._raw({(i,): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms in lexicographic order of their index lists."""
        return sorted(self._terms.items())

    def graded_items(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def variables(self) -> frozenset[int]:
        return frozenset(i for m in self._terms for i in m)

    def coefficients(self) -> list[int]:
        return [c for _, c in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultilinearPolynomial.const(other)
        if not isinstance(other, MultilinearPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MultilinearPolynomial({to_text(self)!r})"

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultilinearPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return multiply_disjoint(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented


def _coerce(p) -> MultilinearPolynomial:
    if isinstance(p, MultilinearPolynomial):
        return p
    if isinstance(p, int):
        return MultilinearPolynomial.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


ZERO = MultilinearPolynomial()
ONE = MultilinearPolynomial.const(1)


def add(p: MultilinearPolynomial, q: MultilinearPolynomial) -> MultilinearPolynomial:
    return p + q


def subtract(p: MultilinearPolynomial, q: MultilinearPolynomial) -> MultilinearPolynomial:
    return p - q


def negate(p: MultilinearPolynomial) -> MultilinearPolynomial:
    return -p


def scale(p: MultilinearPolynomial, c: int) -> MultilinearPolynomial:
    return MultilinearPolynomial._raw({m: c * v for m, v in p._terms.items()})


def multiply_disjoint(p: MultilinearPolynomial, q: MultilinearPolynomial) -> MultilinearPolynomial:
    """Product of two polynomials that share no variable."""
    p, q = _coerce(p), _coerce(q)
    common = p.variables() & q.variables()
    if common:
        raise OverlappingSupport(f"factors share variables {sorted(common)}")
    out: dict[Monomial, int] = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in q._terms.items():
            m = tuple(sorted(m1 + m2))
            out[m] = out.get(m, 0) + c1 * c2
    return MultilinearPolynomial._raw(out)


def coefficient_of(p: MultilinearPolynomial, i: int) -> MultilinearPolynomial:
    """``[x_i] p`` as a polynomial in the remaining variables."""
    out = {}
    for m, c in p._terms.items():
        if i in m:
            out[tuple(v for v in m if v != i)] = c
    return MultilinearPolynomial._raw(out)


def without(p: MultilinearPolynomial, i: int) -> MultilinearPolynomial:
    """The part of p free of x_i (p at x_i = 0)."""
    return MultilinearPolynomial._raw({m: c for m, c in p._terms.items() if i not in m})


def substitute_unit(p: MultilinearPolynomial, i: int) -> MultilinearPolynomial:
    """p with x_i set to 1."""
    out: dict[Monomial, int] = {}
    for m, c in p._terms.items():
        key = tuple(v for v in m if v != i)
        out[key] = out.get(key, 0) + c
    return MultilinearPolynomial._raw(out)


def decompose(p: MultilinearPolynomial, i: int, j: int | None = None):
    """Split p as ``A + x_i B + x_j C + x_i x_j D`` (j defaults to i+1)."""
    if j is None:
        j = i + 1
    parts: list[dict[Monomial, int]] = [{}, {}, {}, {}]
    for m, c in p._terms.items():
        slot = (i in m) + 2 * (j in m)
        parts[slot][tuple(v for v in m if v != i and v != j)] = c
    a, b, cc, d = (MultilinearPolynomial._raw(t) for t in parts)
    return a, b, cc, d


def recompose(a, b, c, d, i: int, j: int | None = None) -> MultilinearPolynomial:
    if j is None:
        j = i + 1
    xi, xj = MultilinearPolynomial.var(i), MultilinearPolynomial.var(j)
    return a + xi * b + xj * c + multiply_disjoint(xi, xj) * d


def evaluate(p: MultilinearPolynomial, point: Mapping[int, Fraction | int]) -> Fraction:
    missing = p.variables() - set(point)
    if missing:
        raise KeyError(f"no value given for variables {sorted(missing)}")
    total = Fraction(0)
    for m, c in p._terms.items():
        term = Fraction(c)
        for v in m:
            term *= point[v]
        total += term
    return total


def abs_coeff_sum(p: MultilinearPolynomial) -> int:
    return sum(abs(c) for c in p._terms.values())


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------


def _signed_terms(p, var, sep, with_spaces):
    if p.is_zero():
        return "0"
    chunks = []
    for k, (m, c) in enumerate(p.graded_items()):
        mag = abs(c)
        body = sep.join(var(v) for v in m)
        if not m:
            body = str(mag)
        elif mag != 1:
            body = f"{mag}{sep if with_spaces else ''}{body}"
        if k == 0:
            chunks.append(("-" if c < 0 else "") + body)
        elif with_spaces:
            chunks.append(("- " if c < 0 else "+ ") + body)
        else:
            chunks.append(("-" if c < 0 else "+") + body)
    return (" " if with_spaces else "").join(chunks)


def to_text(p: MultilinearPolynomial) -> str:
    """``x_1 - 2 x_1 x_2``; terms by degree, then lexicographically."""
    return _signed_terms(p, lambda v: f"x_{v}", " ", True)


def to_latex(p: MultilinearPolynomial) -> str:
    return _signed_terms(p, lambda v: f"x_{{{v}}}", "", False)


def to_json_obj(p: MultilinearPolynomial, n: int | None = None, sigma=None) -> dict:
    obj: dict = {}
    if n is not None:
        obj["n"] = n
    if sigma is not None:
        obj["sigma"] = list(sigma)
    obj["terms"] = [{"vars": list(m), "coeff": c} for m, c in p.items()]
    return obj


def from_json_obj(obj: Mapping) -> MultilinearPolynomial:
    return MultilinearPolynomial({tuple(t["vars"]): t["coeff"] for t in obj["terms"]})


FORMATS = ("text", "latex", "json")


def serialize(p: MultilinearPolynomial, format: str = "text", n=None, sigma=None) -> str:
    if format == "text":
        return to_text(p)
    if format == "latex":
        return to_latex(p)
    if format == "json":
        return json.dumps(to_json_obj(p, n, sigma))
    raise ValueError(f"unknown format {format!r}; expected one of {', '.join(FORMATS)}")


def product(factors: Iterable[MultilinearPolynomial]) -> MultilinearPolynomial:
    out = ONE
    for f in factors:
        out = multiply_disjoint(out, f)
    return out


def linear(const: int, coeffs: Mapping[Iterable[int], int]) -> MultilinearPolynomial:
    """Shorthand used for factored forms, e.g. ``linear(1, {(2,): -3, (2, 3): 5})``."""
    terms = {(): const}
    terms.update({tuple(k): v for k, v in coeffs.items()})
    return MultilinearPolynomial(terms)
