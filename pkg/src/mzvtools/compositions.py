"""Exact combinatorics of integer compositions.

A composition is a non-empty tuple of positive integers.  Everything here is
exact integer arithmetic; :class:`Composition` is an immutable ``tuple``
subclass so it can be used as a dictionary key and compared with plain tuples.

>>> hoffman_dual((1, 1, 2, 1))
Composition(3, 2)
>>> mzv_dual_index((2, 2))
Composition(2, 2, 1)
"""

from __future__ import annotations

import itertools
import re
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import CompositionError

__all__ = [
    "Composition",
    "parse_composition",
    "format_composition",
    "weight",
    "depth",
    "is_admissible",
    "reverse",
    "hoffman_dual",
    "plus_first",
    "mzv_dual_index",
    "binom_product",
    "add",
    "enumerate_weak",
    "coarsenings",
    "refinements",
    "compositions_of",
    "compositions_up_to",
]


class Composition(tuple):
    """Immutable non-empty sequence of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Composition":
        if isinstance(parts, cls):
            return parts
        items = tuple(parts)
        if not items:
            raise CompositionError("empty composition")
        for p in items:
            if isinstance(p, bool) or int(p) != p or p < 1:
                raise CompositionError(f"composition parts must be positive integers, got {items!r}")
        return super().__new__(cls, (int(p) for p in items))

    def __repr__(self) -> str:
        return f"Composition({', '.join(map(str, self))})"

    def __str__(self) -> str:
        return format_composition(self)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def admissible(self) -> bool:
        return self[0] >= 2


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_composition(text: str | Sequence[int]) -> Composition:
    """Parse ``"1^3,2"`` / ``"(2,1,4)"`` style literals.

    ``a^r`` repeats the part ``a`` r times.  Sequences of ints pass straight
    through to :class:`Composition`.
    """
    if not isinstance(text, str):
        return Composition(text)
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts: list[int] = []
    for token in body.split(","):
        token = token.strip()
        m = _TOKEN.match(token)
        if m is None:
            raise CompositionError(f"cannot parse composition literal {text!r}")
        part = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) is not None else 1
        parts.extend([part] * reps)
    if not parts:
        raise CompositionError(f"empty composition literal {text!r}")
    return Composition(parts)


def format_composition(k: Sequence[int]) -> str:
    return ",".join(str(p) for p in k)


def weight(k: Sequence[int]) -> int:
    return sum(Composition(k))


def depth(k: Sequence[int]) -> int:
    return len(Composition(k))


def is_admissible(k: Sequence[int]) -> bool:
    return Composition(k)[0] >= 2


def reverse(k: Sequence[int]) -> Composition:
    return Composition(tuple(Composition(k))[::-1])


def _cut_points(k: Composition) -> set[int]:
    return set(itertools.accumulate(k[:-1]))


def _from_cut_points(total: int, cuts: Iterable[int]) -> Composition:
    edges = [0, *sorted(cuts), total]
    return Composition(b - a for a, b in zip(edges, edges[1:]))


def hoffman_dual(k: Sequence[int]) -> Composition:
    """Swap commas and plus signs in ``(1+...+1, ..., 1+...+1)``.

    The partial sums of ``k`` and of its dual partition ``{1, ..., |k|-1}``.
    """
    k = Composition(k)
    w = sum(k)
    return _from_cut_points(w, set(range(1, w)) - _cut_points(k))


def plus_first(k: Sequence[int]) -> Composition:
    k = Composition(k)
    return Composition((k[0] + 1, *k[1:]))


def mzv_dual_index(k: Sequence[int]) -> Composition:
    """Index of the dual MZV of ``k_+``: ``plus_first(hoffman_dual(reverse(k)))``."""
    return plus_first(hoffman_dual(reverse(k)))


def _weak(j: Sequence[int]) -> tuple[int, ...]:
    items = tuple(j)
    for p in items:
        if isinstance(p, bool) or int(p) != p or p < 0:
            raise CompositionError(f"weak composition parts must be non-negative integers, got {items!r}")
    return tuple(int(p) for p in items)


def binom_product(k: Sequence[int], j: Sequence[int]) -> int:
    """``prod_i C(k_i + j_i - 1, j_i)`` as an exact integer."""
    k = Composition(k)
    j = _weak(j)
    if len(k) != len(j):
        raise CompositionError(f"length mismatch: {len(k)} parts vs {len(j)} parts")
    out = 1
    for ki, ji in zip(k, j):
        out *= comb(ki + ji - 1, ji)
    return out


def add(k: Sequence[int], j: Sequence[int]) -> Composition:
    k = Composition(k)
    j = _weak(j)
    if len(k) != len(j):
        raise CompositionError(f"length mismatch: {len(k)} parts vs {len(j)} parts")
    return Composition(a + b for a, b in zip(k, j))


def _weak_desc(total: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _weak_desc(total - first, length - 1):
            yield (first, *rest)


def enumerate_weak(total: int, length: int) -> list[tuple[int, ...]]:
    """All weak compositions of ``total`` into ``length`` parts.

    Order is lexicographically descending, so ``(1, 0, 0)`` comes before
    ``(0, 1, 0)``.
    """
    if total < 0 or length < 1:
        raise CompositionError(f"need total >= 0 and length >= 1, got ({total}, {length})")
    return list(_weak_desc(total, length))


def coarsenings(k: Sequence[int]) -> list[Composition]:
    """All compositions obtained by merging adjacent blocks of ``k``.

    Ordered by number of merges, then by merge positions; ``k`` itself first.
    """
    k = Composition(k)
    cuts = sorted(_cut_points(k))
    w = sum(k)
    out = []
    for n_merge in range(len(cuts) + 1):
        for removed in itertools.combinations(cuts, n_merge):
            out.append(_from_cut_points(w, set(cuts) - set(removed)))
    return out


def compositions_of(n: int) -> list[Composition]:
    """All compositions of ``n``, by depth and then lexicographically descending."""
    if n < 1:
        raise CompositionError(f"need n >= 1, got {n}")
    out = []
    for d in range(1, n + 1):
        for j in _weak_desc(n - d, d):
            out.append(Composition(p + 1 for p in j))
    return out


def compositions_up_to(max_weight: int, *, admissible_only: bool = False) -> list[Composition]:
    out = []
    for w in range(1, max_weight + 1):
        out.extend(c for c in compositions_of(w) if not admissible_only or c[0] >= 2)
    return out


def refinements(k: Sequence[int]) -> list[Composition]:
    """All ``l`` such that ``k`` is a coarsening of ``l`` (``2**(|k|-dep(k))`` of them)."""
    k = Composition(k)
    out = []
    for pieces in itertools.product(*(compositions_of(p) for p in k)):
        out.append(Composition(itertools.chain.from_iterable(pieces)))
    return out
