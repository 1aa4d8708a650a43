"""Factorization sets Z_S(n) and the vector arithmetic on them."""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, NotAnElement
from .monoid import NumericalMonoid, new_monoid

logger = logging.getLogger(__name__)


class FactorizationVector(tuple):
    """Exponent vector (a_1, ..., a_k) aligned with a monoid's generators."""

    def __new__(cls, coefficients: Iterable[int]) -> "FactorizationVector":
        return super().__new__(cls, (int(a) for a in coefficients))

    @property
    def length(self) -> int:
        return sum(self)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, a in enumerate(self) if a)

    def gcd(self, other: Sequence[int]) -> "FactorizationVector":
        return gcd_vec(self, other)

    def distance(self, other: Sequence[int]) -> int:
        return distance(self, other)

    def evaluate(self, generators: Sequence[int]) -> int:
        return sum(a * g for a, g in zip(self, generators))


def _check_dimensions(left: Sequence[int], right: Sequence[int]) -> None:
    if len(left) != len(right):
        raise DimensionMismatch(f"vectors have {len(left)} and {len(right)} coordinates")


def length(vector: Sequence[int]) -> int:
    return sum(vector)


def gcd_vec(left: Sequence[int], right: Sequence[int]) -> FactorizationVector:
    _check_dimensions(left, right)
    return FactorizationVector(min(a, b) for a, b in zip(left, right))


def distance(left: Sequence[int], right: Sequence[int]) -> int:
    """max(|a - gcd(a,a')|, |a' - gcd(a,a')|)."""

    _check_dimensions(left, right)
    common = sum(min(a, b) for a, b in zip(left, right))
    return max(sum(left) - common, sum(right) - common)


# Enumeration -----------------------------------------------------------------
PrefixTest = Tuple[int, Optional[NumericalMonoid]]


@lru_cache(maxsize=128)
def _prefix_tests(generators: Tuple[int, ...]) -> Tuple[PrefixTest, ...]:
    """Membership tests for the submonoids generated by n_1..n_j, j = 1..k-1.

    A prefix generally has gcd d > 1, so r is representable iff d | r and r/d
    lies in the numerical monoid generated by the prefix divided by d.
    """

    tests: List[PrefixTest] = [(generators[0], None)]
    for j in range(2, len(generators)):
        prefix = generators[:j]
        divisor = math.gcd(*prefix)
        tests.append((divisor, new_monoid(g // divisor for g in prefix)))
    return tuple(tests)


def _representable(test: PrefixTest, value: int) -> bool:
    divisor, scaled = test
    if value % divisor:
        return False
    return scaled is None or scaled.contains(value // divisor)


def iter_factorizations(monoid: NumericalMonoid, n: int) -> Iterator[FactorizationVector]:
    """Stream Z_S(n) one vector at a time.

    Coefficients are chosen from the largest generator down; a branch is cut as
    soon as the remainder is not representable by the generators still unused.
    The order is deterministic but not lexicographic; ``factorizations`` sorts.
    """

    if n < 0 or not monoid.contains(n):
        return
    gens = monoid.generators
    tests = _prefix_tests(gens)
    coefficients = [0] * len(gens)

    def descend(j: int, remainder: int) -> Iterator[FactorizationVector]:
        if j == 0:
            coefficients[0] = remainder // gens[0]
            yield FactorizationVector(coefficients)
            return
        g = gens[j]
        below = tests[j - 1]
        for a in range(remainder // g, -1, -1):
            rest = remainder - a * g
            if _representable(below, rest):
                coefficients[j] = a
                yield from descend(j - 1, rest)
        coefficients[j] = 0

    yield from descend(len(gens) - 1, n)


def factorizations(monoid: NumericalMonoid, n: int) -> List[FactorizationVector]:
    """Z_S(n) in lexicographic order; empty when n is not in the monoid."""

    return sorted(iter_factorizations(monoid, n))


def factorization_matrix(vectors: Sequence[Sequence[int]]) -> np.ndarray:
    return np.asarray(vectors, dtype=np.int64).reshape(len(vectors), -1)


def shortest_length_within(
    monoid: NumericalMonoid, n: int, limit: Optional[int] = None
) -> Optional[int]:
    """Least |a| over Z_S(n) if some factorization has length <= ``limit``, else None.

    Branch and bound from the largest generator down. The remainder r left for
    n_1..n_j needs at least ceil(r / n_j) more atoms, and that bound only grows
    as the current coefficient shrinks, so a branch stops at the first miss.
    """

    gens = monoid.generators
    if limit is None:
        limit = n // gens[0]
    if n < 0 or limit < 0 or n > limit * gens[-1] or not monoid.contains(n):
        return None
    if n == 0:
        return 0
    tests = _prefix_tests(gens)
    best = limit + 1

    def descend(j: int, remainder: int, used: int) -> None:
        nonlocal best
        if j == 0:
            best = min(best, used + remainder // gens[0])
            return
        g, smaller = gens[j], gens[j - 1]
        for a in range(remainder // g, -1, -1):
            rest = remainder - a * g
            if used + a + -(-rest // smaller) >= best:
                break
            if _representable(tests[j - 1], rest):
                descend(j - 1, rest, used + a)

    descend(len(gens) - 1, n, 0)
    return best if best <= limit else None


def shortest_length(monoid: NumericalMonoid, n: int) -> int:
    if not monoid.contains(n):
        raise NotAnElement(f"{n} is not an element of {monoid}")
    shortest = shortest_length_within(monoid, n)
    assert shortest is not None
    return shortest
