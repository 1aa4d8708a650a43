"""Numerical monoids: validated minimal generators, membership, Apéry sets."""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import (
    EmptyInput,
    IntegerOverflow,
    InvalidGenerator,
    NotAnElement,
    NotCofinite,
)

logger = logging.getLogger(__name__)

INT64_MAX = 2**63 - 1


def check_int64(value: int, what: str = "value") -> int:
    if abs(value) > INT64_MAX:
        raise IntegerOverflow(f"{what} {value} does not fit in a signed 64-bit integer")
    return value


def checked_mul(left: int, right: int, what: str = "product") -> int:
    return check_int64(left * right, what)


def parse_generators(raw: str) -> List[int]:
    """Parse a comma-separated generator list such as ``"3,8,13"``."""

    values: List[int] = []
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(int(token))
        except ValueError as exc:
            raise InvalidGenerator(f"not an integer: {token!r}") from exc
    return values


def coin_table(generators: Sequence[int], bound: int) -> np.ndarray:
    """Boolean table of the values 0..bound reachable as sums of ``generators``.

    Unbounded coin-change DP, one pass per generator. Within a pass entry i only
    reads entry i - g, which lives in the previous block of width g, so each
    block is updated with one vectorized OR.
    """

    size = bound + 1
    table = np.zeros(size, dtype=bool)
    if size <= 0:
        return table
    table[0] = True
    for g in generators:
        for start in range(g, size, g):
            stop = min(start + g, size)
            table[start:stop] |= table[start - g:stop - g]
    return table


def minimal_generators(raw: Iterable[int]) -> Tuple[int, ...]:
    """Reduce a generating list to the unique minimal generating set."""

    values = sorted(set(raw))
    kept = list(values)
    # largest first; only smaller generators can represent g
    for g in reversed(values):
        smaller = [x for x in kept if x < g]
        if smaller and coin_table(smaller, g)[g]:
            kept.remove(g)
    return tuple(kept)


def apery_residues(generators: Sequence[int], modulus: int) -> List[int]:
    """Smallest element of the monoid in each residue class mod ``modulus``.

    Shortest paths on the residue graph: r -> r + g (mod modulus) costs g.
    The generators must have gcd 1 so every class is reached.
    """

    dist = [-1] * modulus
    dist[0] = 0
    heap: List[Tuple[int, int]] = [(0, 0)]
    steps = sorted({g for g in generators if g % modulus})
    while heap:
        value, residue = heapq.heappop(heap)
        if value > dist[residue]:
            continue
        for g in steps:
            nxt = (residue + g) % modulus
            candidate = value + g
            current = dist[nxt]
            if current < 0 or candidate < current:
                dist[nxt] = candidate
                heapq.heappush(heap, (candidate, nxt))
    if min(dist) < 0:
        raise NotCofinite(f"generators {tuple(generators)} do not reach every class mod {modulus}")
    return dist


@dataclass(frozen=True)
class NumericalMonoid:
    """The monoid S = <n_1, ..., n_k> given by its minimal generators.

    ``provenance`` records how a monoid was built (a gluing, an adjoin step or a
    realization base case); it takes no part in equality or hashing.
    """

    generators: Tuple[int, ...]
    provenance: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        gens = tuple(int(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise EmptyInput("a numerical monoid needs at least one generator")
        for g in gens:
            if g < 1:
                raise InvalidGenerator(f"generators must be positive, got {g}")
            check_int64(g, "generator")
        if any(a >= b for a, b in zip(gens, gens[1:])):
            raise InvalidGenerator(f"generators must be strictly increasing: {gens}")
        if math.gcd(*gens) != 1:
            raise NotCofinite(f"gcd{gens} = {math.gcd(*gens)}, complement is infinite")
        if minimal_generators(gens) != gens:
            raise InvalidGenerator(f"generators {gens} are not minimal; use new_monoid()")

    # Basic shape -------------------------------------------------------------
    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def embedding_dimension(self) -> int:
        return len(self.generators)

    @property
    def largest_generator(self) -> int:
        return self.generators[-1]

    # Derived data ------------------------------------------------------------
    @cached_property
    def _apery_min(self) -> List[int]:
        logger.debug("Computing Apéry set of %s with respect to %d", self, self.multiplicity)
        return apery_residues(self.generators, self.multiplicity)

    @cached_property
    def frobenius(self) -> int:
        return max(self._apery_min) - self.multiplicity

    @cached_property
    def membership_table(self) -> np.ndarray:
        """Membership of 0 .. frobenius + n_k as a boolean array."""

        size = self.frobenius + self.largest_generator + 1
        index = np.arange(size, dtype=np.int64)
        apery = np.asarray(self._apery_min, dtype=np.int64)
        return index >= apery[index % self.multiplicity]

    # Queries -----------------------------------------------------------------
    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        return self._apery_min[n % self.multiplicity] <= n

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and self.contains(n)

    def apery_set(self, m: int) -> List[int]:
        if m <= 0 or not self.contains(m):
            raise NotAnElement(f"{m} is not a nonzero element of {self}")
        if m == self.multiplicity:
            return sorted(self._apery_min)
        return sorted(apery_residues(self.generators, m))

    def gaps(self) -> List[int]:
        return [n for n in range(1, self.frobenius + 1) if not self.contains(n)]

    def elements_up_to(self, bound: int) -> List[int]:
        return [n for n in range(0, bound + 1) if self.contains(n)]

    # Serialization -----------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        return {"generators": list(self.generators), "frobenius": self.frobenius}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "NumericalMonoid":
        return new_monoid(payload["generators"])

    def __str__(self) -> str:
        return "⟨" + ",".join(str(g) for g in self.generators) + "⟩"


def new_monoid(raw_generators: Iterable[int], provenance: Any = None) -> NumericalMonoid:
    raw = [int(g) for g in raw_generators]
    if not raw:
        raise EmptyInput("generator list is empty")
    for g in raw:
        if g < 1:
            raise InvalidGenerator(f"generators must be positive, got {g}")
        check_int64(g, "generator")
    divisor = math.gcd(*raw)
    if divisor != 1:
        raise NotCofinite(f"gcd{tuple(sorted(set(raw)))} = {divisor}, complement is infinite")
    return NumericalMonoid(minimal_generators(raw), provenance=provenance)


def contains(monoid: NumericalMonoid, n: int) -> bool:
    return monoid.contains(n)


def frobenius(monoid: NumericalMonoid) -> int:
    return monoid.frobenius


def apery_set(monoid: NumericalMonoid, m: int) -> List[int]:
    return monoid.apery_set(m)
