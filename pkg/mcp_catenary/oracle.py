"""Definition-level reference implementations.

Slow on purpose: no pruning, no spanning trees, no Apéry sets. Tests and
``--use-oracle`` compare the optimized modules against these.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Callable, List, Sequence, Set

from .config import DEFAULT_CONFIG, CatenaryConfig
from .errors import CapExceeded, NotAnElement
from .factorization import FactorizationVector, distance
from .monoid import NumericalMonoid

logger = logging.getLogger(__name__)


def _check_value(n: int, config: CatenaryConfig) -> None:
    if n > config.oracle_value_cap:
        raise CapExceeded(f"oracle refuses values above {config.oracle_value_cap}, got {n}")


def oracle_membership(generators: Sequence[int], n: int, config: CatenaryConfig = DEFAULT_CONFIG) -> bool:
    """Coin-change DP over 0..n in plain Python."""

    if n < 0:
        return False
    _check_value(n, config)
    reachable = [False] * (n + 1)
    reachable[0] = True
    for value in range(1, n + 1):
        reachable[value] = any(g <= value and reachable[value - g] for g in generators)
    return reachable[n]


def oracle_factorizations(
    generators: Sequence[int], n: int, config: CatenaryConfig = DEFAULT_CONFIG
) -> Set[FactorizationVector]:
    if n < 0:
        return set()
    _check_value(n, config)
    found: Set[FactorizationVector] = set()
    coefficients = [0] * len(generators)

    def walk(i: int, remainder: int) -> None:
        if i == len(generators):
            if remainder == 0:
                found.add(FactorizationVector(coefficients))
                if len(found) > config.oracle_factorization_cap:
                    raise CapExceeded(
                        f"{n} has more than {config.oracle_factorization_cap} factorizations"
                    )
            return
        for a in range(remainder // generators[i] + 1):
            coefficients[i] = a
            walk(i + 1, remainder - a * generators[i])
        coefficients[i] = 0

    walk(0, n)
    return found


def _connected(size: int, adjacent: Callable[[int, int], bool]) -> bool:
    if size <= 1:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in range(size):
            if v not in seen and adjacent(u, v):
                seen.add(v)
                queue.append(v)
    return len(seen) == size


def oracle_catenary(monoid: NumericalMonoid, n: int, config: CatenaryConfig = DEFAULT_CONFIG) -> int:
    """Smallest N whose distance-N graph on Z(n) is connected, tried N = 0, 1, 2, ..."""

    vectors = sorted(oracle_factorizations(monoid.generators, n, config))
    if not vectors:
        raise NotAnElement(f"{n} is not an element of {monoid}")
    threshold = 0
    while not _connected(len(vectors), lambda u, v: distance(vectors[u], vectors[v]) <= threshold):
        threshold += 1
    return threshold


def oracle_betti(monoid: NumericalMonoid, scan_end: int, config: CatenaryConfig = DEFAULT_CONFIG) -> List[int]:
    """Elements up to ``scan_end`` whose gcd-adjacency graph is disconnected."""

    _check_value(scan_end, config)
    found = []
    for n in range(1, scan_end + 1):
        vectors = sorted(oracle_factorizations(monoid.generators, n, config))
        if len(vectors) < 2:
            continue
        if not _connected(len(vectors), lambda u, v: any(min(a, b) for a, b in zip(vectors[u], vectors[v]))):
            found.append(n)
    logger.debug("Oracle Betti elements of %s up to %d: %s", monoid, scan_end, found)
    return found
