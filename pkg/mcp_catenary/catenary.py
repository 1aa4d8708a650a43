"""Catenary degrees, nabla graphs, Betti elements and windowed catenary sets."""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, CatenaryConfig
from .errors import ExplosionGuard, NotAnElement, WindowTooSmall
from .factorization import FactorizationVector, factorization_matrix, iter_factorizations
from .monoid import NumericalMonoid

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]


class UnionFind:
    """Disjoint sets over 0..size-1 with path halving and union by size."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, item: int) -> int:
        parent = self.parent
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, left: int, right: int) -> bool:
        left, right = self.find(left), self.find(right)
        if left == right:
            return False
        if self.size[left] < self.size[right]:
            left, right = right, left
        self.parent[right] = left
        self.size[left] += self.size[right]
        self.components -= 1
        return True

    def groups(self) -> List[List[int]]:
        buckets: Dict[int, List[int]] = {}
        for item in range(len(self.parent)):
            buckets.setdefault(self.find(item), []).append(item)
        return sorted(buckets.values(), key=lambda members: members[0])


@dataclass(frozen=True)
class NablaGraph:
    element: int
    vertices: Tuple[FactorizationVector, ...]
    components: Tuple[Tuple[FactorizationVector, ...], ...]

    @property
    def is_disconnected(self) -> bool:
        return len(self.components) >= 2


@dataclass(frozen=True)
class CatenaryProfile:
    """Element-wise catenary degrees of a monoid over 0 .. window_end."""

    monoid: NumericalMonoid
    window_end: int
    entries: Tuple[Tuple[int, int], ...]
    default_window: bool = False
    stable: bool = False

    @property
    def values(self) -> FrozenSet[int]:
        return frozenset(value for _, value in self.entries)

    def degree_of(self, n: int) -> int:
        for element, value in self.entries:
            if element == n:
                return value
        raise NotAnElement(f"{n} is not an element of {self.monoid} inside the window")


def _collect(monoid: NumericalMonoid, n: int, cap: Optional[int]) -> List[FactorizationVector]:
    vectors: List[FactorizationVector] = []
    for vector in iter_factorizations(monoid, n):
        vectors.append(vector)
        if cap is not None and len(vectors) > cap:
            raise ExplosionGuard(
                f"{n} has more than {cap} factorizations in {monoid}; raise explosion_cap to continue"
            )
    vectors.sort()
    return vectors


def _require_element(monoid: NumericalMonoid, n: int) -> None:
    if not monoid.contains(n):
        raise NotAnElement(f"{n} is not an element of {monoid}")


# Nabla graphs and Betti elements ---------------------------------------------
def _nabla_groups(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    structure = UnionFind(len(vectors))
    if vectors:
        for atom in range(len(vectors[0])):
            first = None
            for index, vector in enumerate(vectors):
                if vector[atom]:
                    if first is None:
                        first = index
                    else:
                        structure.union(first, index)
    return structure.groups()


def nabla_graph(
    monoid: NumericalMonoid, n: int, config: CatenaryConfig = DEFAULT_CONFIG
) -> NablaGraph:
    _require_element(monoid, n)
    vectors = _collect(monoid, n, config.explosion_cap)
    groups = _nabla_groups(vectors)
    return NablaGraph(
        element=n,
        vertices=tuple(vectors),
        components=tuple(tuple(vectors[i] for i in group) for group in groups),
    )


def is_betti(monoid: NumericalMonoid, n: int, config: CatenaryConfig = DEFAULT_CONFIG) -> bool:
    if n <= 0 or not monoid.contains(n):
        return False
    vectors = _collect(monoid, n, config.explosion_cap)
    return len(vectors) >= 2 and len(_nabla_groups(vectors)) >= 2


def betti_scan_bound(monoid: NumericalMonoid) -> int:
    return monoid.frobenius + 2 * monoid.largest_generator


def betti_elements(monoid: NumericalMonoid, config: CatenaryConfig = DEFAULT_CONFIG) -> List[int]:
    """All Betti elements, found by scanning n_1 + n_2 .. frobenius + 2 n_k.

    Completeness of the scan: if n > frobenius + 2 n_k then n - n_i - n_j lies
    in S for every pair i, j. Take factorizations a using n_i and a' using n_j
    and any z in Z(n - n_i - n_j); the vector e_i + e_j + z shares an atom with
    both, so every two vertices of nabla_n are joined and n is not Betti.
    """

    gens = monoid.generators
    if len(gens) < 2:
        return []
    bound = betti_scan_bound(monoid)
    logger.info("Scanning %s for Betti elements up to %d", monoid, bound)
    return [n for n in range(gens[0] + gens[1], bound + 1) if is_betti(monoid, n, config)]


# Catenary degree of an element -----------------------------------------------
def _distance_row(matrix: np.ndarray, lengths: np.ndarray, vertex: int) -> np.ndarray:
    common = np.minimum(matrix, matrix[vertex]).sum(axis=1)
    return np.maximum(lengths - common, lengths[vertex] - common)


def minimum_spanning_edges(vectors: Sequence[Sequence[int]]) -> List[Edge]:
    """Minimum spanning tree of the complete distance graph on ``vectors``.

    Dense Prim over a numpy distance row per added vertex. Ties go to the lowest
    vertex index, so with sorted input the tree is the lexicographic one.
    Returned as (parent, child, weight) in insertion order.
    """

    size = len(vectors)
    if size <= 1:
        return []
    matrix = factorization_matrix(vectors)
    lengths = matrix.sum(axis=1)
    in_tree = np.zeros(size, dtype=bool)
    in_tree[0] = True
    best = _distance_row(matrix, lengths, 0)
    parent = np.zeros(size, dtype=np.int64)
    ceiling = np.iinfo(np.int64).max
    edges: List[Edge] = []
    for _ in range(size - 1):
        vertex = int(np.argmin(np.where(in_tree, ceiling, best)))
        edges.append((int(parent[vertex]), vertex, int(best[vertex])))
        in_tree[vertex] = True
        row = _distance_row(matrix, lengths, vertex)
        closer = (row < best) & ~in_tree
        best = np.where(closer, row, best)
        parent = np.where(closer, vertex, parent)
    return edges


def spanning_bottleneck(vectors: Sequence[Sequence[int]]) -> int:
    """Smallest N for which the distance-N graph on ``vectors`` is connected.

    That threshold is the heaviest edge of any minimum spanning tree.
    """

    edges = minimum_spanning_edges(vectors)
    return max((weight for _, _, weight in edges), default=0)


def catenary_element(
    monoid: NumericalMonoid, n: int, config: CatenaryConfig = DEFAULT_CONFIG
) -> int:
    _require_element(monoid, n)
    vectors = _collect(monoid, n, config.explosion_cap)
    if len(vectors) <= 1:
        return 0
    edges = minimum_spanning_edges(vectors)
    heaviest = max(edges, key=lambda edge: (edge[2], -edge[0], -edge[1]))
    logger.debug(
        "c(%d) = %d via %s -- %s", n, heaviest[2], vectors[heaviest[0]], vectors[heaviest[1]]
    )
    return heaviest[2]


def monoid_catenary(monoid: NumericalMonoid, config: CatenaryConfig = DEFAULT_CONFIG) -> int:
    """c(S), attained at a Betti element."""

    return max((catenary_element(monoid, b, config) for b in betti_elements(monoid, config)), default=0)


# Windowed set of catenary degrees --------------------------------------------
def default_window(monoid: NumericalMonoid, betti: Optional[Sequence[int]] = None) -> int:
    if betti is None:
        betti = betti_elements(monoid)
    return (
        monoid.frobenius
        + 2 * monoid.largest_generator
        + max(betti, default=0)
        + monoid.multiplicity
    )


def _catenary_chunk(payload: Tuple[NumericalMonoid, List[int], CatenaryConfig]) -> List[int]:
    monoid, elements, config = payload
    return [catenary_element(monoid, n, config) for n in elements]


def sweep_catenary(
    monoid: NumericalMonoid, elements: Sequence[int], config: CatenaryConfig = DEFAULT_CONFIG
) -> List[int]:
    """catenary_element over ``elements``, in order, fanned out to worker processes."""

    workers = config.resolved_workers()
    if workers <= 1 or len(elements) < config.parallel_threshold:
        return _catenary_chunk((monoid, list(elements), config))
    chunk = max(1, math.ceil(len(elements) / (workers * 4)))
    payloads = [
        (monoid, list(elements[start:start + chunk]), config)
        for start in range(0, len(elements), chunk)
    ]
    logger.info("Sweeping %d elements of %s on %d workers", len(elements), monoid, workers)
    values: List[int] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_catenary_chunk, payloads):
            values.extend(part)
    return values


def _is_stable(entries: Sequence[Tuple[int, int]], window_end: int, width: int) -> bool:
    """Compare the catenary multisets of the last two blocks of ``width`` integers."""

    if window_end + 1 < 2 * width:
        return False
    last = Counter(v for n, v in entries if n > window_end - width)
    previous = Counter(v for n, v in entries if window_end - 2 * width < n <= window_end - width)
    return last == previous


def catenary_set(
    monoid: NumericalMonoid,
    window_end: Optional[int] = None,
    config: CatenaryConfig = DEFAULT_CONFIG,
) -> Tuple[Set[int], CatenaryProfile]:
    """{c(n) : n in S, n <= window_end} with the full profile.

    Without ``window_end`` the window is frobenius + 2 n_k + max Betti + n_1.
    No finite window certifies C(S) in general, so the profile carries the
    window and a stability flag for the caller to report.
    """

    is_default = window_end is None
    if window_end is None:
        window_end = default_window(monoid, betti_elements(monoid, config))
    elif window_end < monoid.frobenius + 1:
        raise WindowTooSmall(
            f"window {window_end} must reach past the Frobenius number {monoid.frobenius} of {monoid}"
        )
    elements = monoid.elements_up_to(window_end)
    values = sweep_catenary(monoid, elements, config)
    entries = tuple(zip(elements, values))
    stable = _is_stable(entries, window_end, monoid.multiplicity)
    if not stable:
        logger.warning("Catenary values of %s have not settled by %d", monoid, window_end)
    profile = CatenaryProfile(
        monoid=monoid,
        window_end=window_end,
        entries=entries,
        default_window=is_default,
        stable=stable,
    )
    return set(values), profile
