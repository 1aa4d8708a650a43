import pytest
from hypothesis import given, settings

from corpus import CORPUS, QUICK_CORPUS, small_monoids
from mcp_catenary.catenary import (
    UnionFind,
    betti_elements,
    catenary_element,
    catenary_set,
    default_window,
    is_betti,
    minimum_spanning_edges,
    monoid_catenary,
    nabla_graph,
    spanning_bottleneck,
)
from mcp_catenary.config import CatenaryConfig
from mcp_catenary.errors import ExplosionGuard, NotAnElement, WindowTooSmall
from mcp_catenary.factorization import factorizations
from mcp_catenary.monoid import new_monoid


def test_union_find():
    structure = UnionFind(5)
    assert structure.union(0, 3)
    assert not structure.union(3, 0)
    structure.union(1, 4)
    assert structure.find(3) == structure.find(0)
    assert sorted(map(sorted, structure.groups())) == [[0, 3], [1, 4], [2]]


class TestNablaGraph:
    def test_disconnected(self):
        graph = nabla_graph(new_monoid([2, 3]), 6)
        assert graph.is_disconnected
        assert len(graph.components) == 2

    def test_connected(self):
        graph = nabla_graph(new_monoid([3, 5, 7]), 15)
        assert len(graph.vertices) == 3
        assert not graph.is_disconnected

    def test_single_factorization(self):
        graph = nabla_graph(new_monoid([3, 5, 7]), 3)
        assert len(graph.components) == 1

    def test_not_an_element(self):
        with pytest.raises(NotAnElement):
            nabla_graph(new_monoid([3, 5, 7]), 4)


class TestBetti:
    def test_two_generators(self):
        assert betti_elements(new_monoid([2, 3])) == [6]

    def test_three_generators(self, sequential):
        assert betti_elements(new_monoid([3, 5, 7]), sequential) == [10, 12, 14]

    def test_is_betti(self):
        s = new_monoid([3, 8, 13])
        assert is_betti(s, 16)
        assert is_betti(s, 26)
        assert not is_betti(s, 24)
        assert not is_betti(s, 10)

    def test_naturals_have_none(self):
        assert betti_elements(new_monoid([1])) == []

    @pytest.mark.parametrize("monoid", QUICK_CORPUS, ids=str)
    def test_matches_nabla_components(self, monoid, sequential):
        betti = set(betti_elements(monoid, sequential))
        for n in monoid.elements_up_to(monoid.frobenius + 2 * monoid.largest_generator):
            assert (n in betti) == nabla_graph(monoid, n).is_disconnected

    @given(small_monoids(max_generator=15, max_size=3))
    @settings(deadline=None, max_examples=25)
    def test_unique_factorization_below_first_betti(self, monoid):
        betti = betti_elements(monoid, CatenaryConfig(workers=1))
        below = betti[0] if betti else monoid.frobenius + 2 * monoid.largest_generator
        for n in monoid.elements_up_to(below - 1):
            assert len(factorizations(monoid, n)) == 1


class TestCatenaryElement:
    def test_examples(self):
        assert catenary_element(new_monoid([2, 3]), 6) == 3
        assert catenary_element(new_monoid([3, 8, 13]), 17) == 0
        assert catenary_element(new_monoid([3, 8, 13]), 24) == 7
        assert catenary_element(new_monoid([3, 5, 7]), 0) == 0

    def test_not_an_element(self):
        with pytest.raises(NotAnElement):
            catenary_element(new_monoid([2, 3]), 1)

    def test_explosion_guard(self):
        with pytest.raises(ExplosionGuard):
            catenary_element(new_monoid([2, 3]), 60, CatenaryConfig(explosion_cap=3))

    def test_spanning_tree_of_two_vertices(self):
        assert minimum_spanning_edges([(0, 2), (3, 0)]) == [(0, 1, 3)]
        assert spanning_bottleneck([(1, 1, 1)]) == 0

    def test_spanning_tree_is_light(self):
        vectors = factorizations(new_monoid([3, 8, 13]), 24)
        edges = minimum_spanning_edges(vectors)
        assert len(edges) == 2
        assert sorted(weight for _, _, weight in edges) == [2, 7]


class TestMonoidCatenary:
    @pytest.mark.parametrize(
        "generators, expected",
        [([2, 3], 3), ([3, 5, 7], 4), ([3, 8, 13], 7), ([6, 9, 10, 14], 3), ([15, 18, 25, 27, 35], 3)],
    )
    def test_examples(self, generators, expected, sequential):
        assert monoid_catenary(new_monoid(generators), sequential) == expected


class TestCatenarySet:
    def test_two_generators(self, sequential):
        values, profile = catenary_set(new_monoid([2, 3]), None, sequential)
        assert values == {0, 3}
        assert profile.window_end == default_window(new_monoid([2, 3])) == 15
        assert profile.default_window
        assert profile.stable
        assert profile.degree_of(8) == 3

    def test_three_generators(self, sequential):
        values, _ = catenary_set(new_monoid([3, 8, 13]), None, sequential)
        assert values == {0, 2, 7}

    def test_explicit_window(self, sequential):
        values, profile = catenary_set(new_monoid([2, 3]), 5, sequential)
        assert values == {0}
        assert not profile.default_window
        assert [n for n, _ in profile.entries] == [0, 2, 3, 4, 5]

    def test_window_must_pass_frobenius(self, sequential):
        with pytest.raises(WindowTooSmall):
            catenary_set(new_monoid([3, 8, 13]), 9, sequential)

    def test_parallel_sweep_matches_sequential(self, sequential):
        s = new_monoid([5, 7, 9])
        parallel = CatenaryConfig(workers=2, parallel_threshold=1)
        assert catenary_set(s, 80, parallel)[1].entries == catenary_set(s, 80, sequential)[1].entries

    @pytest.mark.slow
    @pytest.mark.parametrize("monoid", CORPUS, ids=str)
    def test_necessary_conditions(self, monoid, sequential):
        values, _ = catenary_set(monoid, None, sequential)
        assert 0 in values
        assert 1 not in values
        assert max(values) == monoid_catenary(monoid, sequential)
        assert max(values) >= 3
