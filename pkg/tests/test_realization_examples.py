"""Worked examples: gluings, the five-generator plot monoid and a realization chain."""

import random

import pytest

from corpus import CORPUS
from mcp_catenary.catenary import betti_elements, catenary_element, catenary_set, monoid_catenary
from mcp_catenary.config import CatenaryConfig
from mcp_catenary.construction import (
    adjoin,
    adjoined_betti,
    adjoined_catenary_element,
    exact_catenary_set,
    exact_monoid_catenary,
    glue,
    realize,
    smallest_b,
    validate_target,
    verify_trace,
)
from mcp_catenary.errors import MonoidError
from mcp_catenary.factorization import factorizations
from mcp_catenary.monoid import new_monoid
from mcp_catenary.oracle import oracle_catenary

CHAIN = [
    (51, 60, 160, 260),
    (1301, 1326, 1560, 4160, 6760),
    (57001, 74157, 75582, 88920, 237120, 385320),
]


def random_steps(count=6, seed=7):
    """Valid adjoin steps over small bases with c <= 12."""

    rng = random.Random(seed)
    bases = [[2, 3], [3, 4, 5], [3, 5, 7], [4, 5, 6], [5, 7, 9], [4, 7, 10]]
    steps = []
    while len(steps) < count:
        base = new_monoid(rng.choice(bases))
        c = exact_monoid_catenary(base) + rng.randint(1, 3)
        if c > 12:
            continue
        try:
            b = smallest_b(base, c, {})
            b = rng.choice([b] + [x for x in range(b + 1, b + 6) if base.contains(x)])
            steps.append(adjoin(base, c, b))
        except MonoidError:
            continue
    return steps


STEPS = random_steps()


def test_gluing_can_lower_catenary_degree(sequential):
    s = new_monoid([3, 5, 7])
    glued = glue(s, 2, new_monoid([1]), 9)
    assert glued.generators == (6, 9, 10, 14)
    assert monoid_catenary(glued, sequential) == 3
    assert monoid_catenary(s, sequential) == 4


def test_gluing_with_large_scaling_factors(sequential):
    glued = glue(new_monoid([3, 5, 7]), 5, new_monoid([2, 3]), 9)
    assert glued.generators == (15, 18, 25, 27, 35)
    assert glued.frobenius == 74
    assert monoid_catenary(glued, sequential) == 3
    assert oracle_catenary(new_monoid([2, 3]), 6) == 3


@pytest.mark.slow
def test_five_generator_plot_example(fig1_monoid, sequential):
    values, profile = catenary_set(fig1_monoid, None, sequential)
    assert values == {0, 2, 3, 5, 6}
    assert 480 in betti_elements(fig1_monoid, sequential)
    assert catenary_element(fig1_monoid, 480, sequential) == 5
    for n, value in profile.entries:
        above_480 = fig1_monoid.contains(n - 480)
        above_546 = fig1_monoid.contains(n - 546)
        assert (value == 6) == above_546
        assert (value == 5) == (above_480 and not above_546)


def test_five_generator_plot_example_construction(fig1_monoid, sequential):
    trace = realize({0, 2, 3, 5, 6}, [16, 91], sequential)
    assert trace.base_monoid.generators == (3, 4, 5)
    assert trace.final == fig1_monoid
    summary = exact_catenary_set(trace.final, sequential)
    assert summary.exact
    assert summary.values == {0, 2, 3, 5, 6}
    step = trace.steps[-1]
    assert adjoined_catenary_element(step, 480) == 5
    assert adjoined_catenary_element(step, 546) == 6


def test_realization_chain(sequential):
    trace = realize({0, 2, 7, 20, 26, 57}, [51, 1301, 57001], sequential)
    assert trace.base_monoid.generators == (3, 8, 13)
    assert [step.result.generators for step in trace.steps] == CHAIN
    assert trace.final.frobenius == 6778439
    t1 = trace.steps[0].result
    assert t1.contains(1301)
    assert 11 * 51 + 7 * 60 + 2 * 160 == 1301


def test_realization_chain_first_step_directly(sequential):
    t1 = new_monoid(CHAIN[0])
    assert catenary_set(t1, None, sequential)[0] == {0, 2, 7, 20}


@pytest.mark.slow
def test_realization_chain_verification(sequential):
    trace = realize({0, 2, 7, 20, 26, 57}, [51, 1301, 57001], sequential)
    config = CatenaryConfig(workers=1, verify_samples=6)
    report = verify_trace(trace, 5000, config)
    assert report.passed, report.failures()
    assert exact_catenary_set(trace.final, sequential).values == {0, 2, 7, 20, 26, 57}


@pytest.mark.parametrize("step", STEPS, ids=lambda s: f"{s.base}-c{s.c}-b{s.b}")
def test_adjoin_formula_matches_direct(step, sequential):
    result = step.result
    bound = result.frobenius + 2 * result.largest_generator
    for n in result.elements_up_to(bound):
        assert adjoined_catenary_element(step, n) == catenary_element(result, n)
    assert adjoined_betti(step) == betti_elements(result, sequential)


@pytest.mark.parametrize("step", STEPS, ids=lambda s: f"{s.base}-c{s.c}-b{s.b}")
def test_last_coordinates_differ_by_multiples_of_c(step):
    result = step.result
    position = result.generators.index(step.b)
    bound = result.frobenius + 2 * result.largest_generator
    for n in result.elements_up_to(bound):
        vectors = factorizations(result, n)
        for i, a in enumerate(vectors):
            for a2 in vectors[i + 1:]:
                if a[position] != a2[position]:
                    assert (a[position] - a2[position]) % step.c == 0
                    assert a.distance(a2) >= step.c


@pytest.mark.slow
@pytest.mark.parametrize("monoid", CORPUS, ids=str)
def test_every_catenary_set_is_realizable(monoid, sequential):
    values, _ = catenary_set(monoid, None, sequential)
    assert validate_target(values).ok


def test_unrealizable_targets():
    assert not validate_target({0, 2}).ok
    assert not validate_target({0, 1, 4}).ok
