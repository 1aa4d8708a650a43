import pytest

from mcp_catenary.catenary import betti_elements, catenary_element, catenary_set, monoid_catenary
from mcp_catenary.construction import (
    AdjoinStep,
    GluingSpec,
    adjoin,
    adjoined_betti,
    adjoined_catenary_element,
    adjoined_catenary_set,
    base_case,
    exact_catenary_set,
    exact_monoid_catenary,
    glue,
    glued_frobenius,
    gluing_bound,
    realize,
    smallest_b,
    validate_target,
    verify_trace,
)
from mcp_catenary.errors import (
    BadExplicitB,
    CatenaryTooSmall,
    IntegerOverflow,
    InvalidTarget,
    LongFactorization,
    NotAGluing,
    NotAnElement,
    NotCofinite,
    NotCoprime,
    NotMinimal,
)
from mcp_catenary.monoid import new_monoid


class TestGlue:
    def test_scaled_by_natural_numbers(self):
        glued = glue(new_monoid([3, 5, 7]), 2, new_monoid([1]), 9)
        assert glued.generators == (6, 9, 10, 14)
        assert isinstance(glued.provenance, GluingSpec)
        assert glued.provenance.d == 18

    def test_result_is_minimalized(self):
        glued = glue(new_monoid([2, 3]), 2, new_monoid([2, 3]), 5)
        assert glued.generators == (4, 6, 15)

    def test_lcm_outside_a_factor(self):
        with pytest.raises(NotAGluing):
            glue(new_monoid([3, 5, 7]), 2, new_monoid([2, 3]), 1)

    def test_common_divisor(self):
        with pytest.raises(NotCofinite):
            glue(new_monoid([2, 3]), 2, new_monoid([2, 3]), 4)

    def test_frobenius_formula(self):
        glued = glue(new_monoid([3, 5, 7]), 2, new_monoid([1]), 9)
        assert glued_frobenius(glued.provenance) == glued.frobenius == 17

    def test_bound_dominates(self, sequential):
        glued = glue(new_monoid([3, 5, 7]), 2, new_monoid([1]), 9)
        assert gluing_bound(glued, sequential) == 4
        assert monoid_catenary(glued, sequential) <= 4

    @pytest.mark.parametrize(
        "left, d1, right, d2, generators",
        [
            ([3, 5, 7], 2, [1], 9, (6, 9, 10, 14)),
            ([2, 3], 2, [2, 3], 5, (4, 6, 15)),
            ([3, 5, 7], 5, [2, 3], 9, (15, 18, 25, 27, 35)),
        ],
    )
    def test_bound_holds_for_each_gluing(self, left, d1, right, d2, generators, sequential):
        glued = glue(new_monoid(left), d1, new_monoid(right), d2)
        assert glued.generators == generators
        assert monoid_catenary(glued, sequential) <= gluing_bound(glued, sequential)

    def test_bound_needs_a_gluing(self):
        with pytest.raises(NotAGluing):
            gluing_bound(new_monoid([3, 5, 7]))


class TestAdjoin:
    def test_first_step_of_a_chain(self, base_3_8_13):
        step = adjoin(base_3_8_13, 20, 51)
        assert step.generators == (60, 160, 260, 51)
        assert step.result.generators == (51, 60, 160, 260)
        assert step.glue_element == 1020
        assert step.frobenius == step.result.frobenius == 1169
        assert step.result.provenance is step
        assert exact_monoid_catenary(step.result) == 20

    def test_as_gluing(self, base_3_8_13):
        gluing = adjoin(base_3_8_13, 20, 51).as_gluing()
        assert (gluing.d1, gluing.d2) == (20, 51)
        assert gluing.d == 1020

    def test_catenary_too_small(self, base_3_8_13):
        with pytest.raises(CatenaryTooSmall):
            adjoin(base_3_8_13, 5, 14)

    def test_b_outside_base(self, base_3_8_13):
        with pytest.raises(NotAnElement):
            adjoin(base_3_8_13, 20, 10)

    def test_b_shares_factor_with_c(self, base_3_8_13):
        with pytest.raises(NotCoprime):
            adjoin(base_3_8_13, 20, 16)

    def test_b_without_short_factorization(self):
        with pytest.raises(LongFactorization):
            adjoin(new_monoid([1]), 2, 3)

    def test_glue_element_overflow(self):
        with pytest.raises(IntegerOverflow, match="glue element"):
            adjoin(new_monoid([2, 3]), 5, 4 * 10**18 + 1)

    def test_b_among_scaled_generators(self):
        with pytest.raises(NotMinimal):
            adjoin(new_monoid([2, 3]), 5, 2)

    def test_closed_form(self, base_3_8_13):
        step = adjoin(base_3_8_13, 20, 51)
        assert adjoined_catenary_element(step, 1020) == 20
        assert adjoined_catenary_element(step, 120) == 0
        assert adjoined_catenary_element(step, 51) == 0
        assert adjoined_catenary_element(step, 20 * 24) == 7
        with pytest.raises(NotAnElement):
            adjoined_catenary_element(step, 50)

    def test_betti_transport(self, sequential):
        step = adjoin(new_monoid([2, 3]), 5, 7)
        assert adjoined_betti(step) == [30, 35]
        assert betti_elements(step.result, sequential) == [30, 35]

    def test_exact_set_from_apery(self, sequential):
        step = adjoin(new_monoid([2, 3]), 5, 7)
        summary = adjoined_catenary_set(step)
        assert summary.exact
        assert summary.values == {0, 3, 5}
        assert catenary_set(step.result, None, sequential)[0] == {0, 3, 5}

    def test_b_can_swallow_a_catenary_degree(self, sequential):
        step = adjoin(new_monoid([2, 3]), 5, 4)
        assert step.result.generators == (4, 10, 15)
        assert adjoined_catenary_set(step).values == {0, 5}
        assert catenary_set(step.result, None, sequential)[0] == {0, 5}


class TestTargets:
    @pytest.mark.parametrize(
        "target, condition",
        [({0, 2}, "iii"), ({0, 1, 5}, "ii"), ({2, 5}, "i"), ({0, -3, 5}, "domain")],
    )
    def test_rejected(self, target, condition):
        check = validate_target(target)
        assert not check.ok
        assert check.condition == condition

    def test_accepted(self):
        assert validate_target({0, 2, 7, 20}).ok
        assert validate_target({0, 3}).ok


class TestBaseCase:
    def test_two_generator_family(self):
        base = base_case({0, 5})
        assert base.generators == (4, 5)
        assert base.provenance.proven
        assert exact_catenary_set(base).values == {0, 5}

    def test_arithmetic_family(self, sequential):
        base = base_case({0, 2, 7}, sequential)
        assert base.generators == (3, 8, 13)
        assert base.provenance.family == "arithmetic"
        assert dict(base.provenance.witnesses) == {0: 0, 2: 16, 7: 21}

    def test_arithmetic_family_small(self, sequential):
        assert base_case({0, 2, 3}, sequential).generators == (3, 4, 5)

    def test_not_a_base_set(self):
        with pytest.raises(InvalidTarget):
            base_case({0, 3, 5})


class TestRealize:
    def test_base_only(self, sequential):
        trace = realize({0, 3}, config=sequential)
        assert trace.steps == ()
        assert trace.final.generators == (2, 3)
        assert verify_trace(trace, config=sequential).passed

    def test_smallest_b_keeps_lower_degrees(self, sequential):
        trace = realize({0, 3, 5}, config=sequential)
        assert trace.steps[0].b == 7
        assert trace.final.generators == (7, 10, 15)
        assert exact_catenary_set(trace.final, sequential).values == {0, 3, 5}
        assert verify_trace(trace, config=sequential).passed

    def test_smallest_b_search(self):
        assert smallest_b(new_monoid([2, 3]), 5, {0: 0, 3: 6}) == 7
        assert smallest_b(new_monoid([2, 3]), 5, {}) == 4

    def test_rejects_b_that_loses_a_degree(self, sequential):
        with pytest.raises(BadExplicitB, match="lose catenary degree 3"):
            realize({0, 3, 5}, [4], sequential)

    def test_explicit_b_must_be_coprime(self, sequential):
        with pytest.raises(BadExplicitB):
            realize({0, 2, 7, 20}, [50], sequential)

    def test_explicit_b_list_length(self, sequential):
        with pytest.raises(BadExplicitB):
            realize({0, 2, 7}, [51], sequential)
        with pytest.raises(BadExplicitB):
            realize({0, 2, 7, 20, 26}, [51], sequential)

    def test_explicit_b_overflow_names_the_step(self, sequential):
        with pytest.raises(IntegerOverflow, match=r"step 1 \(c = 5\)"):
            realize({0, 3, 5}, [4 * 10**18 + 1], sequential)

    def test_smallest_b_overflow_names_the_step(self, sequential):
        with pytest.raises(IntegerOverflow, match=r"step 2 \(c = 4000000000000000000\)"):
            realize({0, 3, 5, 4 * 10**18}, config=sequential)

    def test_invalid_target(self):
        with pytest.raises(InvalidTarget):
            realize({0, 1, 5})

    def test_rows(self, sequential):
        trace = realize({0, 2, 7, 20}, [51], sequential)
        rows = trace.rows()
        assert [(row.c, row.b) for row in rows] == [(7, None), (20, 51)]
        assert rows[-1].catenary_set == {0, 2, 7, 20}
        assert trace.to_dict()["final"]["generators"] == [51, 60, 160, 260]

    def test_verification_recomputes_small_steps(self, sequential):
        trace = realize({0, 2, 7, 20}, [51], sequential)
        report = verify_trace(trace, 5000, sequential)
        names = {check.name for check in report.checks}
        assert {"catenary-set", "betti-transport", "formula-consistency", "apery-catenary-set"} <= names
        assert report.passed

    def test_verification_samples_large_steps(self, sequential):
        trace = realize({0, 2, 7, 20}, [51], sequential)
        report = verify_trace(trace, 100, sequential)
        names = {check.name for check in report.checks}
        assert {"betti-claimed", "betti-sampled", "formula-sampled"} <= names
        assert "catenary-set" not in names
        assert report.passed


def test_adjoin_step_is_frozen(base_3_8_13):
    step = adjoin(base_3_8_13, 20, 51)
    assert isinstance(step, AdjoinStep)
    with pytest.raises(AttributeError):
        step.c = 21
