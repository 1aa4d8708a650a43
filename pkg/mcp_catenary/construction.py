"""Gluings, the scaled adjoin step and the realization of catenary sets.

A monoid produced here carries its recipe as ``provenance`` (a GluingSpec, an
AdjoinStep or a BaseCase). The ``exact_*`` functions follow that recipe so
invariants of deep realization chains are answered without enumerating
factorizations in the large monoid.
"""

from __future__ import annotations

import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .catenary import (
    betti_elements,
    catenary_element,
    catenary_set,
    default_window,
    is_betti,
    monoid_catenary,
)
from .config import DEFAULT_CONFIG, CatenaryConfig
from .errors import (
    BadExplicitB,
    BaseCaseSearchExhausted,
    CatenaryTooSmall,
    IntegerOverflow,
    InvalidGenerator,
    InvalidTarget,
    LongFactorization,
    MonoidError,
    NoAdmissibleB,
    NotAGluing,
    NotAnElement,
    NotCofinite,
    NotCoprime,
    NotMinimal,
)
from .factorization import shortest_length_within
from .monoid import NumericalMonoid, check_int64, checked_mul, minimal_generators, new_monoid

logger = logging.getLogger(__name__)

BPolicy = Union[str, Sequence[int]]


def _set_text(values: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


# Gluing ----------------------------------------------------------------------
@dataclass(frozen=True)
class GluingSpec:
    s1: NumericalMonoid
    d1: int
    s2: NumericalMonoid
    d2: int

    @property
    def d(self) -> int:
        return math.lcm(self.d1, self.d2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s1": list(self.s1.generators),
            "d1": self.d1,
            "s2": list(self.s2.generators),
            "d2": self.d2,
            "d": self.d,
        }


def glue(s1: NumericalMonoid, d1: int, s2: NumericalMonoid, d2: int) -> NumericalMonoid:
    """The gluing d1*S1 + d2*S2, provided d = lcm(d1, d2) lies in S1 and S2."""

    if d1 < 1 or d2 < 1:
        raise InvalidGenerator(f"gluing factors must be positive, got {d1} and {d2}")
    gluing = GluingSpec(s1, d1, s2, d2)
    d = check_int64(gluing.d, "lcm(d1, d2)")
    if not (s1.contains(d) and s2.contains(d)):
        raise NotAGluing(f"lcm({d1}, {d2}) = {d} is not in both {s1} and {s2}")
    generators = [checked_mul(d1, g, "scaled generator") for g in s1.generators]
    generators += [checked_mul(d2, g, "scaled generator") for g in s2.generators]
    divisor = math.gcd(*generators)
    if divisor != 1:
        raise NotCofinite(f"{d1}*{s1} + {d2}*{s2} has gcd {divisor}")
    glued = new_monoid(generators, provenance=gluing)
    logger.info("Glued %d*%s + %d*%s = %s", d1, s1, d2, s2, glued)
    return glued


def glued_frobenius(gluing: GluingSpec) -> Optional[int]:
    """d1*F(S1) + d2*F(S2) + d1*d2 when d2 in S1, d1 in S2 and gcd(d1, d2) = 1.

    Returns None outside that setting, where no closed form applies.
    """

    if math.gcd(gluing.d1, gluing.d2) != 1:
        return None
    if not (gluing.s1.contains(gluing.d2) and gluing.s2.contains(gluing.d1)):
        return None
    return gluing.d1 * gluing.s1.frobenius + gluing.d2 * gluing.s2.frobenius + gluing.d1 * gluing.d2


def gluing_bound(glued: NumericalMonoid, config: CatenaryConfig = DEFAULT_CONFIG) -> int:
    """max(c(S1), c(S2), c_S(d)), an upper bound for the catenary degree of a gluing."""

    gluing = glued.provenance
    if not isinstance(gluing, GluingSpec):
        raise NotAGluing(f"{glued} was not built by glue()")
    at_d = catenary_element(glued, gluing.d, config) if glued.contains(gluing.d) else 0
    return max(
        exact_monoid_catenary(gluing.s1, config),
        exact_monoid_catenary(gluing.s2, config),
        at_d,
    )


# Adjoin ----------------------------------------------------------------------
@dataclass(frozen=True)
class AdjoinStep:
    """T = <c*n_1, ..., c*n_k, b> over the base S = <n_1, ..., n_k>."""

    base: NumericalMonoid
    c: int
    b: int
    base_catenary: int

    @property
    def glue_element(self) -> int:
        return self.c * self.b

    @property
    def generators(self) -> Tuple[int, ...]:
        """Generators in construction order: scaled base first, b last."""

        return tuple(self.c * n for n in self.base.generators) + (self.b,)

    @cached_property
    def result(self) -> NumericalMonoid:
        return NumericalMonoid(tuple(sorted(self.generators)), provenance=self)

    @property
    def frobenius(self) -> int:
        return self.c * self.base.frobenius + (self.c - 1) * self.b

    def as_gluing(self) -> GluingSpec:
        return GluingSpec(self.base, self.c, NumericalMonoid((1,)), self.b)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": list(self.base.generators),
            "c": self.c,
            "b": self.b,
            "glue_element": self.glue_element,
            "construction_order": list(self.generators),
            "generators": list(self.result.generators),
            "frobenius": self.frobenius,
        }


def adjoin(
    base: NumericalMonoid, c: int, b: int, config: CatenaryConfig = DEFAULT_CONFIG
) -> AdjoinStep:
    """Validate and build T = <c*S, b>, whose catenary degree is exactly c.

    Besides c > c(S), b in S and gcd(b, c) = 1, the element c*b has the
    factorizations (0, ..., 0, c) and (z, 0) for z in Z_S(b), so c_T(cb) = c
    needs a factorization of b of length at most c.
    """

    base_catenary = exact_monoid_catenary(base, config)
    if c <= base_catenary:
        raise CatenaryTooSmall(f"c = {c} must exceed c({base}) = {base_catenary}")
    if b <= 0 or not base.contains(b):
        raise NotAnElement(f"b = {b} is not a nonzero element of {base}")
    if math.gcd(b, c) != 1:
        raise NotCoprime(f"gcd({b}, {c}) = {math.gcd(b, c)}")
    scaled = [checked_mul(c, n, "scaled generator") for n in base.generators]
    checked_mul(c, b, "glue element")
    if shortest_length_within(base, b, c) is None:
        raise LongFactorization(f"{b} has no factorization of length at most c = {c} in {base}")
    listed = tuple(sorted(scaled + [b]))
    if minimal_generators(listed) != listed:
        raise NotMinimal(f"<{','.join(map(str, listed))}> is not minimally generated")
    step = AdjoinStep(base=base, c=c, b=b, base_catenary=base_catenary)
    logger.info("Adjoined c=%d, b=%d to %s: %s", c, b, base, step.result)
    return step


def adjoined_catenary_element(
    step: AdjoinStep, n: int, config: CatenaryConfig = DEFAULT_CONFIG
) -> int:
    """c_T(n) from the base: c when n - cb is in T, otherwise c_S(m).

    When n - cb is not in T every factorization of n has the same last
    coordinate a, the unique a in [0, c) with a*b = n (mod c), and the rest
    is c times a factorization of m = (n - a*b) / c.
    """

    result = step.result
    if not result.contains(n):
        raise NotAnElement(f"{n} is not an element of {result}")
    if result.contains(n - step.glue_element):
        return step.c
    last = (n * pow(step.b, -1, step.c)) % step.c
    return exact_catenary_element(step.base, (n - last * step.b) // step.c, config)


def adjoined_betti(step: AdjoinStep, config: CatenaryConfig = DEFAULT_CONFIG) -> List[int]:
    scaled = {step.c * x for x in exact_betti(step.base, config)}
    return sorted(scaled | {step.glue_element})


# Exact invariants through provenance -----------------------------------------
@dataclass(frozen=True)
class BaseCase:
    """How a realization base monoid was obtained and checked."""

    target: FrozenSet[int]
    family: str
    proven: bool
    window: Optional[int] = None
    witnesses: Tuple[Tuple[int, int], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": sorted(self.target),
            "family": self.family,
            "proven": self.proven,
            "window": self.window,
        }


@dataclass(frozen=True)
class CatenarySummary:
    """A set of catenary degrees and how much it can be trusted.

    ``witnesses`` pairs each value with one element attaining it.
    """

    values: FrozenSet[int]
    exact: bool
    window: Optional[int] = None
    stable: Optional[bool] = None
    witnesses: Tuple[Tuple[int, int], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"values": sorted(self.values), "exact": self.exact}
        if not self.exact:
            payload["window"] = self.window
            payload["stable"] = self.stable
        payload["witnesses"] = {str(v): w for v, w in self.witnesses}
        return payload


@lru_cache(maxsize=65536)
def _direct_catenary(monoid: NumericalMonoid, n: int, explosion_cap: int) -> int:
    return catenary_element(monoid, n, CatenaryConfig(explosion_cap=explosion_cap, workers=1))


def exact_catenary_element(
    monoid: NumericalMonoid, n: int, config: CatenaryConfig = DEFAULT_CONFIG
) -> int:
    if isinstance(monoid.provenance, AdjoinStep):
        return adjoined_catenary_element(monoid.provenance, n, config)
    if not monoid.contains(n):
        raise NotAnElement(f"{n} is not an element of {monoid}")
    return _direct_catenary(monoid, n, config.explosion_cap)


def exact_betti(monoid: NumericalMonoid, config: CatenaryConfig = DEFAULT_CONFIG) -> List[int]:
    if isinstance(monoid.provenance, AdjoinStep):
        return adjoined_betti(monoid.provenance, config)
    return betti_elements(monoid, config)


def exact_monoid_catenary(monoid: NumericalMonoid, config: CatenaryConfig = DEFAULT_CONFIG) -> int:
    provenance = monoid.provenance
    if isinstance(provenance, AdjoinStep):
        return provenance.c
    if isinstance(provenance, BaseCase):
        return max(provenance.target)
    if monoid.embedding_dimension == 1:
        return 0
    if monoid.embedding_dimension == 2:
        return monoid.largest_generator
    return monoid_catenary(monoid, config)


def _first_witnesses(entries: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    first: Dict[int, int] = {}
    for n, value in entries:
        first.setdefault(value, n)
    return tuple(sorted(first.items()))


def adjoined_catenary_set(step: AdjoinStep, config: CatenaryConfig = DEFAULT_CONFIG) -> CatenarySummary:
    """C(T) = {c} together with c_S(m) for m in Ap(S, b).

    n - cb is outside T exactly when n = a*b + c*m with a < c and m in Ap(S, b),
    and then c_T(n) = c_S(m); taking a = 0 shows every such value occurs.
    """

    found: Dict[int, int] = {step.c: step.glue_element}
    for m in step.base.apery_set(step.b):
        value = exact_catenary_element(step.base, m, config)
        if value not in found:
            found[value] = checked_mul(step.c, m, "witness")
    return CatenarySummary(
        values=frozenset(found), exact=True, witnesses=tuple(sorted(found.items()))
    )


def exact_catenary_set(monoid: NumericalMonoid, config: CatenaryConfig = DEFAULT_CONFIG) -> CatenarySummary:
    """C(S): exact for constructed and two-generator monoids, windowed otherwise."""

    provenance = monoid.provenance
    if isinstance(provenance, AdjoinStep):
        return adjoined_catenary_set(provenance, config)
    if isinstance(provenance, BaseCase):
        return CatenarySummary(
            values=provenance.target,
            exact=provenance.proven,
            window=provenance.window,
            stable=None,
            witnesses=provenance.witnesses,
        )
    gens = monoid.generators
    if len(gens) == 1:
        return CatenarySummary(frozenset({0}), exact=True, witnesses=((0, 0),))
    if len(gens) == 2:
        return CatenarySummary(
            frozenset({0, gens[1]}), exact=True, witnesses=((0, 0), (gens[1], gens[0] * gens[1]))
        )
    values, profile = catenary_set(monoid, None, config)
    return CatenarySummary(
        values=frozenset(values),
        exact=False,
        window=profile.window_end,
        stable=profile.stable,
        witnesses=_first_witnesses(profile.entries),
    )


# Targets and base cases ------------------------------------------------------
@dataclass(frozen=True)
class TargetCheck:
    ok: bool
    condition: Optional[str] = None
    message: str = ""


def validate_target(target: Iterable[int]) -> TargetCheck:
    values = set(target)
    if any(v < 0 for v in values):
        return TargetCheck(False, "domain", "catenary degrees are non-negative integers")
    if 0 not in values:
        return TargetCheck(False, "i", "0 must belong to the set")
    if 1 in values:
        return TargetCheck(False, "ii", "1 is never a catenary degree")
    if max(values) < 3:
        return TargetCheck(False, "iii", "the maximum must be at least 3")
    return TargetCheck(True)


def _arithmetic_candidates(c: int) -> Iterator[Tuple[int, int, int]]:
    """<a, a+d, a+2d> with ceil(a/2) + d = c and gcd(a, d) = 1; a = 3 gives <3, c+1, 2c-1>."""

    for a in range(3, c + 2):
        d = c - (a + 1) // 2
        if d < 1:
            break
        if math.gcd(a, d) == 1:
            yield (a, a + d, a + 2 * d)


def _check_candidate(
    generators: Sequence[int], target: FrozenSet[int], config: CatenaryConfig
) -> Optional[Tuple[NumericalMonoid, int, Tuple[Tuple[int, int], ...]]]:
    try:
        monoid = new_monoid(generators)
    except MonoidError as exc:
        logger.debug("Skipping base candidate %s: %s", tuple(generators), exc)
        return None
    if monoid_catenary(monoid, config) != max(target):
        return None
    values, profile = catenary_set(monoid, None, config)
    if values != set(target):
        logger.debug("Base candidate %s has catenary set %s", monoid, _set_text(values))
        return None
    return monoid, profile.window_end, _first_witnesses(profile.entries)


def _two_generator_base(c: int, config: CatenaryConfig) -> NumericalMonoid:
    # in <c-1, c> any two factorizations differ by a multiple of (c, -(c-1))
    target = frozenset({0, c})
    monoid = new_monoid([c - 1, c])
    glue_point = c * (c - 1)
    if catenary_element(monoid, glue_point, config) != c:
        raise BaseCaseSearchExhausted(f"c({glue_point}) in {monoid} differs from {c}")
    window = None
    estimate = default_window(monoid, [glue_point])
    if estimate <= config.verify_budget:
        values, profile = catenary_set(monoid, estimate, config)
        if values != target:
            raise BaseCaseSearchExhausted(f"{monoid} has catenary set {_set_text(values)}")
        window = profile.window_end
    provenance = BaseCase(
        target=target,
        family="two-generator",
        proven=True,
        window=window,
        witnesses=((0, 0), (c, glue_point)),
    )
    return NumericalMonoid(monoid.generators, provenance=provenance)


def base_case(target: Iterable[int], config: CatenaryConfig = DEFAULT_CONFIG) -> NumericalMonoid:
    """A monoid with catenary set {0, c} or {0, 2, c}, verified before it is returned."""

    wanted = frozenset(target)
    c = max(wanted, default=0)
    if c < 3 or wanted not in (frozenset({0, c}), frozenset({0, 2, c})):
        raise InvalidTarget(f"{_set_text(wanted)} is not a base-case set {{0,c}} or {{0,2,c}}")
    if 2 not in wanted:
        return _two_generator_base(c, config)

    for generators in _arithmetic_candidates(c):
        found = _check_candidate(generators, wanted, config)
        if found is not None:
            monoid, window, witnesses = found
            family = "arithmetic"
            break
    else:
        found = None
        upper = config.base_search_factor * c
        logger.info("Searching generator tuples up to %d for catenary set %s", upper, _set_text(wanted))
        for size in range(3, config.base_search_max_generators + 1):
            for generators in combinations(range(3, upper + 1), size):
                if math.gcd(*generators) != 1 or minimal_generators(generators) != generators:
                    continue
                found = _check_candidate(generators, wanted, config)
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise BaseCaseSearchExhausted(
                f"no monoid with at most {config.base_search_max_generators} generators "
                f"up to {upper} has catenary set {_set_text(wanted)}"
            )
        monoid, window, witnesses = found
        family = "search"

    provenance = BaseCase(
        target=wanted, family=family, proven=False, window=window, witnesses=witnesses
    )
    logger.info("Base case for %s: %s (%s)", _set_text(wanted), monoid, family)
    return NumericalMonoid(monoid.generators, provenance=provenance)


# Realization -----------------------------------------------------------------
@dataclass(frozen=True)
class TraceRow:
    c: int
    b: Optional[int]
    monoid: NumericalMonoid
    catenary_set: FrozenSet[int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c": self.c,
            "b": self.b,
            "generators": list(self.monoid.generators),
            "catenary_set": sorted(self.catenary_set),
        }


@dataclass(frozen=True)
class RealizationTrace:
    target: FrozenSet[int]
    base_monoid: NumericalMonoid
    base_set: FrozenSet[int]
    steps: Tuple[AdjoinStep, ...] = ()

    @property
    def final(self) -> NumericalMonoid:
        return self.steps[-1].result if self.steps else self.base_monoid

    def claimed_sets(self) -> List[FrozenSet[int]]:
        sets = [self.base_set]
        for step in self.steps:
            sets.append(sets[-1] | {step.c})
        return sets

    def rows(self) -> List[TraceRow]:
        claimed = self.claimed_sets()
        rows = [TraceRow(max(self.base_set), None, self.base_monoid, claimed[0])]
        for step, values in zip(self.steps, claimed[1:]):
            rows.append(TraceRow(step.c, step.b, step.result, values))
        return rows

    def to_dict(self) -> Dict[str, Any]:
        provenance = self.base_monoid.provenance
        return {
            "target": sorted(self.target),
            "base": provenance.to_dict() if isinstance(provenance, BaseCase) else None,
            "rows": [row.to_dict() for row in self.rows()],
            "final": self.final.to_dict(),
        }


def _b_problem(
    monoid: NumericalMonoid,
    c: int,
    b: int,
    witnesses: Dict[int, int],
) -> Optional[str]:
    """Why b cannot extend ``monoid`` by c while keeping its catenary set, or None.

    Products that leave the 64-bit range raise IntegerOverflow instead.
    """

    if b <= monoid.largest_generator:
        return f"must exceed the largest generator {monoid.largest_generator}"
    if not monoid.contains(b):
        return f"is not an element of {monoid}"
    if math.gcd(b, c) != 1:
        return f"shares the factor {math.gcd(b, c)} with c = {c}"
    for n in monoid.generators:
        checked_mul(c, n, "scaled generator")
    checked_mul(c, b, "glue element")
    if shortest_length_within(monoid, b, c) is None:
        return f"has no factorization of length at most {c}"
    for value, witness in sorted(witnesses.items()):
        # c*witness - c*b would lie in T, so c*witness would jump to c
        if witness >= b and monoid.contains(witness - b):
            return f"would lose catenary degree {value} attained at {witness}"
    return None


def smallest_b(
    monoid: NumericalMonoid,
    c: int,
    witnesses: Dict[int, int],
    config: CatenaryConfig = DEFAULT_CONFIG,
) -> int:
    """Least admissible b; any b with a factorization of length <= c is at most c*n_k."""

    upper = checked_mul(c, monoid.largest_generator, "search bound")
    for b in range(monoid.largest_generator + 1, upper + 1):
        if math.gcd(b, c) != 1 or not monoid.contains(b):
            continue
        problem = _b_problem(monoid, c, b, witnesses)
        if problem is None:
            return b
        logger.debug("Rejected b = %d for c = %d: %s", b, c, problem)
    raise NoAdmissibleB(f"no admissible b up to {upper} for c = {c} over {monoid}")


def realize(
    target: Iterable[int],
    b_policy: BPolicy = "smallest",
    config: CatenaryConfig = DEFAULT_CONFIG,
) -> RealizationTrace:
    """Build a numerical monoid whose set of catenary degrees is ``target``.

    ``b_policy`` is ``"smallest"`` or an explicit list of b values, one per
    adjoin step.
    """

    values = frozenset(target)
    check = validate_target(values)
    if not check.ok:
        raise InvalidTarget(f"{_set_text(values)} violates condition ({check.condition}): {check.message}")
    if isinstance(b_policy, str):
        if b_policy != "smallest":
            raise ValueError(f"unknown b policy {b_policy!r}")
        explicit: Optional[List[int]] = None
    else:
        explicit = list(b_policy)

    ordered = sorted(values)
    above = [v for v in ordered if v > 2]
    base_set = frozenset({0, above[0]} | ({2} & values))
    base = base_case(base_set, config)
    witnesses = dict(base.provenance.witnesses)
    current = base
    steps: List[AdjoinStep] = []
    for index, c in enumerate(above[1:], start=1):
        try:
            if explicit is None:
                b = smallest_b(current, c, witnesses, config)
            else:
                if not explicit:
                    raise BadExplicitB(f"b list ran out at step {index} (c = {c})")
                b = explicit.pop(0)
                problem = _b_problem(current, c, b, witnesses)
                if problem is not None:
                    raise BadExplicitB(f"b = {b} for c = {c} {problem}")
            step = adjoin(current, c, b, config)
            witnesses = {v: checked_mul(c, w, "witness") for v, w in witnesses.items()}
        except IntegerOverflow as exc:
            raise IntegerOverflow(f"step {index} (c = {c}): {exc}") from exc
        witnesses[c] = step.glue_element
        steps.append(step)
        current = step.result
    if explicit:
        raise BadExplicitB(f"unused b values {explicit}")
    return RealizationTrace(target=values, base_monoid=base, base_set=base_set, steps=tuple(steps))


# Verification ----------------------------------------------------------------
@dataclass(frozen=True)
class CheckResult:
    step_index: int
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "step": self.step_index,
            "check": self.name,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "checks": [check.to_dict() for check in self.checks]}


def _check_base(trace: RealizationTrace, effort: int, config: CatenaryConfig) -> List[CheckResult]:
    base = trace.base_monoid
    window = default_window(base, betti_elements(base, config))
    if window <= effort:
        values, profile = catenary_set(base, window, config)
        return [
            CheckResult(
                0,
                "base-catenary-set",
                values == set(trace.base_set),
                f"window {profile.window_end}: {_set_text(values)}",
            )
        ]
    degree = monoid_catenary(base, config)
    return [
        CheckResult(
            0,
            "base-catenary-degree",
            degree == max(trace.base_set),
            f"window {window} exceeds effort {effort}; c(S) = {degree}",
        )
    ]


def _sample_elements(monoid: NumericalMonoid, low: int, high: int, count: int, rng: random.Random) -> List[int]:
    picked = set()
    for _ in range(count * 8):
        if len(picked) >= count or high < low:
            break
        n = rng.randint(low, high)
        if monoid.contains(n):
            picked.add(n)
    return sorted(picked)


def _check_step(payload: Tuple[int, AdjoinStep, FrozenSet[int], int, CatenaryConfig]) -> List[CheckResult]:
    index, step, claimed, effort, config = payload
    result = step.result
    listed = tuple(sorted(step.generators))
    checks = [
        CheckResult(index, "minimal-generation", minimal_generators(listed) == listed, str(result)),
        CheckResult(
            index,
            "frobenius",
            result.frobenius == step.frobenius,
            f"direct {result.frobenius}, formula {step.frobenius}",
        ),
    ]
    if step.b <= effort:
        summary = adjoined_catenary_set(step, config)
        checks.append(
            CheckResult(index, "apery-catenary-set", summary.values == claimed, _set_text(summary.values))
        )

    claimed_betti = adjoined_betti(step, config)
    window = default_window(result, claimed_betti)
    if window <= effort:
        values, profile = catenary_set(result, window, config)
        checks.append(
            CheckResult(index, "catenary-set", values == claimed, f"window {window}: {_set_text(values)}")
        )
        direct_betti = betti_elements(result, config)
        checks.append(
            CheckResult(index, "betti-transport", direct_betti == claimed_betti, _set_text(direct_betti))
        )
        mismatches = [
            n for n, value in profile.entries if adjoined_catenary_element(step, n, config) != value
        ]
        checks.append(
            CheckResult(index, "formula-consistency", not mismatches, f"mismatches: {mismatches[:10]}")
        )
        return checks

    rng = random.Random(config.sample_seed + index)
    not_betti = [n for n in claimed_betti if not is_betti(result, n, config)]
    checks.append(
        CheckResult(index, "betti-claimed", not not_betti, f"connected: {not_betti}")
    )
    gens = result.generators
    scan_end = result.frobenius + 2 * result.largest_generator
    samples = [
        n
        for n in _sample_elements(result, gens[0] + gens[1], scan_end, config.verify_samples, rng)
        if n not in claimed_betti
    ]
    extra = [n for n in samples if is_betti(result, n, config)]
    checks.append(
        CheckResult(index, "betti-sampled", not extra, f"{len(samples)} samples, unexpected: {extra}")
    )
    samples = _sample_elements(result, 0, scan_end, config.verify_samples, rng)
    mismatches = [
        n
        for n in samples
        if adjoined_catenary_element(step, n, config) != catenary_element(result, n, config)
    ]
    checks.append(
        CheckResult(
            index, "formula-sampled", not mismatches, f"{len(samples)} samples, mismatches: {mismatches}"
        )
    )
    return checks


def verify_trace(
    trace: RealizationTrace,
    effort: Optional[int] = None,
    config: CatenaryConfig = DEFAULT_CONFIG,
) -> VerificationReport:
    """Recompute what a trace claims.

    Windows up to ``effort`` integers are recomputed directly; larger steps get
    the structural checks on sampled elements.
    """

    if effort is None:
        effort = config.verify_budget
    checks = _check_base(trace, effort, config)
    claimed = trace.claimed_sets()[1:]
    workers = config.resolved_workers()
    inner = replace(config, workers=1) if workers > 1 and len(trace.steps) > 1 else config
    payloads = [
        (index, step, values, effort, inner)
        for index, (step, values) in enumerate(zip(trace.steps, claimed), start=1)
    ]
    if inner is config:
        for payload in payloads:
            checks.extend(_check_step(payload))
    else:
        logger.info("Verifying %d steps on %d workers", len(payloads), workers)
        with ProcessPoolExecutor(max_workers=min(workers, len(payloads))) as pool:
            for part in pool.map(_check_step, payloads):
                checks.extend(part)
    report = VerificationReport(tuple(checks))
    for failure in report.failures():
        logger.warning("Check %s failed at step %d: %s", failure.name, failure.step_index, failure.detail)
    return report
