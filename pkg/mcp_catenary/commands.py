"""Command handlers shared by the CLI and the MCP server.

Each handler takes plain values, calls the library and returns an
OutputEnvelope; rendering is left to the caller.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Sequence, Union

from . import __version__
from .catenary import betti_elements, betti_scan_bound, catenary_element, catenary_set, monoid_catenary
from .config import DEFAULT_CONFIG, CatenaryConfig
from .construction import (
    CatenarySummary,
    adjoin,
    adjoined_betti,
    adjoined_catenary_set,
    exact_catenary_set,
    glue,
    glued_frobenius,
    realize,
    verify_trace,
)
from .errors import InvalidGenerator, InvalidTarget
from .factorization import factorizations
from .monoid import NumericalMonoid, new_monoid, parse_generators
from .oracle import oracle_betti, oracle_catenary
from .output import OutputEnvelope, set_text

logger = logging.getLogger(__name__)

IntList = Union[str, Sequence[int]]
TOOL = "mcp-catenary"


def as_int_list(value: IntList) -> List[int]:
    if isinstance(value, str):
        return parse_generators(value)
    return [int(v) for v in value]


def _monoid(generators: IntList) -> NumericalMonoid:
    return new_monoid(as_int_list(generators))


def _envelope(command: str, inputs: Dict[str, Any], payload: Dict[str, Any], **extra: Any) -> OutputEnvelope:
    provenance: Dict[str, Any] = {"tool": TOOL, "version": __version__, "inputs": inputs}
    provenance.update(extra)
    return OutputEnvelope(command=command, payload=payload, provenance=provenance)


def _summary_provenance(summary: CatenarySummary) -> Dict[str, Any]:
    if summary.exact:
        return {"exact": True}
    return {"exact": False, "heuristic": True, "window": summary.window, "stable": summary.stable}


def analyze(generators: IntList, window: Optional[int] = None, config: CatenaryConfig = DEFAULT_CONFIG) -> OutputEnvelope:
    monoid = _monoid(generators)
    betti = betti_elements(monoid, config)
    degree = monoid_catenary(monoid, config)
    if window is None:
        summary = exact_catenary_set(monoid, config)
    else:
        values, profile = catenary_set(monoid, window, config)
        summary = CatenarySummary(frozenset(values), exact=False, window=profile.window_end, stable=profile.stable)
    apery = monoid.apery_set(monoid.multiplicity)
    payload = {
        "monoid": monoid.to_dict(),
        "apery": apery,
        "betti": betti,
        "catenary_degree": degree,
        "catenary_set": summary.to_dict(),
    }
    envelope = _envelope("analyze", {"generators": as_int_list(generators), "window": window}, payload, **_summary_provenance(summary))
    envelope.text_lines = [
        f"generators: {monoid}",
        f"frobenius: {monoid.frobenius}",
        f"apery mod {monoid.multiplicity}: {set_text(apery)}",
        f"betti: {set_text(betti)}",
        f"catenary degree: {degree}",
        f"catenary set: {set_text(summary.values)}",
    ]
    envelope.annotate_text = not summary.exact
    return envelope


def factorize(generators: IntList, n: int) -> OutputEnvelope:
    monoid = _monoid(generators)
    vectors = factorizations(monoid, n)
    rows = [list(v) for v in vectors]
    envelope = _envelope(
        "factorize",
        {"generators": as_int_list(generators), "n": n},
        {"generators": list(monoid.generators), "element": n, "factorizations": rows},
    )
    envelope.text_lines = [",".join(str(a) for a in row) for row in rows]
    envelope.csv_header = [f"a_{i}" for i in range(1, monoid.embedding_dimension + 1)]
    envelope.csv_rows = rows
    return envelope


def catenary(generators: IntList, n: int, use_oracle: bool = False, config: CatenaryConfig = DEFAULT_CONFIG) -> OutputEnvelope:
    monoid = _monoid(generators)
    if use_oracle:
        value = oracle_catenary(monoid, n, config)
    else:
        value = catenary_element(monoid, n, config)
    envelope = _envelope(
        "catenary",
        {"generators": as_int_list(generators), "n": n},
        {"element": n, "catenary": value},
        method="oracle" if use_oracle else "spanning-tree",
    )
    envelope.text_lines = [str(value)]
    envelope.csv_header = ["n", "catenary"]
    envelope.csv_rows = [[n, value]]
    return envelope


def betti(generators: IntList, use_oracle: bool = False, config: CatenaryConfig = DEFAULT_CONFIG) -> OutputEnvelope:
    monoid = _monoid(generators)
    bound = betti_scan_bound(monoid)
    elements = oracle_betti(monoid, bound, config) if use_oracle else betti_elements(monoid, config)
    envelope = _envelope(
        "betti",
        {"generators": as_int_list(generators)},
        {"generators": list(monoid.generators), "betti": elements},
        method="oracle" if use_oracle else "nabla-scan",
        scan_bound=bound,
    )
    envelope.text_lines = [str(n) for n in elements]
    envelope.csv_header = ["betti"]
    envelope.csv_rows = [[n] for n in elements]
    return envelope


def cset(generators: IntList, window: Optional[int] = None, config: CatenaryConfig = DEFAULT_CONFIG) -> OutputEnvelope:
    monoid = _monoid(generators)
    if window is None:
        summary = exact_catenary_set(monoid, config)
    else:
        values, profile = catenary_set(monoid, window, config)
        summary = CatenarySummary(frozenset(values), exact=False, window=profile.window_end, stable=profile.stable)
    envelope = _envelope(
        "cset",
        {"generators": as_int_list(generators), "window": window},
        {"generators": list(monoid.generators), "catenary_set": summary.to_dict()},
        **_summary_provenance(summary),
    )
    envelope.text_lines = [set_text(summary.values)]
    envelope.annotate_text = not summary.exact
    envelope.csv_header = ["catenary", "witness"]
    envelope.csv_rows = [[v, w] for v, w in summary.witnesses]
    return envelope


def glue_command(g1: IntList, d1: int, g2: IntList, d2: int) -> OutputEnvelope:
    s1, s2 = _monoid(g1), _monoid(g2)
    glued = glue(s1, d1, s2, d2)
    gluing = glued.provenance
    payload = {"monoid": glued.to_dict(), "gluing": gluing.to_dict(), "glued_frobenius": glued_frobenius(gluing)}
    envelope = _envelope(
        "glue",
        {"g1": list(s1.generators), "d1": d1, "g2": list(s2.generators), "d2": d2},
        payload,
    )
    envelope.text_lines = [str(glued)]
    return envelope


def adjoin_command(generators: IntList, c: int, b: int, config: CatenaryConfig = DEFAULT_CONFIG) -> OutputEnvelope:
    base = _monoid(generators)
    step = adjoin(base, c, b, config)
    summary = adjoined_catenary_set(step, config)
    betti_list = adjoined_betti(step, config)
    payload = step.to_dict()
    payload.update({"betti": betti_list, "catenary_set": summary.to_dict(), "catenary_degree": c})
    envelope = _envelope(
        "adjoin", {"generators": list(base.generators), "c": c, "b": b}, payload, exact=True
    )
    order = "⟨" + ",".join(str(g) for g in step.generators) + "⟩"
    envelope.text_lines = [
        str(step.result),
        f"construction order: {order}",
        f"glue element: {step.glue_element}",
        f"betti: {set_text(betti_list)}",
        f"catenary set: {set_text(summary.values)}",
    ]
    return envelope


def realize_command(
    target: IntList,
    b_list: Optional[IntList] = None,
    verify: Optional[int] = None,
    config: CatenaryConfig = DEFAULT_CONFIG,
) -> OutputEnvelope:
    """``verify`` is an effort budget; 0 or less means the configured budget."""

    try:
        values = as_int_list(target)
    except InvalidGenerator as exc:
        raise InvalidTarget(str(exc)) from exc
    policy = "smallest" if b_list is None else as_int_list(b_list)
    trace = realize(values, policy, config)
    rows = trace.rows()
    payload = trace.to_dict()
    text = [
        f"{row.c}, {'-' if row.b is None else row.b}, {row.monoid}, {set_text(row.catenary_set)}"
        for row in rows
    ]
    extra: Dict[str, Any] = {"exact": True, "b_policy": "smallest" if b_list is None else "explicit"}
    if verify is not None:
        effort = verify if verify > 0 else config.verify_budget
        report = verify_trace(trace, effort, config)
        payload["verification"] = report.to_dict()
        extra["verify_effort"] = effort
        text.append(f"verification: {'passed' if report.passed else 'FAILED'}")
        text.extend(
            f"  step {check.step_index} {check.name}: {check.detail}" for check in report.failures()
        )
    envelope = _envelope(
        "realize",
        {"target": sorted(set(values)), "b_list": None if b_list is None else as_int_list(b_list)},
        payload,
        **extra,
    )
    envelope.text_lines = text
    envelope.csv_header = ["c", "b", "generators", "catenary_set"]
    envelope.csv_rows = [
        [row.c, "" if row.b is None else row.b, str(row.monoid), set_text(row.catenary_set)] for row in rows
    ]
    return envelope


def plot_data(generators: IntList, window: Optional[int] = None, config: CatenaryConfig = DEFAULT_CONFIG) -> OutputEnvelope:
    monoid = _monoid(generators)
    _, profile = catenary_set(monoid, window, config)
    rows = [[n, value] for n, value in profile.entries]
    envelope = _envelope(
        "plot-data",
        {"generators": as_int_list(generators), "window": window},
        {"generators": list(monoid.generators), "entries": rows},
        window=profile.window_end,
        stable=profile.stable,
    )
    envelope.csv_header = ["n", "catenary"]
    envelope.csv_rows = rows
    envelope.text_lines = ["n,catenary"] + [f"{n},{value}" for n, value in rows]
    return envelope
