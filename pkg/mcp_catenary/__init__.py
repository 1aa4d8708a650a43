"""Factorization invariants of numerical monoids and realization of catenary sets."""

__version__ = "0.1.0"

from .catenary import (  # noqa: F401,E402
    CatenaryProfile,
    NablaGraph,
    betti_elements,
    catenary_element,
    catenary_set,
    monoid_catenary,
    nabla_graph,
)
from .config import CatenaryConfig  # noqa: F401,E402
from .construction import (  # noqa: F401,E402
    AdjoinStep,
    GluingSpec,
    RealizationTrace,
    adjoin,
    adjoined_betti,
    adjoined_catenary_element,
    exact_catenary_set,
    glue,
    realize,
    validate_target,
    verify_trace,
)
from .errors import MonoidError  # noqa: F401,E402
from .factorization import FactorizationVector, distance, factorizations, gcd_vec  # noqa: F401,E402
from .monoid import NumericalMonoid, apery_set, contains, frobenius, new_monoid  # noqa: F401,E402
