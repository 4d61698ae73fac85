"""Semiconjugate factorization of linear recurrences over rings."""
from __future__ import annotations

__version__ = "0.1.0"

from .rings import (  # noqa: E402
    BooleanRing, Classification, IntegerRing, ModularRing, QuadraticField, RationalField,
    RealField, RingValue, SampledFunctionRing, ring_from_json,
)
from .sequences import Constant, Derived, Formula, Periodic, Table  # noqa: E402
from .recurrence import (  # noqa: E402
    LinearRecurrence, NonrecursiveEquation, iterate, recurrence_from_json,
)
from .eigen import (  # noqa: E402
    Eigensequence, classify_eigenseq, eigenseq_from_seed, eigenseq_from_unitary, eigenvalues_constant,
)
from .factor import ScFactorization, cascade_factorize, sc_factorize, solve_via_factorization  # noqa: E402
from .periodic import periodic_search  # noqa: E402
from .closed_form import order2_closed_form  # noqa: E402

__all__ = [
    "BooleanRing", "Classification", "IntegerRing", "ModularRing", "QuadraticField", "RationalField",
    "RealField", "RingValue", "SampledFunctionRing", "ring_from_json",
    "Constant", "Derived", "Formula", "Periodic", "Table",
    "LinearRecurrence", "NonrecursiveEquation", "iterate", "recurrence_from_json",
    "Eigensequence", "classify_eigenseq", "eigenseq_from_seed", "eigenseq_from_unitary",
    "eigenvalues_constant", "ScFactorization", "cascade_factorize", "sc_factorize",
    "solve_via_factorization", "periodic_search", "order2_closed_form",
]
