"""Polynomial roots over the supported rings.

Finite rings are searched exhaustively; quadratics over the infinite kinds use
the discriminant, upgrading rational inputs to a quadratic field when the
discriminant is not a rational square.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InfiniteRing, NoSquareRoot
from .rings import (
    BooleanRing,
    IntegerRing,
    ModularRing,
    QuadraticField,
    RationalField,
    RealField,
    Ring,
    RingValue,
    SampledFunctionRing,
    squarefree_decomposition,
)


def poly_eval(coeffs, x: RingValue) -> RingValue:
    """Evaluate ``sum(coeffs[i] * x**i)`` by Horner's rule."""
    acc = x.ring.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def brute_force_roots(coeffs) -> list[RingValue]:
    """All roots of ``sum(coeffs[i] * r**i)`` in a finite ring, in element order."""
    if not coeffs:
        raise ValueError("coefficient list is empty")
    ring = coeffs[0].ring
    if not ring.is_finite:
        raise InfiniteRing(f"{ring} is infinite; exhaustive search is impossible")
    cs = [ring.coerce(c) for c in coeffs]
    return [x for x in ring.elements() if poly_eval(cs, x).is_zero()]


@dataclass
class RootResult:
    """Outcome of solving ``a2*r**2 + a1*r + a0 = 0``.

    ``kind`` is one of ``two_roots``, ``double_root``, ``extension_roots``,
    ``degenerate`` (linear or inconsistent), ``no_roots`` (no square root of the
    discriminant in the ring), ``conjugate_pair`` (float kinds, negative
    discriminant) or ``mixed`` (sampled kinds, sign changes across the grid).
    """

    kind: str
    roots: list = field(default_factory=list)
    ring: Ring | None = None
    inconsistent: bool = False
    all_elements: bool = False
    modulus: object = None
    angle: object = None
    discriminant: object = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "roots": [str(r) for r in self.roots],
               "ring": self.ring.to_json() if self.ring is not None else None}
        if self.kind == "degenerate":
            out["inconsistent"] = self.inconsistent
            out["all_elements"] = self.all_elements
        if self.note:
            out["note"] = self.note
        return out


def _linear(a1: RingValue, a0: RingValue) -> RootResult:
    ring = a1.ring
    if a1.is_zero():
        if a0.is_zero():
            return RootResult("degenerate", [], ring, all_elements=True,
                              note="every element is a root")
        return RootResult("degenerate", [], ring, inconsistent=True,
                          note="leading terms vanish and the constant term is nonzero")
    return RootResult("degenerate", [-a0 / a1], ring, note="linear equation")


def quadratic_roots(a2: RingValue, a1: RingValue, a0: RingValue) -> RootResult:
    ring = a2.ring
    a1, a0 = ring.coerce(a1), ring.coerce(a0)
    if isinstance(ring, (ModularRing, BooleanRing)):
        raise ValueError(f"use brute_force_roots for the finite ring {ring}")
    if isinstance(ring, SampledFunctionRing):
        return _sampled_quadratic(a2, a1, a0)
    if a2.is_zero():
        return _linear(a1, a0)
    disc = a1 * a1 - 4 * a2 * a0
    two_a = 2 * a2
    if disc.is_zero():
        return RootResult("double_root", [-a1 / two_a], ring, discriminant=disc)
    if isinstance(ring, RealField) and disc.payload < 0:
        return _conjugate(a2.payload, a1.payload, a0.payload, ring, disc)
    try:
        root = disc.sqrt()
    except NoSquareRoot:
        if isinstance(ring, (RationalField, IntegerRing)):
            return _extension_roots(a2, a1, disc)
        return RootResult("no_roots", [], ring, discriminant=disc,
                          note="discriminant has no square root in the ring")
    if isinstance(ring, IntegerRing):
        q = RationalField()
        roots = [(q(-a1) + q(s)) / q(two_a) for s in (-root, root)]
        if all(r.payload.denominator == 1 for r in roots):
            roots = [ring(r.payload) for r in roots]
            return RootResult("two_roots", _sorted(roots), ring, discriminant=disc)
        return RootResult("two_roots", _sorted(roots), q, discriminant=disc,
                          note="roots lie in the rationals")
    roots = [(-a1 + s) / two_a for s in (-root, root)]
    return RootResult("two_roots", _sorted(roots), ring, discriminant=disc)


def _sorted(roots):
    try:
        return sorted(roots, key=float)
    except TypeError:
        return roots


def _extension_roots(a2, a1, disc) -> RootResult:
    """Roots of a rational quadratic in ``Q(sqrt(d))``, d the square-free part of the discriminant."""
    D = Fraction(disc.payload)
    # sqrt(n/m) = sqrt(n*m)/m
    s, d = squarefree_decomposition(D.numerator * D.denominator)
    K = QuadraticField(d)
    sqrt_disc = K((Fraction(0), Fraction(s, D.denominator)))
    na1, two_a = K(Fraction(a1.payload)), K(2 * Fraction(a2.payload))
    roots = [(-na1 - sqrt_disc) / two_a, (-na1 + sqrt_disc) / two_a]
    kind_note = "complex pair" if d < 0 else f"irrational pair in Q(sqrt({d}))"
    return RootResult("extension_roots", _sorted(roots), K, discriminant=disc, note=kind_note)


def _conjugate(a2: float, a1: float, a0: float, ring, disc) -> RootResult:
    modulus = math.sqrt(a0 / a2)
    angle = math.acos(max(-1.0, min(1.0, -a1 / (2 * a2 * modulus))))
    return RootResult("conjugate_pair", [], ring, modulus=modulus, angle=angle,
                      discriminant=disc, note="roots modulus*exp(+-i*angle)")


def _sampled_quadratic(a2, a1, a0) -> RootResult:
    ring = a2.ring
    if any(abs(v) <= ring.tol for v in a2.payload):
        raise ValueError("leading coefficient must be nonzero at every grid point")
    disc = a1 * a1 - 4 * a2 * a0
    signs = set()
    for v in disc.payload:
        signs.add(0 if abs(v) <= ring.tol else (1 if v > 0 else -1))
    if signs == {0}:
        return RootResult("double_root", [-a1 / (2 * a2)], ring, discriminant=disc)
    if -1 not in signs:
        root = disc.sqrt()
        return RootResult("two_roots", [(-a1 - root) / (2 * a2), (-a1 + root) / (2 * a2)],
                          ring, discriminant=disc)
    if signs == {-1}:
        mods, angs = [], []
        for x2, x1, x0 in zip(a2.payload, a1.payload, a0.payload):
            m = math.sqrt(x0 / x2)
            mods.append(m)
            angs.append(math.acos(max(-1.0, min(1.0, -x1 / (2 * x2 * m)))))
        return RootResult("conjugate_pair", [], ring, modulus=ring(mods), angle=ring(angs),
                          discriminant=disc)
    return RootResult("mixed", [], ring, discriminant=disc,
                      note="discriminant changes sign across the grid; split pointwise")
