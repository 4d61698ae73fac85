"""Eigensequences: solutions of the characteristic equation of a homogeneous recurrence.

For ``x_{n+1} = a_{0,n} x_n + ... + a_{k,n} x_{n-k}`` the characteristic
equation in inversion-free form is::

    r_{n+1} r_n ... r_{n-k+1} - sum_{j<k} a_{j,n} r_{n-j} ... r_{n-k+1} - a_{k,n} = 0

Eigensequences are indexed from 1.  ``r_1..r_k`` are free; the equation at
``n >= k`` determines ``r_{n+1}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import NonUnitTerm
from .recurrence import LinearRecurrence, SolutionStream
from .rings import (
    Classification,
    IntegerRing,
    RationalField,
    RealField,
    Ring,
    RingValue,
    SampledFunctionRing,
    magnitude,
    negligible,
)
from .roots import brute_force_roots, quadratic_roots
from .sequences import Constant


class Eigensequence:
    """Lazily generated sequence ``r_1, r_2, ...``.

    ``source`` is one of ``seeded``, ``extracted``, ``eigenvalue``, ``user``.
    """

    def __init__(self, ring: Ring, source: str, rule, rec: LinearRecurrence | None = None,
                 seeds=(), period: int | None = None):
        self.ring = ring
        self.source = source
        self.rec = rec
        self.seeds = tuple(seeds)
        self.period = period
        self._rule = rule
        self._terms: list[RingValue] = []
        self._error: Exception | None = None

    def term(self, n: int) -> RingValue:
        if n < 1:
            raise IndexError("eigensequence terms are indexed from 1")
        while len(self._terms) < n:
            if self._error is not None:
                raise self._error
            m = len(self._terms) + 1
            try:
                self._terms.append(self.ring.coerce(self._rule(m, self)))
            except NonUnitTerm as exc:
                self._error = exc
                raise
        return self._terms[n - 1]

    __call__ = term

    def terms(self, upto: int) -> list:
        """``[r_1, ..., r_upto]``."""
        if upto >= 1:
            self.term(upto)
        return self._terms[:upto]

    def window(self, n: int, k: int) -> list:
        """``[r_{n-k+1}, ..., r_{n+1}]``, the terms the characteristic equation ties at index n."""
        self.term(n + 1)
        return self._terms[n - k:n + 1]

    def available(self) -> int:
        return len(self._terms)

    def to_rows(self, upto: int):
        return [(n, self.term(n)) for n in range(1, upto + 1)]

    def to_json(self, upto: int) -> dict:
        return {"source": self.source, "terms": [r.to_json() for r in self.terms(upto)],
                "text": [str(r) for r in self.terms(upto)]}

    def __repr__(self):
        shown = ", ".join(str(t) for t in self._terms[:6])
        return f"Eigensequence({self.source}: {shown}{', ...' if len(self._terms) > 6 else ''})"


def term_inverse(seq: Eigensequence, i: int, needed_for: int) -> RingValue:
    r = seq.term(i)
    c = r.classify()
    if c is not Classification.UNIT:
        raise NonUnitTerm(i, c.value, r, needed_for)
    return r.inverse()


def char_residual(rec: LinearRecurrence, window, n: int) -> RingValue:
    """Left side of the characteristic equation at index ``n``.

    ``window = [r_{n-k+1}, ..., r_{n+1}]``; no inverses are taken.
    """
    k = rec.k
    if len(window) != k + 1:
        raise ValueError(f"window must hold k+1 = {k + 1} terms, got {len(window)}")
    ring = rec.ring
    w = [ring.coerce(r) for r in window]
    full = ring.one
    for r in w:
        full = full * r
    acc = full - rec.coeff(k, n)
    for j in range(k):
        prod = ring.one
        for r in w[:k - j]:
            prod = prod * r
        acc = acc - rec.coeff(j, n) * prod
    return acc


def _ricn_step(rec: LinearRecurrence, seq: Eigensequence, n: int) -> RingValue:
    """``r_{n+1} = a_{0,n} + sum_j a_{j,n} (r_n r_{n-1} ... r_{n-j+1})^{-1}``."""
    acc = rec.coeff(0, n)
    inv_prod = rec.ring.one
    for j in range(1, rec.order):
        inv_prod = inv_prod * term_inverse(seq, n - j + 1, n + 1)
        acc = acc + rec.coeff(j, n) * inv_prod
    return acc


def eigenseq_from_seed(rec: LinearRecurrence, seeds, horizon: int | None = None) -> Eigensequence:
    """Generate from ``seeds = [r_1..r_k]`` via the inverse form of the characteristic equation."""
    ring = rec.ring
    seeds = [ring.coerce(s) for s in seeds]
    if len(seeds) != rec.k:
        raise ValueError(f"an order-{rec.order} recurrence needs exactly {rec.k} seed(s), got {len(seeds)}")
    for i, s in enumerate(seeds, start=1):
        if not s.is_unit():
            raise NonUnitTerm(i, s.classify().value, s)

    def rule(m, seq):
        if m <= len(seeds):
            return seeds[m - 1]
        return _ricn_step(rec, seq, m - 1)

    seq = Eigensequence(ring, "seeded", rule, rec=rec, seeds=seeds)
    if horizon:
        seq.terms(horizon)
    return seq


def eigenseq_from_unitary(solution, side: str = "right", rec: LinearRecurrence | None = None) -> Eigensequence:
    """Ratio sequence ``r_n = x_n x_{n-1}^{-1}`` (right) or ``x_{n-1}^{-1} x_n`` (left)."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    if isinstance(solution, SolutionStream):
        rec = rec or solution.rec.homogeneous()
        get = solution.term
        ring = solution.rec.ring
    else:
        xs = list(solution)
        get = xs.__getitem__
        ring = xs[0].ring

    def rule(m, seq):
        prev = get(m - 1)
        c = prev.classify()
        if c is not Classification.UNIT:
            raise NonUnitTerm(m - 1, c.value, prev, m)
        cur = get(m)
        return cur * prev.inverse() if side == "right" else prev.inverse() * cur

    return Eigensequence(ring, "extracted", rule, rec=rec)


def eigenvalue_sequence(value: RingValue, rec: LinearRecurrence | None = None) -> Eigensequence:
    return Eigensequence(value.ring, "eigenvalue", lambda m, seq: value, rec=rec, period=1)


def user_sequence(values, periodic: bool = False, rec: LinearRecurrence | None = None) -> Eigensequence:
    values = list(values)
    ring = values[0].ring

    def rule(m, seq):
        if periodic:
            return values[(m - 1) % len(values)]
        if m > len(values):
            raise IndexError(f"user-supplied eigensequence has only {len(values)} terms")
        return values[m - 1]

    return Eigensequence(ring, "user", rule, rec=rec, period=len(values) if periodic else None)


def window_residual(rec: LinearRecurrence, window, n: int):
    """``(ok, residual)`` for one window; float kinds get an error budget relative to the terms' size."""
    res = char_residual(rec, window, n)
    if rec.ring.is_exact:
        return res.is_zero(), res
    scale = 1.0
    for r in window:
        scale *= max(1.0, magnitude(r))
    scale *= max([1.0] + [magnitude(rec.coeff(j, n)) for j in range(rec.order)])
    return negligible(res, scale), res


def first_residual_failure(rec: LinearRecurrence, seq: Eigensequence, upto: int):
    """First ``n`` in ``[k, upto)`` whose window fails the characteristic equation, with the residual."""
    for n in range(rec.k, upto):
        ok, res = window_residual(rec, seq.window(n, rec.k), n)
        if not ok:
            return n, res
    return None


# -- classification ------------------------------------------------------

class EigenVerdict(str, Enum):
    UNITARY = "Unitary"
    IMPROPER = "Improper"
    PROPER_NON_UNITARY = "ProperNonUnitary"
    UNDECIDABLE = "Undecidable"


@dataclass(frozen=True)
class EigenClassification:
    verdict: EigenVerdict
    index: int | None = None
    classification: Classification | None = None

    def to_json(self):
        out = {"verdict": self.verdict.value}
        if self.index is not None:
            out["index"] = self.index
            out["classification"] = self.classification.value
        return out


def classify_eigenseq(e: Eigensequence, up_to: int) -> EigenClassification:
    """Scan ``r_1..r_up_to``: any zero divisor makes the sequence improper."""
    first_other = None
    first_undecidable = None
    for n in range(1, up_to + 1):
        try:
            r = e.term(n)
        except NonUnitTerm as exc:
            # generation stopped at a nonunit; that term was already scanned
            if first_other is None:
                first_other = (exc.index, Classification(exc.classification))
            break
        c = r.classify()
        if c is Classification.ZERO_DIVISOR:
            return EigenClassification(EigenVerdict.IMPROPER, n, c)
        if c is Classification.UNDECIDABLE and first_undecidable is None:
            first_undecidable = (n, c)
        elif c is not Classification.UNIT and c is not Classification.UNDECIDABLE and first_other is None:
            first_other = (n, c)
    if first_undecidable is not None:
        return EigenClassification(EigenVerdict.UNDECIDABLE, *first_undecidable)
    if first_other is not None:
        return EigenClassification(EigenVerdict.PROPER_NON_UNITARY, *first_other)
    return EigenClassification(EigenVerdict.UNITARY)


# -- eigenvalues of constant-coefficient recurrences ----------------------------

@dataclass
class EigenvalueResult:
    values: list
    complete: bool
    note: str = ""
    ring: Ring | None = None

    def to_json(self):
        return {"eigenvalues": [str(v) for v in self.values], "complete": self.complete, "note": self.note}


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _deflate(poly: list[Fraction], root: Fraction) -> list[Fraction]:
    """Divide ascending-coefficient ``poly`` by ``(r - root)``."""
    out = [Fraction(0)] * (len(poly) - 1)
    carry = Fraction(0)
    for i in range(len(poly) - 1, 0, -1):
        carry = poly[i] + carry * root if i < len(poly) - 1 else poly[i]
        out[i - 1] = carry
    return out


def _peval(poly, x):
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def rational_roots(poly: list[Fraction]) -> list[Fraction]:
    """Rational roots (with multiplicity) of an ascending-coefficient rational polynomial."""
    poly = list(poly)
    found = []
    while len(poly) > 1 and poly[0] == 0:
        found.append(Fraction(0))
        poly = poly[1:]
    if len(poly) <= 1:
        return found
    den = math.lcm(*(c.denominator for c in poly))
    ints = [int(c * den) for c in poly]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    cands = sorted({Fraction(s * p, q) for p in _divisors(ints[0]) for q in _divisors(ints[-1]) for s in (1, -1)})
    for x in cands:
        while len(poly) > 1 and _peval(poly, x) == 0:
            found.append(x)
            poly = _deflate(poly, x)
    return found


def eigenvalues_constant(rec: LinearRecurrence) -> EigenvalueResult:
    """Roots in the recurrence's ring of ``r^{k+1} - a_0 r^k - ... - a_k``."""
    ring = rec.ring
    poly = rec.characteristic_polynomial()
    degree = rec.order
    if ring.is_finite:
        return EigenvalueResult(brute_force_roots(poly), True, "exhaustive search", ring)
    if isinstance(ring, (IntegerRing, RationalField)):
        fpoly = [Fraction(c.payload) for c in poly]
        roots = rational_roots(fpoly)
        if isinstance(ring, IntegerRing):
            roots = [r for r in roots if r.denominator == 1]
        values = []
        rest = fpoly
        for r in roots:
            rest = _deflate(rest, r)
            v = ring(r)
            if v not in values:
                values.append(v)
        if len(roots) == degree:
            return EigenvalueResult(values, True, "rational root test", ring)
        note = f"remaining factor of degree {len(rest) - 1} has no roots in {ring}"
        if len(rest) == 3:
            Q = RationalField()
            res = quadratic_roots(Q(rest[2]), Q(rest[1]), Q(rest[0]))
            if res.kind == "extension_roots":
                note = res.note
            elif isinstance(ring, IntegerRing) and res.roots:
                note = "remaining roots are not integers"
        return EigenvalueResult(values, False, note, ring)
    if degree == 1:
        return EigenvalueResult([-poly[0]], True, "linear", ring)
    if degree == 2 and not isinstance(ring, SampledFunctionRing):
        res = quadratic_roots(poly[2], poly[1], poly[0])
        if res.kind in ("two_roots", "double_root") and res.ring == ring:
            return EigenvalueResult(_dedupe(res.roots), True, "quadratic formula", ring)
        return EigenvalueResult([], False, res.note or res.kind, ring)
    return EigenvalueResult([], False, f"degree {degree} root finding is not supported over {ring}", ring)


def _dedupe(values):
    out = []
    for v in values:
        if v not in out:
            out.append(v)
    return out


# -- equivalence of unitary sequences ----------------------------------------

@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    unit: RingValue | None = None
    divergence: int | None = None

    def __bool__(self):
        return self.equivalent


def _ratios(xs, up_to, side):
    out = []
    for n in range(1, up_to + 1):
        prev, cur = xs[n - 1], xs[n]
        out.append(cur * prev.inverse() if side == "right" else prev.inverse() * cur)
    return out


def right_equivalent(x, y, up_to: int, side: str = "right") -> Equivalence:
    """Whether ``y_n = x_n u`` (right) or ``u x_n`` (left) for one unit ``u``, decided by ratios."""
    xs = [x[n] for n in range(up_to + 1)]
    ys = [y[n] for n in range(up_to + 1)]
    for n, (a, b) in enumerate(zip(_ratios(xs, up_to, side), _ratios(ys, up_to, side)), start=1):
        if a != b:
            return Equivalence(False, divergence=n)
    u = xs[0].inverse() * ys[0] if side == "right" else ys[0] * xs[0].inverse()
    for n in range(up_to + 1):
        expected = xs[n] * u if side == "right" else u * xs[n]
        if expected != ys[n]:
            # unreachable when ratios agree; kept as a hard check
            return Equivalence(False, divergence=n)
    return Equivalence(True, unit=u)


# -- Poincare-Perron -------------------------------------------------------

@dataclass
class PPReport:
    limiting_eigenvalues: list
    tail: list
    converged_to: RingValue | None
    max_deviation: object
    coefficient_deviation: object
    deviations: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "limiting_eigenvalues": [str(v) for v in self.limiting_eigenvalues],
            "tail": [str(v) for v in self.tail],
            "converged_to": None if self.converged_to is None else str(self.converged_to),
            "max_deviation": None if self.max_deviation is None else str(self.max_deviation),
            "coefficient_deviation": str(self.coefficient_deviation),
        }


def _abs(x: RingValue):
    if isinstance(x.ring, RationalField):
        return abs(x.payload)
    return abs(float(x.payload))


def poincare_perron_check(rec: LinearRecurrence, seed, horizon: int, tail_start: int, tol,
                          limits) -> PPReport:
    """Does the seeded eigensequence stay within ``tol`` of a limiting eigenvalue on ``r_{tail_start}..r_{horizon}``?"""
    ring = rec.ring
    if not isinstance(ring, (RationalField, RealField)):
        raise ValueError("Poincare-Perron check needs the rationals or the reals")
    if not 1 <= tail_start <= horizon:
        raise ValueError("tail_start must lie in [1, horizon]")
    limits = [ring.coerce(a) for a in limits]
    if len(limits) != rec.order:
        raise ValueError(f"need {rec.order} limiting coefficients")
    limiting = LinearRecurrence(ring, [Constant(a) for a in limits], 0, [])
    eig = eigenvalues_constant(limiting)
    coef_dev = max(_abs(rec.coeff(j, horizon) - limits[j]) for j in range(rec.order))
    seeds = seed if isinstance(seed, (list, tuple)) else [seed]
    seq = eigenseq_from_seed(rec, seeds)
    tail = [seq.term(n) for n in range(tail_start, horizon + 1)]
    deviations = {}
    for lam in eig.values:
        deviations[str(lam)] = max(_abs(r - lam) for r in tail)
    best, best_dev = None, None
    for lam in eig.values:
        d = deviations[str(lam)]
        if best_dev is None or d < best_dev:
            best, best_dev = lam, d
    converged = best if best_dev is not None and best_dev <= tol else None
    return PPReport(eig.values, tail, converged, best_dev, coef_dev, deviations)


__all__ = [
    "Eigensequence", "EigenClassification", "EigenVerdict", "EigenvalueResult", "Equivalence", "PPReport",
    "char_residual", "eigenseq_from_seed", "eigenseq_from_unitary", "eigenvalue_sequence", "user_sequence",
    "classify_eigenseq", "eigenvalues_constant", "right_equivalent", "poincare_perron_check",
    "first_residual_failure", "window_residual", "term_inverse", "rational_roots",
]
