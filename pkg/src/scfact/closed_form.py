"""Closed forms for second-order homogeneous recurrences.

``x_{n+1} = (a+b) x_n - ab x_{n-1}`` splits as ``t_{n+1} = a t_n``,
``x_{n+1} = b x_n + t_{n+1}`` in any ring, which gives

    x_n = b^n x_0 + (a^{n-1} + b^{n-1} + sum_{i=2}^{n-1} b^{n-i} a^{i-1}) t_1,   n >= 2

with ``t_1 = x_1 - b x_0``.  Over a field this becomes ``c1 a^n + c2 b^n``; for
real ``x_{n+1} = f x_n + g x_{n-1}`` with ``f^2 + 4g < 0`` the roots are a
conjugate pair and

    x_n = (-g)^{n/2} [x_0 cos(n theta) + (2 x_1 - f x_0) / sqrt(-f^2 - 4g) * sin(n theta)]

with ``theta = arccos(f / (2 sqrt(-g)))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import RingMismatchError, WrongRegion
from .recurrence import LinearRecurrence, iterate
from .rings import (
    BooleanRing,
    QuadraticField,
    RationalField,
    RealField,
    RingValue,
    SampledFunctionRing,
    squarefree_decomposition,
)
from .roots import brute_force_roots, quadratic_roots
from .sequences import Constant, Derived, Formula


def _pow(x: RingValue, n: int) -> RingValue:
    """``x^n`` for ``n >= 1`` by repeated squaring, never touching the identity."""
    if n < 1:
        raise ValueError("identity-free powers need n >= 1")
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


# -- general rings -------------------------------------------------------------

def solve_order2_ring(a: RingValue, b: RingValue, x0: RingValue, x1: RingValue, n: int) -> RingValue:
    """Identity-free closed form; the bracketed sum is only valid from n = 2 on."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return x0
    if n == 1:
        return x1
    t1 = x1 - b * x0
    coef = _pow(a, n - 1) + _pow(b, n - 1)
    for i in range(2, n):
        coef = coef + _pow(b, n - i) * _pow(a, i - 1)
    return _pow(b, n) * x0 + coef * t1


def boolean_closed_form(a: RingValue, b: RingValue, x0: RingValue, x1: RingValue, n: int) -> RingValue:
    """Parity form in a Boolean ring (``r^2 = r``, ``2r = 0``), n >= 2."""
    if not isinstance(a.ring, BooleanRing):
        raise TypeError("parity form needs a Boolean ring")
    if n < 2:
        return x0 if n == 0 else x1
    if n % 2 == 0:
        return (a + b) * x1 + a * b * x0
    return (a + b) * x1 + a * b * x1


# -- fields ----------------------------------------------------------------

def solve_order2_field(a: RingValue, b: RingValue, x0: RingValue, x1: RingValue, n: int) -> RingValue:
    """``c1 a^n + c2 b^n`` for a != b, ``[n x1 - (n-1) b x0] b^{n-1}`` for a = b."""
    if n == 0:
        return x0
    if n == 1:
        return x1
    if a == b:
        return (n * x1 - (n - 1) * b * x0) * b ** (n - 1)
    d_inv = (a - b).inverse()
    c1 = (x1 - b * x0) * d_inv
    c2 = (a * x0 - x1) * d_inv
    return c1 * a ** n + c2 * b ** n


# -- real conjugate pairs ------------------------------------------------------

def _scalar_conjugate(f: float, g: float, x0: float, x1: float, n: int) -> float:
    h2 = f * f + 4 * g
    if h2 >= 0:
        raise WrongRegion(f"f^2 + 4g = {h2:.12g} >= 0; roots are real, use the field form")
    rho = math.sqrt(-g)
    theta = math.acos(max(-1.0, min(1.0, f / (2 * rho))))
    return rho ** n * (x0 * math.cos(n * theta) + (2 * x1 - f * x0) / math.sqrt(-h2) * math.sin(n * theta))


def _samples(x, ring):
    if isinstance(x, RingValue):
        return x.payload if isinstance(x.ring, SampledFunctionRing) else (x.payload,)
    if isinstance(ring, SampledFunctionRing):
        return ring.coerce(x).payload
    return (float(x),)


def _grid_ring(*values):
    for v in values:
        if isinstance(v, RingValue) and isinstance(v.ring, SampledFunctionRing):
            return v.ring
    for v in values:
        if isinstance(v, RingValue):
            return v.ring
    return None


def _pointwise(fn, f, g, x0, x1, n):
    ring = _grid_ring(f, g, x0, x1)
    cols = [_samples(v, ring) for v in (f, g, x0, x1)]
    width = max(len(c) for c in cols)
    cols = [c * width if len(c) == 1 else c for c in cols]
    out = tuple(fn(*row, n) for row in zip(*cols))
    if isinstance(ring, SampledFunctionRing):
        return ring(out)
    if isinstance(ring, RealField):
        return ring(out[0])
    return out[0]


def solve_order2_conjugate(f, g, x0, x1, n: int):
    """Conjugate-pair form for real or sampled data; ``WrongRegion`` outside ``f^2 + 4g < 0``."""
    return _pointwise(_scalar_conjugate, f, g, x0, x1, n)


def _scalar_any_region(f: float, g: float, x0: float, x1: float, n: int) -> float:
    h2 = f * f + 4 * g
    if h2 < 0:
        return _scalar_conjugate(f, g, x0, x1, n)
    if n < 2:
        return x0 if n == 0 else x1
    h = math.sqrt(h2)
    a, b = (f + h) / 2, (f - h) / 2
    if h2 == 0:
        return (n * x1 - (n - 1) * b * x0) * b ** (n - 1)
    return (x1 - b * x0) / (a - b) * a ** n + (a * x0 - x1) / (a - b) * b ** n


def solve_order2_real(f, g, x0, x1, n: int):
    """Branch per grid point on the sign of ``f^2 + 4g``."""
    return _pointwise(_scalar_any_region, f, g, x0, x1, n)


# -- Chebyshev -------------------------------------------------------------

def chebyshev_T(s, n: int) -> float:
    """``T_n(s)``: trigonometric inside (-1, 1), exact boundary values, and the
    root-power form outside, evaluated exactly in a quadratic field."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = Fraction(s)
    if q == 1:
        return 1.0
    if q == -1:
        return float((-1) ** n)
    if -1 < q < 1:
        return math.cos(n * math.acos(float(s)))
    D = q * q - 1
    c, d = squarefree_decomposition(D.numerator * D.denominator)
    K = QuadraticField(d) if d != 1 else None
    if K is None:
        root = Fraction(c, D.denominator)
        return float(((q + root) ** n + (q - root) ** n) / 2)
    root = K((Fraction(0), Fraction(c, D.denominator)))
    sk = K(q)
    total = (_power_or_one(sk + root, n) + _power_or_one(sk - root, n)) * K(Fraction(1, 2))
    p, irr = total.payload
    assert irr == 0, "irrational parts cancel"
    return float(p)


def _power_or_one(x: RingValue, n: int) -> RingValue:
    return x.ring.one if n == 0 else _pow(x, n)


def chebyshev_recurrence(ring, s) -> LinearRecurrence:
    s = ring.coerce(s)
    return LinearRecurrence(ring, [Constant(2 * s), Constant(ring(-1))], 0, [ring.one, s])


# -- modified Bessel recurrence ------------------------------------------------

def bessel_recurrence(grid, x0=1, x1=1, tol: float = 1e-12) -> LinearRecurrence:
    """``x_{n+1}(s) = (2n/s) x_n(s) + x_{n-1}(s)`` on a finite grid of positive s."""
    ring = SampledFunctionRing(tuple(grid), tol)
    return LinearRecurrence(ring, [Formula("2*n/s", ring), Constant(ring.one)], 0, [x0, x1])


def _check_grid(u0: RingValue, *values: RingValue):
    for v in values:
        if v.ring != u0.ring:
            raise RingMismatchError(f"grid mismatch: {v.ring} vs {u0.ring}")


def bessel_general_solution(x0: RingValue, x1: RingValue, u, n: int) -> RingValue:
    """General solution from a positive unitary solution ``u``.

    The factor ``t_{i+1} = -(u_{i-1}/u_i) t_i`` gives
    ``t_i = (-1)^{i-1} t_1 u_0 / u_{i-1}``; the cofactor is
    ``x_i = (u_i/u_{i-1}) x_{i-1} + t_i``.
    """
    us = [u[i] for i in range(max(n, 1) + 1)]
    _check_grid(us[0], x0, x1)
    if n == 0:
        return x0
    t1 = x1 - us[1] * us[0].inverse() * x0
    x = x0
    for i in range(1, n + 1):
        t = t1 * us[0] * us[i - 1].inverse()
        if i % 2 == 0:
            t = -t
        x = us[i] * us[i - 1].inverse() * x + t
    return x


def bessel_sum_form(x0: RingValue, x1: RingValue, u, n: int, upper_offset: int = 0) -> RingValue:
    """``u_n [x_0/u_0 + u_0 t_1 sum_{i=1}^{n+upper_offset} (-1)^{i-1} / (u_i u_{i-1})]``.

    ``upper_offset=0`` is the correct summation; ``-1`` stops one term early,
    which only matches for n = 0 or t_1 = 0.
    """
    us = [u[i] for i in range(max(n, 1) + 1)]
    _check_grid(us[0], x0, x1)
    t1 = x1 - us[1] * us[0].inverse() * x0
    acc = us[0].ring.zero
    for i in range(1, n + upper_offset + 1):
        term = (us[i] * us[i - 1]).inverse()
        acc = acc + (term if i % 2 == 1 else -term)
    return us[n] * (x0 * us[0].inverse() + us[0] * t1 * acc)


# -- case selection ------------------------------------------------------------

@dataclass
class Order2ClosedForm:
    """Closed form for ``x_{n+1} = f x_n + g x_{n-1}`` with fixed initial values.

    ``case`` is one of GeneralRing, FieldDistinct, FieldDouble, ConjugatePair.
    """

    case: str
    params: dict
    x0: RingValue
    x1: RingValue
    ring: object = None
    note: str = ""
    _lift: object = field(default=None, repr=False)

    def at(self, n: int):
        p = self.params
        if self.case == "GeneralRing":
            return solve_order2_ring(p["a"], p["b"], self.x0, self.x1, n)
        if self.case == "ConjugatePair":
            return solve_order2_conjugate(p["f"], p["g"], self.x0, self.x1, n)
        lift = self._lift or (lambda v: v)
        value = solve_order2_field(p["a"], p["b"], lift(self.x0), lift(self.x1), n)
        if isinstance(value.ring, QuadraticField) and value.ring != self.x0.ring:
            # roots outside the base field; the value itself is rational
            rat, irr = value.payload
            if irr != 0:
                raise ArithmeticError(f"closed form left the base field: {value}")
            return self.x0.ring(rat)
        return value

    def values(self, horizon: int) -> list:
        return [self.at(n) for n in range(horizon + 1)]

    def to_json(self):
        return {"case": self.case, "params": {k: str(v) for k, v in self.params.items()},
                "note": self.note}


def order2_closed_form(f: RingValue, g: RingValue, x0: RingValue, x1: RingValue) -> Order2ClosedForm:
    """Pick the applicable closed form for ``x_{n+1} = f x_n + g x_{n-1}``."""
    ring = f.ring
    g, x0, x1 = ring.coerce(g), ring.coerce(x0), ring.coerce(x1)
    if isinstance(ring, (RealField, SampledFunctionRing)):
        h2 = f * f + 4 * g
        if all(v < 0 for v in _samples(h2, ring)):
            return Order2ClosedForm("ConjugatePair", {"f": f, "g": g}, x0, x1, ring)
        if isinstance(ring, SampledFunctionRing):
            raise WrongRegion("grid is not entirely inside the conjugate region; use solve_order2_real")
    if ring.is_finite:
        roots = brute_force_roots([-g, -f, ring.one])
        if not roots:
            raise ArithmeticError(f"r^2 - ({f}) r - ({g}) has no root in {ring}")
        b = roots[0]
        a = f - b
        if a != b and (a - b).is_unit():
            return Order2ClosedForm("FieldDistinct", {"a": a, "b": b}, x0, x1, ring)
        if a == b and ring.is_field:
            return Order2ClosedForm("FieldDouble", {"a": a, "b": b}, x0, x1, ring)
        return Order2ClosedForm("GeneralRing", {"a": a, "b": b}, x0, x1, ring)
    res = quadratic_roots(ring.one, -f, -g)
    if res.kind == "double_root":
        b = res.roots[0]
        return Order2ClosedForm("FieldDouble", {"a": b, "b": b}, x0, x1, ring)
    if res.kind == "two_roots" and res.ring == ring:
        a, b = res.roots
        return Order2ClosedForm("FieldDistinct", {"a": a, "b": b}, x0, x1, ring)
    if res.kind in ("two_roots", "extension_roots"):
        K = res.ring
        a, b = res.roots
        return Order2ClosedForm("FieldDistinct", {"a": a, "b": b}, x0, x1, K, res.note, K.coerce)
    raise ArithmeticError(f"no closed form available: {res.kind} {res.note}")


# -- audit of the uncorrected variants ------------------------------------------------

@dataclass
class AuditReport:
    case: str
    params: dict
    oracle: object
    corrected: object
    uncorrected: object
    corrected_deviation: float
    uncorrected_deviation: float

    def to_json(self):
        return {"case": self.case, "params": {k: str(v) for k, v in self.params.items()},
                "oracle": _num(self.oracle), "corrected": _num(self.corrected),
                "uncorrected": _num(self.uncorrected),
                "corrected_deviation": float(self.corrected_deviation),
                "uncorrected_deviation": float(self.uncorrected_deviation)}


def _num(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def _oracle_float(f: float, g: float, x0: float, x1: float, n: int) -> float:
    R = RealField()
    return float(iterate(LinearRecurrence(R, [f, g], 0, [x0, x1]), max(n, 1))[n])


def formula_audit(case: str, params: dict) -> AuditReport:
    """Compare a closed form, its uncorrected variant, and direct iteration.

    Cases: ``cxf`` (f, g, x0, x1, n), ``cbf`` (s, x0, x1, n),
    ``mof-u4`` (s), ``mof-sum`` (s, x0, x1, n).
    """
    if case == "cxf":
        f, g, x0, x1, n = (params[k] for k in ("f", "g", "x0", "x1", "n"))
        oracle = _oracle_float(f, g, x0, x1, n)
        corrected = _scalar_conjugate(f, g, x0, x1, n)
        rho = math.sqrt(-g)
        theta = math.acos(f / (2 * rho))
        uncorrected = rho ** n * (x0 * math.cos(n * theta)
                                  + (f * x0 - 2 * x1) / (f * f + 4 * g) * math.sin(n * theta))
    elif case == "cbf":
        s, x0, x1, n = (params[k] for k in ("s", "x0", "x1", "n"))
        oracle = _oracle_float(2 * s, -1.0, x0, x1, n)
        corrected = _scalar_conjugate(2 * s, -1.0, x0, x1, n)
        theta = math.acos(s)
        uncorrected = x0 * math.cos(n * theta) + (s * x0 - x1) / (s * s - 1) * math.sin(n * theta)
    elif case == "mof-u4":
        s = Fraction(params["s"])
        u = iterate(_exact_bessel(s, 1, 1), 4)
        oracle = u[4].payload
        corrected = 48 / s ** 3 + 24 / s ** 2 + 8 / s + 1
        uncorrected = 48 / s ** 3 + 24 / s ** 2 + 2 / s + 1
    elif case == "mof-sum":
        s = Fraction(params["s"])
        x0, x1, n = Fraction(params["x0"]), Fraction(params["x1"]), int(params["n"])
        Q = RationalField()
        u = iterate(_exact_bessel(s, 1, 1), max(n, 1))
        oracle = iterate(_exact_bessel(s, x0, x1), max(n, 1))[n].payload
        corrected = bessel_sum_form(Q(x0), Q(x1), u, n).payload
        uncorrected = bessel_sum_form(Q(x0), Q(x1), u, n, upper_offset=-1).payload
    else:
        raise ValueError(f"unknown audit case {case!r}")
    return AuditReport(case, dict(params), oracle, corrected, uncorrected,
                       abs(corrected - oracle), abs(uncorrected - oracle))


def _exact_bessel(s: Fraction, x0, x1) -> LinearRecurrence:
    Q = RationalField()
    two_over_s = 2 / s
    a0 = Derived(lambda n: Q(two_over_s * n), Q, "2n/s")
    return LinearRecurrence(Q, [a0, Constant(Q.one)], 0, [x0, x1])


__all__ = [
    "Order2ClosedForm", "AuditReport", "solve_order2_ring", "solve_order2_field",
    "solve_order2_conjugate", "solve_order2_real", "boolean_closed_form", "chebyshev_T",
    "chebyshev_recurrence", "bessel_recurrence", "bessel_general_solution", "bessel_sum_form",
    "order2_closed_form", "formula_audit",
]
