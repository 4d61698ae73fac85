"""Concrete rings and their elements.

A ring descriptor (``IntegerRing``, ``ModularRing(8)``, ...) is a small frozen
value object.  Calling it coerces Python data into a :class:`RingValue`::

    >>> Z8 = ModularRing(8)
    >>> Z8(6) + Z8(6)
    RingValue(modular(8), 4)

All arithmetic on exact kinds is exact.  ``SampledFunctionRing`` and
``RealField`` carry floats and decide "zero" with an absolute tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Integral, Rational as _RationalABC

from .errors import NoSquareRoot, NotAUnit, RingMismatchError


class Classification(str, Enum):
    ZERO = "Zero"
    UNIT = "Unit"
    ZERO_DIVISOR = "ZeroDivisor"
    NON_UNIT_REGULAR = "NonUnitRegular"
    UNDECIDABLE = "Undecidable"


def _parse_fraction(obj) -> Fraction:
    if isinstance(obj, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(obj, (Integral, Fraction)):
        return Fraction(obj)
    if isinstance(obj, _RationalABC):
        return Fraction(obj.numerator, obj.denominator)
    if isinstance(obj, str):
        return Fraction(obj.strip())
    if isinstance(obj, float):
        raise TypeError(f"float {obj!r} cannot enter an exact ring; pass a string or Fraction")
    raise TypeError(f"cannot interpret {obj!r} as a rational number")


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


TRIAL_DIVISION_LIMIT = 1 << 16


def squarefree_decomposition(n: int, limit: int = TRIAL_DIVISION_LIMIT) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` (sign kept in ``d``).

    Square factors are stripped by trial division up to ``limit`` and by a final
    perfect-square test on the cofactor, so ``d`` is square-free unless ``n``
    has a repeated prime factor above ``limit``.  That bound keeps huge inputs
    cheap; ``d`` is always a non-square when ``n`` is.
    """
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d = 1, 1
    p = 2
    while p * p <= n and p <= limit:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        s *= r
    else:
        d *= n
    return s, sign * d


def _fmt_float(x: float) -> str:
    if x == 0:
        x = 0.0  # drop negative zero
    return format(x, ".12g")


class Ring:
    """Base class for ring descriptors.  Subclasses are frozen dataclasses."""

    kind: str = ""
    is_exact = True
    is_finite = False
    commutative = True

    # -- construction -------------------------------------------------------
    def __call__(self, obj) -> RingValue:
        return self.coerce(obj)

    def coerce(self, obj) -> RingValue:
        if isinstance(obj, RingValue):
            if obj.ring == self:
                return obj
            return RingValue(self, self._embed(obj))
        return RingValue(self, self._normalize(obj))

    def _embed(self, value: RingValue):
        src = value.ring
        if isinstance(src, IntegerRing):
            return self._normalize(value.payload)
        if isinstance(src, RationalField):
            return self._normalize(value.payload)
        raise RingMismatchError(f"cannot embed {src} into {self}")

    @property
    def zero(self) -> RingValue:
        return RingValue(self, self._zero())

    @property
    def one(self) -> RingValue:
        return RingValue(self, self._one())

    def elements(self):
        raise NotImplementedError(f"{self} is not finite")

    @property
    def is_field(self) -> bool:
        return False

    # -- payload-level operations (overridden) -----------------------------
    def _normalize(self, obj):
        raise NotImplementedError

    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _inv(self, x):
        raise NotImplementedError

    def _classify(self, x) -> Classification:
        raise NotImplementedError

    def _eq(self, x, y) -> bool:
        return x == y

    def _sqrt(self, x):
        raise NoSquareRoot(f"square roots are not supported in {self}")

    def _fmt(self, x) -> str:
        return str(x)

    def _encode(self, x):
        return x

    def _hash(self, x) -> int:
        return hash((self, x))

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        return {"kind": self.kind}

    def encode(self, value: RingValue):
        return self._encode(self.coerce(value).payload)

    def decode(self, obj) -> RingValue:
        return self.coerce(obj)

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class IntegerRing(Ring):
    kind = "integer"

    def _normalize(self, obj):
        f = _parse_fraction(obj)
        if f.denominator != 1:
            raise ValueError(f"{obj!r} is not an integer")
        return int(f)

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _inv(self, x):
        if x in (1, -1):
            return x
        raise NotAUnit(x, "only 1 and -1 are units in the integers", {"value": x})

    def _classify(self, x):
        if x == 0:
            return Classification.ZERO
        if x in (1, -1):
            return Classification.UNIT
        return Classification.NON_UNIT_REGULAR

    def _sqrt(self, x):
        if x >= 0 and math.isqrt(x) ** 2 == x:
            return math.isqrt(x)
        raise NoSquareRoot(f"{x} is not a perfect square")


@dataclass(frozen=True)
class RationalField(Ring):
    kind = "rational"

    @property
    def is_field(self) -> bool:
        return True

    def _normalize(self, obj):
        return _parse_fraction(obj)

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _inv(self, x):
        if x == 0:
            raise NotAUnit(x, "zero has no inverse", {"value": "0"})
        return 1 / x

    def _classify(self, x):
        return Classification.ZERO if x == 0 else Classification.UNIT

    def _sqrt(self, x):
        r = _fraction_sqrt(x)
        if r is None:
            raise NoSquareRoot(f"{x} is not the square of a rational")
        return r

    def _fmt(self, x):
        return str(x)

    def _encode(self, x):
        return str(x)


@dataclass(frozen=True)
class ModularRing(Ring):
    m: int
    kind = "modular"
    is_finite = True

    def __post_init__(self):
        if not isinstance(self.m, Integral) or self.m < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.m!r}")

    @property
    def is_field(self) -> bool:
        m = self.m
        return m > 1 and all(m % p for p in range(2, math.isqrt(m) + 1))

    def _normalize(self, obj):
        f = _parse_fraction(obj)
        num, den = f.numerator % self.m, f.denominator % self.m
        if den == 1:
            return num
        if math.gcd(den, self.m) != 1:
            raise NotAUnit(f.denominator, f"denominator shares factor {math.gcd(den, self.m)} with {self.m}",
                           {"gcd": math.gcd(den, self.m)})
        return num * pow(den, -1, self.m) % self.m

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, x, y):
        return (x + y) % self.m

    def _neg(self, x):
        return -x % self.m

    def _mul(self, x, y):
        return x * y % self.m

    def _inv(self, x):
        g = math.gcd(x, self.m)
        if g != 1:
            raise NotAUnit(x, f"gcd({x}, {self.m}) = {g}", {"gcd": g})
        return pow(x, -1, self.m)

    def _classify(self, x):
        if x == 0:
            return Classification.ZERO
        if math.gcd(x, self.m) == 1:
            return Classification.UNIT
        return Classification.ZERO_DIVISOR

    def _sqrt(self, x):
        for r in range(self.m):
            if r * r % self.m == x:
                return r
        raise NoSquareRoot(f"{x} is not a square modulo {self.m}")

    def elements(self):
        return [RingValue(self, r) for r in range(self.m)]

    def to_json(self):
        return {"kind": self.kind, "m": self.m}

    def __str__(self):
        return f"modular({self.m})"


@dataclass(frozen=True)
class QuadraticField(Ring):
    """Elements ``p + q*sqrt(d)`` with rational ``p``, ``q``."""

    d: int
    kind = "quadratic_ext"

    def __post_init__(self):
        if not isinstance(self.d, Integral):
            raise ValueError("d must be an integer")
        if self.d >= 0 and math.isqrt(self.d) ** 2 == self.d:
            raise ValueError(f"d must not be a perfect square, got {self.d}")

    @property
    def is_field(self) -> bool:
        return True

    @property
    def sqrt_d(self) -> RingValue:
        return RingValue(self, (Fraction(0), Fraction(1)))

    def _embed(self, value):
        if isinstance(value.ring, (IntegerRing, RationalField)):
            return (Fraction(value.payload), Fraction(0))
        raise RingMismatchError(f"cannot embed {value.ring} into {self}")

    def _normalize(self, obj):
        if isinstance(obj, dict):
            return (_parse_fraction(obj.get("p", 0)), _parse_fraction(obj.get("q", 0)))
        if isinstance(obj, tuple):
            p, q = obj
            return (_parse_fraction(p), _parse_fraction(q))
        return (_parse_fraction(obj), Fraction(0))

    def _zero(self):
        return (Fraction(0), Fraction(0))

    def _one(self):
        return (Fraction(1), Fraction(0))

    def _add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def _neg(self, x):
        return (-x[0], -x[1])

    def _mul(self, x, y):
        return (x[0] * y[0] + self.d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def norm(self, x: RingValue) -> Fraction:
        p, q = self.coerce(x).payload
        return p * p - self.d * q * q

    def conjugate(self, x: RingValue) -> RingValue:
        p, q = self.coerce(x).payload
        return RingValue(self, (p, -q))

    def _inv(self, x):
        p, q = x
        n = p * p - self.d * q * q
        if n == 0:
            raise NotAUnit(self._fmt(x), "zero has no inverse", {"norm": "0"})
        return (p / n, -q / n)

    def _classify(self, x):
        return Classification.ZERO if x == (0, 0) else Classification.UNIT

    def _sqrt(self, x):
        p, q = x
        if q == 0:
            r = _fraction_sqrt(p)
            if r is not None:
                return (r, Fraction(0))
            v = _fraction_sqrt(p / self.d)
            if v is not None:
                return (Fraction(0), v)
            raise NoSquareRoot(f"{self._fmt(x)} has no square root in {self}")
        # (u + v*sqrt d)^2 = p + q sqrt d  <=>  u^2 + d v^2 = p,  2uv = q
        s = _fraction_sqrt(p * p - self.d * q * q)
        if s is not None:
            for u2 in ((p + s) / 2, (p - s) / 2):
                u = _fraction_sqrt(u2)
                if u:
                    v = q / (2 * u)
                    return (u, v)
        raise NoSquareRoot(f"{self._fmt(x)} has no square root in {self} (nested radical)")

    def _fmt(self, x):
        p, q = x
        if q == 0:
            return str(p)
        head = "" if p == 0 else str(p)
        sign = "-" if q < 0 else ("+" if head else "")
        return f"{head}{sign}{abs(q)}*sqrt({self.d})"

    def _encode(self, x):
        return {"p": str(x[0]), "q": str(x[1])}

    def to_complex(self, x: RingValue) -> complex:
        p, q = self.coerce(x).payload
        return float(p) + float(q) * complex(self.d) ** 0.5

    def to_json(self):
        return {"kind": self.kind, "d": self.d}

    def __str__(self):
        return f"quadratic_ext({self.d})"


@dataclass(frozen=True)
class BooleanRing(Ring):
    """Subsets of ``{0, ..., size-1}``; ``+`` is symmetric difference, ``*`` intersection."""

    size: int = 16
    kind = "boolean"
    is_finite = True

    def __post_init__(self):
        if not isinstance(self.size, Integral) or self.size < 1:
            raise ValueError(f"universe size must be a positive integer, got {self.size!r}")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def _normalize(self, obj):
        if isinstance(obj, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(obj, Integral):
            # n * 1 in a ring of characteristic 2
            return self.full if obj % 2 else 0
        mask = 0
        for e in obj:
            if not isinstance(e, Integral) or not 0 <= e < self.size:
                raise ValueError(f"{e!r} is outside the universe 0..{self.size - 1}")
            mask |= 1 << e
        return mask

    def _zero(self):
        return 0

    def _one(self):
        return self.full

    def _add(self, x, y):
        return x ^ y

    def _neg(self, x):
        return x

    def _mul(self, x, y):
        return x & y

    def _inv(self, x):
        if x == self.full:
            return x
        missing = next(i for i in range(self.size) if not x >> i & 1)
        raise NotAUnit(self._fmt(x), "only the full universe is a unit", {"missing_element": missing})

    def _classify(self, x):
        if x == 0:
            return Classification.ZERO
        if x == self.full:
            return Classification.UNIT
        return Classification.ZERO_DIVISOR

    def _sqrt(self, x):
        return x

    def members(self, x: RingValue) -> list[int]:
        m = self.coerce(x).payload
        return [i for i in range(self.size) if m >> i & 1]

    def _fmt(self, x):
        return "{" + ",".join(str(i) for i in range(self.size) if x >> i & 1) + "}"

    def _encode(self, x):
        return [i for i in range(self.size) if x >> i & 1]

    def elements(self):
        return [RingValue(self, m) for m in range(1 << self.size)]

    def to_json(self):
        return {"kind": self.kind, "size": self.size}

    def __str__(self):
        return f"boolean({self.size})"


class _FloatRing(Ring):
    is_exact = False
    tol: float

    def _fmt_scalar(self, x: float) -> str:
        return _fmt_float(x)


@dataclass(frozen=True)
class RealField(_FloatRing):
    tol: float = 1e-12
    kind = "real"

    def __post_init__(self):
        if not self.tol >= 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def is_field(self) -> bool:
        return True

    def _embed(self, value):
        if isinstance(value.ring, (IntegerRing, RationalField)):
            return float(value.payload)
        if isinstance(value.ring, RealField):
            return value.payload
        raise RingMismatchError(f"cannot embed {value.ring} into {self}")

    def _normalize(self, obj):
        if isinstance(obj, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(obj, str):
            return float(Fraction(obj))
        return float(obj)

    def _zero(self):
        return 0.0

    def _one(self):
        return 1.0

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _inv(self, x):
        if abs(x) <= self.tol:
            raise NotAUnit(_fmt_float(x), f"|x| <= {self.tol}", {"value": x})
        return 1.0 / x

    def _classify(self, x):
        return Classification.ZERO if abs(x) <= self.tol else Classification.UNIT

    def _eq(self, x, y):
        return abs(x - y) <= self.tol

    def _hash(self, x):
        return hash(self)

    def _sqrt(self, x):
        if x < -self.tol:
            raise NoSquareRoot(f"{_fmt_float(x)} is negative")
        return math.sqrt(max(x, 0.0))

    def _fmt(self, x):
        return _fmt_float(x)

    def to_json(self):
        return {"kind": self.kind, "tol": self.tol}

    def __str__(self):
        return "real"


@dataclass(frozen=True)
class SampledFunctionRing(_FloatRing):
    """Real functions on a finite grid, represented by their samples."""

    grid: tuple
    tol: float = 1e-12
    kind = "sampled"

    def __post_init__(self):
        grid = tuple(float(s) for s in self.grid)
        if not grid:
            raise ValueError("grid must be nonempty")
        if len(set(grid)) != len(grid):
            raise ValueError("grid points must be distinct")
        if not self.tol >= 0:
            raise ValueError("tolerance must be nonnegative")
        object.__setattr__(self, "grid", grid)

    def _embed(self, value):
        if isinstance(value.ring, (IntegerRing, RationalField, RealField)):
            return (float(value.payload),) * len(self.grid)
        raise RingMismatchError(f"cannot embed {value.ring} into {self}")

    def _normalize(self, obj):
        if isinstance(obj, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(obj, (list, tuple)):
            if len(obj) != len(self.grid):
                raise ValueError(f"expected {len(self.grid)} samples, got {len(obj)}")
            return tuple(float(v) for v in obj)
        if isinstance(obj, str):
            obj = Fraction(obj)
        return (float(obj),) * len(self.grid)

    def variable(self) -> RingValue:
        """The identity function ``s -> s`` on the grid."""
        return RingValue(self, self.grid)

    def from_function(self, fn) -> RingValue:
        return RingValue(self, tuple(float(fn(s)) for s in self.grid))

    def _zero(self):
        return (0.0,) * len(self.grid)

    def _one(self):
        return (1.0,) * len(self.grid)

    def _add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def _neg(self, x):
        return tuple(-a for a in x)

    def _mul(self, x, y):
        return tuple(a * b for a, b in zip(x, y))

    def _inv(self, x):
        for i, a in enumerate(x):
            if abs(a) <= self.tol:
                raise NotAUnit(self._fmt(x), f"vanishes at grid point {self.grid[i]}",
                               {"index": i, "point": self.grid[i]})
        return tuple(1.0 / a for a in x)

    def _classify(self, x):
        small = [abs(a) <= self.tol for a in x]
        if all(small):
            return Classification.ZERO
        if not any(small):
            return Classification.UNIT
        return Classification.UNDECIDABLE

    def _eq(self, x, y):
        return all(abs(a - b) <= self.tol for a, b in zip(x, y))

    def _hash(self, x):
        return hash(self)

    def _sqrt(self, x):
        for i, a in enumerate(x):
            if a < -self.tol:
                raise NoSquareRoot(f"negative sample {_fmt_float(a)} at grid point {self.grid[i]}")
        return tuple(math.sqrt(max(a, 0.0)) for a in x)

    def _fmt(self, x):
        return "[" + ", ".join(_fmt_float(a) for a in x) + "]"

    def _encode(self, x):
        return list(x)

    def to_json(self):
        return {"kind": self.kind, "grid": list(self.grid), "tol": self.tol}

    def __str__(self):
        return f"sampled({len(self.grid)} points)"


class RingValue:
    """An immutable element of a concrete ring."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("RingValue is immutable")

    def _other(self, other) -> RingValue:
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring._add(self.payload, o.payload))

    __radd__ = __add__

    def __neg__(self):
        return RingValue(self.ring, self.ring._neg(self.payload))

    def __sub__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring._add(self.payload, self.ring._neg(o.payload)))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring._mul(self.payload, o.payload))

    def __rmul__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring._mul(o.payload, self.payload))

    def inverse(self) -> RingValue:
        return RingValue(self.ring, self.ring._inv(self.payload))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, Integral):
            raise TypeError("exponent must be an integer")
        base = self if e >= 0 else self.inverse()
        e = abs(int(e))
        result = self.ring.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot compare {self.ring} with {other.ring}")
            return self.ring._eq(self.payload, other.payload)
        try:
            o = self.ring.coerce(other)
        except (TypeError, ValueError, ArithmeticError):
            return NotImplemented
        return self.ring._eq(self.payload, o.payload)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return self.ring._hash(self.payload)

    def is_zero(self) -> bool:
        return self.ring._classify(self.payload) is Classification.ZERO

    def is_unit(self) -> bool:
        return self.ring._classify(self.payload) is Classification.UNIT

    def classify(self) -> Classification:
        return self.ring._classify(self.payload)

    def sqrt(self) -> RingValue:
        return RingValue(self.ring, self.ring._sqrt(self.payload))

    def to_json(self):
        return self.ring._encode(self.payload)

    def __float__(self):
        if isinstance(self.ring, (IntegerRing, RationalField, RealField)):
            return float(self.payload)
        if isinstance(self.ring, QuadraticField) and self.ring.d > 0:
            p, q = self.payload
            return float(p) + float(q) * math.sqrt(self.ring.d)
        raise TypeError(f"{self.ring} elements have no real value")

    def __str__(self):
        return self.ring._fmt(self.payload)

    def __repr__(self):
        return f"RingValue({self.ring}, {self.ring._fmt(self.payload)})"

    def __reduce__(self):
        return (RingValue, (self.ring, self.payload))


# -- functional surface ----------------------------------------------------

def ring_add(x: RingValue, y: RingValue) -> RingValue:
    return x + y


def ring_sub(x: RingValue, y: RingValue) -> RingValue:
    return x - y


def ring_neg(x: RingValue) -> RingValue:
    return -x


def ring_mul(x: RingValue, y: RingValue) -> RingValue:
    return x * y


def ring_zero(ring: Ring) -> RingValue:
    return ring.zero


def ring_one(ring: Ring) -> RingValue:
    return ring.one


def ring_inverse(x: RingValue) -> RingValue:
    return x.inverse()


def classify_element(x: RingValue) -> Classification:
    return x.classify()


def ring_sqrt(x: RingValue) -> RingValue:
    return x.sqrt()


def ring_from_json(obj: dict) -> Ring:
    kind = obj.get("kind")
    if kind == "integer":
        return IntegerRing()
    if kind == "rational":
        return RationalField()
    if kind == "modular":
        return ModularRing(int(obj["m"]))
    if kind == "quadratic_ext":
        return QuadraticField(int(obj["d"]))
    if kind == "boolean":
        return BooleanRing(int(obj.get("size", 16)))
    if kind == "sampled":
        return SampledFunctionRing(tuple(obj["grid"]), float(obj.get("tol", 1e-12)))
    if kind == "real":
        return RealField(float(obj.get("tol", 1e-12)))
    raise ValueError(f"unknown ring kind {kind!r}")



def _samples_of(x: RingValue) -> tuple:
    return x.payload if isinstance(x.payload, tuple) else (x.payload,)


def approx_equal(x: RingValue, y: RingValue, rel: float = 1e-9) -> bool:
    """Exact equality for exact rings; a mixed absolute/relative test for float kinds.

    Float sequences such as growing Bessel ratios outrun a purely absolute tolerance.
    """
    if x.ring.is_exact:
        return x == y
    tol = x.ring.tol
    for a, b in zip(_samples_of(x), _samples_of(y)):
        if abs(a - b) > max(tol, rel * max(abs(a), abs(b))):
            return False
    return True


def negligible(x: RingValue, scale: float = 1.0, rel: float = 1e-9) -> bool:
    """Whether ``x`` is zero, allowing float kinds an error relative to ``scale``."""
    if x.ring.is_exact:
        return x.is_zero()
    return all(abs(a) <= max(x.ring.tol, rel * scale) for a in _samples_of(x))


def magnitude(x: RingValue) -> float:
    """Largest absolute sample of a float-kind value (0 for exact kinds)."""
    if x.ring.is_exact:
        return 0.0
    return max(abs(a) for a in _samples_of(x))
