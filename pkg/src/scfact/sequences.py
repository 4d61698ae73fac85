"""Coefficient and forcing sequences indexed by n >= 0."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import ValidationError
from .expr import evaluate, parse_expression, to_text
from .rings import Ring, RingValue


class CoefficientSequence:
    ring: Ring
    period: int | None = None

    def at(self, n: int) -> RingValue:
        if n < 0:
            raise IndexError(f"sequence index must be >= 0, got {n}")
        return self._at(n)

    __call__ = at

    def _at(self, n: int) -> RingValue:
        raise NotImplementedError

    def over(self, ring: Ring) -> CoefficientSequence:
        """The same sequence with values coerced into ``ring``."""
        raise NotImplementedError

    def to_json(self, horizon: int | None = None) -> dict:
        raise NotImplementedError

    def is_zero(self) -> bool:
        return False


class Constant(CoefficientSequence):
    period = 1

    def __init__(self, value: RingValue):
        self.value = value
        self.ring = value.ring

    def _at(self, n):
        return self.value

    def over(self, ring):
        return Constant(ring.coerce(self.value))

    def is_zero(self):
        return self.value.is_zero()

    def to_json(self, horizon=None):
        return {"kind": "constant", "value": self.value.to_json()}

    def __repr__(self):
        return f"Constant({self.value})"


class Periodic(CoefficientSequence):
    """``values[(n - offset) % p]``; ``offset=1`` lists a sequence starting from its n=1 term."""

    def __init__(self, values, offset: int = 0):
        values = list(values)
        if not values:
            raise ValueError("periodic sequence needs at least one value")
        self.ring = values[0].ring
        self.values = [self.ring.coerce(v) for v in values]
        self.offset = offset
        self.period = len(values)

    def _at(self, n):
        return self.values[(n - self.offset) % self.period]

    def over(self, ring):
        return Periodic([ring.coerce(v) for v in self.values], self.offset)

    def is_zero(self):
        return all(v.is_zero() for v in self.values)

    def to_json(self, horizon=None):
        return {"kind": "periodic", "period": self.period, "offset": self.offset,
                "values": [v.to_json() for v in self.values]}

    def __repr__(self):
        return f"Periodic({[str(v) for v in self.values]}, offset={self.offset})"


class Table(CoefficientSequence):
    """Explicit values for n < len(values), then a constant tail."""

    def __init__(self, values, tail: RingValue):
        self.ring = tail.ring
        self.values = [self.ring.coerce(v) for v in values]
        self.tail = tail

    def _at(self, n):
        return self.values[n] if n < len(self.values) else self.tail

    def over(self, ring):
        return Table([ring.coerce(v) for v in self.values], ring.coerce(self.tail))

    def to_json(self, horizon=None):
        return {"kind": "table", "values": [v.to_json() for v in self.values],
                "tail": self.tail.to_json()}


class Formula(CoefficientSequence):
    def __init__(self, expr: str, ring: Ring):
        self.ring = ring
        self.ast = parse_expression(expr, ring)
        self.expr = to_text(self.ast)
        self._cache: dict[int, RingValue] = {}

    def _at(self, n):
        v = self._cache.get(n)
        if v is None:
            v = self._cache[n] = evaluate(self.ast, self.ring, n)
        return v

    def over(self, ring):
        return Formula(self.expr, ring)

    def to_json(self, horizon=None):
        return {"kind": "formula", "expr": self.expr}

    def __repr__(self):
        return f"Formula({self.expr!r})"


class Derived(CoefficientSequence):
    """A sequence computed by a Python callable, cached; used for factor coefficients."""

    def __init__(self, fn, ring: Ring, label: str = "derived"):
        self.fn = fn
        self.ring = ring
        self.label = label
        self._cache: dict[int, RingValue] = {}

    def _at(self, n):
        v = self._cache.get(n)
        if v is None:
            v = self._cache[n] = self.ring.coerce(self.fn(n))
        return v

    def over(self, ring):
        return Derived(lambda n: ring.coerce(self._at(n)), ring, self.label)

    def to_json(self, horizon=None):
        # tabulate: only a finite prefix can be exported
        if horizon is None:
            raise ValueError(f"{self.label} sequence can only be exported with a horizon")
        values = [self._at(n).to_json() for n in range(max(horizon, 1))]
        return {"kind": "table", "values": values, "tail": values[-1]}

    def __repr__(self):
        return f"Derived({self.label})"


def seq_eval(seq: CoefficientSequence, n: int) -> RingValue:
    return seq.at(n)


def common_period(*seqs: CoefficientSequence) -> int:
    """lcm of the declared periods; raises if any sequence is not periodic."""
    p = 1
    for s in seqs:
        if s.period is None:
            raise ValueError(f"{s!r} has no declared period")
        p = lcm(p, s.period)
    return p


def as_sequence(obj, ring: Ring) -> CoefficientSequence:
    if isinstance(obj, CoefficientSequence):
        return obj if obj.ring == ring else obj.over(ring)
    if isinstance(obj, str) and not _looks_numeric(obj):
        return Formula(obj, ring)
    return Constant(ring.coerce(obj))


def _looks_numeric(text: str) -> bool:
    try:
        Fraction(text.strip())
        return True
    except ValueError:
        return False


def seq_from_json(obj, ring: Ring, path: str = "$") -> CoefficientSequence:
    """Decode a sequence; bare scalars mean constants, bare strings may be formulas."""
    if not isinstance(obj, dict) or "kind" not in obj:
        try:
            return as_sequence(obj, ring)
        except (TypeError, ValueError, ArithmeticError) as exc:
            raise ValidationError(str(exc), path) from exc
    kind = obj["kind"]
    try:
        if kind == "constant":
            return Constant(ring.coerce(obj["value"]))
        if kind == "periodic":
            values = [ring.coerce(v) for v in obj["values"]]
            if "period" in obj and obj["period"] != len(values):
                raise ValidationError(f"period {obj['period']} does not match {len(values)} values", path)
            return Periodic(values, int(obj.get("offset", 0)))
        if kind == "table":
            return Table([ring.coerce(v) for v in obj["values"]], ring.coerce(obj["tail"]))
        if kind == "formula":
            return Formula(obj["expr"], ring)
    except ValidationError:
        raise
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}", path) from exc
    except (TypeError, ValueError, ArithmeticError) as exc:
        raise ValidationError(str(exc), path) from exc
    raise ValidationError(f"unknown sequence kind {kind!r}", path)
