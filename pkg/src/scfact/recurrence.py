"""Linear recurrences, forward iteration, and the nonrecursive first-order solver.

Initial values are ``x_0..x_k``; the recurrence first fires at ``n = k`` and
produces ``x_{k+1}``.  Iteration is the oracle every factorization is checked
against.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

from .errors import HypothesisViolated, InfiniteRing, ValidationError
from .rings import Classification, Ring, RingValue, SampledFunctionRing, ring_from_json
from .sequences import CoefficientSequence, Constant, Derived, as_sequence, seq_from_json


@dataclass
class LinearRecurrence:
    """``x_{n+1} = a_{0,n} x_n + ... + a_{k,n} x_{n-k} + b_n``."""

    ring: Ring
    coeffs: list
    forcing: CoefficientSequence
    initials: list
    start_index: int = 0

    def __post_init__(self):
        self.coeffs = [as_sequence(c, self.ring) for c in self.coeffs]
        self.forcing = as_sequence(self.forcing if self.forcing is not None else 0, self.ring)
        self.initials = [self.ring.coerce(x) for x in self.initials]
        if not self.coeffs:
            raise ValueError("a recurrence needs at least one coefficient")
        if self.initials and len(self.initials) != len(self.coeffs):
            raise ValueError(f"order {len(self.coeffs)} needs {len(self.coeffs)} initial values, "
                             f"got {len(self.initials)}")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def k(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int, n: int) -> RingValue:
        return self.coeffs[j].at(n)

    def homogeneous(self) -> LinearRecurrence:
        return replace(self, forcing=Constant(self.ring.zero))

    def with_initials(self, initials) -> LinearRecurrence:
        return replace(self, initials=list(initials))

    def over(self, ring: Ring) -> LinearRecurrence:
        """Lift every coefficient and initial value into ``ring``."""
        return LinearRecurrence(ring, [c.over(ring) for c in self.coeffs], self.forcing.over(ring),
                                [ring.coerce(x) for x in self.initials], self.start_index)

    def has_constant_coefficients(self) -> bool:
        return all(isinstance(c, Constant) for c in self.coeffs)

    def characteristic_polynomial(self) -> list:
        """Ascending coefficients of ``r^{k+1} - a_0 r^k - ... - a_k`` (constant coefficients only)."""
        if not self.has_constant_coefficients():
            raise ValueError("characteristic polynomial needs constant coefficients")
        return [-c.value for c in reversed(self.coeffs)] + [self.ring.one]

    def step(self, n: int, window) -> RingValue:
        """``x_{n+1}`` from ``window = [x_{n-k}, ..., x_n]``."""
        acc = self.forcing.at(n)
        for j in range(self.order):
            acc = acc + self.coeff(j, n) * window[-1 - j]
        return acc

    def residual(self, xs, n: int) -> RingValue:
        """``x_{n+1} - (sum_j a_{j,n} x_{n-j} + b_n)`` for a full sequence ``xs``."""
        return xs[n + 1] - self.step(n, xs[n - self.k:n + 1])

    def to_json(self, horizon: int | None = None) -> dict:
        out = {"ring": self.ring.to_json(), "order": self.order,
               "coeffs": [c.to_json(horizon) for c in self.coeffs],
               "forcing": self.forcing.to_json(horizon),
               "initials": [x.to_json() for x in self.initials]}
        if self.start_index:
            out["start_index"] = self.start_index
        return out


def recurrence_from_json(obj: dict, path: str = "$") -> LinearRecurrence:
    """Decode recurrence JSON; a nonunit ``leading`` coefficient is rejected."""
    try:
        ring = ring_from_json(obj["ring"])
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}", f"{path}.ring") from exc
    except (TypeError, ValueError) as exc:
        raise ValidationError(str(exc), f"{path}.ring") from exc
    if "coeffs" not in obj:
        raise ValidationError("missing field 'coeffs'", path)
    coeffs = [seq_from_json(c, ring, f"{path}.coeffs[{i}]") for i, c in enumerate(obj["coeffs"])]
    if "order" in obj and obj["order"] != len(coeffs):
        raise ValidationError(f"order {obj['order']} but {len(coeffs)} coefficients", f"{path}.order")
    forcing = seq_from_json(obj.get("forcing", 0), ring, f"{path}.forcing")
    try:
        initials = [ring.coerce(x) for x in obj.get("initials", [])]
    except (TypeError, ValueError, ArithmeticError) as exc:
        raise ValidationError(str(exc), f"{path}.initials") from exc
    if initials and len(initials) != len(coeffs):
        raise ValidationError(f"expected {len(coeffs)} initial values, got {len(initials)}",
                              f"{path}.initials")
    if "leading" in obj:
        lead = ring.coerce(obj["leading"])
        if not lead.is_unit():
            raise ValidationError("leading coefficient not a unit; use nonrecursive command",
                                  f"{path}.leading")
        inv = lead.inverse()
        coeffs = [_scaled(c, inv) for c in coeffs]
        forcing = _scaled(forcing, inv)
    return LinearRecurrence(ring, coeffs, forcing, initials, int(obj.get("start_index", 0)))


def _scaled(seq: CoefficientSequence, factor: RingValue) -> CoefficientSequence:
    if isinstance(seq, Constant):
        return Constant(factor * seq.value)
    return Derived(lambda n: factor * seq.at(n), seq.ring, "scaled")


class SolutionStream:
    """Lazily extended forward solution ``x_0, x_1, ...`` of a recurrence."""

    def __init__(self, rec: LinearRecurrence):
        if len(rec.initials) != rec.order:
            raise ValueError("recurrence has no initial values")
        self.rec = rec
        self._terms = list(rec.initials)

    def extend_to(self, n: int) -> SolutionStream:
        rec, xs = self.rec, self._terms
        while len(xs) <= n:
            m = len(xs) - 1
            xs.append(rec.step(m, xs[m - rec.k:]))
        return self

    def term(self, n: int) -> RingValue:
        self.extend_to(n)
        return self._terms[n]

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            stop = idx.stop if idx.stop is not None else len(self._terms)
            self.extend_to(stop - 1)
            return self._terms[idx]
        return self.term(idx)

    def __len__(self):
        return len(self._terms)

    @property
    def terms(self) -> tuple:
        return tuple(self._terms)

    def to_rows(self):
        offset = self.rec.start_index
        return [(n + offset, x) for n, x in enumerate(self._terms)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, x in self.to_rows():
            w.writerow([n, str(x)])
        return buf.getvalue()

    def to_json(self) -> list:
        return [x.to_json() for x in self._terms]


def iterate(rec: LinearRecurrence, n_max: int) -> SolutionStream:
    if n_max < rec.k:
        raise ValueError(f"n_max must be at least k = {rec.k}")
    return SolutionStream(rec).extend_to(n_max)


@dataclass(frozen=True)
class UnitaryVerdict:
    unitary: bool
    index: int | None = None
    classification: Classification | None = None

    def __bool__(self):
        return self.unitary

    def to_json(self):
        if self.unitary:
            return {"verdict": "Unitary"}
        return {"verdict": "FailsAt", "index": self.index, "classification": self.classification.value}


def is_unitary_solution(rec, up_to: int) -> UnitaryVerdict:
    """Check that every term ``x_0..x_{up_to}`` is a unit.  Accepts a recurrence or a stream."""
    stream = rec if isinstance(rec, SolutionStream) else SolutionStream(rec)
    for n in range(up_to + 1):
        c = stream.term(n).classify()
        if c is not Classification.UNIT:
            return UnitaryVerdict(False, n, c)
    return UnitaryVerdict(True)


def _samples(x: RingValue):
    return x.payload if isinstance(x.ring, SampledFunctionRing) else (x.payload,)


def positive_unitary_solution(rec: LinearRecurrence, initials=None, horizon: int = 50) -> SolutionStream:
    """Solution from positive initial functions under nonnegative coefficients with positive sum.

    Every hypothesis is checked pointwise up to ``horizon``; so is the conclusion.
    """
    ring = rec.ring
    if ring.is_exact:
        raise ValueError("positive solutions are defined for real or sampled rings")
    tol = ring.tol
    if initials is None:
        initials = [ring.one] * rec.order
    rec = rec.with_initials(initials)
    for i, x in enumerate(rec.initials):
        for p, v in enumerate(_samples(x)):
            if not v > tol:
                raise HypothesisViolated(f"initial value x_{i} is not positive at grid point {p}", i, p)
    for n in range(rec.k, horizon):
        total = None
        for j in range(rec.order):
            samples = _samples(rec.coeff(j, n))
            for p, v in enumerate(samples):
                if v < 0:
                    raise HypothesisViolated(f"coefficient a_{j},{n} is negative at grid point {p}", n, p)
            total = list(samples) if total is None else [a + b for a, b in zip(total, samples)]
        for p, v in enumerate(total):
            if not v > 0:
                raise HypothesisViolated(f"coefficients at n={n} sum to {v} at grid point {p}", n, p)
    stream = iterate(rec.homogeneous(), horizon)
    for n, x in enumerate(stream.terms):
        for p, v in enumerate(_samples(x)):
            if not v > 0:
                raise HypothesisViolated(f"x_{n} is not positive at grid point {p}", n, p)
    return stream


# -- nonrecursive first-order equations --------------------------------------

@dataclass
class NonrecursiveSolutions:
    """All sequences ``t_1..t_horizon`` with ``c t_{n+1} + d t_n = 0``."""

    c: RingValue
    d: RingValue
    horizon: int
    sequences: list
    truncated: bool
    successors: dict = field(repr=False)
    recursive_multiplier: RingValue | None = None

    @property
    def is_recursive(self) -> bool:
        return self.recursive_multiplier is not None

    def tree(self) -> dict:
        """Prefix tree of the enumerated sequences, keyed by term strings."""
        root: dict = {}
        for seq in self.sequences:
            node = root
            for t in seq:
                node = node.setdefault(str(t), {})
        return root


def enumerate_nonrecursive(c: RingValue, d: RingValue, horizon: int, t1=None,
                           max_sequences: int = 10**6, max_horizon: int = 20) -> NonrecursiveSolutions:
    ring = c.ring
    d = ring.coerce(d)
    if not ring.is_finite:
        raise InfiniteRing(f"{ring} is infinite; exhaustive enumeration is impossible")
    if not 1 <= horizon <= max_horizon:
        raise ValueError(f"horizon must be between 1 and {max_horizon}")
    elements = ring.elements()
    successors = {t: [u for u in elements if (c * u + d * t).is_zero()] for t in elements}
    multiplier = -d * c.inverse() if c.is_unit() else None
    starts = elements if t1 is None else [ring.coerce(t1)]

    sequences: list = []
    truncated = False
    stack = [(s,) for s in reversed(starts)]
    while stack:
        seq = stack.pop()
        if len(seq) == horizon:
            if len(sequences) >= max_sequences:
                truncated = True
                break
            sequences.append(seq)
            continue
        for u in reversed(successors[seq[-1]]):
            stack.append(seq + (u,))
    return NonrecursiveSolutions(c, d, horizon, sequences, truncated, successors, multiplier)


@dataclass
class NonrecursiveEquation:
    """``c x_{n+1} = a_0 x_n + a_1 x_{n-1}`` with constant coefficients and ``c`` possibly a nonunit."""

    ring: Ring
    leading: RingValue
    a0: RingValue
    a1: RingValue
    initials: list

    @classmethod
    def from_json(cls, obj: dict, path: str = "$") -> NonrecursiveEquation:
        ring = ring_from_json(obj["ring"])
        coeffs = obj["coeffs"]
        if len(coeffs) != 2:
            raise ValidationError("nonrecursive equations must have order 2", f"{path}.coeffs")
        try:
            a0, a1 = (ring.coerce(v) for v in coeffs)
        except (TypeError, ValueError, ArithmeticError) as exc:
            raise ValidationError(f"coefficients must be ring constants: {exc}", f"{path}.coeffs") from exc
        return cls(ring, ring.coerce(obj.get("leading", 1)), a0, a1,
                   [ring.coerce(x) for x in obj.get("initials", [])])

    def split_multipliers(self) -> list:
        """Every ``alpha`` with ``c alpha^2 = a_0 alpha + a_1`` (finite rings: exhaustive)."""
        ring = self.ring
        if not ring.is_finite:
            raise InfiniteRing("multiplier search needs a finite ring")
        c = self.leading
        return [al for al in ring.elements() if (c * al * al - self.a0 * al - self.a1).is_zero()]

    def split(self, alpha: RingValue) -> tuple[RingValue, RingValue]:
        """``(c, d)`` with ``c t_{n+1} + d t_n = 0`` for ``t_n = x_n - alpha x_{n-1}``."""
        alpha = self.ring.coerce(alpha)
        c = self.leading
        d = c * alpha - self.a0
        if d * alpha != self.a1:
            raise ValueError(f"{alpha} does not split the equation")
        return c, d


def cofactor_reconstruct(t_seq, alpha, x0: RingValue, horizon: int | None = None) -> list:
    """``x_{n+1} = alpha_{n+1} x_n + t_{n+1}``; ``t_seq[0]`` is ``t_1``.  Returns ``x_0..x_horizon``."""
    if horizon is None:
        horizon = len(t_seq)
    if horizon > len(t_seq):
        raise ValueError(f"need {horizon} t-values, got {len(t_seq)}")
    if isinstance(alpha, RingValue):
        mult = lambda n: alpha  # noqa: E731
    elif callable(alpha):
        mult = alpha
    else:
        mult = alpha.term
    xs = [x0]
    for n in range(horizon):
        xs.append(mult(n + 1) * xs[-1] + t_seq[n])
    return xs


__all__ = [
    "LinearRecurrence", "SolutionStream", "UnitaryVerdict", "NonrecursiveSolutions",
    "NonrecursiveEquation", "iterate", "is_unitary_solution", "positive_unitary_solution",
    "enumerate_nonrecursive", "cofactor_reconstruct", "recurrence_from_json",
]
