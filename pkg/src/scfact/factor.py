"""Semiconjugate factorization of linear recurrences.

Given an eigensequence ``alpha`` of the homogeneous part, an order ``k+1``
recurrence splits into

* the factor  ``t_{n+1} = sum_{m<k} a'_{m,n} t_{n-m} + b_n``   (order k, n >= k)
* the cofactor ``x_{n+1} = alpha_{n+1} x_n + t_{n+1}``         (order 1, n >= 0)

with ``a'_{m,n} = -sum_{i=m+1}^{k} a_{i,n} (alpha_{n-m} alpha_{n-m-1} ... alpha_{n-i+1})^{-1}``.
The factor is stored as a recurrence in ``y_j = t_{j+1}``, so its own index
``N`` corresponds to ``n = N + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .eigen import (
    Eigensequence,
    eigenseq_from_seed,
    eigenseq_from_unitary,
    eigenvalue_sequence,
    eigenvalues_constant,
    term_inverse,
    user_sequence,
    window_residual,
)
from .errors import (
    HypothesisViolated,
    NonUnitTerm,
    NotAnEigensequence,
    OracleMismatch,
    RingMismatchError,
    StageFailed,
)
from .recurrence import LinearRecurrence, SolutionStream, cofactor_reconstruct, iterate, recurrence_from_json
from .rings import RingValue, approx_equal
from .sequences import CoefficientSequence, Constant, Derived, as_sequence


class ScFactorization:
    """Factor/cofactor pair for ``original`` built from the eigensequence ``alpha``.

    The characteristic residual of ``alpha`` is checked lazily, at exactly the
    indices a computation consumes.
    """

    def __init__(self, original: LinearRecurrence, alpha: Eigensequence):
        if alpha.ring != original.ring:
            raise RingMismatchError(f"eigensequence over {alpha.ring}, recurrence over {original.ring}")
        self.original = original
        self.alpha = alpha
        self.k = original.k
        self._homog = original.homogeneous()
        self._verified: set[int] = set()
        self.constant = original.has_constant_coefficients() and alpha.source == "eigenvalue"
        self.factor = self._build_factor() if self.k else None
        self.t_initials = self._t_initials() if original.initials else None
        if self.factor is not None and self.t_initials is not None:
            self.factor = self.factor.with_initials(self.t_initials)

    # -- verification ------------------------------------------------------
    def verify(self, n: int) -> None:
        """Check the characteristic equation at index ``n`` (a no-op below ``k``)."""
        if n < self.k:
            return
        if self.constant:
            n = self.k
        if n in self._verified:
            return
        ok, res = window_residual(self._homog, self.alpha.window(n, self.k), n)
        if not ok:
            raise NotAnEigensequence(n, res)
        self._verified.add(n)

    def verify_through(self, n_max: int) -> None:
        for n in range(self.k, n_max + 1):
            self.verify(n)

    def multiplier(self, n: int) -> RingValue:
        """``alpha_n`` for the cofactor step producing ``x_n``; checked when ``n > k``."""
        if n > self.k:
            self.verify(n - 1)
        return self.alpha.term(n)

    # -- construction ------------------------------------------------------
    def factor_coeff(self, m: int, n: int) -> RingValue:
        """``a'_{m,n}`` for ``n >= k``."""
        ring = self.original.ring
        self.verify(n)
        acc = ring.zero
        inv = ring.one
        # running inverse of alpha_{n-m} ... alpha_{n-i+1}, one new factor per i
        for i in range(m + 1, self.k + 1):
            inv = inv * term_inverse(self.alpha, n - i + 1, n + 1)
            acc = acc - self.original.coeff(i, n) * inv
        return acc

    def _build_factor(self) -> LinearRecurrence:
        ring, k = self.original.ring, self.k
        b = self.original.forcing
        if self.constant:
            coeffs = [Constant(self.factor_coeff(m, k)) for m in range(k)]
        else:
            coeffs = [Derived(self._coeff_fn(m), ring, f"a'_{m}") for m in range(k)]
        forcing = b if isinstance(b, Constant) else Derived(lambda N: b.at(N + 1), ring, "shifted forcing")
        return LinearRecurrence(ring, coeffs, forcing, [], start_index=1)

    def _coeff_fn(self, m: int):
        k, zero = self.k, self.original.ring.zero

        def fn(N):
            # the factor fires at N = k-1 (n = k); earlier entries are placeholders
            return self.factor_coeff(m, N + 1) if N + 1 >= k else zero
        return fn

    def _t_initials(self) -> list:
        xs = self.original.initials
        return [xs[m + 1] - self.alpha.term(m + 1) * xs[m] for m in range(self.k)]

    # -- output ------------------------------------------------------------
    def t_values(self, horizon: int) -> list:
        """``[t_1, ..., t_horizon]`` from the factor equation (or ``b_n`` when k = 0)."""
        if self.t_initials is None:
            raise ValueError("the original recurrence has no initial values")
        if self.factor is None:
            return [self.original.forcing.at(n) for n in range(horizon)]
        ys = iterate(self.factor, max(horizon - 1, self.k - 1))
        return list(ys[0:horizon])

    def describe(self, n_terms: int = 4) -> list[str]:
        lines = [f"cofactor: x(n+1) = alpha(n+1)*x(n) + t(n+1);  alpha = "
                 + ", ".join(str(a) for a in self.alpha.terms(n_terms)) + ", ..."]
        if self.factor is None:
            lines.append("factor: t(n+1) = b(n)  (order 0)")
        else:
            terms = " + ".join(f"a'_{m}(n)*t(n-{m})" if m else "a'_0(n)*t(n)" for m in range(self.k))
            lines.append(f"factor: t(n+1) = {terms} + b(n)  for n >= {self.k}")
            for m in range(self.k):
                vals = [str(self.factor_coeff(m, n)) for n in range(self.k, self.k + n_terms)]
                lines.append(f"  a'_{m}(n), n = {self.k}..: " + ", ".join(vals) + ", ...")
        if self.t_initials is not None:
            lines.append("t initials: " + ", ".join(str(t) for t in self.t_initials))
        return lines

    def to_json(self, horizon: int) -> dict:
        self.verify_through(horizon)
        return {
            "original": self.original.to_json(horizon),
            "alpha": [a.to_json() for a in self.alpha.terms(horizon + 1)],
            "factor": None if self.factor is None else self.factor.to_json(horizon),
            "t_initials": None if self.t_initials is None else [t.to_json() for t in self.t_initials],
        }


def sc_factorize(rec: LinearRecurrence, alpha: Eigensequence) -> ScFactorization:
    return ScFactorization(rec, alpha)


def factorization_from_json(obj: dict) -> ScFactorization:
    """Rebuild an exported factorization and re-verify every exported alpha window."""
    rec = recurrence_from_json(obj["original"], "$.original")
    alpha = user_sequence([rec.ring.decode(a) for a in obj["alpha"]], rec=rec)
    f = ScFactorization(rec, alpha)
    f.verify_through(len(obj["alpha"]) - 1)
    return f


def _stream_of(rec: LinearRecurrence, xs: list) -> SolutionStream:
    stream = SolutionStream(rec)
    stream._terms = list(xs)
    return stream


def _cross_check(rec: LinearRecurrence, xs: list) -> None:
    oracle = iterate(rec, len(xs) - 1)
    for n, x in enumerate(xs):
        if not approx_equal(oracle[n], x):
            raise OracleMismatch(n, oracle[n], x)


def solve_via_factorization(f: ScFactorization, horizon: int, check: bool = True) -> SolutionStream:
    """Solve the factor, then the cofactor; the result is compared with direct iteration."""
    ts = f.t_values(horizon)
    xs = cofactor_reconstruct(ts, f.multiplier, f.original.initials[0], horizon)
    if check:
        _cross_check(f.original, xs)
    return _stream_of(f.original, xs)


# -- cascades --------------------------------------------------------------

@dataclass(frozen=True)
class Seed:
    """Stage input: seeds ``r_1..r_k`` for the stage's eigensequence."""

    values: tuple


@dataclass
class Stage:
    depth: int
    equation: LinearRecurrence
    factorization: ScFactorization | None = None

    @property
    def multiplier(self) -> Eigensequence | None:
        return None if self.factorization is None else self.factorization.alpha


@dataclass
class TriangularSystem:
    """k+1 first-order stages; stage i's output is stage i-1's forcing."""

    original: LinearRecurrence
    stages: list = field(default_factory=list)

    def __len__(self):
        return len(self.stages)

    def solve(self, horizon: int, check: bool = True) -> SolutionStream:
        """Bottom-up: iterate the last first-order stage, then undo each cofactor."""
        last = self.stages[-1].equation
        values = list(iterate(last, max(horizon - len(self.stages) + 1, 0))[:])
        for stage in reversed(self.stages[:-1]):
            f = stage.factorization
            depth_horizon = horizon - stage.depth
            values = cofactor_reconstruct(values, f.multiplier, stage.equation.initials[0], depth_horizon)
        xs = values[:horizon + 1]
        if check:
            _cross_check(self.original, xs)
        return _stream_of(self.original, xs)

    def describe(self) -> list[str]:
        lines = []
        for st in self.stages:
            if st.factorization is None:
                a = st.equation
                lines.append(f"stage {st.depth}: first-order equation, coefficient "
                             f"{a.coeff(0, 0)}, {a.coeff(0, 1)}, ...")
            else:
                alpha = ", ".join(str(r) for r in st.multiplier.terms(4))
                lines.append(f"stage {st.depth}: multiplier {alpha}, ... ({st.multiplier.source})")
        return lines

    def to_json(self, horizon: int) -> dict:
        out = []
        for st in self.stages:
            entry = {"depth": st.depth, "order": st.equation.order}
            if st.factorization is not None:
                entry["multiplier"] = [r.to_json() for r in st.multiplier.terms(horizon)]
                entry["source"] = st.multiplier.source
            else:
                entry["equation"] = st.equation.to_json(horizon)
            out.append(entry)
        return {"stages": out}


def _stage_alpha(rec: LinearRecurrence, spec, depth: int) -> Eigensequence:
    if isinstance(spec, Eigensequence):
        return spec
    if isinstance(spec, RingValue):
        return eigenvalue_sequence(rec.ring.coerce(spec), rec)
    if isinstance(spec, Seed):
        return eigenseq_from_seed(rec.homogeneous(), list(spec.values))
    if isinstance(spec, SolutionStream):
        return eigenseq_from_unitary(spec, rec=rec.homogeneous())
    if callable(spec):
        return spec(rec)
    if spec is not None:
        raise TypeError(f"unsupported stage input {spec!r}")
    if not rec.has_constant_coefficients():
        raise StageFailed(depth, "coefficients vary with n; supply an eigensequence for this stage")
    found = eigenvalues_constant(rec)
    units = [v for v in found.values if v.is_unit()]
    if not units:
        reason = "no unit eigenvalue in the ring"
        if not found.complete:
            reason += f" ({found.note})"
        raise StageFailed(depth, reason)
    return eigenvalue_sequence(units[0], rec)


def cascade_factorize(rec: LinearRecurrence, eigen_inputs=(), horizon: int = 20) -> TriangularSystem:
    """Factor repeatedly until a first-order equation remains.

    ``eigen_inputs[i]`` feeds stage ``i``: an Eigensequence, an eigenvalue, a
    :class:`Seed`, a unitary SolutionStream of that stage's equation, a
    callable mapping the stage equation to an Eigensequence, or None to
    search the eigenvalues.  Each stage is verified through ``horizon``.
    """
    inputs = list(eigen_inputs)
    system = TriangularSystem(rec)
    current = rec
    for depth in range(rec.order):
        if current.order == 1:
            system.stages.append(Stage(depth, current))
            break
        spec = inputs[depth] if depth < len(inputs) else None
        try:
            alpha = _stage_alpha(current, spec, depth)
            f = ScFactorization(current, alpha)
            f.verify_through(horizon)
            alpha.terms(horizon + 1)
            for n in range(f.k, horizon):
                for m in range(f.k):
                    f.factor_coeff(m, n)
        except (NonUnitTerm, NotAnEigensequence) as exc:
            raise StageFailed(depth, str(exc)) from exc
        system.stages.append(Stage(depth, current, f))
        current = f.factor
    return system


# -- special cases ------------------------------------------------------------

def b0_product_solution(rec: LinearRecurrence, alpha: Eigensequence, m: int, horizon: int) -> SolutionStream:
    """Once ``a_{1,m} = 0`` the factor dies out: ``x_n = r_n ... r_{m+1} x_m`` for ``n > m``."""
    if rec.order != 2:
        raise ValueError("the product shortcut applies to second-order recurrences")
    if m < 1:
        raise ValueError("m must be at least 1 (the recurrence first fires at n = 1)")
    a1 = rec.coeff(1, m)
    if not a1.is_zero():
        raise HypothesisViolated(f"a_1,{m} = {a1} is not zero", m)
    for n in range(m, horizon):
        if not rec.forcing.at(n).is_zero():
            raise HypothesisViolated(f"forcing b_{n} = {rec.forcing.at(n)} is not zero", n)
    f = ScFactorization(rec, alpha)
    xs = list(iterate(rec, max(m, 1))[:m + 1])
    for n in range(m + 1, horizon + 1):
        xs.append(f.multiplier(n) * xs[-1])
    _cross_check(rec, xs)
    return _stream_of(rec, xs[:horizon + 1])


@dataclass(frozen=True)
class SplitFactorization:
    """``x_{n+1} = (a+b) x_n - ab x_{n-1} + c_n`` as ``t_{n+1} = a t_n + c_n``, ``x_{n+1} = b x_n + t_{n+1}``.

    Only ring addition, negation and multiplication are used, so no identity
    or inverse is needed.
    """

    a: RingValue
    b: RingValue
    c: CoefficientSequence

    def recurrence(self, x0: RingValue, x1: RingValue) -> LinearRecurrence:
        return LinearRecurrence(self.a.ring, [self.a + self.b, -(self.a * self.b)], self.c, [x0, x1])

    def t_values(self, x0: RingValue, x1: RingValue, horizon: int) -> list:
        ts = [x1 - self.b * x0]
        for n in range(1, horizon):
            ts.append(self.a * ts[-1] + self.c.at(n))
        return ts

    def solve(self, x0: RingValue, x1: RingValue, horizon: int) -> list:
        xs = [x0]
        for t in self.t_values(x0, x1, max(horizon, 1)):
            xs.append(self.b * xs[-1] + t)
        return xs[:horizon + 1]


def split_ab(a: RingValue, b: RingValue, c=None) -> SplitFactorization:
    ring = a.ring
    c = as_sequence(c if c is not None else ring.zero, ring)
    return SplitFactorization(a, ring.coerce(b), c)


__all__ = [
    "ScFactorization", "Seed", "Stage", "TriangularSystem", "SplitFactorization",
    "sc_factorize", "solve_via_factorization", "cascade_factorize", "b0_product_solution",
    "split_ab", "factorization_from_json",
]
