"""Period-p eigensequences of ``x_{n+1} = a_n x_n + b_n x_{n-1}`` with periodic a, b.

The table ``alpha_j, beta_j`` holds the two fundamental solutions
(``alpha_0=0, alpha_1=1``; ``beta_0=1, beta_1=0``).  A root ``r_1`` of

    alpha_p r^2 + (beta_p - alpha_{p+1}) r - beta_{p+1}

generates ``r_{j+1} = a_j + b_j / r_j``, which closes up after p steps.  In a
noncommutative ring the quadratic would take a one-sided form; every ring here
is commutative, so only the form above is implemented.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .eigen import Eigensequence, char_residual, user_sequence
from .recurrence import LinearRecurrence
from .rings import Classification, Ring, RingValue
from .roots import brute_force_roots, quadratic_roots
from .sequences import CoefficientSequence, common_period


@dataclass
class AlphaBetaTable:
    p: int
    a: CoefficientSequence
    b: CoefficientSequence
    alpha: list
    beta: list

    def rows(self):
        return list(zip(range(self.p + 2), self.alpha, self.beta))

    def to_json(self):
        return {"p": self.p, "alpha": [str(x) for x in self.alpha], "beta": [str(x) for x in self.beta]}


def alpha_beta(a: CoefficientSequence, b: CoefficientSequence, p: int | None = None) -> AlphaBetaTable:
    """Rows ``j = 0..p+1``; ``p`` defaults to the lcm of the declared periods."""
    if p is None:
        p = common_period(a, b)
    ring = a.ring
    al = [ring.zero, ring.one]
    be = [ring.one, ring.zero]
    for j in range(1, p + 1):
        al.append(a.at(j) * al[j] + b.at(j) * al[j - 1])
        be.append(a.at(j) * be[j] + b.at(j) * be[j - 1])
    return AlphaBetaTable(p, a, b, al, be)


def periodic_quadratic(t: AlphaBetaTable) -> tuple:
    """``(c2, c1, c0)`` of ``c2 r^2 + c1 r + c0``."""
    p = t.p
    return t.alpha[p], t.beta[p] - t.alpha[p + 1], -t.beta[p + 1]


def _fmt_quadratic(q) -> str:
    return f"({q[0]})*r^2 + ({q[1]})*r + ({q[2]})"


@dataclass
class PeriodicSearchResult:
    root: RingValue
    ring: Ring
    terms: list
    closed: bool
    unitary: bool
    success: bool
    reason: str = ""
    rho: RingValue | None = None
    l_witness: list = field(default_factory=list)
    l_checks: bool = False
    eigensequence: Eigensequence | None = None
    recurrence: LinearRecurrence | None = None

    def to_json(self):
        return {
            "root": str(self.root),
            "ring": self.ring.to_json(),
            "terms": [str(r) for r in self.terms],
            "closed": self.closed,
            "unitary": self.unitary,
            "verdict": "Success" if self.success else "Failure",
            "reason": self.reason,
            "rho": None if self.rho is None else str(self.rho),
            "l_witness": [str(v) for v in self.l_witness],
            "l_checks": self.l_checks,
        }


@dataclass
class PeriodicSearch:
    table: AlphaBetaTable
    quadratic: tuple
    root_kind: str
    note: str
    results: list

    @property
    def successes(self):
        return [r for r in self.results if r.success]

    def to_json(self):
        return {
            "p": self.table.p,
            "table": self.table.to_json(),
            "quadratic": [str(c) for c in self.quadratic],
            "quadratic_text": _fmt_quadratic(self.quadratic),
            "root_kind": self.root_kind,
            "note": self.note,
            "results": [r.to_json() for r in self.results],
        }


def _candidate_roots(q) -> tuple[list, Ring, str, str]:
    c2, c1, c0 = q
    ring = c2.ring
    if ring.is_finite:
        return brute_force_roots([c0, c1, c2]), ring, "exhaustive", ""
    res = quadratic_roots(c2, c1, c0)
    if res.kind == "degenerate" and res.all_elements:
        return [], ring, res.kind, "every element is a root; supply r1 explicitly"
    return list(res.roots), res.ring or ring, res.kind, res.note


def _check_root(rec: LinearRecurrence, table: AlphaBetaTable, r1: RingValue) -> PeriodicSearchResult:
    ring = r1.ring
    p = table.p
    a, b = rec.coeffs
    terms = [r1]
    for j in range(1, p + 1):
        rj = terms[-1]
        if rj.classify() is not Classification.UNIT:
            return PeriodicSearchResult(r1, ring, terms, False, False, False,
                                        f"r_{j} = {rj} is {rj.classify().value}; cannot form r_{j + 1}")
        terms.append(a.at(j) + b.at(j) * rj.inverse())
    closed = terms[p] == r1
    unitary = all(r.is_unit() for r in terms[:p])
    # L_j = alpha_j r1 + beta_j, lifted into the working ring
    al = [ring.coerce(x) for x in table.alpha]
    be = [ring.coerce(x) for x in table.beta]
    L = [al[j] * r1 + be[j] for j in range(p + 2)]
    l_ok = all(L[j + 1] == a.at(j) * L[j] + b.at(j) * L[j - 1] for j in range(1, p + 1))
    l_ok = l_ok and (r1 - a.at(p)) * L[p] == b.at(p) * L[p - 1]
    reason = ""
    residual_ok = True
    if closed:
        h = rec.homogeneous()
        cyc = terms[:p] * 2 + [terms[0]]
        for n in range(1, p + 1):
            if not char_residual(h, cyc[n - 1:n + 1], n).is_zero():
                residual_ok = False
                reason = f"characteristic residual nonzero at n = {n}"
                break
    else:
        reason = f"r_{p + 1} = {terms[p]} differs from r_1 = {r1}"
    if closed and not unitary:
        reason = "period closes but some term is not a unit"
    success = closed and unitary and residual_ok
    rho = None
    if success:
        rho = ring.one
        for j in range(1, p + 1):
            rho = rho * (-(b.at(j) * terms[j - 1].inverse()))
    seq = user_sequence(terms[:p], periodic=True, rec=rec.homogeneous()) if success else None
    return PeriodicSearchResult(r1, ring, terms, closed, unitary, success, reason, rho, L, l_ok, seq, rec)


def periodic_search(rec: LinearRecurrence, roots=None) -> PeriodicSearch:
    """Full report: table, quadratic, and one verdict per candidate root.

    Over the rationals an irrational or complex root pair moves the whole
    computation into the matching quadratic field.
    """
    if rec.order != 2:
        raise ValueError("periodic search needs a second-order recurrence")
    a, b = rec.coeffs
    table = alpha_beta(a, b)
    q = periodic_quadratic(table)
    if roots is None:
        roots, work_ring, kind, note = _candidate_roots(q)
    else:
        roots = [rec.ring.coerce(r) for r in roots]
        work_ring, kind, note = rec.ring, "supplied", ""
    work = rec if work_ring == rec.ring else rec.over(work_ring)
    if work_ring != rec.ring:
        table = alpha_beta(*work.coeffs, p=table.p)
    results = [_check_root(work, table, r) for r in roots]
    results.sort(key=lambda r: not r.success)
    return PeriodicSearch(table, q, kind, note, results)


def find_periodic_eigenseq(rec: LinearRecurrence, roots=None) -> list[PeriodicSearchResult]:
    """Candidate period-p eigensequences, successes first."""
    return periodic_search(rec, roots).results


__all__ = [
    "AlphaBetaTable", "PeriodicSearch", "PeriodicSearchResult",
    "alpha_beta", "periodic_quadratic", "periodic_search", "find_periodic_eigenseq",
]
