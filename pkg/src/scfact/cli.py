"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 computation error (the structured
witness is printed to stderr as JSON).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .closed_form import (
    bessel_recurrence,
    chebyshev_T,
    chebyshev_recurrence,
    formula_audit,
    solve_order2_ring,
    boolean_closed_form,
)
from .eigen import (
    classify_eigenseq,
    eigenseq_from_seed,
    eigenseq_from_unitary,
    eigenvalues_constant,
    first_residual_failure,
    poincare_perron_check,
    rational_roots,
    user_sequence,
)
from .errors import ExpressionTypeError, NonUnitTerm, ParseError, ScfactError, ValidationError
from .factor import Seed, cascade_factorize, sc_factorize, split_ab
from .periodic import periodic_search
from .recurrence import (
    LinearRecurrence,
    NonrecursiveEquation,
    cofactor_reconstruct,
    enumerate_nonrecursive,
    iterate,
    positive_unitary_solution,
    recurrence_from_json,
)
from .rings import (
    BooleanRing,
    IntegerRing,
    ModularRing,
    RationalField,
    Ring,
    approx_equal,
    ring_from_json,
)
from .roots import brute_force_roots, quadratic_roots
from .schema import SCHEMAS, load_problem, validate_output
from .sequences import Constant, Periodic

DEFAULT_HORIZON = 10
DEMOS = ("fibonacci", "chebyshev", "bessel", "z7-periodic", "z8-nonrecursive", "boolean")


# -- output ------------------------------------------------------------------

@dataclass
class Output:
    command: str
    ring: Ring | None
    rows: list
    result: dict = field(default_factory=dict)
    verification: dict | None = None
    notes: list = field(default_factory=list)

    def payload(self) -> dict:
        return {
            "command": self.command,
            "ring": None if self.ring is None else self.ring.to_json(),
            "rows": self.rows,
            "result": self.result,
            "verification": self.verification,
        }


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        payload = out.payload()
        validate_output(payload)
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    headers = list(out.rows[0].keys()) if out.rows else []
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        if headers:
            w.writerow(headers)
            for row in out.rows:
                w.writerow([_cell(row[h]) for h in headers])
        for note in out.notes:
            buf.write(f"# {note}\n")
        return buf.getvalue()
    if headers:
        cells = [[_cell(row[h]) for h in headers] for row in out.rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(headers)]
        buf.write("  ".join(h.rjust(w) for h, w in zip(headers, widths)).rstrip() + "\n")
        for c in cells:
            buf.write("  ".join(x.rjust(w) for x, w in zip(c, widths)).rstrip() + "\n")
    for note in out.notes:
        buf.write(note + "\n")
    return buf.getvalue()


def _verdict(checked: bool, passed, through=None, detail="") -> dict:
    return {"checked": checked, "passed": passed, "through": through, "detail": detail}


# -- problem handling --------------------------------------------------------

@dataclass
class Context:
    problem: dict
    ring: Ring
    horizon: int
    fmt: str
    seeds: list
    tolerance: object
    verify: bool


def _max_terms() -> int:
    raw = os.environ.get("SCFACT_MAX_TERMS", "10000")
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"SCFACT_MAX_TERMS must be an integer, got {raw!r}", "$env") from exc


def _parse_cli_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _context(args) -> Context:
    if args.ring_file and args.inline_json:
        raise ValidationError("give either --ring-file or --inline-json, not both")
    if args.ring_file:
        try:
            with open(args.ring_file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {args.ring_file}: {exc.strerror}") from exc
    elif args.inline_json:
        text = args.inline_json
    else:
        raise ValidationError("a problem is required: pass --ring-file PATH or --inline-json TEXT")
    problem = load_problem(text)
    try:
        ring = ring_from_json(problem["ring"])
    except (TypeError, ValueError) as exc:
        raise ValidationError(str(exc), "$.ring") from exc
    horizon = args.horizon if args.horizon is not None else problem.get("horizon", DEFAULT_HORIZON)
    cap = _max_terms()
    if horizon > cap:
        raise ValidationError(f"horizon {horizon} exceeds SCFACT_MAX_TERMS = {cap}", "$.horizon")
    fmt = args.format or problem.get("format", "table")
    raw_seeds = [_parse_cli_value(s) for s in args.seed] if args.seed else problem.get("seeds", [])
    try:
        seeds = [ring.coerce(s) for s in raw_seeds]
    except (TypeError, ValueError, ArithmeticError) as exc:
        raise ValidationError(f"bad seed: {exc}", "$.seeds") from exc
    tol = args.tolerance if args.tolerance is not None else problem.get("tolerance")
    if tol is not None:
        tol = Fraction(str(tol))
    verify = True if args.verify is None else args.verify
    return Context(problem, ring, horizon, fmt, seeds, tol, verify)


def _recurrence(ctx: Context, need_initials: bool = False) -> LinearRecurrence:
    if "recurrence" not in ctx.problem:
        raise ValidationError("missing field 'recurrence'")
    rec = recurrence_from_json({"ring": ctx.problem["ring"], **ctx.problem["recurrence"]}, "$.recurrence")
    if need_initials and not rec.initials:
        raise ValidationError(f"this command needs {rec.order} initial values", "$.recurrence.initials")
    return rec


def _value_list(ring, values, path):
    try:
        return [ring.coerce(v) for v in values]
    except (TypeError, ValueError, ArithmeticError) as exc:
        raise ValidationError(str(exc), path) from exc


# -- commands ------------------------------------------------------------------

def cmd_solve(ctx: Context) -> Output:
    rec = _recurrence(ctx, need_initials=True)
    stream = iterate(rec, max(ctx.horizon, rec.k))
    rows = [{"n": n, "value": str(x)} for n, x in stream.to_rows()[:ctx.horizon + 1]]
    return Output("solve", rec.ring, rows, {"order": rec.order},
                  _verdict(False, None, detail="direct iteration is the reference solution"))


def cmd_eigenseq(ctx: Context) -> Output:
    rec = _recurrence(ctx)
    h = rec.homogeneous()
    if ctx.seeds:
        seq = eigenseq_from_seed(h, ctx.seeds)
        source = "seed " + ", ".join(str(s) for s in ctx.seeds)
    elif rec.initials:
        seq = eigenseq_from_unitary(iterate(h.with_initials(rec.initials), ctx.horizon), rec=h)
        source = "ratios of the solution from the given initial values"
    else:
        raise ValidationError("supply --seed values or initial values for ratio extraction", "$.seeds")
    horizon = max(ctx.horizon, 1)
    terms = seq.terms(horizon)
    rows = [{"n": n, "r_n": str(r)} for n, r in enumerate(terms, start=1)]
    cls = classify_eigenseq(seq, horizon)
    notes = [f"source: {source}", f"classification: {cls.verdict.value}"
             + (f" (term {cls.index} is {cls.classification.value})" if cls.index else "")]
    verification = _verdict(False, None, detail="residual check disabled")
    if ctx.verify:
        fail = first_residual_failure(h, seq, horizon)
        if fail is None:
            verification = _verdict(True, True, horizon - 1, "characteristic residual is zero on every window")
            notes.append(f"residual check: PASS (n = {h.k}..{horizon - 1})")
        else:
            verification = _verdict(True, False, fail[0], f"residual {fail[1]} at n = {fail[0]}")
            notes.append(f"residual check: FAIL at n = {fail[0]} (residual {fail[1]})")
    return Output("eigenseq", rec.ring, rows, {"source": source, "classification": cls.to_json()},
                  verification, notes)


def _stage_input(ring, stage: dict, horizon: int, path: str):
    kind = stage["kind"]
    if kind == "auto":
        return None
    if kind == "eigenvalue":
        if "value" not in stage:
            raise ValidationError("eigenvalue stage needs 'value'", path)
        return _value_list(ring, [stage["value"]], path)[0]
    if kind == "seed":
        return Seed(tuple(_value_list(ring, stage.get("values", []), path)))
    if kind == "terms":
        values = _value_list(ring, stage.get("values", []), path)
        if not values:
            raise ValidationError("terms stage needs 'values'", path)
        return user_sequence(values, periodic=bool(stage.get("periodic", False)))
    initials = _value_list(ring, stage.get("initials", []), path)

    def from_solution(rec):
        h = rec.homogeneous()
        return eigenseq_from_unitary(iterate(h.with_initials(initials), horizon + 2), rec=h)
    return from_solution


def cmd_factorize(ctx: Context, cascade: bool = False) -> Output:
    rec = _recurrence(ctx, need_initials=True)
    ring = rec.ring
    stages = [_stage_input(ring, st, ctx.horizon, f"$.eigen[{i}]")
              for i, st in enumerate(ctx.problem.get("eigen", []))]
    if ctx.seeds:
        stages[:1] = [Seed(tuple(ctx.seeds))]
    H = max(ctx.horizon, rec.k + 1)
    notes = []
    if cascade:
        system = cascade_factorize(rec, stages, horizon=H)
        xs = list(system.solve(H, check=False).terms)
        rows = [{"n": n, "x_n": str(x)} for n, x in enumerate(xs)]
        notes.extend(system.describe())
        result = {"stages": len(system.stages), "system": system.to_json(min(H, 8))}
    else:
        if stages and stages[0] is not None:
            from .factor import _stage_alpha
            alpha = _stage_alpha(rec, stages[0], 0)
        else:
            from .factor import _stage_alpha
            alpha = _stage_alpha(rec, None, 0)
        f = sc_factorize(rec, alpha)
        ts = f.t_values(H)
        xs = cofactor_reconstruct(ts, f.multiplier, rec.initials[0], H)
        rows = [{"n": 0, "alpha_n": "", "t_n": "", "x_n": str(xs[0])}]
        for n in range(1, H + 1):
            rows.append({"n": n, "alpha_n": str(f.alpha.term(n)), "t_n": str(ts[n - 1]), "x_n": str(xs[n])})
        notes.extend(f.describe())
        result = {"k": f.k, "alpha_source": alpha.source,
                  "t_initials": [str(t) for t in f.t_initials]}
    verification = _verdict(False, None, detail="oracle comparison disabled")
    if ctx.verify:
        oracle = iterate(rec, H)
        bad = next((n for n in range(H + 1) if not approx_equal(oracle[n], xs[n])), None)
        if bad is None:
            verification = _verdict(True, True, H, "factor + cofactor reproduce direct iteration")
            notes.append(f"oracle check: PASS (x_0..x_{H} equal direct iteration)")
        else:
            verification = _verdict(True, False, bad, f"differs at n = {bad}")
            notes.append(f"oracle check: FAIL at n = {bad}: iteration {oracle[bad]}, factorization {xs[bad]}")
    else:
        notes.append("oracle check: skipped (--no-verify)")
    return Output("factorize", ring, rows, result, verification, notes)


def cmd_periodic(ctx: Context) -> Output:
    rec = _recurrence(ctx)
    roots = ctx.problem.get("roots")
    search = periodic_search(rec, _value_list(rec.ring, roots, "$.roots") if roots is not None else None)
    p = search.table.p
    notes = [f"p = {p}"]
    for j, a, b in search.table.rows():
        notes.append(f"  alpha_{j} = {a}, beta_{j} = {b}")
    c2, c1, c0 = search.quadratic
    notes.append(f"quadratic: ({c2})*r^2 + ({c1})*r + ({c0})")
    rows = []
    for r in search.results:
        rows.append({"root": str(r.root), "terms": "; ".join(str(t) for t in r.terms),
                     "closed": r.closed, "unitary": r.unitary,
                     "verdict": "Success" if r.success else "Failure",
                     "rho": "" if r.rho is None else str(r.rho)})
    if not search.results:
        if search.root_kind == "degenerate":
            notes.append(f"degenerate quadratic: no period-{p} eigensequence")
        else:
            notes.append(f"no roots ({search.note or search.root_kind}): no period-{p} eigensequence")
        if rec.k == 1:
            try:
                seq = eigenseq_from_seed(rec.homogeneous(), [rec.ring.one])
                shown = ", ".join(str(r) for r in seq.terms(min(max(ctx.horizon, 1), 9)))
                notes.append(f"fallback: seeded eigensequence from r_1 = 1: {shown}, ...")
            except NonUnitTerm as exc:
                notes.append(f"fallback: seed r_1 = 1 fails ({exc})")
    elif search.note:
        notes.append(f"roots: {search.note}")
    verification = _verdict(False, None, detail="no successful eigensequence to check")
    ok = [r for r in search.results if r.success]
    if ok and ctx.verify and rec.initials:
        H = max(ctx.horizon, 3 * p)
        work = ok[0].recurrence
        from .factor import solve_via_factorization
        solve_via_factorization(sc_factorize(work, ok[0].eigensequence), H)
        verification = _verdict(True, True, H, f"factorization from r_1 = {ok[0].root} matches iteration")
        notes.append(f"oracle check: PASS (x_0..x_{H}, r_1 = {ok[0].root})")
    return Output("periodic", rec.ring, rows, search.to_json(), verification, notes)


def cmd_roots(ctx: Context) -> Output:
    ring = ctx.ring
    if "polynomial" in ctx.problem:
        poly = _value_list(ring, ctx.problem["polynomial"], "$.polynomial")
    else:
        rec = _recurrence(ctx)
        if not rec.has_constant_coefficients():
            raise ValidationError("characteristic polynomial needs constant coefficients", "$.recurrence.coeffs")
        poly = rec.characteristic_polynomial()
    while len(poly) > 1 and poly[-1].is_zero():
        poly = poly[:-1]
    text = " + ".join(f"({c})*r^{i}" for i, c in enumerate(poly))
    notes = [f"polynomial: {text}"]
    if ring.is_finite:
        roots, kind, note = brute_force_roots(poly), "exhaustive", ""
    elif len(poly) == 3:
        res = quadratic_roots(poly[2], poly[1], poly[0])
        roots, kind, note = res.roots, res.kind, res.note
    elif isinstance(ring, (IntegerRing, RationalField)):
        found = rational_roots([Fraction(c.payload) for c in poly])
        roots = []
        for r in found:
            if isinstance(ring, IntegerRing) and r.denominator != 1:
                continue
            if ring(r) not in roots:
                roots.append(ring(r))
        kind, note = "rational_root_test", "other roots, if any, are not in the ring"
    elif len(poly) == 2:
        roots, kind, note = [-poly[0] / poly[1]], "linear", ""
    else:
        raise ScfactError(f"root finding for degree {len(poly) - 1} is not supported over {ring}")
    if note:
        notes.append(f"note: {note}")
    if not roots:
        notes.append(f"no roots in {ring}")
    rows = [{"root": str(r)} for r in roots]
    return Output("roots", ring, rows, {"kind": kind, "note": note, "count": len(roots)},
                  _verdict(False, None, detail="roots are checked by evaluation during the search"), notes)


def cmd_pp(ctx: Context) -> Output:
    rec = _recurrence(ctx)
    if "limits" not in ctx.problem:
        raise ValidationError("missing field 'limits' (the limiting coefficients)")
    limits = _value_list(rec.ring, ctx.problem["limits"], "$.limits")
    seeds = ctx.seeds or [rec.ring.one] * rec.k
    horizon = max(ctx.horizon, 1)
    tail_start = ctx.problem.get("tail_start", max(1, horizon // 2))
    tol = ctx.tolerance if ctx.tolerance is not None else Fraction(1, 10 ** 6)
    if not rec.ring.is_exact:
        tol = float(tol)
    report = poincare_perron_check(rec, seeds, horizon, tail_start, tol, limits)
    rows = [{"n": n, "r_n": str(r)} for n, r in enumerate(report.tail, start=tail_start)]
    notes = ["limiting eigenvalues: " + (", ".join(str(v) for v in report.limiting_eigenvalues) or "none in the ring")]
    if report.converged_to is not None:
        notes.append(f"converged to {report.converged_to}: max deviation {report.max_deviation} "
                     f"on n = {tail_start}..{horizon}")
    else:
        notes.append(f"no convergence within tolerance {tol} on n = {tail_start}..{horizon}")
    notes.append(f"coefficient deviation at n = {horizon}: {report.coefficient_deviation}")
    return Output("pp", rec.ring, rows, report.to_json(),
                  _verdict(False, None, detail="report only"), notes)


def _pick_multiplier(eq: NonrecursiveEquation, wanted):
    options = eq.split_multipliers()
    if not options:
        raise ScfactError("no split multiplier: c*alpha^2 = a0*alpha + a1 has no solution")
    if wanted is not None:
        alpha = eq.ring.coerce(wanted)
        if alpha not in options:
            raise ValidationError(f"{alpha} does not split the equation", "$.multiplier")
        return alpha, options
    minus_one = -eq.ring.one
    return (minus_one if minus_one in options else options[0]), options


def cmd_nonrecursive(ctx: Context) -> Output:
    if "recurrence" not in ctx.problem:
        raise ValidationError("missing field 'recurrence'")
    eq = NonrecursiveEquation.from_json({"ring": ctx.problem["ring"], **ctx.problem["recurrence"]},
                                        "$.recurrence")
    alpha, options = _pick_multiplier(eq, ctx.problem.get("multiplier"))
    c, d = eq.split(alpha)
    notes = [f"split multipliers: {', '.join(str(a) for a in options)}; using alpha = {alpha}",
             f"factor: ({c})*t(n+1) + ({d})*t(n) = 0;  cofactor: x(n+1) = ({alpha})*x(n) + t(n+1)"]
    horizon = min(max(ctx.horizon, 1), 20)
    t1 = ctx.problem.get("t1")
    if t1 is None and eq.initials:
        t1 = eq.initials[1] - alpha * eq.initials[0]
    sols = enumerate_nonrecursive(c, d, horizon, t1)
    rows = [{"t": str(t), "next": " ".join(str(u) for u in nxt)} for t, nxt in sols.successors.items()]
    result = {"alpha": str(alpha), "c": str(c), "d": str(d), "horizon": horizon,
              "count": len(sols.sequences), "truncated": sols.truncated,
              "recursive_multiplier": None if sols.recursive_multiplier is None else str(sols.recursive_multiplier)}
    if sols.is_recursive:
        notes.append(f"leading coefficient is a unit: unique branch, t(n+1) = {sols.recursive_multiplier}*t(n)")
    else:
        notes.append(f"{len(sols.sequences)} factor solutions of length {horizon}"
                     + (f" with t_1 = {t1}" if t1 is not None else ""))
    if eq.initials and sols.sequences:
        first = sols.sequences[0]
        xs = cofactor_reconstruct(list(first), alpha, eq.initials[0], horizon)
        notes.append("first branch t: " + " ".join(str(t) for t in first))
        notes.append("           x: " + " ".join(str(x) for x in xs))
    return Output("nonrecursive", eq.ring, rows, result,
                  _verdict(False, None, detail="enumeration is exhaustive"), notes)


def cmd_audit(case: str, params: list) -> Output:
    values = {}
    for item in params:
        if "=" not in item:
            raise ValidationError(f"--param expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        values[key] = float(Fraction(raw)) if case in ("cxf", "cbf") and key != "n" else raw
        if key == "n":
            values[key] = int(raw)
    try:
        report = formula_audit(case, values)
    except KeyError as exc:
        raise ValidationError(f"audit case {case!r} needs parameter {exc.args[0]!r}") from exc
    data = report.to_json()
    rows = [{"oracle": data["oracle"], "corrected": data["corrected"], "uncorrected": data["uncorrected"]}]
    notes = [f"corrected deviation: {data['corrected_deviation']:.12g}",
             f"uncorrected deviation: {data['uncorrected_deviation']:.12g}"]
    return Output("audit", None, rows, data, _verdict(True, data["corrected_deviation"] < 1e-9), notes)


# -- demos -------------------------------------------------------------------

def _demo_fibonacci() -> list[str]:
    Q = RationalField()
    rec = LinearRecurrence(Q, [1, 1], 0, [1, 1])
    f = sc_factorize(rec, eigenseq_from_seed(rec.homogeneous(), [1]))
    xs = iterate(rec, 10)
    rows = [{"n": 0, "x_n": str(xs[0]), "r_n": "", "a'_0(n)": ""}]
    for n in range(1, 11):
        rows.append({"n": n, "x_n": str(xs[n]), "r_n": str(f.alpha.term(n)), "a'_0(n)": str(f.factor_coeff(0, n))})
    from .factor import solve_via_factorization
    solve_via_factorization(f, 30)
    head = ["x(n+1) = x(n) + x(n-1) over the rationals, x_0 = x_1 = 1",
            "eigensequence from r_1 = 1; factor t(n+1) = a'_0(n) t(n), cofactor x(n+1) = r(n+1) x(n) + t(n+1)"]
    tail = ["oracle check: PASS (x_0..x_30)"]
    return head + render(Output("demo", Q, rows), "table").splitlines() + tail


def _demo_chebyshev() -> list[str]:
    rows = []
    for s_text in ("-1.5", "-1", "-0.5", "0", "0.5", "1", "2"):
        s = Fraction(s_text)
        oracle = iterate(chebyshev_recurrence(RationalField(), s), 6)
        for n in range(7):
            rows.append({"n": n, "s": s_text, "T_n(s)": round(chebyshev_T(s, n), 12) + 0.0,
                         "iteration": float(oracle[n].payload)})
    head = ["T(n+1) = 2s T(n) - T(n-1), T_0 = 1, T_1 = s"]
    return head + render(Output("demo", None, rows), "csv").splitlines()


def _demo_bessel() -> list[str]:
    rec = bessel_recurrence((0.5, 1, 2))
    u = positive_unitary_solution(rec, horizon=6)
    rows = [{"n": n, **{f"u_n({s:g})": x.payload[i] for i, s in enumerate(rec.ring.grid)}} for n, x in
            enumerate(u.terms)]
    audit = formula_audit("mof-u4", {"s": 2})
    head = ["x(n+1)(s) = (2n/s) x(n)(s) + x(n-1)(s), u_0 = u_1 = 1, grid s = 0.5, 1, 2"]
    tail = [f"u_4(2): iteration {audit.oracle}, 48/s^3 + 24/s^2 + 8/s + 1 = {audit.corrected}, "
            f"with 2/s in place of 8/s = {audit.uncorrected}"]
    return head + render(Output("demo", None, rows), "table").splitlines() + tail


def _t1_multiple(c) -> str:
    v = int(c.payload)
    return "0" if v == 0 else ("t1" if v == 1 else f"{v}t1")


def _demo_z7() -> list[str]:
    Z7 = ModularRing(7)
    a = Periodic([Z7(-1), Z7(-1), Z7(2)], offset=1)
    rec = LinearRecurrence(Z7, [a, Constant(Z7.one)], 0, [0, 1])
    search = periodic_search(rec)
    best = next(r for r in search.results if r.root == Z7(3))
    f = sc_factorize(rec.with_initials([Z7(0), Z7(1)]), best.eigensequence)
    ts = f.t_values(9)
    c2, c1, c0 = search.quadratic
    lines = ["x(n+1) = a(n) x(n) + x(n-1) over Z/7, a = -1, -1, 2 (period 3, from n = 1)",
             f"quadratic: ({c2})*r^2 + ({c1})*r + ({c0}); roots "
             + ", ".join(str(r.root) for r in sorted(search.results, key=lambda r: r.root.payload)),
             "eigensequence from r_1 = 3: " + ", ".join(str(t) for t in best.terms[:3])
             + f" (period 3); rho = {best.rho}",
             "factor t(n+1) = -r(n)^-1 t(n); t values as multiples of t1:",
             "        j=0   j=1   j=2"]
    for i in range(1, 4):
        cells = [_t1_multiple(ts[3 * j + i - 1]) for j in range(3)]
        lines.append(f"3j+{i}    " + "".join(c.ljust(6) for c in cells).rstrip())
    return lines


Z8_TABLE_1 = (4, 4, 4, 4, 4, 0, 0, 0, 0, 0, 4, 4, 4, 4, 4)
Z8_TABLE_2 = (4, 0, 4, 0, 0, 4, 0, 0, 0, 4, 0, 0, 0, 0, 4)


def _z8_table(eq: NonrecursiveEquation, alpha, ts) -> list[str]:
    Z8 = eq.ring
    t = [Z8(v) for v in ts]
    c, d = eq.split(alpha)
    for n in range(len(t) - 1):
        if not (c * t[n + 1] + d * t[n]).is_zero():
            raise ScfactError(f"t_{n + 2} does not solve the factor equation")
    xs = cofactor_reconstruct(t, alpha, eq.initials[0], len(t))
    for n in range(1, len(xs) - 1):
        if not (eq.leading * xs[n + 1] - eq.a0 * xs[n] - eq.a1 * xs[n - 1]).is_zero():
            raise ScfactError(f"x_{n + 1} does not solve the equation")
    w = 3

    def line(label, vals):
        return f"{label:<4}|" + "".join(str(v).rjust(w) for v in vals)
    return [line("n", range(1, len(t) + 1)), line("t_n", t), line("x_n", xs[1:])]


def _demo_z8() -> list[str]:
    Z8 = ModularRing(8)
    eq = NonrecursiveEquation(Z8, Z8(4), Z8(-6), Z8(-2), [Z8(1), Z8(3)])
    alpha = Z8(-1)
    c, d = eq.split(alpha)
    sols = enumerate_nonrecursive(c, d, 15, t1=Z8(4))
    in_04 = sum(1 for s in sols.sequences if all(v.payload in (0, 4) for v in s))
    lines = ["4x(n+1) + 6x(n) + 2x(n-1) = 0 over Z/8; 4 is a zero divisor",
             f"t(n) = x(n) + x(n-1): factor {c}t(n+1) + {d}t(n) = 0, cofactor x(n+1) = -x(n) + t(n+1)",
             f"x_0 = 1, x_1 = 3, t_1 = 4: {len(sols.sequences)} factor solutions of length 15, "
             f"{in_04} of them in {{0, 4}}",
             "table 1"]
    lines += _z8_table(eq, alpha, Z8_TABLE_1)
    lines.append("table 2")
    lines += _z8_table(eq, alpha, Z8_TABLE_2)
    Z9 = ModularRing(9)
    eq9 = NonrecursiveEquation(Z9, Z9(4), Z9(-6), Z9(-2), [Z9(1), Z9(3)])
    c9, d9 = eq9.split(Z9(-1))
    sols9 = enumerate_nonrecursive(c9, d9, 15, t1=Z9(4))
    lines.append(f"Z/9: 4 is a unit with inverse {Z9(4).inverse()}; x(n+1) = {eq9.a0 * Z9(4).inverse()}x(n) + "
                 f"{eq9.a1 * Z9(4).inverse()}x(n-1)")
    lines.append(f"factor t(n+1) = {sols9.recursive_multiplier}t(n) (= -{d9}*{Z9(4).inverse()}); "
                 f"{len(sols9.sequences)} branch from t_1 = 4")
    return lines


def _demo_boolean() -> list[str]:
    B = BooleanRing(4)
    a, b, x0, x1 = B({1, 2}), B({2, 3}), B({1}), B({3})
    split = split_ab(a, b)
    xs = split.solve(x0, x1, 8)
    oracle = iterate(split.recurrence(x0, x1), 8)
    rows = [{"n": n, "x_n": str(xs[n]), "iteration": str(oracle[n]),
             "closed form": str(solve_order2_ring(a, b, x0, x1, n)),
             "parity form": str(boolean_closed_form(a, b, x0, x1, n)) if n >= 2 else ""} for n in range(9)]
    head = ["x(n+1) = (a+b)x(n) - ab x(n-1) in the subsets of {0,1,2,3}; a = {1,2}, b = {2,3}",
            "split: t(n+1) = a t(n), x(n+1) = b x(n) + t(n+1); x_0 = {1}, x_1 = {3}"]
    return head + render(Output("demo", B, rows), "table").splitlines()


DEMO_FUNCS = {
    "fibonacci": _demo_fibonacci,
    "chebyshev": _demo_chebyshev,
    "bessel": _demo_bessel,
    "z7-periodic": _demo_z7,
    "z8-nonrecursive": _demo_z8,
    "boolean": _demo_boolean,
}


def cmd_demo(name: str) -> Output:
    lines = DEMO_FUNCS[name]()
    out = Output("demo", None, [], {"name": name, "lines": lines}, _verdict(True, True, detail="built-in checks"))
    out.notes = lines
    return out


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("problem")
    src.add_argument("--ring-file", metavar="PATH", help="problem file (JSON)")
    src.add_argument("--inline-json", metavar="TEXT", help="problem given inline as JSON")
    common.add_argument("--horizon", type=int, metavar="N", help="last index to compute")
    common.add_argument("--seed", action="append", metavar="V", help="seed value (repeatable; JSON or text)")
    common.add_argument("--format", choices=("csv", "json", "table"))
    common.add_argument("--tolerance", metavar="X", help="tolerance (exact fraction or decimal)")
    common.add_argument("--verify", action=argparse.BooleanOptionalAction, default=None,
                        help="cross-check against direct iteration (default on)")

    parser = argparse.ArgumentParser(prog="scfact", description="Semiconjugate factorization of linear recurrences over rings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="iterate the recurrence")
    sub.add_parser("eigenseq", parents=[common], help="eigensequence from seeds or solution ratios")
    p = sub.add_parser("factorize", parents=[common], help="factor/cofactor split")
    p.add_argument("--cascade", action="store_true", help="factor down to first-order stages")
    sub.add_parser("periodic", parents=[common], help="periodic eigensequence search (order 2)")
    sub.add_parser("roots", parents=[common], help="roots of a polynomial or characteristic polynomial")
    sub.add_parser("pp", parents=[common], help="convergence of an eigensequence to limiting eigenvalues")
    sub.add_parser("nonrecursive", parents=[common], help="split an equation with a nonunit leading coefficient")
    p = sub.add_parser("demo", parents=[common], help="built-in worked examples")
    p.add_argument("name", choices=DEMOS)
    p = sub.add_parser("audit", parents=[common], help="compare closed forms with their uncorrected variants")
    p.add_argument("case", choices=("cxf", "cbf", "mof-u4", "mof-sum"))
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p = sub.add_parser("schema", help="print a JSON schema")
    p.add_argument("name", choices=sorted(SCHEMAS))
    return parser


def _dispatch(args) -> Output | str:
    if args.command == "schema":
        return json.dumps(SCHEMAS[args.name], indent=2) + "\n"
    if args.command == "demo":
        return cmd_demo(args.name)
    if args.command == "audit":
        return cmd_audit(args.case, args.param)
    ctx = _context(args)
    args.format = ctx.fmt
    if args.command == "solve":
        return cmd_solve(ctx)
    if args.command == "eigenseq":
        return cmd_eigenseq(ctx)
    if args.command == "factorize":
        return cmd_factorize(ctx, args.cascade)
    if args.command == "periodic":
        return cmd_periodic(ctx)
    if args.command == "roots":
        return cmd_roots(ctx)
    if args.command == "pp":
        return cmd_pp(ctx)
    return cmd_nonrecursive(ctx)


def _fail(code: int, witness: dict) -> int:
    print(f"error: {witness.get('message') or witness.get('error')}", file=sys.stderr)
    print(json.dumps(witness, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = _dispatch(args)
    except ValidationError as exc:
        return _fail(2, {"error": "ValidationError", "message": str(exc), "path": exc.path})
    except (ParseError, ExpressionTypeError) as exc:
        return _fail(2, exc.witness())
    except ScfactError as exc:
        w = exc.witness()
        w.setdefault("message", str(exc))
        return _fail(3, w)
    except ArithmeticError as exc:
        return _fail(3, {"error": type(exc).__name__, "message": str(exc)})
    except (ValueError, TypeError, KeyError) as exc:
        return _fail(2, {"error": type(exc).__name__, "message": str(exc)})
    if isinstance(out, str):
        sys.stdout.write(out)
        return 0
    fmt = getattr(args, "format", None)
    if args.command == "demo" and fmt != "json":
        text = "\n".join(out.notes) + "\n"
    else:
        text = render(out, fmt or "table")
    sys.stdout.write(text)
    if out.verification and out.verification.get("checked") and out.verification.get("passed") is False:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
