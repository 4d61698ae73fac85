"""The fourteen acceptance criteria, one test each.

Every test records PASS or FAIL; the verdicts are printed as a block at the end
of the pytest run.  Run this file alone with ``pytest tests/test_acceptance.py``.
"""
from __future__ import annotations

import io
import math
import random
import time
from contextlib import contextmanager, redirect_stdout
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE, random_element, random_sequence
from scfact.cli import main
from scfact.closed_form import (
    bessel_general_solution,
    bessel_recurrence,
    boolean_closed_form,
    chebyshev_T,
    chebyshev_recurrence,
    formula_audit,
    solve_order2_field,
    solve_order2_ring,
)
from scfact.eigen import (
    EigenVerdict,
    char_residual,
    classify_eigenseq,
    eigenseq_from_seed,
    eigenvalue_sequence,
    poincare_perron_check,
    user_sequence,
)
from scfact.errors import NonUnitTerm
from scfact.factor import cascade_factorize, sc_factorize, solve_via_factorization
from scfact.periodic import alpha_beta, periodic_quadratic, periodic_search
from scfact.recurrence import (
    LinearRecurrence,
    NonrecursiveEquation,
    enumerate_nonrecursive,
    iterate,
    positive_unitary_solution,
)
from scfact.rings import (
    BooleanRing,
    IntegerRing,
    ModularRing,
    QuadraticField,
    RationalField,
)
from scfact.roots import brute_force_roots
from scfact.sequences import Constant, Formula, Periodic


@contextmanager
def criterion(num: int, name: str):
    ACCEPTANCE[num] = (name, False)
    try:
        yield
    except BaseException:
        print(f"FAIL  {num:2d}. {name}")
        raise
    ACCEPTANCE[num] = (name, True)
    print(f"PASS  {num:2d}. {name}")


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def c_coeff(ring):
    """``2cos(2 pi n / 3)`` as the period-3 list (a_1, a_2, a_3) = (-1, -1, 2)."""
    return Periodic([ring(-1), ring(-1), ring(2)], offset=1)


# -- 1 ---------------------------------------------------------------------

def test_01_factorization_soundness_sweep():
    with criterion(1, "factorization soundness sweep: 500 random recurrences, 200 terms"):
        rng = random.Random(20261017)
        rings = [ModularRing(p) for p in (5, 7, 11, 17)] + [RationalField(), QuadraticField(2)]
        start = time.perf_counter()
        checked = 0
        for i in range(500):
            ring = rings[i % len(rings)]
            for _attempt in range(200):
                order = rng.randint(2, 4)
                rec = LinearRecurrence(ring, [random_sequence(ring, rng) for _ in range(order)],
                                       random_sequence(ring, rng),
                                       [random_element(ring, rng) for _ in range(order)])
                seeds = []
                while len(seeds) < order - 1:
                    s = random_element(ring, rng)
                    if s.is_unit():
                        seeds.append(s)
                try:
                    f = sc_factorize(rec, eigenseq_from_seed(rec.homogeneous(), seeds))
                    xs = solve_via_factorization(f, 200, check=False)
                except NonUnitTerm:
                    continue
                oracle = iterate(rec, 200)
                assert list(xs.terms[:201]) == list(oracle.terms[:201]), (i, rec)
                checked += 1
                break
        elapsed = time.perf_counter() - start
        assert checked == 500
        assert elapsed < 30, f"sweep took {elapsed:.1f} s"


# -- 2 ---------------------------------------------------------------------

def test_02_fibonacci_over_rationals():
    with criterion(2, "Fibonacci over Q: ratios F(n+1)/F(n) and factor coefficient -F(n)/F(n+1)"):
        Q = RationalField()
        rec = LinearRecurrence(Q, [1, 1], 0, [1, 1])
        e = eigenseq_from_seed(rec.homogeneous(), [1])
        for n in range(1, 31):
            assert e.term(n) == Q(Fraction(fib(n + 1), fib(n)))
        f = sc_factorize(rec, e)
        for n in range(1, 31):
            assert f.factor_coeff(0, n) == Q(Fraction(-fib(n), fib(n + 1)))


# -- 3 ---------------------------------------------------------------------

def test_03_ez_periodic_eigensequence():
    with criterion(3, "{1,-2,4} eigensequence: residual 0 in Z, Unitary mod 17, Improper mod 18"):
        Z = IntegerRing()
        rec = LinearRecurrence(Z, [2, -4], 0, [])
        seq = user_sequence([Z(1), Z(-2), Z(4)], periodic=True, rec=rec)
        for n in range(1, 10):
            assert char_residual(rec, seq.window(n, 1), n).is_zero()
        for m, verdict in ((17, EigenVerdict.UNITARY), (18, EigenVerdict.IMPROPER)):
            R = ModularRing(m)
            e = user_sequence([R(1), R(-2), R(4)], periodic=True)
            assert classify_eigenseq(e, 9).verdict is verdict
        Z12 = ModularRing(12)
        roots = brute_force_roots([Z12(4), Z12(-2), Z12(1)])
        assert sorted(r.payload for r in roots) == [4, 10]


# -- 4 ---------------------------------------------------------------------

Z7_TABLE = {  # t_{3j+i} as a multiple of t_1, rows i = 1, 2, 3, columns j = 0, 1, 2
    1: (1, 4, 2),
    2: (2, 1, 4),
    3: (3, 5, 6),
}


def test_04_z7_periodic_table():
    with criterion(4, "Z/7: roots {3,6}, eigensequence (3,4,1), rho = 4, 3x3 t-table"):
        Z7 = ModularRing(7)
        rec = LinearRecurrence(Z7, [c_coeff(Z7), Constant(Z7(1))], 0, [0, 1])
        search = periodic_search(rec)
        assert sorted(r.root.payload for r in search.results) == [3, 6]
        best = next(r for r in search.results if r.root == Z7(3))
        assert best.success and [t.payload for t in best.terms[:3]] == [3, 4, 1]
        assert best.terms[3] == Z7(3)
        assert best.rho == Z7(4)
        # the table is linear in t_1: check every value of t_1 (x_0 = 0 makes t_1 = x_1)
        for t1 in range(7):
            f = sc_factorize(rec.with_initials([Z7(0), Z7(t1)]), best.eigensequence)
            ts = f.t_values(9)
            for i, row in Z7_TABLE.items():
                for j, mult in enumerate(row):
                    assert ts[3 * j + i - 1] == Z7(mult * t1)


# -- 5 ---------------------------------------------------------------------

def test_05_c1_quadratic_field():
    with criterion(5, "c1 over Q(sqrt 2): alpha/beta table, 2r^2-4r+1, exact r2, r3 and closure"):
        K = QuadraticField(2)
        rec = LinearRecurrence(K, [c_coeff(K), Constant(K(1))], 0, [0, 1])
        a, b = rec.coeffs
        t = alpha_beta(a, b)
        assert t.alpha[2:5] == [K(-1), K(2), K(3)]
        assert t.beta[2:5] == [K(1), K(-1), K(-1)]
        assert periodic_quadratic(t) == (K(2), K(-4), K(1))
        search = periodic_search(rec)
        r = next(x for x in search.results if x.root == K((1, Fraction(-1, 2))))
        assert r.terms[1] == K((1, 1))
        assert r.terms[2] == K((-2, 1))
        assert r.closed and r.terms[3] == r.terms[0]


# -- 6 ---------------------------------------------------------------------

def _c2_checks(aligned_only: bool):
    Q = RationalField()
    rec = LinearRecurrence(Q, [c_coeff(Q), Constant(Q(-1))], 0, [])
    t = alpha_beta(*rec.coeffs)
    assert periodic_quadratic(t) == (Q(0), Q(0), Q(-3))
    assert periodic_search(rec).results == []
    e = eigenseq_from_seed(rec, [1])
    rng = random.Random(6)
    for _ in range(5):
        x0, x1 = Q(Fraction(rng.randint(-9, 9), rng.randint(1, 5))), Q(rng.randint(-9, 9))
        xs = solve_via_factorization(sc_factorize(rec.with_initials([x0, x1]), e), 60)
        for j in range(21):
            assert xs[3 * j] == x0
    for n in range(1, 31):
        if aligned_only and n % 3 != 1:
            continue
        assert e.term(n) * e.term(n + 1) * e.term(n + 2) == Q(1), f"n = {n}"


@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="the triple product is 1 only for n = 1 mod 3 (r2 r3 r4 = 4); "
                          "a product of 1 at every n would force period 3, which the "
                          "degenerate quadratic excludes")
def test_06_c2_degenerate():
    with criterion(6, "c2: degenerate quadratic, r(n)r(n+1)r(n+2) = 1 for n <= 30, x(3j) = x(0)"):
        _c2_checks(aligned_only=False)


def test_06_c2_aligned_blocks():
    """The attainable part of criterion 6: aligned block products and x(3j) = x(0)."""
    _c2_checks(aligned_only=True)


# -- 7 ---------------------------------------------------------------------

def test_07_3ode_cascade_mod11():
    with criterion(7, "3ode mod 11: two-stage cascade equals iteration for 100 terms"):
        Z11 = ModularRing(11)
        rec = LinearRecurrence(Z11, [0, 2, 1], 0, [1, 2, 3])
        system = cascade_factorize(rec, [eigenvalue_sequence(Z11(-1)), None], horizon=100)
        assert len(system.stages) == 3
        assert list(system.solve(100).terms[:101]) == list(iterate(rec, 100).terms[:101])


# -- 8 ---------------------------------------------------------------------

def test_08_poincare_perron_pp1():
    with criterion(8, "pp1: r(2n-1) = 1, r(2n) = 2n/(2n-1), t(2n+1) = (2n)!/(4^n (n!)^2), limit 1"):
        Q = RationalField()
        rec = LinearRecurrence(Q, [Formula("1/n", Q), Constant(Q(1))], 0, [])
        e = eigenseq_from_seed(rec, [1])
        for n in range(1, 26):
            assert e.term(2 * n - 1) == Q(1)
            assert e.term(2 * n) == Q(Fraction(2 * n, 2 * n - 1))
        f = sc_factorize(rec.with_initials([0, 1]), e)
        ts = f.t_values(25)
        for n in range(13):
            expected = Fraction(math.factorial(2 * n), 4 ** n * math.factorial(n) ** 2)
            assert ts[2 * n] == Q(expected)
        report = poincare_perron_check(rec, [1], 200, 49, Fraction(1, 49), [0, 1])
        assert report.converged_to == Q(1)
        assert report.max_deviation <= Fraction(1, 49)


# -- 9 ---------------------------------------------------------------------

def test_09_boolean_closed_forms():
    with criterion(9, "Boolean rings: closed form equals iteration, parity forms hold"):
        rng = random.Random(9)
        for _ in range(200):
            B = BooleanRing(rng.randint(1, 8))
            a, b, x0, x1 = (random_element(B, rng) for _ in range(4))
            rec = LinearRecurrence(B, [a + b, -(a * b)], 0, [x0, x1])
            oracle = iterate(rec, 20)
            for n in range(21):
                assert solve_order2_ring(a, b, x0, x1, n) == oracle[n]
            for n in range(2, 21):
                even = (a + b) * x1 + a * b * x0
                odd = (a + b) * x1 + a * b * x1
                assert oracle[n] == (even if n % 2 == 0 else odd)
                assert boolean_closed_form(a, b, x0, x1, n) == oracle[n]


# -- 10 --------------------------------------------------------------------

def test_10_field_form_matches_ring_form():
    with criterion(10, "field form, ring form and iteration agree over Q"):
        Q = RationalField()
        rng = random.Random(10)
        for i in range(200):
            a = Q(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
            b = a if i % 10 == 0 else Q(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
            x0, x1 = Q(rng.randint(-9, 9)), Q(Fraction(rng.randint(-9, 9), rng.randint(1, 3)))
            oracle = iterate(LinearRecurrence(Q, [a + b, -(a * b)], 0, [x0, x1]), 40)
            for n in range(2, 41):
                assert solve_order2_ring(a, b, x0, x1, n) == oracle[n]
                assert solve_order2_field(a, b, x0, x1, n) == oracle[n]


# -- 11 --------------------------------------------------------------------

def test_11_chebyshev():
    with criterion(11, "Chebyshev T(n, s) within 1e-10 of iteration, exact at s = +-1"):
        points = [Fraction(k, 10) for k in range(-9, 10)] + [Fraction(v) for v in ("1", "-1", "3/2", "-3/2", "2")]
        Q = RationalField()
        for s in points:
            oracle = iterate(chebyshev_recurrence(Q, s), 30)
            for n in range(31):
                exact = oracle[n].payload
                assert abs(chebyshev_T(s, n) - float(exact)) <= 1e-10 * max(1.0, abs(float(exact)))
        for n in range(31):
            assert chebyshev_T(1, n) == 1
            assert chebyshev_T(-1, n) == (-1) ** n


# -- 12 --------------------------------------------------------------------

def test_12_bessel():
    with criterion(12, "Bessel recurrence: general solution within 1e-9, u4(2) = 17"):
        grid = (0.5, 1, 2)
        u = positive_unitary_solution(bessel_recurrence(grid), horizon=15)
        ring = u.rec.ring
        rng = random.Random(12)
        for _ in range(10):
            x0 = ring(tuple(rng.uniform(0.1, 5) for _ in grid))
            x1 = ring(tuple(rng.uniform(0.1, 5) for _ in grid))
            oracle = iterate(bessel_recurrence(grid, x0, x1), 15)
            for n in range(16):
                got = bessel_general_solution(x0, x1, u, n).payload
                for g, w in zip(got, oracle[n].payload):
                    assert abs(g - w) <= 1e-9 * abs(w)
        assert u[4].payload[2] == 17
        audit = formula_audit("mof-u4", {"s": 2})
        assert (audit.oracle, audit.corrected, audit.uncorrected) == (17, 17, 14)


# -- 13 --------------------------------------------------------------------

def test_13_conjugate_formula_audit():
    with criterion(13, "conjugate-pair closed form within 1e-10; uncorrected sine term off by 1/h"):
        rng = random.Random(13)
        done = 0
        while done < 50:
            f, g = rng.uniform(-3, 3), rng.uniform(-3, -0.05)
            if f * f + 4 * g >= -1e-3:
                continue
            x0, x1, n = rng.uniform(-2, 2), rng.uniform(-2, 2), rng.randint(0, 25)
            r = formula_audit("cxf", {"f": f, "g": g, "x0": x0, "x1": x1, "n": n})
            assert abs(r.corrected - r.oracle) <= 1e-10 * max(1.0, abs(r.oracle))
            rho = math.sqrt(-g)
            theta = math.acos(f / (2 * rho))
            cos_part = rho ** n * x0 * math.cos(n * theta)
            h = math.sqrt(-f * f - 4 * g)
            if abs(r.corrected - cos_part) > 1e-6 * max(1.0, abs(cos_part)):
                ratio = (r.uncorrected - cos_part) / (r.corrected - cos_part)
                assert ratio == pytest.approx(1 / h, rel=1e-6)
            done += 1


# -- 14 --------------------------------------------------------------------

# the two worked tables for 4x(n+1) + 6x(n) + 2x(n-1) = 0 in Z/8 with x_0 = 1, x_1 = 3
Z8_TABLES = (
    ((4, 4, 4, 4, 4, 0, 0, 0, 0, 0, 4, 4, 4, 4, 4), (3, 1, 3, 1, 3, 5, 3, 5, 3, 5, 7, 5, 7, 5, 7)),
    ((4, 0, 4, 0, 0, 4, 0, 0, 0, 4, 0, 0, 0, 0, 4), (3, 5, 7, 1, 7, 5, 3, 5, 3, 1, 7, 1, 7, 1, 3)),
)


def _table_lines(ts, xs):
    def line(label, vals):
        return f"{label:<4}|" + "".join(str(v).rjust(3) for v in vals)
    return [line("n", range(1, 16)), line("t_n", ts), line("x_n", xs)]


def test_14_nonrecursive_z8_z9():
    with criterion(14, "Z/8 nonrecursive demo reproduces both tables; Z/9 has one branch, multiplier 4"):
        buf = io.StringIO()
        with redirect_stdout(buf):
            assert main(["demo", "z8-nonrecursive"]) == 0
        lines = buf.getvalue().splitlines()
        for label, (ts, xs) in zip(("table 1", "table 2"), Z8_TABLES):
            i = lines.index(label)
            assert lines[i + 1:i + 4] == _table_lines(ts, xs)
        Z9 = ModularRing(9)
        eq = NonrecursiveEquation(Z9, Z9(4), Z9(-6), Z9(-2), [Z9(1), Z9(3)])
        c, d = eq.split(Z9(-1))
        sols = enumerate_nonrecursive(c, d, 15, t1=Z9(4))
        assert sols.recursive_multiplier == Z9(-2 * 7)
        assert len(sols.sequences) == 1
        assert all(sols.sequences[0][n + 1] == Z9(4) * sols.sequences[0][n] for n in range(14))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
