"""Periodic eigensequence search."""
from fractions import Fraction

from scfact.eigen import char_residual
from scfact.factor import sc_factorize, solve_via_factorization
from scfact.periodic import alpha_beta, periodic_quadratic, periodic_search
from scfact.recurrence import LinearRecurrence, iterate
from scfact.rings import ModularRing, QuadraticField, RationalField
from scfact.sequences import Constant, Periodic


def c_rec(ring, b, initials=()):
    return LinearRecurrence(ring, [Periodic([ring(-1), ring(-1), ring(2)], offset=1), Constant(ring(b))],
                            0, list(initials))


def test_c1_table_and_quadratic():
    Q = RationalField()
    t = alpha_beta(*c_rec(Q, 1).coeffs)
    assert (t.alpha[2], t.alpha[3], t.alpha[4]) == (Q(-1), Q(2), Q(3))
    assert (t.beta[2], t.beta[3], t.beta[4]) == (Q(1), Q(-1), Q(-1))
    assert periodic_quadratic(t) == (Q(2), Q(-4), Q(1))


def test_c2_table_and_quadratic():
    Q = RationalField()
    t = alpha_beta(*c_rec(Q, -1).coeffs)
    assert (t.alpha[2], t.alpha[3], t.alpha[4]) == (Q(-1), Q(0), Q(1))
    assert (t.beta[2], t.beta[3], t.beta[4]) == (Q(-1), Q(1), Q(3))
    assert periodic_quadratic(t) == (Q(0), Q(0), Q(-3))
    search = periodic_search(c_rec(Q, -1))
    assert search.root_kind == "degenerate" and search.results == []


def test_table_columns_solve_the_recurrence():
    Q = RationalField()
    rec = c_rec(Q, 1)
    t = alpha_beta(*rec.coeffs, p=6)
    for col in (t.alpha, t.beta):
        xs = iterate(rec.with_initials(col[:2]), 7)
        assert list(xs.terms[:8]) == col


def test_constant_case_reduces_to_characteristic_polynomial():
    Q = RationalField()
    rec = LinearRecurrence(Q, [Constant(Q(3)), Constant(Q(5))], 0, [])
    c2, c1, c0 = periodic_quadratic(alpha_beta(*rec.coeffs))
    assert (c1 / c2, c0 / c2) == (Q(-3), Q(-5))


def test_c1_over_rationals_moves_to_sqrt2():
    Q = RationalField()
    search = periodic_search(c_rec(Q, 1, [0, 1]))
    K = QuadraticField(2)
    assert all(r.ring == K for r in search.results)
    r = next(x for x in search.results if x.root == K((1, Fraction(-1, 2))))
    assert r.success
    assert r.terms[1:3] == [K((1, 1)), K((-2, 1))]
    assert r.l_checks


def test_z7_search():
    Z7 = ModularRing(7)
    search = periodic_search(c_rec(Z7, 1, [0, 1]))
    assert [r.root.payload for r in search.results] == [3, 6]
    r3 = search.results[0]
    assert [t.payload for t in r3.terms] == [3, 4, 1, 3]
    assert r3.rho == Z7(4) == -(r3.terms[0] * r3.terms[1] * r3.terms[2]).inverse()


def test_successes_are_sound():
    for ring in (ModularRing(7), RationalField()):
        search = periodic_search(c_rec(ring, 1, [0, 1]))
        for r in search.successes:
            h = r.recurrence.homogeneous()
            for n in range(1, 10):
                assert char_residual(h, r.eigensequence.window(n, 1), n).is_zero()
            solve_via_factorization(sc_factorize(r.recurrence, r.eigensequence), 30)


def test_supplied_root_that_does_not_close():
    Z7 = ModularRing(7)
    search = periodic_search(c_rec(Z7, 1), roots=[2])
    assert not search.results[0].success
