"""Iteration oracle, unitary checks and the nonrecursive solver."""
import pytest

from scfact.closed_form import bessel_recurrence, chebyshev_recurrence
from scfact.errors import HypothesisViolated, ValidationError
from scfact.recurrence import (
    LinearRecurrence, NonrecursiveEquation, cofactor_reconstruct, enumerate_nonrecursive,
    is_unitary_solution, iterate, positive_unitary_solution, recurrence_from_json,
)
from scfact.rings import Classification, IntegerRing, ModularRing, RationalField, SampledFunctionRing
from scfact.sequences import Constant, Periodic


def test_fibonacci_tenth_term():
    Z = IntegerRing()
    assert iterate(LinearRecurrence(Z, [1, 1], 0, [0, 1]), 10)[10] == Z(55)


def test_c2_stream_repeats_x0_every_third_term():
    Q = RationalField()
    a = Periodic([Q(-1), Q(-1), Q(2)], offset=1)
    xs = iterate(LinearRecurrence(Q, [a, Constant(Q(-1))], 0, [0, 1]), 9)
    assert [x.payload for x in xs.terms[:5]] == [0, 1, -1, 0, 1]
    assert all(xs[3 * j] == Q(0) for j in range(4))


def test_chebyshev_on_a_grid():
    grid = SampledFunctionRing((0.5,))
    xs = iterate(chebyshev_recurrence(grid, grid(0.5)), 5)
    assert xs[5].payload[0] == pytest.approx(0.5)


def test_forcing_term_is_added():
    Q = RationalField()
    xs = iterate(LinearRecurrence(Q, [1], 1, [0]), 4)
    assert [x.payload for x in xs.terms] == [0, 1, 2, 3, 4]


def test_zero_initial_value_fails_unitary_check():
    v = is_unitary_solution(LinearRecurrence(IntegerRing(), [1, 1], 0, [0, 1]), 5)
    assert not v and v.index == 0 and v.classification is Classification.ZERO


def test_fibonacci_mod_11_hits_zero():
    # 1, 1, 2, 3, 5, 8, 2, 10, 1, 0: the (1, 1) start is not zero-avoiding mod 11
    v = is_unitary_solution(LinearRecurrence(ModularRing(11), [1, 1], 0, [1, 1]), 50)
    assert v.to_json() == {"verdict": "FailsAt", "index": 9, "classification": "Zero"}


def test_geometric_fibonacci_solution_mod_11_is_unitary():
    Z11 = ModularRing(11)
    assert is_unitary_solution(LinearRecurrence(Z11, [1, 1], 0, [1, 4]), 50)


def test_bessel_positive_solution():
    u = positive_unitary_solution(bessel_recurrence((0.5, 1, 2)), horizon=10)
    assert is_unitary_solution(u, 10)
    assert u[2].payload[1] == pytest.approx(3.0)
    assert all(v > 0 for x in u.terms for v in x.payload)


def test_positive_solution_rejects_zero_coefficients():
    grid = SampledFunctionRing((1.0,))
    rec = LinearRecurrence(grid, [Constant(grid(0.0)), Constant(grid(0.0))], 0, [])
    with pytest.raises(HypothesisViolated):
        positive_unitary_solution(rec, horizon=4)


def test_nonunit_leading_coefficient_is_rejected():
    with pytest.raises(ValidationError, match="use nonrecursive command"):
        recurrence_from_json({"ring": {"kind": "modular", "m": 8}, "leading": 4, "coeffs": [-6, -2]})


def test_unit_leading_coefficient_is_divided_out():
    rec = recurrence_from_json({"ring": {"kind": "modular", "m": 9}, "leading": 4, "coeffs": [-6, -2]})
    Z9 = ModularRing(9)
    assert (rec.coeff(0, 0), rec.coeff(1, 0)) == (Z9(3), Z9(4))


def test_z8_every_04_sequence_solves_the_factor():
    Z8 = ModularRing(8)
    sols = enumerate_nonrecursive(Z8(4), Z8(2), 6)
    found = {tuple(v.payload for v in s) for s in sols.sequences}
    for mask in range(64):
        seq = tuple(4 * ((mask >> i) & 1) for i in range(6))
        assert seq in found
    assert sols.recursive_multiplier is None


def test_z8_factor_solutions_are_not_only_04_sequences():
    Z8 = ModularRing(8)
    sols = enumerate_nonrecursive(Z8(4), Z8(2), 3, t1=Z8(4))
    assert (Z8(4), Z8(2), Z8(1)) in sols.sequences


def test_z9_unique_branch():
    Z9 = ModularRing(9)
    sols = enumerate_nonrecursive(Z9(4), Z9(2), 8, t1=Z9(4))
    assert sols.recursive_multiplier == Z9(-2 * 7)
    assert len(sols.sequences) == 1


def test_unit_leading_zero_d_forces_zero_tail():
    Z5 = ModularRing(5)
    sols = enumerate_nonrecursive(Z5(1), Z5(0), 4, t1=Z5(3))
    assert sols.sequences == [(Z5(3), Z5(0), Z5(0), Z5(0))]


@pytest.mark.parametrize("ts, xs", [
    ((4, 4, 4, 4, 4, 0, 0, 0, 0, 0, 4, 4, 4, 4, 4), (3, 1, 3, 1, 3, 5, 3, 5, 3, 5, 7, 5, 7, 5, 7)),
    ((4, 0, 4, 0, 0, 4, 0, 0, 0, 4, 0, 0, 0, 0, 4), (3, 5, 7, 1, 7, 5, 3, 5, 3, 1, 7, 1, 7, 1, 3)),
])
def test_z8_cofactor_tables(ts, xs):
    Z8 = ModularRing(8)
    got = cofactor_reconstruct([Z8(t) for t in ts], Z8(-1), Z8(1))
    assert [x.payload for x in got[1:]] == list(xs)
    eq = NonrecursiveEquation(Z8, Z8(4), Z8(-6), Z8(-2), [Z8(1), Z8(3)])
    for n in range(1, len(got) - 1):
        assert (eq.leading * got[n + 1] - eq.a0 * got[n] - eq.a1 * got[n - 1]).is_zero()


def test_zero_multiplier_and_zero_t():
    Q = RationalField()
    assert cofactor_reconstruct([Q(0)] * 4, Q(0), Q(5)) == [Q(5), Q(0), Q(0), Q(0), Q(0)]


def test_split_multipliers_z8():
    Z8 = ModularRing(8)
    eq = NonrecursiveEquation(Z8, Z8(4), Z8(-6), Z8(-2), [])
    assert Z8(-1) in eq.split_multipliers()
    assert eq.split(Z8(-1)) == (Z8(4), Z8(2))
