from fractions import Fraction as F

import pytest

from beltlab.belt import BeltState, evolve
from beltlab.dynkin import product_of
from beltlab.errors import DegenerateInputError, IndexOutOfWindowError
from beltlab.quiver import Seed
from beltlab.recurrence import (
    CharPoly,
    RationalSequence,
    Status,
    combine,
    minimal_order,
    poly_gcd,
    poly_mul,
    root_product_resultant,
    satisfies,
    squarefree_decomposition,
    toeplitz_det,
)


def fib(n):
    a = [1, 1]
    while len(a) < n:
        a.append(a[-1] + a[-2])
    return a


def test_fibonacci_order_two():
    rep = minimal_order(RationalSequence.of(fib(30)), 6)
    assert rep.found and rep.order == 2 and rep.coefficients == (1, 1)
    assert rep.char_poly() == CharPoly.of([-1, -1, 1])
    assert rep.verified_window == (2, 29)


def test_fibonacci_toeplitz_vanishes_from_three():
    seq = RationalSequence.of(fib(20))
    assert toeplitz_det(seq, 5, 2) != 0
    assert toeplitz_det(seq, 5, 3) == 0
    assert toeplitz_det(seq, 8, 4) == 0


def test_toeplitz_window_errors():
    seq = RationalSequence.of(range(1, 6))
    with pytest.raises(IndexOutOfWindowError):
        toeplitz_det(seq, 1, 3)
    with pytest.raises(ValueError):
        toeplitz_det(seq, 2, 0)


def test_toeplitz_entry_convention():
    # m_ij = a[l + i - j]: the 2x2 block at l = 2 is [[a2, a1], [a3, a2]]
    seq = RationalSequence.of([5, 7, 11, 13])
    assert toeplitz_det(seq, 2, 2) == 11 * 11 - 7 * 13


def test_example_toeplitz_determinants():
    q = product_of("A3", "A1~")
    orbit = evolve(BeltState.start(Seed.ones(q)), 8).series[0]
    seq = RationalSequence(orbit)
    assert toeplitz_det(seq, 4, 5) == 0
    assert toeplitz_det(seq, 4, 4) != 0


def test_geometric_and_constant():
    assert minimal_order(RationalSequence.of([F(3, 2) ** k for k in range(12)]), 3).order == 1
    assert minimal_order(RationalSequence.of([7] * 12), 3).coefficients == (1,)
    assert minimal_order(RationalSequence.of([0] * 12), 3).order == 0


def test_insufficient_data_and_none_up_to():
    assert minimal_order(RationalSequence.of(range(1, 10)), 3).status is Status.INSUFFICIENT_DATA
    squares = RationalSequence.of([2 ** (k * k) for k in range(20)])
    rep = minimal_order(squares, 8)
    assert rep.status is Status.NONE_UP_TO and rep.k_max == 8


def test_singular_leading_block_falls_back_to_full_system():
    # a_n = a_{n-2} with a leading zero pattern that makes the first block singular
    seq = RationalSequence.of([0, 1] * 10)
    rep = minimal_order(seq, 4)
    assert rep.order == 2 and satisfies(seq, rep.coefficients)


def test_offset_sequences():
    seq = RationalSequence.of(fib(20), offset=-5)
    assert seq[-5] == 1 and seq.last == 14
    with pytest.raises(IndexOutOfWindowError):
        seq[15]
    assert minimal_order(seq, 4).verified_window == (-3, 14)


def test_report_json():
    js = minimal_order(RationalSequence.of(fib(20)), 3).to_json()
    assert js == {"status": "Found", "order": 2, "coefficients": ["1", "1"], "verified_window": [2, 19], "k_max": 3}


def test_charpoly_basics():
    p = CharPoly.from_recurrence([F(5), F(-6)])
    assert p.coeffs == (6, -5, 1) and p.degree == 2 and p(2) == 0 and p(3) == 0
    assert p.recurrence() == (5, -6)
    with pytest.raises(ValueError):
        CharPoly.of([1, 2])


def test_combine_sum_of_geometrics():
    assert combine(CharPoly.of([-2, 1]), CharPoly.of([-3, 1]), "sum") == CharPoly.of([6, -5, 1])


def test_combine_product_of_geometrics():
    assert combine(CharPoly.of([-2, 1]), CharPoly.of([-3, 1]), "product") == CharPoly.of([-6, 1])


def test_combine_product_fibonacci_squared():
    p = CharPoly.of([-1, -1, 1])
    out = combine(p, p, "product")
    assert out == CharPoly.of([1, -2, -2, 1])
    # the raw resultant carries an extra factor t + 1 (root products phi*psi = -1 twice)
    raw = root_product_resultant(p.coeffs, p.coeffs)
    assert raw == poly_mul([1, 1], [1, -2, -2, 1])


def test_combine_product_repeated_roots():
    # n 2^n has (t-2)^2; its square n^2 4^n needs (t-4)^3
    p = CharPoly.of([4, -4, 1])
    out = combine(p, p, "product")
    assert out == CharPoly.of([-64, 48, -12, 1])
    seq = RationalSequence.of([(n * 2 ** n) ** 2 for n in range(20)])
    assert out.annihilates(seq)


def test_combine_errors():
    with pytest.raises(DegenerateInputError):
        combine(CharPoly.of([1]), CharPoly.of([-1, 1]), "sum")
    with pytest.raises(ValueError):
        combine(CharPoly.of([-1, 1]), CharPoly.of([-1, 1]), "ratio")


def test_squarefree_and_gcd():
    a = poly_mul(poly_mul([-1, 1], [-1, 1]), [2, 1])  # (t-1)^2 (t+2)
    dec = squarefree_decomposition(a)
    assert dec == {1: [2, 1], 2: [-1, 1]}
    assert poly_gcd(a, [-1, 1]) == [-1, 1]
