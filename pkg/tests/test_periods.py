import math

import numpy as np
import pytest

from catgraph.graph import CirculantMatrix, GeneratingVector, adjacency, periodic_family, stride_vector
from catgraph.periods import (
    PeriodResult,
    dense_power_mod,
    evol_power_blocks,
    fib_poly_closed_form,
    fib_poly_rows,
    matrix_period,
    period_sweep_N,
    period_sweep_n,
    scaling_law_check,
)
from catgraph.symplectic import build_M

from conftest import brute_period, random_symmetric_bits

ACM_G = GeneratingVector((1,))


def test_single_cat_map_periods():
    for N, T in [(2, 3), (3, 4), (4, 3), (5, 10), (8, 6), (16, 12), (32, 24)]:
        assert matrix_period(ACM_G, N).T == T
        assert brute_period(build_M(ACM_G).matrix, N) == T


def test_period_against_brute_force(rng):
    for _ in range(40):
        n = int(rng.integers(1, 5))
        N = int(rng.integers(2, 30))
        g = random_symmetric_bits(n, rng)
        assert matrix_period(g, N, verify=False).T == brute_period(build_M(g).matrix, N)


def test_single_cat_map_period_bounds():
    for s in range(1, 12):
        N = 2**s
        assert 3 * N / 4 <= matrix_period(ACM_G, N).T <= 3 * N
    # the upper bound holds for every modulus, the lower one does not (T(11) = 5)
    assert all(matrix_period(ACM_G, N).T <= 3 * N for N in range(2, 500))
    assert matrix_period(ACM_G, 11).T == 5


def test_period_crt_lcm(rng):
    for n in range(1, 4):
        g = random_symmetric_bits(n, rng)
        for a in range(2, 8):
            for b in range(a + 1, 36 // a + 1):
                if math.gcd(a, b) == 1:
                    Ta, Tb, Tab = (matrix_period(g, N).T for N in (a, b, a * b))
                    assert Tab == math.lcm(Ta, Tb)


def test_period_validation_and_censoring():
    with pytest.raises(ValueError):
        matrix_period(ACM_G, 1)
    with pytest.raises(ValueError):
        matrix_period(ACM_G, 5, cutoff=0)
    with pytest.raises(ValueError):
        matrix_period(ACM_G, 5, cutoff=10**10)
    r = matrix_period(ACM_G, 5, cutoff=9)
    assert r.censored and r.to_row()["T"] == "" and r.to_row()["censored"] == 1
    assert matrix_period(ACM_G, 5, cutoff=10).T == 10
    with pytest.raises(OverflowError):
        matrix_period(ACM_G, 2**62)


# -- Fibonacci polynomials -----------------------------------------------------


def test_fib_poly_small_cases():
    C = adjacency(stride_vector(5, 1))
    N = 97
    rows = fib_poly_rows(C, 3, N)
    Cd = C.dense()
    np.testing.assert_array_equal(rows[1].dense(), np.eye(5, dtype=int))
    np.testing.assert_array_equal(rows[2].dense(), Cd % N)
    np.testing.assert_array_equal(rows[3].dense(), (Cd @ Cd + np.eye(5, dtype=int)) % N)
    one = CirculantMatrix((1,))
    fib = [fib_poly_closed_form(one, m, 1000).first_row[0] for m in range(1, 9)]
    assert fib == [1, 1, 2, 3, 5, 8, 13, 21]
    with pytest.raises(ValueError):
        fib_poly_closed_form(one, 0, 5)


def test_fib_poly_closed_form_matches_recursion(rng):
    for n in range(1, 7):
        C = CirculantMatrix(random_symmetric_bits(n, rng).bits)
        for N in (2, 5, 97):
            rows = fib_poly_rows(C, 40, N)
            for m in range(1, 41):
                assert fib_poly_closed_form(C, m, N).first_row == rows[m].first_row


def test_evol_power_blocks():
    np.testing.assert_array_equal(evol_power_blocks(ACM_G, 3, 10), [[5, 8], [8, 13 % 10]])
    np.testing.assert_array_equal(evol_power_blocks(ACM_G, 1, 100), [[1, 1], [1, 2]])
    with pytest.raises(ValueError):
        evol_power_blocks(ACM_G, 0, 7)


def test_evol_power_blocks_against_dense(rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        N = int(rng.integers(2, 65))
        m = int(rng.integers(1, 25))
        g = random_symmetric_bits(n, rng)
        np.testing.assert_array_equal(evol_power_blocks(g, m, N), dense_power_mod(build_M(g).matrix, m, N))


def test_identity_blocks_at_period(rng):
    for _ in range(15):
        n = int(rng.integers(1, 6))
        N = int(rng.integers(2, 40))
        g = random_symmetric_bits(n, rng)
        T = matrix_period(g, N).T
        rows = fib_poly_rows(CirculantMatrix(g.bits), 2 * T + 1, N)
        eye = CirculantMatrix.identity(n, N).first_row
        assert rows[2 * T - 1].first_row == eye
        assert rows[2 * T + 1].first_row == eye
        assert not any(rows[2 * T].first_row)


def test_quadratic_relation_integer_and_mod_2(rng):
    for n in range(1, 7):
        g = random_symmetric_bits(n, rng)
        M = build_M(g).matrix
        C = adjacency(g).dense()
        C2 = np.kron(np.eye(2, dtype=int), C @ C)
        I = np.eye(2 * n, dtype=int)
        np.testing.assert_array_equal(M @ M - (2 * I + C2) @ M + I, 0)
        np.testing.assert_array_equal((M @ M + C2 @ M + I) % 2, 0)


# -- sweeps --------------------------------------------------------------------


def test_sweep_N_ordering_and_workers():
    g = stride_vector(4, 1)
    a = period_sweep_N(g, [9, 3, 5, 3, 20])
    assert [r.N for r in a] == [3, 5, 9, 20]
    assert all(isinstance(r, PeriodResult) and r.n == 4 for r in a)
    assert period_sweep_N(g, range(3, 40)) == period_sweep_N(g, range(39, 2, -1), workers=4)
    assert period_sweep_N(g, []) == []


def test_sweep_n_periodic_family_even():
    res = period_sweep_n(32, 48, start=4, step=4)
    assert [r.n for r in res] == list(range(4, 49, 4))
    assert {r.T for r in res} == {32}
    for N, T in [(2, 2), (4, 4), (8, 8), (16, 16)]:
        assert matrix_period(periodic_family(8), N).T == T


def test_sweep_n_periodic_family_odd_large_period():
    res = period_sweep_n(31, 15, cutoff=10**7, start=3, step=4)
    assert [r.T for r in res] == [15, 148960, 2862915, 480]
    assert max(r.T for r in res) > 10**6


def test_sweep_n_validation():
    with pytest.raises(ValueError):
        period_sweep_n(5, 2)
    with pytest.raises(ValueError):
        period_sweep_n(5, 10, step=0)


# -- doubling law --------------------------------------------------------------


def test_scaling_law_observed_values():
    assert scaling_law_check(ACM_G, 6) is False
    assert scaling_law_check(ACM_G, 6, base_s=2) is True
    assert scaling_law_check(GeneratingVector((0, 1, 1, 1)), 6) is True
    assert scaling_law_check(GeneratingVector((0, 1, 0, 1)), 6) is True
    assert scaling_law_check(ACM_G, 1) is True
    assert scaling_law_check(ACM_G, 3, cutoff=2) is None


def test_scaling_law_from_N4(rng):
    for _ in range(15):
        g = random_symmetric_bits(int(rng.integers(1, 9)), rng)
        if g.degree or g.bits[0]:
            assert scaling_law_check(g, 6, base_s=2)
    # zero coupling is the identity map, period 1 at every modulus
    assert scaling_law_check(GeneratingVector((0, 0, 0)), 6, base_s=2) is False


@pytest.mark.xfail(strict=True, reason="single cat map has T(4) = T(2) = 3, so doubling from N=2 breaks")
def test_scaling_law_from_N2_all_vectors():
    for g in (ACM_G, stride_vector(6, 1), stride_vector(6, 2), GeneratingVector((0, 1, 1, 1))):
        assert scaling_law_check(g, 6)
