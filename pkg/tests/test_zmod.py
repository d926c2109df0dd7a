import numpy as np
import pytest
from hypothesis import given, strategies as st

from dvconv.errors import NoSolution, NotInvertible, NotPositive, ZeroElement
from dvconv.zmod import (
    GMatrix,
    PrimeModulus,
    find_amplifier_params,
    find_beam_splitter_params,
    gmatrix_new,
    is_prime,
    mod_inverse,
    rank_mod,
    solve_mod_linear,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def test_is_prime():
    assert [p for p in range(2, 25) if is_prime(p)] == SMALL_PRIMES
    assert not is_prime(1)
    assert not is_prime(0)


def test_prime_modulus():
    assert PrimeModulus(3).supports_convolution
    assert not PrimeModulus(2).supports_convolution
    with pytest.raises(ValueError):
        PrimeModulus(4)


def test_mod_inverse_examples():
    assert mod_inverse(2, 7) == 4
    assert mod_inverse(2, 5) == 3
    for d in (3, 5, 7):
        assert mod_inverse(1, d) == 1
    with pytest.raises(ZeroElement):
        mod_inverse(0, 5)
    with pytest.raises(ZeroElement):
        mod_inverse(10, 5)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 12))
def test_mod_inverse_involution(d, a):
    a = a % d
    if a == 0:
        return
    inv = mod_inverse(a, d)
    assert (a * inv) % d == 1
    assert mod_inverse(inv, d) == a


def test_solve_identity():
    b = np.array([2, 0, 1])
    x = solve_mod_linear(np.eye(3, dtype=np.int64), b, 3)
    assert np.array_equal(x, b)


def test_solve_1x1():
    x = solve_mod_linear(np.array([[3]]), np.array([1]), 7)
    assert x[0] == 5


def test_solve_underdetermined():
    x = solve_mod_linear(np.array([[1, 1]]), np.array([1]), 3)
    assert (x[0] + x[1]) % 3 == 1


def test_solve_inconsistent():
    A = np.array([[1, 1], [2, 2]])
    with pytest.raises(NoSolution):
        solve_mod_linear(A, np.array([1, 1]), 3)


@given(st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_solve_random_systems(d, seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    A = rng.integers(0, d, size=(m, n))
    x_true = rng.integers(0, d, size=n)
    b = (A @ x_true) % d
    x = solve_mod_linear(A, b, d)
    assert np.array_equal((A @ x) % d, b)


def test_beam_splitter_examples():
    assert find_beam_splitter_params(7) == (2, 2)
    for d in (3, 5):
        with pytest.raises(NoSolution):
            find_beam_splitter_params(d)


def test_beam_splitter_all_primes_to_97():
    primes = [d for d in range(7, 98) if is_prime(d)]
    for d in primes:
        s, t = find_beam_splitter_params(d)
        assert s != 0 and t != 0
        assert (s * s + t * t) % d == 1


def test_amplifier_examples():
    assert find_amplifier_params(7) == (3, 1)
    with pytest.raises(NoSolution):
        find_amplifier_params(5)
    l, m = find_amplifier_params(11)
    assert (l * l - m * m) % 11 == 1


def test_gmatrix_default_d3():
    g = gmatrix_new((1, 1, 1, 2), 3)
    assert g.entries == (1, 1, 1, 2)
    assert g.N == 1


def test_gmatrix_beam_splitter_d7():
    g = gmatrix_new((2, 2, 2, -2), 7)
    assert g.entries == (2, 2, 2, 5)
    assert g.N == 6


def test_gmatrix_rejections():
    with pytest.raises(NotInvertible):
        gmatrix_new((1, 1, 1, 1), 2)
    with pytest.raises(NotPositive):
        gmatrix_new((1, 0, 1, 2), 3)


@given(st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_gmatrix_inverse(d, seed):
    rng = np.random.default_rng(seed)
    entries = tuple(int(v) for v in rng.integers(1, d, size=4))
    try:
        g = gmatrix_new(entries, d)
    except (NotInvertible, NotPositive):
        return
    i00, i01, i10, i11 = g.inverse_entries()
    G = np.array([[g.g00, g.g01], [g.g10, g.g11]])
    Ginv = np.array([[i00, i01], [i10, i11]])
    assert np.array_equal((G @ Ginv) % d, np.eye(2, dtype=np.int64))


def test_rank_mod():
    assert rank_mod(np.array([[1, 2], [2, 4]]), 5) == 1
    assert rank_mod(np.array([[1, 0], [0, 1]]), 3) == 2
