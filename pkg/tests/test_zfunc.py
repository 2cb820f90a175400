import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba.arith import UndefinedError, factorize, factorizations_up_to, is_deficient, tau
from zaremba.zfunc import minus_zeta_prime_2, v, z, z_direct, z_partial_sum, z_rearranged

from conftest import z_oracle

# values from the record table
TABLE_Z = {2: 0.34657359028, 6: 1.0114042647073518, 12: 1.5650534091363246}


@pytest.mark.parametrize("fn", [z_direct, z_rearranged])
@pytest.mark.parametrize("n", sorted(TABLE_Z))
def test_z_table_values(fn, n):
    assert fn(factorize(n)) == pytest.approx(TABLE_Z[n], abs=1e-11)


def test_z_of_one_is_zero():
    assert z_direct(factorize(1)) == 0.0
    assert z_rearranged(factorize(1)) == 0.0


def test_z_against_oracle():
    for n in range(1, 2000):
        assert z(factorize(n)) == pytest.approx(z_oracle(n), rel=1e-12, abs=1e-15)


def test_z_high_precision():
    n = 897612484786617600
    f = factorize(n)
    mp = mpmath.mp.clone()
    mp.dps = 40
    from zaremba.arith import divisors

    exact = mp.fsum(mp.log(d) / d for d in divisors(f))
    assert z_rearranged(f) == pytest.approx(float(exact), rel=1e-13)
    assert z_direct(f) == pytest.approx(float(exact), rel=1e-13)


@given(st.lists(st.tuples(st.sampled_from([2, 3, 5, 7, 11, 13, 101, 9973]), st.integers(1, 5)), max_size=5))
@settings(max_examples=200, deadline=None)
def test_forms_agree(pairs):
    d = {}
    for p, a in pairs:
        d[p] = d.get(p, 0) + a
    from zaremba.arith import Factorization

    if math.prod(p**a for p, a in d.items()) > 2**63:
        return
    f = Factorization.from_dict(d)
    assert z_rearranged(f) == pytest.approx(z_direct(f), rel=1e-10, abs=1e-15)


def test_z_positive_except_one():
    for f in factorizations_up_to(3000):
        assert (z(f) > 0) == (f.value > 1)


@pytest.mark.parametrize(
    "n, expected", [(2, 0.5), (12, 0.8734729387592397), (321253732800, 1.70595781024433)]
)
def test_v_values(n, expected):
    assert v(factorize(n)) == pytest.approx(expected, abs=1e-12)


def test_v_undefined_at_one():
    with pytest.raises(UndefinedError):
        v(factorize(1))


def test_partial_sum_small():
    assert z_partial_sum(1)[0] == 0.0
    direct = math.fsum(z_oracle(n) for n in range(1, 11))
    formula = math.fsum((10 // d) * math.log(d) / d for d in range(1, 11))
    s, model = z_partial_sum(10)
    assert s == pytest.approx(direct, rel=1e-13)
    assert s == pytest.approx(formula, rel=1e-13)
    assert model == pytest.approx(10 * minus_zeta_prime_2(), rel=1e-15)


def test_partial_sum_matches_pointwise():
    s, _ = z_partial_sum(5000)
    assert s == pytest.approx(math.fsum(z(f) for f in factorizations_up_to(5000)), rel=1e-12)


def test_partial_sum_chunk_boundary():
    x = (1 << 20) + 17
    s, _ = z_partial_sum(x)
    assert s / x == pytest.approx(minus_zeta_prime_2(), abs=2e-3)


def test_partial_sum_cap():
    from zaremba.arith import CapacityError

    with pytest.raises(CapacityError):
        z_partial_sum(10**6, cap=10**5)


def test_minus_zeta_prime_2():
    ref = float(-mpmath.zeta(2, derivative=1))
    assert minus_zeta_prime_2() == pytest.approx(ref, abs=1e-12)
    assert minus_zeta_prime_2() == pytest.approx(0.93754825431, abs=1e-10)
    assert math.log(2) / 4 == pytest.approx(0.17328679514, abs=1e-11)


def test_partial_sums_of_constant_increase():
    partial = 0.0
    for d in range(2, 200):
        nxt = partial + math.log(d) / d**2
        assert nxt > partial
        partial = nxt
    assert partial < minus_zeta_prime_2()


def test_tau_harmonic_bound():
    for f in factorizations_up_to(10**5):
        t = tau(f)
        bound = math.fsum(math.log(i) / i for i in range(2, t + 2))
        assert z(f) <= bound + 1e-12


@pytest.mark.parametrize("n", [6, 28, 496, 8128, 33550336])
def test_perfect_log_tau_minus_one(n):
    f = factorize(n)
    assert z(f) < math.log(tau(f) - 1)


def test_perfect_bound_fails_at_primes_and_24():
    from zaremba.arith import primes_up_to

    for n in primes_up_to(1000) + [24]:
        f = factorize(n)
        assert z(f) >= math.log(tau(f) - 1)


def test_deficient_bound():
    from zaremba.arith import h_and_H

    for f in factorizations_up_to(10**5):
        if is_deficient(f):
            h, _ = h_and_H(f)
            assert z(f) <= math.log(tau(f) + 2 - float(h)) + 1e-12


def test_random_large_agreement():
    rng = random.Random(2024)
    for _ in range(200):
        f = factorize(rng.randrange(2, 10**12))
        assert z_rearranged(f) == pytest.approx(z_direct(f), rel=1e-10)
