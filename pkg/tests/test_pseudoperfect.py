import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba.arith import (
    CapacityError,
    divisors,
    factorize,
    factorizations_up_to,
    primes_up_to,
    sigma,
)
from zaremba.pseudoperfect import (
    DivisorSetCertificate,
    TargetKind,
    abc_functionals,
    classify,
    euclid_certificate,
    euclid_strong,
    find_certificate,
    first_divergence,
    is_giuga,
    is_primary_pseudoperfect,
    is_primitive_non_deficient,
    is_pseudoperfect,
    is_strongly_pseudoperfect,
    near_perfect_divisor,
    obstruction_checks,
    parse_spoof,
    question_scan,
    read_bfile,
    search,
    sondow_mu,
    spoof_sigma,
)

S1 = TargetKind.S1
FIRST_STRONG = [6, 28, 36, 60, 84, 90, 120, 156, 210, 216, 240, 252]


def array_reach(items, target):
    """Independent oracle: numpy boolean subset-sum table."""
    reach = np.zeros(target + 1, dtype=bool)
    reach[0] = True
    for w in items:
        if w <= target:
            reach[w:] = reach[w:] | reach[: target + 1 - w].copy()
    return bool(reach[target])


def pair_items(n):
    out = []
    for d in divisors(factorize(n)):
        e = n // d
        if d < e:
            out.append(d + e)
        elif d == e:
            out.append(d)
    return out


class TestCertificates:
    def test_twenty(self):
        c = find_certificate(factorize(20), "S0_proper_sum_n")
        assert c.members == (1, 4, 5, 10)
        assert not c.contains_n

    def test_thirty_six(self):
        c = find_certificate(factorize(36), S1, require_symmetric=True)
        assert c.members == (1, 2, 3, 12, 18, 36)
        assert c.symmetric and c.contains_one and c.contains_n

    def test_one_fifty_six(self):
        c = find_certificate(factorize(156), S1, require_symmetric=True)
        assert set(divisors(factorize(156))) - set(c.members) == {2, 78}

    def test_none_when_impossible(self):
        assert find_certificate(factorize(180), S1, require_symmetric=True) is None
        assert find_certificate(factorize(10), "S0_proper_sum_n") is None

    def test_require_flags(self):
        f = factorize(90)
        c = find_certificate(f, S1, require_one=True)
        assert c.contains_one
        c = find_certificate(f, S1, require_n=True, require_one=True, require_symmetric=True)
        assert c.contains_n and c.contains_one and c.symmetric
        with pytest.raises(ValueError):
            find_certificate(f, "S0_proper_sum_n", require_n=True)
        with pytest.raises(ValueError):
            find_certificate(f, "S0_proper_sum_n", require_symmetric=True)

    def test_fallback_above_cap_agrees(self):
        for n in (36, 90, 156, 240, 11025):
            f = factorize(n)
            slow = find_certificate(f, S1, require_symmetric=True, cap=0)
            fast = find_certificate(f, S1, require_symmetric=True)
            assert (slow is None) == (fast is None)
            assert slow.symmetric

    def test_fallback_budget(self):
        with pytest.raises(CapacityError):
            classify_flags = find_certificate(factorize(720720), S1, require_symmetric=True, cap=0, budget=5)
            del classify_flags

    def test_validation(self):
        with pytest.raises(ValueError):
            DivisorSetCertificate(20, (1, 4, 5, 10, 20), "S0_proper_sum_n")
        with pytest.raises(ValueError):
            DivisorSetCertificate(20, (1, 3), "S0_proper_sum_n")
        with pytest.raises(ValueError):
            DivisorSetCertificate(20, (1, 1, 4), "S0_proper_sum_n")
        with pytest.raises(ValueError):
            DivisorSetCertificate(20, (1, 4, 5), "S1_sum_2n")
        d = DivisorSetCertificate(6, (6, 1, 2, 3), "S1_sum_2n").to_dict()
        assert d["members"] == [1, 2, 3, 6] and d["symmetric"]

    def test_1575(self):
        members = (225, 35, 5, 7, 9, 15, 21, 63, 75, 105, 175, 315, 525, 1575)
        c = DivisorSetCertificate(1575, members, S1)
        assert sum(members) == 3150 and not c.contains_one
        assert is_primitive_non_deficient(factorize(1575))
        A, _, C = abc_functionals(c)
        assert A > C


class TestClassify:
    def test_six(self):
        c = classify(factorize(6))
        assert c.perfect and c.pseudoperfect and c.strongly_pseudoperfect
        assert c.extremely_strongly_pseudoperfect and c.primary_pseudoperfect
        assert c.sondow_mu == 1

    def test_twelve(self):
        c = classify(factorize(12))
        assert c.abundant and c.pseudoperfect and c.near_perfect
        assert c.near_perfect_omitted == 4
        assert not c.strongly_pseudoperfect

    def test_11025(self):
        c = classify(factorize(11025))
        assert c.odd and c.strongly_pseudoperfect and c.abundant
        # 2205 = 3^2 5 7^2 divides 11025 and is itself abundant
        assert sigma(factorize(2205)) == 4446 > 2 * 2205
        assert not c.primitive_non_deficient

    def test_flag_implications(self):
        for f in factorizations_up_to(3000):
            c = classify(f)
            assert c.perfect + c.abundant + c.deficient == 1
            if c.perfect:
                assert c.pseudoperfect and c.strongly_pseudoperfect and c.extremely_strongly_pseudoperfect
            if c.extremely_strongly_pseudoperfect:
                assert c.strongly_pseudoperfect
            if c.strongly_pseudoperfect:
                assert c.pseudoperfect

    def test_capacity_leaves_flags_unknown(self):
        c = classify(factorize(720720), cap=0, budget=5)
        assert c.strongly_pseudoperfect is None
        assert c.abundant and c.sondow_mu == sondow_mu(factorize(720720))

    def test_pseudoperfect_against_array_oracle(self):
        for f in factorizations_up_to(20000):
            n = f.value
            if sigma(f) < 2 * n:
                continue
            d = divisors(f)
            assert is_pseudoperfect(f) == array_reach(d[:-1], n), n
            assert is_strongly_pseudoperfect(f) == array_reach(pair_items(n), 2 * n), n

    def test_dp_and_branch_and_bound_agree(self):
        for f in factorizations_up_to(10**5):
            if sigma(f) < 2 * f.value:
                continue
            assert is_pseudoperfect(f) == is_pseudoperfect(f, cap=0)
            assert is_strongly_pseudoperfect(f) == is_strongly_pseudoperfect(f, cap=0)


class TestStrong:
    def test_first_terms(self):
        assert search("strongly_pseudoperfect", 252) == FIRST_STRONG

    def test_sixty_times_powers_of_two(self):
        for j in range(9):
            assert is_strongly_pseudoperfect(factorize(60 * 2**j))
        assert is_strongly_pseudoperfect(factorize(90))
        assert not is_strongly_pseudoperfect(factorize(180))

    @pytest.mark.parametrize("m", range(2, 17))
    def test_euclid(self, m):
        f = euclid_strong(m)
        assert f.value == 2 ** (m - 1) * (2**m - 1)
        assert is_strongly_pseudoperfect(f)
        assert euclid_certificate(m).symmetric

    def test_euclid_values(self):
        assert euclid_strong(2).value == 6
        assert euclid_strong(4).value == 120
        assert euclid_strong(6).value == 2016
        with pytest.raises(ValueError):
            euclid_strong(1)
        with pytest.raises(ValueError):
            euclid_strong(63)

    def test_residue_obstruction(self):
        hits = search("strongly_pseudoperfect", 10**5)
        assert not [n for n in hits if n % 4 == 3 or n % 3 == 2]
        assert hits[:12] == FIRST_STRONG

    def test_obstruction_report(self):
        assert obstruction_checks(factorize(7)).mod4_is_3
        r = obstruction_checks(factorize(606))
        assert r.large_prime == 101 and r.excluded
        r = obstruction_checks(factorize(90))
        assert not r.excluded and is_strongly_pseudoperfect(factorize(90))

    def test_obstruction_is_sound(self):
        for f in factorizations_up_to(5000):
            if obstruction_checks(f).excluded:
                assert not is_strongly_pseudoperfect(f)


class TestFunctionals:
    def test_examples(self):
        for n, s in [(90, (1, 3, 5, 6, 30, 45, 90)), (272, (1, 16, 17, 34, 68, 136, 272))]:
            A, B, C = abc_functionals(DivisorSetCertificate(n, s, S1))
            assert A > C
            assert A <= B

    def test_full_divisor_set_of_six(self):
        A, B, C = abc_functionals(DivisorSetCertificate(6, (1, 2, 3, 6), S1))
        assert B == pytest.approx(C, abs=1e-15)

    def test_seventy_eight(self):
        _, _, C = abc_functionals(DivisorSetCertificate(78, (13, 26, 39, 78), S1))
        assert C == pytest.approx(-2.0053, abs=5e-5)

    def test_closed_form(self):
        # n = 6, S = {1, 2, 3, 6}: phi = 1, 1, 2, 2
        A, B, C = abc_functionals(DivisorSetCertificate(6, (1, 2, 3, 6), S1))
        assert A == pytest.approx((3 / 12) * math.log(2) + (6 / 12) * math.log(2))
        assert B == pytest.approx(math.log((1 + 2 + 6 + 12) / 12))

    def test_rejects_s0(self):
        with pytest.raises(ValueError):
            abc_functionals(DivisorSetCertificate(20, (1, 4, 5, 10), "S0_proper_sum_n"))

    def test_properties_over_certificates(self):
        for f in factorizations_up_to(10**4):
            if sigma(f) < 2 * f.value:
                continue
            for sym in (False, True):
                c = find_certificate(f, S1, require_symmetric=sym)
                if c is None:
                    continue
                A, B, C = abc_functionals(c)
                assert A <= B + 1e-12
                if c.symmetric:
                    assert B == pytest.approx(C, abs=1e-12)
                    assert A <= C + 1e-12
                if c.contains_one:
                    assert C > 0


class TestArithmeticFamilies:
    def test_giuga(self):
        assert search("giuga", 10**5) == [30, 858, 1722, 66198]

    def test_sondow(self):
        f = factorize(42)
        assert sondow_mu(f) == 1
        assert Fraction(1, 42) + Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 7) == 1
        assert is_primary_pseudoperfect(f)
        assert sondow_mu(factorize(30)) == -1 and is_giuga(factorize(30))

    def test_one(self):
        c = classify(factorize(1))
        assert c.sondow_mu == 0
        assert c.weak_primary_pseudoperfect and not c.primary_pseudoperfect
        assert c.deficient

    @given(st.integers(min_value=2, max_value=10**9))
    @settings(max_examples=200, deadline=None)
    def test_sondow_representative(self, n):
        f = factorize(n)
        mu = sondow_mu(f)
        assert -n / 2 < mu <= n / 2
        assert (Fraction(mu, n) + sum(Fraction(1, p) for p in f.primes)).denominator == 1

    def test_primary_pseudoperfect_small(self):
        assert search("primary_pseudoperfect", 50000) == [2, 6, 42, 1806, 47058]

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_near_perfect_family(self, p):
        n = 2 ** (p - 1) * (2**p - 1) ** 2
        assert near_perfect_divisor(factorize(n)) == 2**p - 1

    def test_near_perfect_excludes_perfect(self):
        assert near_perfect_divisor(factorize(28)) is None
        assert near_perfect_divisor(factorize(18)) == 3

    def test_primitive_non_deficient(self):
        for n in (6, 20, 28, 70, 272, 945, 1575):
            assert is_primitive_non_deficient(factorize(n)), n
        assert not is_primitive_non_deficient(factorize(12))
        for p in primes_up_to(200)[1:]:
            assert is_primitive_non_deficient(factorize(p * 2 ** (p.bit_length() - 1)))

    def test_primitive_non_deficient_oracle(self):
        flags = {}
        for f in factorizations_up_to(5000):
            n = f.value
            proper_ok = all(sigma(factorize(d)) < 2 * d for d in divisors(f)[:-1])
            flags[n] = sigma(f) >= 2 * n and proper_ok
            assert is_primitive_non_deficient(f) == flags[n], n

    def test_unknown_search_flag(self):
        with pytest.raises(ValueError):
            search("bogus", 10)


class TestSpoofs:
    @pytest.mark.parametrize(
        "pretend",
        [
            [(3, 2), (7, 2), (11, 2), (13, 2), (22021, 1)],
            [(3, 4), (7, 2), (11, 2), (19, 2), (-127, 1)],
            [(3, 2), (7, 2), (7, 2), (13, 1), (-19, 2)],
        ],
    )
    def test_known_spoofs(self, pretend):
        r = spoof_sigma(pretend)
        assert r.is_spoof_perfect and r.sigma_formula == 2 * r.value

    def test_descartes_formula(self):
        r = spoof_sigma([(3, 2), (7, 2), (11, 2), (13, 2), (22021, 1)])
        assert r.sigma_formula == 13 * 57 * 133 * 183 * 22022
        assert r.value == 198585576189

    def test_real_factorization_is_not_spoof(self):
        assert not spoof_sigma([(2, 2), (3, 1)]).is_spoof_perfect
        assert spoof_sigma([(2, 1), (3, 1)]).is_spoof_perfect

    def test_edge_bases(self):
        assert spoof_sigma([(1, 3)]).sigma_formula == 4
        with pytest.raises(ValueError):
            spoof_sigma([(0, 1)])
        with pytest.raises(ValueError):
            spoof_sigma([(3, 0)])

    def test_parse(self):
        assert parse_spoof("3^2,7^2,(-19)^2,-127") == [(3, 2), (7, 2), (-19, 2), (-127, 1)]


class TestReports:
    def test_question_scan(self):
        rep = question_scan(3000)
        assert set(rep) == {
            "near_perfect_and_strongly_pseudoperfect",
            "square_near_perfect_omitting_root",
            "primary_and_strongly_pseudoperfect",
        }
        assert rep["primary_and_strongly_pseudoperfect"] == [6]

    def test_bfile(self, tmp_path):
        p = tmp_path / "b.txt"
        p.write_text("# comment\n1 6\n2 28\n\n3 36\n")
        assert read_bfile(p) == [(1, 6), (2, 28), (3, 36)]
        p.write_text("1\n")
        with pytest.raises(ValueError):
            read_bfile(p)

    def test_first_divergence(self):
        assert first_divergence([1, 2, 3], [1, 2, 3, 4]) is None
        assert first_divergence([1, 2, 3], [1, 5, 3]) == (1, 2, 5)
