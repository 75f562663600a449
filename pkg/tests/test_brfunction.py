from itertools import combinations, product

import pytest
from conftest import I, families
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import naive_big_lambda, naive_compositions

from brmult import brfunction
from brmult.brfunction import (
    EvaluatorMismatch,
    LambdaTable,
    RegionError,
    Stratum,
    StrataFilter,
    big_lambda,
    big_lambda_brute,
    big_lambda_fast,
    binom,
    classify,
    compositions,
    count_fiber,
    family_sum,
    j_ideal_bruteforce,
    j_ideal_closed_form,
    j_ideal_reduced,
    lambda_br,
    lambda_region,
)
from brmult.monomial import IdealFamily, colength, ideal_power, ideal_product, ideal_sum, maximal_ideal, unit_ideal


def test_binom_convention():
    assert binom(5, 2) == 10
    assert binom(3, 0) == 1
    assert binom(2, 3) == 0
    assert binom(-1, 0) == 0
    assert binom(4, -1) == 0


def test_compositions_lex_and_bounded():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert sorted(compositions(4, 3)) == sorted(naive_compositions(4, 3))
    assert list(compositions(2, 2, (1, 2))) == [(0, 2), (1, 1)]
    assert list(compositions(3, 2, (1, 1))) == []


class TestJIdeal:
    def test_p1(self, nonnested):
        A, B = nonnested.ideals
        assert j_ideal_bruteforce(nonnested, 1, (1, 1)) == ideal_sum(A, B)

    def test_p2(self, nonnested):
        A, B = nonnested.ideals
        expect = ideal_sum(ideal_product(A, B), ideal_power(B, 2))
        assert j_ideal_bruteforce(nonnested, 2, (1, 2)) == expect

    def test_p0_is_unit(self, nonnested):
        assert j_ideal_bruteforce(nonnested, 0, (5, 3)) == unit_ideal(2)

    def test_short_n_flagged(self, nonnested):
        with pytest.raises(ValueError):
            j_ideal_bruteforce(nonnested, 3, (1, 1))

    def test_closed_form_examples(self, nonnested):
        A, B = nonnested.ideals
        assert j_ideal_closed_form(nonnested, 1, (3, 1)) == ideal_sum(A, B)
        assert j_ideal_closed_form(nonnested, 1, (3, 1)) == j_ideal_bruteforce(nonnested, 1, (3, 1))
        expect = ideal_sum(ideal_power(A, 2), ideal_product(A, B))
        assert j_ideal_closed_form(nonnested, 2, (4, 1)) == expect
        assert j_ideal_bruteforce(nonnested, 2, (4, 1)) == expect

    def test_closed_form_all_large(self, nonnested):
        S = family_sum(nonnested)
        for p in range(1, 4):
            assert j_ideal_closed_form(nonnested, p, (p + 2, p + 1)) == ideal_power(S, p)

    def test_closed_form_rejects_plus_cell(self):
        F = IdealFamily((maximal_ideal(2),) * 3)
        with pytest.raises(ValueError):
            j_ideal_closed_form(F, 1, (3, 1, 1))

    def test_reduced_plus_cell_example(self):
        F = IdealFamily((I((3, 0), (0, 1)), I((1, 0), (0, 2)), I((2, 0), (1, 1), (0, 2))))
        expect = family_sum(F)
        assert j_ideal_reduced(F, 1, (3, 1, 1)) == expect
        assert j_ideal_bruteforce(F, 1, (3, 1, 1)) == expect

    def test_reduced_all_large(self, nonnested):
        assert j_ideal_reduced(nonnested, 2, (4, 5)) == ideal_power(family_sum(nonnested), 2)

    @settings(max_examples=40)
    @given(families(r_max=3), st.data())
    def test_forms_agree_with_brute(self, F, data):
        r = F.count
        p = data.draw(st.integers(1, 3))
        q = data.draw(st.integers((p + 1) * r, (p + 1) * r + 6))
        for n in compositions(p + q, r):
            brute = j_ideal_bruteforce(F, p, n)
            st_ = classify(n, p)
            assert j_ideal_reduced(F, p, n) == brute
            if not st_.plus_cell:
                assert j_ideal_closed_form(F, p, n) == brute


class TestClassify:
    def test_examples(self):
        assert classify((3, 1), 1) == Stratum(1, (1,), False)
        assert classify((2, 2), 1) == Stratum(2, (), False)
        assert classify((3, 2, 2), 1) == Stratum(3, (), False)

    def test_plus_cell_follows_definition(self):
        # small coordinates 1 + 1 exceed p = 1
        assert classify((4, 1, 1), 1) == Stratum(1, (1, 2), True)
        assert classify((4, 1, 0), 1) == Stratum(1, (1, 2), False)

    def test_k_zero_rejected(self):
        with pytest.raises(RegionError):
            classify((1, 1), 1)

    @given(st.integers(1, 4), st.integers(0, 3), st.data())
    def test_region_has_large_coordinate(self, r, p, data):
        q = data.draw(st.integers((p + 1) * r, (p + 1) * r + 10))
        for n in compositions(p + q, r):
            s = classify(n, p)
            assert s.k >= 1
            assert len(s.small) == r - s.k
            assert not (s.plus_cell and not s.small)


class TestCountFiber:
    def test_examples(self):
        assert count_fiber(1, 4, 2, 0) == 2  # (2, 3), (3, 2)
        assert count_fiber(1, 4, 2, 1) == 1  # (2, 2)
        for p, q, m in [(1, 5, 0), (2, 9, 2), (3, 20, 1)]:
            assert count_fiber(p, q, 1, m) == 1

    def test_direct_enumeration(self):
        for k in range(1, 4):
            for p in range(4):
                for q in range(21):
                    for m in range(p + 1):
                        direct = sum(1 for n in naive_compositions(p + q - m, k) if min(n) > p)
                        assert count_fiber(p, q, k, m) == direct, (k, p, q, m)

    def test_range_errors(self):
        with pytest.raises(ValueError):
            count_fiber(1, 4, 0, 0)
        with pytest.raises(ValueError):
            count_fiber(1, 4, 3, 0, r=2)
        with pytest.raises(RegionError):
            count_fiber(1, 3, 1, 0, r=2)
        with pytest.raises(ValueError):
            count_fiber(1, 4, 2, 1, r=2)


class TestLambda:
    def test_lambda_br_examples(self, m2, d1xx):
        F = IdealFamily((m2, m2))
        assert lambda_br(F, 2) == 9
        assert lambda_br(F, 0) == 0
        for p in range(6):
            assert lambda_br(F, p) == (p + 1) * p * (p + 1) // 2
            assert lambda_br(d1xx, p) == (p + 1) * p

    def test_big_lambda_r1(self):
        F = IdealFamily((I((2, 0), (0, 1)),))
        for q in range(6):
            assert big_lambda_brute(F, 2, q) == 6
        for q in range(2, 8):
            assert big_lambda_fast(F, 1, q) == colength(I((2, 0), (0, 1)))

    def test_big_lambda_d1(self, d1xx):
        for p in range(5):
            for q in range(12):
                v = big_lambda_brute(d1xx, p, q)
                assert v == (p + q + 1) * p
                if q >= 2 * (p + 1):
                    assert big_lambda_fast(d1xx, p, q) == v

    def test_q0_is_lambda_br(self, nonnested):
        for p in range(5):
            assert big_lambda_brute(nonnested, p, 0) == lambda_br(nonnested, p)

    def test_fast_needs_region(self, nonnested):
        with pytest.raises(RegionError):
            big_lambda_fast(nonnested, 2, 5)
        assert big_lambda(nonnested, 2, 5) == big_lambda_brute(nonnested, 2, 5)
        with pytest.raises(ValueError):
            big_lambda(nonnested, 1, 4, "magic")

    @settings(max_examples=15)
    @given(families(r_max=2, max_exp=2), st.integers(0, 2), st.integers(0, 5))
    def test_brute_matches_naive(self, F, p, q):
        ideals = [I_.gens for I_ in F.ideals]
        assert big_lambda_brute(F, p, q) == naive_big_lambda(ideals, p, q, F.dim)

    @settings(max_examples=30)
    @given(families(r_max=3), st.integers(0, 3), st.integers(0, 8))
    def test_fast_equals_brute(self, F, p, extra):
        q = (p + 1) * F.count + extra
        assert big_lambda_fast(F, p, q) == big_lambda_brute(F, p, q)


class TestRegions:
    F3 = IdealFamily((I((3, 0), (0, 1)), I((1, 0), (0, 2)), I((2, 0), (1, 1), (0, 2))))

    @pytest.mark.parametrize("p,q", [(1, 6), (1, 9), (2, 9), (3, 12)])
    def test_partition(self, p, q):
        F = self.F3
        total = big_lambda_brute(F, p, q)
        assert sum(lambda_region(F, p, q, StrataFilter(k=k)) for k in range(1, 4)) == total
        for k in range(1, 4):
            parts = sum(
                lambda_region(F, p, q, StrataFilter(k=k, small=small))
                for small in combinations(range(3), 3 - k)
            )
            assert parts == lambda_region(F, p, q, StrataFilter(k=k))

    @pytest.mark.parametrize("p,q", [(1, 6), (2, 10), (3, 12)])
    def test_all_large_cell(self, p, q):
        F = self.F3
        expect = binom(q - 2 * p - 1, 2) * colength(ideal_power(family_sum(F), p))
        assert lambda_region(F, p, q, StrataFilter(k=3)) == expect

    def test_cell_double_sum(self, nonnested):
        # k = 1 with small block {2}: sum over n_2 <= p of binom(q - 1 - n_2, 0) * colength(a)
        A, B = nonnested.ideals
        p, q = 1, 4
        expect = sum(
            binom(q - 1 - n2, 0) * colength(ideal_product(ideal_power(A, p - n2), ideal_power(ideal_sum(A, B), n2)))
            for n2 in range(p + 1)
        )
        assert lambda_region(nonnested, p, q, StrataFilter(1, (1,), False)) == expect

    def test_region_error(self, nonnested):
        with pytest.raises(RegionError):
            lambda_region(nonnested, 2, 5)


class TestTable:
    def test_memo_and_both(self, nonnested):
        t = LambdaTable(nonnested)
        v = t.get(1, 4, "both")
        assert t.methods[(1, 4)] == {"brute", "fast"}
        assert t(1, 4) == v
        assert t.get(0, 1) == big_lambda_brute(nonnested, 0, 1)
        assert t.methods[(0, 1)] == {"brute"}

    def test_mismatch_detected(self, nonnested, monkeypatch):
        t = LambdaTable(nonnested)
        t.get(1, 4, "brute")
        monkeypatch.setattr(brfunction, "big_lambda_fast", lambda F, p, q: -1)
        with pytest.raises(EvaluatorMismatch):
            t.get(1, 4, "fast")


def test_fast_path_fiber_totals():
    """The stratified sum visits each point of H exactly once."""
    for r in range(1, 4):
        for p in range(4):
            for q in range((p + 1) * r, (p + 1) * r + 6):
                total = 0
                for k in range(1, r + 1):
                    for small in combinations(range(r), r - k):
                        for ns in product(range(p + 1), repeat=r - k):
                            total += count_fiber(p, q, k, sum(ns), r)
                assert total == binom(p + q + r - 1, r - 1)
