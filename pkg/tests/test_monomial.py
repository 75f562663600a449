import pytest
from conftest import I, primary_gens, primary_ideals
from hypothesis import given
from hypothesis import strategies as st
from oracles import naive_colength, naive_minimal, naive_power, naive_product

from brmult import _pykernels, kernels
from brmult.monomial import (
    DimensionError,
    IdealFamily,
    NotPrimaryError,
    colength_box,
    colength_incl_excl,
    contains,
    ideal_equals,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_m_primary,
    is_subideal,
    maximal_ideal,
    minimalize,
    monomial_power_product,
    unit_ideal,
)


def gens(*g):
    return tuple(sorted(g))


class TestMinimalize:
    def test_drops_multiples(self):
        assert minimalize([(2, 0), (3, 0), (0, 1)], 2).gens == gens((2, 0), (0, 1))

    def test_antichain_kept(self):
        assert minimalize([(1, 0), (0, 1)], 2).gens == gens((1, 0), (0, 1))

    def test_mixed(self):
        assert minimalize([(2, 1), (1, 2), (2, 2)], 2).gens == gens((2, 1), (1, 2))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            minimalize([], 2)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            minimalize([(1, 0), (1,)], 2)

    @given(primary_gens(), st.randoms())
    def test_idempotent_and_order_free(self, dg, rnd):
        d, g = dg
        first = minimalize(g, d)
        shuffled = list(g)
        rnd.shuffle(shuffled)
        assert minimalize(shuffled, d) == first
        assert minimalize(first.gens, d) == first
        assert list(first.gens) == naive_minimal(g)


class TestMembership:
    def test_examples(self):
        J = I((2, 0), (0, 1))
        assert contains(J, (1, 1))
        assert not contains(J, (1, 0))
        assert contains(J, (2, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            contains(I((1, 0), (0, 1)), (1, 1, 1))

    @given(primary_ideals(), st.data())
    def test_monotone(self, J, data):
        m = data.draw(st.tuples(*[st.integers(0, 6)] * J.dim))
        if contains(J, m):
            for j in range(J.dim):
                assert contains(J, tuple(e + (i == j) for i, e in enumerate(m)))


class TestPrimary:
    def test_examples(self):
        assert is_m_primary(I((2, 0), (1, 1), (0, 3)))
        assert not is_m_primary(I((1, 0), (1, 1)))
        assert is_m_primary(maximal_ideal(2))

    def test_family_rejects_non_primary(self):
        with pytest.raises(NotPrimaryError):
            IdealFamily((I((1, 1)),))

    def test_family_requires_same_dimension(self):
        with pytest.raises(DimensionError):
            IdealFamily((maximal_ideal(1), maximal_ideal(2)))


class TestArithmetic:
    def test_sum_examples(self):
        assert ideal_sum(I((2, 0), (0, 1)), I((1, 0), (0, 2))) == maximal_ideal(2)
        J = I((2, 0), (1, 1), (0, 3))
        assert ideal_sum(J, J) == J
        assert ideal_sum(I((3, 0), (0, 1)), I((2, 0), (0, 3))) == I((2, 0), (0, 1))

    def test_product_examples(self, m2):
        assert ideal_product(m2, m2).gens == gens((2, 0), (1, 1), (0, 2))
        J = I((2, 0), (0, 1))
        assert ideal_product(J, unit_ideal(2)) == J
        # pairwise products x^3, x^2y^2, xy, y^3; xy divides x^2y^2
        assert ideal_product(J, I((1, 0), (0, 2))).gens == gens((3, 0), (1, 1), (0, 3))

    def test_power_examples(self, m2):
        assert ideal_power(m2, 3).gens == gens((3, 0), (2, 1), (1, 2), (0, 3))
        assert ideal_power(I((2, 0), (0, 1)), 0) == unit_ideal(2)
        assert ideal_power(I((2, 0), (0, 1)), 2).gens == gens((4, 0), (2, 1), (0, 2))

    def test_power_product(self):
        x = maximal_ideal(1)
        assert monomial_power_product(IdealFamily((x, x)), (1, 1)).gens == ((2,),)
        F = IdealFamily((I((2, 0), (0, 1)), I((1, 0), (0, 2))))
        assert monomial_power_product(F, (0, 0)) == unit_ideal(2)
        assert monomial_power_product(F, (1, 1)).gens == gens((3, 0), (1, 1), (0, 3))
        with pytest.raises(ValueError):
            monomial_power_product(F, (1,))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            ideal_sum(maximal_ideal(1), maximal_ideal(2))
        with pytest.raises(DimensionError):
            ideal_product(maximal_ideal(1), maximal_ideal(2))

    def test_equals(self, m2):
        assert ideal_equals(m2, minimalize([(1, 0), (0, 1), (1, 1)], 2))
        assert not ideal_equals(I((2, 0), (0, 1)), I((1, 0), (0, 2)))

    @given(primary_ideals(d=2), primary_ideals(d=2))
    def test_commutative(self, A, B):
        assert ideal_equals(ideal_sum(A, B), ideal_sum(B, A))
        assert ideal_equals(ideal_product(A, B), ideal_product(B, A))
        assert list(ideal_product(A, B).gens) == naive_product(A.gens, B.gens)

    @given(primary_ideals(max_exp=3), st.integers(0, 4), st.integers(0, 4))
    def test_power_additive(self, A, a, b):
        assert ideal_power(A, a + b) == ideal_product(ideal_power(A, a), ideal_power(A, b))

    @given(primary_ideals(max_exp=3), st.integers(0, 4))
    def test_power_matches_repeated_product(self, A, a):
        assert list(ideal_power(A, a).gens) == naive_power(A.gens, a, A.dim)


class TestColength:
    def test_staircase(self):
        # standard monomials 1, x, y, y^2
        assert colength_box(I((2, 0), (1, 1), (0, 3))) == 4
        assert colength_incl_excl(I((2, 0), (1, 1), (0, 3))) == 4

    def test_maximal_powers(self, m2):
        for t in range(1, 7):
            assert colength_box(ideal_power(m2, t)) == t * (t + 1) // 2
        assert colength_incl_excl(m2) == 1

    def test_one_variable(self):
        for p in range(1, 6):
            assert colength_box(minimalize([(p,)], 1)) == p

    def test_two_generator(self):
        assert colength_box(I((2, 0), (0, 1))) == 2
        assert colength_incl_excl(I((2, 0), (0, 1))) == 2

    def test_unit_ideal(self):
        assert colength_box(unit_ideal(3)) == 0
        assert colength_incl_excl(unit_ideal(3)) == 0

    def test_not_primary(self):
        with pytest.raises(NotPrimaryError):
            colength_box(I((1, 0), (1, 1)))
        with pytest.raises(NotPrimaryError):
            colength_incl_excl(I((1, 0), (1, 1)))

    def test_incl_excl_generator_cap(self, m2):
        with pytest.raises(ValueError):
            colength_incl_excl(ideal_power(m2, 21))

    @given(primary_ideals())
    def test_two_algorithms_and_naive_scan(self, A):
        box = colength_box(A)
        assert box == colength_incl_excl(A)
        assert box == naive_colength(A.gens, A.dim)

    @given(primary_ideals(d=2), primary_ideals(d=2))
    def test_containment_reverses_colength(self, A, B):
        small = ideal_product(A, B)
        assert is_subideal(small, A)
        assert colength_box(small) >= colength_box(A)
        big = ideal_sum(A, B)
        assert is_subideal(A, big)
        assert colength_box(A) >= colength_box(big)


class TestKernelParity:
    """Compiled and pure-Python kernels must agree wherever both exist."""

    @given(primary_gens(max_exp=7))
    def test_minimal(self, dg):
        _, g = dg
        assert kernels.minimal_generators(g) == _pykernels.minimal_generators(g)

    @given(primary_ideals(max_exp=7))
    def test_count(self, A):
        bounds = A.pure_powers()
        assert kernels.count_standard(A.gens, bounds) == _pykernels.count_standard(A.gens, bounds)

    @given(primary_ideals(), primary_ideals())
    def test_pairwise(self, A, B):
        if A.dim == B.dim:
            assert kernels.pairwise_sums(A.gens, B.gens) == _pykernels.pairwise_sums(A.gens, B.gens)

    def test_huge_exponents_fall_back(self):
        big = 1 << 70
        g = [(big, 0), (0, 1), (big + 1, 0)]
        assert kernels.minimal_generators(g) == [(0, 1), (big, 0)]
        assert kernels.pairwise_sums([(big, 0)], [(big, 1)]) == [(2 * big, 1)]
