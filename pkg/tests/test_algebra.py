import galois
import numpy as np
import pytest
from scipy.stats import chisquare

from codecrypt_lab.algebra import (
    CyclicRing,
    FieldSpec,
    Permutation,
    element_str,
    field_arith,
    from_strings,
    is_information_set,
    kernel,
    random_full_rank,
    random_vector_of_weight,
    rank,
    rref,
    solve_linear,
    solve_right,
    systematic_form,
    weight,
)
from codecrypt_lab.errors import (
    BadSetSize,
    InverseOfZero,
    MixedFields,
    NoSolution,
    NotInformationSet,
    ParameterError,
)

PRANGE_H = (
    "3214304434",
    "2340123242",
    "3031402200",
    "2302314430",
    "0230203424",
    "2340220012",
)


class TestFieldSpec:
    def test_prime_field(self):
        spec = FieldSpec(5)
        assert spec.q == 5
        assert spec.modulus is None
        assert str(spec) == "GF(5)"

    def test_extension_keeps_modulus(self, gf32):
        spec = FieldSpec.of(gf32)
        assert spec == FieldSpec(2, 5, (1, 0, 1, 0, 0, 1))
        assert spec.gf is gf32

    def test_default_modulus_is_filled_in(self):
        spec = FieldSpec(2, 4)
        assert len(spec.modulus) == 5
        assert spec.modulus[-1] == 1

    def test_rejects_composite_characteristic(self):
        with pytest.raises(ParameterError):
            FieldSpec(6)

    def test_rejects_reducible_modulus(self):
        # x^2 + 1 = (x + 1)^2 over GF(2)
        with pytest.raises(ParameterError):
            FieldSpec(2, 2, (1, 0, 1))


class TestElements:
    def test_inverse_of_zero(self):
        gf = galois.GF(7)
        with pytest.raises(InverseOfZero):
            field_arith(gf(0), None, "inv")

    def test_inverse(self):
        gf = galois.GF(7)
        assert field_arith(gf(3), None, "inv") == gf(5)

    def test_mixed_fields(self):
        with pytest.raises(MixedFields):
            field_arith(galois.GF(5)(1), galois.GF(7)(1), "add")

    def test_element_str(self, gf32):
        assert element_str(gf32(5)) == "x^2+1"
        assert element_str(gf32(0)) == "0"
        assert element_str(gf32(3)) == "x+1"


class TestPermutation:
    def test_acts_on_the_right(self, gf2):
        P = Permutation((2, 0, 1))
        x = galois.GF(7)([4, 5, 6])
        assert P.apply(x).tolist() == [6, 4, 5]
        assert (x @ P.as_matrix(galois.GF(7))).tolist() == [6, 4, 5]

    def test_inverse_and_composition(self, rng):
        from codecrypt_lab.algebra import random_permutation

        P = random_permutation(9, rng)
        assert P.then(P.inverse()) == Permutation.identity(9)
        Q = random_permutation(9, rng)
        x = np.arange(9)
        assert np.array_equal(Q.apply(P.apply(x)), P.then(Q).apply(x))

    def test_from_matrix(self, gf2):
        P = Permutation((1, 3, 0, 2))
        assert Permutation.from_matrix(np.asarray(P.as_matrix(gf2))) == P

    def test_rejects_non_bijection(self):
        with pytest.raises(ParameterError):
            Permutation((0, 0, 1))


class TestLinearAlgebra:
    def test_rref_transform(self, rng):
        gf = galois.GF(5)
        M = gf.Random((4, 7), seed=rng)
        R, U, pivots = rref(M)
        assert np.array_equal(U @ M, R)
        assert len(pivots) == rank(M)

    def test_kernel(self, rng):
        gf = galois.GF(3)
        M = random_full_rank(gf, (3, 8), rng)
        K = kernel(M)
        assert K.shape == (5, 8)
        assert not np.count_nonzero(M @ K.T)
        assert rank(K) == 5

    def test_solve_linear(self, rng):
        gf = galois.GF(7)
        A = random_full_rank(gf, (4, 6), rng)
        x = gf.Random(4, seed=rng)
        assert np.array_equal(solve_linear(A, x @ A) @ A, x @ A)

    def test_solve_right_inconsistent(self, gf2):
        M = gf2([[1, 1], [1, 1]])
        with pytest.raises(NoSolution):
            solve_right(M, gf2([1, 0]))

    def test_random_vector_of_weight(self, rng):
        gf = galois.GF(5)
        for w in (0, 3, 10):
            assert weight(random_vector_of_weight(gf, 10, w, rng)) == w

    @pytest.mark.slow
    def test_support_and_values_are_uniform(self):
        gf = galois.GF(5)
        positions = np.zeros(10, dtype=int)
        values = np.zeros(4, dtype=int)
        for trial in range(2000):
            x = np.asarray(random_vector_of_weight(gf, 10, 3, trial))
            positions += x != 0
            values += np.bincount(x[x != 0], minlength=5)[1:]
        assert chisquare(positions).pvalue > 0.001
        assert chisquare(values).pvalue > 0.001


class TestInformationSets:
    def test_prange_example_sets(self):
        H = from_strings(galois.GF(5), PRANGE_H)
        assert not is_information_set(H, (0, 1, 2, 3))
        assert is_information_set(H, (6, 7, 8, 9))

    def test_systematic_form(self):
        H = from_strings(galois.GF(5), PRANGE_H)
        U, P = systematic_form(H, (6, 7, 8, 9))
        UHP = P.apply(U @ H)
        assert np.array_equal(UHP[:, 4:], galois.GF(5).Identity(6))

    def test_singular_complement(self):
        H = from_strings(galois.GF(5), PRANGE_H)
        with pytest.raises(NotInformationSet):
            systematic_form(H, (0, 1, 2, 3))

    def test_wrong_size(self):
        H = from_strings(galois.GF(5), PRANGE_H)
        with pytest.raises(BadSetSize):
            is_information_set(H, (0, 1, 2))


class TestCyclicRing:
    def test_monomials_wrap(self):
        ring = CyclicRing(7)
        x = ring.monomials([1])
        assert np.array_equal(ring.mul(x, ring.monomials([6])), ring.one())

    def test_circulant_is_multiplication(self, rng):
        ring = CyclicRing(7)
        a, b = ring.gf.Random(7, seed=rng), ring.gf.Random(7, seed=rng)
        assert np.array_equal(b @ ring.circulant(a), ring.mul(b, a))

    def test_inverse(self):
        ring = CyclicRing(7)
        a = ring.monomials([0, 1, 2])
        assert np.array_equal(ring.mul(a, ring.inv(a)), ring.one())

    def test_non_unit(self):
        ring = CyclicRing(7)
        # 1 + x divides x^7 - 1
        with pytest.raises(InverseOfZero):
            ring.inv(ring.monomials([0, 1]))

    def test_shift(self):
        ring = CyclicRing(5)
        assert ring.shift(ring.monomials([4]), 2).tolist() == [0, 1, 0, 0, 0]
