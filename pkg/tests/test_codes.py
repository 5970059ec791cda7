import dataclasses

import galois
import numpy as np
import pytest

from codecrypt_lab.algebra import FieldSpec, random_full_rank
from codecrypt_lab.codes import (
    LinearCode,
    concat_code,
    concat_encode,
    contains,
    dual,
    encode,
    min_distance_bruteforce,
    nearest_codeword_bruteforce,
    puncture,
    same_code,
    shorten,
    square_code,
    syndrome,
    weight_distribution,
)
from codecrypt_lab.errors import DimMismatch, EmptyCode, FieldMismatch, TooLarge
from codecrypt_lab.families import hamming_code, random_grs_params, grs_code


@pytest.fixture
def hamming():
    return hamming_code(3)


def test_generator_and_parity_check_agree(hamming):
    assert not np.count_nonzero(hamming.generator @ hamming.parity_check.T)
    derived = LinearCode.from_parity_check(hamming.parity_check)
    assert derived.k == 4
    assert same_code(derived, hamming)


def test_presentations_are_fixed_at_construction(gf2):
    code = LinearCode.from_parity_check(gf2([[1, 1, 0], [0, 1, 1]]))
    assert code.generator.tolist() == [[1, 1, 1]]
    assert code.generator is code.generator
    with pytest.raises(dataclasses.FrozenInstanceError):
        code.parity_check = code.generator
    # a given presentation is kept as passed
    assert hamming_code(3).parity_check.tolist()[0] == [1, 1, 0, 1, 1, 0, 0]


def test_redundant_generator_is_reduced(gf2):
    G = gf2([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    code = LinearCode.from_generator(G)
    assert code.k == 2


def test_zero_code(gf2):
    with pytest.raises(EmptyCode):
        LinearCode.from_generator(gf2.Zeros((2, 4)))


def test_hamming_weights(hamming):
    assert min_distance_bruteforce(hamming) == 3
    assert weight_distribution(hamming) == [1, 0, 0, 7, 7, 0, 0, 1]


def test_encode_and_syndrome(hamming, gf2):
    c = encode(hamming, gf2([1, 0, 1, 1]))
    assert contains(hamming, c)
    c[2] += gf2(1)
    assert not contains(hamming, c)
    assert np.array_equal(syndrome(hamming, c), hamming.parity_check[:, 2])


def test_encode_wrong_length(hamming, gf2):
    with pytest.raises(DimMismatch):
        encode(hamming, gf2([1, 0, 1]))


def test_dual(hamming):
    D = dual(hamming)
    assert D.k == 3
    assert not np.count_nonzero(D.generator @ hamming.generator.T)
    assert same_code(dual(D), hamming)


def test_puncture_and_shorten(hamming):
    P = puncture(hamming, [6])
    assert (P.n, P.k) == (6, 4)
    S = shorten(hamming, [6])
    assert (S.n, S.k) == (6, 3)
    assert min_distance_bruteforce(S) >= 3


def test_nearest_codeword(hamming, gf2):
    c = encode(hamming, gf2([0, 1, 1, 0]))
    y = c.copy()
    y[4] += gf2(1)
    best, d = nearest_codeword_bruteforce(hamming, y)
    assert d == 1
    assert np.array_equal(best, c)


def test_budget(rng):
    gf = galois.GF(2)
    code = LinearCode.from_generator(random_full_rank(gf, (12, 20), rng))
    with pytest.raises(TooLarge):
        min_distance_bruteforce(code, budget=2**10)


@pytest.mark.parametrize("seed", range(5))
def test_square_of_grs(seed):
    code = grs_code(random_grs_params(FieldSpec(13), 12, 4, seed))
    assert square_code(code).k == 7


def test_square_field_mismatch():
    a = LinearCode(galois.GF(5).Ones((1, 4)))
    b = LinearCode(galois.GF(7).Ones((1, 4)))
    from codecrypt_lab.codes import schur_product

    with pytest.raises(FieldMismatch):
        schur_product(a, b)


def test_concatenation():
    gf4 = galois.GF(4)
    gf2 = galois.GF(2)
    outer = LinearCode(gf4.Ones((1, 3)))
    inner = LinearCode(gf2([[1, 0, 1], [0, 1, 1]]))
    code = concat_code(outer, inner)
    assert (code.n, code.k) == (9, 2)
    assert min_distance_bruteforce(code) >= 6
    word = concat_encode(outer, inner, gf4([3]))
    assert contains(code, word)
