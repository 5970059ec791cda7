import galois
import pytest

from codecrypt_lab.algebra import FieldSpec, random_full_rank, rank
from codecrypt_lab.distinguish import (
    INCONCLUSIVE,
    RANDOM,
    STRUCTURED,
    frobenius_distinguisher,
    frobenius_stack,
    square_distinguisher,
)
from codecrypt_lab.errors import ParameterError
from codecrypt_lab.families import gabidulin_family, grs_generator, random_gabidulin_params, random_grs_params

TRIALS = 50


def test_square_separates_grs_from_random():
    spec = FieldSpec(13)
    correct = 0
    for seed in range(TRIALS):
        if seed % 2:
            G = random_full_rank(spec.gf, (4, 12), seed)
            expected = RANDOM
        else:
            G = grs_generator(random_grs_params(spec, 12, 4, seed))
            expected = STRUCTURED
        verdict = square_distinguisher(G)
        assert (verdict.structured_expectation, verdict.random_expectation) == (7, 10)
        correct += verdict.verdict == expected
    assert correct >= 49


def test_frobenius_separates_gabidulin_from_random():
    spec = FieldSpec(2, 6)
    correct = 0
    for seed in range(TRIALS):
        if seed % 2:
            G = random_full_rank(spec.gf, (2, 6), seed)
            expected = RANDOM
        else:
            G = gabidulin_family(random_gabidulin_params(spec, 6, 2, seed)).code.generator
            expected = STRUCTURED
        verdict = frobenius_distinguisher(G, 2)
        assert (verdict.structured_expectation, verdict.random_expectation) == (4, 6)
        correct += verdict.verdict == expected
    assert correct >= 49


def test_gabidulin_stack_rank_is_exact():
    spec = FieldSpec(2, 6)
    G = gabidulin_family(random_gabidulin_params(spec, 6, 2, 3)).code.generator
    for ell in range(5):
        assert rank(frobenius_stack(G, ell)) == min(2 + ell, 6)


def test_inconclusive_when_expectations_coincide():
    gf = galois.GF(13)
    # k = 2: 2k - 1 = 3 = k(k+1)/2
    verdict = square_distinguisher(random_full_rank(gf, (2, 8), 0))
    assert verdict.verdict == INCONCLUSIVE
    # ell too large for the code length
    G = random_full_rank(FieldSpec(2, 6).gf, (2, 6), 1)
    assert frobenius_distinguisher(G, 4).verdict == INCONCLUSIVE


def test_verdict_json():
    G = grs_generator(random_grs_params(FieldSpec(13), 12, 4, 0))
    data = square_distinguisher(G).to_json()
    assert data == {
        "test": "square",
        "measured": 7,
        "random_expectation": 10,
        "structured_expectation": 7,
        "verdict": STRUCTURED,
    }


def test_negative_ell():
    with pytest.raises(ParameterError):
        frobenius_stack(galois.GF(4).Ones((1, 3)), -1)
