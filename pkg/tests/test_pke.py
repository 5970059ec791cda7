import hashlib
import math

import galois
import numpy as np
import pytest

from codecrypt_lab import reference_data as ref
from codecrypt_lab.algebra import CyclicRing, FieldSpec, Permutation, from_strings, random_vector_of_weight, weight
from codecrypt_lab.errors import DecodeFailure, InvalidBlockSize, ParameterError, WeightTooHigh
from codecrypt_lab.families import (
    GabidulinParams,
    MdpcParams,
    goppa_family,
    hamming_family,
    random_gabidulin_params,
    random_goppa_params,
    random_rank_error,
    repetition_family,
)
from codecrypt_lab.pke import (
    CmceParams,
    QcCiphertext,
    alekhnovich1_decrypt_bit,
    alekhnovich1_decrypt_repeated,
    alekhnovich1_encrypt_bit,
    alekhnovich1_encrypt_repeated,
    alekhnovich1_keygen,
    bike_decapsulate,
    bike_encapsulate,
    bike_encrypt,
    bike_keygen,
    check_bike_r,
    classic_mceliece_toy,
    cmce_decapsulate,
    cmce_decrypt,
    cmce_encapsulate,
    cmce_public_T,
    decode_constant_weight,
    encode_constant_weight,
    gpt_decrypt,
    gpt_encrypt,
    gpt_keygen,
    mceliece_decrypt,
    mceliece_encrypt,
    mceliece_keygen,
    mceliece_keypair,
    niederreiter_decrypt,
    niederreiter_encrypt,
    niederreiter_from_mceliece,
    niederreiter_keygen,
    niederreiter_keypair,
    qc_decrypt,
    qc_encrypt,
    qc_keygen,
    qc_keypair,
    qc_noise,
    random_constant_weight,
)
from codecrypt_lab.storage import pack_bits

GF2 = galois.GF(2)


def vec(text):
    return from_strings(GF2, [text])[0]


def perm(rows):
    return Permutation.from_matrix(np.asarray(from_strings(GF2, rows)))


# ---------------------------------------------------------------------------
# McEliece and Niederreiter
# ---------------------------------------------------------------------------

def test_hamming_mceliece_toy():
    inp, exp = ref.HAMMING_MCELIECE.inputs, ref.HAMMING_MCELIECE.expected
    key = mceliece_keypair(hamming_family(3), from_strings(GF2, inp["S"]), perm(inp["P"]))
    assert np.array_equal(key.G_pub, from_strings(GF2, exp["G_pub"]))
    c = mceliece_encrypt(key.G_pub, 1, vec(inp["m"]), e=vec(inp["e"]))
    assert np.array_equal(c, vec(exp["c"]))
    assert np.array_equal(mceliece_decrypt(key, c), vec(exp["m"]))


def test_mceliece_rejects_heavy_error():
    key = mceliece_keygen(hamming_family(3), 1)
    with pytest.raises(WeightTooHigh):
        mceliece_encrypt(key.G_pub, 1, vec("1011"), e=vec("1100000"))


def test_mceliece_goppa_roundtrip(rng):
    family = goppa_family(random_goppa_params(FieldSpec(2, 5), 24, 3, rng))
    key = mceliece_keygen(family, rng)
    m = GF2.Random(family.code.k, seed=rng)
    c = mceliece_encrypt(key.G_pub, key.t, m, seed=rng)
    assert weight(c - m @ key.G_pub) == key.t
    assert np.array_equal(mceliece_decrypt(key, c), m)


def test_niederreiter_toy():
    inp, exp = ref.NIEDERREITER.inputs, ref.NIEDERREITER.expected
    key = niederreiter_keypair(hamming_family(3), from_strings(GF2, inp["S"]), perm(inp["P"]))
    assert np.array_equal(key.H_pub, from_strings(GF2, exp["H_pub"]))
    c = niederreiter_encrypt(key.H_pub, 1, vec(inp["m"]))
    assert np.array_equal(c, vec(exp["c"]))
    assert np.array_equal(niederreiter_decrypt(key, c), vec(exp["m"]))


def test_niederreiter_grs(rng):
    from codecrypt_lab.families import grs_family, random_grs_params

    family = grs_family(random_grs_params(FieldSpec(13), 12, 4, rng))
    key = niederreiter_keygen(family, rng)
    e = random_vector_of_weight(family.code.gf, 12, family.t, rng)
    assert np.array_equal(niederreiter_decrypt(key, niederreiter_encrypt(key.H_pub, key.t, e)), e)


def test_niederreiter_from_mceliece(rng):
    mc = mceliece_keygen(hamming_family(3), rng)
    nd = niederreiter_from_mceliece(mc, rng)
    assert not np.count_nonzero(mc.G_pub @ nd.H_pub.T)


def test_constant_weight_encoding_is_a_bijection():
    words = {tuple(encode_constant_weight(i, 7, 3)) for i in range(35)}
    assert len(words) == 35
    assert all(sum(w) == 3 for w in words)
    assert decode_constant_weight(encode_constant_weight(17, 7, 3)) == 17
    with pytest.raises(ParameterError):
        encode_constant_weight(35, 7, 3)


def test_random_constant_weight_draws_an_index():
    for seed in range(5):
        index = int(np.random.default_rng(seed).integers(math.comb(20, 4)))
        assert np.array_equal(random_constant_weight(20, 4, seed), encode_constant_weight(index, 20, 4))
    # C(200, 100) is far past int64
    wide = random_constant_weight(200, 100, 9)
    assert wide.sum() == 100
    assert np.array_equal(wide, random_constant_weight(200, 100, 9))
    with pytest.raises(ParameterError):
        random_constant_weight(3, 4, 0)


# ---------------------------------------------------------------------------
# Alekhnovich
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def alekhnovich():
    return alekhnovich1_keygen(32, 16, 4, 5)


def test_alekhnovich_public_key(alekhnovich):
    assert not np.count_nonzero(alekhnovich.G @ alekhnovich.e)
    assert weight(alekhnovich.e) == 4


def test_alekhnovich_zero_with_orthogonal_error(alekhnovich, rng):
    support = set(np.flatnonzero(np.asarray(alekhnovich.e)).tolist())
    free = [j for j in range(32) if j not in support]
    for _ in range(20):
        e_prime = GF2.Zeros(32)
        e_prime[rng.choice(free, size=4, replace=False)] = 1
        c = alekhnovich1_encrypt_bit(alekhnovich.G, 4, 0, rng, e_prime=e_prime)
        assert alekhnovich1_decrypt_bit(alekhnovich, c) == 0


def test_alekhnovich_one_is_a_coin(alekhnovich):
    ones = sum(
        alekhnovich1_decrypt_bit(alekhnovich, alekhnovich1_encrypt_bit(alekhnovich.G, 4, 1, seed))
        for seed in range(400)
    )
    assert 140 < ones < 260


def test_alekhnovich_repetition():
    # with t = 2 an encryption of 0 decrypts to 1 with probability about 1/8
    key = alekhnovich1_keygen(32, 16, 2, 9)
    for bit in (0, 1):
        C = alekhnovich1_encrypt_repeated(key.G, 2, bit, 200, 17 + bit)
        assert alekhnovich1_decrypt_repeated(key, C) == bit


def test_alekhnovich_parameters():
    with pytest.raises(ParameterError):
        alekhnovich1_keygen(16, 8, 4, 0)


# ---------------------------------------------------------------------------
# Quasi-cyclic
# ---------------------------------------------------------------------------

def test_qc_toy():
    inp, exp = ref.QC_REPETITION.inputs, ref.QC_REPETITION.expected
    ring = CyclicRing(7)
    key = qc_keypair(
        repetition_family(7), ring.monomials(inp["h"]), ring.monomials(inp["y"]), ring.monomials(inp["z"]), 1, 1
    )
    assert np.array_equal(key.s, vec(exp["s"]))
    c = qc_encrypt(
        key, vec(inp["m"]), e=ring.monomials(inp["e"]), r1=ring.monomials(inp["r1"]), r2=ring.monomials(inp["r2"])
    )
    assert np.array_equal(c.u, vec(exp["u"]))
    assert np.array_equal(c.v, vec(exp["v"]))
    assert np.array_equal(qc_decrypt(key, c), vec(exp["m"]))


def test_qc_noise_identity(rng):
    family = repetition_family(31)
    key = qc_keygen(family, 3, 3, 3, rng)
    ring = key.ring
    for _ in range(10):
        m = GF2.Random(1, seed=rng)
        e, r1, r2 = (ring.random_of_weight(3, rng) for _ in range(3))
        c = qc_encrypt(key, m, e=e, r1=r1, r2=r2)
        lhs = c.v - ring.mul(c.u, key.z)
        assert np.array_equal(lhs, m @ family.code.generator + qc_noise(key, e, r1, r2))


def test_qc_decrypts(rng):
    key = qc_keygen(repetition_family(31), 2, 2, 2, rng)
    for bit in (0, 1):
        c = qc_encrypt(key, GF2([bit]), rng)
        assert qc_decrypt(key, QcCiphertext(c.u, c.v)).tolist() == [bit]


# ---------------------------------------------------------------------------
# GPT
# ---------------------------------------------------------------------------

def test_gpt_roundtrip(rng):
    params = random_gabidulin_params(FieldSpec(2, 5), 4, 2, rng)
    key = gpt_keygen(params, 1, rng)
    gf = key.G_pub.__class__
    assert key.G_pub.shape == (2, 5)
    m = gf.Random(2, seed=rng)
    e = random_rank_error(gf, 5, 1, rng)
    assert np.array_equal(gpt_decrypt(key, gpt_encrypt(key.G_pub, key.t, m, e)), m)


def test_gpt_rejects_high_rank(rng, gf32):
    key = gpt_keygen(GabidulinParams(gf32([1, 2, 4, 8]), 2), 1, rng)
    with pytest.raises(WeightTooHigh):
        gpt_encrypt(key.G_pub, key.t, gf32([1, 1]), gf32([1, 2, 0, 0, 0]))


# ---------------------------------------------------------------------------
# BIKE and Classic McEliece toys
# ---------------------------------------------------------------------------

def test_bike_block_size():
    assert check_bike_r(13)
    assert not check_bike_r(7)
    with pytest.raises(InvalidBlockSize):
        bike_keygen(MdpcParams(7, 6), 1, 0)


def test_bike_odd_half_weight():
    with pytest.raises(ParameterError):
        bike_keygen(MdpcParams(13, 4), 1, 0)


def test_bike_kem(rng):
    key = bike_keygen(MdpcParams(13, 6), 1, rng)
    for _ in range(10):
        c, shared = bike_encapsulate(key.h, key.t, rng)
        assert bike_decapsulate(key, c) == shared


def test_kem_errors_come_from_a_seeded_index():
    key = bike_keygen(MdpcParams(13, 6), 1, 5)
    n = 2 * 13
    for seed in range(5):
        index = int(np.random.default_rng(seed).integers(math.comb(n, key.t)))
        e = GF2(encode_constant_weight(index, n, key.t))
        c, shared = bike_encapsulate(key.h, key.t, seed)
        assert np.array_equal(c, bike_encrypt(key.h, key.t, e))
        assert shared == hashlib.sha256(pack_bits(e)).digest()

    cmce = classic_mceliece_toy(CmceParams(5, 32, 2), 3)
    for seed in range(5):
        index = int(np.random.default_rng(seed).integers(math.comb(32, cmce.t)))
        c0, _ = cmce_encapsulate(cmce.H_pub, cmce.t, seed)
        e = GF2(encode_constant_weight(index, 32, cmce.t))
        assert np.array_equal(c0, niederreiter_encrypt(cmce.H_pub, cmce.t, e))
        assert decode_constant_weight(cmce_decrypt(cmce, c0)) == index


def test_cmce_params():
    with pytest.raises(ParameterError):
        CmceParams(5, 10, 2)
    with pytest.raises(ParameterError):
        CmceParams(4, 32, 2)


def test_cmce_kem(rng):
    key = classic_mceliece_toy(CmceParams(5, 32, 2), rng)
    r = key.H_pub.shape[0]
    assert np.array_equal(key.H_pub[:, :r], GF2.Identity(r))
    assert cmce_public_T(key).shape == (r, 32 - r)
    for _ in range(5):
        c0, shared = cmce_encapsulate(key.H_pub, key.t, rng)
        assert cmce_decapsulate(key, c0) == shared


def test_cmce_decrypt_failure_is_reported(rng):
    key = classic_mceliece_toy(CmceParams(5, 32, 2), rng)
    failures = 0
    for _ in range(20):
        try:
            cmce_decapsulate(key, GF2.Random(key.H_pub.shape[0], seed=rng))
        except DecodeFailure:
            failures += 1
    assert failures > 0
