"""
Code-based public-key encryption.

The McEliece, Niederreiter, Alekhnovich (first scheme), quasi-cyclic
(HQC-style) and GPT frameworks, plus toy versions of BIKE and Classic
McEliece. Every keygen/encrypt takes an explicit seed (or the explicit
randomness), so the worked examples replay bit for bit.

Decryption failures surface as DecodeFailure; for the QC and BIKE schemes
they are legitimate decoding-failure events, not bugs.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass
from typing import Any

import galois
import numpy as np

from codecrypt_lab.algebra import (
    BINARY,
    CyclicRing,
    FieldArray,
    FieldSpec,
    Permutation,
    kernel,
    rank,
    random_invertible,
    random_permutation,
    random_vector_of_weight,
    rng_from,
    solve_linear,
    weight,
)
from codecrypt_lab.errors import (
    DecodeFailure,
    InvalidBlockSize,
    NoSolution,
    ParameterError,
    SystematicFormFailure,
    WeightTooHigh,
)
from codecrypt_lab.families import (
    DecodableCode,
    GabidulinParams,
    GoppaParams,
    MdpcParams,
    bitflip_decode,
    circulant_parity_check,
    gabidulin_family,
    goppa_family,
    message_of,
    random_goppa_params,
    random_mdpc_blocks,
    rank_weight,
)
from codecrypt_lab.storage import ints, pack_bits

logger = logging.getLogger(__name__)


def _check_weight(e: FieldArray, t: int, what: str = "error") -> None:
    if weight(e) > t:
        raise WeightTooHigh(f"{what} has weight {weight(e)} > t = {t}")


# ---------------------------------------------------------------------------
# Constant-weight encoding
# ---------------------------------------------------------------------------

def constant_weight_count(n: int, t: int) -> int:
    return math.comb(n, t)


def encode_constant_weight(index: int, n: int, t: int) -> np.ndarray:
    """The index-th binary word of length n and weight t (colex order)."""
    if not 0 <= index < math.comb(n, t):
        raise ParameterError(f"index {index} out of range for C({n},{t})")
    word = np.zeros(n, dtype=np.int64)
    rest = index
    for i in range(t, 0, -1):
        pos = i - 1
        while math.comb(pos + 1, i) <= rest:
            pos += 1
        word[pos] = 1
        rest -= math.comb(pos, i)
    return word


def random_constant_weight(n: int, t: int, seed) -> np.ndarray:
    """A uniform binary word of weight t: a seeded index in [0, C(n, t)) run
    through encode_constant_weight.

    Counts past the int64 range draw 64 surplus random bits and reduce.
    """
    count = constant_weight_count(n, t)
    if count == 0:
        raise ParameterError(f"no word of length {n} has weight {t}")
    rng = rng_from(seed)
    if count <= np.iinfo(np.int64).max:
        index = int(rng.integers(count))
    else:
        index = int.from_bytes(rng.bytes((count.bit_length() + 7) // 8 + 8), "big") % count
    return encode_constant_weight(index, n, t)


def decode_constant_weight(word: np.ndarray | FieldArray) -> int:
    """Inverse of encode_constant_weight."""
    positions = np.flatnonzero(np.asarray(word))
    return sum(math.comb(int(p), i + 1) for i, p in enumerate(positions))


# ---------------------------------------------------------------------------
# McEliece
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class McElieceKeyPair:
    """Public G' = S·G·P and t; the rest is secret."""

    G_pub: FieldArray
    t: int
    family: DecodableCode
    S: FieldArray
    P: Permutation

    def public_json(self) -> dict[str, Any]:
        return {"G": ints(self.G_pub), "t": self.t}

    def secret_json(self) -> dict[str, Any]:
        return {"code": self.family.params, "S": ints(self.S), "P": list(self.P.image)}


def mceliece_keypair(family: DecodableCode, S: FieldArray, P: Permutation) -> McElieceKeyPair:
    """Assemble a key from fixed secrets (used by the worked examples)."""
    G = family.code.generator
    if S.shape != (G.shape[0], G.shape[0]) or rank(S) != G.shape[0]:
        raise ParameterError("S must be an invertible k x k matrix")
    if P.n != G.shape[1]:
        raise ParameterError("permutation length differs from the code length")
    return McElieceKeyPair(P.apply(S @ G), family.t, family, S, P)


def mceliece_keygen(family: DecodableCode, seed) -> McElieceKeyPair:
    rng = rng_from(seed)
    k, n = family.code.k, family.code.n
    S = random_invertible(family.code.gf, k, rng)
    P = random_permutation(n, rng)
    return mceliece_keypair(family, S, P)


def mceliece_encrypt(
    G_pub: FieldArray, t: int, m: FieldArray, e: FieldArray | None = None, seed=None
) -> FieldArray:
    """c = m·G' + e, with a random weight-t e unless one is given."""
    gf = type(G_pub)
    if m.shape != (G_pub.shape[0],):
        raise ParameterError(f"message must have length {G_pub.shape[0]}")
    if e is None:
        e = random_vector_of_weight(gf, G_pub.shape[1], t, seed)
    _check_weight(e, t)
    return m @ G_pub + e


def mceliece_decrypt(key: McElieceKeyPair, c: FieldArray) -> FieldArray:
    """Decode c·P⁻¹ = m·S·G + e·P⁻¹, then undo S."""
    y = key.P.inverse().apply(c)
    codeword = key.family.decode(y)
    mS = message_of(key.family.code, codeword)
    return mS @ np.linalg.inv(key.S)


# ---------------------------------------------------------------------------
# Niederreiter
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NiederreiterKeyPair:
    """Public H' = S·H·P and t; H is the family's parity-check matrix."""

    H_pub: FieldArray
    t: int
    family: DecodableCode
    S: FieldArray
    P: Permutation

    def public_json(self) -> dict[str, Any]:
        return {"H": ints(self.H_pub), "t": self.t}

    def secret_json(self) -> dict[str, Any]:
        return {"code": self.family.params, "S": ints(self.S), "P": list(self.P.image)}


def niederreiter_keypair(family: DecodableCode, S: FieldArray, P: Permutation) -> NiederreiterKeyPair:
    H = family.code.parity_check
    r = H.shape[0]
    if S.shape != (r, r) or rank(S) != r:
        raise ParameterError("S must be an invertible (n-k) x (n-k) matrix")
    if P.n != H.shape[1]:
        raise ParameterError("permutation length differs from the code length")
    return NiederreiterKeyPair(P.apply(S @ H), family.t, family, S, P)


def niederreiter_keygen(family: DecodableCode, seed) -> NiederreiterKeyPair:
    rng = rng_from(seed)
    H = family.code.parity_check
    S = random_invertible(family.code.gf, H.shape[0], rng)
    P = random_permutation(H.shape[1], rng)
    return niederreiter_keypair(family, S, P)


def niederreiter_from_mceliece(key: McElieceKeyPair, seed) -> NiederreiterKeyPair:
    """The dual view of a McEliece key: same code and permutation, fresh S."""
    H = key.family.code.parity_check
    S = random_invertible(key.family.code.gf, H.shape[0], seed)
    return niederreiter_keypair(key.family, S, key.P)


def niederreiter_encrypt(H_pub: FieldArray, t: int, m: FieldArray) -> FieldArray:
    """c = m·H'ᵀ for a message of weight at most t."""
    if m.shape != (H_pub.shape[1],):
        raise ParameterError(f"message must have length {H_pub.shape[1]}")
    _check_weight(m, t, "message")
    return m @ H_pub.T


def syndrome_decode(family: DecodableCode, s: FieldArray) -> FieldArray:
    """The error of weight ≤ t with syndrome s under the family's H."""
    H = family.code.parity_check
    try:
        y = solve_linear(H.T, s)
    except NoSolution as exc:
        raise DecodeFailure("syndrome outside the column space of H") from exc
    e = y - family.decode(y)
    if weight(e) > family.t:
        raise DecodeFailure(f"decoded error has weight {weight(e)} > {family.t}")
    return e


def niederreiter_decrypt(key: NiederreiterKeyPair, c: FieldArray) -> FieldArray:
    """Unscramble with S, syndrome-decode, then undo P."""
    s = c @ np.linalg.inv(key.S).T
    e = syndrome_decode(key.family, s)
    return key.P.apply(e)


# ---------------------------------------------------------------------------
# Alekhnovich, first scheme
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlekhnovichKeyPair:
    """Public generator G of ker(A; x·A + e); secret error e."""

    G: FieldArray
    t: int
    e: FieldArray

    def public_json(self) -> dict[str, Any]:
        return {"G": ints(self.G), "t": self.t}

    def secret_json(self) -> dict[str, Any]:
        return {"e": ints(self.e)}


def alekhnovich1_keypair(A: FieldArray, x: FieldArray, e: FieldArray) -> AlekhnovichKeyPair:
    y = x @ A + e
    H = np.vstack([np.asarray(A), np.asarray(y)[None, :]])
    G = kernel(type(A)(H))
    return AlekhnovichKeyPair(G, weight(e), e)


def alekhnovich1_keygen(n: int, rows: int, t: int, seed) -> AlekhnovichKeyPair:
    """Random rows×n matrix A, random x, error of weight t (needs t² < n)."""
    if t * t >= n:
        raise ParameterError(f"t = {t} is too large for n = {n} (need t^2 < n)")
    if not 1 <= rows < n - 1:
        raise ParameterError("need 1 <= rows < n - 1")
    rng = rng_from(seed)
    gf = galois.GF(2)
    A = gf.Random((rows, n), seed=rng)
    x = gf.Random(rows, seed=rng)
    e = random_vector_of_weight(gf, n, t, rng)
    return alekhnovich1_keypair(A, x, e)


def alekhnovich1_encrypt_bit(
    G: FieldArray, t: int, bit: int, seed=None, e_prime: FieldArray | None = None
) -> FieldArray:
    """0 → a random codeword plus a weight-t error; 1 → a uniform word."""
    gf = type(G)
    rng = rng_from(seed)
    n = G.shape[1]
    if bit:
        return gf.Random(n, seed=rng)
    if e_prime is None:
        e_prime = random_vector_of_weight(gf, n, t, rng)
    x = gf.Random(G.shape[0], seed=rng)
    return x @ G + e_prime


def alekhnovich1_decrypt_bit(key: AlekhnovichKeyPair, c: FieldArray) -> int:
    return int(np.dot(np.asarray(key.e), np.asarray(c)) % 2)


def alekhnovich1_encrypt_repeated(G: FieldArray, t: int, bit: int, reps: int, seed) -> np.ndarray:
    """reps independent encryptions of one bit, as a reps×n 0/1 array."""
    rng = rng_from(seed)
    k, n = G.shape
    if bit:
        return rng.integers(0, 2, size=(reps, n))
    X = rng.integers(0, 2, size=(reps, k))
    positions = np.argsort(rng.random((reps, n)), axis=1)[:, :t]
    E = np.zeros((reps, n), dtype=np.int64)
    np.put_along_axis(E, positions, 1, axis=1)
    return (X @ np.asarray(G, dtype=np.int64) + E) % 2


def alekhnovich1_decrypt_repeated(key: AlekhnovichKeyPair, C: np.ndarray) -> int:
    """Majority-style vote: more than a quarter of ones reads as 1."""
    votes = (np.asarray(C) @ np.asarray(key.e, dtype=np.int64)) % 2
    return int(votes.sum() * 4 > votes.size)


# ---------------------------------------------------------------------------
# Quasi-cyclic (HQC-style) framework
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QcKeyPair:
    """Public (code, h, s = y + h·z, weights); secret (y, z)."""

    family: DecodableCode
    ring: CyclicRing
    h: FieldArray
    s: FieldArray
    w: int
    w_e: int
    w_r: int
    y: FieldArray
    z: FieldArray

    def public_json(self) -> dict[str, Any]:
        return {
            "code": self.family.params,
            "h": ints(self.h),
            "s": ints(self.s),
            "w": self.w,
            "w_e": self.w_e,
            "w_r": self.w_r,
        }

    def secret_json(self) -> dict[str, Any]:
        return {"y": ints(self.y), "z": ints(self.z)}


@dataclass(frozen=True)
class QcCiphertext:
    u: FieldArray
    v: FieldArray


def qc_keypair(
    family: DecodableCode,
    h: FieldArray,
    y: FieldArray,
    z: FieldArray,
    w_e: int,
    w_r: int,
) -> QcKeyPair:
    ring = CyclicRing(family.code.n, FieldSpec.of(family.code.gf))
    s = y + ring.mul(h, z)
    return QcKeyPair(family, ring, h, s, weight(y), w_e, w_r, y, z)


def qc_keygen(family: DecodableCode, w: int, w_e: int, w_r: int, seed) -> QcKeyPair:
    rng = rng_from(seed)
    ring = CyclicRing(family.code.n, FieldSpec.of(family.code.gf))
    h = ring.gf.Random(ring.n, seed=rng)
    y = ring.random_of_weight(w, rng)
    z = ring.random_of_weight(w, rng)
    return qc_keypair(family, h, y, z, w_e, w_r)


def qc_encrypt(
    key: QcKeyPair,
    m: FieldArray,
    seed=None,
    *,
    e: FieldArray | None = None,
    r1: FieldArray | None = None,
    r2: FieldArray | None = None,
) -> QcCiphertext:
    """u = r1 + h·r2, v = m·G + s·r2 + e; missing randomness is drawn from seed."""
    ring = key.ring
    rng = rng_from(seed)
    r1 = ring.random_of_weight(key.w_r, rng) if r1 is None else r1
    r2 = ring.random_of_weight(key.w_r, rng) if r2 is None else r2
    e = ring.random_of_weight(key.w_e, rng) if e is None else e
    G = key.family.code.generator
    if m.shape != (G.shape[0],):
        raise ParameterError(f"message must have length {G.shape[0]}")
    u = r1 + ring.mul(key.h, r2)
    v = m @ G + ring.mul(key.s, r2) + e
    return QcCiphertext(u, v)


def qc_noise(key: QcKeyPair, e: FieldArray, r1: FieldArray, r2: FieldArray) -> FieldArray:
    """y·r2 − r1·z + e, the error the decoder has to remove."""
    ring = key.ring
    return ring.mul(key.y, r2) - ring.mul(r1, key.z) + e


def qc_decrypt(key: QcKeyPair, c: QcCiphertext) -> FieldArray:
    """Decode v − u·z = m·G + noise."""
    word = c.v - key.ring.mul(c.u, key.z)
    codeword = key.family.decode(word)
    return message_of(key.family.code, codeword)


# ---------------------------------------------------------------------------
# GPT (Gabidulin codes)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GptKeyPair:
    """Public G' = S·[X | G]·P; P is invertible over the base field."""

    G_pub: FieldArray
    t: int
    family: DecodableCode
    S: FieldArray
    X: FieldArray
    P: FieldArray

    @property
    def lam(self) -> int:
        return int(self.X.shape[1])

    def public_json(self) -> dict[str, Any]:
        return {"G": ints(self.G_pub), "t": self.t}

    def secret_json(self) -> dict[str, Any]:
        return {"code": self.family.params, "S": ints(self.S), "X": ints(self.X), "P": ints(self.P)}


def gpt_keypair(family: DecodableCode, S: FieldArray, X: FieldArray, P: FieldArray) -> GptKeyPair:
    gf = family.code.gf
    G = family.code.generator
    k, n = G.shape
    lam = X.shape[1]
    if S.shape != (k, k) or rank(S) != k:
        raise ParameterError("S must be an invertible k x k matrix")
    if X.shape[0] != k:
        raise ParameterError("X must have k rows")
    P = gf(np.asarray(P))
    if P.shape != (n + lam, n + lam) or rank(P) != n + lam:
        raise ParameterError("P must be an invertible (n+lambda) square matrix")
    if np.any(np.asarray(P) >= int(gf.characteristic)):
        raise ParameterError("P must have entries in the base field")
    XG = gf(np.hstack([np.asarray(X), np.asarray(G)]))
    return GptKeyPair(S @ XG @ P, family.t, family, S, X, P)


def gpt_keygen(params: GabidulinParams, lam: int, seed) -> GptKeyPair:
    rng = rng_from(seed)
    family = gabidulin_family(params)
    gf = family.code.gf
    k, n = family.code.k, family.code.n
    S = random_invertible(gf, k, rng)
    X = gf.Random((k, lam), seed=rng)
    prime = galois.GF(int(gf.characteristic))
    P = random_invertible(prime, n + lam, rng)
    return gpt_keypair(family, S, X, gf(np.asarray(P)))


def gpt_encrypt(G_pub: FieldArray, t: int, m: FieldArray, e: FieldArray) -> FieldArray:
    if rank_weight(e) > t:
        raise WeightTooHigh(f"error has rank weight {rank_weight(e)} > t = {t}")
    return m @ G_pub + e


def gpt_decrypt(key: GptKeyPair, c: FieldArray) -> FieldArray:
    """Decode the last n positions of c·P⁻¹ with the Gabidulin code."""
    shifted = c @ np.linalg.inv(key.P)
    tail = shifted[key.lam:]
    codeword = key.family.decode(tail)
    mS = message_of(key.family.code, codeword)
    return mS @ np.linalg.inv(key.S)


# ---------------------------------------------------------------------------
# BIKE (toy)
# ---------------------------------------------------------------------------

def check_bike_r(r: int) -> bool:
    """r is prime and 2 generates the multiplicative group mod r."""
    if r < 3 or not galois.is_prime(r):
        return False
    return galois.is_primitive_root(2, r)


@dataclass(frozen=True, eq=False)
class BikeKeyPair:
    """Public h = h1·h0⁻¹ and t; secret h0, h1 of weight w/2."""

    params: MdpcParams
    h: FieldArray
    t: int
    h0: FieldArray
    h1: FieldArray

    @property
    def ring(self) -> CyclicRing:
        return CyclicRing(self.params.r, BINARY)

    def parity_check(self) -> FieldArray:
        return circulant_parity_check([np.asarray(self.h0), np.asarray(self.h1)])

    def public_json(self) -> dict[str, Any]:
        return {"r": self.params.r, "w": self.params.w, "t": self.t, "h": ints(self.h)}

    def secret_json(self) -> dict[str, Any]:
        return {"h0": ints(self.h0), "h1": ints(self.h1)}


def bike_keygen(params: MdpcParams, t: int, seed) -> BikeKeyPair:
    if params.blocks != 2:
        raise ParameterError("BIKE uses two circulant blocks")
    if not check_bike_r(params.r):
        raise InvalidBlockSize(f"r = {params.r} must be prime with 2 primitive mod r")
    if (params.w // 2) % 2 == 0:
        raise ParameterError(f"w/2 = {params.w // 2} must be odd")
    ring = CyclicRing(params.r, BINARY)
    h0_bits, h1_bits = random_mdpc_blocks(params, seed)
    h0, h1 = ring.gf(h0_bits), ring.gf(h1_bits)
    h = ring.mul(h1, ring.inv(h0))
    return BikeKeyPair(params, h, t, h0, h1)


def bike_encrypt(h: FieldArray, t: int, e: FieldArray) -> FieldArray:
    """c = e0 + e1·h for the error (e0 | e1) of total weight t."""
    r = h.size
    if e.shape != (2 * r,):
        raise ParameterError(f"error must have length {2 * r}")
    if weight(e) != t:
        raise WeightTooHigh(f"error weight {weight(e)} differs from t = {t}")
    ring = CyclicRing(r, BINARY)
    return e[:r] + ring.mul(e[r:], h)


def bike_random_error(r: int, t: int, seed) -> FieldArray:
    return galois.GF(2)(random_constant_weight(2 * r, t, seed))


def bike_decrypt(
    key: BikeKeyPair, c: FieldArray, max_iters: int = 20, threshold: int | str | None = "max"
) -> FieldArray:
    """Bit-flip (c, 0), whose syndrome is c·h0 = e0·h0 + e1·h1.

    Toy keys have column degree w/2, so a fixed majority threshold flips
    neighbouring bits together; decapsulation uses the largest-count rule.
    """
    r = key.params.r
    gf = type(c)
    y = gf.Zeros(2 * r)
    y[:r] = c
    result = bitflip_decode(key.parity_check(), y, threshold=threshold, max_iters=max_iters)
    if weight(result.error) != key.t:
        raise DecodeFailure(f"bit flipping returned an error of weight {weight(result.error)}")
    return result.error


def bike_encapsulate(h: FieldArray, t: int, seed) -> tuple[FieldArray, bytes]:
    e = bike_random_error(h.size, t, seed)
    c = bike_encrypt(h, t, e)
    return c, hashlib.sha256(pack_bits(e)).digest()


def bike_decapsulate(key: BikeKeyPair, c: FieldArray) -> bytes:
    return hashlib.sha256(pack_bits(bike_decrypt(key, c))).digest()


# ---------------------------------------------------------------------------
# Classic McEliece (toy)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CmceParams:
    m: int
    n: int
    t: int

    def __post_init__(self) -> None:
        if self.m * self.t >= self.n:
            raise ParameterError(f"need m*t < n, got m={self.m}, t={self.t}, n={self.n}")
        if self.n > 2**self.m:
            raise ParameterError(f"n = {self.n} exceeds the field size 2^{self.m}")


def _systematic_key(params: GoppaParams) -> NiederreiterKeyPair:
    family = goppa_family(params)
    H = family.code.parity_check
    r = H.shape[0]
    try:
        U = np.linalg.inv(H[:, :r])
    except np.linalg.LinAlgError as exc:
        raise SystematicFormFailure("leading columns of H are singular") from exc
    return NiederreiterKeyPair(U @ H, family.t, family, U, Permutation.identity(H.shape[1]))


def classic_mceliece_toy(params: CmceParams, seed, max_attempts: int = 64) -> NiederreiterKeyPair:
    """Goppa Niederreiter key with public H = (Id | T); resample (g, α) on failure."""
    rng = rng_from(seed)
    spec = FieldSpec(2, params.m)
    for attempt in range(1, max_attempts + 1):
        goppa = random_goppa_params(spec, params.n, params.t, rng)
        try:
            key = _systematic_key(goppa)
        except SystematicFormFailure:
            logger.debug("classic mceliece: systematic form failed (attempt %d)", attempt)
            continue
        if key.family.t < params.t:
            continue
        return key
    raise SystematicFormFailure(f"no systematic key in {max_attempts} attempts")


def cmce_public_T(key: NiederreiterKeyPair) -> FieldArray:
    r = key.H_pub.shape[0]
    return key.H_pub[:, r:]


def cmce_public_key_bits(key: NiederreiterKeyPair) -> int:
    r, n = key.H_pub.shape
    return r * (n - r)


def cmce_decrypt(key: NiederreiterKeyPair, c0: FieldArray) -> FieldArray:
    """Extend c0 by zeros to v with H·vᵀ = c0, decode, and return v − codeword."""
    n = key.H_pub.shape[1]
    v = type(c0).Zeros(n)
    v[: c0.size] = c0
    e = v - key.family.decode(v)
    if weight(e) > key.t:
        raise DecodeFailure(f"decoded error has weight {weight(e)} > {key.t}")
    return e


def cmce_encapsulate(key_public: FieldArray, t: int, seed) -> tuple[FieldArray, bytes]:
    e = type(key_public)(random_constant_weight(key_public.shape[1], t, seed))
    c0 = niederreiter_encrypt(key_public, t, e)
    return c0, hashlib.sha256(b"\x01" + pack_bits(e) + pack_bits(c0)).digest()


def cmce_decapsulate(key: NiederreiterKeyPair, c0: FieldArray) -> bytes:
    e = cmce_decrypt(key, c0)
    return hashlib.sha256(b"\x01" + pack_bits(e) + pack_bits(c0)).digest()
