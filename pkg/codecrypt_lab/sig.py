"""
Identification protocols and signatures.

- CVE: five-pass zero-knowledge identification over GF(q) with a random
  parity-check matrix; honest prover, verifier and the impersonation
  strategies that reach the q/(2(q−1)) cheating bound
- AGS: five-pass identification over two circulant blocks
- compression: N rounds with N+1 transmitted commitment hashes
- Fiat–Shamir: CVE or AGS rounds turned into a signature
- CFS: hash-and-sign on top of a Niederreiter key
- communication-cost formulas

The hash is SHA-256 over length-prefixed canonical encodings; challenges
derived from a digest come out of SHAKE-256.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from codecrypt_lab.algebra import (
    BINARY,
    CyclicRing,
    FieldArray,
    FieldSpec,
    Permutation,
    random_full_rank,
    random_permutation,
    random_vector_of_weight,
    rng_from,
    solve_linear,
    weight,
)
from codecrypt_lab.errors import (
    AggregateMismatch,
    DecodeFailure,
    ParameterError,
    RetryLimit,
    VerifyFailed,
)
from codecrypt_lab.families import DecodableCode
from codecrypt_lab.pke import NiederreiterKeyPair, niederreiter_decrypt, niederreiter_keygen
from codecrypt_lab.storage import ints

logger = logging.getLogger(__name__)

DEFAULT_RETRY_LIMIT = 2**16


# ---------------------------------------------------------------------------
# Hashing
# ---------------------------------------------------------------------------

def _encode(part: Any) -> bytes:
    if isinstance(part, bytes):
        return part
    if isinstance(part, str):
        return part.encode("utf-8")
    if isinstance(part, int):
        return part.to_bytes(16, "little", signed=True)
    if isinstance(part, Permutation):
        return np.asarray(part.image, dtype="<i8").tobytes()
    arr = np.asarray(part).astype("<i8")
    return np.asarray(arr.shape, dtype="<i8").tobytes() + arr.tobytes()


def digest(*parts: Any) -> bytes:
    """SHA-256 of the length-prefixed encodings of ``parts``."""
    h = hashlib.sha256()
    for part in parts:
        data = _encode(part)
        h.update(len(data).to_bytes(8, "little"))
        h.update(data)
    return h.digest()


class _Squeezer:
    """Deterministic byte stream from a digest."""

    def __init__(self, seed: bytes):
        self._seed = seed
        self._used = 0

    def take(self, count: int) -> bytes:
        stream = hashlib.shake_256(self._seed).digest(self._used + count)
        out = stream[self._used:]
        self._used += count
        return out

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection on 4-byte words."""
        limit = (2**32 // bound) * bound
        while True:
            word = int.from_bytes(self.take(4), "little")
            if word < limit:
                return word % bound


def hash_to_vector(gf: type[FieldArray], length: int, *parts: Any) -> FieldArray:
    squeezer = _Squeezer(digest(*parts))
    q = int(gf.order)
    return gf([squeezer.below(q) for _ in range(length)])


# ---------------------------------------------------------------------------
# Monomial transformations
# ---------------------------------------------------------------------------

def monomial(sigma: Permutation, v: FieldArray, a: FieldArray) -> FieldArray:
    """σ_v(a) = σ(v) ⋆ σ(a)."""
    return sigma.apply(v) * sigma.apply(a)


def monomial_inverse(sigma: Permutation, v: FieldArray, y: FieldArray) -> FieldArray:
    return sigma.inverse().apply(y / sigma.apply(v))


# ---------------------------------------------------------------------------
# CVE
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CvePublic:
    H: FieldArray
    s: FieldArray
    t: int

    @property
    def gf(self) -> type[FieldArray]:
        return type(self.H)

    @property
    def n(self) -> int:
        return int(self.H.shape[1])

    def to_json(self) -> dict[str, Any]:
        return {"H": ints(self.H), "s": ints(self.s), "t": self.t}


@dataclass(frozen=True, eq=False)
class CveKeys:
    """Public (H, s = e·Hᵀ, t); secret e of weight t."""

    H: FieldArray
    s: FieldArray
    t: int
    e: FieldArray

    def __post_init__(self) -> None:
        if weight(self.e) != self.t:
            raise ParameterError(f"secret has weight {weight(self.e)}, expected {self.t}")
        if not np.array_equal(np.asarray(self.e @ self.H.T), np.asarray(self.s)):
            raise ParameterError("secret does not match the public syndrome")

    @property
    def public(self) -> CvePublic:
        return CvePublic(self.H, self.s, self.t)


def cve_keygen(spec: FieldSpec, n: int, k: int, t: int, seed) -> CveKeys:
    if spec.q < 3:
        raise ParameterError("CVE needs q >= 3")
    rng = rng_from(seed)
    gf = spec.gf
    H = random_full_rank(gf, (n - k, n), rng)
    e = random_vector_of_weight(gf, n, t, rng)
    return CveKeys(H, e @ H.T, t, e)


@dataclass(frozen=True, eq=False)
class CveTranscript:
    """One five-pass run. ``response`` is (σ, v) for b = 0 and σ_v(e) for b = 1."""

    c0: bytes
    c1: bytes
    z: int
    y: FieldArray
    b: int
    response: Any

    def to_json(self) -> dict[str, Any]:
        if self.b == 0:
            sigma, v = self.response
            resp: Any = {"sigma": list(sigma.image), "v": ints(v)}
        else:
            resp = ints(self.response)
        return {"c0": self.c0.hex(), "c1": self.c1.hex(), "z": self.z, "y": ints(self.y), "b": self.b, "r": resp}


class CveProver:
    """Honest prover state for a single round."""

    def __init__(self, keys: CveKeys, seed):
        rng = rng_from(seed)
        gf, n = type(keys.H), int(keys.H.shape[1])
        self.keys = keys
        self.u = gf.Random(n, seed=rng)
        self.sigma = random_permutation(n, rng)
        self.v = gf.Random(n, low=1, seed=rng)

    def commit(self) -> tuple[bytes, bytes]:
        k = self.keys
        c0 = digest(self.sigma, self.v, self.u @ k.H.T)
        c1 = digest(monomial(self.sigma, self.v, self.u), monomial(self.sigma, self.v, k.e))
        return c0, c1

    def answer(self, z: int) -> FieldArray:
        gf = type(self.keys.H)
        return monomial(self.sigma, self.v, self.u + gf(z) * self.keys.e)

    def respond(self, b: int) -> Any:
        if b == 0:
            return self.sigma, self.v
        return monomial(self.sigma, self.v, self.keys.e)


def cve_recompute(pub: CvePublic, z: int, y: FieldArray, b: int, response: Any) -> bytes | None:
    """The commitment c_b implied by a response, or None if it is malformed."""
    gf = pub.gf
    try:
        if b == 0:
            sigma, v = response
            if v.shape != (pub.n,) or np.count_nonzero(np.asarray(v)) != pub.n:
                return None
            return digest(sigma, v, monomial_inverse(sigma, v, y) @ pub.H.T - gf(z) * pub.s)
        r = response
        if r.shape != (pub.n,) or weight(r) != pub.t:
            return None
        return digest(y - gf(z) * r, r)
    except (TypeError, ValueError, IndexError):
        return None


def cve_verify(pub: CvePublic, tr: CveTranscript) -> bool:
    expected = cve_recompute(pub, tr.z, tr.y, tr.b, tr.response)
    return expected is not None and expected == (tr.c0 if tr.b == 0 else tr.c1)


def _challenges(q: int, rng: np.random.Generator) -> tuple[int, int]:
    z = int(rng.integers(1, q))
    b = int(rng.integers(0, 2))
    return z, b


def cve_round(keys: CveKeys, prover_seed, verifier_seed) -> CveTranscript:
    """One honest round; the verifier draws z ∈ GF(q)^× and b ∈ {0, 1}."""
    prover = CveProver(keys, prover_seed)
    c0, c1 = prover.commit()
    z, b = _challenges(int(type(keys.H).order), rng_from(verifier_seed))
    y = prover.answer(z)
    return CveTranscript(c0, c1, z, y, b, prover.respond(b))


CVE_STRATEGIES = ("s0", "s1", "s0'", "s1'")


def cve_impersonate(
    strategy: str,
    pub: CvePublic,
    guess_z: int | None,
    verifier_seed,
    prover_seed=None,
) -> bool:
    """Run one round against the honest verifier without the secret.

    s0 satisfies the syndrome and ignores the weight; s1 has the right weight
    and ignores the syndrome. The primed variants also bet on z, which wins
    the other arm whenever the verifier happens to pick ``guess_z``.
    """
    if strategy not in CVE_STRATEGIES:
        raise ParameterError(f"unknown strategy {strategy!r}")
    gf, n, t = pub.gf, pub.n, pub.t
    q = int(gf.order)
    rng = rng_from(prover_seed)
    u = gf.Random(n, seed=rng)
    sigma = random_permutation(n, rng)
    v = gf.Random(n, low=1, seed=rng)
    z_guess = int(rng.integers(1, q)) if guess_z is None else guess_z
    if strategy.startswith("s0"):
        e_fake = solve_linear(pub.H.T, pub.s)
    else:
        e_fake = random_vector_of_weight(gf, n, t, rng)
    e_tilde = random_vector_of_weight(gf, n, t, rng)
    junk = rng.bytes(32)

    c0 = c1 = junk
    if strategy.startswith("s0"):
        c0 = digest(sigma, v, u @ pub.H.T)
        if strategy == "s0'":
            y_guess = monomial(sigma, v, u + gf(z_guess) * e_fake)
            c1 = digest(y_guess - gf(z_guess) * e_tilde, e_tilde)
    else:
        c1 = digest(monomial(sigma, v, u), monomial(sigma, v, e_fake))
        if strategy == "s1'":
            c0 = digest(sigma, v, u @ pub.H.T + gf(z_guess) * (e_fake @ pub.H.T - pub.s))

    z, b = _challenges(q, rng_from(verifier_seed))
    y = monomial(sigma, v, u + gf(z) * e_fake)
    if b == 0:
        response: Any = (sigma, v)
    elif strategy.startswith("s0"):
        response = e_tilde
    else:
        response = monomial(sigma, v, e_fake)
    return cve_verify(pub, CveTranscript(c0, c1, z, y, b, response))


# ---------------------------------------------------------------------------
# AGS
# ---------------------------------------------------------------------------

def block_shift(a: FieldArray, i: int, k: int) -> FieldArray:
    """ρ_i: cyclic shift of every length-k block by i positions."""
    blocks = np.asarray(a).reshape(-1, k)
    return type(a)(np.roll(blocks, i, axis=1).reshape(-1))


@dataclass(frozen=True, eq=False)
class AgsPublic:
    G: FieldArray
    c: FieldArray
    t: int

    @property
    def k(self) -> int:
        return int(self.G.shape[0])

    def to_json(self) -> dict[str, Any]:
        return {"G": ints(self.G), "c": ints(self.c), "t": self.t}


@dataclass(frozen=True, eq=False)
class AgsKeys:
    """G = (circ(a1) | circ(a2)); public c = m·G + e; secret (m, e)."""

    G: FieldArray
    c: FieldArray
    t: int
    m: FieldArray
    e: FieldArray

    def __post_init__(self) -> None:
        if weight(self.e) != self.t:
            raise ParameterError(f"secret error has weight {weight(self.e)}, expected {self.t}")

    @property
    def k(self) -> int:
        return int(self.G.shape[0])

    @property
    def public(self) -> AgsPublic:
        return AgsPublic(self.G, self.c, self.t)


def ags_keygen(k: int, t: int, seed, blocks: int = 2) -> AgsKeys:
    rng = rng_from(seed)
    ring = CyclicRing(k, BINARY)
    gf = ring.gf
    G = gf(np.hstack([np.asarray(ring.circulant(gf.Random(k, seed=rng))) for _ in range(blocks)]))
    m = gf.Random(k, seed=rng)
    e = random_vector_of_weight(gf, blocks * k, t, rng)
    return AgsKeys(G, m @ G + e, t, m, e)


@dataclass(frozen=True, eq=False)
class AgsTranscript:
    """``response`` is (σ, u + ρ_z(m)) for b = 0 and (σ(uG), σ(ρ_z(e))) for b = 1."""

    c0: bytes
    c1: bytes
    z: int
    c2: bytes
    b: int
    response: Any

    def to_json(self) -> dict[str, Any]:
        first, second = self.response
        if self.b == 0:
            resp = {"sigma": list(first.image), "u": ints(second)}
        else:
            resp = {"uG": ints(first), "e": ints(second)}
        return {"c0": self.c0.hex(), "c1": self.c1.hex(), "z": self.z, "c2": self.c2.hex(), "b": self.b, "r": resp}


class AgsProver:
    def __init__(self, keys: AgsKeys, seed):
        rng = rng_from(seed)
        gf = type(keys.G)
        self.keys = keys
        self.u = gf.Random(keys.k, seed=rng)
        self.sigma = random_permutation(keys.G.shape[1], rng)
        self.z: int | None = None

    def commit(self) -> tuple[bytes, bytes]:
        return digest(self.sigma), digest(self.sigma.apply(self.u @ self.keys.G))

    def answer(self, z: int) -> bytes:
        self.z = z
        k = self.keys
        return digest(self.sigma.apply(self.u @ k.G + block_shift(k.e, z, k.k)))

    def respond(self, b: int) -> tuple[Any, FieldArray]:
        k = self.keys
        if b == 0:
            return self.sigma, self.u + block_shift(k.m, self.z, k.k)
        return self.sigma.apply(self.u @ k.G), self.sigma.apply(block_shift(k.e, self.z, k.k))


def ags_verify(pub: AgsPublic, tr: AgsTranscript) -> bool:
    try:
        first, second = tr.response
        if tr.b == 0:
            word = second @ pub.G + block_shift(pub.c, tr.z, pub.k)
            return tr.c0 == digest(first) and tr.c2 == digest(first.apply(word))
        if weight(second) != pub.t:
            return False
        return tr.c1 == digest(first) and tr.c2 == digest(first + second)
    except (TypeError, ValueError, IndexError, AttributeError):
        return False


def ags_round(keys: AgsKeys, prover_seed, verifier_seed) -> AgsTranscript:
    """One honest round; the verifier draws z ∈ {1..k} and b ∈ {0, 1}."""
    prover = AgsProver(keys, prover_seed)
    c0, c1 = prover.commit()
    rng = rng_from(verifier_seed)
    z = int(rng.integers(1, keys.k + 1))
    b = int(rng.integers(0, 2))
    c2 = prover.answer(z)
    return AgsTranscript(c0, c1, z, c2, b, prover.respond(b))


# ---------------------------------------------------------------------------
# Compression
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompressionReport:
    rounds: int
    hashes_sent: int
    verified: bool


def compress_protocol(
    keys: CveKeys,
    rounds: int,
    seed,
    scheme: str = "cve",
    corrupt_round: int | None = None,
) -> CompressionReport:
    """N CVE rounds under one aggregate commitment c = H(c_0^1, c_1^1, …).

    Each round transmits the response plus the one commitment the verifier
    cannot recompute. Raises AggregateMismatch when the stored commitments
    do not hash back to c. ``corrupt_round`` alters that round's forwarded
    commitment, for testing.
    """
    if scheme != "cve":
        raise ParameterError("compression is implemented for the CVE rounds")
    if rounds < 1:
        raise ParameterError("need at least one round")
    rng = rng_from(seed)
    q = int(type(keys.H).order)
    provers = [CveProver(keys, rng) for _ in range(rounds)]
    commitments = [p.commit() for p in provers]
    aggregate = digest(*[c for pair in commitments for c in pair])
    hashes = 1
    pub = keys.public
    stored: list[bytes] = []
    for i, prover in enumerate(provers):
        z, b = _challenges(q, rng)
        y = prover.answer(z)
        response = prover.respond(b)
        other = commitments[i][1 - b]
        if corrupt_round == i:
            other = bytes(x ^ 0xFF for x in other)
        hashes += 1
        recomputed = cve_recompute(pub, z, y, b, response)
        if recomputed is None:
            raise VerifyFailed(f"round {i}: malformed response")
        stored.extend((recomputed, other) if b == 0 else (other, recomputed))
    if digest(*stored) != aggregate:
        raise AggregateMismatch("stored commitments do not match the aggregate hash")
    logger.debug("compressed session: %d rounds, %d hashes", rounds, hashes)
    return CompressionReport(rounds, hashes, True)


# ---------------------------------------------------------------------------
# Fiat–Shamir
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FsSignature:
    """Commitments, middle messages and responses of N rounds; ``a`` is the
    digest that fixed the second challenges."""

    scheme: str
    rounds: int
    a: bytes
    commitments: list[tuple[bytes, bytes]]
    middles: list[Any]
    responses: list[Any]

    def to_json(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme,
            "N": self.rounds,
            "a": self.a.hex(),
            "commitments": [[c0.hex(), c1.hex()] for c0, c1 in self.commitments],
            "middles": [x.hex() if isinstance(x, bytes) else ints(x) for x in self.middles],
            "responses": [_response_to_json(x) for x in self.responses],
        }


def _response_to_json(x: Any) -> dict[str, Any]:
    if not isinstance(x, tuple):
        return {"vec": ints(x)}
    first, second = x
    if isinstance(first, Permutation):
        return {"perm": list(first.image), "vec": ints(second)}
    return {"vecs": [ints(first), ints(second)]}


def _response_from_json(gf: type[FieldArray], data: dict[str, Any]) -> Any:
    if "perm" in data:
        return Permutation(tuple(data["perm"])), gf(data["vec"])
    if "vecs" in data:
        first, second = data["vecs"]
        return gf(first), gf(second)
    return gf(data["vec"])


def fs_signature_from_json(data: dict[str, Any], gf: type[FieldArray]) -> FsSignature:
    scheme = data["scheme"]
    commitments = [(bytes.fromhex(c0), bytes.fromhex(c1)) for c0, c1 in data["commitments"]]
    if scheme == "cve-fs":
        middles: list[Any] = [gf(y) for y in data["middles"]]
    else:
        middles = [bytes.fromhex(x) for x in data["middles"]]
    responses = [_response_from_json(gf, r) for r in data["responses"]]
    return FsSignature(scheme, int(data["N"]), bytes.fromhex(data["a"]), commitments, middles, responses)


def _first_challenges(scheme: str, message: bytes, commitments, count: int, bound: int) -> list[int]:
    squeezer = _Squeezer(digest(scheme, message, *[c for pair in commitments for c in pair]))
    return [1 + squeezer.below(bound) for _ in range(count)]


def _second_challenges(a: bytes, count: int) -> list[int]:
    squeezer = _Squeezer(a)
    return [squeezer.below(2) for _ in range(count)]


def fiat_shamir_sign(keys: CveKeys | AgsKeys, message: bytes, rounds: int, seed) -> FsSignature:
    """Sign by replacing the verifier with hashes.

    z_1..z_N come from H(scheme, message, all commitments), then
    a = H(that digest, all middle messages) yields b_1..b_N.
    """
    if rounds < 1:
        raise ParameterError("need at least one round")
    rng = rng_from(seed)
    if isinstance(keys, CveKeys):
        scheme = "cve-fs"
        provers: list[Any] = [CveProver(keys, rng) for _ in range(rounds)]
        bound = int(type(keys.H).order) - 1
    else:
        scheme = "ags-fs"
        provers = [AgsProver(keys, rng) for _ in range(rounds)]
        bound = keys.k
    commitments = [p.commit() for p in provers]
    zs = _first_challenges(scheme, message, commitments, rounds, bound)
    middles = [p.answer(z) for p, z in zip(provers, zs)]
    a = digest(zs, *[m if isinstance(m, bytes) else np.asarray(m) for m in middles])
    bs = _second_challenges(a, rounds)
    responses = [p.respond(b) for p, b in zip(provers, bs)]
    return FsSignature(scheme, rounds, a, commitments, middles, responses)


def fiat_shamir_verify(pub: CvePublic | AgsPublic, message: bytes, sig: FsSignature) -> bool:
    n = sig.rounds
    if not (len(sig.commitments) == len(sig.middles) == len(sig.responses) == n) or n < 1:
        return False
    if isinstance(pub, CvePublic):
        if sig.scheme != "cve-fs":
            return False
        bound = int(pub.gf.order) - 1
    else:
        if sig.scheme != "ags-fs":
            return False
        bound = pub.k
    zs = _first_challenges(sig.scheme, message, sig.commitments, n, bound)
    a = digest(zs, *[m if isinstance(m, bytes) else np.asarray(m) for m in sig.middles])
    if a != sig.a:
        return False
    bs = _second_challenges(a, n)
    for (c0, c1), z, middle, b, response in zip(sig.commitments, zs, sig.middles, bs, sig.responses):
        if isinstance(pub, CvePublic):
            ok = cve_verify(pub, CveTranscript(c0, c1, z, middle, b, response))
        else:
            ok = ags_verify(pub, AgsTranscript(c0, c1, z, middle, b, response))
        if not ok:
            return False
    return True


def cheating_probability(scheme: str, q: int = 2) -> float:
    """Per-round success chance of the best known impersonation."""
    if scheme in ("cve", "cve-fs"):
        return q / (2 * (q - 1))
    if scheme in ("ags", "ags-fs"):
        return 0.5
    raise ParameterError(f"unknown scheme {scheme!r}")


def rounds_for_security(bits: int, p: float) -> int:
    """Smallest N with p^N ≤ 2^-bits."""
    if not 0 < p < 1:
        raise ParameterError(f"cheating probability must lie in (0, 1), got {p}")
    return math.ceil(bits / -math.log2(p))


# ---------------------------------------------------------------------------
# CFS
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CfsSignature:
    counter: int
    e: FieldArray
    attempts: int

    def to_json(self) -> dict[str, Any]:
        return {"counter": self.counter, "e": ints(self.e), "attempts": self.attempts}


def cfs_keygen(family: DecodableCode, seed) -> NiederreiterKeyPair:
    return niederreiter_keygen(family, seed)


def cfs_target(H_pub: FieldArray, message: bytes, counter: int) -> FieldArray:
    """H(m, H', i) as a syndrome."""
    return hash_to_vector(type(H_pub), H_pub.shape[0], message, H_pub, counter)


def cfs_sign(key: NiederreiterKeyPair, message: bytes, retry_limit: int = DEFAULT_RETRY_LIMIT) -> CfsSignature:
    """Try counters 0, 1, … until the hashed syndrome decodes."""
    for counter in range(retry_limit):
        target = cfs_target(key.H_pub, message, counter)
        try:
            e = niederreiter_decrypt(key, target)
        except DecodeFailure:
            continue
        return CfsSignature(counter, e, counter + 1)
    raise RetryLimit(f"no decodable syndrome in {retry_limit} attempts")


def cfs_verify(H_pub: FieldArray, t: int, message: bytes, sig: CfsSignature) -> bool:
    e = sig.e
    if e.shape != (H_pub.shape[1],) or weight(e) > t:
        return False
    return np.array_equal(np.asarray(e @ H_pub.T), np.asarray(cfs_target(H_pub, message, sig.counter)))


def decodable_fraction(key: NiederreiterKeyPair) -> float:
    """Share of all syndromes the secret decoder can sign, by enumeration."""
    gf = type(key.H_pub)
    r = key.H_pub.shape[0]
    q = int(gf.order)
    total = q**r
    good = 0
    for index in range(total):
        digits = [(index // q**i) % q for i in range(r)]
        try:
            niederreiter_decrypt(key, gf(digits))
        except DecodeFailure:
            continue
        good += 1
    return good / total


# ---------------------------------------------------------------------------
# Communication cost
# ---------------------------------------------------------------------------

def _clog2(x: int) -> int:
    return math.ceil(math.log2(x)) if x > 1 else 0


def psi(n: int, q: int, t: int) -> int:
    """Bits for a weight-t vector: full vector or support plus values, whichever is smaller."""
    return min(n * _clog2(q), t * (_clog2(n) + _clog2(q - 1)))


def comm_cost(
    scheme: str,
    n: int,
    k: int,
    q: int,
    t: int,
    N: int,
    l_hash: int,
    l_seed: int,
    mode: str = "average",
) -> Fraction:
    """Bits exchanged by N compressed rounds."""
    if mode not in ("average", "max"):
        raise ParameterError(f"mode must be 'average' or 'max', got {mode!r}")
    if scheme == "cve":
        fixed = _clog2(q - 1) + n * _clog2(q) + 1 + l_hash
        p = psi(n, q, t)
        resp = Fraction(p + l_seed, 2) if mode == "average" else Fraction(max(p, l_seed))
    elif scheme == "ags":
        fixed = _clog2(k) + 1 + 2 * l_hash
        p = psi(n, 2, t)
        resp = Fraction(l_seed + k + n + p, 2) if mode == "average" else Fraction(max(l_seed + k, n + p))
    else:
        raise ParameterError(f"unknown scheme {scheme!r}")
    return l_hash + N * (fixed + resp)
