"""
Replays of the worked examples.

Each demo rebuilds one toy from the inputs in reference_data, runs the
library on it and lists every intermediate value next to the one printed
with the example. Small-field vectors are compared as digit strings,
GF(32) vectors as integer tuples.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from codecrypt_lab import reference_data as ref
from codecrypt_lab.algebra import (
    CyclicRing,
    FieldArray,
    FieldSpec,
    Permutation,
    from_strings,
    is_information_set,
    rref,
    solve_linear,
    weight,
)
from codecrypt_lab.errors import UnknownParamSet
from codecrypt_lab.families import (
    GabidulinParams,
    gabidulin_family,
    hamming_family,
    message_of,
    repetition_family,
    single_error_decode,
)
from codecrypt_lab.isd import SdpInstance, prange_iteration
from codecrypt_lab.pke import (
    alekhnovich1_decrypt_bit,
    alekhnovich1_keypair,
    gpt_decrypt,
    gpt_encrypt,
    gpt_keypair,
    mceliece_decrypt,
    mceliece_encrypt,
    mceliece_keypair,
    niederreiter_decrypt,
    niederreiter_encrypt,
    niederreiter_keypair,
    qc_decrypt,
    qc_encrypt,
    qc_keypair,
    qc_noise,
    syndrome_decode,
)
from codecrypt_lab.reductions import (
    TdmInstance,
    brute_force_3dm,
    incidence_matrix,
    matching_to_error,
    sdp_solution_to_matching,
    tdm_to_sdp,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    computed: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "ok": self.ok}


@dataclass
class DemoResult:
    key: str
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str, expected: Any, computed: Any) -> None:
        self.checks.append(Check(name, _plain(expected), _plain(computed)))

    def to_json(self) -> dict[str, Any]:
        return {"example": self.key, "title": self.title, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _plain(x: Any) -> Any:
    """Comparable, JSON-ready form: digit strings for fields of order ≤ 10."""
    if isinstance(x, FieldArray):
        values = np.asarray(x).astype(np.int64)
        small = int(type(x).order) <= 10
        if values.ndim == 1:
            return "".join(str(v) for v in values) if small else tuple(int(v) for v in values)
        return tuple(_plain(type(x)(row)) for row in values)
    if isinstance(x, (list, tuple)):
        return tuple(_plain(v) for v in x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def _perm(rows) -> Permutation:
    return Permutation.from_matrix(np.array([[int(ch) for ch in row] for row in rows]))


def _vec(gf: type[FieldArray], digits: str) -> FieldArray:
    return gf([int(ch) for ch in digits])


# ---------------------------------------------------------------------------
# Encryption toys
# ---------------------------------------------------------------------------

def demo_hamming_mceliece() -> DemoResult:
    rec = ref.HAMMING_MCELIECE
    out = DemoResult(rec.key, rec.title)
    family = hamming_family(3)
    gf = family.code.gf
    S = from_strings(gf, rec.inputs["S"])
    key = mceliece_keypair(family, S, _perm(rec.inputs["P"]))
    m, e = _vec(gf, rec.inputs["m"]), _vec(gf, rec.inputs["e"])
    out.check("G'", rec.expected["G_pub"], key.G_pub)
    out.check("m·G'", rec.expected["mG_pub"], m @ key.G_pub)
    c = mceliece_encrypt(key.G_pub, key.t, m, e)
    out.check("c", rec.expected["c"], c)
    out.check("c·P⁻¹", rec.expected["c_unpermuted"], key.P.inverse().apply(c))
    codeword = family.decode(key.P.inverse().apply(c))
    out.check("m·S", rec.expected["mS"], message_of(family.code, codeword))
    out.check("S⁻¹", rec.expected["S_inv"], np.linalg.inv(S))
    out.check("m", rec.expected["m"], mceliece_decrypt(key, c))

    # message recovery from the public key alone
    G_bar, _, _ = rref(key.G_pub)
    k = G_bar.shape[0]
    H_bar = gf(np.hstack([np.asarray(G_bar[:, k:]).T, np.eye(G_bar.shape[1] - k, dtype=int)]))
    out.check("Ḡ", rec.expected["G_bar"], G_bar)
    out.check("H̄", rec.expected["H_bar"], H_bar)
    out.check("s = c·H̄ᵀ", rec.expected["s"], c @ H_bar.T)
    recovered = single_error_decode(H_bar, c)
    out.check("m̄", rec.expected["m_bar"], recovered[:k])
    out.check("m from m·G' = m̄·Ḡ", rec.expected["m"], solve_linear(key.G_pub, recovered))
    return out


def demo_niederreiter() -> DemoResult:
    rec = ref.NIEDERREITER
    out = DemoResult(rec.key, rec.title)
    family = hamming_family(3)
    gf = family.code.gf
    out.check("H", rec.inputs["H"], family.code.parity_check)
    S = from_strings(gf, rec.inputs["S"])
    key = niederreiter_keypair(family, S, _perm(rec.inputs["P"]))
    m = _vec(gf, rec.inputs["m"])
    out.check("H'", rec.expected["H_pub"], key.H_pub)
    c = niederreiter_encrypt(key.H_pub, key.t, m)
    out.check("c", rec.expected["c"], c)
    s = c @ np.linalg.inv(S).T
    out.check("c·S⁻ᵀ", rec.expected["s_unscrambled"], s)
    out.check("decoded error", rec.expected["e_unpermuted"], syndrome_decode(family, s))
    out.check("m", rec.expected["m"], niederreiter_decrypt(key, c))
    return out


def demo_qc() -> DemoResult:
    rec = ref.QC_REPETITION
    out = DemoResult(rec.key, rec.title)
    inp = rec.inputs
    family = repetition_family(inp["n"])
    ring = CyclicRing(inp["n"])
    mono = ring.monomials
    key = qc_keypair(family, mono(inp["h"]), mono(inp["y"]), mono(inp["z"]), w_e=1, w_r=1)
    out.check("s = y + h·z", rec.expected["s"], key.s)
    e, r1, r2 = mono(inp["e"]), mono(inp["r1"]), mono(inp["r2"])
    out.check("s·r2", rec.expected["s_r2"], ring.mul(key.s, r2))
    m = _vec(ring.gf, inp["m"])
    c = qc_encrypt(key, m, e=e, r1=r1, r2=r2)
    out.check("u", rec.expected["u"], c.u)
    out.check("v", rec.expected["v"], c.v)
    uz = ring.mul(c.u, key.z)
    out.check("u·z", rec.expected["uz"], uz)
    out.check("v − u·z", rec.expected["v_minus_uz"], c.v - uz)
    out.check("m", rec.expected["m"], qc_decrypt(key, c))

    ex = inp["exercise"]
    e2, r1b, r2b = mono(ex["e"]), mono(ex["r1"]), mono(ex["r2"])
    out.check("exercise noise weight", rec.expected["exercise_noise_weight"], weight(qc_noise(key, e2, r1b, r2b)))
    c2 = qc_encrypt(key, m, e=e2, r1=r1b, r2=r2b)
    out.check("exercise decrypts", rec.expected["exercise_decrypts"], bool(np.array_equal(qc_decrypt(key, c2), m)))
    return out


def demo_gpt() -> DemoResult:
    rec = ref.GPT_GF32
    out = DemoResult(rec.key, rec.title)
    inp = rec.inputs
    gf = FieldSpec(2, 5, inp["modulus"]).gf
    family = gabidulin_family(GabidulinParams(gf(inp["g"]), inp["k"]))
    out.check("G", rec.expected["G"], family.code.generator)
    S, X = gf(inp["S"]), gf(inp["X"])
    P = gf(np.array([[int(ch) for ch in row] for row in inp["P"]]))
    key = gpt_keypair(family, S, X, P)
    out.check("G'", rec.expected["G_pub"], key.G_pub)
    m, e = gf(inp["m"]), gf(inp["e"])
    c = gpt_encrypt(key.G_pub, inp["t"], m, e)
    out.check("c", rec.expected["c"], c)
    shifted = c @ np.linalg.inv(P)
    out.check("c·P⁻¹", rec.expected["c_unpermuted"], shifted)
    codeword = family.decode(shifted[key.lam:])
    out.check("m·S", rec.expected["mS"], message_of(family.code, codeword))
    out.check("m", rec.expected["m"], gpt_decrypt(key, c))
    return out


def demo_alekhnovich() -> DemoResult:
    rec = ref.ALEKHNOVICH
    out = DemoResult(rec.key, rec.title)
    gf = FieldSpec(2).gf
    inp = rec.inputs
    A = from_strings(gf, inp["A"])
    key = alekhnovich1_keypair(A, _vec(gf, inp["x"]), _vec(gf, inp["e"]))
    out.check("y = x·A + e", rec.expected["y"], _vec(gf, inp["x"]) @ A + key.e)
    out.check("G", rec.expected["G"], key.G)
    c0 = gf.Ones(key.G.shape[0]) @ key.G + _vec(gf, inp["e_prime"])
    out.check("c0", rec.expected["c0"], c0)
    out.check("⟨e, c0⟩", rec.expected["decrypt_c0"], alekhnovich1_decrypt_bit(key, c0))
    out.check("⟨e, c1⟩", rec.expected["decrypt_c1"], alekhnovich1_decrypt_bit(key, _vec(gf, inp["c1"])))
    return out


# ---------------------------------------------------------------------------
# Attack and reduction
# ---------------------------------------------------------------------------

def demo_prange_f5() -> DemoResult:
    rec = ref.PRANGE_F5
    out = DemoResult(rec.key, rec.title)
    inp = rec.inputs
    gf = FieldSpec(inp["q"]).gf
    inst = SdpInstance(from_strings(gf, inp["H"]), _vec(gf, inp["s"]), inp["t"])
    out.check("first set rejected as information set", False, is_information_set(inst.H, inp["not_information_set"]))
    first = prange_iteration(inst, inp["first_choice"])
    out.check("U₂·H", rec.expected["UH_first"], first.UH)
    out.check("s·U₂ᵀ", rec.expected["s_first"], first.s_prime)
    out.check("first iteration accepted", False, first.accepted)
    step = prange_iteration(inst, inp["information_set"])
    out.check("U·H", rec.expected["UH"], step.UH)
    out.check("s'", rec.expected["s_prime"], step.s_prime)
    out.check("accepted", True, step.accepted)
    J = [j for j in range(inst.n) if j not in step.info]
    e = gf.Zeros(inst.n)
    e[J] = step.s_prime
    out.check("e", rec.expected["e"], e)
    out.check("e·Hᵀ = s", True, inst.accepts(e))
    return out


def demo_3dm() -> DemoResult:
    rec = ref.TDM_EXAMPLE
    out = DemoResult(rec.key, rec.title)
    inst = TdmInstance(rec.inputs["T"], rec.inputs["U"])
    out.check("Hᵀ", rec.expected["H_T"], incidence_matrix(inst))
    matching = brute_force_3dm(inst)
    e = matching_to_error(matching, inst)
    out.check("e", rec.expected["e"], e)
    out.check("e·Hᵀ = (1, …, 1)", True, tdm_to_sdp(inst).accepts(e))
    out.check("W", rec.expected["W"], sdp_solution_to_matching(e, inst).triples)
    return out


DEMOS: dict[str, Callable[[], DemoResult]] = {
    "hamming-mceliece": demo_hamming_mceliece,
    "niederreiter": demo_niederreiter,
    "prange-f5": demo_prange_f5,
    "qc": demo_qc,
    "gpt": demo_gpt,
    "alekhnovich": demo_alekhnovich,
    "3dm": demo_3dm,
}


def run_demo(key: str) -> DemoResult:
    try:
        demo = DEMOS[key]
    except KeyError:
        raise UnknownParamSet(f"no demo named {key!r}; choose from {', '.join(DEMOS)}") from None
    result = demo()
    logger.debug("demo %s: %d checks, ok=%s", key, len(result.checks), result.ok)
    return result
