"""
3-dimensional matching and its reductions to decoding problems.

A 3DM instance is a ground set T and a list of triples U ⊆ T³. Every triple
becomes one row of weight three in an incidence matrix; a matching is
exactly a set of |T| rows adding up to the all-ones vector. From that:

- SDP: H̄ with syndrome (1, …, 1) and weight |T|
- GWCP: H̄ padded with identity blocks so that a codeword of weight
  3t² + 4t exists iff the matching does
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from codecrypt_lab.algebra import BINARY, FieldArray, FieldSpec, kernel, vstack, weight
from codecrypt_lab.errors import NoMatching, NoSolution, NotAValidSolution, ParameterError, TooLarge
from codecrypt_lab.isd import DEFAULT_BUDGET, SdpInstance

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TdmInstance:
    """Ground set T and triples U; U may repeat a triple."""

    ground: tuple[str, ...]
    triples: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        ground = tuple(str(x) for x in self.ground)
        if len(set(ground)) != len(ground):
            raise ParameterError("ground set has repeated elements")
        triples = tuple(tuple(str(x) for x in tr) for tr in self.triples)
        members = set(ground)
        for i, tr in enumerate(triples):
            if len(tr) != 3:
                raise ParameterError(f"triple {i} has {len(tr)} coordinates")
            missing = [x for x in tr if x not in members]
            if missing:
                raise ParameterError(f"triple {i} uses {missing[0]!r}, which is not in T")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "triples", triples)

    @property
    def t(self) -> int:
        return len(self.ground)

    @property
    def u(self) -> int:
        return len(self.triples)

    def to_json(self) -> dict[str, Any]:
        return {"T": list(self.ground), "U": [list(tr) for tr in self.triples]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "TdmInstance":
        try:
            return cls(tuple(data["T"]), tuple(tuple(tr) for tr in data["U"]))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed 3DM instance: {exc}") from exc


@dataclass(frozen=True)
class Matching:
    """Indices into U whose triples cover every element of T once per coordinate."""

    indices: tuple[int, ...]
    triples: tuple[tuple[str, str, str], ...]

    def to_json(self) -> dict[str, Any]:
        return {"indices": list(self.indices), "W": [list(tr) for tr in self.triples]}


def is_matching(inst: TdmInstance, indices: Sequence[int]) -> bool:
    if len(indices) != inst.t or len(set(indices)) != len(indices):
        return False
    for coord in range(3):
        seen = {inst.triples[i][coord] for i in indices}
        if len(seen) != inst.t:
            return False
    return True


def matching_from_indices(inst: TdmInstance, indices: Sequence[int]) -> Matching:
    indices = tuple(sorted(int(i) for i in indices))
    if not is_matching(inst, indices):
        raise NotAValidSolution(f"triples {list(indices)} do not form a matching")
    return Matching(indices, tuple(inst.triples[i] for i in indices))


def brute_force_3dm(inst: TdmInstance, budget: int = DEFAULT_BUDGET) -> Matching:
    """First matching in lexicographic order of index sets."""
    size = math.comb(inst.u, inst.t)
    if size > budget:
        raise TooLarge(f"{size} subsets of U exceed the budget {budget}")
    for combo in itertools.combinations(range(inst.u), inst.t):
        if is_matching(inst, combo):
            return matching_from_indices(inst, combo)
    raise NoMatching("no subset of U is a matching")


# ---------------------------------------------------------------------------
# 3DM -> SDP
# ---------------------------------------------------------------------------

def incidence_matrix(inst: TdmInstance, spec: FieldSpec = BINARY) -> FieldArray:
    """H̄ᵀ: u × 3t, row i has a 1 at a_i[c] in block c."""
    gf = spec.gf
    index = {b: j for j, b in enumerate(inst.ground)}
    Ht = np.zeros((inst.u, 3 * inst.t), dtype=np.int64)
    for i, tr in enumerate(inst.triples):
        for coord, x in enumerate(tr):
            Ht[i, coord * inst.t + index[x]] = 1
    return gf(Ht)


def tdm_to_sdp(inst: TdmInstance, spec: FieldSpec = BINARY) -> SdpInstance:
    """H = H̄ (3t × u), s = all ones, weight t.

    With fewer triples than |T| the weight bound is capped at u; no error
    reaches the all-ones syndrome then.
    """
    gf = spec.gf
    H = gf(np.asarray(incidence_matrix(inst, spec)).T)
    return SdpInstance(H, gf.Ones(3 * inst.t), min(inst.t, inst.u))


def sdp_solution_to_matching(e: FieldArray, inst: TdmInstance) -> Matching:
    """The triples on supp(e). A solution of weight ≤ t is automatically a
    binary vector of weight exactly t."""
    sdp = tdm_to_sdp(inst, FieldSpec.of(type(e)))
    if not sdp.accepts(e):
        raise NotAValidSolution("e does not solve the reduced instance")
    plain = np.asarray(e)
    support = np.flatnonzero(plain)
    if support.size != inst.t or np.any(plain[support] != 1):
        raise NotAValidSolution("solution is not a binary vector of weight t")
    return matching_from_indices(inst, support.tolist())


def matching_to_error(m: Matching, inst: TdmInstance, spec: FieldSpec = BINARY) -> FieldArray:
    e = spec.gf.Zeros(inst.u)
    e[list(m.indices)] = 1
    return e


# ---------------------------------------------------------------------------
# 3DM -> GWCP
# ---------------------------------------------------------------------------

def gwcp_weight(t: int) -> int:
    """3t + (3t + 1)·t: quotient t, remainder 3t on division by 3t + 1."""
    return 3 * t * t + 4 * t


def tdm_to_gwcp(inst: TdmInstance, spec: FieldSpec = BINARY) -> tuple[FieldArray, int]:
    """H of shape (3tu + 3t) × (3tu + 3t + u) and target weight 3t² + 4t.

    Hᵀ stacks (H̄ᵀ | I_u … I_u) over −I_3t and 3t copies of −I_u on the
    block diagonal, so codewords are exactly (c̄, c̄H̄ᵀ, c̄, …, c̄).
    """
    gf = spec.gf
    t, u = inst.t, inst.u
    Hbar_t = incidence_matrix(inst, spec)
    cols = 3 * t + 3 * t * u
    top = gf.Zeros((u, cols))
    top[:, : 3 * t] = Hbar_t
    for i in range(3 * t):
        top[:, 3 * t + i * u: 3 * t + (i + 1) * u] = gf.Identity(u)
    middle = gf.Zeros((3 * t, cols))
    middle[:, : 3 * t] = -gf.Identity(3 * t)
    bottom = gf.Zeros((3 * t * u, cols))
    bottom[:, 3 * t:] = -gf.Identity(3 * t * u)
    Ht = vstack(gf, top, middle, bottom)
    return Ht.T, gwcp_weight(t)


@dataclass(frozen=True, eq=False)
class GwcpParts:
    cbar: FieldArray
    c0: FieldArray
    copies: list[FieldArray]


def gwcp_decompose(c: FieldArray, inst: TdmInstance) -> GwcpParts:
    t, u = inst.t, inst.u
    if c.shape != (3 * t * u + 3 * t + u,):
        raise ParameterError(f"codeword has length {c.shape[0]}, expected {3 * t * u + 3 * t + u}")
    base = u + 3 * t
    return GwcpParts(c[:u], c[u:base], [c[base + i * u: base + (i + 1) * u] for i in range(3 * t)])


def gwcp_solution_to_matching(c: FieldArray, inst: TdmInstance) -> Matching:
    """Read the matching off the first u coordinates of a weight-w codeword."""
    H, w = tdm_to_gwcp(inst, FieldSpec.of(type(c)))
    if weight(c) != w or np.count_nonzero(np.asarray(c @ H.T)):
        raise NotAValidSolution(f"not a codeword of weight {w}")
    parts = gwcp_decompose(c, inst)
    if weight(parts.cbar) != inst.t or weight(parts.c0) != 3 * inst.t:
        raise NotAValidSolution("weight does not split as t and 3t")
    return matching_from_indices(inst, np.flatnonzero(np.asarray(parts.cbar)).tolist())


def codeword_of_weight(H: FieldArray, w: int, budget: int = DEFAULT_BUDGET, chunk: int = 4096) -> FieldArray:
    """Some c with c·Hᵀ = 0 and wt(c) = w, by running through every codeword.

    Raises NoSolution when the code has no word of that weight.
    """
    gf = type(H)
    G = kernel(H)
    q, dim = int(gf.order), G.shape[0]
    if q**dim > budget:
        raise TooLarge(f"{q**dim} codewords exceed the budget {budget}")
    for start in range(0, q**dim, chunk):
        idx = np.arange(start, min(start + chunk, q**dim), dtype=np.int64)
        digits = (idx[:, None] // q ** np.arange(dim, dtype=np.int64)[None, :]) % q
        words = gf(digits) @ G
        hits = np.flatnonzero(np.count_nonzero(np.asarray(words), axis=1) == w)
        if hits.size:
            return words[int(hits[0])]
    raise NoSolution(f"no codeword of weight {w}")
