"""
Linear codes over finite fields.

A LinearCode is presented either by a generator matrix or by a parity-check
matrix; the other presentation is derived when the code is built. The
brute-force routines here (minimum distance, nearest codeword, weight
distribution) are the oracles that decoders and ISD solvers are checked
against, so they enumerate every codeword and stop at a budget.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from codecrypt_lab.algebra import (
    FieldArray,
    FieldSpec,
    expand,
    kernel,
    rank,
    row_space_basis,
    solve_linear,
    vstack,
    weight,
)
from codecrypt_lab.errors import DimMismatch, EmptyCode, FieldMismatch, LengthMismatch, TooLarge

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2**24
GENERATOR = "G"
PARITY_CHECK = "H"


@dataclass(frozen=True)
class WeightedVector:
    """A vector with its Hamming weight computed once."""

    vector: FieldArray
    weight: int = -1

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", weight(self.vector))


# ---------------------------------------------------------------------------
# LinearCode
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearCode:
    """A k-dimensional subspace of GF(q)^n.

    Build it with ``from_generator`` or ``from_parity_check``; both reduce the
    presented matrix to a full-rank one. The other presentation is computed
    at construction unless it is passed in, so a built code never mutates.
    """

    matrix: FieldArray
    presentation: str = GENERATOR
    generator: FieldArray | None = field(default=None, repr=False)
    parity_check: FieldArray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.generator is None:
            G = self.matrix if self.presentation == GENERATOR else kernel(self.matrix)
            object.__setattr__(self, "generator", G)
        if self.parity_check is None:
            H = self.matrix if self.presentation == PARITY_CHECK else kernel(self.matrix)
            object.__setattr__(self, "parity_check", H)

    @classmethod
    def from_generator(cls, G: FieldArray) -> "LinearCode":
        if rank(G) != G.shape[0]:
            G = row_space_basis(G)
        if G.shape[0] == 0:
            raise EmptyCode("generator spans the zero code")
        return cls(G, GENERATOR)

    @classmethod
    def from_parity_check(cls, H: FieldArray) -> "LinearCode":
        if rank(H) != H.shape[0]:
            H = row_space_basis(H)
        if H.shape[0] == H.shape[1]:
            raise EmptyCode("parity-check matrix has full column rank")
        return cls(H, PARITY_CHECK)

    @property
    def gf(self) -> type[FieldArray]:
        return type(self.matrix)

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec.of(self.gf)

    @property
    def q(self) -> int:
        return int(self.gf.order)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def k(self) -> int:
        if self.presentation == GENERATOR:
            return int(self.matrix.shape[0])
        return self.n - int(self.matrix.shape[0])

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.spec})"


def encode(C: LinearCode, m: FieldArray) -> FieldArray:
    """m·G."""
    if m.shape != (C.k,):
        raise DimMismatch(f"message length {m.shape} does not match dimension {C.k}")
    return m @ C.generator


def syndrome(C: LinearCode, x: FieldArray) -> FieldArray:
    """x·Hᵀ."""
    if x.shape[-1] != C.n:
        raise DimMismatch(f"vector length {x.shape[-1]} does not match length {C.n}")
    return x @ C.parity_check.T


def contains(C: LinearCode, x: FieldArray) -> bool:
    return not np.count_nonzero(np.asarray(syndrome(C, x)))


def distance(x: FieldArray, y: FieldArray) -> int:
    """Hamming distance."""
    return weight(x - y)


def same_code(A: LinearCode, B: LinearCode) -> bool:
    if A.n != B.n or A.k != B.k or A.gf is not B.gf:
        return False
    return rank(vstack(A.gf, A.generator, B.generator)) == A.k


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

def dual(C: LinearCode) -> LinearCode:
    """C^⊥, presented by C's parity-check matrix as generator."""
    return LinearCode(C.parity_check, GENERATOR, parity_check=C.generator)


def _positions(C: LinearCode, T: Sequence[int]) -> tuple[list[int], list[int]]:
    dropped = sorted(set(int(t) for t in T))
    if dropped and (dropped[0] < 0 or dropped[-1] >= C.n):
        raise DimMismatch(f"positions {dropped} outside [0, {C.n})")
    kept = [j for j in range(C.n) if j not in set(dropped)]
    return dropped, kept


def puncture(C: LinearCode, T: Sequence[int]) -> LinearCode:
    """Delete the coordinates in T from every codeword.

    The dimension may drop when |T| ≥ d; the result reports it.
    """
    dropped, kept = _positions(C, T)
    if not dropped:
        return C
    G = row_space_basis(C.generator[:, kept])
    if G.shape[0] == 0:
        raise EmptyCode("puncturing removed every nonzero codeword")
    if G.shape[0] < C.k:
        logger.debug("puncture: dimension dropped from %d to %d", C.k, G.shape[0])
    return LinearCode(G, GENERATOR)


def shorten(C: LinearCode, T: Sequence[int]) -> LinearCode:
    """Keep the codewords vanishing on T, then delete T."""
    dropped, kept = _positions(C, T)
    if not dropped:
        return C
    messages = kernel(C.generator[:, dropped].T)
    if messages.shape[0] == 0:
        raise EmptyCode("no nonzero codeword vanishes on the shortened positions")
    G = row_space_basis((messages @ C.generator)[:, kept])
    if G.shape[0] == 0:
        raise EmptyCode("shortened code is zero")
    return LinearCode(G, GENERATOR)


# ---------------------------------------------------------------------------
# Enumeration oracles
# ---------------------------------------------------------------------------

def _check_budget(C: LinearCode, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if C.q**C.k > budget:
        raise TooLarge(f"{C.q}^{C.k} codewords exceed the enumeration budget {budget}")


def iter_codewords(C: LinearCode, chunk: int = 4096) -> Iterator[FieldArray]:
    """All codewords in blocks, messages in lexicographic order."""
    q, k = C.q, C.k
    place = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    total = q**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        messages = C.gf((idx[:, None] // place) % q)
        yield messages @ C.generator


def min_weight_codeword(C: LinearCode, budget: int | None = None) -> WeightedVector:
    """A nonzero codeword of minimum weight (first in message order)."""
    _check_budget(C, budget)
    best: FieldArray | None = None
    best_w = C.n + 1
    for block in iter_codewords(C):
        weights = np.count_nonzero(np.asarray(block), axis=1)
        weights[weights == 0] = C.n + 1
        i = int(np.argmin(weights))
        if weights[i] < best_w:
            best_w, best = int(weights[i]), block[i].copy()
    return WeightedVector(best)


def min_distance_bruteforce(C: LinearCode, budget: int | None = None) -> int:
    return min_weight_codeword(C, budget).weight


def weight_distribution(C: LinearCode, budget: int | None = None) -> list[int]:
    """Number of codewords of each weight 0..n."""
    _check_budget(C, budget)
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for block in iter_codewords(C):
        counts += np.bincount(np.count_nonzero(np.asarray(block), axis=1), minlength=C.n + 1)
    return [int(c) for c in counts]


def nearest_codeword_bruteforce(
    C: LinearCode, x: FieldArray, budget: int | None = None
) -> tuple[FieldArray, int]:
    """Closest codeword to x; ties go to the lexicographically smallest message."""
    if x.shape != (C.n,):
        raise DimMismatch(f"vector length {x.shape} does not match length {C.n}")
    _check_budget(C, budget)
    best, best_d = None, C.n + 1
    for block in iter_codewords(C):
        dists = np.count_nonzero(np.asarray(block - x), axis=1)
        i = int(np.argmin(dists))
        if dists[i] < best_d:
            best_d, best = int(dists[i]), block[i].copy()
    return best, best_d


# ---------------------------------------------------------------------------
# Schur products
# ---------------------------------------------------------------------------

def schur_product(C1: LinearCode, C2: LinearCode) -> LinearCode:
    """Span of all coordinatewise products of basis rows of C1 and C2."""
    if C1.gf is not C2.gf:
        raise FieldMismatch(f"{C1.spec} vs {C2.spec}")
    if C1.n != C2.n:
        raise LengthMismatch(f"lengths {C1.n} and {C2.n} differ")
    G1, G2 = C1.generator, C2.generator
    if C1 is C2:
        pairs = [(i, j) for i in range(C1.k) for j in range(i, C1.k)]
    else:
        pairs = [(i, j) for i in range(C1.k) for j in range(C2.k)]
    products = C1.gf(np.stack([np.asarray(G1[i] * G2[j]) for i, j in pairs]))
    return LinearCode(row_space_basis(products), GENERATOR)


def square_code(C: LinearCode) -> LinearCode:
    """C ⋆ C."""
    return schur_product(C, C)


# ---------------------------------------------------------------------------
# Concatenation
# ---------------------------------------------------------------------------

def concat_encode(
    outer: LinearCode,
    inner: LinearCode,
    m: FieldArray,
    basis: FieldArray | None = None,
) -> FieldArray:
    """Encode with the outer code, expand each symbol over the base field,
    then encode every expanded symbol with the inner code.

    ``basis`` is a GF(q)-basis of the outer field; the default is the
    polynomial basis 1, z, z², ...
    """
    k1 = int(outer.gf.degree)
    if inner.gf.degree != 1 or inner.gf.characteristic != outer.gf.characteristic:
        raise FieldMismatch("inner code must live over the prime subfield of the outer code")
    if inner.k != k1:
        raise FieldMismatch(f"inner dimension {inner.k} differs from extension degree {k1}")
    symbols = encode(outer, m)
    coords = expand(symbols)
    if basis is not None:
        B = expand(basis)
        coords = inner.gf(np.stack([np.asarray(solve_linear(B, row)) for row in coords]))
    blocks = coords @ inner.generator
    return inner.gf(np.asarray(blocks).reshape(-1))


def concat_code(outer: LinearCode, inner: LinearCode, basis: FieldArray | None = None) -> LinearCode:
    """Generator of the concatenated code (images of the outer field basis vectors)."""
    gf = outer.gf
    rows = []
    for i in range(outer.k):
        for j in range(int(gf.degree)):
            m = gf.Zeros(outer.k)
            m[i] = gf(int(gf.characteristic) ** j) if basis is None else basis[j]
            rows.append(np.asarray(concat_encode(outer, inner, m, basis)))
    return LinearCode.from_generator(inner.gf(np.stack(rows)))

