"""
Finite-field arithmetic, matrices, permutations and information sets.

Fields, field arrays, polynomials, rank and inverses come from ``galois``;
this module fixes the lab's conventions on top of it:

- vectors are row vectors, codes are row spaces, syndromes are x·Hᵀ
- permutations act on the right: (x·P)_j = x_{image[j]}, P[image[j], j] = 1
- systematic form puts the identity on the complement of the information
  set, in natural column order, and returns the permutation explicitly
- extension-field elements expand to coefficient rows in ascending powers
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import galois
import numpy as np

from codecrypt_lab.errors import (
    BadSetSize,
    InverseOfZero,
    MixedFields,
    NoSolution,
    NotInformationSet,
    ParameterError,
)

logger = logging.getLogger(__name__)

FieldArray = galois.FieldArray
Poly = galois.Poly


def rng_from(seed: int | np.random.Generator | None) -> np.random.Generator:
    """A numpy Generator for an integer seed (or pass a Generator through)."""
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# Field specifications
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _galois_field(p: int, m: int, modulus: tuple[int, ...] | None) -> type[FieldArray]:
    if m == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
    return galois.GF(p**m, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) given by its characteristic, degree and modulus.

    ``modulus`` holds the ascending coefficients of the monic irreducible
    polynomial (degree m) defining the extension; it is None for prime
    fields and filled in with galois' default polynomial when omitted.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not galois.is_prime(self.p):
            raise ParameterError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ParameterError(f"extension degree must be >= 1, got {self.m}")
        if self.m == 1:
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            default = galois.GF(self.p**self.m).irreducible_poly
            asc = tuple(int(c) for c in default.coeffs[::-1])
            object.__setattr__(self, "modulus", asc)
            return
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ParameterError(f"modulus must be monic of degree {self.m}")
        poly = galois.Poly(list(mod), field=galois.GF(self.p), order="asc")
        if not poly.is_irreducible():
            raise ParameterError(f"modulus {poly} is not irreducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def gf(self) -> type[FieldArray]:
        """The galois field class for this spec."""
        return _galois_field(self.p, self.m, self.modulus)

    @property
    def prime_field(self) -> type[FieldArray]:
        return _galois_field(self.p, 1, None)

    @classmethod
    def of(cls, gf: type[FieldArray]) -> "FieldSpec":
        """Recover the spec of a galois field class."""
        if gf.degree == 1:
            return cls(int(gf.characteristic))
        asc = tuple(int(c) for c in gf.irreducible_poly.coeffs[::-1])
        return cls(int(gf.characteristic), int(gf.degree), asc)

    def __str__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


BINARY = FieldSpec(2)


def field_of(x: FieldArray) -> type[FieldArray]:
    """The galois field class of an array."""
    return type(x)


# ---------------------------------------------------------------------------
# Element arithmetic
# ---------------------------------------------------------------------------

def field_arith(a: FieldArray, b: FieldArray | None, op: str) -> FieldArray:
    """Apply ``op`` in {add, mul, inv, neg} to field scalars."""
    if b is not None and type(a) is not type(b):
        raise MixedFields(f"{type(a).name} vs {type(b).name}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if a == 0:
            raise InverseOfZero("zero has no multiplicative inverse")
        return a**-1
    raise ParameterError(f"unknown field operation {op!r}")


def coefficients(x: FieldArray) -> np.ndarray:
    """Ascending prime-field coefficients of each element (last axis has length m)."""
    gf = type(x)
    if gf.degree == 1:
        return np.asarray(x)[..., None]
    return np.asarray(x.vector())[..., ::-1]


def expand(x: FieldArray) -> FieldArray:
    """n×m matrix over GF(p) whose row i is the coefficient vector of x_i."""
    gf = type(x)
    prime = galois.GF(int(gf.characteristic))
    return prime(coefficients(x).reshape(-1, gf.degree))


def element_str(a: FieldArray, var: str = "x") -> str:
    """Polynomial rendering of an element, highest power first: ``x^3+x+1``."""
    coeffs = [int(c) for c in coefficients(a).reshape(-1)]
    if type(a).degree == 1:
        return str(coeffs[0])
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        mono = "1" if power == 0 else var if power == 1 else f"{var}^{power}"
        if c == 1:
            terms.append(mono)
        elif power == 0:
            terms.append(str(c))
        else:
            terms.append(f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def vector_str(x: FieldArray, var: str = "x") -> str:
    return "(" + ", ".join(element_str(v, var) for v in x) + ")"


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------

def weight(x: FieldArray | np.ndarray) -> int:
    """Hamming weight."""
    return int(np.count_nonzero(np.asarray(x)))


def from_strings(gf: type[FieldArray], rows: Iterable[str]) -> FieldArray:
    """Matrix from digit strings such as ``"1101100"`` (spaces ignored)."""
    data = [[int(ch) for ch in row.replace(" ", "")] for row in rows]
    return gf(data)


def hstack(gf: type[FieldArray], *blocks: np.ndarray) -> FieldArray:
    return gf(np.concatenate([np.asarray(b) for b in blocks], axis=1))


def vstack(gf: type[FieldArray], *blocks: np.ndarray) -> FieldArray:
    return gf(np.concatenate([np.asarray(b) for b in blocks], axis=0))


def rank(M: FieldArray) -> int:
    if M.size == 0:
        return 0
    return int(np.linalg.matrix_rank(M))


def rref(M: FieldArray) -> tuple[FieldArray, FieldArray, list[int]]:
    """Reduced row-echelon form R = U·M with U invertible, plus pivot columns."""
    gf = type(M)
    r, c = M.shape
    if r == 0 or c == 0:
        return M.copy(), gf.Identity(r), []
    reduced = hstack(gf, M, gf.Identity(r)).row_reduce(ncols=c)
    R, U = reduced[:, :c], reduced[:, c:]
    pivots = []
    for row in np.asarray(R):
        nz = np.flatnonzero(row)
        if nz.size:
            pivots.append(int(nz[0]))
    return R, U, pivots


def kernel(M: FieldArray) -> FieldArray:
    """Basis (as rows) of the right kernel {x : M·xᵀ = 0}."""
    gf = type(M)
    r, c = M.shape
    R, _, pivots = rref(M)
    free = [j for j in range(c) if j not in set(pivots)]
    basis = gf.Zeros((len(free), c))
    for b, f in enumerate(free):
        basis[b, f] = 1
        for i, p in enumerate(pivots):
            basis[b, p] = -R[i, f]
    return basis


def row_space_basis(M: FieldArray) -> FieldArray:
    """Nonzero rows of rref(M)."""
    R, _, pivots = rref(M)
    return R[: len(pivots)]


def same_row_space(A: FieldArray, B: FieldArray) -> bool:
    gf = type(A)
    ra, rb = rank(A), rank(B)
    return ra == rb and rank(vstack(gf, A, B)) == ra


def solve_right(M: FieldArray, y: FieldArray) -> FieldArray:
    """Some x with M·xᵀ = yᵀ (free variables zero), or NoSolution."""
    gf = type(M)
    r, c = M.shape
    if y.shape != (r,):
        raise ParameterError(f"right-hand side has shape {y.shape}, expected ({r},)")
    x = gf.Zeros(c)
    if r == 0:
        return x
    if c == 0:
        if np.count_nonzero(y):
            raise NoSolution("inconsistent system")
        return x
    reduced = hstack(gf, M, y.reshape(r, 1)).row_reduce(ncols=c)
    R, rhs = reduced[:, :c], reduced[:, c]
    for i in range(r):
        nz = np.flatnonzero(np.asarray(R[i]))
        if nz.size == 0:
            if rhs[i] != 0:
                raise NoSolution("inconsistent system")
            continue
        x[int(nz[0])] = rhs[i]
    return x


def solve_linear(A: FieldArray, b: FieldArray) -> FieldArray:
    """Some row vector x with x·A = b, or NoSolution."""
    return solve_right(A.T, b)


def random_matrix(gf: type[FieldArray], shape: tuple[int, int], seed) -> FieldArray:
    return gf.Random(shape, seed=rng_from(seed))


def random_invertible(gf: type[FieldArray], k: int, seed) -> FieldArray:
    """Uniform invertible k×k matrix (rejection sampling, rank checked)."""
    rng = rng_from(seed)
    tries = 0
    while True:
        S = gf.Random((k, k), seed=rng)
        tries += 1
        if rank(S) == k:
            if tries > 1:
                logger.debug("random_invertible: %d draws for k=%d", tries, k)
            return S


def random_full_rank(gf: type[FieldArray], shape: tuple[int, int], seed) -> FieldArray:
    rng = rng_from(seed)
    while True:
        M = gf.Random(shape, seed=rng)
        if rank(M) == min(shape):
            return M


def random_vector_of_weight(gf: type[FieldArray], n: int, w: int, seed) -> FieldArray:
    """Uniform vector of length n with exactly w nonzero entries."""
    if not 0 <= w <= n:
        raise ParameterError(f"weight {w} out of range for length {n}")
    rng = rng_from(seed)
    x = gf.Zeros(n)
    positions = np.sort(rng.choice(n, size=w, replace=False))
    if w:
        x[positions] = gf.Random(w, low=1, seed=rng)
    return x


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """Column permutation acting on row vectors: (x·P)_j = x_{image[j]}."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(i) for i in self.image)
        if sorted(image) != list(range(len(image))):
            raise ParameterError("permutation image is not a bijection")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_matrix(cls, P: np.ndarray) -> "Permutation":
        """Parse a 0/1 permutation matrix (one 1 per row and column)."""
        P = np.asarray(P)
        n = P.shape[0]
        if P.shape != (n, n) or not np.all((P == 0) | (P == 1)):
            raise ParameterError("not a square 0/1 matrix")
        if not (np.all(P.sum(axis=0) == 1) and np.all(P.sum(axis=1) == 1)):
            raise ParameterError("not a permutation matrix")
        return cls(tuple(int(np.flatnonzero(P[:, j])[0]) for j in range(n)))

    def apply(self, x: np.ndarray) -> np.ndarray:
        """x·P for a vector, or M·P (columns permuted) for a matrix."""
        return x[..., list(self.image)]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, i in enumerate(self.image):
            inv[i] = j
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """The permutation P·Q (apply self, then other)."""
        return Permutation(tuple(self.image[j] for j in other.image))

    def as_matrix(self, gf: type[FieldArray]) -> FieldArray:
        P = gf.Zeros((self.n, self.n))
        for j, i in enumerate(self.image):
            P[i, j] = 1
        return P


def random_permutation(n: int, seed) -> Permutation:
    return Permutation(tuple(int(i) for i in rng_from(seed).permutation(n)))


# ---------------------------------------------------------------------------
# Information sets
# ---------------------------------------------------------------------------

def _check_set(H: FieldArray, info: Iterable[int]) -> tuple[list[int], list[int]]:
    r, n = H.shape
    I = sorted(set(int(i) for i in info))
    k = n - r
    if len(I) != k or (I and (I[0] < 0 or I[-1] >= n)):
        raise BadSetSize(f"information set must be {k} distinct indices in [0, {n})")
    chosen = set(I)
    J = [j for j in range(n) if j not in chosen]
    return I, J


def is_information_set(H: FieldArray, info: Iterable[int]) -> bool:
    """True iff the columns of H outside ``info`` form an invertible matrix."""
    I, J = _check_set(H, info)
    return rank(H[:, J]) == H.shape[0]


def systematic_form(H: FieldArray, info: Iterable[int]) -> tuple[FieldArray, Permutation]:
    """U and P with U·H·P = (A | Id), identity on the complement of ``info``."""
    I, J = _check_set(H, info)
    try:
        U = np.linalg.inv(H[:, J])
    except np.linalg.LinAlgError as exc:
        raise NotInformationSet(f"{I} is not an information set") from exc
    return U, Permutation(tuple(I + J))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def poly(coeffs: Sequence[int] | FieldArray, gf: type[FieldArray]) -> Poly:
    """Polynomial from ascending coefficients."""
    if not isinstance(coeffs, FieldArray):
        coeffs = gf([int(c) for c in coeffs])
    return galois.Poly(coeffs, order="asc")


def poly_is_zero(f: Poly) -> bool:
    return f.degree == 0 and f.coeffs[0] == 0


def poly_degree(f: Poly) -> int:
    """Degree, with -1 for the zero polynomial."""
    return -1 if poly_is_zero(f) else int(f.degree)


def poly_coeffs(f: Poly, n: int) -> FieldArray:
    """Ascending coefficients of f padded (or checked) to length n."""
    asc = f.coeffs[::-1]
    if poly_degree(f) >= n:
        raise ParameterError(f"degree {f.degree} does not fit in {n} coefficients")
    out = f.field.Zeros(n)
    if not poly_is_zero(f):
        out[: asc.size] = asc
    return out


def x_n_minus_1(n: int, gf: type[FieldArray]) -> Poly:
    coeffs = gf.Zeros(n + 1)
    coeffs[0] = -gf(1)
    coeffs[n] = 1
    return galois.Poly(coeffs, order="asc")


@dataclass(frozen=True)
class CyclicRing:
    """R = GF(p)[x]/(x^n − 1), elements stored as ascending coefficient vectors."""

    n: int
    spec: FieldSpec = BINARY

    @property
    def gf(self) -> type[FieldArray]:
        return self.spec.gf

    @property
    def modulus(self) -> Poly:
        return x_n_minus_1(self.n, self.gf)

    def element(self, coeffs: Sequence[int]) -> FieldArray:
        v = self.gf.Zeros(self.n)
        c = self.gf(np.asarray(coeffs, dtype=int))
        v[: c.size] = c
        return v

    def monomials(self, exponents: Iterable[int]) -> FieldArray:
        """Sum of x^e over the given exponents."""
        v = self.gf.Zeros(self.n)
        for e in exponents:
            v[e % self.n] += self.gf(1)
        return v

    def zero(self) -> FieldArray:
        return self.gf.Zeros(self.n)

    def one(self) -> FieldArray:
        return self.monomials([0])

    def _reduce(self, f: Poly) -> FieldArray:
        return poly_coeffs(f % self.modulus, self.n)

    def mul(self, a: FieldArray, b: FieldArray) -> FieldArray:
        if not np.count_nonzero(a) or not np.count_nonzero(b):
            return self.zero()
        return self._reduce(galois.Poly(a, order="asc") * galois.Poly(b, order="asc"))

    def inv(self, a: FieldArray) -> FieldArray:
        """Inverse in R; raises InverseOfZero when a is not a unit."""
        if not np.count_nonzero(a):
            raise InverseOfZero("zero is not invertible")
        d, s, _ = galois.egcd(galois.Poly(a, order="asc"), self.modulus)
        if d.degree != 0:
            raise InverseOfZero("element shares a factor with x^n - 1")
        return self._reduce(s * galois.Poly(d.coeffs**-1))

    def shift(self, a: FieldArray, i: int) -> FieldArray:
        """x^i · a."""
        return self.gf(np.roll(np.asarray(a), i))

    def circulant(self, a: FieldArray) -> FieldArray:
        """n×n matrix whose row i is x^i·a, so b·circulant(a) = b·a in R."""
        plain = np.asarray(a)
        return self.gf(np.stack([np.roll(plain, i) for i in range(self.n)]))

    def random_of_weight(self, w: int, seed) -> FieldArray:
        return random_vector_of_weight(self.gf, self.n, w, seed)
