"""
Concrete code families and their decoders.

Hamming, repetition, GRS, classical Goppa, cyclic (from a generator
polynomial), MDPC with bit flipping, Reed–Muller and the rank-metric stack
(rank weight, Moore matrices, Gabidulin codes, enumeration decoding).

Every decodable family can be wrapped in a DecodableCode, the handle the
encryption and signature schemes carry around. Its ``params`` dict is
JSON-ready and rebuilds the same family through ``family_from_params``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import galois
import numpy as np

from codecrypt_lab.algebra import (
    FieldArray,
    FieldSpec,
    expand,
    hstack,
    poly,
    poly_coeffs,
    poly_degree,
    poly_is_zero,
    rank,
    rng_from,
    row_space_basis,
    solve_linear,
    solve_right,
    x_n_minus_1,
)
from codecrypt_lab.codes import LinearCode, distance, syndrome
from codecrypt_lab.errors import (
    DecodeFailure,
    DependentPoints,
    DuplicatePoints,
    NoSolution,
    NotADivisor,
    ParameterError,
    RootInSupport,
    TooLarge,
    ZeroMultiplier,
)
from codecrypt_lab.storage import ints, spec_from_json, spec_to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DecodableCode:
    """A code together with a decoder correcting up to ``t`` errors."""

    name: str
    code: LinearCode
    t: int
    decoder: Callable[[FieldArray], FieldArray]
    params: dict[str, Any] = field(default_factory=dict)
    metric: str = "hamming"

    def decode(self, y: FieldArray) -> FieldArray:
        return self.decoder(y)


def message_of(C: LinearCode, c: FieldArray) -> FieldArray:
    """The message m with m·G = c."""
    try:
        return solve_linear(C.generator, c)
    except NoSolution as exc:
        raise DecodeFailure("decoded word is not a codeword") from exc


# ---------------------------------------------------------------------------
# Hamming and repetition codes
# ---------------------------------------------------------------------------

def hamming_parity_check(r: int) -> FieldArray:
    """Binary H = (B | Id_r) with every nonzero r-bit column exactly once.

    Non-unit columns are ordered by weight, then by decreasing value read
    with the first row as the most significant bit; r = 3 gives the [7,4]
    toy with rows 1101100, 1011010, 0111001.
    """
    if r < 2:
        raise ParameterError("Hamming codes need r >= 2")
    gf = galois.GF(2)
    cols = []
    for value in range(1, 2**r):
        bits = [(value >> (r - 1 - i)) & 1 for i in range(r)]
        if sum(bits) > 1:
            cols.append((sum(bits), -value, bits))
    cols.sort()
    B = np.array([c[2] for c in cols], dtype=int).T
    return hstack(gf, B, np.eye(r, dtype=int))


def hamming_code(r: int) -> LinearCode:
    H = hamming_parity_check(r)
    k = H.shape[1] - r
    gf = type(H)
    G = hstack(gf, gf.Identity(k), H[:, :k].T)
    return LinearCode(G, parity_check=H)


def single_error_decode(H: FieldArray, y: FieldArray) -> FieldArray:
    """Correct one error by matching the syndrome against a column of H."""
    s = y @ H.T
    if not np.count_nonzero(np.asarray(s)):
        return y.copy()
    gf = type(H)
    for j in range(H.shape[1]):
        col = H[:, j]
        for a in gf.elements[1:]:
            if np.array_equal(np.asarray(a * col), np.asarray(s)):
                c = y.copy()
                c[j] -= a
                return c
    raise DecodeFailure("syndrome matches no single-error pattern")


def hamming_family(r: int = 3) -> DecodableCode:
    C = hamming_code(r)
    H = C.parity_check
    return DecodableCode(
        name=f"hamming[{C.n},{C.k}]",
        code=C,
        t=1,
        decoder=lambda y: single_error_decode(H, y),
        params={"family": "hamming", "r": r},
    )


def repetition_code(n: int, spec: FieldSpec = FieldSpec(2)) -> LinearCode:
    return LinearCode(spec.gf.Ones((1, n)))


def majority_decode(y: FieldArray) -> FieldArray:
    """Repetition decoding: the most frequent symbol wins (ties fail)."""
    values, counts = np.unique(np.asarray(y), return_counts=True)
    best = np.flatnonzero(counts == counts.max())
    if best.size > 1:
        raise DecodeFailure("tie in majority vote")
    return type(y)(np.full(y.shape, values[best[0]]))


def repetition_family(n: int, spec: FieldSpec = FieldSpec(2)) -> DecodableCode:
    return DecodableCode(
        name=f"repetition[{n},1]",
        code=repetition_code(n, spec),
        t=(n - 1) // 2,
        decoder=majority_decode,
        params={"family": "repetition", "n": n, "field": spec_to_json(spec)},
    )


# ---------------------------------------------------------------------------
# Generalized Reed–Solomon codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GrsParams:
    """Evaluation points alpha, column multipliers beta and dimension k."""

    alpha: FieldArray
    beta: FieldArray
    k: int

    def __post_init__(self) -> None:
        n = self.alpha.size
        if self.beta.shape != self.alpha.shape:
            raise ParameterError("alpha and beta must have the same length")
        if np.unique(np.asarray(self.alpha)).size != n:
            raise DuplicatePoints("evaluation points must be pairwise distinct")
        if np.count_nonzero(np.asarray(self.beta)) != n:
            raise ZeroMultiplier("column multipliers must be nonzero")
        if not 1 <= self.k <= n <= type(self.alpha).order:
            raise ParameterError(f"need 1 <= k <= n <= q, got k={self.k}, n={n}")

    @property
    def n(self) -> int:
        return int(self.alpha.size)

    @property
    def gf(self) -> type[FieldArray]:
        return type(self.alpha)


def _powers(alpha: FieldArray, rows: int) -> FieldArray:
    gf = type(alpha)
    V = gf.Zeros((rows, alpha.size))
    if rows:
        V[0] = gf.Ones(alpha.size)
    for i in range(1, rows):
        V[i] = V[i - 1] * alpha
    return V


def grs_generator(p: GrsParams) -> FieldArray:
    """Rows (β_j·α_j^i)_j for i = 0..k-1."""
    return _powers(p.alpha, p.k) * p.beta


def grs_code(p: GrsParams) -> LinearCode:
    return LinearCode(grs_generator(p))


def grs_dual_multipliers(p: GrsParams) -> FieldArray:
    """γ with GRS_k(α, β)^⊥ = GRS_{n-k}(α, γ): γ_i = β_i^{-1}·Π_{j≠i}(α_i − α_j)^{-1}."""
    gf = p.gf
    gamma = gf.Zeros(p.n)
    for i in range(p.n):
        prod = gf(1)
        for j in range(p.n):
            if j != i:
                prod = prod * (p.alpha[i] - p.alpha[j])
        gamma[i] = (p.beta[i] * prod) ** -1
    return gamma


def grs_dual_params(p: GrsParams) -> GrsParams:
    return GrsParams(p.alpha, grs_dual_multipliers(p), p.n - p.k)


def grs_decode(p: GrsParams, y: FieldArray) -> FieldArray:
    """Rational-interpolation decoding up to ⌊(n−k)/2⌋ errors.

    Finds Q (deg < e+k) and monic E (deg e) with Q(α_i) = (y_i/β_i)·E(α_i);
    the message polynomial is Q/E.
    """
    gf, n, k = p.gf, p.n, p.k
    e = (n - k) // 2
    y_scaled = y / p.beta
    if e == 0:
        A = _powers(p.alpha, k).T
        try:
            f = solve_right(A, y_scaled)
        except NoSolution as exc:
            raise DecodeFailure("word is not a codeword and the code corrects nothing") from exc
        return f @ grs_generator(p)
    Vq = _powers(p.alpha, e + k).T
    Ve = _powers(p.alpha, e + 1).T
    M = hstack(gf, Vq, -(Ve[:, :e] * y_scaled[:, None]))
    rhs = y_scaled * Ve[:, e]
    try:
        sol = solve_right(M, rhs)
    except NoSolution as exc:
        raise DecodeFailure("interpolation system is inconsistent") from exc
    Q = galois.Poly(sol[: e + k], order="asc")
    locator = gf.Ones(e + 1)
    locator[:e] = sol[e + k :]
    E = galois.Poly(locator, order="asc")
    f, remainder = divmod(Q, E)
    if not poly_is_zero(remainder) or poly_degree(f) >= k:
        raise DecodeFailure("error locator does not divide the interpolant")
    c = poly_coeffs(f, k) @ grs_generator(p)
    if distance(c, y) > e:
        raise DecodeFailure("decoded word lies outside the decoding radius")
    return c


def grs_family(p: GrsParams) -> DecodableCode:
    return DecodableCode(
        name=f"grs[{p.n},{p.k}]",
        code=grs_code(p),
        t=(p.n - p.k) // 2,
        decoder=lambda y: grs_decode(p, y),
        params={
            "family": "grs",
            "field": spec_to_json(FieldSpec.of(p.gf)),
            "alpha": ints(p.alpha),
            "beta": ints(p.beta),
            "k": p.k,
        },
    )


def random_grs_params(spec: FieldSpec, n: int, k: int, seed) -> GrsParams:
    rng = rng_from(seed)
    gf = spec.gf
    alpha = gf(rng.choice(spec.q, size=n, replace=False))
    beta = gf.Random(n, low=1, seed=rng)
    return GrsParams(alpha, beta, k)


# ---------------------------------------------------------------------------
# Classical Goppa codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GoppaParams:
    """Goppa polynomial g over GF(q^m) and support alpha (distinct, no roots of g)."""

    g: galois.Poly
    alpha: FieldArray

    def __post_init__(self) -> None:
        if type(self.alpha) is not self.g.field:
            raise ParameterError("support and Goppa polynomial live in different fields")
        if np.unique(np.asarray(self.alpha)).size != self.alpha.size:
            raise DuplicatePoints("support elements must be distinct")
        if not self.g.is_monic or self.g.degree < 1:
            raise ParameterError("Goppa polynomial must be monic of degree >= 1")
        if np.count_nonzero(np.asarray(self.g(self.alpha))) != self.alpha.size:
            raise RootInSupport("Goppa polynomial vanishes on the support")

    @property
    def gf(self) -> type[FieldArray]:
        return type(self.alpha)

    @property
    def n(self) -> int:
        return int(self.alpha.size)

    @property
    def t(self) -> int:
        return int(self.g.degree)


def goppa_parity_check(p: GoppaParams) -> tuple[FieldArray, FieldArray]:
    """(H over GF(q^m), its coefficient expansion over GF(q)).

    Row i of the extension matrix is (α_j^i / g(α_j))_j; each row expands
    into m rows of the subfield matrix.
    """
    beta = p.g(p.alpha) ** -1
    H_ext = _powers(p.alpha, p.t) * beta
    m = int(p.gf.degree)
    prime = galois.GF(int(p.gf.characteristic))
    blocks = [np.asarray(expand(H_ext[i])).T for i in range(p.t)]
    H_sub = prime(np.concatenate(blocks, axis=0).reshape(p.t * m, p.n))
    return H_ext, H_sub


def goppa_code(p: GoppaParams) -> LinearCode:
    return LinearCode.from_parity_check(goppa_parity_check(p)[1])


def _goppa_supercode(p: GoppaParams, g: galois.Poly) -> GrsParams:
    beta = g(p.alpha) ** -1
    return grs_dual_params(GrsParams(p.alpha, beta, int(g.degree)))


def goppa_radius(p: GoppaParams) -> int:
    """Errors corrected by goppa_decode: deg g for binary squarefree g, else ⌊deg g/2⌋."""
    if _uses_square(p):
        return p.t
    return p.t // 2


def _uses_square(p: GoppaParams) -> bool:
    return int(p.gf.characteristic) == 2 and p.g.is_square_free() and p.n > 2 * p.t


def goppa_decode(p: GoppaParams, y: FieldArray) -> FieldArray:
    """Decode through the GRS supercode whose subfield subcode is the Goppa code.

    Binary codes with squarefree g equal the Goppa code of g², so the
    supercode of g² is used and deg g errors are corrected.
    """
    g = p.g * p.g if _uses_square(p) else p.g
    sup = _goppa_supercode(p, g)
    c_ext = grs_decode(sup, p.gf(np.asarray(y)))
    values = np.asarray(c_ext)
    if np.any(values >= int(p.gf.characteristic)):
        raise DecodeFailure("decoded word is not in the subfield")
    c = type(y)(values)
    if np.count_nonzero(np.asarray(goppa_parity_check(p)[0] @ p.gf(values))):
        raise DecodeFailure("decoded word is not a Goppa codeword")
    return c


def goppa_family(p: GoppaParams) -> DecodableCode:
    code = goppa_code(p)
    return DecodableCode(
        name=f"goppa[{code.n},{code.k}]",
        code=code,
        t=goppa_radius(p),
        decoder=lambda y: goppa_decode(p, y),
        params={
            "family": "goppa",
            "field": spec_to_json(FieldSpec.of(p.gf)),
            "g": ints(p.g.coeffs[::-1]),
            "alpha": ints(p.alpha),
        },
    )


def random_monic_irreducible(gf: type[FieldArray], degree: int, seed) -> galois.Poly:
    rng = rng_from(seed)
    while True:
        coeffs = gf.Random(degree + 1, seed=rng)
        coeffs[degree] = 1
        g = galois.Poly(coeffs, order="asc")
        if g.is_irreducible():
            return g


def random_goppa_params(spec: FieldSpec, n: int, t: int, seed) -> GoppaParams:
    """Random irreducible g of degree t and n random distinct support elements."""
    if n > spec.q:
        raise ParameterError(f"support of size {n} does not fit in {spec}")
    rng = rng_from(seed)
    gf = spec.gf
    g = random_monic_irreducible(gf, t, rng)
    alpha = gf(rng.choice(spec.q, size=n, replace=False))
    return GoppaParams(g, alpha)


# ---------------------------------------------------------------------------
# Cyclic codes
# ---------------------------------------------------------------------------

def cyclic_from_genpoly(g: galois.Poly, n: int) -> LinearCode:
    """Code generated by the shifts x^i·g(x), i < n − deg g."""
    gf = g.field
    if not poly_is_zero(x_n_minus_1(n, gf) % g):
        raise NotADivisor(f"{g} does not divide x^{n} - 1")
    k = n - int(g.degree)
    base = poly_coeffs(g, n)
    G = gf(np.stack([np.roll(np.asarray(base), i) for i in range(k)]))
    return LinearCode(G)


def check_polynomial(g: galois.Poly, n: int) -> galois.Poly:
    """h with g·h = x^n − 1."""
    h, r = divmod(x_n_minus_1(n, g.field), g)
    if not poly_is_zero(r):
        raise NotADivisor(f"{g} does not divide x^{n} - 1")
    return h


def is_cyclic(C: LinearCode) -> bool:
    """Closed under the cyclic shift (checked on the basis)."""
    shifted = C.gf(np.roll(np.asarray(C.generator), 1, axis=1))
    return not np.count_nonzero(np.asarray(shifted @ C.parity_check.T))


# ---------------------------------------------------------------------------
# MDPC codes and bit flipping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MdpcParams:
    """``blocks`` circulant r×r blocks; every parity-check row has weight w."""

    r: int
    w: int
    blocks: int = 2

    def __post_init__(self) -> None:
        if self.w % self.blocks:
            raise ParameterError("row weight must split evenly over the blocks")
        if self.w // self.blocks > self.r:
            raise ParameterError("block weight exceeds block size")

    @property
    def n(self) -> int:
        return self.r * self.blocks


@dataclass(frozen=True)
class BitflipResult:
    codeword: FieldArray
    error: FieldArray
    iterations: int


def circulant_parity_check(first_rows: list[np.ndarray]) -> FieldArray:
    """H = (H_0 | H_1 | ...) with H_i = circ(h_i)ᵀ, so e·Hᵀ = Σ e_i·h_i in R."""
    gf = galois.GF(2)
    blocks = []
    for h in first_rows:
        h = np.asarray(h, dtype=int)
        circ = np.stack([np.roll(h, i) for i in range(h.size)])
        blocks.append(circ.T)
    return gf(np.concatenate(blocks, axis=1))


def random_mdpc_blocks(params: MdpcParams, seed, distinct_columns: bool = True) -> list[np.ndarray]:
    """Random first rows of weight w/blocks.

    With ``distinct_columns`` keys whose parity-check matrix repeats a column
    (a weight-2 codeword) are resampled.
    """
    rng = rng_from(seed)
    d = params.w // params.blocks
    while True:
        rows = []
        for _ in range(params.blocks):
            h = np.zeros(params.r, dtype=int)
            h[rng.choice(params.r, size=d, replace=False)] = 1
            rows.append(h)
        if not distinct_columns:
            return rows
        H = np.asarray(circulant_parity_check(rows))
        if np.unique(H.T, axis=0).shape[0] == H.shape[1]:
            return rows
        logger.debug("mdpc: repeated column, resampling")


def bitflip_decode(
    H: FieldArray,
    y: FieldArray,
    threshold: int | str | None = None,
    max_iters: int = 20,
) -> BitflipResult:
    """Bit flipping over GF(2).

    Each round counts the unsatisfied parity checks of every bit and flips
    the bits whose count reaches the threshold b. By default b is a strict
    majority of the column degree. ``threshold="max"`` flips only the bits
    with the largest count, provided it is at least that majority.
    """
    if isinstance(threshold, str) and threshold != "max":
        raise ParameterError(f"unknown threshold rule {threshold!r}")
    Hn = np.asarray(H, dtype=np.int64)
    x = np.asarray(y, dtype=np.int64).copy()
    syn = (Hn @ x) % 2
    degree = int(Hn.sum(axis=0).max()) if Hn.size else 0
    majority = degree // 2 + 1
    iterations = 0
    while syn.any():
        if iterations >= max_iters:
            raise DecodeFailure(f"bit flipping did not converge in {max_iters} iterations")
        unsat = Hn.T @ syn
        if threshold is None:
            b = majority
        elif threshold == "max":
            b = max(majority, int(unsat.max()))
        else:
            b = threshold
        flip = unsat >= b
        if not flip.any():
            raise DecodeFailure("no bit reaches the flipping threshold")
        x[flip] ^= 1
        syn = (Hn @ x) % 2
        iterations += 1
    gf = type(H)
    codeword = gf(x)
    return BitflipResult(codeword, y - codeword, iterations)


def mdpc_family(params: MdpcParams, seed) -> DecodableCode:
    rows = random_mdpc_blocks(params, seed)
    H = circulant_parity_check(rows)
    return DecodableCode(
        name=f"mdpc[{params.n}] r={params.r} w={params.w}",
        code=LinearCode.from_parity_check(H),
        t=0,  # no guaranteed radius
        decoder=lambda y: bitflip_decode(H, y).codeword,
        params={
            "family": "mdpc",
            "r": params.r,
            "w": params.w,
            "blocks": params.blocks,
            "h": [[int(i) for i in np.flatnonzero(h)] for h in rows],
        },
    )


# ---------------------------------------------------------------------------
# Reed–Muller codes
# ---------------------------------------------------------------------------

def reed_muller_generator(m: int, r: int) -> FieldArray:
    """Evaluations of the monomials of degree ≤ r at all points of GF(2)^m.

    Point j has coordinates x_i = bit i of j; monomials come in graded
    lexicographic order (1, x1, ..., xm, x1x2, ...).
    """
    if not 0 <= r <= m <= 10:
        raise ParameterError("need 0 <= r <= m <= 10")
    points = (np.arange(2**m)[:, None] >> np.arange(m)) & 1
    rows = []
    for degree in range(r + 1):
        for mono in itertools.combinations(range(m), degree):
            rows.append(np.prod(points[:, list(mono)], axis=1) if mono else np.ones(2**m, dtype=int))
    return galois.GF(2)(np.array(rows, dtype=int))


def reed_muller_dimension(m: int, r: int) -> int:
    return sum(math.comb(m, i) for i in range(r + 1))


# ---------------------------------------------------------------------------
# Rank metric
# ---------------------------------------------------------------------------

def rank_weight(x: FieldArray) -> int:
    """Dimension over the base field of the span of the coordinates."""
    return rank(expand(x))


def rank_support(x: FieldArray) -> FieldArray:
    """Basis (coefficient rows) of the GF(q)-span of the coordinates of x."""
    return row_space_basis(expand(x))


def rank_distance(x: FieldArray, y: FieldArray) -> int:
    return rank_weight(x - y)


def frobenius(x: FieldArray, power: int = 1) -> FieldArray:
    """Entrywise x^(p^power), the power taken modulo the extension degree."""
    gf = type(x)
    m = int(gf.degree)
    return x ** (int(gf.characteristic) ** (power % m))


def random_rank_error(gf: type[FieldArray], n: int, r: int, seed) -> FieldArray:
    """Uniform-ish vector of length n and rank weight exactly r."""
    if not 0 <= r <= min(n, int(gf.degree)):
        raise ParameterError(f"rank weight {r} impossible for length {n} over {FieldSpec.of(gf)}")
    rng = rng_from(seed)
    prime = galois.GF(int(gf.characteristic))
    while True:
        support = gf.Random(r, seed=rng)
        coeffs = prime.Random((n, r), seed=rng)
        e = (gf(np.asarray(coeffs)) * support).sum(axis=1) if r else gf.Zeros(n)
        if rank_weight(e) == r:
            return e


def moore_matrix(s: int, k: int, g: FieldArray) -> FieldArray:
    """k×n matrix with entry (i, j) = g_j^(q^(s·i))."""
    gf = type(g)
    M = gf.Zeros((k, g.size))
    for i in range(k):
        M[i] = frobenius(g, s * i)
    return M


@dataclass(frozen=True, eq=False)
class GabidulinParams:
    """Points g independent over the base field, dimension k, Frobenius power s."""

    g: FieldArray
    k: int
    s: int = 1

    def __post_init__(self) -> None:
        m = int(type(self.g).degree)
        n = self.g.size
        if not 1 <= self.k <= n <= m:
            raise ParameterError(f"need 1 <= k <= n <= m, got k={self.k}, n={n}, m={m}")
        if math.gcd(self.s, m) != 1:
            raise ParameterError(f"s={self.s} is not coprime to m={m}")
        if rank_weight(self.g) != n:
            raise DependentPoints("Gabidulin points are linearly dependent over the base field")

    @property
    def n(self) -> int:
        return int(self.g.size)


def gabidulin_code(p: GabidulinParams) -> LinearCode:
    return LinearCode(moore_matrix(p.s, p.k, p.g))


def random_gabidulin_params(spec: FieldSpec, n: int, k: int, seed, s: int = 1) -> GabidulinParams:
    rng = rng_from(seed)
    gf = spec.gf
    while True:
        g = gf.Random(n, seed=rng)
        if rank_weight(g) == n:
            return GabidulinParams(g, k, s)


def bruteforce_rank_decode(
    C: LinearCode, y: FieldArray, t: int, budget: int | None = None
) -> FieldArray:
    """Find the codeword within rank distance t by enumerating error supports.

    For every tuple (v_1..v_t') of field elements the error is assumed to
    satisfy e_j ∈ span(v); its base-field coordinates then solve a linear
    system against the syndrome. Supports are tried in increasing dimension.
    """
    gf = C.gf
    Q = int(gf.order)
    budget = 2**24 if budget is None else budget
    if Q**t > budget:
        raise TooLarge(f"{Q}^{t} support candidates exceed the budget {budget}")
    s = syndrome(C, y)
    if not np.count_nonzero(np.asarray(s)):
        return y.copy()
    H = C.parity_check
    n = C.n
    prime = galois.GF(int(gf.characteristic))
    target = prime(np.asarray(expand(s)).reshape(-1))
    Ht = H.T
    for dim in range(1, t + 1):
        for combo in itertools.combinations(range(1, Q), dim):
            v = gf(list(combo))
            # row (j, l) is the expansion of v_l·H[:, j]
            products = Ht[:, None, :] * v[None, :, None]
            A = prime(np.asarray(expand(products.reshape(-1))).reshape(n * dim, -1))
            try:
                X = solve_linear(A, target)
            except NoSolution:
                continue
            coeffs = gf(np.asarray(X).reshape(n, dim))
            e = (coeffs * v).sum(axis=1)
            if rank_weight(e) <= t:
                return y - e
    raise DecodeFailure(f"no codeword within rank distance {t}")


def gabidulin_family(p: GabidulinParams) -> DecodableCode:
    code = gabidulin_code(p)
    t = (p.n - p.k) // 2
    return DecodableCode(
        name=f"gabidulin[{p.n},{p.k}]",
        code=code,
        t=t,
        decoder=lambda y: bruteforce_rank_decode(code, y, t),
        params={
            "family": "gabidulin",
            "field": spec_to_json(FieldSpec.of(type(p.g))),
            "g": ints(p.g),
            "k": p.k,
            "s": p.s,
        },
        metric="rank",
    )


# ---------------------------------------------------------------------------
# Rebuilding from parameters
# ---------------------------------------------------------------------------

def family_from_params(data: dict[str, Any]) -> DecodableCode:
    """Rebuild a DecodableCode from its ``params`` dict."""
    tag = data.get("family")
    if tag == "hamming":
        return hamming_family(int(data["r"]))
    if tag == "repetition":
        return repetition_family(int(data["n"]), spec_from_json(data["field"]))
    if tag == "grs":
        gf = spec_from_json(data["field"]).gf
        return grs_family(GrsParams(gf(data["alpha"]), gf(data["beta"]), int(data["k"])))
    if tag == "goppa":
        gf = spec_from_json(data["field"]).gf
        return goppa_family(GoppaParams(poly(data["g"], gf), gf(data["alpha"])))
    if tag == "gabidulin":
        gf = spec_from_json(data["field"]).gf
        return gabidulin_family(GabidulinParams(gf(data["g"]), int(data["k"]), int(data.get("s", 1))))
    if tag == "mdpc":
        params = MdpcParams(int(data["r"]), int(data["w"]), int(data.get("blocks", 2)))
        rows = []
        for support in data["h"]:
            h = np.zeros(params.r, dtype=int)
            h[list(support)] = 1
            rows.append(h)
        H = circulant_parity_check(rows)
        return DecodableCode(
            name=f"mdpc[{params.n}] r={params.r} w={params.w}",
            code=LinearCode.from_parity_check(H),
            t=0,
            decoder=lambda y: bitflip_decode(H, y).codeword,
            params=dict(data),
        )
    raise ParameterError(f"unknown code family {tag!r}")
