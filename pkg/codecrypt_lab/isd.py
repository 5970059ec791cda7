"""
Syndrome-decoding solvers.

Given H, s and t, find e with e·Hᵀ = s and wt(e) ≤ t:

- brute_force_sdp: exhaustive oracle, lexicographically least minimum-weight answer
- prange, lee_brickell, stern: information-set decoding over any GF(q)
- merge, bjmm: the representation technique over GF(2)
- wagner: generalized-birthday decoding on one or two levels

Every solver draws its randomness from one numpy Generator, so identical
(instance, parameters, seed) give identical information-set transcripts
and identical answers. Every answer is re-checked by IsdSolution.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from codecrypt_lab.algebra import (
    FieldArray,
    FieldSpec,
    Permutation,
    hstack,
    random_full_rank,
    random_vector_of_weight,
    rng_from,
    systematic_form,
    weight,
)
from codecrypt_lab.errors import (
    DimMismatch,
    IterationLimit,
    NoSolution,
    NoSolutionFound,
    NotAValidSolution,
    NotInformationSet,
    ParameterError,
    TooLarge,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2**24


# ---------------------------------------------------------------------------
# Instances and solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SdpInstance:
    """Parity-check matrix H, syndrome s = e·Hᵀ and target weight t."""

    H: FieldArray
    s: FieldArray
    t: int

    def __post_init__(self) -> None:
        if self.H.ndim != 2 or self.s.shape != (self.H.shape[0],):
            raise DimMismatch(f"syndrome shape {self.s.shape} does not fit H {self.H.shape}")
        if type(self.s) is not type(self.H):
            raise ParameterError("H and s live in different fields")
        if not 0 <= self.t <= self.n:
            raise ParameterError(f"t = {self.t} outside [0, {self.n}]")

    @property
    def gf(self) -> type[FieldArray]:
        return type(self.H)

    @property
    def q(self) -> int:
        return int(self.gf.order)

    @property
    def n(self) -> int:
        return int(self.H.shape[1])

    @property
    def k(self) -> int:
        return self.n - int(self.H.shape[0])

    def accepts(self, e: FieldArray) -> bool:
        if e.shape != (self.n,) or weight(e) > self.t:
            return False
        return np.array_equal(np.asarray(e @ self.H.T), np.asarray(self.s))

    def reduced(self) -> "SdpInstance":
        """An equivalent instance whose H has full row rank.

        Raises NoSolution when a dependent row carries a nonzero syndrome.
        """
        gf, r, n = self.gf, self.H.shape[0], self.n
        if r == 0:
            return self
        reduced = hstack(gf, self.H, self.s.reshape(r, 1)).row_reduce(ncols=n)
        R, rhs = reduced[:, :n], reduced[:, n]
        keep = np.count_nonzero(np.asarray(R), axis=1) > 0
        if np.count_nonzero(np.asarray(rhs)[~keep]):
            raise NoSolution("syndrome is outside the column space of H")
        if keep.all():
            return self
        return SdpInstance(R[keep], rhs[keep], self.t)


@dataclass(frozen=True, eq=False)
class IsdSolution:
    """A validated answer: e·Hᵀ = s and wt(e) ≤ t, checked on construction."""

    instance: SdpInstance
    e: FieldArray
    algorithm: str
    iterations: int = 0
    draws: int = 0
    elapsed: float = 0.0
    transcript: tuple[tuple[int, ...], ...] = ()
    stats: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.instance.accepts(self.e):
            raise NotAValidSolution(f"{self.algorithm} produced an invalid error vector")

    @property
    def weight(self) -> int:
        return weight(self.e)

    def to_json(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "e": [int(v) for v in np.asarray(self.e)],
            "weight": self.weight,
            "iterations": self.iterations,
            "draws": self.draws,
            "elapsed_s": round(self.elapsed, 6),
            "stats": self.stats,
        }


def random_instance(
    spec: FieldSpec, n: int, k: int, t: int, seed
) -> tuple[SdpInstance, FieldArray]:
    """Random full-rank H with a planted error of weight exactly t."""
    if not 0 < k < n:
        raise ParameterError(f"need 0 < k < n, got n={n}, k={k}")
    rng = rng_from(seed)
    gf = spec.gf
    H = random_full_rank(gf, (n - k, n), rng)
    e = random_vector_of_weight(gf, n, t, rng)
    return SdpInstance(H, e @ H.T, t), e


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _weight_patterns(m: int, v: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions and values of every word of length m and weight v.

    Supports come in lexicographic order, and for each support the nonzero
    values in lexicographic order.
    """
    if v == 0:
        return np.zeros((1, 0), dtype=np.int64), np.zeros((1, 0), dtype=np.int64)
    if v > m:
        return np.zeros((0, v), dtype=np.int64), np.zeros((0, v), dtype=np.int64)
    combos = np.array(list(itertools.combinations(range(m), v)), dtype=np.int64)
    values = np.array(list(itertools.product(range(1, q), repeat=v)), dtype=np.int64)
    pos = np.repeat(combos, len(values), axis=0)
    vals = np.tile(values, (len(combos), 1))
    return pos, vals


def _dense(pos: np.ndarray, vals: np.ndarray, m: int) -> np.ndarray:
    W = np.zeros((pos.shape[0], m), dtype=np.int64)
    if pos.size:
        np.put_along_axis(W, pos, vals, axis=1)
    return W


def _pattern_sums(
    pos: np.ndarray, vals: np.ndarray, cols: FieldArray, intermediate: bool
) -> FieldArray:
    """Row i is Σ_l vals[i,l]·cols[pos[i,l]].

    With ``intermediate`` the sums are built level by level, each distinct
    prefix computed once from its parent prefix.
    """
    gf = type(cols)
    N, v = pos.shape
    r = cols.shape[1]
    if v == 0:
        return gf.Zeros((N, r))
    if not intermediate:
        return gf(_dense(pos, vals, cols.shape[0])) @ cols
    sums = inverse = None
    for level in range(1, v + 1):
        key = np.concatenate([pos[:, :level], vals[:, :level]], axis=1)
        _, first, inv = np.unique(key, axis=0, return_index=True, return_inverse=True)
        term = gf(vals[first, level - 1])[:, None] * cols[pos[first, level - 1]]
        sums = term if level == 1 else sums[inverse[first]] + term
        inverse = np.asarray(inv).reshape(-1)
    return sums[inverse]


def _join(keys1: np.ndarray, keys2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All index pairs (i, j) with keys1[i] == keys2[j], by sort and scan."""
    order = np.argsort(keys2, kind="stable")
    sorted2 = keys2[order]
    lo = np.searchsorted(sorted2, keys1, side="left")
    hi = np.searchsorted(sorted2, keys1, side="right")
    counts = hi - lo
    total = int(counts.sum())
    ii = np.repeat(np.arange(keys1.size), counts)
    starts = np.repeat(lo - np.cumsum(counts) + counts, counts)
    jj = order[starts + np.arange(total)]
    return ii, jj


def _keys(values: np.ndarray, q: int) -> np.ndarray:
    """Integer key of each row of small field values (base-q digits)."""
    values = np.asarray(values, dtype=np.int64)
    if values.shape[1] == 0:
        return np.zeros(values.shape[0], dtype=np.int64)
    place = q ** np.arange(values.shape[1], dtype=np.int64)
    return values @ place


def _draw_set(rng: np.random.Generator, n: int, k: int) -> tuple[int, ...]:
    return tuple(sorted(int(i) for i in rng.choice(n, size=k, replace=False)))


def _default_iters(expected: float) -> int:
    return 100 * max(1, math.ceil(expected))


def _systematic(inst: SdpInstance, info: Sequence[int]):
    """(A, s', I, J) with U·H = identity on J and A = (U·H)[:, I]."""
    U, perm = systematic_form(inst.H, info)
    k = inst.k
    I, J = list(perm.image[:k]), list(perm.image[k:])
    UH = U @ inst.H
    return UH[:, I], inst.s @ U.T, I, J


def _assemble(gf, n: int, positions: Sequence[int], values: FieldArray, out: FieldArray | None = None):
    e = gf.Zeros(n) if out is None else out
    if len(positions):
        e[list(positions)] = values
    return e


class _Clock:
    def __init__(self, time_budget: float | None):
        self.start = time.perf_counter()
        self.budget = time_budget

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def expired(self) -> bool:
        return self.budget is not None and self.elapsed > self.budget


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------

def sdp_search_space(n: int, t: int, q: int) -> int:
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))


def brute_force_sdp(inst: SdpInstance, budget: int | None = None, chunk: int = 2048) -> IsdSolution:
    """The lexicographically least solution among those of minimum weight.

    Raises NoSolution after exhausting every vector of weight ≤ t.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    size = sdp_search_space(inst.n, inst.t, inst.q)
    if size > budget:
        raise TooLarge(f"{size} candidate errors exceed the budget {budget}")
    clock = _Clock(None)
    gf, n, q = inst.gf, inst.n, inst.q
    target = np.asarray(inst.s)
    Ht = inst.H.T
    if not np.count_nonzero(target):
        return IsdSolution(inst, gf.Zeros(n), "brute", elapsed=clock.elapsed)
    for w in range(1, inst.t + 1):
        values = gf(np.array(list(itertools.product(range(1, q), repeat=w)), dtype=np.int64))
        hits: list[tuple[int, ...]] = []
        combos = itertools.combinations(range(n), w)
        while True:
            block = list(itertools.islice(combos, chunk))
            if not block:
                break
            pos = np.array(block, dtype=np.int64)
            cols = Ht[pos]  # (C, w, r)
            syn = (cols[:, None, :, :] * values[None, :, :, None]).sum(axis=2)
            match = np.all(np.asarray(syn) == target, axis=-1)
            for ci, vi in zip(*np.nonzero(match)):
                e = np.zeros(n, dtype=np.int64)
                e[pos[ci]] = np.asarray(values[vi])
                hits.append(tuple(int(x) for x in e))
        if hits:
            best = min(hits)
            logger.debug("brute force: %d solutions of weight %d", len(hits), w)
            return IsdSolution(
                inst, gf(list(best)), "brute", elapsed=clock.elapsed, stats={"solutions_at_min": len(hits)}
            )
    raise NoSolution(f"no error of weight <= {inst.t} has this syndrome")


# ---------------------------------------------------------------------------
# Success probabilities
# ---------------------------------------------------------------------------

def success_probability(algorithm: str, n: int, k: int, t: int, **params: int) -> float:
    """Chance that one iteration sees the weight distribution it looks for."""
    total = math.comb(n, t)
    if algorithm == "prange":
        good = math.comb(n - k, t)
    elif algorithm == "lee_brickell":
        v = params.get("v", 0)
        good = math.comb(k, v) * math.comb(n - k, t - v)
    elif algorithm == "stern":
        v, ell = params.get("v", 0), params.get("ell", 0)
        m1 = params.get("m1", k // 2)
        good = math.comb(m1, v) * math.comb(k - m1, v) * math.comb(n - k - ell, t - 2 * v)
    elif algorithm == "bjmm":
        v, ell = params.get("v", 0), params.get("ell", 0)
        good = math.comb(k + ell, v) * math.comb(n - k - ell, t - v)
    else:
        raise ParameterError(f"unknown algorithm {algorithm!r}")
    return good / total


def expected_iterations(algorithm: str, n: int, k: int, t: int, **params: int) -> float:
    p = success_probability(algorithm, n, k, t, **params)
    return math.inf if p == 0 else 1.0 / p


# ---------------------------------------------------------------------------
# Prange and Lee–Brickell
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PrangeStep:
    """One information set: systematic matrix, transformed syndrome, verdict."""

    info: tuple[int, ...]
    UH: FieldArray
    s_prime: FieldArray
    accepted: bool


def prange_iteration(inst: SdpInstance, info: Iterable[int]) -> PrangeStep:
    """Bring H to systematic form on the complement of ``info`` and test s'.

    Raises NotInformationSet when the complement columns are singular.
    """
    info = tuple(sorted(int(i) for i in info))
    U, _ = systematic_form(inst.H, info)
    s_prime = inst.s @ U.T
    return PrangeStep(info, U @ inst.H, s_prime, weight(s_prime) <= inst.t)


def _lee_brickell_step(inst: SdpInstance, info: Sequence[int], v: int, intermediate: bool = False):
    A, s_prime, I, J = _systematic(inst, info)
    gf = inst.gf
    pos, vals = _weight_patterns(len(I), v, inst.q)
    sums = _pattern_sums(pos, vals, A.T, intermediate)
    residual = s_prime - sums
    weights = np.count_nonzero(np.asarray(residual), axis=1)
    good = np.flatnonzero(weights <= inst.t - v)
    if good.size == 0:
        return None
    i = int(good[0])
    e = _assemble(gf, inst.n, J, residual[i])
    return _assemble(gf, inst.n, [I[p] for p in pos[i]], gf(vals[i]), e)


def _isd_loop(
    inst: SdpInstance,
    name: str,
    step,
    seed,
    max_iters: int,
    information_sets: Iterable[Sequence[int]] | None,
    time_budget: float | None,
    record: bool,
) -> IsdSolution:
    original = inst
    inst = inst.reduced()
    rng = rng_from(seed)
    clock = _Clock(time_budget)
    forced = iter(information_sets) if information_sets is not None else None
    transcript: list[tuple[int, ...]] = []
    iterations = draws = 0
    stats: dict[str, Any] = {}
    while draws < max_iters:
        if forced is not None:
            info = next(forced, None)
            if info is None:
                break
            info = tuple(sorted(int(i) for i in info))
        else:
            info = _draw_set(rng, inst.n, inst.k)
        draws += 1
        if record:
            transcript.append(info)
        try:
            e = step(inst, info, rng, stats)
        except NotInformationSet:
            continue
        iterations += 1
        if e is not None:
            logger.debug("%s: solved after %d iterations (%d draws)", name, iterations, draws)
            return IsdSolution(
                original, e, name, iterations, draws, clock.elapsed, tuple(transcript), stats
            )
        if clock.expired():
            break
    logger.debug("%s: gave up after %d iterations (%d draws)", name, iterations, draws)
    raise IterationLimit(f"{name} found no solution in {draws} draws")


def prange(
    inst: SdpInstance,
    seed=None,
    max_iters: int | None = None,
    *,
    information_sets: Iterable[Sequence[int]] | None = None,
    time_budget: float | None = None,
    record: bool = False,
) -> IsdSolution:
    """Guess information sets until s' = s·Uᵀ has weight ≤ t; then e = (s' on J, 0 on I)."""
    if max_iters is None:
        max_iters = _default_iters(expected_iterations("prange", inst.n, inst.k, inst.t))

    def step(reduced, info, rng, stats):
        A, s_prime, I, J = _systematic(reduced, info)
        if weight(s_prime) > reduced.t:
            return None
        return _assemble(reduced.gf, reduced.n, J, s_prime)

    return _isd_loop(inst, "prange", step, seed, max_iters, information_sets, time_budget, record)


def lee_brickell(
    inst: SdpInstance,
    v: int = 1,
    seed=None,
    max_iters: int | None = None,
    *,
    information_sets: Iterable[Sequence[int]] | None = None,
    time_budget: float | None = None,
    record: bool = False,
) -> IsdSolution:
    """Prange allowing exactly v errors inside the information set."""
    if not 0 <= v <= min(inst.k, inst.t):
        raise ParameterError(f"need 0 <= v <= min(k, t), got v={v}")
    if max_iters is None:
        max_iters = _default_iters(expected_iterations("lee_brickell", inst.n, inst.k, inst.t, v=v))

    def step(reduced, info, rng, stats):
        return _lee_brickell_step(reduced, info, v)

    return _isd_loop(inst, "lee_brickell", step, seed, max_iters, information_sets, time_budget, record)


# ---------------------------------------------------------------------------
# Stern
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SternParams:
    """Window ℓ, weight v per half, and the size m1 of the first half (default ⌊k/2⌋)."""

    ell: int
    v: int
    m1: int | None = None

    def resolve(self, n: int, k: int, t: int) -> tuple[int, int, int]:
        m1 = k // 2 if self.m1 is None else self.m1
        m2 = k - m1
        if not 0 <= self.ell < n - k:
            raise ParameterError(f"need 0 <= ell < n-k, got ell={self.ell}")
        if not 0 <= self.v <= min(m1, m2, t // 2):
            raise ParameterError(f"need v <= min(m1, m2, t/2), got v={self.v}")
        return self.ell, self.v, m1


def stern_iteration(
    inst: SdpInstance,
    params: SternParams,
    info: Sequence[int],
    rng: np.random.Generator,
    *,
    early_abort: bool = True,
    intermediate_sums: bool = True,
) -> tuple[FieldArray | None, int]:
    """One Stern iteration on a full-rank instance: (solution or None, collisions)."""
    ell, v, m1 = params.resolve(inst.n, inst.k, inst.t)
    A, s_prime, I, J = _systematic(inst, info)
    gf, q, r = inst.gf, inst.q, inst.H.shape[0]
    split = rng.permutation(len(I))
    X, Y = np.sort(split[:m1]), np.sort(split[m1:])
    Z = np.sort(rng.choice(r, size=ell, replace=False)) if ell else np.zeros(0, dtype=np.int64)

    posX, valsX = _weight_patterns(X.size, v, q)
    posY, valsY = _weight_patterns(Y.size, v, q)
    SX = _pattern_sums(posX, valsX, A[:, X].T, intermediate_sums)
    SY = _pattern_sums(posY, valsY, A[:, Y].T, intermediate_sums)

    keysX = _keys(np.asarray(SX[:, Z]), q)
    keysY = _keys(np.asarray(s_prime[Z] - SY[:, Z]), q)
    ii, jj = _join(keysX, keysY)
    collisions = int(ii.size)
    if collisions == 0:
        return None, 0

    budget = inst.t - 2 * v
    if early_abort and r > 2 * (budget + 1):
        head = np.arange(min(r, 2 * (budget + 1)))
        partial = s_prime[head] - SX[ii][:, head] - SY[jj][:, head]
        alive = np.count_nonzero(np.asarray(partial), axis=1) <= budget
        ii, jj = ii[alive], jj[alive]
        if ii.size == 0:
            return None, collisions
    residual = s_prime - SX[ii] - SY[jj]
    weights = np.count_nonzero(np.asarray(residual), axis=1)
    good = np.flatnonzero(weights <= budget)
    if good.size == 0:
        return None, collisions
    g = int(good[0])
    i, j = int(ii[g]), int(jj[g])
    e = _assemble(gf, inst.n, J, residual[g])
    e = _assemble(gf, inst.n, [I[X[p]] for p in posX[i]], gf(valsX[i]), e)
    e = _assemble(gf, inst.n, [I[Y[p]] for p in posY[j]], gf(valsY[j]), e)
    return e, collisions


def stern(
    inst: SdpInstance,
    params: SternParams,
    seed=None,
    max_iters: int | None = None,
    *,
    early_abort: bool = True,
    intermediate_sums: bool = True,
    information_sets: Iterable[Sequence[int]] | None = None,
    time_budget: float | None = None,
    record: bool = False,
) -> IsdSolution:
    """Split the information set in two halves of weight v each and look
    for collisions on ℓ rows of the systematic form."""
    ell, v, m1 = params.resolve(inst.n, inst.k, inst.t)
    if max_iters is None:
        max_iters = _default_iters(
            expected_iterations("stern", inst.n, inst.k, inst.t, v=v, ell=ell, m1=m1)
        )

    def step(reduced, info, rng, stats):
        e, collisions = stern_iteration(
            reduced, params, info, rng, early_abort=early_abort, intermediate_sums=intermediate_sums
        )
        stats["collisions"] = stats.get("collisions", 0) + collisions
        return e

    return _isd_loop(inst, "stern", step, seed, max_iters, information_sets, time_budget, record)


# ---------------------------------------------------------------------------
# Merge and BJMM (binary)
# ---------------------------------------------------------------------------

def _bit_keys(L: np.ndarray, B: np.ndarray, u: int) -> np.ndarray:
    if u == 0 or L.shape[0] == 0:
        return np.zeros(L.shape[0], dtype=np.int64)
    prods = (L @ B[:u].T) % 2
    return prods @ (np.int64(1) << np.arange(u, dtype=np.int64))


def merge(
    L1: np.ndarray,
    L2: np.ndarray,
    u: int,
    target: np.ndarray,
    w: int | None,
    B: np.ndarray,
    *,
    unique: bool = True,
) -> np.ndarray:
    """L1 ⋈ L2: sums x + y with (B·xᵀ)|u = (B·yᵀ)|u + target and weight w.

    Lists are 0/1 integer arrays (one word per row). With ``unique`` the
    result is deduplicated and sorted; ``w=None`` keeps every weight.
    """
    L1 = np.asarray(L1, dtype=np.int64)
    L2 = np.asarray(L2, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if u > B.shape[0]:
        raise ParameterError(f"cannot merge on {u} positions with {B.shape[0]} rows")
    width = B.shape[1]
    if L1.shape[0] == 0 or L2.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    tkey = int(np.asarray(target[:u], dtype=np.int64) @ (np.int64(1) << np.arange(u, dtype=np.int64))) if u else 0
    ii, jj = _join(_bit_keys(L1, B, u), _bit_keys(L2, B, u) ^ tkey)
    sums = (L1[ii] + L2[jj]) % 2
    if w is not None:
        sums = sums[sums.sum(axis=1) == w]
    if unique and sums.shape[0]:
        sums = np.unique(sums, axis=0)
    return sums


@dataclass(frozen=True)
class BjmmParams:
    """Window ℓ, weight v on the k+ℓ columns, overlaps ε1 and ε2, merge widths u1 ≥ u2."""

    ell: int
    v: int
    eps1: int = 0
    eps2: int = 0
    u1: int | None = None
    u2: int | None = None

    def weights(self) -> tuple[int, int]:
        if self.v % 2:
            raise ParameterError("v must be even")
        v1 = self.v // 2 + self.eps1
        if v1 % 2:
            raise ParameterError(f"v1 = {v1} must be even")
        return v1, v1 // 2 + self.eps2

    def resolve(self, n: int, k: int, t: int) -> tuple[int, int]:
        """Merge widths, defaulting to log2 of the representation counts."""
        if not 0 <= self.ell <= n - k:
            raise ParameterError(f"need 0 <= ell <= n-k, got {self.ell}")
        if not 0 < self.v <= min(t, k + self.ell):
            raise ParameterError(f"need 0 < v <= min(t, k+ell), got {self.v}")
        v1, _ = self.weights()
        width = k + self.ell
        u1 = self.u1
        if u1 is None:
            reps = math.comb(self.v, self.v // 2) * math.comb(width - self.v, self.eps1)
            u1 = min(self.ell, math.ceil(math.log2(reps)) if reps > 1 else 0)
        u2 = self.u2
        if u2 is None:
            reps = math.comb(v1, v1 // 2) * math.comb(width - v1, self.eps2)
            u2 = min(u1, math.ceil(math.log2(reps)) if reps > 1 else 0)
        if not 0 <= u2 <= u1 <= self.ell:
            raise ParameterError(f"need 0 <= u2 <= u1 <= ell, got u1={u1}, u2={u2}")
        return u1, u2


def _partial_elimination(H: FieldArray, s: FieldArray, perm: Permutation, ell: int):
    """U·H·P = [[Id, A], [0, B]] with an (n−k−ℓ) identity, or None if singular."""
    gf = type(H)
    r = H.shape[0]
    top = r - ell
    HP = perm.apply(H)
    reduced = hstack(gf, HP, gf.Identity(r)).row_reduce(ncols=top)
    R, U = reduced[:, : H.shape[1]], reduced[:, H.shape[1]:]
    if not np.array_equal(np.asarray(R[:top, :top]), np.eye(top, dtype=np.int64)):
        return None
    s_prime = s @ U.T
    return R[:top, top:], R[top:, top:], s_prime[:top], s_prime[top:]


def _half_lists(width: int, weight_: int, rng: np.random.Generator) -> list[tuple[np.ndarray, np.ndarray]]:
    """Base-list pairs on a random balanced partition of the columns.

    An odd weight is split both ways, so every weight-``weight_`` word whose
    support divides as ⌈w/2⌉ + ⌊w/2⌋ between the halves is reachable.
    """
    cols = rng.permutation(width)
    P1, P2 = np.sort(cols[: width // 2]), np.sort(cols[width // 2:])

    def base(part: np.ndarray, w: int) -> np.ndarray:
        pos, _ = _weight_patterns(part.size, w, 2)
        if pos.shape[0] == 0:
            return np.zeros((0, width), dtype=np.int64)
        W = np.zeros((pos.shape[0], width), dtype=np.int64)
        if w:
            W[np.arange(pos.shape[0])[:, None], part[pos]] = 1
        return W

    hi, lo = (weight_ + 1) // 2, weight_ // 2
    pairs = [(base(P1, hi), base(P2, lo))]
    if hi != lo:
        pairs.append((base(P1, lo), base(P2, hi)))
    return pairs


def bjmm_iteration(
    inst: SdpInstance, params: BjmmParams, rng: np.random.Generator
) -> tuple[FieldArray | None, dict[str, int]]:
    """One BJMM iteration on a full-rank binary instance."""
    u1, u2 = params.resolve(inst.n, inst.k, inst.t)
    v1, v2 = params.weights()
    ell, v = params.ell, params.v
    perm = Permutation(tuple(int(i) for i in rng.permutation(inst.n)))
    pge = _partial_elimination(inst.H, inst.s, perm, ell)
    if pge is None:
        raise NotInformationSet("partial elimination failed")
    A, B, s1, s2 = (np.asarray(x).astype(np.int64) for x in pge)
    width = inst.k + ell

    t1_1 = rng.integers(0, 2, size=u1)
    t2_1 = (s2[:u1] + t1_1) % 2
    t1_2 = rng.integers(0, 2, size=u2)
    t3_2 = rng.integers(0, 2, size=u2)
    targets2 = [t1_2, (t1_1[:u2] + t1_2) % 2, t3_2, (t2_1[:u2] + t3_2) % 2]

    halves = _half_lists(width, v2, rng)
    level2 = []
    for target in targets2:
        stacked = np.vstack([merge(b1, b2, u2, target, v2, B) for b1, b2 in halves])
        level2.append(np.unique(stacked, axis=0) if stacked.shape[0] else stacked)
    level1 = [
        merge(level2[0], level2[1], u1, t1_1, v1, B),
        merge(level2[2], level2[3], u1, t2_1, v1, B),
    ]
    final = merge(level1[0], level1[1], ell, s2, v, B)
    sizes = {
        "level2": int(sum(len(x) for x in level2)),
        "level1": int(sum(len(x) for x in level1)),
        "final": int(final.shape[0]),
    }
    if final.shape[0] == 0:
        return None, sizes
    e1 = (s1[None, :] + final @ A.T) % 2
    good = np.flatnonzero(e1.sum(axis=1) <= inst.t - v)
    if good.size == 0:
        return None, sizes
    g = int(good[0])
    permuted = np.concatenate([e1[g], final[g]])
    e = perm.inverse().apply(permuted)
    return inst.gf(e), sizes


def bjmm(
    inst: SdpInstance,
    params: BjmmParams,
    seed=None,
    max_iters: int | None = None,
    *,
    time_budget: float | None = None,
) -> IsdSolution:
    """Binary BJMM: three levels of merges over overlapping representations."""
    if inst.q != 2:
        raise ParameterError("bjmm works over GF(2) only")
    original = inst
    inst = inst.reduced()
    params.resolve(inst.n, inst.k, inst.t)
    if max_iters is None:
        max_iters = _default_iters(
            expected_iterations("bjmm", inst.n, inst.k, inst.t, v=params.v, ell=params.ell)
        )
    rng = rng_from(seed)
    clock = _Clock(time_budget)
    totals = {"level2": 0, "level1": 0, "final": 0}
    iterations = 0
    for draw in range(1, max_iters + 1):
        try:
            e, sizes = bjmm_iteration(inst, params, rng)
        except NotInformationSet:
            continue
        iterations += 1
        for key in totals:
            totals[key] += sizes[key]
        if e is not None:
            logger.debug("bjmm: solved after %d iterations", iterations)
            return IsdSolution(original, e, "bjmm", iterations, draw, clock.elapsed, stats=totals)
        if clock.expired():
            break
    raise IterationLimit(f"bjmm found no solution in {max_iters} draws")


# ---------------------------------------------------------------------------
# Wagner / generalized birthday
# ---------------------------------------------------------------------------

def wagner_expected_list_size(k: int, q: int, ell: int, v: int, schedule: Sequence[int]) -> float:
    """Expected size of the final list: each merge multiplies two list sizes
    and divides by q for every newly matched coordinate."""
    a = len(schedule)
    w = v // 2**a
    sizes = [
        float(math.comb(b.size, w) * (q - 1) ** w)
        for b in np.array_split(np.arange(k + ell), 2**a)
    ]
    matched = 0
    for u in schedule:
        sizes = [x * y / float(q) ** (u - matched) for x, y in zip(sizes[0::2], sizes[1::2])]
        matched = u
    return sizes[0]


def wagner(
    inst: SdpInstance,
    a: int,
    ell: int,
    v: int,
    u: Sequence[int] | None = None,
    seed=None,
    max_iters: int = 1,
) -> IsdSolution:
    """Solve the ℓ-row subproblem with 2^a base lists and a merges.

    ``u`` is the merge schedule u_1 ≤ … ≤ u_a = ℓ (default: equal steps).
    Blocks of the k+ℓ columns are as equal as possible when 2^a does not
    divide k+ℓ. Raises NoSolutionFound after ``max_iters`` attempts.
    """
    if a not in (1, 2):
        raise ParameterError("wagner supports a = 1 or a = 2 levels")
    if v % 2**a:
        raise ParameterError(f"v = {v} must be divisible by 2^a = {2**a}")
    original = inst
    inst = inst.reduced()
    if not 0 <= ell <= inst.n - inst.k:
        raise ParameterError(f"need 0 <= ell <= n-k, got {ell}")
    schedule = list(u) if u is not None else [ell * (i + 1) // a for i in range(a)]
    if len(schedule) != a or schedule[-1] != ell or sorted(schedule) != schedule:
        raise ParameterError(f"merge schedule {schedule} must rise to ell = {ell}")
    gf, q = inst.gf, inst.q
    rng = rng_from(seed)
    clock = _Clock(None)
    width = inst.k + ell
    w = v // 2**a
    expected = wagner_expected_list_size(inst.k, q, ell, v, schedule)
    for attempt in range(1, max_iters + 1):
        perm = Permutation(tuple(int(i) for i in rng.permutation(inst.n)))
        pge = _partial_elimination(inst.H, inst.s, perm, ell)
        if pge is None:
            continue
        A, B, s1, s2 = pge
        lists = []
        for j, block in enumerate(np.array_split(np.arange(width), 2**a)):
            pos, vals = _weight_patterns(block.size, w, q)
            E = np.zeros((pos.shape[0], width), dtype=np.int64)
            if w:
                np.put_along_axis(E, block[pos], vals, axis=1)
            X = gf(E) @ B.T
            if j == 0:
                X = X - s2
            lists.append((E, X))
        for width_u in schedule:
            merged = []
            for (E1, X1), (E2, X2) in zip(lists[0::2], lists[1::2]):
                ii, jj = _join(
                    _keys(np.asarray(X1[:, :width_u]), q), _keys(np.asarray(-X2[:, :width_u]), q)
                )
                # blocks are disjoint, so integer addition is the field sum
                merged.append((E1[ii] + E2[jj], X1[ii] + X2[jj]))
            lists = merged
        E = lists[0][0]
        if E.shape[0] == 0:
            continue
        e2 = gf(E)
        e1 = s1 - e2 @ A.T
        good = np.flatnonzero(np.count_nonzero(np.asarray(e1), axis=1) <= inst.t - v)
        if good.size == 0:
            continue
        g = int(good[0])
        permuted = np.concatenate([np.asarray(e1[g]), np.asarray(e2[g])])
        e = gf(perm.inverse().apply(permuted))
        return IsdSolution(
            original, e, "wagner", attempt, attempt, clock.elapsed,
            stats={"final_list": int(E.shape[0]), "expected_list": expected},
        )
    raise NoSolutionFound(f"wagner found no solution in {max_iters} attempts")
