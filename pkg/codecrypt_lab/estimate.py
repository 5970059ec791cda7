"""
Attack-cost and size estimates.

Concrete costs count binary operations with one GF(q) addition worth
⌈log2 q⌉ and one multiplication worth ⌈log2 q⌉². Binomials and powers are
exact integers; log2 is taken last. Asymptotic exponents are optimized
numerically with scipy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar
from scipy.special import xlogy

from codecrypt_lab.errors import InfeasibleParams, ParameterError
from codecrypt_lab.reference_data import get_param_set

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CostReport:
    """log2 of the expected number of binary operations."""

    algorithm: str
    log2_cost: float
    params: dict[str, Any] = field(default_factory=dict)
    success_probability: float = 1.0
    log2_iteration_cost: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.log2_cost) or self.log2_cost < 0:
            raise InfeasibleParams(f"{self.algorithm}: cost 2^{self.log2_cost} is not meaningful")

    def to_json(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "log2_cost": round(self.log2_cost, 6),
            "params": self.params,
            "success_probability": self.success_probability,
            "log2_iteration_cost": round(self.log2_iteration_cost, 6),
        }


@dataclass(frozen=True)
class AsymptoticPoint:
    """Cost q^((e + o(1))·n) at rate R and relative error weight T."""

    rate: float
    distance: float
    exponent: float
    params: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "rate": round(self.rate, 6),
            "distance": round(self.distance, 6),
            "exponent": round(self.exponent, 6),
            "params": {k: round(v, 6) for k, v in self.params.items()},
        }


# ---------------------------------------------------------------------------
# Combinatorics
# ---------------------------------------------------------------------------

def ball_volume_H(r: int, n: int, q: int) -> int:
    """Number of vectors of GF(q)^n with Hamming weight at most r."""
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got r={r}, n={n}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(r + 1))


def entropy_q(x, q: int):
    """q-ary entropy h_q(x), with 0·log 0 = 0. Works on scalars and arrays."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ParameterError("entropy argument outside [0, 1]")
    h = x * np.log(q - 1) - xlogy(x, x) - xlogy(1 - x, 1 - x)
    h = h / np.log(q)
    return float(h) if h.ndim == 0 else h


def gv_distance(n: int, k: int, q: int) -> int:
    """Largest d with V(d−2, n−1, q) < q^(n−k): some [n, k] code reaches it."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    bound = q ** (n - k)
    d, volume = 1, 0  # V(d−2) for d = 1 is the empty ball
    while d < n:
        volume += math.comb(n - 1, d - 1) * (q - 1) ** (d - 1)
        if volume >= bound:
            break
        d += 1
    return d


def gv_radius(n: int, k: int, q: int) -> int:
    """Largest t with V(t, n, q) ≤ q^(n−k), the usual choice of error weight
    for schemes that want a unique solution of the syndrome equation."""
    bound = q ** (n - k)
    t, volume = 0, 1
    while t < n:
        volume += math.comb(n, t + 1) * (q - 1) ** (t + 1)
        if volume > bound:
            break
        t += 1
    return t


def gv_rate(delta: float, q: int) -> float:
    """Asymptotic GV rate 1 − h_q(δ), zero beyond δ = 1 − 1/q."""
    if delta >= 1 - 1 / q:
        return 0.0
    return 1.0 - entropy_q(delta, q)


def relative_gv_distance(rate: float, q: int) -> float:
    """δ in [0, 1 − 1/q] with 1 − h_q(δ) = R."""
    if not 0 < rate < 1:
        raise ParameterError(f"rate must lie in (0, 1), got {rate}")
    return brentq(lambda d: entropy_q(d, q) - (1 - rate), 0.0, 1 - 1 / q, xtol=1e-14)


def intermediate_sums_count(k: int, t: int, q: int) -> int:
    """L_q(k, t) = Σ_{i=2..t} C(k, i)(q−1)^i."""
    return sum(math.comb(k, i) * (q - 1) ** i for i in range(2, t + 1))


def mceliece_public_key_bits(n: int, k: int) -> int:
    """Bits of a systematic public key: only the k × (n−k) redundant part."""
    return k * (n - k)


# ---------------------------------------------------------------------------
# Concrete costs
# ---------------------------------------------------------------------------

def _log2(x: Fraction | int | float) -> float:
    if isinstance(x, Fraction):
        return math.log2(x.numerator) - math.log2(x.denominator)
    return math.log2(x)


def _ops(q: int) -> tuple[int, int]:
    add = math.ceil(math.log2(q)) if q > 1 else 1
    return add, add * add


def _gauss(n: int, k: int, q: int) -> int:
    add, mul = _ops(q)
    return (n - k) ** 2 * (n + 1) * (add + mul)


def _report(name: str, total: Fraction, p: Fraction, per_iter: Fraction | float, params: dict) -> CostReport:
    return CostReport(name, _log2(total), params, float(p), _log2(per_iter))


def prange_cost(n: int, k: int, t: int, q: int = 2) -> CostReport:
    """C(n−k, t)^-1 · C(n, t) · (n−k)²(n+1)(⌈log2 q⌉ + ⌈log2 q⌉²)."""
    if not (0 < k < n and 0 <= t <= n - k):
        raise InfeasibleParams(f"prange needs 0 < k < n and t <= n-k, got n={n}, k={k}, t={t}")
    p = Fraction(math.comb(n - k, t), math.comb(n, t))
    per_iter = _gauss(n, k, q)
    return _report("prange", per_iter / p, p, per_iter, {"n": n, "k": k, "t": t, "q": q})


def lee_brickell_cost(n: int, k: int, t: int, q: int = 2, v: int = 1) -> CostReport:
    """Prange's elimination plus all weight-v sums of the k columns by
    intermediate sums, and the comparison with s' for each of them."""
    if not (0 < k < n and 0 <= v <= min(k, t) and t - v <= n - k):
        raise InfeasibleParams(f"lee_brickell: infeasible (n={n}, k={k}, t={t}, v={v})")
    add, mul = _ops(q)
    r = n - k
    p = Fraction(math.comb(k, v) * math.comb(r, t - v), math.comb(n, t))
    per_iter = (
        _gauss(n, k, q)
        + intermediate_sums_count(k, v, q) * r * add
        + k * r * mul
        + math.comb(k, v) * (q - 1) ** v * r * add
    )
    return _report("lee_brickell", per_iter / p, p, per_iter, {"n": n, "k": k, "t": t, "q": q, "v": v})


def stern_cost(
    n: int, k: int, t: int, q: int = 2, ell: int = 0, v: int = 0, m1: int | None = None
) -> CostReport:
    """Expected binary operations of Stern over GF(q) with early abort and intermediate sums."""
    m1 = k // 2 if m1 is None else m1
    m2 = k - m1
    r = n - k
    if not (0 < k < n and 0 <= ell < r and 0 <= v <= min(m1, m2) and 0 <= t - 2 * v <= r - ell):
        raise InfeasibleParams(f"stern: infeasible (n={n}, k={k}, t={t}, ell={ell}, v={v}, m1={m1})")
    add, mul = _ops(q)
    p = Fraction(math.comb(m1, v) * math.comb(m2, v) * math.comb(r - ell, t - 2 * v), math.comb(n, t))
    if p == 0:
        raise InfeasibleParams("stern: success probability is zero")
    collisions = Fraction(math.comb(m1, v) * math.comb(m2, v) * (q - 1) ** (2 * v), q**ell)
    checks = min(Fraction(r - ell), Fraction(q, q - 1) * (t - 2 * v + 1))
    per_iter = (
        _gauss(n, k, q)
        + (m1 + m2) * ell * mul
        + ell * (intermediate_sums_count(m1, v, q) + intermediate_sums_count(m2, v, q)
                 + math.comb(m2, v) * (q - 1) ** v) * add
        + collisions * checks * 2 * v * (mul + add)
    )
    params = {"n": n, "k": k, "t": t, "q": q, "ell": ell, "v": v, "m1": m1}
    return _report("stern", per_iter / p, p, per_iter, params)


def stern_cost_opt(n: int, k: int, t: int, q: int = 2) -> CostReport:
    """Exhaustive search over ℓ in [0, n−k) and v in [0, t/2]."""
    best: CostReport | None = None
    for ell in range(0, n - k):
        for v in range(0, t // 2 + 1):
            try:
                report = stern_cost(n, k, t, q, ell, v)
            except InfeasibleParams:
                continue
            if best is None or report.log2_cost < best.log2_cost:
                best = report
    if best is None:
        raise InfeasibleParams(f"no feasible Stern parameters for n={n}, k={k}, t={t}")
    logger.debug("stern optimum: %s", best.params)
    return best


def merge_cost(L1: float, L2: float, u: int, width: int) -> float:
    """Sort both lists on u coordinates, scan, and build every matching sum."""
    def lg(x: float) -> float:
        return x * math.log2(x) if x > 1 else 0.0

    return (L1 + L2) * u * width + lg(L1) + lg(L2) + width * L1 * L2 * 2.0**-u


def bjmm_cost(
    n: int,
    k: int,
    t: int,
    ell: int,
    v: int,
    eps1: int,
    eps2: int,
    u1: int | None = None,
    u2: int | None = None,
) -> CostReport:
    """Expected binary operations of binary BJMM with three merge levels.

    Merge widths default to log2 of the number of representations, so that
    one representation of the wanted vector survives each level on average.
    """
    r = n - k
    width = k + ell
    if v % 2 or not (0 < k < n and 0 <= ell <= r and 0 < v <= min(t, width) and t - v <= r - ell):
        raise InfeasibleParams(f"bjmm: infeasible (n={n}, k={k}, t={t}, ell={ell}, v={v})")
    v1 = v // 2 + eps1
    if v1 % 2 or not 0 <= eps1 <= width - v or v1 > width:
        raise InfeasibleParams(f"bjmm: v1 = {v1} must be even and at most k+ell")
    v2 = v1 // 2 + eps2
    if not 0 <= eps2 <= width - v1:
        raise InfeasibleParams(f"bjmm: eps2 = {eps2} out of range")
    if u1 is None:
        u1 = min(ell, math.ceil(math.log2(math.comb(v, v // 2) * math.comb(width - v, eps1))))
    if u2 is None:
        u2 = min(u1, math.ceil(math.log2(math.comb(v1, v1 // 2) * math.comb(width - v1, eps2))))
    if not 0 <= u2 <= u1 <= ell:
        raise InfeasibleParams(f"bjmm: need 0 <= u2 <= u1 <= ell, got u1={u1}, u2={u2}")

    p = Fraction(math.comb(width, v) * math.comb(r - ell, t - v), math.comb(n, t))
    B = float(math.comb(width // 2, (v2 + 1) // 2))
    L2 = math.comb(width, v2) * 2.0**-u2
    L1 = math.comb(width, v1) * 2.0**-u1
    per_iter = (
        (r - ell) ** 2 * (n + 1)
        + 4 * merge_cost(B, B, u2, width)
        + 2 * merge_cost(L2, L2, u1, width)
        + merge_cost(L1, L1, ell, width)
        + math.comb(width, v) * 2.0**-ell * 2 * (t - v + 1) * v
    )
    params = {"n": n, "k": k, "t": t, "ell": ell, "v": v, "eps1": eps1, "eps2": eps2, "u1": u1, "u2": u2}
    return CostReport("bjmm", _log2(per_iter) - _log2(p), params, float(p), _log2(per_iter))


def rank_isd_cost(variant: str, q: int, m: int, n: int, k: int, t: int) -> CostReport:
    """Rank-metric attack costs.

    basis_enum:  q^(tm), enumerating a basis of the error support
    matrix_enum: q^((t−1)(k+1)), enumerating a matrix over the base field
    algebraic:   (n−k)³ · q^(t·⌈(k+1)m/n⌉ − n)
    """
    if not (0 < k < n and 0 < t and 0 < m):
        raise InfeasibleParams(f"rank_isd: infeasible (m={m}, n={n}, k={k}, t={t})")
    lq = math.log2(q)
    if variant == "basis_enum":
        bits = t * m * lq
    elif variant == "matrix_enum":
        bits = (t - 1) * (k + 1) * lq
    elif variant == "algebraic":
        bits = 3 * math.log2(n - k) + (t * math.ceil((k + 1) * m / n) - n) * lq
    else:
        raise ParameterError(f"unknown rank ISD variant {variant!r}")
    params = {"q": q, "m": m, "n": n, "k": k, "t": t}
    return CostReport(f"rank_{variant}", max(bits, 0.0), params)


# ---------------------------------------------------------------------------
# NIST sizes
# ---------------------------------------------------------------------------

# Bytes beyond the raw packed objects.
CMCE_SEED_BYTES = 32        # private seed δ
CMCE_PIVOT_BYTES = 8        # column-pivot word c
CMCE_CONFIRM_BYTES = 32     # plaintext confirmation in the ciphertext
BIKE_SIGMA_BYTES = 32       # implicit-rejection secret σ
BIKE_MESSAGE_BYTES = 32     # second ciphertext component
HQC_SEED_BYTES = 40         # public seed + secret seed
HQC_HASH_BYTES = 64         # SHA-512 confirmation d


def _bytes(bits: int) -> int:
    return -(-bits // 8)


def nist_sizes(scheme: str, level: int | str) -> dict[str, int]:
    """pk/sk/ct bytes computed from the parameters of a published row."""
    row = get_param_set(scheme, level)
    p = row.params
    if scheme == "classic-mceliece":
        m, n, t = p["m"], p["n"], p["t"]
        mt = m * t
        pk = mt * _bytes(n - mt)
        # irreducible polynomial, Beneš network control bits, support bits
        sk = CMCE_SEED_BYTES + CMCE_PIVOT_BYTES + t * _bytes(m) + (2 * m - 1) * 2 ** (m - 4) + _bytes(n)
        ct = _bytes(mt) + CMCE_CONFIRM_BYTES
    elif scheme == "bike":
        r, w = p["r"], p["w"]
        pk = _bytes(r)
        sk = _bytes(w * math.ceil(math.log2(r))) + BIKE_SIGMA_BYTES
        ct = _bytes(r) + BIKE_MESSAGE_BYTES
    elif scheme == "hqc":
        n, n1, n2 = p["n"], p["n1"], p["n2"]
        pk = _bytes(n) + HQC_SEED_BYTES
        sk = HQC_SEED_BYTES
        ct = _bytes(n) + _bytes(n1 * n2) + HQC_HASH_BYTES
    else:
        raise ParameterError(f"unknown scheme {scheme!r}")
    return {"pk_bytes": pk, "sk_bytes": sk, "ct_bytes": ct}


# ---------------------------------------------------------------------------
# Asymptotic exponents
# ---------------------------------------------------------------------------

def _h2(x: np.ndarray) -> np.ndarray:
    return (-xlogy(x, x) - xlogy(1 - x, 1 - x)) / np.log(2)


def _lbinom(a, b) -> np.ndarray:
    """lim (1/n)·log2 C(a·n, b·n); NaN outside 0 ≤ b ≤ a."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ok = (a >= -1e-12) & (b >= -1e-12) & (b <= a + 1e-12)
    safe = np.where(a > 0, a, 1.0)
    x = np.clip(np.where(a > 0, b / safe, 0.0), 0.0, 1.0)
    return np.where(ok, np.clip(a, 0, None) * _h2(x), np.nan)


def prange_exponent(R, T, q: int = 2):
    """Closed form of (1/n)·log_q(C(n, t) / C(n−k, t))."""
    return (_lbinom(1.0, T) - _lbinom(1.0 - np.asarray(R), T)) / np.log2(q)


def _stern_exponent(R: float, T: float, q: int) -> Callable[[np.ndarray], np.ndarray]:
    lq, lq1 = math.log2(q), math.log2(q - 1)

    def f(x: np.ndarray) -> np.ndarray:
        p, lam = x[0], x[1]
        half = _lbinom(R / 2, p)
        lists = half + p * lq1
        success = _lbinom(1.0, T) - 2 * half - _lbinom(1 - R - lam, T - 2 * p)
        cost = success + np.maximum(lists, 2 * lists - lam * lq)
        return cost / lq

    return f


def _bjmm_exponent(R: float, T: float) -> Callable[[np.ndarray], np.ndarray]:
    def f(x: np.ndarray) -> np.ndarray:
        lam, p, e1, e2 = x[0], x[1], x[2], x[3]
        K = R + lam
        p1 = p / 2 + e1
        p2 = p1 / 2 + e2
        r1 = p + _lbinom(K - p, e1)
        r2 = p1 + _lbinom(K - p1, e2)
        S3 = _lbinom(K / 2, p2 / 2)
        S2 = _lbinom(K, p2) - r2
        S1 = _lbinom(K, p1) - r1
        time = np.maximum.reduce([S3, 2 * S3 - r2, 2 * S2 - (r1 - r2), 2 * S1 - (lam - r1)])
        success = _lbinom(1.0, T) - _lbinom(K, p) - _lbinom(1 - K, T - p)
        cost = success + time
        valid = (r2 <= r1 + 1e-12) & (r1 <= lam + 1e-12) & (S2 >= -1e-12) & (S1 >= -1e-12) & (e1 >= 0) & (e2 >= 0)
        return np.where(valid, cost, np.nan)

    return f


def _minimize_box(f, lows: list[float], highs: list[float], points: int) -> tuple[float, np.ndarray]:
    """Grid search over the box, then Nelder–Mead from the best few points."""
    axes = [np.linspace(lo, hi, points) for lo, hi in zip(lows, highs)]
    grid = np.stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")])
    values = np.nan_to_num(f(grid), nan=np.inf)

    def scalar(x: np.ndarray) -> float:
        value = float(f(np.asarray(x, dtype=float)))
        return math.inf if math.isnan(value) else value

    order = np.argsort(values)[:3]
    best_x = grid[:, order[0]]
    best = float(values[order[0]])
    for i in order:
        if not math.isfinite(values[i]):
            continue
        res = minimize(scalar, grid[:, i], method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-9, "maxiter": 4000})
        if res.fun < best:
            best, best_x = float(res.fun), res.x
    return best, best_x


def _distance(R: float, q: int, regime: str) -> float:
    delta = relative_gv_distance(R, q)
    if regime == "full":
        return delta
    if regime == "half":
        return delta / 2
    raise ParameterError(f"regime must be 'full' or 'half', got {regime!r}")


def exponent_at(algorithm: str, R: float, q: int = 2, regime: str = "full") -> AsymptoticPoint:
    """Optimized exponent e(R, q) at a single rate."""
    T = _distance(R, q, regime)
    if algorithm == "prange":
        return AsymptoticPoint(R, T, float(prange_exponent(R, T, q)))
    if algorithm == "stern":
        f = _stern_exponent(R, T, q)
        e, x = _minimize_box(f, [0.0, 0.0], [min(R / 2, T / 2), 1 - R], 60)
        return AsymptoticPoint(R, T, e, {"v": float(x[0]), "ell": float(x[1])})
    if algorithm == "bjmm":
        if q != 2:
            raise ParameterError("bjmm exponents are binary only")
        f = _bjmm_exponent(R, T)
        e, x = _minimize_box(f, [0.0, 0.0, 0.0, 0.0], [1 - R, T, 0.1, 0.05], 14)
        return AsymptoticPoint(
            R, T, e, {"ell": float(x[0]), "v": float(x[1]), "eps1": float(x[2]), "eps2": float(x[3])}
        )
    raise ParameterError(f"unknown algorithm {algorithm!r}")


def asymptotic_exponent(algorithm: str, q: int = 2, regime: str = "full") -> AsymptoticPoint:
    """Worst-case rate R* = argmax e(R, q) and its exponent.

    ``full`` decodes up to the GV distance (T = δ), ``half`` to half of it.
    """
    rates = np.linspace(0.05, 0.95, 19)
    values = [exponent_at(algorithm, float(R), q, regime).exponent for R in rates]
    centre = float(rates[int(np.argmax(values))])
    res = minimize_scalar(
        lambda R: -exponent_at(algorithm, float(R), q, regime).exponent,
        bounds=(max(0.01, centre - 0.05), min(0.99, centre + 0.05)),
        method="bounded",
        options={"xatol": 1e-4},
    )
    point = exponent_at(algorithm, float(res.x), q, regime)
    logger.debug("%s: R* = %.4f, e = %.5f", algorithm, point.rate, point.exponent)
    return point
