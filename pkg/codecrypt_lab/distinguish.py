"""
Algebraic distinguishers.

Both tests measure one dimension and compare it with what a structured
code and a random code of the same shape would give:

- square code: GRS codes have dim(C⋆C) = min(2k−1, n), random codes
  min(k(k+1)/2, n)
- Frobenius stacking: for Gabidulin codes rank Λ_ℓ(G) = min(k+ℓ, n), for
  random rank-metric codes min((ℓ+1)k, n)

A verdict is "inconclusive" whenever the two expectations coincide or the
measurement matches neither.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from codecrypt_lab.algebra import FieldArray, rank, vstack
from codecrypt_lab.codes import LinearCode, square_code
from codecrypt_lab.errors import ParameterError
from codecrypt_lab.families import frobenius

logger = logging.getLogger(__name__)

STRUCTURED = "structured"
RANDOM = "random"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DistinguisherVerdict:
    test: str
    measured: int
    random_expectation: int
    structured_expectation: int
    verdict: str

    def to_json(self) -> dict[str, Any]:
        return {
            "test": self.test,
            "measured": self.measured,
            "random_expectation": self.random_expectation,
            "structured_expectation": self.structured_expectation,
            "verdict": self.verdict,
        }


def _verdict(test: str, measured: int, structured: int, random_: int, separable: bool) -> DistinguisherVerdict:
    if not separable or structured == random_:
        verdict = INCONCLUSIVE
    elif measured == structured:
        verdict = STRUCTURED
    elif measured == random_:
        verdict = RANDOM
    else:
        verdict = INCONCLUSIVE
    logger.debug("%s: measured %d (structured %d, random %d) -> %s", test, measured, structured, random_, verdict)
    return DistinguisherVerdict(test, measured, random_, structured, verdict)


def square_distinguisher(G: FieldArray) -> DistinguisherVerdict:
    """Compare dim(C⋆C) with the GRS and the random-code expectations."""
    code = LinearCode.from_generator(G)
    n, k = code.n, code.k
    structured = min(2 * k - 1, n)
    random_ = min(k * (k + 1) // 2, n)
    measured = square_code(code).k
    return _verdict("square", measured, structured, random_, 2 * k - 1 < min(k * (k + 1) // 2, n))


def frobenius_stack(M: FieldArray, ell: int, s: int = 1) -> FieldArray:
    """Λ_ℓ(M): M stacked on its entrywise Frobenius powers M^[s], …, M^[ℓs]."""
    if ell < 0:
        raise ParameterError(f"ell must be non-negative, got {ell}")
    gf = type(M)
    return vstack(gf, *(frobenius(M, s * i) for i in range(ell + 1)))


def frobenius_distinguisher(M: FieldArray, ell: int, s: int = 1) -> DistinguisherVerdict:
    """Compare rank Λ_ℓ(M) with the Gabidulin and the random-code expectations."""
    code = LinearCode.from_generator(M)
    n, k = code.n, code.k
    structured = min(k + ell, n)
    random_ = min((ell + 1) * k, n)
    measured = rank(frobenius_stack(code.generator, ell, s))
    separable = ell <= n - k - 1 and k + ell < min((ell + 1) * k, n)
    return _verdict("frobenius", measured, structured, random_, separable)
