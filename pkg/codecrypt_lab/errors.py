"""
Exception hierarchy for codecrypt-lab.

Every error raised by the library derives from LabError. Each class carries
the process exit code the CLI uses and a short ``kind`` tag that ends up in
the machine-readable error JSON.

Exit codes:
    0  ok
    1  any other LabError
    2  usage / parameter errors
    3  verification failed
    4  decoding failure (including DFR events)
    5  budget exceeded
"""

from __future__ import annotations


class LabError(Exception):
    """Root of all codecrypt-lab errors."""

    exit_code: int = 1
    kind: str = "lab_error"


class ParameterError(LabError):
    """Invalid input parameters."""

    exit_code = 2
    kind = "parameter_error"


class BudgetError(LabError):
    """An enumeration or iteration budget was exhausted."""

    exit_code = 5
    kind = "budget_exceeded"


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------

class MixedFields(ParameterError):
    kind = "mixed_fields"


class InverseOfZero(LabError):
    kind = "inverse_of_zero"


class BadSetSize(ParameterError):
    kind = "bad_set_size"


class NotInformationSet(LabError):
    kind = "not_information_set"


class NoSolution(LabError):
    kind = "no_solution"


# ---------------------------------------------------------------------------
# Codes and families
# ---------------------------------------------------------------------------

class DimMismatch(ParameterError):
    kind = "dim_mismatch"


class LengthMismatch(ParameterError):
    kind = "length_mismatch"


class FieldMismatch(ParameterError):
    kind = "field_mismatch"


class EmptyCode(LabError):
    kind = "empty_code"


class TooLarge(BudgetError):
    kind = "too_large"


class DecodeFailure(LabError):
    exit_code = 4
    kind = "decode_failure"


class DuplicatePoints(ParameterError):
    kind = "duplicate_points"


class ZeroMultiplier(ParameterError):
    kind = "zero_multiplier"


class RootInSupport(ParameterError):
    kind = "root_in_support"


class DependentPoints(ParameterError):
    kind = "dependent_points"


class NotADivisor(ParameterError):
    kind = "not_a_divisor"


# ---------------------------------------------------------------------------
# Encryption
# ---------------------------------------------------------------------------

class WeightTooHigh(ParameterError):
    kind = "weight_too_high"


class InvalidBlockSize(ParameterError):
    kind = "invalid_block_size"


class SystematicFormFailure(LabError):
    kind = "systematic_form_failure"


# ---------------------------------------------------------------------------
# Attacks and estimates
# ---------------------------------------------------------------------------

class IterationLimit(BudgetError):
    kind = "iteration_limit"


class NoSolutionFound(BudgetError):
    kind = "no_solution_found"


class InfeasibleParams(ParameterError):
    kind = "infeasible_params"


class UnknownParamSet(ParameterError):
    kind = "unknown_param_set"


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

class VerifyFailed(LabError):
    exit_code = 3
    kind = "verify_failed"


class AggregateMismatch(VerifyFailed):
    kind = "aggregate_mismatch"


class RetryLimit(BudgetError):
    kind = "retry_limit"


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

class NotAValidSolution(LabError):
    kind = "not_a_valid_solution"


class NoMatching(LabError):
    kind = "no_matching"


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------

class FormatError(ParameterError):
    """A key, instance or signature file could not be parsed."""

    kind = "format_error"
