"""Exception hierarchy. Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class LebError(Exception):
    code = "leb_error"


class InputError(LebError, ValueError):
    code = "input_error"


class FieldMismatch(LebError, ValueError):
    code = "field_mismatch"


class FactorizationLimitExceeded(InputError):
    code = "factorization_limit_exceeded"


class PointOutsideD(LebError, ValueError):
    code = "point_outside_d"


class DegenerateTriangle(InputError):
    code = "degenerate_triangle"


class SafetyCapExceeded(LebError, RuntimeError):
    code = "safety_cap_exceeded"


class InconsistentTerminalSet(LebError, RuntimeError):
    code = "inconsistent_terminal_set"


class NotInTerminalRegion(LebError, ValueError):
    code = "not_in_terminal_region"


class OutsideVTilde(LebError, ValueError):
    code = "outside_v_tilde"


class PointsNotEpsClose(LebError, ValueError):
    code = "points_not_eps_close"


class UnresolvedNonGenericPattern(LebError, RuntimeError):
    code = "unresolved_non_generic_pattern"


class ConvergenceFailure(LebError, RuntimeError):
    code = "convergence_failure"


class IterationLimit(LebError, RuntimeError):
    code = "iteration_limit"


class UnmatchedShapeKey(LebError, RuntimeError):
    code = "unmatched_shape_key"
