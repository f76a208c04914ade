"""
Exception hierarchy for the catflow library.

Every error carries a machine-readable error code and a metadata dict so the
CLI can report it per row without losing context.
"""

from typing import Any, Dict, Optional


class CatFlowError(Exception):
    """Base exception for catflow errors"""

    def __init__(
        self,
        detail: str,
        error_code: Optional[str] = None,
        metadata: Optional[Dict[str, Any]] = None
    ):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code or "GENERIC_ERROR"
        self.metadata = metadata or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for artifact metadata"""
        return {
            'error_code': self.error_code,
            'detail': self.detail,
            'metadata': self.metadata
        }


class SpaceMismatch(CatFlowError):
    """Points or sets belong to different spaces"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "SPACE_MISMATCH", metadata)


class DomainError(CatFlowError):
    """A numeric argument lies outside its admissible range"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "DOMAIN_ERROR", metadata)


class NoExtension(CatFlowError):
    """The geodesic extension property fails at the requested point"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "NO_EXTENSION", metadata)


class ZeroDirection(CatFlowError):
    """A direction was requested from a point to itself"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "ZERO_DIRECTION", metadata)


class BaseMismatch(CatFlowError):
    """Tangent vectors live in different tangent spaces"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "BASE_MISMATCH", metadata)


class InvalidSpec(CatFlowError):
    """A space specification (dimension, tree file, factors) is invalid"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "INVALID_SPEC", metadata)


class UnsupportedSet(CatFlowError):
    """The space does not implement projection onto this convex set kind"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "UNSUPPORTED_SET", metadata)


class ProxDiverged(CatFlowError):
    """An inner minimization or fixed-point iteration missed its tolerance"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "PROX_DIVERGED", metadata)


class NotNonexpansive(CatFlowError):
    """A sampled pair violates nonexpansiveness of a map"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "NOT_NONEXPANSIVE", metadata)


class NoZeroSet(CatFlowError):
    """The field carries no witness for its zero set"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "NO_ZERO_SET", metadata)


class NoNormBound(CatFlowError):
    """No usable bound on the minimal norm |Ax| is available"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "NO_NORM_BOUND", metadata)


class ScheduleError(CatFlowError):
    """A step-size schedule violates its ordering or range constraints"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "SCHEDULE_ERROR", metadata)


class EmptyTail(CatFlowError):
    """Too few points remain after tail truncation"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "EMPTY_TAIL", metadata)


class TargetUnreachable(CatFlowError):
    """The capped step count cannot meet the requested flow tolerance"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "TARGET_UNREACHABLE", metadata)
