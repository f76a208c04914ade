"""
Data transfer objects for flow experiments
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from core.exceptions import DomainError
from core.fields.base import MonotoneField
from core.geometry.base import Point

BOUND_SLACK = 1e-8
PROXY_BANNER = "finite-sample proxy: tail-window diagnostics, not a certificate of Delta-convergence"


@dataclass
class FlowRequest:
    """
    One evaluation of S(t)x0: either a fixed step count k, or adaptive with
    target_tol (needs a minimal-norm oracle or norm_bound).
    """
    field: MonotoneField
    x0: Point
    t: float
    k: Optional[int] = None
    target_tol: Optional[float] = None
    norm_bound: Optional[float] = None
    strict: bool = False

    def __post_init__(self):
        if self.t < 0:
            raise DomainError(f"Flow time must be nonnegative, got {self.t}")
        if self.k is None and self.target_tol is None:
            raise DomainError("FlowRequest needs a step count k or a target tolerance")
        if self.k is not None and self.k < 1:
            raise DomainError(f"Step count must be positive, got {self.k}")
        self.field.space._check(self.x0)

    @property
    def adaptive(self) -> bool:
        return self.k is None


@dataclass
class ErrorRow:
    k: int
    error: float
    bound: float
    slack: float = BOUND_SLACK

    @property
    def flag(self) -> bool:
        """True when the measured error exceeds the bound (nan counts as a failure)"""
        return not self.error <= self.bound + self.slack

    def to_dict(self) -> Dict[str, Any]:
        return {'k': self.k, 'error': self.error, 'bound': self.bound, 'flag': int(self.flag)}


@dataclass
class ErrorTable:
    """
    Measured errors against the deep reference iterate. reference_bound is
    |Ax| 2t/sqrt(k_ref), the reference's own distance to S(t)x, and is part
    of every row's slack.
    """
    t: float
    field_name: str
    space_id: str
    k_ref: int
    min_norm: float
    reference_bound: float
    rows: List[ErrorRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(row.flag for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'metadata': {
                't': self.t,
                'field': self.field_name,
                'space': self.space_id,
                'k_ref': self.k_ref,
                'min_norm': self.min_norm,
                'reference_bound': self.reference_bound,
            },
            'rows': [row.to_dict() for row in self.rows],
        }


@dataclass
class Trajectory:
    times: List[float]
    points: List[Point]
    k_used: List[int] = field(default_factory=list)
    reference: Optional[Point] = None
    distances: List[float] = field(default_factory=list)
    bounds: List[float] = field(default_factory=list)
    target_tol: Optional[float] = None

    def __post_init__(self):
        if len(self.times) != len(self.points):
            raise DomainError("Trajectory needs one point per time")
        if self.times and self.times[0] < 0:
            raise DomainError("Trajectory times must be nonnegative")

    @property
    def missed_target(self) -> List[bool]:
        """Per time, whether the capped step count left the a priori bound above target_tol"""
        if self.target_tol is None:
            return [False] * len(self.bounds)
        return [not bound <= self.target_tol for bound in self.bounds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'times': self.times,
            'k_used': self.k_used,
            'distances': self.distances,
            'bounds': self.bounds,
            'missed_target': self.missed_target,
            'points': [repr(p.coords) for p in self.points],
        }


@dataclass
class DoubleSeqRow:
    j: int
    k: int
    a_tilde: float
    bound: float

    @property
    def violation(self) -> float:
        return self.a_tilde - self.bound

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class DoubleSeqResult:
    lam: float
    min_norm: float
    rows: List[DoubleSeqRow] = field(default_factory=list)

    @property
    def max_violation(self) -> float:
        return max(row.violation for row in self.rows)


@dataclass
class DeltaReport:
    """Tail-window diagnostics of weak (Delta) convergence toward a candidate"""
    center: Point
    candidate: Point
    center_distance: float
    tail_radius: float
    radius_spread: float
    stabilized: bool
    fejer_violations: List[bool]
    passed: bool
    center_resolvent_residual: Optional[float] = None
    demiclosedness_residuals: List[float] = field(default_factory=list)
    banner: str = PROXY_BANNER

    def to_dict(self) -> Dict[str, Any]:
        return {
            'center': repr(self.center.coords),
            'candidate': repr(self.candidate.coords),
            'center_distance': self.center_distance,
            'tail_radius': self.tail_radius,
            'radius_spread': self.radius_spread,
            'stabilized': self.stabilized,
            'fejer_violations': sum(self.fejer_violations),
            'passed': self.passed,
            'center_resolvent_residual': self.center_resolvent_residual,
            'demiclosedness_residuals': self.demiclosedness_residuals,
            'banner': self.banner,
        }
