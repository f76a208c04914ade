"""
Data transfer objects for resolvent experiments
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings
from core.geometry.base import Point
from core.geometry.tangent import TangentVec


class ResolventConfig(BaseModel):
    """lam = 0 selects the identity J_0"""
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    lam: float = Field(alias="lambda", ge=0.0)
    tol: float = Field(default=1e-10, gt=0.0)
    max_iter: int = Field(default_factory=lambda: settings.resolvent_max_iter, ge=1)


class ScanMode(str, Enum):
    REFERENCE = "reference"
    CAUCHY = "cauchy"


@dataclass
class ScanRow:
    lam: float
    distance: float

    def to_dict(self) -> Dict[str, Any]:
        return {'lambda': self.lam, 'distance': self.distance}


@dataclass
class LimitScan:
    """
    Distances of J_lam x to the predicted limit along a schedule, or
    increments between consecutive resolvents in cauchy mode.
    """
    mode: ScanMode
    estimate: Point
    rows: List[ScanRow] = field(default_factory=list)
    target: Optional[Point] = None

    @property
    def final_distance(self) -> float:
        return self.rows[-1].distance if self.rows else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mode': self.mode.value,
            'estimate': repr(self.estimate.coords),
            'target': repr(self.target.coords) if self.target is not None else None,
            'rows': [row.to_dict() for row in self.rows],
        }


@dataclass
class ContinuityRow:
    """rho(J_mu x, J_lam x) against (1 - mu/lam) rho(x, J_lam x) for mu < lam"""
    mu: float
    lam: float
    distance: float
    bound: float

    @property
    def excess(self) -> float:
        return self.distance - self.bound

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['excess'] = self.excess
        return data


@dataclass
class DomainProbe:
    lam: float
    x_residual: float
    y_residual: float
    midpoint_residual: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class YosidaVec(TangentVec):
    """A_lam x as a tangent vector at x, with its norm lam^-1 rho(x, J_lam x)"""
    norm_value: float = 0.0
    lam: float = 0.0
