"""
Shared plumbing for CLI commands: building the space, field and convex set
from an ExperimentConfig, seeded point sampling and per-row error capture.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

import numpy as np

from app.core.config import ExperimentConfig, FieldSection
from app.core.exceptions import ConfigError
from core.exceptions import CatFlowError
from core.fields.base import MonotoneField
from core.fields.catalog import FieldName, build_field, complementary
from core.geometry.base import GeodesicSpace, Point
from core.seeding import stream
from core.spaces.convex import Ball, ConvexSet, ConvexSetKind, HalfSpace, Segment, Subtree
from core.spaces.factory import make_space

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# stream indices; every consumer of randomness owns a fixed slot
X_STREAM = 0
Y_STREAM = 1
FIRST_CHECK_STREAM = 8


@dataclass
class ExperimentContext:
    config: ExperimentConfig
    space: GeodesicSpace
    field: Optional[MonotoneField]
    convex_set: Optional[ConvexSet]
    seed: int
    workers: int

    @property
    def run(self):
        return self.config.run

    def rng(self, index: int) -> np.random.Generator:
        return stream(self.seed, index)

    def _point(self, text: Optional[str], index: int) -> Point:
        if text is not None:
            return self.space.parse_point(text)
        return self.space.sample_point(self.rng(index), self.run.scale)

    @property
    def x(self) -> Point:
        """run.x, or a seeded sample"""
        return self._point(self.run.x, X_STREAM)

    @property
    def y(self) -> Point:
        return self._point(self.run.y, Y_STREAM)

    def require_field(self) -> MonotoneField:
        if self.field is None:
            raise ConfigError(f"experiment {self.config.kind.value} needs a [field] section")
        return self.field

    def tolerance(self, default: float) -> float:
        return self.run.tolerance if self.run.tolerance is not None else default

    def header(self) -> Dict[str, Any]:
        header = {
            "command": self.config.kind.value,
            "config_hash": self.config.config_hash,
            "seed": self.seed,
            "space": self.space.space_id,
        }
        if self.field is not None:
            header["field"] = self.field.name
        return header


def build_convex_set(space: GeodesicSpace, section: FieldSection) -> Optional[ConvexSet]:
    kind = section.set_kind
    if kind is None:
        return None

    def need(key: str):
        value = getattr(section, key)
        if value is None:
            raise ConfigError(f"set_kind={kind.value} needs '{key}'", metadata={'section': 'field', 'key': key})
        return value

    if kind == ConvexSetKind.BALL:
        return Ball(space.parse_point(need("set_center")), float(need("set_radius")))
    if kind == ConvexSetKind.HALFSPACE:
        return HalfSpace(tuple(float(c) for c in need("set_normal")), float(need("set_offset")))
    if kind == ConvexSetKind.SUBTREE:
        return Subtree(tuple(need("set_vertices")))
    if kind == ConvexSetKind.SEGMENT:
        return Segment(space.parse_point(need("set_start")), space.parse_point(need("set_end")))
    raise ConfigError(f"set_kind={kind.value} cannot be given in a config file")


def build_experiment_field(space: GeodesicSpace, section: FieldSection,
                           convex_set: Optional[ConvexSet]) -> MonotoneField:
    params: Dict[str, Any] = {
        "a": space.parse_point(section.a) if section.a is not None else None,
        "set": convex_set,
        "c": space.parse_point(section.c) if section.c is not None else None,
        "theta": section.theta,
        "factor": section.factor,
    }
    if section.name == FieldName.COMPLEMENTARY:
        return complementary(space, section.map.value, params, verify=section.verify)
    return build_field(section.name.value, space, params)


def build_context(config: ExperimentConfig, seed: int, workers: int) -> ExperimentContext:
    space = make_space(config.space.kind.value, config.space.to_params(config.base_dir))
    convex_set = None
    field = None
    if config.field is not None:
        convex_set = build_convex_set(space, config.field)
        field = build_experiment_field(space, config.field, convex_set)
    logger.info(
        f"Experiment {config.kind.value} on {space.space_id}"
        + (f" with {field.name}" if field is not None else "")
        + f", seed {seed}"
    )
    return ExperimentContext(
        config=config,
        space=space,
        field=field,
        convex_set=convex_set,
        seed=seed,
        workers=workers,
    )


def guarded(fn: Callable[[], R], label: str) -> Optional[R]:
    """Run fn; numeric failures are logged and turned into None"""
    try:
        return fn()
    except (CatFlowError, ArithmeticError) as exc:
        logger.error(f"{label} failed: {exc}")
        logger.debug(f"{label} traceback", exc_info=True)
        return None


def map_rows(fn: Callable[[T], R], items: Iterable[T], workers: int) -> List[R]:
    """Ordered map, optionally on a thread pool"""
    items = list(items)
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def safe_min(values: Iterable[float]) -> float:
    values = list(values)
    if not values or any(math.isnan(v) for v in values):
        return float("nan")
    return min(values)


def safe_max(values: Iterable[float]) -> float:
    values = list(values)
    if not values or any(math.isnan(v) for v in values):
        return float("nan")
    return max(values)
