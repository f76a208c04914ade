"""
Experiment configuration for the flow CLI.

Experiment files are flat key=value text with three sections:

    [space]   kind plus its parameters (dimension, tripod, tree_file, ...)
    [field]   catalog field name plus its parameters (a, map, set_*, ...)
    [run]     numeric parameters of the experiment (t, ks, lambdas, ...)

List values are comma separated. Each section is validated by its own
pydantic model; any failure is reported as a ConfigError naming the
offending section, key and (for syntax errors) line.
"""

import configparser
import hashlib
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from app.core.exceptions import ConfigError
from core.fields.catalog import FieldName, MapName
from core.geometry.base import SpaceKind
from core.spaces.convex import ConvexSetKind

logger = logging.getLogger(__name__)

SECTIONS = ("space", "field", "run")
DEFAULT_KS = [1, 2, 4, 8, 16, 32, 64, 128, 256]
DEFAULT_LAMBDAS = [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3]
DEFAULT_TIMES = [0.0, 0.5, 1.0, 2.0, 4.0]


class ExperimentKind(str, Enum):
    AXIOMS = "axioms"
    PROX = "prox"
    SWEEP = "sweep"
    YOSIDA = "yosida"
    LIMITS = "limits"
    ERROR_TABLE = "error-table"
    TRAJECTORY = "trajectory"
    DOUBLE_SEQ = "double-seq"


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return value


def _factor_spec(text: str) -> Dict[str, Any]:
    """
    Shorthand for product factors:
    euclidean:<n>, hyperbolic:<n>, tripod:<a>,<b>,<c>, random:<n>,<seed>,
    tree_file:<path>
    """
    kind, _, body = text.strip().partition(":")
    kind = kind.strip().lower()
    values = _split_list(body)
    try:
        if kind in ("euclidean", "hyperbolic"):
            return {"kind": kind, "dimension": int(values[0])}
        if kind == "tripod":
            return {"kind": "tree", "tripod": [float(v) for v in values]}
        if kind == "random":
            seed = int(values[1]) if len(values) > 1 else 0
            return {"kind": "tree", "random_vertices": int(values[0]), "random_seed": seed}
        if kind == "tree_file":
            return {"kind": "tree", "tree_file": body.strip()}
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"Cannot parse product factor {text!r}") from exc
    raise ConfigError(f"Unknown product factor kind in {text!r}")


def _resolve(path_text: str, base_dir: Optional[Path]) -> str:
    """Relative tree files are looked up next to the config file"""
    path = Path(path_text)
    if path.is_absolute() or base_dir is None:
        return str(path)
    return str(base_dir / path)


class SpaceSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: SpaceKind
    dimension: Optional[int] = Field(default=None, ge=1)
    tree_file: Optional[str] = None
    tripod: Optional[List[float]] = None
    random_vertices: Optional[int] = Field(default=None, ge=2)
    random_seed: int = Field(default=0, ge=0)
    first: Optional[str] = None
    second: Optional[str] = None

    @field_validator("tripod", mode="before")
    @classmethod
    def split_tripod(cls, v):
        return _split_list(v)

    @model_validator(mode="after")
    def check_product_factors(self):
        if self.kind == SpaceKind.PRODUCT and (self.first is None or self.second is None):
            raise ValueError("product spaces need 'first' and 'second' factors")
        return self

    def to_params(self, base_dir: Optional[Path] = None) -> Dict[str, Any]:
        """Keyword parameters for core.spaces.make_space"""
        if self.kind == SpaceKind.PRODUCT:
            factors = [_factor_spec(self.first), _factor_spec(self.second)]
            for factor in factors:
                if "tree_file" in factor:
                    factor["tree_file"] = _resolve(factor["tree_file"], base_dir)
            return {"factors": factors}
        params = self.model_dump(exclude_none=True, exclude={"kind", "first", "second"})
        if self.tree_file is not None:
            params["tree_file"] = _resolve(self.tree_file, base_dir)
        if self.kind != SpaceKind.TREE:
            params.pop("random_seed", None)
        return params


class FieldSection(BaseModel):
    """
    Catalog field and its parameters. Points are kept as text and parsed
    once the space exists; set_* keys describe the convex set C.
    """
    model_config = ConfigDict(extra="forbid")

    name: FieldName
    a: Optional[str] = None
    map: Optional[MapName] = None
    c: Optional[str] = None
    theta: Optional[float] = None
    factor: Optional[float] = None
    verify: bool = True
    set_kind: Optional[ConvexSetKind] = None
    set_center: Optional[str] = None
    set_radius: Optional[float] = Field(default=None, ge=0.0)
    set_normal: Optional[List[float]] = None
    set_offset: Optional[float] = None
    set_vertices: Optional[List[str]] = None
    set_start: Optional[str] = None
    set_end: Optional[str] = None

    @field_validator("set_normal", "set_vertices", mode="before")
    @classmethod
    def split_lists(cls, v):
        return _split_list(v)

    @model_validator(mode="after")
    def check_catalog_parameters(self):
        if self.name in (FieldName.QUADRATIC, FieldName.QUADRATIC_PLUS_INDICATOR) and self.a is None:
            raise ValueError(f"field {self.name.value} needs the anchor 'a'")
        if self.name in (FieldName.INDICATOR, FieldName.QUADRATIC_PLUS_INDICATOR) and self.set_kind is None:
            raise ValueError(f"field {self.name.value} needs a convex set (set_kind)")
        if self.name == FieldName.COMPLEMENTARY and self.map is None:
            raise ValueError("complementary fields need a 'map'")
        if self.map == MapName.PROJECTION and self.set_kind is None:
            raise ValueError("the projection map needs a convex set (set_kind)")
        return self


class RunSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    experiment: Optional[ExperimentKind] = None
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    samples: int = Field(default=1000, ge=1)
    scale: float = Field(default=1.0, gt=0.0)
    x: Optional[str] = None
    y: Optional[str] = None
    t: float = Field(default=1.0, ge=0.0)
    ks: List[int] = Field(default_factory=lambda: list(DEFAULT_KS))
    k_ref: Optional[int] = Field(default=None, ge=1)
    lambdas: List[float] = Field(default_factory=lambda: list(DEFAULT_LAMBDAS))
    lam: float = Field(default=1.0, gt=0.0)
    mu_schedule: Optional[List[float]] = None
    j_max: int = Field(default=8, ge=0)
    k_max: int = Field(default=8, ge=0)
    times: List[float] = Field(default_factory=lambda: list(DEFAULT_TIMES))
    target_tol: float = Field(default=1e-2, gt=0.0)
    norm_bound: Optional[float] = Field(default=None, ge=0.0)
    tolerance: Optional[float] = Field(default=None, gt=0.0)
    limit_tol: float = Field(default=1e-5, gt=0.0)
    tail_fraction: Optional[float] = Field(default=None, gt=0.0, le=1.0)
    out: Optional[str] = None
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("ks", "lambdas", "mu_schedule", "times", mode="before")
    @classmethod
    def split_lists(cls, v):
        return _split_list(v)

    @field_validator("ks")
    @classmethod
    def validate_ks(cls, v):
        if not v or any(k < 1 for k in v):
            raise ValueError("k values must be positive")
        return v

    @field_validator("lambdas")
    @classmethod
    def validate_lambdas(cls, v):
        if not v or any(lam <= 0 for lam in v):
            raise ValueError("lambda schedule must be nonempty and positive")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("lambda schedule must be sorted in strictly increasing order")
        return v

    @field_validator("mu_schedule")
    @classmethod
    def validate_mu_schedule(cls, v):
        if v is not None and any(mu <= 0 for mu in v):
            raise ValueError("mu schedule must be positive")
        return v

    @field_validator("times")
    @classmethod
    def validate_times(cls, v):
        if not v or v[0] < 0 or any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("times must be nonnegative and strictly increasing")
        return v


class ExperimentConfig(BaseModel):
    """One experiment: the space, the field, the run parameters and provenance"""
    model_config = ConfigDict(extra="forbid")

    kind: ExperimentKind
    space: SpaceSection
    field: Optional[FieldSection] = None
    run: RunSection = Field(default_factory=RunSection)
    source: Optional[str] = None
    config_hash: str = ""

    @model_validator(mode="after")
    def check_experiment(self):
        if self.kind != ExperimentKind.AXIOMS and self.field is None:
            raise ValueError(f"experiment {self.kind.value} needs a [field] section")
        if self.run.experiment is not None and self.run.experiment != self.kind:
            raise ValueError(
                f"config declares experiment {self.run.experiment.value} but {self.kind.value} was requested"
            )
        return self

    @property
    def base_dir(self) -> Optional[Path]:
        return Path(self.source).parent if self.source else None

    def effective_seed(self, override: Optional[int], default: int) -> int:
        if override is not None:
            return override
        return self.run.seed if self.run.seed is not None else default


def config_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _read_sections(text: str, source: str) -> Dict[str, Dict[str, str]]:
    parser = configparser.ConfigParser(
        delimiters=("=",),
        comment_prefixes=("#", ";"),
        inline_comment_prefixes=("#",),
        interpolation=None,
    )
    try:
        parser.read_string(text, source=source)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError(
            f"{source}:{exc.lineno}: key outside of a section",
            metadata={'line': exc.lineno, 'text': exc.line.strip()}
        ) from exc
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ConfigError(
            f"{source}:{lineno}: cannot parse line",
            metadata={'line': lineno, 'text': line.strip()}
        ) from exc
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as exc:
        raise ConfigError(f"{source}:{exc.lineno}: {exc.message}", metadata={'line': exc.lineno}) from exc

    unknown = [name for name in parser.sections() if name not in SECTIONS]
    if unknown:
        raise ConfigError(f"{source}: unknown section(s) {unknown}", metadata={'known': list(SECTIONS)})
    return {name: dict(parser.items(name)) for name in parser.sections()}


def parse_experiment_config(
    text: str,
    kind: Union[ExperimentKind, str],
    source: str = "<string>",
) -> ExperimentConfig:
    """
    Raises:
        ConfigError: with line numbers for syntax errors and section.key
            locations for validation errors
    """
    sections = _read_sections(text, source)
    if "space" not in sections:
        raise ConfigError(f"{source}: missing [space] section")

    payload: Dict[str, Any] = {
        "kind": kind,
        "space": sections["space"],
        "run": sections.get("run", {}),
        "source": source if source != "<string>" else None,
        "config_hash": config_hash(text),
    }
    if "field" in sections:
        payload["field"] = sections["field"]

    try:
        config = ExperimentConfig.model_validate(payload)
    except ValidationError as exc:
        errors = [f"{'.'.join(str(part) for part in e['loc'])}: {e['msg']}" for e in exc.errors()]
        raise ConfigError(f"{source}: invalid configuration", metadata={'errors': errors}) from exc

    logger.debug(f"Loaded {config.kind.value} config from {source} (sha256 {config.config_hash[:12]})")
    return config


def load_experiment_config(path: Union[str, Path], kind: Union[ExperimentKind, str]) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config {path}: {exc.strerror}", metadata={'path': str(path)}) from exc
    return parse_experiment_config(text, kind, source=str(path))
