"""
Space construction from a kind plus parameters.
"""

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ValidationError

from core.exceptions import InvalidSpec
from core.geometry.base import GeodesicSpace, SpaceKind
from core.spaces.euclidean import EuclideanSpace
from core.spaces.hyperbolic import HyperbolicSpace
from core.spaces.product import ProductSpace
from core.spaces.tree import TreeSpec, build_tree_space, random_tree_spec, tripod_spec
from core.spaces.tree_file import load_tree_spec

logger = logging.getLogger(__name__)

SpaceHandle = GeodesicSpace


class SpaceSpec(BaseModel):
    """
    Declarative space description.

    Trees take exactly one of: tree (inline spec), tree_file, tripod legs,
    or random_vertices with random_seed.
    """
    kind: SpaceKind
    dimension: Optional[int] = None
    tree: Optional[TreeSpec] = None
    tree_file: Optional[str] = None
    tripod: Optional[List[float]] = None
    random_vertices: Optional[int] = None
    random_seed: int = 0
    factors: Optional[List["SpaceSpec"]] = None


SpaceSpec.model_rebuild()


def build_space(spec: SpaceSpec) -> SpaceHandle:
    if spec.kind in (SpaceKind.EUCLIDEAN, SpaceKind.HYPERBOLIC):
        if spec.dimension is None:
            raise InvalidSpec(f"{spec.kind.value} space needs a dimension")
        if spec.kind == SpaceKind.EUCLIDEAN:
            return EuclideanSpace(spec.dimension)
        return HyperbolicSpace(spec.dimension)

    if spec.kind == SpaceKind.TREE:
        sources = [
            spec.tree is not None,
            spec.tree_file is not None,
            spec.tripod is not None,
            spec.random_vertices is not None,
        ]
        if sum(sources) != 1:
            raise InvalidSpec("Tree space needs exactly one of tree, tree_file, tripod, random_vertices")
        if spec.tree is not None:
            tree = spec.tree
        elif spec.tree_file is not None:
            tree = load_tree_spec(spec.tree_file)
        elif spec.tripod is not None:
            if len(spec.tripod) != 3:
                raise InvalidSpec("Tripod needs three leg lengths")
            try:
                tree = tripod_spec(tuple(spec.tripod))
            except ValidationError as exc:
                raise InvalidSpec("Invalid tripod leg lengths") from exc
        else:
            tree = random_tree_spec(spec.random_vertices, spec.random_seed)
        return build_tree_space(tree)

    if spec.kind == SpaceKind.PRODUCT:
        if not spec.factors or len(spec.factors) != 2:
            raise InvalidSpec("Product space needs exactly two factors")
        return ProductSpace(build_space(spec.factors[0]), build_space(spec.factors[1]))

    raise InvalidSpec(f"Unknown space kind {spec.kind!r}")


def make_space(kind, params: Optional[Dict[str, Any]] = None, **kwargs) -> SpaceHandle:
    """
    Build a space from a kind and parameters.

    Examples:
        make_space("euclidean", dimension=2)
        make_space("tree", tripod=[1, 1, 1])
        make_space("product", factors=[{"kind": "euclidean", "dimension": 1},
                                        {"kind": "tree", "tripod": [1, 1, 1]}])

    Raises:
        InvalidSpec: on any invalid parameter
    """
    payload = dict(params or {})
    payload.update(kwargs)
    payload["kind"] = kind
    try:
        spec = SpaceSpec.model_validate(payload)
    except ValidationError as exc:
        raise InvalidSpec(
            "Invalid space parameters",
            metadata={'errors': [e['msg'] for e in exc.errors()]}
        ) from exc
    space = build_space(spec)
    logger.debug(f"Created space {space.space_id}")
    return space
