"""
Weighted metric trees.

A point is a TreeCoord (edge key, offset) where the edge key is the sorted
vertex pair and the offset is measured from key[0]. Vertices are
canonicalized onto their lexicographically smallest incident edge, so two
representations of the same point always compare equal.

All-pairs vertex distances and paths are computed eagerly with networkx at
construction; the space is immutable afterwards.
"""

import hashlib
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from core.exceptions import DomainError, InvalidSpec, NoExtension
from core.geometry.base import GeodesicSpace, Point, SpaceKind
from core.spaces.convex import Segment, Subtree

logger = logging.getLogger(__name__)

EdgeKey = Tuple[str, str]
Leg = Tuple[EdgeKey, float, float]

LEAF_SLACK = 1e-12


class TreeSpec(BaseModel):
    """Vertices plus (u, v, length) edges of a weighted tree"""
    vertices: List[str]
    edges: List[Tuple[str, str, float]]

    @field_validator("vertices")
    @classmethod
    def unique_vertices(cls, v: List[str]) -> List[str]:
        if len(set(v)) != len(v):
            raise ValueError("duplicate vertex identifiers")
        return v

    @model_validator(mode="after")
    def check_edges(self) -> "TreeSpec":
        known = set(self.vertices)
        seen = set()
        for u, v, length in self.edges:
            if u not in known or v not in known:
                raise ValueError(f"edge {u}-{v} references an unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not length > 0 or not math.isfinite(length):
                raise ValueError(f"edge {u}-{v} has nonpositive length {length}")
            key = tuple(sorted((u, v)))
            if key in seen:
                raise ValueError(f"duplicate edge {u}-{v}")
            seen.add(key)
        return self

    def fingerprint(self) -> str:
        canonical = ";".join(
            f"{'-'.join(sorted((u, v)))}:{length!r}"
            for u, v, length in sorted(self.edges, key=lambda e: tuple(sorted(e[:2])))
        )
        return hashlib.sha1(canonical.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class TreeCoord:
    edge: EdgeKey
    offset: float


def tripod_spec(legs: Tuple[float, float, float] = (1.0, 1.0, 1.0)) -> TreeSpec:
    leaves = ["a", "b", "c"]
    return TreeSpec(
        vertices=["hub"] + leaves,
        edges=[("hub", leaf, float(length)) for leaf, length in zip(leaves, legs)],
    )


def random_tree_spec(n_vertices: int, seed: int) -> TreeSpec:
    """Random recursive tree with edge lengths drawn from [0.5, 2]"""
    if n_vertices < 2:
        raise InvalidSpec("A tree space needs at least two vertices")
    rng = np.random.default_rng(seed)
    width = len(str(n_vertices - 1))
    names = [f"v{i:0{width}d}" for i in range(n_vertices)]
    edges = []
    for i in range(1, n_vertices):
        parent = int(rng.integers(0, i))
        edges.append((names[parent], names[i], float(rng.uniform(0.5, 2.0))))
    return TreeSpec(vertices=names, edges=edges)


class TreeSpace(GeodesicSpace):
    kind = SpaceKind.TREE
    supports_extension = False

    def __init__(self, spec: TreeSpec):
        if not spec.edges:
            raise InvalidSpec("A tree space needs at least one edge")
        graph = nx.Graph()
        graph.add_nodes_from(spec.vertices)
        for u, v, length in spec.edges:
            graph.add_edge(u, v, weight=float(length))
        if not nx.is_tree(graph):
            raise InvalidSpec(
                "Tree specification is cyclic or disconnected",
                metadata={'vertices': len(spec.vertices), 'edges': len(spec.edges)}
            )

        super().__init__(f"tree:{spec.fingerprint()}")
        self.spec = spec
        self.graph = graph
        self._lengths: Dict[EdgeKey, float] = {
            tuple(sorted((u, v))): float(length) for u, v, length in spec.edges
        }
        self._incident: Dict[str, List[EdgeKey]] = {
            vertex: sorted(tuple(sorted((vertex, other))) for other in graph.neighbors(vertex))
            for vertex in graph.nodes
        }
        self._vertex_dist: Dict[str, Dict[str, float]] = {}
        self._vertex_path: Dict[str, Dict[str, List[str]]] = {}
        for source, (lengths, paths) in nx.all_pairs_dijkstra(graph, weight="weight"):
            self._vertex_dist[source] = lengths
            self._vertex_path[source] = paths
        logger.debug(f"Built tree space {self.space_id} with {graph.number_of_nodes()} vertices")

    # ------------------------------------------------------------------
    # Points
    # ------------------------------------------------------------------

    @property
    def edges(self) -> List[EdgeKey]:
        return sorted(self._lengths)

    def edge_length(self, key: EdgeKey) -> float:
        return self._lengths[key]

    def vertex(self, vertex: str) -> Point:
        if vertex not in self._incident:
            raise DomainError(f"Unknown vertex {vertex!r}")
        key = self._incident[vertex][0]
        offset = 0.0 if vertex == key[0] else self._lengths[key]
        return Point(self.space_id, TreeCoord(key, offset))

    def point_on_edge(self, u: str, v: str, offset_from_u: float) -> Point:
        key = tuple(sorted((u, v)))
        if key not in self._lengths:
            raise DomainError(f"No edge between {u!r} and {v!r}")
        length = self._lengths[key]
        if not 0.0 <= offset_from_u <= length:
            raise DomainError(
                f"Offset {offset_from_u} outside edge {u}-{v} of length {length}"
            )
        offset = offset_from_u if u == key[0] else length - offset_from_u
        return self._canonical(key, offset)

    def _canonical(self, key: EdgeKey, offset: float) -> Point:
        length = self._lengths[key]
        if offset <= 0.0:
            return self.vertex(key[0])
        if offset >= length:
            return self.vertex(key[1])
        return Point(self.space_id, TreeCoord(key, float(offset)))

    def vertex_at(self, p: Point) -> Optional[str]:
        coord = p.coords
        if coord.offset == 0.0:
            return coord.edge[0]
        if coord.offset == self._lengths[coord.edge]:
            return coord.edge[1]
        return None

    def _ends(self, coord: TreeCoord) -> List[Tuple[str, float]]:
        return [
            (coord.edge[0], coord.offset),
            (coord.edge[1], self._lengths[coord.edge] - coord.offset),
        ]

    # ------------------------------------------------------------------
    # Metric and geodesics
    # ------------------------------------------------------------------

    def _route(self, a: TreeCoord, b: TreeCoord) -> Tuple[float, Optional[Tuple[str, float, str, float]]]:
        """Shortest exit/entry vertex pair between two coordinates"""
        if a.edge == b.edge:
            return abs(a.offset - b.offset), None
        best, route = math.inf, None
        for u, du in self._ends(a):
            for v, dv in self._ends(b):
                total = du + self._vertex_dist[u][v] + dv
                if total < best:
                    best, route = total, (u, du, v, dv)
        return best, route

    def _distance(self, p: Point, q: Point) -> float:
        return self._route(p.coords, q.coords)[0]

    def _offset_of(self, vertex: str, key: EdgeKey) -> float:
        return 0.0 if vertex == key[0] else self._lengths[key]

    def _legs(self, p: Point, q: Point) -> List[Leg]:
        a, b = p.coords, q.coords
        _, route = self._route(a, b)
        if route is None:
            return [(a.edge, a.offset, b.offset)]
        u, _, v, _ = route
        legs = [(a.edge, a.offset, self._offset_of(u, a.edge))]
        path = self._vertex_path[u][v]
        for w1, w2 in zip(path, path[1:]):
            key = tuple(sorted((w1, w2)))
            legs.append((key, self._offset_of(w1, key), self._offset_of(w2, key)))
        legs.append((b.edge, self._offset_of(v, b.edge), b.offset))
        return [leg for leg in legs if leg[1] != leg[2]]

    def _walk(self, legs: List[Leg], arc: float) -> Point:
        travelled = 0.0
        for key, start, end in legs:
            span = abs(end - start)
            if arc <= travelled + span:
                local = arc - travelled
                return self._canonical(key, start + local if end > start else start - local)
            travelled += span
        key, _, end = legs[-1]
        return self._canonical(key, end)

    def _geodesic_point(self, p: Point, q: Point, t: float) -> Point:
        return self._walk(self._legs(p, q), t * self._distance(p, q))

    def _extend(self, p: Point, x: Point, s: float) -> Point:
        d = self._distance(p, x)
        if s > 1.0:
            return self._continue(p, x, (s - 1.0) * d)
        return self._continue(x, p, -s * d)

    def _continue(self, start: Point, end: Point, remaining: float) -> Point:
        """
        Walk `remaining` past `end` in the direction of travel from start.
        At a vertex the walk takes the smallest incident edge other than the
        one it arrived on.
        """
        key, edge_start, edge_end = self._legs(start, end)[-1]
        sign = 1.0 if edge_end > edge_start else -1.0
        offset = edge_end
        while True:
            length = self._lengths[key]
            room = length - offset if sign > 0 else offset
            if remaining <= room:
                return self._canonical(key, offset + sign * remaining)
            remaining -= room
            vertex = key[1] if sign > 0 else key[0]
            choices = [k for k in self._incident[vertex] if k != key]
            if not choices:
                if remaining <= LEAF_SLACK:
                    return self.vertex(vertex)
                raise NoExtension(
                    f"Geodesic cannot be extended past leaf {vertex!r}",
                    metadata={'leaf': vertex, 'remaining': remaining}
                )
            key = choices[0]
            sign = 1.0 if vertex == key[0] else -1.0
            offset = 0.0 if sign > 0 else self._lengths[key]

    def _germ(self, p: Point, x: Point) -> Tuple[EdgeKey, float]:
        key, start, end = self._legs(p, x)[0]
        return key, math.copysign(1.0, end - start)

    def exact_angle(self, p: Point, x: Point, y: Point) -> Optional[float]:
        return 0.0 if self._germ(p, x) == self._germ(p, y) else math.pi

    # ------------------------------------------------------------------
    # Membership, sampling, parsing
    # ------------------------------------------------------------------

    def contains(self, p: Point) -> bool:
        coord = p.coords
        if p.space_id != self.space_id or not isinstance(coord, TreeCoord):
            return False
        if coord.edge not in self._lengths:
            return False
        return 0.0 <= coord.offset <= self._lengths[coord.edge]

    def sample_point(self, rng: np.random.Generator, scale: float = 1.0) -> Point:
        edges = self.edges
        key = edges[int(rng.integers(0, len(edges)))]
        return self._canonical(key, float(rng.uniform(0.0, self._lengths[key])))

    def parse_point(self, text: str) -> Point:
        """
        Accepts "vertex:<id>" and "edge:<u>,<v>,<offset from u>".
        """
        kind, _, body = text.strip().partition(":")
        kind = kind.strip().lower()
        if kind == "vertex":
            return self.vertex(body.strip())
        if kind == "edge":
            parts = [part.strip() for part in body.split(",")]
            if len(parts) != 3:
                raise DomainError(f"Edge point needs u,v,offset: {text!r}")
            try:
                offset = float(parts[2])
            except ValueError as exc:
                raise DomainError(f"Bad edge offset in {text!r}") from exc
            return self.point_on_edge(parts[0], parts[1], offset)
        raise DomainError(f"Cannot parse tree point {text!r}")

    # ------------------------------------------------------------------
    # Projection
    # ------------------------------------------------------------------

    def project_special(self, convex_set, x: Point) -> Optional[Point]:
        if isinstance(convex_set, Subtree):
            return self._project_subtree(convex_set, x)
        if isinstance(convex_set, Segment):
            return self._project_segment(convex_set, x)
        return None

    def _project_subtree(self, subtree: Subtree, x: Point) -> Point:
        members = set(subtree.vertices)
        unknown = members - set(self._incident)
        if unknown:
            raise DomainError(f"Subtree references unknown vertices {sorted(unknown)}")
        if not nx.is_connected(self.graph.subgraph(members)):
            raise DomainError("Subtree vertex set is not connected")

        vertex = self.vertex_at(x)
        key = x.coords.edge
        if vertex in members or (vertex is None and key[0] in members and key[1] in members):
            return x
        # the gate of x into a subtree is its nearest vertex
        nearest = min(subtree.vertices, key=lambda v: self._distance(x, self.vertex(v)))
        return self.vertex(nearest)

    def _project_segment(self, segment: Segment, x: Point) -> Point:
        start, end = segment.start, segment.end
        self._check(start, end)
        length = self.distance(start, end)
        if length == 0.0:
            return start
        # Gromov product (x|end)_start locates where [start, x] leaves the segment
        arc = 0.5 * (self.distance(start, x) + length - self.distance(end, x))
        return self.geodesic_point(start, end, min(1.0, max(0.0, arc / length)))


def build_tree_space(spec) -> TreeSpace:
    """TreeSpace from a TreeSpec or a raw mapping; validation failures become InvalidSpec"""
    try:
        if not isinstance(spec, TreeSpec):
            spec = TreeSpec.model_validate(spec)
    except ValidationError as exc:
        raise InvalidSpec(
            "Invalid tree specification",
            metadata={'errors': [e['msg'] for e in exc.errors()]}
        ) from exc
    return TreeSpace(spec)
