"""
Line-oriented tree files.

    # comment
    vertex hub
    vertex a
    edge hub a 1.0

All vertex lines come before the edge lines. Errors carry the line number.
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import ValidationError

from core.exceptions import InvalidSpec
from core.spaces.tree import TreeSpec

logger = logging.getLogger(__name__)


def _fail(message: str, line_no: int, source: str) -> InvalidSpec:
    return InvalidSpec(
        f"{source}:{line_no}: {message}",
        metadata={'line': line_no, 'source': source}
    )


def parse_tree_spec(text: str, source: str = "<string>") -> TreeSpec:
    vertices: List[str] = []
    edges: List[Tuple[str, str, float]] = []
    seen_edges = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if keyword == "vertex":
            if len(tokens) != 2:
                raise _fail("expected 'vertex <id>'", line_no, source)
            if edges:
                raise _fail("vertex lines must precede edge lines", line_no, source)
            if tokens[1] in vertices:
                raise _fail(f"duplicate vertex {tokens[1]!r}", line_no, source)
            vertices.append(tokens[1])

        elif keyword == "edge":
            if len(tokens) != 4:
                raise _fail("expected 'edge <u> <v> <length>'", line_no, source)
            u, v = tokens[1], tokens[2]
            for vertex in (u, v):
                if vertex not in vertices:
                    raise _fail(f"unknown vertex {vertex!r}", line_no, source)
            try:
                length = float(tokens[3])
            except ValueError:
                raise _fail(f"bad length {tokens[3]!r}", line_no, source)
            if not length > 0:
                raise _fail(f"edge length must be positive, got {length}", line_no, source)
            key = tuple(sorted((u, v)))
            if u == v or key in seen_edges:
                raise _fail(f"invalid or duplicate edge {u}-{v}", line_no, source)
            seen_edges.add(key)
            edges.append((u, v, length))

        else:
            raise _fail(f"unknown directive {keyword!r}", line_no, source)

    try:
        return TreeSpec(vertices=vertices, edges=edges)
    except ValidationError as exc:
        raise InvalidSpec(f"{source}: invalid tree", metadata={'source': source}) from exc


def load_tree_spec(path: Union[str, Path]) -> TreeSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidSpec(f"Cannot read tree file {path}", metadata={'source': str(path)}) from exc
    spec = parse_tree_spec(text, source=str(path))
    logger.info(f"Loaded tree {path} ({len(spec.vertices)} vertices, {len(spec.edges)} edges)")
    return spec


def dump_tree_spec(spec: TreeSpec) -> str:
    lines = [f"vertex {vertex}" for vertex in spec.vertices]
    lines += [f"edge {u} {v} {length!r}" for u, v, length in spec.edges]
    return "\n".join(lines) + "\n"
