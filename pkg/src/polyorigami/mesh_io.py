"""Wavefront .obj import, closed-manifold validation and stage-view JSON export."""

from __future__ import annotations

import io
import json
import logging
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence, TextIO

from .errors import (
    EmptyMesh,
    InconsistentWinding,
    IndexOutOfRange,
    MalformedLine,
    NotClosed,
    UnknownElement,
    UnreadableInput,
)

log = logging.getLogger(__name__)

Edge = tuple[int, int]

_IGNORED = {"vn", "vt", "o", "g", "s", "mtllib", "usemtl"}
COLORS = ("red", "blue")


class Point3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class PolyhedralMesh:
    """Vertices plus oriented polygonal faces (0-based vertex indices).

    The undirected edge set is derived from consecutive face corners. A mesh
    built directly is not checked; use :func:`mesh_from_arrays` or
    :func:`parse_obj` to get a validated one.
    """

    vertices: tuple[Point3, ...]
    faces: tuple[tuple[int, ...], ...]

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        found = set()
        for face in self.faces:
            for a, b in face_halfedges(face):
                found.add((a, b) if a < b else (b, a))
        return tuple(sorted(found))

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def reversed(self) -> PolyhedralMesh:
        """Same mesh with every face winding flipped."""
        return PolyhedralMesh(self.vertices, tuple((f[0],) + tuple(reversed(f[1:])) for f in self.faces))


def face_halfedges(face: Sequence[int]) -> Iterable[Edge]:
    n = len(face)
    for i in range(n):
        yield face[i], face[(i + 1) % n]


def validate_mesh(mesh: PolyhedralMesh) -> PolyhedralMesh:
    """Check the closed, consistently wound 2-manifold invariants.

    Raises the first violation found; returns the mesh unchanged otherwise.
    Meshes whose Euler characteristic is not 2 only produce a log warning.
    """
    if not mesh.faces:
        raise EmptyMesh("mesh has no faces")
    nv = len(mesh.vertices)
    for fi, face in enumerate(mesh.faces):
        if len(face) < 3:
            raise MalformedLine(f"face {fi} has {len(face)} vertices; at least 3 required")
        if len(set(face)) != len(face):
            raise MalformedLine(f"face {fi} repeats a vertex: {list(face)}")
        for v in face:
            if not 0 <= v < nv:
                raise IndexOutOfRange(f"face {fi} references vertex {v}; mesh has {nv}")
    for p in mesh.vertices:
        if not all(math.isfinite(c) for c in p):
            raise MalformedLine(f"non-finite vertex coordinate {tuple(p)}")

    directed = Counter(h for face in mesh.faces for h in face_halfedges(face))
    undirected = Counter()
    for (a, b), n in directed.items():
        undirected[(a, b) if a < b else (b, a)] += n
    for (a, b), n in sorted(undirected.items()):
        if n != 2:
            raise NotClosed(f"edge {a + 1}-{b + 1} has {n} incident faces; a closed surface needs 2")
    for (a, b), n in sorted(directed.items()):
        if n > 1:
            raise InconsistentWinding(f"edge {a + 1}-{b + 1} is traversed {a + 1}->{b + 1} by two faces")

    _check_vertex_fans(mesh)
    chi = mesh.euler_characteristic
    if chi != 2:
        log.warning("Euler characteristic is %d, not 2; surface is not genus 0", chi)
    return mesh


def _check_vertex_fans(mesh: PolyhedralMesh) -> None:
    # Each vertex's face corners must form a single fan, otherwise the
    # surface is pinched there and has no cyclic edge order.
    face_of = {}
    prev_of = {}
    for fi, face in enumerate(mesh.faces):
        n = len(face)
        for i, v in enumerate(face):
            face_of[(v, face[(i + 1) % n])] = fi
            prev_of[(v, face[(i + 1) % n])] = face[i - 1]
    corners = Counter(v for face in mesh.faces for v in face)
    seen = set()
    for (v, w) in sorted(face_of):
        if v in seen:
            continue
        seen.add(v)
        steps = 0
        cur = (v, w)
        while True:
            steps += 1
            cur = (v, prev_of[cur])
            if cur == (v, w):
                break
        if steps != corners[v]:
            raise NotClosed(f"vertex {v + 1} is non-manifold: its faces form more than one fan")


def mesh_from_arrays(vertices: Iterable[Sequence[float]], faces: Iterable[Sequence[int]]) -> PolyhedralMesh:
    mesh = PolyhedralMesh(
        tuple(Point3(*map(float, p)) for p in vertices),
        tuple(tuple(int(i) for i in f) for f in faces),
    )
    return validate_mesh(mesh)


def parse_obj(source: TextIO | str) -> PolyhedralMesh:
    """Parse Wavefront .obj text into a validated mesh.

    ``source`` is a text stream or the file content as a string. Only ``v``
    and ``f`` statements carry data; normals, texture coordinates, grouping
    and material statements are skipped. Face indices may be negative
    (relative to the vertices read so far) and may use the ``v/vt/vn`` forms,
    of which only the vertex part is kept.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    vertices: list[Point3] = []
    faces: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(source, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *args = line.split()
        if keyword == "v":
            if len(args) not in (3, 4):
                raise MalformedLine(f"line {lineno}: vertex needs 3 coordinates: {raw.strip()!r}")
            try:
                coords = [float(a) for a in args[:3]]
            except ValueError:
                raise MalformedLine(f"line {lineno}: bad coordinate in {raw.strip()!r}") from None
            if not all(math.isfinite(c) for c in coords):
                raise MalformedLine(f"line {lineno}: non-finite coordinate in {raw.strip()!r}")
            vertices.append(Point3(*coords))
        elif keyword == "f":
            if len(args) < 3:
                raise MalformedLine(f"line {lineno}: face needs at least 3 vertices")
            faces.append(tuple(_face_index(tok, len(vertices), lineno) for tok in args))
        elif keyword in _IGNORED:
            continue
        else:
            raise MalformedLine(f"line {lineno}: unsupported statement {keyword!r}")
    return validate_mesh(PolyhedralMesh(tuple(vertices), tuple(faces)))


def _face_index(token: str, vertex_count: int, lineno: int) -> int:
    head = token.split("/", 1)[0]
    try:
        idx = int(head)
    except ValueError:
        raise MalformedLine(f"line {lineno}: bad face index {token!r}") from None
    resolved = idx - 1 if idx > 0 else vertex_count + idx
    if idx == 0 or not 0 <= resolved < vertex_count:
        raise IndexOutOfRange(f"line {lineno}: face index {idx} with {vertex_count} vertices defined")
    return resolved


def load_obj(path: str | Path) -> PolyhedralMesh:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_obj(fh)
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableInput(f"cannot read {path}: {exc}") from exc


class Stage(str, Enum):
    MESH = "mesh"
    SPANNING_TREE = "tree"
    CIRCUIT = "circuit"


def export_stage(
    mesh: PolyhedralMesh,
    annotation: Mapping[Edge, str] | Iterable[tuple[Edge, str]] = (),
    stage: Stage | str = Stage.MESH,
) -> str:
    """Serialize one pipeline stage as a JSON document.

    ``annotation`` maps edges (vertex-index pairs, either order) to a color
    tag; tags are written in the order given.
    """
    stage = Stage(stage)
    items = annotation.items() if isinstance(annotation, Mapping) else annotation
    known = set(mesh.edges)
    tags = []
    for (a, b), color in items:
        edge = (a, b) if a < b else (b, a)
        if edge not in known:
            raise UnknownElement(f"edge {a}-{b} is not in the mesh")
        if color not in COLORS:
            raise UnknownElement(f"unknown color tag {color!r}")
        tags.append({"edge": list(edge), "color": color})
    doc = {
        "vertices": [list(p) for p in mesh.vertices],
        "faces": [list(f) for f in mesh.faces],
        "edge_tags": tags,
        "stage": stage.value,
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def read_stage(text: str) -> tuple[PolyhedralMesh, Stage, list[tuple[Edge, str]]]:
    """Inverse of :func:`export_stage`."""
    doc = json.loads(text)
    mesh = mesh_from_arrays(doc["vertices"], doc["faces"])
    tags = [((t["edge"][0], t["edge"][1]), t["color"]) for t in doc["edge_tags"]]
    return mesh, Stage(doc["stage"]), tags
