"""Triangle mesh representation and edge topology queries.

A mesh is an immutable vertex table plus a triangle index table. Edges are
identified by unordered vertex pairs ``(lo, hi)`` with ``lo < hi``; oriented
edges are plain ``(tail, head)`` tuples. An edge adjacent to exactly one
triangle is a half-edge (an open boundary edge), one adjacent to exactly two
is a full edge, and anything with three or more adjacent triangles makes the
mesh non edge-manifold.

Triangle winding is preserved from the input but never assumed globally
consistent.
"""

from __future__ import annotations

from enum import Enum
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateTriangleError,
    DuplicateTriangleError,
    EdgeNotInTriangleError,
    IndexOutOfRangeError,
    NonFinitePositionError,
)

# An unordered edge is always (lo, hi) with lo < hi; an oriented edge is
# (tail, head). Both are plain int tuples.
EdgeKey = tuple[int, int]
DirectedEdge = tuple[int, int]


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Normalize an oriented vertex pair to its unordered edge key."""
    return (u, v) if u < v else (v, u)


class EdgeClass(Enum):
    """Adjacency class of an edge: 1, 2, or >= 3 incident triangles."""

    HALF = "half"
    FULL = "full"
    NON_MANIFOLD = "non_manifold"


class Mesh:
    """Immutable triangle mesh with lazily built edge adjacency.

    Parameters
    ----------
    vertices : ndarray, shape (n, 3)
        Vertex positions, float64, all finite.
    triangles : ndarray, shape (m, 3)
        Vertex indices per triangle. Winding is kept as given.

    Notes
    -----
    Use :func:`build_mesh` to construct a validated mesh; this constructor
    assumes its inputs were already checked. Instances are safe for
    concurrent read-only use; the derived adjacency structures are built
    once on first access and never mutated afterwards.
    """

    def __init__(self, vertices: np.ndarray, triangles: np.ndarray):
        self.vertices = vertices
        self.triangles = triangles
        self.vertices.setflags(write=False)
        self.triangles.setflags(write=False)

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]

    @property
    def triangle_count(self) -> int:
        return self.triangles.shape[0]

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], list[int]]:
        """Map from edge key to the list of adjacent triangle indices."""
        index: dict[tuple[int, int], list[int]] = {}
        for ti, (a, b, c) in enumerate(self.triangles.tolist()):
            for u, v in ((a, b), (b, c), (c, a)):
                k = (u, v) if u < v else (v, u)
                tris = index.get(k)
                if tris is None:
                    index[k] = [ti]
                else:
                    tris.append(ti)
        return index

    @cached_property
    def half_edges(self) -> frozenset[tuple[int, int]]:
        """Edge keys adjacent to exactly one triangle."""
        return frozenset(k for k, t in self.edge_index.items() if len(t) == 1)

    @cached_property
    def vertex_half_edges(self) -> dict[int, list[tuple[int, int]]]:
        """Map from vertex id to the half-edge keys touching it."""
        incident: dict[int, list[tuple[int, int]]] = {}
        for k in self.half_edges:
            incident.setdefault(k[0], []).append(k)
            incident.setdefault(k[1], []).append(k)
        for keys in incident.values():
            keys.sort()
        return incident

    @cached_property
    def _vertex_triangles(self) -> dict[int, list[int]]:
        ring: dict[int, list[int]] = {}
        for ti, tri in enumerate(self.triangles.tolist()):
            for v in tri:
                ring.setdefault(v, []).append(ti)
        return ring

    def __repr__(self) -> str:
        return f"Mesh({self.vertex_count} vertices, {self.triangle_count} triangles)"


def build_mesh(vertices, triangles) -> Mesh:
    """Validate raw vertex/triangle tables and build a :class:`Mesh`.

    Parameters
    ----------
    vertices : array_like, shape (n, 3)
        Vertex positions. Unreferenced vertices are allowed (common in
        scanned data exports) and simply ignored by topology queries.
    triangles : array_like, shape (m, 3)
        Vertex index triples. Winding is preserved as given.

    Returns
    -------
    Mesh

    Raises
    ------
    NonFinitePositionError
        If any coordinate is NaN or infinite.
    DegenerateTriangleError
        If a triple repeats a vertex id.
    IndexOutOfRangeError
        If a triple references a vertex outside the table.
    DuplicateTriangleError
        If two triples cover the same vertex set (either winding);
        duplicates would silently turn half-edges into full edges.
    """
    verts = np.ascontiguousarray(vertices, dtype=np.float64)
    if verts.size == 0:
        verts = verts.reshape(0, 3)
    if verts.ndim != 2 or verts.shape[1] != 3:
        raise ValueError(f"vertices must have shape (n, 3), got {verts.shape}")
    if not np.isfinite(verts).all():
        bad = int(np.flatnonzero(~np.isfinite(verts).all(axis=1))[0])
        raise NonFinitePositionError(f"vertex {bad} has a non-finite coordinate")

    tris = np.ascontiguousarray(triangles, dtype=np.int64)
    if tris.size == 0:
        tris = tris.reshape(0, 3)
    if tris.ndim != 2 or tris.shape[1] != 3:
        raise ValueError(f"triangles must have shape (m, 3), got {tris.shape}")

    if tris.shape[0]:
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        degenerate = (a == b) | (b == c) | (a == c)
        if degenerate.any():
            bad = int(np.flatnonzero(degenerate)[0])
            raise DegenerateTriangleError(
                f"triangle {bad} repeats a vertex id: {tuple(tris[bad])}"
            )
        out_of_range = (tris < 0) | (tris >= verts.shape[0])
        if out_of_range.any():
            bad = int(np.flatnonzero(out_of_range.any(axis=1))[0])
            raise IndexOutOfRangeError(
                f"triangle {bad} references vertex outside table: {tuple(tris[bad])}"
            )
        canon = np.sort(tris, axis=1)
        _, first, counts = np.unique(
            canon, axis=0, return_index=True, return_counts=True
        )
        if (counts > 1).any():
            dup = tuple(canon[int(first[np.flatnonzero(counts > 1)[0]])])
            raise DuplicateTriangleError(
                f"triangles duplicate the vertex set {dup} (winding ignored)"
            )

    return Mesh(verts, tris)


def classify_edges(mesh: Mesh) -> dict[tuple[int, int], EdgeClass]:
    """Classify every edge key of the mesh by its triangle adjacency count.

    Half <=> 1 adjacent triangle, Full <=> 2, NonManifold <=> 3 or more.
    The exact adjacency count is the list length in ``mesh.edge_index``.
    """
    classes = {}
    for k, tris in mesh.edge_index.items():
        n = len(tris)
        if n == 1:
            classes[k] = EdgeClass.HALF
        elif n == 2:
            classes[k] = EdgeClass.FULL
        else:
            classes[k] = EdgeClass.NON_MANIFOLD
    return classes


def is_edge_manifold(mesh: Mesh) -> bool:
    """True iff no edge is adjacent to three or more triangles."""
    return all(len(t) <= 2 for t in mesh.edge_index.values())


def non_manifold_edges(mesh: Mesh) -> list[tuple[int, int]]:
    """Edge keys with three or more adjacent triangles, sorted."""
    return sorted(k for k, t in mesh.edge_index.items() if len(t) >= 3)


def singular_vertices(mesh: Mesh) -> set[int]:
    """Vertices incident to more than two half-edges.

    These are the points where naive boundary tracing becomes ambiguous.
    Assumes an edge-manifold mesh.
    """
    return {v for v, keys in mesh.vertex_half_edges.items() if len(keys) > 2}


def one_ring(mesh: Mesh, v: int) -> set[int]:
    """Indices of all triangles containing vertex ``v``."""
    if not 0 <= v < mesh.vertex_count:
        raise IndexOutOfRangeError(f"vertex id {v} outside table")
    return set(mesh._vertex_triangles.get(v, ()))


def transition_edge(e: DirectedEdge, t) -> tuple[int, int]:
    """Pivot an oriented edge inside a triangle around the edge's head.

    Given ``e = (tail, head)`` and a triangle containing both endpoints,
    return the triangle's edge that contains ``head`` but not ``tail``,
    oriented so its own head is the pivot vertex ``head``. Repeated
    application therefore rotates around the pivot.

    Parameters
    ----------
    e : tuple (tail, head)
    t : sequence of 3 vertex ids

    Returns
    -------
    tuple (third_vertex, head)

    Raises
    ------
    EdgeNotInTriangleError
        If the triangle does not contain both endpoints of ``e``.
    """
    tail, head = e
    a, b, c = int(t[0]), int(t[1]), int(t[2])
    if tail == head:
        raise EdgeNotInTriangleError(f"degenerate edge {e!r}")
    tri = {a, b, c}
    if tail not in tri or head not in tri:
        raise EdgeNotInTriangleError(f"edge {e!r} not in triangle {(a, b, c)!r}")
    third = a + b + c - tail - head
    return (third, head)


def edge_connected_components(mesh: Mesh) -> np.ndarray:
    """Label triangles by edge-connected component.

    Two triangles get the same label iff linked by a chain of shared edges;
    sharing only a vertex does not connect them. Labels are consecutive
    integers starting at 0, numbered by first triangle occurrence.

    Returns
    -------
    ndarray of int, length ``triangle_count``
    """
    m = mesh.triangle_count
    parent = list(range(m))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for tris in mesh.edge_index.values():
        if len(tris) > 1:
            r0 = find(tris[0])
            for ti in tris[1:]:
                parent[find(ti)] = r0

    labels = np.empty(m, dtype=np.int64)
    relabel: dict[int, int] = {}
    for ti in range(m):
        root = find(ti)
        labels[ti] = relabel.setdefault(root, len(relabel))
    return labels
