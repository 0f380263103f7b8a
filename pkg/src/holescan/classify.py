"""Sorting simple boundaries into coastlines, tide holes, and lake holes.

The longest remaining boundary is extracted as a coastline; the
edge-connected triangle component carrying it is its continent. Every other
boundary living on that component is one of the continent's holes: a tide
hole if it shares at least one vertex with the coastline, a lake hole
otherwise. The loop repeats on what is left, so continents come out ordered
by decreasing coastline length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotEdgeManifoldError, OrphanBoundaryError
from .mesh import Mesh, edge_connected_components, is_edge_manifold, singular_vertices
from .trace import Boundary, canonical_cycle, construct_boundaries
from .decompose import decompose


@dataclass(frozen=True)
class ContinentReport:
    """One coastline with its triangle component and classified holes."""

    index: int
    coastline: Boundary
    triangle_component: frozenset[int]
    tide_holes: tuple[Boundary, ...]
    lake_holes: tuple[Boundary, ...]
    coastline_length: float


@dataclass(frozen=True)
class HoleReport:
    """Full detection result: mesh statistics, boundaries, continents.

    ``boundaries[i]`` has id ``i``; lengths and singular-vertex flags are
    parallel tuples. ``continents`` is empty when classification was
    skipped.
    """

    vertex_count: int
    triangle_count: int
    half_edge_count: int
    singular_vertex_count: int
    edge_manifold: bool
    boundaries: tuple[Boundary, ...]
    lengths: tuple[float, ...]
    singular_flags: tuple[bool, ...]
    continents: tuple[ContinentReport, ...]

    def boundary_id(self, b: Boundary) -> int:
        return self._id_by_cycle[b.cycle]

    @cached_property
    def _id_by_cycle(self) -> dict[tuple[int, ...], int]:
        return {b.cycle: i for i, b in enumerate(self.boundaries)}


def boundary_length(b: Boundary, mesh: Mesh) -> float:
    """Sum of the Euclidean edge lengths of a boundary, in mesh units.

    Vertices with coincident positions contribute zero length; topology and
    geometry stay independent.
    """
    pts = mesh.vertices[list(b.cycle)]
    return float(np.linalg.norm(pts - np.roll(pts, -1, axis=0), axis=1).sum())


def has_singular_vertex(b: Boundary, mesh: Mesh) -> bool:
    """True iff any cycle vertex touches more than two half-edges."""
    incident = mesh.vertex_half_edges
    return any(len(incident.get(v, ())) > 2 for v in b.cycle)


def _boundary_component(b: Boundary, mesh: Mesh, labels: np.ndarray) -> int:
    """Component label of the triangles adjacent to a boundary's edges."""
    index = mesh.edge_index
    seen = {int(labels[index[k][0]]) for k in b.edge_keys}
    if len(seen) != 1:
        raise OrphanBoundaryError(
            f"boundary {b.cycle[:6]}... spans components {sorted(seen)}"
        )
    return seen.pop()


def classify(boundaries, mesh: Mesh) -> list[ContinentReport]:
    """Group simple boundaries into continents with classified holes.

    Parameters
    ----------
    boundaries : iterable of Boundary
        Simple boundaries of ``mesh``, as produced by tracing plus
        decomposition.
    mesh : Mesh

    Returns
    -------
    list of ContinentReport
        Indexed 1, 2, ... in extraction order; coastline lengths are
        non-increasing. Every input boundary lands in exactly one report,
        as its coastline, a tide hole, or a lake hole.

    Notes
    -----
    Length ties between coastline candidates break by the canonical vertex
    cycle, smallest first.
    """
    boundaries = list(boundaries)
    labels = edge_connected_components(mesh)
    lengths = [boundary_length(b, mesh) for b in boundaries]
    comp = [_boundary_component(b, mesh, labels) for b in boundaries]

    # Global max extraction == walking a list sorted by (-length, tiebreak)
    # and skipping everything already swept up as a hole.
    order = sorted(
        range(len(boundaries)),
        key=lambda i: (-lengths[i], canonical_cycle(boundaries[i].cycle)),
    )
    by_component: dict[int, list[int]] = {}
    for i in order:
        by_component.setdefault(comp[i], []).append(i)

    assigned = [False] * len(boundaries)
    reports: list[ContinentReport] = []
    for i in order:
        if assigned[i]:
            continue
        coastline = boundaries[i]
        assigned[i] = True
        coast_verts = coastline.vertex_set
        tide: list[Boundary] = []
        lake: list[Boundary] = []
        for j in by_component[comp[i]]:
            if assigned[j]:
                continue
            assigned[j] = True
            hole = boundaries[j]
            if coast_verts & hole.vertex_set:
                tide.append(hole)
            else:
                lake.append(hole)
        component = frozenset(np.flatnonzero(labels == comp[i]).tolist())
        reports.append(
            ContinentReport(
                index=len(reports) + 1,
                coastline=coastline,
                triangle_component=component,
                tide_holes=tuple(tide),
                lake_holes=tuple(lake),
                coastline_length=lengths[i],
            )
        )
    return reports


def detect_holes(mesh: Mesh, *, classify_holes: bool = True) -> HoleReport:
    """Run the full pipeline on a mesh: trace, decompose, classify.

    With ``classify_holes=False`` the (costlier) continent classification
    is skipped and the report carries an empty continent list; the
    boundary list is identical either way.

    Raises
    ------
    NotEdgeManifoldError
        If any edge has more than two adjacent triangles.
    """
    if not is_edge_manifold(mesh):
        raise NotEdgeManifoldError("mesh has an edge with > 2 adjacent triangles")

    simple: list[Boundary] = []
    for traced in construct_boundaries(mesh):
        simple.extend(decompose(traced))

    continents = tuple(classify(simple, mesh)) if classify_holes else ()
    return HoleReport(
        vertex_count=mesh.vertex_count,
        triangle_count=mesh.triangle_count,
        half_edge_count=len(mesh.half_edges),
        singular_vertex_count=len(singular_vertices(mesh)),
        edge_manifold=True,
        boundaries=tuple(simple),
        lengths=tuple(boundary_length(b, mesh) for b in simple),
        singular_flags=tuple(has_singular_vertex(b, mesh) for b in simple),
        continents=continents,
    )
