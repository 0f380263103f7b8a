"""holescan: boundary and hole detection for edge-manifold triangle meshes.

Detects every boundary loop of a triangle mesh even when singular vertices
are present, decomposes loops with repeated vertices into simple cycles,
and classifies the result into coastlines, tide holes, and lake holes per
edge-connected component.

Typical use::

    from holescan import build_mesh, detect_holes
    mesh = build_mesh(vertices, triangles)
    report = detect_holes(mesh)
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    DegenerateTriangleError,
    DuplicateTriangleError,
    EdgeNotInTriangleError,
    HolescanError,
    IndexOutOfRangeError,
    InternalInvariantError,
    InvalidSpecError,
    InvalidSplitError,
    MalformedHeaderError,
    MeshBuildError,
    NonFinitePositionError,
    NonTriangleFaceError,
    NotEdgeManifoldError,
    NotHalfEdgeError,
    OrphanBoundaryError,
    PlyError,
    UnsupportedFormatError,
)
from .mesh import (  # noqa: F401
    EdgeClass,
    Mesh,
    build_mesh,
    classify_edges,
    edge_connected_components,
    edge_key,
    is_edge_manifold,
    non_manifold_edges,
    one_ring,
    singular_vertices,
    transition_edge,
)
from .trace import (  # noqa: F401
    Boundary,
    canonical_cycle,
    construct_boundaries,
    next_halfedge,
)
from .decompose import decompose, find_repeated_occurrence, split_at  # noqa: F401
from .classify import (  # noqa: F401
    ContinentReport,
    HoleReport,
    boundary_length,
    classify,
    detect_holes,
    has_singular_vertex,
)
from .meshio import (  # noqa: F401
    export_boundaries_obj,
    read_ply,
    report_document,
    write_report,
)
