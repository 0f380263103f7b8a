"""Exception types raised by holescan.

All library errors derive from :class:`HolescanError` so callers can catch
everything from this package with a single except clause. The CLI maps these
onto exit codes (see ``holescan.cli``).
"""


class HolescanError(Exception):
    """Base class for all holescan errors."""


# --- mesh construction ---

class MeshBuildError(HolescanError):
    """Invalid vertex/triangle input to build_mesh."""


class DegenerateTriangleError(MeshBuildError):
    """A triangle repeats a vertex id."""


class IndexOutOfRangeError(MeshBuildError):
    """A triangle references a vertex id outside the vertex table."""


class DuplicateTriangleError(MeshBuildError):
    """Two triangles cover the same three vertices (either winding)."""


class NonFinitePositionError(MeshBuildError):
    """A vertex coordinate is NaN or infinite."""


# --- topology queries / traversal ---

class NotEdgeManifoldError(HolescanError):
    """The mesh has an edge adjacent to three or more triangles."""


class NotHalfEdgeError(HolescanError):
    """A traversal was started from an edge that is not a half-edge."""


class EdgeNotInTriangleError(HolescanError):
    """The queried triangle does not contain both endpoints of the edge."""


class InvalidSplitError(HolescanError):
    """Boundary split indices do not name two occurrences of one vertex."""


class InternalInvariantError(HolescanError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class OrphanBoundaryError(InternalInvariantError):
    """A boundary's adjacent triangles span more than one edge-connected
    component, which cannot happen for boundaries traced from a valid mesh."""


# --- file I/O ---

class PlyError(HolescanError):
    """Malformed or unsupported PLY data."""


class MalformedHeaderError(PlyError):
    """The PLY header cannot be parsed."""


class UnsupportedFormatError(PlyError):
    """The PLY file uses an encoding or layout outside the supported subset
    (ascii / binary_little_endian, vertex + face elements only)."""


class NonTriangleFaceError(PlyError):
    """A face element has a vertex count other than three."""


# --- generators ---

class InvalidSpecError(HolescanError):
    """A mesh generator spec is out of range or cannot be parsed."""
