"""File interfaces: PLY reading, JSON hole reports, OBJ boundary export.

The PLY reader covers the subset that scanned-data tooling actually emits:
ascii 1.0 and binary_little_endian 1.0, a vertex element with float or
double ``x y z`` (extra scalar properties are skipped), and a face element
with a single integer index-list property. Everything else is rejected
explicitly rather than guessed at.
"""

from __future__ import annotations

import hashlib
import json
import struct
from importlib import resources

import numpy as np

from . import __version__
from .classify import HoleReport
from .errors import (
    MalformedHeaderError,
    NonTriangleFaceError,
    PlyError,
    UnsupportedFormatError,
)
from .mesh import Mesh, build_mesh
from .trace import canonical_cycle

SCHEMA_VERSION = 1

_SCALAR_TYPES = {
    "char": "i1", "int8": "i1",
    "uchar": "u1", "uint8": "u1",
    "short": "i2", "int16": "i2",
    "ushort": "u2", "uint16": "u2",
    "int": "i4", "int32": "i4",
    "uint": "u4", "uint32": "u4",
    "float": "f4", "float32": "f4",
    "double": "f8", "float64": "f8",
}
_COUNT_TYPES = {"uchar", "uint8", "int", "int32", "uint", "uint32"}
_FLOAT_TYPES = {"float", "float32", "double", "float64"}
_INT_TYPES = {t for t in _SCALAR_TYPES if not t.startswith(("float", "double"))}


class _PlyHeader:
    def __init__(self):
        self.binary = False
        self.vertex_count = None
        self.face_count = None
        self.vertex_props: list[tuple[str, str]] = []  # (type, name)
        self.face_count_type = None
        self.face_index_type = None
        self.element_order: list[str] = []


def _parse_header(fh) -> _PlyHeader:
    def next_line() -> str:
        raw = fh.readline()
        if not raw:
            raise MalformedHeaderError("unexpected end of file inside header")
        try:
            return raw.decode("ascii").strip()
        except UnicodeDecodeError:
            raise MalformedHeaderError("non-ascii bytes in header") from None

    if next_line() != "ply":
        raise MalformedHeaderError("file does not start with 'ply'")

    hdr = _PlyHeader()
    current = None
    saw_format = False
    while True:
        line = next_line()
        if line == "end_header":
            break
        if not line or line.startswith(("comment", "obj_info")):
            continue
        fields = line.split()
        if fields[0] == "format":
            if len(fields) != 3 or fields[2] != "1.0":
                raise MalformedHeaderError(f"bad format line: {line!r}")
            if fields[1] == "ascii":
                hdr.binary = False
            elif fields[1] == "binary_little_endian":
                hdr.binary = True
            elif fields[1] == "binary_big_endian":
                raise UnsupportedFormatError("big-endian PLY is not supported")
            else:
                raise MalformedHeaderError(f"unknown format {fields[1]!r}")
            saw_format = True
        elif fields[0] == "element":
            if len(fields) != 3:
                raise MalformedHeaderError(f"bad element line: {line!r}")
            name = fields[1]
            try:
                count = int(fields[2])
            except ValueError:
                raise MalformedHeaderError(f"bad element count: {line!r}") from None
            if count < 0:
                raise MalformedHeaderError(f"negative element count: {line!r}")
            if name == "vertex":
                hdr.vertex_count = count
            elif name == "face":
                hdr.face_count = count
            else:
                raise UnsupportedFormatError(f"unsupported element {name!r}")
            hdr.element_order.append(name)
            current = name
        elif fields[0] == "property":
            if current == "vertex":
                if fields[1] == "list":
                    raise UnsupportedFormatError("list property on vertex element")
                if len(fields) != 3 or fields[1] not in _SCALAR_TYPES:
                    raise MalformedHeaderError(f"bad vertex property: {line!r}")
                hdr.vertex_props.append((fields[1], fields[2]))
            elif current == "face":
                if fields[1] != "list" or len(fields) != 5:
                    raise UnsupportedFormatError(
                        f"face element needs exactly one index-list property, got {line!r}"
                    )
                if hdr.face_count_type is not None:
                    raise UnsupportedFormatError("multiple face properties")
                if fields[2] not in _COUNT_TYPES:
                    raise UnsupportedFormatError(f"index count type {fields[2]!r}")
                if fields[3] not in _INT_TYPES:
                    raise UnsupportedFormatError(f"index type {fields[3]!r}")
                if fields[4] not in ("vertex_indices", "vertex_index"):
                    raise UnsupportedFormatError(f"face list property {fields[4]!r}")
                hdr.face_count_type = fields[2]
                hdr.face_index_type = fields[3]
            else:
                raise MalformedHeaderError("property before any element")
        else:
            raise MalformedHeaderError(f"unrecognized header line: {line!r}")

    if not saw_format:
        raise MalformedHeaderError("missing format line")
    if hdr.vertex_count is None or hdr.face_count is None:
        raise MalformedHeaderError("header must declare vertex and face elements")
    names = [n for _, n in hdr.vertex_props]
    if len(set(names)) != len(names):
        raise MalformedHeaderError("duplicate vertex property names")
    for axis in ("x", "y", "z"):
        if axis not in names:
            raise MalformedHeaderError(f"vertex element missing property {axis!r}")
    for t, n in hdr.vertex_props:
        if n in ("x", "y", "z") and t not in _FLOAT_TYPES:
            raise UnsupportedFormatError(f"vertex property {n!r} must be float/double")
    if hdr.face_count_type is None:
        raise MalformedHeaderError("face element missing index-list property")
    return hdr


def _read_ascii_body(fh, hdr: _PlyHeader):
    def data_lines():
        for raw in fh:
            line = raw.decode("ascii", errors="replace").strip()
            if line:
                yield line

    lines = data_lines()
    vertices = np.empty((hdr.vertex_count, 3), dtype=np.float64)
    faces = np.empty((hdr.face_count, 3), dtype=np.int64)
    names = [n for _, n in hdr.vertex_props]
    cols = [names.index(a) for a in ("x", "y", "z")]

    for name in hdr.element_order:
        count = hdr.vertex_count if name == "vertex" else hdr.face_count
        for i in range(count):
            try:
                tokens = next(lines)
            except StopIteration:
                raise PlyError(f"unexpected end of file in {name} data") from None
            tokens = tokens.split()
            if name == "vertex":
                if len(tokens) < len(names):
                    raise PlyError(f"vertex row {i} has too few values")
                try:
                    vertices[i] = [float(tokens[c]) for c in cols]
                except ValueError:
                    raise PlyError(f"vertex row {i} has a non-numeric value") from None
            else:
                try:
                    n = int(tokens[0])
                except (ValueError, IndexError):
                    raise PlyError(f"face row {i} has a bad count") from None
                if n != 3:
                    raise NonTriangleFaceError(f"face row {i} has {n} indices")
                if len(tokens) < 4:
                    raise PlyError(f"face row {i} has too few indices")
                try:
                    faces[i] = [int(t) for t in tokens[1:4]]
                except ValueError:
                    raise PlyError(f"face row {i} has a non-integer index") from None
    return vertices, faces


def _read_binary_body(fh, hdr: _PlyHeader):
    buf = fh.read()
    offset = 0
    vertices = faces = None
    vdtype = np.dtype([(n, "<" + _SCALAR_TYPES[t]) for t, n in hdr.vertex_props])

    for name in hdr.element_order:
        if name == "vertex":
            need = vdtype.itemsize * hdr.vertex_count
            if len(buf) - offset < need:
                raise PlyError("unexpected end of file in vertex data")
            rec = np.frombuffer(buf, dtype=vdtype, count=hdr.vertex_count, offset=offset)
            vertices = np.column_stack(
                [rec["x"], rec["y"], rec["z"]]
            ).astype(np.float64)
            offset += need
        else:
            cdt = "<" + _SCALAR_TYPES[hdr.face_count_type]
            idt = "<" + _SCALAR_TYPES[hdr.face_index_type]
            fdtype = np.dtype([("n", cdt), ("v", idt, (3,))])
            need = fdtype.itemsize * hdr.face_count
            if len(buf) - offset == need and hdr.face_count:
                rec = np.frombuffer(buf, dtype=fdtype, count=hdr.face_count, offset=offset)
                if (rec["n"] == 3).all():
                    faces = rec["v"].astype(np.int64)
                    offset += need
                    continue
            # counts may vary; walk records one by one to find the culprit
            counter = struct.Struct(cdt)
            index = struct.Struct(idt)
            rows = np.empty((hdr.face_count, 3), dtype=np.int64)
            for i in range(hdr.face_count):
                if len(buf) - offset < counter.size:
                    raise PlyError(f"unexpected end of file at face {i}")
                (n,) = counter.unpack_from(buf, offset)
                offset += counter.size
                if n != 3:
                    raise NonTriangleFaceError(f"face row {i} has {n} indices")
                if len(buf) - offset < 3 * index.size:
                    raise PlyError(f"unexpected end of file at face {i}")
                rows[i] = [
                    index.unpack_from(buf, offset + k * index.size)[0]
                    for k in range(3)
                ]
                offset += 3 * index.size
            faces = rows
    if faces is None:
        faces = np.empty((0, 3), dtype=np.int64)
    return vertices, faces


def read_ply(path) -> Mesh:
    """Read a triangle mesh from a PLY file.

    Extra scalar vertex properties (normals, colors, quality, ...) are
    ignored. Faces must have exactly three indices.

    Raises
    ------
    MalformedHeaderError, UnsupportedFormatError, NonTriangleFaceError, PlyError
        For files outside the supported subset.
    MeshBuildError
        Propagated from :func:`holescan.mesh.build_mesh` validation.
    OSError
        If the file cannot be read.
    """
    with open(path, "rb") as fh:
        hdr = _parse_header(fh)
        if hdr.binary:
            vertices, faces = _read_binary_body(fh, hdr)
        else:
            vertices, faces = _read_ascii_body(fh, hdr)
    return build_mesh(vertices, faces)


def sha256_of_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def report_document(
    report: HoleReport, *, input_path: str = "", input_sha256: str = ""
) -> dict:
    """Serializable mirror of a hole report (stable key order).

    Boundary cycles are stored in canonical form (smallest vertex first,
    traversal direction kept); lengths keep full double precision so the
    document round-trips losslessly.
    """
    boundaries = []
    for i, b in enumerate(report.boundaries):
        boundaries.append(
            {
                "id": i,
                "vertex_cycle": list(canonical_cycle(b.cycle)),
                "length": report.lengths[i],
                "simple": b.is_simple,
                "has_singular_vertex": report.singular_flags[i],
            }
        )
    continents = []
    for c in report.continents:
        continents.append(
            {
                "index": c.index,
                "coastline_id": report.boundary_id(c.coastline),
                "triangle_count": len(c.triangle_component),
                "tide_hole_ids": sorted(report.boundary_id(h) for h in c.tide_holes),
                "lake_hole_ids": sorted(report.boundary_id(h) for h in c.lake_holes),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "input": {
            "path": input_path,
            "sha256": input_sha256,
            "vertex_count": report.vertex_count,
            "triangle_count": report.triangle_count,
            "half_edge_count": report.half_edge_count,
            "singular_vertex_count": report.singular_vertex_count,
            "edge_manifold": report.edge_manifold,
        },
        "boundaries": boundaries,
        "continents": continents,
    }


def write_report(
    report: HoleReport, path, *, input_path: str = "", input_sha256: str = ""
) -> None:
    """Write the JSON hole report. Output is byte-stable for a given input."""
    doc = report_document(report, input_path=input_path, input_sha256=input_sha256)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_schema() -> dict:
    """The published JSON schema for report documents."""
    text = resources.files("holescan").joinpath("report_schema.json").read_text()
    return json.loads(text)


def export_boundaries_obj(report: HoleReport, mesh: Mesh, path) -> None:
    """Write detected boundaries as OBJ polylines for viewing/debugging.

    Only vertices referenced by some boundary are emitted (renumbered from
    1 per OBJ convention); each boundary becomes one closed ``l`` record,
    preceded by a comment naming its continent and kind when classification
    ran, or its boundary id otherwise.
    """
    kinds: dict[int, tuple[int, str]] = {}
    for c in report.continents:
        kinds[report.boundary_id(c.coastline)] = (c.index, "coastline")
        for h in c.tide_holes:
            kinds[report.boundary_id(h)] = (c.index, "tide_hole")
        for h in c.lake_holes:
            kinds[report.boundary_id(h)] = (c.index, "lake_hole")

    obj_id: dict[int, int] = {}
    cycles = [canonical_cycle(b.cycle) for b in report.boundaries]
    for cyc in cycles:
        for v in cyc:
            if v not in obj_id:
                obj_id[v] = len(obj_id) + 1

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# holescan boundary polylines\n")
        fh.write(f"# tool_version {__version__}\n")
        positions = mesh.vertices
        for v in obj_id:
            x, y, z = positions[v].tolist()
            fh.write(f"v {x!r} {y!r} {z!r}\n")
        for i, cyc in enumerate(cycles):
            if i in kinds:
                idx, kind = kinds[i]
                fh.write(f"# continent {idx} {kind}\n")
            else:
                fh.write(f"# boundary {i}\n")
            loop = " ".join(str(obj_id[v]) for v in cyc)
            fh.write(f"l {loop} {obj_id[cyc[0]]}\n")
