"""Deterministic synthetic meshes for tests, demos, and fuzzing.

Grid triangulation rule (fixed so fixtures stay reproducible everywhere):
vertices are numbered row-major over a (rows+1) x (cols+1) lattice with unit
spacing, vertex (r, c) sits at position (c, r, 0), and cell (r, c) with
top-left corner ``a = r * (cols + 1) + c`` splits into the two triangles
``(a, a+1, a+cols+2)`` and ``(a, a+cols+2, a+cols+1)``.

Random deletion uses SplitMix64 driving a partial Fisher-Yates shuffle (see
:class:`SplitMix64`); the algorithm is part of the public contract and will
not change, so a (spec, seed) pair names the same mesh forever.
"""

from __future__ import annotations

import ast
import struct
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidSpecError
from .mesh import Mesh, build_mesh

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Sebastiano Vigna's SplitMix64 generator.

    Tiny, well known, and trivially portable; used here instead of a
    library RNG because generated fixtures must never change between
    library versions. Bounded draws use plain modulo reduction.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def sample(self, n: int, k: int) -> list[int]:
        """k distinct values from range(n): partial Fisher-Yates shuffle."""
        pool = list(range(n))
        for i in range(k):
            j = i + self.next_u64() % (n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class Grid:
    rows: int
    cols: int


@dataclass(frozen=True)
class PunchedGrid:
    rows: int
    cols: int
    removed: frozenset  # of (row, col) cells


@dataclass(frozen=True)
class Tetrahedron:
    pass


@dataclass(frozen=True)
class Bowtie:
    pass


@dataclass(frozen=True)
class DoubleFan:
    pass


@dataclass(frozen=True)
class RandomDelete:
    base: "GenSpec"
    fraction: float
    seed: int


GenSpec = Union[Grid, PunchedGrid, Tetrahedron, Bowtie, DoubleFan, RandomDelete]


def _grid_tables(rows: int, cols: int, removed=frozenset()):
    if rows < 1 or cols < 1:
        raise InvalidSpecError(f"grid dims must be >= 1, got {rows}x{cols}")
    for r, c in removed:
        if not (0 <= r < rows and 0 <= c < cols):
            raise InvalidSpecError(f"removed cell {(r, c)} outside {rows}x{cols} grid")
    cs, rs = np.meshgrid(np.arange(cols + 1), np.arange(rows + 1))
    vertices = np.column_stack(
        [cs.ravel().astype(np.float64), rs.ravel().astype(np.float64),
         np.zeros((rows + 1) * (cols + 1))]
    )
    triangles = []
    for r in range(rows):
        for c in range(cols):
            if (r, c) in removed:
                continue
            a = r * (cols + 1) + c
            triangles.append((a, a + 1, a + cols + 2))
            triangles.append((a, a + cols + 2, a + cols + 1))
    return vertices, np.array(triangles, dtype=np.int64).reshape(-1, 3)


def generate(spec: GenSpec) -> Mesh:
    """Build the mesh a generator spec describes.

    Output is a pure function of the spec; ``RandomDelete`` keeps the base
    mesh's vertex table untouched and drops a sampled set of triangles
    (which can only lower edge adjacency counts, so edge-manifoldness is
    preserved).
    """
    if isinstance(spec, Grid):
        return build_mesh(*_grid_tables(spec.rows, spec.cols))
    if isinstance(spec, PunchedGrid):
        return build_mesh(*_grid_tables(spec.rows, spec.cols, frozenset(spec.removed)))
    if isinstance(spec, Tetrahedron):
        vertices = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        return build_mesh(vertices, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    if isinstance(spec, Bowtie):
        vertices = [(0, 0, 0), (1, -1, 0), (1, 1, 0), (-1, 1, 0), (-1, -1, 0)]
        return build_mesh(vertices, [(0, 1, 2), (0, 3, 4)])
    if isinstance(spec, DoubleFan):
        vertices = [
            (0, 0, 0),
            (1, -1, 0), (2, 0, 0), (1, 1, 0),
            (-1, 1, 0), (-2, 0, 0), (-1, -1, 0),
        ]
        return build_mesh(
            vertices, [(0, 1, 2), (0, 2, 3), (0, 4, 5), (0, 5, 6)]
        )
    if isinstance(spec, RandomDelete):
        if not 0.0 < spec.fraction < 1.0:
            raise InvalidSpecError(f"fraction must be in (0, 1), got {spec.fraction}")
        base = generate(spec.base)
        n = base.triangle_count
        k = int(spec.fraction * n)
        doomed = set(SplitMix64(spec.seed).sample(n, k))
        keep = [i for i in range(n) if i not in doomed]
        return build_mesh(base.vertices, base.triangles[keep])
    raise InvalidSpecError(f"unknown generator spec {spec!r}")


def parse_spec(text: str) -> GenSpec:
    """Parse a generator spec string such as ``random_delete(grid(10,10),0.5,7)``.

    Grammar is Python call syntax: ``grid(rows, cols)``,
    ``punched_grid(rows, cols, {(r, c), ...})``, ``tetrahedron``,
    ``bowtie``, ``double_fan``, and ``random_delete(spec, fraction, seed)``.
    """
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise InvalidSpecError(f"cannot parse spec {text!r}: {exc}") from None
    return _from_ast(node)


_NULLARY = {"tetrahedron": Tetrahedron, "bowtie": Bowtie, "double_fan": DoubleFan}


def _from_ast(node) -> GenSpec:
    if isinstance(node, ast.Name):
        if node.id in _NULLARY:
            return _NULLARY[node.id]()
        raise InvalidSpecError(f"unknown generator {node.id!r}")
    if not isinstance(node, ast.Call) or not isinstance(node.func, ast.Name):
        raise InvalidSpecError("spec must be a generator name or call")
    name, args = node.func.id, node.args
    if node.keywords:
        raise InvalidSpecError("keyword arguments not allowed in specs")
    if name in _NULLARY:
        if args:
            raise InvalidSpecError(f"{name} takes no arguments")
        return _NULLARY[name]()
    if name == "grid":
        r, c = (_int(a) for a in _arity(args, 2, name))
        return Grid(r, c)
    if name == "punched_grid":
        a1, a2, a3 = _arity(args, 3, name)
        if not isinstance(a3, (ast.Set, ast.List, ast.Tuple)):
            raise InvalidSpecError("punched_grid removed-cells must be a {(r,c), ...} set")
        cells = []
        for el in a3.elts:
            if not isinstance(el, ast.Tuple) or len(el.elts) != 2:
                raise InvalidSpecError("removed cell must be an (r, c) pair")
            cells.append((_int(el.elts[0]), _int(el.elts[1])))
        return PunchedGrid(_int(a1), _int(a2), frozenset(cells))
    if name == "random_delete":
        a1, a2, a3 = _arity(args, 3, name)
        return RandomDelete(_from_ast(a1), _number(a2), _int(a3))
    raise InvalidSpecError(f"unknown generator {name!r}")


def _arity(args, n, name):
    if len(args) != n:
        raise InvalidSpecError(f"{name} takes {n} arguments, got {len(args)}")
    return args


def _number(node) -> float:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_number(node.operand)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    raise InvalidSpecError("expected a number")


def _int(node) -> int:
    value = _number(node)
    if value != int(value):
        raise InvalidSpecError(f"expected an integer, got {value}")
    return int(value)


def write_ply(mesh: Mesh, path, *, binary: bool = False) -> None:
    """Write a mesh as PLY, ascii or binary little-endian.

    Positions are stored as doubles and indices as int32, so the two
    encodings parse back to identical meshes.
    """
    header = [
        "ply",
        "format binary_little_endian 1.0" if binary else "format ascii 1.0",
        "comment holescan generated mesh",
        f"element vertex {mesh.vertex_count}",
        "property double x",
        "property double y",
        "property double z",
        f"element face {mesh.triangle_count}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    with open(path, "wb") as fh:
        fh.write(("\n".join(header) + "\n").encode("ascii"))
        if binary:
            fh.write(np.ascontiguousarray(mesh.vertices, dtype="<f8").tobytes())
            face = struct.Struct("<B3i")
            for a, b, c in mesh.triangles.tolist():
                fh.write(face.pack(3, a, b, c))
        else:
            for x, y, z in mesh.vertices.tolist():
                fh.write(f"{x!r} {y!r} {z!r}\n".encode("ascii"))
            for a, b, c in mesh.triangles.tolist():
                fh.write(f"3 {a} {b} {c}\n".encode("ascii"))
