"""Boundary tracing over the half-edge set.

Every half-edge of an edge-manifold mesh lies on exactly one closed boundary
loop, even at singular vertices where more than two half-edges meet. Finding
the successor of a half-edge works by pivoting: take the half-edge's unique
triangle, rotate around the head vertex by repeatedly crossing full edges of
the local triangle fan, and stop at the first half-edge encountered. The fan
crossed this way never leaks into another fan at the same vertex, which is
what keeps boundaries separated at singular vertices.

:func:`construct_boundaries` repeats that step from deterministic seeds until
the half-edge set is exhausted, yielding a partition of all half-edges into
closed vertex cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    InternalInvariantError,
    NotEdgeManifoldError,
    NotHalfEdgeError,
)
from .mesh import DirectedEdge, Mesh, edge_key, is_edge_manifold


@dataclass(frozen=True)
class Boundary:
    """A closed loop of chained half-edges, stored as its vertex cycle.

    ``cycle[i]`` is the tail of the i-th half-edge; its head is
    ``cycle[(i + 1) % n]``. A boundary is *simple* when no vertex repeats
    and *complex* otherwise. Consecutive vertices are always distinct and
    no undirected edge appears twice.
    """

    cycle: tuple[int, ...]

    def __post_init__(self):
        n = len(self.cycle)
        if n < 3:
            raise ValueError(f"boundary needs at least 3 half-edges, got {n}")
        for i, u in enumerate(self.cycle):
            if u == self.cycle[(i + 1) % n]:
                raise ValueError(f"degenerate half-edge at cycle position {i}")
        keys = self.edge_keys
        if len(set(keys)) != n:
            raise ValueError("boundary repeats an undirected edge")

    def __len__(self) -> int:
        return len(self.cycle)

    @cached_property
    def halfedges(self) -> tuple[tuple[int, int], ...]:
        """The oriented half-edges of the loop, in traversal order."""
        c = self.cycle
        n = len(c)
        return tuple((c[i], c[(i + 1) % n]) for i in range(n))

    @cached_property
    def edge_keys(self) -> tuple[tuple[int, int], ...]:
        """Undirected edge keys in traversal order."""
        c = self.cycle
        n = len(c)
        return tuple(edge_key(c[i], c[(i + 1) % n]) for i in range(n))

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.cycle)

    @property
    def is_simple(self) -> bool:
        """True iff no vertex occurs twice in the cycle."""
        return len(self.vertex_set) == len(self.cycle)

    def canonical_cycle(self) -> tuple[int, ...]:
        """Rotation-invariant form: smallest vertex first, direction kept."""
        return canonical_cycle(self.cycle)

    def reversed(self) -> "Boundary":
        """The same loop traversed in the opposite direction."""
        c = self.cycle
        return Boundary((c[0],) + tuple(reversed(c[1:])))


def canonical_cycle(cycle: Sequence[int], *, undirected: bool = False) -> tuple[int, ...]:
    """Canonical rotation of a cyclic vertex sequence.

    Picks the lexicographically smallest rotation among those starting at a
    minimal vertex (unambiguous even when the minimal vertex repeats). With
    ``undirected=True`` the reversed cycle competes too, giving a form that
    identifies loops regardless of traversal direction.
    """
    seqs = [tuple(cycle)]
    if undirected:
        seqs.append(tuple(reversed(cycle)))
    best = None
    for seq in seqs:
        lo = min(seq)
        for i, v in enumerate(seq):
            if v == lo:
                rot = seq[i:] + seq[:i]
                if best is None or rot < best:
                    best = rot
    return best


def next_halfedge(h: DirectedEdge, mesh: Mesh) -> tuple[int, int]:
    """Successor of an oriented half-edge, pivoting through the triangle fan.

    Starting from the half-edge's unique triangle, repeatedly take the
    transition edge around the head vertex; cross it while it is a full
    edge, stop when it is a half-edge. The result is returned oriented to
    chain, i.e. its tail equals ``h``'s head.

    Parameters
    ----------
    h : tuple (tail, head)
        Either orientation of a half-edge key of ``mesh``.
    mesh : Mesh
        Must be edge-manifold.

    Returns
    -------
    tuple (head, next_vertex)

    Raises
    ------
    NotHalfEdgeError
        If ``h``'s key is not a half-edge of the mesh.
    NotEdgeManifoldError
        If the pivot finds zero or several candidate triangles while
        crossing an edge, which only happens on non-edge-manifold input.
    """
    tail, pivot = h
    index = mesh.edge_index
    k = (tail, pivot) if tail < pivot else (pivot, tail)
    owners = index.get(k)
    if owners is None or len(owners) != 1:
        raise NotHalfEdgeError(f"{h!r} is not a half-edge of this mesh")

    triangles = mesh.triangles
    tri = triangles[owners[0]]
    w = int(tri[0]) + int(tri[1]) + int(tri[2]) - tail - pivot
    prev_lo, prev_hi = k
    # w is the tail of the current transition edge (w, pivot).
    while True:
        ck = (w, pivot) if w < pivot else (pivot, w)
        adjacent = index[ck]
        if len(adjacent) == 1:
            return (pivot, w)
        candidates = [
            ti
            for ti in adjacent
            if not (prev_lo in (ta := triangles[ti]) and prev_hi in ta)
        ]
        if len(candidates) != 1:
            raise NotEdgeManifoldError(
                f"edge {ck!r} has {len(adjacent)} adjacent triangles"
            )
        tri = triangles[candidates[0]]
        nxt = int(tri[0]) + int(tri[1]) + int(tri[2]) - w - pivot
        prev_lo, prev_hi = ck
        w = nxt


def _seed_orientation(key: tuple[int, int], mesh: Mesh) -> tuple[int, int]:
    """Orient a seed half-edge as it appears in its triangle's winding."""
    ti = mesh.edge_index[key][0]
    a, b, c = (int(v) for v in mesh.triangles[ti])
    for u, v in ((a, b), (b, c), (c, a)):
        if (u, v) == key or (v, u) == key:
            return (u, v)
    raise InternalInvariantError(f"edge {key!r} missing from owner triangle")


def construct_boundaries(
    mesh: Mesh,
    *,
    fast_path: bool = True,
    seed_order: Iterable[tuple[int, int]] | None = None,
) -> list[Boundary]:
    """Partition the half-edge set of a mesh into closed boundaries.

    Seeds are taken in ascending ``(lo, hi)`` order of the unused half-edge
    keys, each oriented by the winding of its unique triangle, so the output
    is reproducible byte for byte. Each seed is chained forward with
    :func:`next_halfedge` until the loop closes; all its edges are then
    retired (by undirected key) before the next seed is picked.

    Parameters
    ----------
    mesh : Mesh
        Must be edge-manifold; raises NotEdgeManifoldError otherwise.
    fast_path : bool
        When the head vertex touches exactly two half-edges the successor
        is the other one; taking it directly skips the triangle-fan pivot.
        Results are identical either way, this only affects speed.
    seed_order : iterable of edge keys, optional
        Override the seeding sequence (used to check that the resulting
        partition does not depend on it). Must enumerate half-edge keys.

    Returns
    -------
    list of Boundary
        Every half-edge key appears in exactly one returned boundary.
    """
    if not is_edge_manifold(mesh):
        raise NotEdgeManifoldError("mesh has an edge with > 2 adjacent triangles")

    half = mesh.half_edges
    if seed_order is None:
        seeds = sorted(half)
    else:
        seeds = list(seed_order)
        for k in seeds:
            if k not in half:
                raise NotHalfEdgeError(f"seed {k!r} is not a half-edge key")

    incident = mesh.vertex_half_edges
    used: set[tuple[int, int]] = set()
    boundaries: list[Boundary] = []

    for seed in seeds:
        if seed in used:
            continue
        start = _seed_orientation(seed, mesh)
        cycle = [start[0]]
        cur = start
        cur_key = seed
        while True:
            pivot = cur[1]
            keys_here = incident[pivot]
            if fast_path and len(keys_here) == 2:
                other = keys_here[1] if keys_here[0] == cur_key else keys_here[0]
                nxt = (pivot, other[0] if other[1] == pivot else other[1])
                nxt_key = other
            else:
                nxt = next_halfedge(cur, mesh)
                nxt_key = edge_key(*nxt)
            if nxt_key == seed:
                if nxt != start:
                    raise InternalInvariantError(
                        f"loop from {start!r} closed with flipped direction"
                    )
                break
            cycle.append(nxt[0])
            cur = nxt
            cur_key = nxt_key
        b = Boundary(tuple(cycle))
        used.update(b.edge_keys)
        boundaries.append(b)

    return boundaries
