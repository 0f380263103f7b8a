"""Splitting complex boundaries into simple ones.

A traced boundary may pass through the same vertex several times (it is an
Euler circuit over its edges). Cutting the cycle at the first two crossings
of a repeated vertex yields two shorter closed boundaries that together use
exactly the original edges; repeating until no vertex repeats leaves only
simple cycles. Every piece keeps at least three edges, so the process always
terminates.

The repeated vertex is chosen deterministically: scan cycle positions from
the traversal start and take the first vertex that occurs again later, with
its first two occurrence positions as the cut points.
"""

from __future__ import annotations

from .errors import InvalidSplitError
from .trace import Boundary


def find_repeated_occurrence(b: Boundary) -> tuple[int, int, int] | None:
    """First repeated vertex of a boundary and its first two positions.

    Returns ``(vertex, index1, index2)`` with ``index1 < index2``, or None
    when the boundary is simple. Position ``i`` refers to the half-edge
    leaving cycle vertex ``i``.
    """
    cycle = b.cycle
    first_pos: dict[int, int] = {}
    second: dict[int, int] = {}
    for i, v in enumerate(cycle):
        if v in first_pos and v not in second:
            second[v] = i
        else:
            first_pos.setdefault(v, i)
    if not second:
        return None
    v = min(second, key=lambda u: first_pos[u])
    return (v, first_pos[v], second[v])


def split_at(b: Boundary, index1: int, index2: int) -> tuple[Boundary, Boundary]:
    """Cut a boundary at two occurrences of the same vertex.

    The half-edge array splits as ``b1 = b[:index1] + b[index2:]`` and
    ``b2 = b[index1:index2]``; both remain closed chains and together they
    carry every half-edge of ``b`` exactly once.

    Raises
    ------
    InvalidSplitError
        If the positions are not ordered or do not start at one vertex.
    """
    cycle = b.cycle
    n = len(cycle)
    if not (0 <= index1 < index2 < n):
        raise InvalidSplitError(f"positions ({index1}, {index2}) out of order for size {n}")
    if cycle[index1] != cycle[index2]:
        raise InvalidSplitError(
            f"positions ({index1}, {index2}) start at different vertices "
            f"({cycle[index1]}, {cycle[index2]})"
        )
    b1 = Boundary(cycle[:index1] + cycle[index2:])
    b2 = Boundary(cycle[index1:index2])
    return b1, b2


def decompose(b: Boundary) -> list[Boundary]:
    """Decompose a boundary into simple boundaries.

    Already-simple input comes back unchanged as a singleton list. The
    output order follows the recursion (all pieces of the first fragment,
    then the second), so it is deterministic.
    """
    out: list[Boundary] = []
    stack = [b]
    while stack:
        cur = stack.pop()
        hit = find_repeated_occurrence(cur)
        if hit is None:
            out.append(cur)
            continue
        _, i1, i2 = hit
        b1, b2 = split_at(cur, i1, i2)
        stack.append(b2)
        stack.append(b1)
    return out
