"""Quivers, representations, stability conditions and slopes.

A quiver is a finite directed multigraph on the vertex set
``0 .. vertex_count-1``; edges are (src, dst) pairs and the position of
an edge in the edge list is its id.  A representation attaches one exact
matrix per edge, with shape ``dims[dst] x dims[src]``, so matrices act on
column vectors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeError, ValidationError
from .linalg import Field, Matrix, inverse

Edge = tuple[int, int]


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(d)) for s, d in self.edges))
        for src, dst in self.edges:
            if not (0 <= src < self.vertex_count and 0 <= dst < self.vertex_count):
                raise ValidationError(f"edge ({src},{dst}) out of vertex range")

    def in_degree(self, x: int) -> int:
        return sum(1 for _, dst in self.edges if dst == x)

    def out_edges(self, x: int) -> list[int]:
        return [i for i, (src, _) in enumerate(self.edges) if src == x]


def is_acyclic(q: Quiver) -> bool:
    """Kahn's algorithm: True iff the quiver has no directed cycle."""
    return topological_order(q) is not None


def topological_order(q: Quiver) -> list[int] | None:
    indeg = [0] * q.vertex_count
    for _, dst in q.edges:
        indeg[dst] += 1
    ready = deque(x for x in range(q.vertex_count) if indeg[x] == 0)
    order = []
    while ready:
        x = ready.popleft()
        order.append(x)
        for _, dst in (q.edges[i] for i in q.out_edges(x)):
            indeg[dst] -= 1
            if indeg[dst] == 0:
                ready.append(dst)
    return order if len(order) == q.vertex_count else None


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    field: Field
    dims: tuple[int, ...]
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "mats", tuple(self.mats))

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim() == 0


def zero_representation(q: Quiver, fld: Field) -> Representation:
    dims = (0,) * q.vertex_count
    mats = tuple(Matrix.zeros(fld, 0, 0) for _ in q.edges)
    return Representation(q, fld, dims, mats)


def validate(v: Representation) -> list[str]:
    """Structural violations, empty iff the representation is well formed."""
    problems = []
    if len(v.dims) != v.quiver.vertex_count:
        problems.append(f"dims has {len(v.dims)} entries for {v.quiver.vertex_count} vertices")
        return problems
    if any(d < 0 for d in v.dims):
        problems.append("negative dimension")
    if len(v.mats) != len(v.quiver.edges):
        problems.append(f"{len(v.mats)} matrices for {len(v.quiver.edges)} edges")
        return problems
    for e, ((src, dst), m) in enumerate(zip(v.quiver.edges, v.mats)):
        if m.field != v.field:
            problems.append(f"edge {e}: matrix field {m.field!r} != representation field {v.field!r}")
        if m.rows != v.dims[dst] or m.cols != v.dims[src]:
            problems.append(
                f"edge {e}: matrix is {m.rows}x{m.cols}, expected {v.dims[dst]}x{v.dims[src]}"
            )
    return problems


def direct_sum(a: Representation, b: Representation) -> Representation:
    if a.quiver != b.quiver:
        raise ValidationError("direct sum across different quivers")
    if a.field != b.field:
        raise ValidationError("direct sum across different fields")
    from .linalg import block_diag

    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    mats = tuple(block_diag(ma, mb) for ma, mb in zip(a.mats, b.mats))
    return Representation(a.quiver, a.field, dims, mats)


def conjugate(v: Representation, basis: Sequence[Matrix]) -> Representation:
    """Isomorphic copy of v: edge e gets basis[dst] @ mat @ basis[src]^-1."""
    if len(basis) != v.quiver.vertex_count:
        raise ValidationError("one basis matrix per vertex required")
    inv = []
    for x, bm in enumerate(basis):
        if bm.rows != bm.cols or bm.rows != v.dims[x]:
            raise ValidationError(f"basis at vertex {x} is not {v.dims[x]}x{v.dims[x]}")
        inv.append(inverse(bm))
    mats = tuple(
        basis[dst] @ m @ inv[src]
        for (src, dst), m in zip(v.quiver.edges, v.mats)
    )
    return Representation(v.quiver, v.field, v.dims, mats)


def restrict(v: Representation, vertex_subset: Iterable[int]) -> Representation:
    """Representation induced on the subquiver spanned by ``vertex_subset``.

    Vertices are reindexed in increasing order; only edges with both ends
    inside the subset survive, in their original relative order.
    """
    keep = sorted(set(vertex_subset))
    for x in keep:
        if not (0 <= x < v.quiver.vertex_count):
            raise ValidationError(f"vertex {x} out of range")
    renum = {x: i for i, x in enumerate(keep)}
    edges = []
    mats = []
    for (src, dst), m in zip(v.quiver.edges, v.mats):
        if src in renum and dst in renum:
            edges.append((renum[src], renum[dst]))
            mats.append(m)
    sub = Quiver(len(keep), tuple(edges))
    return Representation(sub, v.field, tuple(v.dims[x] for x in keep), tuple(mats))


@dataclass(frozen=True)
class StabilityCondition:
    """One rational weight per vertex; induces the slope functional."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))


def slope(v: Representation, alpha: StabilityCondition) -> Fraction:
    """Weighted dimension over total dimension, as an exact rational."""
    if len(alpha.weights) != v.quiver.vertex_count:
        raise ValidationError("stability condition does not match the quiver")
    total = v.total_dim()
    if total == 0:
        raise ValidationError("slope of the zero representation is undefined")
    num = sum((w * d for w, d in zip(alpha.weights, v.dims)), Fraction(0))
    return num / total


def slope_of_dims(dims: Sequence[int], alpha: StabilityCondition) -> Fraction:
    total = sum(dims)
    if total == 0:
        raise ValidationError("slope of the zero dimension vector is undefined")
    num = sum((w * d for w, d in zip(alpha.weights, dims)), Fraction(0))
    return num / total


def euler_stability(q: Quiver) -> StabilityCondition:
    """Weight 1 - in_degree(x) at each vertex; defined for acyclic quivers."""
    if not is_acyclic(q):
        raise ShapeError("Euler stability requires an acyclic quiver")
    indeg = [0] * q.vertex_count
    for _, dst in q.edges:
        indeg[dst] += 1
    return StabilityCondition(tuple(Fraction(1 - d) for d in indeg))


def sheaf_euler_characteristic(v: Representation) -> int:
    """Sum of (1 - in_degree(x)) * dim_x; the Euler-slope numerator."""
    indeg = [0] * v.quiver.vertex_count
    for _, dst in v.quiver.edges:
        indeg[dst] += 1
    return sum((1 - indeg[x]) * v.dims[x] for x in range(v.quiver.vertex_count))
