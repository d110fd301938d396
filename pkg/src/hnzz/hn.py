"""Harder-Narasimhan filtrations.

Two routes are implemented.  ``hn_bruteforce`` is the oracle: it scans
every subrepresentation of a small representation over GF(p) (subspace
tuples closed under the edge maps), repeatedly extracts the unique
maximal destabilizer, and returns explicit filtration bases.  It works on
any acyclic quiver but is guarded against combinatorial blow-up.
``hn_from_barcode`` is the fast route for equioriented type-A
representations under the Euler weights: the filtration is read off the
barcode, one step per interval family [0, j] plus a final slope-0 step
for everything else.

Reports carry (slope, quotient dimension vector) steps with strictly
decreasing exact rational slopes; only the oracle fills in witness bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .config import GuardConfig, load_guard
from .errors import GuardError, InternalCheckError, ShapeError, ValidationError
from .linalg import (
    Matrix,
    PrimeField,
    column_echelon,
    hstack,
    quotient_coords,
    section_matrix,
    solve,
    superspace_enumerator,
    zero_space,
)
from .quiver import (
    Quiver,
    Representation,
    StabilityCondition,
    restrict,
    slope_of_dims,
    topological_order,
)
from .zigzag import Barcode, Interval, barcode, path_steps


@dataclass(frozen=True)
class HNReport:
    """Slopes and quotient dimension vectors of an HN filtration.

    ``witness[j]`` (oracle only) holds one basis matrix per vertex whose
    columns span the j-th filtration stage inside the input coordinates;
    stages are cumulative and the last one is the full space.
    """

    quiver: Quiver
    steps: tuple[tuple[Fraction, tuple[int, ...]], ...]
    witness: tuple[tuple[Matrix, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        prev = None
        for sl, dims in self.steps:
            if len(dims) != self.quiver.vertex_count:
                raise ValidationError("quotient dimension vector has wrong length")
            if all(d == 0 for d in dims):
                raise ValidationError("zero quotient in HN report")
            if prev is not None and not (sl < prev):
                raise ValidationError("HN slopes must strictly decrease")
            prev = sl

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(sl for sl, _ in self.steps)

    def total_dims(self) -> tuple[int, ...]:
        n = self.quiver.vertex_count
        out = [0] * n
        for _, dims in self.steps:
            for x in range(n):
                out[x] += dims[x]
        return tuple(out)


def _check_oracle_guard(v: Representation, guard: GuardConfig) -> None:
    if not isinstance(v.field, PrimeField):
        raise GuardError("the brute-force oracle runs over prime fields only")
    p = v.field.p
    if p > guard.max_enum_p:
        raise GuardError(f"oracle guard exceeded: p={p} > {guard.max_enum_p}")
    cap = guard.total_cap(p)
    if v.total_dim() > cap:
        raise GuardError(
            f"oracle guard exceeded: total dimension {v.total_dim()} > {cap} over GF({p})"
        )


def subrepresentations(
    v: Representation, guard: GuardConfig | None = None
) -> Iterator[tuple[Matrix, ...]]:
    """All subrepresentations of v, as per-vertex canonical subspace bases.

    Walks the vertices in topological order; at each vertex only the
    subspaces containing the images of the already-chosen subspaces along
    in-edges are enumerated, so every yielded tuple is closed under the
    edge maps and every subrepresentation appears exactly once.
    """
    if guard is None:
        guard = load_guard()
    order = topological_order(v.quiver)
    if order is None:
        raise ShapeError("subrepresentation scan requires an acyclic quiver")
    in_edges: list[list[int]] = [[] for _ in range(v.quiver.vertex_count)]
    for e, (_, dst) in enumerate(v.quiver.edges):
        in_edges[dst].append(e)
    chosen: dict[int, Matrix] = {}

    def walk(i: int) -> Iterator[tuple[Matrix, ...]]:
        if i == len(order):
            yield tuple(chosen[x] for x in range(v.quiver.vertex_count))
            return
        x = order[i]
        floor = zero_space(v.field, v.dims[x])
        images = [v.mats[e] @ chosen[v.quiver.edges[e][0]] for e in in_edges[x]]
        if images:
            floor = column_echelon(hstack([floor] + images))
        for u in superspace_enumerator(floor, guard):
            chosen[x] = u
            yield from walk(i + 1)
        chosen.pop(x, None)

    return walk(0)


def is_semistable(
    v: Representation, alpha: StabilityCondition, guard: GuardConfig | None = None
) -> bool:
    """True iff no nonzero subrepresentation has a strictly larger slope."""
    if guard is None:
        guard = load_guard()
    _check_oracle_guard(v, guard)
    if v.is_zero():
        raise ValidationError("semistability of the zero representation is undefined")
    bound = slope_of_dims(v.dims, alpha)
    for bases in subrepresentations(v, guard):
        dims = [b.cols for b in bases]
        if sum(dims) == 0:
            continue
        if slope_of_dims(dims, alpha) > bound:
            return False
    return True


def _sub_quotient(
    v: Representation, sub: Sequence[Matrix]
) -> tuple[Representation, list[Matrix]]:
    """Quotient representation v / span(sub) plus the per-vertex sections."""
    sections = [section_matrix(b) for b in sub]
    dims = tuple(v.dims[x] - sub[x].cols for x in range(v.quiver.vertex_count))
    mats = []
    for (src, dst), m in zip(v.quiver.edges, v.mats):
        mats.append(quotient_coords(sub[dst], m @ sections[src]))
    return Representation(v.quiver, v.field, dims, tuple(mats)), sections


def _hn_stages(
    v: Representation, alpha: StabilityCondition, guard: GuardConfig
) -> list[tuple[Fraction, tuple[int, ...], tuple[Matrix, ...]]]:
    best: tuple[Fraction, int] | None = None
    ties: list[tuple[Matrix, ...]] = []
    for bases in subrepresentations(v, guard):
        dims = [b.cols for b in bases]
        total = sum(dims)
        if total == 0:
            continue
        key = (slope_of_dims(dims, alpha), total)
        if best is None or key > best:
            best, ties = key, [bases]
        elif key == best:
            ties.append(bases)
    if best is None:
        raise ValidationError("HN filtration of the zero representation is undefined")
    if len(ties) != 1:
        raise InternalCheckError(
            f"maximal destabilizer is not unique ({len(ties)} candidates)"
        )
    top = ties[0]
    top_dims = tuple(b.cols for b in top)
    if sum(top_dims) == v.total_dim():
        return [(best[0], top_dims, top)]
    quot, sections = _sub_quotient(v, top)
    rest = _hn_stages(quot, alpha, guard)
    stages = [(best[0], top_dims, top)]
    for sl, qdims, qstage in rest:
        lifted = tuple(
            column_echelon(hstack([top[x], sections[x] @ qstage[x]]))
            for x in range(v.quiver.vertex_count)
        )
        stages.append((sl, qdims, lifted))
    return stages


def hn_bruteforce(
    v: Representation, alpha: StabilityCondition, guard: GuardConfig | None = None
) -> HNReport:
    """HN filtration by exhaustive search, with explicit stage bases.

    Repeatedly extracts the subrepresentation of maximal slope and, among
    those, maximal total dimension; non-uniqueness of that choice cannot
    happen for a genuine stability condition and raises
    InternalCheckError.  Output is independent of enumeration order.
    """
    if guard is None:
        guard = load_guard()
    _check_oracle_guard(v, guard)
    stages = _hn_stages(v, alpha, guard)
    steps = tuple((sl, dims) for sl, dims, _ in stages)
    witness = tuple(stage for _, _, stage in stages)
    report = HNReport(v.quiver, steps, witness)
    if report.total_dims() != v.dims:
        raise InternalCheckError("HN quotient dimensions do not sum to the input")
    return report


def subrep_matrices(v: Representation, bases: Sequence[Matrix]) -> Representation:
    """The representation induced on a subrepresentation given by bases."""
    mats = []
    for (src, dst), m in zip(v.quiver.edges, v.mats):
        coords = solve(bases[dst], m @ bases[src])
        if coords is None:
            raise ValidationError("bases are not closed under the edge maps")
        mats.append(coords)
    dims = tuple(b.cols for b in bases)
    return Representation(v.quiver, v.field, dims, tuple(mats))


def hn_from_barcode(bar: Barcode, q: Quiver) -> HNReport:
    """Euler HN report of an equioriented type-A module, from its barcode.

    One step of slope 1/(j+1) per interval [0, j] present, ordered by
    decreasing slope, plus a final slope-0 step collecting every interval
    with nonzero left endpoint (present only when such intervals exist).
    """
    if not all(fwd for _, fwd in path_steps(q)):
        raise ShapeError("barcode-driven HN data requires an equioriented path")
    n = q.vertex_count
    steps: list[tuple[Fraction, tuple[int, ...]]] = []
    zero_part = [0] * n
    have_zero = False
    for iv, mult in bar:
        if iv.hi > n - 1 or iv.lo < 0:
            raise ValidationError(f"interval [{iv.lo},{iv.hi}] outside the quiver")
        if iv.lo == 0:
            steps.append(
                (Fraction(1, iv.hi + 1), tuple(mult if x <= iv.hi else 0 for x in range(n)))
            )
        else:
            have_zero = True
            for x in range(iv.lo, iv.hi + 1):
                zero_part[x] += mult
    steps.sort(key=lambda s: s[0], reverse=True)
    if have_zero:
        steps.append((Fraction(0), tuple(zero_part)))
    return HNReport(q, tuple(steps))


def hn_r_filtration_eval(rep: HNReport, t) -> tuple[int, ...]:
    """Dimension vector of the real-indexed filtration at parameter t.

    The stage at t collects every quotient whose slope is >= t, so the
    result is a right-continuous step function of t, non-increasing in t.
    """
    t = Fraction(t)
    n = rep.quiver.vertex_count
    out = [0] * n
    for sl, dims in rep.steps:
        if sl >= t:
            for x in range(n):
                out[x] += dims[x]
    return tuple(out)


def hn_direct_sum_merge(a: HNReport, b: HNReport) -> HNReport:
    """HN report of a direct sum: merge steps, adding dims at equal slopes."""
    if a.quiver != b.quiver:
        raise ValidationError("HN merge across different quivers")
    n = a.quiver.vertex_count
    merged: dict[Fraction, list[int]] = {}
    for report in (a, b):
        for sl, dims in report.steps:
            acc = merged.setdefault(sl, [0] * n)
            for x in range(n):
                acc[x] += dims[x]
    steps = tuple(
        (sl, tuple(merged[sl])) for sl in sorted(merged, reverse=True)
    )
    return HNReport(a.quiver, steps)


def recover_barcode_via_truncations(v: Representation) -> Barcode:
    """Rebuild the full barcode from Euler HN data of right truncations.

    For each cut k the Euler HN report of the restriction to vertices
    k..n-1 exposes the multiplicities of intervals starting at the cut;
    subtracting the already-known intervals that reach past the cut
    recovers the multiplicity of [k, v] for every right endpoint v.
    """
    steps = path_steps(v.quiver)
    if not all(fwd for _, fwd in steps):
        raise ShapeError("truncation recovery requires an equioriented path")
    n = v.quiver.vertex_count
    recovered: dict[tuple[int, int], int] = {}
    for k in range(n):
        sub = restrict(v, range(k, n))
        report = hn_from_barcode(barcode(sub), sub.quiver)
        for sl, dims in report.steps:
            if sl == 0:
                continue
            length = Fraction(1) / sl
            if length.denominator != 1:
                raise InternalCheckError(f"unexpected Euler slope {sl}")
            right = k + int(length) - 1
            mult = dims[0] - sum(recovered.get((u, right), 0) for u in range(k))
            if mult < 0:
                raise InternalCheckError(
                    f"negative recovered multiplicity for [{k},{right}]"
                )
            if mult:
                recovered[(k, right)] = mult
    return Barcode.from_dict({Interval(u, w): m for (u, w), m in recovered.items()})
