"""Acyclic affine (cycle-graph) quivers and their indecomposables.

Conventions, pinned once and validated globally by the exhaustive slope
and lift properties in the test suite:

* Vertices are x_0 .. x_{n-1}; edge e_j joins x_{(j-1) mod n} and x_j.
* Orientation bit CW (=0) means e_j has source x_{(j-1) mod n}; CCW (=1)
  means the source is x_j.  An orientation is valid iff both bits occur,
  otherwise the cycle is directed.
* Matrices act on column vectors (rows are indexed by the target).

The wrapped-interval indecomposable for [u, v] (u in [0, n-1], v >= u)
assigns to x_j one basis vector per integer i in [u, v] with i = j mod n;
edge maps send the vector for i-1 to the vector for i (or back, on CCW
edges), dropping anything that leaves [u, v].  This reproduces the
dimension counts (either floor((v-u)/n) or one more) and the 0/1 boundary
blocks, and makes the unwinding of the module literally a disjoint union
of diagonal tracks, one per integer translate of [u, v].

The Jordan-cell indecomposable T[lambda; w] has dimension w everywhere,
identity maps except on e_0, and the w x w upper Jordan block with
eigenvalue lambda on e_0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError, ShapeError, ValidationError
from .linalg import Field, Matrix
from .quiver import Quiver, Representation
from .zigzag import barcode
from .hn import HNReport

CW = 0
CCW = 1


@dataclass(frozen=True)
class AffineQuiver:
    """An acyclically oriented n-cycle, n > 1."""

    n: int
    orientation: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError("affine quivers need at least two vertices")
        object.__setattr__(self, "orientation", tuple(int(o) for o in self.orientation))
        if len(self.orientation) != self.n:
            raise ValidationError("orientation must have one bit per edge")
        if any(o not in (CW, CCW) for o in self.orientation):
            raise ValidationError("orientation bits must be 0 (cw) or 1 (ccw)")
        if len(set(self.orientation)) < 2:
            raise ShapeError("a consistent orientation gives a directed cycle")


@dataclass(frozen=True)
class NClass:
    """Wrapped-interval class: u normalised into [0, n-1], v >= u."""

    u: int
    v: int


@dataclass(frozen=True)
class TClass:
    """Jordan-cell class: nonzero eigenvalue and block size w >= 1."""

    lam: object
    w: int


@dataclass(frozen=True)
class InfinityBar:
    """The two-sided infinite interval; Jordan cells unwind to copies of it."""


AffineClass = NClass | TClass | InfinityBar


@dataclass(frozen=True)
class LiftWindow:
    """Truncation window 0..D of the unwinding; D a multiple of n, D >= 2n."""

    n: int
    D: int

    def __post_init__(self):
        if self.D % self.n != 0 or self.D < 2 * self.n:
            raise ShapeError(
                f"window length {self.D} must be a multiple of n={self.n} and at least {2 * self.n}"
            )

    def rho(self, position: int) -> tuple[int, int]:
        """Unwinding position -> (vertex index mod n, winding level)."""
        return position % self.n, position // self.n


def to_quiver(aq: AffineQuiver) -> Quiver:
    edges = []
    for j in range(aq.n):
        a, b = (j - 1) % aq.n, j
        edges.append((a, b) if aq.orientation[j] == CW else (b, a))
    return Quiver(aq.n, tuple(edges))


def affine_of_quiver(q: Quiver) -> AffineQuiver:
    """Recover the affine structure from a quiver built by ``to_quiver``."""
    n = q.vertex_count
    if n < 2 or len(q.edges) != n:
        raise ShapeError("not an affine cycle quiver")
    orientation = []
    for j, (src, dst) in enumerate(q.edges):
        a, b = (j - 1) % n, j
        if (src, dst) == (a, b):
            orientation.append(CW)
        elif (src, dst) == (b, a):
            orientation.append(CCW)
        else:
            raise ShapeError(f"edge {j} does not join x_{a} and x_{b}")
    return AffineQuiver(n, tuple(orientation))


def wrap_counts(n: int, u: int, v: int) -> tuple[int, ...]:
    """Dimension vector of the wrapped interval: hits of [u, v] per residue."""
    base, extra = divmod(v - u + 1, n)
    dims = [base] * n
    for i in range(u, u + extra):
        dims[i % n] += 1
    return tuple(dims)


def indec_N(aq: AffineQuiver, u: int, v: int, fld: Field) -> Representation:
    """The wrapped-interval indecomposable for [u, v]."""
    n = aq.n
    if not 0 <= u <= n - 1:
        raise ValidationError(f"left endpoint {u} must lie in [0, {n - 1}]")
    if v < u:
        raise ValidationError(f"empty interval [{u},{v}]")
    support = [[i for i in range(u, v + 1) if i % n == j] for j in range(n)]
    q = to_quiver(aq)
    z, o = fld.zero, fld.one
    mats = []
    for j in range(n):
        prev = support[(j - 1) % n]
        here = support[j]
        if aq.orientation[j] == CW:
            # source indices i-1 map to target indices i
            data = [[o if t == s + 1 else z for s in prev] for t in here]
            mats.append(Matrix(fld, data, len(prev)))
        else:
            data = [[o if t == s - 1 else z for s in here] for t in prev]
            mats.append(Matrix(fld, data, len(here)))
    dims = tuple(len(s) for s in support)
    return Representation(q, fld, dims, tuple(mats))


def indec_T(aq: AffineQuiver, lam, w: int, fld: Field) -> Representation:
    """The Jordan-cell indecomposable with eigenvalue lam and size w."""
    lam = fld.coerce(lam)
    if lam == 0:
        raise ValidationError("Jordan-cell eigenvalue must be nonzero")
    if w < 1:
        raise ValidationError("Jordan-cell size must be at least 1")
    n = aq.n
    q = to_quiver(aq)
    z, o = fld.zero, fld.one
    jordan = [
        [lam if i == j else (o if j == i + 1 else z) for j in range(w)]
        for i in range(w)
    ]
    mats = [Matrix(fld, jordan, w)]
    mats += [Matrix.identity(fld, w) for _ in range(n - 1)]
    return Representation(q, fld, (w,) * n, tuple(mats))


def p_value(aq: AffineQuiver, u: int, v: int) -> int:
    """How many of the two boundary edges point into the wrapped interval.

    Counts whether e_{u'} targets x_{u'} and whether e_{v'+1} targets
    x_{v'} (indices mod n); the result 0/1/2 fixes the sign of the Euler
    slope of the wrapped-interval indecomposable.
    """
    n = aq.n
    if not 0 <= u <= n - 1:
        raise ValidationError(f"left endpoint {u} must lie in [0, {n - 1}]")
    if v < u:
        raise ValidationError(f"empty interval [{u},{v}]")
    u_, v_ = u % n, v % n
    into_left = aq.orientation[u_] == CW
    into_right = aq.orientation[(v_ + 1) % n] == CCW
    return int(into_left) + int(into_right)


def euler_slope_N(aq: AffineQuiver, u: int, v: int) -> Fraction:
    """(1 - p) / (v - u + 1), the Euler slope of the wrapped interval."""
    return Fraction(1 - p_value(aq, u, v), v - u + 1)


def default_window(v: Representation) -> LiftWindow:
    """Window long enough that every wrapped interval has an unclipped copy.

    D = (dim at x_0 + 2) * n: any wrapped interval crosses x_0 at most
    dim-at-x_0 times, so its length is under (dim + 1) * n and the
    translate starting in [1, n] fits strictly inside the window.
    """
    aq = affine_of_quiver(v.quiver)
    return LiftWindow(aq.n, (v.dims[0] + 2) * aq.n)


def lift_truncated(v: Representation, window: LiftWindow) -> Representation:
    """The unwinding of v restricted to positions 0..D of the window.

    Position i carries the space at vertex i mod n; the edge between
    i-1 and i carries the matrix of e_{i mod n} and points right exactly
    when that edge is CW.
    """
    aq = affine_of_quiver(v.quiver)
    n = aq.n
    if window.n != n:
        raise ShapeError("window was built for a different cycle length")
    D = window.D
    dims = tuple(v.dims[i % n] for i in range(D + 1))
    edges = []
    mats = []
    for i in range(1, D + 1):
        j = i % n
        edges.append((i - 1, i) if aq.orientation[j] == CW else (i, i - 1))
        mats.append(v.mats[j])
    return Representation(Quiver(D + 1, tuple(edges)), v.field, dims, tuple(mats))


def _classify(lo: int, hi: int, window: LiftWindow, clip_bound: int) -> AffineClass | None:
    """Sort a window-barcode interval into the class it witnesses.

    Full-window bars witness Jordan cells; bars starting in [1, n] and
    ending before D are the canonical unclipped translates of wrapped
    intervals; everything else (boundary-clipped or repeated translates)
    is discarded.  A bar touching a window boundary that is too long to
    be a clipped translate cannot occur and trips an internal error.
    """
    n, D = window.n, window.D
    if lo == 0 and hi == D:
        return InfinityBar()
    if hi - lo >= clip_bound:
        raise InternalCheckError(
            f"bar [{lo},{hi}] is too long to be a wrapped-interval translate"
        )
    if lo == 0 or hi == D:
        return None
    if 1 <= lo <= n:
        return NClass(lo % n, lo % n + (hi - lo))
    return None


def lifted_multiplicities(
    v: Representation, window: LiftWindow | None = None
) -> tuple[int, dict[tuple[int, int], int]]:
    """Summand multiplicities of v, read off the truncated unwinding.

    Returns (d_inf, classes): d_inf counts full-window bars (one per
    Jordan-cell dimension) and classes maps (u, length) to the
    multiplicity of the wrapped interval starting at residue u.
    """
    if window is None:
        window = default_window(v)
    lifted = lift_truncated(v, window)
    bar = barcode(lifted)
    clip_bound = (v.dims[0] + 1) * window.n
    d_inf = 0
    classes: dict[tuple[int, int], int] = {}
    for iv, mult in bar:
        cls = _classify(iv.lo, iv.hi, window, clip_bound)
        if isinstance(cls, InfinityBar):
            d_inf += mult
        elif isinstance(cls, NClass):
            key = (cls.u, cls.v - cls.u)
            classes[key] = classes.get(key, 0) + mult
    return d_inf, classes


def eta_from_lift(v: Representation) -> HNReport:
    """Euler HN data of an affine representation, via its unwinding.

    Groups the recovered wrapped-interval classes by Euler slope; the
    quotient at each nonzero slope is the sum of those classes'
    dimension vectors, and the slope-0 quotient additionally absorbs one
    unit everywhere per full-window bar (Jordan cells are slope 0 with
    constant dimension vector).
    """
    if v.is_zero():
        raise ValidationError("HN data of the zero representation is undefined")
    aq = affine_of_quiver(v.quiver)
    n = aq.n
    d_inf, classes = lifted_multiplicities(v)
    groups: dict[Fraction, list[int]] = {}
    for (u, length), mult in classes.items():
        sl = euler_slope_N(aq, u, u + length)
        acc = groups.setdefault(sl, [0] * n)
        for j, d in enumerate(wrap_counts(n, u, u + length)):
            acc[j] += mult * d
    if d_inf:
        acc = groups.setdefault(Fraction(0), [0] * n)
        for j in range(n):
            acc[j] += d_inf
    steps = tuple(
        (sl, tuple(groups[sl])) for sl in sorted(groups, reverse=True)
    )
    report = HNReport(v.quiver, steps)
    if report.total_dims() != v.dims:
        raise InternalCheckError("lift-derived HN data does not sum to the input dims")
    return report


def recover_N_multiplicities(aq: AffineQuiver, rep: HNReport, u: int, v: int) -> int:
    """Multiplicity of the wrapped interval [u, v] from HN data, p != 1 only.

    At the step whose slope matches the class, consecutive residues of
    the quotient dimension vector differ exactly by the multiplicity;
    slope-0 classes (p = 1) are blended together and cannot be separated
    this way.
    """
    n = aq.n
    shift = u - (u % n)
    u, v = u - shift, v - shift
    if p_value(aq, u, v) == 1:
        raise ValidationError("p = 1 classes have slope 0 and are not recoverable")
    target = euler_slope_N(aq, u, v)
    for sl, dims in rep.steps:
        if sl == target:
            return dims[u % n] - dims[(u - 1) % n]
    return 0
