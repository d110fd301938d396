"""Exact dense linear algebra over the rationals and prime fields GF(p).

Scalars are ``fractions.Fraction`` values over the rationals and canonical
residues (plain ints in ``[0, p)``) over GF(p).  Matrices are immutable,
dense, row-major, and carry their field descriptor so that mixed-field
arithmetic is a detectable error rather than silent nonsense.

Everything here is pure and deterministic: echelon forms are the unique
reduced ones, so equality of spans reduces to equality of basis matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .config import GuardConfig, load_guard
from .errors import GuardError, ValidationError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RationalField:
    """The field of arbitrary-precision rationals."""

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def contains(self, value) -> bool:
        return isinstance(value, Fraction)

    def __repr__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p <= 2**31; elements are residues in [0, p)."""

    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValidationError(f"modulus {self.p} is not prime")
        if self.p > 2**31:
            raise ValidationError(f"modulus {self.p} exceeds 2**31")

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def coerce(self, value) -> int:
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def contains(self, value) -> bool:
        return isinstance(value, int) and 0 <= value < self.p

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = RationalField()

Field = RationalField | PrimeField


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Matrix:
    """Immutable dense matrix; ``data`` is a tuple of row tuples.

    Entries are coerced into the field on construction, so a Matrix is
    always in canonical form (reduced fractions / residues in [0, p)).
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: int | None = None):
        rows = len(data)
        if rows:
            width = len(data[0])
            if cols is not None and cols != width:
                raise ValidationError("explicit cols disagrees with row length")
            cols = width
        elif cols is None:
            cols = 0
        coerce = field.coerce
        packed = []
        for row in data:
            if len(row) != cols:
                raise ValidationError("ragged rows in matrix data")
            packed.append(tuple(coerce(x) for x in row))
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = tuple(packed)  # set last: enables the immutability guard

    def __setattr__(self, name, value):
        if hasattr(self, "data"):
            raise AttributeError("Matrix is immutable")
        object.__setattr__(self, name, value)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, [[z] * cols for _ in range(rows)], cols)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}, {list(map(list, self.data))})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValidationError("matmul across different fields")
        if self.cols != other.rows:
            raise ValidationError(
                f"matmul shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        odata = other.data
        out = []
        for lrow in self.data:
            acc = [zero] * other.cols
            for t, a in enumerate(lrow):
                if a != 0:
                    orow = odata[t]
                    acc = [add(s, mul(a, b)) for s, b in zip(acc, orow)]
            out.append(acc)
        return Matrix(field, out, other.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            raise ValidationError("subtraction shape/field mismatch")
        sub = self.field.sub
        data = [
            [sub(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ]
        return Matrix(self.field, data, self.cols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.data)) if self.rows else [], self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.data]


def hstack(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValidationError("hstack of nothing")
    field, rows = mats[0].field, mats[0].rows
    for m in mats:
        if m.field != field or m.rows != rows:
            raise ValidationError("hstack shape/field mismatch")
    cols = sum(m.cols for m in mats)
    data = [sum((list(m.data[i]) for m in mats), []) for i in range(rows)]
    return Matrix(field, data, cols)


def vstack(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValidationError("vstack of nothing")
    field, cols = mats[0].field, mats[0].cols
    for m in mats:
        if m.field != field or m.cols != cols:
            raise ValidationError("vstack shape/field mismatch")
    data = [row for m in mats for row in m.data]
    return Matrix(field, data, cols)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ValidationError("block_diag across different fields")
    field = a.field
    z = field.zero
    data = [list(row) + [z] * b.cols for row in a.data]
    data += [[z] * a.cols + list(row) for row in b.data]
    return Matrix(field, data, a.cols + b.cols)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and its pivot columns."""
    field = m.field
    sub, mul, inv = field.sub, field.mul, field.inv
    work = [list(row) for row in m.data]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = None
        for i in range(r, nr):
            if work[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        if pv != field.one:
            f = inv(pv)
            work[r] = [mul(f, x) for x in work[r]]
        prow = work[r]
        for i in range(nr):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [sub(x, mul(f, y)) for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    return Matrix(field, work, nc), tuple(pivots)


def rank(m: Matrix) -> int:
    """Rank via forward Gaussian elimination; 0 for empty matrices."""
    field = m.field
    sub, mul, inv = field.sub, field.mul, field.inv
    work = [list(row) for row in m.data]
    nr, nc = m.rows, m.cols
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = None
        for i in range(r, nr):
            if work[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        prow = work[r]
        pv_inv = inv(prow[c])
        for i in range(r + 1, nr):
            x = work[i][c]
            if x != 0:
                f = mul(x, pv_inv)
                work[i] = [sub(a, mul(f, b)) for a, b in zip(work[i], prow)]
        r += 1
    return r


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right null space, as a reduced column-echelon matrix.

    The column count always equals ``cols - rank`` and the basis is the
    canonical one, so repeated runs (and golden tests) are bit-stable.
    """
    field = m.field
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    z, o = field.zero, field.one
    neg = field.neg
    columns = []
    for f in free:
        vec = [z] * m.cols
        vec[f] = o
        for i, pc in enumerate(pivots):
            vec[pc] = neg(reduced.data[i][f])
        columns.append(vec)
    raw = Matrix(field, list(zip(*columns)) if columns else [[] for _ in range(m.cols)], len(columns))
    return column_echelon(raw)


def column_echelon(m: Matrix) -> Matrix:
    """Canonical reduced column-echelon basis of the column span.

    Zero columns are dropped, so the result always has full column rank
    and two matrices span the same subspace iff the results are equal.
    """
    reduced, pivots = rref(m.transpose())
    kept = [reduced.data[i] for i in range(len(pivots))]
    return Matrix(m.field, list(zip(*kept)) if kept else [[] for _ in range(m.rows)], len(kept))


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Some x with m @ x = b, or None if the system is inconsistent."""
    if m.rows != b.rows:
        raise ValidationError("solve: row count mismatch")
    if m.field != b.field:
        raise ValidationError("solve: field mismatch")
    reduced, pivots = rref(hstack([m, b]))
    if any(c >= m.cols for c in pivots):
        return None
    field = m.field
    z = field.zero
    out = [[z] * b.cols for _ in range(m.cols)]
    for i, pc in enumerate(pivots):
        out[pc] = list(reduced.data[i][m.cols:])
    return Matrix(field, out, b.cols)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValidationError("inverse of a non-square matrix")
    n = m.rows
    reduced, pivots = rref(hstack([m, Matrix.identity(m.field, n)]))
    if len(pivots) != n or any(c >= n for c in pivots):
        raise ValidationError("matrix is not invertible")
    data = [row[n:] for row in reduced.data]
    return Matrix(m.field, data, n)


def random_matrix(field: Field, rows: int, cols: int, rng: random.Random) -> Matrix:
    if isinstance(field, PrimeField):
        data = [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[Fraction(rng.randint(-9, 9)) for _ in range(cols)] for _ in range(rows)]
    return Matrix(field, data, cols)


def random_invertible(dim: int, field: Field, seed: int) -> Matrix:
    """Random invertible dim x dim matrix, deterministic for a fixed seed."""
    rng = random.Random(seed)
    return random_invertible_rng(dim, field, rng)


def random_invertible_rng(dim: int, field: Field, rng: random.Random) -> Matrix:
    while True:
        cand = random_matrix(field, dim, dim, rng)
        if rank(cand) == dim:
            return cand


# ---------------------------------------------------------------------------
# subspace arithmetic
#
# A subspace of K^d is represented by its canonical reduced column-echelon
# basis (a d x k Matrix), so subspace equality is matrix equality.
# ---------------------------------------------------------------------------


def full_space(field: Field, dim: int) -> Matrix:
    return Matrix.identity(field, dim)


def zero_space(field: Field, dim: int) -> Matrix:
    return Matrix(field, [[] for _ in range(dim)], 0)


def image(m: Matrix, space: Matrix) -> Matrix:
    """Canonical basis of m(span(space))."""
    return column_echelon(m @ space)


def preimage(m: Matrix, space: Matrix) -> Matrix:
    """Canonical basis of {x : m @ x in span(space)}.

    Solved as the x-part of the kernel of [m | space]: m(x) = space(y)
    for some y exactly when (x; -y) lies in that kernel.
    """
    ker = kernel_basis(hstack([m, space]) if space.cols else m)
    head = Matrix(m.field, [list(row) for row in ker.data[: m.cols]], ker.cols)
    return column_echelon(head)


def span_sum(a: Matrix, b: Matrix) -> Matrix:
    return column_echelon(hstack([a, b]))


def span_intersection(a: Matrix, b: Matrix) -> Matrix:
    """Canonical basis of span(a) ∩ span(b)."""
    if a.cols == 0 or b.cols == 0:
        return zero_space(a.field, a.rows)
    ker = kernel_basis(hstack([a, b]))
    coeffs = Matrix(a.field, [row for row in ker.data[: a.cols]], ker.cols)
    return column_echelon(a @ coeffs)


def subspace_contains(space: Matrix, vectors: Matrix) -> bool:
    """True iff every column of ``vectors`` lies in span(space)."""
    if vectors.cols == 0:
        return True
    return rank(hstack([space, vectors])) == space.cols


def subspace_dim_sum(a: Matrix, b: Matrix) -> int:
    """dim(span(a) + span(b)) without materialising the basis."""
    if a.cols == 0:
        return b.cols
    if b.cols == 0:
        return a.cols
    return rank(hstack([a, b]))


def pivot_rows(space: Matrix) -> list[int]:
    """Leading-entry row of each column of a column-echelon basis."""
    out = []
    for j in range(space.cols):
        for i in range(space.rows):
            if space.data[i][j] != 0:
                out.append(i)
                break
    return out


def section_matrix(space: Matrix) -> Matrix:
    """Unit columns at the non-pivot rows of ``space``.

    Together with the basis columns of ``space`` these span all of K^d,
    and they form a section of the quotient map of ``quotient_coords``.
    """
    field = space.field
    d = space.rows
    taken = set(pivot_rows(space))
    free = [r for r in range(d) if r not in taken]
    z, o = field.zero, field.one
    data = [[o if r == f else z for f in free] for r in range(d)]
    return Matrix(field, data, len(free))


def quotient_coords(space: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of ``vectors`` in K^d / span(space).

    Uses the complement-row coordinates of the echelon basis ``space``:
    each vector is reduced modulo the basis columns (the pivot-row block
    of a reduced column-echelon basis is an identity) and the rows at
    non-pivot positions are returned.
    """
    piv = pivot_rows(space)
    d = space.rows
    if space.cols:
        coeffs = Matrix(space.field, [vectors.data[r] for r in piv], vectors.cols)
        reduced = vectors - space @ coeffs
    else:
        reduced = vectors
    taken = set(piv)
    free = [r for r in range(d) if r not in taken]
    return Matrix(space.field, [reduced.data[r] for r in free], vectors.cols)


def subspace_enumerator(dim: int, p: int, guard: GuardConfig | None = None) -> Iterator[Matrix]:
    """All subspaces of GF(p)^dim, one canonical echelon basis each.

    Walks dimension classes in increasing order (the zero subspace first,
    the full space last); the total count is the Gaussian-binomial sum.
    Raises GuardError up front when p^dim is too large to walk.
    """
    if guard is None:
        guard = load_guard()
    if not _is_prime(p):
        raise ValidationError(f"modulus {p} is not prime")
    if dim < 0:
        raise ValidationError("negative dimension")
    if dim > guard.max_enum_dim or p > guard.max_enum_p:
        raise GuardError(
            f"subspace enumeration guard exceeded (dim={dim}, p={p}; "
            f"limits dim<={guard.max_enum_dim}, p<={guard.max_enum_p})"
        )
    field = GF(p)

    def generate() -> Iterator[Matrix]:
        for k in range(dim + 1):
            for pivots in combinations(range(dim), k):
                pivot_set = set(pivots)
                free_slots = [
                    (r, j)
                    for j in range(k)
                    for r in range(dim)
                    if r > pivots[j] and r not in pivot_set
                ]
                for values in product(range(p), repeat=len(free_slots)):
                    cols = []
                    for j in range(k):
                        vec = [0] * dim
                        vec[pivots[j]] = 1
                        cols.append(vec)
                    for (r, j), v in zip(free_slots, values):
                        cols[j][r] = v
                    yield Matrix(field, list(zip(*cols)) if cols else [[] for _ in range(dim)], k)

    return generate()


def superspace_enumerator(floor: Matrix, guard: GuardConfig | None = None) -> Iterator[Matrix]:
    """All subspaces of K^d containing span(floor), for K a prime field.

    Enumerates subspaces of the quotient K^d / span(floor) through the
    complement-row coordinates of the echelon basis ``floor`` and lifts
    them back, so each superspace is produced exactly once.
    """
    field = floor.field
    if not isinstance(field, PrimeField):
        raise ValidationError("superspace enumeration needs a prime field")
    d = floor.rows
    taken = set(pivot_rows(floor))
    free_rows = [r for r in range(d) if r not in taken]
    q = len(free_rows)

    def generate() -> Iterator[Matrix]:
        for small in subspace_enumerator(q, field.p, guard):
            lifted_cols = []
            for j in range(small.cols):
                vec = [0] * d
                for i, r in enumerate(free_rows):
                    vec[r] = small.data[i][j]
                lifted_cols.append(vec)
            lifted = Matrix(
                field,
                list(zip(*lifted_cols)) if lifted_cols else [[] for _ in range(d)],
                small.cols,
            )
            yield column_echelon(hstack([floor, lifted]))

    # trigger guard checks eagerly
    subspace_enumerator(q, field.p, guard).close()
    return generate()
