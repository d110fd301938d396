"""Deterministic random instance generation.

Instances are direct sums of indecomposables with a known summand
multiset, conjugated vertexwise by random invertible bases.  The summand
multiset is returned alongside, so every generated instance certifies its
own barcode / lift multiplicities.  All randomness flows through the
caller's ``random.Random``, making outputs reproducible per seed.
"""

from __future__ import annotations

import random

from .affine import AffineQuiver, CCW, CW, NClass, TClass, indec_N, indec_T, to_quiver
from .linalg import Field, PrimeField, random_invertible_rng
from .quiver import Quiver, Representation, conjugate, direct_sum, zero_representation
from .zigzag import Interval, interval_module


def equioriented_quiver(n: int) -> Quiver:
    return Quiver(n, tuple((k, k + 1) for k in range(n - 1)))


def random_orientation(n: int, rng: random.Random) -> tuple[int, ...]:
    """A uniformly random acyclic orientation of the n-cycle."""
    while True:
        bits = tuple(rng.choice((CW, CCW)) for _ in range(n))
        if len(set(bits)) > 1:
            return bits


def _conjugated(rep: Representation, rng: random.Random) -> Representation:
    bases = [random_invertible_rng(d, rep.field, rng) for d in rep.dims]
    return conjugate(rep, bases)


def gen_persistence(
    n: int,
    fld: Field,
    max_summands: int,
    rng: random.Random,
    *,
    min_summands: int = 0,
    total_cap: int | None = None,
    vertex_cap: int | None = None,
) -> tuple[Representation, dict[Interval, int]]:
    """Conjugated random interval sum on the equioriented path of length n.

    Summands whose addition would push the total (or some vertex) past
    the caps are skipped, which keeps instances inside oracle guards.
    """
    q = equioriented_quiver(n)
    rep = zero_representation(q, fld)
    truth: dict[Interval, int] = {}
    count = rng.randint(min_summands, max_summands)
    for _ in range(count):
        lo = rng.randrange(n)
        hi = rng.randint(lo, n - 1)
        iv = Interval(lo, hi)
        cand = direct_sum(rep, interval_module(q, iv, fld))
        if total_cap is not None and cand.total_dim() > total_cap:
            continue
        if vertex_cap is not None and max(cand.dims) > vertex_cap:
            continue
        rep = cand
        truth[iv] = truth.get(iv, 0) + 1
    return _conjugated(rep, rng), truth


def gen_affine(
    n: int,
    fld: Field,
    max_summands: int,
    rng: random.Random,
    *,
    min_summands: int = 0,
    orientation: tuple[int, ...] | None = None,
    total_cap: int | None = None,
    vertex_cap: int | None = None,
    max_len: int | None = None,
    max_w: int = 2,
) -> tuple[AffineQuiver, Representation, dict[NClass, int], dict[TClass, int]]:
    """Conjugated random sum of wrapped-interval and Jordan-cell summands.

    Jordan eigenvalues are uniform over the nonzero field elements (over
    the rationals, over the nonzero integers in [-9, 9]).
    """
    if orientation is None:
        orientation = random_orientation(n, rng)
    aq = AffineQuiver(n, orientation)
    q = to_quiver(aq)
    rep = zero_representation(q, fld)
    truth_n: dict[NClass, int] = {}
    truth_t: dict[TClass, int] = {}
    if max_len is None:
        max_len = 3 * n - 1
    count = rng.randint(min_summands, max_summands)
    for _ in range(count):
        if rng.random() < 0.6:
            u = rng.randrange(n)
            v = u + rng.randint(0, max_len)
            summand = indec_N(aq, u, v, fld)
            key: NClass | TClass = NClass(u, v)
        else:
            if isinstance(fld, PrimeField):
                lam = fld.coerce(rng.randint(1, fld.p - 1))
            else:
                lam = fld.coerce(rng.choice([x for x in range(-9, 10) if x]))
            w = rng.randint(1, max_w)
            summand = indec_T(aq, lam, w, fld)
            key = TClass(lam, w)
        cand = direct_sum(rep, summand)
        if total_cap is not None and cand.total_dim() > total_cap:
            continue
        if vertex_cap is not None and max(cand.dims) > vertex_cap:
            continue
        rep = cand
        bucket = truth_n if isinstance(key, NClass) else truth_t
        bucket[key] = bucket.get(key, 0) + 1
    return aq, _conjugated(rep, rng), truth_n, truth_t
