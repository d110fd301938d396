from fractions import Fraction

import pytest

from hnzz.errors import ShapeError, ValidationError
from hnzz.linalg import GF, QQ, Matrix
from hnzz.quiver import (
    Quiver,
    Representation,
    StabilityCondition,
    conjugate,
    direct_sum,
    euler_stability,
    is_acyclic,
    restrict,
    sheaf_euler_characteristic,
    slope,
    validate,
    zero_representation,
)
from hnzz.zigzag import Interval, interval_module

from conftest import conjugating_bases, make_rng, random_zigzag_rep

A2 = Quiver(2, ((0, 1),))
A3 = Quiver(3, ((0, 1), (1, 2)))
# the running affine example: 6-cycle with edges e_3 reversed
EX6 = Quiver(6, ((5, 0), (0, 1), (1, 2), (3, 2), (3, 4), (4, 5)))


class TestAcyclicity:
    def test_path(self):
        assert is_acyclic(A3)

    def test_two_cycle(self):
        assert not is_acyclic(Quiver(2, ((0, 1), (1, 0))))

    def test_example_cycle_graph(self):
        assert is_acyclic(EX6)

    def test_self_loop(self):
        assert not is_acyclic(Quiver(1, ((0, 0),)))


class TestValidate:
    def test_interval_module_ok(self):
        assert validate(interval_module(A2, Interval(0, 1), GF(2))) == []

    def test_wrong_shape(self):
        v = Representation(A2, GF(2), (1, 1), (Matrix.zeros(GF(2), 2, 1),))
        problems = validate(v)
        assert len(problems) == 1 and "edge 0" in problems[0]

    def test_field_mismatch(self):
        v = Representation(A2, GF(3), (1, 1), (Matrix.identity(GF(2), 1),))
        problems = validate(v)
        assert len(problems) == 1 and "field" in problems[0]


class TestDirectSum:
    def test_with_zero(self):
        v = interval_module(A3, Interval(0, 1), GF(5))
        z = zero_representation(A3, GF(5))
        s = direct_sum(v, z)
        assert s.dims == v.dims and s.mats == v.mats

    def test_block_zero_edge(self):
        a = interval_module(A2, Interval(0, 0), QQ)
        b = interval_module(A2, Interval(1, 1), QQ)
        s = direct_sum(a, b)
        assert s.dims == (1, 1)
        assert s.mats[0] == Matrix.zeros(QQ, 1, 1)

    def test_dims_add(self):
        a = Representation(A2, QQ, (1, 2), (Matrix.zeros(QQ, 2, 1),))
        b = Representation(A2, QQ, (2, 1), (Matrix.zeros(QQ, 1, 2),))
        assert direct_sum(a, b).dims == (3, 3)

    def test_mismatch(self):
        with pytest.raises(ValidationError):
            direct_sum(zero_representation(A2, QQ), zero_representation(A3, QQ))
        with pytest.raises(ValidationError):
            direct_sum(zero_representation(A2, QQ), zero_representation(A2, GF(2)))


class TestConjugate:
    def test_identity_bases(self):
        v = interval_module(A3, Interval(0, 2), GF(3))
        bases = [Matrix.identity(GF(3), d) for d in v.dims]
        assert conjugate(v, bases) == v

    def test_zero_rep(self):
        z = zero_representation(A2, QQ)
        assert conjugate(z, [Matrix.zeros(QQ, 0, 0)] * 2) == z

    def test_scaling_gf5(self):
        # 3 * 1 * inverse(2) = 3 * 3 = 9 = 4 mod 5
        v = interval_module(A2, Interval(0, 1), GF(5))
        out = conjugate(v, [Matrix(GF(5), [[2]]), Matrix(GF(5), [[3]])])
        assert out.mats[0] == Matrix(GF(5), [[4]])

    def test_not_invertible(self):
        v = interval_module(A2, Interval(0, 1), GF(5))
        with pytest.raises(ValidationError):
            conjugate(v, [Matrix.zeros(GF(5), 1, 1), Matrix.identity(GF(5), 1)])


class TestRestrict:
    def test_full(self):
        rng = make_rng(1)
        for _ in range(10):
            v = random_zigzag_rep(rng)
            assert restrict(v, range(v.quiver.vertex_count)) == v

    def test_empty(self):
        v = interval_module(A3, Interval(0, 2), QQ)
        sub = restrict(v, ())
        assert sub.quiver.vertex_count == 0 and sub.dims == ()

    def test_suffix(self):
        v = direct_sum(
            interval_module(A3, Interval(0, 2), GF(2)),
            interval_module(A3, Interval(1, 2), GF(2)),
        )
        sub = restrict(v, {1, 2})
        assert sub.dims == (2, 2)
        assert sub.quiver == Quiver(2, ((0, 1),))


class TestSlope:
    def test_euler_examples(self):
        eps = euler_stability(A3)
        assert slope(interval_module(A3, Interval(0, 2), QQ), eps) == Fraction(1, 3)
        assert slope(interval_module(A3, Interval(1, 2), QQ), eps) == 0

    def test_zero_weights(self):
        v = interval_module(A3, Interval(0, 1), GF(2))
        assert slope(v, StabilityCondition((0, 0, 0))) == 0

    def test_zero_rep_error(self):
        with pytest.raises(ValidationError):
            slope(zero_representation(A3, QQ), euler_stability(A3))

    def test_direct_sum_between(self):
        rng = make_rng(2)
        eps3 = euler_stability(A3)
        for _ in range(50):
            a = random_zigzag_rep(rng, max_n=3)
            b = random_zigzag_rep(rng, max_n=3)
            if a.quiver != b.quiver or a.field != b.field:
                continue
            if a.is_zero() or b.is_zero():
                continue
            alpha = StabilityCondition(
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(a.quiver.vertex_count))
            )
            lo = min(slope(a, alpha), slope(b, alpha))
            hi = max(slope(a, alpha), slope(b, alpha))
            s = slope(direct_sum(a, b), alpha)
            assert lo <= s <= hi

    def test_conjugation_invariance(self):
        rng = make_rng(3)
        for _ in range(30):
            v = random_zigzag_rep(rng)
            if v.is_zero():
                continue
            alpha = StabilityCondition(
                tuple(Fraction(rng.randint(-2, 4)) for _ in range(v.quiver.vertex_count))
            )
            w = conjugate(v, conjugating_bases(v, rng))
            assert slope(w, alpha) == slope(v, alpha)


class TestEulerStability:
    def test_a3(self):
        assert euler_stability(A3).weights == (Fraction(1), Fraction(0), Fraction(0))

    def test_example_cycle(self):
        assert [int(w) for w in euler_stability(EX6).weights] == [0, 0, -1, 1, 0, 0]

    def test_source_only_vertex(self):
        q = Quiver(2, ((0, 1),))
        assert euler_stability(q).weights[0] == 1

    def test_cyclic_error(self):
        with pytest.raises(ShapeError):
            euler_stability(Quiver(2, ((0, 1), (1, 0))))

    def test_weight_sum(self):
        rng = make_rng(4)
        for _ in range(20):
            v = random_zigzag_rep(rng)
            q = v.quiver
            total = sum(euler_stability(q).weights)
            assert total == q.vertex_count - len(q.edges)
        # cycle graphs balance to zero
        assert sum(euler_stability(EX6).weights) == 0


class TestSheafEuler:
    def test_interval(self):
        assert sheaf_euler_characteristic(interval_module(A3, Interval(0, 2), QQ)) == 1

    def test_zero(self):
        assert sheaf_euler_characteristic(zero_representation(A3, QQ)) == 0

    def test_additive(self):
        rng = make_rng(5)
        for _ in range(30):
            a = random_zigzag_rep(rng, max_n=3)
            b = random_zigzag_rep(rng, max_n=3)
            if a.quiver != b.quiver or a.field != b.field:
                continue
            assert sheaf_euler_characteristic(direct_sum(a, b)) == (
                sheaf_euler_characteristic(a) + sheaf_euler_characteristic(b)
            )

    def test_matches_slope_numerator(self):
        rng = make_rng(6)
        for _ in range(20):
            v = random_zigzag_rep(rng)
            if v.is_zero():
                continue
            eps = euler_stability(v.quiver)
            assert sheaf_euler_characteristic(v) == slope(v, eps) * v.total_dim()
