from fractions import Fraction

import pytest

import hnzz.hn as hn_module
from hnzz.errors import GuardError, ValidationError
from hnzz.linalg import GF, QQ, Matrix, subspace_contains
from hnzz.quiver import (
    Representation,
    StabilityCondition,
    conjugate,
    direct_sum,
    euler_stability,
    slope,
    zero_representation,
)
from hnzz.zigzag import Barcode, Interval, barcode, interval_module
from hnzz.hn import (
    HNReport,
    hn_bruteforce,
    hn_direct_sum_merge,
    hn_from_barcode,
    hn_r_filtration_eval,
    is_semistable,
    recover_barcode_via_truncations,
    subrep_matrices,
    subrepresentations,
    _sub_quotient,
)
from hnzz.generators import equioriented_quiver, gen_persistence

from conftest import conjugating_bases, make_rng

A2 = equioriented_quiver(2)
A3 = equioriented_quiver(3)
EPS2 = euler_stability(A2)
EPS3 = euler_stability(A3)


def three_step_module(fld=GF(2)):
    return direct_sum(
        direct_sum(
            interval_module(A3, Interval(0, 2), fld),
            interval_module(A3, Interval(0, 0), fld),
        ),
        interval_module(A3, Interval(1, 2), fld),
    )


class TestReportInvariants:
    def test_strictly_decreasing_enforced(self):
        with pytest.raises(ValidationError):
            HNReport(A2, ((Fraction(0), (1, 0)), (Fraction(1), (0, 1))))

    def test_zero_quotient_rejected(self):
        with pytest.raises(ValidationError):
            HNReport(A2, ((Fraction(1), (0, 0)),))


class TestIsSemistable:
    def test_full_interval(self):
        assert is_semistable(interval_module(A2, Interval(0, 1), GF(2)), EPS2)

    def test_split_sum_not_semistable(self):
        v = direct_sum(
            interval_module(A2, Interval(0, 0), GF(2)),
            interval_module(A2, Interval(1, 1), GF(2)),
        )
        assert not is_semistable(v, EPS2)

    def test_zero_weights_always_semistable(self):
        v = three_step_module()
        assert is_semistable(v, StabilityCondition((0, 0, 0)))

    def test_guards(self):
        v = interval_module(A2, Interval(0, 1), QQ)
        with pytest.raises(GuardError):
            is_semistable(v, EPS2)
        big = interval_module(equioriented_quiver(9), Interval(0, 8), GF(2))
        with pytest.raises(GuardError):
            is_semistable(big, euler_stability(equioriented_quiver(9)))
        v5 = interval_module(A2, Interval(0, 1), GF(5))
        with pytest.raises(GuardError):
            is_semistable(v5, EPS2)

    def test_zero_rep(self):
        with pytest.raises(ValidationError):
            is_semistable(zero_representation(A2, GF(2)), EPS2)


class TestSubrepresentations:
    def test_counts_on_split_module(self):
        # K --0--> K: any pair of subspaces is a subrepresentation: 2*2
        v = Representation(A2, GF(2), (1, 1), (Matrix.zeros(GF(2), 1, 1),))
        assert sum(1 for _ in subrepresentations(v)) == 4

    def test_counts_on_identity_module(self):
        # K --id--> K: U_0 = K forces U_1 = K: 3 subrepresentations
        v = Representation(A2, GF(2), (1, 1), (Matrix.identity(GF(2), 1),))
        assert sum(1 for _ in subrepresentations(v)) == 3

    def test_cyclic_quiver_rejected(self):
        from hnzz.errors import ShapeError
        from hnzz.quiver import Quiver, Representation
        from hnzz.linalg import Matrix

        loop = Quiver(2, ((0, 1), (1, 0)))
        v = Representation(
            loop, GF(2), (1, 1),
            (Matrix.identity(GF(2), 1), Matrix.identity(GF(2), 1)),
        )
        with pytest.raises(ShapeError):
            list(subrepresentations(v))

    def test_closed_under_maps(self):
        rng = make_rng(21)
        v, _ = gen_persistence(3, GF(2), 3, rng, min_summands=1, total_cap=6)
        for bases in subrepresentations(v):
            for (src, dst), m in zip(v.quiver.edges, v.mats):
                assert subspace_contains(bases[dst], m @ bases[src])


class TestBruteforce:
    def test_semistable_single_step(self):
        rep = hn_bruteforce(interval_module(A2, Interval(0, 1), GF(2)), EPS2)
        assert len(rep.steps) == 1
        assert rep.steps[0] == (Fraction(1, 2), (1, 1))

    def test_three_steps(self):
        rep = hn_bruteforce(three_step_module(), EPS3)
        assert rep.steps == (
            (Fraction(1), (1, 0, 0)),
            (Fraction(1, 3), (1, 1, 1)),
            (Fraction(0), (0, 1, 1)),
        )

    def test_zero_weights_single_step(self):
        rep = hn_bruteforce(three_step_module(), StabilityCondition((0, 0, 0)))
        assert len(rep.steps) == 1

    def test_zero_rep(self):
        with pytest.raises(ValidationError):
            hn_bruteforce(zero_representation(A2, GF(2)), EPS2)

    def test_witness_stages_are_subreps_with_semistable_quotients(self):
        rng = make_rng(22)
        for _ in range(8):
            v, _ = gen_persistence(
                3, GF(2), 3, rng, min_summands=1, total_cap=6, vertex_cap=4
            )
            if v.is_zero():
                continue
            rep = hn_bruteforce(v, EPS3)
            assert rep.witness is not None
            prev = None
            for (sl, qdims), stage in zip(rep.steps, rep.witness):
                sub = subrep_matrices(v, stage)  # raises if not closed
                if prev is None:
                    quotient = sub
                else:
                    from hnzz.linalg import column_echelon, solve

                    inner = tuple(
                        column_echelon(solve(stage[x], prev[x]))
                        for x in range(3)
                    )
                    quotient, _ = _sub_quotient(sub, inner)
                assert quotient.dims == qdims
                assert slope(quotient, EPS3) == sl
                assert is_semistable(quotient, EPS3)
                prev = stage
            # final stage is everything
            assert rep.witness[-1] == tuple(
                Matrix.identity(GF(2), d) for d in v.dims
            )

    def test_order_independence(self, monkeypatch):
        v = conjugate(three_step_module(), conjugating_bases(three_step_module(), make_rng(23)))
        baseline = hn_bruteforce(v, EPS3)
        original = hn_module.superspace_enumerator

        def reversed_enum(floor, guard=None):
            return iter(list(original(floor, guard))[::-1])

        monkeypatch.setattr(hn_module, "superspace_enumerator", reversed_enum)
        flipped = hn_bruteforce(v, EPS3)
        assert flipped.steps == baseline.steps
        assert flipped.witness == baseline.witness


class TestFromBarcode:
    def test_three_step_example(self):
        bar = Barcode.from_dict(
            {Interval(0, 0): 1, Interval(0, 2): 1, Interval(1, 2): 1}
        )
        rep = hn_from_barcode(bar, A3)
        assert rep.steps == (
            (Fraction(1), (1, 0, 0)),
            (Fraction(1, 3), (1, 1, 1)),
            (Fraction(0), (0, 1, 1)),
        )

    def test_single_family(self):
        A5 = equioriented_quiver(5)
        rep = hn_from_barcode(Barcode.from_dict({Interval(0, 4): 3}), A5)
        assert rep.steps == ((Fraction(1, 5), (3, 3, 3, 3, 3)),)

    def test_slope_zero_only(self):
        rep = hn_from_barcode(Barcode.from_dict({Interval(2, 3): 1}), equioriented_quiver(4))
        assert rep.steps == ((Fraction(0), (0, 0, 1, 1)),)

    def test_empty(self):
        assert hn_from_barcode(Barcode(()), A3).steps == ()

    def test_matches_oracle_small(self):
        rng = make_rng(24)
        for _ in range(25):
            p = rng.choice((2, 3))
            cap = 8 if p == 2 else 6
            v, _ = gen_persistence(
                rng.randint(1, 4), GF(p), 4, rng, min_summands=1, total_cap=cap, vertex_cap=4
            )
            if v.is_zero():
                continue
            fast = hn_from_barcode(barcode(v), v.quiver)
            oracle = hn_bruteforce(v, euler_stability(v.quiver))
            assert fast.steps == oracle.steps


class TestRFiltration:
    def setup_method(self):
        self.rep = hn_bruteforce(three_step_module(), EPS3)

    def test_above_max(self):
        assert hn_r_filtration_eval(self.rep, 2) == (0, 0, 0)

    def test_below_min(self):
        assert hn_r_filtration_eval(self.rep, -5) == (2, 2, 2)

    def test_half(self):
        assert hn_r_filtration_eval(self.rep, Fraction(1, 2)) == (1, 0, 0)

    def test_monotone_step_function(self):
        grid = sorted(
            {Fraction(n, 6) for n in range(-6, 13)} | set(self.rep.slopes()),
            reverse=True,
        )
        prev = None
        for t in grid:
            cur = hn_r_filtration_eval(self.rep, t)
            if prev is not None:
                assert all(a >= b for a, b in zip(cur, prev))
            # right-continuity: value at a slope equals value just below it... the
            # step function only jumps at slopes, and at a slope the step is included
            assert hn_r_filtration_eval(self.rep, t) == cur
            prev = cur
        for sl, _ in self.rep.steps:
            at = hn_r_filtration_eval(self.rep, sl)
            above = hn_r_filtration_eval(self.rep, sl + Fraction(1, 1000))
            assert all(a >= b for a, b in zip(at, above))


class TestMerge:
    def test_equal_slopes_double(self):
        a = HNReport(A2, ((Fraction(0), (1, 1)),))
        assert hn_direct_sum_merge(a, a).steps == ((Fraction(0), (2, 2)),)

    def test_disjoint_slopes(self):
        a = HNReport(A2, ((Fraction(1), (1, 0)),))
        b = HNReport(A2, ((Fraction(1, 2), (1, 1)),))
        assert hn_direct_sum_merge(a, b).steps == (
            (Fraction(1), (1, 0)),
            (Fraction(1, 2), (1, 1)),
        )

    def test_quiver_mismatch(self):
        a = HNReport(A2, ((Fraction(0), (1, 1)),))
        b = HNReport(A3, ((Fraction(0), (1, 1, 1)),))
        with pytest.raises(ValidationError):
            hn_direct_sum_merge(a, b)

    def test_merge_matches_oracle(self):
        rng = make_rng(25)
        for _ in range(15):
            u, _ = gen_persistence(3, GF(2), 2, rng, min_summands=1, total_cap=4)
            w, _ = gen_persistence(3, GF(2), 2, rng, min_summands=1, total_cap=4)
            if u.is_zero() or w.is_zero():
                continue
            merged = hn_direct_sum_merge(
                hn_bruteforce(u, EPS3), hn_bruteforce(w, EPS3)
            )
            assert merged.steps == hn_bruteforce(direct_sum(u, w), EPS3).steps

    def test_merge_matches_r_filtration_sum(self):
        rng = make_rng(26)
        u, _ = gen_persistence(3, GF(3), 2, rng, min_summands=1, total_cap=5)
        w, _ = gen_persistence(3, GF(3), 2, rng, min_summands=1, total_cap=5)
        if u.is_zero() or w.is_zero():
            return
        ru, rw = hn_bruteforce(u, EPS3), hn_bruteforce(w, EPS3)
        merged = hn_direct_sum_merge(ru, rw)
        for t in [Fraction(n, 4) for n in range(-4, 6)]:
            su = hn_r_filtration_eval(ru, t)
            sw = hn_r_filtration_eval(rw, t)
            assert hn_r_filtration_eval(merged, t) == tuple(
                a + b for a, b in zip(su, sw)
            )


class TestRecovery:
    def test_single_interval(self):
        rec = recover_barcode_via_truncations(interval_module(A3, Interval(1, 2), GF(2)))
        assert rec == Barcode.from_dict({Interval(1, 2): 1})

    def test_zero_module(self):
        assert recover_barcode_via_truncations(zero_representation(A3, GF(2))) == Barcode(())

    def test_requires_equioriented(self):
        from hnzz.errors import ShapeError
        from hnzz.quiver import Quiver, Representation
        from hnzz.linalg import Matrix

        zig = Quiver(2, ((1, 0),))
        v = Representation(zig, GF(2), (1, 1), (Matrix.identity(GF(2), 1),))
        with pytest.raises(ShapeError):
            recover_barcode_via_truncations(v)

    def test_matches_barcode(self):
        rng = make_rng(27)
        for _ in range(30):
            v, _ = gen_persistence(rng.randint(1, 5), GF(rng.choice((2, 3))), 4, rng)
            assert recover_barcode_via_truncations(v) == barcode(v)
