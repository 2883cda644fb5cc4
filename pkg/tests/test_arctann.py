import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arctn.arctann import (
    eval_arctan,
    eval_F,
    eval_phi4,
    full_space_value,
    functional_residual,
    functional_sum,
    order4_identity_triples,
    reflection_args,
    unit_cube_value,
)
from arctn.cubature import QuadratureConfig
from arctn.errors import DomainError
from arctn.special_functions import arctan_constant

from reference_values import ARCTAN_CONSTANT, UNIT_CUBE

positive = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)


class TestEvalArctan:
    def test_order2_is_classical_arctan(self):
        for u in (0.3, 1.0, 2.5, 40.0):
            r = eval_arctan(2, (u,))
            assert r.value == pytest.approx(math.atan(u), abs=1e-10)

    def test_order3_unit_cube(self):
        r = eval_arctan(3, (1.0, 1.0))
        assert r.value == pytest.approx(UNIT_CUBE[3], abs=1e-10)

    def test_zero_argument_short_circuits(self):
        r = eval_arctan(3, (0.0, 5.0))
        assert r.value == 0.0
        assert r.evals == 0
        assert r.converged

    @pytest.mark.parametrize("args", [(1.0,), (1.0, 1.0, 1.0), (-1.0, 2.0),
                                      (math.inf, 1.0), (math.nan, 1.0)])
    def test_rejects_bad_args(self, args):
        with pytest.raises(DomainError):
            eval_arctan(3, args)

    def test_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            args = tuple(rng.uniform(0.1, 4.0, size=2))
            r = eval_arctan(3, args)
            assert 0.0 <= r.value <= math.prod(args)

    def test_symmetry(self):
        rng = np.random.default_rng(6)
        for n in (3, 4):
            for _ in range(10):
                args = tuple(rng.uniform(0.2, 5.0, size=n - 1))
                base = eval_arctan(n, args)
                for perm in itertools.permutations(args):
                    other = eval_arctan(n, perm)
                    slack = 2.0 * (base.error_estimate + other.error_estimate) + 1e-14
                    assert abs(base.value - other.value) <= slack

    def test_monotone_in_each_argument(self):
        rng = np.random.default_rng(7)
        for _ in range(15):
            args = rng.uniform(0.2, 3.0, size=2)
            base = eval_arctan(3, tuple(args)).value
            for i in range(2):
                bumped = args.copy()
                bumped[i] += 0.5
                assert eval_arctan(3, tuple(bumped)).value > base

    def test_large_args_approach_full_space(self):
        limit = eval_arctan(3, (50.0, 50.0))
        full = full_space_value(3)
        assert abs(limit.value - full.value) / full.value <= 0.02

    def test_extreme_aspect_ratio_stress(self):
        r = eval_arctan(3, (1e-3, 1e3))
        assert r.converged
        resid = r.value  # compared through the functional identity below
        assert 0.0 < resid < 1.0


class TestReflectionArgs:
    def test_order3_examples(self):
        u, v = 2.0, 4.0
        assert reflection_args(3, (u, v), 1) == (1.0 / u, v / u)
        assert reflection_args(3, (u, v), 2) == (u / v, 1.0 / v)

    def test_order2_classical(self):
        assert reflection_args(2, (4.0,), 1) == (0.25,)

    def test_rejects_zero_and_bad_index(self):
        with pytest.raises(DomainError):
            reflection_args(3, (0.0, 1.0), 1)
        with pytest.raises(DomainError):
            reflection_args(3, (1.0, 1.0), 0)
        with pytest.raises(DomainError):
            reflection_args(3, (1.0, 1.0), 3)

    @settings(max_examples=200, deadline=None)
    @given(u=positive, v=positive, w=positive, p=st.integers(min_value=1, max_value=3))
    def test_reflection_is_involution(self, u, v, w, p):
        args = (u, v, w)
        twice = reflection_args(4, reflection_args(4, args, p), p)
        assert np.allclose(twice, args, rtol=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(u=positive, v=positive, p=st.integers(min_value=1, max_value=2))
    def test_pivot_slot_holds_reciprocal(self, u, v, p):
        args = (u, v)
        out = reflection_args(3, args, p)
        assert out[p - 1] == 1.0 / args[p - 1]


class TestFunctionalIdentity:
    def test_classical_half_pi(self):
        r = functional_sum(2, (1.0,))
        assert r.value == pytest.approx(math.pi / 2, abs=1e-10)

    def test_order2_residual_tiny(self):
        assert abs(functional_residual(2, (3.7,))) <= 1e-11

    def test_order3_residual(self):
        assert abs(functional_residual(3, (0.4, 9.0))) <= 1e-7

    def test_order3_unit_args(self):
        r = functional_sum(3, (1.0, 1.0))
        assert r.value == pytest.approx(ARCTAN_CONSTANT[3], abs=1e-9)

    def test_order4_is_args_independent(self):
        r = functional_sum(4, (2.0, 0.7, 1.3))
        assert abs(r.value - ARCTAN_CONSTANT[4]) <= 10.0 * r.error_estimate

    def test_extreme_aspect_stress_case(self):
        assert abs(functional_residual(3, (1e-3, 1e3))) <= 1e-4

    def test_randomized_residuals(self):
        rng = np.random.default_rng(17)
        for n, count in ((2, 20), (3, 15), (4, 5)):
            c = arctan_constant(n).value
            for _ in range(count):
                args = tuple(10.0 ** rng.uniform(-1.0, 1.0, size=n - 1))
                r = functional_sum(n, args)
                assert abs(r.value - c) <= 10.0 * r.error_estimate, (n, args)

    def test_rejects_zero_args(self):
        with pytest.raises(DomainError):
            functional_sum(3, (0.0, 1.0))


class TestClosedFormEndpoints:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_unit_cube(self, n):
        r = unit_cube_value(n)
        tol = 1e-8 if n < 4 else 1e-5
        assert abs(r.value - UNIT_CUBE[n]) <= tol

    def test_full_space_order2(self):
        r = full_space_value(2)
        assert r.value == pytest.approx(math.pi / 2, abs=1e-8)

    def test_full_space_order3(self):
        r = full_space_value(3)
        assert abs(r.value - ARCTAN_CONSTANT[3]) <= 1e-6

    def test_full_space_order5_qmc_honest(self):
        # d=4 with the corner spike from the range transform: the engine may
        # not converge, but its value must stay within the reported spread.
        cfg = QuadratureConfig(abs_tol=1e-5, rel_tol=1e-4, method="qmc", seed=3,
                               max_evals=300_000)
        r = full_space_value(5, cfg)
        assert abs(r.value - ARCTAN_CONSTANT[5]) <= max(3.0 * r.error_estimate, 1e-3)


class TestDerivedSolutions:
    def test_F_order2_collapses(self):
        r = eval_F(2, 1.0)
        assert r.value == pytest.approx(math.pi / 2, abs=1e-9)

    def test_F_at_one_is_constant(self):
        r = eval_F(3, 1.0)
        assert r.value == pytest.approx(ARCTAN_CONSTANT[3], abs=1e-8)

    def test_F_reflection_identity(self):
        a, b = eval_F(3, 2.0), eval_F(3, 0.5)
        target = 2.0 * ARCTAN_CONSTANT[3]
        assert abs(a.value + b.value - target) <= 10.0 * (a.error_estimate + b.error_estimate)

    def test_F_identity_randomized(self):
        rng = np.random.default_rng(23)
        for n in (3, 4):
            target = 2.0 * arctan_constant(n).value
            for u in 10.0 ** rng.uniform(-1.0, 1.0, size=8):
                a, b = eval_F(n, u), eval_F(n, 1.0 / u)
                slack = 10.0 * (a.error_estimate + b.error_estimate)
                assert abs(a.value + b.value - target) <= slack, (n, u)

    def test_F_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            eval_F(3, 0.0)
        with pytest.raises(DomainError):
            eval_F(3, -1.0)


class TestPhi4:
    def test_unit_point_doubles_unit_cube(self):
        r = eval_phi4(1.0, 1.0)
        assert r.value == pytest.approx(2.0 * UNIT_CUBE[4], abs=1e-6)

    def test_reflection_identity_example(self):
        a = eval_phi4(2.0, 3.0)
        b = eval_phi4(0.5, 1.0 / 3.0)
        assert abs(a.value + b.value - ARCTAN_CONSTANT[4]) \
            <= 10.0 * (a.error_estimate + b.error_estimate)

    def test_reflection_identity_symmetric_point(self):
        a = eval_phi4(1.0, 1.0)
        assert abs(2.0 * a.value - ARCTAN_CONSTANT[4]) <= 20.0 * a.error_estimate

    def test_identity_randomized(self):
        rng = np.random.default_rng(29)
        for u, v in rng.uniform(0.3, 3.0, size=(8, 2)):
            a, b = eval_phi4(u, v), eval_phi4(1.0 / u, 1.0 / v)
            slack = 10.0 * (a.error_estimate + b.error_estimate)
            assert abs(a.value + b.value - ARCTAN_CONSTANT[4]) <= slack, (u, v)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            eval_phi4(0.0, 1.0)
        with pytest.raises(DomainError):
            eval_phi4(1.0, -2.0)


class TestOrder4RelationTriples:
    """The four printed argument triples must be the reflection family of the
    first one, as multisets (arctan_4 is symmetric in its arguments)."""

    @settings(max_examples=100, deadline=None)
    @given(u=positive, v=positive)
    def test_triples_match_reflections(self, u, v):
        triples = order4_identity_triples(u, v)
        base = triples[0]
        assert base == (u, v, u / v)
        for p in (1, 2, 3):
            expected = sorted(reflection_args(4, base, p))
            assert np.allclose(sorted(triples[p]), expected, rtol=1e-12), p

    def test_four_terms_sum_to_constant(self):
        u, v = 1.7, 0.6
        total = 0.0
        err = 0.0
        for triple in order4_identity_triples(u, v):
            r = eval_arctan(4, triple)
            total += r.value
            err += r.error_estimate
        assert abs(total - ARCTAN_CONSTANT[4]) <= 10.0 * err
