"""Verification checks: Lepage property, triviality, order-reducibility, closure."""
import random

import pytest

from lepage import (
    ChartContext,
    Convention,
    DivergenceGenerator,
    Lagrangian,
    PreconditionError,
    X,
    Y,
    calibrate_convention,
    camassa_holm,
    closure_check,
    combination_conditions,
    const,
    dirichlet,
    el_expansion_crosscheck,
    fundamental_first_order,
    fundamental_second_order_n2,
    hessian_determinant,
    is_lepage_equivalent,
    is_lepage_form,
    is_trivial,
    lagrangian_form,
    make_divergence_lagrangian,
    order_reducible,
    principal_lepage,
    second_order_corpus,
    trivial_conditions_second_order,
    trivial_order_reducible_corpus,
    zero_form,
)
from lepage.expr import is_zero_expr
from lepage.verification import random_divergence_lagrangian


def lag(n, m, r, L):
    return Lagrangian(ChartContext(n, m, r), r, L)


class TestLepageChecks:
    def test_theta_is_lepage(self):
        for lam in (dirichlet(), camassa_holm(), hessian_determinant()):
            assert is_lepage_form(principal_lepage(lam)).passed

    def test_bare_lagrangian_form_is_not(self):
        lam = lag(2, 1, 1, const(1, 2) * Y(1, 1) ** 2)
        report = is_lepage_form(lagrangian_form(lam))
        assert not report.passed
        assert report.label == "lepage-contact"
        assert report.witness is not None

    def test_zero_form_passes(self):
        assert is_lepage_form(zero_form(ChartContext(2, 1, 1), 2, 1)).passed

    def test_wrong_degree_rejected(self):
        with pytest.raises(PreconditionError):
            is_lepage_form(zero_form(ChartContext(2, 1, 1), 1, 1))

    def test_equivalence(self):
        lam = dirichlet()
        theta = principal_lepage(lam)
        assert is_lepage_equivalent(theta, lam).passed

    def test_scaling_mismatch(self):
        lam = dirichlet()
        doubled = lag(2, 1, 1, 2 * lam.L)
        report = is_lepage_equivalent(principal_lepage(lam), doubled)
        assert not report.passed
        assert report.label == "horizontal-mismatch"


class TestTriviality:
    def test_divergence_lagrangians_are_trivial(self):
        rng = random.Random(11)
        for _ in range(3):
            lam = random_divergence_lagrangian(ChartContext(2, 1, 1), rng)
            assert is_trivial(lam).passed

    def test_hessian_is_trivial(self):
        assert is_trivial(hessian_determinant()).passed

    def test_dirichlet_is_not(self):
        report = is_trivial(dirichlet())
        assert not report.passed
        assert is_zero_expr(report.witness + Y(1, 1, 1) + Y(1, 2, 2))

    def test_conditions_match_direct_check(self):
        for lam in second_order_corpus():
            assert trivial_conditions_second_order(lam).passed == is_trivial(lam).passed

    def test_camassa_holm_fails_in_first_family(self):
        report = trivial_conditions_second_order(camassa_holm())
        assert not report.passed
        assert report.label == "triviality[1]"

    def test_constant_lagrangian(self):
        assert trivial_conditions_second_order(lag(2, 1, 2, const(3))).passed


class TestOrderReducibility:
    def test_linear_in_second_derivatives(self):
        lam = lag(2, 1, 2, X(1) * Y(1, 1, 1) + Y(1) * Y(1, 1, 2) + Y(1, 2) * Y(1, 2, 2))
        assert order_reducible(lam).passed

    def test_camassa_holm_condition5(self):
        report = order_reducible(camassa_holm())
        assert not report.passed
        assert report.label == "order-reducibility[5]"
        assert is_zero_expr(report.witness - const(1, 2) / Y(1, 1))

    def test_camassa_holm_plain_witness(self):
        report = order_reducible(camassa_holm(), convention=Convention.PLAIN)
        assert is_zero_expr(report.witness - 2 / Y(1, 1))

    def test_hessian_under_shipped_convention(self):
        assert order_reducible(hessian_determinant()).passed
        assert not order_reducible(hessian_determinant(), convention=Convention.PLAIN).passed

    def test_reducible_theta_keeps_order(self):
        for lam in trivial_order_reducible_corpus():
            assert order_reducible(lam).passed
            assert principal_lepage(lam).max_coeff_order() <= 2


class TestCombinationConditions:
    def test_divergence_members_pass(self):
        gen = DivergenceGenerator(
            ChartContext(2, 1, 1), (const(1, 2) * Y(1, 2) ** 2, const(0)), 1
        )
        lam = make_divergence_lagrangian(gen)
        assert combination_conditions(lam).passed

    def test_linear_trivial(self):
        lam = lag(2, 1, 2, Y(1, 2) * Y(1, 1, 2))
        assert combination_conditions(lam).passed

    def test_nontrivial_first_order_fails_in_tc1_part(self):
        lam = lag(2, 1, 2, Y(1, 1) * Y(1, 2))
        report = combination_conditions(lam)
        assert not report.passed
        assert report.label == "combination[1]"
        assert is_zero_expr(report.witness + 2 * Y(1, 1, 2))

    def test_precondition_enforced(self):
        with pytest.raises(PreconditionError):
            combination_conditions(camassa_holm())

    def test_matches_direct_check_on_reducible_corpus(self):
        for lam in second_order_corpus():
            if order_reducible(lam).passed:
                assert combination_conditions(lam).passed == is_trivial(lam).passed


class TestClosure:
    def test_fundamental_of_null_first_order(self):
        from lepage import null_divergence_m2

        z = fundamental_first_order(null_divergence_m2())
        assert closure_check(z).passed

    def test_trivial_second_order_corpus(self):
        for lam in trivial_order_reducible_corpus():
            z, _ = fundamental_second_order_n2(lam)
            assert closure_check(z).passed

    def test_theta_of_dirichlet_fails_with_el_witness(self):
        report = closure_check(principal_lepage(dirichlet()))
        assert not report.passed
        assert is_zero_expr(report.witness + Y(1, 1, 1) + Y(1, 2, 2))


class TestDivergenceGenerator:
    def test_zeroth_order(self):
        gen = DivergenceGenerator(ChartContext(2, 1, 0), (const(1, 2) * Y(1) ** 2, const(0)), 0)
        lam = make_divergence_lagrangian(gen)
        assert lam.r == 1
        assert is_zero_expr(lam.L - Y(1) * Y(1, 1))
        assert is_trivial(lam).passed

    def test_first_order(self):
        gen = DivergenceGenerator(ChartContext(2, 1, 1), (const(1, 2) * Y(1, 2) ** 2, const(0)), 1)
        lam = make_divergence_lagrangian(gen)
        assert is_zero_expr(lam.L - Y(1, 2) * Y(1, 1, 2))

    def test_antisymmetric_constant_pair(self):
        gen = DivergenceGenerator(ChartContext(2, 1, 0), (X(2), -X(1)), 0)
        lam = make_divergence_lagrangian(gen)
        assert is_zero_expr(lam.L)

    def test_second_order_needs_cyclic_condition(self):
        ctx = ChartContext(2, 1, 2)
        with pytest.raises(PreconditionError):
            DivergenceGenerator(ctx, (Y(1, 1, 1), const(0)), 2)
        # the pair (y_22, -y_12) satisfies the cyclic condition
        gen = DivergenceGenerator(ctx, (Y(1, 2, 2), -Y(1, 1, 2)), 2)
        lam = make_divergence_lagrangian(gen)
        assert is_zero_expr(lam.L)


class TestElExpansion:
    def test_random_second_order(self):
        rng = random.Random(2)
        from lepage.verification import random_polynomial

        ctx = ChartContext(2, 1, 2)
        pool = list(ctx.coordinates())
        for _ in range(3):
            lam = Lagrangian(ctx, 2, random_polynomial(rng, pool, terms=3, degree=2))
            assert el_expansion_crosscheck(lam).passed

    def test_camassa_holm(self):
        assert el_expansion_crosscheck(camassa_holm()).passed

    def test_first_order_viewed_as_second(self):
        assert el_expansion_crosscheck(dirichlet(r=2)).passed


class TestCalibration:
    def test_unique_winner(self):
        report = calibrate_convention()
        assert report.unique
        assert report.winner == (Convention.SYMMETRIZED, Convention.SYMMETRIZED)
        assert report.ch_witness is not None
        assert "y1_1" in report.ch_witness

    def test_deterministic(self):
        a = calibrate_convention().render()
        b = calibrate_convention().render()
        assert a == b

    def test_empty_corpus_rejected(self):
        with pytest.raises(PreconditionError):
            calibrate_convention(corpus=[])

    def test_nontrivial_member_rejected(self):
        with pytest.raises(PreconditionError):
            calibrate_convention(corpus=[dirichlet(r=2)])

    def test_divergence_only_corpus_may_be_ambiguous(self):
        # degenerate members cannot discriminate: every combination passes
        gen = DivergenceGenerator(ChartContext(2, 1, 0), (X(2) * Y(1), const(0)), 0)
        lam = Lagrangian(ChartContext(2, 1, 2), 2, make_divergence_lagrangian(gen).L)
        report = calibrate_convention(corpus=[lam])
        assert len(report.passing) == 4
        assert not report.unique
