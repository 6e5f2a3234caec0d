"""Tests for partition functions and convergence thresholds.

Threshold values are frozen from closed-form evaluation; every series
with two computation routes (Euler product vs direct sum, closed form
vs sieve) is checked for agreement within its stated tail bound, and
brute-force enumeration oracles validate the weight-count dynamic
programs.
"""

import math

import numpy as np
import pytest

from knotstat.catalog import Catalog, MultiplicityModel
from knotstat.errors import DivergenceError, DomainError
from knotstat.partition import (
    SeriesResult,
    ThresholdReport,
    beta_minus_rhs_constant,
    bound_gap_F,
    crossover_x,
    figure_H_grid,
    figure_H_value,
    figure_f_grid,
    figure_f_value,
    lambda_beta,
    primes_up_to,
    qstar_euler_factor,
    qstar_partition,
    spectral_commutator_matrix,
    spectral_commutator_norm,
    threshold_beta_minus,
    threshold_beta_plus,
    threshold_beta_tilde,
    threshold_report,
    z_alternating,
    z_grothendieck,
    z_knots_times_n,
    z_tau,
)
from knotstat.semigroup import enumerate_knots, omega
from knotstat.specfun import restricted_zeta, riemann_zeta


def subset_catalog(cat, names):
    return Catalog(records=tuple(cat.get(n) for n in names))


class TestLambdaBeta:
    def test_unit_value(self):
        assert lambda_beta(1.0, 2) == pytest.approx(1.0, rel=1e-15)

    def test_left_endpoint(self):
        # beta = ln2/lnq makes q^-beta = 1/2, so lambda = 1
        for q in (3, 5, 11):
            beta = math.log(2) / math.log(q)
            assert lambda_beta(beta, q) == pytest.approx(1.0, rel=1e-12)

    def test_large_beta_limit(self):
        assert 0.0 <= lambda_beta(300.0, 2) < 1e-80

    def test_domain(self):
        with pytest.raises(DomainError):
            lambda_beta(0.0, 2)
        with pytest.raises(DomainError):
            lambda_beta(1.0, 1)


class TestThresholds:
    def test_beta_plus_value(self):
        assert threshold_beta_plus() == pytest.approx(9.4704, abs=1e-3)
        assert threshold_beta_plus() == pytest.approx(
            9.470347402680234, rel=1e-15
        )

    def test_beta_plus_components(self):
        assert math.log(2**20 / 3**6) == pytest.approx(7.2713, abs=1e-3)
        assert -6 * math.log(math.log(2)) == pytest.approx(2.1991, abs=1e-3)

    def test_rhs_constant(self):
        assert beta_minus_rhs_constant() == pytest.approx(8.1905, abs=5e-4)

    def test_beta_minus_values(self):
        assert threshold_beta_minus(2) == pytest.approx(1.9391, abs=5e-4)
        assert threshold_beta_minus(100) == pytest.approx(0.3362, abs=5e-4)
        assert threshold_beta_minus(1000) == pytest.approx(0.2262, abs=5e-4)

    def test_beta_minus_residual(self):
        rhs = beta_minus_rhs_constant()
        for q in (2, 7, 100):
            beta = threshold_beta_minus(q)
            residual = beta - 6 * math.log(lambda_beta(beta, q)) - rhs
            assert abs(residual) < 1e-9

    def test_beta_tilde_residual_and_ordering(self):
        for q in (2, 11, 100):
            beta = threshold_beta_tilde(q)
            lhs = (
                beta
                - 6 * math.log(lambda_beta(beta, q))
                + 6 * math.log(beta)
            )
            rhs = math.log(400.0) - 6 * math.log(math.log(q))
            assert abs(lhs - rhs) < 1e-9
            assert beta < threshold_beta_minus(q)

    def test_report_ordering_sampled(self):
        for q in (2, 3, 5, 10, 31, 100, 1000):
            rep = threshold_report(q)
            assert rep.beta_tilde_minus < rep.beta_minus < rep.beta_plus

    def test_report_ordering_enforced(self):
        with pytest.raises(DomainError):
            ThresholdReport(
                beta_plus=1.0, beta_minus=2.0, beta_tilde_minus=0.5, q=2
            )

    def test_crossover(self):
        x = crossover_x()
        assert x == pytest.approx(1.0883, abs=5e-4)
        assert math.log(2.0) == pytest.approx(
            beta_minus_rhs_constant() * math.log(x), rel=1e-12
        )
        # every admissible integer base exceeds the crossover
        assert x < 2

    def test_bound_gap(self):
        assert bound_gap_F(2) == pytest.approx(40.657, abs=5e-3)
        assert bound_gap_F(2) < bound_gap_F(3) < bound_gap_F(10)

    def test_domain(self):
        with pytest.raises(DomainError):
            threshold_beta_minus(1)
        with pytest.raises(DomainError):
            threshold_beta_tilde(1)


class TestFigures:
    def test_f_monotone_q11(self):
        grid = figure_f_grid(11, beta_max=20.0, n_points=400)
        values = [f for _, f in grid]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_f_left_endpoint_value(self):
        # at beta = ln2/lnq the ratio q^-beta is exactly 1/2, so the
        # lambda term vanishes and f reduces to beta + 6 ln beta
        left = math.log(2) / math.log(11)
        assert figure_f_value(left + 1e-12, 11) == pytest.approx(
            left + 6 * math.log(left), abs=1e-9
        )

    def test_f_root_matches_tilde_threshold(self):
        q = 11
        beta = threshold_beta_tilde(q)
        rhs = math.log(400.0) - 6 * math.log(math.log(q))
        assert figure_f_value(beta, q) == pytest.approx(rhs, abs=1e-9)

    def test_H_positive_at_two(self):
        assert figure_H_value(2) > 0

    def test_H_grid_positive(self):
        grid = figure_H_grid([2 + 0.5 * i for i in range(197)])
        assert len(grid) == 197
        assert all(h > 0 for _, h in grid)

    def test_H_definition(self):
        q = 7.0
        beta = math.pi / math.log(q)
        expected = figure_f_value(beta, q) - (
            math.log(400.0) - 6 * math.log(math.log(q))
        )
        assert figure_H_value(q) == pytest.approx(expected, rel=1e-15)

    def test_grid_domain_errors(self):
        with pytest.raises(DomainError):
            figure_f_grid(1.5)
        with pytest.raises(DomainError):
            figure_f_grid(2, beta_min=0.5)  # below ln2/ln2 = 1
        with pytest.raises(DomainError):
            figure_H_value(1.2)


class TestSeriesResult:
    def test_tail_bound_nonnegative(self):
        with pytest.raises(DomainError):
            SeriesResult(
                value=1.0, terms_used=1, tail_bound=-1e-3, converged=True
            )


class TestZAlternating:
    def test_single_prime_geometric(self, cat):
        sub = subset_catalog(cat, ["3_1"])
        result = z_alternating(10.0, 2, sub)
        assert result.value == pytest.approx(1 / (1 - 2.0**-40), rel=1e-15)
        assert result.converged

    def test_two_prime_product(self, cat):
        sub = subset_catalog(cat, ["3_1", "4_1"])
        expected = 1 / ((1 - 2.0**-40) * (1 - 2.0**-50))
        assert z_alternating(10.0, 2, sub).value == pytest.approx(
            expected, rel=1e-15
        )

    def test_direct_sum_matches_product(self, cat):
        sub = subset_catalog(cat, ["3_1", "4_1", "5_2"])
        both = z_alternating(2.0, 2, sub, mode="both")
        assert both.details["agreement"] <= max(both.tail_bound, 1e-13)

    def test_random_sources_within_tail(self, cat, rng):
        names = [r.name for r in cat if r.alternating]
        for _ in range(25):
            chosen = rng.sample(names, rng.randint(1, 6))
            beta = rng.uniform(1.0, 12.0)
            q = rng.choice([2, 3, 5])
            res = z_alternating(beta, q, subset_catalog(cat, chosen), mode="both")
            assert res.details["agreement"] <= res.tail_bound + 1e-15 * res.value

    def test_direct_mode_reports_tail(self, cat):
        sub = subset_catalog(cat, ["3_1"])
        res = z_alternating(3.0, 2, sub, mode="direct", max_weight=40)
        assert res.value <= res.details["product"] <= res.value + res.tail_bound

    def test_strictly_decreasing_in_beta(self, cat):
        values = [z_alternating(b, 2, cat).value for b in (2.0, 4.0, 8.0, 16.0)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_model_convergent_regime(self, model):
        res = z_alternating(10.0, 2, model)
        assert res.status == "converged"
        assert res.converged
        assert res.value > 1.0

    def test_model_divergent_regime(self, model):
        with pytest.raises(DivergenceError, match="beta_minus"):
            z_alternating(1.5, 2, model)

    def test_model_unknown_band(self, model):
        res = z_alternating(5.0, 2, model)
        assert res.status == "unknown-band"
        assert not res.converged

    def test_domain_errors(self, cat):
        with pytest.raises(DomainError):
            z_alternating(0.0, 2, cat)
        with pytest.raises(DomainError):
            z_alternating(2.0, 1, cat)
        with pytest.raises(DomainError):
            z_alternating(2.0, 2, cat, mode="sideways")


class TestZGrothendieck:
    def test_single_prime_closed_form(self, cat):
        sub = subset_catalog(cat, ["3_1"])
        x = 2.0**-40
        assert z_grothendieck(10.0, 2, sub).value == pytest.approx(
            (1 + x) / (1 - x), rel=1e-15
        )

    def test_empty_source_is_one(self):
        empty = Catalog(records=())
        assert z_grothendieck(5.0, 2, empty).value == 1.0

    def test_two_prime_direct_agreement(self, cat):
        sub = subset_catalog(cat, ["3_1", "4_1"])
        res = z_grothendieck(1.5, 2, sub)
        assert res.details["agreement"] < 1e-10 * res.value

    def test_matches_z_alternating_ratio(self, cat, rng):
        names = [r.name for r in cat if r.alternating]
        for _ in range(10):
            chosen = rng.sample(names, rng.randint(1, 5))
            sub = subset_catalog(cat, chosen)
            beta = rng.uniform(1.0, 8.0)
            za = z_alternating(beta, 2, sub).value
            za2 = z_alternating(2 * beta, 2, sub).value
            assert z_grothendieck(beta, 2, sub).value == pytest.approx(
                za * za / za2, rel=1e-10
            )

    def test_direct_sum_equals_omega_weighted_enumeration(self, cat):
        """The weight-count dynamic program agrees with brute multiset
        enumeration weighted by 2^(number of distinct primes)."""
        sub = subset_catalog(cat, ["3_1", "4_1", "5_1"])
        beta, max_w = 2.0, 12
        brute = sum(
            2.0 ** omega(k) * 2.0 ** (-beta * w)
            for k, w in enumerate_knots(sub, max_w)
        )
        res = z_grothendieck(beta, 2, sub, max_weight=max_w)
        assert res.details["direct"] == pytest.approx(brute, rel=1e-14)

    def test_model_requires_convergent_beta(self, model):
        with pytest.raises(DivergenceError):
            z_grothendieck(5.0, 2, model)
        res = z_grothendieck(10.0, 2, model)
        assert res.converged


class TestQstarSystem:
    def test_euler_factor_p2_beta1(self):
        assert qstar_euler_factor(2, 1.0) == pytest.approx(3.0, rel=1e-15)

    def test_euler_factor_limit(self):
        assert qstar_euler_factor(2, 400.0) == pytest.approx(1.0, abs=1e-15)

    def test_euler_factor_series(self):
        for p, beta in ((2, 1.0), (3, 0.7), (5, 2.0)):
            series = 1.0 + 2.0 * sum(p ** (-beta * n) for n in range(1, 60))
            tail = 2.0 * p ** (-beta * 60) / (1 - p**-beta)
            assert abs(qstar_euler_factor(p, beta) - series) <= tail + 1e-12

    def test_euler_factor_domain(self):
        with pytest.raises(DomainError):
            qstar_euler_factor(4, 1.0)
        with pytest.raises(DomainError):
            qstar_euler_factor(2, 0.0)

    def test_closed_form_at_two(self):
        res = qstar_partition(2.0)
        assert res.value == pytest.approx(2.5, rel=1e-14)
        zeta_route = riemann_zeta(2.0) ** 2 / riemann_zeta(4.0)
        assert res.value == zeta_route

    def test_divergence_at_one(self):
        with pytest.raises(DivergenceError):
            qstar_partition(1.0)

    def test_near_pole_finite(self):
        assert qstar_partition(1.01).value > 100.0

    def test_direct_sieve_brackets_closed_form(self):
        res = qstar_partition(2.0, n_max=50_000, mode="direct")
        assert res.value < 2.5 < res.value + res.tail_bound

    def test_direct_omega_sieve_small(self):
        """Sieve route vs a tiny hand sum over n <= 10."""
        omega_n = {1: 0, 2: 1, 3: 1, 4: 1, 5: 1, 6: 2, 7: 1, 8: 1, 9: 1, 10: 2}
        hand = sum(2 ** w / n**3.0 for n, w in omega_n.items())
        res = qstar_partition(3.0, n_max=10, mode="direct")
        assert res.value == pytest.approx(hand, rel=1e-14)

    def test_prime_product_converges_to_closed_form(self):
        beta = 2.0
        closed = 2.5
        errors = []
        for cutoff in (100, 1000):
            product = 1.0
            for p in primes_up_to(cutoff):
                product *= qstar_euler_factor(p, beta)
            bound = closed * math.expm1(2.0 / (cutoff - 1))
            assert abs(product - closed) <= bound
            errors.append(abs(product - closed))
        assert errors[1] < errors[0]


class TestSpectralCommutator:
    def test_closed_form(self):
        assert spectral_commutator_norm(2, 1) == pytest.approx(math.log(2))
        assert spectral_commutator_norm(2, 0) == 0.0
        assert spectral_commutator_norm(3, -2) == pytest.approx(
            2 * math.log(3)
        )

    def test_matrix_truncation_oracle(self):
        for p, m in ((2, 1), (3, 2), (5, -1)):
            mat = spectral_commutator_matrix(p, m, 200)
            top = np.linalg.svd(mat, compute_uv=False)[0]
            assert top == pytest.approx(
                spectral_commutator_norm(p, m), abs=1e-12
            )

    def test_domain(self):
        with pytest.raises(DomainError):
            spectral_commutator_norm(6, 1)
        with pytest.raises(DomainError):
            spectral_commutator_matrix(2, 5, 4)


class TestZKnotsTimesN:
    def test_factorization(self, cat):
        res = z_knots_times_n(3.0, 2, cat)
        za = z_alternating(3.0, 2, cat).value
        assert res.value / riemann_zeta(3.0) == pytest.approx(za, rel=1e-12)

    def test_empty_source_gives_zeta(self):
        empty = Catalog(records=())
        assert z_knots_times_n(2.5, 2, empty).value == pytest.approx(
            riemann_zeta(2.5), rel=1e-15
        )

    def test_single_prime_value(self, cat):
        sub = subset_catalog(cat, ["3_1"])
        expected = riemann_zeta(10.0) / (1 - 2.0**-40)
        assert z_knots_times_n(10.0, 2, sub).value == pytest.approx(
            expected, rel=1e-14
        )

    def test_zeta_pole(self, cat):
        with pytest.raises(DivergenceError):
            z_knots_times_n(1.0, 2, cat)

    def test_model_needs_convergent_beta(self, model):
        with pytest.raises(DivergenceError):
            z_knots_times_n(5.0, 2, model)


class TestZTau:
    def test_identity_only(self):
        assert z_tau(1.5, [1]).value == pytest.approx(
            riemann_zeta(1.5), rel=1e-15
        )

    def test_huge_weight_factor_is_unity(self):
        res = z_tau(1.5, [1, 2**40])
        assert res.value == riemann_zeta(1.5)

    def test_restricted_factor(self):
        assert z_tau(1.5, [1], n_rho=6).value == pytest.approx(
            restricted_zeta(1.5, 6), rel=1e-14
        )

    def test_moderate_weight_factor_matches_restricted_zeta(self):
        res = z_tau(3.0, [1, 3], n_rho=6)
        expected = restricted_zeta(3.0, 6) * restricted_zeta(9.0, 6)
        assert res.value == pytest.approx(expected, rel=1e-12)

    def test_stabilization_on_group_truncation(self, cat, wq2):
        from knotstat.semigroup import enumerate_group_elements, f_weight

        values = [
            f_weight(g, wq2, cat)
            for g, _ in enumerate_group_elements(cat, 12)
        ]
        res = z_tau(1.5, values)
        assert res.details["stabilization"] < 1e-9
        assert res.converged

    def test_divergence_at_one(self):
        with pytest.raises(DomainError):
            z_tau(1.0, [1])

    def test_identity_multiplicity_enforced(self):
        with pytest.raises(DomainError):
            z_tau(1.5, [2, 4])
        with pytest.raises(DomainError):
            z_tau(1.5, [1, 1])
        with pytest.raises(DomainError):
            z_tau(1.5, [])
        with pytest.raises(DomainError):
            z_tau(1.5, [1, 0])

    def test_n_rho_domain(self):
        with pytest.raises(DomainError):
            z_tau(1.5, [1], n_rho=0)
