import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from privregion.core import BetaParams, Disk, GammaParams, Point, make_rng
from privregion.harmonic import ExitPoint, harmonic_log_density
from privregion.inference import (
    AdaptationFailed,
    AttackConfig,
    AttackReport,
    CenterArc,
    CenterPair,
    DiagnosticsFailed,
    GridPosterior,
    InconsistentExits,
    NoIntersection,
    NonFiniteInit,
    PosteriorSamples,
    UniqueCenter,
    attack,
    effective_sample_size,
    grid_posterior,
    posterior_mse,
    quadrature_window,
    recover_center,
    rr_log_posterior,
    rwm_sample,
    split_r_hat,
    tb_log_posterior,
)
from privregion.strategies import (
    FixedRadius,
    RandomRadius,
    TwoBalls,
    generate_observations,
)

TB_MAIN = TwoBalls(1.0, 3.0, BetaParams(4.0, 4.0))
RR_MAIN = RandomRadius(GammaParams(4.0, 4.0))
ORIGIN = Point(0.0, 0.0)
LOG_PI = 1.1447298858494002


def rr_obs_at(positions, gamma=GammaParams(1.0, 1.0)):
    """Observation set with prescribed exit positions (regions synthesized)."""
    pts = np.atleast_2d(np.asarray(positions, dtype=float))
    exits = []
    for p in pts:
        d = float(np.hypot(*p))
        radius = d if d > 0 else 1.0
        center = Point(0.0, 0.0) if d > 0 else Point(1.0, 0.0)
        exits.append(ExitPoint(Point(*p), Disk(center, radius)))
    from privregion.strategies import ExitObservationSet

    return ExitObservationSet(RandomRadius(gamma), tuple(exits), (pts**2).sum(axis=1))


class TestRecoverCenter:
    def test_three_exits_unique(self):
        est = recover_center(
            np.array([[8.0, 4.0], [3.0, 9.0], [-2.0, 4.0]]), 5.0
        )
        assert isinstance(est, UniqueCenter)
        assert est.center.distance_to(Point(3.0, 4.0)) < 1e-9

    def test_many_exits_unique(self, rng):
        obs = generate_observations(ORIGIN, TB_MAIN, 50, rng)
        est = recover_center(obs, TB_MAIN.R)
        true_c = obs.shared_region.center
        assert isinstance(est, UniqueCenter)
        assert est.center.distance_to(true_c) < 1e-9

    def test_inconsistent_exits(self):
        pts = np.array([[8.0, 4.0], [3.0, 9.0], [-2.0, 4.0], [3.0, 4.5]])
        with pytest.raises(InconsistentExits):
            recover_center(pts, 5.0)

    def test_two_exits_pair(self):
        est = recover_center(np.array([[0.0, 0.0], [2.0, 0.0]]), math.sqrt(2.0))
        assert isinstance(est, CenterPair)
        got = {
            (round(est.plus.x, 12), round(est.plus.y, 12)),
            (round(est.minus.x, 12), round(est.minus.y, 12)),
        }
        assert got == {(1.0, 1.0), (1.0, -1.0)}

    def test_two_exits_too_far(self):
        with pytest.raises(NoIntersection):
            recover_center(np.array([[0.0, 0.0], [5.0, 0.0]]), 2.0)

    def test_two_coincident_exits(self):
        with pytest.raises(InconsistentExits):
            recover_center(np.array([[1.0, 1.0], [1.0, 1.0]]), 2.0)

    def test_one_exit_arc(self):
        est = recover_center(np.array([[2.0, 3.0]]), 1.5)
        assert isinstance(est, CenterArc)
        assert est.base == Point(2.0, 3.0)
        assert est.radius == 1.5


class TestRrLogPosterior:
    def test_value_at_exit_point(self):
        obs = rr_obs_at([[1.0, 0.0]])
        # Gamma(1,1): log f(s)/pi at s -> 0 is -log(pi) (clamped at the floor)
        assert rr_log_posterior(Point(1.0, 0.0), obs) == pytest.approx(-LOG_PI, abs=1e-9)

    def test_value_at_unit_distance(self):
        obs = rr_obs_at([[1.0, 0.0]])
        assert rr_log_posterior(ORIGIN, obs) == pytest.approx(-1.0 - LOG_PI, rel=1e-12)

    def test_batch_matches_single(self):
        obs = rr_obs_at([[1.0, 0.0], [0.0, 2.0], [-1.5, 0.5]], GammaParams(4.0, 4.0))
        pts = np.array([[0.0, 0.0], [0.3, 0.4], [2.0, -1.0]])
        batch = rr_log_posterior(pts, obs)
        singles = [rr_log_posterior(Point(*p), obs) for p in pts]
        assert np.allclose(batch, singles, rtol=1e-14)

    def test_sum_over_exits(self):
        both = rr_obs_at([[1.0, 0.0], [0.0, 2.0]], GammaParams(4.0, 4.0))
        one = rr_obs_at([[1.0, 0.0]], GammaParams(4.0, 4.0))
        other = rr_obs_at([[0.0, 2.0]], GammaParams(4.0, 4.0))
        t = Point(0.2, -0.1)
        assert rr_log_posterior(t, both) == pytest.approx(
            rr_log_posterior(t, one) + rr_log_posterior(t, other), rel=1e-12
        )

    def test_wrong_strategy_rejected(self, rng):
        obs = generate_observations(ORIGIN, TB_MAIN, 3, rng)
        with pytest.raises(TypeError):
            rr_log_posterior(ORIGIN, obs)

    def test_likelihood_integrates_to_one(self):
        # n = 1, Gamma(1,1): the posterior is a unit Gaussian in disguise,
        # so the grid quadrature should find unit mass and variance 1/2
        # per coordinate.
        obs = rr_obs_at([[1.0, 0.0]])
        grid = grid_posterior(lambda p: rr_log_posterior(p, obs), quadrature_window(obs))
        assert abs(grid.log_mass) < 1e-3
        assert np.allclose(grid.mean, [1.0, 0.0], atol=1e-6)
        assert np.allclose(grid.cov, 0.5 * np.eye(2), atol=1e-3)


class TestTbLogPosterior:
    def _obs(self, rng, n=4):
        return generate_observations(ORIGIN, TB_MAIN, n, rng)

    def test_support_is_open_disk(self, rng):
        obs = self._obs(rng)
        c = obs.shared_region.center
        inside = np.array([[c.x + 0.5, c.y]])
        outside = np.array([[c.x + 1.5, c.y], [c.x, c.y - 1.0001]])
        assert np.isfinite(tb_log_posterior(inside, c, obs)).all()
        assert np.all(tb_log_posterior(outside, c, obs) == -np.inf)

    def test_matches_prior_times_exit_law(self, rng):
        # route A: the implementation; route B: scipy's Beta density plus
        # the harmonic module's own log density, assembled by hand
        obs = self._obs(rng, n=3)
        region = obs.shared_region
        c = region.center
        spec = obs.strategy
        for off in ([0.3, 0.2], [-0.7, 0.1], [0.0, 0.05]):
            theta = Point(c.x + off[0], c.y + off[1])
            u = (off[0] ** 2 + off[1] ** 2) / spec.r**2
            prior = stats.beta(spec.beta.alpha, spec.beta.beta).logpdf(u) - math.log(
                math.pi * spec.r**2
            )
            harm = sum(harmonic_log_density(e.pos, theta, region) for e in obs.exits)
            assert tb_log_posterior(theta, c, obs) == pytest.approx(prior + harm, rel=1e-10)

    def test_uniform_center_prior_is_flat(self, rng):
        spec = TwoBalls(1.0, 3.0, BetaParams(1.0, 1.0))
        obs = generate_observations(ORIGIN, spec, 3, rng)
        region = obs.shared_region
        c = region.center
        vals = []
        for off in ([0.2, 0.0], [-0.3, 0.55], [0.0, -0.9]):
            theta = Point(c.x + off[0], c.y + off[1])
            harm = sum(harmonic_log_density(e.pos, theta, region) for e in obs.exits)
            vals.append(tb_log_posterior(theta, c, obs) - harm)
        assert np.allclose(vals, -math.log(math.pi * spec.r**2), rtol=1e-12)

    def test_prior_integrates_to_one(self, rng):
        # extract the prior factor and integrate it in polar coordinates
        spec = TwoBalls(2.0, 5.0, BetaParams(2.5, 3.5))
        obs = generate_observations(ORIGIN, spec, 2, rng)
        region = obs.shared_region
        c = region.center
        rho = np.linspace(0.0, spec.r, 20_001)[1:-1]
        thetas = np.column_stack([c.x + rho, np.full_like(rho, c.y)])
        harm = np.zeros_like(rho)
        for e in obs.exits:
            harm += np.array([harmonic_log_density(e.pos, Point(*t), region) for t in thetas])
        prior = tb_log_posterior(thetas, c, obs) - harm
        total = np.trapezoid(np.exp(prior) * 2.0 * math.pi * rho, rho)
        assert total == pytest.approx(1.0, abs=1e-4)

    def test_wrong_strategy_rejected(self, rng):
        obs = generate_observations(ORIGIN, RR_MAIN, 3, rng)
        with pytest.raises(TypeError):
            tb_log_posterior(ORIGIN, ORIGIN, obs)


class TestRwmSample:
    def test_standard_normal_target(self):
        target = lambda x: -0.5 * (x**2).sum(axis=1)
        out = rwm_sample(
            target, np.zeros(2), make_rng(31), n_chains=4, n_burn=800, n_keep=3000
        )
        draws = out.flattened
        ess = min(out.ess)
        assert ess > 500
        assert max(out.r_hat) < 1.02
        assert 0.1 < out.acceptance_rate < 0.45
        se = draws.std(axis=0) / math.sqrt(ess)
        assert np.all(np.abs(draws.mean(axis=0)) < 5.0 * se)
        assert np.allclose(draws.var(axis=0), 1.0, rtol=0.15)

    def test_adapts_toward_target_rate(self):
        target = lambda x: -0.5 * (x**2).sum(axis=1)
        out = rwm_sample(
            target,
            np.zeros(2),
            make_rng(7),
            n_chains=4,
            n_burn=2000,
            n_keep=2000,
            initial_step=40.0,  # far too big; adaptation must recover
        )
        assert 0.12 < out.acceptance_rate < 0.4

    def test_periodic_coordinate(self):
        def target(x):
            return -0.5 * (x[:, 0] ** 2 + x[:, 1] ** 2) + np.cos(x[:, 2] - 1.0)

        out = rwm_sample(
            target,
            np.array([0.0, 0.0, 0.5]),
            make_rng(13),
            n_chains=4,
            n_burn=800,
            n_keep=1500,
            periodic={2: 2.0 * math.pi},
        )
        ang = out.flattened[:, 2]
        assert np.all((ang >= 0.0) & (ang < 2.0 * math.pi))
        mean_dir = np.angle(np.exp(1j * ang).mean())
        assert abs(mean_dir - 1.0) < 0.15

    def test_non_finite_init_rejected(self):
        target = lambda x: np.where(x[:, 0] > 10.0, -0.5 * (x**2).sum(axis=1), -np.inf)
        with pytest.raises(NonFiniteInit):
            rwm_sample(target, np.zeros(2), make_rng(1))

    def test_flat_target_fails_adaptation(self):
        target = lambda x: np.zeros(len(x))
        with pytest.raises(AdaptationFailed):
            rwm_sample(target, np.zeros(2), make_rng(1), n_burn=50, n_keep=50)

    def test_needs_two_coordinates(self):
        with pytest.raises(ValueError):
            rwm_sample(lambda x: np.zeros(len(x)), np.zeros(1), make_rng(1))


class TestDiagnostics:
    def test_r_hat_near_one_for_iid(self):
        chains = make_rng(3).standard_normal((4, 500, 2))
        assert np.all(split_r_hat(chains) < 1.02)

    def test_r_hat_detects_shifted_chain(self):
        chains = make_rng(3).standard_normal((4, 500, 2))
        chains[0, :, 0] += 5.0
        r = split_r_hat(chains)
        assert r[0] > 1.5
        assert r[1] < 1.02

    def test_ess_close_to_n_for_iid(self):
        chains = make_rng(5).standard_normal((4, 1000, 2))
        ess = effective_sample_size(chains)
        assert np.all(ess > 2000.0)
        assert np.all(ess <= 4000.0 + 1e-9)

    def test_ess_small_for_random_walk(self):
        steps = make_rng(5).standard_normal((4, 1000, 2))
        chains = np.cumsum(steps, axis=1)
        ess = effective_sample_size(chains)
        assert np.all(ess < 200.0)

    def test_posterior_samples_validation(self):
        chains = make_rng(1).standard_normal((4, 100, 2))
        PosteriorSamples(chains, 0.3, (1.0, 1.0), (50.0, 50.0), 0.5)
        with pytest.raises(ValueError):
            PosteriorSamples(chains, 1.0, (1.0, 1.0), (50.0, 50.0), 0.5)
        with pytest.raises(ValueError):
            PosteriorSamples(chains[:1], 0.3, (1.0, 1.0), (50.0, 50.0), 0.5)
        with pytest.raises(ValueError):
            PosteriorSamples(chains, 0.3, (1.0,), (50.0, 50.0), 0.5)


class TestPosteriorMse:
    def test_draws_at_truth(self):
        draws = np.tile([2.0, -1.0], (10, 1))
        assert posterior_mse(draws, Point(2.0, -1.0)) == (0.0, 0.0, 0.0)

    def test_point_mass_at_unit_distance(self):
        draws = np.tile([1.0, 0.0], (10, 1))
        mse, bias2, var = posterior_mse(draws, ORIGIN)
        assert (mse, bias2, var) == (1.0, 1.0, 0.0)

    def test_gaussian_cloud(self):
        sigma = 0.7
        draws = ORIGIN.as_array() + sigma * make_rng(9).standard_normal((20_000, 2))
        mse, bias2, var = posterior_mse(draws, ORIGIN)
        # E[mse] = 2 sigma^2; se of the mean of sq distances at this n
        assert abs(mse - 2.0 * sigma**2) < 0.035
        assert bias2 < 0.01
        assert var == pytest.approx(mse - bias2, rel=1e-9)

    def test_accepts_posterior_samples(self):
        chains = make_rng(1).standard_normal((2, 50, 3))
        ps = PosteriorSamples(chains, 0.3, (1.0, 1.0, 1.0), (10.0, 10.0, 10.0), 0.2)
        a = posterior_mse(ps, ORIGIN)
        b = posterior_mse(ps.theta_draws, ORIGIN)
        assert a == b

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.floats(-100.0, 100.0, allow_nan=False),
                st.floats(-100.0, 100.0, allow_nan=False),
            ),
            min_size=1,
            max_size=60,
        ),
        st.floats(-50.0, 50.0, allow_nan=False),
        st.floats(-50.0, 50.0, allow_nan=False),
    )
    def test_decomposition_identity(self, draws, tx, ty):
        mse, bias2, var = posterior_mse(np.array(draws), Point(tx, ty))
        assert mse == pytest.approx(bias2 + var, rel=1e-9, abs=1e-12)


class TestGridPosterior:
    def test_recovers_gaussian_moments(self):
        mu = np.array([0.5, -1.0])
        cov_true = np.array([[0.3, 0.1], [0.1, 0.5]])
        prec = np.linalg.inv(cov_true)

        def target(p):
            d = p - mu
            return -0.5 * np.einsum("ij,jk,ik->i", d, prec, d)

        grid = grid_posterior(target, (-3.0, 4.0, -5.0, 3.0), n=400)
        norm = math.log(2.0 * math.pi) + 0.5 * math.log(np.linalg.det(cov_true))
        assert grid.log_mass == pytest.approx(norm, abs=1e-6)
        assert np.allclose(grid.mean, mu, atol=1e-8)
        assert np.allclose(grid.cov, cov_true, atol=1e-4)

    def test_mse_against_decomposition(self):
        def target(p):
            return -0.5 * ((p - [1.0, 2.0]) ** 2).sum(axis=1)

        grid = grid_posterior(target, (-5.0, 7.0, -4.0, 8.0), n=200)
        mse, bias2, var = grid.mse_against(Point(0.0, 2.0))
        assert bias2 == pytest.approx(1.0, abs=1e-6)
        assert var == pytest.approx(2.0, abs=1e-4)
        assert mse == bias2 + var

    def test_block_rows_do_not_matter(self):
        def target(p):
            return -0.5 * (p**2).sum(axis=1)

        a = grid_posterior(target, (-4.0, 4.0, -4.0, 4.0), n=128, block_rows=128)
        b = grid_posterior(target, (-4.0, 4.0, -4.0, 4.0), n=128, block_rows=7)
        assert a.log_mass == b.log_mass
        assert np.array_equal(a.log_density, b.log_density)

    def test_degenerate_window_rejected(self):
        with pytest.raises(ValueError):
            grid_posterior(lambda p: np.zeros(len(p)), (1.0, 1.0, 0.0, 2.0))

    def test_all_neg_inf_rejected(self):
        with pytest.raises(ValueError):
            grid_posterior(
                lambda p: np.full(len(p), -np.inf), (0.0, 1.0, 0.0, 1.0), n=16
            )


class TestQuadratureWindow:
    def test_two_balls_needs_center(self, rng):
        obs = generate_observations(ORIGIN, TB_MAIN, 4, rng)
        with pytest.raises(ValueError):
            quadrature_window(obs)
        c = obs.shared_region.center
        x0, x1, y0, y1 = quadrature_window(obs, center=c)
        assert (x1 - x0) == pytest.approx(2.0 * TB_MAIN.r)
        assert x0 < c.x < x1 and y0 < c.y < y1

    def test_single_exit_window_has_scale(self):
        obs = rr_obs_at([[1.0, 0.0]], GammaParams(4.0, 4.0))
        x0, x1, y0, y1 = quadrature_window(obs)
        assert x1 - x0 == pytest.approx(12.0 * math.sqrt(1.0))  # 6 * sqrt(mean SP)
        assert (x0 + x1) / 2.0 == pytest.approx(1.0)

    def test_window_covers_exits(self, rng):
        obs = generate_observations(Point(3.0, -2.0), RR_MAIN, 20, rng)
        x0, x1, y0, y1 = quadrature_window(obs)
        pts = obs.positions
        assert pts[:, 0].min() > x0 and pts[:, 0].max() < x1
        assert pts[:, 1].min() > y0 and pts[:, 1].max() < y1


class TestAttackFixedRadius:
    def test_exact_recovery(self, rng):
        theta = Point(1.5, -0.25)
        obs = generate_observations(theta, FixedRadius(2.0), 6, rng)
        report = attack(obs, theta, rng)
        assert report.posterior_mean.distance_to(theta) <= 1e-9 * 2.0
        assert report.variance == 0.0
        assert report.samples is None
        assert report.posterior_mse <= (1e-9 * 2.0) ** 2

    def test_two_exits_insufficient(self, rng):
        from privregion.core import DegenerateConfiguration

        obs = generate_observations(ORIGIN, FixedRadius(1.0), 2, rng)
        with pytest.raises(DegenerateConfiguration):
            attack(obs, ORIGIN, rng)


class TestAttackRandomRadius:
    def test_matches_grid_oracle(self):
        theta = Point(0.4, -0.2)
        obs = generate_observations(theta, RR_MAIN, 6, make_rng(101))
        cfg = AttackConfig(n_keep=2500)
        report = attack(obs, theta, make_rng(202), cfg)
        grid = grid_posterior(lambda p: rr_log_posterior(p, obs), quadrature_window(obs))

        draws = report.samples.theta_draws
        ess = np.asarray(report.samples.ess[:2])
        se = draws.std(axis=0) / np.sqrt(ess)
        diff = np.abs(report.posterior_mean.as_array() - grid.mean)
        assert np.all(diff < 2.0 * se)

        sq = ((draws - theta.as_array()) ** 2).sum(axis=1)
        se_mse = sq.std() / math.sqrt(ess.min())
        assert abs(report.posterior_mse - grid.mse_against(theta)[0]) < 2.0 * se_mse

    def test_report_identity_and_diagnostics(self, rng):
        obs = generate_observations(ORIGIN, RR_MAIN, 10, rng)
        report = attack(obs, ORIGIN, rng)
        assert report.posterior_mse == pytest.approx(report.bias2 + report.variance, rel=1e-9)
        assert max(report.samples.r_hat[:2]) < 1.1
        assert report.wall_time > 0.0

    def test_translation_equivariance(self):
        shift = np.array([25.0, -40.0])
        a_obs = generate_observations(ORIGIN, RR_MAIN, 8, make_rng(55))
        b_obs = generate_observations(Point(*shift), RR_MAIN, 8, make_rng(55))
        a = attack(a_obs, ORIGIN, make_rng(77))
        b = attack(b_obs, Point(*shift), make_rng(77))
        assert b.posterior_mse == pytest.approx(a.posterior_mse, rel=1e-6)
        moved = np.array([a.posterior_mean.x, a.posterior_mean.y]) + shift
        assert b.posterior_mean.distance_to(Point(*moved)) < 1e-6

    def test_diagnostics_gates(self, rng):
        obs = generate_observations(ORIGIN, RR_MAIN, 6, rng)
        with pytest.raises(DiagnosticsFailed, match="ESS"):
            attack(obs, ORIGIN, rng, AttackConfig(ess_min=1e9))
        with pytest.raises(DiagnosticsFailed, match="R-hat"):
            attack(obs, ORIGIN, rng, AttackConfig(rhat_max=0.5))


class TestAttackTwoBalls:
    def test_matches_grid_oracle(self):
        theta = Point(-0.3, 0.6)
        obs = generate_observations(theta, TB_MAIN, 5, make_rng(303))
        cfg = AttackConfig(n_keep=2500)
        report = attack(obs, theta, make_rng(404), cfg)

        c = recover_center(obs, TB_MAIN.R)
        assert isinstance(c, UniqueCenter)
        grid = grid_posterior(
            lambda p: tb_log_posterior(p, c.center, obs),
            quadrature_window(obs, center=c.center),
        )
        draws = report.samples.theta_draws
        ess = np.asarray(report.samples.ess[:2])
        se = draws.std(axis=0) / np.sqrt(ess)
        diff = np.abs(report.posterior_mean.as_array() - grid.mean)
        assert np.all(diff < 2.0 * se)

    def test_draws_stay_in_support(self, rng):
        obs = generate_observations(ORIGIN, TB_MAIN, 6, rng)
        report = attack(obs, ORIGIN, rng)
        c = recover_center(obs, TB_MAIN.R)
        d = np.hypot(
            report.samples.theta_draws[:, 0] - c.center.x,
            report.samples.theta_draws[:, 1] - c.center.y,
        )
        assert np.all(d < TB_MAIN.r)

    def test_two_exit_mixture(self, rng):
        obs = generate_observations(ORIGIN, TB_MAIN, 2, rng)
        report = attack(obs, ORIGIN, rng)
        assert report.samples is None
        assert report.posterior_mse == pytest.approx(report.bias2 + report.variance, rel=1e-9)
        assert report.posterior_mse < (2.0 * TB_MAIN.R + TB_MAIN.r) ** 2
        # pure quadrature: a second run reproduces the numbers exactly
        again = attack(obs, ORIGIN, make_rng(1))
        assert again.posterior_mse == report.posterior_mse
        assert again.posterior_mean == report.posterior_mean

    def test_single_exit_augmented_sampler(self, rng):
        obs = generate_observations(ORIGIN, TB_MAIN, 1, rng)
        report = attack(obs, ORIGIN, rng)
        samples = report.samples
        assert samples.chains.shape[2] == 3
        # every draw must pair theta with a center on the arc through z1
        z = obs.positions[0]
        flat = samples.flattened
        cx = z[0] + TB_MAIN.R * np.cos(flat[:, 2])
        cy = z[1] + TB_MAIN.R * np.sin(flat[:, 2])
        d = np.hypot(flat[:, 0] - cx, flat[:, 1] - cy)
        assert np.all(d < TB_MAIN.r)
        assert math.isfinite(report.posterior_mse)

    def test_inconsistent_exits_surface(self, rng):
        from privregion.strategies import ExitObservationSet

        region = Disk(Point(0.0, 0.0), 3.0)
        exits = tuple(
            ExitPoint(Point(3.0 * math.cos(a), 3.0 * math.sin(a)), region)
            for a in (0.0, 2.0, 4.0)
        )
        # lie about the radius the attacker assumes
        obs = ExitObservationSet(
            TwoBalls(1.0, 2.5, BetaParams(4.0, 4.0)), exits, np.full(3, 9.0)
        )
        with pytest.raises(InconsistentExits):
            attack(obs, ORIGIN, rng)


class TestAttackReport:
    def test_identity_enforced(self):
        AttackReport(Point(0.0, 0.0), 2.0, 1.5, 0.5, None, 0.01)
        with pytest.raises(ValueError):
            AttackReport(Point(0.0, 0.0), 2.0, 1.5, 0.6, None, 0.01)

    def test_negative_values_rejected(self):
        with pytest.raises(ValueError):
            AttackReport(Point(0.0, 0.0), -1.0, -1.5, 0.5, None, 0.01)
