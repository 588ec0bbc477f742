"""Bayesian attacks that recover a home location from exit observations.

The attacker sees exit points and knows the strategy parameters. Under a
uniform improper prior on theta, each strategy yields a tractable
unnormalized posterior:

* random-radius: sum of Gamma log-densities of the squared exit distances
  (with a 1/pi planar change of variables);
* two-balls: a Beta prior on the normalized squared offset ||theta - c||^2/r^2
  plus the product of disk exit densities; the shared center c is itself
  pinned down by the exits (exactly, for three or more).

Sampling is adaptive random-walk Metropolis with split-R-hat and ESS
diagnostics. A midpoint-rule grid quadrature provides an independent
posterior oracle for testing and for the two-center mixture weights.
Fixed-radius regions need no sampling at all: three exits determine theta.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln, gammaln

from .core import Point, as_xy, circumcenter, fit_circle_center, max_area_triple
from .strategies import ExitObservationSet, FixedRadius, RandomRadius, TwoBalls

__all__ = [
    "NonFiniteInit",
    "AdaptationFailed",
    "DiagnosticsFailed",
    "InconsistentExits",
    "NoIntersection",
    "UniqueCenter",
    "CenterPair",
    "CenterArc",
    "CenterEstimate",
    "PosteriorSamples",
    "AttackConfig",
    "AttackReport",
    "GridPosterior",
    "recover_center",
    "rr_log_posterior",
    "tb_log_posterior",
    "rwm_sample",
    "split_r_hat",
    "effective_sample_size",
    "posterior_mse",
    "grid_posterior",
    "quadrature_window",
    "attack",
]

# Squared-distance clamp inside the random-radius likelihood. With alpha < 1
# the density diverges as theta approaches an exit; the clamp keeps the log
# finite there. Experiments all use alpha >= 2.
SQ_DIST_FLOOR = 1e-12

# A circle fit through >= 3 exits must be this good, relative to R, before
# the center is trusted; in the exact model the residual is float noise.
CENTER_FIT_RTOL = 1e-6


class NonFiniteInit(ValueError):
    """The sampler was started where the log-target is not finite."""


class AdaptationFailed(RuntimeError):
    """Post-adaptation acceptance rate left the trustworthy range."""


class DiagnosticsFailed(RuntimeError):
    """A configured R-hat or ESS gate rejected the sampler output."""


class InconsistentExits(ValueError):
    """Exit points do not lie on any common radius-R circle."""


class NoIntersection(ValueError):
    """Two exits are farther apart than 2R, so no center fits both."""


@dataclass(frozen=True)
class UniqueCenter:
    center: Point


@dataclass(frozen=True)
class CenterPair:
    plus: Point
    minus: Point


@dataclass(frozen=True)
class CenterArc:
    base: Point
    radius: float


CenterEstimate = UniqueCenter | CenterPair | CenterArc


@dataclass(frozen=True)
class PosteriorSamples:
    """Kept draws from one Metropolis run, plus convergence diagnostics.

    chains has shape (n_chains, n_keep, d); the first two coordinates are
    always the location theta. r_hat and ess are per-coordinate tuples.
    """

    chains: np.ndarray
    acceptance_rate: float
    r_hat: tuple[float, ...]
    ess: tuple[float, ...]
    step: float

    def __post_init__(self) -> None:
        chains = np.asarray(self.chains, dtype=float).copy()
        if chains.ndim != 3 or chains.shape[0] < 2 or chains.shape[1] < 4 or chains.shape[2] < 2:
            raise ValueError(f"chains must be (>=2 chains, >=4 draws, >=2 dims), got {chains.shape}")
        if not 0.0 < self.acceptance_rate < 1.0:
            raise ValueError(f"acceptance rate must lie in (0, 1), got {self.acceptance_rate}")
        d = chains.shape[2]
        if len(self.r_hat) != d or len(self.ess) != d:
            raise ValueError("r_hat and ess must have one entry per coordinate")
        chains.setflags(write=False)
        object.__setattr__(self, "chains", chains)
        object.__setattr__(self, "r_hat", tuple(float(v) for v in self.r_hat))
        object.__setattr__(self, "ess", tuple(float(v) for v in self.ess))

    def __len__(self) -> int:
        return self.chains.shape[0] * self.chains.shape[1]

    @property
    def flattened(self) -> np.ndarray:
        return self.chains.reshape(-1, self.chains.shape[2])

    @property
    def theta_draws(self) -> np.ndarray:
        return self.flattened[:, :2]


@dataclass(frozen=True)
class AttackConfig:
    """Sampler and diagnostics settings shared by all strategy attacks."""

    n_chains: int = 4
    n_burn: int = 1000
    n_keep: int = 1000
    target_accept: float = 0.234
    rhat_max: float | None = None
    ess_min: float | None = None
    quad_nodes: int = 400

    def __post_init__(self) -> None:
        if self.n_chains < 2 or self.n_burn < 1 or self.n_keep < 4:
            raise ValueError("need >= 2 chains, >= 1 burn step, >= 4 kept draws")
        if not 0.0 < self.target_accept < 1.0:
            raise ValueError(f"target acceptance must be in (0,1), got {self.target_accept}")
        if self.quad_nodes < 16:
            raise ValueError(f"quad_nodes too small: {self.quad_nodes}")


@dataclass(frozen=True)
class AttackReport:
    """Outcome of one attack: posterior location estimate and its MSE.

    samples is None when no Metropolis run was involved (fixed-radius
    recovery is exact; the two-center mixture is integrated by quadrature).
    """

    posterior_mean: Point
    posterior_mse: float
    bias2: float
    variance: float
    samples: PosteriorSamples | None
    wall_time: float

    def __post_init__(self) -> None:
        vals = (self.posterior_mse, self.bias2, self.variance, self.wall_time)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"report fields must be finite, got {vals}")
        if self.posterior_mse < 0.0 or self.bias2 < 0.0 or self.variance < 0.0:
            raise ValueError("mse, bias2 and variance must be >= 0")
        gap = abs(self.posterior_mse - (self.bias2 + self.variance))
        if gap > 1e-9 * max(self.posterior_mse, 1e-12):
            raise ValueError(f"mse != bias2 + variance (gap {gap:g})")


def _exit_positions(exits) -> np.ndarray:
    if isinstance(exits, ExitObservationSet):
        return exits.positions
    if isinstance(exits, np.ndarray):
        return np.atleast_2d(np.asarray(exits, dtype=float))
    return np.atleast_2d(np.asarray([as_xy(getattr(e, "pos", e)) for e in exits], dtype=float))


def recover_center(exits, R: float) -> CenterEstimate:
    """Where can the shared two-balls center be, given exits on its boundary?

    Three or more exits determine it (circle fit, residual checked against
    CENTER_FIT_RTOL * R); two exits leave a pair of candidates; one exit a
    whole circle of candidates.
    """
    pts = _exit_positions(exits)
    n = len(pts)
    if n >= 3:
        center, rms = fit_circle_center(pts, R)
        if rms > CENTER_FIT_RTOL * R:
            raise InconsistentExits(f"circle-fit rms {rms:g} exceeds {CENTER_FIT_RTOL * R:g}")
        return UniqueCenter(center)
    if n == 2:
        d = float(np.hypot(*(pts[1] - pts[0])))
        if d > 2.0 * R:
            raise NoIntersection(f"exits {d:g} apart cannot share a radius-{R:g} circle")
        if d == 0.0:
            raise InconsistentExits("coincident exits; use the single-exit form")
        mid = 0.5 * (pts[0] + pts[1])
        u = (pts[1] - pts[0]) / d
        q = math.sqrt(max(R * R - 0.25 * d * d, 0.0))
        normal = np.array([-u[1], u[0]])
        return CenterPair(Point(*(mid + q * normal)), Point(*(mid - q * normal)))
    return CenterArc(Point(*pts[0]), R)


def _theta_batch(theta) -> tuple[np.ndarray, bool]:
    """Coerce a Point / pair / (m,2) array to (m,2); flag if input was single."""
    if isinstance(theta, Point):
        return theta.as_array()[None, :], True
    arr = np.asarray(theta, dtype=float)
    if arr.ndim == 1:
        return arr[None, :], True
    return arr, False


def _rr_logpost(pts: np.ndarray, z: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    sep2 = ((pts[:, None, :] - z[None, :, :]) ** 2).sum(axis=2)
    s = np.maximum(sep2, SQ_DIST_FLOOR)
    const = len(z) * (alpha * math.log(beta) - float(gammaln(alpha)) - math.log(math.pi))
    return const + ((alpha - 1.0) * np.log(s) - beta * s).sum(axis=1)


def rr_log_posterior(theta, obs: ExitObservationSet):
    """Unnormalized log-posterior of theta under the random-radius model.

    Each exit contributes log f_Gamma(||z_i - theta||^2) - log pi; the prior
    is improper uniform. Accepts a single location or an (m, 2) batch.
    """
    spec = obs.strategy
    if not isinstance(spec, RandomRadius):
        raise TypeError(f"observations carry {type(spec).__name__}, not RandomRadius")
    pts, single = _theta_batch(theta)
    out = _rr_logpost(pts, obs.positions, spec.gamma.alpha, spec.gamma.beta)
    return float(out[0]) if single else out


def _tb_logpost(
    pts: np.ndarray,
    centers,
    z: np.ndarray,
    r: float,
    R: float,
    alpha: float,
    beta: float,
) -> np.ndarray:
    c = np.broadcast_to(np.atleast_2d(np.asarray(centers, dtype=float)), pts.shape)
    t2 = ((pts - c) ** 2).sum(axis=1)
    out = np.full(len(pts), -np.inf)
    inside = t2 < r * r
    if not inside.any():
        return out
    p = pts[inside]
    t2i = t2[inside]
    u = np.clip(t2i / (r * r), 1e-15, 1.0 - 1e-15)
    prior = (
        (alpha - 1.0) * np.log(u)
        + (beta - 1.0) * np.log1p(-u)
        - float(betaln(alpha, beta))
        - math.log(math.pi * r * r)
    )
    sep2 = np.maximum(((p[:, None, :] - z[None, :, :]) ** 2).sum(axis=2), 1e-300)
    harm = len(z) * (np.log(R * R - t2i) - math.log(2.0 * math.pi * R)) - np.log(sep2).sum(axis=1)
    out[inside] = prior + harm
    return out


def tb_log_posterior(theta, c, obs: ExitObservationSet):
    """Unnormalized log-posterior of theta under two-balls with center c known.

    Support is the open disk ||theta - c|| < r (the prior on the center
    placement, inverted); outside it the value is -inf. Accepts a single
    location or an (m, 2) batch.
    """
    spec = obs.strategy
    if not isinstance(spec, TwoBalls):
        raise TypeError(f"observations carry {type(spec).__name__}, not TwoBalls")
    pts, single = _theta_batch(theta)
    out = _tb_logpost(
        pts, as_xy(c), obs.positions, spec.r, spec.R, spec.beta.alpha, spec.beta.beta
    )
    return float(out[0]) if single else out


def _wrap_periodic(arr: np.ndarray, periodic: dict[int, float] | None) -> None:
    if periodic:
        for dim, period in periodic.items():
            arr[:, dim] %= period


def rwm_sample(
    log_target,
    init,
    rng: np.random.Generator,
    *,
    n_chains: int = 4,
    n_burn: int = 1000,
    n_keep: int = 1000,
    target_accept: float = 0.234,
    initial_step: float = 1.0,
    periodic: dict[int, float] | None = None,
) -> PosteriorSamples:
    """Adaptive random-walk Metropolis with isotropic Gaussian proposals.

    log_target must accept an (m, d) batch of states and return (m,) log
    densities (finite or -inf). All chains advance in lockstep so each
    iteration costs one batched target evaluation. During burn-in the step
    size follows a Robbins-Monro recursion toward `target_accept` and is
    then frozen; kept draws feed split-R-hat and ESS diagnostics.

    `periodic` maps coordinate index -> period for angle-like coordinates,
    which are wrapped into [0, period) after every proposal. Diagnostics on
    a wrapped coordinate are not meaningful when its posterior straddles
    the cut; position coordinates come first, so gates read r_hat[:2].
    """
    start = np.asarray(init, dtype=float).ravel()
    d = start.size
    if d < 2:
        raise ValueError(f"need at least 2 coordinates, got {d}")
    if n_chains < 2 or n_keep < 4 or n_burn < 1:
        raise ValueError("need >= 2 chains, >= 1 burn step, >= 4 kept draws")
    if not (math.isfinite(initial_step) and initial_step > 0.0):
        raise ValueError(f"initial_step must be finite and > 0, got {initial_step}")
    lp0 = float(np.asarray(log_target(start[None, :]))[0])
    if not math.isfinite(lp0):
        raise NonFiniteInit(f"log target is {lp0} at the initial point {start}")

    # Spread the chains around init, shrinking the jitter until every
    # start lands in the support; stragglers fall back to init itself.
    x = np.tile(start, (n_chains, 1))
    lp = np.full(n_chains, lp0)
    pending = np.ones(n_chains, dtype=bool)
    jitter = initial_step
    for _ in range(40):
        if not pending.any():
            break
        cand = start + jitter * rng.standard_normal((n_chains, d))
        _wrap_periodic(cand, periodic)
        clp = np.asarray(log_target(cand))
        take = pending & np.isfinite(clp)
        x[take] = cand[take]
        lp[take] = clp[take]
        pending &= ~take
        jitter *= 0.5

    log_step = math.log(initial_step)
    with np.errstate(divide="ignore", invalid="ignore"):
        for t in range(1, n_burn + 1):
            prop = x + math.exp(log_step) * rng.standard_normal((n_chains, d))
            _wrap_periodic(prop, periodic)
            plp = np.asarray(log_target(prop))
            accept = np.log(rng.random(n_chains)) < plp - lp
            x = np.where(accept[:, None], prop, x)
            lp = np.where(accept, plp, lp)
            log_step += (float(accept.mean()) - target_accept) / t**0.6

        step = math.exp(log_step)
        chains = np.empty((n_chains, n_keep, d))
        accepted = 0
        for t in range(n_keep):
            prop = x + step * rng.standard_normal((n_chains, d))
            _wrap_periodic(prop, periodic)
            plp = np.asarray(log_target(prop))
            accept = np.log(rng.random(n_chains)) < plp - lp
            x = np.where(accept[:, None], prop, x)
            lp = np.where(accept, plp, lp)
            accepted += int(accept.sum())
            chains[:, t, :] = x

    rate = accepted / (n_chains * n_keep)
    if not 0.05 < rate < 0.95:
        raise AdaptationFailed(
            f"acceptance rate {rate:.3f} outside (0.05, 0.95) after adaptation"
        )
    return PosteriorSamples(
        chains,
        rate,
        tuple(split_r_hat(chains)),
        tuple(effective_sample_size(chains)),
        step,
    )


def _split_chains(chains: np.ndarray) -> np.ndarray:
    """(k, n, d) -> (2k, n//2, d), discarding the odd draw if n is odd."""
    c = np.asarray(chains, dtype=float)
    if c.ndim != 3:
        raise ValueError(f"chains must be (n_chains, n_draws, d), got shape {c.shape}")
    half = c.shape[1] // 2
    if half < 2:
        raise ValueError("need at least 4 draws per chain")
    return np.concatenate([c[:, :half, :], c[:, half : 2 * half, :]], axis=0)


def split_r_hat(chains) -> np.ndarray:
    """Split-chain potential scale reduction factor, one value per coordinate."""
    seqs = _split_chains(chains)
    n = seqs.shape[1]
    means = seqs.mean(axis=1)
    w = seqs.var(axis=1, ddof=1).mean(axis=0)
    var_plus = w * (n - 1) / n + means.var(axis=0, ddof=1)
    out = np.ones(seqs.shape[2])
    pos = w > 0.0
    out[pos] = np.sqrt(var_plus[pos] / w[pos])
    return out


def _autocov(seqs: np.ndarray) -> np.ndarray:
    """Per-row biased autocovariance of (m, n) sequences, via FFT."""
    m, n = seqs.shape
    x = seqs - seqs.mean(axis=1, keepdims=True)
    size = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, size, axis=1)
    return np.fft.irfft(f * np.conj(f), size, axis=1)[:, :n] / n


def _ess_1d(seqs: np.ndarray) -> float:
    m, n = seqs.shape
    cap = float(m * n)
    acov = _autocov(seqs)
    w = float((acov[:, 0] * n / (n - 1.0)).mean())
    var_plus = w * (n - 1.0) / n + float(seqs.mean(axis=1).var(ddof=1))
    if w <= 0.0 or var_plus <= 0.0:
        return cap
    rho = 1.0 - (w - acov.mean(axis=0)) / var_plus
    # Geyer: sum autocorrelations in pairs, keep the initial positive
    # monotone stretch, stop at the first nonpositive pair.
    npairs = n // 2
    pairs = rho[0 : 2 * npairs : 2] + rho[1 : 2 * npairs : 2]
    neg = np.nonzero(pairs <= 0.0)[0]
    pairs = pairs[: neg[0]] if len(neg) else pairs
    if len(pairs) == 0:
        return cap
    tau = -1.0 + 2.0 * float(np.minimum.accumulate(pairs).sum())
    if tau <= 0.0:
        return cap
    return min(cap, cap / tau)


def effective_sample_size(chains) -> np.ndarray:
    """Autocorrelation-adjusted sample size per coordinate (split chains)."""
    seqs = _split_chains(chains)
    return np.array([_ess_1d(seqs[:, :, dim]) for dim in range(seqs.shape[2])])


def posterior_mse(samples, theta_true) -> tuple[float, float, float]:
    """(mse, bias2, variance) of location draws against the true location.

    mse is the mean squared distance, bias2 the squared distance of the
    sample mean, variance the trace of the 1/N-normalized sample
    covariance, so mse = bias2 + variance up to rounding.
    """
    draws = samples.theta_draws if isinstance(samples, PosteriorSamples) else None
    if draws is None:
        draws = np.atleast_2d(np.asarray(samples, dtype=float))[:, :2]
    t = as_xy(theta_true)
    sq = ((draws - t) ** 2).sum(axis=1)
    mse = float(sq.mean())
    center = draws.mean(axis=0)
    bias2 = float(((center - t) ** 2).sum())
    variance = float(((draws - center) ** 2).sum(axis=1).mean())
    return mse, bias2, variance


@dataclass(frozen=True)
class GridPosterior:
    """Midpoint-rule quadrature of an unnormalized posterior on a window.

    log_mass is the log of the integral of exp(log target) over the
    window; mean and cov are the normalized first two moments. [i, j]
    indexes (xs[i], ys[j]).
    """

    xs: np.ndarray
    ys: np.ndarray
    log_density: np.ndarray
    log_mass: float
    mean: np.ndarray
    cov: np.ndarray

    def mse_against(self, theta_true) -> tuple[float, float, float]:
        t = as_xy(theta_true)
        bias2 = float(((self.mean - t) ** 2).sum())
        variance = float(np.trace(self.cov))
        return bias2 + variance, bias2, variance


def grid_posterior(log_target, window, n: int = 400, block_rows: int = 64) -> GridPosterior:
    """Evaluate log_target on an n x n midpoint grid and integrate.

    window is (x0, x1, y0, y1). Evaluation runs in row blocks to bound the
    memory of targets that expand an (m, n_exits) pair matrix.
    """
    x0, x1, y0, y1 = (float(v) for v in window)
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"window must have positive extent, got {window}")
    dx = (x1 - x0) / n
    dy = (y1 - y0) / n
    xs = x0 + (np.arange(n) + 0.5) * dx
    ys = y0 + (np.arange(n) + 0.5) * dy
    logd = np.empty((n, n))
    for lo in range(0, n, block_rows):
        hi = min(lo + block_rows, n)
        pts = np.column_stack(
            [np.repeat(xs[lo:hi], n), np.tile(ys, hi - lo)]
        )
        logd[lo:hi, :] = np.asarray(log_target(pts)).reshape(hi - lo, n)
    peak = float(logd.max())
    if not math.isfinite(peak):
        raise ValueError("log target is -inf (or nan) everywhere on the window")
    w = np.exp(logd - peak)
    total = float(w.sum())
    wn = w / total
    px = wn.sum(axis=1)
    py = wn.sum(axis=0)
    mean = np.array([float(px @ xs), float(py @ ys)])
    dxs = xs - mean[0]
    dys = ys - mean[1]
    cxx = float(px @ dxs**2)
    cyy = float(py @ dys**2)
    cxy = float(dxs @ wn @ dys)
    return GridPosterior(
        xs=xs,
        ys=ys,
        log_density=logd,
        log_mass=peak + math.log(total) + math.log(dx * dy),
        mean=mean,
        cov=np.array([[cxx, cxy], [cxy, cyy]]),
    )


def quadrature_window(obs: ExitObservationSet, center: Point | None = None):
    """Integration window for the oracle, from attacker-visible data only.

    Two-balls posteriors live on the known support square around the
    recovered center. Otherwise: centroid of the exits, half-width 6x the
    posterior scale (max pairwise exit distance, floored by the strategy's
    own length scale so a single exit still gets a usable window).
    """
    spec = obs.strategy
    if isinstance(spec, TwoBalls):
        if center is None:
            raise ValueError("two-balls window needs the recovered center")
        return (center.x - spec.r, center.x + spec.r, center.y - spec.r, center.y + spec.r)
    pts = obs.positions
    mid = pts.mean(axis=0)
    scale = 0.0
    if len(pts) > 1:
        diffs = pts[:, None, :] - pts[None, :, :]
        scale = float(np.sqrt((diffs**2).sum(axis=2).max()))
    if isinstance(spec, RandomRadius):
        scale = max(scale, math.sqrt(spec.gamma.mean))
    elif isinstance(spec, FixedRadius):
        scale = max(scale, spec.r_star)
    half = 6.0 * scale
    return (mid[0] - half, mid[0] + half, mid[1] - half, mid[1] + half)


def _attack_fixed(obs: ExitObservationSet, theta_true):
    pts = obs.positions
    i, j, k = max_area_triple(pts)
    disk = circumcenter(Point(*pts[i]), Point(*pts[j]), Point(*pts[k]))
    est = disk.center.as_array()
    bias2 = float(((est - as_xy(theta_true)) ** 2).sum())
    return est, bias2, bias2, 0.0, None


def _attack_rr(obs: ExitObservationSet, theta_true, cfg: AttackConfig, rng):
    spec = obs.strategy
    z = obs.positions
    target = lambda pts: _rr_logpost(pts, z, spec.gamma.alpha, spec.gamma.beta)
    samples = rwm_sample(
        target,
        z.mean(axis=0),
        rng,
        n_chains=cfg.n_chains,
        n_burn=cfg.n_burn,
        n_keep=cfg.n_keep,
        target_accept=cfg.target_accept,
        initial_step=math.sqrt(spec.gamma.mean / len(z)),
    )
    mse, bias2, variance = posterior_mse(samples, theta_true)
    return samples.theta_draws.mean(axis=0), mse, bias2, variance, samples


def _tb_ring_init(target, c: np.ndarray, r: float) -> np.ndarray:
    """Best starting point on a mid-support ring around the fitted center."""
    angles = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    cand = c + 0.5 * r * np.column_stack([np.cos(angles), np.sin(angles)])
    cand = np.vstack([cand, c])
    lp = np.asarray(target(cand))
    best = int(np.argmax(lp))
    if not math.isfinite(float(lp[best])):
        raise NonFiniteInit("no finite starting point near the recovered center")
    return cand[best]


def _attack_tb(obs: ExitObservationSet, theta_true, cfg: AttackConfig, rng):
    spec = obs.strategy
    z = obs.positions
    est = recover_center(z, spec.R)
    a, b = spec.beta.alpha, spec.beta.beta

    if isinstance(est, UniqueCenter):
        c = est.center.as_array()
        target = lambda pts: _tb_logpost(pts, c, z, spec.r, spec.R, a, b)
        samples = rwm_sample(
            target,
            _tb_ring_init(target, c, spec.r),
            rng,
            n_chains=cfg.n_chains,
            n_burn=cfg.n_burn,
            n_keep=cfg.n_keep,
            target_accept=cfg.target_accept,
            initial_step=spec.r / 4.0,
        )
        mse, bias2, variance = posterior_mse(samples, theta_true)
        return samples.theta_draws.mean(axis=0), mse, bias2, variance, samples

    if isinstance(est, CenterPair):
        # Bimodal posterior, one mode per candidate center. Quadrature gives
        # each mode's mass and moments exactly (up to the grid), so no
        # Metropolis run is needed; moments mix by the law of total variance.
        grids = []
        for cpt in (est.plus, est.minus):
            c = cpt.as_array()
            gp = grid_posterior(
                lambda pts: _tb_logpost(pts, c, z, spec.r, spec.R, a, b),
                quadrature_window(obs, cpt),
                n=cfg.quad_nodes,
            )
            grids.append(gp)
        lm = np.array([g.log_mass for g in grids])
        wts = np.exp(lm - lm.max())
        wts /= wts.sum()
        mean = wts[0] * grids[0].mean + wts[1] * grids[1].mean
        t = as_xy(theta_true)
        bias2 = float(((mean - t) ** 2).sum())
        variance = float(
            sum(
                w * (np.trace(g.cov) + ((g.mean - mean) ** 2).sum())
                for w, g in zip(wts, grids)
            )
        )
        return mean, bias2 + variance, bias2, variance, None

    # Single exit: the center is only known to sit on a circle around it,
    # so sample (theta, psi) jointly with c(psi) = z1 + R (cos psi, sin psi).
    z1 = z[0]
    R = spec.R

    def target(x: np.ndarray) -> np.ndarray:
        ang = x[:, 2]
        centers = z1 + R * np.column_stack([np.cos(ang), np.sin(ang)])
        return _tb_logpost(x[:, :2], centers, z, spec.r, R, a, b)

    c0 = z1 + np.array([R, 0.0])
    th0 = c0 + 0.5 * spec.r * (z1 - c0) / R
    samples = rwm_sample(
        target,
        np.array([th0[0], th0[1], 0.0]),
        rng,
        n_chains=cfg.n_chains,
        n_burn=cfg.n_burn,
        n_keep=cfg.n_keep,
        target_accept=cfg.target_accept,
        initial_step=spec.r / 4.0,
        periodic={2: 2.0 * math.pi},
    )
    mse, bias2, variance = posterior_mse(samples, theta_true)
    return samples.theta_draws.mean(axis=0), mse, bias2, variance, samples


def attack(
    obs: ExitObservationSet,
    theta_true,
    rng: np.random.Generator,
    config: AttackConfig | None = None,
) -> AttackReport:
    """Run the strategy-appropriate attack and score it against the truth.

    Fixed-radius: exact recovery through a well-conditioned exit triple.
    Random-radius: Metropolis on the Gamma-likelihood posterior. Two-balls:
    center recovery first, then Metropolis with the center fixed (n >= 3),
    a quadrature mixture over the two candidate centers (n = 2), or an
    augmented (theta, angle) sampler (n = 1).
    """
    cfg = config if config is not None else AttackConfig()
    t0 = time.perf_counter()
    spec = obs.strategy
    if isinstance(spec, FixedRadius):
        mean, mse, bias2, variance, samples = _attack_fixed(obs, theta_true)
    elif isinstance(spec, RandomRadius):
        mean, mse, bias2, variance, samples = _attack_rr(obs, theta_true, cfg, rng)
    elif isinstance(spec, TwoBalls):
        mean, mse, bias2, variance, samples = _attack_tb(obs, theta_true, cfg, rng)
    else:
        raise TypeError(f"unknown strategy spec {spec!r}")

    if samples is not None:
        if cfg.rhat_max is not None and max(samples.r_hat[:2]) > cfg.rhat_max:
            raise DiagnosticsFailed(
                f"split R-hat {max(samples.r_hat[:2]):.4f} exceeds {cfg.rhat_max}"
            )
        if cfg.ess_min is not None and min(samples.ess[:2]) < cfg.ess_min:
            raise DiagnosticsFailed(f"ESS {min(samples.ess[:2]):.1f} below {cfg.ess_min}")

    return AttackReport(
        posterior_mean=Point(float(mean[0]), float(mean[1])),
        posterior_mse=mse,
        bias2=bias2,
        variance=variance,
        samples=samples,
        wall_time=time.perf_counter() - t0,
    )
