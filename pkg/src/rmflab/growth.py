"""Partial-sum experiments: growth exponents, ratio statistics, ensembles.

Partial sums of the sign series are exact 64-bit integers.  Weighted sums
carry bounded floating weights (below (2*beta-1)**-9 ~ 13.3 at beta = 7/8
for X <= 10**8) and are accumulated segment by segment with exact fsum.

Checkpoints live on a geometric grid with ratio 10**(1/8), so every power
of ten is itself a checkpoint and log-log fits see evenly spaced abscissae.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .dyadic import DyadicFraction
from .errors import (CoverageError, DomainError, FitError, PreconditionError,
                     RangeError)
from .sampler import OmegaAssignment, SignSeries, build_sign_series
from .sieve import distinct_prime_counts, mobius_sieve
from .dirichlet import weight_factor

GRID_STEPS_PER_DECADE = 8


def checkpoint_grid(x_max: int, x_min: int = 10) -> np.ndarray:
    """Geometric checkpoints with ratio 10**(1/8), ending exactly at x_max."""
    if x_max < x_min:
        raise DomainError(f"x_max={x_max} below x_min={x_min}")
    j0 = math.ceil(GRID_STEPS_PER_DECADE * math.log10(x_min) - 1e-9)
    j1 = math.floor(GRID_STEPS_PER_DECADE * math.log10(x_max) + 1e-9)
    xs = np.unique(np.round(10.0 ** (np.arange(j0, j1 + 1) /
                                     GRID_STEPS_PER_DECADE)).astype(np.int64))
    if len(xs) == 0 or xs[-1] != x_max:
        xs = np.append(xs, x_max)
    return xs[xs <= x_max]


@dataclass(frozen=True)
class SumGrid:
    """Checkpointed partial sums; integer-exact unless weighted."""

    checkpoints: np.ndarray
    sums: np.ndarray  # int64 for raw sign sums, float64 for weighted sums


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares slope of log|S| against log x."""

    alpha: float
    stderr: float
    points_used: int
    points_dropped: int
    window: tuple[float, float]


@dataclass(frozen=True)
class SelbergDelangeStat:
    """Ratio R(x) = S(x) * (log x)**(2 beta) / x along the checkpoints."""

    beta: float
    checkpoints: np.ndarray
    ratios: np.ndarray
    terminal_ratio: float
    sign_stable: bool  # R > 0 at every checkpoint in the final decade


def partial_sums(series: SignSeries, grid: np.ndarray) -> SumGrid:
    """Exact integer prefix sums at the grid checkpoints."""
    grid = np.asarray(grid, dtype=np.int64)
    if grid.max() > series.limit:
        raise RangeError(
            f"grid max {grid.max()} exceeds series limit {series.limit}")
    return SumGrid(checkpoints=grid, sums=series.prefix[grid].copy())


def weighted_sum_grid(weighted_values: np.ndarray,
                      grid: np.ndarray) -> SumGrid:
    """Checkpoint sums of an arbitrary weighted value array (index = n).

    Each inter-checkpoint segment is reduced with exact fsum; the running
    total is the cumulative sum of those segment values.
    """
    grid = np.asarray(grid, dtype=np.int64)
    if grid.max() > len(weighted_values) - 1:
        raise RangeError("grid exceeds weighted value array")
    sums = np.empty(len(grid), dtype=np.float64)
    total = 0.0
    prev = 0
    for i, x in enumerate(grid):
        total = math.fsum([total, math.fsum(weighted_values[prev + 1: x + 1])])
        sums[i] = total
        prev = int(x)
    return SumGrid(checkpoints=grid, sums=sums)


def weighted_partial_sums(beta: DyadicFraction, series: SignSeries,
                          omega_counts: np.ndarray,
                          grid: np.ndarray) -> SumGrid:
    """Sums of (2*beta-1)**-d(n) * f_beta(n) at the checkpoints.

    ``omega_counts`` is the distinct-prime-count table d(n) (index = n).
    """
    w = weight_factor(beta)  # validates the beta threshold
    if float(series.beta) != float(beta):
        raise PreconditionError("series was built with a different beta")
    if len(omega_counts) < series.limit + 1:
        raise CoverageError("omega table shorter than series limit")
    grid = np.asarray(grid, dtype=np.int64)
    if grid.max() > series.limit:
        raise RangeError("grid exceeds series limit")
    # d(n) <= 9 for n <= 10**8, so a lookup table beats a float power
    lut = w ** np.arange(int(omega_counts[: series.limit + 1].max()) + 1,
                         dtype=np.float64)
    weighted = series.values[: series.limit + 1] * \
        lut[omega_counts[: series.limit + 1]]
    return weighted_sum_grid(weighted, grid)


def fit_growth_exponent(sumgrid: SumGrid,
                        window: tuple[float, float]) -> GrowthFit:
    """OLS slope of log|S(x)| vs log x over checkpoints inside the window.

    Checkpoints with S = 0 are dropped (log of zero is undefined; zero
    crossings are rare and dropping them does not bias the slope).
    """
    lo, hi = window
    in_win = (sumgrid.checkpoints >= lo) & (sumgrid.checkpoints <= hi)
    xs = sumgrid.checkpoints[in_win].astype(np.float64)
    ss = np.asarray(sumgrid.sums, dtype=np.float64)[in_win]
    nonzero = ss != 0.0
    dropped = int(np.count_nonzero(~nonzero))
    xs, ss = xs[nonzero], ss[nonzero]
    if len(xs) < 5:
        raise FitError(
            f"only {len(xs)} nonzero checkpoints in window {window}; need 5")
    lx = np.log(xs)
    ly = np.log(np.abs(ss))
    n = len(lx)
    mx = lx.mean()
    sxx = float(np.sum((lx - mx) ** 2))
    slope = float(np.sum((lx - mx) * (ly - ly.mean())) / sxx)
    intercept = float(ly.mean() - slope * mx)
    resid = ly - (intercept + slope * lx)
    dof = max(n - 2, 1)
    stderr = float(math.sqrt(float(np.sum(resid ** 2)) / dof / sxx))
    return GrowthFit(alpha=slope, stderr=stderr, points_used=n,
                     points_dropped=dropped, window=(float(lo), float(hi)))


def selberg_delange_ratio(beta: DyadicFraction,
                          sumgrid: SumGrid) -> SelbergDelangeStat:
    """Invert the slow-growth asymptotic: R(x) = S(x) (log x)**(2b) / x."""
    b = float(beta)
    if not 0.5 < b < 1.0:
        raise DomainError(f"ratio statistic defined for 1/2 < beta < 1, "
                          f"got {b}")
    keep = sumgrid.checkpoints >= 3
    xs = sumgrid.checkpoints[keep].astype(np.float64)
    ss = np.asarray(sumgrid.sums, dtype=np.float64)[keep]
    ratios = ss * np.log(xs) ** (2.0 * b) / xs
    x_max = xs[-1]
    final_decade = xs >= x_max / 10.0
    sign_stable = bool(np.all(ratios[final_decade] > 0.0))
    return SelbergDelangeStat(beta=b, checkpoints=xs.astype(np.int64),
                              ratios=ratios,
                              terminal_ratio=float(ratios[-1]),
                              sign_stable=sign_stable)


def abel_consistency(series: SignSeries, X: int, s: complex) -> float:
    """Residual of the finite Abel summation identity at s.

    Compares sum_{n<=X} f(n) n**-s against
    S(X) X**-s + sum_{m<X} S(m) (m**-s - (m+1)**-s); the identity is exact,
    so the residual measures only floating-point noise.
    """
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"Re(s)={s.real} <= 0")
    if X > series.limit:
        raise RangeError(f"X={X} exceeds series limit {series.limit}")
    n = np.arange(1, X + 1, dtype=np.float64)
    npow = np.exp(-s * np.log(n))
    f = series.values[1: X + 1].astype(np.float64)
    lhs = f * npow
    lhs_sum = complex(math.fsum(lhs.real), math.fsum(lhs.imag))
    S = series.prefix[1: X + 1].astype(np.float64)  # S(1)..S(X)
    boundary = S[-1] * npow[-1]
    steps = S[:-1] * (npow[:-1] - np.exp(-s * np.log(n[1:])))
    rhs = boundary + complex(math.fsum(steps.real), math.fsum(steps.imag))
    return abs(lhs_sum - rhs)


def prime_reciprocal_sign_sum(beta: DyadicFraction,
                              assignment: OmegaAssignment,
                              P: int) -> float:
    """sum of f_beta(p)/p over p <= P (the divergence ingredient at s = 1)."""
    from .sampler import prime_signs
    primes = assignment.primes
    primes = primes[primes <= P]
    signs = prime_signs(beta, assignment, primes).astype(np.float64)
    return math.fsum(signs / primes)


# ---------------------------------------------------------------------------
# Monte Carlo campaigns over seed ensembles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CampaignConfig:
    """One ensemble experiment: a beta, a limit, a fit window, many seeds."""

    beta_numerator: int  # DyadicFraction numerator (2**64 encodes beta = 1)
    limit: int
    seeds: tuple[int, ...]
    window: tuple[float, float]
    weighted: bool = False

    def beta(self) -> DyadicFraction:
        return DyadicFraction(self.beta_numerator)


@dataclass(frozen=True)
class SeedResult:
    seed: int
    alpha: float
    stderr: float
    points_used: int
    points_dropped: int
    terminal_ratio: float | None
    ratio_decade: float | None  # R(x_max) / R(x_max / 10)
    sign_stable: bool | None


@dataclass(frozen=True)
class CampaignReport:
    config: CampaignConfig
    per_seed: tuple[SeedResult, ...]
    alpha_median: float
    alpha_q10: float
    alpha_q90: float
    frac_ratio_positive: float | None
    frac_ratio_decade_in_band: float | None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class _Tables:
    """Sieve outputs shared by every seed of a campaign."""

    mobius: np.ndarray
    omega_counts: np.ndarray | None


_TABLE_CACHE: dict[tuple[int, bool], _Tables] = {}


def _tables_for(limit: int, weighted: bool) -> _Tables:
    key = (limit, weighted)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE.clear()  # keep at most one limit resident
        mob = mobius_sieve(limit)
        om = distinct_prime_counts(limit) if weighted else None
        _TABLE_CACHE[key] = _Tables(mobius=mob, omega_counts=om)
    return _TABLE_CACHE[key]


def run_seed(config: CampaignConfig, seed: int) -> SeedResult:
    """The full single-seed pipeline: sample, sieve signs, sum, fit."""
    beta = config.beta()
    tables = _tables_for(config.limit, config.weighted)
    assignment = OmegaAssignment(master_seed=seed, prime_limit=config.limit)
    series = build_sign_series(beta, assignment, config.limit, tables.mobius)
    grid = checkpoint_grid(config.limit)
    if config.weighted:
        sums = weighted_partial_sums(beta, series, tables.omega_counts, grid)
    else:
        sums = partial_sums(series, grid)
    fit = fit_growth_exponent(sums, config.window)
    terminal = ratio_decade = sign_stable = None
    if not config.weighted and 0.5 < float(beta) < 1.0:
        stat = selberg_delange_ratio(beta, sums)
        terminal = stat.terminal_ratio
        sign_stable = stat.sign_stable
        x_max = stat.checkpoints[-1]
        prev = np.flatnonzero(stat.checkpoints <= x_max // 10)
        if len(prev) and stat.ratios[prev[-1]] != 0.0:
            ratio_decade = float(stat.ratios[-1] / stat.ratios[prev[-1]])
    return SeedResult(seed=seed, alpha=fit.alpha, stderr=fit.stderr,
                      points_used=fit.points_used,
                      points_dropped=fit.points_dropped,
                      terminal_ratio=terminal, ratio_decade=ratio_decade,
                      sign_stable=sign_stable)


def monte_carlo_campaign(config: CampaignConfig) -> CampaignReport:
    """Run every seed and aggregate quantiles; deterministic in the seeds."""
    if len(config.seeds) < 1:
        raise PreconditionError("campaign needs at least one seed")
    results = [run_seed(config, seed) for seed in config.seeds]
    alphas = np.array([r.alpha for r in results])
    frac_pos = frac_band = None
    terminals = [r.terminal_ratio for r in results
                 if r.terminal_ratio is not None]
    if terminals:
        frac_pos = float(np.mean([t > 0 for t in terminals]))
        decades = [r.ratio_decade for r in results
                   if r.ratio_decade is not None]
        frac_band = float(np.mean([0.5 <= d <= 2.0 for d in decades])) \
            if decades else None
    return CampaignReport(
        config=config, per_seed=tuple(results),
        alpha_median=float(np.median(alphas)),
        alpha_q10=float(np.quantile(alphas, 0.10)),
        alpha_q90=float(np.quantile(alphas, 0.90)),
        frac_ratio_positive=frac_pos,
        frac_ratio_decade_in_band=frac_band,
    )
