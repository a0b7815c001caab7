"""Randomized suites that exercise the library's structural guarantees at
desk scale: distance preservation, positive definiteness, rank collapse
of truncated kernels, antipodal degeneracy, the hemisphere integral
identity, and the reproducing property of the closed-form kernels."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .domains import (
    Domain,
    DomainError,
    antipodal_pair,
    coords_of,
    cos_gram,
    cos_rowwise,
    embed_coords,
    points_from_coords,
    sample_coords,
)
from .gegenbauer import CoefficientSeries, gegenbauer_table, zn_eval
from .kernels import kernel_matrix, psd_check, rank_bound, reproducing_gram

__all__ = [
    "SuiteReport",
    "random_series",
    "single_parity_series",
    "verify_distance_preservation",
    "verify_quadrant_integral_identity",
    "verify_psd_sufficiency",
    "verify_rank_collapse",
    "verify_antipodal_failure",
    "verify_reproducing",
    "compare_addition_variants",
]


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    trials: int
    failures: int
    worst: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> str:
        return json.dumps({"suite": self.suite, "trials": self.trials,
                           "failures": self.failures, "worst": self.worst,
                           "seed": self.seed})


def random_series(domain: Domain, rng: np.random.Generator,
                  max_degree: int | None = None) -> CoefficientSeries:
    """Random nonnegative series compatible with the domain's parity rule."""
    if max_degree is None:
        max_degree = int(rng.integers(4, 11))
    coeffs = rng.random(max_degree + 1)
    if domain.even_only:
        coeffs[1::2] = 0.0
        return CoefficientSeries(lam=domain.lam, coeffs=tuple(coeffs), parity="even")
    return CoefficientSeries(lam=domain.lam, coeffs=tuple(coeffs))


def single_parity_series(domain: Domain, top_degree: int) -> CoefficientSeries:
    """Unit coefficients on {top, top-2, ...}; the rank-collapse witness."""
    if domain.even_only and top_degree % 2:
        raise ValueError(f"{domain.spec()} requires an even top degree")
    coeffs = [0.0] * (top_degree + 1)
    for n in range(top_degree, -1, -2):
        coeffs[n] = 1.0
    parity = "even" if top_degree % 2 == 0 else "any"
    return CoefficientSeries(lam=domain.lam, coeffs=tuple(coeffs), parity=parity)


def verify_distance_preservation(domain: Domain, trials: int = 10_000,
                                 seed: int = 0, tol: float = 1e-12) -> SuiteReport:
    """|<embed(p), embed(q)> - cos d(p, q)| <= tol on random same-sheet pairs."""
    rng = np.random.default_rng(seed)
    A = sample_coords(domain, trials, rng)
    B = sample_coords(domain, trials, rng)
    dots = np.sum(embed_coords(domain, A) * embed_coords(domain, B), axis=1)
    diff = np.abs(dots - cos_rowwise(domain, A, B))
    return SuiteReport(suite=f"distance-preservation[{domain.spec()}]",
                       trials=trials, failures=int(np.count_nonzero(diff > tol)),
                       worst=float(diff.max()), seed=seed)


def sphere_area(d: int) -> float:
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


def verify_quadrant_integral_identity(d: int, n_even: int,
                                      samples: int = 1_000_000,
                                      seed: int = 0) -> SuiteReport:
    """Monte Carlo check that the sphere integral of f(<xi, e>) against the
    full surface measure matches four times the double integral of
    f(<xi, eta>) over the hemisphere, for f an even Gegenbauer polynomial.

    Both sides are reduced to expectations over uniform samples; the gate
    is four combined standard errors.  `worst` is the discrepancy in
    standard-error units.
    """
    if n_even % 2:
        raise ValueError("the identity applies to even degrees only")
    lam = (d - 1) / 2.0
    rng = np.random.default_rng(seed)

    def sphere_samples(k, hemisphere):
        v = rng.standard_normal((k, d + 1))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        if hemisphere:
            v[:, -1] = np.abs(v[:, -1])
        return v

    # LHS / omega_d^2: mean of f(<xi, e>) over the full sphere
    xi = sphere_samples(samples, hemisphere=False)
    f1 = gegenbauer_table(lam, n_even, xi[:, -1])[n_even]
    # RHS / omega_d^2: mean of f(<xi, eta>) over hemisphere pairs
    a = sphere_samples(samples, hemisphere=True)
    b = sphere_samples(samples, hemisphere=True)
    f2 = gegenbauer_table(lam, n_even, np.sum(a * b, axis=1))[n_even]

    omega2 = sphere_area(d) ** 2
    diff = omega2 * abs(float(f1.mean() - f2.mean()))
    se = omega2 * math.hypot(float(f1.std(ddof=1)) / math.sqrt(samples),
                             float(f2.std(ddof=1)) / math.sqrt(samples))
    worst = diff / se if se > 0 else 0.0
    return SuiteReport(suite=f"quadrant-integral[d={d},n={n_even}]",
                       trials=samples, failures=int(worst > 4.0),
                       worst=float(worst), seed=seed)


def verify_psd_sufficiency(domain: Domain, series: CoefficientSeries | None = None,
                           trials: int = 20, n_points: int = 40,
                           seed: int = 0) -> SuiteReport:
    """Kernel matrices of nonnegative series pass the PSD check on random
    point sets (a fresh random series per trial when none is given)."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = 0.0
    for _ in range(trials):
        s = series if series is not None else random_series(domain, rng)
        n = int(rng.integers(5, n_points + 1))
        pts = points_from_coords(domain, sample_coords(domain, n, rng))
        report = psd_check(kernel_matrix(s, pts))
        worst = max(worst, -report.min_eigenvalue)
        if not report.is_psd:
            failures += 1
    return SuiteReport(suite=f"psd-sufficiency[{domain.spec()}]", trials=trials,
                       failures=failures, worst=worst, seed=seed)


def verify_rank_collapse(domain: Domain, top_degree: int, seed: int = 0,
                         extra_points: int = 10) -> SuiteReport:
    """A single-parity series of finite top degree cannot be strictly
    positive definite: with more points than the rank ceiling, the kernel
    matrix is rank deficient."""
    series = single_parity_series(domain, top_degree)
    bound = rank_bound(domain.sphere_dim, top_degree)
    n = bound + extra_points
    rng = np.random.default_rng(seed)
    pts = points_from_coords(domain, sample_coords(domain, n, rng))
    report = psd_check(kernel_matrix(series, pts))
    failures = int(report.rank_estimate > bound) + int(report.is_pd)
    return SuiteReport(suite=f"rank-collapse[{domain.spec()},M={top_degree}]",
                       trials=n, failures=failures,
                       worst=float(report.rank_estimate - bound), seed=seed)


def verify_antipodal_failure(d: int, series_even: CoefficientSeries | None = None,
                             seed: int = 0, n_points: int = 30) -> SuiteReport:
    """An even series loses strict positive definiteness on the full sphere
    as soon as the point set contains an antipodal pair, while the same
    series on hemisphere points stays positive definite at desk scale."""
    sphere = Domain.sphere(d)
    if series_even is None:
        coeffs = [1.0 if n % 2 == 0 else 0.0 for n in range(21)]
        series_even = CoefficientSeries(lam=sphere.lam, coeffs=tuple(coeffs),
                                        parity="even")
    if series_even.has_odd_support():
        raise ValueError("series must be even")
    rng = np.random.default_rng(seed)
    p, q = antipodal_pair(sphere, seed=seed)
    others = points_from_coords(sphere, sample_coords(sphere, n_points - 2, rng))
    with_pair = kernel_matrix(series_even, [p, q] + others)
    block = with_pair.entries[:2, :2]
    det_block = float(np.linalg.det(block))
    report_pair = psd_check(with_pair)

    hemi = Domain.quadrant(d, d + 1)
    hemi_pts = points_from_coords(hemi, sample_coords(hemi, n_points, rng))
    hemi_series = CoefficientSeries(lam=hemi.lam, coeffs=series_even.coeffs,
                                    parity=series_even.parity)
    report_hemi = psd_check(kernel_matrix(hemi_series, hemi_pts))

    failures = int(report_pair.is_pd) + int(not report_hemi.is_pd)
    return SuiteReport(suite=f"antipodal[d={d}]", trials=2, failures=failures,
                       worst=abs(det_block), seed=seed)


def _hemisphere_product_grid(n_polar: int, n_azimuth: int):
    """Nodes on the upper unit hemisphere in R^3 with weights of total mass 1.

    Gauss-Legendre in the vertical coordinate times a uniform azimuthal
    grid; exact for polynomials restricted to the sphere of total degree
    below both resolutions.
    """
    x, w = np.polynomial.legendre.leggauss(n_polar)
    u = (x + 1.0) / 2.0
    wu = w / 2.0
    phi = 2.0 * np.pi * np.arange(n_azimuth) / n_azimuth
    r = np.sqrt(np.maximum(1.0 - u * u, 0.0))
    y1 = np.outer(r, np.cos(phi)).ravel()
    y2 = np.outer(r, np.sin(phi)).ravel()
    y3 = np.repeat(u, n_azimuth)
    weights = np.repeat(wu, n_azimuth) / n_azimuth
    return np.stack([y1, y2, y3], axis=1), weights


def verify_reproducing(n: int, m: int, mc_samples: int = 1_000_000,
                       seed: int = 0, domain: Domain | None = None,
                       tol: float = 2e-6) -> SuiteReport:
    """Cross-integrals of the ball reproducing kernels are delta_nm-consistent.

    Checks the normalized integral of P_n(x, y) P_m(z, y) against the ball
    Chebyshev weight, which must equal delta_nm * P_n(x, z).  The integral
    is pulled back to the upper hemisphere and evaluated with a product
    quadrature of at least mc_samples effective nodes.
    """
    ball = Domain.ball(2) if domain is None else domain
    if ball.kind != "ball" or ball.d != 2:
        raise DomainError("the reproducing suite is implemented for ball:d=2")
    rng = np.random.default_rng(seed)
    x = sample_coords(ball, 1, rng)
    z = sample_coords(ball, 1, rng)
    side = max(int(math.ceil(math.sqrt(mc_samples))), 4 * (n + m + 1))
    grid, weights = _hemisphere_product_grid(side, side)
    Y = grid[:, :2]  # pull-back of hemisphere nodes to the ball
    pn = reproducing_gram(ball, n, x, Y)[0]
    pm = reproducing_gram(ball, m, z, Y)[0]
    estimate = float(np.dot(weights, pn * pm))
    target = float(reproducing_gram(ball, n, x, z)[0, 0]) if n == m else 0.0
    worst = abs(estimate - target)
    return SuiteReport(suite=f"reproducing[ball:d=2,n={n},m={m}]",
                       trials=len(weights), failures=int(worst > tol),
                       worst=worst, seed=seed)


def compare_addition_variants(domain: Domain, n: int, samples: int = 1000,
                              seed: int = 0) -> SuiteReport:
    """Measure the gap between the two hyperbolic radical conventions.

    The "printed" hyperbolic-surface kernel radical sqrt(1 - t^2) and the
    distance-consistent radical sqrt(1 + rho^2 - t^2) coincide at rho = 0
    (asserted); away from rho = 0 the discrepancy is reported without a
    pass/fail judgment.  The distance-consistent all-plus term must match
    the zonal kernel of the distance at 1e-12 in every case.
    """
    if domain.kind not in ("hyp-surface", "hyperboloid"):
        raise DomainError("variant comparison applies to hyperbolic domains")
    rng = np.random.default_rng(seed)
    A = sample_coords(domain, samples, rng)
    B = sample_coords(domain, samples, rng)
    kc = reproducing_gram(domain, n, A, B, variant="consistent")
    kp = reproducing_gram(domain, n, A, B, variant="printed")
    disc = float(np.abs(kc - kp).max())

    # all-plus term recomputed from the addition-formula radicals
    rho2 = domain.rho**2
    xa, ta = A[:, :-1], A[:, -1]
    xb, tb = B[:, :-1], B[:, -1]
    plus = np.sum(xa * xb, axis=1)
    if domain.kind == "hyperboloid":
        plus = plus + (np.sqrt(np.maximum(ta**2 - rho2 - np.sum(xa * xa, axis=1), 0.0))
                       * np.sqrt(np.maximum(tb**2 - rho2 - np.sum(xb * xb, axis=1), 0.0)))
    plus = plus + (np.sqrt(np.maximum(1.0 + rho2 - ta**2, 0.0))
                   * np.sqrt(np.maximum(1.0 + rho2 - tb**2, 0.0)))
    deg = n
    zplus = zn_eval(domain.lam, deg, np.clip(plus, -1.0, 1.0))
    zdist = zn_eval(domain.lam, deg, cos_rowwise(domain, A, B))
    identity_gap = float(np.abs(zplus - zdist).max())

    failures = int(identity_gap > 1e-12)
    if domain.rho == 0.0:
        failures += int(disc > 1e-12)
    return SuiteReport(
        suite=f"addition-variants[{domain.spec()},n={n}]", trials=samples,
        failures=failures, worst=disc, seed=seed)
