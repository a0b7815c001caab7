"""Verification suites: determinism, report format, and expected outcomes."""

import json

import numpy as np
import pytest

from pdkernels.domains import DomainError, parse_domain
from pdkernels.gegenbauer import CoefficientSeries
from pdkernels.verification import (
    SuiteReport,
    compare_addition_variants,
    random_series,
    single_parity_series,
    verify_antipodal_failure,
    verify_distance_preservation,
    verify_psd_sufficiency,
    verify_quadrant_integral_identity,
    verify_rank_collapse,
    verify_reproducing,
)


def test_report_json_shape():
    r = SuiteReport(suite="x", trials=3, failures=0, worst=0.5, seed=9)
    obj = json.loads(r.to_json())
    assert set(obj) == {"suite", "trials", "failures", "worst", "seed"}
    assert obj["seed"] == 9
    assert r.passed


def test_distance_preservation_passes():
    for spec in ["ball:d=2", "simplex:d=3", "hyperboloid:d=2,rho=0.5,sign=+"]:
        r = verify_distance_preservation(parse_domain(spec), trials=2000, seed=1)
        assert r.failures == 0
        assert r.worst <= 1e-12


def test_distance_preservation_deterministic():
    dom = parse_domain("cone3")
    a = verify_distance_preservation(dom, trials=500, seed=42)
    b = verify_distance_preservation(dom, trials=500, seed=42)
    assert a == b


def test_quadrant_integral_identity():
    r0 = verify_quadrant_integral_identity(2, 0, samples=20_000, seed=3)
    assert r0.failures == 0
    assert r0.worst == 0.0  # f constant: both sides agree exactly
    r2 = verify_quadrant_integral_identity(2, 2, samples=50_000, seed=3)
    assert r2.failures == 0
    with pytest.raises(ValueError):
        verify_quadrant_integral_identity(2, 3, samples=100, seed=0)


def test_psd_sufficiency_passes():
    for spec in ["ball:d=2", "simplex:d=2", "cone3"]:
        r = verify_psd_sufficiency(parse_domain(spec), trials=5,
                                   n_points=25, seed=2)
        assert r.failures == 0


def test_psd_sufficiency_fixed_series():
    dom = parse_domain("ball:d=2")
    s = CoefficientSeries(lam=0.5, coeffs=(1.0, 0.5, 0.25))
    r = verify_psd_sufficiency(dom, series=s, trials=4, n_points=20, seed=6)
    assert r.failures == 0


def test_random_series_respects_parity():
    rng = np.random.default_rng(0)
    s = random_series(parse_domain("simplex:d=2"), rng)
    assert not s.has_odd_support()
    assert s.is_nonnegative()


def test_single_parity_series():
    s = single_parity_series(parse_domain("ball:d=2"), 5)
    assert s.support == (1, 3, 5)
    with pytest.raises(ValueError):
        single_parity_series(parse_domain("cone3"), 3)


def test_rank_collapse():
    ball = parse_domain("ball:d=2")
    r = verify_rank_collapse(ball, 2, seed=0)
    assert r.failures == 0
    assert r.worst <= 0.0  # rank_estimate - bound
    r1 = verify_rank_collapse(parse_domain("simplex:d=2"), 0, seed=0,
                              extra_points=4)
    assert r1.failures == 0
    assert r1.worst == 0.0  # constant kernel: rank exactly 1


def test_antipodal_failure():
    r = verify_antipodal_failure(2, seed=0)
    assert r.failures == 0
    assert r.worst <= 1e-10  # determinant of the antipodal 2x2 block
    odd = CoefficientSeries(lam=0.5, coeffs=(1.0, 1.0))
    with pytest.raises(ValueError):
        verify_antipodal_failure(2, series_even=odd, seed=0)


def test_reproducing():
    r = verify_reproducing(2, 2, mc_samples=250_000, seed=3)
    assert r.failures == 0
    assert r.worst <= 2e-6
    r = verify_reproducing(1, 2, mc_samples=250_000, seed=3)
    assert r.failures == 0
    r = verify_reproducing(0, 0, mc_samples=250_000, seed=3)
    assert r.failures == 0
    with pytest.raises(DomainError):
        verify_reproducing(1, 1, domain=parse_domain("ball:d=3"))


def test_compare_addition_variants():
    zero = compare_addition_variants(
        parse_domain("hyp-surface:d=2,rho=0,sign=+"), 3, samples=300, seed=1)
    assert zero.failures == 0
    assert zero.worst <= 1e-12
    away = compare_addition_variants(
        parse_domain("hyp-surface:d=2,rho=0.5,sign=+"), 3, samples=300, seed=1)
    assert away.failures == 0  # discrepancy reported, not judged
    assert away.worst > 1e-3
    solid = compare_addition_variants(
        parse_domain("hyperboloid:d=2,rho=0.5,sign=+"), 2, samples=300, seed=1)
    assert solid.failures == 0
    with pytest.raises(DomainError):
        compare_addition_variants(parse_domain("ball:d=2"), 2)
