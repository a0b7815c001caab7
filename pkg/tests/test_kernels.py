"""Kernel matrix assembly, eigenvalue checks, and reproducing kernels."""

import numpy as np
import pytest

from pdkernels.domains import (
    Domain,
    DomainError,
    coords_of,
    cos_distance,
    parse_domain,
    sample,
    sample_coords,
)
from pdkernels.gegenbauer import CoefficientSeries, series_eval, zn_eval
from pdkernels.kernels import (
    kernel_matrix,
    psd_check,
    rank_bound,
    reproducing_gram,
    reproducing_kernel,
    same_sheet_plus_kernel,
)


def _series(lam, coeffs, parity="any"):
    return CoefficientSeries(lam=lam, coeffs=tuple(coeffs), parity=parity)


def test_kernel_matrix_basic_structure():
    ball = parse_domain("ball:d=2")
    pts = sample(ball, 30, seed=1)
    s = _series(0.5, [1.0, 0.5, 0.25])
    km = kernel_matrix(s, pts)
    assert km.size == 30
    assert np.array_equal(km.entries, km.entries.T)
    diag = series_eval(s, 1.0)
    assert np.all(km.entries.diagonal() == diag)
    assert km.domain == ball
    assert len(km.points_hash) == 64


def test_kernel_matrix_lambda_mismatch():
    pts = sample(parse_domain("ball:d=3"), 5, seed=0)
    with pytest.raises(DomainError):
        kernel_matrix(_series(0.5, [1.0]), pts)


def test_kernel_matrix_parity_enforced_on_even_domains():
    pts = sample(parse_domain("cone3"), 5, seed=0)
    with pytest.raises(DomainError):
        kernel_matrix(_series(0.5, [1.0, 1.0]), pts)
    km = kernel_matrix(_series(0.5, [1.0, 0.0, 1.0], parity="even"), pts)
    assert km.size == 5


def test_psd_check_known_matrices():
    eye = psd_check(np.eye(4))
    assert eye.is_psd and eye.is_pd and eye.rank_estimate == 4
    assert eye.min_eigenvalue == pytest.approx(1.0)
    v = np.array([1.0, 2.0, 3.0])
    low = psd_check(np.outer(v, v))
    assert low.is_psd and not low.is_pd and low.rank_estimate == 1
    neg = psd_check(np.diag([1.0, -1.0]))
    assert not neg.is_psd and not neg.is_pd
    with pytest.raises(ValueError):
        psd_check(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        psd_check(np.zeros((2, 3)))


def test_psd_tolerances_scale_with_size_and_magnitude():
    report = psd_check(10.0 * np.eye(8))
    assert report.psd_tol == pytest.approx(1e-8 * 8 * 10.0)
    assert report.pd_tol == pytest.approx(1e-10 * 8 * 10.0)


def test_hadamard_product_closure():
    ball = parse_domain("ball:d=2")
    pts = sample(ball, 25, seed=9)
    k1 = kernel_matrix(_series(0.5, [1.0, 0.3, 0.6]), pts)
    k2 = kernel_matrix(_series(0.5, [0.5, 0.0, 0.2, 0.1]), pts)
    assert psd_check(k1.entries * k2.entries).is_psd


def test_rank_bound_examples():
    assert rank_bound(2, 0) == 1
    assert rank_bound(2, 2) == 10
    assert rank_bound(3, 2) == 17
    assert rank_bound(2, 4) == 91
    with pytest.raises(ValueError):
        rank_bound(0, 2)
    with pytest.raises(ValueError):
        rank_bound(2, -1)


def test_rank_collapse_on_ball():
    ball = parse_domain("ball:d=2")
    s = _series(0.5, [1.0, 0.0, 1.0])
    pts = sample(ball, 20, seed=2)
    report = psd_check(kernel_matrix(s, pts))
    assert report.rank_estimate <= 10
    assert not report.is_pd


def test_reproducing_kernel_symmetry():
    rng = np.random.default_rng(17)
    for spec in ["ball:d=2", "ball:d=3", "hyp-surface:d=2,rho=0.5,sign=+",
                 "hyperboloid:d=2,rho=0.5,sign=+", "cone3", "simplex:d=3",
                 "sphere:d=2"]:
        dom = parse_domain(spec)
        A = sample_coords(dom, 20, rng)
        for n in (0, 1, 2, 3):
            G = reproducing_gram(dom, n, A, A)
            assert np.abs(G - G.T).max() <= 1e-12, spec


def test_reproducing_kernel_degree_zero_is_one():
    for spec in ["ball:d=2", "cone3", "simplex:d=2",
                 "hyperboloid:d=2,rho=0.5,sign=+"]:
        dom = parse_domain(spec)
        p, q = sample(dom, 2, seed=3)
        assert reproducing_kernel(dom, 0, p, q) == pytest.approx(1.0, abs=1e-12)


def test_reproducing_gram_matrices_are_psd():
    rng = np.random.default_rng(23)
    for spec in ["ball:d=2", "cone3", "simplex:d=2"]:
        dom = parse_domain(spec)
        A = sample_coords(dom, 30, rng)
        for n in (1, 2, 3):
            G = reproducing_gram(dom, n, A, A)
            G = 0.5 * (G + G.T)
            assert psd_check(G).is_psd, (spec, n)


def test_sphere_reproducing_is_zonal():
    sphere = parse_domain("sphere:d=2")
    p, q = sample(sphere, 2, seed=5)
    for n in range(5):
        expected = zn_eval(0.5, n, float(p.coords @ q.coords))
        assert reproducing_kernel(sphere, n, p, q) == pytest.approx(expected,
                                                                    abs=1e-12)


def test_variants_coincide_at_rho_zero():
    dom = parse_domain("hyp-surface:d=2,rho=0,sign=+")
    rng = np.random.default_rng(31)
    A = sample_coords(dom, 50, rng)
    for n in (1, 3):
        kc = reproducing_gram(dom, n, A, A, variant="consistent")
        kp = reproducing_gram(dom, n, A, A, variant="printed")
        assert np.abs(kc - kp).max() <= 1e-12
    with pytest.raises(ValueError):
        reproducing_gram(dom, 1, A, A, variant="bogus")


def test_variants_differ_away_from_rho_zero():
    dom = parse_domain("hyp-surface:d=2,rho=0.5,sign=+")
    rng = np.random.default_rng(31)
    A = sample_coords(dom, 50, rng)
    kc = reproducing_gram(dom, 2, A, A, variant="consistent")
    kp = reproducing_gram(dom, 2, A, A, variant="printed")
    assert np.abs(kc - kp).max() > 1e-3


def test_same_sheet_plus_kernel_matches_zonal_distance():
    for spec in ["ball:d=2", "hyp-surface:d=2,rho=0.5,sign=+"]:
        dom = parse_domain(spec)
        p, q = sample(dom, 2, seed=13)
        for n in (1, 2, 4):
            expected = zn_eval(dom.lam, n, cos_distance(p, q))
            assert same_sheet_plus_kernel(dom, n, p, q) == pytest.approx(
                expected, abs=1e-12)
    # even-series domains use the doubled index
    cone = parse_domain("cone3")
    p, q = sample(cone, 2, seed=13)
    assert same_sheet_plus_kernel(cone, 1, p, q) == pytest.approx(
        zn_eval(0.5, 2, cos_distance(p, q)), abs=1e-12)


def test_quadrant_has_no_closed_form_kernel():
    quad = parse_domain("quadrant:d=2,k=1")
    A = sample_coords(quad, 3, np.random.default_rng(0))
    with pytest.raises(DomainError):
        reproducing_gram(quad, 2, A, A)
