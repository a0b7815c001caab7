"""Gegenbauer recurrence, quadrature, and coefficient projection tests."""

import json

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from pdkernels.gegenbauer import (
    CoefficientSeries,
    clamp_unit,
    gauss_rule,
    gegenbauer_at_one,
    gegenbauer_eval,
    gegenbauer_table,
    norm_hn,
    project_coefficients,
    series_eval,
    zn_eval,
    zn_table,
)


def test_matches_scipy_reference():
    t = np.linspace(-1.0, 1.0, 41)
    for lam in (0.5, 1.0, 1.5, 2.5):
        for n in range(12):
            ref = scipy.special.eval_gegenbauer(n, lam, t)
            got = gegenbauer_eval(lam, n, t)
            assert np.allclose(got, ref, rtol=1e-12, atol=1e-12)


def test_half_lambda_is_legendre():
    t = np.linspace(-1.0, 1.0, 21)
    for n in range(15):
        ref = scipy.special.eval_legendre(n, t)
        assert np.allclose(gegenbauer_eval(0.5, n, t), ref, atol=1e-13)


def test_known_values():
    assert gegenbauer_eval(1.0, 2, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert zn_eval(0.5, 2, 1.0) == pytest.approx(5.0, rel=1e-14)
    assert norm_hn(0.5, 2) == pytest.approx(0.2, rel=1e-14)


def test_endpoint_identity():
    # C_n(1) equals the rising factorial (2 lam)_n / n!
    for lam in (0.5, 1.0, 1.5, 3.0):
        for n in range(31):
            expected = 1.0
            for j in range(n):
                expected *= (2 * lam + j) / (j + 1)
            val = gegenbauer_eval(lam, n, 1.0)
            assert val == pytest.approx(expected, rel=1e-12)
            assert gegenbauer_at_one(lam, n) == pytest.approx(expected, rel=1e-12)


def test_parity():
    t = np.linspace(0.0, 1.0, 11)
    for lam in (0.5, 1.5):
        table_pos = gegenbauer_table(lam, 30, t)
        table_neg = gegenbauer_table(lam, 30, -t)
        for n in range(31):
            assert np.allclose(table_neg[n], (-1.0) ** n * table_pos[n], atol=1e-10)


def test_zn_normalization():
    # Z_n(1) = (n + lam)/lam * C_n(1); for lam=1/2, Z_n = (2n+1) P_n
    t = np.linspace(-1, 1, 9)
    for n in range(8):
        assert np.allclose(zn_eval(0.5, n, t),
                           (2 * n + 1) * scipy.special.eval_legendre(n, t),
                           atol=1e-12)


def test_zn_table_stacks_all_degrees():
    t = np.array([0.1, -0.4])
    table = zn_table(1.5, 6, t)
    assert table.shape == (7, 2)
    for n in range(7):
        assert np.allclose(table[n], zn_eval(1.5, n, t), atol=1e-14)


def test_quadrature_weights_normalized():
    for lam in (0.5, 1.0, 2.0):
        rule = gauss_rule(lam, 32)
        assert rule.weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert np.all(rule.weights > 0)
        assert np.all(np.abs(rule.nodes) < 1.0)


def test_quadrature_against_adaptive_integration():
    # normalized weight integral of t^4, oracle by adaptive quadrature
    for lam in (0.5, 1.5):
        w = lambda t: (1.0 - t * t) ** (lam - 0.5)
        mass, _ = scipy.integrate.quad(w, -1, 1)
        ref, _ = scipy.integrate.quad(lambda t: t**4 * w(t), -1, 1)
        rule = gauss_rule(lam, 5)
        assert rule.integrate(lambda t: t**4) == pytest.approx(ref / mass, rel=1e-12)


def test_orthogonality_norms():
    for lam in (0.5, 1.0, 1.5):
        rule = gauss_rule(lam, 64)
        table = gegenbauer_table(lam, 20, rule.nodes)
        for n in range(21):
            for m in range(21):
                val = float(np.sum(rule.weights * table[n] * table[m]))
                target = norm_hn(lam, n) if n == m else 0.0
                scale = max(1.0, gegenbauer_at_one(lam, n) * gegenbauer_at_one(lam, m))
                assert abs(val - target) <= 1e-12 * scale


def test_projection_round_trip():
    rng = np.random.default_rng(42)
    for lam in (0.5, 1.0, 1.5):
        coeffs = tuple(rng.random(13))
        series = CoefficientSeries(lam=lam, coeffs=coeffs)
        recovered = project_coefficients(lambda t: series_eval(series, t), lam, 12)
        assert np.allclose(recovered.coeffs, coeffs, rtol=0, atol=1e-12)


def test_projection_warns_on_negative_coefficients():
    with pytest.warns(UserWarning):
        project_coefficients(np.abs, 0.5, 4)


def test_projection_rejects_nonfinite_function():
    with pytest.raises(ValueError):
        project_coefficients(lambda t: np.full_like(t, np.nan), 0.5, 2)


def test_series_eval_degree_zero_and_shape():
    s = CoefficientSeries(lam=0.5, coeffs=(2.0,))
    assert series_eval(s, 0.3) == pytest.approx(2.0)
    out = series_eval(s, np.zeros((3, 4)))
    assert out.shape == (3, 4)


def test_series_parity_flags():
    even = CoefficientSeries(lam=0.5, coeffs=(1.0, 0.0, 2.0), parity="even")
    assert not even.has_odd_support()
    assert even.support == (0, 2)
    mixed = CoefficientSeries(lam=0.5, coeffs=(1.0, 0.5))
    assert mixed.has_odd_support()
    with pytest.raises(ValueError):
        CoefficientSeries(lam=0.5, coeffs=(1.0, 0.5), parity="even")


def test_series_json_round_trip():
    s = CoefficientSeries(lam=1.5, coeffs=(0.25, 0.0, 1.0), parity="even")
    obj = json.loads(s.to_json())
    assert set(obj) == {"lambda", "coeffs", "parity"}
    assert obj["lambda"] == 1.5
    back = CoefficientSeries.from_json(s.to_json())
    assert back == s


def test_clamp_unit():
    assert clamp_unit(1.0 + 1e-13) == 1.0
    assert clamp_unit(-1.0 - 1e-13) == -1.0
    with pytest.raises(ValueError):
        clamp_unit(1.1)


def test_lambda_must_be_positive():
    with pytest.raises(ValueError):
        gauss_rule(-0.5, 8)
    with pytest.raises(ValueError):
        zn_eval(-0.5, 2, 0.1)
