"""Gegenbauer polynomials, normalized zonal kernels, and coefficient expansions.

Everything here works with the weight (1 - t^2)^(lam - 1/2) on [-1, 1],
normalized so that the total weight is 1.  Polynomial evaluation uses the
three-term recurrence upward in degree, which is stable for lam >= 1/2 and
t in [-1, 1].
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

__all__ = [
    "CoefficientSeries",
    "QuadratureRule",
    "gegenbauer_eval",
    "gegenbauer_table",
    "gegenbauer_at_one",
    "zn_eval",
    "norm_hn",
    "gauss_rule",
    "project_coefficients",
    "series_eval",
]

CLAMP_TOL = 1e-12


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if lam <= -0.5:
        raise ValueError(f"lambda must be > -1/2, got {lam}")
    return lam


def clamp_unit(t, tol: float = CLAMP_TOL):
    """Clamp values to [-1, 1], raising if they are more than tol outside."""
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + tol):
        worst = float(np.max(np.abs(t)))
        raise ValueError(f"argument outside [-1, 1] beyond tolerance: |t| = {worst}")
    return np.clip(t, -1.0, 1.0)


def gegenbauer_table(lam: float, max_degree: int, t) -> np.ndarray:
    """Table of C_n^lam(t) for n = 0..max_degree via the three-term recurrence.

    Returns an array of shape (max_degree + 1,) + shape(t).
    """
    lam = _check_lambda(lam)
    t = np.asarray(t, dtype=float)
    out = np.empty((max_degree + 1,) + t.shape)
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = 2.0 * lam * t
    for n in range(2, max_degree + 1):
        out[n] = (2.0 * (n + lam - 1.0) * t * out[n - 1]
                  - (n + 2.0 * lam - 2.0) * out[n - 2]) / n
    return out


def gegenbauer_eval(lam: float, n: int, t):
    """Evaluate the Gegenbauer polynomial C_n^lam at t in [-1, 1]."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    t = clamp_unit(t)
    val = gegenbauer_table(lam, n, t)[n]
    return float(val) if val.ndim == 0 else val


def gegenbauer_at_one(lam: float, n: int) -> float:
    """C_n^lam(1), the rising-factorial value (2 lam)_n / n!."""
    lam = _check_lambda(lam)
    out = 1.0
    for k in range(n):
        out *= (2.0 * lam + k) / (k + 1.0)
    return out


def zn_eval(lam: float, n: int, t):
    """Normalized zonal kernel ((n + lam) / lam) * C_n^lam(t); requires lam > 0."""
    if lam <= 0:
        raise ValueError("zonal normalization requires lambda > 0")
    c = (n + lam) / lam
    val = c * gegenbauer_table(lam, n, np.asarray(t, dtype=float))[n]
    return float(val) if val.ndim == 0 else val


def zn_table(lam: float, max_degree: int, t) -> np.ndarray:
    """Table of Z_n^lam(t) = ((n + lam) / lam) C_n^lam(t) for n = 0..max_degree."""
    if lam <= 0:
        raise ValueError("zonal normalization requires lambda > 0")
    table = gegenbauer_table(lam, max_degree, t)
    scale = (np.arange(max_degree + 1) + lam) / lam
    return table * scale.reshape((-1,) + (1,) * (table.ndim - 1))


def norm_hn(lam: float, n: int) -> float:
    """Squared norm of C_n^lam under the unit-mass weight: lam/(n+lam) C_n^lam(1)."""
    if lam <= 0:
        raise ValueError("norm formula requires lambda > 0")
    return lam / (n + lam) * gegenbauer_at_one(lam, n)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss nodes/weights for (1 - t^2)^(lam - 1/2), weights summing to 1."""

    lam: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def exactness_degree(self) -> int:
        return 2 * len(self.nodes) - 1

    def integrate(self, values) -> float:
        if callable(values):
            values = values(self.nodes)
        return float(np.dot(self.weights, values))


def gauss_rule(lam: float, num_nodes: int) -> QuadratureRule:
    """Gauss-Jacobi rule of the given size for the symmetric weight at lam."""
    lam = _check_lambda(lam)
    if num_nodes < 1:
        raise ValueError("num_nodes must be >= 1")
    try:
        nodes, weights = roots_jacobi(num_nodes, lam - 0.5, lam - 0.5)
    except Exception as exc:  # pragma: no cover
        raise RuntimeError(f"node computation failed for {num_nodes} nodes") from exc
    weights = weights / weights.sum()
    return QuadratureRule(lam=lam, nodes=nodes, weights=weights)


@dataclass(frozen=True)
class CoefficientSeries:
    """Truncated expansion sum_n a_n C_n^lam with optional even-only parity."""

    lam: float
    coeffs: tuple[float, ...]
    parity: str = "any"
    negative_indices: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        _check_lambda(self.lam)
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")
        if self.parity not in ("any", "even"):
            raise ValueError(f"parity must be 'any' or 'even', got {self.parity!r}")
        if self.parity == "even" and any(a != 0.0 for a in self.coeffs[1::2]):
            raise ValueError("even-parity series has a nonzero odd coefficient")

    @property
    def max_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, a in enumerate(self.coeffs) if a > 0.0)

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        return all(a >= -tol for a in self.coeffs)

    def has_odd_support(self) -> bool:
        return any(a != 0.0 for a in self.coeffs[1::2])

    def to_json(self) -> str:
        return json.dumps(
            {"lambda": self.lam, "coeffs": list(self.coeffs), "parity": self.parity}
        )

    @classmethod
    def from_json(cls, text: str) -> "CoefficientSeries":
        obj = json.loads(text)
        try:
            return cls(lam=obj["lambda"], coeffs=obj["coeffs"],
                       parity=obj.get("parity", "any"))
        except KeyError as exc:
            raise ValueError(f"series JSON missing field {exc}") from None


def series_eval(series: CoefficientSeries, t):
    """Evaluate sum_n a_n C_n^lam(t) for t in [-1, 1]."""
    t = clamp_unit(t)
    table = gegenbauer_table(series.lam, series.max_degree, t)
    coeffs = np.asarray(series.coeffs)
    val = np.tensordot(coeffs, table, axes=(0, 0))
    return float(val) if np.ndim(val) == 0 else val


def project_coefficients(f, lam: float, max_degree: int,
                         rule: QuadratureRule | None = None,
                         neg_tol: float = 1e-10) -> CoefficientSeries:
    """Expansion coefficients of f against C_n^lam for n = 0..max_degree.

    The default rule has max(2*max_degree + 1, 64) nodes, exact well beyond
    the degrees being projected.  Coefficients below -neg_tol are kept but
    flagged (the function is then not positive definite) with a warning.
    """
    lam = _check_lambda(lam)
    if rule is None:
        rule = gauss_rule(lam, max(2 * max_degree + 1, 64))
    elif rule.exactness_degree < 2 * max_degree:
        raise ValueError("quadrature rule not exact to degree 2*max_degree")
    nodes = rule.nodes
    try:
        fvals = np.asarray(f(nodes), dtype=float)
        if fvals.shape != nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        fvals = np.asarray([float(f(t)) for t in nodes])
    if np.any(~np.isfinite(fvals)):
        raise ValueError("function returned a non-finite value at a quadrature node")
    table = gegenbauer_table(lam, max_degree, nodes)
    coeffs = table @ (rule.weights * fvals)
    coeffs /= np.array([norm_hn(lam, n) for n in range(max_degree + 1)])
    negative = tuple(int(n) for n in np.nonzero(coeffs < -neg_tol)[0])
    if negative:
        warnings.warn(
            f"negative expansion coefficients at degrees {negative}; "
            "the function is not positive definite", stacklevel=2)
    return CoefficientSeries(lam=lam, coeffs=tuple(coeffs), parity="any",
                             negative_indices=negative)
