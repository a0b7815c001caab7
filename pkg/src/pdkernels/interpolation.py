"""Scattered-data interpolation with strictly positive definite kernels."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .domains import (
    DomainError,
    DomainPoint,
    common_domain,
    coords_of,
    cos_gram,
    embed_coords,
    parse_domain,
    points_from_coords,
)
from .gegenbauer import CoefficientSeries, series_eval
from .kernels import kernel_matrix, rank_bound

__all__ = ["Interpolant", "NotPositiveDefiniteError", "fit", "evaluate"]


class NotPositiveDefiniteError(RuntimeError):
    """The interpolation matrix failed its positive definite factorization."""

    def __init__(self, msg: str, min_eigenvalue: float):
        super().__init__(f"{msg} (min eigenvalue estimate {min_eigenvalue:.3e})")
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Kernel interpolant g(x) = sum_i weights_i f(cos d(x, centers_i))."""

    series: CoefficientSeries
    centers: tuple[DomainPoint, ...]
    weights: np.ndarray
    condition: float
    residual: float

    def to_json(self, centers_hash: str = "") -> str:
        domain = self.centers[0].domain
        return json.dumps({
            "series": json.loads(self.series.to_json()),
            "domain": domain.spec(),
            "centers": [[float(c) for c in p.coords] for p in self.centers],
            "centers_file_hash": centers_hash,
            "weights": [float(w) for w in self.weights],
            "diagnostics": {"condition": self.condition, "residual": self.residual},
        })

    @classmethod
    def from_json(cls, text: str) -> "Interpolant":
        obj = json.loads(text)
        try:
            series = CoefficientSeries(lam=obj["series"]["lambda"],
                                       coeffs=obj["series"]["coeffs"],
                                       parity=obj["series"].get("parity", "any"))
            domain = parse_domain(obj["domain"])
            centers = points_from_coords(domain, np.asarray(obj["centers"]))
            diag = obj.get("diagnostics", {})
            return cls(series=series, centers=tuple(centers),
                       weights=np.asarray(obj["weights"], dtype=float),
                       condition=float(diag.get("condition", float("nan"))),
                       residual=float(diag.get("residual", float("nan"))))
        except KeyError as exc:
            raise ValueError(f"interpolant JSON missing field {exc}") from None


def _check_distinct(points, min_sep: float = 1e-9):
    domain = common_domain(points)
    E = embed_coords(domain, coords_of(points))
    d2 = np.sum((E[:, None, :] - E[None, :, :]) ** 2, axis=-1)
    np.fill_diagonal(d2, np.inf)
    if d2.min() < min_sep**2:
        i, j = np.unravel_index(np.argmin(d2), d2.shape)
        raise DomainError(f"centers {i} and {j} closer than {min_sep}")


def fit(series: CoefficientSeries, points, values, ridge: float = 0.0) -> Interpolant:
    """Solve the interpolation system f[Xi] w = b by Cholesky factorization.

    The series must be nonnegative with support rich enough that the
    finite-support rank ceiling exceeds the number of points (the working
    surrogate for strict positive definiteness of a truncated series).
    An optional ridge adds eps * I; it is off by default so that a failure
    of strict positive definiteness surfaces as an error.
    """
    values = np.asarray(values, dtype=float)
    if len(values) != len(points):
        raise ValueError("one value per point is required")
    if not series.is_nonnegative() or not series.support:
        raise ValueError("series must be nonnegative with some positive "
                         "coefficient to define a positive definite kernel")
    _check_distinct(points)
    domain = common_domain(points)
    top = max(series.support)
    if rank_bound(domain.sphere_dim, top) <= len(points):
        raise ValueError(
            f"series support (top degree {top}) caps the kernel rank at "
            f"{rank_bound(domain.sphere_dim, top)} < {len(points)} points; "
            "extend the support")
    km = kernel_matrix(series, points)
    a = km.entries.copy()
    if ridge > 0.0:
        a[np.diag_indices_from(a)] += ridge
    try:
        factor = scipy.linalg.cho_factor(a)
    except np.linalg.LinAlgError as exc:
        min_eig = float(np.linalg.eigvalsh(a)[0])
        raise NotPositiveDefiniteError(
            "interpolation matrix is not numerically positive definite",
            min_eig) from exc
    weights = scipy.linalg.cho_solve(factor, values)
    bnorm = np.linalg.norm(values)
    residual = float(np.linalg.norm(a @ weights - values) / bnorm) if bnorm else 0.0
    condition = float(np.linalg.cond(a, 1))
    return Interpolant(series=series, centers=tuple(points), weights=weights,
                       condition=condition, residual=residual)


def evaluate(g: Interpolant, p) -> float | np.ndarray:
    """Evaluate the interpolant at a point (or list of points)."""
    single = isinstance(p, DomainPoint)
    pts = [p] if single else list(p)
    domain = common_domain(tuple(g.centers) + tuple(pts))
    G = cos_gram(domain, coords_of(pts), coords_of(g.centers))
    vals = series_eval(g.series, G) @ g.weights
    return float(vals[0]) if single else vals
