"""Kernel matrices from coefficient series, eigenvalue tests, and the
closed-form reproducing kernels of each domain."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

import numpy as np

from .domains import (
    Domain,
    DomainError,
    DomainPoint,
    common_domain,
    coords_of,
    cos_distance,
    cos_gram,
    validate_coords,
    validate_point,
)
from .gegenbauer import CoefficientSeries, series_eval, zn_eval, zn_table

__all__ = [
    "KernelMatrix",
    "PsdReport",
    "kernel_matrix",
    "psd_check",
    "reproducing_kernel",
    "same_sheet_plus_kernel",
    "rank_bound",
]

RANK_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Symmetric matrix f(cos d(x_i, x_j)) with its defining inputs."""

    entries: np.ndarray
    domain: Domain
    series: CoefficientSeries
    points_hash: str

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PsdReport:
    """Eigenvalue summary of a symmetric matrix."""

    min_eigenvalue: float
    max_eigenvalue: float
    rank_estimate: int
    is_psd: bool
    is_pd: bool
    psd_tol: float
    pd_tol: float

    def to_dict(self) -> dict:
        return {
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
            "rank_estimate": self.rank_estimate,
            "is_psd": self.is_psd,
            "is_pd": self.is_pd,
            "psd_tol": self.psd_tol,
            "pd_tol": self.pd_tol,
        }


def points_hash(points) -> str:
    text = "\n".join(",".join(f"{c:.17g}" for c in p.coords) for p in points)
    return hashlib.sha256(text.encode()).hexdigest()


def kernel_matrix(series: CoefficientSeries, points) -> KernelMatrix:
    """Assemble [f(cos d(x_i, x_j))] for the series f and the point set."""
    domain = common_domain(points)
    C = coords_of(points)
    validate_coords(domain, C)
    if abs(series.lam - domain.lam) > 1e-12:
        raise DomainError(
            f"series lambda {series.lam} does not match domain lambda "
            f"{domain.lam} of {domain.spec()}")
    if domain.even_only and series.has_odd_support():
        raise DomainError(
            f"{domain.spec()} requires an even series (no odd-degree support)")
    entries = series_eval(series, cos_gram(domain, C))
    return KernelMatrix(entries=np.atleast_2d(entries), domain=domain,
                        series=series, points_hash=points_hash(points))


def psd_check(m, psd_tol: float | None = None, pd_tol: float | None = None,
              rank_tol: float = RANK_TOL) -> PsdReport:
    """Full symmetric eigendecomposition and positivity report.

    Default tolerances scale with size and magnitude:
    psd_tol = 1e-8 * N * max|entry|, pd_tol = 1e-10 * N * max|entry|.
    """
    a = m.entries if isinstance(m, KernelMatrix) else np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise ValueError("matrix must be symmetric")
    n = a.shape[0]
    scale = n * max(np.abs(a).max(), np.finfo(float).tiny)
    if psd_tol is None:
        psd_tol = 1e-8 * scale
    if pd_tol is None:
        pd_tol = 1e-10 * scale
    try:
        eigs = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("eigendecomposition failed") from exc
    min_eig = float(eigs[0])
    max_eig = float(eigs[-1])
    rank = int(np.count_nonzero(eigs > rank_tol * max(max_eig, 0.0)))
    return PsdReport(
        min_eigenvalue=min_eig,
        max_eigenvalue=max_eig,
        rank_estimate=rank,
        is_psd=bool(min_eig >= -psd_tol),
        is_pd=bool(min_eig > pd_tol),
        psd_tol=float(psd_tol),
        pd_tol=float(pd_tol),
    )


def rank_bound(sphere_dim: int, max_degree: int) -> int:
    """Rank ceiling for kernels with single-parity support up to max_degree.

    Sum over m of (d+1)^(M-2m): a degree-M single-parity polynomial kernel
    on points of S^d is a sum of Hadamard powers of a rank-(d+1) Gram
    matrix, so its rank cannot exceed this number no matter how many
    points are used.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if sphere_dim < 1:
        raise ValueError("sphere_dim must be >= 1")
    return sum((sphere_dim + 1) ** (max_degree - 2 * m)
               for m in range(max_degree // 2 + 1))


# ----------------------------------------------------------------------
# reproducing kernels (closed forms by reflection averaging)
# ----------------------------------------------------------------------

def _sign_pm(t):
    return np.where(np.asarray(t) >= 0.0, 1.0, -1.0)


def _sqrt0(v):
    return np.sqrt(np.maximum(v, 0.0))


def reproducing_gram(domain: Domain, n: int, A: np.ndarray, B: np.ndarray,
                     variant: str = "consistent") -> np.ndarray:
    """Pairwise reproducing-kernel values between rows of A and rows of B.

    `variant` selects the radical in the hyperbolic-surface kernel:
    "consistent" uses sqrt(1 + rho^2 - t^2), matching the distance
    function for every rho; "printed" uses sqrt(1 - t^2), which agrees
    only at rho = 0.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if variant not in ("consistent", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    lam = domain.lam
    kind = domain.kind

    def zn(deg, arg):
        return zn_table(lam, deg, arg)[deg]

    if kind == "sphere":
        return zn(n, A @ B.T)
    if kind == "ball":
        ra = _sqrt0(1.0 - np.sum(A * A, axis=1))
        rb = _sqrt0(1.0 - np.sum(B * B, axis=1))
        base = A @ B.T
        rad = np.outer(ra, rb)
        return 0.5 * (zn(n, base + rad) + zn(n, base - rad))
    if kind == "hyp-surface":
        xa, ta = A[:, :-1], A[:, -1]
        xb, tb = B[:, :-1], B[:, -1]
        if variant == "consistent":
            ba = _sqrt0(1.0 + domain.rho**2 - ta * ta)
            bb = _sqrt0(1.0 + domain.rho**2 - tb * tb)
        else:
            ba = _sqrt0(1.0 - ta * ta)
            bb = _sqrt0(1.0 - tb * tb)
        base = (xa @ xb.T) * np.outer(_sign_pm(ta), _sign_pm(tb))
        rad = np.outer(ba, bb)
        return 0.5 * (zn(n, base + rad) + zn(n, base - rad))
    if kind == "hyperboloid":
        xa, ta = A[:, :-1], A[:, -1]
        xb, tb = B[:, :-1], B[:, -1]
        aa = _sqrt0(ta * ta - domain.rho**2 - np.sum(xa * xa, axis=1))
        ab = _sqrt0(tb * tb - domain.rho**2 - np.sum(xb * xb, axis=1))
        ba = _sqrt0(1.0 + domain.rho**2 - ta * ta)
        bb = _sqrt0(1.0 + domain.rho**2 - tb * tb)
        sgn = np.outer(_sign_pm(ta), _sign_pm(tb))
        base = xa @ xb.T
        mid = np.outer(aa, ab)
        rad = np.outer(ba, bb)
        total = 0.0
        for e1, e2 in itertools.product((1.0, -1.0), repeat=2):
            total = total + zn(n, (base + e1 * mid) * sgn + e2 * rad)
        return 0.25 * total
    if kind == "cone3":
        xa, ta = A[:, :2], A[:, 2]
        xb, tb = B[:, :2], B[:, 2]
        ip = xa @ xb.T
        ts = np.outer(ta, tb)
        rad = np.outer(_sqrt0(1.0 - ta), _sqrt0(1.0 - tb))
        total = 0.0
        for e1, e2 in itertools.product((1.0, -1.0), repeat=2):
            total = total + zn(2 * n, _sqrt0((ts + e1 * ip) / 2.0) + e2 * rad)
        return 0.25 * total
    if kind == "simplex":
        sa = _sqrt0(A)
        sb = _sqrt0(B)
        ca = _sqrt0(1.0 - A.sum(axis=1))
        cb = _sqrt0(1.0 - B.sum(axis=1))
        rad = np.outer(ca, cb)
        total = 0.0
        for eps in itertools.product((1.0, -1.0), repeat=domain.d):
            total = total + zn(2 * n, (sa * np.asarray(eps)) @ sb.T + rad)
        return total / 2.0**domain.d
    raise DomainError(
        f"no closed-form reproducing kernel for {domain.spec()}")


def reproducing_kernel(domain: Domain, n: int, p: DomainPoint, q: DomainPoint,
                       variant: str = "consistent") -> float:
    """Degree-n reproducing kernel of the domain's Chebyshev-weight
    polynomial space, evaluated at (p, q)."""
    if p.domain != domain or q.domain != domain:
        raise DomainError("points do not belong to the given domain")
    validate_point(p)
    validate_point(q)
    return float(reproducing_gram(domain, n, p.coords[None, :],
                                  q.coords[None, :], variant=variant)[0, 0])


def same_sheet_plus_kernel(domain: Domain, n: int, p: DomainPoint,
                           q: DomainPoint) -> float:
    """Zonal kernel of the pure distance: Z_n(cos d(p, q)) (Z_2n on the
    even-series domains).  Unlike the reflection average, this is not a
    polynomial in the domain coordinates."""
    deg = 2 * n if domain.even_only else n
    return float(zn_eval(domain.lam, deg, cos_distance(p, q)))
