"""Regular domains, their distance functions, and sphere-quadrant embeddings.

Supported domains: the unit sphere S^d and its quadrants, the unit ball,
upper/lower hyperbolic surfaces and solid hyperboloids, the conic surface
in R^3, and the simplex.  Each non-sphere domain carries a one-to-one map
onto a quadrant of a unit sphere under which the cosine of the domain
distance equals the Euclidean inner product of the images.

Coordinate conventions
----------------------
ball(d)                x in R^d, ||x|| <= 1
hyp_surface(d)         (x, t), x in R^d, ||x|| = sqrt(t^2 - rho^2)
hyperboloid(d)         (x, t), x in R^(d-1), ||x|| <= sqrt(t^2 - rho^2);
                       the base variable has d-1 components so that the
                       image lies on S^d
cone3                  (x1, x2, t), ||x|| = t, t in [0, 1]
simplex(d)             x in R^d, x_i >= 0, x_1 + ... + x_d <= 1
sphere(d)/quadrant     xi in R^(d+1), ||xi|| = 1

Note on the conic surface: the closed-form cosine here carries the factor
sign(x2 * y2) on the sqrt((t - x1)(s - y1)) term, so that it agrees exactly
with the inner product of the embedded points for every pair.  Dropping the
sign (taking the nonnegative root throughout) gives a formula that is only
valid when x2 * y2 >= 0 and does not yield positive definite kernel
matrices on the full surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Domain",
    "DomainPoint",
    "DomainError",
    "MembershipError",
    "parse_domain",
    "cos_distance",
    "distance",
    "embed",
    "unembed",
    "sample",
    "antipodal_pair",
    "save_points",
    "load_points",
]

MEMBERSHIP_TOL = 1e-10
MIN_SEPARATION = 1e-9


class DomainError(ValueError):
    """Invalid domain parameters or mismatched domains."""


class MembershipError(DomainError):
    """A point does not satisfy its domain's membership constraints."""


_KINDS = ("sphere", "quadrant", "ball", "hyp-surface", "hyperboloid",
          "cone3", "simplex")


@dataclass(frozen=True)
class Domain:
    """Identifier of one regular domain, including sheet sign where relevant."""

    kind: str
    d: int = 2
    rho: float = 0.0
    sign: int = 1
    k: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.kind in ("sphere", "quadrant", "ball", "hyp-surface") and self.d < 2:
            raise DomainError(f"{self.kind} requires d >= 2")
        if self.kind in ("hyperboloid", "simplex") and self.d < 1:
            raise DomainError(f"{self.kind} requires d >= 1")
        if self.kind == "cone3" and self.d != 2:
            raise DomainError("the conic surface is only supported in R^3")
        if self.rho < 0:
            raise DomainError("rho must be >= 0")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.kind == "quadrant" and not 1 <= self.k <= self.d + 1:
            raise DomainError("quadrant index k must satisfy 1 <= k <= d+1")

    # -- constructors ------------------------------------------------------
    @classmethod
    def sphere(cls, d: int) -> "Domain":
        return cls("sphere", d=d)

    @classmethod
    def quadrant(cls, d: int, k: int) -> "Domain":
        return cls("quadrant", d=d, k=k)

    @classmethod
    def ball(cls, d: int) -> "Domain":
        return cls("ball", d=d)

    @classmethod
    def hyp_surface(cls, d: int, rho: float, sign: int = 1) -> "Domain":
        return cls("hyp-surface", d=d, rho=float(rho), sign=sign)

    @classmethod
    def hyperboloid(cls, d: int, rho: float, sign: int = 1) -> "Domain":
        return cls("hyperboloid", d=d, rho=float(rho), sign=sign)

    @classmethod
    def cone3(cls) -> "Domain":
        return cls("cone3", d=2)

    @classmethod
    def simplex(cls, d: int) -> "Domain":
        return cls("simplex", d=d)

    # -- derived quantities ------------------------------------------------
    @property
    def sphere_dim(self) -> int:
        """Dimension d of the ambient sphere S^d the domain embeds into."""
        return self.d

    @property
    def lam(self) -> float:
        """Gegenbauer parameter (d - 1) / 2 for the ambient sphere."""
        return (self.sphere_dim - 1) / 2.0

    @property
    def ncoords(self) -> int:
        return {
            "sphere": self.d + 1, "quadrant": self.d + 1, "ball": self.d,
            "hyp-surface": self.d + 1, "hyperboloid": self.d,
            "cone3": 3, "simplex": self.d,
        }[self.kind]

    @property
    def even_only(self) -> bool:
        """Whether kernels on this domain require even-parity series."""
        return self.kind in ("cone3", "simplex")

    @property
    def constrained_axes(self) -> tuple[int, ...]:
        """Indices of embedded coordinates constrained to be nonnegative."""
        sd = self.sphere_dim
        return {
            "sphere": (), "quadrant": tuple(range(self.k - 1, sd + 1)),
            "ball": (sd,), "hyp-surface": (sd,),
            "hyperboloid": (sd - 1, sd), "cone3": (1, 2),
            "simplex": tuple(range(sd + 1)),
        }[self.kind]

    def spec(self) -> str:
        """Canonical domain spec string, e.g. ``ball:d=2``."""
        if self.kind == "cone3":
            return "cone3"
        if self.kind in ("sphere", "ball", "simplex"):
            return f"{self.kind}:d={self.d}"
        if self.kind == "quadrant":
            return f"quadrant:d={self.d},k={self.k}"
        sgn = "+" if self.sign > 0 else "-"
        return f"{self.kind}:d={self.d},rho={self.rho:g},sign={sgn}"


def parse_domain(text: str) -> Domain:
    """Parse a domain spec string such as ``hyp-surface:d=2,rho=0.5,sign=+``."""
    text = text.strip()
    if text == "cone3":
        return Domain.cone3()
    kind, _, rest = text.partition(":")
    if kind not in _KINDS or not rest:
        raise DomainError(f"malformed domain spec {text!r}")
    fields = {}
    for item in rest.split(","):
        key, _, value = item.partition("=")
        if not value:
            raise DomainError(f"malformed domain spec {text!r}")
        fields[key.strip()] = value.strip()
    try:
        d = int(fields.pop("d"))
        kwargs = {"d": d}
        if "rho" in fields:
            kwargs["rho"] = float(fields.pop("rho"))
        if "sign" in fields:
            sgn = fields.pop("sign")
            if sgn not in ("+", "-"):
                raise DomainError(f"sign must be '+' or '-', got {sgn!r}")
            kwargs["sign"] = 1 if sgn == "+" else -1
        if "k" in fields:
            kwargs["k"] = int(fields.pop("k"))
        if fields:
            raise DomainError(f"unexpected fields {sorted(fields)} in {text!r}")
        return Domain(kind, **kwargs)
    except KeyError as exc:
        raise DomainError(f"domain spec {text!r} missing field {exc}") from None


@dataclass(frozen=True, eq=False)
class DomainPoint:
    """A point on a domain, in the coordinate convention of that domain."""

    domain: Domain
    coords: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coords, dtype=float))
        if c.shape != (self.domain.ncoords,):
            raise DomainError(
                f"{self.domain.spec()} expects {self.domain.ncoords} coordinates, "
                f"got shape {c.shape}")
        object.__setattr__(self, "coords", c)


def points_from_coords(domain: Domain, coords: np.ndarray) -> list[DomainPoint]:
    return [DomainPoint(domain, row) for row in np.atleast_2d(coords)]


def coords_of(points) -> np.ndarray:
    return np.asarray([p.coords for p in points])


def common_domain(points) -> Domain:
    domain = points[0].domain
    for p in points[1:]:
        if p.domain != domain:
            raise DomainError(
                f"mixed domains: {domain.spec()} vs {p.domain.spec()}")
    return domain


# ----------------------------------------------------------------------
# membership
# ----------------------------------------------------------------------

def validate_coords(domain: Domain, C: np.ndarray, tol: float = MEMBERSHIP_TOL):
    """Raise MembershipError unless every row of C lies on the domain."""
    C = np.atleast_2d(np.asarray(C, dtype=float))
    kind = domain.kind

    def fail(msg):
        raise MembershipError(f"{domain.spec()}: {msg}")

    if kind == "ball":
        if np.any(np.linalg.norm(C, axis=1) > 1.0 + tol):
            fail("point outside the unit ball")
    elif kind in ("sphere", "quadrant"):
        if np.any(np.abs(np.linalg.norm(C, axis=1) - 1.0) > tol):
            fail("point not on the unit sphere")
        if kind == "quadrant":
            lo = domain.k - 1
            if np.any(C[:, lo:] < -tol):
                fail("point outside the quadrant")
    elif kind in ("hyp-surface", "hyperboloid"):
        x, t = C[:, :-1], C[:, -1]
        rho = domain.rho
        if np.any(t * domain.sign < -tol):
            fail("point on the wrong sheet")
        if np.any(np.abs(t) < rho - tol) or np.any(t * t > 1.0 + rho * rho + tol):
            fail("t outside [rho, sqrt(1+rho^2)] in absolute value")
        r2 = np.maximum(t * t - rho * rho, 0.0)
        nx = np.linalg.norm(x, axis=1)
        if kind == "hyp-surface":
            if np.any(np.abs(nx - np.sqrt(r2)) > tol):
                fail("||x|| != sqrt(t^2 - rho^2)")
        else:
            if np.any(nx > np.sqrt(r2) + tol):
                fail("||x|| > sqrt(t^2 - rho^2)")
    elif kind == "cone3":
        x, t = C[:, :2], C[:, 2]
        if np.any(t < -tol) or np.any(t > 1.0 + tol):
            fail("t outside [0, 1]")
        if np.any(np.abs(np.linalg.norm(x, axis=1) - t) > tol):
            fail("||x|| != t")
    elif kind == "simplex":
        if np.any(C < -tol) or np.any(C.sum(axis=1) > 1.0 + tol):
            fail("point outside the simplex")


def validate_point(p: DomainPoint, tol: float = MEMBERSHIP_TOL):
    validate_coords(p.domain, p.coords[None, :], tol)


# ----------------------------------------------------------------------
# embeddings and distances
# ----------------------------------------------------------------------

def _sqrt0(v):
    return np.sqrt(np.maximum(v, 0.0))


def _features(domain: Domain, C: np.ndarray) -> list[np.ndarray]:
    """Column blocks whose concatenation is the sphere embedding of each row."""
    C = np.atleast_2d(np.asarray(C, dtype=float))
    kind = domain.kind
    if kind in ("sphere", "quadrant"):
        return [C]
    if kind == "ball":
        r = _sqrt0(1.0 - np.sum(C * C, axis=1))
        return [C, r[:, None]]
    if kind == "hyp-surface":
        x, t = C[:, :-1], C[:, -1]
        b = _sqrt0(1.0 + domain.rho**2 - t * t)
        return [x, b[:, None]]
    if kind == "hyperboloid":
        x, t = C[:, :-1], C[:, -1]
        a = _sqrt0(t * t - domain.rho**2 - np.sum(x * x, axis=1))
        b = _sqrt0(1.0 + domain.rho**2 - t * t)
        return [x, a[:, None], b[:, None]]
    if kind == "cone3":
        x1, x2, t = C[:, 0], C[:, 1], C[:, 2]
        sgn = np.where(x2 >= 0.0, 1.0, -1.0)
        u1 = sgn * _sqrt0((t - x1) / 2.0)
        u2 = _sqrt0((t + x1) / 2.0)
        u3 = _sqrt0(1.0 - t)
        return [u1[:, None], u2[:, None], u3[:, None]]
    if kind == "simplex":
        c = _sqrt0(1.0 - C.sum(axis=1))
        return [_sqrt0(C), c[:, None]]
    raise DomainError(kind)


def embed_coords(domain: Domain, C: np.ndarray) -> np.ndarray:
    """Vectorized embedding into the unit sphere; rows are unit vectors."""
    return np.hstack(_features(domain, C))


def cos_gram(domain: Domain, A: np.ndarray, B: np.ndarray | None = None) -> np.ndarray:
    """Pairwise cos-distance matrix from the domain's closed-form formula."""
    fa = _features(domain, A)
    fb = fa if B is None else _features(domain, B)
    G = sum(a @ b.T for a, b in zip(fa, fb))
    if B is None:
        G = np.triu(G) + np.triu(G, 1).T  # exact symmetry
        np.fill_diagonal(G, 1.0)  # self-distance is exactly zero
    return _clamp_cos(G)


def cos_rowwise(domain: Domain, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """cos distance of corresponding rows of A and B."""
    fa = _features(domain, A)
    fb = _features(domain, B)
    vals = sum(np.sum(a * b, axis=1) for a, b in zip(fa, fb))
    return _clamp_cos(vals)


def _clamp_cos(v, tol: float = 1e-9):  # membership slack propagates into cosines
    if np.any(np.abs(v) > 1.0 + tol):
        raise MembershipError("cosine outside [-1, 1]; invalid input points")
    return np.clip(v, -1.0, 1.0)


def cos_distance(p: DomainPoint, q: DomainPoint) -> float:
    """Cosine of the domain distance between two points of the same domain."""
    domain = common_domain((p, q))
    validate_point(p)
    validate_point(q)
    return float(cos_rowwise(domain, p.coords[None, :], q.coords[None, :])[0])


def distance(p: DomainPoint, q: DomainPoint) -> float:
    """Geodesic distance, in [0, pi]."""
    return float(np.arccos(cos_distance(p, q)))


def embed(p: DomainPoint) -> np.ndarray:
    """Distance-preserving embedding of p into the ambient unit sphere."""
    validate_point(p)
    return embed_coords(p.domain, p.coords[None, :])[0]


def unembed_coords(domain: Domain, V: np.ndarray) -> np.ndarray:
    """Vectorized inverse of embed_coords on the image quadrant."""
    V = np.atleast_2d(np.asarray(V, dtype=float))
    kind = domain.kind
    if kind in ("sphere", "quadrant"):
        return V.copy()
    if kind == "ball":
        return V[:, :-1].copy()
    if kind in ("hyp-surface", "hyperboloid"):
        t = domain.sign * _sqrt0(1.0 + domain.rho**2 - V[:, -1] ** 2)
        nx = domain.d if kind == "hyp-surface" else domain.d - 1
        return np.hstack([V[:, :nx], t[:, None]])
    if kind == "cone3":
        x1 = V[:, 1] ** 2 - V[:, 0] ** 2
        x2 = 2.0 * V[:, 0] * V[:, 1]
        t = 1.0 - V[:, 2] ** 2
        return np.stack([x1, x2, t], axis=1)
    if kind == "simplex":
        return V[:, :-1] ** 2
    raise DomainError(kind)


def unembed(v: np.ndarray, target: Domain, tol: float = MEMBERSHIP_TOL) -> DomainPoint:
    """Map a unit vector in the image quadrant of `target` back to the domain."""
    v = np.asarray(v, dtype=float)
    if v.shape != (target.sphere_dim + 1,):
        raise DomainError(
            f"expected a vector of length {target.sphere_dim + 1}, got {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise MembershipError("vector is not on the unit sphere")
    axes = list(target.constrained_axes)
    if axes and np.any(v[axes] < -tol):
        raise MembershipError("vector is not in the image quadrant")
    v = v.copy()
    if axes:
        v[axes] = np.maximum(v[axes], 0.0)
    return DomainPoint(target, unembed_coords(target, v[None, :])[0])


# ----------------------------------------------------------------------
# sampling
# ----------------------------------------------------------------------

def _near_duplicate_rows(E: np.ndarray, min_sep: float) -> np.ndarray:
    """Indices of rows closer than min_sep (Euclidean) to an earlier row."""
    n = len(E)
    if n < 2:
        return np.empty(0, dtype=int)
    u = np.arange(1, E.shape[1] + 1, dtype=float)
    proj = E @ (u / np.linalg.norm(u))  # fixed unit projection
    order = np.argsort(proj, kind="stable")
    drop = set()
    s = proj[order]
    for i in range(n):
        j = i + 1
        while j < n and s[j] - s[i] < min_sep:
            a, b = order[i], order[j]
            if np.linalg.norm(E[a] - E[b]) < min_sep:
                drop.add(max(a, b))
            j += 1
    return np.asarray(sorted(drop), dtype=int)


def sample_coords(domain: Domain, n: int, rng: np.random.Generator,
                  min_sep: float = MIN_SEPARATION, max_rounds: int = 100) -> np.ndarray:
    """Sample n pairwise-distinct points, uniform on the image quadrant.

    Draws normalized Gaussian vectors, applies absolute values on the
    quadrant-constrained coordinates, and pulls back through the inverse
    embedding.  Distinctness (chordal separation > min_sep on the sphere)
    is enforced by rejection.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ncols = domain.sphere_dim + 1
    axes = list(domain.constrained_axes)
    E = np.empty((0, ncols))
    for _ in range(max_rounds):
        need = n - len(E)
        if need == 0:
            return unembed_coords(domain, E)
        v = rng.standard_normal((need, ncols))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        if axes:
            v[:, axes] = np.abs(v[:, axes])
        E = np.vstack([E, v])
        drop = _near_duplicate_rows(E, min_sep)
        if len(drop):
            E = np.delete(E, drop, axis=0)
    raise RuntimeError(f"could not draw {n} separated points on {domain.spec()}")


def sample(domain: Domain, n: int, seed: int) -> list[DomainPoint]:
    """Deterministic pseudo-random point set; see sample_coords."""
    rng = np.random.default_rng(seed)
    return points_from_coords(domain, sample_coords(domain, n, rng))


def antipodal_pair(domain: Domain, seed: int = 0) -> tuple[DomainPoint, DomainPoint]:
    """A pseudorandom pair (xi, -xi) on the full sphere."""
    if domain.kind != "sphere":
        raise DomainError("antipodal pairs only exist on the full sphere")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(domain.d + 1)
    v /= np.linalg.norm(v)
    return DomainPoint(domain, v), DomainPoint(domain, -v)


# ----------------------------------------------------------------------
# point-set CSV
# ----------------------------------------------------------------------

def format_float(x: float) -> str:
    return f"{x:.17g}"


def save_points(path, points):
    """Write a point set as CSV with a leading ``# <domain spec>`` line."""
    domain = common_domain(points)
    lines = [f"# {domain.spec()}"]
    for p in points:
        lines.append(",".join(format_float(c) for c in p.coords))
    text = "\n".join(lines) + "\n"
    from .fileio import atomic_write_text
    atomic_write_text(path, text)


def load_points(path) -> list[DomainPoint]:
    """Read a point-set CSV written by save_points."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing '# <domain>' header line")
    domain = parse_domain(lines[0].lstrip("#").strip())
    points = []
    for i, line in enumerate(lines[1:], start=2):
        try:
            coords = np.asarray([float(v) for v in line.split(",")])
        except ValueError:
            raise ValueError(f"{path}:{i}: malformed float") from None
        try:
            points.append(DomainPoint(domain, coords))
        except DomainError as exc:
            raise ValueError(f"{path}:{i}: {exc}") from None
    if not points:
        raise ValueError(f"{path}: no points")
    return points
