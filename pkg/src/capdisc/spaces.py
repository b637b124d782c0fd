"""Compact two-point homogeneous spaces: parameters, distances, sampling, volumes.

Points are stored as real vectors.  Sphere points are unit vectors in R^{d+1};
projective points are unit representatives in F^{n+1} with F = R, C or H,
flattened component-wise (complex entries as ``re, im`` pairs and quaternions
as ``w, x, y, z`` groups).  Distances are normalized so the diameter is pi,
which on projective spaces means ``cos rho = 2 |<x, y>|^2 - 1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import specfun
from .errors import DomainError, UnsupportedSpaceError

_KINDS = ("sphere", "rp", "cp", "hp", "op")
_FIELD_DIM = {"sphere": 1, "rp": 1, "cp": 2, "hp": 4, "op": 8}
_ID_RE = re.compile(r"^(s|rp|cp|hp|op)(\d+)$")


@dataclass(frozen=True)
class SpaceParams:
    d: int
    d0: int
    n: int
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class Space:
    """A catalog space: ``Space("sphere", d)`` or ``Space("rp"|"cp"|"hp", n)`` or ``Space("op", 2)``."""

    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown space kind {self.kind!r}")
        if self.kind == "sphere" and self.dim < 1:
            raise DomainError("sphere dimension must be >= 1")
        if self.kind in ("rp", "cp", "hp") and self.dim < 2:
            raise DomainError("projective rank must be >= 2")
        if self.kind == "op" and self.dim != 2:
            raise DomainError("only the octonionic plane op2 exists")

    @classmethod
    def parse(cls, ident: str) -> "Space":
        m = _ID_RE.match(ident.strip().lower())
        if not m:
            raise DomainError(f"unknown space id {ident!r}")
        prefix, k = m.group(1), int(m.group(2))
        return cls("sphere" if prefix == "s" else prefix, k)

    def __str__(self) -> str:
        return f"s{self.dim}" if self.kind == "sphere" else f"{self.kind}{self.dim}"

    @property
    def params(self) -> SpaceParams:
        if self.kind == "sphere":
            d = d0 = self.dim
            n = 1
        else:
            d0 = _FIELD_DIM[self.kind]
            n = self.dim
            d = n * d0
        return SpaceParams(d, d0, n, Fraction(d - 2, 2), Fraction(d0 - 2, 2))

    @property
    def supports_points(self) -> bool:
        return self.kind != "op"

    @property
    def field_dim(self) -> int:
        return _FIELD_DIM[self.kind]

    @property
    def coord_dim(self) -> int:
        """Length of the real coordinate vector of a point."""
        self._require_points()
        if self.kind == "sphere":
            return self.dim + 1
        return (self.dim + 1) * self.field_dim

    def _require_points(self):
        if not self.supports_points:
            raise UnsupportedSpaceError(f"{self}: point operations are not supported")


def Sphere(d: int) -> Space:
    return Space("sphere", d)


def ProjReal(n: int) -> Space:
    return Space("rp", n)


def ProjComplex(n: int) -> Space:
    return Space("cp", n)


def ProjQuat(n: int) -> Space:
    return Space("hp", n)


def ProjOct() -> Space:
    return Space("op", 2)


CATALOG = (
    Sphere(1), Sphere(2), Sphere(3), Sphere(4), Sphere(5), Sphere(9),
    ProjReal(2), ProjReal(3), ProjReal(5),
    ProjComplex(2), ProjComplex(3),
    ProjQuat(2),
    ProjOct(),
)

# spaces with a coordinate model, used by the geometric cross-checks
SUPPORTED = (Sphere(2), Sphere(3), ProjReal(2), ProjComplex(2), ProjQuat(2))


def params(space: Space) -> SpaceParams:
    return space.params


# ---------------------------------------------------------------------------
# coordinates and distances


def _conj_inner_components(space: Space, X: np.ndarray) -> list[np.ndarray]:
    """Real matrices X_c with Re/Im parts of <x, y> equal to X_c @ y.

    The field inner product is sum_k conj(x_k) y_k, which is invariant under
    right multiplication of a representative by a unit scalar.
    """
    f = space.field_dim
    if f == 1:
        return [X]
    G = X.reshape(X.shape[:-1] + (-1, f))
    if f == 2:
        x0, x1 = G[..., 0], G[..., 1]
        comps = [(x0, x1), (-x1, x0)]
    else:
        x0, x1, x2, x3 = (G[..., i] for i in range(4))
        comps = [
            (x0, x1, x2, x3),
            (-x1, x0, x3, -x2),
            (-x2, -x3, x0, x1),
            (-x3, x2, -x1, x0),
        ]
    return [np.stack(c, axis=-1).reshape(X.shape) for c in comps]


def cos_matrix(space: Space, X, Y) -> np.ndarray:
    """Matrix of cos rho(x_i, y_j) for rows of X and Y, clipped to [-1, 1]."""
    space._require_points()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if space.kind == "sphere":
        t = X @ Y.T
    else:
        sq = None
        for Xc in _conj_inner_components(space, X):
            g = Xc @ Y.T
            sq = g * g if sq is None else sq + g * g
        t = 2.0 * sq - 1.0
    return np.clip(t, -1.0, 1.0)


def cos_distance(space: Space, x, y) -> float:
    """cos rho(x, y): the argument fed to the Jacobi polynomials."""
    return float(cos_matrix(space, x, y)[0, 0])


def distance(space: Space, x, y) -> float:
    """Geodesic distance rho(x, y) in [0, pi]."""
    return float(np.arccos(cos_distance(space, x, y)))


def normalize_points(space: Space, points, tol: float = 1e-9) -> np.ndarray:
    """Validate unit norms within ``tol`` and renormalize."""
    space._require_points()
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.ndim != 2 or P.shape[1] != space.coord_dim:
        raise DomainError(f"{space}: points must have {space.coord_dim} coordinates")
    if not np.all(np.isfinite(P)):
        raise DomainError("non-finite coordinates")
    norms = np.linalg.norm(P, axis=1)
    bad = np.abs(norms - 1.0) > tol
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainError(f"point {i} has norm {norms[i]!r}, outside 1 +- {tol}")
    return P / norms[:, None]


def sample_uniform(space: Space, rng_seed, count: int) -> np.ndarray:
    """``count`` points distributed by the normalized Riemannian measure.

    Standard Gaussian vectors over the base field, normalized.  ``rng_seed``
    may be an int, a ``SeedSequence`` or a ``Generator``.
    """
    space._require_points()
    if count < 1:
        raise DomainError("count must be >= 1")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    G = rng.standard_normal((count, space.coord_dim))
    return G / np.linalg.norm(G, axis=1)[:, None]


def pole(space: Space) -> np.ndarray:
    space._require_points()
    o = np.zeros(space.coord_dim)
    o[0] = 1.0
    return o


# ---------------------------------------------------------------------------
# measure of balls


def _check_radius(r: float):
    if not (0.0 <= r <= math.pi):
        raise DomainError(f"radius must lie in [0, pi], got {r}")


def ball_volume(space: Space, r: float) -> float:
    """mu(B_r) = I_{sin^2(r/2)}(a+1, b+1)."""
    r = float(r)
    _check_radius(r)
    p = space.params
    if r == math.pi:
        return 1.0
    s = math.sin(r / 2) ** 2
    return specfun.reg_inc_beta(s, float(p.a) + 1, float(p.b) + 1)


def density(space: Space, r: float) -> float:
    """Radial density A(r) = c(a,b) (sin r/2)^(2a+1) (cos r/2)^(2b+1)."""
    r = float(r)
    _check_radius(r)
    p = space.params
    a, b = float(p.a), float(p.b)
    return specfun.c_ab(p.a, p.b) * math.sin(r / 2) ** (2 * a + 1) * math.cos(r / 2) ** (2 * b + 1)
