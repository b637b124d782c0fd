"""Deterministic weighted point-set generators and the JSON points file."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import betainc, betaincinv

from .errors import DomainError, PointFileError, UnsupportedSpaceError
from .spaces import Space, normalize_points, sample_uniform
from .spectral import as_space, normalize_weights

KINDS = ("uniform", "fibonacci", "spiral", "cap_cluster")
DEFAULT_CAP = math.pi / 10
_GOLDEN = (1 + math.sqrt(5)) / 2


@dataclass
class PointSet:
    space: Space
    points: np.ndarray
    weights: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.space = as_space(self.space)
        self.points = normalize_points(self.space, self.points)
        self.weights = normalize_weights(self.weights, self.points.shape[0])

    @property
    def n(self) -> int:
        return self.points.shape[0]


def fibonacci_sphere(n: int) -> np.ndarray:
    """Golden-angle lattice with equal-area heights z_i = 1 - (2i + 1)/n."""
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    phi = 2.0 * math.pi * np.mod(i / _GOLDEN, 1.0)
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack((rho * np.cos(phi), rho * np.sin(phi), z))


def spiral_sphere(n: int) -> np.ndarray:
    """Generalized spiral of Rakhmanov, Saff and Zhou."""
    if n == 1:
        return np.array([[0.0, 0.0, 1.0]])
    h = -1.0 + 2.0 * np.arange(n) / (n - 1)
    phi = np.zeros(n)
    for k in range(1, n - 1):
        phi[k] = (phi[k - 1] + 3.6 / math.sqrt(n * (1.0 - h[k] ** 2))) % (2.0 * math.pi)
    rho = np.sqrt(np.maximum(0.0, 1.0 - h * h))
    return np.column_stack((rho * np.cos(phi), rho * np.sin(phi), h))


def cap_cluster(space: Space, n: int, seed, cap: float = DEFAULT_CAP) -> np.ndarray:
    """Uniform points conditioned to the ball of radius ``cap`` about the pole.

    sin^2(rho/2) is Beta(a+1, b+1) distributed under the uniform measure, so the
    radius is drawn by inverting the truncated Beta law and the direction
    uniformly in the orthogonal complement of the pole.
    """
    if not (0.0 < cap <= math.pi):
        raise DomainError("cap radius must lie in (0, pi]")
    rng = np.random.default_rng(seed)
    prm = space.params
    a1, b1 = float(prm.a) + 1, float(prm.b) + 1
    s_cap = math.sin(cap / 2) ** 2
    u = rng.random(n) * betainc(a1, b1, s_cap)
    s = betaincinv(a1, b1, u)
    half = np.arcsin(np.sqrt(np.clip(s, 0.0, 1.0)))  # rho / 2
    rest = rng.standard_normal((n, space.coord_dim - space.field_dim))
    rest /= np.linalg.norm(rest, axis=1)[:, None]
    out = np.zeros((n, space.coord_dim))
    if space.kind == "sphere":
        rho = 2 * half
        out[:, 0] = np.cos(rho)
        out[:, 1:] = np.sin(rho)[:, None] * rest
    else:
        # |<o, x>| = cos(rho/2) gives cos rho = 2 cos^2(rho/2) - 1
        out[:, 0] = np.cos(half)
        out[:, space.field_dim :] = np.sin(half)[:, None] * rest
    return out


def generate(space, kind: str, n: int, seed: int = 0, cap: float = DEFAULT_CAP) -> PointSet:
    """Equal-weight point set of the requested kind."""
    space = as_space(space)
    if kind not in KINDS:
        raise DomainError(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
    if n < 1:
        raise DomainError("n must be >= 1")
    if not space.supports_points:
        raise UnsupportedSpaceError(f"{space}: point operations are not supported")
    if kind in ("fibonacci", "spiral") and str(space) != "s2":
        raise DomainError(f"{kind} points exist only on s2")
    provenance = {"generator": kind, "seed": int(seed), "n": int(n)}
    if kind == "uniform":
        pts = sample_uniform(space, seed, n)
    elif kind == "fibonacci":
        pts = fibonacci_sphere(n)
    elif kind == "spiral":
        pts = spiral_sphere(n)
    else:
        pts = cap_cluster(space, n, seed, cap)
        provenance["cap"] = float(cap)
    return PointSet(space, pts, None, provenance)


# ---------------------------------------------------------------------------
# file format


def points_to_dict(ps: PointSet) -> dict:
    out = {
        "space": str(ps.space),
        "points": ps.points.tolist(),
        "weights": ps.weights.tolist(),
    }
    if ps.provenance:
        out["provenance"] = ps.provenance
    return out


def points_from_dict(data) -> PointSet:
    if not isinstance(data, dict):
        raise PointFileError("points file must hold a JSON object")
    try:
        space = as_space(data["space"])
        pts = np.asarray(data["points"], dtype=float)
    except KeyError as exc:
        raise PointFileError(f"points file lacks {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise PointFileError(f"malformed points: {exc}") from exc
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise PointFileError("'points' must be a nonempty list of coordinate lists")
    try:
        return PointSet(space, pts, data.get("weights"), dict(data.get("provenance") or {}))
    except (DomainError, UnsupportedSpaceError) as exc:
        raise PointFileError(str(exc)) from exc


def write_points(path, ps: PointSet, extra: dict | None = None) -> None:
    data = points_to_dict(ps)
    if extra:
        data.update(extra)
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def read_points(path) -> PointSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PointFileError(f"{path}: invalid JSON ({exc})") from exc
    return points_from_dict(data)
