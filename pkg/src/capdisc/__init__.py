"""L2 ball discrepancy of weighted point sets on compact two-point homogeneous spaces.

Attributes are loaded lazily so the CLI can size the numba thread pool
before numba is imported.
"""

import importlib

__version__ = "0.1.0"

_EXPORTS = {
    "Space": "spaces",
    "SpaceParams": "spaces",
    "Sphere": "spaces",
    "ProjReal": "spaces",
    "ProjComplex": "spaces",
    "ProjQuat": "spaces",
    "ProjOct": "spaces",
    "CATALOG": "spaces",
    "SUPPORTED": "spaces",
    "ball_volume": "spaces",
    "cos_distance": "spaces",
    "distance": "spaces",
    "sample_uniform": "spaces",
    "jacobi_eval": "specfun",
    "eigenspace_dim": "specfun",
    "reg_inc_beta": "specfun",
    "build_gram": "spectral",
    "ball_coefficient": "spectral",
    "harmonic_energy": "spectral",
    "discrepancy_l2": "spectral",
    "cm_sum": "spectral",
    "DiscrepancyReport": "spectral",
    "RadiusPQ": "admissibility",
    "space_radius_admissible": "admissibility",
    "jacobadly_from_alpha_beta": "admissibility",
    "classify": "admissibility",
    "PointSet": "pointsets",
    "generate": "pointsets",
    "read_points": "pointsets",
    "write_points": "pointsets",
    "mc_discrepancy": "oracle",
    "mc_ball_volume": "oracle",
    "quad_ball_coefficient": "oracle",
    "rate_study": "studies",
    "prime_scan": "studies",
    "jacobadly_scan": "studies",
}

__all__ = ["__version__", *_EXPORTS]


def __getattr__(name):
    if name in _EXPORTS:
        value = getattr(importlib.import_module(f".{_EXPORTS[name]}", __name__), name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
