"""Ball-intersection curvature and hyperbolicity of finite metric spaces."""

import json

from ._ballcurv import (
    SCHEMA_VERSION,
    CapExceeded,
    ConfigError,
    DistanceMatrix,
    InputError,
    evaluate_triple,
    four_point_delta,
    from_points,
    gromov_products,
    quad_inequality_defect_max,
    rho,
    rho_bar,
    scan_triples,
    tripod_defect,
)
from . import _ballcurv


def generate(spec, point_cap=2048):
    """Distance matrix of a generator given as a dict with a "kind" key."""
    return _ballcurv._generate(json.dumps(spec), point_cap)


def nerve(d, radii, centers=None, dim_cap=3, helly_k_max=3, simplex_cap=20000):
    """Nerve of the balls B(centers[v], radii[v]) with mod-2 Betti numbers
    and Helly defects. Centers default to every point."""
    return json.loads(
        _ballcurv._nerve(d, list(radii), list(centers or []), dim_cap, helly_k_max, simplex_cap)
    )


def run(config):
    """Full report for a config dict, same layout as the CLI JSON report."""
    return json.loads(_ballcurv._run(json.dumps(config)))


__all__ = [
    "SCHEMA_VERSION",
    "CapExceeded",
    "ConfigError",
    "DistanceMatrix",
    "InputError",
    "evaluate_triple",
    "four_point_delta",
    "from_points",
    "generate",
    "gromov_products",
    "nerve",
    "quad_inequality_defect_max",
    "rho",
    "rho_bar",
    "run",
    "scan_triples",
    "tripod_defect",
]
