"""Reduced planar three-body dynamics and constant-mu branch verification."""

import json

try:
    from saari import _core
except ImportError:  # build-tree layout: the extension sits next to the package
    import _core

config_measure = _core.config_measure
scalars = _core.scalars
necessary_rhs = _core.necessary_rhs
central_configs = _core.central_configs
contour_scan = _core.contour_scan
integrate = _core.integrate
branch_strong = _core.branch_strong
branch_newton = _core.branch_newton
ConfigError = _core.ConfigError


def verify_strong(masses, mu_tilde, C, v, digits=50, order=8):
    """Series verification report for the inverse-square force, as a dict."""
    return json.loads(_core.verify_strong_json(masses, mu_tilde, C, v, digits, order))


def verify_newton(masses, mu_tilde, C, v, digits=50, order=8):
    """Series verification report for the inverse force, as a dict."""
    return json.loads(_core.verify_newton_json(masses, mu_tilde, C, v, digits, order))


__all__ = [
    "ConfigError",
    "branch_newton",
    "branch_strong",
    "central_configs",
    "config_measure",
    "contour_scan",
    "integrate",
    "necessary_rhs",
    "scalars",
    "verify_newton",
    "verify_strong",
]
