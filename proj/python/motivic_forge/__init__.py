"""Exact arithmetic for heights, jet counts, and crepant stack descriptors.

Thin convenience layer over the compiled core: the *_json entry points are
wrapped to return plain dicts, exact rationals come back as Fraction.
"""

import json as _json
from fractions import Fraction

from ._core import (  # noqa: F401
    ForgeError,
    canonical,
    exact_div,
    group_order,
    solve_L_shift,
    stabilizer_order,
)
from . import _core


def evaluate_at(expr, q):
    """Realize L = q as an exact Fraction."""
    num, den = _core.evaluate_at(expr, q)
    return Fraction(num, den)


def jet_count(r, n, q, method="rowreduce", workers=1):
    return _json.loads(_core.jet_count_json(r, n, q, method, workers))


def verify_cov(case, r=2):
    return _json.loads(_core.verify_cov_json(case, r))


def height_profile(arc):
    if isinstance(arc, dict):
        arc = _json.dumps(arc)
    return _json.loads(_core.heights_json(arc))


def heights_batch(r, prime=5, precision=16, count=50, vmin=1, vmax=4, seed=0):
    return _json.loads(_core.heights_batch_json(r, prime, precision, count, vmin, vmax, seed))


def resolve(resolution, convention="certificate"):
    if isinstance(resolution, dict):
        resolution = _json.dumps(resolution)
    return _json.loads(_core.resolve_json(resolution, convention))


__all__ = [
    "ForgeError",
    "canonical",
    "evaluate_at",
    "exact_div",
    "group_order",
    "heights_batch",
    "height_profile",
    "jet_count",
    "resolve",
    "solve_L_shift",
    "stabilizer_order",
    "verify_cov",
]
