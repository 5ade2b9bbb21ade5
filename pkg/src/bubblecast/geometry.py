"""Poincare ball operations for the hyperbolic recurrent encoder.

Points are 1-D float64 arrays strictly inside the open unit ball (curvature
fixed at -1); tangent vectors share the dimension but are unconstrained.
Every ball-valued result is radially projected to norm <= 1 - BALL_EPS,
which keeps downstream atanh calls away from the boundary.

In Euclidean mode the operations degenerate exactly: Mobius addition is
vector addition, the exponential and logarithmic maps are identities and
the matrix action is a plain matrix product. The ablation encoder variants
run in this mode.

All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

__all__ = [
    "BALL_EPS",
    "GeometryMode",
    "conformal_factor",
    "exp_map",
    "exp_map_origin",
    "hyperbolic_nonlinearity",
    "log_map",
    "log_map_origin",
    "mobius_add",
    "mobius_matmul",
    "project_to_ball",
]

BALL_EPS = 1e-5

# Norms below this are treated as exactly zero when normalizing directions.
_TINY = 1e-15


class GeometryMode(str, Enum):
    HYPERBOLIC = "hyperbolic"
    EUCLIDEAN = "euclidean"


def _as_vector(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite entries")
    return x


def _as_point(x, name: str) -> np.ndarray:
    x = _as_vector(x, name)
    if float(x @ x) >= 1.0:
        raise ValueError(f"{name} lies outside the open unit ball")
    return x


def project_to_ball(x) -> np.ndarray:
    """Radially rescale x to norm <= 1 - BALL_EPS; shorter vectors pass through."""
    x = _as_vector(x, "x")
    norm = float(np.linalg.norm(x))
    limit = 1.0 - BALL_EPS
    if norm <= limit:
        return x
    return x * (limit / norm)


def mobius_add(x, y, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """Mobius (gyrovector) addition of two ball points."""
    x = _as_point(x, "x")
    y = _as_point(y, "y")
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if mode == GeometryMode.EUCLIDEAN:
        return x + y
    xy = float(x @ y)
    xx = float(x @ x)
    yy = float(y @ y)
    num = (1.0 + 2.0 * xy + yy) * x + (1.0 - xx) * y
    # Denominator >= (1 - |x||y|)^2 > 0 inside the ball.
    den = 1.0 + 2.0 * xy + xx * yy
    return project_to_ball(num / den)


def exp_map(x, v, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """Map tangent vector v at ball point x onto the ball.

    exp_map(x, 0) = x by convention (limit of the formula).
    """
    x = _as_point(x, "x")
    v = _as_vector(v, "v")
    if x.shape != v.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {v.shape}")
    if mode == GeometryMode.EUCLIDEAN:
        return x + v
    vnorm = float(np.linalg.norm(v))
    if vnorm < _TINY:
        return project_to_ball(x)
    xx = float(x @ x)
    scale = np.tanh(vnorm / (1.0 - xx)) / vnorm
    return mobius_add(x, scale * v)


def log_map(x, y, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """Map ball point y into the tangent space at x; log_map(x, x) = 0."""
    x = _as_point(x, "x")
    y = _as_point(y, "y")
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if mode == GeometryMode.EUCLIDEAN:
        return y - x
    w = mobius_add(-x, y)
    wnorm = float(np.linalg.norm(w))
    if wnorm < _TINY:
        return np.zeros_like(x)
    xx = float(x @ x)
    return (1.0 - xx) * np.arctanh(min(wnorm, 1.0 - BALL_EPS)) * (w / wnorm)


def exp_map_origin(v, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """exp_map at the origin: v -> tanh(|v|) v / |v|."""
    v = _as_vector(v, "v")
    if mode == GeometryMode.EUCLIDEAN:
        return v.copy()
    vnorm = float(np.linalg.norm(v))
    if vnorm < _TINY:
        return v.copy()
    return project_to_ball(np.tanh(vnorm) / vnorm * v)


def log_map_origin(y, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """log_map at the origin: y -> atanh(|y|) y / |y|."""
    y = _as_point(y, "y")
    if mode == GeometryMode.EUCLIDEAN:
        return y.copy()
    ynorm = float(np.linalg.norm(y))
    if ynorm < _TINY:
        return y.copy()
    return np.arctanh(min(ynorm, 1.0 - BALL_EPS)) / ynorm * y


def mobius_matmul(w, x, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """Matrix action on a ball point: exp_o(W log_o(x))."""
    w = np.asarray(w, dtype=np.float64)
    x = _as_point(x, "x")
    if w.ndim != 2 or w.shape[1] != x.shape[0]:
        raise ValueError(f"shape mismatch: matrix {w.shape} against point {x.shape}")
    if mode == GeometryMode.EUCLIDEAN:
        return w @ x
    return exp_map_origin(w @ log_map_origin(x))


def hyperbolic_nonlinearity(x, fn=np.tanh, mode: GeometryMode = GeometryMode.HYPERBOLIC) -> np.ndarray:
    """Pointwise nonlinearity lifted to the ball: exp_o(fn(log_o(x)))."""
    x = _as_point(x, "x")
    if mode == GeometryMode.EUCLIDEAN:
        return np.asarray(fn(x), dtype=np.float64)
    return exp_map_origin(np.asarray(fn(log_map_origin(x)), dtype=np.float64))


def conformal_factor(x) -> float:
    """Metric scaling 2 / (1 - |x|^2) at ball point x."""
    x = _as_point(x, "x")
    return 2.0 / (1.0 - float(x @ x))
