"""Invariant-region geometry and the piecewise one-step maps.

A region R(alpha, C) in the (u, v) plane is bounded above by B1 and below
by B2 = -B1(-u):

    B1(u) = -u^2/(2*dH) + u/2 + C   for u <= 0
    B1(u) = -u^2/(2*dL) + u/2 + C   for u >  0

with dL = 1 - alpha, dH = 1 + alpha.  The curves intersect at |u| = u0 =
sqrt(2*C*dH*dL), so R = {(u, v): |u| <= u0, B2(u) <= v <= B1(u)}, a convex
set that is centrally symmetric about the origin.

One modulator step acts on R as a piecewise affine map: with error
magnitude delta = |f - q| and gain lam,

    left  move (q = +1):  (u, v) -> (lam*u - delta, lam*u + v - delta)
    right move (q = -1):  (u, v) -> (lam*u + delta, lam*u + v + delta)

and the branch is decided by the sign of u + gamma*v (ties go left,
matching the sign quantizer's tie rule Q(0) = +1).

The feedback multiplier gamma and the abscissa u1 of the intersection of
the switching line u + gamma*v = 0 with B1 determine each other:

    gamma = u1 / B1(-u1) = u1 / (C - u1/2 - u1^2/(2*dH))

which is monotone increasing in u1 wherever B1(-u1) > 0, so the inverse
is the positive root of a quadratic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, InvalidInputError, NoSolutionError

__all__ = [
    "RegionSpec",
    "PlanePoint",
    "b1_eval",
    "b2_eval",
    "corner_u0",
    "region_contains",
    "gamma_from_u1",
    "u1_from_gamma",
    "yilmaz_gamma_range",
    "map_sl",
    "map_sr",
    "step_region",
]


@dataclass(frozen=True)
class PlanePoint:
    """A point of the (u, v) state plane."""

    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise InvalidInputError("plane point coordinates must be finite")


@dataclass(frozen=True)
class RegionSpec:
    """Region parameters (alpha, C) with the derived constants cached."""

    alpha: float
    C: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise InvalidInputError("alpha must lie in (0, 1)")
        if not (self.C > 0.0 and math.isfinite(self.C)):
            raise InvalidInputError("C must be positive and finite")

    @property
    def delta_L(self) -> float:
        return 1.0 - self.alpha

    @property
    def delta_H(self) -> float:
        return 1.0 + self.alpha

    @property
    def u0(self) -> float:
        return corner_u0(self)

    @property
    def v_extent(self) -> float:
        """max over u of B1(u), attained at u = delta_L/2."""
        return self.C + self.delta_L / 8.0


def b1_eval(spec: RegionSpec, u):
    """Upper boundary B1 at u (scalar or array)."""
    u = np.asarray(u, dtype=np.float64)
    half = np.where(u <= 0.0, spec.delta_H, spec.delta_L)
    out = -(u * u) / (2.0 * half) + 0.5 * u + spec.C
    return float(out) if out.ndim == 0 else out


def b2_eval(spec: RegionSpec, u):
    """Lower boundary B2(u) = -B1(-u)."""
    u = np.asarray(u, dtype=np.float64)
    out = -b1_eval(spec, -u)
    return float(out) if np.ndim(out) == 0 else out


def corner_u0(spec: RegionSpec) -> float:
    """Abscissa of the boundary intersection: sqrt(2 C dH dL)."""
    return math.sqrt(2.0 * spec.C * spec.delta_H * spec.delta_L)


def region_contains(spec: RegionSpec, p: PlanePoint, tol: float = 0.0) -> bool:
    """Membership test with absolute slack tol on every inequality."""
    if tol < 0.0:
        raise InvalidInputError("tol must be >= 0")
    if abs(p.u) > spec.u0 + tol:
        return False
    return (b2_eval(spec, p.u) - tol <= p.v) and (p.v <= b1_eval(spec, p.u) + tol)


def gamma_from_u1(spec: RegionSpec, u1: float) -> float:
    """Multiplier gamma determined by the switching-line abscissa u1.

    Requires 0 < u1 < u0 and B1(-u1) > 0 (positive multiplier).
    """
    if not (0.0 < u1 < spec.u0):
        raise InvalidInputError(f"u1 must lie in (0, u0) = (0, {spec.u0!r})")
    denom = spec.C - 0.5 * u1 - u1 * u1 / (2.0 * spec.delta_H)
    if denom <= 0.0:
        raise NoSolutionError("B1(-u1) <= 0: no positive multiplier at this u1")
    return u1 / denom


def u1_from_gamma(spec: RegionSpec, gamma: float) -> float:
    """Inverse of gamma_from_u1: positive root of the defining quadratic.

    Solves gamma*u^2/(2*dH) + (1 + gamma/2)*u - gamma*C = 0 and returns
    the positive root, provided it lies in (0, u0).
    """
    if gamma <= 0.0:
        raise InvalidInputError("gamma must be > 0")
    a = gamma / (2.0 * spec.delta_H)
    b = 1.0 + 0.5 * gamma
    c = -gamma * spec.C
    disc = b * b - 4.0 * a * c
    # c < 0 and a > 0 so disc > b^2 and the root is positive; the
    # conjugate form -2c/(b + sqrt(disc)) avoids cancellation at small gamma
    root = -2.0 * c / (b + math.sqrt(disc))
    if not (0.0 < root < spec.u0):
        raise NoSolutionError(
            f"gamma={gamma!r} has no switching abscissa inside (0, u0)"
        )
    return root


def yilmaz_gamma_range(spec: RegionSpec):
    """Admissible closed interval for gamma at this (alpha, C).

    The interval is the image of u1 in [dH, u0 - dH] under gamma_from_u1:

        lo = dH / (C - dH)
        hi = (sqrt(2 C dH dL) - dH) / (C alpha + sqrt(C dH dL / 2))

    Requires C >= 2 dH / dL, otherwise the u1 interval is empty.
    """
    dH, dL = spec.delta_H, spec.delta_L
    c_min = 2.0 * dH / dL
    if spec.C < c_min * (1.0 - 1e-14):
        raise InfeasibleError(
            "lowerc", f"C={spec.C!r} is below the minimum 2(1+alpha)/(1-alpha)={c_min!r}"
        )
    lo = dH / (spec.C - dH)
    u0 = corner_u0(spec)
    hi = (u0 - dH) / (spec.C * spec.alpha + 0.5 * u0)
    if hi < lo:
        # can only happen from rounding at C = C_min where lo == hi
        hi = lo
    return (lo, hi)


def map_sl(p: PlanePoint, delta: float, lam: float = 1.0) -> PlanePoint:
    """Left move with gain: (u, v) -> (lam*u - delta, lam*u + v - delta)."""
    if delta <= 0.0:
        raise InvalidInputError("delta must be > 0")
    w = lam * p.u
    return PlanePoint(w - delta, w + p.v - delta)


def map_sr(p: PlanePoint, delta: float, lam: float = 1.0) -> PlanePoint:
    """Right move with gain: (u, v) -> (lam*u + delta, lam*u + v + delta)."""
    if delta <= 0.0:
        raise InvalidInputError("delta must be > 0")
    w = lam * p.u
    return PlanePoint(w + delta, w + p.v + delta)


def step_region(p: PlanePoint, delta: float, gamma: float, lam: float = 1.0) -> PlanePoint:
    """One-step map on the plane: left branch iff u + gamma*v >= 0."""
    if p.u + gamma * p.v >= 0.0:
        return map_sl(p, delta, lam)
    return map_sr(p, delta, lam)


def _step_region_arrays(u, v, delta, gamma, lam):
    """Vectorized step_region on parallel arrays (no validation)."""
    w = lam * u
    sgn = np.where(u + gamma * v >= 0.0, -1.0, 1.0)
    return w + sgn * delta, w + v + sgn * delta
