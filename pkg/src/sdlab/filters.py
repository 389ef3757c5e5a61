"""Low-pass reconstruction kernels with compactly supported spectrum.

The kernel g is defined through its spectrum: ghat(omega) = 1 on [-1, 1],
0 outside [-T0, T0], and a smooth taper in between.  Two taper profiles
are available:

    "bump"                    infinitely smooth step built from exp(-1/x);
                              every derivative vanishes at both taper ends,
                              so g decays faster than any power and short
                              tabulation windows reach tight tail bounds.
    "raised-cosine-squared"   cos(pi*s/2)**4; its second derivative jumps
                              at the inner taper edge, so g decays like
                              t**-3 and tight tail tolerances can exceed
                              the tabulation cap (a ResourceError).

Everything downstream needs three numbers besides the samples of g: the
L1 norms of g, g', g''.  Derivatives are computed spectrally (extra omega
factors under the inverse transform), and the L1 norms by splitting at
sign changes of spline fits, where the integral of |h| telescopes into
total-variation sums evaluated from the tabulated values.

Quadrature note: the inverse transforms are evaluated with the composite
trapezoid rule on a dense omega grid.  The integrands have vanishing odd
derivatives at omega = 0 (even functions) and vanish with all derivatives
at omega = T0 for the bump taper, so the rule converges superalgebraically
here; the omega spacing ~1/4096 keeps the aliased images of the sampled
cosines far outside every tabulated |t| <= 256.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidInputError, ResourceError

__all__ = ["FilterSpec", "design_filter", "taper_profiles"]

_W_STAGES = (64.0, 256.0)   # tabulation caps, tried in order
_W_MIN = 2.0                # never truncate inside the main lobe
_OMEGA_DENSITY = 4096       # quadrature points per unit of omega


def _smoothstep(x):
    """C-infinity monotone step: 0 for x <= 0, 1 for x >= 1."""
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        bx = np.where(x > 0.0, np.exp(-1.0 / np.maximum(x, 1e-300)), 0.0)
        cx = np.where(x < 1.0, np.exp(-1.0 / np.maximum(1.0 - x, 1e-300)), 0.0)
    return bx / (bx + cx)


def _phi_bump(s):
    return _smoothstep(1.0 - np.asarray(s, dtype=np.float64))


def _phi_cos4(s):
    s = np.clip(np.asarray(s, dtype=np.float64), 0.0, 1.0)
    return np.cos(0.5 * math.pi * s) ** 4


def taper_profiles():
    """Mapping of taper profile name to its [0,1] -> [1,0] shape function."""
    return {"bump": _phi_bump, "raised-cosine-squared": _phi_cos4}


@dataclass
class FilterSpec:
    """A designed kernel: spectrum parameters, tabulation, and norms."""

    T0: float
    rolloff: str
    dt: float
    W: float
    trunc_tol: float
    tail_bound: float
    g_l1: float
    g1_l1: float
    g2_l1: float
    t_tab: np.ndarray = field(repr=False, default=None)
    g_tab: np.ndarray = field(repr=False, default=None)
    g1_tab: np.ndarray = field(repr=False, default=None)
    g2_tab: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        self._spl_g = CubicSpline(self.t_tab, self.g_tab)

    @property
    def norms(self):
        return (self.g_l1, self.g1_l1, self.g2_l1)

    @property
    def C_g(self) -> float:
        """Constant of the T**-2 error bound: ||g''|| + 2||g'|| + ||g||."""
        return self.g2_l1 + 2.0 * self.g1_l1 + self.g_l1

    def ghat(self, omega):
        """Spectrum: 1 on [-1, 1], tapered to 0 at |omega| = T0."""
        w = np.abs(np.asarray(omega, dtype=np.float64))
        phi = taper_profiles()[self.rolloff]
        s = (w - 1.0) / (self.T0 - 1.0)
        out = np.where(w <= 1.0, 1.0, np.where(w >= self.T0, 0.0, phi(s)))
        return float(out) if out.ndim == 0 else out

    def g(self, t):
        """Kernel values by cubic interpolation; 0 beyond the half-width W.

        g is even, so evaluation uses |t| against the one-sided table.
        """
        t = np.asarray(t, dtype=np.float64)
        a = np.abs(t)
        scalar = a.ndim == 0
        a = np.atleast_1d(a)
        out = np.zeros(a.shape)
        inside = a <= self.W
        if np.any(inside):
            out[inside] = self._spl_g(a[inside])
        return float(out[0]) if scalar else out


def _inverse_transforms(T0, phi, t):
    """Tabulate g, g', g'' on the nonnegative grid t by dense quadrature."""
    n_om = int(round(T0 * _OMEGA_DENSITY)) + 1
    om = np.linspace(0.0, T0, n_om)
    gh = np.where(om <= 1.0, 1.0, phi((om - 1.0) / (T0 - 1.0)))
    wts = np.full(n_om, om[1] - om[0])
    wts[0] *= 0.5
    wts[-1] *= 0.5

    w0 = gh * wts
    w1 = om * w0
    w2 = om * w1
    g = np.empty(t.size)
    g1 = np.empty(t.size)
    g2 = np.empty(t.size)
    chunk = 1024
    for a in range(0, t.size, chunk):
        tt = t[a:a + chunk, None] * om[None, :]
        c = np.cos(2.0 * math.pi * tt)
        s = np.sin(2.0 * math.pi * tt)
        g[a:a + chunk] = 2.0 * (c @ w0)
        g1[a:a + chunk] = -4.0 * math.pi * (s @ w1)
        g2[a:a + chunk] = -2.0 * (2.0 * math.pi) ** 2 * (c @ w2)
    return g, g1, g2


def _l1_by_sign_splits(t, vals, anti_of=None):
    """Integral of |h| on [t0, tN] where h is the spline through vals.

    When anti_of is given it must be samples of an antiderivative-source
    table: the routine then sums |increments of a spline through anti_of|
    between the sign changes of vals.  With anti_of None the spline's own
    antiderivative is used.
    """
    spl = CubicSpline(t, vals)
    cuts = [t[0]]
    for r in np.atleast_1d(spl.roots(extrapolate=False)):
        if t[0] < r < t[-1]:
            cuts.append(float(r))
    cuts.append(t[-1])
    cuts = np.array(sorted(cuts))
    if anti_of is None:
        anti = spl.antiderivative()
        seg = np.diff(anti(cuts))
    else:
        src = CubicSpline(t, anti_of)
        seg = np.diff(src(cuts))
    return float(np.sum(np.abs(seg)))


def design_filter(
    T0: float = 2.0,
    trunc_tol: float = 1e-8,
    rolloff: str = "bump",
    dt: float = 1.0 / 64.0,
) -> FilterSpec:
    """Design a kernel whose truncation tail stays below trunc_tol.

    Parameters
    ----------
    T0 : float
        Spectral support half-width, > 1.
    trunc_tol : float
        Bound on the tail mass 2*int_W^inf |g|; this caps the truncation
        contribution to any sup reconstruction error since |q_n| <= 1.
    rolloff : str
        Taper profile name, see taper_profiles().
    dt : float
        Tabulation spacing of the kernel samples.

    Raises
    ------
    InvalidInputError
        For T0 <= 1, non-positive tolerances, or unknown profiles.
    ResourceError
        When the tail bound cannot be met within the tabulation cap
        (expected for the raised-cosine-squared profile at tight
        tolerances; its tail only decays like W**-2).
    """
    if not (isinstance(T0, (int, float)) and math.isfinite(T0) and T0 > 1.0):
        raise InvalidInputError(f"T0 must be > 1, got {T0!r}")
    if not (trunc_tol > 0.0 and math.isfinite(trunc_tol)):
        raise InvalidInputError(f"trunc_tol must be positive, got {trunc_tol!r}")
    if not (0.0 < dt <= 0.25):
        raise InvalidInputError(f"dt must lie in (0, 0.25], got {dt!r}")
    try:
        phi = taper_profiles()[rolloff]
    except KeyError:
        raise InvalidInputError(
            f"unknown rolloff {rolloff!r}; choose from {sorted(taper_profiles())}"
        ) from None

    best = math.inf
    for w_cap in _W_STAGES:
        n_t = int(round(w_cap / dt)) + 1
        t = np.arange(n_t) * dt
        g, g1, g2 = _inverse_transforms(T0, phi, t)

        # reverse cumulative trapezoid of |g|: tail(i) = int_{t_i}^{cap} |g|
        a = np.abs(g)
        seg = 0.5 * dt * (a[:-1] + a[1:])
        tail = np.concatenate((np.cumsum(seg[::-1])[::-1], [0.0]))
        two_units = max(int(round(2.0 / dt)), 1)
        beyond = 2.0 * float(np.max(a[-two_units:])) * w_cap
        total = 2.0 * tail + beyond

        i_min = int(round(_W_MIN / dt))
        ok = np.nonzero(total[i_min:] <= trunc_tol)[0]
        best = min(best, float(np.min(total[i_min:])))
        if ok.size:
            i = i_min + int(ok[0])
            t, g, g1, g2 = t[: i + 1], g[: i + 1], g1[: i + 1], g2[: i + 1]
            g_l1 = 2.0 * _l1_by_sign_splits(t, g)
            g1_l1 = 2.0 * _l1_by_sign_splits(t, g1, anti_of=g)
            g2_l1 = 2.0 * _l1_by_sign_splits(t, g2, anti_of=g1)
            return FilterSpec(
                T0=float(T0), rolloff=rolloff, dt=float(dt), W=float(t[-1]),
                trunc_tol=float(trunc_tol), tail_bound=float(total[i]),
                g_l1=g_l1, g1_l1=g1_l1, g2_l1=g2_l1,
                t_tab=t, g_tab=g, g1_tab=g1, g2_tab=g2,
            )
    raise ResourceError(
        f"tail bound {trunc_tol!r} unreachable within half-width {_W_STAGES[-1]!r} "
        f"(best achievable {best!r}); the {rolloff!r} taper decays too slowly"
    )
