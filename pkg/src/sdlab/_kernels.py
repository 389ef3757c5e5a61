"""Hot inner loops for the modulator recursions.

The loops are compiled with numba when it is importable and fall back to
the same source executed as plain Python otherwise.  fastmath stays off:
IEEE evaluation order is part of the contract (bit-identical trajectories
across runs, exact state identities up to one rounding).

Quantizer encoding shared by all kernels: kind 0 is the two-level sign
quantizer (ties at 0 go to +1), kind 1 is the three-level quantizer with
dead band |x| < tau mapping to 0.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def deco(fn):
            return fn

        return deco


KIND_SIGN = 0
KIND_TRILEVEL = 1

# run() guard: state magnitudes beyond this count as divergence
HARD_BOUND = 1.0e12


@njit(cache=True, nogil=True)
def run_fill(lam1, lam2, gamma, kind, tau, f, q_out, u_out, v_out, bound):
    """Fold the two-gain recursion over f, recording every step.

    Starts from u = v = 0.  Writes q, u, v per step and returns -1 on
    completion, or the 0-based step at which |u| or |v| left [0, bound]
    (a non-finite state fails the same test).
    """
    u = 0.0
    v = 0.0
    for i in range(f.shape[0]):
        s = u + gamma * v
        if kind == KIND_TRILEVEL and (-tau < s < tau):
            q = 0.0
        elif s >= 0.0:
            q = 1.0
        else:
            q = -1.0
        w = lam1 * u + (f[i] - q)
        v = w + lam2 * v
        u = w
        q_out[i] = q
        u_out[i] = u
        v_out[i] = v
        if not (abs(u) <= bound and abs(v) <= bound):
            return i
    return -1


@njit(cache=True, nogil=True)
def probe_const(lam1, lam2, gamma, kind, tau, beta, n_steps, bound):
    """Run n_steps with constant input f = beta, storing nothing.

    Returns (diverged_at, vmax): diverged_at is the 0-based step where
    |v| first exceeded bound (or the state went non-finite), -1 if the
    run stayed bounded; vmax is the largest |v| seen up to that point.
    """
    u = 0.0
    v = 0.0
    vmax = 0.0
    for i in range(n_steps):
        s = u + gamma * v
        if kind == KIND_TRILEVEL and (-tau < s < tau):
            q = 0.0
        elif s >= 0.0:
            q = 1.0
        else:
            q = -1.0
        w = lam1 * u + (beta - q)
        v = w + lam2 * v
        u = w
        av = abs(v)
        if av > vmax:
            vmax = av
        if not (av <= bound and abs(u) <= HARD_BOUND):
            return i, vmax
    return -1, vmax


@njit(cache=True, nogil=True)
def probe_input(lam1, lam2, gamma, kind, tau, f, bound):
    """Same as probe_const but driven by a precomputed input array."""
    u = 0.0
    v = 0.0
    vmax = 0.0
    for i in range(f.shape[0]):
        s = u + gamma * v
        if kind == KIND_TRILEVEL and (-tau < s < tau):
            q = 0.0
        elif s >= 0.0:
            q = 1.0
        else:
            q = -1.0
        w = lam1 * u + (f[i] - q)
        v = w + lam2 * v
        u = w
        av = abs(v)
        if av > vmax:
            vmax = av
        if not (av <= bound and abs(u) <= HARD_BOUND):
            return i, vmax
    return -1, vmax


@njit(cache=True, nogil=True)
def first_order_fill(f, q_out, u_out):
    """Single-loop recursion q = Q(u + f), u' = u + f - q from u = 0."""
    u = 0.0
    for i in range(f.shape[0]):
        s = u + f[i]
        q = 1.0 if s >= 0.0 else -1.0
        u = u + f[i] - q
        q_out[i] = q
        u_out[i] = u
    return -1


def warm_up():
    """Trigger compilation of all kernels on tiny inputs."""
    z = np.zeros(2)
    run_fill(1.0, 1.0, 1.0, KIND_SIGN, 0.5, z, z.copy(), z.copy(), z.copy(), HARD_BOUND)
    probe_const(1.0, 1.0, 1.0, KIND_SIGN, 0.5, 0.0, 2, 1000.0)
    probe_input(1.0, 1.0, 1.0, KIND_SIGN, 0.5, z, 1000.0)
    first_order_fill(z, z.copy(), z.copy())
