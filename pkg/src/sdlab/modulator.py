"""Two-integrator feedback quantizers and their exact algebraic checks.

The state machine implemented here is the double-loop recursion

    q_n = Q(u_{n-1} + gamma * v_{n-1})
    u_n = lambda1 * u_{n-1} + f_n - q_n
    v_n = lambda1 * u_{n-1} + lambda2 * v_{n-1} + f_n - q_n

driven from the zero state.  lambda1 = lambda2 = 1 gives the standard
double-loop modulator; gains above 1 amplify the state at each step to
break periodic output.  Two exact identities tie the pieces together and
are exposed for verification:

    u_n = v_n - lambda2 * v_{n-1}                                (n >= 1)
    f_n - q_n = v_n - (lambda1 + lambda2) v_{n-1}
                + lambda1 lambda2 v_{n-2}                        (n >= 2)

Both hold to rounding for every trajectory this module produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DivergenceError, InsufficientDataError, InvalidInputError

__all__ = [
    "QuantizerKind",
    "SchemeParams",
    "ModulatorState",
    "Trajectory",
    "quantize",
    "step",
    "run",
    "residual_identity",
    "kth_difference",
]


@dataclass(frozen=True)
class QuantizerKind:
    """Quantizer selector: "sign" (two levels) or "trilevel" (three levels).

    The sign quantizer maps x >= 0 to +1 and x < 0 to -1.  The trilevel
    quantizer returns 0 for |x| < deadband and otherwise behaves like the
    sign quantizer, so ties at +-deadband resolve away from 0.
    """

    tag: str = "sign"
    deadband: float = 0.5

    def __post_init__(self):
        if self.tag not in ("sign", "trilevel"):
            raise InvalidInputError(f"unknown quantizer tag {self.tag!r}")
        if self.tag == "trilevel" and not (math.isfinite(self.deadband) and self.deadband >= 0.0):
            raise InvalidInputError("trilevel deadband must be finite and >= 0")

    @property
    def kind_code(self) -> int:
        return _kernels.KIND_TRILEVEL if self.tag == "trilevel" else _kernels.KIND_SIGN


@dataclass(frozen=True)
class SchemeParams:
    """Gains and feedback multiplier of the double-loop recursion.

    lambda1 and lambda2 must be >= 1 (the one-parameter family is the
    restriction lambda2 = 1); gamma must be positive.
    """

    lambda1: float = 1.0
    lambda2: float = 1.0
    gamma: float = 1.0
    quantizer: QuantizerKind = field(default_factory=QuantizerKind)

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "gamma"):
            x = getattr(self, name)
            if not math.isfinite(x):
                raise InvalidInputError(f"{name} must be finite")
        if self.lambda1 < 1.0 or self.lambda2 < 1.0:
            raise InvalidInputError("lambda1 and lambda2 must be >= 1")
        if self.gamma <= 0.0:
            raise InvalidInputError("gamma must be > 0")


@dataclass(frozen=True)
class ModulatorState:
    """Integrator pair (u, v) after n steps; the run origin is (0, 0)."""

    u: float = 0.0
    v: float = 0.0
    n: int = 0


@dataclass(frozen=True)
class Trajectory:
    """Step-indexed history of one run.

    Arrays hold steps 1..n_steps; the implicit step-0 state is (0, 0).
    """

    params: SchemeParams
    f: np.ndarray
    q: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def n_steps(self) -> int:
        return int(self.f.shape[0])

    def v_with_origin(self) -> np.ndarray:
        """v_0..v_N as one array (v_0 = 0)."""
        return np.concatenate(([0.0], self.v))


def quantize(kind: QuantizerKind, x: float) -> int:
    """Quantize one value to a level in {-1, 0, +1}.

    Parameters
    ----------
    kind : QuantizerKind
    x : float
        Must be finite.

    Returns
    -------
    int
        The output level.  Q(0) = +1 for the sign kind; the trilevel kind
        returns 0 iff |x| < deadband.
    """
    if not math.isfinite(x):
        raise InvalidInputError("quantizer input must be finite")
    if kind.tag == "trilevel" and abs(x) < kind.deadband:
        return 0
    return 1 if x >= 0.0 else -1


def step(params: SchemeParams, state: ModulatorState, f: float):
    """Advance one step.

    Returns
    -------
    (ModulatorState, int)
        The new state and the emitted level.

    Raises
    ------
    DivergenceError
        If the new state is non-finite or exceeds the hard bound.
    """
    if not (math.isfinite(state.u) and math.isfinite(state.v)):
        raise InvalidInputError("state must be finite")
    q = quantize(params.quantizer, state.u + params.gamma * state.v)
    # shared subexpression keeps u' = v' - lambda2*v exact in floats
    w = params.lambda1 * state.u + (f - q)
    v = w + params.lambda2 * state.v
    u = w
    n = state.n + 1
    if not (abs(u) <= _kernels.HARD_BOUND and abs(v) <= _kernels.HARD_BOUND):
        lu, lv = (u, v) if (math.isfinite(u) and math.isfinite(v)) else (state.u, state.v)
        raise DivergenceError(f"state diverged at step {n}", step=n, u=lu, v=lv)
    return ModulatorState(u=u, v=v, n=n), q


def _as_input_array(input, n_steps: int) -> np.ndarray:
    if np.isscalar(input):
        return np.full(n_steps, float(input))
    if hasattr(input, "__len__") or isinstance(input, np.ndarray):
        arr = np.asarray(input, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] < n_steps:
            raise InvalidInputError(
                f"input must yield {n_steps} values, got shape {arr.shape}"
            )
        return np.ascontiguousarray(arr[:n_steps])
    # generic iterable
    try:
        arr = np.fromiter(input, dtype=np.float64, count=n_steps)
    except ValueError as exc:
        raise InvalidInputError(f"input must yield {n_steps} values") from exc
    return arr


def run(params: SchemeParams, input, n_steps: int) -> Trajectory:
    """Fold `step` over the input from the zero state, recording history.

    Parameters
    ----------
    params : SchemeParams
    input : scalar, sequence, or iterable
        A scalar is broadcast; anything else must yield n_steps values.
    n_steps : int

    Returns
    -------
    Trajectory

    Raises
    ------
    DivergenceError
        Carries the 1-based step index, the last finite state, and the
        partial trajectory up to the failing step.
    """
    if n_steps < 0:
        raise InvalidInputError("n_steps must be >= 0")
    f = _as_input_array(input, n_steps)
    if f.size and not np.all(np.isfinite(f)):
        raise InvalidInputError("input values must be finite")
    q = np.empty(n_steps)
    u = np.empty(n_steps)
    v = np.empty(n_steps)
    kq = params.quantizer
    bad = _kernels.run_fill(
        params.lambda1, params.lambda2, params.gamma,
        kq.kind_code, kq.deadband, f, q, u, v, _kernels.HARD_BOUND,
    )
    if bad >= 0:
        part = Trajectory(
            params=params, f=f[: bad + 1].copy(), q=q[: bad + 1].astype(np.int64),
            u=u[: bad + 1].copy(), v=v[: bad + 1].copy(),
        )
        iu, iv = (u[bad], v[bad])
        if not (math.isfinite(iu) and math.isfinite(iv)):
            iu, iv = (u[bad - 1], v[bad - 1]) if bad > 0 else (0.0, 0.0)
        raise DivergenceError(
            f"state diverged at step {bad + 1}",
            step=bad + 1, u=iu, v=iv, trajectory=part,
        )
    return Trajectory(params=params, f=f, q=q.astype(np.int64), u=u, v=v)


def residual_identity(traj: Trajectory) -> float:
    """Largest residual of the exact u-elimination identity.

    Evaluates max over n >= 2 of

        | f_n - q_n - (v_n - (l1 + l2) v_{n-1} + l1 l2 v_{n-2}) |

    which is 0 in exact arithmetic for every stored trajectory.

    Raises
    ------
    InsufficientDataError
        If the trajectory has fewer than 3 steps.
    """
    if traj.n_steps < 3:
        raise InsufficientDataError("residual check needs at least 3 steps")
    l1, l2 = traj.params.lambda1, traj.params.lambda2
    vf = traj.v_with_origin()               # v_0 .. v_N
    vn = vf[2:]                             # v_n for n = 2..N
    vm1 = vf[1:-1]
    vm2 = vf[:-2]
    lhs = traj.f[1:] - traj.q[1:]
    res = lhs - (vn - (l1 + l2) * vm1 + (l1 * l2) * vm2)
    return float(np.max(np.abs(res)))


def kth_difference(seq, K: int, n: int) -> float:
    """Kth-order backward difference sum_{l=0}^{K} (-1)^l C(K,l) seq[n-l].

    Raises
    ------
    IndexError
        If n < K (not enough history).
    """
    if K < 0:
        raise InvalidInputError("K must be >= 0")
    if n < K:
        raise IndexError(f"need n >= K, got n={n}, K={K}")
    seq = np.asarray(seq, dtype=np.float64)
    total = 0.0
    for ell in range(K + 1):
        total += (-1.0) ** ell * math.comb(K, ell) * seq[n - ell]
    return float(total)
