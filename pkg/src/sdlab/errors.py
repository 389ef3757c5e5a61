"""Error taxonomy shared by the whole package.

Every failure mode maps to one exception type so callers (and the CLI
exit-code table) can dispatch on class alone:

  InvalidInputError            bad argument values, usage-level mistakes
  DivergenceError              state sequence left the finite/bounded regime
  InsufficientDataError        not enough samples/points for the request
  InfeasibleError              a parameter bound is violated; names the bound
  NoSolutionError              an inverse map has no admissible solution
  CoverageError                requested evaluation outside supported window
  ResourceError                a tolerance is unreachable within fixed caps
  DegenerateConfigurationError search precondition fails at the trivial point
"""

from __future__ import annotations


class SdlabError(Exception):
    """Base class for package errors."""


class InvalidInputError(SdlabError, ValueError):
    """Argument outside its documented domain."""


class DivergenceError(SdlabError):
    """State sequence diverged.

    Attributes
    ----------
    step : int
        1-based step index at which divergence was detected.
    u, v : float
        Last finite state pair (nan when the caller tracked none).
    trajectory : object or None
        Partial trajectory up to the divergence step, when available.
    """

    def __init__(self, message, step, u=float("nan"), v=float("nan"),
                 trajectory=None):
        super().__init__(message)
        self.step = int(step)
        self.u = float(u)
        self.v = float(v)
        self.trajectory = trajectory


class InsufficientDataError(SdlabError, ValueError):
    """Too few data points for the requested computation."""


class InfeasibleError(SdlabError):
    """A required parameter inequality is violated.

    Attributes
    ----------
    bound : str
        Short name of the violated bound, one of
        {"lowerc", "lambda2", "eps2", "C2", "gamma-range"}.
    """

    def __init__(self, bound, message):
        super().__init__(message)
        self.bound = str(bound)


class NoSolutionError(SdlabError, ValueError):
    """Inverse mapping has no solution in the admissible interval."""


class CoverageError(SdlabError, ValueError):
    """Evaluation point not covered by the available sample window."""


class ResourceError(SdlabError):
    """Requested tolerance unreachable within the configured resource cap."""


class DegenerateConfigurationError(SdlabError):
    """A search cannot start because its trivial endpoint already fails."""
