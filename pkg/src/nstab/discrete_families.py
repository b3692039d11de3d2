"""Distributions on {0, 1, 2, ...} obtained by restricting a survival function to integers.

For a completely monotone survival function ``m`` (a Laplace transform) the
function ``F(j) = P(X < j) = 1 - m(j)`` is the distribution function of a
mixture of geometric laws on {0, 1, ...}. The semi-families qualify when
``alpha < 1``; the exponential base gives the geometric law with
``theta = exp(-rate)``.

``cdf`` and ``sf`` accept any real ``x >= 0`` and use the continuous
extension ``m(x)``; stability checks need them at the non-integer points
``c * j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._numeric import INT_CAP, as_output, open_uniform
from .continuous import Exponential, GeneralizedSemiPareto, SemiWeibull
from .errors import DomainError, NonnegativityError, ParameterError, SamplerOverflowError

__all__ = ["DiscretizedFamily", "geometric_family", "discrete_cdf", "discrete_pmf", "sample_disc"]

_NEG_TOL = 1e-14
_SWEEP_TAIL = 1e-10
_SWEEP_DENSE = 10**5


@dataclass(frozen=True)
class DiscretizedFamily:
    """Integer restriction of a continuous survival function.

    Parameters
    ----------
    base : Exponential, SemiWeibull, GeneralizedSemiPareto or SemiPareto
        The continuous family whose survival function plays the role of
        ``m``. Semi-families need ``alpha < 1``.
    """

    base: object

    def __post_init__(self):
        if not isinstance(self.base, (Exponential, SemiWeibull, GeneralizedSemiPareto)):
            raise ParameterError(
                f"cannot discretize {type(self.base).__name__}; expected exponential or a semi-family"
            )
        if not isinstance(self.base, Exponential) and not self.base.hazard.alpha < 1.0:
            raise ParameterError("discretized semi-families require alpha < 1")
        if not isinstance(self.base, Exponential) and self.base.hazard.eps != 0.0:
            self._sweep_nonnegativity()

    @property
    def name(self):
        return "discrete-" + self.base.name

    @property
    def params(self):
        return dict(self.base.params)

    def describe(self):
        return f"discrete {self.base.describe()}"

    def sf(self, x):
        """``m(x)`` for real ``x >= 0``, with ``m(0) = 1``."""
        arr = np.asarray(x, dtype=float)
        if np.any(~(arr >= 0.0)):
            raise DomainError("argument must be nonnegative")
        out = np.ones(arr.shape)
        pos = arr > 0.0
        if np.any(pos):
            out[pos] = self.base.sf(arr[pos])
        return as_output(out, x)

    def cdf(self, x):
        """``P(X < x) = 1 - m(x)`` (continuous extension off the integers)."""
        arr = np.asarray(x, dtype=float)
        if np.any(~(arr >= 0.0)):
            raise DomainError("argument must be nonnegative")
        out = np.zeros(arr.shape)
        pos = arr > 0.0
        if np.any(pos):
            out[pos] = self.base.cdf(arr[pos])
        return as_output(out, x)

    def pmf(self, j):
        """``P(X = j) = m(j) - m(j + 1)``."""
        arr = np.asarray(j)
        if np.any(arr < 0) or np.any(arr != np.floor(arr)):
            raise DomainError("pmf index must be a nonnegative integer")
        arr = arr.astype(float)
        out = self.sf(arr) - self.sf(arr + 1.0)
        if np.any(out < -_NEG_TOL):
            bad = np.asarray(arr)[np.asarray(out) < -_NEG_TOL]
            raise NonnegativityError(f"negative mass at j = {bad.reshape(-1)[:5].tolist()}")
        return as_output(np.maximum(out, 0.0), j)

    def quantile_index(self, level):
        """Smallest ``j`` with ``m(j + 1) < level``, for survival levels in (0, 1].

        Returned as a float array of integer values, so tails beyond the
        int64 range stay representable.
        """
        level = np.asarray(level, dtype=float)
        x = np.where(level >= 1.0, 0.0, self.base.isf(np.clip(level, 1e-300, np.nextafter(1.0, 0.0))))
        j = np.floor(x)
        exact = j < 2.0**52
        # correct the floating inverse by one step either way
        step_down = exact & (j > 0) & (self.sf(j) < level)
        j = np.where(step_down, j - 1.0, j)
        step_up = exact & (self.sf(j + 1.0) >= level)
        return np.where(step_up, j + 1.0, j)

    def sample(self, rng, size=None):
        """Inverse transform: ``X = min{j : m(j + 1) < V}`` with ``V`` uniform."""
        v = open_uniform(rng, 1 if size is None else size)
        draws = self.quantile_index(v)
        if np.any(draws >= INT_CAP):
            raise SamplerOverflowError("discretized draw exceeded the integer cap 2**62", cap=INT_CAP)
        draws = draws.astype(np.int64)
        return int(draws.reshape(-1)[0]) if size is None else draws

    def _sweep_nonnegativity(self):
        # psi >= exp(-|eps|) * x**alpha, so the pure-power quantile scaled by
        # exp(|eps| / alpha) bounds the true one without inverting psi
        h = self.base.hazard
        envelope = replace(self.base, hazard=replace(h, eps=0.0, phase=0.0))
        top = envelope.isf(_SWEEP_TAIL) * math.exp(abs(h.eps) / h.alpha)
        dense = np.arange(0, int(min(top, _SWEEP_DENSE)) + 1, dtype=float)
        points = [dense]
        if top > _SWEEP_DENSE:
            sparse = np.unique(np.floor(np.geomspace(_SWEEP_DENSE, min(top, 1e300), 2000)))
            points.append(sparse)
        self.pmf(np.concatenate(points))


def geometric_family(theta):
    """Geometric law on {0, 1, ...} with ``P(X >= j) = theta**j``."""
    if not 0.0 < theta < 1.0:
        raise ParameterError(f"theta must lie in (0, 1), got {theta}")
    return DiscretizedFamily(Exponential(rate=math.log(1.0 / theta)))


def discrete_cdf(d, j):
    return d.cdf(j)


def discrete_pmf(d, j):
    return d.pmf(j)


def sample_disc(d, rng, size=None):
    return d.sample(rng, size)
