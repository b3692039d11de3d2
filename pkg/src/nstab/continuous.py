"""Continuous distributions on (0, inf) built on a log-periodic hazard.

The semi-Weibull and (generalized) semi-Pareto families are driven by a
function ``psi`` with ``psi(x) = psi(p**(1/alpha) * x) / p``. Every solution
has the form ``x**alpha * h(log x)`` with ``h`` periodic of period
``log(1/p) / alpha``; :class:`PeriodicHazard` uses the one-harmonic choice

    h(u) = exp(eps * sin(2*pi*u / T + phase)).

Internally each family works on the log scale ``w = log x``. Quantiles are
returned as ``log x`` and distribution functions are evaluated at ``log x``,
so that compositions such as ``F(c * F^-1(s))`` never raise a computed value
to a non-integer power on the wrong branch when sampled on a complex circle.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from ._numeric import as_output, clog, clog1p, is_path, open_uniform
from .errors import ConvergenceError, DomainError, ParameterError, PathEvaluationError

__all__ = [
    "PeriodicHazard",
    "ContinuousFamily",
    "Exponential",
    "SemiWeibull",
    "GeneralizedSemiPareto",
    "SemiPareto",
    "ExtendedLogLogistic",
    "psi_eval",
    "cdf",
    "sf",
    "quantile",
    "sample_cont",
]

_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class PeriodicHazard:
    """Hazard ``psi(x) = x**alpha * exp(eps * sin(2*pi*log(x)/T + phase))``.

    Parameters
    ----------
    alpha : float
        Power exponent, ``alpha > 0``.
    p : float
        Scaling constant in (0, 1). The period in ``log x`` is
        ``T = log(1/p) / alpha``.
    eps : float
        Amplitude of the periodic factor. Monotonicity of ``psi`` requires
        ``|eps| <= log(1/p) / (2*pi)``.
    phase : float
        Phase offset in [0, 2*pi).
    """

    alpha: float
    p: float
    eps: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ParameterError(f"alpha must be positive, got {self.alpha}")
        if not 0.0 < self.p < 1.0:
            raise ParameterError(f"p must lie in (0, 1), got {self.p}")
        bound = self.eps_bound(self.p)
        if abs(self.eps) > bound * (1.0 + 1e-12):
            raise ParameterError(
                f"|eps| = {abs(self.eps)} exceeds the monotonicity bound {bound} for p = {self.p}"
            )
        if not 0.0 <= self.phase < 2.0 * math.pi:
            raise ParameterError(f"phase must lie in [0, 2*pi), got {self.phase}")

    @staticmethod
    def eps_bound(p):
        """Largest ``|eps|`` keeping ``psi`` nondecreasing: ``log(1/p) / (2*pi)``."""
        return math.log(1.0 / p) / (2.0 * math.pi)

    @property
    def period(self):
        return math.log(1.0 / self.p) / self.alpha

    @property
    def frequency(self):
        return 2.0 * math.pi / self.period

    @property
    def scale(self):
        """The contraction ``p**(1/alpha)`` under which ``psi`` scales by ``p``."""
        return self.p ** (1.0 / self.alpha)

    @property
    def is_pure_power(self):
        return self.eps == 0.0

    def __call__(self, x):
        return psi_eval(self, x)

    def log_eval(self, w):
        """``log psi(exp(w))``."""
        if self.eps == 0.0:
            return self.alpha * w
        return self.alpha * w + self.eps * np.sin(self.frequency * w + self.phase)

    def log_inverse(self, log_u):
        """Solve ``log psi(exp(w)) = log_u`` for ``w``.

        Closed form when ``eps == 0``; otherwise bisection on the bracket
        ``w0 +/- log(1/p) / alpha`` around the pure-power solution ``w0``,
        which contains the root because ``exp(-|eps|) <= h <= exp(|eps|)``.
        """
        w0 = log_u / self.alpha
        if self.eps == 0.0:
            return w0
        if np.iscomplexobj(log_u):
            raise PathEvaluationError(
                "complex evaluation of the hazard inverse needs eps == 0"
            )
        w0 = np.asarray(w0, dtype=float)
        half = math.log(1.0 / self.p) / self.alpha
        lo, hi = w0 - half, w0 + half
        g_lo = self.log_eval(lo) - log_u
        g_hi = self.log_eval(hi) - log_u
        finite = np.isfinite(w0)
        if np.any(finite & ((g_lo > 0) | (g_hi < 0))):
            raise ConvergenceError("hazard inverse: root not bracketed")
        for _ in range(_BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            below = self.log_eval(mid) < log_u
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.all((hi - lo <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(mid))) | ~finite):
                break
        else:
            raise ConvergenceError("hazard inverse: bisection did not converge")
        return np.where(finite, 0.5 * (lo + hi), w0)


def psi_eval(h, x):
    """Evaluate the hazard ``h`` at ``x > 0``."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError("hazard argument must be positive")
    with np.errstate(over="ignore"):
        return as_output(np.exp(h.log_eval(np.log(arr))), x)


class ContinuousFamily(ABC):
    """A distribution function on (0, inf).

    Subclasses implement the log-scale primitives ``_cdf_log``, ``_sf_log``,
    ``_log_quantile`` and ``_log_isf``. The public methods validate their
    arguments and work on real scalars or arrays.
    """

    name: str = ""

    # hazards overflow to inf far in the tail; the resulting 0 or 1 is exact
    def cdf(self, x):
        with np.errstate(over="ignore"):
            return as_output(self._cdf_log(self._log_arg(x)), x)

    def sf(self, x):
        """Survival ``1 - F(x)`` computed in its own closed form."""
        with np.errstate(over="ignore"):
            return as_output(self._sf_log(self._log_arg(x)), x)

    def quantile(self, s):
        """Inverse of ``cdf`` on (0, 1)."""
        return as_output(np.exp(self._log_quantile(self._prob_arg(s))), s)

    def isf(self, s):
        """Inverse of ``sf`` on (0, 1)."""
        return as_output(np.exp(self._log_isf(self._prob_arg(s))), s)

    def sample(self, rng, size=None):
        """Inverse-transform draws."""
        u = open_uniform(rng, size)
        return as_output(np.exp(self._log_isf(np.asarray(u))), u)

    @property
    def params(self):
        raise NotImplementedError

    @property
    def supports_path(self):
        """Whether the log-scale primitives accept complex path samples."""
        return True

    def describe(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"

    @staticmethod
    def _log_arg(x):
        arr = np.asarray(x, dtype=float)
        if np.any(~(arr > 0.0)):
            raise DomainError("distribution argument must be positive")
        return np.log(arr)

    @staticmethod
    def _prob_arg(s):
        arr = np.asarray(s, dtype=float)
        if np.any(~((arr > 0.0) & (arr < 1.0))):
            raise DomainError("probability must lie in the open interval (0, 1)")
        return arr

    @abstractmethod
    def _cdf_log(self, w): ...

    @abstractmethod
    def _sf_log(self, w): ...

    @abstractmethod
    def _log_quantile(self, s): ...

    @abstractmethod
    def _log_isf(self, s): ...


class _CumulativeHazardFamily(ContinuousFamily):
    """``F = 1 - exp(-H)`` with ``log H`` given as a function of ``log x``."""

    @abstractmethod
    def _log_hazard(self, w): ...

    @abstractmethod
    def _log_hazard_inverse(self, log_u): ...

    def _cdf_log(self, w):
        return -np.expm1(-np.exp(self._log_hazard(w)))

    def _sf_log(self, w):
        return np.exp(-np.exp(self._log_hazard(w)))

    def _log_quantile(self, s):
        return self._log_hazard_inverse(clog(-clog1p(-s)))

    def _log_isf(self, s):
        return self._log_hazard_inverse(clog(-clog(s)))


@dataclass(frozen=True)
class Exponential(_CumulativeHazardFamily):
    rate: float = 1.0
    name = "exponential"

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ParameterError(f"rate must be positive, got {self.rate}")

    @property
    def params(self):
        return {"rate": self.rate}

    def _log_hazard(self, w):
        return math.log(self.rate) + w

    def _log_hazard_inverse(self, log_u):
        return log_u - math.log(self.rate)


@dataclass(frozen=True)
class SemiWeibull(_CumulativeHazardFamily):
    """``F(x) = 1 - exp(-psi(x))``; reduces to the Weibull law when ``eps == 0``."""

    hazard: PeriodicHazard
    name = "semi-weibull"

    @property
    def params(self):
        return _hazard_params(self.hazard)

    @property
    def supports_path(self):
        return self.hazard.is_pure_power

    def _log_hazard(self, w):
        return self.hazard.log_eval(w)

    def _log_hazard_inverse(self, log_u):
        return self.hazard.log_inverse(log_u)


@dataclass(frozen=True)
class GeneralizedSemiPareto(ContinuousFamily):
    """``F(x) = 1 - (1 + psi(x))**(-beta)`` with ``beta > 0``."""

    hazard: PeriodicHazard
    beta: float = 1.0
    name = "generalized-semi-pareto"

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ParameterError(f"beta must be positive, got {self.beta}")

    @property
    def params(self):
        return {**_hazard_params(self.hazard), "beta": self.beta}

    @property
    def supports_path(self):
        return self.hazard.is_pure_power

    def _log_sf(self, w):
        return -self.beta * clog1p(np.exp(self.hazard.log_eval(w)))

    def _cdf_log(self, w):
        return -np.expm1(self._log_sf(w))

    def _sf_log(self, w):
        return np.exp(self._log_sf(w))

    def _log_quantile(self, s):
        return self.hazard.log_inverse(clog(np.expm1(-clog1p(-s) / self.beta)))

    def _log_isf(self, s):
        return self.hazard.log_inverse(clog(np.expm1(-clog(s) / self.beta)))


@dataclass(frozen=True)
class SemiPareto(GeneralizedSemiPareto):
    """Generalized semi-Pareto with ``beta = 1``."""

    beta: float = 1.0
    name = "semi-pareto"

    def __post_init__(self):
        if self.beta != 1.0:
            raise ParameterError("SemiPareto has beta fixed at 1")

    @property
    def params(self):
        return _hazard_params(self.hazard)


@dataclass(frozen=True)
class ExtendedLogLogistic(ContinuousFamily):
    """``F(x) = (1 + x**(-alpha))**(-1/k)`` for integer ``k >= 1``."""

    alpha: float
    k: int = 1
    name = "extended-log-logistic"

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ParameterError(f"alpha must be positive, got {self.alpha}")
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def params(self):
        return {"alpha": self.alpha, "k": self.k}

    def _log_cdf(self, w):
        return -clog1p(np.exp(-self.alpha * w)) / self.k

    def _cdf_log(self, w):
        return np.exp(self._log_cdf(w))

    def _sf_log(self, w):
        return -np.expm1(self._log_cdf(w))

    def _log_quantile(self, s):
        return -clog(np.expm1(-self.k * clog(s))) / self.alpha

    def _log_isf(self, s):
        return -clog(np.expm1(-self.k * clog1p(-s))) / self.alpha


def _hazard_params(h):
    return {"alpha": h.alpha, "p": h.p, "eps": h.eps, "phase": h.phase}


def cdf(f, x):
    return f.cdf(x)


def sf(f, x):
    return f.sf(x)


def quantile(f, s):
    return f.quantile(s)


def sample_cont(f, rng, size=None):
    return f.sample(rng, size)
