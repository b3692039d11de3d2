"""Recover the generating function forced by a stability identity and test it.

Under max stability ``Q(s) = F(c * F^-1(s))``; under min stability
``Q(s) = R(R^-1(s) / c)`` with ``R = 1 - F``. These define a candidate
``Q`` for any ``(F, c)``. Whether it is a genuine generating function is
decided numerically: its Taylor coefficients are estimated by a discrete
Cauchy integral on a circle of radius ``r < 1``, then checked for
nonnegativity, normalization and for how well the truncated series
reproduces the function on the real segment ``[0, r]``.

Functions that are not power series in ``s`` (a branch point at the origin,
as with ``s**1.5``) do not return to their starting value after analytic
continuation once around the circle. The extraction sees a jump, and the
reconstruction error on ``[0, r]`` is of order one rather than round-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._numeric import clog
from .continuous import ContinuousFamily
from .discrete_families import DiscretizedFamily
from .errors import DomainError, InstabilityError, ParameterError, PathEvaluationError
from .stability import Mode

__all__ = [
    "PgfVerdict",
    "PgfEstimate",
    "implied_max_pgf",
    "implied_min_pgf",
    "implied_pgf",
    "default_radius",
    "extract_coeffs",
    "reconstruction_error",
    "validate_pgf",
    "estimate_pgf",
    "recover_pgf",
    "integer_power_check",
    "lemma21_check",
    "power_composition",
]

TOL_NEG = 1e-8
TOL_SUM = 1e-6
TOL_RECON = 1e-7
# smallest r**n_max accepted by extract_coeffs; below it round-off, amplified
# by r**-n, swamps the coefficients
MIN_SCALE = 1e-10
# default radius keeps r**n_max at this level
TARGET_SCALE = 1e-6


@dataclass(frozen=True)
class PgfVerdict:
    valid: bool
    reason: str | None = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "ValidPGF" if self.valid else f"Invalid({self.reason})"


@dataclass
class PgfEstimate:
    coeffs: np.ndarray
    radius: float
    recon_error: float
    mass: float
    verdict: PgfVerdict
    tolerances: dict = field(default_factory=dict)


def _family_base(f):
    return f.base if isinstance(f, DiscretizedFamily) else f


def _check_c(c):
    if not 0.0 < c < 1.0:
        raise ParameterError(f"c must lie in (0, 1), got {c}")


def _prepare(f, s):
    f = _family_base(f)
    if not isinstance(f, ContinuousFamily):
        raise ParameterError(f"unsupported family {f!r}")
    arr = np.asarray(s)
    if np.iscomplexobj(arr):
        if not f.supports_path:
            raise PathEvaluationError(f"{f.describe()} cannot be evaluated on a complex path")
        return f, arr, None
    arr = arr.astype(float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError("s must lie in [0, 1]")
    inner = (arr > 0.0) & (arr < 1.0)
    return f, arr, inner


def _finish(values, arr, inner, at_zero, at_one, like):
    if inner is None:
        return values
    out = np.where(arr <= 0.0, at_zero, np.where(arr >= 1.0, at_one, 0.0))
    out[inner] = values
    return out.item() if np.ndim(like) == 0 else out


def implied_max_pgf(f, c, s):
    """``F(c * F^-1(s))``, the generating function max stability would require.

    Real ``s`` in [0, 1] (the endpoints by their limits 0 and 1) or complex
    samples ordered along a closed path starting on the positive real axis.
    """
    _check_c(c)
    f, arr, inner = _prepare(f, s)
    if inner is None:
        return f._cdf_log(f._log_quantile(arr) + math.log(c))
    vals = f._cdf_log(f._log_quantile(np.atleast_1d(arr)[np.atleast_1d(inner)]) + math.log(c))
    return _finish(vals, np.atleast_1d(arr), np.atleast_1d(inner), 0.0, 1.0, s)


def implied_min_pgf(f, c, s):
    """``R(R^-1(s) / c)``, the generating function min stability would require."""
    _check_c(c)
    f, arr, inner = _prepare(f, s)
    if inner is None:
        return f._sf_log(f._log_isf(arr) - math.log(c))
    vals = f._sf_log(f._log_isf(np.atleast_1d(arr)[np.atleast_1d(inner)]) - math.log(c))
    return _finish(vals, np.atleast_1d(arr), np.atleast_1d(inner), 0.0, 1.0, s)


def implied_pgf(f, c, mode):
    """The implied generating function as a callable of ``s``."""
    mode = Mode(mode)
    fn = implied_max_pgf if mode is Mode.MAX else implied_min_pgf
    return lambda s: fn(f, c, s)


def default_radius(n_max):
    """Radius with ``r**n_max`` near 1e-6, never below 0.5."""
    return float(min(0.95, max(0.5, TARGET_SCALE ** (1.0 / max(n_max, 1)))))


def _circle(r, m):
    theta = 2.0 * np.pi * np.arange(m) / m
    return r * np.exp(1j * theta)


def extract_coeffs(g, r=None, n_max=50, m=None):
    """Estimate Taylor coefficients ``a_0..a_n_max`` of ``g`` by a discrete Cauchy integral.

    ``a_n ~ (1 / (M r**n)) * sum_k g(r w**k) w**(-n k)`` with ``w = exp(2 pi i / M)``.
    ``g`` receives the ``M`` circle points as one complex array in order of
    increasing angle, starting at ``s = r``. The aliasing error is at most
    ``r**(M - n) / (1 - r**M)`` for a genuine generating function.

    Raises
    ------
    InstabilityError
        If ``r**n_max < 1e-10``; round-off in ``g`` is amplified by ``r**-n``.
    """
    if r is None:
        r = default_radius(n_max)
    if not 0.0 < r < 1.0:
        raise ParameterError(f"radius must lie in (0, 1), got {r}")
    if r**n_max < MIN_SCALE:
        raise InstabilityError(
            f"r**n_max = {r**n_max:.3g} is below {MIN_SCALE:g}; lower n_max or raise r"
        )
    if m is None:
        m = 8 * n_max
    m = max(int(m), 4 * n_max, 8)
    values = np.asarray(g(_circle(r, m)), dtype=complex)
    fourier = np.fft.fft(values) / m
    n = np.arange(n_max + 1)
    return np.real(fourier[: n_max + 1]) / r**n


def reconstruction_error(g, coeffs, r, points=101):
    """Sup over ``s`` in ``[0, r]`` of ``|sum a_n s**n - g(s)|`` (real ``s``)."""
    s = np.linspace(0.0, r, points)
    series = np.polynomial.polynomial.polyval(s, coeffs)
    return float(np.max(np.abs(series - np.asarray(g(s), dtype=float))))


def validate_pgf(coeffs, recon_error, mass=None, tol_neg=TOL_NEG, tol_sum=TOL_SUM,
                 tol_recon=TOL_RECON):
    """Decide whether estimated coefficients describe a generating function.

    Conditions, checked in this order: the truncated series reproduces the
    function (``recon_error < tol_recon``); every coefficient is at least
    ``-tol_neg``; the partial sum does not exceed ``1 + tol_sum``; and the
    total mass is within ``tol_sum`` of one. ``mass`` is the function's value
    at ``s = 1``; heavy-tailed laws such as Sibuya leave a large mass beyond
    any practical truncation, so their coefficient sum cannot stand in for
    it. Without ``mass`` the coefficient sum is used.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    partial = float(np.sum(coeffs))
    if mass is None:
        mass = partial
    if not recon_error < tol_recon:
        return PgfVerdict(False, f"reconstruction error {recon_error:.3g} >= {tol_recon:g}")
    if np.any(coeffs < -tol_neg):
        n = int(np.argmax(coeffs < -tol_neg))
        return PgfVerdict(False, f"negative coefficient a_{n} = {coeffs[n]:.3g}")
    if partial > 1.0 + tol_sum:
        return PgfVerdict(False, f"coefficient sum {partial:.6g} exceeds 1")
    if abs(mass - 1.0) > tol_sum:
        return PgfVerdict(False, f"total mass {mass:.6g} differs from 1")
    return PgfVerdict(True)


def estimate_pgf(g, n_max=64, r=None, m=None, tol_neg=TOL_NEG, tol_sum=TOL_SUM,
                 tol_recon=TOL_RECON):
    """Extract coefficients of ``g`` and validate them.

    ``g`` must accept both complex circle samples (see :func:`extract_coeffs`)
    and real arrays in [0, 1]; ``g(1)`` is taken as the total mass.
    """
    if r is None:
        r = default_radius(n_max)
    coeffs = extract_coeffs(g, r, n_max, m)
    err = reconstruction_error(g, coeffs, r)
    mass = float(np.asarray(g(np.array([1.0])), dtype=float)[0])
    tols = {"tol_neg": tol_neg, "tol_sum": tol_sum, "tol_recon": tol_recon}
    verdict = validate_pgf(coeffs, err, mass, **tols)
    return PgfEstimate(coeffs, r, err, mass, verdict, tols)


def recover_pgf(f, c, mode, n_max=50, r=None, **tols):
    """Estimate and validate the generating function implied by ``(f, c, mode)``."""
    return estimate_pgf(implied_pgf(f, c, mode), n_max=n_max, r=r, **tols)


def power_composition(law, t):
    """The function ``s -> Q(s**t)`` with ``s**t`` continued along complex paths."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")

    def g(s):
        s = np.asarray(s)
        if np.iscomplexobj(s):
            st = np.exp(t * clog(s))
            return law._pgf(st)
        return law.pgf(s**t)

    return g


def integer_power_check(law, t, n_max=64, r=None):
    """Test whether ``Q(s**t)`` is a generating function.

    A valid verdict is expected exactly for positive integer ``t``.
    """
    return estimate_pgf(power_composition(law, t), n_max=n_max, r=r)


#: name used by the published interface
lemma21_check = integer_power_check
