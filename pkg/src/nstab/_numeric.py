"""Small numerical helpers shared across modules.

Complex inputs appear only when a generating function is sampled on a circle
for coefficient extraction. Those arrays are ordered samples along a closed
path starting on the positive real axis, and logarithms are continued along
the path (phase unwrapping) rather than taken on the principal branch. This
makes compositions of non-integer powers equal to the analytic continuation
of their real-axis values whenever such a continuation exists.
"""

import numpy as np
from scipy.special import gammaln, poch

INT_CAP = 2**62


def is_path(z):
    z = np.asarray(z)
    return np.iscomplexobj(z) and z.ndim == 1 and z.size > 1


def clog(z):
    """Logarithm, continued along the path for complex path samples."""
    z = np.asarray(z)
    if is_path(z):
        return np.log(np.abs(z)) + 1j * np.unwrap(np.angle(z))
    return np.log(z)


def clog1p(z):
    """``log(1 + z)``; accurate for small real ``z``, path-continued for complex."""
    z = np.asarray(z)
    if is_path(z):
        return clog(1.0 + z)
    return np.log1p(z)


def log_gamma_ratio(n, v):
    """Return ``log(Gamma(n + 1 - v) / Gamma(n + 1))`` for ``n >= 0``.

    Uses the Pochhammer symbol, which switches to an asymptotic series for
    large ``n`` where a difference of two log-gamma values would cancel.
    """
    n = np.asarray(n, dtype=float)
    return -np.log(poch(n + 1.0 - v, v))


def log_binom_general(x, m):
    """``log C(m + x - 1, m)`` for real ``x > 0`` and integer ``m >= 0``."""
    m = np.asarray(m, dtype=float)
    return gammaln(m + x) - gammaln(x) - gammaln(m + 1.0)


def open_uniform(rng, size=None):
    """Uniform draws on the open interval (0, 1)."""
    u = rng.random(size)
    return np.where(u == 0.0, np.nextafter(0.0, 1.0), u)


def as_output(values, like):
    """Return a Python float for scalar input, otherwise the array."""
    if np.ndim(like) == 0:
        return values.item() if isinstance(values, np.ndarray) else values
    return values
