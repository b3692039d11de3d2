"""Integer-valued sample-size laws N with their generating functions.

Each law exposes ``pgf``, ``pmf``, ``survival`` (``P(N > n)``) and an exact
``sample`` method. All methods accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats
from scipy.special import gammaln

from ._numeric import INT_CAP, as_output, log_binom_general, log_gamma_ratio, open_uniform
from .errors import DomainError, ParameterError, SamplerOverflowError

__all__ = [
    "DiscreteLaw",
    "Sibuya",
    "Harris",
    "Geometric",
    "Degenerate",
    "pgf",
    "pmf",
    "sample",
]


def _check_pgf_arg(s):
    s = np.asarray(s)
    if np.iscomplexobj(s):
        if np.any(np.abs(s) > 1.0):
            raise DomainError("pgf argument must satisfy |s| <= 1")
        return s
    s = s.astype(float)
    if np.any(np.isnan(s)) or np.any((s < 0.0) | (s > 1.0)):
        raise DomainError("pgf argument must lie in [0, 1]")
    return s


def _check_index(n):
    n = np.asarray(n)
    if n.dtype.kind == "f":
        if np.any(n != np.floor(n)):
            raise DomainError("index must be integer valued")
        n = n.astype(np.int64)
    return n


class DiscreteLaw(ABC):
    """Base class for the sample-size laws."""

    name: str = ""
    #: smallest point of the support (0 for I0 laws, 1 for I1 laws)
    support_min: int = 1

    def pgf(self, s):
        """Evaluate the probability generating function ``Q(s) = E[s**N]``.

        Real ``s`` must lie in [0, 1]. Complex ``s`` with ``|s| <= 1`` is
        accepted for coefficient extraction on a circle.
        """
        arr = _check_pgf_arg(s)
        with np.errstate(divide="ignore"):
            out = self._pgf(arr)
        if not np.iscomplexobj(arr):
            out = np.where(arr == 1.0, 1.0, out)
            if self.support_min >= 1:
                out = np.where(arr == 0.0, 0.0, out)
        return as_output(out, s)

    def pgf_complement(self, r):
        """``Q(1 - r)`` for ``r`` in [0, 1], accurate when ``r`` is tiny.

        Used when the argument is naturally known as a survival probability,
        so that ``1 - r`` never has to be rounded before evaluation.
        """
        arr = np.asarray(r, dtype=float)
        if np.any(np.isnan(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
            raise DomainError("pgf_complement argument must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            out = self._pgf_complement(arr)
        out = np.where(arr == 0.0, 1.0, out)
        return as_output(out, r)

    def _pgf_complement(self, r):
        return self._pgf(1.0 - r)

    def pmf(self, n):
        """Probability mass ``P(N = n)``; zero outside the support."""
        arr = _check_index(n)
        out = np.zeros(arr.shape, dtype=float)
        mask = arr >= self.support_min
        if np.any(mask):
            out[mask] = self._pmf(arr[mask])
        return as_output(out, n)

    def survival(self, n):
        """Tail probability ``P(N > n)``."""
        arr = _check_index(n)
        out = np.ones(arr.shape, dtype=float)
        mask = arr >= 0
        if np.any(mask):
            out[mask] = self._survival(arr[mask])
        return as_output(out, n)

    def sample(self, rng, size=None):
        """Draw from the law using ``rng`` (a ``numpy.random.Generator``)."""
        draws = np.asarray(self._sample(rng, 1 if size is None else size), dtype=np.int64)
        if size is None:
            return int(draws.reshape(-1)[0])
        return draws

    @property
    def params(self):
        return asdict(self)

    def describe(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"

    @abstractmethod
    def _pgf(self, s): ...

    @abstractmethod
    def _pmf(self, n): ...

    @abstractmethod
    def _survival(self, n): ...

    @abstractmethod
    def _sample(self, rng, size): ...


@dataclass(frozen=True)
class Sibuya(DiscreteLaw):
    """Sibuya law on {1, 2, ...} with ``Q(s) = 1 - (1 - s)**v``.

    The mean is infinite and ``P(N > n)`` decays like ``n**-v``. Sampling
    inverts the survival function by integer bisection in log space, so the
    cost per draw is logarithmic in the drawn value.
    """

    v: float
    name = "sibuya"
    support_min = 1

    def __post_init__(self):
        if not 0.0 < self.v < 1.0:
            raise ParameterError(f"Sibuya parameter v must lie in (0, 1), got {self.v}")

    def log_survival(self, n):
        """``log P(N > n) = log Gamma(n+1-v) - log Gamma(1-v) - log Gamma(n+1)``."""
        return log_gamma_ratio(n, self.v) - gammaln(1.0 - self.v)

    def _pgf(self, s):
        return -np.expm1(self.v * np.log1p(-s))

    def _pgf_complement(self, r):
        return -np.expm1(self.v * np.log(r))

    def _pmf(self, n):
        n = n.astype(float)
        return np.exp(np.log(self.v / n) + self.log_survival(n - 1.0))

    def _survival(self, n):
        return np.exp(self.log_survival(n.astype(float)))

    def _sample(self, rng, size):
        log_u = np.log(open_uniform(rng, size)).reshape(-1)
        if np.any(self.log_survival(float(INT_CAP)) >= log_u):
            raise SamplerOverflowError(
                f"Sibuya({self.v}) draw exceeded the integer cap 2**62", cap=INT_CAP
            )
        # invariant: S(lo) >= u > S(hi); answer is hi once hi - lo == 1
        lo = np.zeros(log_u.shape, dtype=np.int64)
        hi = np.full(log_u.shape, INT_CAP, dtype=np.int64)
        # cheap starting bracket from the power-law tail S(n) ~ n**-v / Gamma(1-v)
        guess = np.exp(-(log_u + gammaln(1.0 - self.v)) / self.v)
        guess = np.clip(guess, 1.0, INT_CAP / 8).astype(np.int64)
        for cand in (guess // 4, guess * 4):
            above = self.log_survival(cand.astype(float)) >= log_u
            lo = np.where(above, np.maximum(lo, cand), lo)
            hi = np.where(~above, np.minimum(hi, cand), hi)
        active = hi - lo > 1
        while np.any(active):
            idx = np.nonzero(active)[0]
            mid = lo[idx] + (hi[idx] - lo[idx]) // 2
            above = self.log_survival(mid.astype(float)) >= log_u[idx]
            lo[idx] = np.where(above, mid, lo[idx])
            hi[idx] = np.where(above, hi[idx], mid)
            active = hi - lo > 1
        return hi.reshape(size)


@dataclass(frozen=True)
class Harris(DiscreteLaw):
    """Harris law on {1, k+1, 2k+1, ...} with ``Q(s) = s / (a - (a-1) s**k)**(1/k)``.

    Expanding the generating function gives ``N = k*M + 1`` where ``M`` is
    negative binomial with shape ``1/k`` and success probability ``1/a``.
    ``Harris(a, 1)`` is the geometric law with ``q = 1/a`` on {1, 2, ...}.
    """

    a: float
    k: int
    name = "harris"
    support_min = 1

    def __post_init__(self):
        if not self.a > 1.0:
            raise ParameterError(f"Harris parameter a must exceed 1, got {self.a}")
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"Harris parameter k must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    def _pgf(self, s):
        return s * np.exp(-np.log(self.a - (self.a - 1.0) * s**self.k) / self.k)

    def _pmf(self, n):
        m, rem = np.divmod(n - 1, self.k)
        shape = 1.0 / self.k
        logp = (
            -math.log(self.a) * shape
            + log_binom_general(shape, m)
            + m * math.log((self.a - 1.0) / self.a)
        )
        return np.where(rem == 0, np.exp(logp), 0.0)

    def _survival(self, n):
        # N > n  <=>  M > (n - 1) / k  <=>  M > floor((n - 1) / k)
        m = np.floor_divide(n - 1, self.k)
        return np.where(n < 1, 1.0, stats.nbinom.sf(m, 1.0 / self.k, 1.0 / self.a))

    def _sample(self, rng, size):
        m = rng.negative_binomial(1.0 / self.k, 1.0 / self.a, size)
        if np.any(m > (INT_CAP - 1) // self.k):
            raise SamplerOverflowError("Harris draw exceeded the integer cap 2**62", cap=INT_CAP)
        return self.k * m + 1


@dataclass(frozen=True)
class Geometric(DiscreteLaw):
    """Geometric law with success probability ``q`` on I1 = {1, 2, ...} or I0 = {0, 1, ...}."""

    q: float
    support: str = "I1"
    name = "geometric"

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ParameterError(f"geometric q must lie in (0, 1), got {self.q}")
        if self.support not in ("I0", "I1"):
            raise ParameterError(f"geometric support must be 'I0' or 'I1', got {self.support!r}")

    @property
    def support_min(self):
        return 0 if self.support == "I0" else 1

    def _pgf(self, s):
        base = self.q / (1.0 - (1.0 - self.q) * s)
        return base * s if self.support == "I1" else base

    def _pgf_complement(self, r):
        base = self.q / (self.q + (1.0 - self.q) * r)
        return base * (1.0 - r) if self.support == "I1" else base

    def _pmf(self, n):
        return self.q * (1.0 - self.q) ** (n - self.support_min).astype(float)

    def _survival(self, n):
        return (1.0 - self.q) ** (n + 1 - self.support_min).astype(float)

    def _sample(self, rng, size):
        return rng.geometric(self.q, size) - (1 - self.support_min)


@dataclass(frozen=True)
class Degenerate(DiscreteLaw):
    """Point mass at the positive integer ``k``."""

    k: int
    name = "degenerate"
    support_min = 1

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"degenerate point must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    def _pgf(self, s):
        return s**self.k

    def _pgf_complement(self, r):
        return np.exp(self.k * np.log1p(-r))

    def _pmf(self, n):
        return np.where(n == self.k, 1.0, 0.0)

    def _survival(self, n):
        return np.where(n < self.k, 1.0, 0.0)

    def _sample(self, rng, size):
        return np.full(size, self.k, dtype=np.int64)


def pgf(law, s):
    return law.pgf(s)


def pmf(law, n):
    return law.pmf(n)


def sample(law, rng, size=None):
    return law.sample(rng, size)
