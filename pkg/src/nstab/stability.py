"""Residual checks of the max/min stability equations and the pairing registry.

For a distribution function ``F`` (survival ``R = 1 - F``), a sample-size law
with generating function ``Q`` and a constant ``0 < c < 1``:

* max stability: ``Q(F(x)) = F(c x)`` for all ``x > 0``
* min stability: ``Q(R(c x)) = R(x)`` for all ``x > 0``

For families on {0, 1, ...} the same identities are checked at integers
``j`` with the continuous extension of ``F`` at ``c j``.

The registry lists every (family, law, mode) pairing for which the identity
holds exactly, together with the rule that fixes ``c``. It is plain data, so
suites, reports and the command line can enumerate it uniformly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .continuous import (
    ContinuousFamily,
    Exponential,
    ExtendedLogLogistic,
    GeneralizedSemiPareto,
    PeriodicHazard,
    SemiPareto,
    SemiWeibull,
)
from .discrete_families import DiscretizedFamily, geometric_family
from .discrete_laws import Degenerate, DiscreteLaw, Geometric, Harris, Sibuya
from .errors import ParameterError, RegistryError

__all__ = [
    "Mode",
    "GridSpec",
    "StabilityProblem",
    "StabilityReport",
    "Pairing",
    "REGISTRY",
    "CONTROL_LAWS",
    "residuals",
    "verify_stability",
    "stability_constant",
    "infer_constant",
    "find_pairing",
    "registry_suite",
    "controls_for",
    "get_pairing",
    "eps_bound_for",
    "full_cycle_phases",
]

DEFAULT_TOL = 1e-10
CONTROL_PERTURBATION = 1.05


class Mode(str, enum.Enum):
    MAX = "max"
    MIN = "min"

    def flipped(self):
        return Mode.MIN if self is Mode.MAX else Mode.MAX


@dataclass(frozen=True)
class GridSpec:
    """Evaluation points: log-spaced on ``[lo, hi]`` or the integers ``0..j_max``."""

    lo: float = 1e-3
    hi: float = 1e3
    n: int = 200
    j_max: int = 200

    def points(self, discrete=False):
        if discrete:
            return np.arange(self.j_max + 1, dtype=float)
        return np.geomspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class StabilityProblem:
    family: object
    law: DiscreteLaw
    mode: Mode
    c: float

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not 0.0 < self.c < 1.0:
            raise ParameterError(f"stability constant c must lie in (0, 1), got {self.c}")
        if not isinstance(self.family, (ContinuousFamily, DiscretizedFamily)):
            raise ParameterError(f"unsupported family {self.family!r}")

    @property
    def discrete(self):
        return isinstance(self.family, DiscretizedFamily)


@dataclass
class StabilityReport:
    grid: np.ndarray
    residuals: np.ndarray
    sup_residual: float
    c_used: float
    verdict: bool
    tolerance: float
    mode: Mode
    family: str
    law: str
    provenance: str = "ad hoc"
    #: what the registry predicts: True for positive pairings, False for controls
    expected: bool | None = None
    control: str | None = None

    @property
    def correct(self):
        return self.expected is None or self.verdict == self.expected

    def to_dict(self, arrays=True):
        out = {
            "pairing": self.provenance,
            "control": self.control,
            "family": self.family,
            "law": self.law,
            "mode": self.mode.value,
            "c": self.c_used,
            "tolerance": self.tolerance,
            "sup_residual": self.sup_residual,
            "verdict": "pass" if self.verdict else "fail",
            "expected": None if self.expected is None else ("pass" if self.expected else "fail"),
            "correct": self.correct,
        }
        if arrays:
            out["grid"] = self.grid.tolist()
            out["residuals"] = self.residuals.tolist()
        return out


def residuals(problem, grid):
    """Pointwise ``|LHS - RHS|`` of the stability identity on ``grid``."""
    f, law, c = problem.family, problem.law, problem.c
    x = np.asarray(grid, dtype=float)
    if problem.mode is Mode.MAX:
        # Q(F(x)) evaluated as Q(1 - R(x)) so F never rounds to 1 first
        lhs = law.pgf_complement(np.clip(f.sf(x), 0.0, 1.0))
        rhs = f.cdf(c * x)
    else:
        lhs = law.pgf(np.clip(f.sf(c * x), 0.0, 1.0))
        rhs = f.sf(x)
    return np.abs(np.asarray(lhs) - np.asarray(rhs))


def verify_stability(problem, grid=None, tol=DEFAULT_TOL, provenance="ad hoc"):
    """Evaluate the stability identity of ``problem`` and return a report.

    ``grid`` may be a :class:`GridSpec` or an explicit array of points. The
    default is 200 log-spaced points on [1e-3, 1e3] for continuous families
    and ``j = 0..200`` for discretized ones.
    """
    if grid is None:
        grid = GridSpec()
    points = grid.points(problem.discrete) if isinstance(grid, GridSpec) else np.asarray(grid, float)
    res = residuals(problem, points)
    sup = float(np.max(res))
    return StabilityReport(
        grid=points,
        residuals=res,
        sup_residual=sup,
        c_used=problem.c,
        verdict=bool(sup < tol),
        tolerance=tol,
        mode=problem.mode,
        family=problem.family.describe(),
        law=problem.law.describe(),
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# registry


def _degenerate_point(k):
    if int(k) != k or k < 2:
        raise ParameterError(f"a stabilizing degenerate law needs an integer k >= 2, got {k}")
    return int(k)


def _base(family):
    return family.base if isinstance(family, DiscretizedFamily) else family


def _c_from_hazard(family, law):
    return _base(family).hazard.scale


def _c_from_degenerate(family, law):
    return 1.0 / _degenerate_point(law.k)


@dataclass(frozen=True)
class Pairing:
    """A (family, law, mode) combination for which the identity holds exactly.

    ``build`` maps keyword parameters to ``(family, law)``; ``constant``
    maps that pair to the prescribed ``c``. ``periodic`` marks pairings whose
    family carries a log-periodic hazard, so ``eps`` and ``phase`` may vary.
    """

    tag: str
    summary: str
    mode: Mode
    family_kind: type
    law_kind: type
    discrete: bool
    build: Callable[..., tuple]
    constant: Callable[[object, DiscreteLaw], float]
    defaults: Mapping[str, float] = field(default_factory=dict)
    periodic: bool = False

    def make(self, **params):
        unknown = set(params) - set(self.defaults)
        if unknown:
            raise ParameterError(f"unknown parameters for {self.tag}: {sorted(unknown)}")
        merged = {**self.defaults, **params}
        return self.build(**merged)

    def problem(self, **params):
        family, law = self.make(**params)
        return StabilityProblem(family, law, self.mode, self.constant(family, law))

    def matches(self, family, law, mode):
        return (
            Mode(mode) is self.mode
            and isinstance(family, DiscretizedFamily) == self.discrete
            and isinstance(_base(family), self.family_kind)
            and isinstance(law, self.law_kind)
            and not (isinstance(law, Geometric) and law.support != "I1")
        )


_PERIODIC = {"eps": 0.0, "phase": 0.0}


def _discrete(builder):
    def build(**params):
        family, law = builder(**params)
        return DiscretizedFamily(family), law

    return build


def _sw_sibuya(p, alpha, eps, phase):
    return SemiWeibull(PeriodicHazard(alpha, p, eps, phase)), Sibuya(p)


def _sw_degenerate(k, alpha, eps, phase):
    k = _degenerate_point(k)
    return SemiWeibull(PeriodicHazard(alpha, 1.0 / k, eps, phase)), Degenerate(k)


def _gsp_harris(a, k, alpha, eps, phase):
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k}")
    h = PeriodicHazard(alpha, 1.0 / a, eps, phase)
    return GeneralizedSemiPareto(h, beta=1.0 / k), Harris(a, int(k))


def _sp_geometric(p, alpha, eps, phase):
    return SemiPareto(PeriodicHazard(alpha, p, eps, phase)), Geometric(p, "I1")


def _ell_harris(alpha, k, c):
    if not 0.0 < c < 1.0:
        raise ParameterError(f"c must lie in (0, 1), got {c}")
    return ExtendedLogLogistic(alpha, int(k)), Harris(c ** (-alpha), int(k))


def _exp_degenerate(rate, k):
    return Exponential(rate), Degenerate(_degenerate_point(k))


def _geom_sibuya(theta, v):
    return geometric_family(theta), Sibuya(v)


def _geom_degenerate(theta, k):
    return geometric_family(theta), Degenerate(_degenerate_point(k))


REGISTRY: tuple[Pairing, ...] = (
    Pairing(
        "exponential-sibuya-max",
        "exponential is max stable under Sibuya(v) with c = v",
        Mode.MAX, Exponential, Sibuya, False,
        lambda rate, v: (Exponential(rate), Sibuya(v)),
        lambda f, n: n.v,
        {"rate": 1.0, "v": 0.5},
    ),
    Pairing(
        "exponential-degenerate-min",
        "exponential is min stable under a point mass at k >= 2 with c = 1/k",
        Mode.MIN, Exponential, Degenerate, False,
        _exp_degenerate, _c_from_degenerate,
        {"rate": 1.0, "k": 3},
    ),
    Pairing(
        "semi-weibull-sibuya-max",
        "semi-Weibull(p, alpha) is max stable under Sibuya(p) with c**alpha = p",
        Mode.MAX, SemiWeibull, Sibuya, False,
        _sw_sibuya, _c_from_hazard,
        {"p": 0.4, "alpha": 1.5, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "semi-weibull-degenerate-min",
        "semi-Weibull(1/k, alpha) is min stable under a point mass at k with c**alpha = 1/k",
        Mode.MIN, SemiWeibull, Degenerate, False,
        _sw_degenerate, _c_from_hazard,
        {"k": 2, "alpha": 1.5, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "gsp-harris-min",
        "generalized semi-Pareto(1/a, alpha, 1/k) is min stable under Harris(a, k) with c**alpha = 1/a",
        Mode.MIN, GeneralizedSemiPareto, Harris, False,
        _gsp_harris, _c_from_hazard,
        {"a": 3.0, "k": 2, "alpha": 1.0, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "semi-pareto-geometric-min",
        "semi-Pareto(p, alpha) is min stable under geometric(p) on {1, 2, ...} with c**alpha = p",
        Mode.MIN, SemiPareto, Geometric, False,
        _sp_geometric, _c_from_hazard,
        {"p": 0.4, "alpha": 1.2, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "semi-pareto-geometric-max",
        "semi-Pareto(p, alpha) is also max stable under geometric(p) on {1, 2, ...} with c**alpha = p",
        Mode.MAX, SemiPareto, Geometric, False,
        _sp_geometric, _c_from_hazard,
        {"p": 0.4, "alpha": 1.2, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "extended-log-logistic-harris-max",
        "extended log-logistic(alpha, k) is max stable under Harris(c**-alpha, k) for any c in (0, 1)",
        Mode.MAX, ExtendedLogLogistic, Harris, False,
        _ell_harris,
        lambda f, n: n.a ** (-1.0 / f.alpha),
        {"alpha": 1.5, "k": 2, "c": 0.5},
    ),
    Pairing(
        "geometric-sibuya-max",
        "geometric on {0, 1, ...} is max stable under Sibuya(v) with c = v",
        Mode.MAX, Exponential, Sibuya, True,
        _geom_sibuya, lambda f, n: n.v,
        {"theta": 0.5, "v": 0.5},
    ),
    Pairing(
        "geometric-degenerate-min",
        "geometric on {0, 1, ...} is min stable under a point mass at k >= 2 with c = 1/k",
        Mode.MIN, Exponential, Degenerate, True,
        _geom_degenerate, _c_from_degenerate,
        {"theta": 0.5, "k": 3},
    ),
    Pairing(
        "discrete-semi-weibull-sibuya-max",
        "discrete semi-Weibull(p, alpha < 1) is max stable under Sibuya(p) with c**alpha = p",
        Mode.MAX, SemiWeibull, Sibuya, True,
        _discrete(_sw_sibuya), _c_from_hazard,
        {"p": 0.4, "alpha": 0.6, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "discrete-semi-weibull-degenerate-min",
        "discrete semi-Weibull(1/k, alpha < 1) is min stable under a point mass at k",
        Mode.MIN, SemiWeibull, Degenerate, True,
        _discrete(_sw_degenerate), _c_from_hazard,
        {"k": 2, "alpha": 0.6, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "discrete-gsp-harris-min",
        "discrete generalized semi-Pareto is min stable under Harris(a, k) with ap = 1 = beta k, p = c**alpha",
        Mode.MIN, GeneralizedSemiPareto, Harris, True,
        _discrete(_gsp_harris), _c_from_hazard,
        {"a": 3.0, "k": 2, "alpha": 0.5, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "discrete-semi-pareto-geometric-min",
        "discrete semi-Pareto(p, alpha < 1) is min stable under geometric(p) on {1, 2, ...}",
        Mode.MIN, SemiPareto, Geometric, True,
        _discrete(_sp_geometric), _c_from_hazard,
        {"p": 0.4, "alpha": 0.7, **_PERIODIC}, periodic=True,
    ),
    Pairing(
        "discrete-semi-pareto-geometric-max",
        "discrete semi-Pareto(p, alpha < 1) is max stable under geometric(p) on {1, 2, ...}",
        Mode.MAX, SemiPareto, Geometric, True,
        _discrete(_sp_geometric), _c_from_hazard,
        {"p": 0.4, "alpha": 0.7, **_PERIODIC}, periodic=True,
    ),
)

_BY_TAG = {pairing.tag: pairing for pairing in REGISTRY}

#: laws substituted for the prescribed one in wrong-law controls
CONTROL_LAWS: tuple[DiscreteLaw, ...] = (
    Sibuya(0.5),
    Sibuya(0.3),
    Degenerate(2),
    Degenerate(3),
    Harris(2.0, 1),
    Harris(3.0, 2),
    Geometric(0.5, "I1"),
    Geometric(0.5, "I0"),
)


def get_pairing(tag):
    try:
        return _BY_TAG[tag]
    except KeyError:
        raise RegistryError(f"unknown pairing {tag!r}; known: {sorted(_BY_TAG)}") from None


def stability_constant(tag, **params):
    """The ``c`` prescribed by the registered pairing ``tag`` at ``params``.

    >>> stability_constant("semi-weibull-sibuya-max", p=0.25, alpha=2.0)
    0.5
    """
    pairing = get_pairing(tag)
    family, law = pairing.make(**params)
    return pairing.constant(family, law)


def find_pairing(family, law, mode):
    """First registry pairing whose family/law kinds and mode match."""
    for pairing in REGISTRY:
        if pairing.matches(family, law, mode):
            return pairing
    raise RegistryError(
        f"no registered pairing for {family.describe()} / {law.describe()} / {Mode(mode).value}"
    )


def infer_constant(family, law, mode):
    """Resolve ``c`` for an arbitrary (family, law, mode) via the registry.

    Returns ``(c, tag)``. Only the kinds are matched; whether the parameters
    are linked correctly is left to :func:`verify_stability`.
    """
    pairing = find_pairing(family, law, mode)
    return pairing.constant(family, law), pairing.tag


def _same_law(a, b, n=64):
    s = np.linspace(0.0, 1.0, n)
    return bool(np.max(np.abs(a.pgf(s) - b.pgf(s))) < 1e-12)


def controls_for(pairing, problem):
    """Negative controls for one positive problem: ``(label, problem)`` pairs.

    Wrong ``c`` (scaled by 1.05), wrong mode (same law and ``c``) and wrong
    law (every control law not equal in distribution to the prescribed one).
    """
    out = [
        ("wrong-c", StabilityProblem(problem.family, problem.law, problem.mode,
                                     problem.c * CONTROL_PERTURBATION)),
    ]
    flipped = problem.mode.flipped()
    # semi-Pareto under a geometric law is stable in both modes
    if not any(p.matches(problem.family, problem.law, flipped) for p in REGISTRY):
        out.append(("wrong-mode", StabilityProblem(problem.family, problem.law, flipped,
                                                   problem.c)))
    for law in CONTROL_LAWS:
        if not _same_law(law, problem.law):
            out.append((f"wrong-law:{law.describe()}",
                        StabilityProblem(problem.family, law, problem.mode, problem.c)))
    if isinstance(problem.law, Geometric):
        swapped = Geometric(problem.law.q, "I0" if problem.law.support == "I1" else "I1")
        out.append((f"wrong-support:{swapped.describe()}",
                    StabilityProblem(problem.family, swapped, problem.mode, problem.c)))
    return out


def _periodic_variants(pairing, eps_fractions, phases):
    if not pairing.periodic:
        return [{}]
    bound = eps_bound_for(pairing)
    variants = []
    for frac in eps_fractions:
        for phase in (phases if frac != 0.0 else phases[:1]):
            variants.append({"eps": frac * bound, "phase": phase})
    return variants


def registry_suite(tol=DEFAULT_TOL, grid=None, positives_only=False,
                   eps_fractions=(0.0,), phases=(0.0,), tags=None):
    """Run every registered pairing plus negative controls.

    Parameters
    ----------
    tol : float
        Pass threshold on the sup residual.
    grid : GridSpec, optional
    positives_only : bool
        Skip the negative controls.
    eps_fractions, phases : sequences of float
        For pairings with a periodic hazard, run each ``eps`` (as a fraction
        of the monotonicity bound) at each phase. ``eps = 0`` runs once.
    tags : iterable of str, optional
        Restrict to these pairings.

    Returns
    -------
    list of StabilityReport
        In registry order; controls follow their positive case. Failures are
        reported, never raised.
    """
    reports = []
    selected = REGISTRY if tags is None else [get_pairing(t) for t in tags]
    for pairing in selected:
        for variant in _periodic_variants(pairing, eps_fractions, phases):
            problem = pairing.problem(**variant)
            rep = verify_stability(problem, grid, tol, provenance=pairing.tag)
            rep.expected = True
            reports.append(rep)
            if positives_only:
                continue
            for label, ctrl in controls_for(pairing, problem):
                crep = verify_stability(ctrl, grid, tol, provenance=pairing.tag)
                crep.expected = False
                crep.control = label
                reports.append(crep)
    return reports


def eps_bound_for(pairing):
    family = pairing.make()[0]
    return PeriodicHazard.eps_bound(_base(family).hazard.p)


def full_cycle_phases(count=3):
    return tuple(2.0 * math.pi * i / count for i in range(count))
