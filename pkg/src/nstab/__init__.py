"""Max and min stability of distributions under a random sample size.

Distribution families (exponential, semi-Weibull, generalized semi-Pareto,
extended log-logistic and their integer restrictions), sample-size laws
(Sibuya, Harris, geometric, degenerate) and three independent checks of the
stability identities: exact residuals, recovery of the implied generating
function, and Monte Carlo simulation of random extremes.
"""

__version__ = "0.1.0"

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
from .errors import (
    ConvergenceError,
    DomainError,
    InstabilityError,
    NonnegativityError,
    ParameterError,
    PathEvaluationError,
    RegistryError,
    SamplerOverflowError,
)
from .extremes_mc import McConfig, McReport, ks_statistic, mc_stability_test, sample_extreme
from .pgf_recovery import (
    PgfEstimate,
    PgfVerdict,
    extract_coeffs,
    implied_max_pgf,
    implied_min_pgf,
    integer_power_check,
    recover_pgf,
    validate_pgf,
)
from .stability import (
    REGISTRY,
    GridSpec,
    Mode,
    StabilityProblem,
    StabilityReport,
    infer_constant,
    registry_suite,
    stability_constant,
    verify_stability,
)
