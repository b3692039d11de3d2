"""Integer-valued analogues: P(X < j) = 1 - m(j).

When m is completely monotone (semi-Weibull and semi-Pareto with alpha < 1,
or any exponential), restricting it to the integers gives a law on
{0, 1, 2, ...}. The stability identities carry over with c j read through
the continuous extension m(c j).

Run: python3 demos/discrete_families.py
"""

import numpy as np

from nstab import DiscretizedFamily, PeriodicHazard, SemiPareto, verify_stability
from nstab.discrete_families import geometric_family
from nstab.stability import get_pairing

d = DiscretizedFamily(SemiPareto(PeriodicHazard(0.7, 0.4)))
j = np.arange(8)
print("discrete semi-Pareto P(X = j):", np.round(d.pmf(j), 5))
print("P(X < 8) by telescoping       :", round(float(np.sum(d.pmf(j))), 12),
      "=", round(float(d.cdf(8)), 12))

g = geometric_family(0.5)
print("geometric draws:", g.sample(np.random.default_rng(0), 12))

for tag in ("geometric-sibuya-max", "discrete-semi-weibull-sibuya-max",
            "discrete-gsp-harris-min", "discrete-semi-pareto-geometric-max"):
    rep = verify_stability(get_pairing(tag).problem())
    print(f"{tag:<38} sup residual on j = 0..200: {rep.sup_residual:.1e}")
