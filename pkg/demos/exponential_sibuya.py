"""The exponential law is max stable under a Sibuya sample size.

Take N ~ Sibuya(v) and X_1, X_2, ... i.i.d. Exponential(1). The maximum of
the first N of them has the law of X / v: its distribution function is
Q(F(x)) = 1 - (1 - F(x))**v = 1 - exp(-v x) = F(v x).

Run: python3 demos/exponential_sibuya.py
"""

import numpy as np

from nstab import Exponential, Mode, Sibuya, StabilityProblem, verify_stability
from nstab.extremes_mc import McConfig, mc_stability_test, sample_extreme

v = 0.5
family, law = Exponential(1.0), Sibuya(v)

# 1. The identity Q(F(x)) = F(c x) holds with c = v, to round-off.
report = verify_stability(StabilityProblem(family, law, Mode.MAX, c=v))
print(f"sup |Q(F(x)) - F(v x)| over {report.grid.size} points: {report.sup_residual:.2e}")

# With any other constant it fails visibly.
for c in (0.45, 0.55):
    off = verify_stability(StabilityProblem(family, law, Mode.MAX, c=c))
    print(f"  with c = {c}: sup residual {off.sup_residual:.2e} -> {'pass' if off.verdict else 'fail'}")

# 2. Simulated maxima. N has infinite mean, so the maximum is drawn through
# its conditional law F^-1(U**(1/N)) instead of drawing N copies.
rng = np.random.default_rng(1)
maxima = sample_extreme(family, law, Mode.MAX, rng, 10)
print("ten maxima:", np.round(maxima, 3))

rep = mc_stability_test(StabilityProblem(family, law, Mode.MAX, v), McConfig(trials=10**5, seed=42))
print(f"KS distance of v * max from Exponential(1): {rep.ks_stat:.4f} "
      f"(1% critical value {rep.ks_critical:.4f}) -> {'pass' if rep.passed else 'fail'}")
