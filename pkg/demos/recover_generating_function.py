"""Reading the sample-size law off a distribution function.

If F is max stable with constant c, the generating function of N must be
Q(s) = F(c F^-1(s)); under min stability Q(s) = R(R^-1(s) / c) with R = 1 - F.
Both are explicit, so their Taylor coefficients can be estimated by a
discrete Cauchy integral and checked for being a probability distribution.

Run: python3 demos/recover_generating_function.py
"""

import numpy as np

from nstab import GeneralizedSemiPareto, Harris, PeriodicHazard, Sibuya
from nstab.continuous import Exponential
from nstab.discrete_laws import Geometric
from nstab.pgf_recovery import integer_power_check, recover_pgf

# Exponential, max, c = 0.5: the coefficients are the Sibuya(0.5) masses.
est = recover_pgf(Exponential(1.0), 0.5, "max", n_max=50)
n = np.arange(1, 7)
print("estimated P(N = n), n = 1..6:", np.round(est.coeffs[1:7], 10))
print("Sibuya(0.5) masses          :", np.round(Sibuya(0.5).pmf(n), 10))
print("verdict:", est.verdict)

# Generalized semi-Pareto, min, c = 1/3: Q(s) = s / (3 - 2 s**(1/beta))**beta.
# That is a generating function exactly when 1/beta is a positive integer.
for inv_beta in (1.0, 1.5, 2.0, 3.0):
    gsp = GeneralizedSemiPareto(PeriodicHazard(1.0, 1 / 3), 1 / inv_beta)
    est = recover_pgf(gsp, 1 / 3, "min", n_max=50)
    line = f"1/beta = {inv_beta}: {est.verdict}"
    if est.verdict:
        k = int(inv_beta)
        gap = np.max(np.abs(est.coeffs - Harris(3.0, k).pmf(np.arange(51))))
        line += f", matches Harris(3, {k}) to {gap:.1e}"
    print(line)

# Q(s**t) is a generating function only for integer t. A fractional power
# has a branch point at 0 that no power series reproduces.
for t in (1, 2, 3, 0.5, 1.5):
    est = integer_power_check(Geometric(0.5), t)
    print(f"geometric Q(s**{t}): reconstruction error {est.recon_error:.1e} -> {est.verdict}")
