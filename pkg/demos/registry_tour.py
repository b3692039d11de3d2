"""Every characterization in the registry, with its negative controls.

A verifier that only confirms positives cannot tell a correct implementation
from one that computes both sides of the identity the same wrong way, so each
positive case is followed by controls that must fail: a perturbed constant,
the opposite mode, other sample-size laws and, for geometric laws, the other
support.

Run: python3 demos/registry_tour.py
"""

from nstab import registry_suite

reports = registry_suite()
for rep in reports:
    if rep.expected:
        controls = [r for r in reports if r.provenance == rep.provenance and not r.expected]
        weakest = min(r.sup_residual for r in controls)
        print(f"{rep.provenance:<38} residual {rep.sup_residual:.1e}; "
              f"{len(controls)} controls, smallest residual {weakest:.1e}")
print(f"{sum(not r.correct for r in reports)} unexpected outcomes out of {len(reports)}")
