"""Bound states of a harmonic trap with an exponentially varying mass.

The derivative part of the averaged kinetic operator is the same for every
ordering, so different weights only change the effective potential on the
matrix diagonal.  For m = m0 exp(kappa x) that potential is
-kappa^2 (eta1 + eta2) / (2 m), so orderings with equal eta1 + eta2 give
identical spectra.

Run: python3 demos/05_pdm_spectrum.py
"""

import math

from vonroos import (
    Grid,
    LorentzSum,
    MassProfile,
    Uniform,
    assemble,
    coefficients_continuous,
    coefficients_discrete,
    eigen,
    preset_orderings,
)
from vonroos.weight_model import KNOWN_ORDERINGS

grid = Grid(-10.0, 10.0, 2000)
profile = MassProfile.exponential(1.0, 0.25)


def trap(x):
    return x**2 / 2


cases = {name: coefficients_discrete([(a, b, 1)]) for name, (a, b) in KNOWN_ORDERINGS.items()}
cases["five orderings, equal weights"] = coefficients_discrete(preset_orderings())
cases["uniform, b = 1"] = coefficients_continuous(1, Uniform())
cases["lorentzian, b = 1"] = coefficients_continuous(1, LorentzSum())

print(f"{'weight':32s} {'eta1+eta2':>10s}   lowest three levels")
for name, c in cases.items():
    levels = eigen(assemble(grid, profile, trap, c), 3).eigenvalues
    s = float(c.eta1) + float(c.eta2)
    print(f"{name:32s} {s:10.6f}   " + "  ".join(f"{e:.8f}" for e in levels))

print("\nConstant mass: every weight gives the same spectrum, close to n + 1/2.")
unit = MassProfile.constant(1.0)
for name in ("gora_williams", "li_kuhn"):
    levels = eigen(assemble(grid, unit, trap, cases[name]), 3).eigenvalues
    print(f"  {name:16s}", "  ".join(f"{e:.8f}" for e in levels))

# Second-order convergence of the lowest box level.
errs = []
for n in (100, 200, 400):
    e1 = eigen(assemble(Grid(0.0, math.pi, n), unit, None, cases["li_kuhn"]), 1).eigenvalues[0]
    errs.append(abs(e1 - 0.5))
print("\nBox ground-state error when halving h:", ", ".join(f"{e:.3e}" for e in errs))
print("Observed orders:", ", ".join(f"{math.log2(errs[i] / errs[i + 1]):.3f}" for i in range(2)))
