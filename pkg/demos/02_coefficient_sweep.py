"""How the averaged coefficients move as the ordering triangle grows.

Run: python3 demos/02_coefficient_sweep.py
"""

from fractions import Fraction as F

from vonroos import LorentzSum, Uniform, coefficients_continuous, region, uniform_closed_form

print("At b = -2/3 the triangle collapses to one ordering, so both weights agree exactly:")
for weight in (Uniform(), LorentzSum()):
    c = coefficients_continuous(F(-2, 3), weight)
    print(f"  {type(weight).__name__:10s} eta1={c.eta1} eta2={c.eta2}")

print("\n   b     area   uniform eta1   closed form    lorentz eta1   lorentz eta2")
for b in (-0.6, -0.5, 0, 0.5, 1, 2, 4):
    u = coefficients_continuous(b, Uniform())
    lo = coefficients_continuous(b, LorentzSum())
    ref = float(uniform_closed_form(b).eta1)
    area = float(region(b).projected_area())
    print(f"{b:5} {area:8.4f}   {u.eta1:.10f}   {ref:.10f}   {lo.eta1:.10f}   {lo.eta2:.10f}")

print("\nThe uniform eta2 stays at -1/3 for every b; the Lorentzian weight pulls it lower.")
