"""Check the Lorentzian-weight closed forms against quadrature.

The eta1 expression and the corrected eta2 expression agree with
quadrature to roundoff.  The eta2 expression as originally written, with
the opposite sign on its 2(3b+2)T term, does not; this script prints both.

Run: python3 demos/03_lorentzian_discrepancy.py
"""

from vonroos import lorentz_closed_form, lorentz_discrepancy_report, lorentz_limit

print(lorentz_discrepancy_report((-0.5, 0, 1, 3, 10)))

print("\nOne-sided limit b -> -2/3:")
print("  corrected:", tuple(map(str, lorentz_limit())))
print("  as written:", tuple(map(str, lorentz_limit(printed=True))))

c = lorentz_closed_form(0)
print(f"\nAt b = 0: eta1 = {c.eta1:.7f}, eta2 = {c.eta2:.7f}, A = {c.total_weight:.7f}")
