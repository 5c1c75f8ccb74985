"""Normal-order the von Roos kinetic operator and read off its ambiguity terms.

Run: python3 demos/01_operator_expansion.py
"""

from fractions import Fraction as F

from vonroos import fit_ambiguity_polynomial, normal_order, parse_operator, vonroos_pair

print("A single product-rule step, p m = -i m' - i m d/dx:")
print("  ", normal_order(parse_operator("p m")))

print("\nThe symmetrized pair for a few named orderings (alpha, beta):")
for name, (a, b) in {
    "centre of the triangle": (F(-1, 3), F(-1, 3)),
    "Gora-Williams": (F(-1), F(0)),
    "Zhu-Kroemer": (F(-1, 2), F(0)),
    "BenDaniel-Duke": (F(0), F(-1)),
}.items():
    pair = vonroos_pair(a, b)
    print(f"  {name:24s} f={pair.f!s:6s} g={pair.g!s:6s}")
    print(f"    {pair}")

# Fitting exact pair coefficients at scattered points recovers the two
# ambiguity polynomials without assuming their form.
points = [(F(i, 3), F(j, 5)) for i, j in [(1, 2), (-4, 7), (5, -1), (2, 9), (-7, -3), (8, 4), (0, -6)]]
f = fit_ambiguity_polynomial(points, "f")
g = fit_ambiguity_polynomial(points, "g")
labels = ("1", "alpha", "beta", "alpha*beta", "alpha^2", "beta^2")
print("\nFitted f:", " + ".join(f"({c})*{m}" for c, m in zip(f, labels) if c))
print("Fitted g:", " + ".join(f"({c})*{m}" for c, m in zip(g, labels) if c))
