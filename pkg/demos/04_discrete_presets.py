"""Average over the five named orderings with exact rational arithmetic.

Run: python3 demos/04_discrete_presets.py
"""

from fractions import Fraction as F

from vonroos import coefficients_discrete, preset_orderings, vonroos_pair
from vonroos.weight_model import KNOWN_ORDERINGS

for name, (a, b) in KNOWN_ORDERINGS.items():
    pair = vonroos_pair(a, b)
    print(f"{name:24s} (alpha, beta, gamma) = ({a}, {b}, {pair.gamma})  f={pair.f}  g={pair.g}")

c = coefficients_discrete(preset_orderings())
print(f"\nEqual weights: eta1 = {c.eta1}, eta2 = {c.eta2}, total weight = {c.total_weight}")

# Doubling the weight of one ordering shifts the mean; scaling all of them does not.
entries = [(a, b, 2 if name == "zhu_kroemer" else 1) for name, (a, b) in KNOWN_ORDERINGS.items()]
print("Zhu-Kroemer counted twice:", tuple(map(str, coefficients_discrete(entries))))
scaled = [(a, b, F(7, 3)) for a, b in KNOWN_ORDERINGS.values()]
print("All weights times 7/3:   ", tuple(map(str, coefficients_discrete(scaled))))
