"""How large would the fully symbolic answers be?

Counts monomials allowed by the bigrading for the genus-2 problem and for
the E7 and E8 analogues, and shows the p = 2 analogue where everything is small.
"""
from fixed3torsion.analogs import PRESETS, count_spec, symbolic_p2_coeffs, term_count

for i in (12, 18, 24, 30):
    print(f"genus 2, coefficient of weight {i}: {term_count(count_spec('g2-bigraded', i)):,} allowed terms")
print(f"E7, i = 18: {term_count(count_spec('e7', 18)):,}")
print(f"E8, i = 30: {term_count(count_spec('e8', 30)):,}")

print("\np = 2 analogue, quintic x^5 + a x^3 + b x^2 + c x + d:")
for name, f in zip("ABCD", symbolic_p2_coeffs()):
    print(f"  {name}: {len(f)} terms")
print("presets:", ", ".join(PRESETS))
