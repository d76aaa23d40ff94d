"""
Exact laws for small n
======================

The law of T for i.i.d. bits, once by brute force and once by splitting
off the core and mixing the laws of core strings.
"""

from fractions import Fraction

from stabtime.exactlaw import law_by_enumeration, law_by_mixture, mixture_coefficients, special_law_by_dp

p = Fraction(3, 4)
n = 10

brute = law_by_enumeration(n, p)
mixed = law_by_mixture(n, p)
print("identical:", brute == mixed)
for t, w in brute.items():
    print(f"  P(T = {t}) = {w}  ~ {float(w):.5f}")

# weights of the point mass at 0 and of each core length r
coeffs = mixture_coefficients(n, p)
print("\nc0 =", coeffs.c0)
for r, w in coeffs.c.items():
    print(f"  c[{r}] = {w}")
print("sum:", coeffs.total())

# core strings 0...1 of length 6 at p = 1/2
print("\nspecial law, r = 6:", special_law_by_dp(6, Fraction(1, 2)).as_dict())

# float mode reaches far larger r
law = special_law_by_dp(2000, 0.5)
print("r = 2000: mean", round(law.mean(), 3), " mass", round(law.total(), 12))
