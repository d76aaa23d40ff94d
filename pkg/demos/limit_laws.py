"""
The three limit laws
====================

Print the densities on a grid and watch the threshold family slide from
the critical law toward a Gaussian as lambda grows.
"""

import numpy as np

from stabtime.limits import Chi3Half, Gaussian, NuLambda, ShiftedNuLambda, mean, total_mass

xs = np.linspace(0, 2.5, 11)
print("x      chi3/2   nu_0.5   nu_2")
for x, a, b, c in zip(xs, Chi3Half().pdf(xs), NuLambda(0.5).pdf(xs), NuLambda(2.0).pdf(xs)):
    print(f"{x:4.2f}  {a:7.4f}  {b:7.4f}  {c:7.4f}")

print("\nmean of chi3/2:", mean(Chi3Half()), " sqrt(2/pi) =", np.sqrt(2 / np.pi))

# after shifting by lambda/2 the threshold law approaches N(0, 1/4)
ys = np.linspace(-2, 2, 401)
g = Gaussian(0.0, 0.25)
for lam in (1, 5, 10, 20, 40):
    gap = np.max(np.abs(ShiftedNuLambda(lam).pdf(ys) - g.pdf(ys)))
    print(f"lambda={lam:2d}: sup |shifted nu - N(0,1/4)| = {gap:.4f}, mass {total_mass(ShiftedNuLambda(lam)):.12f}")
