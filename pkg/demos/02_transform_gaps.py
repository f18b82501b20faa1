"""Exact Fourier transforms of row sums and their gap to the Gaussian.

For a row of independent cells, the transform of the sum is the product
of the (finite-sum) cell transforms, so the gap

    g_n(t) = | exp(-|t|^2/2) - phi_row_n(t) |

is computable exactly.  Two facts to see numerically:

1. at every fixed t the coin-row gap vanishes as n grows (the CLT), but
2. for each single n, sup over t of the gap is essentially 1: taking the
   sup inside the limit destroys the convergence (the transform of the
   coin row is cos^n(t/sqrt(n)), which returns to +-1 at t = pi sqrt(n)).

This is why the asymptotic index of interest is sup_t limsup_n g_n(t),
in that order.
"""

import numpy as np

from steinclt import RademacherFamily, charfn_gap, gaussian_charfn, row_sum_charfn

family = RademacherFamily()

print("== gap at fixed t, growing n ==")
print(f"{'n':>7} | " + " | ".join(f"t={t:<4}" for t in (0.5, 1.0, 2.0)))
for n in (10, 100, 1000, 10_000):
    row = family.row(n)
    gaps = [charfn_gap(row, t) for t in (0.5, 1.0, 2.0)]
    print(f"{n:>7} | " + " | ".join(f"{g:.2e}" for g in gaps))

print("\n== but the sup over t does not move ==")
for n in (10, 100, 1000):
    row = family.row(n)
    t_star = np.pi * np.sqrt(n)
    value = row_sum_charfn(row, t_star)
    print(f"  n={n:>5}: at t = pi sqrt(n) = {t_star:8.3f}  "
          f"row transform = {value.real:+.6f}, gaussian = {gaussian_charfn(t_star):.2e}, "
          f"gap = {charfn_gap(row, t_star):.6f}")

print("\n== transform values are exact products ==")
row = family.row(25)
print(f"  phi_row(1) = {row_sum_charfn(row, 1.0).real:.15f}")
print(f"  cos^25(0.2) = {np.cos(0.2) ** 25:.15f}")
