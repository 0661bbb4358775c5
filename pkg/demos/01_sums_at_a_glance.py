"""How C_n(nu) behaves across nu for a fixed n.

Run:  python demos/01_sums_at_a_glance.py
"""

import numpy as np

from cosecsum import alternating_cosecant_sum, cos_cosecant_sums, watson_sum

n = 300
values = cos_cosecant_sums(n)

print(f"S_{n} = {watson_sum(n):.4f}   (nu = 0 and nu = n give this)")
print(f"alternating sum = {alternating_cosecant_sum(n):.4f} = -C_{n}({n // 2})")
print()

# symmetric in nu <-> n - nu, so half the period is enough
print(" nu      C_300(nu)")
for nu in (1, 5, 10, 20, 50, 75, 100, 125, 150):
    print(f"{nu:4d}  {values[nu]:12.6f}")

zero_crossings = np.nonzero(np.diff(np.sign(values[1:n // 2 + 1])))[0] + 1
print()
print("sign changes between nu =", [int(k) for k in zero_crossings], "and the next integer")
