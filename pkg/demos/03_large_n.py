"""Large-n behaviour: expansions, bounds and a cheap approximation.

Each truncated expansion comes with a bracket formed by its first omitted
term; the true value sits inside it.

Run:  python demos/03_large_n.py
"""

from cosecsum import (bounds, cos_cosecant_sum, main_expansion, refined_expansion,
                      simple_approximation, watson_expansion, watson_sum)

n, nu = 1000, 37
ref = cos_cosecant_sum(n, nu, dps=40)
print(f"C_{n}({nu}) = {float(ref)!r}")
for N in range(2, 6):
    ex = main_expansion(n, nu, N, dps=40)
    lo, hi = float(ex.bracket.lower), float(ex.bracket.upper)
    print(f"  N={N}: [{lo!r}, {hi!r}]  width {hi - lo:.2e}  contains: {ref in ex.bracket}")

b = bounds(n, nu)
print(f"  closed-form bounds: [{b.lower!r}, {b.upper!r}]")
print()

print("Watson's sum against its expansion (N = 3):")
for m in (10, 100, 1000):
    ex = watson_expansion(m, 3)
    print(f"  n={m:5d}  S_n={watson_sum(m)!r:>22}  error {watson_sum(m) - ex.partial_sum:+.2e}")
print()

print("Simple approximation vs refined expansion at nu = 10:")
print("     n     simple error    refined error")
for m in (200, 400, 800, 1600, 3200):
    exact = cos_cosecant_sum(m, 10, dps=40)
    e1 = float(exact) - simple_approximation(m, 10)
    e2 = float(exact - refined_expansion(m, 10, dps=40).value)
    print(f"  {m:5d}  {e1:+.3e}      {e2:+.3e}")
print("The simple error grows with n at fixed nu; the refined one shrinks about 32x per doubling.")
