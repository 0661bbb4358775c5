"""One value of C_n(nu) computed by every independent route.

The direct sum is the reference.  The finite cotangent form is exact, the
digamma series carries a tail bracket and the two integrals carry
quadrature error estimates.

Run:  python demos/02_four_ways_to_one_number.py [n] [nu]
"""

import sys

from cosecsum import (cos_cosecant_sum, finite_series_eval, finite_series_variants,
                      infinite_series_eval, integral_eval_hyperbolic, integral_eval_poisson)

n = int(sys.argv[1]) if len(sys.argv) > 1 else 100
nu = int(sys.argv[2]) if len(sys.argv) > 2 else 16
ref = cos_cosecant_sum(n, nu)

print(f"C_{n}({nu}) by direct summation: {ref!r}\n")
rows = [("finite cotangent form", finite_series_eval(n, nu), None)]
for v in ("sin2", "cos2", "ctg_product"):
    rows.append((f"finite form ({v})", finite_series_variants(n, nu, v), None))
for label, fn in (("digamma series", infinite_series_eval),
                  ("Poisson-kernel integral", integral_eval_poisson),
                  ("hyperbolic integral", integral_eval_hyperbolic)):
    try:
        ev = fn(n, nu)
    except ValueError as exc:
        print(f"{label:26s} not available: {exc}")
        continue
    rows.append((label, ev.value, ev.error_bracket))

for label, value, br in rows:
    extra = "" if br is None else f"  bracket width {br.width:.1e}"
    print(f"{label:26s} {value!r:>22}  diff {value - ref:+.1e}{extra}")
