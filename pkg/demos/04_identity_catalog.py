"""Sweep every identity in the catalog and print a compact report.

Run:  python demos/04_identity_catalog.py [n_max]
"""

import sys
import time

from cosecsum import run_catalog

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 50
t0 = time.perf_counter()
reports = run_catalog(n_max, workers=4)
elapsed = time.perf_counter() - t0

print(f"{'identity':16s} {'checks':>7s} {'worst rel':>10s}  status")
for r in reports:
    status = "ok" if r.passed else f"FAIL {r.error or r.worst_case_params}"
    print(f"{r.id.value:16s} {r.checks:7d} {r.worst_rel_residual:10.1e}  {status}")
print(f"\n{sum(r.passed for r in reports)}/{len(reports)} passed for n = 2..{n_max} in {elapsed:.2f} s")
for r in reports[:3]:
    print(f"  {r.id.value}: {r.id.description}")
