"""Hom spaces between the summands of E and where End(E) lands in H¹(B,E).

Run with ``python3 demos/bricks.py``.
"""

from quiverhh import brick_report, extension_for
from quiverhh.fixtures import load

for name in ("core_C", "core_C_prime", "A3_zero"):
    r = brick_report(extension_for(load(name)))
    print(name)
    print("  summands:", ", ".join(r.labels))
    for label, row in zip(r.labels, r.table):
        print(f"  Hom({label}, -) = {row}")
    print(f"  orthogonal bricks: {'yes' if r.orthogonal_bricks else 'no'}")
    print(f"  n = {r.n} <= dim End(E) = {r.dim_end} <= dim H1(B,E) = {r.h1}: {r.bounds_hold}")
    print(f"  End(E) injects into H1(B,E): {r.end_rank_in_h1 == r.dim_end}")
