"""Walk through the relation extension of a small tilted algebra.

Run with ``python3 demos/worked_example.py``.
"""

from quiverhh import extension_for, relation_report
from quiverhh.fixtures import load, text

print("The core algebra C:")
print(text("core_C"))

ext = extension_for(load("core_C"))
q = ext.B.quiver
print(f"dim C = {ext.C_alg.dim}, dim B = {ext.B_alg.dim}, dim E = {ext.dim_E}")

# one new arrow per relation, running backwards from its target to its source
for g in ext.new_arrows:
    a = q.arrows[g]
    print(f"new arrow {a.label}: {q.vertices[a.source].label} -> {q.vertices[a.target].label}")

print("\nPotential:")
print("  W =", ext.potential.format_grouped())
print("Cyclic derivatives, which generate the relations of B:")
ders = ext.derivatives()
for a, d in ders:
    print(f"  ∂{a.label} W = {d.format(q)}")

# the derivatives w.r.t. old arrows are not strongly minimal
rep = relation_report(ext.B_alg, [d for a, d in ders if not a.is_new])
for a, r in zip([a for a, _ in ders if not a.is_new], rep):
    flag = "strongly minimal" if r["strongly_minimal"] else "not strongly minimal"
    print(f"  ∂{a.label} W: {flag}")

print("\nClasses of new arrows and the summands E_j:")
for s in ext.summands:
    labels = ",".join(q.arrows[g].label for g in s.arrows)
    print(f"  E[{labels}] has dim {s.dim}")
print(f"n = {ext.n}")
