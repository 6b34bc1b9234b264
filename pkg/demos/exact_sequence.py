"""Check that HH¹(B) sits in an exact sequence with H¹(B,E) and HH¹(C).

Run with ``python3 demos/exact_sequence.py``.
"""

from quiverhh import ExtensionComplexes, extension_for, extension_from_B, verify_ses
from quiverhh.field import Field
from quiverhh.fixtures import load

for name in ("core_C", "core_C_prime", "A3_zero", "A2"):
    for p in (0, 5):
        ext = extension_for(load(name, Field(p)))
        rep = verify_ses(ext, ExtensionComplexes(ext))
        d = rep.dims
        print(f"{name:13s} over {rep.field_name:3s}: "
              f"H1(B,E)={d['H1(B,E)']}  HH1(B)={d['HH1(B)']}  HH1(C)={d['HH1(C)']}  n={d['n']}  "
              f"{'exact' if rep.passed else 'FAILED ' + ', '.join(rep.failed())}")

# two different tilted cores of the same extension give the same numbers
a = verify_ses(extension_for(load("core_C"))).dims
b = verify_ses(extension_for(load("core_C_prime"))).dims
print("\nsame HH1(C):", a["HH1(C)"] == b["HH1(C)"], " same H1(B,E):", a["H1(B,E)"] == b["H1(B,E)"])

# a presentation of B whose relations are not the Jacobian ideal is caught
bad = verify_ses(extension_from_B(load("broken_B")))
print("broken_B:", "passed" if bad.passed else "fails " + ", ".join(bad.failed()))
