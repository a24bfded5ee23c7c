"""
Classifying small configurations
================================

Every configuration of rank at most 3 has a polynomial equivalent to one of a
short list of normal forms. The classifier returns the class together with a
certificate that can be checked independently.

Run with ``python3 demos/02_classification.py``.
"""

from confpoly import classify as cl
from confpoly.config import Configuration
from confpoly.configpoly import psi_det
from confpoly.equivalence import check_cert

examples = {
    "two coordinate vectors": [[1, 0], [0, 1]],
    "triangle graph": [[1, 0, 1], [0, 1, 1]],
    "three generic columns": [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]],
    "Vandermonde": [[1, 1, 1, 1, 1, 1], [0, 1, 2, 3, 4, 5], [0, 1, 4, 9, 16, 25]],
}

for name, rows in examples.items():
    w = Configuration(rows)
    label = cl.classify(w)
    ok = check_cert(psi_det(w), label.normal_form, label.cert)
    print(f"{name:24s} rank {label.rank}  r2 {label.r2}  {label.class_id:22s} cert ok: {ok}")

# %%
# The normal forms themselves.
for class_id in cl.TEMPLATES:
    print(f"{class_id:22s} {cl.normal_form(class_id)}")

# %%
# A reduced sweep over small rank-3 matrices already meets every class.
rep = cl.run_sweep(3, items=cl.rank3_sweep_items(values=(0, 1, 2), max_extra=3))
print("items", rep["items"], "counts", rep["counts"])
print("certificate failures", rep["cert_failures"])
