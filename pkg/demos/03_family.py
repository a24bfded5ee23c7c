"""
A one-parameter family of inequivalent polynomials
==================================================

The matroid stays the same along the family, but the polynomials for m and
m' are equivalent only when {m, 1/m} = {m', 1/m'}. The ideal of submaximal
minors of the underlying quadratic form carries the pair {m, 1/m}.

Run with ``python3 demos/03_family.py``.
"""

from fractions import Fraction

from confpoly.equivalence import check_cert
from confpoly.family import inversion_cert, minors_ideal, prop53_evidence, psi_m, recover_pair, tower_report

for m in [2, 3, Fraction(1, 2), 5]:
    pair = recover_pair(minors_ideal(m))
    print(f"m = {str(m):4s} recovered pair {[str(x) for x in pair]}")

# m and 1/m give equivalent polynomials; the certificate is explicit.
m = Fraction(3)
print("psi_3 ~ psi_1/3:", check_cert(psi_m(m), psi_m(1 / m), inversion_cert(m)))

# %%
# Decomposition of the ideal of minors into three components. At m = 1 the
# displayed components do not reproduce the ideal, which the report records.
ev = prop53_evidence([1, 2, 3])
for row in ev["per_m"]:
    print(row)
print("pairs distinct:", ev["pairs_distinct"])

# %%
# Appending coloops multiplies the polynomial by the new variables and keeps
# the family inequivalent in every number of variables.
for k in range(3):
    rep = tower_report(2, k)
    print(k, {key: rep[key] for key in ("product_identity", "cert_verified")})
