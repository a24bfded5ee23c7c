"""
Configuration polynomials from matrices and graphs
==================================================

Build a configuration from a small integer matrix, compute its polynomial in
two independent ways, and look at the Hadamard powers that control how many
variables survive reduction.

Run with ``python3 demos/01_configuration_polynomials.py``.
"""

from confpoly.config import Configuration, hadamard_dims
from confpoly.configpoly import GraphSpec, kirchhoff, psi_basis_expansion, psi_det
from confpoly.equivalence import check_cert, reduce_variables

# A rank-3 configuration on five elements, given by the rows of a matrix.
# The last two columns are parallel, so one of them is redundant.
w = Configuration([[1, 0, 0, 1, 2],
                   [0, 1, 0, 1, 2],
                   [0, 0, 1, 1, 2]])
print("rank", w.rank, "ground set", w.ground_set)

# The determinant of the generic quadratic form and the sum over bases agree.
psi = psi_det(w)
print("psi_W =", psi)
print("basis expansion agrees:", psi == psi_basis_expansion(w))

# Hadamard dimensions grow until they hit the number of elements.
print("Hadamard dimensions s = 1..4:", hadamard_dims(w, 4).dims)

# The second Hadamard dimension bounds the number of essential variables.
rep = reduce_variables(w)
print("kept elements", rep.F, "out of", w.n)
print("certificate checks:", check_cert(psi, psi_det(rep.reduced), rep.cert))

# %%
# Graphs give Kirchhoff polynomials: one monomial per spanning tree.
square = GraphSpec(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")])
_, kir = kirchhoff(square)
print("Kirchhoff polynomial:", kir)
print("spanning trees:", len(kir.terms))
