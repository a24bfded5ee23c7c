"""Tests for configuration forms, configuration polynomials and graph models."""

import pytest

from confpoly.config import Configuration, config_from_columns, extend_by_coloop, matroid
from confpoly.configpoly import (GraphSpec, SymbolicForm, cone_graph_model, configuration_form, form_of_matrix,
                                 kirchhoff, matroid_polynomial, psi_basis_expansion, psi_det, reconstruct_from_form)
from confpoly.equivalence import check_cert
from confpoly.errors import DisconnectedGraph, NotAConfigurationForm, ParseError
from confpoly.exactalg import RatMatrix
from confpoly.polyring import Poly, VarSet, poly_from_dict

from oracles import random_config, random_connected_graph, rng, spanning_trees

X3 = VarSet.numbered("x", 3)
K3_PSI = poly_from_dict(X3, {"x1*x2": 1, "x2*x3": 1, "x1*x3": 1})


def complete(n):
    vs = [f"v{i}" for i in range(n)]
    return GraphSpec(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)])


def tree_poly(g):
    vars = VarSet(g.edge_labels)
    out = Poly.zero(vars)
    for t in spanning_trees(g):
        out = out + Poly(vars, [(1, [1 if v in t else 0 for v in vars])])
    return out


def test_configuration_form_examples():
    q = configuration_form(Configuration.full(3))
    x1, x2, x3 = Poly.gens(X3)
    z = Poly.zero(X3)
    assert q.entries == ((x1, z, z), (z, x2, z), (z, z, x3))
    a1, a2, a3 = 2, 3, 5
    q = configuration_form(Configuration([[1, 0, 0, a1], [0, 1, 0, a2], [0, 0, 1, a3]]))
    x = Poly.gens(VarSet.numbered("x", 4))
    assert q.entries[0][0] == x[0] + x[3].scale(a1 * a1)
    assert q.entries[0][1] == x[3].scale(a1 * a2)
    assert q.entries[2][2] == x[2] + x[3].scale(a3 * a3)


def test_family_form_matches_display():
    a1, a2, b1, b2 = 2, 3, 5, 7
    a = RatMatrix([[1, 0, 0, 0, 1, 1], [0, 1, 0, 0, a1, b1], [0, 0, 1, 0, a2, 0], [0, 0, 0, 1, 0, b2]])
    q = form_of_matrix(a, VarSet.numbered("x", 6))
    x = Poly.gens(VarSet.numbered("x", 6))
    assert q.entries[0][0] == x[0] + x[4] + x[5]
    assert q.entries[0][1] == x[4].scale(a1) + x[5].scale(b1)
    assert q.entries[1][1] == x[1] + x[4].scale(a1 ** 2) + x[5].scale(b1 ** 2)
    assert q.entries[2][3] == Poly.zero(q.vars)
    assert q.entries[1][3] == x[5].scale(b1 * b2)


def test_psi_det_examples():
    w, psi = kirchhoff(complete(3))
    assert psi == K3_PSI
    assert psi_det(Configuration.full(4)) == poly_from_dict(VarSet.numbered("x", 4), {"x1*x2*x3*x4": 1})
    zero = Configuration(RatMatrix.zeros(0, 2))
    assert psi_det(zero) == Poly.const(VarSet.numbered("x", 2), 1)


def test_psi_basis_expansion_examples():
    assert psi_basis_expansion(Configuration.full(3)) == poly_from_dict(X3, {"x1*x2*x3": 1})
    w, _ = kirchhoff(complete(3))
    assert set(psi_basis_expansion(w).terms.values()) == {1}


def test_psi_oracle_random():
    r = rng(3)
    for _ in range(60):
        w, _ = random_config(r)
        psi = psi_det(w)
        assert psi == psi_basis_expansion(w)
        assert psi.is_homogeneous() == (True, w.rank) or not psi
        assert all(c > 0 for c in psi.terms.values())
        bases = {frozenset(b) for b in matroid(w).bases()}
        assert {frozenset(v for v, k in zip(psi.vars, e) if k) for e in psi.terms} == bases


def test_psi_changes_by_square_under_row_operations():
    rows = [[1, 2, 0, 1], [0, 1, 3, -1]]
    w = Configuration(rows)
    a = RatMatrix(rows)
    t = RatMatrix([[2, 1], [1, 3]])
    q = form_of_matrix(t @ a, w.ground_set)
    d = 2 * 3 - 1
    assert q.det() == psi_det(form_config(a, w)).scale(d * d)


def form_config(a, w):
    return Configuration(a, w.ground_set)


def test_matroid_polynomial_examples():
    assert matroid_polynomial(matroid(Configuration.full(2))) == poly_from_dict(VarSet.numbered("x", 2), {"x1*x2": 1})
    w, _ = kirchhoff(complete(3))
    assert matroid_polynomial(matroid(w)) == K3_PSI
    u34 = Configuration([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
    p = matroid_polynomial(matroid(u34))
    assert len(p.terms) == 4 and p.degree() == 3


def test_kirchhoff_examples():
    _, psi = kirchhoff(GraphSpec(["a", "b"], [("a", "b")]))
    assert psi == poly_from_dict(["x1"], {"x1": 1})
    g = complete(4)
    _, psi = kirchhoff(g)
    assert psi == tree_poly(g)
    assert len(psi.terms) == 16
    with pytest.raises(DisconnectedGraph):
        kirchhoff(GraphSpec(["a", "b", "c"], [("a", "b")]))
    with pytest.raises(ParseError):
        GraphSpec(["a"], [("a", "b")])


def test_kirchhoff_loops_and_parallel_edges():
    g = GraphSpec(["a", "b"], [("a", "b"), ("a", "b"), ("a", "a")])
    _, psi = kirchhoff(g)
    assert psi == poly_from_dict(X3, {"x1": 1, "x2": 1})


def test_kirchhoff_random_graphs():
    r = rng(5)
    for _ in range(10):
        g = random_connected_graph(r)
        _, psi = kirchhoff(g)
        assert psi == tree_poly(g)


def test_graph_json_roundtrip():
    g = complete(3)
    assert GraphSpec.from_json(g.to_json()) == g
    with pytest.raises(ParseError):
        GraphSpec.from_json({"edges": []})


def test_reconstruct_from_form():
    assert reconstruct_from_form(configuration_form(Configuration.full(3))) == Configuration.full(3)
    r = rng(9)
    for _ in range(20):
        w, _ = random_config(r)
        back = reconstruct_from_form(configuration_form(w)) if w.rank else w
        assert configuration_form(back) == configuration_form(w) if w.rank else True
    x1, x2 = Poly.gens(VarSet.numbered("x", 2))
    bad = SymbolicForm([[x1, x1], [x1, x2]])
    with pytest.raises(NotAConfigurationForm):
        reconstruct_from_form(bad)


def test_form_json_roundtrip():
    q = configuration_form(Configuration([[1, 2, 0], [0, 1, 1]]))
    assert SymbolicForm.from_json(q.to_json()) == q


def test_cone_graph_model():
    g, cert = cone_graph_model(Configuration.full(3))
    assert len(g.edges) == 3
    assert check_cert(psi_det(Configuration.full(3)), kirchhoff(g)[1], cert)
    k4w = config_from_columns([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
    g, cert = cone_graph_model(k4w)
    _, psi_g = kirchhoff(g)
    assert len(psi_g.terms) == 16
    assert check_cert(psi_det(k4w), psi_g, cert)
    assert cone_graph_model(Configuration([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])) is None


def test_coloop_factor():
    w, psi = kirchhoff(complete(3))
    w2 = extend_by_coloop(w, "f")
    assert psi_det(w2) == psi.with_vars(w2.ground_set) * Poly.var(w2.ground_set, "f")
