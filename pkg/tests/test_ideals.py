"""Tests for the Groebner-basis engine and ideal operations."""

import random

import pytest
import sympy

from confpoly import classify as cl
from confpoly.configpoly import SymbolicForm
from confpoly.errors import BudgetExceeded, ParseError, UnsupportedShape, VarSetMismatch
from confpoly.ideals import (Ideal, groebner, hilbert_function, ideal_equal, intersect, is_subideal,
                             jacobian_hilbert, linear_part, minimal_generator_degrees, normal_form, quotient,
                             s_pairs_reduce, separating_invariant, submaximal_minors_ideal)
from confpoly.polyring import Poly, VarSet, poly_from_dict

X3 = VarSet.numbered("x", 3)
Y5 = VarSet.numbered("y", 5)


def p3(mapping):
    return poly_from_dict(X3, mapping)


def py(mapping, vars=Y5):
    return poly_from_dict(vars, mapping)


def sympy_reduced_basis(ideal):
    syms = sympy.symbols(list(ideal.vars))
    exprs = []
    for g in ideal.gens:
        e = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** k for s, k in zip(syms, ex)])
                for ex, c in g.terms.items())
        exprs.append(e)
    gb = sympy.groebner(exprs, *syms, order="grevlex")
    out = set()
    for g in gb.exprs:
        poly = sympy.Poly(g, *syms)
        lc = poly.LC(order="grevlex")
        out.add(frozenset((m, sympy.Rational(c) / lc) for m, c in poly.terms()))
    return out


def as_sets(basis):
    return {frozenset((e, sympy.Rational(c.numerator, c.denominator)) for e, c in g.terms.items()) for g in basis}


def test_groebner_examples():
    x1 = p3({"x1": 1})
    assert groebner(Ideal(X3, [x1, x1])).gens == [x1]
    i = Ideal(X3, [p3({"x1^2": 1, "x2": -1}), p3({"x1*x2": 1, "x3": -1})])
    assert s_pairs_reduce(i)
    p = p3({"x1*x2": 3, "x3^2": -6})
    assert groebner(Ideal(X3, [p])).gens == [p3({"x1*x2": 1, "x3^2": -2})]


def test_basis_is_monic_sorted_and_idempotent():
    i = Ideal(X3, [p3({"x1^2": 2, "x2": -1}), p3({"x1*x2": 1, "x3": -1})])
    gb = i.groebner_basis()
    assert all(g.leading()[1] == 1 for g in gb)
    assert groebner(groebner(i)).gens == gb


def test_ideal_equal_examples():
    a = Ideal(X3, [p3({"x1": 1}), p3({"x2": 1})])
    b = Ideal(X3, [p3({"x2": 1}), p3({"x1": 1, "x2": 1})])
    assert ideal_equal(a, b)
    assert not ideal_equal(Ideal(X3, [p3({"x1": 1})]), Ideal(X3, [p3({"x1^2": 1})]))
    with pytest.raises(VarSetMismatch):
        ideal_equal(a, Ideal(["z"], []))


def test_intersect_examples():
    a = Ideal(X3, [p3({"x1": 1})])
    b = Ideal(X3, [p3({"x2": 1})])
    assert ideal_equal(intersect(a, b), Ideal(X3, [p3({"x1*x2": 1})]))
    assert ideal_equal(intersect(a, a), a)


def test_eq56():
    y = Poly.gens(Y5)
    q0 = cl.template_form(cl.TEMPLATES["R3_D5_DEPENDENT"])
    lhs = submaximal_minors_ideal(q0)
    a = Ideal(Y5, [y[0] * y[1] - y[3] ** 2, y[2], y[4]])
    b = Ideal(Y5, [y[0] * y[2] - y[4] ** 2, y[1], y[3]])
    rhs = intersect(a, b)
    assert ideal_equal(lhs, rhs)
    assert is_subideal(rhs, a) and is_subideal(rhs, b)
    prod = Ideal(Y5, [f * g for f in a.gens for g in b.gens])
    assert is_subideal(prod, rhs)


def test_submaximal_minors_examples():
    y1, y2, y3 = Poly.gens(Y5[:3])
    z = Poly.zero(Y5[:3])
    diag = SymbolicForm([[y1, z, z], [z, y2, z], [z, z, y3]])
    want = Ideal(Y5[:3], [y1 * y2, y1 * y3, y2 * y3])
    assert ideal_equal(submaximal_minors_ideal(diag), want)
    with pytest.raises(UnsupportedShape):
        submaximal_minors_ideal([])


def test_linear_part_examples():
    y = Poly.gens(Y5)
    i = Ideal(Y5, [y[2], y[4], y[0] * y[1] - y[3] ** 2])
    lin = linear_part(i)
    assert lin.nrows == 2
    assert [list(r) for r in lin.rows] == [[0, 0, 1, 0, 0], [0, 0, 0, 0, 1]]
    q0 = cl.template_form(cl.TEMPLATES["R3_D5_DEPENDENT"])
    assert linear_part(submaximal_minors_ideal(q0)).nrows == 0


def test_quotient():
    y = Poly.gens(Y5)
    a = Ideal(Y5, [y[0] * y[1] - y[3] ** 2, y[2], y[4]])
    b = Ideal(Y5, [y[0] * y[2] - y[4] ** 2, y[1], y[3]])
    # removing the component containing y2 leaves the other one
    assert ideal_equal(quotient(intersect(a, b), y[1]), a)


def test_normal_form_and_membership():
    i = Ideal(X3, [p3({"x1^2": 1, "x2": -1})])
    assert normal_form(p3({"x1^2": 1}), i) == p3({"x2": 1})
    assert i.contains(p3({"x1^3": 1, "x1*x2": -1}))
    assert not i.is_unit() and not i.is_zero()
    assert Ideal(X3, [p3({"": 1})]).is_unit()
    assert Ideal(X3, []).is_zero()


def test_budget_guard():
    gens = [p3({"x1^2": 1, "x2*x3": -1}), p3({"x1*x2": 1, "x3^2": -1}), p3({"x1*x3": 1, "x2^2": 1, "x3": 1})]
    with pytest.raises(BudgetExceeded):
        Ideal(X3, gens).groebner_basis(budget=1)


def test_json_roundtrip():
    i = Ideal(X3, [p3({"x1^2": 1, "x2": -1})])
    j = Ideal.from_json(i.to_json())
    assert ideal_equal(i, j)
    assert len(i.to_json(reduced=True)["gens"]) == 1
    with pytest.raises(ParseError):
        Ideal.from_json({"gens": []})


def test_random_ideals_match_sympy():
    r = random.Random(41)
    for _ in range(25):
        gens = []
        for _ in range(r.randint(1, 3)):
            terms = [(r.randint(-3, 3), [r.randint(0, 2) for _ in range(3)]) for _ in range(r.randint(1, 3))]
            gens.append(Poly(X3, terms))
        i = Ideal(X3, gens)
        if all(not g for g in gens):
            continue
        assert as_sets(i.groebner_basis()) == sympy_reduced_basis(i)
        assert s_pairs_reduce(i)


def test_random_intersections_contain_products():
    r = random.Random(43)
    for _ in range(10):
        def rand_ideal():
            return Ideal(X3, [Poly(X3, [(r.randint(1, 3), [r.randint(0, 2) for _ in range(3)]),
                                        (r.randint(-2, 2), [r.randint(0, 1) for _ in range(3)])])
                              for _ in range(2)])
        a, b = rand_ideal(), rand_ideal()
        c = intersect(a, b)
        assert is_subideal(c, a) and is_subideal(c, b)
        assert is_subideal(Ideal(X3, [f * g for f in a.gens for g in b.gens]), c)


def test_hilbert_and_generators():
    i = Ideal(X3, [p3({"x1": 1}), p3({"x2^2": 1})])
    assert hilbert_function(i, 3) == [1, 2, 2, 2]
    assert minimal_generator_degrees(i, 3) == [1, 1, 0]


def test_separating_invariant_r5():
    q0 = cl.template_form(cl.TEMPLATES["R3_D5_DEPENDENT"])
    q1 = cl.template_form(cl.TEMPLATES["R3_D5_INDEPENDENT"])
    f0, f1 = separating_invariant(q0), separating_invariant(q1)
    assert f0 != f1
    assert f0["hilbert"] == f1["hilbert"]
    assert f0["jacobian_hilbert"] != f1["jacobian_hilbert"]
    # rescaling the variables does not change the fingerprint
    vals = [2, 3, 5, 7, 11]
    scaled = SymbolicForm([[e.substitute([Poly.var(Y5, v).scale(c) for v, c in zip(Y5, vals)]) for e in row]
                           for row in q0.entries], Y5)
    assert separating_invariant(scaled) == f0
    with pytest.raises(UnsupportedShape):
        separating_invariant(SymbolicForm([[Poly.var(["a"], "a")]]))


def test_jacobian_hilbert_values():
    assert jacobian_hilbert(cl.normal_form("R3_D5_DEPENDENT"), 4) == [1, 5, 10, 14, 18]
    assert jacobian_hilbert(cl.normal_form("R3_D5_INDEPENDENT"), 4) == [1, 5, 10, 13, 17]
