"""Acceptance suite: the ten end-to-end criteria, each with its time limit.

Every criterion prints one ``PASS``/``FAIL`` line (visible with ``pytest -s``
or in ``-v`` output). Criterion 8 contains one sub-check that does not hold
(the three-component decomposition at m = 1); it is reported as FAIL and kept
as a strict xfail, while the remaining sub-checks are asserted.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

from confpoly import classify as cl
from confpoly.config import hadamard_dims, hadamard_power, hadamard_product, restrict
from confpoly.configpoly import GraphSpec, kirchhoff, psi_basis_expansion, psi_det
from confpoly.equivalence import check_cert, compose_certs, invert_cert, reduce_variables, try_drop_variable
from confpoly.family import (components, family_config, inversion_cert, lemma54_cert, minors_ideal, psi_m,
                             recover_pair, tower_report)
from confpoly.ideals import Ideal, ideal_equal, intersect, submaximal_minors_ideal
from confpoly.polyring import Poly, VarSet, poly_from_dict
from confpoly.suite import DEFAULT_SEED, random_params

from oracles import hadamard_dim_bruteforce, random_cert_chain, random_config, random_connected_graph, rng, \
    spanning_trees

FAMILY_M = [1, 2, 3, Fraction(1, 2), 5]


def report(capsys, number, title, passed, seconds, limit, note=""):
    status = "PASS" if passed and (limit is None or seconds < limit) else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    with capsys.disabled():
        print(f"\n[{status}] criterion {number}: {title}; {seconds:.1f}s{budget}{' - ' + note if note else ''}")


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def complete(n):
    vs = [f"v{i}" for i in range(n)]
    return GraphSpec(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)])


def tree_monomials(g):
    return {t for t in spanning_trees(g)}


def psi_monomials(psi):
    return {frozenset(v for v, k in zip(psi.vars, e) if k) for e in psi.terms}


def test_criterion_1_oracle_identity(capsys):
    def run():
        r = rng(DEFAULT_SEED)
        bad = 0
        for _ in range(200):
            w, _ = random_config(r, r_max=4, n_max=8)
            bad += psi_det(w) != psi_basis_expansion(w)
        return bad

    bad, secs = timed(run)
    report(capsys, 1, f"psi_det == psi_basis_expansion on 200 configurations, {bad} mismatches", bad == 0, secs, 30)
    assert bad == 0 and secs < 30


def test_criterion_2_matrix_tree(capsys):
    def run():
        ok = True
        _, k4 = kirchhoff(complete(4))
        ok &= len(k4.terms) == 16 and set(k4.terms.values()) == {1}
        ok &= psi_monomials(k4) == tree_monomials(complete(4))
        _, k3 = kirchhoff(complete(3))
        ok &= k3 == poly_from_dict(VarSet.numbered("x", 3), {"x1*x2": 1, "x2*x3": 1, "x1*x3": 1})
        r = rng(DEFAULT_SEED + 2)
        for _ in range(20):
            g = random_connected_graph(r, max_vertices=6)
            _, psi = kirchhoff(g)
            ok &= set(psi.terms.values()) == {1} and psi_monomials(psi) == tree_monomials(g)
        return ok

    ok, secs = timed(run)
    report(capsys, 2, "Kirchhoff polynomials of K3, K4 and 20 random graphs match spanning trees", ok, secs, 10)
    assert ok and secs < 10


def test_criterion_3_hadamard_laws(capsys):
    def run():
        r = rng(DEFAULT_SEED + 3)
        fails = 0
        for _ in range(200):
            w, rows = random_config(r, r_max=4, n_max=8)
            dims = hadamard_dims(w, 4).dims
            good = dims == sorted(dims)
            good &= all(d <= min(w.n, comb(w.rank + s - 1, s)) for s, d in enumerate(dims, start=1))
            good &= dims[1] == hadamard_dim_bruteforce(rows, 2) if rows else True
            f = [g for g in w.ground_set if r.random() < 0.5]
            for s in range(1, 5):
                good &= restrict(hadamard_power(w, s), f) == hadamard_power(restrict(w, f), s)
            for s in range(1, 4):
                for t in range(1, 5 - s):
                    good &= hadamard_product(hadamard_power(w, s), hadamard_power(w, t)) == hadamard_power(w, s + t)
            fails += not good
        return fails

    fails, secs = timed(run)
    report(capsys, 3, f"monotonicity, bound, projection, semigroup on 200 configurations, {fails} failures",
           fails == 0, secs, 30)
    assert fails == 0 and secs < 30


def test_criterion_4_reduction(capsys):
    def run():
        r = rng(DEFAULT_SEED + 4)
        fails = 0
        for _ in range(100):
            w, rows = random_config(r, r_max=4, n_max=8)
            rep = reduce_variables(w)
            r2 = hadamard_dim_bruteforce(rows, 2) if w.rank else 0
            good = rep.nu == len(rep.F) == r2 <= comb(w.rank + 1, 2)
            good &= check_cert(psi_det(w), psi_det(rep.reduced), rep.cert)
            good &= try_drop_variable(rep.reduced) is None
            fails += not good
        return fails

    fails, secs = timed(run)
    report(capsys, 4, f"reduce_variables on 100 configurations, {fails} failures", fails == 0, secs, 120)
    assert fails == 0 and secs < 120


def test_criterion_5_rank2(capsys):
    def run():
        rep = cl.run_sweep(2)
        _, k3 = kirchhoff(complete(3))
        k3_label = cl.classify(kirchhoff(complete(3))[0])
        return rep, k3_label.class_id

    (rep, k3_class), secs = timed(run)
    ok = len(rep["counts"]) == 2 and rep["cert_failures"] == 0 and k3_class == "CONIC"
    report(capsys, 5, f"rank-2 sweep of {rep['items']} configurations: {rep['counts']}", ok, secs, 30)
    assert ok and secs < 30


def test_criterion_6_rank3(capsys):
    rep, secs = timed(lambda: cl.run_sweep(3))
    ok = (rep["classes_per_r2"] == {3: 1, 4: 2, 5: 2, 6: 1} and rep["cert_failures"] == 0
          and rep["check_failures"] == 0)
    report(capsys, 6, f"rank-3 sweep of {rep['items']} matrices, classes per r2 {rep['classes_per_r2']}, "
           f"{rep['cert_failures']} cert failures, {rep['check_failures']} cross-check failures", ok, secs, 300)
    assert ok and secs < 300


def test_criterion_7_eq56(capsys):
    def run():
        ys = VarSet.numbered("y", 5)
        y = Poly.gens(ys)
        q0 = cl.template_form(cl.TEMPLATES["R3_D5_DEPENDENT"])
        a = Ideal(ys, [y[0] * y[1] - y[3] ** 2, y[2], y[4]])
        b = Ideal(ys, [y[0] * y[2] - y[4] ** 2, y[1], y[3]])
        return ideal_equal(submaximal_minors_ideal(q0), intersect(a, b))

    ok, secs = timed(run)
    report(capsys, 7, "I_2(Q_0) equals the two-component intersection", ok, secs, 30)
    assert ok and secs < 30


def family_checks():
    out = {}
    r = rng(DEFAULT_SEED)
    tuples = [random_params(r) for _ in range(25)]
    out["i_lemma54"] = all(check_cert(psi_det(family_config(p)), psi_m(p.m), lemma54_cert(p)) for p in tuples)
    out["ii_decomposition"] = {}
    for m in FAMILY_M:
        p1, p2, p3 = components(m)
        out["ii_decomposition"][m] = ideal_equal(minors_ideal(m), intersect(intersect(p1, p2), p3))
    out["iii_inversion"] = all(check_cert(psi_m(m), psi_m(1 / Fraction(m)), inversion_cert(m)) for m in FAMILY_M)
    pairs = [recover_pair(minors_ideal(m)) for m in (2, 3, 5)]
    out["iv_pairs_distinct"] = None not in pairs and len(set(pairs)) == 3
    out["v_tower"] = all(tower_report(m, k)["product_identity"] and tower_report(m, k)["cert_verified"]
                         for m in FAMILY_M for k in range(4))
    return out


def test_criterion_8_family(capsys):
    res, secs = timed(family_checks)
    decomp = res["ii_decomposition"]
    generic_ok = all(v for m, v in decomp.items() if m != 1)
    others = res["i_lemma54"] and res["iii_inversion"] and res["iv_pairs_distinct"] and res["v_tower"]
    all_ok = others and all(decomp.values())
    failed = [str(m) for m, v in decomp.items() if not v]
    note = f"decomposition fails for m in {failed}" if failed else ""
    report(capsys, 8, "family: certificates, decomposition, inversion, invariant pairs, tower", all_ok, secs, 600,
           note)
    # everything except the m = 1 decomposition is asserted here; m = 1 is the strict xfail below
    assert others and generic_ok and secs < 600


@pytest.mark.xfail(strict=True, reason="I_2(Q_1) is not contained in the first displayed component")
def test_criterion_8_decomposition_at_m_equals_1():
    p1, p2, p3 = components(1)
    assert ideal_equal(minors_ideal(1), intersect(intersect(p1, p2), p3))


def test_criterion_9_certificate_algebra(capsys):
    def run():
        r = rng(DEFAULT_SEED + 9)
        fails = 0
        for _ in range(100):
            psi, phi, chi, c1, c2 = random_cert_chain(r)
            good = check_cert(phi, psi, c1) and check_cert(chi, phi, c2)
            good &= check_cert(chi, psi, compose_certs(c1, c2))
            good &= check_cert(psi, phi, invert_cert(c1)) and check_cert(phi, chi, invert_cert(c2))
            fails += not good
        return fails

    fails, secs = timed(run)
    report(capsys, 9, f"compose/invert on 100 random certificate pairs, {fails} failures", fails == 0, secs, 10)
    assert fails == 0 and secs < 10


def test_criterion_10_determinism(capsys):
    def run():
        outs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "confpoly.cli", "verify-paper"],
                                  capture_output=True, check=False)
            outs.append(proc.stdout)
        return outs

    (a, b), secs = timed(run)
    same = a == b and len(a) > 0
    rep = json.loads(a)
    failing = [c["name"] for c in rep["checks"] if not c["passed"]]
    note = f"digest {rep['digest'][:12]}; report lists failing checks {failing}"
    report(capsys, 10, "verify-paper twice gives byte-identical reports", same, secs, None, note)
    assert same
