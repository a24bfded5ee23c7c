"""A rank-4 family with infinitely many equivalence classes.

The configuration matrix

    [[1, 0, 0, 0, 1,  1 ],
     [0, 1, 0, 0, a1, b1],
     [0, 0, 1, 0, a2, 0 ],
     [0, 0, 0, 1, 0,  b2]]

has psi equivalent to psi_m = det(Q_m) with m = a1/b1. This module builds
the certificates for that equivalence and for psi_m ~ psi_{1/m}, checks the
decomposition of the ideal of 3x3 minors of Q_m into three components, and
reads m back off one of the components.
"""

import time
from dataclasses import dataclass
from fractions import Fraction

from .config import Configuration, extend_by_coloop, hadamard_dims
from .configpoly import SymbolicForm, psi_det
from .equivalence import (ContactCert, check_cert, compose_certs, invert_cert,
                          lift_cert)
from .errors import ZeroM, ZeroParameter
from .exactalg import RatMatrix, rat_str, to_rat
from .ideals import Ideal, ideal_equal, intersect, linear_part, quotient, submaximal_minors_ideal
from .polyring import Poly, VarSet, poly_from_dict

Y = VarSet.numbered("y", 6)
X = VarSet.numbered("x", 6)


@dataclass(frozen=True)
class FamilyParams:
    a1: Fraction
    a2: Fraction
    b1: Fraction
    b2: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if not (self.a1 and self.a2 and self.b1 and self.b2):
            raise ZeroParameter("a1*a2*b1*b2 must be nonzero")

    @property
    def m(self):
        return self.a1 / self.b1


def _check_m(m):
    m = to_rat(m)
    if not m:
        raise ZeroM("m must be nonzero")
    return m


def family_matrix(p):
    return RatMatrix([
        [1, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, p.a1, p.b1],
        [0, 0, 1, 0, p.a2, 0],
        [0, 0, 0, 1, 0, p.b2],
    ])


def family_config(p):
    return Configuration(family_matrix(p), list(X))


def q_m(m):
    """The symmetric 4x4 form Q_m in y1..y6."""
    m = _check_m(m)
    y = Poly.gens(Y)
    z = Poly.zero(Y)
    entries = [
        [y[0], y[4] + y[5], y[4], y[5].scale(m)],
        [y[4] + y[5], y[1], y[4], y[5]],
        [y[4], y[4], y[2], z],
        [y[5].scale(m), y[5], z, y[3]],
    ]
    return SymbolicForm(entries, Y)


def psi_m(m):
    return q_m(m).det()


def lemma54_cert(p):
    """Certificate with ``check_cert(psi_A, psi_m, cert)`` for m = a1/b1.

    First z = (x1+x5+x6, x2+a1^2 x5+b1^2 x6, x3+a2^2 x5, x4+b2^2 x6, a1 x5, b1 x6),
    then y = (z1, z2/a1^2, z3/a2^2, z4/b2^2, z5/a1, z6/a1); lambda = a1^2 a2^2 b2^2.
    """
    a1, a2, b1, b2 = p.a1, p.a2, p.b1, p.b2
    z_of_x = RatMatrix([
        [1, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, a1 ** 2, b1 ** 2],
        [0, 0, 1, 0, a2 ** 2, 0],
        [0, 0, 0, 1, 0, b2 ** 2],
        [0, 0, 0, 0, a1, 0],
        [0, 0, 0, 0, 0, b1],
    ])
    y_of_z = RatMatrix([
        [1, 0, 0, 0, 0, 0],
        [0, 1 / a1 ** 2, 0, 0, 0, 0],
        [0, 0, 1 / a2 ** 2, 0, 0, 0],
        [0, 0, 0, 1 / b2 ** 2, 0, 0],
        [0, 0, 0, 0, 1 / a1, 0],
        [0, 0, 0, 0, 0, 1 / a1],
    ])
    return ContactCert(y_of_z @ z_of_x, a1 ** 2 * a2 ** 2 * b2 ** 2, list(Y), list(X))


def _swap_cert():
    """x3 <-> x4, x5 <-> x6 on the x-coordinates."""
    perm = [0, 1, 3, 2, 5, 4]
    return ContactCert(RatMatrix([[1 if j == perm[i] else 0 for j in range(6)] for i in range(6)]),
                       1, list(X), list(X))


def inversion_cert(m):
    """Certificate with ``check_cert(psi_m, psi_{1/m}, cert)``.

    The matrices for parameters (m,1,1,1) and (1,1,m,1) differ by swapping
    columns 3<->4 and 5<->6 (and two rows), so their configuration
    polynomials differ by that swap of variables. Chaining through the
    certificates of :func:`lemma54_cert` gives lambda = 1/m^2.
    """
    m = _check_m(m)
    to_inv = lemma54_cert(FamilyParams(1, 1, m, 1))   # psi_{1/m} -> psi_A'
    from_m = lemma54_cert(FamilyParams(m, 1, 1, 1))   # psi_m -> psi_A
    return compose_certs(compose_certs(to_inv, _swap_cert()), invert_cert(from_m))


def _p(mapping):
    return poly_from_dict(Y, mapping)


def components(m):
    """The three ideals whose intersection is the ideal of 3x3 minors of Q_m."""
    m = _check_m(m)
    p1 = Ideal(Y, [
        _p({"y1": 1, "y2": m, "y5": -(m + 1), "y6": -(m + 1)}),
        _p({"y2*y4": 1, "y4*y5": -1, "y4*y6": -1, "y6^2": m - 1}),
        _p({"y2*y3": m, "y3*y5": -1, "y5^2": 1 - m, "y3*y6": -1}),
    ])
    p2 = Ideal(Y, [
        _p({"y6": 1}),
        _p({"y4": 1}),
        _p({"y1*y2*y3": 1, "y1*y5^2": -1, "y2*y5^2": -1, "y3*y5^2": -1, "y5^3": 2}),
    ])
    p3 = Ideal(Y, [
        _p({"y5": 1}),
        _p({"y3": 1}),
        _p({"y1*y2*y4": 1, "y1*y6^2": -1, "y2*y6^2": -m * m, "y4*y6^2": -1, "y6^3": 2 * m}),
    ])
    return p1, p2, p3


def minors_ideal(m):
    return submaximal_minors_ideal(q_m(m))


def recover_pair(ideal):
    """Read {m, 1/m} off the ideal of minors.

    The colon ideal I : (y3 y4) removes the two components containing y3 or
    y4 and leaves the one with a linear form y1 + m y2 - ...; normalizing its
    y1 coefficient to 1, the y2 coefficient is m. Returns the sorted pair of
    rationals, or None if no such linear form is present.
    """
    y = Poly.gens(Y)
    comp = quotient(ideal, y[2] * y[3])
    lin = linear_part(comp)
    if lin.nrows != 1 or not lin.rows[0][0] or not lin.rows[0][1]:
        return None
    row = lin.rows[0]
    m = row[1] / row[0]
    return tuple(sorted({m, 1 / m}))


def prop53_evidence(m_list, timings=False):
    """Decomposition check and invariant recovery for each m.

    Returns a report dict: per-m entries (sorted by m) with the intersection
    check and the recovered pair, plus whether the pairs are pairwise
    distinct across m values with distinct {m, 1/m}.
    """
    ms = sorted({_check_m(m) for m in m_list})
    rows = []
    for m in ms:
        t0 = time.perf_counter()
        ideal = minors_ideal(m)
        p1, p2, p3 = components(m)
        inter = intersect(intersect(p1, p2), p3)
        eq = ideal_equal(ideal, inter)
        t1 = time.perf_counter()
        pair = recover_pair(ideal)
        t2 = time.perf_counter()
        row = {"m": rat_str(m), "intersection_equal": eq,
               "pair": [rat_str(x) for x in pair] if pair else None}
        if timings:
            row["seconds"] = {"intersection": round(t1 - t0, 3), "recovery": round(t2 - t1, 3)}
        rows.append(row)
    groups = {}
    for row in rows:
        key = tuple(sorted({to_rat(row["m"]), 1 / to_rat(row["m"])}))
        groups.setdefault(key, set()).add(tuple(row["pair"]) if row["pair"] else None)
    # equal pairs exactly when {m,1/m} agree
    consistent = all(len(v) == 1 and None not in v for v in groups.values())
    distinct = len({next(iter(v)) for v in groups.values()}) == len(groups)
    return {"per_m": rows, "pairs_consistent": consistent, "pairs_distinct": distinct,
            "all_intersections_equal": all(r["intersection_equal"] for r in rows)}


def coloop_tower(m, k):
    """Family configuration for (m,1,1,1) with coloops x7..x_{6+k} appended."""
    m = _check_m(m)
    if k < 0:
        raise ValueError("k must be nonnegative")
    w = family_config(FamilyParams(m, 1, 1, 1))
    for i in range(7, 7 + k):
        w = extend_by_coloop(w, f"x{i}")
    return w


def tower_report(m, k):
    """Product identity, lifted certificate and Hadamard shift for one tower level."""
    m = _check_m(m)
    base = coloop_tower(m, 0)
    w = coloop_tower(m, k)
    psi_w = psi_det(w)
    xs = VarSet(w.ground_set)
    prod_x = Poly.const(xs, 1)
    for v in xs[6:]:
        prod_x = prod_x * Poly.var(xs, v)
    product_ok = psi_w == psi_det(base).with_vars(xs) * prod_x
    ys = VarSet.numbered("y", 6 + k)
    psi_mk = psi_m(m).with_vars(ys)
    for v in ys[6:]:
        psi_mk = psi_mk * Poly.var(ys, v)
    cert = lift_cert(lemma54_cert(FamilyParams(m, 1, 1, 1)), list(ys[6:]), list(xs[6:]))
    d0 = hadamard_dims(base, 3).dims
    dk = hadamard_dims(w, 3).dims
    return {
        "m": rat_str(m), "k": k, "rank": w.rank, "r2": dk[1], "degree": psi_w.degree(),
        "product_identity": product_ok,
        "cert_verified": check_cert(psi_w, psi_mk, cert),
        "hadamard_shift": [b - a for a, b in zip(d0, dk)] == [k] * len(d0),
        "psi_mk": psi_mk,
        "cert": cert,
    }
