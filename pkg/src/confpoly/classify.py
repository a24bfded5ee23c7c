"""Normal forms of configuration polynomials of rank at most 3.

Every configuration is first reduced to W_F with |F| = r_W^2. On the reduced
configuration the canonical basis A is replaced by T A for a constant
invertible T, chosen per case so that the form Q_{TA} = T Q_A T^t matches a
fixed template matrix N(y) entry by entry. Reading the y-variables off the
template then gives the certificate

    psi_{W_F}(x) = det(T)^-2 * det N(ell x).

Class ids
---------
TRIVIAL, PRODUCT_1, PRODUCT_2, CONIC for ranks 0-2; for rank 3
R3_D3_PRODUCT, R3_D4_REDUCIBLE, R3_D4_IRREDUCIBLE, R3_D5_DEPENDENT,
R3_D5_INDEPENDENT and R3_D6_GENERIC, keyed by r_W^2 and the case split.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import comb

from .config import Configuration, config_from_columns, is_connected, normalized_form
from .configpoly import SymbolicForm, cone_graph_model, kirchhoff, psi_det
from .equivalence import ContactCert, check_cert, compose_certs, reduce_variables
from .errors import NotReduced, UnsupportedShape, WrongRank
from .exactalg import RatMatrix, det, rank
from .ideals import jacobian_hilbert
from .polyring import Poly, VarSet

# templates: entry (i, j) is {y-index: coefficient}
_T_DIAG = {
    1: [[{0: 1}]],
    2: [[{0: 1}, {}], [{}, {1: 1}]],
    3: [[{0: 1}, {}, {}], [{}, {1: 1}, {}], [{}, {}, {2: 1}]],
}
TEMPLATES = {
    "TRIVIAL": [],
    "PRODUCT_1": _T_DIAG[1],
    "PRODUCT_2": _T_DIAG[2],
    "CONIC": [[{0: 1}, {2: 1}], [{2: 1}, {1: 1}]],
    "R3_D3_PRODUCT": _T_DIAG[3],
    "R3_D4_REDUCIBLE": [[{0: 1}, {3: 1}, {}], [{3: 1}, {1: 1}, {}], [{}, {}, {2: 1}]],
    "R3_D4_IRREDUCIBLE": [[{0: 1}, {3: 1}, {3: 1}], [{3: 1}, {1: 1}, {3: 1}], [{3: 1}, {3: 1}, {2: 1}]],
    "R3_D5_DEPENDENT": [[{0: 1}, {3: 1}, {4: 1}], [{3: 1}, {1: 1}, {}], [{4: 1}, {}, {2: 1}]],
    "R3_D5_INDEPENDENT": [[{0: 1}, {3: 1}, {3: 1, 4: 1}], [{3: 1}, {1: 1}, {4: 1}],
                          [{3: 1, 4: 1}, {4: 1}, {2: 1}]],
    "R3_D6_GENERIC": [[{0: 1}, {3: 1}, {5: 1}], [{3: 1}, {1: 1}, {4: 1}], [{5: 1}, {4: 1}, {2: 1}]],
}
CLASS_R2 = {"TRIVIAL": 0, "PRODUCT_1": 1, "PRODUCT_2": 2, "CONIC": 3, "R3_D3_PRODUCT": 3,
            "R3_D4_REDUCIBLE": 4, "R3_D4_IRREDUCIBLE": 4, "R3_D5_DEPENDENT": 5,
            "R3_D5_INDEPENDENT": 5, "R3_D6_GENERIC": 6}


def _nvars(tmpl):
    return 1 + max((k for row in tmpl for entry in row for k in entry), default=-1)


def template_form(tmpl, prefix="y"):
    """SymbolicForm of a template, in variables y1..yk."""
    vars = VarSet.numbered(prefix, _nvars(tmpl))
    k = len(vars)
    entries = [[Poly.linear(vars, [entry.get(i, 0) for i in range(k)]) for entry in row] for row in tmpl]
    return SymbolicForm(entries, vars) if tmpl else None


def normal_form(class_id, prefix="y"):
    """det of the class template, in y1..yk."""
    tmpl = TEMPLATES[class_id]
    if not tmpl:
        return Poly.const(VarSet(), 1)
    return template_form(tmpl, prefix).det()


def representative(class_id):
    """A configuration in each class (used for idempotence checks and demos)."""
    cols = {
        "TRIVIAL": [],
        "PRODUCT_1": [(1,)],
        "PRODUCT_2": [(1, 0), (0, 1)],
        "CONIC": [(1, 0), (0, 1), (1, 1)],
        "R3_D3_PRODUCT": [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        "R3_D4_REDUCIBLE": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)],
        "R3_D4_IRREDUCIBLE": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
        "R3_D5_DEPENDENT": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 0)],
        "R3_D5_INDEPENDENT": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)],
        "R3_D6_GENERIC": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)],
    }[class_id]
    if not cols:
        return Configuration(RatMatrix.zeros(0, 0), [])
    return config_from_columns(cols)


@dataclass
class ClassLabel:
    """Equivalence class of psi_W with a certificate against the normal form.

    ``cert`` satisfies ``check_cert(psi_W, normal_form, cert)``.
    """

    rank: int
    r2: int
    class_id: str
    normal_form: Poly
    cert: ContactCert = None
    template: SymbolicForm = None
    F: tuple = ()
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "rank": self.rank,
            "r2": self.r2,
            "class_id": self.class_id,
            "normal_form": self.normal_form.to_json(),
            "F": list(self.F),
            "checks": dict(self.checks),
            "cert": self.cert.to_json() if self.cert is not None else None,
        }


def _readoff_cert(v, t, tmpl):
    """Certificate psi_V = det(T)^-2 * det N(ell x) for the congruence T Q_A T^t = N(ell x)."""
    k = _nvars(tmpl)
    n = v.n
    if n != k:
        raise NotReduced(f"template has {k} variables but the configuration has {n} elements")
    ys = [f"y{i}" for i in range(1, k + 1)]
    if not tmpl:
        return ContactCert(RatMatrix.identity(0), 1, [], [])
    b = (t @ v.basis).rows
    r = len(b)
    m = [[tuple(b[i][e] * b[j][e] for e in range(n)) for j in range(r)] for i in range(r)]
    forms = [None] * k
    for i in range(r):
        for j in range(r):
            entry = tmpl[i][j]
            if len(entry) == 1:
                (y, c), = entry.items()
                if c == 1 and forms[y] is None:
                    forms[y] = m[i][j]
    if any(f is None for f in forms):
        raise UnsupportedShape("template does not expose every variable")
    for i in range(r):
        for j in range(r):
            val = [Fraction(0)] * n
            for y, c in tmpl[i][j].items():
                val = [a + c * x for a, x in zip(val, forms[y])]
            if tuple(val) != m[i][j]:
                raise UnsupportedShape(f"congruent form does not match the template at ({i},{j})")
    lam = 1 / det(t) ** 2
    return ContactCert(RatMatrix(forms, ncols=n), lam, ys, list(v.ground_set))


def _rows_perm(perm):
    r = len(perm)
    return RatMatrix([[1 if j == perm[i] else 0 for j in range(r)] for i in range(r)], ncols=r)


def _indep(u, v):
    return u[0] * v[1] - u[1] * v[0] != 0


def _rank3_transform(v, r2):
    """(class_id, T) for a reduced rank-3 configuration."""
    _, a = normalized_form(v)
    extra = [[a.rows[i][j] for i in range(3)] for j in range(3, a.ncols)]
    eye = RatMatrix.identity(3)
    if r2 == 3:
        return "R3_D3_PRODUCT", eye
    if r2 == 4:
        col = extra[0]
        zeros = [i for i in range(3) if col[i] == 0]
        if len(zeros) == 1:
            z = zeros[0]
            return "R3_D4_REDUCIBLE", _rows_perm([i for i in range(3) if i != z] + [z])
        if not zeros:
            return "R3_D4_IRREDUCIBLE", RatMatrix([[1 / col[i] if i == j else 0 for j in range(3)]
                                                    for i in range(3)])
        raise UnsupportedShape("rank-3 reduced configuration with r2 = 4 has an unexpected column")
    if r2 == 5:
        c1, c2 = extra

        def pair(rows, i, j):
            return (c1[rows[i]] * c1[rows[j]], c2[rows[i]] * c2[rows[j]])

        ident = (0, 1, 2)
        p12, p13, p23 = pair(ident, 0, 1), pair(ident, 0, 2), pair(ident, 1, 2)
        if _indep(p12, p13) and _indep(p12, p23) and _indep(p13, p23):
            # p13 = lam p12 + mu p23
            dd = p12[0] * p23[1] - p12[1] * p23[0]
            lam = (p13[0] * p23[1] - p13[1] * p23[0]) / dd
            mu = (p12[0] * p13[1] - p12[1] * p13[0]) / dd
            t = RatMatrix([[1 / mu, 0, 0], [0, 1, 0], [0, 0, 1 / lam]])
            return "R3_D5_INDEPENDENT", t
        for perm in permutations(range(3)):
            q12, q13, q23 = pair(perm, 0, 1), pair(perm, 0, 2), pair(perm, 1, 2)
            if not any(q12) or not _indep(q12, q13) or _indep(q12, q23):
                continue
            lam = next(Fraction(x) / y for x, y in zip(q23, q12) if y)
            elim = RatMatrix([[1, 0, 0], [0, 1, 0], [-lam, 0, 1]])
            return "R3_D5_DEPENDENT", elim @ _rows_perm(perm)
        raise UnsupportedShape("no row order realizes the dependent-pair normal form")
    if r2 == 6:
        return "R3_D6_GENERIC", eye
    raise UnsupportedShape(f"rank 3 with r2 = {r2}")


_EXPECTED_JACOBIAN = {}


def _jacobian_signature(class_id):
    if class_id not in _EXPECTED_JACOBIAN:
        _EXPECTED_JACOBIAN[class_id] = jacobian_hilbert(normal_form(class_id), 4)
    return _EXPECTED_JACOBIAN[class_id]


def _label(w, red, class_id, t, cross_check):
    tmpl = TEMPLATES[class_id]
    local = _readoff_cert(red.reduced, t, tmpl)
    cert = compose_certs(local, red.cert)
    label = ClassLabel(rank=w.rank, r2=red.r2, class_id=class_id, normal_form=normal_form(class_id),
                       cert=cert, template=template_form(tmpl), F=red.F)
    if cross_check and class_id.startswith("R3_D4"):
        connected = is_connected(red.reduced)
        label.checks["matroid_connected"] = connected
        label.checks["connectivity_agrees"] = connected == (class_id == "R3_D4_IRREDUCIBLE")
    if cross_check and class_id.startswith("R3_D5"):
        hf = jacobian_hilbert(psi_det(red.reduced), 4)
        label.checks["jacobian_hilbert"] = hf
        label.checks["jacobian_agrees"] = hf == _jacobian_signature(class_id)
    return label


def classify_rank2(w, cross_check=True):
    if w.rank != 2:
        raise WrongRank(f"expected rank 2, got {w.rank}")
    red = reduce_variables(w)
    class_id = "PRODUCT_2" if red.r2 == 2 else "CONIC"
    return _label(w, red, class_id, RatMatrix.identity(2), cross_check)


def classify_rank3(w, cross_check=True):
    if w.rank != 3:
        raise WrongRank(f"expected rank 3, got {w.rank}")
    red = reduce_variables(w)
    class_id, t = _rank3_transform(red.reduced, red.r2)
    return _label(w, red, class_id, t, cross_check)


def classify(w, cross_check=True):
    """Class label of psi_W for r_W <= 3."""
    r = w.rank
    if r == 0:
        return _label(w, reduce_variables(w), "TRIVIAL", RatMatrix.identity(0), cross_check)
    if r == 1:
        return _label(w, reduce_variables(w), "PRODUCT_1", RatMatrix.identity(1), cross_check)
    if r == 2:
        return classify_rank2(w, cross_check)
    if r == 3:
        return classify_rank3(w, cross_check)
    raise WrongRank(f"classification covers ranks 0-3, got {r}")


def extremal_class(w):
    """Product class if r_W^2 = r_W, complete-graph class if r_W^2 = C(r_W+1, 2), else None.

    The complete-graph normal form is the Kirchhoff polynomial of K_{r+1}
    (cone over K_r), certified by :func:`cone_graph_model`.
    """
    red = reduce_variables(w)
    r = w.rank
    if red.r2 == r:
        tmpl = [[{i: 1} if i == j else {} for j in range(r)] for i in range(r)]
        local = _readoff_cert(red.reduced, RatMatrix.identity(r), tmpl)
        form = template_form(tmpl)
        nf = form.det() if form is not None else Poly.const(VarSet(), 1)
        return ClassLabel(rank=r, r2=red.r2, class_id=f"PRODUCT_{r}", normal_form=nf,
                          cert=compose_certs(local, red.cert), template=form, F=red.F)
    if red.r2 == comb(r + 1, 2):
        graph, local = cone_graph_model(red.reduced)
        _, nf = kirchhoff(graph)
        return ClassLabel(rank=r, r2=red.r2, class_id=f"COMPLETE_K{r + 1}", normal_form=nf,
                          cert=compose_certs(local, red.cert), F=red.F)
    return None


def conic_chain_certs():
    """Step certificates turning the Kirchhoff polynomial of K_3 into x1*x2 - x3^2.

    Steps: x2 -> x1 + x2; complete the square with x1 -> x1 - x2/2 - x3;
    scale x2 by 2; split x1^2 - x2^2 with x1 -> (x1+x2)/2, x2 -> (x1-x2)/2.
    Returns the list of step certificates and their composite.
    """
    xs = ["x1", "x2", "x3"]
    h = Fraction(1, 2)
    steps = [
        [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
        [[1, -h, -1], [0, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 2, 0], [0, 0, 1]],
        [[h, h, 0], [h, -h, 0], [0, 0, 1]],
    ]
    certs = [ContactCert(RatMatrix(s), 1, xs, xs) for s in steps]
    total = certs[0]
    for c in certs[1:]:
        total = compose_certs(total, c)
    return certs, total


# sweeps


def _canon_sign(v):
    nz = next((x for x in v if x), 0)
    return tuple(-x for x in v) if nz < 0 else tuple(v)


def rank2_sweep_items(values=(0, 1, -1, 2), n_max=4):
    """Rank-2 configurations given by column multisets, columns up to sign."""
    vecs = sorted({_canon_sign(v) for v in product(values, repeat=2)})
    out = []
    for n in range(2, n_max + 1):
        for cols in combinations_with_replacement(vecs, n):
            if rank(RatMatrix([list(c) for c in cols])) == 2:
                out.append(cols)
    return out


def rank3_sweep_items(values=(0, 1, 2, 3), max_extra=3):
    """Matrices (I_3 | A') with A' entries in ``values``, deduplicated.

    Two A' are identified when they differ by a permutation of columns or by
    a permutation of rows (compensated by relabeling the identity columns).
    """
    vecs = list(product(values, repeat=3))
    seen = set()
    out = []
    for k in range(max_extra + 1):
        for cols in combinations_with_replacement(vecs, k):
            canon = min(tuple(sorted(tuple(c[p] for p in perm) for c in cols))
                        for perm in permutations(range(3)))
            if canon not in seen:
                seen.add(canon)
                out.append(canon)
    return out


def _rank3_config(extra):
    eye = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return config_from_columns(eye + list(extra))


def _sweep_one(args):
    kind, item, cross_check = args
    w = config_from_columns(item) if kind == 2 else _rank3_config(item)
    label = classify(w, cross_check=cross_check)
    ok = check_cert(psi_det(w), label.normal_form, label.cert)
    agree = all(v for k, v in label.checks.items() if k.endswith("agrees"))
    return label.r2, label.class_id, ok, agree


def run_sweep(kind, items=None, jobs=1, cross_check=True):
    """Classify every item; returns counts per (r2, class_id) and failure lists.

    ``kind`` is 2 or 3. Output is independent of ``jobs``.
    """
    if items is None:
        items = rank2_sweep_items() if kind == 2 else rank3_sweep_items()
    args = [(kind, it, cross_check) for it in items]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_one, args, chunksize=64))
    else:
        results = [_sweep_one(a) for a in args]
    counts = Counter()
    bad_certs, bad_checks = [], []
    for it, (r2, cid, ok, agree) in zip(items, results):
        counts[(r2, cid)] += 1
        if not ok:
            bad_certs.append(it)
        if not agree:
            bad_checks.append(it)
    classes_per_r2 = Counter(r2 for r2, _ in counts)
    return {
        "items": len(items),
        "counts": {f"{r2}:{cid}": n for (r2, cid), n in sorted(counts.items())},
        "classes_per_r2": dict(sorted(classes_per_r2.items())),
        "cert_failures": len(bad_certs),
        "check_failures": len(bad_checks),
    }
