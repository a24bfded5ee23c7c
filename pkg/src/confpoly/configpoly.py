"""Configuration forms and configuration polynomials.

``psi_det`` (determinant of the form) and ``psi_basis_expansion`` (sum over
matroid bases of squared maximal minors) are two independent routes to the
same polynomial; the test suite holds them against each other.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .config import Configuration, MatroidView
from .errors import DisconnectedGraph, NotAConfigurationForm, ParseError, VarSetMismatch
from .exactalg import RatMatrix, det, rank, row_basis
from .polyring import Poly, VarSet, det_poly, minors


class SymbolicForm:
    """Symmetric r x r matrix of linear forms over one VarSet."""

    __slots__ = ("vars", "entries")

    def __init__(self, entries, vars=None):
        entries = tuple(tuple(row) for row in entries)
        r = len(entries)
        if any(len(row) != r for row in entries):
            raise NotAConfigurationForm("form matrix is not square")
        if vars is None:
            if not r:
                raise VarSetMismatch("empty form needs an explicit VarSet")
            vars = entries[0][0].vars
        self.vars = vars if isinstance(vars, VarSet) else VarSet(vars)
        for i in range(r):
            for j in range(r):
                if entries[i][j].vars != self.vars:
                    raise VarSetMismatch("form entries use different variable sets")
                if entries[i][j] != entries[j][i]:
                    raise NotAConfigurationForm(f"form is not symmetric at ({i},{j})")
        self.entries = entries

    @property
    def size(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, SymbolicForm) and self.vars == other.vars and self.entries == other.entries

    def __hash__(self):
        return hash((self.vars, self.entries))

    def __repr__(self):
        return "SymbolicForm([" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "])"

    def det(self):
        return det_poly(self.entries, vars=self.vars)

    def minors(self, k):
        return minors(self.entries, k)

    def coefficient_matrix(self, var):
        """Constant symmetric matrix C with ``entry[i][j] = sum_e C_e[i][j] x_e``, for one e."""
        i = self.vars.index(var) if isinstance(var, str) else var
        e = [0] * len(self.vars)
        e[i] = 1
        e = tuple(e)
        return RatMatrix([[x.coeff(e) for x in row] for row in self.entries], ncols=self.size)

    def congruent(self, t):
        """T Q T^t for a constant r x r matrix T."""
        r = self.size
        rows = t.rows
        zero = Poly.zero(self.vars)
        tq = [[sum((self.entries[k][j].scale(rows[i][k]) for k in range(r) if rows[i][k]), zero)
               for j in range(r)] for i in range(r)]
        out = [[sum((tq[i][k].scale(rows[j][k]) for k in range(r) if rows[j][k]), zero)
                for j in range(r)] for i in range(r)]
        return SymbolicForm(out, self.vars)

    def to_json(self):
        return {"vars": list(self.vars), "entries": [[x.to_json() for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data):
        try:
            vars = VarSet(data["vars"])
            entries = [[Poly.from_json(x).with_vars(vars) for x in row] for row in data["entries"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed form JSON: {exc}") from exc
        return cls(entries, vars)


def form_of_matrix(a, labels):
    """Q_A for an explicit configuration matrix ``a`` (rows = basis vectors)."""
    vars = VarSet(labels)
    r, n = a.nrows, a.ncols
    rows = a.rows
    entries = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            coeffs = [rows[i][e] * rows[j][e] for e in range(n)]
            entries[i][j] = entries[j][i] = Poly.linear(vars, coeffs)
    return SymbolicForm(entries, vars)


def configuration_form(w):
    """Q_W computed from the canonical (RREF) basis."""
    return form_of_matrix(w.basis, w.ground_set)


def psi_det(w):
    """Configuration polynomial det(Q_W) in the ground-set variables."""
    return det_poly(configuration_form(w).entries, vars=VarSet(w.ground_set))


def psi_basis_expansion(w):
    """Configuration polynomial as sum over bases B of det(A_B)^2 x^B."""
    vars = VarSet(w.ground_set)
    m = MatroidView(w)
    index = {e: i for i, e in enumerate(w.ground_set)}
    terms = []
    for b in m.bases():
        cols = [index[e] for e in b]
        d = det(w.basis.columns(cols))
        e = [0] * w.n
        for j in cols:
            e[j] = 1
        terms.append((d * d, e))
    if w.rank == 0:
        return Poly.const(vars, 1)
    return Poly(vars, terms)


def matroid_polynomial(m):
    """Basis polynomial: sum of x^B over bases, all coefficients 1."""
    if isinstance(m, Configuration):
        m = MatroidView(m)
    vars = VarSet(m.ground_set)
    index = {e: i for i, e in enumerate(m.ground_set)}
    terms = []
    for b in m.bases():
        e = [0] * len(vars)
        for x in b:
            e[index[x]] = 1
        terms.append((1, e))
    return Poly(vars, terms)


@dataclass
class GraphSpec:
    """Undirected multigraph; edge i carries the variable ``edge_labels[i]``."""

    vertices: list
    edges: list
    edge_labels: list = field(default=None)

    def __post_init__(self):
        self.vertices = [str(v) for v in self.vertices]
        self.edges = [(str(u), str(v)) for u, v in self.edges]
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex labels")
        known = set(self.vertices)
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ParseError(f"edge ({u},{v}) uses an undeclared vertex")
        if self.edge_labels is None:
            self.edge_labels = [f"x{i}" for i in range(1, len(self.edges) + 1)]
        self.edge_labels = [str(x) for x in self.edge_labels]
        if len(self.edge_labels) != len(self.edges):
            raise ParseError("one label per edge required")

    def to_json(self):
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges],
                "edge_labels": list(self.edge_labels)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(data["vertices"], data["edges"], data.get("edge_labels"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed graph JSON: {exc}") from exc

    def is_connected(self):
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.vertices)


def incidence_configuration(g):
    """Row span of the incidence matrix with the last vertex row deleted.

    Edge (u, v) with u before v in vertex order gets +1 at u and -1 at v;
    a loop edge gives a zero column.
    """
    pos = {v: i for i, v in enumerate(g.vertices)}
    nv = len(g.vertices)
    rows = [[0] * len(g.edges) for _ in range(max(nv - 1, 0))]
    for k, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        a, b = sorted((pos[u], pos[v]))
        if a < nv - 1:
            rows[a][k] += 1
        if b < nv - 1:
            rows[b][k] -= 1
    return Configuration(RatMatrix(rows, ncols=len(g.edges)), g.edge_labels)


def kirchhoff(g):
    """Incidence configuration of a connected graph and its Kirchhoff polynomial."""
    if not g.is_connected():
        raise DisconnectedGraph("graph is not connected")
    w = incidence_configuration(g)
    return w, psi_det(w)


def _rat_sqrt(q):
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def reconstruct_vectors(q):
    """Recover the columns (w_e^i)_i from a configuration form.

    Each coefficient matrix C_e must equal v v^T for a rational vector v; the
    sign of v is fixed by making its first nonzero entry positive. Returns the
    r x n matrix with these columns.
    """
    r = q.size
    cols = []
    for e in range(len(q.vars)):
        c = q.coefficient_matrix(e)
        i = next((k for k in range(r) if c.rows[k][k]), None)
        if i is None:
            if any(any(row) for row in c.rows):
                raise NotAConfigurationForm(f"coefficients of {q.vars[e]} have zero diagonal but nonzero entries")
            cols.append((Fraction(0),) * r)
            continue
        root = _rat_sqrt(c.rows[i][i])
        if root is None:
            raise NotAConfigurationForm(f"diagonal coefficient of {q.vars[e]} is not a rational square")
        v = tuple(c.rows[i][j] / root for j in range(r))
        if any(v[a] * v[b] != c.rows[a][b] for a in range(r) for b in range(r)):
            raise NotAConfigurationForm(f"coefficients of {q.vars[e]} are not a rank-1 square v v^T")
        cols.append(v)
    return RatMatrix([[cols[e][i] for e in range(len(cols))] for i in range(r)], ncols=len(cols))


def reconstruct_from_form(q):
    """Configuration determined by a form, up to column signs."""
    a = reconstruct_vectors(q)
    if rank(a) != q.size:
        raise NotAConfigurationForm("recovered vectors do not have full rank")
    return Configuration(a, list(q.vars))


def complete_to_invertible(rows, n):
    """Append unit vectors e_j (j in increasing order) to independent rows until n x n."""
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    if not rows:
        return RatMatrix.identity(n)
    _, piv = row_basis(RatMatrix(rows, ncols=n))
    if len(piv) != len(rows):
        raise ValueError("rows are not independent")
    one, zero = Fraction(1), Fraction(0)
    for j in range(n):
        if j not in piv:
            rows.append(tuple(one if k == j else zero for k in range(n)))
    return RatMatrix(rows, ncols=n)


def cone_graph_model(w, prefix="y"):
    """Kirchhoff-polynomial model of psi_W when the Hadamard products are independent.

    With canonical basis w^1..w^r, let G have an edge v_i v_j (i < j) whenever
    w^i * w^j != 0, and let G* be the cone over G with apex v0. If the nonzero
    products w^i * w^j (i <= j) are linearly independent, the reduced
    Laplacian of G* (apex row deleted) matches Q_W after the substitution

        y(v0, v_i) = Q_ii + sum_{j ~ i} Q_ij,    y(v_i, v_j) = -Q_ij,

    so psi_W = psi_{G*} o ell. Returns ``(graph, cert)`` with the certificate
    witnessing ``check_cert(psi_W, psi_G*, cert)``, or None.
    """
    from .equivalence import ContactCert

    r, n = w.rank, w.n
    rows = w.basis.rows
    prods = {}
    for i in range(r):
        for j in range(i, r):
            h = tuple(a * b for a, b in zip(rows[i], rows[j]))
            if any(h):
                prods[(i, j)] = h
    keys = sorted(prods)
    if keys and rank(RatMatrix([prods[k] for k in keys], ncols=n)) != len(keys):
        return None
    g_edges = [(i, j) for (i, j) in keys if i < j]
    vertices = [f"v{i}" for i in range(r + 1)]
    edges = [("v0", f"v{i + 1}") for i in range(r)] + [(f"v{i + 1}", f"v{j + 1}") for i, j in g_edges]
    labels = [f"{prefix}{k}" for k in range(1, len(edges) + 1)]
    graph = GraphSpec(vertices, edges, labels)

    zero = (Fraction(0),) * n
    forms = []
    for i in range(r):
        f = list(prods.get((i, i), zero))
        for (a, b) in g_edges:
            if i in (a, b):
                f = [x + y for x, y in zip(f, prods[(a, b)])]
        forms.append(tuple(f))
    for k in g_edges:
        forms.append(tuple(-x for x in prods[k]))
    p = max(n, len(forms))
    padded = [f + (Fraction(0),) * (p - n) for f in forms]
    ell = complete_to_invertible(padded, p)
    cert = ContactCert(ell, 1, source_vars=labels, target_vars=list(w.ground_set))
    return graph, cert
