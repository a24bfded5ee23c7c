"""Polynomial ideals over Q: Buchberger's algorithm and the operations built on it.

All Groebner bases use grevlex with ``vars[0] > vars[1] > ...`` (the same
order :class:`~confpoly.polyring.Poly` prints in). Reduced bases are monic and
sorted by increasing leading monomial, which makes them canonical.

Internally polynomials are plain ``{exps: Fraction}`` dicts; the public
functions take and return :class:`Poly`.
"""

import heapq
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb

from .errors import BudgetExceeded, ParseError, UnsupportedShape, VarSetMismatch
from .exactalg import RatMatrix, rank, row_basis
from .polyring import Poly, VarSet, det_poly, minors

DEFAULT_PAIR_BUDGET = 50000


@lru_cache(maxsize=None)
def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _elim_key(e):
    # block order: first variable (the eliminated one) dominates, grevlex on the rest
    return (e[0], _grevlex(e[1:]))


def _lead(p, key):
    return max(p, key=key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def _monic(p, key):
    c = p[_lead(p, key)]
    if c == 1:
        return p
    inv = 1 / c
    return {e: v * inv for e, v in p.items()}


def _add_scaled(p, q, c, shift):
    """p - c * x^shift * q, in place on p."""
    for e, v in q.items():
        ne = tuple(a + b for a, b in zip(e, shift))
        nv = p.get(ne, 0) - c * v
        if nv:
            p[ne] = nv
        else:
            p.pop(ne, None)


def _reduce(p, basis, leads, key):
    """Full normal form of p with respect to ``basis`` (list of monic dicts)."""
    p = dict(p)
    out = {}
    while p:
        lt = _lead(p, key)
        c = p[lt]
        for g, lg in zip(basis, leads):
            if _divides(lg, lt):
                _add_scaled(p, g, c, _sub(lt, lg))
                break
        else:
            out[lt] = c
            del p[lt]
    return out


def _spoly(f, lf, g, lg):
    m = _lcm(lf, lg)
    s = {}
    _add_scaled(s, f, -1, _sub(m, lf))
    _add_scaled(s, g, 1, _sub(m, lg))
    return s


def _buchberger(gens, key, budget=DEFAULT_PAIR_BUDGET):
    """Reduced Groebner basis (list of monic dicts, increasing leading monomials)."""
    polys, leads = [], []
    active = []
    pairs = []  # heap of (key(lcm), i, j)
    processed = 0

    def update(h):
        nonlocal active, pairs
        polys.append(h)
        lh = _lead(h, key)
        leads.append(lh)
        k = len(polys) - 1
        # Gebauer-Moeller update
        c = [(g, _lcm(lh, leads[g])) for g in active]
        d = []
        while c:
            g, m = c.pop(0)
            if _coprime(lh, leads[g]) or not any(_divides(m2, m) for _, m2 in c + d):
                d.append((g, m))
        new = [(g, m) for g, m in d if not _coprime(lh, leads[g])]
        old = []
        for kk, i, j, m in pairs:
            if (_divides(lh, m) and _lcm(leads[i], lh) != m and _lcm(leads[j], lh) != m):
                continue
            old.append((kk, i, j, m))
        pairs = old
        for g, m in new:
            pairs.append((key(m), g, k, m))
        heapq.heapify(pairs)
        active = [g for g in active if not _divides(lh, leads[g])] + [k]

    basis0 = []
    for f in gens:
        if f:
            basis0.append(_monic(f, key))
    # generators reducible by earlier ones enter already reduced
    for f in basis0:
        r = _reduce(f, [polys[g] for g in active], [leads[g] for g in active], key)
        if r:
            update(_monic(r, key))
    while pairs:
        _, i, j, m = heapq.heappop(pairs)
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"more than {budget} S-pairs processed")
        s = _spoly(polys[i], leads[i], polys[j], leads[j])
        r = _reduce(s, [polys[g] for g in active], [leads[g] for g in active], key)
        if r:
            update(_monic(r, key))
    return _interreduce([polys[g] for g in active], key)


def _interreduce(basis, key):
    items = sorted(((_lead(g, key), g) for g in basis), key=lambda t: key(t[0]))
    minimal = []
    for lg, g in items:
        if not any(_divides(lm, lg) for lm, _ in minimal):
            minimal.append((lg, g))
    out = []
    for idx, (lg, g) in enumerate(minimal):
        others = [h for k, (_, h) in enumerate(minimal) if k != idx]
        olead = [l for k, (l, _) in enumerate(minimal) if k != idx]
        tail = dict(g)
        del tail[lg]
        r = _reduce(tail, others, olead, key)
        r[lg] = g[lg]
        out.append(_monic(r, key))
    out.sort(key=lambda p: key(_lead(p, key)))
    return out


def _check_vars(a, b):
    if a.vars != b.vars:
        raise VarSetMismatch(f"ideals live in different rings: {tuple(a.vars)} vs {tuple(b.vars)}")


class Ideal:
    """Ideal of Q[vars] given by generators; the reduced Groebner basis is cached.

    Parameters
    ----------
    vars : sequence of str
    gens : iterable of Poly
        Generators, re-embedded into ``vars`` by name.
    """

    def __init__(self, vars, gens=()):
        self.vars = vars if isinstance(vars, VarSet) else VarSet(vars)
        self.gens = [g.with_vars(self.vars) for g in gens]
        self._gb = None

    def __repr__(self):
        return f"Ideal(vars={list(self.vars)}, gens=[{', '.join(str(g) for g in self.gens)}])"

    def groebner_basis(self, budget=DEFAULT_PAIR_BUDGET):
        """Reduced Groebner basis as a list of monic Polys, increasing leading monomials."""
        if self._gb is None:
            raw = _buchberger([g.terms for g in self.gens], _grevlex, budget)
            self._gb = [Poly._raw(self.vars, p) for p in raw]
        return list(self._gb)

    def is_zero(self):
        return not self.groebner_basis()

    def is_unit(self):
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].degree() == 0

    def contains(self, f):
        return not normal_form(f, self)

    def leading_monomials(self):
        return [max(g.terms, key=_grevlex) for g in self.groebner_basis()]

    def to_json(self, reduced=False):
        gens = self.groebner_basis() if reduced else self.gens
        return {"vars": list(self.vars), "gens": [g.to_json() for g in gens]}

    @classmethod
    def from_json(cls, data):
        try:
            vars = VarSet(data["vars"])
            gens = [Poly.from_json(g) for g in data["gens"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed ideal JSON: {exc}") from exc
        return cls(vars, gens)


def groebner(i, budget=DEFAULT_PAIR_BUDGET):
    """Ideal whose generators are the reduced Groebner basis of ``i``."""
    gb = i.groebner_basis(budget)
    out = Ideal(i.vars, gb)
    out._gb = gb
    return out


def normal_form(f, i):
    """Remainder of f on division by the reduced Groebner basis of i."""
    gb = i.groebner_basis()
    f = f.with_vars(i.vars)
    leads = [max(g.terms, key=_grevlex) for g in gb]
    return Poly._raw(i.vars, _reduce(f.terms, [g.terms for g in gb], leads, _grevlex))


def s_pairs_reduce(i):
    """Buchberger certificate: every S-polynomial of the basis reduces to zero."""
    gb = [g.terms for g in i.groebner_basis()]
    leads = [_lead(g, _grevlex) for g in gb]
    for a in range(len(gb)):
        for b in range(a + 1, len(gb)):
            s = _spoly(gb[a], leads[a], gb[b], leads[b])
            if _reduce(s, gb, leads, _grevlex):
                return False
    return True


def ideal_equal(a, b):
    """True iff the reduced Groebner bases coincide."""
    _check_vars(a, b)
    return a.groebner_basis() == b.groebner_basis()


def is_subideal(a, b):
    """True iff a is contained in b."""
    _check_vars(a, b)
    return all(b.contains(g) for g in a.gens)


def intersect(a, b, budget=DEFAULT_PAIR_BUDGET):
    """a ∩ b via elimination of t from ⟨t·a, (1−t)·b⟩."""
    _check_vars(a, b)

    def lift(p, t_power):
        return {(t_power,) + e: c for e, c in p.items()}

    gens = []
    for g in a.gens:
        if g:
            gens.append(lift(g.terms, 1))
    for g in b.gens:
        if g:
            h = lift(g.terms, 0)
            for e, c in g.terms.items():
                te = (1,) + e
                h[te] = h.get(te, 0) - c
            gens.append(h)
    gb = _buchberger(gens, _elim_key, budget)
    keep = [{e[1:]: c for e, c in p.items()} for p in gb if all(e[0] == 0 for e in p)]
    return Ideal(a.vars, [Poly._raw(a.vars, p) for p in keep])


def divide_exact(p, f):
    """Quotient q with p = q·f; raises ValueError if f does not divide p."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    f = f.with_vars(p.vars)
    lf = max(f.terms, key=_grevlex)
    cf = f.terms[lf]
    rest = dict(p.terms)
    q = {}
    while rest:
        lt = max(rest, key=_grevlex)
        if not _divides(lf, lt):
            raise ValueError("not an exact division")
        c = rest[lt] / cf
        sh = _sub(lt, lf)
        q[sh] = q.get(sh, 0) + c
        _add_scaled(rest, f.terms, c, sh)
    return Poly._raw(p.vars, q)


def quotient(i, f):
    """Ideal quotient I : f, computed as (I ∩ ⟨f⟩) / f."""
    inter = intersect(i, Ideal(i.vars, [f]))
    return Ideal(i.vars, [divide_exact(g, f) for g in inter.groebner_basis()])


def submaximal_minors_ideal(q):
    """Ideal of all (r-1) x (r-1) minors of a symbolic form (or square Poly matrix)."""
    entries = q.entries if hasattr(q, "entries") else q
    entries = [list(r) for r in entries]
    r = len(entries)
    if r == 0:
        raise UnsupportedShape("empty matrix has no submaximal minors")
    vars = entries[0][0].vars
    gens = [m for m in minors(entries, r - 1) if m]
    return Ideal(vars, gens)


def linear_part(i):
    """Basis (rows of a RatMatrix in RREF) of the linear forms contained in a homogeneous ideal.

    For a homogeneous ideal the degree-1 elements of the reduced Groebner
    basis span exactly its degree-1 component.
    """
    n = len(i.vars)
    rows = []
    for g in i.groebner_basis():
        ok, d = g.is_homogeneous()
        if ok and d == 1:
            rows.append([g.coeff(tuple(1 if k == j else 0 for k in range(n))) for j in range(n)])
    return row_basis(RatMatrix(rows, ncols=n))[0]


def _monomials(n, d):
    for c in combinations_with_replacement(range(n), d):
        e = [0] * n
        for k in c:
            e[k] += 1
        yield tuple(e)


def hilbert_function(i, dmax):
    """dim_Q (R/I)_d for d = 0..dmax, from the leading monomials of the reduced basis."""
    n = len(i.vars)
    lms = i.leading_monomials()
    out = []
    for d in range(dmax + 1):
        if not lms:
            out.append(comb(n + d - 1, d) if n else int(d == 0))
            continue
        out.append(sum(1 for e in _monomials(n, d) if not any(_divides(l, e) for l in lms)))
    return out


def minimal_generator_degrees(i, dmax):
    """Number of minimal generators in each degree 1..dmax of a homogeneous ideal.

    Computed as dim I_d - dim (R_1 · I_{d-1}) by linear algebra on the
    degree-d component spanned by monomial multiples of the generators.
    """
    n = len(i.vars)
    gens = [g for g in i.gens if g]
    for g in gens:
        if not g.is_homogeneous()[0]:
            raise UnsupportedShape("minimal generator counts need a homogeneous ideal")
    counts = []
    for d in range(1, dmax + 1):
        index = {e: k for k, e in enumerate(_monomials(n, d))}

        def span(parts, d=d, index=index):
            rows = []
            for g in parts:
                gd = g.degree()
                for m in _monomials(n, d - gd):
                    row = [0] * len(index)
                    for e, c in g.terms.items():
                        row[index[tuple(a + b for a, b in zip(e, m))]] = c
                    rows.append(row)
            return rank(RatMatrix(rows, ncols=len(index))) if rows else 0

        full = span([g for g in gens if g.degree() <= d])
        lower = span([g for g in gens if g.degree() < d])
        counts.append(full - lower)
    return counts


def _permuted(p, perm, vars):
    return Poly._raw(vars, {tuple(e[k] for k in perm): c for e, c in p.terms.items()})


def separating_invariant(q, dmax=None, max_vars=6):
    """Fingerprint of I = submaximal_minors_ideal(q) that equal ideals up to linear change share.

    Consists of the Hilbert function of R/I up to ``dmax``, the minimal
    generator counts per degree, the Hilbert function of the Jacobian ideal
    of det(q) (all unchanged by invertible linear changes of variables and
    by scaling), and the multiset of degrees of the reduced Groebner basis
    minimized lexicographically over all variable permutations (unchanged by
    permuting and rescaling variables). Different fingerprints show the
    ideals are not related by such a change; equal fingerprints prove nothing.
    """
    entries = [list(row) for row in (q.entries if hasattr(q, "entries") else q)]
    r = len(entries)
    if r not in (3, 4):
        raise UnsupportedShape(f"separating invariant supports 3x3 and 4x4 forms, got {r}x{r}")
    ideal = submaximal_minors_ideal(q)
    n = len(ideal.vars)
    if n > max_vars:
        raise UnsupportedShape(f"{n} variables exceeds the limit of {max_vars}")
    if dmax is None:
        dmax = r + 1
    hf = hilbert_function(ideal, dmax)
    mg = minimal_generator_degrees(ideal, r - 1)
    best = None
    for perm in permutations(range(n)):
        pi = Ideal(ideal.vars, [_permuted(g, perm, ideal.vars) for g in ideal.gens])
        degs = tuple(sorted(g.degree() for g in pi.groebner_basis()))
        if best is None or degs < best:
            best = degs
    return {"hilbert": hf, "min_generators": mg, "jacobian_hilbert": jacobian_hilbert(det_poly(entries), dmax),
            "gb_degrees": list(best)}


def jacobian_ideal(psi):
    return Ideal(psi.vars, [psi.partial(i) for i in range(len(psi.vars))])


def jacobian_hilbert(psi, dmax):
    """Hilbert function of the Jacobian ideal of psi.

    If phi = lam * psi o ell then the Jacobian ideal of phi is the image of
    that of psi under ell, so this is an invariant of the equivalence class.
    """
    return hilbert_function(jacobian_ideal(psi), dmax)

