"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a map from exponent tuples to nonzero Fractions over an
ordered :class:`VarSet`. Terms print and serialize in graded reverse
lexicographic order with ``vars[0] > vars[1] > ...``.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .errors import DimensionMismatch, ParseError, VarSetMismatch
from .exactalg import RatMatrix, rat_str, to_rat


class VarSet(tuple):
    """Ordered tuple of distinct variable names."""

    def __new__(cls, names=()):
        names = tuple(str(n) for n in names)
        if len(set(names)) != len(names):
            raise VarSetMismatch(f"duplicate variable names in {names}")
        return super().__new__(cls, names)

    @classmethod
    def numbered(cls, prefix, n, start=1):
        return cls(f"{prefix}{i}" for i in range(start, start + n))

    def __add__(self, other):
        return VarSet(tuple(self) + tuple(other))


def _integral(terms):
    return all(c.denominator == 1 for c in terms.values())


def _mul_int(t1, t2):
    """Product of two polynomials given as {exps: int} dicts (zeros dropped)."""
    out = {}
    for e1, c1 in t1.items():
        for e2, c2 in t2.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: v for e, v in out.items() if v}


def grevlex_key(exps):
    """Sort key: a larger key is a larger monomial in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Poly:
    """Immutable sparse polynomial.

    Parameters
    ----------
    vars : sequence of str
    terms : dict or iterable of (coeff, exps), optional
        Zero coefficients are dropped and repeated exponents are summed.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = vars if isinstance(vars, VarSet) else VarSet(vars)
        n = len(self.vars)
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else ((e, c) for c, e in terms)
            for e, c in items:
                e = tuple(int(x) for x in e)
                if len(e) != n or any(x < 0 for x in e):
                    raise DimensionMismatch(f"bad exponent vector {e} for {n} variables")
                c = out.get(e, 0) + to_rat(c)
                if c:
                    out[e] = c
                else:
                    out.pop(e, None)
        self.terms = out
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, c):
        vars = VarSet(vars) if not isinstance(vars, VarSet) else vars
        c = to_rat(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, vars, name):
        vars = VarSet(vars) if not isinstance(vars, VarSet) else vars
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    @classmethod
    def gens(cls, vars):
        vars = VarSet(vars) if not isinstance(vars, VarSet) else vars
        return [cls.var(vars, v) for v in vars]

    @classmethod
    def linear(cls, vars, coeffs):
        """Degree-1 form ``sum(c_i * vars[i])``."""
        vars = VarSet(vars) if not isinstance(vars, VarSet) else vars
        if len(coeffs) != len(vars):
            raise DimensionMismatch("coefficient count differs from variable count")
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            c = to_rat(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls._raw(vars, terms)

    # basic protocol
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * len(self.vars): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.vars != other.vars:
            raise VarSetMismatch(f"{tuple(self.vars)} vs {tuple(other.vars)}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, str)):
            return Poly.const(self.vars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_rat(c)
        if not c:
            return Poly._raw(self.vars, {})
        return Poly._raw(self.vars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        t1, t2 = self.terms, other.terms
        if _integral(t1) and _integral(t2):
            # integer fast path; Fraction products dominate otherwise
            out = _mul_int({e: c.numerator for e, c in t1.items()}, {e: c.numerator for e, c in t2.items()})
            return Poly._raw(self.vars, {e: Fraction(v) for e, v in out.items()})
        out = {}
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.vars, {e: v for e, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # inspection
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        """``(True, d)`` if every term has total degree d, else ``(False, None)``.

        The zero polynomial is reported as homogeneous of degree 0.
        """
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            return False, None
        return True, degs.pop() if degs else 0

    def sorted_terms(self):
        """(exps, coeff) pairs in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading(self):
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def used_vars(self):
        return [v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]

    def support(self):
        """Set of monomials as frozensets of (var, exponent)."""
        return {frozenset((self.vars[i], k) for i, k in enumerate(e) if k) for e in self.terms}

    def content(self):
        """Positive rational c with self / c primitive integral."""
        if not self.terms:
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = 0
        for c in self.terms.values():
            num = gcd(num, int(c * den))
        return Fraction(num, den)

    # transformations
    def with_vars(self, target):
        """Re-embed into ``target`` by variable name; target must contain every used name."""
        target = target if isinstance(target, VarSet) else VarSet(target)
        if target == self.vars:
            return self
        pos = {}
        for i, v in enumerate(self.vars):
            if v in target:
                pos[i] = target.index(v)
        n = len(target)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if i not in pos:
                        raise VarSetMismatch(f"variable {self.vars[i]} not in target {tuple(target)}")
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Poly._raw(target, out)

    def rename(self, mapping):
        """Rename variables via ``mapping`` (missing names kept)."""
        return Poly._raw(VarSet(mapping.get(v, v) for v in self.vars), dict(self.terms))

    def partial(self, i):
        """Partial derivative with respect to variable index (or name) ``i``."""
        if isinstance(i, str):
            i = self.vars.index(i)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Poly._raw(self.vars, out)

    def evaluate(self, values):
        """Evaluate at a point given as a sequence (by index) or a dict (by name)."""
        if isinstance(values, dict):
            values = [to_rat(values[v]) for v in self.vars]
        values = [to_rat(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def substitute(self, images):
        """Replace variable i by the polynomial ``images[i]`` (all over one VarSet)."""
        if len(images) != len(self.vars):
            raise DimensionMismatch("need one image per variable")
        if not images:
            raise DimensionMismatch("cannot infer target variables from zero images")
        target = images[0].vars
        for im in images:
            if im.vars != target:
                raise VarSetMismatch("images must share one variable set")
        powers = [{0: Poly.const(target, 1), 1: im} for im in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = Poly.zero(target)
        for e, c in self.terms.items():
            t = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    # output
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{rat_str(a)}*{mono}"
            else:
                body = rat_str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={tuple(self.vars)})"

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"coeff": rat_str(c), "exps": list(e)} for e, c in self.sorted_terms()],
            "pretty": str(self),
        }

    @classmethod
    def from_json(cls, data):
        try:
            vars = VarSet(data["vars"])
            terms = [(t["coeff"], t["exps"]) for t in data["terms"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        return cls(vars, terms)


def poly_from_dict(vars, mapping):
    """Build from ``{"x1*x2": 1, "x3^2": -1}``-style monomial strings (tests and demos)."""
    vars = VarSet(vars)
    terms = []
    for mono, c in mapping.items():
        e = [0] * len(vars)
        if mono not in ("", "1"):
            for factor in mono.split("*"):
                name, _, k = factor.partition("^")
                e[vars.index(name)] += int(k or 1)
        terms.append((c, e))
    return Poly(vars, terms)


def substitute_linear(p, ell, target):
    """Compose ``p`` with a linear change of variables.

    Variable ``i`` of ``p`` becomes ``sum_j ell[i][j] * target[j]``. ``ell`` must
    be square of size ``len(target)`` and at least ``len(p.vars)``; the
    variables of ``p`` are identified with the first coordinates.
    """
    target = target if isinstance(target, VarSet) else VarSet(target)
    if not isinstance(ell, RatMatrix):
        ell = RatMatrix(ell)
    size = len(target)
    if ell.shape != (size, size) or size < len(p.vars):
        raise DimensionMismatch(
            f"ell has shape {ell.shape}; need {size}x{size} with {size} >= {len(p.vars)}")
    k = len(p.vars)
    if not k:
        return Poly.const(target, p.terms.get((), 0))
    # work over the integers: row i of ell is L_i / d_i with L_i integral
    forms, dens = [], []
    for i in range(k):
        row = ell.rows[i]
        d = lcm(*(x.denominator for x in row))
        dens.append(d)
        form = {}
        for j, x in enumerate(row):
            if x:
                e = [0] * size
                e[j] = 1
                form[tuple(e)] = int(x * d)
        forms.append(form)
    one = {(0,) * size: 1}
    powers = [{0: one, 1: f} for f in forms]

    def power(i, n):
        cache = powers[i]
        if n not in cache:
            cache[n] = _mul_int(power(i, n - 1), forms[i])
        return cache[n]

    scaled = []
    for e, c in p.terms.items():
        den = 1
        for i, n in enumerate(e):
            if n:
                den *= dens[i] ** n
        scaled.append((e, c / den))
    big = lcm(*(c.denominator for _, c in scaled))
    out = {}
    for e, c in scaled:
        coef = int(c * big)
        prod_ = one
        for i, n in enumerate(e):
            if n:
                prod_ = _mul_int(prod_, power(i, n))
        for m, v in prod_.items():
            out[m] = out.get(m, 0) + coef * v
    return Poly._raw(target, {m: Fraction(v, big) for m, v in out.items() if v})


def _as_square(m):
    m = [list(r) for r in m]
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("matrix is not square")
    return m


def det_poly(m, vars=None):
    """Determinant of a square matrix of polynomials.

    Laplace expansion along rows with memoization on the set of remaining
    columns, so each of the 2^n column subsets is expanded once. ``vars`` is
    only needed for the 0x0 matrix.
    """
    m = _as_square(m)
    n = len(m)
    if n == 0:
        return Poly.const(vars if vars is not None else (), 1)
    vs = m[0][0].vars
    for row in m:
        for x in row:
            if x.vars != vs:
                raise VarSetMismatch("matrix entries use different variable sets")
    memo = {0: Poly.const(vs, 1)}
    full = (1 << n) - 1

    def rec(mask):
        got = memo.get(mask)
        if got is not None:
            return got
        k = n - bin(mask).count("1")
        row = m[k]
        total = Poly.zero(vs)
        before = 0
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                entry = row[j]
                if entry:
                    sub = rec(mask ^ bit)
                    if sub:
                        term = entry * sub
                        total = total - term if before & 1 else total + term
                before += 1
        memo[mask] = total
        return total

    return rec(full)


def minors(m, k):
    """All k x k minors, ordered lexicographically by (row set, column set)."""
    m = _as_square(m)
    n = len(m)
    if k > n or k < 0:
        raise DimensionMismatch(f"minor size {k} for a {n}x{n} matrix")
    vs = m[0][0].vars if n else VarSet()
    out = []
    for rows in combinations(range(n), k):
        for cols in combinations(range(n), k):
            out.append(det_poly([[m[i][j] for j in cols] for i in rows], vars=vs))
    return out


def is_homogeneous(p):
    return p.is_homogeneous()
