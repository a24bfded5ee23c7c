"""Exact rational arithmetic and dense linear algebra over Q.

Rationals are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator. :class:`RatMatrix` is an immutable row-major
matrix of such values.
"""

from fractions import Fraction
from math import lcm

from .errors import DimensionMismatch, ParseError, SingularMatrix

Rat = Fraction


def to_rat(value):
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def rat_str(q):
    """Serialize as ``"p"`` or ``"p/q"``."""
    q = to_rat(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RatMatrix:
    """Immutable matrix with Fraction entries.

    Parameters
    ----------
    rows : iterable of iterables
        Entries, anything accepted by :func:`to_rat`.
    ncols : int, optional
        Needed only to give a 0-row matrix a column count.
    """

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows=(), ncols=None):
        rows = tuple(tuple(to_rat(x) for x in row) for row in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch("ncols disagrees with row width")
        else:
            width = ncols or 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width
        self._hash = None

    @classmethod
    def _raw(cls, rows, ncols):
        # trusted constructor: rows is a tuple of tuples of Fraction
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def identity(cls, n):
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows, ncols):
        z = Fraction(0)
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self):
        """Row-major flat sequence of entries."""
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(rat_str(x) for x in r) + "]" for r in self.rows)
        return f"RatMatrix([{body}])"

    def tolist(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        if not self.nrows:
            return RatMatrix._raw(tuple(() for _ in range(self.ncols)), 0)
        return RatMatrix._raw(tuple(zip(*self.rows)), self.nrows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        out = tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols)
            for row in self.rows
        )
        return RatMatrix._raw(out, other.ncols)

    def __mul__(self, c):
        c = to_rat(c)
        return RatMatrix._raw(tuple(tuple(c * x for x in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return RatMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other):
        return self + other * -1

    def columns(self, idx):
        """Submatrix on the given column indices (in the given order)."""
        idx = list(idx)
        return RatMatrix._raw(tuple(tuple(r[j] for j in idx) for r in self.rows), len(idx))

    def select_rows(self, idx):
        return RatMatrix._raw(tuple(self.rows[i] for i in idx), self.ncols)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("row count mismatch in hstack")
        return RatMatrix._raw(tuple(a + b for a, b in zip(self.rows, other.rows)), self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("column count mismatch in vstack")
        return RatMatrix._raw(self.rows + other.rows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    # linear algebra entry points
    def rref(self):
        return rref(self)

    def rank(self):
        return rank(self)

    def kernel_basis(self):
        return kernel_basis(self)

    def inverse(self):
        return invert(self)

    def det(self):
        return det(self)

    def to_json(self):
        return [[rat_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data, ncols=None):
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ParseError("matrix must be a list of rows")
        return cls(data, ncols=ncols)


def _rref_rows(rows, ncols):
    """Gauss-Jordan on a list of lists (mutated); returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            rows[r] = pr
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row-echelon form and pivot columns.

    Zero rows are kept at the bottom, so the shape is preserved.

    >>> rref(RatMatrix([[2, 4], [1, 2]]))
    (RatMatrix([[1, 2], [0, 0]]), [0])
    """
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return RatMatrix._raw(tuple(tuple(r) for r in rows), m.ncols), pivots


def row_basis(m):
    """Nonzero rows of the RREF (canonical basis of the row span) and pivots."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return RatMatrix._raw(tuple(tuple(r) for r in rows[: len(pivots)]), m.ncols), pivots


def rank(m):
    rows = [list(r) for r in m.rows]
    return len(_rref_rows(rows, m.ncols))


def kernel_basis(m):
    """Basis of the right kernel, one vector per row of the result.

    Each basis vector has a 1 in one free column and zeros in the other free
    columns.
    """
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][f]
        basis.append(tuple(v))
    return RatMatrix._raw(tuple(basis), m.ncols)


def invert(m):
    if not m.is_square():
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    n = m.nrows
    one, zero = Fraction(1), Fraction(0)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.rows)]
    pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return RatMatrix._raw(tuple(tuple(r[n:]) for r in aug), n)


def _bareiss_int(a):
    """Fraction-free Bareiss determinant of a square integer matrix (list of lists, mutated)."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m):
    """Exact determinant via Bareiss elimination after clearing row denominators."""
    if not m.is_square():
        raise DimensionMismatch(f"determinant of a {m.shape} matrix")
    scale = Fraction(1)
    ints = []
    for row in m.rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        scale /= d
        ints.append([int(x * d) for x in row])
    return scale * _bareiss_int(ints)
