"""Configurations W in Q^E, their matroids, and Hadamard powers.

A configuration is stored by its canonical basis: the nonzero rows of the
reduced row-echelon form of any spanning matrix. Ground-set labels double as
the variable names of the configuration polynomial. Whenever a procedure
scans elements "in order", it means the order of ``ground_set``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import DimensionMismatch, DuplicateLabel, ParseError, TooManyBases
from .exactalg import RatMatrix, rank, row_basis

BASIS_ENUMERATION_CAP = 12870


class Configuration:
    """Row span of a rational matrix, with a labeled ground set.

    Parameters
    ----------
    rows : RatMatrix or nested sequence
        Any spanning set of W; dependent and zero rows are allowed.
    ground_set : sequence of str, optional
        Element labels, defaulting to ``x1..xn``.
    """

    __slots__ = ("ground_set", "basis", "pivots")

    def __init__(self, rows, ground_set=None, ncols=None):
        if not isinstance(rows, RatMatrix):
            if ncols is None and ground_set is not None:
                ncols = len(ground_set)
            rows = RatMatrix(rows, ncols=ncols)
        n = rows.ncols
        if ground_set is None:
            ground_set = [f"x{i}" for i in range(1, n + 1)]
        ground_set = tuple(str(g) for g in ground_set)
        if len(ground_set) != n:
            raise DimensionMismatch(f"{len(ground_set)} labels for {n} columns")
        if len(set(ground_set)) != n:
            raise DuplicateLabel(f"duplicate labels in {ground_set}")
        self.ground_set = ground_set
        self.basis, self.pivots = row_basis(rows)

    @property
    def rank(self):
        return self.basis.nrows

    @property
    def n(self):
        return len(self.ground_set)

    def column(self, e):
        j = self.ground_set.index(e) if isinstance(e, str) else e
        return tuple(r[j] for r in self.basis.rows)

    def columns(self):
        return [tuple(r[j] for r in self.basis.rows) for j in range(self.n)]

    def loops(self):
        return [e for e, col in zip(self.ground_set, self.columns()) if not any(col)]

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.ground_set == other.ground_set and self.basis == other.basis

    def __hash__(self):
        return hash((self.ground_set, self.basis))

    def __repr__(self):
        return f"Configuration(rank={self.rank}, ground_set={list(self.ground_set)}, rows={self.basis.to_json()})"

    def to_json(self):
        return {"ground_set": list(self.ground_set), "rows": self.basis.to_json()}

    @classmethod
    def from_json(cls, data):
        try:
            labels = data["ground_set"]
            rows = data["rows"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed configuration JSON: {exc}") from exc
        return cls(RatMatrix.from_json(rows, ncols=len(labels)), labels)

    @classmethod
    def full(cls, n, ground_set=None):
        """The configuration Q^E itself."""
        return cls(RatMatrix.identity(n), ground_set)


def hadamard(u, v):
    return tuple(a * b for a, b in zip(u, v))


def _products(rows, s):
    one = (Fraction(1),) * (len(rows[0]) if rows else 0)
    for idx in combinations_with_replacement(range(len(rows)), s):
        vec = one
        for i in idx:
            vec = hadamard(vec, rows[i])
        yield vec


def hadamard_power(w, s):
    """W^{*s}: span of all s-fold Hadamard products of basis vectors (with repetition)."""
    if s < 1:
        raise ValueError("s must be positive")
    if w.rank == 0:
        return Configuration(RatMatrix.zeros(0, w.n), w.ground_set)
    rows = list(_products(w.basis.rows, s))
    return Configuration(RatMatrix(rows), w.ground_set)


def hadamard_product(v, w):
    """V * W for two configurations on the same ground set."""
    if v.ground_set != w.ground_set:
        raise DimensionMismatch("ground sets differ")
    rows = [hadamard(a, b) for a in v.basis.rows for b in w.basis.rows]
    return Configuration(RatMatrix(rows, ncols=v.n), v.ground_set)


def restrict(w, f):
    """Projection W_F of W onto the coordinates F (kept in ground-set order)."""
    f = set(f)
    unknown = f - set(w.ground_set)
    if unknown:
        raise DimensionMismatch(f"unknown elements {sorted(unknown)}")
    idx = [j for j, e in enumerate(w.ground_set) if e in f]
    return Configuration(w.basis.columns(idx), [w.ground_set[j] for j in idx])


def extend_by_coloop(w, label):
    """Direct sum W + Q*f with a new element f."""
    label = str(label)
    if label in w.ground_set:
        raise DuplicateLabel(f"label {label!r} already in ground set")
    n = w.n
    rows = [r + (Fraction(0),) for r in w.basis.rows]
    rows.append((Fraction(0),) * n + (Fraction(1),))
    return Configuration(RatMatrix(rows, ncols=n + 1), w.ground_set + (label,))


def greedy_extend(cols, start, order):
    """Extend the independent index set ``start`` greedily, scanning ``order``."""
    chosen = list(start)
    current = rank(RatMatrix([cols[j] for j in chosen], ncols=len(cols[0]) if cols else 0)) if chosen else 0
    if current != len(chosen):
        raise ValueError("starting set is not independent")
    for j in order:
        if j in chosen:
            continue
        trial = chosen + [j]
        if rank(RatMatrix([cols[k] for k in trial])) == len(trial):
            chosen = trial
    return chosen


@dataclass
class HadamardProfile:
    """Dimensions of W^{*s}, Hadamard exponent and the filtration F_1 <= F_2 <= ...

    ``dims[s-1]`` is dim W^{*s}; ``filtration[s-1]`` is F_s as labels in
    ground-set order.
    """

    dims: list
    exponent: int
    hadamard_dim: int
    filtration: list = field(default_factory=list)

    def to_json(self):
        return {
            "dims": self.dims,
            "exponent": self.exponent,
            "hadamard_dim": self.hadamard_dim,
            "filtration": [list(f) for f in self.filtration],
        }


def projective_point_count(w):
    """Number of distinct lines spanned by the nonzero columns of W.

    This is the value at which dim W^{*s} stabilizes.
    """
    seen = set()
    for col in w.columns():
        nz = next((x for x in col if x), None)
        if nz is not None:
            seen.add(tuple(x / nz for x in col))
    return len(seen)


def hadamard_dims(w, s_max, exponent=True):
    """Hadamard dimensions up to ``s_max``, the Hadamard exponent, and the filtration.

    The filtration is built greedily: F_1 is the first basis of the matroid
    of W met while scanning the ground set, and F_{t+1} extends F_t to a
    basis of the matroid of W^{*(t+1)}, again scanning in ground-set order.

    The exponent is found by continuing past ``s_max`` if needed: the
    dimensions increase strictly until they reach the number of distinct
    column directions, then stay there. With ``exponent=False`` only
    s <= s_max is computed and the exponent is reported as None.
    """
    if s_max < 1:
        raise ValueError("s_max must be positive")
    target = projective_point_count(w)
    dims = []
    filtration = []
    order = list(range(w.n))
    prev = []
    s = 0
    while s < s_max or (exponent and dims and dims[-1] < target):
        s += 1
        ws = hadamard_power(w, s)
        dims.append(ws.rank)
        if s <= s_max:
            cols = ws.columns()
            prev = greedy_extend(cols, prev, order)
            filtration.append(tuple(w.ground_set[j] for j in sorted(prev)))
    if not exponent:
        return HadamardProfile(dims=dims, exponent=None, hadamard_dim=None, filtration=filtration)
    stable = dims[-1] if dims else 0
    t = next(i + 1 for i, d in enumerate(dims) if d == stable) if dims else 1
    if w.rank == 0:
        t = 1
    return HadamardProfile(dims=dims[:s_max], exponent=t, hadamard_dim=stable,
                           filtration=filtration)


class MatroidView:
    """Matroid of a configuration: rank oracle plus (capped) basis enumeration."""

    def __init__(self, w):
        self.config = w
        self.ground_set = w.ground_set
        self.rank = w.rank
        self._cols = w.columns()
        self._bases = None

    def rank_fn(self, subset):
        idx = [self._index(e) for e in subset]
        if not idx:
            return 0
        return rank(RatMatrix([self._cols[j] for j in idx]))

    def _index(self, e):
        return self.ground_set.index(e) if isinstance(e, str) else int(e)

    def is_independent(self, subset):
        return self.rank_fn(subset) == len(list(subset))

    def bases(self):
        """All bases as tuples of labels, in lexicographic order of positions."""
        if self._bases is None:
            n, r = len(self.ground_set), self.rank
            if comb(n, r) > BASIS_ENUMERATION_CAP:
                raise TooManyBases(f"C({n},{r}) = {comb(n, r)} exceeds {BASIS_ENUMERATION_CAP}")
            out = []
            for idx in combinations(range(n), r):
                if r == 0 or rank(RatMatrix([self._cols[j] for j in idx])) == r:
                    out.append(tuple(self.ground_set[j] for j in idx))
            self._bases = out
        return list(self._bases)

    def greedy_basis(self):
        return [self.ground_set[j] for j in sorted(greedy_extend(self._cols, [], range(len(self._cols))))] \
            if self.rank else []

    def components(self):
        """Connected components as lists of labels.

        Uses the fundamental-circuit graph of a basis B: a non-basis element e
        is joined to every b in its fundamental circuit C(e, B). Its connected
        components are the matroid components; loops and coloops are singletons.
        """
        n = len(self.ground_set)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        basis = sorted(greedy_extend(self._cols, [], range(n))) if self.rank else []
        if basis:
            inv = RatMatrix([self._cols[j] for j in basis]).transpose().inverse()
            for e in range(n):
                if e in basis or not any(self._cols[e]):
                    continue
                coords = inv @ RatMatrix([[x] for x in self._cols[e]])
                for k, b in enumerate(basis):
                    if coords.rows[k][0]:
                        parent[find(e)] = find(b)
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(self.ground_set[i])
        return sorted(groups.values(), key=lambda g: self.ground_set.index(g[0]))


def matroid(w):
    return MatroidView(w)


def is_connected(m):
    """True iff the matroid has at most one connected component."""
    if isinstance(m, Configuration):
        m = MatroidView(m)
    return len(m.components()) <= 1


def config_from_columns(columns, ground_set=None):
    """Configuration whose matrix has the given columns."""
    columns = [tuple(c) for c in columns]
    r = len(columns[0]) if columns else 0
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(r)]
    return Configuration(RatMatrix(rows, ncols=len(columns)), ground_set)


def sym_power_bound(r, s):
    return comb(r + s - 1, s)


def normalized_form(w):
    """Column order putting the pivot columns first: matrix (I_r | A').

    Returns ``(order, matrix)`` where ``order`` lists labels.
    """
    piv = list(w.pivots)
    rest = [j for j in range(w.n) if j not in piv]
    order = piv + rest
    return [w.ground_set[j] for j in order], w.basis.columns(order)



def random_configuration(rng, rank_max, n_max, lo=-3, hi=3, rank_min=0):
    """Row span of a random integer matrix (for sweeps and property checks).

    ``rng`` is a :class:`random.Random`; the matrix has between ``rank_min``
    and ``rank_max`` rows and at most ``n_max`` columns, entries in [lo, hi].
    The rank of the result can be smaller than the row count.
    """
    n = rng.randint(max(rank_min, 1), n_max)
    r = rng.randint(rank_min, min(rank_max, n))
    rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(r)]
    return Configuration(RatMatrix(rows, ncols=n))
