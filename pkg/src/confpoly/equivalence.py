"""Linear contact equivalence: certificates and variable reduction.

Convention used throughout: a certificate ``c`` witnesses

    phi = c.lam * (psi o c.ell)

where variable ``c.source_vars[i]`` of psi is replaced by
``sum_j c.ell[i][j] * c.target_vars[j]``. Both variable lists are padded
with anonymous coordinates up to ``p = c.ell.nrows``. ``check_cert(phi, psi, c)``
is the only place that decides whether such a witness holds.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .config import Configuration, hadamard_dims, hadamard_power, restrict
from .configpoly import psi_det
from .errors import DimensionMismatch, ParseError, SingularMatrix, VarSetMismatch
from .exactalg import RatMatrix, det, invert, kernel_basis, rank, rat_str, to_rat
from .polyring import VarSet, substitute_linear


def _pad(names, p, tag):
    names = list(names)
    return names + [f"_{tag}{k}" for k in range(1, p - len(names) + 1)]


class ContactCert:
    """Invertible p x p rational matrix ``ell`` and scalar ``lam != 0``."""

    __slots__ = ("ell", "lam", "source_vars", "target_vars")

    def __init__(self, ell, lam, source_vars, target_vars):
        if not isinstance(ell, RatMatrix):
            ell = RatMatrix(ell)
        p = ell.nrows
        if ell.ncols != p:
            raise DimensionMismatch(f"ell must be square, got {ell.shape}")
        source_vars, target_vars = tuple(source_vars), tuple(target_vars)
        if len(source_vars) > p or len(target_vars) > p:
            raise DimensionMismatch(f"p = {p} is smaller than the number of variables")
        if len(set(source_vars)) != len(source_vars) or len(set(target_vars)) != len(target_vars):
            raise VarSetMismatch("duplicate variable names in certificate")
        lam = to_rat(lam)
        if not lam:
            raise SingularMatrix("lambda must be nonzero")
        if rank(ell) != p:
            raise SingularMatrix("ell is not invertible")
        self.ell = ell
        self.lam = lam
        self.source_vars = source_vars
        self.target_vars = target_vars

    @property
    def p(self):
        return self.ell.nrows

    def source_ext(self):
        return _pad(self.source_vars, self.p, "s")

    def target_ext(self):
        return _pad(self.target_vars, self.p, "t")

    def __eq__(self, other):
        return (isinstance(other, ContactCert) and self.ell == other.ell and self.lam == other.lam
                and self.source_vars == other.source_vars and self.target_vars == other.target_vars)

    def __repr__(self):
        return (f"ContactCert(p={self.p}, lam={rat_str(self.lam)}, source={list(self.source_vars)}, "
                f"target={list(self.target_vars)})")

    def to_json(self):
        return {
            "p": self.p,
            "lambda": rat_str(self.lam),
            "ell": self.ell.to_json(),
            "source_vars": list(self.source_vars),
            "target_vars": list(self.target_vars),
        }

    @classmethod
    def from_json(cls, data):
        try:
            ell = RatMatrix.from_json(data["ell"], ncols=int(data["p"]))
            if ell.nrows != int(data["p"]):
                raise DimensionMismatch("ell row count differs from p")
            return cls(ell, data["lambda"], data["source_vars"], data["target_vars"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed certificate JSON: {exc}") from exc


def _embed(poly, names, role):
    try:
        return poly.with_vars(VarSet(names))
    except VarSetMismatch as exc:
        raise DimensionMismatch(f"{role} variables not covered by certificate: {exc}") from exc


def apply_cert(psi, cert):
    """``lam * (psi o ell)`` as a polynomial in the padded target variables."""
    src = _embed(psi, cert.source_ext(), "source")
    return substitute_linear(src, cert.ell, VarSet(cert.target_ext())).scale(cert.lam)


def check_cert(phi, psi, cert):
    """True iff ``phi == lam * (psi o ell)`` exactly, after padding both to p variables."""
    if rank(cert.ell) != cert.p:
        raise SingularMatrix("ell is not invertible")
    lhs = _embed(phi, cert.target_ext(), "target")
    return apply_cert(psi, cert) == lhs


def identity_cert(vars):
    vars = list(vars)
    return ContactCert(RatMatrix.identity(len(vars)), 1, vars, vars)


def rename_cert(source_vars, target_vars, lam=1):
    """source_vars[i] -> target_vars[i]."""
    if len(source_vars) != len(target_vars):
        raise DimensionMismatch("rename needs equally many source and target variables")
    return ContactCert(RatMatrix.identity(len(source_vars)), lam, source_vars, target_vars)


def pad_cert(cert, p):
    """Same witness with p >= cert.p (identity on the new pad coordinates)."""
    if p < cert.p:
        raise DimensionMismatch("cannot shrink a certificate")
    if p == cert.p:
        return cert
    rows = [list(r) + [Fraction(0)] * (p - cert.p) for r in cert.ell.rows]
    for k in range(cert.p, p):
        rows.append([Fraction(1) if j == k else Fraction(0) for j in range(p)])
    return ContactCert(RatMatrix(rows, ncols=p), cert.lam, cert.source_vars, cert.target_vars)


def compose_certs(c1, c2):
    """Chain ``phi = l1 psi o ell1`` and ``chi = l2 phi o ell2`` into ``chi = l1 l2 psi o (ell1 P ell2)``.

    The target variables of ``c1`` and the source variables of ``c2`` must be
    the same set of names; P matches them by name (and pads by position).
    """
    if set(c1.target_vars) != set(c2.source_vars):
        raise DimensionMismatch(
            f"intermediate variables differ: {list(c1.target_vars)} vs {list(c2.source_vars)}")
    p = max(c1.p, c2.p)
    c1, c2 = pad_cert(c1, p), pad_cert(c2, p)
    t1 = c1.target_ext()
    s2 = c2.source_ext()
    pads1 = [n for n in t1 if n not in c1.target_vars]
    pads2 = [n for n in s2 if n not in c2.source_vars]
    match = {n: n for n in c1.target_vars}
    match.update(zip(pads1, pads2))
    perm = RatMatrix([[1 if s2[b] == match[t1[a]] else 0 for b in range(p)] for a in range(p)], ncols=p)
    ell = c1.ell @ perm @ c2.ell
    return ContactCert(ell, c1.lam * c2.lam, c1.source_vars, c2.target_vars)


def invert_cert(c):
    """``psi = lam^-1 * phi o ell^-1``."""
    return ContactCert(invert(c.ell), 1 / c.lam, c.target_vars, c.source_vars)


def lift_cert(c, extra_source, extra_target):
    """Extend by identity on new variable pairs (source extra[i] -> target extra[i]).

    Witnesses ``phi * m' = lam * (psi * m) o ell'`` for the products m, m' of
    the extra variables.
    """
    extra_source, extra_target = list(extra_source), list(extra_target)
    if len(extra_source) != len(extra_target):
        raise DimensionMismatch("extra variable lists differ in length")
    k = len(extra_source)
    p = c.p + k
    s_old, t_old = c.source_ext(), c.target_ext()
    src = list(c.source_vars) + extra_source
    tgt = list(c.target_vars) + extra_target
    s_new, t_new = _pad(src, p, "s"), _pad(tgt, p, "t")
    # old pads keep their relative order after the extra names
    s_map = dict(zip([n for n in s_old if n not in c.source_vars],
                     [n for n in s_new if n not in src]))
    t_map = dict(zip([n for n in t_old if n not in c.target_vars],
                     [n for n in t_new if n not in tgt]))
    rows = [[Fraction(0)] * p for _ in range(p)]
    for a, sa in enumerate(s_old):
        ia = s_new.index(s_map.get(sa, sa))
        for b, tb in enumerate(t_old):
            rows[ia][t_new.index(t_map.get(tb, tb))] = c.ell.rows[a][b]
    for es, et in zip(extra_source, extra_target):
        rows[s_new.index(es)][t_new.index(et)] = Fraction(1)
    return ContactCert(RatMatrix(rows, ncols=p), c.lam, src, tgt)


@dataclass
class ReductionReport:
    """Outcome of variable reduction: psi_W ~ psi_{W_F} with |F| = r_W^2."""

    original: Configuration
    reduced: Configuration
    F: tuple
    nu: int
    cert: ContactCert
    bound: int
    r2: int

    def to_json(self, verified=None):
        out = {
            "original": self.original.to_json(),
            "reduced": self.reduced.to_json(),
            "F": list(self.F),
            "nu": self.nu,
            "r2": self.r2,
            "bound": self.bound,
            "cert": self.cert.to_json(),
        }
        if verified is not None:
            out["verified"] = verified
        return out


def _rref_transform(a, reduced):
    """T with reduced.basis == T @ a, for ``a`` of full row rank spanning the same space."""
    piv = list(reduced.pivots)
    return invert(a.columns(piv))


def reduce_variables(w):
    """Restrict W to F = F_2 of the greedy filtration and certify psi_W ~ psi_{W_F}.

    The substitution sends y_f (f in F) to <x, u^f>, where u^f is the unique
    element of W^{*2} whose restriction to F is the unit vector e_f; the other
    coordinates are completed with unit vectors.
    """
    profile = hadamard_dims(w, 2, exponent=False)
    F = profile.filtration[1] if w.rank else ()
    reduced = restrict(w, F)
    n = w.n
    f_idx = [w.ground_set.index(f) for f in F]
    rows = []
    if F:
        h = hadamard_power(w, 2).basis
        u = invert(h.columns(f_idx)) @ h
        rows = [list(r) for r in u.rows]
    one, zero = Fraction(1), Fraction(0)
    for g in range(n):
        if g not in f_idx:
            rows.append([one if k == g else zero for k in range(n)])
    ell = RatMatrix(rows, ncols=n) if n else RatMatrix.identity(0)
    lam = Fraction(1)
    if w.rank:
        t = _rref_transform(w.basis.columns(f_idx), reduced)
        lam = 1 / det(t) ** 2
    cert = ContactCert(ell, lam, list(F), list(w.ground_set))
    return ReductionReport(original=w, reduced=reduced, F=tuple(F), nu=len(F), cert=cert,
                           bound=comb(w.rank + 1, 2), r2=profile.dims[1])


def linear_derivation_kernel(psi):
    """Constant vectors v with sum_e v_e d(psi)/dx_e = 0, as rows of a RatMatrix."""
    n = len(psi.vars)
    partials = [psi.partial(i) for i in range(n)]
    monos = sorted({e for d in partials for e in d.terms})
    if not monos:
        return RatMatrix.identity(n)
    system = RatMatrix([[d.coeff(m) for d in partials] for m in monos], ncols=n)
    return kernel_basis(system)


def try_drop_variable(w):
    """Find e with psi_W ~ psi_{W_{E-e}} via a constant derivation annihilating psi_W.

    For a kernel vector v normalized to v_e = 1, the substitution
    x_i -> x_i - v_i x_e (i != e) turns psi_{W_{E-e}} into psi_W up to the
    square factor coming from re-normalizing the basis. Returns
    ``(e, cert)`` for the first e in ground-set order, or None when the kernel
    is zero.
    """
    psi = psi_det(w)
    kern = linear_derivation_kernel(psi)
    if kern.nrows == 0:
        return None
    n = w.n
    for j, e in enumerate(w.ground_set):
        v = next((r for r in kern.rows if r[j]), None)
        if v is None:
            continue
        v = [x / v[j] for x in v]
        rest = [g for g in w.ground_set if g != e]
        sub = restrict(w, rest)
        if sub.rank != w.rank:
            continue
        keep = [k for k in range(n) if k != j]
        t = _rref_transform(w.basis.columns(keep), sub)
        lam = 1 / det(t) ** 2
        rows = []
        for k in keep:
            row = [Fraction(0)] * n
            row[k] = Fraction(1)
            row[j] = -v[k]
            rows.append(row)
        rows.append([Fraction(1) if k == j else Fraction(0) for k in range(n)])
        cert = ContactCert(RatMatrix(rows, ncols=n), lam, rest, list(w.ground_set))
        if check_cert(psi, psi_det(sub), cert):
            return e, cert
    return None
