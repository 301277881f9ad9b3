"""Rational functions: pairs of MPoly with exact cross-multiplication equality.

We never compute multivariate gcds; the only normalization is scaling so the
denominator's leading coefficient (graded lex) is 1, which keeps printing and
hashing stable without factorization.
"""

from .poly import MPoly
from .scalars import GaussRat, ONE
from ..errors import DivisionError, PoleError


def _lead_coeff(p):
    e = min(p.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
    return p.terms[e]


class RatFn:
    __slots__ = ("n", "d")

    def __init__(self, num, den=None, normalize=True):
        if den is None:
            den = MPoly.const(num.table, 1)
        if den.is_zero():
            raise DivisionError("zero denominator")
        if num.is_zero():
            den = MPoly.const(num.table, 1)
        elif normalize:
            lc = _lead_coeff(den)
            if not (lc == ONE):
                inv = lc.inv()
                num = num * inv
                den = den * inv
        self.n = num
        self.d = den

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, table, c):
        return cls(MPoly.const(table, c), normalize=False)

    @classmethod
    def var(cls, table, name):
        return cls(MPoly.var(table, name), normalize=False)

    @classmethod
    def of(cls, x, table=None):
        if isinstance(x, RatFn):
            return x
        if isinstance(x, MPoly):
            return cls(x)
        return cls.const(table, x)

    @property
    def table(self):
        return self.n.table

    # -- predicates ------------------------------------------------------------
    def is_zero(self):
        return self.n.is_zero()

    def is_poly(self):
        return self.d.is_constant()

    def as_poly(self):
        if not self.is_poly():
            raise DivisionError("not a polynomial")
        c = self.d.const_term().inv()
        return self.n * c

    def eq(self, other):
        other = RatFn.of(other, self.table)
        return (self.n * other.d - other.n * self.d).is_zero()

    def __eq__(self, other):
        if isinstance(other, (RatFn, MPoly, int, GaussRat)):
            return self.eq(RatFn.of(other, self.table))
        return NotImplemented

    def __hash__(self):  # hashes only structural data
        return hash((self.n, self.d))

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, o):
        o = RatFn.of(o, self.table)
        if self.d == o.d:
            return RatFn(self.n + o.n, self.d)
        return RatFn(self.n * o.d + o.n * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.n, self.d, normalize=False)

    def __sub__(self, o):
        return self + (-RatFn.of(o, self.table))

    def __rsub__(self, o):
        return RatFn.of(o, self.table) + (-self)

    def __mul__(self, o):
        o = RatFn.of(o, self.table)
        return RatFn(self.n * o.n, self.d * o.d)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise DivisionError("inverse of zero rational function")
        return RatFn(self.d, self.n)

    def __truediv__(self, o):
        return self * RatFn.of(o, self.table).inv()

    def __rtruediv__(self, o):
        return RatFn.of(o, self.table) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        return RatFn(self.n ** k, self.d ** k)

    # -- calculus / conjugation ----------------------------------------------------
    def diff(self, name):
        num = self.n.diff(name) * self.d - self.n * self.d.diff(name)
        return RatFn(num, self.d * self.d)

    def bar(self):
        return RatFn(self.n.bar(), self.d.bar())

    # -- evaluation -------------------------------------------------------------------
    def eval_gauss(self, point):
        dv = self.d.eval_gauss(point)
        if dv.is_zero():
            raise PoleError("denominator vanishes at the point")
        return self.n.eval_gauss(point) / dv

    def eval_complex(self, point, pole_tol=1e-14):
        dv = self.d.eval_complex(point)
        if abs(dv) < pole_tol:
            raise PoleError("denominator below tolerance at the point")
        return self.n.eval_complex(point) / dv

    def shift(self, point):
        return RatFn(self.n.shift(point), self.d.shift(point))

    def __repr__(self):
        if self.d.is_constant():
            c = self.d.const_term()
            if c == ONE:
                return repr(self.n)
        return "(%s)/(%s)" % (self.n, self.d)


def subs_poly_ratfn(p, bindings):
    """Substitute RatFn values into an MPoly; every variable occurring in p
    must be bound.  Returns a RatFn over the bindings' (common) table.

    Variables with equal denominators are grouped, and the accumulation runs
    over the common denominator prod_groups den_g^{max joint degree}, so only
    polynomial arithmetic happens inside the loop and shared denominators
    (map components!) are not raised to wasteful powers.
    """
    used = [k for k in range(len(p.table)) if any(e[k] for e in p.terms)]
    names = [p.table.names[k] for k in used]
    for n in names:
        if n not in bindings:
            raise KeyError("unbound variable %r in substitution" % n)
    vals = {n: bindings[n] for n in names}
    if not names:
        tgt = next(iter(bindings.values())).table if bindings else p.table
        return RatFn.const(tgt, p.const_term())
    tgt = vals[names[0]].table
    # group variables by (structurally) equal denominators
    groups = []  # list of (den MPoly, [names])
    for n in names:
        d = vals[n].d
        for g in groups:
            if g[0] == d:
                g[1].append(n)
                break
        else:
            groups.append((d, [n]))
    gidx = {n: gi for gi, (_, members) in enumerate(groups) for n in members}
    # joint degree of each group = max over terms of the summed exponents
    gdeg = [0] * len(groups)
    for e, _ in p.terms.items():
        acc = [0] * len(groups)
        for n in names:
            acc[gidx[n]] += e[p.table.index[n]]
        for gi, a in enumerate(acc):
            gdeg[gi] = max(gdeg[gi], a)
    npow = {}
    for n in names:
        v = vals[n]
        npow[n] = [MPoly.const(tgt, 1)]
        for _ in range(p.deg_in(n)):
            npow[n].append(npow[n][-1] * v.n)
    dpow = []
    for gi, (d, _) in enumerate(groups):
        pows = [MPoly.const(tgt, 1)]
        for _ in range(gdeg[gi]):
            pows.append(pows[-1] * d)
        dpow.append(pows)
    num = MPoly(tgt)
    for e, c in p.terms.items():
        t = MPoly.const(tgt, c)
        acc = [0] * len(groups)
        for n in names:
            pw = e[p.table.index[n]]
            if pw:
                t = t * npow[n][pw]
                acc[gidx[n]] += pw
        for gi, a in enumerate(acc):
            if gdeg[gi] - a:
                t = t * dpow[gi][gdeg[gi] - a]
        num = num + t
    den = MPoly.const(tgt, 1)
    for gi in range(len(groups)):
        den = den * dpow[gi][gdeg[gi]]
    if den.is_zero():
        raise DivisionError("substitution denominator identically zero")
    return RatFn(num, den)


def subs_ratfn(f, bindings):
    """Substitute into a RatFn; see subs_poly_ratfn for the contract."""
    num = subs_poly_ratfn(f.n, bindings)
    den = subs_poly_ratfn(f.d, bindings)
    if den.is_zero():
        raise DivisionError("substitution produced identically-zero denominator")
    return num / den
