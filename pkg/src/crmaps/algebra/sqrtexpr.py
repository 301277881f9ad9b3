"""Values of the form base + coeff*sqrt(radicand) over one shared radicand.

The radicand is normalized to have value 1 at the origin (principal branch).
Sums/products of two SqrtExpr are only defined when the radicands agree;
mixing distinct radicals is deliberately unsupported -- those identities are
checked at the series level instead.
"""

import cmath

from .ratfn import RatFn, subs_ratfn
from .scalars import GaussRat, ONE
from .series import series_of_ratfn
from ..errors import BranchError, PoleError


class SqrtExpr:
    __slots__ = ("base", "coeff", "rad")

    def __init__(self, base, coeff, rad, normalize=True):
        if normalize:
            r0 = rad.eval_gauss({n: 0 for n in rad.table.names})
            if r0.is_zero():
                raise BranchError("radicand vanishes at the origin")
            if not (r0 == ONE):
                s = r0.sqrt()
                if s is None:
                    raise BranchError("radicand value at origin has no exact square root")
                coeff = coeff * s
                rad = rad / r0
        self.base = base
        self.coeff = coeff
        self.rad = rad

    @property
    def table(self):
        return self.base.table

    @classmethod
    def of(cls, x, like):
        """Coerce x (RatFn/int/GaussRat/SqrtExpr) to a SqrtExpr sharing like.rad."""
        if isinstance(x, SqrtExpr):
            return x
        x = RatFn.of(x, like.table)
        return cls(x, RatFn.const(like.table, 0), like.rad, normalize=False)

    def is_zero(self):
        return self.base.is_zero() and self.coeff.is_zero()

    def is_rational(self):
        return self.coeff.is_zero()

    def as_ratfn(self):
        if not self.is_rational():
            raise BranchError("value genuinely contains a radical")
        return self.base

    def _check(self, o):
        if not (self.coeff.is_zero() or o.coeff.is_zero() or self.rad.eq(o.rad)):
            raise BranchError("mixing distinct radicands; use the series pathway")

    # -- ring ops ----------------------------------------------------------------
    def __add__(self, o):
        o = SqrtExpr.of(o, self)
        self._check(o)
        rad = self.rad if not self.coeff.is_zero() else o.rad
        return SqrtExpr(self.base + o.base, self.coeff + o.coeff, rad, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExpr(-self.base, -self.coeff, self.rad, normalize=False)

    def __sub__(self, o):
        return self + (-SqrtExpr.of(o, self))

    def __rsub__(self, o):
        return SqrtExpr.of(o, self) + (-self)

    def __mul__(self, o):
        o = SqrtExpr.of(o, self)
        self._check(o)
        rad = self.rad if not self.coeff.is_zero() else o.rad
        base = self.base * o.base + self.coeff * o.coeff * rad
        coeff = self.base * o.coeff + self.coeff * o.base
        return SqrtExpr(base, coeff, rad, normalize=False)

    __rmul__ = __mul__

    def inv(self):
        nrm = self.base * self.base - self.coeff * self.coeff * self.rad
        if nrm.is_zero():
            raise BranchError("non-invertible radical expression")
        return SqrtExpr(self.base / nrm, -self.coeff / nrm, self.rad, normalize=False)

    def __truediv__(self, o):
        return self * SqrtExpr.of(o, self).inv()

    def __rtruediv__(self, o):
        return SqrtExpr.of(o, self) * self.inv()

    def __pow__(self, k):
        out = SqrtExpr.of(1, self)
        base = self
        for _ in range(k):
            out = out * base
        return out

    def eq(self, o):
        o = SqrtExpr.of(o, self)
        self._check(o)
        return (self.base - o.base).is_zero() and (self.coeff - o.coeff).is_zero()

    # -- conjugation / calculus ---------------------------------------------------
    def bar(self):
        return SqrtExpr(self.base.bar(), self.coeff.bar(), self.rad.bar(), normalize=False)

    def diff(self, name):
        # d(c*sqrt(R)) = (c' + c R'/(2R)) sqrt(R)
        half = GaussRat.of(1) / 2
        coeff = self.coeff.diff(name) + self.coeff * self.rad.diff(name) * half / self.rad
        return SqrtExpr(self.base.diff(name), coeff, self.rad, normalize=False)

    def subs(self, bindings):
        base = subs_ratfn(self.base, bindings)
        coeff = subs_ratfn(self.coeff, bindings)
        rad = subs_ratfn(self.rad, bindings)
        return SqrtExpr(base, coeff, rad)

    # -- expansion / evaluation -----------------------------------------------------
    def to_series(self, cap, center=None):
        if center:
            return SqrtExpr(self.base.shift(center), self.coeff.shift(center),
                            self.rad.shift(center)).to_series(cap)
        try:
            s = series_of_ratfn(self.rad, cap).sqrt()
            return (series_of_ratfn(self.base, cap)
                    + series_of_ratfn(self.coeff, cap) * s)
        except PoleError:
            pass
        # base/coeff denominators vanish at 0 but the value is regular:
        # expand (A + B*sqrt(rad))/C with polynomials A, B, C by exact division
        from .series import PSeries, series_div_exact
        A = self.base.n * self.coeff.d
        B = self.coeff.n * self.base.d
        C = self.base.d * self.coeff.d
        v = min((sum(e) for e in C.terms), default=0)
        capN = cap + v
        rad_s = series_of_ratfn(self.rad, capN).sqrt()
        N = PSeries.from_poly(A, capN) + PSeries.from_poly(B, capN) * rad_s
        return series_div_exact(N, PSeries.from_poly(C, capN), cap)

    def eval_complex(self, point):
        r = self.rad.eval_complex(point)
        return self.base.eval_complex(point) + self.coeff.eval_complex(point) * cmath.sqrt(r)

    def eval_gauss(self, point):
        r = self.rad.eval_gauss(point)
        s = r.sqrt()
        if s is None:
            raise BranchError("radicand value has no exact square root")
        return self.base.eval_gauss(point) + self.coeff.eval_gauss(point) * s

    def __repr__(self):
        return "(%r) + (%r)*sqrt(%r)" % (self.base, self.coeff, self.rad)
