"""Exact scalars: Gaussian rationals, optionally extended by sqrt(2).

A GaussRat holds the value (a + b*sqrt2) + (c + d*sqrt2)*i with a, b, c, d
exact rationals.  The sqrt2 parts exist because several catalog maps carry
sqrt(2) coefficients; plain Gaussian rationals are the b = d = 0 slice.
All operations are exact; nothing here ever touches floats except the
explicit to_complex() conversion.
"""

import math

try:  # gmpy2's mpq is a drop-in Fraction replacement, ~10x faster
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

Q0 = Q(0)
Q1 = Q(1)
import fractions as _fractions
_RAT_TYPES = (type(Q0), _fractions.Fraction)
SQRT2_FLOAT = math.sqrt(2.0)


def _sign(x):
    return (x > 0) - (x < 0)


def _real_sign(a, b):
    # sign of a + b*sqrt2; exact (sqrt2 irrational, so a + b*sqrt2 = 0 only at a = b = 0)
    if b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    sa, sb = _sign(a), _sign(b)
    if sa == sb:
        return sa
    return sa if a * a > 2 * b * b else sb


def _rat_sqrt(x):
    # exact square root of a nonnegative rational, or None
    if x < 0:
        return None
    n, d = int(x.numerator), int(x.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Q(rn, rd)
    return None


def _quad_sqrt(a, b):
    # exact square root of a + b*sqrt2 inside Q(sqrt2), as (p, q), or None
    if _real_sign(a, b) < 0:
        return None
    if b == 0:
        p = _rat_sqrt(a)
        if p is not None:
            return (p, Q0)
        q = _rat_sqrt(a / 2)
        if q is not None:
            return (Q0, q)
        return None
    # (p + q*sqrt2)^2 = p^2 + 2q^2 + 2pq*sqrt2 ; 2p^4 - 2a p^2 + b^2 = 0
    disc = _rat_sqrt(a * a - 2 * b * b)
    if disc is None:
        return None
    for p2 in ((a + disc) / 2, (a - disc) / 2):
        p = _rat_sqrt(p2)
        if p is not None and p != 0:
            q = b / (2 * p)
            return (p, q)
    return None


class GaussRat:
    """Element of Q(i, sqrt2): (a + b*sqrt2) + (c + d*sqrt2)*i."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, c=0, b=0, d=0):
        self.a = Q(a)
        self.b = Q(b)
        self.c = Q(c)
        self.d = Q(d)

    @classmethod
    def _raw(cls, a, b, c, d):
        self = object.__new__(cls)
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        return self

    # -- constructors ------------------------------------------------------
    @staticmethod
    def i():
        return GaussRat(0, 1)

    @staticmethod
    def sqrt2():
        return GaussRat(0, 0, 1, 0)

    @staticmethod
    def of(x):
        if isinstance(x, GaussRat):
            return x
        return GaussRat(x)

    @staticmethod
    def _coercible(x):
        return isinstance(x, (int, GaussRat)) or isinstance(x, _RAT_TYPES)

    # -- predicates --------------------------------------------------------
    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def is_real(self):
        return not (self.c or self.d)

    def is_rational(self):
        return not (self.b or self.c or self.d)

    @property
    def re(self):
        return GaussRat(self.a, 0, self.b, 0)

    @property
    def im(self):
        return GaussRat(self.c, 0, self.d, 0)

    def real_sign(self):
        """Exact sign of the value, which must be real."""
        if self.c or self.d:
            raise ValueError("real_sign of a non-real value")
        return _real_sign(self.a, self.b)

    # -- ring/field ops ----------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, GaussRat):
            if not GaussRat._coercible(o):
                return NotImplemented
            o = GaussRat(o)
        return GaussRat._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._raw(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o):
        if not GaussRat._coercible(o):
            return NotImplemented
        return self + (-GaussRat.of(o))

    def __rsub__(self, o):
        return GaussRat.of(o) + (-self)

    def __mul__(self, o):
        if not isinstance(o, GaussRat):
            if not GaussRat._coercible(o):
                return NotImplemented
            o = GaussRat(o)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # fast paths: plain Gaussian rationals are the common case
        if not (b1 or d1):
            if not (b2 or d2):
                return GaussRat._raw(a1 * a2 - c1 * c2, Q0,
                                     a1 * c2 + c1 * a2, Q0)
            return GaussRat._raw(a1 * a2 - c1 * c2, a1 * b2 - c1 * d2,
                                 a1 * c2 + c1 * a2, a1 * d2 + c1 * b2)
        # (x1 + i y1)(x2 + i y2) with x = a + b*sqrt2, y = c + d*sqrt2
        ra = a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2
        rb = a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2
        rc = a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2)
        rd = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return GaussRat._raw(ra, rb, rc, rd)

    __rmul__ = __mul__

    def conj(self):
        return GaussRat(self.a, -self.c, self.b, -self.d)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("GaussRat inverse of zero")
        n = self * self.conj()  # real: u + v*sqrt2
        u, v = n.a, n.b
        den = u * u - 2 * v * v  # norm down to Q; nonzero for nonzero input
        cj = self.conj()
        # (u + v*sqrt2)^{-1} = (u - v*sqrt2)/(u^2 - 2 v^2)
        return GaussRat(u / den, 0, -v / den, 0) * cj

    def __truediv__(self, o):
        if not GaussRat._coercible(o):
            return NotImplemented
        return self * GaussRat.of(o).inv()

    def __rtruediv__(self, o):
        return GaussRat.of(o) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sqrt(self):
        """Exact square root inside Q(i, sqrt2), or None when absent."""
        if self.is_zero():
            return GaussRat(0)
        if self.is_real():
            r = _quad_sqrt(self.a, self.b)
            if r is not None:
                return GaussRat(r[0], 0, r[1], 0)
            r = _quad_sqrt(-self.a, -self.b)
            if r is not None:
                return GaussRat(0, r[0], 0, r[1])
            return None
        # general complex: (u+iv)^2 = x + iy with u^2 = (x + |z|)/2, v = y/(2u)
        norm2 = self * self.conj()
        nr = _quad_sqrt(norm2.a, norm2.b)
        if nr is None:
            return None
        u2a = (self.a + nr[0]) / 2
        u2b = (self.b + nr[1]) / 2
        ur = _quad_sqrt(u2a, u2b)
        if ur is None or (ur[0] == 0 and ur[1] == 0):
            return None
        u = GaussRat(ur[0], 0, ur[1], 0)
        v = self.im / (2 * Q1) / u
        cand = u + GaussRat.i() * v
        return cand if (cand * cand - self).is_zero() else None

    # -- comparisons / hashing ---------------------------------------------
    def __eq__(self, o):
        if isinstance(o, (int, type(Q0))):
            o = GaussRat(o)
        if not isinstance(o, GaussRat):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return not self.is_zero()

    # -- conversion / display ----------------------------------------------
    def to_complex(self):
        return complex(float(self.a) + float(self.b) * SQRT2_FLOAT,
                       float(self.c) + float(self.d) * SQRT2_FLOAT)

    def __repr__(self):
        def real_str(a, b):
            parts = []
            if a:
                parts.append(str(a))
            if b:
                parts.append(("" if b == 1 else ("-" if b == -1 else str(b) + "*")) + "sqrt2")
            return "+".join(parts).replace("+-", "-") or "0"

        re_s = real_str(self.a, self.b)
        if not (self.c or self.d):
            return re_s
        im_s = real_str(self.c, self.d)
        if re_s == "0":
            return "(%s)*i" % im_s
        return "%s+(%s)*i" % (re_s, im_s)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat.i()
SQRT2 = GaussRat.sqrt2()
HALF = GaussRat(Q(1, 2))


def gq(num, den=1):
    """Rational shortcut: gq(3, 4) = 3/4 as a GaussRat."""
    return GaussRat(Q(num, den))
