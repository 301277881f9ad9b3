"""Truncated multivariate power series over GaussRat.

All operations re-truncate to the degree cap.  Expansion of rational
functions and radicals at a point happens here: shift to the origin, invert
the unit denominator, take principal square roots with value 1 at 0.
"""

from .poly import MPoly
from .scalars import GaussRat, Q, ZERO, ONE
from ..errors import BranchError, PoleError


class PSeries:
    __slots__ = ("table", "cap", "terms")

    def __init__(self, table, cap, terms=None, prune=True):
        self.table = table
        self.cap = cap
        if not terms:
            self.terms = {}
        elif prune:
            self.terms = {e: c for e, c in terms.items()
                          if sum(e) <= cap and not c.is_zero()}
        else:
            self.terms = terms

    # -- constructors ---------------------------------------------------------
    @classmethod
    def const(cls, table, cap, c):
        c = GaussRat.of(c)
        if c.is_zero():
            return cls(table, cap)
        return cls(table, cap, {(0,) * len(table): c}, prune=False)

    @classmethod
    def from_poly(cls, p, cap):
        return cls(p.table, cap, p.terms)

    def to_poly(self):
        return MPoly(self.table, dict(self.terms))

    # -- basics -----------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def const_term(self):
        return self.terms.get((0,) * len(self.table), ZERO)

    def valuation(self):
        return min((sum(e) for e in self.terms), default=self.cap + 1)

    def truncate(self, cap):
        return PSeries(self.table, cap, {e: c for e, c in self.terms.items() if sum(e) <= cap},
                       prune=False)

    def coeff(self, mono):
        e = [0] * len(self.table)
        for n, p in mono.items():
            e[self.table.index[n]] = p
        return self.terms.get(tuple(e), ZERO)

    def __eq__(self, o):
        return (isinstance(o, PSeries) and self.table == o.table
                and self.cap == o.cap and self.terms == o.terms)

    # -- ring ops -------------------------------------------------------------------
    def __add__(self, o):
        if isinstance(o, (int, GaussRat)):
            o = PSeries.const(self.table, self.cap, o)
        res = dict(self.terms)
        for e, c in o.terms.items():
            if sum(e) > self.cap:
                continue
            s = res.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                res.pop(e, None)
            else:
                res[e] = s
        return PSeries(self.table, self.cap, res, prune=False)

    __radd__ = __add__

    def __neg__(self):
        return PSeries(self.table, self.cap, {e: -c for e, c in self.terms.items()}, prune=False)

    def __sub__(self, o):
        if isinstance(o, (int, GaussRat)):
            o = PSeries.const(self.table, self.cap, o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, GaussRat)):
            c = GaussRat.of(o)
            if c.is_zero():
                return PSeries(self.table, self.cap)
            return PSeries(self.table, self.cap,
                           {e: k * c for e, k in self.terms.items()}, prune=False)
        cap = self.cap
        res = {}
        right = sorted(((sum(e), e, c) for e, c in o.terms.items()),
                       key=lambda t: t[0])
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for d2, e2, c2 in right:
                if d1 + d2 > cap:
                    break
                e = tuple(map(int.__add__, e1, e2))
                prod = c1 * c2
                s = res.get(e)
                s = prod if s is None else s + prod
                if s.is_zero():
                    res.pop(e, None)
                else:
                    res[e] = s
        return PSeries(self.table, cap, res, prune=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = PSeries.const(self.table, self.cap, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- series-specific operations ------------------------------------------------
    def inv(self):
        t = self.const_term()
        if t.is_zero():
            raise PoleError("series inverse needs a unit constant term")
        ti = t.inv()
        x = self * ti - 1  # valuation >= 1
        out = PSeries.const(self.table, self.cap, 1)
        pw = PSeries.const(self.table, self.cap, 1)
        steps = self.cap if not x.is_zero() else 0
        v = max(x.valuation(), 1)
        for _ in range(0, steps // v + 1 if steps else 0):
            pw = pw * (-x)
            if pw.is_zero():
                break
            out = out + pw
        return out * ti

    def sqrt(self):
        """Principal branch with value 1 at 0; needs constant term exactly 1."""
        if not (self.const_term() == ONE):
            raise BranchError("sqrt series needs constant term 1")
        x = self - 1
        out = PSeries.const(self.table, self.cap, 1)
        pw = PSeries.const(self.table, self.cap, 1)
        coef = GaussRat(1)
        v = max(x.valuation(), 1) if not x.is_zero() else self.cap + 1
        k = 0
        while (k + 1) * v <= self.cap:
            k += 1
            # binomial(1/2, k) built up iteratively
            coef = coef * GaussRat(Q(3 - 2 * k, 2 * k))
            pw = pw * x
            if pw.is_zero():
                break
            out = out + pw * coef
        return out

    def diff(self, name):
        k = self.table.index[name]
        res = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                res[tuple(e2)] = c * e[k]
        # differentiating a degree-cap truncation is only exact to cap-1
        return PSeries(self.table, self.cap - 1, res)

    def bar(self):
        ci = self.table.conj_index
        res = {}
        for e, c in self.terms.items():
            e2 = [0] * len(e)
            for k, p in enumerate(e):
                if p:
                    e2[ci[k]] = p
            res[tuple(e2)] = c.conj()
        return PSeries(self.table, self.cap, res, prune=False)

    def subs(self, bindings):
        """Substitute names by PSeries with zero constant term (or constants);
        unbound variables pass through."""
        vals = {}
        for n, v in bindings.items():
            if isinstance(v, (int, GaussRat)):
                vals[n] = PSeries.const(self.table, self.cap, v)
            else:
                vals[n] = v
        for k, name in enumerate(self.table.names):
            if name not in vals and any(e[k] for e in self.terms):
                e = [0] * len(self.table)
                e[k] = 1
                vals[name] = PSeries(self.table, self.cap, {tuple(e): ONE},
                                     prune=False)
        return horner_subs(self.terms, self.table.names, vals, self.table,
                           self.cap)

    def eval_complex(self, point):
        idx_val = {self.table.index[n]: complex(v) for n, v in point.items()}
        out = 0j
        for e, c in self.terms.items():
            v = c.to_complex()
            for k, p in enumerate(e):
                if p:
                    v *= idx_val[k] ** p
            out += v
        return out

    def __repr__(self):
        return "PSeries[<=%d](%s)" % (self.cap, self.to_poly())


def sqrt_series(radicand, cap):
    """Truncated sqrt of a PSeries/MPoly with constant term 1."""
    if isinstance(radicand, MPoly):
        radicand = PSeries.from_poly(radicand, cap)
    return radicand.truncate(cap).sqrt() if radicand.cap != cap else radicand.sqrt()


def horner_subs(terms, src_names, bindings, table, cap):
    """Evaluate a term-dict over src_names on PSeries bindings, Horner-style.

    Every variable with a nonzero exponent must be bound; the result lives in
    `table`.  One series multiplication per variable power, not per term.
    """
    zero = PSeries(table, cap)
    if not terms:
        return zero
    used = [k for k in range(len(src_names))
            if any(e[k] for e in terms)]

    def rec(sub, idx):
        if idx == len(used):
            e0 = next(iter(sub))
            return PSeries.const(table, cap, sub[e0])
        k = used[idx]
        groups = {}
        for e, c in sub.items():
            groups.setdefault(e[k], {})[e] = c
        X = bindings[src_names[k]]
        maxp = max(groups)
        acc = rec(groups[maxp], idx + 1)
        for p in range(maxp - 1, -1, -1):
            acc = acc * X
            if p in groups:
                acc = acc + rec(groups[p], idx + 1)
        return acc

    return rec(dict(terms), 0)


def _homog_parts(s, used):
    parts = {}
    for e, c in s.terms.items():
        parts.setdefault(sum(e), {})[tuple(e[k] for k in used)] = c
    return parts


def _monomials(nvars, deg):
    if nvars == 1:
        yield (deg,)
        return
    for first in range(deg + 1):
        for rest in _monomials(nvars - 1, deg - first):
            yield (first,) + rest


def _solve_overdetermined(rows, rhs):
    # exact Gaussian elimination; rows: list of dict col->GaussRat
    cols = sorted({c for r in rows for c in r})
    cidx = {c: k for k, c in enumerate(cols)}
    m = [[r.get(c, ZERO) for c in cols] + [b] for r, b in zip(rows, rhs)]
    nr, nc = len(m), len(cols)
    piv_rows = []
    row = 0
    for col in range(nc):
        sel = None
        for r in range(row, nr):
            if not m[r][col].is_zero():
                sel = r
                break
        if sel is None:
            piv_rows.append(None)
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = m[row][col].inv()
        m[row] = [x * inv for x in m[row]]
        for r in range(nr):
            if r != row and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        piv_rows.append(row)
        row += 1
    # consistency: zero rows must have zero rhs
    for r in range(row, nr):
        if not m[r][nc].is_zero():
            return None
    sol = {}
    for k, c in enumerate(cols):
        pr = piv_rows[k]
        sol[c] = m[pr][nc] if pr is not None else ZERO
    return sol


def series_div_exact(num, den, cap):
    """Exact division of power series when the quotient exists.

    den may vanish at the origin; solves T * den = num degree by degree over
    the variables actually used.  Raises PoleError when num is not divisible.
    """
    table = num.table
    used = sorted({k for e in list(num.terms) + list(den.terms)
                   for k in range(len(table)) if e[k]})
    if not used:
        c = den.const_term()
        if c.is_zero():
            raise PoleError("division by zero series")
        return PSeries.const(table, cap, num.const_term() / c)
    nden = _homog_parts(den, used)
    v = min(nden)
    if v == 0:
        return (num * den.inv()).truncate(cap)
    nnum = _homog_parts(num, used)
    if any(d < v for d in nnum):
        raise PoleError("series not divisible (valuation too low)")
    nu = len(used)
    t_parts = {}
    max_d = min(cap, num.cap - v)
    for d in range(0, max_d + 1):
        # C_v * T_d = num_{d+v} - sum_{k<d} T_k * C_{d+v-k}
        rhs_part = dict(nnum.get(d + v, {}))
        for k in range(d):
            ck = nden.get(d + v - k, None)
            if not ck:
                continue
            for et, ct in t_parts.get(k, {}).items():
                for ec, cc in ck.items():
                    e = tuple(a + b for a, b in zip(et, ec))
                    s = rhs_part.get(e, ZERO) + (-(ct * cc))
                    if s.is_zero():
                        rhs_part.pop(e, None)
                    else:
                        rhs_part[e] = s
        cv = nden[v]
        unknowns = list(_monomials(nu, d))
        eq_monos = sorted({tuple(a + b for a, b in zip(u, ec))
                           for u in unknowns for ec in cv} | set(rhs_part))
        rows = []
        rhs = []
        for em in eq_monos:
            row = {}
            for ui, u in enumerate(unknowns):
                need = tuple(a - b for a, b in zip(em, u))
                if all(x >= 0 for x in need):
                    cc = cv.get(need)
                    if cc is not None:
                        row[ui] = row.get(ui, ZERO) + cc
            rows.append(row)
            rhs.append(rhs_part.get(em, ZERO))
        sol = _solve_overdetermined(rows, rhs)
        if sol is None:
            raise PoleError("series not divisible at degree %d" % d)
        t_parts[d] = {u: sol[ui] for ui, u in enumerate(unknowns)
                      if ui in sol and not sol[ui].is_zero()}
    terms = {}
    for d, part in t_parts.items():
        for eu, c in part.items():
            e = [0] * len(table)
            for k, p in zip(used, eu):
                e[k] = p
            terms[tuple(e)] = c
    return PSeries(table, cap, terms)


def series_of_ratfn(f, cap, center=None):
    """Taylor expansion of a RatFn at `center` (default: the origin)."""
    if center:
        f = f.shift(center)
    if f.d.const_term().is_zero():
        raise PoleError("denominator vanishes at the expansion point")
    num = PSeries.from_poly(f.n, cap)
    den = PSeries.from_poly(f.d, cap)
    return num * den.inv()
