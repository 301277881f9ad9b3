"""Multivariate polynomials over GaussRat with formal conjugation.

Variables live in a VarTable that pairs every holomorphic name with its
conjugate partner; bar() swaps paired exponent slots and conjugates
coefficients, so (z, zbar, w, wbar) are genuinely independent symbols.
Terms are a dict from exponent tuples to nonzero GaussRat coefficients,
which makes equality structural.
"""

from .scalars import GaussRat, ZERO, ONE
from ..errors import DegreeError, PairingError


class VarTable:
    """Ordered variable names plus the conjugation pairing."""

    __slots__ = ("names", "index", "conj_index", "holo", "anti")

    def __init__(self, holo, anti):
        if len(holo) != len(anti):
            raise PairingError("holo/anti name lists must pair up")
        names = tuple(holo) + tuple(anti)
        if len(set(names)) != len(names):
            raise PairingError("variable names must be unique")
        self.holo = tuple(holo)
        self.anti = tuple(anti)
        self.names = names
        self.index = {n: k for k, n in enumerate(names)}
        m = len(holo)
        self.conj_index = tuple(list(range(m, 2 * m)) + list(range(m)))

    def conj_name(self, name):
        return self.names[self.conj_index[self.index[name]]]

    def __len__(self):
        return len(self.names)

    def __eq__(self, o):
        return isinstance(o, VarTable) and self.names == o.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VarTable(%s | %s)" % (",".join(self.holo), ",".join(self.anti))


def table_for(holo_names):
    """Standard table: conjugates named by appending 'b'."""
    return VarTable(holo_names, [n + "b" for n in holo_names])


class MPoly:
    """Polynomial: dict from exponent tuples (aligned to table.names) to GaussRat."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None, prune=True):
        self.table = table
        if not terms:
            self.terms = {}
        elif prune:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, table, c):
        c = GaussRat.of(c)
        if c.is_zero():
            return cls(table)
        return cls(table, {(0,) * len(table): c}, prune=False)

    @classmethod
    def var(cls, table, name, power=1):
        e = [0] * len(table)
        e[table.index[name]] = power
        return cls(table, {tuple(e): ONE}, prune=False)

    # -- predicates / inspection --------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def const_term(self):
        return self.terms.get((0,) * len(self.table), ZERO)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def deg_in(self, name):
        k = self.table.index[name]
        return max((e[k] for e in self.terms), default=0)

    def coeff(self, mono):
        """Coefficient of the monomial given as {name: exp}."""
        e = [0] * len(self.table)
        for n, p in mono.items():
            e[self.table.index[n]] = p
        return self.terms.get(tuple(e), ZERO)

    # -- ring ops ------------------------------------------------------------
    def __add__(self, o):
        if isinstance(o, (int, GaussRat)):
            o = MPoly.const(self.table, o)
        res = dict(self.terms)
        for e, c in o.terms.items():
            s = res.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                res.pop(e, None)
            else:
                res[e] = s
        return MPoly(self.table, res, prune=False)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.table, {e: -c for e, c in self.terms.items()}, prune=False)

    def __sub__(self, o):
        if isinstance(o, (int, GaussRat)):
            o = MPoly.const(self.table, o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, GaussRat)):
            c = GaussRat.of(o)
            if c.is_zero():
                return MPoly(self.table)
            return MPoly(self.table, {e: k * c for e, k in self.terms.items()}, prune=False)
        res = {}
        oterms = list(o.terms.items())
        for e1, c1 in self.terms.items():
            for e2, c2 in oterms:
                e = tuple(map(int.__add__, e1, e2))
                prod = c1 * c2
                s = res.get(e)
                s = prod if s is None else s + prod
                if s.is_zero():
                    res.pop(e, None)
                else:
                    res[e] = s
        return MPoly(self.table, res, prune=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.const(self.table, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, int):
            o = MPoly.const(self.table, o)
        return isinstance(o, MPoly) and self.table == o.table and self.terms == o.terms

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    # -- calculus / conjugation ----------------------------------------------
    def diff(self, name):
        k = self.table.index[name]
        res = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                res[tuple(e2)] = c * e[k]
        return MPoly(self.table, res, prune=False)

    def bar(self):
        ci = self.table.conj_index
        res = {}
        for e, c in self.terms.items():
            e2 = [0] * len(e)
            for k, p in enumerate(e):
                if p:
                    e2[ci[k]] = p
            res[tuple(e2)] = c.conj()
        return MPoly(self.table, res, prune=False)

    # -- evaluation -----------------------------------------------------------
    def eval_gauss(self, point):
        """Exact evaluation; point maps every occurring name to a GaussRat."""
        idx_val = {self.table.index[n]: GaussRat.of(v) for n, v in point.items()}
        out = ZERO
        for e, c in self.terms.items():
            v = c
            for k, p in enumerate(e):
                if p:
                    v = v * idx_val[k] ** p
            out = out + v
        return out

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

    def shift(self, point):
        """Substitute name -> name + c for the given {name: GaussRat} offsets."""
        out = self
        for name, c in point.items():
            c = GaussRat.of(c)
            if c.is_zero():
                continue
            k = out.table.index[name]
            res = MPoly(out.table)
            v = MPoly.var(out.table, name) + MPoly.const(out.table, c)
            powers = {0: MPoly.const(out.table, 1)}
            maxp = max((e[k] for e in out.terms), default=0)
            for p in range(1, maxp + 1):
                powers[p] = powers[p - 1] * v
            for e, coef in out.terms.items():
                e2 = list(e)
                p = e2[k]
                e2[k] = 0
                res = res + MPoly(out.table, {tuple(e2): coef}, prune=False) * powers[p]
            out = res
        return out

    def subs_poly(self, bindings):
        """Substitute names by MPoly values (same table); unbound names pass through."""
        out = MPoly(self.table)
        cache = {}
        for e, coef in self.terms.items():
            term = MPoly.const(self.table, coef)
            rest = [0] * len(e)
            for k, p in enumerate(e):
                if not p:
                    continue
                name = self.table.names[k]
                if name in bindings:
                    key = (k, p)
                    if key not in cache:
                        cache[key] = bindings[name] ** p
                    term = term * cache[key]
                else:
                    rest[k] = p
            if any(rest):
                term = term * MPoly(self.table, {tuple(rest): ONE}, prune=False)
            out = out + term
        return out

    # -- display ---------------------------------------------------------------
    def _sorted_terms(self):
        # graded lex over the table order
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-p for p in ec[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                ("%s^%d" % (self.table.names[k], p)) if p > 1 else self.table.names[k]
                for k, p in enumerate(e) if p)
            cs = repr(c)
            if mono:
                bits.append(mono if cs == "1" else ("-" + mono if cs == "-1" else "(%s)*%s" % (cs, mono)))
            else:
                bits.append("(%s)" % cs)
        return " + ".join(bits)


def pseudo_divide(p, d, name):
    """Pseudo-division of p by d in the variable `name`.

    Returns (q, r, k) with lc(d)^k * p = q*d + r and deg_name(r) < deg_name(d),
    everything exact over GaussRat.
    """
    if p.table != d.table:
        raise ValueError("operands over different tables")
    nd = d.deg_in(name)
    if nd == 0:
        raise DegreeError("divisor constant in %s" % name)
    idx = p.table.index[name]

    def coeff_poly(poly, j):
        res = {}
        for e, c in poly.terms.items():
            if e[idx] == j:
                e2 = list(e)
                e2[idx] = 0
                res[tuple(e2)] = c
        return MPoly(poly.table, res, prune=False)

    lc = coeff_poly(d, nd)
    q = MPoly(p.table)
    r = p
    k = 0
    while not r.is_zero():
        nr = r.deg_in(name)
        if nr < nd:
            break
        t = coeff_poly(r, nr) * MPoly.var(p.table, name, nr - nd)
        r = lc * r - t * d
        q = lc * q + t
        k += 1
    return q, r, k
