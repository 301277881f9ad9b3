"""Hypersurface catalog: hyperquadrics, the null-cone tube model, ball and
Lie-ball boundaries, and the real tube slice, with exact on-variety reduction
for the graph-like ones and seeded numeric samplers for the rest."""

import cmath
import math
import random

from .algebra import GaussRat, HALF, I, MPoly, Q, RatFn, gq, table_for
from .errors import ParameterError, ReductionUnsupported


class SignatureForm:
    """Indefinite pairing <a,b>_l = -sum_{j<=l} a_j b_j + sum_{j>l} a_j b_j."""

    __slots__ = ("n", "l", "eps")

    def __init__(self, n, l):
        if not (0 <= l < n - 1):
            raise ParameterError("signature needs 0 <= l < n-1")
        self.n = n
        self.l = l
        self.eps = tuple(-1 if j < l else 1 for j in range(n - 1))

    @property
    def d_l(self):
        return [[GaussRat(self.eps[i]) if i == j else GaussRat(0)
                 for j in range(self.n - 1)] for i in range(self.n - 1)]


def pairing(a, b, form):
    """<a,b>_l for vectors of RatFn/MPoly/GaussRat (length n-1)."""
    if len(a) != len(b) or len(a) != form.n - 1:
        raise ParameterError("pairing length mismatch")
    out = None
    for e, x, y in zip(form.eps, a, b):
        t = x * y * e
        out = t if out is None else out + t
    return out


def pairing_c(a, b, l):
    """Numeric pairing over complex floats."""
    return sum((-1 if j < l else 1) * x * y for j, (x, y) in enumerate(zip(a, b)))


class Hypersurface:
    """Named real hypersurface with complexified defining polynomial.

    graph_var/graph_solve give the exact reduction (rho solved for one
    conjugate variable); sampler is the seeded numeric fallback.
    """

    def __init__(self, name, n, l, table, rho, base_point,
                 graph_var=None, graph_solve=None, sampler=None):
        self.name = name
        self.n = n
        self.l = l
        self.form = SignatureForm(n, l) if l < n - 1 else None
        self.table = table
        self.rho = rho
        self.base_point = tuple(GaussRat.of(c) for c in base_point)
        self.graph_var = graph_var
        self.graph_solve = graph_solve
        self.sampler = sampler

    @property
    def ambient_dim(self):
        return len(self.table.holo)

    @property
    def holo_vars(self):
        return self.table.holo

    def key(self):
        return "%s:n=%d,l=%d" % (self.name, self.n, self.l)

    def __repr__(self):
        return "Hypersurface(%s)" % self.key()

    def base_point_full(self):
        """Base point extended with conjugate coordinates, as a dict."""
        pt = {}
        for name, c in zip(self.table.holo, self.base_point):
            pt[name] = c
            pt[self.table.conj_name(name)] = c.conj()
        return pt

    def rho_at(self, point):
        """Numeric rho at a complex point (conjugates filled in)."""
        full = {}
        for name, c in zip(self.table.holo, point):
            full[name] = c
            full[self.table.conj_name(name)] = complex(c).conjugate()
        return self.rho.eval_complex(full)


def _hyperquadric(n, l):
    names = ["z%d" % j for j in range(1, n)] + ["w"]
    T = table_for(names)
    form = SignatureForm(n, l)
    z = [MPoly.var(T, nm) for nm in names[:-1]]
    zb = [MPoly.var(T, nm + "b") for nm in names[:-1]]
    w = MPoly.var(T, "w")
    wb = MPoly.var(T, "wb")
    rho = (w - wb) * (HALF / I) - pairing(z, zb, form)
    # wb = w - 2i <z, zb>_l
    solve = RatFn(w - pairing(z, zb, form) * (I * 2))

    def sampler(rng, scale, center=None):
        c = center or ((0,) * n)
        zv = [c[k] + complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
              for k in range(n - 1)]
        x = complex(c[-1]).real + rng.uniform(-scale, scale)
        wv = complex(x, pairing_c(zv, [t.conjugate() for t in zv], l).real)
        return tuple(zv) + (wv,)

    return Hypersurface("hyperquadric", n, l, T, rho, [0] * n,
                        graph_var="wb", graph_solve=solve, sampler=sampler)


def _x_model(n, l):
    names = ["z%d" % j for j in range(1, n)] + ["zeta", "w"]
    T = table_for(names)
    form = SignatureForm(n, l)
    z = [MPoly.var(T, nm) for nm in names[:-2]]
    zb = [MPoly.var(T, nm + "b") for nm in names[:-2]]
    zeta, zetab = MPoly.var(T, "zeta"), MPoly.var(T, "zetab")
    w, wb = MPoly.var(T, "w"), MPoly.var(T, "wb")
    one = MPoly.const(T, 1)
    zzt = sum((t * t for t in z), MPoly(T))
    zbzbt = sum((t * t for t in zb), MPoly(T))
    rho = ((one - zeta * zetab) * (w - wb) * (HALF / I)
           - pairing(z, zb, form) - (zetab * zzt + zeta * zbzbt) * HALF)
    solve = RatFn((one - zeta * zetab) * w
                  - pairing(z, zb, form) * (I * 2) - (zetab * zzt + zeta * zbzbt) * I,
                  one - zeta * zetab)

    def sampler(rng, scale, center=None):
        c = center or ((0,) * (n + 1))
        zv = [c[k] + complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
              for k in range(n - 1)]
        zetav = c[-2] + complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
        zzv = sum(t * t for t in zv)
        imw = ((pairing_c(zv, [t.conjugate() for t in zv], l).real
                + (zetav.conjugate() * zzv).real) / (1 - abs(zetav) ** 2))
        wv = complex(complex(c[-1]).real + rng.uniform(-scale, scale), imw)
        return tuple(zv) + (zetav, wv)

    return Hypersurface("X_model", n, l, T, rho, [0] * (n + 1),
                        graph_var="wb", graph_solve=solve, sampler=sampler)


def _ball_boundary(n, l):
    names = ["z%d" % j for j in range(1, n)] + ["w"]
    T = table_for(names)
    form = SignatureForm(n, l)
    z = [MPoly.var(T, nm) for nm in names[:-1]]
    zb = [MPoly.var(T, nm + "b") for nm in names[:-1]]
    w, wb = MPoly.var(T, "w"), MPoly.var(T, "wb")
    one = MPoly.const(T, 1)
    rho = one - w * wb - pairing(z, zb, form)
    solve = RatFn(one - pairing(z, zb, form), w)

    def sampler(rng, scale, center=None):
        c = center or ((0,) * (n - 1) + (1,))
        zv = [c[k] + complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
              for k in range(n - 1)]
        m2 = 1 - pairing_c(zv, [t.conjugate() for t in zv], l).real
        th = cmath.phase(complex(c[-1])) + rng.uniform(-2 * scale, 2 * scale)
        wv = math.sqrt(m2) * cmath.exp(1j * th)
        return tuple(zv) + (wv,)

    return Hypersurface("ball_boundary", n, l, T, rho, [0] * (n - 1) + [1],
                        graph_var="wb", graph_solve=solve, sampler=sampler)


def _lieball_boundary(m, l):
    names = ["Z%d" % j for j in range(1, m + 1)]
    T = table_for(names)
    form = SignatureForm(m + 1, l)
    Z = [MPoly.var(T, nm) for nm in names]
    Zb = [MPoly.var(T, nm + "b") for nm in names]
    one = MPoly.const(T, 1)
    zzt = sum((t * t for t in Z), MPoly(T))
    zbzbt = sum((t * t for t in Zb), MPoly(T))
    rho = one - pairing(Z, Zb, form) * 2 + zzt * zbzbt

    def sampler(rng, scale, center=None):
        # push samples of the null-cone tube model through the birational
        # equivalence with the Lie-ball boundary (kept numeric and local)
        n = m - 1
        X = _x_model(n, l)
        p = X.sampler(rng, scale)
        zv, zetav, wv = list(p[:n - 1]), p[n - 1], p[n]
        zzv = sum(t * t for t in zv)
        S = wv * zetav + 1j * zzv
        d = 2j + wv
        return tuple([2j * t / d for t in zv]
                     + [(1j - wv / 2 - 1j * zetav - S / 2) / d,
                        (-1 - 1j * wv / 2 - zetav + 1j * S / 2) / d])

    base = [GaussRat(0)] * (m - 2) + [gq(1, 2), GaussRat(0, Q(1, 2))]
    return Hypersurface("lieball_boundary", m + 1, l, T, rho, base, sampler=sampler)


def _tube_t1():
    names = ["z1", "z2", "z3", "w"]
    T = table_for(names)
    res = {}
    for nm, sgn in [("w", -1), ("z1", -1), ("z2", 1), ("z3", 1)]:
        re = (MPoly.var(T, nm) + MPoly.var(T, nm + "b")) * HALF
        res[nm] = re * re * sgn
    rho = res["w"] + res["z1"] + res["z2"] + res["z3"]

    def sampler(rng, scale, center=None):
        # real parts on the cone (Re w)^2 + (Re z1)^2 = (Re z2)^2 + (Re z3)^2,
        # free imaginary parts; stays near the base point (0,0,-1/2,1/2)
        a = 0.5 + rng.uniform(-scale, scale)
        b = rng.uniform(-scale, scale)
        r = math.hypot(a, b)
        th = -math.pi / 2 + rng.uniform(-2 * scale, 2 * scale)
        return (complex(b, rng.uniform(-scale, scale)),
                complex(r * math.cos(th), rng.uniform(-scale, scale)),
                complex(r * math.sin(th), rng.uniform(-scale, scale)),
                complex(a, rng.uniform(-scale, scale)))

    hs = Hypersurface("tube_T1", 4, 1, T, rho, [0, 0, Q(-1, 2), Q(1, 2)],
                      sampler=sampler)
    return hs


_CATALOG = {
    "hyperquadric": _hyperquadric,
    "X_model": _x_model,
    "ball_boundary": _ball_boundary,
    "lieball_boundary": _lieball_boundary,
    "tube_T1": lambda n, l: _tube_t1(),
}


def make_hypersurface(name, n=3, l=1):
    if name not in _CATALOG:
        raise ParameterError("unknown hypersurface %r" % name)
    if name == "tube_T1":
        return _tube_t1()
    if name == "lieball_boundary":
        # n counts the ambient dimension m of the Lie ball here
        if not (1 <= l < n - 1):
            raise ParameterError("lieball_boundary needs 1 <= l < m-1")
        return _lieball_boundary(n, l)
    if not (0 <= l < n - 1):
        raise ParameterError("need 0 <= l < n-1 for %s" % name)
    return _CATALOG[name](n, l)


def on_variety_reduce(p, S):
    """Substitute the solved conjugate variable; zero iff p vanishes on S."""
    if S.graph_var is None:
        raise ReductionUnsupported("%s has no graph reduction" % S.name)
    if isinstance(p, MPoly):
        p = RatFn(p)
    from .algebra import substitute
    return substitute(p, {S.graph_var: S.graph_solve})


def sample_points(S, count, seed=0, scale=0.1, center=None, max_tries=50):
    """Deterministic points on S with |rho| below 1e-12, near the base point
    (or near `center`, a tuple of complex numbers)."""
    if S.sampler is None:
        raise ReductionUnsupported("%s has no sampler" % S.name)
    if center is not None:
        center = tuple(complex(c) for c in center)
    rng = random.Random(seed)
    pts = []
    tries = 0
    while len(pts) < count:
        p = S.sampler(rng, scale, center)
        if abs(S.rho_at(p)) < 1e-12:
            pts.append(p)
        else:
            tries += 1
            if tries > max_tries * count:
                raise ParameterError("sampler failed to hit the variety")
    return pts
