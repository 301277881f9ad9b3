"""Holomorphic map germs between catalog hypersurfaces.

Components are rational functions (or single-radical expressions) in the
source holomorphic variables only.  The full named catalog lives here:
the six germ representatives into the null-cone tube model, the proper-map
list into the generalized Lie ball, the bridge maps between models, and the
local equivalence of the real tube slice.
"""

import cmath

from .algebra import (GaussRat, HALF, I, MPoly, PSeries, Q, RatFn, SqrtExpr, gq,
                      substitute, to_series)
from .errors import BranchError, ParameterError, PoleError
from .geometry import SignatureForm, make_hypersurface, pairing
from itertools import product as _iterprod


def _vars(S):
    return [RatFn.var(S.table, nm) for nm in S.table.holo]


def _const(S, c):
    return RatFn.const(S.table, c)


def matvec(v, M):
    """Row vector times matrix, entries GaussRat/RatFn."""
    return [sum((v[i] * M[i][j] for i in range(1, len(v))), v[0] * M[0][j])
            for j in range(len(M[0]))]


def quad_form(v, M):
    zM = matvec(v, M)
    return sum((v[i] * zM[i] for i in range(1, len(v))), v[0] * zM[0])


class JetTable:
    """Exact Taylor coefficients of each component up to a total order."""

    def __init__(self, order, series):
        self.order = order
        self.series = list(series)

    def coeff(self, comp, mono):
        return self.series[comp].coeff(mono)

    def __len__(self):
        return len(self.series)


class HoloMap:
    def __init__(self, source, target, comps, name=None, params=None, base_point=None,
                 pieces=None):
        if comps is not None and len(comps) != target.ambient_dim:
            raise ParameterError("component count != target ambient dimension")
        self.source = source
        self.target = target
        self._comps = tuple(comps) if comps is not None else None
        self.pieces = pieces  # (outer, inner) for lazily composed chains
        self.name = name
        self.params = dict(params or {})
        self.base_point = tuple(GaussRat.of(c) for c in
                                (base_point if base_point is not None else source.base_point))
        self._series_cache = {}
        if comps is not None:
            self.has_radical = any(isinstance(c, SqrtExpr) for c in comps)
        else:
            self.has_radical = pieces[0].has_radical or pieces[1].has_radical

    @property
    def comps(self):
        if self._comps is None:
            outer, inner = self.pieces
            bindings = dict(zip(outer.source.table.holo, inner.comps))
            built = []
            for c in outer.comps:
                if isinstance(c, RatFn):
                    built.append(substitute(c, bindings))
                else:
                    base = substitute(c.base, bindings)
                    coeff = substitute(c.coeff, bindings)
                    rad = substitute(c.rad, bindings)
                    if any(isinstance(v, SqrtExpr) for v in (base, coeff, rad)):
                        raise BranchError("composition would nest radicals; "
                                          "use the series or numeric pathway")
                    built.append(SqrtExpr(base, coeff, rad))
            self._comps = tuple(built)
        return self._comps

    def is_rational(self):
        if self._comps is None and self.has_radical:
            return False
        return all(isinstance(c, RatFn) or c.is_rational() for c in self.comps)

    def rational_comps(self):
        return [c if isinstance(c, RatFn) else c.as_ratfn() for c in self.comps]

    def base_shift(self):
        return {nm: c for nm, c in zip(self.source.table.holo, self.base_point)
                if not c.is_zero()}

    def target_point(self):
        """Exact image of the base point."""
        if self._comps is None:
            outer, inner = self.pieces
            mid = inner.target_point()
            if any(not (a - b).is_zero() for a, b in zip(mid, outer.base_point)):
                raise ParameterError("lazy composition off the outer base point")
            return outer.target_point()
        pt = {nm: c for nm, c in zip(self.source.table.holo, self.base_point)}
        out = []
        lazy = None
        for k, c in enumerate(self.comps):
            try:
                out.append(c.eval_gauss(pt))
            except PoleError:
                # removable singularity of the radical representation
                if lazy is None:
                    lazy = self.comp_series(0)
                out.append(lazy[k].const_term())
        return tuple(out)

    def comp_series(self, cap):
        """Component series at the base point (composed lazily for chains)."""
        if cap in self._series_cache:
            return self._series_cache[cap]
        hook = getattr(self, "series_hook", None)
        shift = self.base_shift()
        if hook is not None and not shift:
            out = hook(cap)
        elif self._comps is None:
            outer, inner = self.pieces
            inner_s = inner.comp_series(cap)
            consts = [s.const_term() for s in inner_s]
            if any(not (c - b).is_zero()
                   for c, b in zip(consts, outer.base_point)):
                raise ParameterError(
                    "lazy series composition needs inner(base) = outer base point")
            inner_s = [s - c for s, c in zip(inner_s, consts)]
            bindings = dict(zip(outer.source.table.holo, inner_s))
            out = [_series_subs(s, bindings, self.source.table, cap)
                   for s in outer.comp_series(cap)]
        else:
            out = [to_series(c, cap, center=shift if shift else None)
                   for c in self.comps]
        self._series_cache[cap] = out
        return out

    def jet_expand(self, order):
        """Exact jets at the base point (coefficients of the shifted germ)."""
        return JetTable(order, self.comp_series(order))

    def eval_numeric(self, point, radius=0.25, pole_tol=1e-14):
        """Double-precision evaluation near the base point (germ branch)."""
        if self._comps is None:
            outer, inner = self.pieces
            mid = inner.eval_numeric(point, radius=radius, pole_tol=pole_tol)
            return outer.eval_numeric(mid, radius=None, pole_tol=pole_tol)
        base = [c.to_complex() for c in self.base_point]
        if radius is not None:
            dist = max(abs(complex(p) - b) for p, b in zip(point, base))
            if dist > radius:
                raise PoleError("point outside the germ radius %g" % radius)
        pt = dict(zip(self.source.table.holo, (complex(p) for p in point)))
        out = []
        for c in self.comps:
            if isinstance(c, RatFn):
                out.append(c.eval_complex(pt, pole_tol=pole_tol))
            else:
                out.append(_eval_sqrt_branch(c, pt, dict(zip(
                    self.source.table.holo, base)), pole_tol))
        return tuple(out)

    def __repr__(self):
        return "HoloMap(%s: %s -> %s)" % (self.name or "?", self.source.key(),
                                          self.target.key())


def _eval_sqrt_branch(c, pt, base_pt, pole_tol):
    # germ semantics: pick the sqrt branch continuous with the base value
    rb = c.rad.eval_complex(base_pt)
    sb = cmath.sqrt(rb)
    r = c.rad.eval_complex(pt)
    s = cmath.sqrt(r)
    if abs(s - sb) > abs(s + sb):
        s = -s
    db = c.base.d.eval_complex(pt)
    dc = c.coeff.d.eval_complex(pt)
    if min(abs(db), abs(dc)) < pole_tol:
        raise PoleError("denominator below tolerance")
    return c.base.n.eval_complex(pt) / db + (c.coeff.n.eval_complex(pt) / dc) * s


def _series_subs(s, bindings, table, cap):
    """Evaluate the polynomial truncation of s on PSeries bindings (cross-table)."""
    from .algebra.series import horner_subs
    return horner_subs(s.terms, s.table.names, bindings, table, cap)


def compose(outer, inner, lazy=None):
    """Composition outer(inner(.)).

    Rational chains are substituted exactly; chains touching a radical are
    kept lazy (series, jets and numeric evaluation compose the factors), and
    forcing .comps on them performs the exact radical substitution.
    """
    if outer.source.ambient_dim != inner.target.ambient_dim:
        raise ParameterError("dimension mismatch in composition")
    name = None
    if outer.name and inner.name:
        name = "%s.%s" % (outer.name, inner.name)
    if lazy is None:
        lazy = outer.has_radical or inner.has_radical
    if lazy:
        return HoloMap(inner.source, outer.target, None, name=name,
                       base_point=inner.base_point, pieces=(outer, inner))
    bindings = dict(zip(outer.source.table.holo, inner.comps))
    comps = [substitute(c, bindings) for c in outer.comps]
    return HoloMap(inner.source, outer.target, comps, name=name,
                   base_point=inner.base_point)


def identity_map(S):
    return HoloMap(S, S, [RatFn.var(S.table, nm) for nm in S.table.holo],
                   name="id")


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------

P_MATRICES = {
    1: [[0, 0], [0, 0]],
    2: [[1, I], [I, -1]],
    3: [[-1, -I], [-I, 1]],
    4: [[1, 0], [0, -1]],
    5: [[0, I], [I, 0]],
}


def _gmat(M):
    return [[GaussRat.of(x) for x in row] for row in M]


def _det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def _hj(j):
    src = make_hypersurface("hyperquadric", 3, 1)
    tgt = make_hypersurface("X_model", 3, 1)
    z = _vars(src)[:2]
    w = RatFn.var(src.table, "w")
    Pj = _gmat(P_MATRICES[j])
    eps = _det2(Pj)
    den = _const(src, 1) + w * w * eps
    zP = matvec(z, Pj)
    f = [(z[k] + zP[k] * w * I) / den for k in range(2)]
    phi = quad_form(z, Pj) * 2 / den
    g = w / den
    return HoloMap(src, tgt, f + [phi, g], name="H%d" % j, params={"j": j})


def _h_family(alpha, beta):
    alpha, beta = GaussRat.of(alpha), GaussRat.of(beta)
    if not (alpha.is_real() and beta.is_real()):
        raise ParameterError("H_A needs real alpha, beta")
    src = make_hypersurface("hyperquadric", 3, 1)
    tgt = make_hypersurface("X_model", 3, 1)
    z = _vars(src)[:2]
    w = RatFn.var(src.table, "w")
    A = [[alpha, I * beta], [I * beta, -alpha]]
    detA = _det2(A)
    den = _const(src, 4) + w * w * detA
    zA = matvec(z, A)
    f = [(z[k] * 4 + zA[k] * w * (I * 2)) / den for k in range(2)]
    phi = quad_form(z, A) * 4 / den
    g = w * 4 / den
    return HoloMap(src, tgt, f + [phi, g], name="H_A",
                   params={"alpha": alpha, "beta": beta})


def _irrational(n, l, lam):
    lam = GaussRat.of(lam)
    if lam.is_zero():
        raise ParameterError("irrational family needs lambda != 0")
    src = make_hypersurface("hyperquadric", n, l)
    tgt = make_hypersurface("X_model", n, l)
    z = _vars(src)[:-1]
    w = RatFn.var(src.table, "w")
    zzt = sum((t * t for t in z[1:]), z[0] * z[0])
    rad = _const(src, 1) - (zzt - w * w * I * lam) * (I * 4 * lam.conj())
    den = SqrtExpr(_const(src, 1), _const(src, 1), rad)
    comps = [SqrtExpr.of(t * 2, den) / den for t in z]
    comps.append(SqrtExpr.of(w * 2 * lam, den) / den)
    comps.append(SqrtExpr.of(w * 2, den) / den)
    m = HoloMap(src, tgt, comps, name="irrational", params={"lambda": lam})

    x_poly = (zzt - w * w * I * lam).as_poly() * (I * 4 * lam.conj())  # 1 - rad

    def series_hook(cap):
        # 1/(1 + sqrt(1-x)) = (1 - sqrt(1-x))/x expanded in x (valuation 2)
        from .algebra import PSeries, Q
        X = PSeries.from_poly(x_poly, cap)
        G = PSeries.const(src.table, cap, gq(1, 2))
        pw = PSeries.const(src.table, cap, 1)
        coef = GaussRat.of(Q(1, 2))
        k = 0
        while 2 * (k + 1) <= cap:
            k += 1
            coef = coef * GaussRat.of(Q(2 * k - 1, 2 * k + 2))
            pw = pw * X
            if pw.is_zero():
                break
            G = G + pw * coef
        zs = [PSeries.from_poly(t.as_poly(), cap) for t in z]
        ws = PSeries.from_poly(w.as_poly(), cap)
        out = [t * 2 * G for t in zs]
        out.append(ws * (lam * 2) * G)
        out.append(ws * 2 * G)
        return out

    m.series_hook = series_hook
    return m


def _ell(n, l):
    src = make_hypersurface("hyperquadric", n, l)
    tgt = make_hypersurface("X_model", n, l)
    z = _vars(src)
    return HoloMap(src, tgt, z[:-1] + [_const(src, 0), z[-1]], name="ell_n")


def _upsilon(j):
    src = make_hypersurface("ball_boundary", 3, 1)
    tgt = make_hypersurface("hyperquadric", 3, 1)
    z1, z2, w = _vars(src)
    one = _const(src, 1)
    s2 = GaussRat.sqrt2()
    if j in (1, 2, 3):
        d = one + w
        sgn1 = -1 if j == 2 else 1
        sgn2 = -1 if j == 3 else 1
        comps = [z1 * (s2 * sgn1) / d, z2 * (s2 * sgn2) / d,
                 (one - w) * (I * 2) / d]
    elif j == 4:
        d = one - w
        comps = [z1 * (-1) / d, z2 / d, (one + w) * I / d]
    elif j == 5:
        d = one + w
        comps = [z1 / d, z2 / d, (one - w) * I / d]
    else:
        raise ParameterError("Upsilon index out of range")
    base = [0, 0, -1] if j == 4 else [0, 0, 1]
    return HoloMap(src, tgt, comps, name="Upsilon%d" % j, base_point=base)


def _omega(n, l):
    src = make_hypersurface("X_model", n, l)
    tgt = make_hypersurface("lieball_boundary", n + 1, l)
    v = _vars(src)
    z, zeta, w = v[:-2], v[-2], v[-1]
    one = _const(src, 1)
    zzt = sum((t * t for t in z[1:]), z[0] * z[0])
    S = w * zeta + zzt * I
    d = one * (I * 2) + w
    first = [t * (I * 2) / d for t in z]
    a = (one * I - w * HALF - zeta * I - S * HALF) / d
    b = (one * (-1) - w * (I * HALF) - zeta + S * (I * HALF)) / d
    return HoloMap(src, tgt, first + [a, b], name="Omega")


def _omega_inv(n, l):
    src = make_hypersurface("lieball_boundary", n + 1, l)
    tgt = make_hypersurface("X_model", n, l)
    v = _vars(src)
    Y, c_zeta, c_last = v[:-2], v[-2], v[-1]
    one = _const(src, 1)
    T = c_zeta - c_last * I
    dT = one + T
    W = (one - T) * (I * 2) / dT
    Z = [y * 2 / dT for y in Y]
    yyt = sum((t * t for t in Y[1:]), Y[0] * Y[0])
    zeta = (c_zeta + c_last * I) * (-1) - yyt / dT
    return HoloMap(src, tgt, Z + [zeta, W], name="Omega_inv")


def _xdil():
    S = make_hypersurface("X_model", 3, 1)
    v = _vars(S)
    return HoloMap(S, S, [v[0] * 2, v[1] * 2, v[2], v[3] * 4], name="Xdil")


def _cayley(n, l):
    src = make_hypersurface("ball_boundary", n, l)
    tgt = make_hypersurface("hyperquadric", n, l)
    v = _vars(src)
    z, w = v[:-1], v[-1]
    one = _const(src, 1)
    d = one + w
    comps = [t * I / d for t in z] + [(one - w) * I / d]
    return HoloMap(src, tgt, comps, name="cayley")


def _cayley_to_ball(n, l):
    src = make_hypersurface("hyperquadric", n, l)
    tgt = make_hypersurface("ball_boundary", n, l)
    v = _vars(src)
    z, w = v[:-1], v[-1]
    one = _const(src, 1)
    d = w + one * I
    comps = [t * 2 / d for t in z] + [(w - one * I) / d]
    return HoloMap(src, tgt, comps, name="cayley_to_ball")


def _corollary_map(which):
    src = make_hypersurface("ball_boundary", 3, 1)
    tgt = make_hypersurface("lieball_boundary", 4, 1)
    z1, z2, w = _vars(src)
    one = _const(src, 1)
    s2 = GaussRat.sqrt2()
    if which == "R0":
        d = (one + w) * 4
        zz = z1 * z1 + z2 * z2
        comps = [z1 / s2, z2 / s2,
                 (w * 2 + w * w * 2 - zz) / d,
                 (w * 2 + w * w * 2 + zz) * I / d]
    elif which in ("R1", "R2"):
        A = _gmat([[1, I * 2], [I * (-2), 3]])
        B = _gmat([[-3, I * (-2)], [I * 2, -1]])
        F = _gmat([[-5, I * 4], [I * 4, 3]])
        Finv = _gmat([[3, I * (-4)], [I * (-4), -5]])
        d = (one + w) * s2
        if which == "R1":
            zA, zB = matvec([z1, z2], A), matvec([z1, z2], B)
            first = [(zA[k] + zB[k] * w) / d for k in range(2)]
            zFz = quad_form([z1, z2], F)
        else:
            zA, zB = matvec([z1, z2], A), matvec([z1, z2], B)
            first = [(zB[k] * (-1) - zA[k] * w) / d for k in range(2)]
            zFz = quad_form([z1, z2], Finv)
        half_w = w * HALF
        corr = zFz / ((one + w) * 4)
        comps = first + [half_w + corr, (half_w - corr) * I]
    elif which == "P1":
        comps = [w * z1, z2, (w * w - z1 * z1) * HALF, (w * w + z1 * z1) * (I * HALF)]
    elif which == "P2":
        comps = [z1, w * z2, (w * w - z2 * z2) * HALF, (w * w + z2 * z2) * (I * HALF)]
    else:
        raise ParameterError("unknown corollary map %r" % which)
    return HoloMap(src, tgt, comps, name=which)


def _r0_n(n, l):
    src = make_hypersurface("ball_boundary", n, l)
    tgt = make_hypersurface("lieball_boundary", n + 1, l)
    v = _vars(src)
    z, w = v[:-1], v[-1]
    one = _const(src, 1)
    s2 = GaussRat.sqrt2()
    zz = sum((t * t for t in z[1:]), z[0] * z[0])
    d = (one + w) * 4
    comps = [t / s2 for t in z] + [(w * 2 + w * w * 2 - zz) / d,
                                   (w * 2 + w * w * 2 + zz) * I / d]
    return HoloMap(src, tgt, comps, name="R0_n")


def _i_n_ball(n, l):
    if l < 1:
        raise ParameterError("ball-to-Lie-ball irrational map implemented for l >= 1")
    src = make_hypersurface("ball_boundary", n, l)
    tgt = make_hypersurface("lieball_boundary", n + 1, l)
    v = _vars(src)
    z, w = v[:-1], v[-1]
    one = _const(src, 1)
    s2 = GaussRat.sqrt2()
    zz = sum((t * t for t in z[1:]), z[0] * z[0])
    rad = one - zz - w * w
    sq = SqrtExpr(_const(src, 0), _const(src, 1), rad)
    comps = [SqrtExpr.of(t / s2, sq) for t in z]
    comps.append(SqrtExpr.of(w / s2, sq))
    comps.append((SqrtExpr.of(1, sq) - sq) / SqrtExpr.of(_const(src, s2), sq))
    # germ at a base point where the radicand does not vanish: z1 = 3/4, w = 5/4
    base = [gq(3, 4)] + [0] * (n - 2) + [gq(5, 4)]
    return HoloMap(src, tgt, comps, name="I_ball", base_point=base)


def _t2m():
    src = make_hypersurface("tube_T1")
    tgt = make_hypersurface("X_model", 3, 1)
    z1, z2, z3, w = _vars(src)
    one = _const(src, 1)
    d = one + w - z3
    comps = [z1 * (I * 2) / d, z2 * 2 / d, (one - w + z3) / d,
             (w + w * w + z1 * z1 - z2 * z2 + z3 - z3 * z3) * (I * 2) / d]
    return HoloMap(src, tgt, comps, name="t2m")


def _psi_embed(m, lp):
    src = make_hypersurface("X_model", m, lp)
    tgt = make_hypersurface("hyperquadric", m + 2, lp + 1)
    v = _vars(src)
    z, zeta, w = v[:-2], v[-2], v[-1]
    zzt = sum((t * t for t in z[1:]), z[0] * z[0])
    S = w * zeta + zzt * I
    mid_minus = (S - zeta * I) * HALF
    mid_plus = (S + zeta * I) * HALF
    comps = list(z[:lp]) + [mid_minus] + list(z[lp:]) + [mid_plus, w]
    return HoloMap(src, tgt, comps, name="Psi_embed", params={"m": m, "lp": lp})


def catalog(name, n=3, l=1, **params):
    """Named catalog of maps; stable identifiers for the CLI."""
    if name in ("H1", "H2", "H3", "H4", "H5"):
        if (n, l) != (3, 1):
            raise ParameterError("%s lives on n=3, l=1" % name)
        return _hj(int(name[1]))
    if name == "H_A":
        return _h_family(params.get("alpha", 0), params.get("beta", 0))
    if name == "irrational":
        return _irrational(n, l, params.get("lambda", params.get("lam", 1)))
    if name == "I":
        if (n, l) != (3, 1):
            raise ParameterError("I lives on n=3, l=1 (use I_n otherwise)")
        m = _irrational(3, 1, 1)
        m.name = "I"
        return m
    if name == "I_n":
        m = _irrational(n, l, 1)
        m.name = "I_n"
        return m
    if name == "ell_n":
        return _ell(n, l)
    if name in ("R0", "R1", "R2", "P1", "P2"):
        if (n, l) != (3, 1):
            raise ParameterError("%s lives on n=3, l=1" % name)
        return _corollary_map(name)
    if name == "R0_n":
        return _r0_n(n, l)
    if name == "I_n_ball":
        return _i_n_ball(n, l)
    if name.startswith("Upsilon"):
        return _upsilon(int(name[len("Upsilon"):]))
    if name == "Omega":
        return _omega(n, l)
    if name == "Omega_inv":
        return _omega_inv(n, l)
    if name == "Xdil":
        return _xdil()
    if name == "cayley":
        return _cayley(n, l)
    if name == "cayley_to_ball":
        return _cayley_to_ball(n, l)
    if name == "t2m":
        return _t2m()
    if name == "Psi_embed":
        return _psi_embed(params.get("m", 4), params.get("lp", 1))
    raise ParameterError("unknown catalog map %r" % name)


CATALOG_NAMES = ("H1", "H2", "H3", "H4", "H5", "I", "ell_n", "I_n", "H_A",
                 "irrational", "R0", "R1", "R2", "P1", "P2", "R0_n", "I_n_ball",
                 "Upsilon1", "Upsilon2", "Upsilon3", "Upsilon4", "Upsilon5",
                 "Omega", "Omega_inv", "Xdil", "cayley", "cayley_to_ball",
                 "t2m", "Psi_embed")
