"""The mapping-equation engine: does a map send source into target?

Exact mode pulls the target defining polynomial back through the map and
reduces it on the source variety; the cofactor Q with rho_tgt o H = Q * rho_src
is extracted by pseudo-division.  Series mode does the same on truncated
expansions at the base point (the only exact pathway for the radical maps);
numeric mode samples seeded points and measures residuals.
"""

import cmath

from .algebra import (DEFAULT_SERIES_CAP, GaussRat, I, MPoly, PSeries, RatFn,
                      SqrtExpr, bar, pseudo_divide, substitute, to_series)
from .errors import (BranchError, ContractError, ParameterError, PoleError,
                     ReductionUnsupported)
from .geometry import on_variety_reduce, sample_points
from .linalg import gmat


class VerifyReport:
    def __init__(self, map_name, mode, passed, Q=None, Q0=None, transversal=None,
                 residual_max=None, degree_checked=None, identities=None):
        self.map_name = map_name
        self.mode = mode
        self.passed = passed
        self.Q = Q
        self.Q0 = Q0
        self.transversal = transversal
        self.residual_max = residual_max
        self.degree_checked = degree_checked
        self.identities = identities or []

    def to_json(self):
        return {
            "map": self.map_name,
            "mode": self.mode,
            "passed": bool(self.passed),
            "transversal": self.transversal,
            "Q": None if self.Q is None else str(self.Q),
            "Q0": None if self.Q0 is None else str(self.Q0),
            "residual_max": self.residual_max,
            "degree_checked": self.degree_checked,
            "identities": [{"id": i, "passed": bool(p)} for i, p in self.identities],
        }

    def __repr__(self):
        return "VerifyReport(%s, %s, passed=%s)" % (self.map_name, self.mode, self.passed)


def pullback(H):
    """rho_tgt o H as an exact rational function in the source variables."""
    comps = H.rational_comps()
    bindings = {}
    for nm, c in zip(H.target.table.holo, comps):
        bindings[nm] = c
        bindings[H.target.table.conj_name(nm)] = c.bar()
    return substitute(RatFn(H.target.rho), bindings)


def _full_shift(H):
    """Displacement shift for the source table (holo + conjugated base)."""
    shift = {}
    for nm, c in zip(H.source.table.holo, H.base_point):
        if not c.is_zero():
            shift[nm] = c
        cb = c.conj()
        if not cb.is_zero():
            shift[H.source.table.conj_name(nm)] = cb
    return shift


def map_series(H, cap):
    """Component series and their bars, in displacements from the base point."""
    comps = H.comp_series(cap)
    bars = [s.bar() for s in comps]
    return comps, bars


def _poly_on_series(p, vals, table, cap):
    """Evaluate the polynomial p (over some other table) on PSeries values."""
    from .algebra.series import horner_subs
    return horner_subs(p.terms, p.table.names, vals, table, cap)


def pullback_series(H, cap):
    comps, bars = map_series(H, cap)
    vals = {}
    for nm, s, sb in zip(H.target.table.holo, comps, bars):
        vals[nm] = s
        vals[H.target.table.conj_name(nm)] = sb
    return _poly_on_series(H.target.rho, vals, H.source.table, cap)


def _solve_series(H, cap):
    """Series (in displacements) of the solved graph variable minus its base value."""
    S = H.source
    shift = _full_shift(H)
    sol = to_series(S.graph_solve, cap, center=shift if shift else None)
    return sol - sol.const_term()


def reduce_series(H, pull, cap):
    S = H.source
    if S.graph_var is None:
        raise ReductionUnsupported("source %s has no graph reduction" % S.name)
    return pull.subs({S.graph_var: _solve_series(H, cap)})


def _series_var(table, cap, name):
    e = [0] * len(table)
    e[table.index[name]] = 1
    return PSeries(table, cap, {tuple(e): GaussRat.of(1)}, prune=False)


def extract_q_series(H, cap):
    """Series cofactor Q (pull = Q * rho_src) at the base point."""
    S = H.source
    if S.graph_var is None:
        raise ReductionUnsupported("source %s has no graph reduction" % S.name)
    capx = cap + 1
    pull = pullback_series(H, capx)
    sol = _solve_series(H, capx)
    gv = S.graph_var
    T = _series_var(S.table, capx, gv)
    # rho_src in displacements equals c * (delta_gv - sol) with c a unit series
    shift = _full_shift(H)
    rho_s = to_series(RatFn(S.rho), capx, center=shift if shift else None)
    c_series = rho_s.subs({gv: T + sol})  # = c * T
    num = pull.subs({gv: T + sol})
    q_over_T = _divide_by_var(num, gv, S.table, capx)
    c_over_T = _divide_by_var(c_series, gv, S.table, capx)
    if c_over_T.const_term().is_zero():
        raise ContractError("degenerate graph coefficient")
    Q = q_over_T * c_over_T.inv()
    # undo the triangular substitution: the T slot carries gv - sol
    return Q.subs({gv: T - sol}).truncate(cap)


def _divide_by_var(s, name, table, cap):
    idx = table.index[name]
    out = {}
    for e, c in s.terms.items():
        if e[idx] == 0:
            if not c.is_zero():
                raise ContractError("series not divisible by %s" % name)
            continue
        e2 = list(e)
        e2[idx] -= 1
        out[tuple(e2)] = c
    return PSeries(table, cap, out, prune=False)


def extract_Q(H, mode="exact", degree=DEFAULT_SERIES_CAP):
    """The exact cofactor Q = (rho_tgt o H)/rho_src."""
    if mode == "series":
        return extract_q_series(H, degree)
    if not H.is_rational():
        raise BranchError("exact Q needs rational components; use series mode")
    S = H.source
    if S.graph_var is None:
        raise ReductionUnsupported("source %s has no graph reduction" % S.name)
    pull = pullback(H)
    q, r, k = pseudo_divide(pull.n, S.rho, S.graph_var)
    if not r.is_zero():
        raise ContractError("pullback not divisible by rho_src; map fails verification")
    idx = S.table.index[S.graph_var]
    nd = S.rho.deg_in(S.graph_var)
    lc_terms = {tuple(0 if i == idx else x for i, x in enumerate(e)): c
                for e, c in S.rho.terms.items() if e[idx] == nd}
    lc = MPoly(S.table, lc_terms)
    return RatFn(q, lc ** k * pull.d)


def verify_cr_map(H, mode="exact", degree=DEFAULT_SERIES_CAP, samples=100,
                  seed=0, tol=1e-10, scale=0.08):
    """Decide whether H sends its source hypersurface into its target."""
    name = H.name or "?"
    if mode == "exact":
        if not H.is_rational():
            raise BranchError("exact mode needs rational components; "
                              "use series or numeric mode")
        if H.source.graph_var is None:
            raise ReductionUnsupported("exact mode needs a graph-like source")
        pull = pullback(H)
        red = on_variety_reduce(pull, H.source)
        passed = red.is_zero()
        Q = None
        Q0 = None
        transversal = None
        if passed:
            Q = extract_Q(H)
            pt = H.source.base_point_full()
            try:
                Q0 = Q.eval_gauss(pt)
            except PoleError:
                # removable singularity of the representation at the base
                Q0 = extract_q_series(H, 0).const_term()
            transversal = not Q0.is_zero()
        return VerifyReport(name, "exact", passed, Q=Q, Q0=Q0,
                            transversal=transversal)
    if mode == "series":
        pull = pullback_series(H, degree)
        red = reduce_series(H, pull, degree)
        passed = red.is_zero()
        Q = None
        Q0 = None
        transversal = None
        if passed:
            Q = extract_q_series(H, max(2, degree // 2))
            Q0 = Q.const_term()
            transversal = not Q0.is_zero()
        return VerifyReport(name, "series", passed, Q=Q, Q0=Q0,
                            transversal=transversal, degree_checked=degree)
    if mode == "numeric":
        center = [c.to_complex() for c in H.base_point]
        pts = sample_points(H.source, samples, seed=seed, scale=scale,
                            center=center)
        worst = 0.0
        for p in pts:
            img = H.eval_numeric(p, radius=None)
            worst = max(worst, abs(H.target.rho_at(img)))
        return VerifyReport(name, "numeric", worst < tol, residual_max=worst)
    raise ParameterError("unknown mode %r" % mode)


def transversality(H):
    """True iff the w-derivative of the last component at the base is nonzero."""
    J = H.jet_expand(1)
    wname = H.source.table.holo[-1]
    return not J.coeff(len(H.comps) - 1, {wname: 1}).is_zero()


# --------------------------------------------------------------------------
# first-Segre-set and reflection identities for maps into the tube model
# --------------------------------------------------------------------------

def _normal_form_data(H, cap=3):
    J = H.jet_expand(cap)
    n = H.source.n
    phi_idx = n - 1
    lam = J.coeff(phi_idx, {"w": 1})
    alpha = beta = None
    if n == 3:
        alpha = J.coeff(phi_idx, {"z1": 2})
        b12 = J.coeff(phi_idx, {"z1": 1, "z2": 1})
        beta = b12 / (I * 2)
    return lam, alpha, beta


def _segre_rhs_series(H, lam, cap):
    """Series of 2/(1 + sqrt(1 - 4i conj(lam) z z^t)) in the source table."""
    T = H.source.table
    z = [MPoly.var(T, nm) for nm in T.holo[:-1]]
    zzt = sum((t * t for t in z[1:]), z[0] * z[0])
    rad = MPoly.const(T, 1) - zzt * (I * 4 * lam.conj())
    s = PSeries.from_poly(rad, cap).sqrt()
    return (s + 1).inv() * 2


def _drop_w(s, table):
    idx = table.index[table.holo[-1]]
    return PSeries(table, s.cap,
                   {e: c for e, c in s.terms.items() if e[idx] == 0}, prune=False)


def check_oracle_identities(H, degree=DEFAULT_SERIES_CAP):
    """Evaluate the first-Segre-set and reflection identities on H.

    H must be a (partially normalized) germ into the tube model at 0; which
    identities apply depends on lambda and on n.  Returns [(id, passed)].
    """
    if any(not c.is_zero() for c in H.base_point):
        raise ParameterError("oracle identities need the germ at the origin")
    n = H.source.n
    lam, alpha, beta = _normal_form_data(H)
    out = []
    T = H.source.table
    wname = T.holo[-1]
    rational = H.is_rational()

    if rational:
        comps = H.rational_comps()
        zero = {wname: RatFn.const(T, 0)}
        f0 = [substitute(c, zero) for c in comps[:n - 1]]
        phi0 = substitute(comps[n - 1], zero)
        g0 = substitute(comps[n], zero)
        gw0 = substitute(comps[n].diff(wname), zero)
        phiw0 = substitute(comps[n - 1].diff(wname), zero)
        fw0 = [substitute(c.diff(wname), zero) for c in comps[:n - 1]]
    else:
        comps = H.comp_series(degree)
        f0 = [_drop_w(c, T) for c in comps[:n - 1]]
        phi0 = _drop_w(comps[n - 1], T)
        g0 = _drop_w(comps[n], T)
        gw0 = _drop_w(comps[n].diff(wname), T)
        phiw0 = _drop_w(comps[n - 1].diff(wname), T)
        fw0 = [_drop_w(c.diff(wname), T) for c in comps[:n - 1]]

    out.append(("g(z,0)=0", g0.is_zero()))

    if lam.is_zero():
        z = [RatFn.var(T, nm) for nm in T.holo[:-1]]
        if rational:
            out.append(("f(z,0)=z", all((f0[j] - z[j]).is_zero() for j in range(n - 1))))
            out.append(("g_w(z,0)=1", (gw0 - 1).is_zero()))
        else:
            out.append(("f(z,0)=z", all(
                (f0[j] - to_series(z[j], f0[j].cap)).is_zero() for j in range(n - 1))))
            out.append(("g_w(z,0)=1", (gw0 - 1).is_zero()))
    else:
        cap = degree
        rhs = _segre_rhs_series(H, lam, cap)
        zs = [PSeries.from_poly(MPoly.var(T, nm), cap) for nm in T.holo[:-1]]
        okf = all((f0[j].truncate(rhs.cap) - zs[j].truncate(rhs.cap) * rhs).is_zero()
                  for j in range(n - 1))
        out.append(("f(z,0)=2z/(1+sqrt(1-4i lam^bar zz^t))", okf))
        out.append(("g_w(z,0)=2/(1+sqrt)", (gw0.truncate(rhs.cap - 1)
                                            - rhs.truncate(rhs.cap - 1)).is_zero()))
        out.append(("phi_w(z,0)=2lam/(1+sqrt)",
                    (phiw0.truncate(rhs.cap - 1)
                     - (rhs * lam).truncate(rhs.cap - 1)).is_zero()))

    if n == 3 and lam.is_zero() and rational and alpha is not None:
        z1, z2 = RatFn.var(T, "z1"), RatFn.var(T, "z2")
        w = RatFn.var(T, wname)
        f1, f2, phi, g = comps[0], comps[1], comps[2], comps[3]
        Phi = g * phi + (f1 * f1 + f2 * f2) * I
        eqs = {
            "eq49": Phi * w * w * alpha - f1 * w * z1 * 4 + g * z1 * z1 * 4
                    + phi * w * w * I,
            "eq48": Phi * w * w * alpha + f2 * w * z2 * 4 - g * z2 * z2 * 4
                    - phi * w * w * I,
            "eq411": Phi * w * (z2 * alpha - z1 * (I * beta))
                     - (f1 * z2 - f2 * z1) * z1 * 2 + phi * w * z2 * I,
            "eq410": Phi * w * (z1 * alpha + z2 * (I * beta))
                     - (f1 * z2 - f2 * z1) * z2 * 2 - phi * w * z1 * I,
            "eq412": Phi * (alpha * (z1 * z1 - z2 * z2) + z1 * z2 * (I * 2 * beta))
                     - phi * (z1 * z1 + z2 * z2) * I,
            "eq419": Phi * w * alpha - f1 * z1 * (w * (I * alpha) + 2)
                     + f2 * w * z1 * beta + phi * w * I + z1 * z1 * 2,
        }
        for key in ("eq49", "eq48", "eq411", "eq410", "eq412", "eq419"):
            out.append((key, eqs[key].is_zero()))
        # w-derivatives along the first Segre set
        out.append(("f1_w(z,0)", (fw0[0] - (z1 * alpha + z2 * (I * beta)) * (I * GaussRat.of(1) / 2)).is_zero()))
        out.append(("f2_w(z,0)", (fw0[1] - (z2 * (-alpha) + z1 * (I * beta)) * (I * GaussRat.of(1) / 2)).is_zero()))
        out.append(("phi_w(z,0)=0", phiw0.is_zero()))
    return out
