"""Parametrized CR automorphism groups of the hyperquadric and of the
null-cone tube model, their inverses, the infinitesimal symmetry fields with
the tangency test, and seeded exact parameter sampling."""

import random

from .algebra import GaussRat, HALF, I, MPoly, Q, RatFn, gq
from .errors import ParameterError
from .geometry import SignatureForm, make_hypersurface, pairing
from .holomap import HoloMap, compose, identity_map
from .linalg import conj_T, gmat, identity, mat_eq, mat_inv, mat_mul, transpose


def _check_indef_unitary(U, l):
    n1 = len(U)
    D = [[GaussRat(-1 if i < l else 1) if i == j else GaussRat(0)
          for j in range(n1)] for i in range(n1)]
    return mat_eq(mat_mul(mat_mul(conj_T(U), D), U), D)


def _check_complex_orth(P):
    return mat_eq(mat_mul(P, transpose(P)), identity(len(P)))


class AutParamsSource:
    """(c, r, s, U): c complex vector, r real, s > 0, U indefinite-unitary."""

    def __init__(self, c, r, s, U, n, l):
        self.n, self.l = n, l
        self.c = [GaussRat.of(x) for x in c]
        self.r = GaussRat.of(r)
        self.s = GaussRat.of(s)
        self.U = gmat(U)
        if len(self.c) != n - 1 or len(self.U) != n - 1:
            raise ParameterError("parameter dimensions do not match n")
        if not self.r.is_real():
            raise ParameterError("r must be real")
        if not (self.s.is_real() and self.s.real_sign() > 0):
            raise ParameterError("s must be positive")
        if not _check_indef_unitary(self.U, l):
            raise ParameterError("U fails exact indefinite unitarity")


class AutParamsTarget:
    """(s', u', P, a, r'): |u'| = 1, s' > 0, P indefinite-unitary and
    complex-orthogonal (P P^t = I), a complex vector, r' real."""

    def __init__(self, sp, up, P, a, rp, n, l):
        self.n, self.l = n, l
        self.sp = GaussRat.of(sp)
        self.up = GaussRat.of(up)
        self.P = gmat(P)
        self.a = [GaussRat.of(x) for x in a]
        self.rp = GaussRat.of(rp)
        if len(self.a) != n - 1 or len(self.P) != n - 1:
            raise ParameterError("parameter dimensions do not match n")
        if not (self.sp.is_real() and self.sp.real_sign() > 0):
            raise ParameterError("s' must be positive")
        if not (self.up * self.up.conj() - 1).is_zero():
            raise ParameterError("u' must have exact modulus one")
        if not self.rp.is_real():
            raise ParameterError("r' must be real")
        if not _check_indef_unitary(self.P, l):
            raise ParameterError("P fails exact indefinite unitarity")
        if not _check_complex_orth(self.P):
            raise ParameterError("P must also satisfy P P^t = I")


def source_automorphism(params, n=None, l=None):
    """Origin-fixing automorphism of the hyperquadric of signature l."""
    n, l = n or params.n, l if l is not None else params.l
    S = make_hypersurface("hyperquadric", n, l)
    form = SignatureForm(n, l)
    z = [RatFn.var(S.table, nm) for nm in S.table.holo[:-1]]
    w = RatFn.var(S.table, "w")
    one = RatFn.const(S.table, 1)
    c = [RatFn.const(S.table, x) for x in params.c]
    cbar = [RatFn.const(S.table, x.conj()) for x in params.c]
    den = (one + w * params.r - w * pairing(c, cbar, form) * I
           - pairing(cbar, z, form) * (I * 2))
    zc = [z[k] + c[k] * w for k in range(n - 1)]
    zU = [sum((zc[i] * params.U[i][j] for i in range(1, n - 1)),
              zc[0] * params.U[0][j]) for j in range(n - 1)]
    comps = [t * params.s / den for t in zU] + [w * (params.s * params.s) / den]
    return HoloMap(S, S, comps, name="src_aut", params={"p": params})


def target_automorphism(params, n=None, l=None):
    """Origin-fixing automorphism of the null-cone tube model."""
    n, l = n or params.n, l if l is not None else params.l
    S = make_hypersurface("X_model", n, l)
    eps = SignatureForm(n, l).eps
    v = [RatFn.var(S.table, nm) for nm in S.table.holo]
    z, zeta, w = v[:-2], v[-2], v[-1]
    one = RatFn.const(S.table, 1)
    a = params.a
    abar = [x.conj() for x in a]
    q = sum((a[j] * abar[j] * eps[j] for j in range(1, n - 1)),
            a[0] * abar[0] * eps[0])  # <a, abar>_l, real
    aat = sum((a[j] * a[j] for j in range(1, n - 1)), a[0] * a[0])
    zzt = sum((t * t for t in z[1:]), z[0] * z[0])
    S_expr = w * zeta + zzt * I
    zDla = sum((z[j] * (abar[j] * eps[j]) for j in range(1, n - 1)),
               z[0] * (abar[0] * eps[0]))
    delta = (one - w * (params.rp + I * q) - zDla * (I * 2)
             + S_expr * (I * aat.conj()))
    vec = [z[j] + w * a[j] - S_expr * (abar[j] * eps[j]) for j in range(n - 1)]
    vP = [sum((vec[i] * params.P[i][j] for i in range(1, n - 1)),
              vec[0] * params.P[0][j]) for j in range(n - 1)]
    su = params.sp * params.up
    eta = [t * su / delta for t in vP]
    zat = sum((z[j] * a[j] for j in range(1, n - 1)), z[0] * a[0])
    # note the 2i za^t term: the i is required for exact invariance
    gn = (zeta - zat * (I * 2) - w * (I * aat) - S_expr * (params.rp - I * q)) \
        * (params.up * params.up) / delta
    gnp1 = w * (params.sp * params.sp) / delta
    return HoloMap(S, S, eta + [gn, gnp1], name="tgt_aut", params={"p": params})


def invert(aut):
    """Parameter-level inverse; the result is verified by exact composition."""
    p = aut.params.get("p")
    if isinstance(p, AutParamsSource):
        Uinv = mat_inv(p.U)
        s_inv = GaussRat.of(1) / p.s
        cU = [sum((p.c[i] * p.U[i][j] for i in range(1, len(p.c))),
                  p.c[0] * p.U[0][j]) for j in range(len(p.c))]
        c_new = [(-x) * s_inv for x in cU]
        r_new = -p.r * (s_inv * s_inv)
        q = AutParamsSource(c_new, r_new, s_inv, Uinv, p.n, p.l)
        inv_map = source_automorphism(q)
    elif isinstance(p, AutParamsTarget):
        sp_inv = GaussRat.of(1) / p.sp
        aP = [sum((p.a[i] * p.P[i][j] for i in range(1, len(p.a))),
                  p.a[0] * p.P[0][j]) for j in range(len(p.a))]
        a_new = [(-x) * p.up * sp_inv for x in aP]
        r_new = -p.rp * (sp_inv * sp_inv)
        q = AutParamsTarget(sp_inv, p.up.conj(), transpose(p.P), a_new, r_new, p.n, p.l)
        inv_map = target_automorphism(q)
    else:
        raise ParameterError("invert needs a map produced by this module")
    comp = compose(aut, inv_map)
    ident = identity_map(aut.source)
    for got, want in zip(comp.comps, ident.comps):
        if not (got - want).is_zero():
            raise ParameterError("parameter inverse failed exact verification")
    return inv_map


# --------------------------------------------------------------------------
# infinitesimal symmetry fields of the tube model
# --------------------------------------------------------------------------

class InfField:
    """Holomorphic vector field given by its (d/dz_j, d/dzeta, d/dw) coefficients."""

    def __init__(self, name, coeffs):
        self.name = name
        self.coeffs = list(coeffs)


def inf_field(name, n=3, l=1, **params):
    S = make_hypersurface("X_model", n, l)
    eps = SignatureForm(n, l).eps
    v = [RatFn.var(S.table, nm) for nm in S.table.holo]
    z, zeta, w = v[:-2], v[-2], v[-1]
    zero = RatFn.const(S.table, 0)
    one = RatFn.const(S.table, 1)
    zzt = sum((t * t for t in z[1:]), z[0] * z[0])
    if name == "X_-2":
        return InfField(name, [zero] * (n - 1) + [zero, one])
    if name == "X_-1":
        a = [GaussRat.of(x) for x in params["a"]]
        zc = [one * a[j] - zeta * (a[j].conj() * eps[j]) for j in range(n - 1)]
        wj = sum((z[j] * (a[j].conj() * eps[j]) for j in range(1, n - 1)),
                 z[0] * (a[0].conj() * eps[0])) * (I * 2)
        return InfField(name, zc + [zero, wj])
    if name == "X_0^1":
        return InfField(name, list(z) + [zero, w * 2])
    if name == "X_0^2":
        return InfField(name, [t * I for t in z] + [zeta * (I * 2), zero])
    if name == "X_0^3":
        A = [[GaussRat.of(x) for x in row] for row in params["A"]]
        for i in range(n - 1):
            if not A[i][i].is_zero():
                raise ParameterError("X_0^3 needs zero diagonal")
            for j in range(n - 1):
                if i != j:
                    if not (A[i][j] + A[j][i]).is_zero():
                        raise ParameterError("X_0^3 needs antisymmetry")
                    if not (A[i][j] * eps[i] + A[j][i].conj() * eps[j]).is_zero():
                        raise ParameterError("X_0^3 reality pattern violated")
        zA = [sum((z[i] * A[i][j] for i in range(1, n - 1)), z[0] * A[0][j])
              for j in range(n - 1)]
        return InfField(name, zA + [zero, zero])
    if name == "X_0^4":
        b = GaussRat.of(params["b"])
        bb = b.conj()
        return InfField(name, [z[j] * (-bb) * zeta for j in range(n - 1)]
                        + [one * b - zeta * zeta * bb, zzt * (I * bb)])
    if name == "X_1":
        c = [GaussRat.of(x) for x in params["c"]]
        cz = sum((z[j] * c[j] for j in range(1, n - 1)), z[0] * c[0])
        cbz = sum((z[j] * (c[j].conj() * eps[j]) for j in range(1, n - 1)),
                  z[0] * (c[0].conj() * eps[0]))
        zc = [(w * zeta * I - zzt) * c[j] + cz * z[j] * 2 + w * (c[j].conj() * eps[j]) * I
              for j in range(n - 1)]
        zetac = (cbz + zeta * cz) * 2
        wc = cz * w * 2
        return InfField(name, zc + [zetac, wc])
    if name == "X_2":
        return InfField(name, [w * t for t in z] + [zzt * (-I), w * w])
    raise ParameterError("unknown field %r" % name)


INF_FIELD_NAMES = ("X_-2", "X_-1", "X_0^1", "X_0^2", "X_0^3", "X_0^4", "X_1", "X_2")


def tangency_check(field, n=3, l=1):
    """True iff (X + bar X) annihilates the defining function on the model."""
    from .geometry import on_variety_reduce
    S = make_hypersurface("X_model", n, l)
    rho = RatFn(S.rho)
    total = RatFn.const(S.table, 0)
    for coeff, nm in zip(field.coeffs, S.table.holo):
        total = total + coeff * rho.diff(nm)
        total = total + coeff.bar() * rho.diff(S.table.conj_name(nm))
    return on_variety_reduce(total, S).is_zero()


# --------------------------------------------------------------------------
# seeded exact parameter sampling
# --------------------------------------------------------------------------

def _rand_rat(rng, height, nonneg=False):
    num = rng.randint(0 if nonneg else -height, height)
    return Q(num, rng.randint(1, height))

def _rand_gauss(rng, height):
    return GaussRat(_rand_rat(rng, height), _rand_rat(rng, height))


def _pyth_unit(rng, height):
    # (1 - t^2 + 2it)/(1 + t^2): exact modulus one
    t = _rand_rat(rng, height)
    den = 1 + t * t
    return GaussRat(Q(1 - t * t) / den, Q(2) * t / den)


def _rot_pair(rng, height):
    # exact (cos, sin) on the rational circle
    t = _rand_rat(rng, height)
    den = 1 + t * t
    return GaussRat(Q(1 - t * t) / den), GaussRat(Q(2) * t / den)


def _boost_pair(rng, height):
    # exact (cosh, sinh) on the rational hyperbola; |t| < 1
    while True:
        t = _rand_rat(rng, height)
        if abs(t) < 1:
            break
    den = 1 - t * t
    return GaussRat(Q(1 + t * t) / den), GaussRat(Q(2) * t / den)


def _embed2(n1, i, j, M2):
    M = [[GaussRat(1) if a == b else GaussRat(0) for b in range(n1)] for a in range(n1)]
    M[i][i], M[i][j], M[j][i], M[j][j] = M2[0][0], M2[0][1], M2[1][0], M2[1][1]
    return M


def random_source_U(rng, n, l, height=3, factors=3):
    """Random element of the exact indefinite unitary group U(l, n-1-l)."""
    n1 = n - 1
    U = identity(n1)
    for _ in range(factors):
        kind = rng.randrange(3)
        if kind == 0:  # diagonal phases
            G = [[(_pyth_unit(rng, height) if a == b else GaussRat(0))
                  for b in range(n1)] for a in range(n1)]
        elif kind == 1 and n1 >= 2:  # rotation inside a definiteness block
            blocks = [(i, j) for i in range(n1) for j in range(i + 1, n1)
                      if (i < l) == (j < l)]
            if not blocks:
                continue
            i, j = rng.choice(blocks)
            cs, sn = _rot_pair(rng, height)
            G = _embed2(n1, i, j, [[cs, sn], [-sn, cs]])
        else:  # hyperbolic boost across the signature split
            blocks = [(i, j) for i in range(l) for j in range(l, n1)]
            if not blocks:
                continue
            i, j = rng.choice(blocks)
            ch, sh = _boost_pair(rng, height)
            G = _embed2(n1, i, j, [[ch, sh], [sh, ch]])
        U = mat_mul(U, G)
    return U


def random_target_P(rng, n, l, height=3, factors=3):
    """Random P with conj(P)^T D_l P = D_l and P P^t = I."""
    n1 = n - 1
    P = identity(n1)
    for _ in range(factors):
        kind = rng.randrange(3)
        if kind == 0:  # signs
            G = [[(GaussRat(rng.choice((-1, 1))) if a == b else GaussRat(0))
                  for b in range(n1)] for a in range(n1)]
        elif kind == 1:  # real rotation inside a block
            blocks = [(i, j) for i in range(n1) for j in range(i + 1, n1)
                      if (i < l) == (j < l)]
            if not blocks:
                continue
            i, j = rng.choice(blocks)
            cs, sn = _rot_pair(rng, height)
            G = _embed2(n1, i, j, [[cs, sn], [-sn, cs]])
        else:  # i-boost across the split (complex orthogonal + indef unitary)
            blocks = [(i, j) for i in range(l) for j in range(l, n1)]
            if not blocks:
                continue
            i, j = rng.choice(blocks)
            ch, sh = _boost_pair(rng, height)
            G = _embed2(n1, i, j, [[ch, sh * I], [sh * (-I), ch]])
        P = mat_mul(P, G)
    return P


def random_params(group, n, l, seed, height=3):
    """Deterministic valid parameters for 'source' or 'target'."""
    rng = random.Random("aut:%s:%d:%d:%d" % (group, n, l, seed))
    if group == "source":
        c = [_rand_gauss(rng, height) for _ in range(n - 1)]
        r = GaussRat(_rand_rat(rng, height))
        s = GaussRat(Q(rng.randint(1, height), rng.randint(1, height)))
        U = random_source_U(rng, n, l, height)
        return AutParamsSource(c, r, s, U, n, l)
    if group == "target":
        sp = GaussRat(Q(rng.randint(1, height), rng.randint(1, height)))
        up = _pyth_unit(rng, height)
        P = random_target_P(rng, n, l, height)
        a = [_rand_gauss(rng, height) for _ in range(n - 1)]
        rp = GaussRat(_rand_rat(rng, height))
        return AutParamsTarget(sp, up, P, a, rp, n, l)
    raise ParameterError("group must be 'source' or 'target'")


def stabilizer_param_count(n, l):
    """Real parameter count of the implemented target stabilizer family:
    s'(1) + u'(1) + P((n-1)(n-2)/2) + a(2n-2) + r'(1)."""
    return 1 + 1 + (n - 1) * (n - 2) // 2 + 2 * (n - 1) + 1


def symmetry_algebra_dim(n):
    """Real dimension of the full symmetry algebra of the tube model:
    translations (1) + a-family (2n-2) + gradings (2) + rotations
    ((n-1)(n-2)/2) + zeta-phases (2) + c-family (2n-2) + top weight (1)."""
    return 1 + (2 * n - 2) + 2 + (n - 1) * (n - 2) // 2 + 2 + (2 * n - 2) + 1
