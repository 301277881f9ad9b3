"""CR Ahlfors tensor, geometric rank, the jet normalization algorithm, and
the classifier onto the equivalence classes of transversal CR maps from the
hyperquadric into the null-cone tube model."""

from .algebra import (GaussRat, HALF, I, MPoly, PSeries, Q, RatFn, gq,
                      substitute, to_series)
from .autgroups import (AutParamsSource, AutParamsTarget, source_automorphism,
                        target_automorphism)
from .errors import NormalizationError, ParameterError
from .geometry import SignatureForm
from .holomap import HoloMap, identity_map
from .holomap import compose as _eager_compose


def compose(a, b):
    # normalization only ever consumes jets; keep the chains lazy
    return _eager_compose(a, b, lazy=True)
from .linalg import (eig_signs, gmat, identity, mat_inv, mat_mul, mat_rank,
                     transpose)
from .verifier import extract_Q, extract_q_series

LINEAR = "LINEAR"
RANK1_POS = "RANK1_POS"     # class of H2
RANK1_NEG = "RANK1_NEG"     # class of H3
RANK2_HYP = "RANK2_HYP"     # class of H4
RANK2_ELL = "RANK2_ELL"     # class of H5
IRRATIONAL = "IRRATIONAL"

CLASS_OF_CANONICAL = {"H1": LINEAR, "ell_n": LINEAR, "H2": RANK1_POS,
                      "H3": RANK1_NEG, "H4": RANK2_HYP, "H5": RANK2_ELL,
                      "I": IRRATIONAL, "I_n": IRRATIONAL}


class AhlforsReport:
    def __init__(self, point, frame, matrix, rank, signs):
        self.point = point
        self.frame = frame
        self.matrix = matrix
        self.rank = rank
        self.eig_signs = signs

    def to_json(self):
        return {"point": [str(c) for c in self.point], "frame": self.frame,
                "matrix": [[str(x) for x in row] for row in self.matrix],
                "rank": self.rank, "eig_signs": list(self.eig_signs)}

    def __repr__(self):
        return "AhlforsReport(rank=%d, signs=%s)" % (self.rank, "".join(self.eig_signs))


def log_q_hessian(H):
    """Exact ambient complex Hessian of log Q: entries (log Q)_{a bbar}.

    Index order follows the source holomorphic variables (z..., w); entry
    [a][b] differentiates by holo var a and the conjugate of var b.
    """
    Qf = extract_Q(H)
    T = H.source.table
    names = T.holo
    Qa = [Qf.diff(nm) for nm in names]
    out = []
    for a, nm_a in enumerate(names):
        row = []
        for b, nm_b in enumerate(names):
            bb = T.conj_name(nm_b)
            num = Qa[a].diff(bb) * Qf - Qa[a] * Qf.diff(bb)
            row.append(num / (Qf * Qf))
        out.append(row)
    return out


def log_q_hessian_at_base(H, order=2):
    """Matrix of values (log Q)_{a bbar}(base), via the Q series at the base."""
    Qs = extract_q_series(H, order + 2)
    q0 = Qs.const_term()
    if q0.is_zero():
        raise ParameterError("Q vanishes at the base point")
    x = Qs * q0.inv() - 1
    # log(1+x) to quadratic order suffices for the mixed second derivatives
    L = x - x * x * HALF
    T = H.source.table
    out = []
    for nm_a in T.holo:
        row = []
        for nm_b in T.holo:
            row.append(L.coeff({nm_a: 1, T.conj_name(nm_b): 1}))
        out.append(row)
    return out


def _frame_vectors(H, frame):
    """CR frame coefficient functions over the source ambient variables."""
    S = H.source
    T = S.table
    names = T.holo
    nz = len(names) - 1
    if frame == "L":
        # conjugated tangential operators of the hyperquadric, at any point:
        # Lbar_j = d/dz_j + 2i eps_j zbar_j d/dw
        eps = SignatureForm(S.n, S.l).eps
        vecs = []
        for j in range(nz):
            v = [RatFn.const(T, 0) for _ in names]
            v[j] = RatFn.const(T, 1)
            v[-1] = RatFn.var(T, T.conj_name(names[j])) * (I * 2 * eps[j])
            vecs.append(v)
        return vecs
    if frame == "Z":
        # Z_j = rho_w d/dz_j - rho_{z_j} d/dw
        rho = RatFn(S.rho)
        rho_w = rho.diff(names[-1])
        vecs = []
        for j in range(nz):
            v = [RatFn.const(T, 0) for _ in names]
            v[j] = rho_w
            v[-1] = -rho.diff(names[j])
            vecs.append(v)
        return vecs
    raise ParameterError("unknown frame %r" % frame)


def ahlfors_tensor(H, point=None, frame=None, mode=None, order=4):
    """Hermitian matrix of the CR Ahlfors tensor at a source point.

    Rows are indexed by the conjugated frame slot: entry [j][k] is the
    tensor on (frame_k, conj(frame_j)), which matches the classical display
    for the hyperquadric normal forms.
    """
    S = H.source
    if point is None:
        point = H.base_point
    point = tuple(GaussRat.of(c) for c in point)
    if frame is None:
        frame = "L" if S.name == "hyperquadric" else "Z"
    at_base = all((a - b).is_zero() for a, b in zip(point, H.base_point))
    if mode is None:
        mode = "series" if (at_base and S.graph_var is not None) else "exact"
    full = {}
    for nm, c in zip(S.table.holo, point):
        full[nm] = c
        full[S.table.conj_name(nm)] = c.conj()
    if mode == "series":
        if not at_base:
            raise ParameterError("series mode evaluates at the base point only")
        hess_vals = log_q_hessian_at_base(H, order)
    else:
        hess = log_q_hessian(H)
        hess_vals = [[e.eval_gauss(full) for e in row] for row in hess]
    vecs = _frame_vectors(H, frame)
    vec_vals = [[c.eval_gauss(full) for c in v] for v in vecs]
    nz = len(vecs)
    nv = len(S.table.holo)
    direct = [[sum((vec_vals[j][a] * vec_vals[k][b].conj() * hess_vals[a][b]
                    for a in range(nv) for b in range(nv)), GaussRat(0))
               for k in range(nz)] for j in range(nz)]
    matrix = [[direct[k][j] for k in range(nz)] for j in range(nz)]
    rank = mat_rank(matrix)
    signs = eig_signs(matrix)
    return AhlforsReport(point, frame, matrix, rank, signs)


def geometric_rank(H, point=None, mode=None):
    return ahlfors_tensor(H, point=point, mode=mode).rank


# --------------------------------------------------------------------------
# normalization onto the partial normal form
# --------------------------------------------------------------------------

class NormalForm:
    def __init__(self, n, l, lam, A, B, v, mu, sigma, psi, gamma):
        self.n = n
        self.l = l
        self.lam = lam
        self.A = A
        self.B = B
        self.v = v
        self.mu = mu
        self.sigma = sigma
        self.psi = psi          # composed source automorphism witness
        self.gamma = gamma      # composed target automorphism witness

    @property
    def alpha(self):
        return self.A[0][0] if self.n == 3 else None

    @property
    def beta(self):
        return None if self.n != 3 else self.A[0][1] / I

    def to_json(self):
        return {"n": self.n, "l": self.l, "lambda": str(self.lam),
                "A": [[str(x) for x in r] for r in self.A],
                "B": [[str(x) for x in r] for r in self.B],
                "v": [str(x) for x in self.v], "mu": [str(x) for x in self.mu],
                "sigma": str(self.sigma),
                "alpha": None if self.alpha is None else str(self.alpha),
                "beta": None if self.beta is None else str(self.beta)}


def _jet_matrices(H):
    """(F, gw): F[k][j] = d f_j / d z_k at base, gw = d g / d w at base."""
    n = H.source.n
    J = H.jet_expand(1)
    names = H.source.table.holo
    F = [[J.coeff(j, {names[k]: 1}) for j in range(n - 1)] for k in range(n - 1)]
    gw = J.coeff(n, {names[-1]: 1})
    return F, gw


def _swap_pair(n, l):
    """Side-reversing pair exchanging the definiteness blocks (needs 2l = n-1)."""
    if 2 * l != n - 1:
        raise NormalizationError(
            "g_w(0) < 0 and no component exchange exists for (n,l)=(%d,%d)" % (n, l))
    from .geometry import make_hypersurface
    src = make_hypersurface("hyperquadric", n, l)
    tgt = make_hypersurface("X_model", n, l)
    zsrc = [RatFn.var(src.table, nm) for nm in src.table.holo]
    perm = list(range(l, 2 * l)) + list(range(l))
    tau_src = HoloMap(src, src, [zsrc[p] for p in perm] + [-zsrc[-1]], name="swap")
    ztgt = [RatFn.var(tgt.table, nm) for nm in tgt.table.holo]
    tau_tgt = HoloMap(tgt, tgt, [ztgt[p] for p in perm] + [-ztgt[-2], -ztgt[-1]],
                      name="swap")
    return tau_src, tau_tgt


def _tgt_params(n, l, sp=1, up=1, P=None, a=None, rp=0):
    return AutParamsTarget(sp, up, P or identity(n - 1), a or [0] * (n - 1),
                           rp, n, l)


def _src_params(n, l, c=None, r=0, s=1, U=None):
    return AutParamsSource(c or [0] * (n - 1), r, s, U or identity(n - 1), n, l)


def normalize(H):
    """Bring a transversal germ at 0 into the partial normal form.

    Returns (H_norm, NormalForm); H_norm = gamma o H o psi with the witnesses
    recorded on the NormalForm.
    """
    S = H.source
    n, l = S.n, S.l
    if S.name != "hyperquadric" or H.target.name != "X_model":
        raise NormalizationError("normalize expects hyperquadric -> tube model germs")
    if any(not c.is_zero() for c in H.base_point):
        raise NormalizationError("normalize expects the germ at the origin")
    if any(not c.is_zero() for c in H.target_point()):
        raise NormalizationError("normalize expects H(0) = 0")
    cur = H
    psis = []
    gammas = []

    F, gw = _jet_matrices(cur)
    if not gw.is_real():
        raise NormalizationError("g_w(0) not real; not a CR map germ")
    if gw.is_zero():
        raise NormalizationError("not transversal: g_w(0) = 0")
    if gw.real_sign() < 0:
        tau_src, tau_tgt = _swap_pair(n, l)
        cur = compose(tau_tgt, compose(cur, tau_src))
        psis.append(tau_src)
        gammas.append(tau_tgt)
        F, gw = _jet_matrices(cur)

    # step 1: linear part -> f_z = id, g_w = 1
    sq = gw.sqrt()
    if sq is None or not sq.is_real():
        raise NormalizationError("g_w(0) has no exact square root in Q(i,sqrt2)")
    if sq.real_sign() < 0:
        sq = -sq
    U = [[x * sq for x in row] for row in mat_inv(F)]
    psi1 = source_automorphism(_src_params(n, l, U=U))
    gam1 = target_automorphism(_tgt_params(n, l, sp=GaussRat.of(1) / sq))
    cur = compose(gam1, compose(cur, psi1))
    psis.append(psi1)
    gammas.append(gam1)

    # step 2: kill phi_z(0) with the target a-parameter
    J = cur.jet_expand(1)
    names = S.table.holo
    pz = [J.coeff(n - 1, {names[k]: 1}) for k in range(n - 1)]
    if any(not c.is_zero() for c in pz):
        a = [c * (-I * HALF) for c in pz]
        gam2 = target_automorphism(_tgt_params(n, l, a=a))
        cur = compose(gam2, cur)
        gammas.append(gam2)

    # step 3: kill f_w(0) with the source c-parameter
    J = cur.jet_expand(1)
    fw = [J.coeff(j, {names[-1]: 1}) for j in range(n - 1)]
    if any(not c.is_zero() for c in fw):
        psi3 = source_automorphism(_src_params(n, l, c=[-c for c in fw]))
        cur = compose(cur, psi3)
        psis.append(psi3)

    # step 4: kill g_ww(0) and the imaginary part of phi_{z1 z1}(0)
    def observables(rr, rp):
        piece = cur
        if not GaussRat.of(rr).is_zero():
            piece = compose(piece, source_automorphism(_src_params(n, l, r=rr)))
        if not GaussRat.of(rp).is_zero():
            piece = compose(target_automorphism(_tgt_params(n, l, rp=rp)), piece)
        J2 = piece.jet_expand(2)
        return (J2.coeff(n, {names[-1]: 2}), J2.coeff(n - 1, {names[0]: 2}))

    o00 = observables(0, 0)
    o10 = observables(1, 0)
    o01 = observables(0, 1)
    # affine dependence on (r, r'): three real equations, two unknowns
    rows = []
    rhs = []
    for pick in range(3):
        if pick == 0:
            take = lambda o: o[0].re
        elif pick == 1:
            take = lambda o: o[0].im
        else:
            take = lambda o: o[1].im
        rows.append([take(o10) - take(o00), take(o01) - take(o00)])
        rhs.append(-take(o00))
    sol = _solve_real_2(rows, rhs)
    if sol is None:
        raise NormalizationError("second-order normalization system inconsistent")
    rr, rp = sol
    if not GaussRat.of(rr).is_zero():
        psi4 = source_automorphism(_src_params(n, l, r=rr))
        cur = compose(cur, psi4)
        psis.append(psi4)
    if not GaussRat.of(rp).is_zero():
        gam4 = target_automorphism(_tgt_params(n, l, rp=rp))
        cur = compose(gam4, cur)
        gammas.append(gam4)

    nf = _read_normal_form(cur, psis, gammas)
    return cur, nf


def _solve_real_2(rows, rhs):
    """Solve an overdetermined real 2-unknown linear system exactly."""
    sys = [(r[0], r[1], b) for r, b in zip(rows, rhs)]
    piv = next((k for k, (a, b, c) in enumerate(sys) if not a.is_zero()), None)
    if piv is None:
        x = GaussRat(0)
        ys = [(c / b) for a, b, c in sys if not b.is_zero()]
        y = ys[0] if ys else GaussRat(0)
    else:
        a0, b0, c0 = sys[piv]
        rest = [s for k, s in enumerate(sys) if k != piv]
        # eliminate x
        red = [(b - b0 * (a / a0), c - c0 * (a / a0)) for a, b, c in rest]
        pick = next(((b, c) for b, c in red if not b.is_zero()), None)
        if pick is None:
            y = GaussRat(0)
        else:
            y = pick[1] / pick[0]
        x = (c0 - b0 * y) / a0
    for a, b, c in sys:
        if not (a * x + b * y - c).is_zero():
            return None
    return x, y


def _read_normal_form(cur, psis, gammas):
    S = cur.source
    n, l = S.n, S.l
    names = S.table.holo
    J = cur.jet_expand(3)
    # shape assertions of the partial normal form
    for j in range(n - 1):
        for k in range(n - 1):
            want = GaussRat(1 if j == k else 0)
            if not (J.coeff(j, {names[k]: 1}) - want).is_zero():
                raise NormalizationError("f linear part not the identity")
        if not J.coeff(j, {names[-1]: 1}).is_zero():
            raise NormalizationError("f_w(0) not killed")
    if not (J.coeff(n, {names[-1]: 1}) - 1).is_zero():
        raise NormalizationError("g_w(0) != 1")
    if not J.coeff(n, {names[-1]: 2}).is_zero():
        raise NormalizationError("g_ww(0) != 0")
    for k in range(n - 1):
        if not J.coeff(n, {names[k]: 1}).is_zero():
            raise NormalizationError("g_z(0) != 0")
        if not J.coeff(n, {names[k]: 1, names[-1]: 1}).is_zero():
            raise NormalizationError("g_zw(0) != 0")
        for k2 in range(k, n - 1):
            if not J.coeff(n, {names[k]: 1, names[k2]: 1}).is_zero():
                raise NormalizationError("g_zz(0) != 0")
        if not J.coeff(n - 1, {names[k]: 1}).is_zero():
            raise NormalizationError("phi_z(0) not killed")
    lam = J.coeff(n - 1, {names[-1]: 1})
    B = [[GaussRat(0)] * (n - 1) for _ in range(n - 1)]
    for jj in range(n - 1):
        for kk in range(n - 1):
            c = J.coeff(n - 1, {names[jj]: 1, names[kk]: 1} if jj != kk
                        else {names[jj]: 2})
            B[jj][kk] = c if jj == kk else c * HALF
    A = [[GaussRat(0)] * (n - 1) for _ in range(n - 1)]
    for kk in range(n - 1):
        for jj in range(n - 1):
            c = J.coeff(jj, {names[kk]: 1, names[-1]: 1})
            A[kk][jj] = c * 2 / I
    for jj in range(n - 1):
        for kk in range(n - 1):
            if not (A[jj][kk] - B[jj][kk]).is_zero():
                raise NormalizationError("A != B; input is not a CR map germ")
    if not B[0][0].is_real():
        raise NormalizationError("b_11 not real after normalization")
    v = [J.coeff(j, {names[-1]: 2}) for j in range(n - 1)]
    mu = [J.coeff(n - 1, {names[k]: 1, names[-1]: 1}) for k in range(n - 1)]
    sigma = J.coeff(n - 1, {names[-1]: 2})
    psi = None
    for p in psis:
        psi = p if psi is None else compose(psi, p)
    gamma = None
    for g in reversed(gammas):
        gamma = g if gamma is None else compose(gamma, g)
    if psi is None:
        psi = identity_map(cur.source)
    if gamma is None:
        gamma = identity_map(cur.target)
    return NormalForm(n, l, lam, A, B, v, mu, sigma, psi, gamma)


def classify(nf, n=None):
    """Equivalence class of a partial normal form."""
    n = n or nf.n
    if not nf.lam.is_zero():
        return IRRATIONAL
    rank = mat_rank(nf.A)
    if rank == 0:
        return LINEAR
    if n >= 4:
        raise ParameterError("nonzero A with n >= 4 contradicts the theory")
    alpha, beta = nf.alpha, nf.beta
    if not (alpha.is_real() and beta.is_real()):
        raise ParameterError("normal form invariants must be real")
    if rank == 1:
        sa = alpha.real_sign()
        if sa > 0:
            return RANK1_POS
        if sa < 0:
            return RANK1_NEG
        raise ParameterError("rank-one form with alpha = 0 cannot occur")
    det = -(alpha * alpha) + beta * beta
    sd = det.real_sign()
    if sd > 0:
        return RANK2_ELL
    if sd < 0:
        if alpha.real_sign() > 0:
            return RANK2_HYP
        raise ParameterError(
            "definite Ahlfors pattern with alpha < 0: the sign-flipped twin of "
            "the rank-two hyperbolic class; not in the canonical orbit list")
    raise ParameterError("rank-two form with zero determinant cannot occur")


# --------------------------------------------------------------------------
# explicit equivalence witnesses to the canonical representatives
# --------------------------------------------------------------------------

def _linear_pair(n, l, V, s):
    """(psi, gamma) for the dilation-rotation pair (s zV, s^2 w)."""
    psi = source_automorphism(_src_params(n, l, s=s, U=V))
    gamma = target_automorphism(_tgt_params(n, l, sp=s, P=V))
    return psi, gamma


CANONICAL_A = {
    RANK1_POS: [[2, I * 2], [I * 2, -2]],
    RANK1_NEG: [[-2, I * (-2)], [I * (-2), 2]],
    RANK2_HYP: [[2, 0], [0, -2]],
    RANK2_ELL: [[0, I * 2], [I * 2, 0]],
}


def _conj_A(A, V, s2):
    return [[x / s2 for x in row] for row in mat_mul(mat_mul(mat_inv(V), A), V)]


def equivalence_witness(nf):
    """Automorphism pair (psi, gamma) with gamma o H o psi^{-1} canonical.

    Returns (label, psi, gamma, exact).  When the needed square roots leave
    Q(i, sqrt2) the witness is numeric: (label, params_dict, None, False),
    certifiable with numeric_witness_residual.
    """
    if nf.n != 3:
        raise ParameterError("explicit witnesses implemented for n = 3")
    if not nf.lam.is_zero():
        raise ParameterError("witnesses apply to the lambda = 0 families")
    alpha, beta = nf.alpha, nf.beta
    n, l = nf.n, nf.l
    label = classify(nf)
    if label == LINEAR:
        psi = source_automorphism(_src_params(n, l))
        gamma = target_automorphism(_tgt_params(n, l))
        return label, psi, gamma, True
    A = gmat([[alpha, I * beta], [I * beta, -alpha]])
    target = gmat(CANONICAL_A[label])
    det = -(alpha * alpha) + beta * beta
    if label in (RANK1_POS, RANK1_NEG):
        s2 = (beta if beta.real_sign() > 0 else -beta) / 2
        boosts = [None]
    elif label == RANK2_HYP:
        r2 = ((-det) / 4).sqrt()
        s2 = r2
        boosts = None
    else:
        r2 = (det / 4).sqrt()
        s2 = r2
        boosts = None
    if s2 is None or (not s2.is_real()) or s2.real_sign() <= 0:
        return label, _float_pair(alpha, beta), None, False
    if boosts is None:
        ch = (alpha if label == RANK2_HYP else
              (beta if beta.real_sign() > 0 else -beta)) / (s2 * 2)
        ch2 = ((ch + 1) / 2).sqrt()
        sh2 = ((ch - 1) / 2).sqrt()
        if ch2 is None or sh2 is None:
            return label, _float_pair(alpha, beta), None, False
        boosts = [gmat([[ch2, sh2 * I], [sh2 * (-I), ch2]]),
                  gmat([[ch2, sh2 * (-I)], [sh2 * I, ch2]])]
    s = s2.sqrt()
    if s is None or not s.is_real():
        return label, _float_pair(alpha, beta), None, False
    if s.real_sign() < 0:
        s = -s
    for V0 in (identity(2), gmat([[1, 0], [0, -1]])):
        for B in boosts:
            V = V0 if B is None else mat_mul(V0, B)
            got = _conj_A(A, V, s2)
            if all((got[i][j] - target[i][j]).is_zero()
                   for i in range(2) for j in range(2)):
                psi, gamma = _linear_pair(n, l, V, s)
                return label, psi, gamma, True
    return label, _float_pair(alpha, beta), None, False


def _float_pair(alpha, beta):
    """Float witness parameters when the square roots leave Q(i, sqrt2):
    the linear conjugation matrix C and the dilation scale s such that
    psi = (s z C, s^2 w), gamma = (s z C, zeta, s^2 w) does the reduction.
    The candidate signs are resolved by direct float comparison."""
    import math
    a = float(alpha.a) + float(alpha.b) * math.sqrt(2)
    b = float(beta.a) + float(beta.b) * math.sqrt(2)
    A = [[a, 1j * b], [1j * b, -a]]
    if abs(abs(a) - abs(b)) < 1e-12:
        s2 = abs(b) / 2
        t = [[2, 2j], [2j, -2]] if a > 0 else [[-2, -2j], [-2j, 2]]
        boosts = [None]
    elif a * a > b * b:
        s2 = math.sqrt(a * a - b * b) / 2
        t = [[2, 0], [0, -2]]
        ch = a / (2 * s2)
        boosts = [math.sqrt((ch + 1) / 2), math.sqrt((ch - 1) / 2)]
    else:
        s2 = math.sqrt(b * b - a * a) / 2
        t = [[0, 2j], [2j, 0]]
        ch = abs(b) / (2 * s2)
        boosts = [math.sqrt((ch + 1) / 2), math.sqrt((ch - 1) / 2)]

    def conj(V):
        det = V[0][0] * V[1][1] - V[0][1] * V[1][0]
        Vi = [[V[1][1] / det, -V[0][1] / det], [-V[1][0] / det, V[0][0] / det]]
        M = [[sum(Vi[i][k] * A[k][m] for k in range(2)) for m in range(2)]
             for i in range(2)]
        return [[sum(M[i][k] * V[k][m] for k in range(2)) / s2 for m in range(2)]
                for i in range(2)]

    cands = []
    for d in (1, -1):
        V0 = [[1, 0], [0, d]]
        if boosts == [None]:
            cands.append(V0)
        else:
            ch2, sh2 = boosts
            for sgn in (1, -1):
                B = [[ch2, 1j * sgn * sh2], [-1j * sgn * sh2, ch2]]
                cands.append([[sum(V0[i][k] * B[k][m] for k in range(2))
                               for m in range(2)] for i in range(2)])
    best = min(cands, key=lambda V: max(abs(conj(V)[i][j] - t[i][j])
                                        for i in range(2) for j in range(2)))
    return {"s": math.sqrt(s2), "C": best}


def numeric_witness_residual(H, params, label, samples=25, seed=0):
    """Certify a float witness: max |gamma o H o psi^{-1} - canonical| on
    seeded hyperquadric points near the origin."""
    import cmath
    import random as _random
    from .holomap import catalog as _catalog
    target_name = {RANK1_POS: "H2", RANK1_NEG: "H3",
                   RANK2_HYP: "H4", RANK2_ELL: "H5"}[label]
    HT = _catalog(target_name)
    s = params["s"]
    C = [[complex(x) for x in row] for row in params["C"]]
    det = C[0][0] * C[1][1] - C[0][1] * C[1][0]
    Cinv = [[C[1][1] / det, -C[0][1] / det], [-C[1][0] / det, C[0][0] / det]]
    rng = _random.Random(seed)
    l = H.source.l
    worst = 0.0
    for _ in range(samples):
        z = [complex(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05))
             for _ in range(2)]
        x = rng.uniform(-0.05, 0.05)
        w = complex(x, sum((-1 if j < l else 1) * abs(z[j]) ** 2 for j in range(2)))
        # psi^{-1}(z, w) = ((z/s) C^{-1}, w / s^2)
        zi = [sum(z[k] * Cinv[k][j] for k in range(2)) / s for j in range(2)]
        wi = w / s ** 2
        img = H.eval_numeric(tuple(zi) + (wi,), radius=None)
        # gamma = (s (z C), zeta, s^2 w)
        gz = [s * sum(img[k] * C[k][j] for k in range(2)) for j in range(2)]
        out = (gz[0], gz[1], img[2], s ** 2 * img[3])
        want = HT.eval_numeric(tuple(z) + (w,), radius=None)
        worst = max(worst, max(abs(p - q) for p, q in zip(out, want)))
    return worst
