"""Small exact matrix helpers over GaussRat: products, inverses, rank,
characteristic polynomial, and eigenvalue sign counts for Hermitian matrices
(via Descartes on the characteristic polynomial -- exact because all roots
are real)."""

from .algebra import GaussRat, ZERO, ONE
from .errors import ParameterError


def gmat(rows):
    return [[GaussRat.of(x) for x in row] for row in rows]


def identity(k):
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


def mat_mul(A, B):
    k, m, n = len(A), len(B), len(B[0])
    return [[sum((A[i][t] * B[t][j] for t in range(1, m)), A[i][0] * B[0][j])
             for j in range(n)] for i in range(k)]


def mat_vec(v, A):
    # row vector times matrix
    m, n = len(A), len(A[0])
    return [sum((v[t] * A[t][j] for t in range(1, m)), v[0] * A[0][j]) for j in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def conj_T(A):
    return [[A[j][i].conj() for j in range(len(A))] for i in range(len(A[0]))]


def mat_eq(A, B):
    return all((x - y).is_zero() for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def mat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[x * c for x in row] for row in A]


def mat_inv(A):
    k = len(A)
    aug = [[A[i][j] for j in range(k)] + [ONE if i == j else ZERO for j in range(k)]
           for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ParameterError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(k):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def mat_rank(A):
    rows = [list(r) for r in A]
    k = len(rows)
    n = len(rows[0]) if k else 0
    rank = 0
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, k) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = rows[row][col].inv()
        rows[row] = [x * inv for x in rows[row]]
        for r in range(k):
            if r != row and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        rank += 1
        row += 1
    return rank


def trace(A):
    out = A[0][0]
    for i in range(1, len(A)):
        out = out + A[i][i]
    return out


def char_poly(A):
    """Monic characteristic polynomial coefficients [1, c1, ..., ck]
    of det(tI - A), via the Faddeev-LeVerrier recursion (exact)."""
    k = len(A)
    coeffs = [ONE]
    N = identity(k)
    for m in range(1, k + 1):
        N = mat_mul(A, N)
        c = -(trace(N) / m)
        coeffs.append(c)
        for i in range(k):
            N[i][i] = N[i][i] + c
    return coeffs


def is_hermitian(A):
    return mat_eq(A, conj_T(A))


def _variations(signs):
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def eig_signs(A):
    """Multiset of eigenvalue signs of a Hermitian GaussRat matrix.

    Returns a tuple like ('-', '0', '+') sorted; exact via Descartes' rule,
    which is sharp when all roots are real.
    """
    if not is_hermitian(A):
        raise ParameterError("eig_signs needs a Hermitian matrix")
    coeffs = char_poly(A)
    for c in coeffs:
        if not c.is_real():
            raise ParameterError("characteristic polynomial not real")
    k = len(A)
    zeros = 0
    while zeros < k and coeffs[k - zeros].is_zero():
        zeros += 1
    reduced = coeffs[:k - zeros + 1]
    signs = [c.real_sign() for c in reduced]
    pos = _variations(signs)
    neg = _variations([s * (-1) ** (len(signs) - 1 - j) for j, s in enumerate(signs)])
    return tuple(sorted("-" * neg + "0" * zeros + "+" * pos))
