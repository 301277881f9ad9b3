"""Exact arithmetic kernel: scalars, polynomials, rational functions,
truncated series, and single-radical extensions, with formal conjugation."""

from .scalars import GaussRat, Q, ZERO, ONE, I, SQRT2, HALF, gq
from .poly import VarTable, MPoly, table_for, pseudo_divide
from .ratfn import RatFn, subs_ratfn, subs_poly_ratfn
from .series import PSeries, sqrt_series, series_of_ratfn
from .sqrtexpr import SqrtExpr
from ..errors import PairingError

DEFAULT_SERIES_CAP = 10


def bar(x):
    """Formal conjugation: variables swap with partners, coefficients conjugate."""
    return x.bar()


def diff(x, name):
    """Formal partial derivative."""
    return x.diff(name)


def _complete(p_table, bindings):
    if not bindings:
        return bindings, p_table
    sample = next(iter(bindings.values()))
    tgt = getattr(sample, "table", p_table)
    out = dict(bindings)
    for name in p_table.names:
        if name not in out and name in tgt.index:
            out[name] = RatFn.var(tgt, name)
    return out, tgt


def _eval_poly_sqrt(p, vals, like):
    out = SqrtExpr.of(0, like)
    cache = {}
    for e, coef in p.terms.items():
        term = SqrtExpr.of(RatFn.const(like.table, coef), like)
        for k, pw in enumerate(e):
            if not pw:
                continue
            key = (k, pw)
            if key not in cache:
                cache[key] = vals[p.table.names[k]] ** pw
            term = term * cache[key]
        out = out + term
    return out


def substitute(p, bindings):
    """Ring-homomorphic substitution name -> RatFn | SqrtExpr | MPoly | scalar.

    Unbound variables pass through when the target table still contains them.
    Returns a RatFn, or a SqrtExpr when any binding carries a radical.
    """
    if isinstance(p, MPoly):
        p = RatFn(p)
    sqrt_vals = [v for v in bindings.values() if isinstance(v, SqrtExpr)]
    if sqrt_vals:
        like = sqrt_vals[0]
        vals = {}
        full, tgt = _complete(p.table, {k: v for k, v in bindings.items()})
        for name, v in full.items():
            vals[name] = v if isinstance(v, SqrtExpr) else SqrtExpr.of(
                RatFn.of(v, like.table) if not isinstance(v, RatFn) else v, like)
        used = {p.table.names[k] for k in range(len(p.table))
                if any(e[k] for e in list(p.n.terms) + list(p.d.terms))}
        missing = used - set(vals)
        if missing:
            raise KeyError("unbound variables %s" % sorted(missing))
        num = _eval_poly_sqrt(p.n, vals, like)
        den = _eval_poly_sqrt(p.d, vals, like)
        return num / den
    full, tgt = _complete(p.table, bindings)
    coerced = {k: (RatFn.of(v, tgt) if not isinstance(v, RatFn) else v)
               for k, v in full.items()}
    return subs_ratfn(p, coerced)


def to_series(x, cap=DEFAULT_SERIES_CAP, center=None):
    """Truncated Taylor expansion at the origin (or at `center`)."""
    if isinstance(x, MPoly):
        x = RatFn(x)
    if isinstance(x, SqrtExpr):
        return x.to_series(cap, center=center)
    if isinstance(x, PSeries):
        return x.truncate(cap)
    return series_of_ratfn(x, cap, center=center)
