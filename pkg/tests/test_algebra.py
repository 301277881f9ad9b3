import random

import pytest

from crmaps.algebra import (DEFAULT_SERIES_CAP, GaussRat, I, MPoly, PSeries, Q,
                            RatFn, SQRT2, SqrtExpr, bar, diff, gq,
                            pseudo_divide, sqrt_series, substitute, table_for,
                            to_series)
from crmaps.errors import BranchError, DegreeError


def rand_gauss(rng, height=3, sqrt2=False):
    def rat():
        return Q(rng.randint(-height, height), rng.randint(1, height))
    return GaussRat(rat(), rat(), rat() if sqrt2 else 0, rat() if sqrt2 else 0)


def rand_poly(rng, table, nterms=6, deg=5, height=3, sqrt2=False):
    p = MPoly(table)
    for _ in range(nterms):
        e = [0] * len(table)
        budget = rng.randint(0, deg)
        for _ in range(budget):
            e[rng.randrange(len(table))] += 1
        p = p + MPoly(table, {tuple(e): rand_gauss(rng, height, sqrt2)})
    return p


T2 = table_for(["z1", "z2"])
T2W = table_for(["z1", "z2", "w"])


class TestGaussRat:
    def test_field_ops(self):
        x = gq(3, 4) + I * gq(1, 2)
        y = gq(-2, 5) + I * gq(7, 3)
        assert (x * y / y - x).is_zero()
        assert ((x + y) - y - x).is_zero()
        assert (x * x.inv() - 1).is_zero()

    def test_conj_norm_real(self):
        x = gq(2, 3) + I * gq(5, 7) + SQRT2 * gq(1, 2)
        n = x * x.conj()
        assert n.is_real()
        assert n.conj() == n

    def test_conj_involution(self):
        x = gq(1, 3) + I * (gq(2) + SQRT2)
        assert x.conj().conj() == x

    def test_sqrt2_arithmetic(self):
        assert SQRT2 * SQRT2 == GaussRat(2)
        assert (GaussRat(1) / SQRT2) * SQRT2 == GaussRat(1)

    def test_real_sign(self):
        assert (SQRT2 - gq(7, 5)).real_sign() == 1      # sqrt2 > 1.4
        assert (SQRT2 - gq(3, 2)).real_sign() == -1     # sqrt2 < 1.5
        assert GaussRat(0).real_sign() == 0

    def test_exact_sqrt(self):
        assert GaussRat(Q(9, 4)).sqrt() == gq(3, 2)
        assert GaussRat(2).sqrt() == SQRT2
        assert GaussRat(8).sqrt() == SQRT2 * 2
        assert GaussRat(-1).sqrt() == I
        v = gq(-9, 8)
        s = v.sqrt()
        assert s is not None and (s * s - v).is_zero()
        assert GaussRat(3).sqrt() is None
        x = (gq(3, 2) + SQRT2) ** 2
        s = x.sqrt()
        assert (s * s - x).is_zero()


class TestMPoly:
    def test_bar_examples(self):
        z1 = MPoly.var(T2, "z1")
        z2b = MPoly.var(T2, "z2b")
        # bar(i z1) = -i z1b
        assert bar(z1 * I) == MPoly.var(T2, "z1b") * (-I)
        # bar(z1 z2b + 2) = z1b z2 + 2
        p = z1 * z2b + MPoly.const(T2, 2)
        assert bar(p) == MPoly.var(T2, "z1b") * MPoly.var(T2, "z2") + MPoly.const(T2, 2)

    def test_bar_involution_random(self):
        rng = random.Random(1)
        T4 = table_for(["x1", "x2", "x3", "x4"])
        for _ in range(1000):
            p = rand_poly(rng, T4, nterms=4, deg=5)
            assert bar(bar(p)) == p

    def test_eval_homomorphism(self):
        rng = random.Random(2)
        for _ in range(100):
            p = rand_poly(rng, T2, 4, 4)
            q = rand_poly(rng, T2, 4, 4)
            pt = {n: rand_gauss(rng) for n in T2.names}
            lhs = (p * q).eval_gauss(pt)
            rhs = p.eval_gauss(pt) * q.eval_gauss(pt)
            assert (lhs - rhs).is_zero()
            lhs = (p + q).eval_gauss(pt)
            rhs = p.eval_gauss(pt) + q.eval_gauss(pt)
            assert (lhs - rhs).is_zero()

    def test_diff(self):
        z1, w = MPoly.var(T2W, "z1"), MPoly.var(T2W, "w")
        assert diff(z1 * z1 * w, "z1") == z1 * w * 2

    def test_diff_product_rule(self):
        rng = random.Random(3)
        for _ in range(50):
            p = rand_poly(rng, T2, 4, 4)
            q = rand_poly(rng, T2, 4, 4)
            v = rng.choice(T2.names)
            assert diff(p * q, v) == diff(p, v) * q + p * diff(q, v)


class TestPseudoDivide:
    def test_examples(self):
        w, wb = MPoly.var(T2W, "w"), MPoly.var(T2W, "wb")
        # p = wb^2, d = wb - w  ->  remainder w^2 (one-variable long division)
        q, r, k = pseudo_divide(wb * wb, wb - w, "wb")
        assert r == w * w and k <= 2
        assert q * (wb - w) + r == wb * wb  # lc = 1

    def test_contract_random(self):
        rng = random.Random(4)
        for _ in range(200):
            p = rand_poly(rng, T2, 5, 4)
            d = rand_poly(rng, T2, 3, 3)
            v = rng.choice(T2.names)
            if d.deg_in(v) == 0:
                with pytest.raises(DegreeError):
                    pseudo_divide(p, d, v)
                continue
            q, r, k = pseudo_divide(p, d, v)
            idx = T2.index[v]
            lc_terms = {tuple(0 if i == idx else x for i, x in enumerate(e)): c
                        for e, c in d.terms.items() if e[idx] == d.deg_in(v)}
            lc = MPoly(T2, lc_terms)
            assert lc ** k * p - q * d - r == MPoly(T2)
            assert r.is_zero() or r.deg_in(v) < d.deg_in(v)


class TestRatFn:
    def test_quotient_rule(self):
        w = MPoly.var(T2W, "w")
        f = RatFn(MPoly.const(T2W, 1), MPoly.const(T2W, 1) + w)
        # d/dw 1/(1+w) = -1/(1+w)^2
        expect = RatFn(MPoly.const(T2W, -1), (MPoly.const(T2W, 1) + w) ** 2)
        assert f.diff("w") == expect

    def test_substitute_mobius(self):
        w = MPoly.var(T2W, "w")
        one = MPoly.const(T2W, 1)
        f = RatFn(one, one + w)  # 1/(1+w)
        g = RatFn(w, one - w)    # w/(1-w)
        out = substitute(f, {"w": g})
        assert out == RatFn(one - w)  # 1/(1 + w/(1-w)) = 1-w

    def test_substitute_zero(self):
        z1 = MPoly.var(T2W, "z1")
        assert substitute(RatFn(z1 * z1), {"z1": RatFn.const(T2W, 0)}) == 0

    def test_substitute_homomorphic(self):
        rng = random.Random(5)
        one = MPoly.const(T2, 1)
        for _ in range(30):
            p = RatFn(rand_poly(rng, T2, 3, 3), one + rand_poly(rng, T2, 2, 2) * 0)
            q = RatFn(rand_poly(rng, T2, 3, 3))
            b = {"z1": RatFn(rand_poly(rng, T2, 2, 2)),
                 "z2": RatFn(rand_poly(rng, T2, 2, 2))}
            assert substitute(p * q, b) == substitute(p, b) * substitute(q, b)

    def test_cross_mult_equality(self):
        w = MPoly.var(T2W, "w")
        one = MPoly.const(T2W, 1)
        a = RatFn(w * w - one * 1, w - one)   # (w^2-1)/(w-1)
        b = RatFn(w + one)
        assert a == b


class TestSeries:
    def test_geometric(self):
        w = MPoly.var(T2W, "w")
        one = MPoly.const(T2W, 1)
        s = to_series(RatFn(one, one - w), 3)
        assert s.to_poly() == one + w + w ** 2 + w ** 3

    def test_sqrt_binomial_oracle(self):
        t = table_for(["t"])
        x = MPoly.var(t, "t")
        s = sqrt_series(MPoly.const(t, 1) - x * I * 4, 2)
        assert s.to_poly() == MPoly.const(t, 1) - x * I * 2 + x ** 2 * 2

    def test_sqrt_perfect_square(self):
        t = table_for(["t"])
        x = MPoly.var(t, "t")
        s = sqrt_series(MPoly.const(t, 1) + x * 2 + x ** 2, 3)
        assert s.to_poly() == MPoly.const(t, 1) + x

    def test_sqrt_of_one(self):
        t = table_for(["t"])
        s = sqrt_series(MPoly.const(t, 1), 7)
        assert s.to_poly() == MPoly.const(t, 1)

    def test_sqrt_contract_random(self):
        rng = random.Random(6)
        for _ in range(100):
            r = MPoly.const(T2, 1) + rand_poly(rng, T2, 3, 3) * MPoly.var(T2, "z1")
            cap = 6
            s = sqrt_series(r, cap)
            assert (s * s - PSeries.from_poly(r, cap)).is_zero()

    def test_series_of_product(self):
        rng = random.Random(7)
        one = MPoly.const(T2, 1)
        for _ in range(30):
            f = RatFn(rand_poly(rng, T2, 3, 3), one + rand_poly(rng, T2, 2, 2) * MPoly.var(T2, "z1"))
            g = RatFn(rand_poly(rng, T2, 3, 3), one + rand_poly(rng, T2, 2, 2) * MPoly.var(T2, "z2"))
            cap = 5
            lhs = to_series(f * g, cap)
            rhs = to_series(f, cap) * to_series(g, cap)
            assert lhs == rhs

    def test_series_numeric_consistency(self):
        rng = random.Random(8)
        one = MPoly.const(T2W, 1)
        w = MPoly.var(T2W, "w")
        f = RatFn(MPoly.var(T2W, "z1") + w * 3, one + w + MPoly.var(T2W, "z2") * I)
        cap = 8
        s = to_series(f, cap)
        for _ in range(10):
            pt = {n: complex(rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02))
                  for n in T2W.names}
            delta = abs(f.eval_complex(pt) - s.eval_complex(pt))
            scale = max(abs(v) for v in pt.values())
            assert delta <= 1e4 * scale ** (cap + 1)


class TestSqrtExpr:
    def make(self):
        one = MPoly.const(T2W, 1)
        rad = RatFn(one - MPoly.var(T2W, "z1") * I * 4)
        return SqrtExpr(RatFn(one), RatFn(one * 2), rad)

    def test_ring_ops_same_radicand(self):
        x = self.make()
        y = x * x - x
        assert y.rad.eq(x.rad)
        assert ((x + y) - y).eq(x)
        assert (x / x).eq(SqrtExpr.of(1, x))

    def test_normalization_at_origin(self):
        one = MPoly.const(T2W, 1)
        rad = RatFn(one * 4 - MPoly.var(T2W, "z1") * 8)  # value 4 at 0
        s = SqrtExpr(RatFn.const(T2W, 0), RatFn(one), rad)
        assert s.rad.eval_gauss({n: 0 for n in T2W.names}) == GaussRat(1)
        # sqrt(4 - 8 z1) = 2 sqrt(1 - 2 z1)
        assert s.coeff == RatFn.const(T2W, 2)

    def test_branch_error(self):
        one = MPoly.const(T2W, 1)
        rad = RatFn(MPoly.var(T2W, "z1"))
        with pytest.raises(BranchError):
            SqrtExpr(RatFn(one), RatFn(one), rad)

    def test_series_against_numeric(self):
        x = self.make()
        s = x.to_series(10)
        pt = {n: (0.004 + 0.003j if n == "z1" else 0.0) for n in T2W.names}
        assert abs(s.eval_complex(pt) - x.eval_complex(pt)) < 1e-12


def test_spec_series_cap_default():
    assert DEFAULT_SERIES_CAP == 10
