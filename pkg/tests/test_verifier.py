import random

import pytest

from crmaps.algebra import GaussRat, I, MPoly, Q, RatFn, bar, gq, to_series
from crmaps.errors import BranchError, ContractError
from crmaps.geometry import make_hypersurface, sample_points
from crmaps.holomap import HoloMap, catalog, compose
from crmaps.verifier import (check_oracle_identities, extract_Q,
                             extract_q_series, pullback, transversality,
                             verify_cr_map)


def make_bad_map():
    src = make_hypersurface("hyperquadric", 3, 1)
    tgt = make_hypersurface("X_model", 3, 1)
    z1 = RatFn.var(src.table, "z1")
    z2 = RatFn.var(src.table, "z2")
    w = RatFn.var(src.table, "w")
    return HoloMap(src, tgt, [z1, z2, RatFn.const(src.table, 0), w + z1 * z1],
                   name="bad")


class TestVerifyExact:
    @pytest.mark.parametrize("nm", ["H1", "H2", "H3", "H4", "H5"])
    def test_catalog_passes_with_unit_Q0(self, nm):
        rep = verify_cr_map(catalog(nm))
        assert rep.passed and rep.transversal
        assert (rep.Q0 - 1).is_zero()

    def test_linear_map_unit_Q(self, subtests=None):
        rep = verify_cr_map(catalog("ell_n", 4, 1))
        assert rep.passed
        assert rep.Q == RatFn.const(rep.Q.table, 1)

    def test_failing_map(self):
        assert not verify_cr_map(make_bad_map()).passed

    def test_exact_mode_rejects_radicals(self):
        with pytest.raises(BranchError):
            verify_cr_map(catalog("I"))

    def test_Q_is_real(self):
        for nm in ("H2", "H4", "P2", "cayley"):
            Q_ = extract_Q(catalog(nm))
            assert Q_ == Q_.bar()

    @pytest.mark.parametrize("seed", range(10))
    def test_failure_sensitivity(self, seed):
        # perturb one numerator coefficient by 1/1000: verification must fail
        rng = random.Random(seed)
        nm = rng.choice(["H2", "H3", "H4", "H5"])
        H = catalog(nm)
        k = rng.randrange(len(H.comps))
        comp = H.comps[k]
        e = rng.choice(sorted(comp.n.terms))
        terms = dict(comp.n.terms)
        terms[e] = terms[e] + gq(1, 1000)
        comps = list(H.comps)
        comps[k] = RatFn(MPoly(comp.n.table, terms), comp.d)
        H2 = HoloMap(H.source, H.target, comps, name=nm + "_perturbed")
        assert not verify_cr_map(H2).passed


class TestSeriesMode:
    def test_irrational_passes(self):
        rep = verify_cr_map(catalog("I"), mode="series", degree=10)
        assert rep.passed and rep.transversal
        assert (rep.Q0 - 1).is_zero()

    def test_series_Q_matches_exact_Q(self):
        for nm in ("H2", "H4", "H5", "Upsilon5"):
            H = catalog(nm)
            Qs = extract_q_series(H, 4)
            Qe = to_series(extract_Q(H), 4, center=_exact_center(H))
            assert Qs == Qe

    def test_series_detects_failure(self):
        rep = verify_cr_map(make_bad_map(), mode="series", degree=6)
        assert not rep.passed


def _exact_center(H):
    from crmaps.verifier import _full_shift
    return _full_shift(H) or None


class TestNumericMode:
    @pytest.mark.parametrize("nm", ["H4", "I", "t2m", "P2"])
    def test_residuals(self, nm):
        rep = verify_cr_map(catalog(nm), mode="numeric", samples=40, seed=7)
        assert rep.passed
        assert rep.residual_max < 1e-10

    def test_soundness_cross_check(self):
        # exact pass implies tiny numeric residuals
        for nm in ("H2", "R1", "cayley"):
            H = catalog(nm)
            assert verify_cr_map(H).passed
            rep = verify_cr_map(H, mode="numeric", samples=100, seed=3)
            assert rep.residual_max < 1e-10


class TestTransversality:
    def test_examples(self):
        assert transversality(catalog("ell_n", 3, 1))
        assert transversality(catalog("I"))
        src = make_hypersurface("hyperquadric", 3, 1)
        tgt = make_hypersurface("X_model", 3, 1)
        z1 = RatFn.var(src.table, "z1")
        zero = RatFn.const(src.table, 0)
        flat = HoloMap(src, tgt, [z1, zero, zero, zero], name="flat")
        assert not transversality(flat)


class TestQNormalization:
    @pytest.mark.parametrize("nm", ["H1", "H2", "H3", "H4", "H5"])
    def test_low_bidegrees_vanish(self, nm):
        # Q(0) = 1 and no (1,0)/(0,1) terms for normalized germs
        Qs = extract_q_series(catalog(nm), 3)
        T = Qs.table
        assert (Qs.const_term() - 1).is_zero()
        for nm_v in T.holo:
            assert Qs.coeff({nm_v: 1}).is_zero()
            assert Qs.coeff({T.conj_name(nm_v): 1}).is_zero()

    def test_extract_Q_contract_error_on_failing_map(self):
        with pytest.raises(ContractError):
            extract_Q(make_bad_map())


class TestOracleIdentities:
    def test_h_family_exact(self):
        for (a, b) in [(3, 1), (2, 2), (0, 2), (2, 0), (gq(1, 2), gq(-3, 4))]:
            ids = check_oracle_identities(catalog("H_A", alpha=a, beta=b))
            assert ids and all(p for _, p in ids), [i for i, p in ids if not p]

    def test_normal_form_catalog_exact(self):
        for nm in ("H2", "H3", "H4", "H5", "ell_n"):
            H = catalog(nm) if nm != "ell_n" else catalog(nm, 3, 1)
            ids = check_oracle_identities(H)
            assert all(p for _, p in ids), (nm, [i for i, p in ids if not p])

    def test_irrational_series(self):
        ids = check_oracle_identities(catalog("I"), degree=10)
        assert all(p for _, p in ids)
        lam = gq(1, 2) + I * gq(1, 3)
        ids = check_oracle_identities(catalog("irrational", 3, 1, lam=lam),
                                      degree=8)
        assert all(p for _, p in ids)

    def test_irrational_series_n4(self):
        ids = check_oracle_identities(catalog("I_n", 4, 1), degree=8)
        assert all(p for _, p in ids)

    def test_corrupted_map_fails_oracles(self):
        ids = check_oracle_identities(make_bad_map())
        assert not all(p for _, p in ids)
