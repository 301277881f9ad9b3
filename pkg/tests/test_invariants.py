import random

import pytest

from crmaps.algebra import GaussRat, I, Q, gq
from crmaps.autgroups import (invert, random_params, source_automorphism,
                              target_automorphism)
from crmaps.errors import NormalizationError, ParameterError
from crmaps.holomap import catalog, compose
from crmaps.invariants import (CLASS_OF_CANONICAL, IRRATIONAL, LINEAR,
                               RANK1_NEG, RANK1_POS, RANK2_ELL, RANK2_HYP,
                               ahlfors_tensor, classify, equivalence_witness,
                               geometric_rank, normalize,
                               numeric_witness_residual)
from crmaps.linalg import is_hermitian


def conjugated(nm, seed, n=3, l=1):
    psi = source_automorphism(random_params("source", n, l, seed))
    gam = target_automorphism(random_params("target", n, l, seed + 9000))
    return compose(gam, compose(catalog(nm, n, l), psi, lazy=True), lazy=True)


class TestAhlfors:
    def test_h_family_display(self):
        rng = random.Random(17)
        for _ in range(5):
            a = GaussRat(Q(rng.randint(-6, 6), rng.randint(1, 4)))
            b = GaussRat(Q(rng.randint(-6, 6), rng.randint(1, 4)))
            rep = ahlfors_tensor(catalog("H_A", alpha=a, beta=b))
            want = [[-a, -I * b], [I * b, -a]]
            assert all((rep.matrix[j][k] - want[j][k]).is_zero()
                       for j in range(2) for k in range(2))

    def test_linear_map_zero(self):
        rep = ahlfors_tensor(catalog("ell_n", 4, 1))
        assert rep.rank == 0
        assert all(x.is_zero() for row in rep.matrix for x in row)

    def test_hermitian_exact(self):
        for nm in ("H2", "H4", "H5"):
            rep = ahlfors_tensor(catalog(nm))
            assert is_hermitian(rep.matrix)

    def test_rank_catalog(self):
        want = {"H1": 0, "H2": 1, "H3": 1, "H4": 2, "H5": 2, "I": 0}
        for nm, r in want.items():
            assert geometric_rank(catalog(nm)) == r
        assert geometric_rank(catalog("ell_n", 5, 2)) == 0
        assert geometric_rank(catalog("I_n", 5, 1)) == 0

    def test_rank_of_h_family_is_rank_of_A(self):
        assert geometric_rank(catalog("H_A", alpha=3, beta=4)) == 2
        assert geometric_rank(catalog("H_A", alpha=3, beta=3)) == 1
        assert geometric_rank(catalog("H_A", alpha=0, beta=0)) == 0

    @pytest.mark.parametrize("nm", ["H2", "H3", "H4", "H5"])
    def test_invariance_under_stabilizers(self, nm):
        base = ahlfors_tensor(catalog(nm))
        for seed in range(10):
            M = conjugated(nm, seed + 31)
            rep = ahlfors_tensor(M)
            assert rep.rank == base.rank
            assert rep.eig_signs == base.eig_signs


class TestNormalize:
    def test_h4_is_already_normal(self):
        Hn, nf = normalize(catalog("H4"))
        assert nf.lam.is_zero()
        assert (nf.alpha - 2).is_zero() and nf.beta.is_zero()
        # unchanged: identical jets to order 3
        J0 = catalog("H4").jet_expand(3)
        J1 = Hn.jet_expand(3)
        for c in range(4):
            assert J0.series[c].terms == J1.series[c].terms

    def test_normal_form_invariants(self):
        for nm in ("H2", "H5", "I"):
            _, nf = normalize(catalog(nm))
            for j in range(2):
                for k in range(2):
                    assert (nf.A[j][k] - nf.B[j][k]).is_zero()
            assert nf.B[0][0].is_real()
            assert all(x.is_zero() for x in nf.v)
            assert all(x.is_zero() for x in nf.mu)
            assert nf.sigma.is_zero()

    def test_dilation_conjugate_of_linear(self):
        psi = source_automorphism(random_params("source", 3, 1, 77))
        M = compose(catalog("H1"), psi, lazy=True)
        _, nf = normalize(M)
        assert classify(nf) == LINEAR

    def test_witness_composition_reproduces_map(self):
        # H_norm == gamma o H o psi as series, for a conjugated germ
        M = conjugated("H4", 123)
        Hn, nf = normalize(M)
        rebuilt = compose(nf.gamma, compose(M, nf.psi, lazy=True), lazy=True)
        a = Hn.comp_series(3)
        b = rebuilt.comp_series(3)
        assert all(x.terms == y.terms for x, y in zip(a, b))

    def test_rejects_nonzero_base(self):
        with pytest.raises(NormalizationError):
            normalize(catalog("P2"))

    def test_n4_collapse(self):
        for nm in ("ell_n", "I_n"):
            for (n, l) in [(4, 1), (4, 2)]:
                M = conjugated(nm, 5, n=n, l=l)
                _, nf = normalize(M)
                assert all(x.is_zero() for row in nf.A for x in row)
                assert all(x.is_zero() for row in nf.B for x in row)


class TestClassify:
    def test_totality_on_canonicals(self):
        for nm, want in CLASS_OF_CANONICAL.items():
            if nm in ("ell_n", "I_n"):
                _, nf = normalize(catalog(nm, 4, 1))
            else:
                _, nf = normalize(catalog(nm))
            assert classify(nf) == want

    def test_spec_examples(self):
        _, nf = normalize(catalog("irrational", 3, 1, lam=gq(1, 2)))
        assert classify(nf) == IRRATIONAL
        _, nf = normalize(catalog("H_A", alpha=3, beta=3))
        assert classify(nf) == RANK1_POS
        _, nf = normalize(catalog("H_A", alpha=1, beta=2))
        assert classify(nf) == RANK2_ELL

    def test_round_trip_small(self):
        for nm, want in [("H2", RANK1_POS), ("H3", RANK1_NEG),
                         ("H4", RANK2_HYP), ("H5", RANK2_ELL),
                         ("H1", LINEAR), ("I", IRRATIONAL)]:
            for seed in range(3):
                _, nf = normalize(conjugated(nm, seed + 50))
                assert classify(nf) == want

    def test_sign_flipped_twin_rejected(self):
        _, nf = normalize(catalog("H_A", alpha=-2, beta=0))
        with pytest.raises(ParameterError):
            classify(nf)


class TestWitness:
    def test_spec_examples(self):
        # alpha=2, beta=0: the hyperbolic pair with r=1, t=0 (identity V)
        _, nf = normalize(catalog("H_A", alpha=2, beta=0))
        label, psi, gam, exact = equivalence_witness(nf)
        assert label == RANK2_HYP and exact
        J = psi.jet_expand(1)
        assert (J.coeff(0, {"z1": 1}) - 1).is_zero()
        # alpha=beta=8: dilation with s=2
        _, nf = normalize(catalog("H_A", alpha=8, beta=8))
        label, psi, gam, exact = equivalence_witness(nf)
        assert label == RANK1_POS and exact
        J = psi.jet_expand(1)
        assert (J.coeff(0, {"z1": 1}) - 2).is_zero()
        # alpha=0, beta=2: already canonical
        _, nf = normalize(catalog("H_A", alpha=0, beta=2))
        label, psi, gam, exact = equivalence_witness(nf)
        assert label == RANK2_ELL and exact
        J = psi.jet_expand(1)
        assert (J.coeff(0, {"z1": 1}) - 1).is_zero()

    @pytest.mark.parametrize("ab", [(2, 0), (8, 8), (-2, -2), (-8, 8),
                                    (4, -4), (0, 2), (0, -8), (5, -3)])
    def test_exact_witnesses_compose(self, ab):
        a, b = ab
        HA = catalog("H_A", alpha=a, beta=b)
        _, nf = normalize(HA)
        label, psi, gam, exact = equivalence_witness(nf)
        assert exact
        target = {RANK1_POS: "H2", RANK1_NEG: "H3",
                  RANK2_HYP: "H4", RANK2_ELL: "H5"}[label]
        C = compose(gam, compose(HA, invert(psi), lazy=False), lazy=False)
        HT = catalog(target)
        assert all((x - y).is_zero() for x, y in zip(C.comps, HT.comps))

    @pytest.mark.parametrize("ab", [(3, 3), (1, 2), (2, 1), (7, -3)])
    def test_numeric_witnesses_certify(self, ab):
        a, b = ab
        HA = catalog("H_A", alpha=a, beta=b)
        _, nf = normalize(HA)
        label, params, _, exact = equivalence_witness(nf)
        assert not exact
        assert numeric_witness_residual(HA, params, label, samples=20) < 1e-10
