"""The minimal A-infinity model on the Ext algebra: splitting axioms,
higher products, vanishing theorems and Stasheff identities."""

import pytest

from arckit import (
    Weight,
    lambda_n,
    m_n,
    stasheff_check,
    vanishing_report,
    weights_in_block,
)
from arckit.ainfty import (
    composable_tuples,
    lambda_degree_bound_holds,
)
from arckit.extalg import compose
from tables import (
    FLAVOUR_TWINS,
    NONZERO_FAMILIES,
    PATTERN_ROWS,
    ZERO_ROWS,
    chain_kls,
)


class TestSplittingAxioms:
    def test_generic_splitting_identity(self, split_21_generic):
        # 1 - Pi = dQ + Qd on every bigraded hom piece
        ws = weights_in_block(2, 1)
        for lam in ws:
            for mu in ws:
                split_21_generic.verify(lam, mu)

    def test_canonical_splitting_identity(self, split_22_canonical):
        ws = weights_in_block(2, 2)
        for lam in ws:
            for mu in ws:
                split_22_canonical.verify(lam, mu)

    def test_pi_q_compose_to_zero(self, split_22_canonical):
        split = split_22_canonical
        for a1, a2 in composable_tuples(split.all_h_classes(), 2)[:40]:
            q = split.q(compose(a1, a2))
            if not q.is_zero():
                assert split.pi(q).is_zero()


class TestM2:
    def test_m2_is_the_ext_product(self, split_22_canonical):
        split = split_22_canonical
        classes = split.all_h_classes()
        for a1, a2 in composable_tuples(classes, 2):
            got = m_n(split, (a1, a2))
            want = split.pi(compose(a1, a2))
            assert (got - want).is_zero()


class TestFirstVanishing:
    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_no_higher_products_in_n1_blocks(self, N, request):
        split = request.getfixturevalue(f"split_{N}1_generic")
        report = vanishing_report(split, 6)
        assert report["q_lambda2_zero"]
        for arity in range(3, 7):
            assert report["per_arity"][arity]["nonzero_tuples"] == []


class TestSecondVanishing:
    @pytest.mark.parametrize("m", [2, 3])
    def test_canonical_report(self, m, request):
        split = request.getfixturevalue(f"split_{m}2_canonical")
        report = vanishing_report(split, 5)
        assert report["q_lambda3_zero"]
        assert report["q_lambda2_products_zero"]
        assert report["per_arity"][3]["nonzero_tuples"] != []
        assert report["per_arity"][3]["max_abs_coefficient"] == 1
        assert report["per_arity"][4]["nonzero_tuples"] == []
        assert report["per_arity"][5]["nonzero_tuples"] == []


class TestM3Pattern:
    @pytest.mark.parametrize("m", [2, 3])
    def test_zero_rows(self, m, request):
        """Label triples the closed pattern fixes to zero give m_3 = 0."""
        split = request.getfixturevalue(f"split_{m}2_canonical")
        classes = split.all_h_classes()
        checked = 0
        for chain in composable_tuples(classes, 3):
            labels = tuple(c.label for c in chain)
            vals = chain_kls(chain)
            if any(
                labels == row and cond(*vals) for row, cond in ZERO_ROWS
            ):
                assert split.pi_coefficients(lambda_n(split, chain)) == {}
                checked += 1
        assert checked > 0

    @pytest.mark.parametrize("m", [2, 3])
    def test_every_nonzero_m3_is_a_signed_g_or_k(self, m, request):
        split = request.getfixturevalue(f"split_{m}2_canonical")
        classes = split.all_h_classes()
        observed = {}
        for chain in composable_tuples(classes, 3):
            coeffs = split.pi_coefficients(lambda_n(split, chain))
            if not coeffs:
                continue
            assert len(coeffs) == 1
            ((label, _, _, _), value), = coeffs.items()
            assert label in ("G", "K")
            assert abs(value) == 1
            key = (tuple(c.label for c in chain), label)
            observed[key] = observed.get(key, 0) + 1
        assert observed == NONZERO_FAMILIES[(m, 2)]

    def test_pattern_rows_covered(self, split_32_canonical):
        """Each closed pattern row is realized on the (3|2) block, either
        literally or through its documented one-step flavour twin."""
        split = split_32_canonical
        classes = split.all_h_classes()
        nonzero_labels = set()
        for chain in composable_tuples(classes, 3):
            coeffs = split.pi_coefficients(lambda_n(split, chain))
            if coeffs:
                ((label, _, _, _), _), = coeffs.items()
                nonzero_labels.add((tuple(c.label for c in chain), label))
        for row, _, result in PATTERN_ROWS:
            realized = row if (row, result) in nonzero_labels else FLAVOUR_TWINS.get(row)
            assert realized is not None, row
            assert (realized, result) in nonzero_labels, row

    def test_special_triple_nonzero(self, split_32_canonical):
        # the (J, Id, Ftilde) family carries a nonzero m_3
        split = split_32_canonical
        classes = split.all_h_classes()
        hits = [
            chain
            for chain in composable_tuples(classes, 3)
            if tuple(c.label for c in chain) == ("J", "Id", "Ftilde")
            and split.pi_coefficients(lambda_n(split, chain))
        ]
        assert hits
        for chain in hits:
            coeffs = split.pi_coefficients(lambda_n(split, chain))
            ((label, _, _, _), value), = coeffs.items()
            assert label == "K" and abs(value) == 1


class TestGeneralVanishing:
    @pytest.mark.parametrize("m", [2, 3])
    def test_no_composable_chains_beyond_the_bound(self, m, request):
        # without idempotents no chain even reaches arity 7, so every
        # m_l with l > 6 vanishes on non-degenerate arguments outright
        split = request.getfixturevalue(f"split_{m}2_generic")
        classes = split.all_h_classes(include_idempotents=False)
        for arity in (7, 8):
            assert composable_tuples(classes, arity) == []

    def test_high_arity_vanishes_on_idempotent_padded_chains(
        self, split_22_generic
    ):
        import random

        split = split_22_generic
        classes = split.all_h_classes(include_idempotents=True)
        chains = composable_tuples(classes, 7)
        rng = random.Random(20240823)
        for chain in rng.sample(chains, 25):
            assert m_n(split, chain).is_zero()

    def test_degree_bound_forces_vanishing(self, split_22_canonical):
        split = split_22_canonical
        classes = split.all_h_classes()
        for chain in composable_tuples(classes, 3):
            if not lambda_degree_bound_holds(chain):
                assert lambda_n(split, chain).is_zero()


class TestStasheff:
    @pytest.mark.parametrize(
        "fixture",
        [
            "split_21_generic",
            "split_31_generic",
            "split_22_canonical",
            "split_22_generic",
        ],
    )
    def test_identities_to_arity_five(self, fixture, request):
        split = request.getfixturevalue(fixture)
        report = stasheff_check(split, 5)
        assert report["violations"] == []
        assert report["checked"] > 0
