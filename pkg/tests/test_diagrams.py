"""Weights, cup/cap diagrams, orientations and degrees."""

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from arckit import (
    CapDiagram,
    CupDiagram,
    OrientedCircleDiagram,
    Weight,
    associated_cup_diagram,
    bruhat_leq,
    length,
    weights_in_block,
)
from arckit.diagrams import cap_oriented, cup_oriented


def weight_strategy(m, n):
    return st.permutations("^" * n + "v" * m).map(lambda s: Weight.parse("".join(s)))


class TestWeight:
    def test_parse_str_roundtrip(self):
        for text in ("^vv", "vv^^v", "v^v^"):
            assert str(Weight.parse(text)) == text

    def test_block_counts(self):
        for m, n in ((2, 1), (3, 1), (2, 2), (3, 2), (4, 2)):
            ws = weights_in_block(m, n)
            assert len(ws) == comb(m + n, n)
            assert len(set(map(str, ws))) == len(ws)
            assert all(w.block == (m, n) for w in ws)

    def test_j_index_roundtrip(self):
        for m in (2, 3, 4):
            for j in range(m + 1):
                w = Weight.from_j(m, j)
                assert w.block == (m, 1)
                assert w.to_j() == j

    def test_kl_index_roundtrip(self):
        for m in (2, 3):
            for w in weights_in_block(m, 2):
                k, l = w.to_kl()
                assert 0 <= l < k <= m + 1
                assert Weight.from_kl(m, k, l) == w

    def test_kl_out_of_range(self):
        with pytest.raises(ValueError):
            Weight.from_kl(2, 2, 2)
        with pytest.raises(ValueError):
            Weight.from_kl(2, 4, 1)

    @settings(max_examples=30, deadline=None)
    @given(weight_strategy(3, 2))
    def test_swap_is_involutive_on_down_up(self, w):
        for i in range(len(w) - 1):
            if w.has_down_up_at(i):
                assert w.swap(i).swap(i) == w


class TestBruhat:
    def test_zero_weight_is_maximum(self):
        for m, n in ((2, 1), (3, 1), (2, 2), (3, 2)):
            top = Weight.zero(m, n)
            assert all(bruhat_leq(w, top) for w in weights_in_block(m, n))

    def test_partial_order(self):
        ws = weights_in_block(2, 2)
        for a in ws:
            assert bruhat_leq(a, a)
            for b in ws:
                if bruhat_leq(a, b) and bruhat_leq(b, a):
                    assert a == b
                for c in ws:
                    if bruhat_leq(a, b) and bruhat_leq(b, c):
                        assert bruhat_leq(a, c)

    def test_strictly_compatible_with_length(self):
        ws = weights_in_block(3, 2)
        for a in ws:
            for b in ws:
                if bruhat_leq(a, b) and a != b:
                    assert length(a) > length(b)


class TestDiagrams:
    def test_cup_parse_roundtrip(self):
        text = "cups=(0,3);(1,2) rays=4"
        cup = CupDiagram.parse(text, size=5)
        assert str(cup) == text
        assert cup.mirror().mirror() == cup

    def test_oriented_diagram_roundtrip(self):
        text = "cups=(0,3);(1,2) rays=4 | vv^^v | cups=(1,2);(3,4) rays=0"
        d = OrientedCircleDiagram.parse(text)
        assert str(d) == text

    def test_crossing_cups_rejected(self):
        with pytest.raises(ValueError):
            CupDiagram.parse("cups=(0,2);(1,3) rays=", size=4)

    def test_orientation_mismatch_rejected(self):
        with pytest.raises(ValueError):
            OrientedCircleDiagram.parse(
                "cups=(0,1) rays=2 | ^^v | cups=(0,1) rays=2"
            )

    def test_associated_cup_diagram_is_oriented_degree_zero(self):
        for m, n in ((2, 1), (2, 2), (3, 2)):
            for w in weights_in_block(m, n):
                cup = associated_cup_diagram(w)
                assert cup_oriented(cup, w)
                assert cap_oriented(cup.mirror(), w)
                d = OrientedCircleDiagram(cup, w, cup.mirror())
                assert d.degree == 0

    def test_degree_counts_clockwise_cups_and_caps(self):
        # one anticlockwise circle (degree 0) vs one clockwise circle
        low = OrientedCircleDiagram.parse("cups=(0,1) rays= | v^ | cups=(0,1) rays=")
        high = OrientedCircleDiagram.parse("cups=(0,1) rays= | ^v | cups=(0,1) rays=")
        assert low.degree == 0
        assert high.degree == 2
