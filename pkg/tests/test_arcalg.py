"""The arc algebra: basis, surgery multiplication, traces, functors."""

import random
from itertools import product as iproduct

import pytest

from arckit import (
    AlgebraElement,
    Matching,
    OrientedCircleDiagram,
    Weight,
    basis,
    functor_image,
    idempotent,
    multiply,
    surgery_trace,
    weights_in_block,
)
from arckit.arcalg import algebra_dimension, hom_basis


def _elt(d):
    return AlgebraElement.from_diagram(d)


class TestBasis:
    def test_dimension_formula(self):
        for m, n in ((2, 1), (3, 1), (2, 2), (3, 2)):
            assert len(basis(m, n)) == algebra_dimension(m, n)

    def test_basis_degrees_nonnegative(self):
        assert all(d.degree >= 0 for d in basis(2, 2))

    def test_hom_basis_partitions_basis(self):
        ws = weights_in_block(2, 2)
        total = sum(len(hom_basis(a, b)) for a in ws for b in ws)
        assert total == len(basis(2, 2))


class TestIdempotents:
    @pytest.mark.parametrize("m,n", [(2, 1), (2, 2), (3, 2)])
    def test_orthogonal_idempotents(self, m, n):
        ws = weights_in_block(m, n)
        for a in ws:
            ea = idempotent(a)
            assert multiply(ea, ea) == ea
            for b in ws:
                if a != b:
                    assert multiply(ea, idempotent(b)).is_zero()

    @pytest.mark.parametrize("m,n", [(2, 1), (2, 2)])
    def test_idempotents_complete(self, m, n):
        # the sum of all e_lambda acts as the unit on every basis vector
        ws = weights_in_block(m, n)
        unit = AlgebraElement.zero()
        for w in ws:
            unit = unit + idempotent(w)
        for d in basis(m, n):
            x = _elt(d)
            assert multiply(unit, x) == x
            assert multiply(x, unit) == x


class TestMultiplication:
    def test_product_is_homogeneous_additive_degree(self):
        for d1 in basis(2, 1):
            for d2 in basis(2, 1):
                p = multiply(_elt(d1), _elt(d2))
                if not p.is_zero():
                    assert p.degrees() == {d1.degree + d2.degree}

    def test_associativity_exhaustive_small_block(self):
        bs = [_elt(d) for d in basis(2, 1)]
        for x, y, z in iproduct(bs, repeat=3):
            assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))

    def test_associativity_sampled_large_block(self):
        rng = random.Random(20240817)
        bs = [_elt(d) for d in basis(3, 2)]
        for _ in range(300):
            x, y, z = (rng.choice(bs) for _ in range(3))
            assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))

    def test_surgery_order_independence(self):
        rng = random.Random(5)
        bs = [_elt(d) for d in basis(3, 2)]

        def rightmost(pairs):
            return pairs[-1]

        def randomized(pairs):
            return rng.choice(pairs)

        for _ in range(200):
            x, y = rng.choice(bs), rng.choice(bs)
            reference = multiply(x, y)
            assert multiply(x, y, pair_picker=rightmost) == reference
            assert multiply(x, y, pair_picker=randomized) == reference

    def test_worked_product(self):
        x = OrientedCircleDiagram.parse(
            "cups=(0,3);(1,2) rays=4 | vv^^v | cups=(1,2);(3,4) rays=0"
        )
        y = OrientedCircleDiagram.parse(
            "cups=(1,2);(3,4) rays=0 | vv^^v | cups=(0,3);(1,2) rays=4"
        )
        expected = OrientedCircleDiagram.parse(
            "cups=(0,3);(1,2) rays=4 | ^v^vv | cups=(0,3);(1,2) rays=4"
        )
        assert multiply(_elt(x), _elt(y)) == _elt(expected)

    def test_mismatched_middle_is_zero(self):
        x = OrientedCircleDiagram.parse("cups=(0,1) rays=2 | v^v | cups=(0,1) rays=2")
        y = OrientedCircleDiagram.parse("cups=(1,2) rays=0 | vv^ | cups=(1,2) rays=0")
        assert multiply(_elt(x), _elt(y)).is_zero()


class TestSurgeryTrace:
    def test_worked_trace(self):
        x = OrientedCircleDiagram.parse(
            "cups=(0,3);(1,2) rays=4 | vv^^v | cups=(1,2);(3,4) rays=0"
        )
        y = OrientedCircleDiagram.parse(
            "cups=(1,2);(3,4) rays=0 | vv^^v | cups=(0,3);(1,2) rays=4"
        )
        trace = surgery_trace(x, y)
        assert len(trace) == 4
        assert not trace[0].collapsed
        assert trace[-1].collapsed
        assert trace[-1].annotation == "result"
        # the final panel carries the product's labels
        assert "".join(trace[-1].bottom_labels) == "^v^vv"

    def test_trace_rejects_mismatch(self):
        x = OrientedCircleDiagram.parse("cups=(0,1) rays=2 | v^v | cups=(0,1) rays=2")
        y = OrientedCircleDiagram.parse("cups=(1,2) rays=0 | vv^ | cups=(1,2) rays=0")
        with pytest.raises(ValueError):
            surgery_trace(x, y)


class TestFunctor:
    @pytest.mark.parametrize("i", [0, 1, 2, 3])
    def test_functor_preserves_multiplication(self, i):
        # the geometric-bimodule functor embeds Λ₂¹ morphisms into Λ₃²
        t = Matching("t", i, (3, 2))
        bs = [_elt(d) for d in basis(2, 1)]
        for x in bs:
            for y in bs:
                left = functor_image(t, multiply(x, y))
                right = multiply(functor_image(t, x), functor_image(t, y))
                assert left == right
