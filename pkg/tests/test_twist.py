"""Twist checks: exponential series, cocycle laws, twisted Hopf data.

Frozen expected tensors are computed by hand (independent expansion of
the exponential series and of F21 Finv) before comparing with the
engine.
"""

from fractions import Fraction

import pytest

from braidcalc.errors import NonCommutingLegs, WrongRing
from braidcalc.hopf import LieAlgebra, TensorElement, check_hopf
from braidcalc.ring import RATIONAL, Ring
from braidcalc.twist import (
    Twist,
    check_cocycle,
    check_twisted_hopf,
    compose_twists,
    exp_twist,
    twist_hopf,
)


@pytest.fixture
def lie3():
    """Abelian translations over the order-3 series ring."""
    return LieAlgebra(Ring("series", 3), ("P1", "P2"))


@pytest.fixture
def moyal3(lie3):
    ring = lie3.ring
    bivector = TensorElement.from_factors(lie3.gen(0), lie3.gen(1)).scale(
        ring.h()
    )
    return exp_twist(lie3, bivector)


def h(ring, k=1):
    return ring.h(k)


class TestExpTwist:
    def test_frozen_exponential_series(self, lie3, moyal3):
        # exp(h P1 (x) P2) = 1(x)1 + h P1(x)P2 + h^2/2 P1^2(x)P2^2 mod h^3
        ring = lie3.ring
        one = lie3.unit()
        p1, p2 = lie3.gen(0), lie3.gen(1)
        expect = (
            TensorElement.from_factors(one, one)
            + TensorElement.from_factors(p1, p2).scale(h(ring))
            + TensorElement.from_factors(p1 * p1, p2 * p2).scale(
                h(ring, 2) * ring.scalar(Fraction(1, 2))
            )
        )
        assert moyal3.F == expect

    def test_inverse_is_exp_of_negated(self, lie3, moyal3):
        ring = lie3.ring
        neg = TensorElement.from_factors(lie3.gen(0), lie3.gen(1)).scale(
            -h(ring)
        )
        assert moyal3.Finv == exp_twist(lie3, neg).F
        unit = TensorElement.unit(lie3, 2)
        assert moyal3.F * moyal3.Finv == unit

    def test_wrong_ring_rejected(self):
        lie = LieAlgebra(RATIONAL, ("P1", "P2"))
        biv = TensorElement.from_factors(lie.gen(0), lie.gen(1))
        with pytest.raises(WrongRing):
            exp_twist(lie, biv)

    def test_zero_order_bivector_rejected(self, lie3):
        biv = TensorElement.from_factors(lie3.gen(0), lie3.gen(1))
        with pytest.raises(WrongRing):
            exp_twist(lie3, biv)

    def test_noncommuting_legs_rejected(self):
        heis = LieAlgebra(Ring("series", 3), ("X1", "X2", "X3"),
                          {(0, 1): {2: 1}})
        biv = TensorElement.from_factors(heis.gen(0), heis.gen(1)).scale(
            heis.ring.h()
        )
        with pytest.raises(NonCommutingLegs):
            exp_twist(heis, biv)


class TestCocycle:
    def test_cocycle_suite_passes(self, moyal3):
        rep = check_cocycle(moyal3)
        assert rep.passed, rep.to_text()

    def test_order4_cocycle(self):
        lie = LieAlgebra(Ring("series", 4), ("P1", "P2"))
        biv = TensorElement.from_factors(lie.gen(0), lie.gen(1)).scale(
            lie.ring.h()
        )
        rep = check_cocycle(exp_twist(lie, biv))
        assert rep.passed, rep.to_text()

    def test_broken_cocycle_detected(self, lie3):
        # 1(x)1 + h P1(x)P1 + h P1^2(x)P2 fails the cocycle identity
        ring = lie3.ring
        p1, p2 = lie3.gen(0), lie3.gen(1)
        F = (
            TensorElement.unit(lie3, 2)
            + TensorElement.from_factors(p1, p1).scale(h(ring))
            + TensorElement.from_factors(p1 * p1, p2).scale(h(ring))
        )
        tw = Twist.from_tensor(lie3, F)
        rep = check_cocycle(tw)
        names = {c.name for c in rep.failing()}
        assert "cocycle" in names


class TestTwistedHopf:
    def test_beta_frozen(self, lie3, moyal3):
        # beta = sum h^k/k! P1^k S(P2^k) = exp(-h P1 P2)
        ring = lie3.ring
        data = twist_hopf(lie3, moyal3)
        p1p2 = lie3.gen(0) * lie3.gen(1)
        expect = (
            lie3.unit()
            - p1p2.scale(h(ring))
            + (p1p2 * p1p2).scale(h(ring, 2) * ring.scalar(Fraction(1, 2)))
        )
        assert data.beta == expect
        assert data.beta * data.beta_inv == lie3.unit()

    def test_abelian_coproduct_untwisted(self, lie3, moyal3):
        # cocommutative + abelian: F cop(xi) Finv = cop(xi)
        data = twist_hopf(lie3, moyal3)
        for e in lie3.monomials_up_to(3):
            xi = lie3.monomial(e)
            assert data.coproduct(xi) == xi.coproduct()

    def test_frozen_twisted_r_matrix(self, lie3, moyal3):
        # R_F = F21 Finv = exp(h P2 (x) P1) exp(-h P1 (x) P2) mod h^3
        ring = lie3.ring
        data = twist_hopf(lie3, moyal3)
        one = lie3.unit()
        p1, p2 = lie3.gen(0), lie3.gen(1)
        half = ring.scalar(Fraction(1, 2))
        expect = (
            TensorElement.from_factors(one, one)
            + TensorElement.from_factors(p2, p1).scale(h(ring))
            - TensorElement.from_factors(p1, p2).scale(h(ring))
            + TensorElement.from_factors(p2 * p2, p1 * p1).scale(h(ring, 2) * half)
            + TensorElement.from_factors(p1 * p1, p2 * p2).scale(h(ring, 2) * half)
            - TensorElement.from_factors(p1 * p2, p1 * p2).scale(h(ring, 2))
        )
        assert data.triangular.R == expect

    def test_full_twisted_suite_order4(self):
        # acceptance-grade instance: N=4, depth 3
        lie = LieAlgebra(Ring("series", 4), ("P1", "P2"))
        biv = TensorElement.from_factors(lie.gen(0), lie.gen(1)).scale(
            lie.ring.h()
        )
        data = twist_hopf(lie, exp_twist(lie, biv))
        rep = check_twisted_hopf(data, depth=3)
        assert rep.passed, rep.to_text()

    def test_nonabelian_twisted_suite(self):
        # Heisenberg twisted along the commuting pair (X1, X3); the
        # twisted coproduct genuinely differs from the untwisted one.
        heis = LieAlgebra(Ring("series", 3), ("X1", "X2", "X3"),
                          {(0, 1): {2: 1}})
        biv = TensorElement.from_factors(heis.gen(0), heis.gen(2)).scale(
            heis.ring.h()
        )
        data = twist_hopf(heis, exp_twist(heis, biv))
        x2 = heis.gen(1)
        assert data.coproduct(x2) != x2.coproduct()
        rep = check_twisted_hopf(data, depth=2)
        assert rep.passed, rep.to_text()
        assert check_hopf(heis, depth=2).passed

    def test_compose_twists_matches_doubled_bivector(self, lie3, moyal3):
        ring = lie3.ring
        composite, rep = compose_twists(moyal3, moyal3)
        assert rep.passed, rep.to_text()
        doubled = TensorElement.from_factors(lie3.gen(0), lie3.gen(1)).scale(
            h(ring) + h(ring)
        )
        assert composite.F == exp_twist(lie3, doubled).F
