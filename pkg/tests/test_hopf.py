"""Envelope and Hopf-structure checks.

The PBW straightening is cross-checked against an independent
worklist-based rewriter kept here in the tests; expected values for
specific products/coproducts are frozen by hand.
"""

import random

import pytest

from braidcalc.errors import JacobiViolation
from braidcalc.hopf import (
    LieAlgebra,
    TensorElement,
    TriangularStructure,
    check_hopf,
    check_triangular,
)
from braidcalc.ring import RATIONAL, Ring


# =====================================================================
# fixtures
# =====================================================================


@pytest.fixture
def abelian2():
    return LieAlgebra(RATIONAL, ("P1", "P2"))


@pytest.fixture
def heisenberg():
    # [X1, X2] = X3, X3 central
    return LieAlgebra(RATIONAL, ("X1", "X2", "X3"), {(0, 1): {2: 1}})


@pytest.fixture
def sl2():
    # ordered (E, F, H): [E,F] = H, [E,H] = -2E, [F,H] = 2F
    return LieAlgebra(
        RATIONAL,
        ("E", "F", "H"),
        {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}},
    )


# =====================================================================
# independent straightening oracle
# =====================================================================


def straighten_oracle(lie, word):
    """Worklist rewriter on whole words; independent of the engine's
    recursive straightening."""
    ring = lie.ring
    work = [(tuple(word), ring.one())]
    done = {}
    while work:
        w, c = work.pop()
        descent = None
        for p in range(len(w) - 1):
            if w[p] > w[p + 1]:
                descent = p
                break
        if descent is None:
            done[w] = done.get(w, ring.zero()) + c
            continue
        p = descent
        a, b = w[p], w[p + 1]
        work.append((w[:p] + (b, a) + w[p + 2:], c))
        for k, s in lie.bracket_components(a, b).items():
            work.append((w[:p] + (k,) + w[p + 2:], c * s))
    out = {}
    for w, c in done.items():
        if c.is_zero():
            continue
        exp = [0] * lie.dim
        for i in w:
            exp[i] += 1
        out[tuple(exp)] = c
    return out


class TestStraightening:
    def test_frozen_heisenberg_descent(self, heisenberg):
        # x2 x1 = x1 x2 - x3
        got = heisenberg.normalize_word((1, 0))
        one = RATIONAL.one()
        assert got == {(1, 1, 0): one, (0, 0, 1): -one}

    def test_frozen_central_factor_passes_through(self, heisenberg):
        # x3 x2 x1 = x1 x2 x3 - x3^2
        got = heisenberg.normalize_word((2, 1, 0))
        one = RATIONAL.one()
        assert got == {(1, 1, 1): one, (0, 0, 2): -one}

    def test_matches_oracle_on_random_words(self, heisenberg, sl2):
        rng = random.Random(17)
        for lie in (heisenberg, sl2):
            for _ in range(150):
                word = tuple(
                    rng.randrange(lie.dim) for _ in range(rng.randint(0, 5))
                )
                assert lie.normalize_word(word) == straighten_oracle(lie, word)

    def test_product_associative_random(self, sl2):
        rng = random.Random(23)
        monos = sl2.monomials_up_to(2)
        for _ in range(60):
            a = sl2.monomial(monos[rng.randrange(len(monos))])
            b = sl2.monomial(monos[rng.randrange(len(monos))])
            c = sl2.monomial(monos[rng.randrange(len(monos))])
            assert (a * b) * c == a * (b * c)

    def test_jacobi_violation_rejected(self):
        # [A,[B,C]] + [B,[C,A]] + [C,[A,B]] = [A,B] - [B,A] + 0 = 2C != 0
        with pytest.raises(JacobiViolation):
            LieAlgebra(
                RATIONAL,
                ("A", "B", "C"),
                {(0, 1): {2: 1}, (0, 2): {0: 1}, (1, 2): {1: 1}},
            )


class TestCoproduct:
    def test_frozen_square_coproduct(self, abelian2):
        # cop(P1^2) = P1^2 (x) 1 + 2 P1 (x) P1 + 1 (x) P1^2
        xi = abelian2.monomial((2, 0))
        got = xi.coproduct()
        one = RATIONAL.one()
        expect = {
            ((2, 0), (0, 0)): one,
            ((1, 0), (1, 0)): RATIONAL.scalar(2),
            ((0, 0), (2, 0)): one,
        }
        assert got.terms == expect

    def test_primitive_generators(self, heisenberg):
        for i in range(3):
            x = heisenberg.gen(i)
            cop = x.coproduct()
            expect = TensorElement.from_factors(
                x, heisenberg.unit()
            ) + TensorElement.from_factors(heisenberg.unit(), x)
            assert cop == expect
            assert x.counit().is_zero()
            assert x.antipode() == -x

    def test_antipode_reverses_with_sign(self, heisenberg):
        # S(x1 x2) = x2 x1 = x1 x2 - x3
        xi = heisenberg.monomial((1, 1, 0))
        one = RATIONAL.one()
        assert xi.antipode().terms == {(1, 1, 0): one, (0, 0, 1): -one}


class TestTensorLegs:
    def test_embed_and_permute(self, abelian2):
        p1, p2 = abelian2.gen(0), abelian2.gen(1)
        t = TensorElement.from_factors(p1, p2)
        t13 = t.embed(3, (0, 2))
        expect = TensorElement.from_factors(p1, abelian2.unit(), p2)
        assert t13 == expect
        assert t.flip() == TensorElement.from_factors(p2, p1)

    def test_legwise_multiplication_straightens(self, heisenberg):
        x1, x2 = heisenberg.gen(0), heisenberg.gen(1)
        a = TensorElement.from_factors(x2, heisenberg.unit())
        b = TensorElement.from_factors(x1, heisenberg.unit())
        prod = a * b
        # leg 0 is x2 x1 = x1 x2 - x3
        expect = TensorElement.from_factors(
            x1 * x2 - heisenberg.gen(2), heisenberg.unit()
        )
        assert prod == expect


class TestSuites:
    def test_check_hopf_passes(self, abelian2, heisenberg, sl2):
        for lie in (abelian2, heisenberg, sl2):
            rep = check_hopf(lie, depth=3)
            assert rep.passed, rep.to_text()

    def test_check_triangular_trivial_r(self, abelian2, heisenberg):
        for lie in (abelian2, heisenberg):
            rep = check_triangular(lie, TriangularStructure(lie), depth=3)
            assert rep.passed, rep.to_text()

    def test_corrupted_antipode_fails_only_antipode(self, heisenberg):
        rep = check_hopf(
            heisenberg, depth=3, antipode_table={0: heisenberg.gen(0)}
        )
        failing = {c.name for c in rep.failing()}
        assert failing == {"antipode"}

    def test_series_ring_envelope(self):
        ring = Ring("series", 3)
        lie = LieAlgebra(ring, ("P1", "P2"))
        rep = check_hopf(lie, depth=3)
        assert rep.passed
        x = lie.gen(0).scale(ring.h())
        assert (x * x * x).is_zero()  # h^3 = 0
