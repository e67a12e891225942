"""Drinfel'd twists and twisted Hopf data.

A twist is an invertible rank-2 tensor F over the envelope, of the
shape 1(x)1 + higher h-order, satisfying the 2-cocycle and counit
normalization conditions.  Twisting replaces the coproduct by
cop_F(xi) = F cop(xi) Finv, the antipode by S_F(xi) = beta S(xi)
betainv with beta = mu(id (x) S)(F), and the R-matrix by
R_F = F21 R Finv.

Exponential twists exp(B) of a bivector B with pairwise commuting legs
of positive h-order are built by the truncated exponential series; the
inverse is exp(-B).  Explicit tensors are also accepted (the
falsification fixtures use one with a broken cocycle) with the inverse
computed by a terminating Neumann series.
"""

from math import factorial

from .errors import (
    BetaNotInvertible,
    CocycleViolation,
    NonCommutingLegs,
    RankMismatch,
    WrongRing,
)
from .hopf import TensorElement, TriangularStructure, check_triangular
from .report import Report


def _tensor_min_h_order(t):
    if not t.terms:
        return t.lie.ring.order
    return min(c.min_h_order() for c in t.terms.values())


def _tensor_series_inverse(t):
    """Inverse of unit + O(h) rank-2 tensors by Neumann series."""
    unit = TensorElement.unit(t.lie, t.rank)
    n = unit - t
    if _tensor_min_h_order(n) < 1:
        raise WrongRing("tensor is not 1(x)1 + O(h); no series inverse")
    out, term = unit, unit
    for _ in range(1, t.lie.ring.order):
        term = term * n
        if term.is_zero():
            break
        out = out + term
    return out


class Twist:
    """Invertible normalized rank-2 tensor; carries its exact inverse."""

    __slots__ = ("lie", "F", "Finv")

    def __init__(self, lie, F, Finv):
        if F.rank != 2 or Finv.rank != 2:
            raise RankMismatch("twist must have rank 2")
        unit = TensorElement.unit(lie, 2)
        assert F * Finv == unit and Finv * F == unit, "stored inverse is wrong"
        self.lie = lie
        self.F = F
        self.Finv = Finv

    @classmethod
    def trivial(cls, lie):
        unit = TensorElement.unit(lie, 2)
        return cls(lie, unit, unit)

    @classmethod
    def from_tensor(cls, lie, F):
        return cls(lie, F, _tensor_series_inverse(F))

    def swapped(self):
        """Roles of F and Finv exchanged (wrong transport direction;
        used by the falsification harness)."""
        return Twist(self.lie, self.Finv, self.F)

    @property
    def is_trivial(self):
        return self.F == TensorElement.unit(self.lie, 2)

    def __repr__(self):
        return "Twist(F=%r)" % (self.F,)


def exp_twist(lie, bivector):
    """exp(bivector) as a Twist; the bivector must be O(h) with pairwise
    commuting legs, so the series truncates and inverts exactly."""
    if not lie.ring.is_series:
        raise WrongRing("exponential twists live over the series ring")
    if bivector.rank != 2:
        raise RankMismatch("bivector must have rank 2")
    if _tensor_min_h_order(bivector) < 1:
        raise WrongRing("bivector must be of positive h-order")
    involved = set()
    for key in bivector.terms:
        for leg in key:
            for i, k in enumerate(leg):
                if k:
                    involved.add(i)
    for i in sorted(involved):
        for j in sorted(involved):
            if i < j and lie.bracket_components(i, j):
                raise NonCommutingLegs((lie.generators[i], lie.generators[j]))

    def exp_series(b):
        out = TensorElement.unit(lie, 2)
        power = TensorElement.unit(lie, 2)
        for k in range(1, lie.ring.order):
            power = power * b
            if power.is_zero():
                break
            inv_fact = lie.ring.scalar(factorial(k)).inverse()
            out = out + power.scale(inv_fact)
        return out

    return Twist(lie, exp_series(bivector), exp_series(-bivector))


def check_cocycle(twist):
    """2-cocycle, counit normalization, and the inverse cocycle law."""
    lie = twist.lie
    F, Finv = twist.F, twist.Finv
    rep = Report("twist-cocycle")

    lhs = F.embed(3, (0, 1)) * F.coproduct_leg(0)
    rhs = F.embed(3, (1, 2)) * F.coproduct_leg(1)
    rep.add(
        "cocycle",
        "(F (x) 1)(cop (x) id)(F) = (1 (x) F)(id (x) cop)(F)",
        lhs == rhs,
        None if lhs == rhs else {"lhs": repr(lhs), "rhs": repr(rhs)},
    )

    unit1 = TensorElement.unit(lie, 1)
    left = F.counit_leg(0)
    right = F.counit_leg(1)
    ok = left == unit1 and right == unit1
    rep.add(
        "normalization",
        "(eps (x) id)(F) = 1 = (id (x) eps)(F)",
        ok,
        None if ok else {"eps-left": repr(left), "eps-right": repr(right)},
    )

    lhs2 = Finv.coproduct_leg(0) * Finv.embed(3, (0, 1))
    rhs2 = Finv.coproduct_leg(1) * Finv.embed(3, (1, 2))
    rep.add(
        "inverse-cocycle",
        "(cop (x) id)(Finv)(Finv (x) 1) = (id (x) cop)(Finv)(1 (x) Finv)",
        lhs2 == rhs2,
        None if lhs2 == rhs2 else {"lhs": repr(lhs2), "rhs": repr(rhs2)},
    )
    return rep


class TwistedHopfData:
    """Twisted coproduct/antipode/R-matrix of an envelope, with the
    generator tables spelled out."""

    __slots__ = (
        "lie",
        "twist",
        "beta",
        "beta_inv",
        "triangular",
        "coproduct_table",
        "antipode_table",
    )

    def __init__(self, lie, twist, base_triangular=None):
        self.lie = lie
        self.twist = twist
        if base_triangular is None:
            base_triangular = TriangularStructure(lie)
        F, Finv = twist.F, twist.Finv
        # beta = mu (id (x) S) F
        self.beta = F.antipode_leg(1).contract()
        try:
            self.beta_inv = self.beta.series_inverse()
        except BetaNotInvertible:
            raise
        if (
            self.beta * self.beta_inv != lie.unit()
            or self.beta_inv * self.beta != lie.unit()
        ):
            raise BetaNotInvertible(repr(self.beta))
        R_F = F.flip() * base_triangular.R * Finv
        R_F_inv = F * base_triangular.Rinv * Finv.flip()
        unit2 = TensorElement.unit(lie, 2)
        if R_F * R_F_inv != unit2 or R_F_inv * R_F != unit2:
            raise CocycleViolation("twisted R-matrix inverse mismatch")
        self.triangular = TriangularStructure(lie, R_F, R_F_inv)
        self.coproduct_table = {
            i: self.coproduct(lie.gen(i)) for i in range(lie.dim)
        }
        self.antipode_table = {
            i: self.antipode(lie.gen(i)) for i in range(lie.dim)
        }

    def coproduct(self, xi):
        return self.twist.F * xi.coproduct() * self.twist.Finv

    def counit(self, xi):
        return xi.counit()

    def antipode(self, xi):
        return self.beta * xi.antipode() * self.beta_inv

    def __repr__(self):
        return "TwistedHopfData(%r)" % (self.twist,)


def twist_hopf(lie, twist, base_triangular=None):
    return TwistedHopfData(lie, twist, base_triangular)


def check_twisted_hopf(data, depth=3):
    """Hopf axioms for the twisted structure maps plus the full
    triangular suite for R_F against cop_F."""
    lie = data.lie
    rep = Report("twisted-hopf", {"depth": depth})
    monos = lie.monomials_up_to(depth)

    ok, bad = True, None
    for e in monos:
        xi = lie.monomial(e)
        cop = data.coproduct(xi)
        lhs = cop.coproduct_leg(0, data.coproduct)
        rhs = cop.coproduct_leg(1, data.coproduct)
        if lhs != rhs:
            ok, bad = False, {"monomial": repr(xi)}
            break
    rep.add("coassociativity", "(cop_F (x) id)cop_F = (id (x) cop_F)cop_F",
            ok, bad)

    ok, bad = True, None
    for e in monos:
        xi = lie.monomial(e)
        cop = data.coproduct(xi)
        if cop.counit_leg(0).as_hopf() != xi or cop.counit_leg(1).as_hopf() != xi:
            ok, bad = False, {"monomial": repr(xi)}
            break
    rep.add("counit", "(eps (x) id)cop_F = id = (id (x) eps)cop_F", ok, bad)

    ok, bad = True, None
    for e in monos:
        xi = lie.monomial(e)
        cop = data.coproduct(xi)
        target = lie.unit(xi.counit())
        lhs = cop.map_leg(0, lambda m: data.antipode(lie.monomial(m))).contract()
        rhs = cop.map_leg(1, lambda m: data.antipode(lie.monomial(m))).contract()
        if lhs != target or rhs != target:
            ok, bad = False, {"monomial": repr(xi), "lhs": repr(lhs),
                              "rhs": repr(rhs)}
            break
    rep.add("antipode", "mu(S_F (x) id)cop_F = eta eps = mu(id (x) S_F)cop_F",
            ok, bad)

    tri_rep = check_triangular(
        lie, data.triangular, depth=depth, coproduct=data.coproduct
    )
    rep.extend(tri_rep)
    return rep


def compose_twists(second, first, base_triangular=None, depth=2):
    """Compose: apply `first`, then `second` (a twist of the
    first-twisted structure).  Returns (composite, report)."""
    lie = second.lie
    assert first.lie is lie
    data1 = TwistedHopfData(lie, first, base_triangular)
    rep = Report("compose-twists")

    F2 = second.F
    lhs = F2.embed(3, (0, 1)) * F2.coproduct_leg(0, data1.coproduct)
    rhs = F2.embed(3, (1, 2)) * F2.coproduct_leg(1, data1.coproduct)
    rep.add(
        "cocycle-over-twisted",
        "(F2 (x) 1)(cop_F1 (x) id)(F2) = (1 (x) F2)(id (x) cop_F1)(F2)",
        lhs == rhs,
        None if lhs == rhs else {"lhs": repr(lhs), "rhs": repr(rhs)},
    )

    composite = Twist(lie, second.F * first.F, first.Finv * second.Finv)
    data12 = TwistedHopfData(lie, composite, base_triangular)

    ok, bad = True, None
    for i in range(lie.dim):
        xi = lie.gen(i)
        sequential = second.F * data1.coproduct(xi) * second.Finv
        if sequential != data12.coproduct(xi):
            ok, bad = False, {"generator": lie.generators[i]}
            break
    rep.add(
        "sequential-matches-composite",
        "F2 cop_F1(x) F2inv = cop_(F2 F1)(x) on generators",
        ok,
        bad,
    )
    return composite, rep
