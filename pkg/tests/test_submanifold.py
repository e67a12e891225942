"""Quotients by coordinate ideals: reduction oracles, tangency, the
projected calculus and geometry, and twisted projections."""

import pytest

from braidcalc.calculus import Calculus
from braidcalc.errors import (
    AxiomOneUnwitnessed,
    NoBlockSplit,
    NotTangent,
    OracleUnsound,
)
from braidcalc.geometry import Metric, levi_civita
from braidcalc.hopf import LieAlgebra, TensorElement
from braidcalc.modalg import Action, ModuleAlgebra
from braidcalc.ring import RATIONAL, AlgebraElement, PolyAlgebra, Ring
from braidcalc.submanifold import (
    Projection,
    SubmanifoldIdeal,
    axiom_one_witness,
    check_sequence,
    ideal_invariance,
    is_tangent,
    normal_decomposition,
    projection_geometry_suite,
    projection_suite,
    twist_projection_suite,
)
from braidcalc.twist import exp_twist


def ambient_cal(ring=RATIONAL):
    """Q[x, y, z] with translations in x and y; C = (z) is preserved."""
    alg = PolyAlgebra(ring, ("x", "y", "z"))
    lie = LieAlgebra(ring, ("P1", "P2"), {})
    action = Action(lie, alg, {
        0: (alg.one(), alg.zero(), alg.zero()),
        1: (alg.zero(), alg.one(), alg.zero()),
    })
    return Calculus(ModuleAlgebra(action))


def z_ideal(cal):
    return SubmanifoldIdeal(cal.alg, normal_coords=(2,))


def curved_ambient_cal(ring=RATIONAL):
    """Q[x, y, z] localized at 1 + x^2, symmetry d_y alone."""
    unit = {(0, 0, 0): ring.scalar(1), (2, 0, 0): ring.scalar(1)}
    alg = PolyAlgebra(ring, ("x", "y", "z"), unit=unit)
    lie = LieAlgebra(ring, ("P",), {})
    action = Action(lie, alg, {0: (alg.zero(), alg.one(), alg.zero())})
    return Calculus(ModuleAlgebra(action))


def curved_ambient_metric(cal):
    one = cal.alg.one()
    kappa = cal.alg.unit_element()
    z = cal.alg.zero()
    return Metric(cal, [[one, z, z], [z, kappa, z], [z, z, one]])


def moyal_ambient_cal(order=3):
    """Twist exp(h P1 (x) P2); both legs are tangent to C = (z)."""
    ring = Ring("series", order)
    alg = PolyAlgebra(ring, ("x", "y", "z"))
    lie = LieAlgebra(ring, ("P1", "P2"), {})
    action = Action(lie, alg, {
        0: (alg.one(), alg.zero(), alg.zero()),
        1: (alg.zero(), alg.one(), alg.zero()),
    })
    biv = TensorElement(lie, 2, {((1, 0), (0, 1)): ring.h()})
    return Calculus(ModuleAlgebra(action, twist=exp_twist(lie, biv)))


def normal_leg_cal(order=3):
    """One twist leg acts across the ideal: exp(h P1 (x) P3)."""
    ring = Ring("series", order)
    alg = PolyAlgebra(ring, ("x", "y", "z"))
    lie = LieAlgebra(ring, ("P1", "P3"), {})
    action = Action(lie, alg, {
        0: (alg.one(), alg.zero(), alg.zero()),
        1: (alg.zero(), alg.zero(), alg.one()),
    })
    biv = TensorElement(lie, 2, {((1, 0), (0, 1)): ring.h()})
    return Calculus(ModuleAlgebra(action, twist=exp_twist(lie, biv)))


# ---------------------------------------------------------------------
# ideal reduction
# ---------------------------------------------------------------------


def test_reduce_and_contains():
    cal = ambient_cal()
    alg = cal.alg
    ideal = z_ideal(cal)
    x, y, z = alg.coord(0), alg.coord(1), alg.coord(2)
    assert ideal.reduce(x + z * y) == x
    assert ideal.contains(z * x * x)
    assert not ideal.contains(x)
    assert ideal.generators == [z]


def test_quotient_algebra_and_round_trip():
    cal = curved_ambient_cal()
    ideal = z_ideal(cal)
    qalg = ideal.quotient_algebra()
    assert qalg.names == ("x", "y")
    assert qalg.unit == {(0, 0): RATIONAL.scalar(1),
                        (2, 0): RATIONAL.scalar(1)}
    alg = cal.alg
    a = alg.coord(0) * alg.coord(1) + alg.coord(0)
    assert ideal.lift(ideal.to_quotient(a, qalg)) == a
    assert ideal.to_quotient(alg.coord(2), qalg).is_zero()


def test_localized_unit_must_be_tangent():
    unit = {(0, 0, 0): RATIONAL.scalar(1), (0, 0, 2): RATIONAL.scalar(1)}
    alg = PolyAlgebra(RATIONAL, ("x", "y", "z"), unit=unit)
    with pytest.raises(NotTangent):
        SubmanifoldIdeal(alg, normal_coords=(2,))


def test_oracle_mode_sound_reducer():
    alg = PolyAlgebra(RATIONAL, ("x", "y", "z"))
    z = alg.coord(2)

    def drop_z(a):
        num = {e: c for e, c in a.num.items() if e[2] == 0}
        return AlgebraElement(alg, num, a.du)

    ideal = SubmanifoldIdeal(alg, reducer=drop_z, generators=[z])
    assert ideal.contains(z * alg.coord(0))
    assert not ideal.contains(alg.coord(0))
    with pytest.raises(NoBlockSplit):
        ideal.quotient_algebra()


def test_oracle_mode_unsound_reducers():
    alg = PolyAlgebra(RATIONAL, ("x", "y", "z"))
    z = alg.coord(2)

    with pytest.raises(OracleUnsound):
        SubmanifoldIdeal(alg, reducer=lambda a: a, generators=[z])

    def drop_bare_z_only(a):
        num = {
            e: c
            for e, c in a.num.items()
            if e != (0, 0, 1)
        }
        return AlgebraElement(alg, num, a.du)

    with pytest.raises(OracleUnsound):
        SubmanifoldIdeal(alg, reducer=drop_bare_z_only, generators=[z])


# ---------------------------------------------------------------------
# tangency and invariance
# ---------------------------------------------------------------------


def test_tangency_table():
    cal = ambient_cal()
    ideal = z_ideal(cal)
    z = cal.alg.coord(2)
    assert is_tangent(cal, ideal, cal.frame_field(0))
    assert is_tangent(cal, ideal, cal.frame_field(1))
    assert not is_tangent(cal, ideal, cal.frame_field(2))
    assert is_tangent(cal, ideal, cal.mv(1, {(2,): z}))


def test_invariance_counterexample():
    ring = RATIONAL
    alg = PolyAlgebra(ring, ("x", "y", "z"))
    lie = LieAlgebra(ring, ("P1", "P3"), {})
    action = Action(lie, alg, {
        0: (alg.one(), alg.zero(), alg.zero()),
        1: (alg.zero(), alg.zero(), alg.one()),
    })
    cal = Calculus(ModuleAlgebra(action))
    ideal = z_ideal(cal)
    bad = ideal_invariance(cal.M, ideal, depth=2)
    assert bad is not None and bad["monomial"] == (0, 1)
    with pytest.raises(NotTangent):
        Projection(cal, ideal)


# ---------------------------------------------------------------------
# projection of graded objects
# ---------------------------------------------------------------------


def test_projection_construction():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    assert proj.tangent_idx == [0, 1]
    assert proj.normal_idx == [2]
    assert proj.q.dim == 2
    assert proj.q.alg.names == ("x", "y")


def test_project_fields_and_forms():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    alg, q = cal.alg, proj.q
    x, z = alg.coord(0), alg.coord(2)

    X = cal.mv(1, {(0,): x, (2,): z})
    assert proj.multivector(X) == q.mv(1, {(0,): q.alg.coord(0)})
    with pytest.raises(NotTangent):
        proj.multivector(cal.frame_field(2))

    assert proj.form(cal.form(1, {(2,): x})).is_zero()
    assert proj.form(cal.form(1, {(0,): z})).is_zero()
    om = cal.form(2, {(0, 1): x * x})
    qx = q.alg.coord(0)
    assert proj.form(om) == q.form(2, {(0, 1): qx * qx})


def test_field_application_through_projection():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    alg = cal.alg
    x, y, z = alg.coord(0), alg.coord(1), alg.coord(2)
    X = cal.mv(1, {(0,): y})
    a = x * z
    assert proj.function(cal.apply_field(X, a)).is_zero()
    assert proj.q.apply_field(
        proj.multivector(X), proj.function(a)
    ).is_zero()


def test_projection_suite_classical():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    rep = projection_suite(proj, coeff_degree=2, depth=2)
    assert rep.passed, [c.name for c in rep.failing()]


def test_check_sequence():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    rep = check_sequence(proj, coeff_degree=2)
    assert rep.passed, [c.name for c in rep.failing()]


def test_axiom_one_witness():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    alg = cal.alg
    z = alg.coord(2)
    X = cal.mv(1, {(0,): z, (2,): z * z})
    assert axiom_one_witness(proj, X) == [(z, 0), (z * z, 2)]
    with pytest.raises(AxiomOneUnwitnessed):
        axiom_one_witness(proj, cal.mv(1, {(0,): alg.coord(0)}))


def test_normal_decomposition():
    cal = ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    alg = cal.alg
    x, y, z = alg.coord(0), alg.coord(1), alg.coord(2)
    X = cal.mv(1, {(0,): x, (1,): z, (2,): y + z})
    t, n, r = normal_decomposition(proj, X)
    assert t == cal.mv(1, {(0,): x})
    assert n == cal.mv(1, {(2,): y})
    assert r == cal.mv(1, {(1,): z, (2,): z})
    assert t + n + r == X


# ---------------------------------------------------------------------
# projected geometry
# ---------------------------------------------------------------------


def test_projected_levi_civita_matches_surface():
    cal = curved_ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    qmetric = proj.metric(curved_ambient_metric(cal))
    conn = levi_civita(qmetric)
    qalg = proj.q.alg
    x = qalg.coord(0)
    over_kappa = AlgebraElement(qalg, {(1, 0): RATIONAL.scalar(1)}, 1)
    zero = qalg.zero()
    assert conn.gamma[1][1] == [-x, zero]
    assert conn.gamma[0][1] == [zero, over_kappa]
    assert conn.gamma[1][0] == [zero, over_kappa]
    assert conn.gamma[0][0] == [zero, zero]


def test_projection_geometry_suite():
    cal = curved_ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    rep = projection_geometry_suite(
        proj, curved_ambient_metric(cal), coeff_degree=1
    )
    assert rep.passed, [c.name for c in rep.failing()]


def test_mixed_metric_entry_refuses_to_split():
    cal = curved_ambient_cal()
    proj = Projection(cal, z_ideal(cal))
    one = cal.alg.one()
    kappa = cal.alg.unit_element()
    z = cal.alg.zero()
    mixed = Metric(cal, [[one, z, one], [z, kappa, z], [one, z, one + one]])
    with pytest.raises(NoBlockSplit):
        proj.metric(mixed)


# ---------------------------------------------------------------------
# twisted projections
# ---------------------------------------------------------------------


def test_twist_projection_suite_passes():
    cal = moyal_ambient_cal(order=3)
    rep, proj = twist_projection_suite(
        cal, z_ideal(cal), coeff_degree=1, spot_degree=2
    )
    assert rep.passed, [c.name for c in rep.failing()]


def test_twisted_quotient_star_frozen():
    cal = moyal_ambient_cal(order=3)
    proj = Projection(cal, z_ideal(cal))
    q = proj.q
    ring = cal.ring
    qx, qy = q.alg.coord(0), q.alg.coord(1)
    assert q.M.mul(qx, qy) == qx * qy + q.alg.scalar(-ring.h())
    assert q.M.mul(qy, qx) == qx * qy
    x, y = cal.alg.coord(0), cal.alg.coord(1)
    assert proj.function(cal.M.mul(x, y)) == q.M.mul(qx, qy)


def test_normal_twist_leg_rejected():
    cal = normal_leg_cal(order=3)
    with pytest.raises(NotTangent):
        twist_projection_suite(cal, z_ideal(cal))
