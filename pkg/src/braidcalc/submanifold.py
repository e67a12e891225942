"""Quotients by coordinate ideals: the calculus on a submanifold.

A submanifold is cut out by an ideal of the coordinate algebra that the
symmetry action preserves.  Everything downstream is organized around
one Projection object: it builds the quotient module algebra and its
calculus over the reduced frame, and pushes functions, multivector
fields, forms, metrics and connections through the quotient map.

Fields only project when they are tangent (coefficients of normal frame
directions lie in the ideal); forms always project, with normal coframe
letters pulled back to zero.  Metrics must block-split across the
tangent/normal frame partition.  The projected torsion-free metric
connection of a block metric is the reduced tangent block of the
ambient one; projection_geometry_suite verifies that against a fresh
solve on the quotient.
"""

from .calculus import Calculus
from .errors import (
    AxiomOneUnwitnessed,
    NoBlockSplit,
    NotTangent,
    OracleUnsound,
)
from .geometry import Connection, Metric, field_family, levi_civita
from .modalg import Action, ModuleAlgebra, coordinate_monomials
from .report import Report
from .ring import AlgebraElement


class SubmanifoldIdeal:
    """Functions vanishing on a submanifold of the coordinate algebra.

    Native mode: the ideal generated by a subset of the coordinates,
    reduced by substituting them to zero.  Oracle mode: a user-supplied
    reduction map to normal forms, spot-checked for soundness at
    construction; quotient building requires the native mode.
    """

    def __init__(self, algebra, normal_coords=None, reducer=None,
                 generators=None, spot_degree=2):
        assert (normal_coords is None) != (reducer is None)
        self.algebra = algebra
        self.reducer = reducer
        if normal_coords is not None:
            normal = tuple(sorted(set(normal_coords)))
            assert normal, "ideal needs at least one normal coordinate"
            for j in normal:
                assert 0 <= j < algebra.arity, j
            self.normal = normal
            self.tangent = tuple(
                j for j in range(algebra.arity) if j not in normal
            )
            assert self.tangent, "no tangent coordinate left"
            if algebra.unit is not None:
                for e in algebra.unit:
                    if any(e[j] for j in self.normal):
                        raise NotTangent(
                            "localized unit depends on a normal coordinate"
                        )
            self.generators = [algebra.coord(j) for j in normal]
        else:
            self.normal = None
            self.tangent = None
            assert generators, "oracle mode needs the ideal generators"
            self.generators = list(generators)
            self._spot_check(spot_degree)

    def _spot_check(self, degree):
        """Reduction oracles must behave like a quotient map on samples."""
        red = self.reducer
        alg = self.algebra
        if not red(alg.zero()).is_zero() or red(alg.one()) != alg.one():
            raise OracleUnsound("reduction moves 0 or 1")
        for g in self.generators:
            if not red(g).is_zero():
                raise OracleUnsound(("generator does not reduce to zero", g))
        sample = coordinate_monomials(alg, degree)
        for a in sample:
            ra = red(a)
            if red(ra) != ra:
                raise OracleUnsound(("not idempotent", a))
            for g in self.generators:
                if not red(g * a).is_zero():
                    raise OracleUnsound(("not an ideal", g, a))
        for a in sample:
            for b in sample:
                if red(a + b) != red(red(a) + red(b)):
                    raise OracleUnsound(("additivity fails", a, b))
                if red(a * b) != red(red(a) * red(b)):
                    raise OracleUnsound(("multiplicativity fails", a, b))

    def reduce(self, a):
        """Normal form of an ambient element modulo the ideal."""
        assert a.algebra == self.algebra
        if self.reducer is not None:
            return self.reducer(a)
        num = {
            e: c
            for e, c in a.num.items()
            if not any(e[j] for j in self.normal)
        }
        return AlgebraElement(self.algebra, num, a.du)

    def contains(self, a):
        return self.reduce(a).is_zero()

    # -- native-mode quotient data ------------------------------------

    def _need_coordinates(self):
        if self.normal is None:
            raise NoBlockSplit("quotient data needs a coordinate ideal")

    def quotient_algebra(self):
        """Coordinate algebra of the submanifold."""
        self._need_coordinates()
        alg = self.algebra
        names = tuple(alg.names[j] for j in self.tangent)
        unit = None
        if alg.unit is not None:
            unit = {
                tuple(e[j] for j in self.tangent): c
                for e, c in alg.unit.items()
            }
        return type(alg)(alg.ring, names, unit=unit)

    def to_quotient(self, a, qalg=None):
        self._need_coordinates()
        if qalg is None:
            qalg = self.quotient_algebra()
        r = self.reduce(a)
        num = {
            tuple(e[j] for j in self.tangent): c for e, c in r.num.items()
        }
        return AlgebraElement(qalg, num, r.du)

    def lift(self, abar):
        """Tautological section of the quotient map, monomial by monomial."""
        self._need_coordinates()
        num = {}
        for e, c in abar.num.items():
            full = [0] * self.algebra.arity
            for pos, j in enumerate(self.tangent):
                full[j] = e[pos]
            num[tuple(full)] = c
        return AlgebraElement(self.algebra, num, abar.du)


def ideal_invariance(M, ideal, depth=2):
    """First Hopf monomial (degree <= depth) pushing a generator out of
    the ideal, or None.  The quotient action is well defined only when
    this returns None."""
    for exp in M.lie.monomials_up_to(depth):
        if not any(exp):
            continue
        for g in ideal.generators:
            img = M.action.act_monomial(exp, g)
            if not ideal.contains(img):
                return {"monomial": exp, "generator": g, "image": img}
    return None


def is_tangent(cal, ideal, X):
    """A grade-1 field is tangent when it maps the ideal into itself,
    checked on the generators."""
    for g in ideal.generators:
        if not ideal.contains(cal.apply_field(X, g)):
            return False
    return True


class Projection:
    """Quotient map of one calculus instance by a preserved ideal.

    Builds the quotient module algebra (same symmetry, same twist, the
    reduced action) and the quotient calculus over the tangent block of
    the frame, then projects the graded objects.  Construction raises
    NotTangent when the action or the product in force fails to
    preserve the ideal, and NoBlockSplit when the frame has no
    tangent/normal partition matching the quotient dimension.
    """

    def __init__(self, cal, ideal, depth=2, spot_degree=2):
        assert ideal.algebra == cal.alg
        ideal._need_coordinates()
        self.cal = cal
        self.ideal = ideal
        bad = ideal_invariance(cal.M, ideal, depth)
        if bad is not None:
            raise NotTangent(bad)
        self._check_star_ideal(spot_degree)

        self.tangent_idx = [
            u
            for u in range(cal.dim)
            if is_tangent(cal, ideal, cal.frame_field(u))
        ]
        self.normal_idx = [
            u for u in range(cal.dim) if u not in self.tangent_idx
        ]
        if len(self.tangent_idx) != len(ideal.tangent):
            raise NoBlockSplit(
                ("tangent frame block has wrong size", self.tangent_idx)
            )
        self._pos = {u: k for k, u in enumerate(self.tangent_idx)}

        qalg = ideal.quotient_algebra()
        self.qalg = qalg
        qimages = {
            i: tuple(
                ideal.to_quotient(cal.M.action.images[i][j], qalg)
                for j in ideal.tangent
            )
            for i in range(cal.lie.dim)
        }
        qaction = Action(cal.lie, qalg, qimages)
        qM = ModuleAlgebra(
            qaction,
            twist=cal.M.twist,
            base_triangular=cal.M.base_triangular,
        )
        if cal.frame.is_coordinate:
            qframe = None
        else:
            qframe = [
                tuple(
                    ideal.to_quotient(cal.frame.images[u][j], qalg)
                    for j in ideal.tangent
                )
                for u in self.tangent_idx
            ]
        self.q = Calculus(qM, qframe)

    def _check_star_ideal(self, degree):
        M = self.cal.M
        for g in self.ideal.generators:
            for a in coordinate_monomials(self.cal.alg, degree):
                if not self.ideal.contains(M.mul(g, a)):
                    raise NotTangent(("left product leaves ideal", g, a))
                if not self.ideal.contains(M.mul(a, g)):
                    raise NotTangent(("right product leaves ideal", a, g))

    # -- pushforward of graded objects ---------------------------------

    def function(self, a):
        return self.ideal.to_quotient(a, self.qalg)

    def lift_function(self, abar):
        return self.ideal.lift(abar)

    def multivector(self, X):
        """Project a tangent multivector; NotTangent when a word with a
        normal letter carries a coefficient outside the ideal."""
        terms = {}
        for w, c in X.terms.items():
            if all(u in self._pos for u in w):
                cq = self.function(c)
                if not cq.is_zero():
                    terms[tuple(self._pos[u] for u in w)] = cq
            elif not self.ideal.contains(c):
                raise NotTangent((w, c))
        return self.q.mv(X.grade, terms)

    field = multivector

    def form(self, om):
        """Pull a form back to the submanifold: normal coframe letters
        restrict to zero, so those words drop with no condition."""
        terms = {}
        for w, c in om.terms.items():
            if all(u in self._pos for u in w):
                cq = self.function(c)
                if not cq.is_zero():
                    terms[tuple(self._pos[u] for u in w)] = cq
        return self.q.form(om.grade, terms)

    def lift_multivector(self, Xbar):
        terms = {
            tuple(self.tangent_idx[u] for u in w): self.lift_function(c)
            for w, c in Xbar.terms.items()
        }
        return self.cal.mv(Xbar.grade, terms)

    def lift_form(self, ombar):
        terms = {
            tuple(self.tangent_idx[u] for u in w): self.lift_function(c)
            for w, c in ombar.terms.items()
        }
        return self.cal.form(ombar.grade, terms)

    # -- geometry ------------------------------------------------------

    def metric(self, metric):
        """Tangent block of a block metric; NoBlockSplit when a mixed
        entry sits outside the ideal."""
        assert metric.cal is self.cal
        for u in self.tangent_idx:
            for n in self.normal_idx:
                if not (
                    self.ideal.contains(metric.matrix[u][n])
                    and self.ideal.contains(metric.matrix[n][u])
                ):
                    raise NoBlockSplit(("mixed metric entry", u, n))
        block = [
            [self.function(metric.matrix[u][v]) for v in self.tangent_idx]
            for u in self.tangent_idx
        ]
        return Metric(self.q, block)

    def connection(self, conn):
        """Tangent block of a connection: the metric-orthogonal
        projection of a block-split geometry."""
        assert conn.cal is self.cal
        gamma = [
            [
                [
                    self.function(conn.gamma[a][b][c])
                    for c in self.tangent_idx
                ]
                for b in self.tangent_idx
            ]
            for a in self.tangent_idx
        ]
        return Connection(self.q, gamma)


def axiom_one_witness(proj, X):
    """Exhibit a projection-kernel field as an ideal-coefficient
    combination of frame fields.  Raises AxiomOneUnwitnessed when some
    coefficient sits outside the ideal."""
    assert X.kind == "mv" and X.grade == 1
    out = []
    for (u,), c in X.terms.items():
        if not proj.ideal.contains(c):
            raise AxiomOneUnwitnessed((u, c))
        out.append((c, u))
    return out


def normal_decomposition(proj, X):
    """Split a grade-1 field as tangent + canonical normal + kernel.

    Both named parts carry one canonical representative per frame
    component (the tangent part is the lift of the projection), so the
    remainder has every coefficient in the ideal."""
    assert X.kind == "mv" and X.grade == 1
    cal = proj.cal
    t_terms, n_terms = {}, {}
    for (u,), c in X.terms.items():
        rep = proj.ideal.lift(proj.ideal.to_quotient(c, proj.qalg))
        if rep.is_zero():
            continue
        if u in proj._pos:
            t_terms[(u,)] = rep
        else:
            n_terms[(u,)] = rep
    t = cal.mv(1, t_terms)
    n = cal.mv(1, n_terms)
    r = X - t - n
    for (u,), c in r.terms.items():
        assert proj.ideal.contains(c), (u, c)
    return t, n, r


def check_sequence(proj, coeff_degree=2):
    """The quotient fields sit in an exact sequence: every one lifts,
    and lifted-then-projected is the identity; kernel fields are
    witnessed ideal combinations of the frame."""
    rep = Report("sequence", {"coeff_degree": coeff_degree})
    cal, ideal = proj.cal, proj.ideal

    ok, bad = True, None
    for Xbar in field_family(proj.q, coeff_degree):
        back = proj.multivector(proj.lift_multivector(Xbar))
        if back != Xbar:
            ok, bad = False, {"field": Xbar, "round_trip": back}
            break
    rep.add("lift-section", "pr(lift(X)) = X", ok, bad)

    ok, bad = True, None
    kernel = []
    for g in ideal.generators:
        for u in range(cal.dim):
            kernel.append(cal.mv(1, {(u,): g}))
            for m in coordinate_monomials(cal.alg, coeff_degree):
                if m.is_scalar():
                    continue
                kernel.append(cal.mv(1, {(u,): g * m}))
    for X in kernel:
        if not proj.multivector(X).is_zero():
            ok, bad = False, {"field": X, "note": "kernel not killed"}
            break
        try:
            pieces = axiom_one_witness(proj, X)
        except AxiomOneUnwitnessed as exc:
            ok, bad = False, {"field": X, "unwitnessed": exc.args}
            break
        back = cal.zero_mv(1)
        for c, u in pieces:
            back = back + cal.mv(1, {(u,): c})
        if back != X:
            ok, bad = False, {"field": X, "recombined": back}
            break
    rep.add(
        "kernel-witness",
        "pr(X) = 0 and X = sum c_i e_i with ideal coefficients",
        ok,
        bad,
    )
    return rep


def _tangent_field_family(proj, coeff_degree):
    cal = proj.cal
    fam = [cal.frame_field(u) for u in proj.tangent_idx]
    for m in coordinate_monomials(cal.alg, coeff_degree):
        if m.is_scalar():
            continue
        for u in proj.tangent_idx:
            fam.append(cal.mv(1, {(u,): m}))
    return fam


def _form_family(proj, coeff_degree):
    cal = proj.cal
    words = [(u,) for u in range(cal.dim)]
    words += [
        (u, v) for u in range(cal.dim) for v in range(cal.dim) if u < v
    ]
    coeffs = [cal.alg.one()] + [
        m
        for m in coordinate_monomials(cal.alg, coeff_degree)
        if not m.is_scalar()
    ]
    return [
        cal.form(len(w), {w: c}) for w in words for c in coeffs
    ]


def projection_suite(proj, coeff_degree=2, depth=2):
    """All commutation laws of the quotient map with the calculus."""
    cal, ideal = proj.cal, proj.ideal
    q = proj.q
    rep = Report(
        "projection",
        {"coeff_degree": coeff_degree, "depth": depth},
    )

    rep.add(
        "ideal-invariance",
        "H |> C inside C",
        ideal_invariance(cal.M, ideal, depth) is None,
    )

    funcs = coordinate_monomials(cal.alg, coeff_degree)
    fields = _tangent_field_family(proj, coeff_degree)
    forms = _form_family(proj, coeff_degree)

    ok, bad = True, None
    for a in funcs:
        for b in funcs:
            lhs = proj.function(cal.M.mul(a, b))
            rhs = q.M.mul(proj.function(a), proj.function(b))
            if lhs != rhs:
                ok, bad = False, {"a": a, "b": b, "lhs": lhs, "rhs": rhs}
                break
        if not ok:
            break
    rep.add("product", "pr(a b) = pr(a) pr(b)", ok, bad)

    ok, bad = True, None
    for X in fields:
        Xq = proj.multivector(X)
        for a in funcs:
            lhs = q.apply_field(Xq, proj.function(a))
            rhs = proj.function(cal.apply_field(X, a))
            if lhs != rhs:
                ok, bad = False, {"field": X, "function": a}
                break
        if not ok:
            break
    rep.add("field-application", "pr(X)(pr(a)) = pr(X(a))", ok, bad)

    ok, bad = True, None
    for om in forms:
        lhs = proj.form(cal.d(om))
        rhs = q.d(proj.form(om))
        if lhs != rhs:
            ok, bad = False, {"form": om, "lhs": lhs, "rhs": rhs}
            break
    rep.add("differential", "pr(d w) = d pr(w)", ok, bad)

    ok, bad = True, None
    for X in fields:
        Xq = proj.multivector(X)
        for om in forms:
            lhs = proj.form(cal.insert(X, om))
            rhs = q.insert(Xq, proj.form(om))
            if lhs != rhs:
                ok, bad = False, {"field": X, "form": om}
                break
        if not ok:
            break
    rep.add("insertion", "pr(i_X w) = i_{pr(X)} pr(w)", ok, bad)

    ok, bad = True, None
    for X in fields:
        Xq = proj.multivector(X)
        for om in forms:
            lhs = proj.form(cal.lie_derivative(X, om))
            rhs = q.lie_derivative(Xq, proj.form(om))
            if lhs != rhs:
                ok, bad = False, {"field": X, "form": om}
                break
        if not ok:
            break
    rep.add("lie-derivative", "pr(L_X w) = L_{pr(X)} pr(w)", ok, bad)

    ok, bad = True, None
    for X in fields:
        Xq = proj.multivector(X)
        for Y in fields:
            lhs = proj.multivector(cal.bracket(X, Y))
            rhs = q.bracket(Xq, proj.multivector(Y))
            if lhs != rhs:
                ok, bad = False, {"X": X, "Y": Y}
                break
        if not ok:
            break
    rep.add("bracket", "pr([X, Y]) = [pr(X), pr(Y)]", ok, bad)

    ok, bad = True, None
    for exp in cal.lie.monomials_up_to(depth):
        if not any(exp):
            continue
        for g in ideal.generators:
            for u in range(cal.dim):
                acted = cal.h_act_exp(exp, cal.mv(1, {(u,): g}))
                for w, c in acted.terms.items():
                    if not ideal.contains(c):
                        ok, bad = False, {
                            "monomial": exp,
                            "generator": g,
                            "frame": u,
                            "coefficient": c,
                        }
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add(
        "kernel-stability",
        "H |> (C . frame) keeps ideal coefficients",
        ok,
        bad,
    )
    return rep


def projection_geometry_suite(proj, metric, coeff_degree=1):
    """Block metrics project; solving on the quotient agrees with
    projecting the ambient torsion-free metric connection."""
    rep = Report("projected-geometry", {"coeff_degree": coeff_degree})
    qmetric = proj.metric(metric)
    rep.add("block-split", "metric splits across the partition", True)

    ambient = levi_civita(metric)
    pushed = proj.connection(ambient)
    solved = levi_civita(qmetric)
    rep.add(
        "quotient-solve",
        "pr(metric connection) = metric connection of pr(metric)",
        pushed == solved,
        None if pushed == solved else {
            "pushed": pushed.gamma,
            "solved": solved.gamma,
        },
    )

    ok, bad = True, None
    for Xbar in field_family(proj.q, coeff_degree):
        for Ybar in field_family(proj.q, coeff_degree):
            X = proj.lift_multivector(Xbar)
            Y = proj.lift_multivector(Ybar)
            lhs = proj.function(metric(X, Y))
            rhs = qmetric(Xbar, Ybar)
            if lhs != rhs:
                ok, bad = False, {"X": Xbar, "Y": Ybar}
                break
        if not ok:
            break
    rep.add(
        "metric-restriction",
        "pr(g(lift X, lift Y)) = pr(g)(X, Y)",
        ok,
        bad,
    )
    return rep


def twist_projection_suite(cal, ideal, coeff_degree=2, depth=2,
                           spot_degree=2):
    """Projection commutes with a twisted calculus when every twist leg
    is tangent; building the Projection raises NotTangent otherwise."""
    proj = Projection(cal, ideal, depth=depth, spot_degree=spot_degree)
    rep = Report(
        "twist-projection",
        {"coeff_degree": coeff_degree, "depth": depth},
    )

    ok, bad = True, None
    for a in coordinate_monomials(cal.alg, spot_degree):
        for b in coordinate_monomials(cal.alg, spot_degree):
            lhs = proj.function(cal.M.mul(a, b))
            rhs = proj.q.M.mul(proj.function(a), proj.function(b))
            if lhs != rhs:
                ok, bad = False, {"a": a, "b": b}
                break
        if not ok:
            break
    rep.add("star-naturality", "pr(a * b) = pr(a) * pr(b)", ok, bad)

    ok, bad = True, None
    for a in coordinate_monomials(cal.alg, spot_degree):
        for b in coordinate_monomials(cal.alg, spot_degree):
            star = proj.q.M.mul(proj.function(a), proj.function(b))
            plain = proj.function(a) * proj.function(b)
            if (star - plain).min_h_order() < 1:
                ok, bad = False, {"a": a, "b": b}
                break
        if not ok:
            break
    rep.add(
        "classical-shadow",
        "quotient star = plain product at order 0",
        ok,
        bad,
    )

    rep.extend(projection_suite(proj, coeff_degree, depth))
    return rep, proj
