"""Equivariant connections and metrics over a braided calculus.

A connection is stored by its frame coefficients Gamma[a][b][c]
(the e_c component of the derivative of e_b along e_a) and extended to
arbitrary grade-1 fields by function-linearity in the direction and the
braided Leibniz rule in the argument.  A metric is stored by its frame
matrix together with a two-sided inverse witness for the product in
force.  The torsion-free metric connection is solved for by
right-contracting the Koszul combination with that witness.
"""

from fractions import Fraction

from .calculus import (
    _acc,
    _identity_matrix,
    _matrix_inverse_plain,
    _mu_matrix_inverse,
    _mu_mmul,
)
from .errors import (
    GradeMismatch,
    InverseWitnessInvalid,
    MetricCheckFailed,
    RankMismatch,
)
from .modalg import coordinate_monomials
from .report import Report

import random


def field_family(cal, coeff_degree=2):
    """Frame fields plus monomial-coefficient frame fields."""
    fam = [cal.frame_field(u) for u in range(cal.dim)]
    for m in coordinate_monomials(cal.alg, coeff_degree):
        if m.is_scalar():
            continue
        for u in range(cal.dim):
            fam.append(cal.mv(1, {(u,): m}))
    return fam


class Connection:
    """Frame-coefficient connection on grade-1 fields."""

    def __init__(self, cal, gamma):
        dim = cal.dim
        if len(gamma) != dim or any(
            len(row) != dim or any(len(e) != dim for e in row)
            for row in gamma
        ):
            raise RankMismatch("gamma must be dim x dim x dim")
        for row in gamma:
            for entry in row:
                for g in entry:
                    if g.algebra is not cal.alg:
                        raise RankMismatch("gamma entry from a foreign algebra")
        self.cal = cal
        self.gamma = gamma

    @classmethod
    def zero(cls, cal):
        z = cal.alg.zero()
        d = cal.dim
        return cls(cal, [[[z] * d for _ in range(d)] for _ in range(d)])

    def perturbed(self, a, b, c, delta):
        """Copy with a constant shift added to one frame coefficient."""
        gamma = [
            [list(entry) for entry in row] for row in self.gamma
        ]
        gamma[a][b][c] = gamma[a][b][c] + self.cal.alg.scalar(delta)
        return Connection(self.cal, gamma)

    def __eq__(self, other):
        return (
            isinstance(other, Connection)
            and self.cal is other.cal
            and self.gamma == other.gamma
        )

    def _nabla_frame_arg(self, Y, v):
        """Derivative of e_v along an arbitrary field Y, as a term map."""
        cal = self.cal
        out = {}
        for (u,), cu in Y.terms.items():
            for w in range(cal.dim):
                g = self.gamma[u][v][w]
                if g.is_zero():
                    continue
                _acc(out, (w,), cal.M.mul(cu, g))
        return out

    def nabla(self, X, s):
        """Covariant derivative of the grade-1 field s along X."""
        cal = self.cal
        if X.kind != "mv" or s.kind != "mv" or X.grade != 1 or s.grade != 1:
            raise GradeMismatch((X.grade, s.grade))
        out = {}
        for (v,), d in s.terms.items():
            xd = cal.apply_field(X, d)
            if not xd.is_zero():
                _acc(out, (v,), xd)
            for (t1, t2), c in cal.M.triangular.Rinv.terms.items():
                da = cal.M.action.act_monomial(t1, d)
                if da.is_zero():
                    continue
                Xa = cal.h_act_exp(t2, X)
                if Xa.is_zero():
                    continue
                for w, g in self._nabla_frame_arg(Xa, v).items():
                    _acc(out, w, cal.M.mul(da, g).scale(c))
        return cal.mv(1, out)

    def nabla_form(self, X, om):
        """Dual derivative on grade-1 forms, solved through the pairing:
        (nabla_X w)(e_v) = X(w(e_v)) - sum (Rinv1 |> w)(nabla_{Rinv2 |> X} e_v).
        """
        cal = self.cal
        if om.kind != "form" or om.grade != 1 or X.grade != 1:
            raise GradeMismatch((X.grade, om.grade))
        coeffs = {}
        for v in range(cal.dim):
            ev = cal.frame_field(v)
            val = cal.apply_field(X, cal.eval_form(om, [ev]))
            for (t1, t2), c in cal.M.triangular.Rinv.terms.items():
                oma = cal.h_act_exp(t1, om)
                if oma.is_zero():
                    continue
                Xa = cal.h_act_exp(t2, X)
                if Xa.is_zero():
                    continue
                val = val - cal.eval_form(oma, [self.nabla(Xa, ev)]).scale(c)
            coeffs[(v,)] = val
        return cal.form(1, coeffs)

    def torsion(self, X, Y):
        """nabla_X Y - nabla_{Rinv1 |> Y}(Rinv2 |> X) - [X, Y]_R."""
        cal = self.cal
        res = self.nabla(X, Y)
        for (t1, t2), c in cal.M.triangular.Rinv.terms.items():
            Ya = cal.h_act_exp(t1, Y)
            if Ya.is_zero():
                continue
            Xa = cal.h_act_exp(t2, X)
            if Xa.is_zero():
                continue
            res = res - self.nabla(Ya, Xa).scale(c)
        return res - cal.bracket(X, Y)

    def curvature(self, X, Y, s):
        """nabla_X nabla_Y s - nabla_{Rinv1 |> Y} nabla_{Rinv2 |> X} s
        - nabla_{[X, Y]_R} s."""
        cal = self.cal
        res = self.nabla(X, self.nabla(Y, s))
        for (t1, t2), c in cal.M.triangular.Rinv.terms.items():
            Ya = cal.h_act_exp(t1, Y)
            if Ya.is_zero():
                continue
            Xa = cal.h_act_exp(t2, X)
            if Xa.is_zero():
                continue
            res = res - self.nabla(Ya, self.nabla(Xa, s)).scale(c)
        return res - self.nabla(cal.bracket(X, Y), s)


def covariant_derivative(conn, X, s):
    return conn.nabla(X, s)


def check_connection(conn, coeff_degree=1):
    """Extension-rule and equivariance checks for a connection."""
    cal = conn.cal
    M = cal.M
    rep = Report("connection", {"coeff_degree": coeff_degree})
    fields = field_family(cal, coeff_degree)
    funcs = coordinate_monomials(cal.alg, coeff_degree)

    ok, bad = True, None
    for a in funcs:
        for X in fields:
            aX = cal.mv(1, {w: M.mul(a, c) for w, c in X.terms.items()})
            for s in fields:
                if conn.nabla(aX, s) != conn.nabla(X, s).left_mul(a):
                    ok, bad = False, {"a": repr(a), "X": repr(X), "s": repr(s)}
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("left-linearity", "nabla_{a X} s = a nabla_X s", ok, bad)

    ok, bad = True, None
    for a in funcs:
        for X in fields:
            for s in fields:
                lhs = conn.nabla(X, s.left_mul(a))
                rhs = cal.mv(1, dict(s.terms)).left_mul(
                    cal.apply_field(X, a)
                )
                for (t1, t2), c in M.triangular.Rinv.terms.items():
                    aa = M.action.act_monomial(t1, a)
                    if aa.is_zero():
                        continue
                    Xa = cal.h_act_exp(t2, X)
                    if Xa.is_zero():
                        continue
                    rhs = rhs + conn.nabla(Xa, s).left_mul(aa).scale(c)
                if lhs != rhs:
                    ok, bad = False, {"a": repr(a), "X": repr(X), "s": repr(s)}
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add(
        "braided-leibniz",
        "nabla_X (a s) = X(a) s + (Rinv1 |> a) nabla_{Rinv2 |> X} s",
        ok,
        bad,
    )

    ok, bad = True, None
    for e in cal.lie.monomials_up_to(2):
        if not any(e):
            continue
        for X in fields:
            for s in fields:
                lhs = cal.h_act_exp(e, conn.nabla(X, s))
                rhs = cal.zero_mv(1)
                for l, r, c in cal.cop_pairs(e):
                    Xa = cal.h_act_exp(l, X)
                    if Xa.is_zero():
                        continue
                    sa = cal.h_act_exp(r, s)
                    if sa.is_zero():
                        continue
                    rhs = rhs + conn.nabla(Xa, sa).scale(c)
                if lhs != rhs:
                    ok, bad = False, {"xi": repr(e), "X": repr(X), "s": repr(s)}
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add(
        "equivariance",
        "xi |> nabla_X s = nabla_{xi1 |> X}(xi2 |> s)",
        ok,
        bad,
    )

    ok, bad = True, None
    forms = [cal.coframe(v) for v in range(cal.dim)]
    for m in coordinate_monomials(cal.alg, coeff_degree):
        if not m.is_scalar():
            forms.append(cal.form(1, {(0,): m}))
    for X in fields:
        for om in forms:
            for Y in fields:
                lhs = cal.apply_field(X, cal.eval_form(om, [Y]))
                rhs = cal.eval_form(conn.nabla_form(X, om), [Y])
                for (t1, t2), c in M.triangular.Rinv.terms.items():
                    oma = cal.h_act_exp(t1, om)
                    if oma.is_zero():
                        continue
                    Xa = cal.h_act_exp(t2, X)
                    if Xa.is_zero():
                        continue
                    rhs = rhs + cal.eval_form(
                        oma, [conn.nabla(Xa, Y)]
                    ).scale(c)
                if lhs != rhs:
                    ok, bad = False, {
                        "X": repr(X), "form": repr(om), "Y": repr(Y)
                    }
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add(
        "dual-pairing",
        "X(w(Y)) = (nabla_X w)(Y) + (Rinv1 |> w)(nabla_{Rinv2 |> X} Y)",
        ok,
        bad,
    )
    return rep


class Metric:
    """Frame-matrix metric with a verified two-sided inverse witness."""

    def __init__(self, cal, matrix, inverse=None):
        dim = cal.dim
        if len(matrix) != dim or any(len(r) != dim for r in matrix):
            raise RankMismatch("metric matrix must be dim x dim")
        for r in matrix:
            for g in r:
                if g.algebra is not cal.alg:
                    raise RankMismatch("metric entry from a foreign algebra")
        self.cal = cal
        self.matrix = matrix
        if inverse is None:
            plain = _matrix_inverse_plain(cal.alg, matrix)
            inverse = _mu_matrix_inverse(cal.M, matrix, plain)
        else:
            ident = _identity_matrix(cal.alg, dim)
            if (
                _mu_mmul(cal.M, inverse, matrix) != ident
                or _mu_mmul(cal.M, matrix, inverse) != ident
            ):
                raise InverseWitnessInvalid("supplied witness fails")
        self.inverse = inverse

    def __call__(self, X, Y):
        if X.kind != "mv" or Y.kind != "mv" or X.grade != 1 or Y.grade != 1:
            raise GradeMismatch((X.grade, Y.grade))
        cal = self.cal
        tot = cal.alg.zero()
        for (u,), cu in X.terms.items():
            for (v,), dv in Y.terms.items():
                g = self.matrix[u][v]
                if g.is_zero():
                    continue
                tot = tot + cal.M.mul(cu, cal.M.mul(dv, g))
        return tot


def check_metric(metric, coeff_degree=1):
    """Braided symmetry, left-linearity and equivariance of a metric."""
    cal = metric.cal
    M = cal.M
    rep = Report("metric", {"coeff_degree": coeff_degree})
    fields = field_family(cal, coeff_degree)

    ok, bad = True, None
    for X in fields:
        for Y in fields:
            lhs = metric(Y, X)
            rhs = cal.alg.zero()
            for (t1, t2), c in M.triangular.Rinv.terms.items():
                Xa = cal.h_act_exp(t1, X)
                if Xa.is_zero():
                    continue
                Ya = cal.h_act_exp(t2, Y)
                if Ya.is_zero():
                    continue
                rhs = rhs + metric(Xa, Ya).scale(c)
            if lhs != rhs:
                ok, bad = False, {"X": repr(X), "Y": repr(Y)}
                break
        if not ok:
            break
    rep.add(
        "braided-symmetry",
        "g(Y, X) = g(Rinv1 |> X, Rinv2 |> Y)",
        ok,
        bad,
    )

    ok, bad = True, None
    for a in coordinate_monomials(cal.alg, coeff_degree):
        for X in fields:
            for Y in fields:
                if metric(X.left_mul(a), Y) != M.mul(a, metric(X, Y)):
                    ok, bad = False, {"a": repr(a), "X": repr(X), "Y": repr(Y)}
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("left-linearity", "g(a X, Y) = a g(X, Y)", ok, bad)

    ok, bad = True, None
    for e in cal.lie.monomials_up_to(2):
        if not any(e):
            continue
        for X in fields:
            for Y in fields:
                lhs = cal.M.act(cal.lie.monomial(e), metric(X, Y))
                rhs = cal.alg.zero()
                for l, r, c in cal.cop_pairs(e):
                    Xa = cal.h_act_exp(l, X)
                    if Xa.is_zero():
                        continue
                    Ya = cal.h_act_exp(r, Y)
                    if Ya.is_zero():
                        continue
                    rhs = rhs + metric(Xa, Ya).scale(c)
                if lhs != rhs:
                    ok, bad = False, {"xi": repr(e), "X": repr(X), "Y": repr(Y)}
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add(
        "equivariance",
        "xi |> g(X, Y) = g(xi1 |> X, xi2 |> Y)",
        ok,
        bad,
    )
    return rep


def _structure_coefficients(cal):
    """f[a][b] maps frame index w to the e_w component of [e_a, e_b]_R."""
    out = []
    for a in range(cal.dim):
        row = []
        for b in range(cal.dim):
            br = cal.bracket(cal.frame_field(a), cal.frame_field(b))
            row.append({w: c for (w,), c in br.terms.items()})
        out.append(row)
    return out


def levi_civita(metric):
    """The unique torsion-free metric connection, solved from the Koszul
    combination by right-contraction with the metric inverse witness."""
    cal = metric.cal
    M = cal.M
    dim = cal.dim
    g = metric.matrix
    for u in range(dim):
        for v in range(dim):
            if g[u][v] != g[v][u]:
                raise MetricCheckFailed(
                    "frame matrix not symmetric at (%d, %d)" % (u, v)
                )
    f = _structure_coefficients(cal)
    half = Fraction(1, 2)
    gamma = [
        [[cal.alg.zero()] * dim for _ in range(dim)] for _ in range(dim)
    ]
    for a in range(dim):
        for b in range(dim):
            K = []
            for c in range(dim):
                val = (
                    cal.frame.apply_base(a, g[b][c])
                    + cal.frame.apply_base(b, g[a][c])
                    - cal.frame.apply_base(c, g[a][b])
                )
                for w in range(dim):
                    fab = f[a][b].get(w)
                    if fab is not None:
                        val = val + M.mul(fab, g[w][c])
                    fac = f[a][c].get(w)
                    if fac is not None:
                        val = val - M.mul(fac, g[w][b])
                    fbc = f[b][c].get(w)
                    if fbc is not None:
                        val = val - M.mul(fbc, g[w][a])
                K.append(val)
            for d in range(dim):
                tot = cal.alg.zero()
                for c in range(dim):
                    if K[c].is_zero():
                        continue
                    tot = tot + M.mul(K[c], metric.inverse[c][d])
                gamma[a][b][d] = tot.scale(half)
    conn = Connection(cal, gamma)
    # solve-time consistency on bare frame triples
    for a in range(dim):
        ea = cal.frame_field(a)
        for b in range(dim):
            eb = cal.frame_field(b)
            if not conn.torsion(ea, eb).is_zero():
                raise MetricCheckFailed(
                    "torsion does not close at (%d, %d)" % (a, b)
                )
            for c in range(dim):
                ec = cal.frame_field(c)
                lhs = cal.frame.apply_base(a, metric(eb, ec))
                rhs = metric(conn.nabla(ea, eb), ec) + metric(
                    eb, conn.nabla(ea, ec)
                )
                if lhs != rhs:
                    raise MetricCheckFailed(
                        "metricity fails at (%d, %d, %d)" % (a, b, c)
                    )
    return conn


def _metricity_violation(conn, metric, fields):
    """First braided-metricity counterexample over the family, or None."""
    cal = conn.cal
    M = cal.M
    for X in fields:
        for Y in fields:
            for Z in fields:
                lhs = cal.apply_field(X, metric(Y, Z))
                rhs = metric(conn.nabla(X, Y), Z)
                for (t1, t2), c in M.triangular.Rinv.terms.items():
                    Ya = cal.h_act_exp(t1, Y)
                    if Ya.is_zero():
                        continue
                    Xa = cal.h_act_exp(t2, X)
                    if Xa.is_zero():
                        continue
                    rhs = rhs + metric(Ya, conn.nabla(Xa, Z)).scale(c)
                if lhs != rhs:
                    return {"X": repr(X), "Y": repr(Y), "Z": repr(Z)}
    return None


def _torsion_violation(conn, fields):
    for X in fields:
        for Y in fields:
            if not conn.torsion(X, Y).is_zero():
                return {"X": repr(X), "Y": repr(Y)}
    return None


def geometry_suite(metric, coeff_degree=2):
    """Levi-Civita construction plus metric, metricity and torsion
    checks over the generated field family."""
    cal = metric.cal
    rep = Report("levi-civita", {"coeff_degree": coeff_degree})
    try:
        conn = levi_civita(metric)
    except MetricCheckFailed as exc:
        rep.add("solve", "Koszul solve closes on the frame", False,
                {"error": str(exc)})
        return rep
    rep.add("solve", "Koszul solve closes on the frame", True)
    rep.extend(check_metric(metric, coeff_degree=1))
    fields = field_family(cal, coeff_degree)
    bad = _metricity_violation(conn, metric, fields)
    rep.add(
        "metricity",
        "X(g(Y, Z)) = g(nabla_X Y, Z) + g(Rinv1 |> Y, nabla_{Rinv2 |> X} Z)",
        bad is None,
        bad,
    )
    bad = _torsion_violation(conn, fields)
    rep.add("torsion-free", "T(X, Y) = 0", bad is None, bad)
    return rep


def perturbation_suite(metric, seed=0, trials=20, coeff_degree=1):
    """Seeded falsification harness: every nonzero constant shift of a
    single Levi-Civita coefficient must break metricity or torsion."""
    cal = metric.cal
    conn = levi_civita(metric)
    rng = random.Random(seed)
    rep = Report("perturbation", {"seed": seed, "trials": trials})
    fields = field_family(cal, coeff_degree)
    for n in range(trials):
        a = rng.randrange(cal.dim)
        b = rng.randrange(cal.dim)
        c = rng.randrange(cal.dim)
        delta = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if rng.random() < 0.5:
            delta = -delta
        wrong = conn.perturbed(a, b, c, delta)
        caught = (
            _torsion_violation(wrong, fields) is not None
            or _metricity_violation(wrong, metric, fields) is not None
        )
        rep.add(
            "perturbation-%02d" % n,
            "shifted Gamma[%d][%d][%d] by %s breaks a law" % (a, b, c, delta),
            caught,
            None if caught else {"delta": str(delta)},
        )
    return rep


def twist_metric(metric, cl, tw):
    """Push a metric through the twist: entries are
    g_F(e_u, e_v) = sum g(Finv1 |> e_u, Finv2 |> e_v), the inverse
    witness recomputed for the product in force."""
    dim = cl.dim
    matrix = []
    for u in range(dim):
        row = []
        for v in range(dim):
            tot = cl.alg.zero()
            for (e1, e2), c in tw.M.twist.Finv.terms.items():
                Ua = cl.h_act_exp(e1, cl.frame_field(u))
                if Ua.is_zero():
                    continue
                Va = cl.h_act_exp(e2, cl.frame_field(v))
                if Va.is_zero():
                    continue
                tot = tot + metric(Ua, Va).scale(c)
            row.append(tot)
        matrix.append(row)
    return Metric(tw, matrix)


def twist_connection(conn, cl, tw):
    """Push a connection through the twist:
    nabla^F_X s = sum nabla_{Finv1 |> X}(Finv2 |> s), read off on the
    frame to produce the twisted coefficient table."""
    dim = cl.dim
    gamma = []
    for a in range(dim):
        row = []
        for b in range(dim):
            acc = None
            for (e1, e2), c in tw.M.twist.Finv.terms.items():
                Xa = cl.h_act_exp(e1, cl.frame_field(a))
                if Xa.is_zero():
                    continue
                sa = cl.h_act_exp(e2, cl.frame_field(b))
                if sa.is_zero():
                    continue
                piece = conn.nabla(Xa, sa).scale(c)
                acc = piece if acc is None else acc + piece
            entry = [cl.alg.zero()] * dim
            if acc is not None:
                for (w,), g in acc.terms.items():
                    entry[w] = g
            row.append(entry)
        gamma.append(row)
    return Connection(tw, gamma)


def geometry_twist_suite(metric, cl, tw, rational_metric=None):
    """Naturality of the Levi-Civita solve under the twist, the twisted
    geometry checks, and the classical shadow of the twisted table."""
    rep = Report("geometry-twist", {"order": cl.ring.order})
    conn = levi_civita(metric)
    gF = twist_metric(metric, cl, tw)
    lhs = twist_connection(conn, cl, tw)
    rhs = levi_civita(gF)
    rep.add(
        "lc-naturality",
        "twist(LC(g)) = LC(twist(g))",
        lhs == rhs,
        None if lhs == rhs else {"lhs": repr(lhs.gamma), "rhs": repr(rhs.gamma)},
    )
    fields = field_family(tw, 2)
    bad = _metricity_violation(rhs, gF, fields)
    rep.add(
        "twisted-metricity",
        "X(g(Y, Z)) = g(nabla_X Y, Z) + g(Rinv1 |> Y, nabla_{Rinv2 |> X} Z)",
        bad is None,
        bad,
    )
    bad = _torsion_violation(rhs, fields)
    rep.add("twisted-torsion-free", "T(X, Y) = 0", bad is None, bad)
    if rational_metric is not None:
        rcal = rational_metric.cal
        rconn = levi_civita(rational_metric)
        shadow = [
            [
                [g.h0(rcal.alg) for g in entry]
                for entry in row
            ]
            for row in rhs.gamma
        ]
        ok = shadow == rconn.gamma
        rep.add(
            "classical-shadow",
            "twisted LC coefficients reduce to the classical ones at h^0",
            ok,
            None if ok else {"shadow": repr(shadow)},
        )
    return rep
