"""H-module algebras, star products and the braiding.

An Action sends each Lie generator to a derivation of the coordinate
algebra (a polynomial vector field, given by its images on
coordinates); PBW monomials act by composing generator actions
left-to-right (leftmost factor outermost).  Compatibility with the
bracket table is verified at construction.

A ModuleAlgebra bundles the action with the product and triangular
structure *in force*: the plain product with R = 1(x)1 for a classical
instance, or the star product a * b = mu (Finv |> (a (x) b)) with
R_F = F21 R Finv for a twisted instance.  The twisted instance is a
module algebra over the twisted Hopf structure, so its coproduct and
antipode (used by every braided formula downstream) are cop_F and S_F.
"""

from .errors import ArityMismatch, RingMismatch, UnknownModule
from .hopf import TriangularStructure
from .report import Report
from .ring import AlgebraElement
from .twist import Twist, TwistedHopfData


class Action:
    """Lie generators acting as derivations on a polynomial algebra."""

    def __init__(self, lie, algebra, images, check=True):
        if lie.ring != algebra.ring:
            raise RingMismatch((lie.ring, algebra.ring))
        self.lie = lie
        self.algebra = algebra
        imgs = {}
        for i in range(lie.dim):
            row = tuple(images.get(i, ()) or [algebra.zero()] * algebra.arity)
            if len(row) != algebra.arity:
                raise ArityMismatch((lie.generators[i], len(row)))
            imgs[i] = row
        self.images = imgs
        self._cache = {}
        if check:
            self._check_bracket_compatibility()

    def _check_bracket_compatibility(self):
        """[D_i, D_j] must equal the action of [x_i, x_j] on coordinates."""
        for i in range(self.lie.dim):
            for j in range(i + 1, self.lie.dim):
                comps = self.lie.bracket_components(i, j)
                for k in range(self.algebra.arity):
                    c = self.algebra.coord(k)
                    lhs = self.deriv(i, self.deriv(j, c)) - self.deriv(
                        j, self.deriv(i, c)
                    )
                    rhs = self.algebra.zero()
                    for l, s in comps.items():
                        rhs = rhs + self.deriv(l, c).scale(s)
                    assert lhs == rhs, (
                        "action incompatible with bracket",
                        self.lie.generators[i],
                        self.lie.generators[j],
                    )

    def deriv(self, i, a):
        """Generator i acting as sum_j image_ij * d(a)/d(coord_j)."""
        out = self.algebra.zero()
        for j, img in enumerate(self.images[i]):
            if img.is_zero():
                continue
            da = a.deriv(j)
            if not da.is_zero():
                out = out + img * da
        return out

    def act_monomial(self, exp, a):
        """PBW monomial action: composition, leftmost factor outermost."""
        key = (exp, a)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        out = a
        for i in range(len(exp) - 1, -1, -1):
            for _ in range(exp[i]):
                out = self.deriv(i, out)
                if out.is_zero():
                    break
        self._cache[key] = out
        return out

    def act(self, xi, a):
        """HopfElement action on an algebra element."""
        out = self.algebra.zero()
        for e, c in xi.terms.items():
            piece = self.act_monomial(e, a)
            if not piece.is_zero():
                out = out + piece.scale(c)
        return out


class ModuleAlgebra:
    """Coordinate algebra + action + the product and R-matrix in force."""

    def __init__(self, action, twist=None, base_triangular=None):
        self.action = action
        self.lie = action.lie
        self.algebra = action.algebra
        if base_triangular is None:
            base_triangular = TriangularStructure(self.lie)
        self.base_triangular = base_triangular
        if twist is None:
            twist = Twist.trivial(self.lie)
        self.twist = twist
        if twist.is_trivial:
            self.hopf_data = None
            self.triangular = base_triangular
        else:
            self.hopf_data = TwistedHopfData(self.lie, twist, base_triangular)
            self.triangular = self.hopf_data.triangular
        self._star_cache = {}

    @property
    def is_twisted(self):
        return self.hopf_data is not None

    def __repr__(self):
        return "ModuleAlgebra(%r, twisted=%r)" % (
            self.algebra,
            self.is_twisted,
        )

    # -- Hopf structure in force --------------------------------------

    def coproduct(self, xi):
        if self.hopf_data is not None:
            return self.hopf_data.coproduct(xi)
        return xi.coproduct()

    def antipode(self, xi):
        if self.hopf_data is not None:
            return self.hopf_data.antipode(xi)
        return xi.antipode()

    def act(self, xi, a):
        return self.action.act(xi, a)

    # -- product in force ----------------------------------------------

    def mul(self, a, b):
        if self.hopf_data is None:
            return a * b
        key = (a, b)
        cached = self._star_cache.get(key)
        if cached is not None:
            return cached
        out = self.algebra.zero()
        for (el, er), c in self.twist.Finv.terms.items():
            left = self.action.act_monomial(el, a)
            if left.is_zero():
                continue
            right = self.action.act_monomial(er, b)
            if right.is_zero():
                continue
            out = out + (left * right).scale(c)
        self._star_cache[key] = out
        return out

    def one(self):
        return self.algebra.one()

    # -- braiding --------------------------------------------------------

    def braid_algebra_pairs(self, pairs):
        """c^R on a sum of algebra-element pure tensors:
        sum_i a_i (x) b_i -> sum (Rinv1 |> b_i) (x) (Rinv2 |> a_i)."""
        out = []
        for a, b in pairs:
            if not (isinstance(a, AlgebraElement) and isinstance(b, AlgebraElement)):
                raise UnknownModule((type(a), type(b)))
            for (el, er), c in self.triangular.Rinv.terms.items():
                left = self.action.act_monomial(el, b).scale(c)
                if left.is_zero():
                    continue
                right = self.action.act_monomial(er, a)
                if right.is_zero():
                    continue
                out.append((left, right))
        return out

    @staticmethod
    def tensor_expand(pairs):
        """Canonical form of a sum of algebra pure tensors, for equality."""
        acc = {}
        for a, b in pairs:
            for ea, ca in a.num.items():
                for eb, cb in b.num.items():
                    key = (ea, a.du, eb, b.du)
                    c = ca * cb
                    prev = acc.get(key)
                    v = c if prev is None else prev + c
                    if v.is_zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = v
        return acc

    # -- instances across rings ------------------------------------------

    def classical_limit(self, target_action):
        """The h^0 shadow of this instance over a rational-ring action."""
        return ModuleAlgebra(target_action)


# ---------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------


def coordinate_monomials(algebra, max_degree):
    """All plain coordinate monomials of total degree <= max_degree."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == algebra.arity:
            out.append(algebra.monomial(tuple(prefix)))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k)

    rec([], max_degree)
    out.sort(key=lambda m: (m.total_degree(), sorted(m.num)))
    return out


def check_module_algebra(M, depth=3, degree=2):
    """Unit law and the Leibniz/coproduct compatibility of the action
    with the product in force (star product against cop_F if twisted)."""
    rep = Report(
        "module-algebra", {"depth": depth, "degree": degree,
                           "twisted": M.is_twisted}
    )
    lie = M.lie
    monos = lie.monomials_up_to(depth)

    ok, bad = True, None
    for e in monos:
        xi = lie.monomial(e)
        lhs = M.act(xi, M.one())
        rhs = M.one().scale(xi.counit())
        if lhs != rhs:
            ok, bad = False, {"monomial": repr(xi)}
            break
    rep.add("unit-law", "xi |> 1 = eps(xi) 1", ok, bad)

    ok, bad = True, None
    elems = coordinate_monomials(M.algebra, degree)
    for e in monos:
        xi = lie.monomial(e)
        cop = M.coproduct(xi)
        for a in elems:
            for b in elems:
                lhs = M.act(xi, M.mul(a, b))
                rhs = M.algebra.zero()
                for (l, r), c in cop.terms.items():
                    la = M.action.act_monomial(l, a)
                    if la.is_zero():
                        continue
                    rb = M.action.act_monomial(r, b)
                    if rb.is_zero():
                        continue
                    rhs = rhs + M.mul(la, rb).scale(c)
                if lhs != rhs:
                    ok, bad = False, {
                        "monomial": repr(xi),
                        "a": repr(a),
                        "b": repr(b),
                    }
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add(
        "leibniz",
        "xi |> (a b) = (xi_(1) |> a)(xi_(2) |> b)",
        ok,
        bad,
    )
    return rep


def check_braided_commutative(M, degree=2):
    """a b = (Rinv1 |> b)(Rinv2 |> a) for the product and R in force."""
    rep = Report("braided-commutative", {"degree": degree})
    elems = coordinate_monomials(M.algebra, degree)
    Rinv = M.triangular.Rinv
    ok, bad = True, None
    for a in elems:
        for b in elems:
            lhs = M.mul(a, b)
            rhs = M.algebra.zero()
            for (el, er), c in Rinv.terms.items():
                lb = M.action.act_monomial(el, b)
                if lb.is_zero():
                    continue
                ra = M.action.act_monomial(er, a)
                if ra.is_zero():
                    continue
                rhs = rhs + M.mul(lb, ra).scale(c)
            if lhs != rhs:
                ok, bad = False, {"a": repr(a), "b": repr(b),
                                  "lhs": repr(lhs), "rhs": repr(rhs)}
                break
        if not ok:
            break
    rep.add(
        "braided-commutativity",
        "a b = (Rinv1 |> b)(Rinv2 |> a)",
        ok,
        bad,
    )
    return rep


def check_braid_involutive(M, degree=2):
    """c^R applied twice is the identity on algebra pure tensors."""
    rep = Report("braid-involutive", {"degree": degree})
    elems = coordinate_monomials(M.algebra, degree)
    ok, bad = True, None
    for a in elems:
        for b in elems:
            twice = M.braid_algebra_pairs(M.braid_algebra_pairs([(a, b)]))
            if M.tensor_expand(twice) != M.tensor_expand([(a, b)]):
                ok, bad = False, {"a": repr(a), "b": repr(b)}
                break
        if not ok:
            break
    rep.add("involutive", "c^R . c^R = id", ok, bad)
    return rep


def star_product_suite(M, degree=3):
    """Associativity and classical-limit checks for a twisted product."""
    rep = Report("star-product", {"degree": degree})
    elems = coordinate_monomials(M.algebra, degree)

    ok, bad = True, None
    for a in elems:
        for b in elems:
            for c in elems:
                lhs = M.mul(M.mul(a, b), c)
                rhs = M.mul(a, M.mul(b, c))
                if lhs != rhs:
                    ok, bad = False, {"a": repr(a), "b": repr(b), "c": repr(c)}
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("associativity", "(a b) c = a (b c)", ok, bad)

    rep.extend(check_braided_commutative(M, degree))
    return rep
