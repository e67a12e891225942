"""Command line driver: run verification suites on scenario files.

A scenario is a JSON object naming the coefficient ring, the symmetry
algebra, and whichever structures the requested suites need (action,
twist, frame, metric, connection, ideal).  Polynomials and scalars are
written in a small plain-text grammar:

    scalar      "1", "-2/3", "h", "3/2 h^2"
    polynomial  "1 + x^2", "x y", "-2/3 x^2 y + h x"
    monomial    "P1", "P1^2 P2", "1"

Factors are separated by spaces; "h" is the deformation parameter and
is reserved.  Exit status: 0 when every check passes, 1 when a check
fails (including engine errors raised while a suite runs), 2 for
unusable input (bad JSON, missing sections, unknown names).
"""

import argparse
import json
import re
import sys
from fractions import Fraction

from .calculus import Calculus, cartan_suite, gauge_suite, schouten_suite
from .errors import (
    EngineError,
    MissingSection,
    SchemaError,
    UnknownName,
)
from .geometry import (
    Connection,
    Metric,
    _metricity_violation,
    _torsion_violation,
    check_connection,
    check_metric,
    field_family,
    geometry_suite,
    geometry_twist_suite,
    levi_civita,
    perturbation_suite,
)
from .hopf import LieAlgebra, TensorElement, TriangularStructure, check_hopf, check_triangular
from .modalg import (
    Action,
    ModuleAlgebra,
    check_braid_involutive,
    check_braided_commutative,
    check_module_algebra,
    star_product_suite,
)
from .report import Report
from .ring import RATIONAL, AlgebraElement, PolyAlgebra, Ring
from .submanifold import (
    Projection,
    SubmanifoldIdeal,
    check_sequence,
    projection_geometry_suite,
    projection_suite,
    twist_projection_suite,
)
from .twist import Twist, check_cocycle, check_twisted_hopf, exp_twist, twist_hopf


_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_POWER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)\^(\d+)$")


def _require(cond, err, detail):
    if not cond:
        raise err(detail)


def _section(data, key, required):
    got = data.get(key)
    if got is None and required:
        raise MissingSection(key)
    return got


def _split_terms(text):
    """Split an expression on top-level + and -, keeping signs."""
    out = []
    for chunk in text.replace("-", "+-").split("+"):
        chunk = chunk.strip()
        if chunk:
            out.append(chunk)
    if not out:
        raise SchemaError(("empty expression", text))
    return out


def _parse_factors(ring, term, names):
    """One product term -> (Scalar coefficient, exponent list)."""
    sign = 1
    term = term.strip()
    while term.startswith("-"):
        sign = -sign
        term = term[1:].strip()
    coeff = Fraction(sign)
    hpow = 0
    exps = [0] * len(names)
    for factor in term.split():
        if _RATIONAL.match(factor):
            coeff *= Fraction(factor)
            continue
        m = _POWER.match(factor)
        base, power = (m.group(1), int(m.group(2))) if m else (factor, 1)
        if base == "h":
            if not ring.is_series:
                raise SchemaError("h needs a series ring")
            hpow += power
            continue
        if base == "1" or _RATIONAL.match(base):
            raise SchemaError(("malformed factor", factor))
        if not _NAME.match(base):
            raise SchemaError(("malformed factor", factor))
        if base not in names:
            raise UnknownName((base, tuple(names)))
        exps[names.index(base)] += power
    s = ring.scalar(coeff)
    if hpow:
        s = s * ring.h(hpow)
    return s, exps


def parse_scalar(ring, text):
    """Rational-plus-h expression like "h", "-2/3", "3/2 h^2"."""
    _require(isinstance(text, str), SchemaError, ("scalar must be a string", text))
    tot = ring.zero()
    for term in _split_terms(text):
        s, exps = _parse_factors(ring, term, ())
        tot = tot + s
    return tot


def parse_poly(alg, text):
    """Polynomial over the scenario coordinates, "1 + x^2" style."""
    _require(isinstance(text, str), SchemaError, ("polynomial must be a string", text))
    tot = alg.zero()
    for term in _split_terms(text):
        s, exps = _parse_factors(alg.ring, term, alg.names)
        tot = tot + AlgebraElement(alg, {tuple(exps): s}, 0)
    return tot


def parse_hopf_monomial(lie, text):
    """PBW exponent tuple from "P1^2 P2"; "1" is the unit."""
    _require(isinstance(text, str), SchemaError, ("monomial must be a string", text))
    text = text.strip()
    if text == "1":
        return (0,) * lie.dim
    s, exps = _parse_factors(lie.ring, text, lie.generators)
    if s != lie.ring.one():
        raise SchemaError(("monomial must have coefficient 1", text))
    return tuple(exps)


class Scenario:
    """Parsed scenario: ring and symmetry up front, instance structures
    built on demand and cached."""

    def __init__(self, data, ring_override=None, include_twist=True):
        _require(isinstance(data, dict), SchemaError, "scenario must be a JSON object")
        known = {
            "ring", "lie_algebra", "action", "twist", "frame",
            "metric", "connection", "ideal", "suites", "params",
        }
        for key in data:
            if key not in known:
                raise UnknownName(("scenario section", key))
        self.data = data
        self.params = data.get("params") or {}
        _require(isinstance(self.params, dict), SchemaError, "params must be an object")
        self.ring = ring_override or self._parse_ring(_section(data, "ring", True))
        self.include_twist = include_twist
        self.lie = self._parse_lie(_section(data, "lie_algebra", True))
        self._alg = None
        self._action = None
        self._twist = None
        self._cal = {}

    @staticmethod
    def _parse_ring(sec):
        _require(isinstance(sec, dict), SchemaError, "ring must be an object")
        kind = sec.get("kind")
        if kind == "rational":
            return RATIONAL
        if kind == "series":
            order = sec.get("order")
            _require(
                isinstance(order, int) and order >= 1,
                SchemaError,
                ("series ring needs a positive integer order", order),
            )
            return Ring("series", order)
        raise SchemaError(("ring kind must be rational or series", kind))

    def _parse_lie(self, sec):
        _require(isinstance(sec, dict), SchemaError, "lie_algebra must be an object")
        gens = sec.get("generators")
        _require(
            isinstance(gens, list) and gens and all(isinstance(g, str) for g in gens),
            SchemaError,
            "generators must be a non-empty list of names",
        )
        for g in gens:
            _require(_NAME.match(g) and g != "h", SchemaError, ("bad generator name", g))
        _require(len(set(gens)) == len(gens), SchemaError, "duplicate generator")
        brackets = {}
        for key, val in (sec.get("brackets") or {}).items():
            pair = key.split()
            _require(len(pair) == 2, SchemaError, ("bracket key must be two names", key))
            idx = []
            for g in pair:
                if g not in gens:
                    raise UnknownName((g, tuple(gens)))
                idx.append(gens.index(g))
            i, j = idx
            _require(i != j, SchemaError, ("bracket of a generator with itself", key))
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            comps = {}
            _require(isinstance(val, dict), SchemaError, ("bracket value must be an object", key))
            for g, c in val.items():
                if g not in gens:
                    raise UnknownName((g, tuple(gens)))
                comps[gens.index(g)] = self.ring.scalar(sign * Fraction(c))
            brackets[(i, j)] = comps
        return LieAlgebra(self.ring, tuple(gens), brackets)

    # -- structures ----------------------------------------------------

    @property
    def algebra(self):
        if self._alg is None:
            sec = _section(self.data, "action", True)
            _require(isinstance(sec, dict), SchemaError, "action must be an object")
            coords = sec.get("coordinates")
            _require(
                isinstance(coords, list) and coords
                and all(isinstance(c, str) for c in coords),
                SchemaError,
                "coordinates must be a non-empty list of names",
            )
            for c in coords:
                _require(_NAME.match(c) and c != "h", SchemaError, ("bad coordinate name", c))
            _require(len(set(coords)) == len(coords), SchemaError, "duplicate coordinate")
            unit = None
            if sec.get("unit") is not None:
                plain = PolyAlgebra(self.ring, tuple(coords))
                poly = parse_poly(plain, sec["unit"])
                unit = dict(poly.num)
            self._alg = PolyAlgebra(self.ring, tuple(coords), unit=unit)
        return self._alg

    @property
    def action(self):
        if self._action is None:
            sec = _section(self.data, "action", True)
            alg = self.algebra
            images = {}
            img_sec = sec.get("images") or {}
            _require(isinstance(img_sec, dict), SchemaError, "images must be an object")
            for gname, row in img_sec.items():
                if gname not in self.lie.generators:
                    raise UnknownName((gname, self.lie.generators))
                _require(isinstance(row, dict), SchemaError, ("image row must be an object", gname))
                full = [alg.zero()] * alg.arity
                for cname, poly in row.items():
                    if cname not in alg.names:
                        raise UnknownName((cname, alg.names))
                    full[alg.names.index(cname)] = parse_poly(alg, poly)
                images[self.lie.generators.index(gname)] = tuple(full)
            self._action = Action(self.lie, alg, images)
        return self._action

    @property
    def twist(self):
        if self._twist is None:
            sec = _section(self.data, "twist", True)
            _require(isinstance(sec, dict), SchemaError, "twist must be an object")
            kind = sec.get("kind")
            if kind == "exp":
                terms = sec.get("bivector")
                tensor = self._parse_tensor(terms, "bivector")
                tw = exp_twist(self.lie, tensor)
            elif kind == "tensor":
                terms = sec.get("terms")
                tensor = self._parse_tensor(terms, "terms")
                tw = Twist.from_tensor(self.lie, tensor)
            else:
                raise SchemaError(("twist kind must be exp or tensor", kind))
            if sec.get("swap"):
                tw = tw.swapped()
            self._twist = tw
        return self._twist

    def _parse_tensor(self, terms, label):
        _require(
            isinstance(terms, list) and terms,
            SchemaError,
            ("%s must be a non-empty list of [left, right, coeff]" % label),
        )
        out = {}
        for item in terms:
            _require(
                isinstance(item, list) and len(item) == 3,
                SchemaError,
                ("tensor term must be [left, right, coeff]", item),
            )
            left = parse_hopf_monomial(self.lie, item[0])
            right = parse_hopf_monomial(self.lie, item[1])
            coeff = parse_scalar(self.ring, item[2])
            key = (left, right)
            out[key] = out.get(key, self.ring.zero()) + coeff
        return TensorElement(self.lie, 2, out)

    def module_algebra(self, twisted=True):
        twist = None
        if twisted and self.include_twist and self.data.get("twist") is not None:
            twist = self.twist
        return ModuleAlgebra(self.action, twist=twist)

    def frame_images(self):
        sec = self.data.get("frame")
        if sec is None:
            return None
        alg = self.algebra
        _require(
            isinstance(sec, list) and sec,
            SchemaError,
            "frame must be a non-empty list of rows",
        )
        frame = []
        for row in sec:
            _require(isinstance(row, dict), SchemaError, ("frame row must be an object", row))
            full = [alg.zero()] * alg.arity
            for cname, poly in row.items():
                if cname not in alg.names:
                    raise UnknownName((cname, alg.names))
                full[alg.names.index(cname)] = parse_poly(alg, poly)
            frame.append(tuple(full))
        return frame

    def calculus(self, twisted=True):
        key = bool(twisted)
        if key not in self._cal:
            self._cal[key] = Calculus(
                self.module_algebra(twisted), self.frame_images()
            )
        return self._cal[key]

    def metric(self, cal):
        sec = _section(self.data, "metric", True)
        dim = cal.dim
        _require(
            isinstance(sec, list) and len(sec) == dim
            and all(isinstance(r, list) and len(r) == dim for r in sec),
            SchemaError,
            "metric must be a dim x dim matrix of polynomials",
        )
        matrix = [[parse_poly(cal.alg, e) for e in row] for row in sec]
        return Metric(cal, matrix)

    def connection(self, cal):
        sec = _section(self.data, "connection", True)
        dim = cal.dim
        _require(
            isinstance(sec, list) and len(sec) == dim
            and all(
                isinstance(r, list) and len(r) == dim
                and all(isinstance(e, list) and len(e) == dim for e in r)
                for r in sec
            ),
            SchemaError,
            "connection must be a dim x dim x dim table of polynomials",
        )
        gamma = [
            [[parse_poly(cal.alg, e) for e in entry] for entry in row]
            for row in sec
        ]
        return Connection(cal, gamma)

    def ideal(self):
        sec = _section(self.data, "ideal", True)
        _require(isinstance(sec, dict), SchemaError, "ideal must be an object")
        coords = sec.get("normal_coordinates")
        alg = self.algebra
        _require(
            isinstance(coords, list) and coords
            and all(isinstance(c, str) for c in coords),
            SchemaError,
            "normal_coordinates must be a non-empty list of names",
        )
        normal = []
        for c in coords:
            if c not in alg.names:
                raise UnknownName((c, alg.names))
            normal.append(alg.names.index(c))
        return SubmanifoldIdeal(alg, normal_coords=normal)

    def antipode_table(self):
        sec = self.params.get("antipode_override")
        if sec is None:
            return None
        _require(isinstance(sec, dict), SchemaError, "antipode_override must be an object")
        table = {}
        for gname, terms in sec.items():
            if gname not in self.lie.generators:
                raise UnknownName((gname, self.lie.generators))
            elem = self.lie.zero()
            _require(isinstance(terms, list), SchemaError, "override must list [monomial, coeff] pairs")
            for item in terms:
                _require(
                    isinstance(item, list) and len(item) == 2,
                    SchemaError,
                    ("override term must be [monomial, coeff]", item),
                )
                exp = parse_hopf_monomial(self.lie, item[0])
                elem = elem + self.lie.monomial(exp, parse_scalar(self.ring, item[1]))
            table[self.lie.generators.index(gname)] = elem
        return table

    # -- knobs -----------------------------------------------------------

    def knob(self, opts, name, default):
        got = getattr(opts, name.replace("-", "_"), None)
        if got is None:
            got = self.params.get(name, default)
        _require(isinstance(got, int) and got >= 0, SchemaError, ("bad %s" % name, got))
        return got


# -- suite runners -------------------------------------------------------


def _guarded(title, fn):
    """Run one suite; an engine error becomes a failing report row.
    Scenario-shape errors stay fatal and exit with status 2."""
    try:
        return fn()
    except (SchemaError, MissingSection, UnknownName):
        raise
    except EngineError as exc:
        rep = Report(title, {})
        rep.add(
            "construction",
            "instance builds without engine errors",
            False,
            {"error": type(exc).__name__, "detail": str(exc)},
        )
        return [rep]


def run_check_hopf(sc, opts):
    depth = sc.knob(opts, "depth", 3)
    table = sc.antipode_table()
    lie = sc.lie
    return [
        check_hopf(lie, depth, antipode_table=table),
        check_triangular(lie, TriangularStructure(lie), depth),
    ]


def run_check_twist(sc, opts):
    depth = sc.knob(opts, "depth", 3)
    tw = sc.twist
    return [
        check_cocycle(tw),
        check_twisted_hopf(twist_hopf(sc.lie, tw), depth),
    ]


def run_star(sc, opts):
    depth = sc.knob(opts, "depth", 3)
    degree = sc.knob(opts, "degree", 2)
    M = sc.module_algebra()
    return [
        check_module_algebra(M, depth, degree),
        star_product_suite(M, max(degree, 3)),
        check_braided_commutative(M, degree),
        check_braid_involutive(M, degree),
    ]


def run_cartan(sc, opts):
    degree = sc.knob(opts, "degree", 2)
    wedge_grade = sc.knob(opts, "wedge_grade", 2)
    cal = sc.calculus()
    return [
        cartan_suite(cal, wedge_grade=wedge_grade, coeff_degree=degree),
        schouten_suite(cal, coeff_degree=min(degree, 1)),
    ]


def run_gauge(sc, opts):
    _section(sc.data, "twist", True)
    cl = sc.calculus(twisted=False)
    tw = sc.calculus(twisted=True)
    rational_cal = None
    if sc.params.get("classical_shadow"):
        shadow = Scenario(sc.data, ring_override=RATIONAL, include_twist=False)
        rational_cal = shadow.calculus(twisted=False)
    transport_cal = None
    if sc.params.get("transport_swap"):
        # falsification knob: transports run against the inverse twist
        bad = ModuleAlgebra(sc.action, twist=sc.twist.swapped())
        transport_cal = Calculus(bad, sc.frame_images())
    return [gauge_suite(cl, tw, rational_cal, transport_cal)]


def run_levi_civita(sc, opts):
    degree = sc.knob(opts, "degree", 2)
    seed = sc.knob(opts, "seed", 0)
    trials = sc.knob(opts, "trials", 20)
    cal = sc.calculus(twisted=False)
    metric = sc.metric(cal)
    reports = [
        check_metric(metric, coeff_degree=min(degree, 1)),
        geometry_suite(metric, coeff_degree=degree),
        perturbation_suite(metric, seed=seed, trials=trials),
    ]
    if sc.data.get("connection") is not None:
        conn = sc.connection(cal)
        rep = Report("declared-connection", {})
        rep.extend(check_connection(conn, coeff_degree=min(degree, 1)))
        fields = field_family(cal, min(degree, 1))
        bad = _torsion_violation(conn, fields)
        rep.add("declared-torsion-free", "T(X, Y) = 0", bad is None, bad)
        bad = _metricity_violation(conn, metric, fields)
        rep.add(
            "declared-metricity",
            "X(g(Y, Z)) = g(nabla_X Y, Z) + g(Rinv1 |> Y, nabla_{Rinv2 |> X} Z)",
            bad is None,
            bad,
        )
        solved = levi_civita(metric)
        rep.add(
            "declared-matches-solve",
            "declared table equals the solved metric connection",
            conn == solved,
        )
        reports.append(rep)
    if sc.data.get("twist") is not None:
        twc = sc.calculus(twisted=True)
        rational_metric = None
        if sc.params.get("classical_shadow"):
            shadow = Scenario(sc.data, ring_override=RATIONAL, include_twist=False)
            rational_metric = shadow.metric(shadow.calculus(twisted=False))
        reports.append(geometry_twist_suite(metric, cal, twc, rational_metric))
    return reports


def run_project(sc, opts):
    depth = sc.knob(opts, "depth", 2)
    degree = sc.knob(opts, "degree", 2)
    cal = sc.calculus()
    ideal = sc.ideal()
    reports = []
    if sc.data.get("twist") is not None:
        rep, proj = twist_projection_suite(
            cal, ideal, coeff_degree=degree, depth=depth
        )
        reports.append(rep)
    else:
        proj = Projection(cal, ideal, depth=depth)
        reports.append(projection_suite(proj, degree, depth))
    reports.append(check_sequence(proj, degree))
    if sc.data.get("metric") is not None:
        metric = sc.metric(cal)
        reports.append(
            projection_geometry_suite(proj, metric, coeff_degree=min(degree, 1))
        )
    return reports


_RUNNERS = (
    ("check-hopf", run_check_hopf, ("lie_algebra",)),
    ("check-twist", run_check_twist, ("lie_algebra", "twist")),
    ("star", run_star, ("lie_algebra", "action")),
    ("cartan", run_cartan, ("lie_algebra", "action")),
    ("gauge", run_gauge, ("lie_algebra", "action", "twist")),
    ("levi-civita", run_levi_civita, ("lie_algebra", "action", "metric")),
    ("project", run_project, ("lie_algebra", "action", "ideal")),
)


def run_all(sc, opts):
    wanted = sc.data.get("suites")
    if wanted is not None:
        _require(
            isinstance(wanted, list) and all(isinstance(w, str) for w in wanted),
            SchemaError,
            "suites must be a list of subcommand names",
        )
        known = {name for name, _, _ in _RUNNERS}
        for w in wanted:
            if w not in known:
                raise UnknownName((w, sorted(known)))
    reports = []
    for name, fn, needs in _RUNNERS:
        if wanted is not None and name not in wanted:
            continue
        if any(sc.data.get(k) is None for k in needs):
            continue
        reports.extend(_guarded(name, lambda fn=fn: fn(sc, opts)))
    if not reports:
        raise SchemaError("no suite applies to this scenario")
    return reports


# -- entry point ---------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="braidcalc",
        description="verify braided Cartan calculus laws on a scenario file",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = [name for name, _, _ in _RUNNERS] + ["all"]
    for name in commands:
        p = sub.add_parser(name)
        p.add_argument("scenario", help="path to a scenario JSON file")
        p.add_argument("--depth", type=int, default=None,
                       help="Hopf monomial degree bound")
        p.add_argument("--degree", type=int, default=None,
                       help="coefficient degree bound for check families")
        p.add_argument("--order", type=int, default=None,
                       help="series truncation order override")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for the perturbation falsifier")
        p.add_argument("--format", choices=("text", "structured"),
                       default="text", help="report rendering")
    return parser


def _load_scenario(opts):
    try:
        with open(opts.scenario, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(("cannot read scenario", str(exc)))
    except json.JSONDecodeError as exc:
        raise SchemaError(("scenario is not valid JSON", str(exc)))
    ring_override = None
    if opts.order is not None:
        ring_sec = data.get("ring") if isinstance(data, dict) else None
        _require(
            isinstance(ring_sec, dict) and ring_sec.get("kind") == "series",
            SchemaError,
            "--order applies to series-ring scenarios only",
        )
        _require(opts.order >= 1, SchemaError, ("bad --order", opts.order))
        ring_override = Ring("series", opts.order)
    return Scenario(data, ring_override=ring_override)


def main(argv=None):
    parser = build_parser()
    opts = parser.parse_args(argv)
    try:
        sc = _load_scenario(opts)
        if opts.command == "all":
            reports = run_all(sc, opts)
        else:
            fn = dict((n, f) for n, f, _ in _RUNNERS)[opts.command]
            reports = _guarded(opts.command, lambda: fn(sc, opts))
    except (SchemaError, MissingSection, UnknownName) as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2
    except EngineError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2

    passed = all(r.passed for r in reports)
    if opts.format == "structured":
        payload = {
            "command": opts.command,
            "passed": passed,
            "reports": [r.as_dict() for r in reports],
        }
        print(json.dumps(payload, indent=2, default=str))
    else:
        for r in reports:
            print(r.to_text())
        total = sum(len(r.checks) for r in reports)
        failing = sum(len(r.failing()) for r in reports)
        print("OVERALL: %s (%d checks, %d failing)"
              % ("PASS" if passed else "FAIL", total, failing))
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
