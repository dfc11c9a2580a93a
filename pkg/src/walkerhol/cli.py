"""Command line interface: ``walkerhol <verb> ...``.

Every verb prints a report of ``key = value`` lines (or a JSON object with
the same keys under ``--json``).  Exit codes: 0 when the requested
properties hold, 1 when a checked property fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import forge, walker
from .curvspace import spaces
from .exactnum import EvaluationError, ParseError, Poly, Q, Rational, fmt_q
from .formats import format_value, load_algebra, load_walker, write_walker
from .liealg import BUILTIN_NAMES, AlgebraError, HolonomyDescriptor, builtin, format_matrix
from .walker import MetricError

log = logging.getLogger("walkerhol")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


Report = list  # ordered (key, value) pairs


def _json_value(v):
    if isinstance(v, bool) or isinstance(v, int):
        return v
    if isinstance(v, Rational):
        return fmt_q(v)
    return str(v)


def render(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps({k: _json_value(v) for k, v in report}, indent=2)
    return "\n".join(f"{k} = {format_value(v)}" for k, v in report)


def _parse_q(text: str) -> Rational:
    try:
        return Q(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def _parse_points(text: str, N: int) -> list[tuple]:
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        vals = [_parse_q(x) for x in chunk.split(",")]
        if len(vals) != N:
            raise InputError(f"point {chunk!r} has {len(vals)} coordinates, expected {N}")
        pts.append(tuple(vals))
    if not pts:
        raise InputError("--points is empty")
    return pts


def _check_expect(report: Report, expect: list[str] | None) -> int:
    if not expect:
        return EXIT_OK
    values = dict(report)
    for key in expect:
        if key not in values:
            raise InputError(f"--expect {key}: no such property in this report")
        if values[key] is not True:
            return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_spaces(args) -> tuple[Report, int]:
    h = load_algebra(args.algebra)
    rep = spaces(h)
    report: Report = [("algebra", h.name or args.algebra), ("n", h.n), ("dim_h", h.dim)]
    report += rep.items()
    try:
        blocks, n_triv = forge.block_algebras(HolonomyDescriptor(2, h))
    except AlgebraError as exc:
        report.append(("blocks", f"unavailable ({exc})"))
        return report, _check_expect(report, args.expect)
    report.append(("blocks", len(blocks)))
    report.append(("n_trivial", n_triv))
    for k, b in enumerate(blocks, 1):
        r = spaces(b)
        report += [
            (f"block{k}_n", b.n),
            (f"block{k}_dim", b.dim),
            (f"block{k}_dim_R0", r.dim_R0),
            (f"block{k}_dim_R1", r.dim_R1),
            (f"block{k}_dim_P1", r.dim_P1),
        ]
    return report, _check_expect(report, args.expect)


def cmd_construct(args) -> tuple[Report, int]:
    h = load_algebra(args.holonomy)
    lam = _parse_q(args.lam)
    typ = args.type
    regime = "vacuum" if not lam else "einstein"
    d = HolonomyDescriptor(typ, h)
    decision = forge.admissible(d, regime, lam)
    report: Report = [("holonomy", h.name or args.holonomy), ("type", typ), ("lambda", lam), ("admissible", decision.ok)]
    if not decision.ok:
        report.append(("reason", decision.reason))
        return report, EXIT_FAIL
    if lam:
        if h.n != 2 or h.dim != 1:
            raise InputError("construct with lambda != 0 is available for builtin:so:2 only")
        N = h.n + 2
        # Ric = (n - 1) c h on a space form; for n = 2 flat-harmonic functions stay harmonic
        hm = forge.space_form_metric(h.n, lam / (h.n - 1))
        f0 = Poly.var(N, 1, 2) - Poly.var(N, 2, 2)
        res = forge.construct_type1_einstein(hm, lam, f0, holonomy=h, order=args.order)
    elif typ == 2:
        res = forge.construct_type2_vacuum(h, order=args.order)
    else:
        res = forge.construct_type1_vacuum(h, order=args.order)
    Path(args.out).write_text(write_walker(res.metric, res.certificate))
    seen = {k for k, _ in report}
    report += [(k, v) for k, v in res.certificate if k not in seen]
    report.append(("out", args.out))
    cert = res.cert()
    ok = cert.get("vacuum", cert.get("einstein")) is True and cert.get("holonomy_matches") is True
    code = EXIT_OK if ok else EXIT_FAIL
    return report, max(code, _check_expect(report, args.expect))


def _coord(a: int, b: int) -> str:
    return f"Ric[{a}][{b}]"


def cmd_verify(args) -> tuple[Report, int]:
    g, cert = load_walker(args.metric)
    lam = _parse_q(args.lam) if args.lam is not None else walker.einstein_constant(g)
    defects = walker.einstein_defects(g, lam) if lam is not None else [(0, g.nvars - 1)]
    vacuum = walker.is_vacuum(g)
    iso = walker.is_totally_ricci_isotropic(g)
    report: Report = [
        ("n", g.n),
        ("family", g.family),
        ("lambda", lam if lam is not None else "none"),
        ("einstein", not defects),
        ("vacuum", vacuum),
        ("ricci_isotropic", iso),
        ("hessian_nondegenerate", walker.hessian_nondegenerate(g)),
    ]
    if defects:
        report.append(("offending", _coord(*defects[0])))
    if cert:
        claims = dict(cert)
        agree = True
        if "vacuum" in claims:
            agree = agree and claims["vacuum"] is vacuum
        if "einstein" in claims:
            agree = agree and claims["einstein"] is (not defects)
        report.append(("certificate_confirmed", agree))
    return report, _check_expect(report, args.expect)


def _match_builtin(h) -> str:
    candidates = []
    n = h.n
    for name in BUILTIN_NAMES:
        if name in ("g2", "spin7", "so3irr5"):
            candidates.append(name)
        elif name in ("so", "trivial"):
            candidates.append(f"{name}:{n}")
        elif name in ("u", "su") and n % 2 == 0:
            candidates.append(f"{name}:{n // 2}")
        elif name in ("sp", "spsp1") and n % 4 == 0:
            candidates.append(f"{name}:{n // 4}")
    for c in candidates:
        try:
            b = builtin(c)
        except AlgebraError:
            continue
        if b.n == n and b.dim == h.dim and h.same_span(b):
            return c
    return "none"


def cmd_holonomy(args) -> tuple[Report, int]:
    g, _ = load_walker(args.metric)
    points = _parse_points(args.points, g.nvars) if args.points else None
    if not walker.hessian_nondegenerate(g):
        log.warning("the Hessian of f in x1..xn is degenerate; the holonomy may fail to be weakly irreducible")
    try:
        span = walker.infinitesimal_holonomy(g, points, order=args.order)
    except EvaluationError as exc:
        raise InputError(str(exc)) from exc
    report: Report = [
        ("n", g.n),
        ("order", args.order),
        ("points", ";".join(",".join(fmt_q(x) for x in p) for p in span.points)),
        ("span_dim", span.dim),
        ("dims_by_order", ",".join(str(d) for d in span.dims_by_order)),
        ("closed", span.is_closed()),
        ("orthonormal_frames", span.normalized),
    ]
    try:
        cls = walker.classify_walker_type(span)
    except AlgebraError as exc:
        report += [("type", "none"), ("reason", str(exc))]
        return report, _check_expect(report, args.expect)
    report += [
        ("type", cls.type if cls.type is not None else "none"),
        ("dim_orthogonal", cls.dim_A),
        ("dim_translations", cls.dim_translations),
        ("matched", _match_builtin(cls.h) if cls.h is not None else "none"),
    ]
    if cls.reason:
        report.append(("reason", cls.reason))
    if span.sim is not None:
        for k, e in enumerate(span.sim, 1):
            X = ",".join(fmt_q(x) for x in e.X)
            report.append((f"basis{k}", f"a={fmt_q(e.a)} A={format_matrix(e.A)} X=[{X}]"))
    return report, _check_expect(report, args.expect)


def cmd_classify(args) -> tuple[Report, int]:
    regime = args.regime
    lam = _parse_q(args.lam) if args.lam is not None else None
    if args.metric:
        g, _ = load_walker(args.metric)
        span = walker.infinitesimal_holonomy(g, order=args.order)
        cls = walker.classify_walker_type(span)
        if cls.descriptor is None:
            raise InputError(f"the metric has no classified holonomy: {cls.reason or 'zero span'}")
        d = cls.descriptor
        name = _match_builtin(d.h)
    else:
        if args.type is None:
            raise InputError("classify needs --type (with --algebra) or --metric")
        if args.algebra is None:
            gate = forge.type_gate(args.type, regime, lam)
            if gate is None:
                raise InputError(f"type {args.type} needs --algebra to decide")
            report: Report = [("type", args.type), ("regime", regime), ("admissible", gate.ok), ("reason", gate.reason), ("isotropy_guaranteed", False)]
            return report, _check_expect(report, args.expect)
        h = load_algebra(args.algebra)
        d = HolonomyDescriptor(args.type, h)
        name = h.name or args.algebra
    decision = forge.admissible(d, regime, lam)
    report = [
        ("type", d.type),
        ("algebra", name),
        ("regime", regime),
        ("admissible", decision.ok),
        ("reason", decision.reason),
        ("isotropy_guaranteed", forge.ricci_isotropy_guarantee(d)),
    ]
    return report, _check_expect(report, args.expect)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walkerhol", description="Holonomy and Einstein metrics of Walker type")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as a JSON object")
    common.add_argument("--expect", action="append", metavar="KEY", help="exit 1 unless the boolean KEY of the report is true")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("spaces", parents=[common], help="curvature spaces of a subalgebra of so(n)")
    s.add_argument("--algebra", required=True, help="builtin:<name>, file:<path> or a soalgv1 path")
    s.set_defaults(func=cmd_spaces)

    c = sub.add_parser("construct", parents=[common], help="build an Einstein Walker metric")
    c.add_argument("--holonomy", required=True, help="orthogonal part h (algebra source)")
    c.add_argument("--type", type=int, choices=(1, 2), required=True)
    c.add_argument("--lambda", dest="lam", default="0")
    c.add_argument("--out", required=True, help="path of the walkerv1 file to write")
    c.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check the Einstein conditions of a metric")
    v.add_argument("metric")
    v.add_argument("--lambda", dest="lam", default=None)
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("holonomy", parents=[common], help="infinitesimal holonomy span of a metric")
    h.add_argument("metric")
    h.add_argument("--points", default=None, help="sample points 'q,..,q;q,..,q'")
    h.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    h.set_defaults(func=cmd_holonomy)

    k = sub.add_parser("classify", parents=[common], help="admissibility for Einstein regimes")
    k.add_argument("--type", type=int, choices=(1, 2, 3, 4))
    k.add_argument("--algebra", default=None)
    k.add_argument("--metric", default=None)
    k.add_argument("--regime", choices=forge.REGIMES, required=True)
    k.add_argument("--lambda", dest="lam", default=None)
    k.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    k.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        report, code = args.func(args)
    except (InputError, ParseError, AlgebraError, MetricError, forge.ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(report, args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
