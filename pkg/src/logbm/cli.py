"""Command-line front end: ``logbm verify | mixed-volumes | campaign | demo``.

Exit codes: 0 success (probe verdicts never change it), 2 parse or spec
error, 3 internal inconsistency or a missing guaranteed demo outcome.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .bodies import box, construct
from .checkers import (
    CHECKS,
    Tolerances,
    check_cube_remark,
    demo_false_inequality,
)
from .errors import InternalInconsistency, LogBMError, ScenarioInconclusive, SpecError
from .exact import format_rational, parse_rational
from .functionals import MaxForm, SumForm, mixed_volumes
from .harness import (
    DEFAULT_CHECKS,
    CampaignConfig,
    hexagon_scenario,
    hexagon_table,
    margin_study,
    run_campaign,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# input parsing


def _load_json(path, field):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}", field) from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno})", field) from None


def parse_vector(text, field):
    if text is None:
        return None
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise SpecError("empty vector", field)
    return tuple(parse_rational(p, f"{field}[{i}]") for i, p in enumerate(parts))


def parse_norm(spec, field="norm"):
    if not isinstance(spec, dict):
        raise SpecError("norm spec must be an object", field)
    kind = spec.get("kind")
    if kind == "maxForm":
        omega = spec.get("omega")
        if not isinstance(omega, list) or not omega:
            raise SpecError("expected a non-empty omega list", f"{field}.omega")
        return MaxForm(tuple(_vec(v, f"{field}.omega[{i}]") for i, v in enumerate(omega)))
    if kind == "sumForm":
        gens = spec.get("generators")
        if not isinstance(gens, list) or not gens:
            raise SpecError("expected a non-empty generator list", f"{field}.generators")
        out = []
        for i, g in enumerate(gens):
            if not isinstance(g, list) or len(g) != 2:
                raise SpecError("expected [weight, vector]", f"{field}.generators[{i}]")
            w = parse_rational(g[0], f"{field}.generators[{i}][0]")
            if w < 0:
                raise SpecError("weights must be non-negative", f"{field}.generators[{i}][0]")
            out.append((w, _vec(g[1], f"{field}.generators[{i}][1]")))
        return SumForm(tuple(out))
    raise SpecError(f"unknown norm kind {kind!r}", f"{field}.kind")


def _vec(value, field):
    if not isinstance(value, list) or not value:
        raise SpecError("expected a non-empty list of rationals", field)
    return tuple(parse_rational(x, f"{field}[{i}]") for i, x in enumerate(value))


def _tolerances(args) -> Tolerances:
    base = Tolerances()
    return Tolerances(args.tol_identity if args.tol_identity is not None else base.identity,
                      args.tol if args.tol is not None else base.inequality)


# ---------------------------------------------------------------------------
# output


def _document(command, payload, args) -> dict:
    doc = {"schemaVersion": SCHEMA_VERSION}
    if not args.deterministic:
        doc["header"] = {"tool": "logbm", "version": __version__,
                         "generatedAt": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    doc["command"] = command
    doc.update(payload)
    return doc


def _emit(doc, args, table_lines):
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.format == "table":
        print("\n".join(table_lines))
    elif not args.out:
        sys.stdout.write(text)


def _report_line(r) -> str:
    rel = "-" if r.relative_margin is None else _short(r.relative_margin)
    flags = "holds" if r.holds else "FAILS"
    if r.equality:
        flags += ", equality"
    if r.counterexample_candidate:
        flags += ", COUNTEREXAMPLE CANDIDATE"
    return f"{r.check_name:24s} [{r.kind}/{r.mode}] lhs={_short(r.lhs)} rhs={_short(r.rhs)} margin={rel} {flags}"


def _short(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    K = construct(_load_json(args.body, "K"), require_full=True, field="K")
    M = N = None
    if args.second:
        spec = _load_json(args.second, "second")
        if isinstance(spec, dict) and spec.get("kind") in ("maxForm", "sumForm"):
            N = parse_norm(spec)
        else:
            M = construct(spec, field="M")
    if args.norm:
        N = parse_norm(_load_json(args.norm, "norm"))
    u, v, w = (parse_vector(getattr(args, k), f"--{k}") for k in ("u", "v", "w"))
    gens = None
    if args.generators:
        gens = [parse_vector(g, f"--generators[{i}]") for i, g in enumerate(args.generators.split(";"))]
    ts = [parse_rational(t, "--t") for t in args.t.split(",")] if args.t else [1, 2, 3]
    for name, vec in (("--u", u), ("--v", v), ("--w", w)):
        if vec is not None and len(vec) != K.dim:
            raise SpecError(f"expected {K.dim} coordinates", name)
    if M is not None and M.dim != K.dim:
        raise SpecError(f"dimension {M.dim} does not match K ({K.dim})", "M")

    def need(value, flag, name):
        if value is None:
            raise SpecError(f"check {name} needs {flag}", flag)
        return value

    reports = []
    for name in args.checks:
        fn = CHECKS[name][0]
        if name in ("theorem_1_4", "theorem_1_5"):
            Nn = need(N, "--norm", name)
            r = fn(K, Nn, tol) if name == "theorem_1_5" else fn(K, Nn, args.mode, tol)
        elif name in ("theorem_1_7", "cauchy"):
            r = fn(K, need(v, "--v", name), args.mode, tol)
        elif name == "lemma_3_1":
            r = fn(K, need(u, "--u", name), args.mode, tol)
        elif name == "corollary_3_3":
            r = fn(K, need(u, "--u", name), need(v, "--v", name), args.mode, tol)
        elif name == "prop_6_1":
            r = fn(K, need(args.i, "--i", name), need(args.j, "--j", name), args.mode, tol)
        elif name == "prop_6_2_pair":
            r = fn(K, need(v, "--v", name), need(w, "--w", name), args.mode, tol)
        elif name == "zonotope_decomposition":
            r = fn(K, need(gens, "--generators", name), args.mode, tol)
        elif name == "invariance":
            r = fn(K, need(M, "M", name), ts, args.mode, tol)
        elif name == "cube_remark":
            r = fn(need(M, "M", name), args.mode, tol)
        else:
            r = fn(K, need(M, "M", name), args.mode, tol)
        reports.append(r)
    doc = _document("verify", {"reports": [r.to_dict() for r in reports]}, args)
    _emit(doc, args, [_report_line(r) for r in reports])
    return 0


def cmd_mixed_volumes(args) -> int:
    K = construct(_load_json(args.body, "K"), require_full=True, field="K")
    M = construct(_load_json(args.second, "M"), field="M")
    if M.dim != K.dim:
        raise SpecError(f"dimension {M.dim} does not match K ({K.dim})", "M")
    V = mixed_volumes(K, M)
    values = [format_rational(x) for x in V.values]
    doc = _document("mixed-volumes", {"n": K.dim, "mixedVolumes": values,
                                      "volumePolynomial": [format_rational(c) for c in V.coefficients]},
                    args)
    _emit(doc, args, [", ".join(values)])
    return 0


def _campaign_config(args) -> CampaignConfig:
    if args.config:
        data = _load_json(args.config, "config")
        if not isinstance(data, dict):
            raise SpecError("config must be an object", "config")
        try:
            cfg = CampaignConfig.from_dict(data)
        except (TypeError, ValueError) as exc:
            raise SpecError(str(exc), "config") from None
    else:
        cfg = CampaignConfig()
    if args.dim:
        cfg.dims = args.dim
    if args.trials is not None:
        cfg.trials_per_dim = args.trials
    if args.seed is not None:
        cfg.seed = args.seed
    if args.checks_given:
        cfg.checks = args.checks
    if args.mode_given:
        cfg.mode = args.mode
    if args.tol is not None or args.tol_identity is not None:
        cfg.tolerance = _tolerances(args)
    try:
        return cfg.validate()
    except ValueError as exc:
        raise SpecError(str(exc), "config") from None


def cmd_campaign(args) -> int:
    cfg = _campaign_config(args)
    if args.margins:
        rows = margin_study(cfg)
        doc = _document("margin-study", {"config": cfg.to_dict(), "rows": rows}, args)
        lines = [f"{r['margin']:.6e}  n={r['dim']} trial={r['trial']} {r['check']}"
                 + ("  near-equality" if r["nearEquality"] else "") for r in rows]
        _emit(doc, args, lines)
        return 0
    code = 0
    try:
        summary = run_campaign(cfg)
    except InternalInconsistency as exc:
        summary = getattr(exc, "summary", None)
        if summary is None:
            raise
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        code = 3
    payload = summary.to_dict(include_time=not args.deterministic)
    doc = _document("campaign", {"summary": payload}, args)
    lines = []
    for name, st in sorted(summary.per_check.items()):
        d = st.to_dict()
        lines.append(f"{name:24s} trials={d['trials']} violations={d['violations']} "
                     f"inconsistencies={d['internalInconsistencies']} equalities={d['equalityCount']} "
                     f"minMargin={d['minRelativeMargin']}")
    lines.append(f"counterexample candidates: {len(summary.counterexample_candidates)}")
    _emit(doc, args, lines)
    return code


def cmd_demo(args) -> int:
    if args.name == "false-inequality":
        dims = args.dim or [3]
        reports = [demo_false_inequality(n) for n in dims]
        lines = [f"n={r.details['n']}: " + (f"violated: {_short(r.lhs)} > {_short(r.rhs)}" if not r.holds
                                            else f"holds: {_short(r.lhs)} <= {_short(r.rhs)}")
                 for r in reports]
        doc = _document("demo", {"demo": args.name, "reports": [r.to_dict() for r in reports]}, args)
    elif args.name == "cube-remark":
        dims = args.dim or [2, 3, 4]
        rng = random.Random(args.seed if args.seed is not None else 0)
        trials = 5 if args.trials is None else args.trials
        reports, lines = [], []
        for n in dims:
            phis = [[1] * n] + [[Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)]
                                for _ in range(trials)]
            for phi in phis:
                r = check_cube_remark(box(phi), args.mode, _tolerances(args))
                reports.append(r)
                rem3 = r.details["rem3"]
                lines.append(f"n={n} phi=({', '.join(_short(Fraction(p)) for p in phi)}): "
                             f"rem3 {_short(rem3['lhs'])} = {_short(rem3['rhs'])}; "
                             f"rem1 {_short(r.lhs)} <= {_short(r.rhs)}")
        doc = _document("demo", {"demo": args.name, "reports": [r.to_dict() for r in reports]}, args)
    else:
        try:
            reports = hexagon_scenario(mode=args.mode)
            conclusive = True
        except ScenarioInconclusive as exc:
            reports, conclusive = exc.reports, False
        table = hexagon_table(reports)
        lines = ["epsilon   aggregate (lhs <= rhs)            pairwise (lhs <= rhs)            split"]
        for row in table:
            a, p = row["aggregate"], row["pairwise"]
            lines.append(f"{row['epsilon']:8s}  {a['lhs']} <= {a['rhs']} {'ok' if a['holds'] else 'FAILS':5s}"
                         f"  {p['lhs']} <= {p['rhs']} {'ok' if p['holds'] else 'FAILS':5s}  {row['split']}")
        if not conclusive:
            lines.append("scenario inconclusive: no epsilon separates the two bounds")
        doc = _document("demo", {"demo": args.name, "conclusive": conclusive, "table": table,
                                 "reports": [r.to_dict() for r in reports]}, args)
    _emit(doc, args, lines)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


class _Track(argparse.Action):
    """Store the value and remember that the flag was given explicitly."""

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        setattr(namespace, f"{self.dest}_given", True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact", action=_Track)
    common.add_argument("--tol", type=float, help="float-mode inequality tolerance (default 1e-7)")
    common.add_argument("--tol-identity", type=float, help="float-mode identity tolerance (default 1e-9)")
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--deterministic", action="store_true",
                        help="omit the timestamp header and wall time")
    common.set_defaults(mode_given=False, checks_given=False)

    parser = argparse.ArgumentParser(prog="logbm", description="Exact checks for the local log-Brunn-Minkowski inequality on polytopes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run named checks on K (and M or a norm)")
    p.add_argument("body", help="body spec JSON for K")
    p.add_argument("second", nargs="?", help="body spec for M, or a norm spec")
    p.add_argument("--norm", help="norm spec JSON file")
    p.add_argument("--checks", nargs="+", choices=sorted(CHECKS), required=True, action=_Track)
    for k in ("u", "v", "w"):
        p.add_argument(f"--{k}", help="vector as comma-separated rationals, e.g. 1,0,1/2")
    p.add_argument("--i", type=int, help="0-based coordinate index")
    p.add_argument("--j", type=int, help="0-based coordinate index")
    p.add_argument("--generators", help="semicolon-separated vectors, e.g. '1,0,0;0,1,0'")
    p.add_argument("--t", help="comma-separated scalings for invariance (default 1,2,3)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mixed-volumes", parents=[common], help="print exact V_0..V_n(K, M)")
    p.add_argument("body")
    p.add_argument("second")
    p.set_defaults(func=cmd_mixed_volumes)

    p = sub.add_parser("campaign", parents=[common], help="seeded randomized campaign")
    p.add_argument("--config", help="campaign config JSON")
    p.add_argument("--dim", type=int, nargs="+")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--checks", nargs="+", choices=sorted(CHECKS), default=list(DEFAULT_CHECKS),
                   action=_Track)
    p.add_argument("--margins", action="store_true", help="emit the sorted margin table instead")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("demo", parents=[common], help="named scenarios")
    p.add_argument("name", choices=["false-inequality", "hexagon", "cube-remark"])
    p.add_argument("--dim", type=int, nargs="+")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, help="random phi per dimension for cube-remark (default 5)")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        if exc.instance is not None:
            print(json.dumps(exc.instance), file=sys.stderr)
        return 3
    except (LogBMError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
