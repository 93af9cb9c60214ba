"""
Command-line front end.

    globengine check coalgebra:QC2
    globengine globalize gpc:trivial_V --format text
    globengine cover analyze cover:graded3
    globengine pset globalize partial:C4_X01
    globengine laws --seed 7 --count 50

Exit codes: 0 pass, 1 mathematical failure, 2 input error, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .comod import Comodule, check_coalgebra, check_comodule
from .exactla import LinearMap, VectorSpace, format_rational, kernel
from .globalize import (
    adjunction_laws,
    analyze_cover,
    cover_roundtrip,
    globalize,
    is_proper,
    roundtrip_gl_ind,
    roundtrip_ind_gl,
)
from .gpc import GpcFailure, check_gpc, global_gpc, induce
from .psets import (
    GlobalGSet,
    PartialGSet,
    canonical_bijection,
    check_partial_action,
    coequalizer_globalize,
    globalize_quotient,
    pset_minimality,
    restrict,
    restrict_globalize_roundtrip,
    verify_phi_psi,
)
from . import suites
from .verdicts import InternalConsistencyError, Verdict
from .workspace import InputError, Workspace, map_to_report, parse_target

PASS, FAIL, INPUT, INTERNAL = 0, 1, 2, 3


def jsonable(x):
    """Plain JSON data for reports: maps become ``{dom, cod, matrix}``, rationals strings."""
    if isinstance(x, LinearMap):
        return map_to_report(x)
    if isinstance(x, VectorSpace):
        return {"dim": x.dim, "labels": list(x.labels)}
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else _pt(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return repr(x)


def _pt(t) -> str:
    return "[" + ",".join(str(v) for v in t) + "]"


def _verdict(v: Verdict) -> dict:
    out = {"law": v.law, "ok": v.ok}
    if not v.ok:
        out["witness"] = jsonable(v.witness)
        out["detail"] = v.detail
    return out


def _as_gpc(obj):
    """A gpc target or a global comodule, checked; returns the gpc or a GpcFailure."""
    if isinstance(obj, Comodule):
        return global_gpc(obj)
    return check_gpc(obj)


# ---------------------------------------------------------------------------
# handlers: (workspace, target, args) -> (report, exit code)

def cmd_check(ws: Workspace, target: str, args):
    kind, _ = parse_target(target)
    obj = ws.get(target)
    rep: dict = {}
    if kind == "coalgebra":
        v = check_coalgebra(obj)
    elif kind == "comodule":
        v = check_comodule(obj)
    elif kind == "gpc":
        r = check_gpc(obj)
        if isinstance(r, GpcFailure):
            rep["axiom"] = r.axiom
            v = r.verdict
        else:
            v = Verdict.passed("GP1+GP2")
            rep["certificates"] = {"X•ε": jsonable(r.counit_factor), "theta": jsonable(r.theta)}
    elif kind == "partial":
        v = check_partial_action(obj)
    elif kind == "cover":
        v = check_comodule(obj.Y)
        rep["proper"] = is_proper(obj)
    elif kind == "group":
        v = Verdict(obj.is_group, "group", obj.name, "some element has no inverse")
    elif kind == "action":
        v = Verdict.passed("action")
    else:  # pragma: no cover - parse_target rejects other kinds
        raise InputError(f"cannot check {kind}")
    rep.update(_verdict(v))
    rep["status"] = "pass" if v else "fail"
    return rep, PASS if v else FAIL


def cmd_induce(ws: Workspace, target: str, args):
    c = _need(ws, target, "cover")
    X, p = induce(c)
    rep = {
        "status": "pass",
        "dims": {"Y": c.Y.dim, "X": c.X.dim, "H": c.Y.coalgebra.dim, "X•H": X.XbulletH.dim},
        "pi": jsonable(X.pi),
        "rho": jsonable(X.rho),
        "certificates": {"X•ε": jsonable(X.counit_factor), "theta": jsonable(X.theta),
                         "p•": jsonable(p.f_bullet)},
    }
    return rep, PASS


def cmd_globalize(ws: Workspace, target: str, args):
    kind, _ = parse_target(target)
    if kind not in ("gpc", "comodule"):
        raise InputError(f"globalize needs a gpc or comodule target, got {kind}")
    X = _as_gpc(ws.get(target))
    if isinstance(X, GpcFailure):
        return {"status": "not geometric", "axiom": X.axiom, **_verdict(X.verdict)}, FAIL
    res = globalize(X)
    dims = {"X": X.X.dim, "H": X.coalgebra.dim, "X•H": X.XbulletH.dim, "Y_X": res.Y_X.dim, "P": res.pushout_dim}
    rep = {"status": res.status, "dims": dims, "comparison": jsonable(res.comparison)}
    if not res.globalizable:
        rep["witness"] = jsonable(res.witness)
        return rep, FAIL
    rep.update({
        "kappa": jsonable(res.kappa.map),
        "eps_X": jsonable(res.eps_X),
        "coaction_Y_X": jsonable(res.Y_X.coaction),
    })
    return rep, PASS


def cmd_cover(ws: Workspace, target: str, args):
    c = _need(ws, target, "cover")
    if args.action == "proper":
        proper = is_proper(c)
        rep = {"status": "pass" if proper else "fail", "proper": proper}
        if not proper:
            rep["kernel"] = jsonable(kernel(c.cogenerator))
        return rep, PASS if proper else FAIL
    a = analyze_cover(c)
    rep = {
        "status": a.globalization.status,
        "proper": a.proper,
        "minimal": a.minimal,
        "dims": {"Y": c.Y.dim, "X": c.X.dim, "X•H": a.induced.XbulletH.dim, "Y_X": a.globalization.Y_X.dim},
        "p_tilde": jsonable(a.p_tilde),
    }
    return rep, PASS


def cmd_roundtrip(ws: Workspace, target: str, args):
    kind, _ = parse_target(target)
    if kind == "cover":
        c = ws.get(target)
        a = analyze_cover(c)
        rep = {"proper": a.proper, "minimal": a.minimal}
        v = roundtrip_gl_ind(c) if a.proper and a.minimal else cover_roundtrip(c)
        if v.ok and "iso" in v.extra:
            rep["iso"] = {"f": jsonable(v.extra["iso"].f), "f•H": jsonable(v.extra["iso"].f_bullet)}
        if v.ok:
            rep["p_tilde"] = jsonable(v.extra["p_tilde"])
    elif kind in ("gpc", "comodule"):
        X = _as_gpc(ws.get(target))
        if isinstance(X, GpcFailure):
            return {"status": "not geometric", "axiom": X.axiom, **_verdict(X.verdict)}, FAIL
        v = roundtrip_ind_gl(X)
        rep = {}
        if v.ok:
            rep["iso"] = {"f": jsonable(v.extra["iso"].f), "f•H": jsonable(v.extra["iso"].f_bullet)}
    elif kind == "partial":
        v = restrict_globalize_roundtrip(ws.get(target))
        rep = {"bijection": jsonable(v.extra.get("bijection"))} if v.ok else {}
    else:
        raise InputError(f"roundtrip needs a cover, gpc, comodule or partial target, got {kind}")
    rep = {"status": "pass" if v else "fail", **_verdict(v), **rep}
    return rep, PASS if v else FAIL


def cmd_pset(ws: Workspace, target: str, args):
    obj = ws.get(target)
    if args.action == "restrict":
        if not isinstance(obj, GlobalGSet):
            raise InputError("pset restrict needs an action target")
        if not args.subset:
            raise InputError("pset restrict needs --subset")
        points = args.subset.split(",")
        try:
            P = restrict(obj, points, f"{obj.name}|{args.subset}")
        except ValueError as exc:
            raise InputError(str(exc), target) from exc
        v = check_partial_action(P)
        return {"status": "pass" if v else "fail", **_verdict(v), "carrier": list(P.carrier),
                "domain_pairs": [list(p) for p in sorted(P.alpha, key=repr)],
                "alpha_pairs": [[list(p), P.alpha[p]] for p in sorted(P.alpha, key=repr)]}, PASS if v else FAIL
    if not isinstance(obj, PartialGSet):
        raise InputError(f"pset {args.action} needs a partial target")
    if args.action == "check":
        v = check_partial_action(obj)
        return {"status": "pass" if v else "fail", **_verdict(v)}, PASS if v else FAIL
    v = check_partial_action(obj)
    if not v:
        return {"status": "not a partial action", **_verdict(v)}, FAIL
    if not obj.monoid.is_group:
        raise InputError(f"{obj.monoid.name} is not a group; monoid globalization is not supported")
    if args.action == "roundtrip":
        w = restrict_globalize_roundtrip(obj)
        return {"status": "pass" if w else "fail", **_verdict(w)}, PASS if w else FAIL
    Y = globalize_quotient(obj)
    if args.action == "minimality":
        ok = pset_minimality(obj, Y)
        return {"status": "pass" if ok else "fail", "orbit_of_X_is_Y": ok, "size": len(Y)}, PASS if ok else FAIL
    Z = coequalizer_globalize(obj, check=False)
    agree = canonical_bijection(Z, Y) is not None
    pp = verify_phi_psi(obj)
    ok = agree and bool(pp)
    rep = {
        "status": "pass" if ok else "fail",
        "size": len(Y),
        "constructions_agree": agree,
        "phi_psi": _verdict(pp),
        "carrier": [_pt(r) for r in Y.carrier],
        "embed": {str(x): _pt(r) for x, r in Y.embed.items()},
        "action": {g: [_pt(Y.action[(g, r)]) for r in Y.carrier] for g in map(str, obj.monoid.elements)}
        if all(isinstance(g, str) for g in obj.monoid.elements) else None,
    }
    return rep, PASS if ok else FAIL


def _need(ws, target, kind):
    k, _ = parse_target(target)
    if k != kind:
        raise InputError(f"expected a {kind} target, got {target}")
    return ws.get(target)


HANDLERS = {
    "check": cmd_check,
    "induce": cmd_induce,
    "globalize": cmd_globalize,
    "cover": cmd_cover,
    "roundtrip": cmd_roundtrip,
    "pset": cmd_pset,
}


def run_target(ws: Workspace, command: str, target: str, args) -> tuple[dict, int]:
    rep = {"command": command, "target": target}
    try:
        rep["input_digest"] = ws.digest(target)
        body, code = HANDLERS[command](ws, target, args)
    except InputError as exc:
        body, code = {"status": "input error", "error": str(exc)}, INPUT
    except InternalConsistencyError as exc:
        body, code = {"status": "internal error", "error": str(exc)}, INTERNAL
    rep.update(body)
    rep["exit_code"] = code
    return rep, code


def _worker(payload):
    inputs, no_fixtures, command, target, ns = payload
    ws = Workspace.load(inputs, include_fixtures=not no_fixtures)
    return run_target(ws, command, target, argparse.Namespace(**ns))


def cmd_laws(args) -> tuple[dict, int]:
    """Adjunction suite on fixtures plus the seeded randomized suites."""
    reports = []
    adj = adjunction_laws()
    failures = [v for v in adj if not v]
    reports.append({"suite": "adjunction", "cases": len(adj), "failures": len(failures),
                    "first_failures": [_verdict(v) for v in failures[:5]]})
    if args.count:
        for fn in (suites.gp_regression_suite, suites.roundtrip_suite, suites.functor_suite):
            reports.append(fn(args.count, args.seed).summary())
    code = PASS if all(r["failures"] == 0 for r in reports) else FAIL
    return {"command": "laws", "seed": args.seed, "count": args.count, "suites": reports,
            "status": "pass" if code == PASS else "fail", "exit_code": code}, code


# ---------------------------------------------------------------------------
# rendering

def render_text(rep: dict) -> str:
    if "suites" in rep:
        lines = [f"laws seed={rep['seed']} count={rep['count']}: {rep['status']}"]
        for s in rep["suites"]:
            lines.append(f"  {s['suite']}: {s['cases']} cases, {s['failures']} failures")
        return "\n".join(lines)
    head = f"{rep['command']} {rep['target']}: "
    cmd = rep["command"]
    if rep["exit_code"] in (INPUT, INTERNAL):
        return head + f"{rep['status']}: {rep['error']}"
    if cmd == "globalize" and "dims" in rep:
        d = rep["dims"]
        line = head + f"{rep['status']}, dim Y_X = {d['Y_X']}"
        if d["Y_X"] == d["X"] * d["H"]:
            line += f" = dim X × dim H = {d['X']} × {d['H']}"
        line += f" (dim X•H = {d['X•H']}, dim P = {d['P']})"
        if "witness" in rep:
            line += f"\n  witness: {json.dumps(rep['witness'], ensure_ascii=False)}"
        else:
            line += "\n  kappa = " + _mat(rep["kappa"]) + "\n  eps_X = " + _mat(rep["eps_X"])
        return line
    if cmd == "cover" and "minimal" in rep:
        line = head + f"proper = {str(rep['proper']).lower()}, minimal = {str(rep['minimal']).lower()}"
        if rep["p_tilde"] is not None:
            line += "\n  p_tilde = " + _mat(rep["p_tilde"])
        return line
    if cmd == "pset" and "size" in rep and "constructions_agree" in rep:
        return head + (f"|Y| = {rep['size']}, constructions agree = {str(rep['constructions_agree']).lower()}, "
                       f"phi/psi = {'ok' if rep['phi_psi']['ok'] else 'FAILED'}")
    line = head + rep["status"]
    if rep.get("ok") is False:
        line += f" ({rep['law']} at {json.dumps(rep.get('witness'), ensure_ascii=False)}: {rep.get('detail')})"
    for key, val in rep.get("certificates", {}).items():
        line += f"\n  {key} = " + _mat(val)
    return line


def _mat(m: dict) -> str:
    return "[" + "; ".join(" ".join(r) for r in m["matrix"]) + "]"


def emit(payload: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    elif "reports" in payload:
        out.write("\n".join(render_text(r) for r in payload["reports"]) + "\n")
    else:
        out.write(render_text(payload) + "\n")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", action="append", default=[], metavar="FILE",
                        help="workspace document (repeatable); loaded after the fixtures")
    common.add_argument("--no-fixtures", action="store_true", help="do not load the fixture directory")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batches of targets")

    p = argparse.ArgumentParser(prog="globengine", description="Globalization of geometric partial comodules.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (("check", "run the law checks of declared objects"),
                           ("induce", "induced partial comodule of a cover"),
                           ("globalize", "globalize a gpc (or a global comodule)"),
                           ("roundtrip", "Ind/Gl round trips on a cover, gpc or partial action")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("targets", nargs="*" if name == "check" else "+", metavar="kind:name")
        if name == "check":
            sp.add_argument("--all", action="store_true", help="check every declared object")
    sp = sub.add_parser("cover", parents=[common], help="cover properties")
    sp.add_argument("action", choices=("analyze", "proper"))
    sp.add_argument("targets", nargs="+", metavar="cover:name")
    sp = sub.add_parser("pset", parents=[common], help="partial group actions on finite sets")
    sp.add_argument("action", choices=("check", "globalize", "roundtrip", "minimality", "restrict"))
    sp.add_argument("targets", nargs="+", metavar="kind:name")
    sp.add_argument("--subset", help="comma separated points, for restrict")
    sp = sub.add_parser("laws", parents=[common], help="adjunction suite and randomized law suites")
    sp.add_argument("--count", type=int, default=0, help="random cases per suite (0: fixtures only)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "laws":
            payload, code = cmd_laws(args)
            emit(payload, args.format)
            return code
        ws = Workspace.load(args.input, include_fixtures=not args.no_fixtures)
        targets = list(args.targets)
        if args.command == "check" and getattr(args, "all", False):
            targets += [f"{k}:{n}" for k in ("coalgebra", "comodule", "gpc", "cover", "group", "action", "partial")
                        for n in ws.names(k)]
        if not targets:
            raise InputError("no targets given")
    except InputError as exc:
        emit({"command": args.command, "target": "", "status": "input error", "error": str(exc),
              "exit_code": INPUT}, args.format)
        return INPUT
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL

    if args.jobs > 1 and len(targets) > 1:
        ns = {k: v for k, v in vars(args).items() if k in ("action", "subset", "seed")}
        payloads = [(args.input, args.no_fixtures, args.command, t, ns) for t in targets]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_worker, payloads))
    else:
        results = [run_target(ws, args.command, t, args) for t in targets]
    reports = [r for r, _ in results]
    code = max(c for _, c in results)
    if len(reports) == 1:
        emit(reports[0], args.format)
    else:
        emit({"command": args.command, "reports": reports, "exit_code": code}, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
