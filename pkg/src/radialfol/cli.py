"""Command-line front end.

Exit codes: 0 definitive success, 1 definitive failure, 2 inconclusive,
3 input error (with a JSON error object on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

import jsonschema

from . import registry
from .algebra import AlgebraError, format_rational, parse_poly
from .blowup import CenterSpec, blowup, classify_monoidal
from .charts import DivisorComponent, FoliatedChart
from .driver import (
    ALMOST_RADIAL,
    INC,
    NO,
    RADIAL,
    UNRESOLVED,
    YES,
    ResolutionScript,
    ScriptError,
    apply_script,
    classify_foliated_germ,
    detect_open_book,
    section_advisory,
    verify_resolved,
)
from .forms import OneForm, check_integrability, is_hyperplane_invariant
from .projective import TubeSpec, solve_radial_diophantine, tube_transition_audit
from .surfaces import blowup_index_audit, camacho_sad_index, cart_wheel_report
from .zeros import common_zeros

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

COMMANDS = [
    "integrable", "sing", "invariant", "classify-center", "blowup", "resolve", "verify",
    "classify-germ", "detect-open-book", "camacho-sad", "cart-wheel", "blowup-audit",
    "hirzebruch-solve", "tube-audit", "registry",
]

_STEP = {"type": "object"}
JOB_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "command": {"enum": COMMANDS},
        "germ": {
            "oneOf": [
                {"type": "object", "additionalProperties": False, "required": ["registry"],
                 "properties": {"registry": {"type": "string"}}},
                {"type": "object", "additionalProperties": False, "required": ["vars", "coeffs"],
                 "properties": {
                     "id": {"type": "string"},
                     "vars": {"type": "array", "items": {"type": "string"}},
                     "coeffs": {"type": "array", "items": {"type": "string"}},
                     "divisor": {"type": "array", "items": {
                         "type": "object", "additionalProperties": False, "required": ["var"],
                         "properties": {"var": {"type": "string"},
                                        "origin": {"enum": ["original", "exceptional"]},
                                        "step": {"type": "integer"}}}},
                 }},
            ]
        },
        "form": {"type": "string"},
        "vars": {"type": "array", "items": {"type": "string"}},
        "divisor": {"type": "array", "items": {"type": "string"}},
        "center": {"type": "array", "items": {"type": "string"}},
        "chart": {"type": "string"},
        "script": {"type": "array", "items": _STEP},
        "checks": {"type": "array", "items": {"enum": ["resolved", "controlled", "audits"]}},
        "point": {"type": "array", "items": {"type": "string"}},
        "var": {"type": "string"},
        "curve": {"type": "string"},
        "at": {"type": "string"},
        "axis": {"type": "string"},
        "delta": {"type": "integer", "minimum": 0},
        "alpha": {"type": "integer", "minimum": 0},
        "beta": {"type": "integer", "minimum": 1},
        "force": {"type": "boolean"},
        "json": {"type": "boolean"},
    },
}


class InputError(ValueError):
    pass


# -- input helpers -----------------------------------------------------------

def _split(s: str | None) -> list[str]:
    if not s:
        return []
    return [p.strip() for p in s.split(",") if p.strip()]


def _form(p: dict) -> OneForm:
    if "form" in p:
        vars = p.get("vars")
        return OneForm.from_text(p["form"], tuple(vars) if vars else None)
    return _germ(p).form


def _germ(p: dict) -> FoliatedChart:
    g = p.get("germ")
    if isinstance(g, dict):
        if "registry" in g:
            return registry.get(g["registry"]).root
        return FoliatedChart.from_json(g)
    if "registry_name" in p:
        return registry.get(p["registry_name"]).root
    if "form" in p:
        form = _form(p)
        return FoliatedChart("c0", form, tuple(DivisorComponent(v) for v in p.get("divisor", [])))
    raise InputError("no germ given (use --form/--vars or --registry)")


def _script(p: dict) -> ResolutionScript:
    if "script" in p:
        return ResolutionScript.from_json(p["script"])
    name = p.get("registry_name") or (p.get("germ") or {}).get("registry")
    if name:
        return registry.get(name).default_script
    raise InputError("no script given")


def _frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {s!r}") from exc


def _yn(b: bool) -> str:
    return YES if b else NO


# -- commands ------------------------------------------------------------------
# each returns (exit code, text, json payload)

def cmd_integrable(p):
    ok = check_integrability(_form(p))
    return (EXIT_OK if ok else EXIT_FAIL), f"integrable={_yn(ok)}", {"integrable": ok}


def cmd_sing(p):
    w = _form(p)
    if p.get("point"):
        pt = [_frac(x) for x in p["point"]]
        cov = w.evaluate(pt)
        singular = not any(cov)
        text = "(" + ", ".join(format_rational(c) for c in cov) + ") " + ("singular" if singular else "regular")
        return EXIT_OK, text, {"covector": [format_rational(c) for c in cov], "singular": singular}
    z = common_zeros(list(w.coeffs))
    origin = not any(w.evaluate([0] * len(w.vars)))
    lines = ["generators: " + ", ".join(str(c) for c in w.coeffs),
             f"origin: {'singular' if origin else 'regular'}",
             f"singular set: {z.describe()}"]
    return EXIT_OK, "\n".join(lines), {"generators": [str(c) for c in w.coeffs],
                                       "origin_singular": origin, "singular_set": z.describe()}


def cmd_invariant(p):
    w = _form(p)
    v = p.get("var")
    if not v or v not in w.vars:
        raise InputError("--var must name a chart variable")
    ok = is_hyperplane_invariant(w, v)
    return (EXIT_OK if ok else EXIT_FAIL), f"invariant={_yn(ok)}", {"var": v, "invariant": ok}


def cmd_classify_center(p):
    w = _form(p)
    center = p.get("center") or []
    spec = CenterSpec.curve(center)
    c = classify_monoidal(w, spec.center_vars(FoliatedChart("c0", w.reduce())))
    nu = "inf" if c.nu_p == float("inf") else c.nu_p
    return EXIT_OK, str(c), {"class": c.kind, "r": c.r, "nu_p": nu}


def _center(p) -> CenterSpec:
    center = p.get("center") or []
    chart = p.get("chart", "c0")
    if not center or center == ["point"]:
        return CenterSpec.point(chart)
    return CenterSpec.curve(center, chart)


def cmd_blowup(p):
    c = _germ(p)
    res = blowup(c, _center(p), force=bool(p.get("force")))
    lines = []
    kids = []
    head = f"center={res.center} dicritical={_yn(res.dicritical)} k={res.k}"
    if res.monoidal_class:
        head += f" class={res.monoidal_class.kind}"
    lines.append(head)
    for ch in res.children:
        lines.append(f"{ch.chart.id}\t{ch.chart.form.to_text()}")
        kids.append({"chart": ch.chart.id, "form": ch.chart.form.to_text(), "k": ch.k,
                     "exceptional": ch.exceptional, "dicritical": ch.dicritical})
    payload = {"center": str(res.center), "dicritical": res.dicritical, "k": res.k,
               "class": res.monoidal_class.kind if res.monoidal_class else None, "children": kids}
    return EXIT_OK, "\n".join(lines), payload


def cmd_resolve(p):
    st = apply_script(_germ(p), _script(p))
    lines, leaves = [], []
    for c in sorted(st.leaf_charts(), key=lambda c: c.id):
        div = ",".join(f"{d.var}:{'inv' if d.invariant else 'dic'}" for d in c.divisor)
        lines.append(f"{c.id}\t{c.form.to_text()}\tdivisor={div}")
        leaves.append(c.to_json())
    return EXIT_OK, "\n".join(lines), {"leaves": leaves}


def _verify_exit(resolved: str) -> int:
    return {YES: EXIT_OK, NO: EXIT_FAIL}.get(resolved, EXIT_INCONCLUSIVE)


def cmd_verify(p):
    rep = verify_resolved(apply_script(_germ(p), _script(p)))
    checks = p.get("checks") or ["resolved", "controlled"]
    bits = []
    if "resolved" in checks:
        bits.append(f"resolved={rep.resolved}")
    if "controlled" in checks:
        bits.append(f"controlled={rep.controlled}")
    lines = [" ".join(bits)]
    if "audits" in checks:
        for s in rep.steps:
            lines.append(f"step {s.index}\t{s.chart}\t{s.center}\tclass={s.kind or '-'}\t"
                         f"dicritical={_yn(s.dicritical)}\tk={s.k}\tcontrolled={_yn(s.controlled)}")
    for leaf in rep.leaves:
        for w in leaf.witnesses:
            lines.append(f"{leaf.chart}\t{w}")
    return _verify_exit(rep.resolved), "\n".join(lines), rep.to_json()


def cmd_classify_germ(p):
    g = classify_foliated_germ(_germ(p), _script(p))
    code = {RADIAL: EXIT_OK, ALMOST_RADIAL: EXIT_OK, UNRESOLVED: EXIT_FAIL}.get(g.kind, EXIT_INCONCLUSIVE)
    return code, g.kind, {"classification": g.kind, "report": g.report.to_json()}


def cmd_detect_open_book(p):
    w = _form(p)
    hit = detect_open_book(w)
    advice = [section_advisory(w, v) for v in w.vars]
    lines = [f"open-book pair={','.join(hit.pair)} u={hit.unit}" if hit else "none"]
    lines += ["section " + a.describe() for a in advice]
    payload = {"open_book": None if hit is None else {"pair": list(hit.pair), "unit": str(hit.unit)},
               "sections": [{"plane": a.plane, "isolated": a.isolated, "cart_wheel": a.cart_wheel}
                            for a in advice]}
    return (EXIT_OK if hit else EXIT_FAIL), "\n".join(lines), payload


def cmd_camacho_sad(p):
    w = _form(p)
    idx = camacho_sad_index(w, p.get("curve"), _frac(p.get("at", "0")))
    return EXIT_OK, format_rational(idx), {"index": format_rational(idx)}


def cmd_cart_wheel(p):
    r = cart_wheel_report(_form(p))
    text = (f"cart-wheel={_yn(r.verdict)} linear-scalar={_yn(r.linear_scalar)} "
            f"dicritical={_yn(r.dicritical)}")
    return (EXIT_OK if r.verdict else EXIT_FAIL), text, {
        "cart_wheel": r.verdict, "linear_scalar": r.linear_scalar, "dicritical": r.dicritical,
        "children_regular": r.children_regular, "children_transverse": r.children_transverse}


def _fr(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else str(x)


def cmd_blowup_audit(p):
    a = blowup_index_audit(_form(p), p.get("axis"))
    lines = [f"dicritical={_yn(a.dicritical)}"]
    for pt in a.points:
        lines.append(f"{pt.chart}\tat={_fr(pt.param)}\tindex={_fr(pt.index)}")
    if not a.dicritical:
        lines.append(f"sum={_fr(a.index_sum)}")
    if a.irrational_points:
        lines.append(f"irrational points={a.irrational_points} ({INC})")
    if a.strict_index is not None:
        lines.append(f"strict={_fr(a.strict_index)}")
    payload = {"dicritical": a.dicritical,
               "points": [{"chart": q.chart, "at": _fr(q.param), "index": _fr(q.index)} for q in a.points],
               "sum": None if a.index_sum is None else _fr(a.index_sum),
               "irrational_points": a.irrational_points,
               "strict": None if a.strict_index is None else _fr(a.strict_index)}
    code = EXIT_OK if a.complete else EXIT_INCONCLUSIVE
    return code, "\n".join(lines), payload


def cmd_hirzebruch_solve(p):
    if "delta" not in p:
        raise InputError("--delta is required")
    sols = solve_radial_diophantine(int(p["delta"]))
    return EXIT_OK, "\n".join(s.row() for s in sols), {
        "delta": p["delta"],
        "solutions": [{"d1": s.d1, "d2": s.d2, "situation": s.situation, "realizable": s.realizable}
                      for s in sols]}


def cmd_tube_audit(p):
    if "alpha" not in p or "beta" not in p:
        raise InputError("--alpha and --beta are required")
    a = tube_transition_audit(TubeSpec(int(p["alpha"]), int(p["beta"])))
    fmt = lambda t: "-" if t is None else f"({t[0]},{t[1]})"
    text = (f"surface=S{a.surface_index} l0={fmt(a.l0_order)} generic={fmt(a.generic_order)} "
            f"ok={_yn(a.ok)}")
    return (EXIT_OK if a.ok else EXIT_FAIL), text, {
        "surface_index": a.surface_index, "l0_order": a.l0_order and list(a.l0_order),
        "generic_order": a.generic_order and list(a.generic_order), "ok": a.ok}


def cmd_registry(p):
    name = p.get("registry_name") or p.get("name")
    if not name:
        names = sorted(registry.REGISTRY)
        return EXIT_OK, "\n".join(names), {"registry": names}
    ex = registry.get(name)
    lines = [f"name={ex.name}", f"chart={json.dumps(ex.root.to_json(), sort_keys=True)}"]
    for k, s in ex.scripts.items():
        lines.append(f"script {k}={json.dumps(s.to_json(), sort_keys=True)}")
    if ex.first_integral is not None:
        lines.append(f"first integral={ex.first_integral}")
    return EXIT_OK, "\n".join(lines), {
        "name": ex.name, "chart": ex.root.to_json(),
        "scripts": {k: s.to_json() for k, s in ex.scripts.items()},
        "first_integral": None if ex.first_integral is None else str(ex.first_integral)}


HANDLERS: dict[str, Callable] = {
    "integrable": cmd_integrable, "sing": cmd_sing, "invariant": cmd_invariant,
    "classify-center": cmd_classify_center, "blowup": cmd_blowup, "resolve": cmd_resolve,
    "verify": cmd_verify, "classify-germ": cmd_classify_germ,
    "detect-open-book": cmd_detect_open_book, "camacho-sad": cmd_camacho_sad,
    "cart-wheel": cmd_cart_wheel, "blowup-audit": cmd_blowup_audit,
    "hirzebruch-solve": cmd_hirzebruch_solve, "tube-audit": cmd_tube_audit,
    "registry": cmd_registry,
}


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="radialfol", description="Blow-ups and radiality certificates for foliations.")
    ap.add_argument("--job", help="JSON job file (may carry the command)")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = ap.add_subparsers(dest="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--job")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--form")
        sp.add_argument("--vars")
        sp.add_argument("--divisor")
        sp.add_argument("--registry", dest="registry_name")
        if name in ("classify-center", "blowup"):
            sp.add_argument("--center")
        if name == "blowup":
            sp.add_argument("--chart")
            sp.add_argument("--force", action="store_true")
        if name in ("resolve", "verify", "classify-germ"):
            sp.add_argument("--script")
        if name == "verify":
            sp.add_argument("--checks")
        if name == "sing":
            sp.add_argument("--point")
        if name == "invariant":
            sp.add_argument("--var")
        if name == "camacho-sad":
            sp.add_argument("--curve")
            sp.add_argument("--at")
        if name == "blowup-audit":
            sp.add_argument("--axis")
        if name == "hirzebruch-solve":
            sp.add_argument("--delta", type=int)
        if name == "tube-audit":
            sp.add_argument("--alpha", type=int)
            sp.add_argument("--beta", type=int)
        if name == "registry":
            sp.add_argument("name", nargs="?")
    return ap


_LISTS = ("vars", "divisor", "center", "point", "checks")


def _params_from_args(ns: argparse.Namespace) -> dict:
    p = {}
    for k, v in vars(ns).items():
        if v is None or k in ("job", "command") or v is False:
            continue
        if k in _LISTS:
            v = _split(v)
        elif k == "script":
            try:
                v = json.loads(v)
            except json.JSONDecodeError as exc:
                raise InputError(f"--script is not valid JSON: {exc}") from exc
        p[k] = v
    return p


def _load_job(path: str) -> dict:
    try:
        with open(path) as fh:
            job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read job file: {exc}") from exc
    try:
        jsonschema.validate(job, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"job file rejected: {exc.message}") from exc
    return job


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        params = _params_from_args(ns)
        command = ns.command
        if ns.job:
            job = _load_job(ns.job)
            jc = job.pop("command", None)
            if command and jc and jc != command:
                raise InputError(f"job is for {jc!r}, not {command!r}")
            command = command or jc
            params = {**job, **params}
        if not command:
            raise InputError("no command given")
        as_json = bool(params.pop("json", False))
        code, text, payload = HANDLERS[command](params)
    except (InputError, ScriptError, AlgebraError, KeyError, ValueError, ZeroDivisionError) as exc:
        kind = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        err.write(json.dumps({"error": kind, "message": str(msg)}, sort_keys=True) + "\n")
        return EXIT_INPUT
    if as_json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + "\n")
    return code


def main() -> None:  # pragma: no cover
    sys.exit(run())
