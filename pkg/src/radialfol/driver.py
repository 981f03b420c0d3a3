"""Run resolution scripts on a foliated germ and certify the outcome.

Verification is local over the root origin: in every leaf chart the checks
are cut down by the fiber equations (the root coordinates written in the
chart), so only points lying over the origin of the initial chart are
examined. Each check is three-valued and INCONCLUSIVE never turns into yes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .algebra import MPoly, parse_poly
from .blowup import (
    CURVE,
    POINT,
    BlowupResult,
    CenterSpec,
    add_divisor,
    blowup,
    center_is_invariant,
    check_E_controlled,
)
from .blowup import shear as shear_chart
from .charts import (
    FoliatedChart,
    classify_components,
    dicritical_strata,
    has_dicritical_corner,
    stratum_zeros,
)
from .forms import OneForm, isolated_singularity_2d, restrict_to_hyperplane
from .zeros import EMPTY, INCONCLUSIVE, NONEMPTY, ZeroSet, common_zeros

YES = "yes"
NO = "no"
INC = "INCONCLUSIVE"


class ScriptError(ValueError):
    pass


# -- scripts -----------------------------------------------------------------

@dataclass(frozen=True)
class BlowupStep:
    center: CenterSpec
    force: bool = False

    @property
    def chart(self) -> str:
        return self.center.chart

    def to_json(self) -> dict:
        out = {"chart": self.chart, "center": self.center.to_json()}
        if self.force:
            out["force"] = True
        return out


@dataclass(frozen=True)
class ShearStep:
    chart: str
    var: str
    poly: str
    new_var: str | None = None

    def to_json(self) -> dict:
        body = {"var": self.var, "poly": self.poly}
        if self.new_var:
            body["new_var"] = self.new_var
        return {"chart": self.chart, "shear": body}


@dataclass(frozen=True)
class AddDivisorStep:
    chart: str
    var: str

    def to_json(self) -> dict:
        return {"chart": self.chart, "add_divisor": {"var": self.var}}


Step = BlowupStep | ShearStep | AddDivisorStep


@dataclass(frozen=True)
class ResolutionScript:
    steps: tuple = ()

    @classmethod
    def from_json(cls, data: list | str) -> ResolutionScript:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list):
            raise ScriptError("a script is a JSON list of steps")
        return cls(tuple(_step_from_json(s) for s in data))

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]

    @property
    def blowups(self) -> list[BlowupStep]:
        return [s for s in self.steps if isinstance(s, BlowupStep)]

    def __len__(self) -> int:
        return len(self.steps)


def _step_from_json(s: dict) -> Step:
    if not isinstance(s, dict):
        raise ScriptError(f"bad step {s!r}")
    chart = s.get("chart", "c0")
    if "center" in s:
        c = s["center"]
        kind = c.get("kind")
        if kind == POINT:
            center = CenterSpec.point(chart)
        elif kind == CURVE:
            center = CenterSpec.curve(c.get("vars", []), chart)
        else:
            raise ScriptError(f"unknown center kind {kind!r}")
        return BlowupStep(center, bool(s.get("force", False)))
    if "shear" in s:
        b = s["shear"]
        return ShearStep(chart, b["var"], b["poly"], b.get("new_var"))
    if "add_divisor" in s:
        return AddDivisorStep(chart, s["add_divisor"]["var"])
    raise ScriptError(f"step has no center, shear or add_divisor: {s!r}")


def curve(vars: str | Sequence[str], chart: str = "c0") -> BlowupStep:
    return BlowupStep(CenterSpec.curve(tuple(vars), chart))


def point(chart: str = "c0") -> BlowupStep:
    return BlowupStep(CenterSpec.point(chart))


# -- state -------------------------------------------------------------------

@dataclass(frozen=True)
class StepRecord:
    index: int
    step: Step
    chart_before: FoliatedChart
    result: BlowupResult | None = None


@dataclass
class ResolutionState:
    root: FoliatedChart
    charts: dict[str, FoliatedChart] = field(default_factory=dict)
    leaves: list[str] = field(default_factory=list)
    records: list[StepRecord] = field(default_factory=list)

    def leaf_charts(self) -> list[FoliatedChart]:
        return [self.charts[i] for i in self.leaves]

    def blowup_records(self) -> list[StepRecord]:
        return [r for r in self.records if r.result is not None]

    def all_charts(self) -> list[FoliatedChart]:
        """Every chart the script produced or passed through."""
        seen = [self.root]
        for r in self.records:
            seen.append(r.chart_before)
            if r.result is not None:
                seen.extend(ch.chart for ch in r.result.children)
        seen.extend(self.leaf_charts())
        out, ids = [], set()
        for c in seen:
            key = (c.id, c.form, c.divisor)
            if key not in ids:
                ids.add(key)
                out.append(c)
        return out


def apply_script(root: FoliatedChart, script: ResolutionScript | list) -> ResolutionState:
    if not isinstance(script, ResolutionScript):
        script = ResolutionScript(tuple(script))
    st = ResolutionState(root, {root.id: root}, [root.id], [])
    for i, step in enumerate(script.steps, start=1):
        if step.chart not in st.leaves:
            known = "an interior chart" if step.chart in st.charts else "unknown"
            raise ScriptError(f"step {i}: chart {step.chart!r} is {known}")
        c = st.charts[step.chart]
        pos = st.leaves.index(step.chart)
        if isinstance(step, BlowupStep):
            res = blowup(c, step.center, step=i, force=step.force)
            ids = []
            for ch in res.children:
                st.charts[ch.chart.id] = ch.chart
                ids.append(ch.chart.id)
            st.leaves[pos:pos + 1] = ids
            st.records.append(StepRecord(i, step, c, res))
        elif isinstance(step, ShearStep):
            new = shear_chart(c, step.var, parse_poly(step.poly, c.vars), step.new_var)
            st.charts[c.id] = new
            st.records.append(StepRecord(i, step, c))
        else:
            new = add_divisor(c, step.var)
            st.charts[c.id] = new
            st.records.append(StepRecord(i, step, c))
    return st


# -- verification ----------------------------------------------------------

def _verdict(z: ZeroSet) -> str:
    """An empty bad locus is a pass."""
    return {EMPTY: YES, NONEMPTY: NO}.get(z.status, INC)


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    witness: str = ""

    def to_json(self) -> dict:
        out = {"check": self.name, "verdict": self.verdict}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class LeafVerdict:
    chart: str
    resolved: str
    checks: tuple[Check, ...]

    @property
    def witnesses(self) -> list[str]:
        return [f"{c.name}: {c.witness}" for c in self.checks if c.verdict != YES]

    def to_json(self) -> dict:
        return {"chart": self.chart, "resolved": self.resolved,
                "checks": [c.to_json() for c in self.checks]}


@dataclass(frozen=True)
class StepAudit:
    index: int
    chart: str
    center: str
    dicritical: bool
    kind: str | None
    k: int
    admissible: bool
    controlled: bool

    def to_json(self) -> dict:
        return {"step": self.index, "chart": self.chart, "center": self.center,
                "dicritical": self.dicritical, "class": self.kind, "k": self.k,
                "admissible": self.admissible, "controlled": self.controlled}


@dataclass(frozen=True)
class VerifyReport:
    leaves: tuple[LeafVerdict, ...]
    steps: tuple[StepAudit, ...]
    resolved: str
    controlled: str

    def to_json(self) -> dict:
        return {"resolved": self.resolved, "controlled": self.controlled,
                "leaves": [l.to_json() for l in self.leaves],
                "steps": [s.to_json() for s in self.steps]}


def _combine(verdicts: Sequence[str]) -> str:
    if NO in verdicts:
        return NO
    if INC in verdicts:
        return INC
    return YES


def verify_chart(c: FoliatedChart) -> LeafVerdict:
    fiber = c.fiber_generators()
    coeffs = list(c.form.coeffs)
    checks = []

    z = common_zeros(coeffs + fiber, c.vars)
    checks.append(Check("regular", _verdict(z), "singular points " + z.describe() if z.nonempty else ""))

    inv, dic = classify_components(c)
    for S in dicritical_strata(c):
        if len(S) >= c.dim:
            continue
        outside = [a for v, a in zip(c.vars, coeffs) if v not in S]
        z = stratum_zeros(c, S, outside, fiber)
        name = "transverse " + ",".join(S)
        checks.append(Check(name, _verdict(z), "tangency " + z.describe() if z.nonempty else ""))

    for d in inv:
        z = stratum_zeros(c, [d], [c.form.coeff(d)], fiber)
        checks.append(Check(f"invariant {d}", _verdict(z), z.describe() if z.nonempty else ""))
    for d1, d2 in combinations(inv, 2):
        z = stratum_zeros(c, [d1, d2], [], fiber)
        checks.append(Check(f"invariant pair {d1},{d2}", _verdict(z),
                            "components meet " + z.describe() if z.nonempty else ""))

    corner = has_dicritical_corner(c)
    checks.append(Check("no dicritical corner", NO if corner else YES,
                        "dicritical components " + ",".join(dic) if corner else ""))
    return LeafVerdict(c.id, _combine([ch.verdict for ch in checks]), tuple(checks))


def _audit(r: StepRecord) -> StepAudit:
    res = r.result
    return StepAudit(r.index, res.parent, str(res.center), res.dicritical,
                     res.monoidal_class.kind if res.monoidal_class else None, res.k,
                     res.admissible, res.controlled)


def localized_controlled(st: ResolutionState) -> bool:
    """The first blow-up over the root origin must be E-controlled.

    Centers are coordinate subspaces through the chart origin and every chart
    origin lies over the root origin, so this is the first blow-up step.
    """
    recs = st.blowup_records()
    if not recs:
        return True
    return recs[0].result.controlled


def verify_resolved(st: ResolutionState) -> VerifyReport:
    leaves = tuple(verify_chart(c) for c in sorted(st.leaf_charts(), key=lambda c: c.id))
    steps = tuple(_audit(r) for r in st.blowup_records())
    resolved = _combine([l.resolved for l in leaves])
    controlled = YES if localized_controlled(st) else NO
    return VerifyReport(leaves, steps, resolved, controlled)


@dataclass(frozen=True)
class ReblowRecord:
    chart: str
    center: str
    singular_on_exceptional: str  # YES / NO / INC


def reblowup_audit(c: FoliatedChart) -> list[ReblowRecord]:
    """Blow up ``c`` again at every admissible coordinate center of
    codimension at least two and report whether a singular point shows up on
    the new exceptional divisor."""
    out = []
    singular_origin = not any(c.form.evaluate((0,) * c.dim))
    for k in range(2, c.dim + 1):
        for Y in combinations(c.vars, k):
            if k == c.dim:
                if not singular_origin:
                    continue
                spec = CenterSpec.point(c.id)
            else:
                if not center_is_invariant(c.form, Y):
                    continue
                spec = CenterSpec.curve(Y, c.id)
            res = blowup(c, spec)
            verdicts = []
            for ch in res.children:
                e = MPoly.var(ch.chart.vars, ch.exceptional)
                z = common_zeros(list(ch.chart.form.coeffs) + [e])
                verdicts.append({EMPTY: NO, NONEMPTY: YES}.get(z.status, INC))
            verdict = YES if YES in verdicts else (INC if INC in verdicts else NO)
            out.append(ReblowRecord(c.id, str(spec), verdict))
    return out


# -- germ classification -----------------------------------------------------

RADIAL = "RadialCertificate"
ALMOST_RADIAL = "AlmostRadialCertificate"
UNRESOLVED = "Unresolved"
INCONCLUSIVE_GERM = "Inconclusive"


@dataclass(frozen=True)
class GermClassification:
    kind: str
    script: ResolutionScript
    report: VerifyReport

    @property
    def radial(self) -> bool:
        return self.kind == RADIAL

    @property
    def almost_radial(self) -> bool:
        return self.kind in (RADIAL, ALMOST_RADIAL)


def classify_foliated_germ(root: FoliatedChart, script: ResolutionScript | list) -> GermClassification:
    if not isinstance(script, ResolutionScript):
        script = ResolutionScript(tuple(script))
    st = apply_script(root, script)
    rep = verify_resolved(st)
    if rep.resolved == YES:
        kind = RADIAL if rep.controlled == YES else ALMOST_RADIAL
    elif rep.resolved == NO:
        kind = UNRESOLVED
    else:
        kind = INCONCLUSIVE_GERM
    return GermClassification(kind, script, rep)


# -- open book normal form ---------------------------------------------------

@dataclass(frozen=True)
class OpenBookWitness:
    pair: tuple[str, str]
    unit: MPoly

    def describe(self) -> str:
        p, q = self.pair
        return f"u*({p} d{q} - {q} d{p}) with u = {self.unit}"


def detect_open_book(w: OneForm) -> OpenBookWitness | None:
    """Find coordinates p, q and a unit u with w = u (p dq - q dp)."""
    if len(w.vars) != 3:
        raise ValueError("detect_open_book works in three variables")
    for p, q in combinations(w.vars, 2):
        others = [v for v in w.vars if v not in (p, q)]
        if any(w.coeff(v) for v in others):
            continue
        P, Q = MPoly.var(w.vars, p), MPoly.var(w.vars, q)
        u, rem = w.coeff(q).divmod(P)
        if rem or u.is_zero() or u((0, 0, 0)) == 0:
            continue
        if w.coeff(p) == -u * Q:
            return OpenBookWitness((p, q), u)
    return None


@dataclass(frozen=True)
class SectionAdvisory:
    plane: str
    isolated: bool | str
    cart_wheel: bool | None

    @property
    def is_section(self) -> bool:
        return self.isolated is True

    def describe(self) -> str:
        if self.isolated is True:
            return f"{self.plane}=0: isolated singularity, cart-wheel={'yes' if self.cart_wheel else 'no'}"
        if self.isolated is False:
            return f"{self.plane}=0: not a section (non-isolated singularity)"
        return f"{self.plane}=0: {INC}"


def section_advisory(w: OneForm, plane: str) -> SectionAdvisory:
    """Restrict to the coordinate plane ``plane = 0`` and test whether the
    restriction has an isolated singularity, and if so whether it is a
    cart-wheel. Advisory only."""
    from .surfaces import RegularOrigin, is_cart_wheel

    r = restrict_to_hyperplane(w, plane)
    if r.is_zero():
        return SectionAdvisory(plane, False, None)
    iso = isolated_singularity_2d(r)
    cw = None
    if iso is True:
        try:
            cw = is_cart_wheel(r.reduce())
        except RegularOrigin:
            cw = False
    return SectionAdvisory(plane, iso, cw)
