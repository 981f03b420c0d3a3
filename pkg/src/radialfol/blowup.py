"""Blow-ups of foliated charts along coordinate centers.

Chart conventions: the chart attached to the center variable ``e`` keeps the
same variable names; it sends ``e -> e`` and every other center variable
``v -> e*v``. The pulled-back form is divided by the largest power of ``e``
that divides all of its coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import MPoly, PolyMap, divide_by_var_power, generic_order, max_var_power
from .charts import EXCEPTIONAL, ChartError, DivisorComponent, FoliatedChart
from .forms import OneForm, is_hyperplane_invariant, pullback

POINT = "point"
CURVE = "curve"

NDIC = "NDic"
DICV = "DicV"
DICNV = "DicNV"


class BlowupError(ChartError):
    pass


class NotAdmissible(BlowupError):
    pass


class NormalCrossingsViolation(BlowupError):
    pass


class DivisorNotPreserved(BlowupError):
    pass


@dataclass(frozen=True)
class CenterSpec:
    kind: str
    vars: tuple[str, ...] = ()
    chart: str = "c0"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if self.kind not in (POINT, CURVE):
            raise BlowupError(f"unknown center kind {self.kind!r}")
        if len(set(self.vars)) != len(self.vars):
            raise BlowupError("repeated center variable")

    @classmethod
    def point(cls, chart: str = "c0") -> CenterSpec:
        return cls(POINT, (), chart)

    @classmethod
    def curve(cls, vars: Sequence[str], chart: str = "c0") -> CenterSpec:
        return cls(CURVE, tuple(vars), chart)

    def center_vars(self, c: FoliatedChart) -> tuple[str, ...]:
        """Variables vanishing on the center, in chart order."""
        if self.kind == POINT:
            return c.vars
        missing = [v for v in self.vars if v not in c.vars]
        if missing:
            raise BlowupError(f"center variables {missing} not in chart {c.id}")
        if c.dim < 3:
            raise BlowupError("curve centers need a chart of dimension at least three")
        if len(self.vars) != c.dim - 1:
            raise BlowupError(f"a curve center needs {c.dim - 1} variables, got {len(self.vars)}")
        return tuple(v for v in c.vars if v in self.vars)

    def to_json(self) -> dict:
        if self.kind == POINT:
            return {"kind": POINT}
        return {"kind": CURVE, "vars": list(self.vars)}

    def __str__(self) -> str:
        return "point" if self.kind == POINT else "(" + ",".join(self.vars) + ")"


@dataclass(frozen=True)
class LogOrder:
    r: int | float
    nu_p: int | float
    orders: dict  # var -> generic order of its coefficient

    def weighted(self, center: Sequence[str]) -> dict:
        """Generic orders of the terms y_i * a_i for the center variables."""
        return {v: self.orders[v] + 1 for v in center}


@dataclass(frozen=True)
class MonoidalClass:
    kind: str
    r: int | float
    nu_p: int | float

    @property
    def dicritical(self) -> bool:
        return self.kind != NDIC

    def __str__(self) -> str:
        return f"{self.kind} r={_fmt_order(self.r)}"


def _fmt_order(k) -> str:
    return "inf" if k == float("inf") else str(k)


def log_generic_order(w: OneForm, Y: Sequence[str]) -> LogOrder:
    Y = tuple(Y)
    free = [v for v in w.vars if v not in Y]
    orders = {v: generic_order(w.coeff(v), Y) for v in w.vars}
    r = min([orders[v] for v in free] + [orders[v] + 1 for v in Y])
    p = MPoly.zero(w.vars)
    for v in Y:
        p = p + MPoly.var(w.vars, v) * w.coeff(v)
    return LogOrder(r, generic_order(p, Y), orders)


def classify_monoidal(w: OneForm, Y: Sequence[str]) -> MonoidalClass:
    lo = log_generic_order(w, Y)
    if lo.nu_p == lo.r:
        kind = NDIC
    elif all(o >= lo.r + 1 for o in lo.weighted(Y).values()):
        kind = DICV
    else:
        kind = DICNV
    return MonoidalClass(kind, lo.r, lo.nu_p)


@dataclass(frozen=True)
class ChildChart:
    chart: FoliatedChart
    chart_map: PolyMap
    exceptional: str
    k: int
    dicritical: bool


@dataclass(frozen=True)
class BlowupResult:
    parent: str
    center: CenterSpec
    step: int
    children: tuple[ChildChart, ...]
    dicritical: bool
    k: int
    monoidal_class: MonoidalClass | None
    admissible: bool
    controlled: bool
    vertical: bool | None = None

    def child(self, var: str) -> ChildChart:
        for ch in self.children:
            if ch.exceptional == var:
                return ch
        raise KeyError(var)


def chart_map(vars: Sequence[str], center: Sequence[str], e: str) -> PolyMap:
    vars = tuple(vars)
    ev = MPoly.var(vars, e)
    images = tuple(ev * MPoly.var(vars, v) if (v in center and v != e) else MPoly.var(vars, v)
                   for v in vars)
    return PolyMap(vars, vars, images)


def transform_form(w: OneForm, center: Sequence[str], e: str) -> tuple[OneForm, int, PolyMap]:
    """Pull back to the ``e``-chart and divide by the maximal power of e."""
    m = chart_map(w.vars, center, e)
    raw = pullback(w, m)
    k = max_var_power(raw.coeffs, e)
    if k is None:
        raise BlowupError("pull-back vanished identically")
    out = OneForm(raw.vars, tuple(divide_by_var_power(a, e, k) for a in raw.coeffs))
    return out, k, m


def center_is_invariant(w: OneForm, center: Sequence[str]) -> bool:
    """The coordinate center is invariant iff the coefficients of the free
    variables vanish along it."""
    free = [v for v in w.vars if v not in center]
    zero = {v: 0 for v in center}
    return all(not w.coeff(v).subs(zero) for v in free)


def check_E_controlled(c: FoliatedChart, Y: CenterSpec) -> bool:
    if Y.kind == POINT:
        return True
    return set(Y.center_vars(c)) | set(c.divisor_vars()) >= set(c.vars)


def _restrict(w: OneForm, v: str) -> OneForm:
    from .forms import restrict_to_hyperplane

    return restrict_to_hyperplane(w, v)


def _check_normal_crossings(c: FoliatedChart, center: Sequence[str]) -> None:
    # coordinate hyperplanes and a coordinate center always cross normally;
    # we still refuse malformed data
    for d in c.divisor:
        if d.var not in c.vars:
            raise NormalCrossingsViolation(f"component {d.var} outside chart {c.id}")


def blowup(c: FoliatedChart, Y: CenterSpec, step: int = 1, force: bool = False) -> BlowupResult:
    center = Y.center_vars(c)
    _check_normal_crossings(c, center)
    if Y.kind == POINT:
        admissible = not any(c.form.evaluate((0,) * c.dim))
        if not admissible and not force:
            raise NotAdmissible(f"chart {c.id}: origin is not singular")
        mclass = None
    else:
        admissible = center_is_invariant(c.form, center)
        if not admissible and not force:
            raise NotAdmissible(f"chart {c.id}: center {Y} is not invariant")
        mclass = classify_monoidal(c.form, center)

    free = [v for v in c.vars if v not in center]
    children = []
    for e in center:
        form, k, m = transform_form(c.form, center, e)
        divisor = [d for d in c.divisor if d.var != e]
        divisor.append(DivisorComponent(e, EXCEPTIONAL, step))
        child = FoliatedChart(
            f"{c.id}.{e}", form, tuple(divisor),
            c.lineage + ((c.id, step),), c.root_map.then(m),
        )
        dic = not is_hyperplane_invariant(form, e)
        children.append(ChildChart(child, m, e, k, dic))

    ks = {ch.k for ch in children}
    if len(ks) != 1:
        raise AssertionError(f"divided powers differ across charts: {sorted(ks)}")
    flags = {ch.dicritical for ch in children}
    if len(flags) != 1:
        raise AssertionError("dicriticality differs across charts")
    dicritical = flags.pop()

    vertical = None
    if Y.kind == CURVE:
        vertical = dicritical and all(_fibration_on_exceptional(ch.chart.form, ch.exceptional, free)
                                      for ch in children)
        expected = {NDIC: (False, False), DICV: (True, True), DICNV: (True, False)}[mclass.kind]
        if admissible and (dicritical, vertical) != expected:
            raise AssertionError(f"classifier {mclass} disagrees with the transform "
                                 f"(dicritical={dicritical}, vertical={vertical})")
    return BlowupResult(c.id, Y, step, tuple(children), dicritical, ks.pop(), mclass,
                        admissible, check_E_controlled(c, Y), vertical)


def _fibration_on_exceptional(w: OneForm, e: str, free: Sequence[str]) -> bool:
    r = _restrict(w, e)
    if r.is_zero():
        return False
    return all(a.is_zero() for v, a in zip(r.vars, r.coeffs) if v not in free)


def monoidal_blowup(c: FoliatedChart, Y: CenterSpec, step: int = 1, force: bool = False) -> BlowupResult:
    if Y.kind != CURVE:
        raise BlowupError("monoidal blow-up needs a curve center")
    return blowup(c, Y, step, force)


def quadratic_blowup(c: FoliatedChart, step: int = 1, force: bool = False) -> BlowupResult:
    return blowup(c, CenterSpec.point(c.id), step, force)


def shear(c: FoliatedChart, v: str, p: MPoly, new_var: str | None = None) -> FoliatedChart:
    """New coordinate ``v' = v - p``: the hypersurface ``v = p`` becomes ``v' = 0``."""
    if v not in c.vars:
        raise BlowupError(f"{v} is not a chart variable")
    p = p.with_vars(c.vars)
    if v in p.support():
        raise BlowupError(f"shear polynomial may not involve {v}")
    if p((0,) * c.dim) != 0:
        raise BlowupError("shear must fix the origin")
    if p and v in c.divisor_vars():
        raise DivisorNotPreserved(f"component {v}=0 would leave coordinate position")
    nv = new_var or v
    if nv != v and nv in c.vars:
        raise BlowupError(f"variable {nv} already in use")
    target = tuple(nv if u == v else u for u in c.vars)
    images = []
    for u in c.vars:
        g = MPoly.var(target, nv if u == v else u)
        if u == v:
            g = g + _rename(p, v, nv, target)
        images.append(g)
    m = PolyMap(c.vars, target, tuple(images))
    form = pullback(c.form, m).reduce()
    divisor = tuple(DivisorComponent(nv if d.var == v else d.var, d.origin, d.step) for d in c.divisor)
    return FoliatedChart(c.id, form, divisor, c.lineage, c.root_map.then(m))


def _rename(p: MPoly, old: str, new: str, target: Sequence[str]) -> MPoly:
    renamed = MPoly(tuple(new if u == old else u for u in p.vars), p.terms)
    return renamed.with_vars(target)


def add_divisor(c: FoliatedChart, var: str) -> FoliatedChart:
    if var in c.divisor_vars():
        raise ChartError(f"{var} already in the divisor")
    return FoliatedChart(c.id, c.form, c.divisor + (DivisorComponent(var),), c.lineage, c.root_map)
