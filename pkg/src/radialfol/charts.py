"""Foliated charts: a one-form plus a divisor made of coordinate hyperplanes."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import MPoly, PolyMap, parse_poly
from .forms import FormError, OneForm, is_hyperplane_invariant, restrict_to_hyperplane
from .zeros import NONEMPTY, ZeroSet, common_zeros

ORIGINAL = "original"
EXCEPTIONAL = "exceptional"

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
SINGULAR = "Singular"


class ChartError(FormError):
    pass


@dataclass(frozen=True)
class DivisorComponent:
    var: str
    origin: str = ORIGINAL
    step: int | None = None
    invariant: bool | None = None

    def to_json(self) -> dict:
        out = {"var": self.var, "origin": self.origin}
        if self.step is not None:
            out["step"] = self.step
        if self.invariant is not None:
            out["invariant"] = self.invariant
        return out


@dataclass(frozen=True)
class FoliatedChart:
    id: str
    form: OneForm
    divisor: tuple[DivisorComponent, ...] = ()
    lineage: tuple = ()  # ((parent id, step index), ...) from the root down
    root_map: PolyMap | None = None  # chart coordinates -> root coordinates

    def __post_init__(self):
        vars = self.form.vars
        seen = set()
        comps = []
        for d in self.divisor:
            if d.var not in vars:
                raise ChartError(f"divisor variable {d.var!r} not among {vars}")
            if d.var in seen:
                raise ChartError(f"divisor component {d.var!r} listed twice")
            seen.add(d.var)
            comps.append(replace(d, invariant=is_hyperplane_invariant(self.form, d.var)))
        comps.sort(key=lambda d: vars.index(d.var))
        object.__setattr__(self, "divisor", tuple(comps))
        if self.form.is_zero():
            raise ChartError("zero form")
        if any(self.form.content()):
            raise ChartError(f"form {self.form} is not reduced (monomial content)")
        if self.root_map is None:
            object.__setattr__(self, "root_map", PolyMap.identity(vars))
        elif self.root_map.target != vars:
            raise ChartError("root map must land in the chart variables")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.form.vars

    @property
    def dim(self) -> int:
        return len(self.vars)

    def component(self, var: str) -> DivisorComponent:
        for d in self.divisor:
            if d.var == var:
                return d
        raise KeyError(var)

    def divisor_vars(self) -> tuple[str, ...]:
        return tuple(d.var for d in self.divisor)

    def fiber_generators(self) -> list[MPoly]:
        """Equations of the preimage of the root origin in this chart."""
        return [im for im in self.root_map.images]

    # -- io -----------------------------------------------------------------
    @classmethod
    def build(cls, coeffs: Sequence[str], vars: Sequence[str], divisor: Sequence[str] = (),
              id: str = "c0") -> FoliatedChart:
        return cls(id, OneForm.parse(coeffs, vars), tuple(DivisorComponent(v) for v in divisor))

    @classmethod
    def from_json(cls, data: dict) -> FoliatedChart:
        vars = tuple(data["vars"])
        form = OneForm(vars, tuple(parse_poly(c, vars) for c in data["coeffs"]))
        divisor = tuple(DivisorComponent(d["var"], d.get("origin", ORIGINAL), d.get("step"))
                        for d in data.get("divisor", []))
        return cls(data.get("id", "c0"), form, divisor)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "vars": list(self.vars),
            "coeffs": [str(c) for c in self.form.coeffs],
            "divisor": [d.to_json() for d in self.divisor],
        }


def classify_components(c: FoliatedChart) -> tuple[list[str], list[str]]:
    inv = [d.var for d in c.divisor if d.invariant]
    dic = [d.var for d in c.divisor if not d.invariant]
    return inv, dic


@dataclass(frozen=True)
class PointVerdict:
    status: str
    reason: str = ""

    def __str__(self) -> str:
        return self.status + (f" ({self.reason})" if self.reason else "")


def is_simple_regular_at(c: FoliatedChart, point: Sequence) -> PointVerdict:
    """Simple-point test at a rational point in the fixed chart frame.

    The point is simple when the form does not vanish there, at most one
    invariant component passes through it, and the covector stays independent
    of the differentials of the dicritical components through it.
    """
    point = tuple(Fraction(p) for p in point)
    cov = c.form.evaluate(point)
    if not any(cov):
        return PointVerdict(SINGULAR)
    through = [d for d in c.divisor if point[c.vars.index(d.var)] == 0]
    inv = [d for d in through if d.invariant]
    dic = [d for d in through if not d.invariant]
    if len(inv) > 1:
        return PointVerdict(NOT_SIMPLE, "two invariant components meet at the point: "
                            + ",".join(d.var for d in inv))
    if len(dic) >= c.dim:
        return PointVerdict(NOT_SIMPLE, "dicritical corner")
    dic_vars = {d.var for d in dic}
    if not any(a for v, a in zip(c.vars, cov) if v not in dic_vars):
        return PointVerdict(NOT_SIMPLE, "foliation tangent to the dicritical stratum "
                            + ",".join(sorted(dic_vars)))
    return PointVerdict(SIMPLE)


@dataclass(frozen=True)
class TangencyReport:
    component: str
    generators: tuple[MPoly, ...]
    zeros: ZeroSet

    @property
    def empty(self) -> bool:
        return self.zeros.empty


def tangency_locus(c: FoliatedChart, var: str, within: Sequence[MPoly] = ()) -> TangencyReport:
    """Points of the dicritical component ``var = 0`` where the foliation is
    tangent to it, optionally cut down by the extra equations ``within``."""
    d = c.component(var)
    if d.invariant:
        raise ChartError(f"component {var} is invariant")
    restricted = restrict_to_hyperplane(c.form, var)
    rest = restricted.vars
    extra = [g.subs({var: 0}).with_vars(rest) for g in within]
    return TangencyReport(var, restricted.coeffs, common_zeros(list(restricted.coeffs) + extra, rest))


def has_dicritical_corner(c: FoliatedChart) -> bool:
    return len(classify_components(c)[1]) == c.dim


def stratum_zeros(c: FoliatedChart, on: Sequence[str], polys: Sequence[MPoly],
                  within: Sequence[MPoly] = ()) -> ZeroSet:
    """Common zeros of ``polys`` and ``within`` on the coordinate stratum
    where every variable in ``on`` vanishes."""
    rest = tuple(v for v in c.vars if v not in on)
    zero = {v: 0 for v in on}
    gens = [p.subs(zero).with_vars(rest) for p in list(polys) + list(within)]
    if not rest:
        return common_zeros(gens, ()) if gens else ZeroSet(NONEMPTY, {}, ())
    return common_zeros(gens, rest)


def dicritical_strata(c: FoliatedChart):
    """Nonempty sets of dicritical components, smallest first."""
    dic = classify_components(c)[1]
    for k in range(1, len(dic) + 1):
        yield from combinations(dic, k)
