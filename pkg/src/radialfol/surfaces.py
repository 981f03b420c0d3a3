"""Local invariants of foliations on surfaces: Camacho-Sad and Baum-Bott
indices, cart-wheel detection, and the index bookkeeping of one blow-up."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import MPoly, rational_roots, univariate_gcd
from .blowup import quadratic_blowup
from .charts import FoliatedChart
from .forms import FormError, OneForm, is_hyperplane_invariant, restrict_to_hyperplane
from .zeros import common_zeros

INCONCLUSIVE = "INCONCLUSIVE"


class IndexComputationError(FormError):
    pass


class CurveNotInvariant(IndexComputationError):
    pass


class UndefinedIndex(IndexComputationError):
    pass


class NilpotentOrDegenerate(IndexComputationError):
    pass


class RegularOrigin(IndexComputationError):
    pass


def _two_dim(w: OneForm) -> None:
    if len(w.vars) != 2:
        raise FormError(f"expected a form in two variables, got {w.vars}")


def _series_coeffs(f: MPoly, t: str) -> dict[int, Fraction]:
    """Univariate polynomial in ``t`` as {degree: coefficient}."""
    i = f.vars.index(t)
    out: dict[int, Fraction] = {}
    for e, c in f.terms.items():
        out[e[i]] = out.get(e[i], Fraction(0)) + c
    return {k: c for k, c in out.items() if c}


def _shift(f: MPoly, t: str, t0: Fraction) -> MPoly:
    if not t0:
        return f
    vars = f.vars
    from .algebra import PolyMap, substitute

    images = tuple(MPoly.var(vars, v) + (t0 if v == t else 0) for v in vars)
    return substitute(f, PolyMap(vars, vars, images))


def residue(num: dict[int, Fraction], den: dict[int, Fraction]) -> Fraction:
    """Residue at 0 of num(t)/den(t), by exact Laurent expansion."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    m = min(den)
    if m == 0:
        return Fraction(0)
    u0 = den[m]
    # 1/u(t) up to degree m-1, where den = t^m u(t)
    inv = [Fraction(1) / u0]
    for n in range(1, m):
        acc = sum(den.get(m + j, Fraction(0)) * inv[n - j] for j in range(1, n + 1))
        inv.append(-acc / u0)
    return sum(num.get(m - 1 - n, Fraction(0)) * inv[n] for n in range(m))


def camacho_sad_index(w: OneForm, curve: str | None = None, at: Fraction | int = 0) -> Fraction:
    """Index of ``w`` along the invariant coordinate curve ``curve = 0`` at the
    point of that curve where the other coordinate equals ``at``.

    With t the other coordinate, write the dt-coefficient as curve*A and the
    d(curve)-coefficient as B; the index is -Res_{t=at} A(t,0)/B(t,0).
    """
    _two_dim(w)
    curve = curve or w.vars[1]
    (t,) = [v for v in w.vars if v != curve]
    a_t, b = w.coeff(t), w.coeff(curve)
    if a_t.subs({curve: 0}):
        raise CurveNotInvariant(f"{curve}=0 is not invariant for {w}")
    k = [0] * 2
    k[w.vars.index(curve)] = 1
    abar = a_t.div_monomial(tuple(k)).subs({curve: 0}) if a_t else a_t
    b0 = b.subs({curve: 0})
    if b0.is_zero():
        raise UndefinedIndex(f"coefficient of d{curve} vanishes along {curve}=0")
    at = Fraction(at)
    num = _series_coeffs(_shift(abar, t, at), t)
    den = _series_coeffs(_shift(b0, t, at), t)
    return -residue(num, den)


@dataclass(frozen=True)
class LinearPart:
    """Linear part of the dual field v = B d/dx - A d/dy of A dx + B dy."""

    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    @property
    def trace(self) -> Fraction:
        return self.matrix[0][0] + self.matrix[1][1]

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def is_scalar(self) -> bool:
        (a, b), (c, d) = self.matrix
        return b == 0 and c == 0 and a == d and a != 0

    @classmethod
    def of(cls, a: Sequence, b: Sequence, c: Sequence = None, d=None) -> LinearPart:
        if c is None:  # diagonal shorthand
            return cls(((Fraction(a), Fraction(0)), (Fraction(0), Fraction(b))))
        return cls(((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d))))


def linear_part(w: OneForm) -> LinearPart:
    _two_dim(w)
    A, B = w.coeffs
    zero = (0, 0)
    x, y = w.vars
    row0 = (B.diff(x)(zero), B.diff(y)(zero))
    row1 = (-A.diff(x)(zero), -A.diff(y)(zero))
    return LinearPart((row0, row1))


def baum_bott_index(L: LinearPart) -> Fraction:
    if L.det == 0:
        raise NilpotentOrDegenerate("linear part has zero determinant")
    return L.trace ** 2 / L.det


def radial_p2_degrees(limit: int) -> list[int]:
    """Degrees d <= limit with 4 + 4d + d^2 == 4(1 + d + d^2)."""
    return [d for d in range(limit + 1) if 4 + 4 * d + d * d == 4 * (1 + d + d * d)]


# -- blow-up audit -----------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalPoint:
    chart: str
    param: Fraction | None  # coordinate along the exceptional line, None if irrational
    index: Fraction | str


@dataclass(frozen=True)
class IndexAudit:
    dicritical: bool
    points: tuple[ExceptionalPoint, ...] = ()
    irrational_points: int = 0
    strict_index: Fraction | str | None = None

    @property
    def index_sum(self) -> Fraction | None:
        vals = [p.index for p in self.points if isinstance(p.index, Fraction)]
        if self.dicritical:
            return None
        return sum(vals, Fraction(0))

    @property
    def complete(self) -> bool:
        return self.irrational_points == 0 and all(isinstance(p.index, Fraction) for p in self.points)


def _squarefree_degree(f: MPoly, t: str) -> int:
    if f.total_degree() <= 0:
        return 0
    g = univariate_gcd(f, f.diff(t))
    return f.degree_in(t) - (g.degree_in(t) if not g.is_constant() else 0)


def blowup_index_audit(w: OneForm, axis: str | None = None) -> IndexAudit:
    """Blow up the origin once and collect Camacho-Sad indices along the
    exceptional line. ``axis`` names a coordinate whose zero set is an
    invariant curve; its strict transform index is reported too."""
    _two_dim(w)
    chart = FoliatedChart("c0", w)
    res = quadratic_blowup(chart)
    x, y = w.vars
    strict = None
    if axis is not None:
        other = x if axis == y else y
        strict = _index_or_flag(res.child(other).chart.form, axis, 0)
    if res.dicritical:
        return IndexAudit(True, (), 0, strict)
    points: list[ExceptionalPoint] = []
    irrational = 0
    # first chart: exceptional x, parameter y covers every direction but one
    cx = res.child(x).chart.form
    g = cx.coeff(x).subs({x: 0}).drop_vars([x]) if cx.coeff(x).subs({x: 0}) else None
    if g is None:
        raise UndefinedIndex("exceptional line is entirely singular")
    roots = rational_roots(g)
    irrational = _squarefree_degree(g, y) - len(roots)
    for r in roots:
        points.append(ExceptionalPoint(f"c0.{x}", r, _index_or_flag(cx, x, r)))
    # second chart: only its origin is new
    cy = res.child(y).chart.form
    if not any(cy.evaluate((0, 0))):
        points.append(ExceptionalPoint(f"c0.{y}", Fraction(0), _index_or_flag(cy, y, 0)))
    return IndexAudit(False, tuple(points), irrational, strict)


def _index_or_flag(w: OneForm, curve: str, at) -> Fraction | str:
    try:
        return camacho_sad_index(w, curve, at)
    except IndexComputationError:
        return INCONCLUSIVE


@dataclass(frozen=True)
class CartWheelReport:
    linear_scalar: bool
    dicritical: bool
    children_regular: bool
    children_transverse: bool

    @property
    def verdict(self) -> bool:
        return self.linear_scalar and self.dicritical and self.children_regular and self.children_transverse


def cart_wheel_report(w: OneForm) -> CartWheelReport:
    _two_dim(w)
    if any(w.evaluate((0, 0))):
        raise RegularOrigin(f"origin is not singular for {w}")
    scalar = linear_part(w).is_scalar()
    res = quadratic_blowup(FoliatedChart("c0", w), force=True)
    regular = transverse = True
    for ch in res.children:
        f = ch.chart.form
        e = ch.exceptional
        ev = MPoly.var(f.vars, e)
        if not common_zeros(list(f.coeffs) + [ev]).empty:
            regular = False
        if ch.dicritical:
            r = restrict_to_hyperplane(f, e)
            if not common_zeros(list(r.coeffs)).empty:
                transverse = False
        else:
            transverse = False
    return CartWheelReport(scalar, res.dicritical, regular, transverse)


def is_cart_wheel(w: OneForm) -> bool:
    return cart_wheel_report(w).verdict
