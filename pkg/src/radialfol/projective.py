"""Foliations on the projective plane and on Hirzebruch surfaces, plus the
chart bookkeeping of Hirzebruch tubes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .algebra import AlgebraError, MPoly, PolyMap, RatFunc, common_monomial_content, parse_poly, substitute

P2_VARS = ("X0", "X1", "X2")
S_VARS = ("X0", "X1", "Y0", "Y1")


class ProjectiveError(AlgebraError):
    pass


class NotHomogeneous(ProjectiveError):
    pass


class NotBiHomogeneous(ProjectiveError):
    pass


class EulerViolation(ProjectiveError):
    pass


class CommonFactor(ProjectiveError):
    pass


# -- projective plane --------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveForm:
    A: tuple[MPoly, MPoly, MPoly]

    @classmethod
    def parse(cls, coeffs: Sequence[str]) -> ProjectiveForm:
        return cls(tuple(parse_poly(c, P2_VARS) for c in coeffs))


def _homogeneous_degree(f: MPoly) -> int:
    degs = {sum(e) for e in f.terms}
    if len(degs) != 1:
        raise NotHomogeneous(f"{f} is not homogeneous")
    return degs.pop()


def validate_projective_form(W: ProjectiveForm) -> int:
    """Return the degree d of the foliation (coefficients have degree d+1)."""
    nz = [a for a in W.A if a]
    if not nz:
        raise ProjectiveError("zero form")
    degs = {_homogeneous_degree(a) for a in nz}
    if len(degs) != 1:
        raise NotHomogeneous(f"coefficient degrees differ: {sorted(degs)}")
    euler = sum((MPoly.var(P2_VARS, v) * a for v, a in zip(P2_VARS, W.A)), MPoly.zero(P2_VARS))
    if euler:
        raise EulerViolation(f"sum X_i A_i = {euler}")
    if any(common_monomial_content(list(W.A))):
        raise CommonFactor("coefficients share a monomial factor")
    return degs.pop() - 1


# -- Hirzebruch surfaces -----------------------------------------------------

@dataclass(frozen=True)
class BiDegree:
    a: int
    b: int

    def __add__(self, other: BiDegree) -> BiDegree:
        return BiDegree(self.a + other.a, self.b + other.b)

    def __iter__(self):
        return iter((self.a, self.b))


def _weights(delta: int) -> dict[str, tuple[int, int]]:
    return {"X0": (1, 0), "X1": (1, 0), "Y0": (0, 1), "Y1": (-delta, 1)}


def bidegree(f: MPoly, delta: int) -> BiDegree | None:
    """Bi-degree under X_i -> (1,0), Y0 -> (0,1), Y1 -> (-delta,1); None for 0."""
    if f.is_zero():
        return None
    w = _weights(delta)
    seen = set()
    for e in f.terms:
        a = b = 0
        for v, k in zip(f.vars, e):
            wa, wb = w[v]
            a += wa * k
            b += wb * k
        seen.add((a, b))
    if len(seen) != 1:
        raise NotBiHomogeneous(f"{f} mixes bi-degrees {sorted(seen)}")
    return BiDegree(*seen.pop())


@dataclass(frozen=True)
class HirzebruchForm:
    """W = A0 dX0 + A1 dX1 + B0 dY0 + B1 dY1 on S_delta."""

    delta: int
    A0: MPoly
    A1: MPoly
    B0: MPoly
    B1: MPoly

    @classmethod
    def parse(cls, delta: int, coeffs: Sequence[str]) -> HirzebruchForm:
        return cls(delta, *(parse_poly(c, S_VARS) for c in coeffs))

    @property
    def coeffs(self) -> tuple[MPoly, MPoly, MPoly, MPoly]:
        return (self.A0, self.A1, self.B0, self.B1)


def validate_hirzebruch_form(H: HirzebruchForm) -> BiDegree:
    """Bi-degree (a, b) of the form, after checking both Euler relations."""
    X0, X1, Y0, Y1 = (MPoly.var(S_VARS, v) for v in S_VARS)
    shifts = [BiDegree(1, 0), BiDegree(1, 0), BiDegree(0, 1), BiDegree(-H.delta, 1)]
    found = set()
    for c, s in zip(H.coeffs, shifts):
        bd = bidegree(c.with_vars(S_VARS), H.delta)
        if bd is not None:
            found.add(bd + s)
    if not found:
        raise ProjectiveError("zero form")
    if len(found) != 1:
        raise NotBiHomogeneous(f"coefficients give form bi-degrees {sorted(map(tuple, found))}")
    r1 = X0 * H.A0 + X1 * H.A1 - Y1 * H.B1 * H.delta
    r2 = Y0 * H.B0 + Y1 * H.B1
    if r1 or r2:
        raise EulerViolation(f"Euler relations give {r1} and {r2}")
    return found.pop()


def foliation_bidegree(ab: BiDegree | tuple[int, int], delta: int) -> tuple[int, int]:
    a, b = ab
    return (a - 2 + delta, b - 2)


def milnor_count(d1: int, d2: int, delta: int) -> int:
    return (d2 + 1) * (2 * (d1 + 1) + delta * d2) + 2


def radial_equation(d1: int, d2: int, delta: int) -> int:
    return 6 * d1 * d2 + 4 * d1 + 4 * d2 + 3 * delta * d2 ** 2 + 2 * delta * d2 + 8


@dataclass(frozen=True)
class DiophantineSolution:
    d1: int
    d2: int
    situation: int
    realizable: bool

    def row(self) -> str:
        return f"{self.d1}\t{self.d2}\tS{self.situation}\t{'yes' if self.realizable else 'no'}"


# fixed d2 per situation, in situation order
_SITUATION_D2 = {1: -2, 2: 0, 3: 2, 4: -1}


def solve_radial_diophantine(delta: int) -> list[DiophantineSolution]:
    if delta < 0:
        raise ValueError("delta must be non-negative")
    out = []
    for situation, d2 in _SITUATION_D2.items():
        d1 = -(Fraction(delta * d2, 2) + 1) + Fraction(d2 - 2, 3 * d2 + 2)
        if d1.denominator != 1:
            continue
        d1 = int(d1)
        if radial_equation(d1, d2, delta) != 0:
            raise AssertionError(f"closed form gave a non-solution ({d1}, {d2})")
        realizable = situation == 1 or (situation == 2 and delta == 0)
        out.append(DiophantineSolution(d1, d2, situation, realizable))
    return out


def brute_force_solutions(delta: int, bound: int) -> set[tuple[int, int]]:
    return {(d1, d2) for d1 in range(-bound, bound + 1) for d2 in range(-bound, bound + 1)
            if radial_equation(d1, d2, delta) == 0}


def fibration_form(delta: int) -> HirzebruchForm:
    return HirzebruchForm.parse(delta, ["X1", "-X0", "0", "0"])


# -- atlas of S_delta -------------------------------------------------------

def _rf(expr: str, vars: Sequence[str]) -> RatFunc:
    num, _, den = expr.partition("/")
    return RatFunc(parse_poly(num, vars), parse_poly(den or "1", vars))


def _quotient_charts(delta: int) -> dict[str, tuple[RatFunc, RatFunc]]:
    """Affine coordinates of each chart as bi-degree (0,0) quotients."""
    d = delta
    q = {
        "00": ("X1/X0", f"X0^{d}*Y1/Y0"),
        "10": ("X0/X1", f"X1^{d}*Y1/Y0"),
        "01": ("X1/X0", f"Y0/X0^{d}*Y1"),
        "11": ("X0/X1", f"Y0/X1^{d}*Y1"),
    }
    return {k: (_rf(a, S_VARS), _rf(b, S_VARS)) for k, (a, b) in q.items()}


def _chart_vars(k: str) -> tuple[str, str]:
    return (f"x{k}", f"y{k}")


def atlas_transition(delta: int, to: str, frm: str) -> PolyMap:
    """Coordinates of chart ``to`` as rational functions of chart ``frm``,
    from x00 = x01 = 1/x10 = 1/x11 and y00 = 1/y01 = x10^d y10 = x11^d / y11."""
    src = _chart_vars(frm)
    x, y = (MPoly.var(src, v) for v in src)
    one = RatFunc.of(MPoly.const(src, 1))
    X, Y = RatFunc.of(x), RatFunc.of(y)
    # express (x00, y00) in the source chart
    to00 = {
        "00": (X, Y),
        "01": (X, one / Y),
        "10": (one / X, X ** delta * Y),
        "11": (one / X, X ** delta / Y),
    }[frm]
    x00, y00 = to00
    # and then chart ``to`` from (x00, y00)
    out = {
        "00": (x00, y00),
        "01": (x00, one / y00),
        "10": (one / x00, y00 * x00 ** delta),
        "11": (one / x00, one / (y00 * x00 ** delta)),
    }[to]
    return PolyMap(_chart_vars(to), src, out)


def s_delta_atlas_check(delta: int) -> bool:
    """Transitions agree with the homogeneous quotient model and satisfy the
    cocycle condition on every ordered triple of charts."""
    charts = ["00", "01", "10", "11"]
    q = _quotient_charts(delta)
    for k, (a, b) in q.items():
        for f in (a, b):
            if bidegree(f.num, delta) is not None and bidegree(f.num, delta) != bidegree(f.den, delta):
                return False
    for to, frm in permutations(charts, 2):
        t = atlas_transition(delta, to, frm)
        # chart ``frm`` coordinates in terms of X, Y
        model = PolyMap(_chart_vars(frm), S_VARS, q[frm])
        composed = t.then(model)
        if any(c != e for c, e in zip(composed.images, q[to])):
            return False
    for a, b, c in permutations(charts, 3):
        lhs = atlas_transition(delta, a, b).then(atlas_transition(delta, b, c))
        rhs = atlas_transition(delta, a, c)
        if any(RatFunc.of(l) != RatFunc.of(r) for l, r in zip(lhs.images, rhs.images)):
            return False
    return True


# -- Hirzebruch tubes --------------------------------------------------------

@dataclass(frozen=True)
class TubeSpec:
    alpha: int
    beta: int
    components: int = 1

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 1:
            raise ValueError("a tube needs alpha >= 0 and beta >= 1")
        if self.components not in (1, 2):
            raise ValueError("a tube carries one or two divisor components")


@dataclass(frozen=True)
class TubeAudit:
    spec: TubeSpec
    surface_index: int | None
    l0_order: tuple[int, int] | None
    generic_order: tuple[int, int] | None

    @property
    def ok(self) -> bool:
        a, b = self.spec.alpha, self.spec.beta
        return (self.surface_index == a + b and self.l0_order == (a, a + b)
                and self.generic_order == (a + b, b))


def _ratmap(source, target, exprs) -> PolyMap:
    return PolyMap(tuple(source), tuple(target), tuple(_rf(e, target) for e in exprs))


def _power_of(f, t: str, vars) -> int | None:
    """k with f == t^k (k may be negative), else None."""
    f = RatFunc.of(f)
    for part, sign in ((f.num, 1), (f.den, -1)):
        if not part.is_monomial() or part.support() - {t}:
            return None
    if f.num.leading()[1] != f.den.leading()[1]:
        return None
    return f.num.degree_in(t) - f.den.degree_in(t)


def _tube_order(m: PolyMap, xs, ys, zs) -> tuple[int, int] | None:
    """Read (alpha, beta) off u = 1/x, v = x^beta y, w = z/x^alpha."""
    u, v, w = m.images
    X = RatFunc.of(MPoly.var(m.target, xs))
    if RatFunc.of(u) * X != 1:
        return None
    beta = _power_of(RatFunc.of(v) / RatFunc.of(MPoly.var(m.target, ys)), xs, m.target)
    alpha = _power_of(RatFunc.of(w) / RatFunc.of(MPoly.var(m.target, zs)), xs, m.target)
    if alpha is None or beta is None:
        return None
    return (-alpha, beta)


def _surface_index(m: PolyMap, c11) -> int | None:
    """Index delta of the exceptional surface, read off the (x1,y1) -> (u1,v1)
    transition and confirmed against the S_delta atlas."""
    x1, y1, z1 = c11
    u1, v1 = RatFunc.of(m.images[0]), RatFunc.of(m.images[1])
    if any(z1 in f.num.support() | f.den.support() for f in (u1, v1)):
        return None
    k = _power_of(v1 / RatFunc.of(MPoly.var(m.target, y1)), x1, m.target)
    if k is None or k < 0:
        return None
    rename = PolyMap(("x00", "y00"), m.target, (MPoly.var(m.target, x1), MPoly.var(m.target, y1)))
    atlas = atlas_transition(k, "10", "00").then(rename)
    if RatFunc.of(atlas.images[0]) != u1 or RatFunc.of(atlas.images[1]) != v1:
        return None
    return k


def tube_transition_audit(T: TubeSpec, shear_coeffs: Sequence[int] | None = None) -> TubeAudit:
    a, b = T.alpha, T.beta
    n = a + b
    base = ("x", "y", "z")
    other = ("u", "v", "w")
    tube = _ratmap(other, base, ["1/x", f"x^{b}*y", f"z/x^{a}"])

    # L0 charts: U11 (x1,y1,z1): y = y1 z1, z = z1 ; U21 (u1,v1,w1): v = v1 w1, w = w1
    c11, c21 = ("x1", "y1", "z1"), ("u1", "v1", "w1")
    blow11 = _ratmap(base, c11, ["x1", "y1*z1", "z1"])
    inv21 = _ratmap(c21, other, ["u", "v/w", "w"])
    l0 = inv21.then(tube).then(blow11)
    l0_order = _tube_order(l0, "x1", "y1", "z1")
    # the exceptional surface is z1 = 0 / w1 = 0; its (x1, y1) <-> (u1, v1) part
    surface = _surface_index(l0, c11)

    # generic curve: U12 (x2,y2,z2): y = y2, z = y2 z2 ; U22 (u2,v2,w2): v = v2, w = v2 w2
    c12, c22 = ("x2", "y2", "z2"), ("u2", "v2", "w2")
    blow12 = _ratmap(base, c12, ["x2", "y2", "y2*z2"])
    inv22 = _ratmap(c22, other, ["u", "v", "w/v"])
    generic = inv22.then(tube).then(blow12)
    coeffs = list(shear_coeffs) if shear_coeffs is not None else [i + 1 for i in range(n + 1)]
    if len(coeffs) != n + 1:
        raise ValueError(f"need {n + 1} shear coefficients")
    # z~2 = z2 + sum a_i x2^(n-i) ; w~2 = w2 + sum a_i u2^i
    zt = ("x2", "y2", "zt")
    zs = "zt - (" + " + ".join(f"{c}*x2^{n - i}" for i, c in enumerate(coeffs)) + ")"
    unshear = _ratmap(c12, zt, ["x2", "y2", zs])
    wt_src = ("u2", "v2", "w2")
    ws = "w2 + " + " + ".join(f"{c}*u2^{i}" for i, c in enumerate(coeffs))
    reshear = _ratmap(("u2", "v2", "wt"), wt_src, ["u2", "v2", ws])
    sheared = reshear.then(generic).then(unshear)
    generic_order = _tube_order(sheared, "x2", "y2", "zt")

    return TubeAudit(T, surface, l0_order, generic_order)
