"""Worked examples with their defining data and reference scripts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import RatFunc, format_rational, parse_poly
from .charts import DivisorComponent, FoliatedChart
from .driver import AddDivisorStep, ResolutionScript, ShearStep, curve, point
from .forms import OneForm, from_closed_rational

XYZ = ("x", "y", "z")
XY = ("x", "y")


@dataclass(frozen=True)
class Example:
    name: str
    root: FoliatedChart
    scripts: dict[str, ResolutionScript]
    first_integral: RatFunc | None = None
    note: str = ""
    expected: str | None = None  # germ verdict under the default script

    @property
    def default_script(self) -> ResolutionScript:
        return next(iter(self.scripts.values()))


def _chart(coeffs, vars=XYZ, divisor=()) -> FoliatedChart:
    return FoliatedChart("c0", OneForm.parse(coeffs, vars), tuple(DivisorComponent(v) for v in divisor))


def _phi(num: str, den: str) -> RatFunc:
    return RatFunc(parse_poly(num, XYZ), parse_poly(den, XYZ))


def _from_integral(phi: RatFunc) -> FoliatedChart:
    return FoliatedChart("c0", from_closed_rational(phi))


def _s(*steps) -> ResolutionScript:
    return ResolutionScript(tuple(steps))


def open_book() -> Example:
    return Example(
        "open_book", _chart(["0", "-z", "y"], divisor=("x",)),
        {"axis": _s(curve("yz"))},
        note="y dz - z dy with the transverse plane x = 0 in the divisor",
        expected="RadialCertificate",
    )


def open_book_bare() -> Example:
    return Example(
        "open_book_bare", _chart(["0", "-z", "y"]),
        {"point_then_axis": _s(point(), curve("yz", "c0.x")),
         "axis": _s(curve("yz"))},
        note="y dz - z dy with empty divisor",
        expected="RadialCertificate",
    )


def open_book_shifted_divisor() -> Example:
    steps = _s(ShearStep("c0", "z", "x*y", "w"), AddDivisorStep("c0", "w"), curve("yw"))
    return Example(
        "open_book_shifted_divisor", _chart(["0", "-z", "y"]),
        {"shear_then_axis": steps},
        note="y dz - z dy with divisor xy - z = 0, made coordinate by w = z - xy",
        expected="AlmostRadialCertificate",
    )


def phi1() -> Example:
    phi = _phi("x*z^2 + y^2", "y*z")
    return Example(
        "phi1", _from_integral(phi),
        {"yz_then_xy": _s(curve("yz"), curve("xy", "c0.z"))},
        first_integral=phi, expected="AlmostRadialCertificate",
    )


def phi2() -> Example:
    phi = _phi("x*y + z^2", "y")
    return Example(
        "phi2", _from_integral(phi),
        {"yz_twice": _s(curve("yz"), curve("yz", "c0.z"))},
        first_integral=phi, expected="AlmostRadialCertificate",
    )


def phi3() -> Example:
    phi = _phi("x*z^2 + y^2", "z^2")
    return Example(
        "phi3", _from_integral(phi),
        {"yz": _s(curve("yz"))},
        first_integral=phi, expected="AlmostRadialCertificate",
    )


def linear_lambda(lam: Fraction | int | str = 2) -> Example:
    lam = Fraction(lam)
    return Example(
        f"linear_lambda({format_rational(lam)})", _chart([f"{format_rational(lam)}*y", "-x"], XY),
        {"point": _s(point())},
        note="lambda y dx - x dy",
        expected="RadialCertificate" if lam == 1 else "Unresolved",
    )


def cart_wheel() -> Example:
    return Example("cart_wheel", _chart(["y", "-x"], XY), {"point": _s(point())},
                   expected="RadialCertificate")


REGISTRY: dict[str, Callable[[], Example]] = {
    "open_book": open_book,
    "open_book_bare": open_book_bare,
    "open_book_shifted_divisor": open_book_shifted_divisor,
    "phi1": phi1,
    "phi2": phi2,
    "phi3": phi3,
    "linear_lambda": linear_lambda,
    "cart_wheel": cart_wheel,
}


def get(name: str) -> Example:
    """Look up an example; ``linear_lambda:5/2`` picks the parameter."""
    base, _, arg = name.partition(":")
    if base not in REGISTRY:
        raise KeyError(f"unknown registry entry {name!r}")
    if arg:
        if base != "linear_lambda":
            raise KeyError(f"{base} takes no parameter")
        return linear_lambda(arg)
    return REGISTRY[base]()
