"""Polynomial differential forms in a fixed coordinate chart.

A :class:`OneForm` ``sum a_i dx_i`` is the local generator of a codimension
one foliation; two- and three-forms only appear as intermediate results
(``d omega`` and ``omega ^ d omega``).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import (
    AlgebraError,
    MPoly,
    PolyMap,
    RatFunc,
    VariableMismatch,
    common_monomial_content,
    parse_poly,
    resultant,
    substitute,
)

INCONCLUSIVE = "INCONCLUSIVE"


class FormError(AlgebraError):
    pass


class UnreducedGenerator(FormError):
    pass


@dataclass(frozen=True)
class OneForm:
    vars: tuple[str, ...]
    coeffs: tuple[MPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(self.coeffs) != len(self.vars):
            raise VariableMismatch(f"{len(self.coeffs)} coefficients for {len(self.vars)} variables")
        object.__setattr__(self, "coeffs", tuple(c.with_vars(self.vars) for c in self.coeffs))

    # -- construction / io ------------------------------------------------
    @classmethod
    def parse(cls, coeffs: Sequence[str], vars: Sequence[str]) -> OneForm:
        vars = tuple(vars)
        return cls(vars, tuple(parse_poly(c, vars) for c in coeffs))

    @classmethod
    def from_text(cls, text: str, vars: Sequence[str] | None = None) -> OneForm:
        """Read ``[p1, p2, p3] over (x,y,z)``; the ``over`` clause may be
        replaced by an explicit ``vars`` argument."""
        m = re.fullmatch(r"\s*\[(.*)\]\s*(?:over\s*\((.*)\))?\s*", text, re.S)
        if m is None:
            raise FormError(f"cannot read one-form {text!r}")
        if m.group(2) is not None:
            vars = tuple(v.strip() for v in m.group(2).split(","))
        if vars is None:
            raise FormError("variables not given")
        body = m.group(1).strip()
        parts = [p.strip() for p in body.split(",")] if body else []
        return cls.parse(parts, vars)

    @classmethod
    def from_json(cls, data: dict) -> OneForm:
        return cls.parse(data["coeffs"], data["vars"])

    def to_text(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "] over (" + ",".join(self.vars) + ")"

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def exact(cls, f: MPoly) -> OneForm:
        """The differential ``df``."""
        return cls(f.vars, tuple(f.diff(v) for v in f.vars))

    # -- algebra ----------------------------------------------------------
    def coeff(self, v: str) -> MPoly:
        return self.coeffs[self.vars.index(v)]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def scale(self, f: MPoly | int | Fraction) -> OneForm:
        return OneForm(self.vars, tuple(c * f for c in self.coeffs))

    def __add__(self, other: OneForm) -> OneForm:
        _check_same(self, other)
        return OneForm(self.vars, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> OneForm:
        return OneForm(self.vars, tuple(-c for c in self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.vars == other.vars and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.vars, self.coeffs))

    def content(self) -> tuple[int, ...]:
        return common_monomial_content(list(self.coeffs))

    def reduce(self) -> OneForm:
        """Divide out the monomial content of the coefficient list."""
        e = self.content()
        if not any(e):
            return self
        return OneForm(self.vars, tuple(c.div_monomial(e) for c in self.coeffs))

    def is_proportional(self, other: OneForm) -> bool:
        return wedge(self, other).is_zero()

    def evaluate(self, point: Sequence) -> tuple[Fraction, ...]:
        if len(point) != len(self.vars):
            raise VariableMismatch(f"point of length {len(point)} for {len(self.vars)} variables")
        return tuple(c(point) for c in self.coeffs)


def _check_same(a, b) -> None:
    if a.vars != b.vars:
        raise VariableMismatch(f"forms over {a.vars} and {b.vars}")


@dataclass(frozen=True)
class TwoForm:
    """Coefficients on the basis ``dx_i ^ dx_j`` with ``i < j``."""

    vars: tuple[str, ...]
    coeffs: dict

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def __getitem__(self, ij: tuple[int, int]) -> MPoly:
        i, j = ij
        if i == j:
            return MPoly.zero(self.vars)
        if i > j:
            return -self.coeffs[(j, i)]
        return self.coeffs[(i, j)]


@dataclass(frozen=True)
class ThreeForm:
    vars: tuple[str, ...]
    coeffs: dict

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())


def exterior_derivative(w: OneForm) -> TwoForm:
    n = len(w.vars)
    out = {}
    for i, j in combinations(range(n), 2):
        out[(i, j)] = w.coeffs[j].diff(w.vars[i]) - w.coeffs[i].diff(w.vars[j])
    return TwoForm(w.vars, out)


def wedge(a: OneForm, b: OneForm | TwoForm):
    """``a ^ b`` for a one-form ``a`` and a one- or two-form ``b``."""
    _check_same(a, b)
    n = len(a.vars)
    if isinstance(b, OneForm):
        return TwoForm(a.vars, {(i, j): a.coeffs[i] * b.coeffs[j] - a.coeffs[j] * b.coeffs[i]
                                for i, j in combinations(range(n), 2)})
    out = {}
    for i, j, k in combinations(range(n), 3):
        out[(i, j, k)] = a.coeffs[i] * b[(j, k)] - a.coeffs[j] * b[(i, k)] + a.coeffs[k] * b[(i, j)]
    return ThreeForm(a.vars, out)


def check_integrability(w: OneForm) -> bool:
    """Frobenius condition ``w ^ dw = 0``."""
    if len(w.vars) < 3:
        return True
    return wedge(w, exterior_derivative(w)).is_zero()


def pullback(w: OneForm, m: PolyMap) -> OneForm:
    """Raw pull-back along a polynomial chart map (no division)."""
    if w.vars != m.source:
        raise VariableMismatch(f"form over {w.vars}, map from {m.source}")
    if not m.is_polynomial():
        raise FormError("pull-back needs a polynomial map")
    pulled = [substitute(a, m) for a in w.coeffs]
    out = []
    for t in m.target:
        acc = MPoly.zero(m.target)
        for a, im in zip(pulled, m.images):
            if a:
                d = im.diff(t)
                if d:
                    acc = acc + a * d
        out.append(acc)
    return OneForm(m.target, tuple(out))


def restrict_to_hyperplane(w: OneForm, v: str) -> OneForm:
    """Drop ``dv`` and set ``v = 0``; the result lives on the other variables."""
    rest = tuple(u for u in w.vars if u != v)
    return OneForm(rest, tuple(w.coeff(u).subs({v: 0}).with_vars(rest) for u in rest))


def is_hyperplane_invariant(w: OneForm, v: str) -> bool:
    """(v = 0) is invariant iff v divides every coefficient other than a_v."""
    for u, c in zip(w.vars, w.coeffs):
        if u != v and c.subs({v: 0}):
            return False
    return True


def certify_reduced(w: OneForm) -> bool | None:
    """True when the coefficients provably share no non-unit factor besides
    monomials; ``None`` when a shared factor could not be excluded."""
    nz = [c for c in w.coeffs if c]
    if not nz:
        return False
    if len(nz) == 1:
        c = nz[0]
        e = c.monomial_content()
        return c.div_monomial(e).is_constant()
    for v in w.vars:
        if any(c.degree_in(v) <= 0 for c in nz):
            continue
        if any(resultant(a, b, v) for a, b in combinations(nz, 2)):
            continue
        return None
    return True


def from_closed_rational(phi: RatFunc) -> OneForm:
    """Reduced generator of the foliation with rational first integral ``phi``."""
    vars = phi.vars
    num, den = phi.num, phi.den
    cleared = tuple(den * num.diff(v) - num * den.diff(v) for v in vars)
    w = OneForm(vars, cleared)
    if w.is_zero():
        raise FormError(f"constant rational function {phi}")
    w = w.reduce()
    if not certify_reduced(w):
        raise UnreducedGenerator(f"could not certify {w} free of common factors")
    return w


def closed_numerator(phi: RatFunc) -> OneForm:
    """``den * dnum - num * dden`` (``den^2 dphi``), unreduced."""
    return OneForm(phi.vars, tuple(phi.den * phi.num.diff(v) - phi.num * phi.den.diff(v)
                                   for v in phi.vars))


def singular_generators(w: OneForm) -> list[MPoly]:
    return list(w.coeffs)


def evaluate(w: OneForm, point: Sequence) -> tuple[Fraction, ...]:
    return w.evaluate(point)


def isolated_singularity_2d(w: OneForm):
    """True / False / INCONCLUSIVE, per resultants of the two coefficients."""
    if len(w.vars) != 2:
        raise VariableMismatch("isolated_singularity_2d needs exactly two variables")
    if w.is_zero():
        raise FormError("zero form")
    a, b = w.coeffs
    if a.is_zero() or b.is_zero():
        return False
    if any(common_monomial_content([a, b])):
        return False
    verdicts = []
    for v in w.vars:
        if a.degree_in(v) <= 0 and b.degree_in(v) <= 0:
            verdicts.append(None)
            continue
        verdicts.append(bool(resultant(a, b, v)))
    if False in verdicts:
        return False
    if all(verdicts):
        return True
    return INCONCLUSIVE


def form_to_json(w: OneForm) -> str:
    return json.dumps(w.to_json(), sort_keys=True)
