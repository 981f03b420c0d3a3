"""Certify whether a finite list of polynomials has a common complex zero.

Sound but incomplete: a verdict of ``EMPTY`` or ``NONEMPTY`` is always
correct; anything the escalation cannot decide comes back ``INCONCLUSIVE``.

Escalation order:
  1. a nonzero constant generator -> empty;
  2. monomial generators (and monomial factors) split the problem into
     coordinate subspaces, each handled recursively with one variable fewer;
  3. one remaining variable -> univariate gcd;
  4. two remaining variables -> pairwise resultants (a resultant lies in the
     ideal, so a nonzero constant one proves emptiness), then rational
     roots of the resultants for a witness;
  5. otherwise inconclusive (a lone nonconstant generator is always nonempty).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import MPoly, rational_roots, resultant, univariate_gcd

EMPTY = "empty"
NONEMPTY = "nonempty"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ZeroSet:
    status: str
    # a rational point (partial: unlisted variables are unconstrained) or None
    witness: dict[str, Fraction] | None = None
    # variables set to zero along a whole coordinate locus contained in the set
    locus: tuple[str, ...] = field(default=())

    @property
    def empty(self) -> bool:
        return self.status == EMPTY

    @property
    def nonempty(self) -> bool:
        return self.status == NONEMPTY

    def describe(self) -> str:
        if self.status != NONEMPTY:
            return self.status
        bits = []
        if self.locus:
            bits.append("locus " + ",".join(f"{v}=0" for v in self.locus))
        if self.witness is not None:
            bits.append("point " + ",".join(f"{v}={x}" for v, x in sorted(self.witness.items())))
        return "nonempty" + (" (" + "; ".join(bits) + ")" if bits else "")


def _active_vars(polys: Sequence[MPoly], free: Sequence[str]) -> list[str]:
    used = set()
    for p in polys:
        used |= p.support()
    return [v for v in free if v in used]


def common_zeros(polys: Sequence[MPoly], free: Sequence[str] | None = None) -> ZeroSet:
    """Decide whether ``polys`` vanish simultaneously somewhere in C^free."""
    if not polys:
        return ZeroSet(NONEMPTY, {}, ())
    if free is None:
        free = polys[0].vars
    return _solve([p for p in polys], tuple(free), {}, ())


def _solve(polys, free, fixed, locus) -> ZeroSet:
    polys = [p for p in polys if p]
    if any(p.is_constant() for p in polys):
        return ZeroSet(EMPTY)
    if not polys:
        return ZeroSet(NONEMPTY, dict(fixed), locus)

    # split on monomial factors; the smallest factor support branches least
    best = None
    for i, p in enumerate(polys):
        content = p.monomial_content()
        if any(content):
            support = [v for v, k in zip(p.vars, content) if k]
            rest = None if p.is_monomial() else p.div_monomial(content)
            if best is None or (rest is None and best[2] is not None) or len(support) < len(best[1]):
                best = (i, support, rest)
    if best is not None:
        i, support, rest = best
        verdicts = []
        for v in support:
            sub = [q.subs({v: 0}) for j, q in enumerate(polys) if j != i]
            verdicts.append(_solve(sub, tuple(w for w in free if w != v),
                                   {**fixed, v: Fraction(0)}, locus + (v,)))
        if rest is not None:
            verdicts.append(_solve([rest] + [q for j, q in enumerate(polys) if j != i], free, fixed, locus))
        for vd in verdicts:
            if vd.nonempty:
                return vd
        if all(vd.empty for vd in verdicts):
            return ZeroSet(EMPTY)
        return ZeroSet(INCONCLUSIVE)

    active = _active_vars(polys, free)
    if len(active) == 1:
        return _univariate(polys, active[0], fixed)
    if len(polys) == 1:
        return ZeroSet(NONEMPTY, None, ())
    if len(active) == 2:
        return _bivariate(polys, active, fixed)
    return ZeroSet(INCONCLUSIVE)


def _univariate(polys, v, fixed) -> ZeroSet:
    g = polys[0]
    for p in polys[1:]:
        g = univariate_gcd(g, p)
        if g.is_constant():
            return ZeroSet(EMPTY)
    if g.is_constant():
        return ZeroSet(EMPTY)
    roots = rational_roots(g)
    witness = {**fixed, v: roots[0]} if roots else None
    return ZeroSet(NONEMPTY, witness, ())


def _bivariate(polys, active, fixed) -> ZeroSet:
    u, w = active
    for elim, keep in ((u, w), (w, u)):
        res = []
        for f, g in combinations(polys, 2):
            if f.degree_in(elim) <= 0 and g.degree_in(elim) <= 0:
                continue
            r = resultant(f, g, elim)
            if r.is_constant() and r:
                return ZeroSet(EMPTY)
            res.append(r)
        nonzero = [r for r in res if r]
        if not nonzero:
            continue
        h = nonzero[0].with_vars(polys[0].vars)
        for r in nonzero[1:]:
            h = univariate_gcd(h, r.with_vars(polys[0].vars))
        if h.is_constant():
            return ZeroSet(EMPTY)
        for x in rational_roots(h):
            sub = _solve([p.subs({keep: x}) for p in polys], (elim,), {**fixed, keep: x}, ())
            if sub.nonempty:
                return sub
    if len(polys) == 2 and all(not r for r in _pair_resultants(polys, u)):
        # a shared non-constant factor: a whole curve of common zeros
        return ZeroSet(NONEMPTY, None, ())
    return ZeroSet(INCONCLUSIVE)


def _pair_resultants(polys, v):
    f, g = polys
    if f.degree_in(v) <= 0 and g.degree_in(v) <= 0:
        return [MPoly.const(f.vars, 1)]
    return [resultant(f, g, v)]
