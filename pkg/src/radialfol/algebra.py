"""Exact sparse multivariate polynomials and rational functions over Q.

Everything downstream (forms, charts, blow-ups) is built on :class:`MPoly`.
Coefficients are :class:`fractions.Fraction`; there is no floating point
anywhere in the package.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Exps = tuple[int, ...]


class AlgebraError(ValueError):
    pass


class VariableMismatch(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    def __init__(self, message: str, term: str | None = None):
        super().__init__(message)
        self.term = term


class ParseError(AlgebraError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(ParseError):
    pass


def _grlex_key(e: Exps) -> tuple[int, Exps]:
    return (sum(e), e)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MPoly:
    """Sparse polynomial over an ordered variable list.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    Fractions. Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exps, Scalar] | None = None):
        self.vars: tuple[str, ...] = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise VariableMismatch(f"duplicate variables in {self.vars}")
        clean: dict[Exps, Fraction] = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n or any(k < 0 for k in e):
                raise AlgebraError(f"bad exponent vector {e} for variables {self.vars}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms: dict[Exps, Fraction] = clean
        self._hash: int | None = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str]) -> MPoly:
        return cls(vars)

    @classmethod
    def const(cls, vars: Sequence[str], c: Scalar) -> MPoly:
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> MPoly:
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"{name!r} not in {vars}")
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Exps, c: Scalar = 1) -> MPoly:
        return cls(vars, {tuple(exps): c})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> list[MPoly]:
        return [cls.var(vars, v) for v in vars]

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, v: str) -> int:
        i = self.vars.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def support(self) -> set[str]:
        return {v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)}

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading(self) -> tuple[Exps, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # -- variable handling ------------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> MPoly:
        """Re-express over ``vars``; every variable actually used must be present."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = {v: i for i, v in enumerate(vars)}
        for v in self.support():
            if v not in idx:
                raise VariableMismatch(f"variable {v!r} used but absent from {vars}")
        pos = [(idx[v], i) for i, v in enumerate(self.vars) if v in idx]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for j, i in pos:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MPoly(vars, out)

    def _align(self, other: MPoly | Scalar) -> tuple[MPoly, MPoly]:
        if not isinstance(other, MPoly):
            return self, MPoly.const(self.vars, other)
        if other.vars == self.vars:
            return self, other
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(merged), other.with_vars(merged)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: MPoly | Scalar) -> MPoly:
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MPoly | Scalar) -> MPoly:
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other: Scalar) -> MPoly:
        return (-self) + other

    def __mul__(self, other: MPoly | Scalar) -> MPoly:
        if not isinstance(other, MPoly):
            c = Fraction(other)
            return MPoly(self.vars, {e: c * k for e, k in self.terms.items()})
        a, b = self._align(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise AlgebraError("negative power of a polynomial")
        result = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        try:
            a, b = self._align(other)
        except VariableMismatch:
            return False
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset((self._named(e), c) for e, c in self.terms.items()))
        return self._hash

    def _named(self, e: Exps) -> frozenset:
        return frozenset((v, k) for v, k in zip(self.vars, e) if k)

    # -- calculus / evaluation --------------------------------------------
    def diff(self, v: str) -> MPoly:
        i = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly(self.vars, out)

    def subs(self, values: Mapping[str, Scalar]) -> MPoly:
        """Partially evaluate at rational values; variable list is unchanged."""
        idx = [(self.vars.index(v), Fraction(x)) for v, x in values.items() if v in self.vars]
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, x in idx:
                c = c * x ** ne[i]
                ne[i] = 0
            if c:
                t = tuple(ne)
                out[t] = out.get(t, Fraction(0)) + c
        return MPoly(self.vars, out)

    def drop_vars(self, names: Iterable[str]) -> MPoly:
        """Remove variables that do not occur."""
        names = set(names)
        return self.with_vars([v for v in self.vars if v not in names])

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != len(self.vars):
            raise VariableMismatch(f"point of length {len(point)} for {len(self.vars)} variables")
        pt = [Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t *= x ** k
            total += t
        return total

    # -- content and exact division ---------------------------------------
    def monomial_content(self) -> Exps:
        """Largest monomial dividing every term (zero polynomial: all zeros)."""
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def div_monomial(self, exps: Exps) -> MPoly:
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, exps))
            if any(k < 0 for k in ne):
                raise NotDivisible(
                    f"{MPoly.monomial(self.vars, exps)} does not divide {self}",
                    term=str(MPoly(self.vars, {e: c})),
                )
            out[ne] = c
        return MPoly(self.vars, out)

    def divmod(self, g: MPoly) -> tuple[MPoly, MPoly]:
        """Division by a single polynomial in graded-lex order.

        The remainder is zero exactly when ``g`` divides ``self``.
        """
        f, g = self._align(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ge, gc = g.leading()
        q: dict[Exps, Fraction] = {}
        r: dict[Exps, Fraction] = {}
        p = f
        while p:
            pe, pc = p.leading()
            if all(a >= b for a, b in zip(pe, ge)):
                me = tuple(a - b for a, b in zip(pe, ge))
                mc = pc / gc
                q[me] = mc
                p = p - g * MPoly(f.vars, {me: mc})
            else:
                r[pe] = pc
                p = MPoly(f.vars, {e: c for e, c in p.terms.items() if e != pe})
        return MPoly(f.vars, q), MPoly(f.vars, r)

    def exact_div(self, g: MPoly) -> MPoly:
        q, r = self.divmod(g)
        if r:
            raise NotDivisible(f"{g} does not divide {self}", term=str(r))
        return q

    def coeffs_in(self, v: str) -> dict[int, MPoly]:
        """View as a polynomial in ``v``; coefficients keep the full variable list."""
        i = self.vars.index(v)
        out: dict[int, dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: MPoly(self.vars, t) for k, t in out.items()}

    # -- printing ---------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            parts.append((c < 0, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, vars={self.vars})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = vars

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, ch: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> MPoly:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return p

    def expr(self) -> MPoly:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                raise ParseError("implicit multiplication is not allowed", pos)
            else:
                return acc

    def factor(self) -> MPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            base = base ** int(val)
        return base

    def atom(self) -> MPoly:
        kind, val, pos = self.take()
        if kind == "num":
            num = Fraction(int(val))
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise ParseError("denominator must be an integer literal", p3)
                if int(v3) == 0:
                    raise ParseError("zero denominator", p3)
                num = num / int(v3)
            return MPoly.const(self.vars, num)
        if kind == "id":
            if val not in self.vars:
                raise UnknownVariable(f"unknown variable {val!r}", pos)
            return MPoly.var(self.vars, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text: str, vars: Sequence[str]) -> MPoly:
    """Parse ``text`` (``+ - * ^``, rational literals ``p/q``) over ``vars``."""
    return _Parser(text, tuple(vars)).parse()


# ---------------------------------------------------------------------------
# generic order along a coordinate subspace


def generic_order(f: MPoly, Y: Iterable[str]) -> float | int:
    """Minimal total degree in the ``Y`` variables over the terms of ``f``.

    Returns ``math.inf`` for the zero polynomial.
    """
    Y = set(Y)
    if not Y or not Y <= set(f.vars):
        raise VariableMismatch(f"center variables {sorted(Y)} not a nonempty subset of {f.vars}")
    if f.is_zero():
        return float("inf")
    idx = [i for i, v in enumerate(f.vars) if v in Y]
    return min(sum(e[i] for i in idx) for e in f.terms)


def divide_by_var_power(f: MPoly, v: str, k: int) -> MPoly:
    e = [0] * len(f.vars)
    e[f.vars.index(v)] = k
    return f.div_monomial(tuple(e))


def max_var_power(polys: Iterable[MPoly], v: str) -> int | None:
    """Largest k with v^k dividing every polynomial (None if all are zero)."""
    best = None
    for p in polys:
        if p.is_zero():
            continue
        i = p.vars.index(v)
        k = min(e[i] for e in p.terms)
        best = k if best is None else min(best, k)
    return best


def common_monomial_content(polys: Sequence[MPoly]) -> Exps:
    nz = [p for p in polys if p]
    if not nz:
        return (0,) * len(polys[0].vars) if polys else ()
    return tuple(min(col) for col in zip(*(p.monomial_content() for p in nz)))


# ---------------------------------------------------------------------------
# resultants


def bareiss_det(matrix: list[list[MPoly]], vars: Sequence[str]) -> MPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        return MPoly.const(vars, 1)
    m = [row[:] for row in matrix]
    sign = 1
    prev = MPoly.const(vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return MPoly.zero(vars)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(f: MPoly, g: MPoly, v: str) -> list[list[MPoly]]:
    f, g = f._align(g)
    m, n = f.degree_in(v), g.degree_in(v)
    fc, gc = f.coeffs_in(v), g.coeffs_in(v)
    zero = MPoly.zero(f.vars)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = gc.get(k, zero)
        rows.append(row)
    return rows


def resultant(f: MPoly, g: MPoly, v: str) -> MPoly:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``v``.

    Uses the standard layout (coefficients by descending degree, ``f`` rows
    first), so ``resultant(f, g) = lc(f)^deg(g) * prod g(roots of f)``. The
    result drops ``v`` from the variable list.
    """
    if f.is_zero() or g.is_zero():
        raise AlgebraError("resultant of a zero polynomial")
    f, g = f._align(g)
    if v not in f.vars:
        raise VariableMismatch(f"{v!r} not in {f.vars}")
    det = bareiss_det(sylvester_matrix(f, g, v), f.vars)
    return det.with_vars([w for w in f.vars if w != v])


# ---------------------------------------------------------------------------
# univariate helpers (used for root witnesses)


def _univ_var(f: MPoly) -> str | None:
    s = f.support()
    if len(s) > 1:
        raise VariableMismatch(f"{f} is not univariate")
    return next(iter(s)) if s else None


def univariate_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic gcd of two polynomials sharing a single variable."""
    f, g = f._align(g)
    while g:
        _, r = f.divmod(g)
        f, g = g, r
    if f.is_zero():
        return f
    _, c = f.leading()
    return f * (1 / c)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(f: MPoly) -> list[Fraction]:
    """Distinct rational roots of a univariate polynomial (rational root test)."""
    if f.is_zero():
        raise AlgebraError("zero polynomial has every root")
    v = _univ_var(f)
    if v is None:
        return []
    i = f.vars.index(v)
    coeffs: dict[int, Fraction] = {}
    for e, c in f.terms.items():
        coeffs[e[i]] = coeffs.get(e[i], Fraction(0)) + c
    low = min(coeffs)
    roots = [Fraction(0)] if low > 0 else []
    shifted = {k - low: c for k, c in coeffs.items()}
    lcm = 1
    for c in shifted.values():
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = {k: int(c * lcm) for k, c in shifted.items()}
    top = max(ints)
    if top == 0:
        return roots
    a0, an = ints[0], ints[top]
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and sum(c * cand ** k for k, c in ints.items()) == 0:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# rational functions and polynomial maps


@dataclass(frozen=True, eq=False)
class RatFunc:
    num: MPoly
    den: MPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        n, d = self.num._align(self.den)
        if n.is_zero():
            d = MPoly.const(n.vars, 1)
        else:
            common = tuple(min(a, b) for a, b in zip(n.monomial_content(), d.monomial_content()))
            if any(common):
                n, d = n.div_monomial(common), d.div_monomial(common)
            if d.is_constant():
                n, d = n * (1 / d.constant_value()), MPoly.const(n.vars, 1)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def of(cls, p: MPoly | RatFunc) -> RatFunc:
        if isinstance(p, RatFunc):
            return p
        return cls(p, MPoly.const(p.vars, 1))

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def __add__(self, other: RatFunc | MPoly | Scalar) -> RatFunc:
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other: RatFunc | MPoly | Scalar) -> RatFunc:
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc:
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> RatFunc:
        return self._coerce(other) / self

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc.of(other)
        return RatFunc.of(MPoly.const(self.vars, other))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RatFunc, MPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def diff(self, v: str) -> RatFunc:
        return RatFunc(self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den * self.den)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _subst_terms(f: MPoly, images: Sequence, one):
    """Evaluate f at ``images`` (MPoly or RatFunc), caching powers."""
    cache: dict[tuple[int, int], object] = {}
    total = one * 0
    for e, c in f.terms.items():
        t = one * c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                t = t * cache[key]
        total = total + t
    return total


@dataclass(frozen=True)
class PolyMap:
    """A map of charts: each source variable is sent to a polynomial (or
    rational function) in the target variables."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        if len(self.images) != len(self.source):
            raise VariableMismatch("one image per source variable is required")
        fixed = []
        for im in self.images:
            if isinstance(im, RatFunc):
                im = RatFunc(im.num.with_vars(self.target), im.den.with_vars(self.target))
            else:
                im = im.with_vars(self.target)
            fixed.append(im)
        object.__setattr__(self, "images", tuple(fixed))

    @classmethod
    def from_strings(cls, source: Sequence[str], target: Sequence[str], images: Mapping[str, str]) -> PolyMap:
        return cls(tuple(source), tuple(target),
                   tuple(parse_poly(images.get(v, v), target) for v in source))

    @classmethod
    def identity(cls, vars: Sequence[str]) -> PolyMap:
        return cls(tuple(vars), tuple(vars), tuple(MPoly.gens(vars)))

    def is_polynomial(self) -> bool:
        return all(isinstance(im, MPoly) for im in self.images)

    def image(self, v: str):
        return self.images[self.source.index(v)]

    def then(self, other: PolyMap) -> PolyMap:
        """Composite map: substitute ``other`` into this map's images.

        ``self`` sends source -> polys in ``self.target``; ``other`` sends
        ``self.target`` -> polys in ``other.target``.
        """
        if other.source != self.target:
            raise VariableMismatch(f"cannot compose: {self.target} vs {other.source}")
        return PolyMap(self.source, other.target, tuple(substitute(im, other) for im in self.images))


def substitute(f: MPoly | RatFunc, m: PolyMap):
    """Pull ``f`` back along ``m`` (replace each variable by its image)."""
    if isinstance(f, RatFunc):
        return RatFunc.of(substitute(f.num, m)) / RatFunc.of(substitute(f.den, m))
    if f.vars != m.source:
        try:
            f = f.with_vars(m.source)
        except VariableMismatch as exc:
            raise VariableMismatch(f"polynomial over {f.vars} vs map source {m.source}") from exc
    if m.is_polynomial():
        return _subst_terms(f, m.images, MPoly.const(m.target, 1))
    images = [RatFunc.of(im) for im in m.images]
    return _subst_terms(f, images, RatFunc.of(MPoly.const(m.target, 1)))
