"""Property checks shared by the property suite and the acceptance run.

Each function is a self-contained hypothesis test; calling it runs the search.
"""
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from radialfol.algebra import (
    MPoly,
    PolyMap,
    divide_by_var_power,
    generic_order,
    max_var_power,
    resultant,
    substitute,
)
from radialfol.blowup import DICNV, NDIC, chart_map, classify_monoidal, log_generic_order, transform_form
from radialfol.forms import OneForm, check_integrability, exterior_derivative, is_hyperplane_invariant, pullback
from radialfol.projective import S_VARS, bidegree

XYZ = ("x", "y", "z")
N = 500
SETTINGS = settings(max_examples=N, deadline=None, suppress_health_check=[HealthCheck.too_slow])

coeff = st.one_of(st.integers(-4, 4), st.fractions(-3, 3, max_denominator=4))
exps = st.tuples(*(st.integers(0, 3) for _ in XYZ))


def polys(max_terms=4, exponents=exps):
    return st.dictionaries(exponents, coeff, max_size=max_terms).map(lambda t: MPoly(XYZ, t))


# monomials that each involve y or z, so the z-axis... rather the x-axis y=z=0
# is invariant for df
center_exps = exps.filter(lambda e: e[1] + e[2] > 0)
center_polys = st.dictionaries(center_exps, st.integers(-3, 3).filter(bool), min_size=1, max_size=4).map(
    lambda t: MPoly(XYZ, t))

chart_choice = st.sampled_from([(("y", "z"), "y"), (("y", "z"), "z"), (("x", "y"), "x"),
                                (("x", "y", "z"), "x"), (("x", "y", "z"), "z")])


def _unit():
    return polys(2, st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))).map(
        lambda p: p + 1 - p.subs({"x": 0, "y": 0, "z": 0}))


@SETTINGS
@given(polys(), polys(), polys())
def ring_axioms(f, g, h):
    one = MPoly.const(XYZ, 1)
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * one == f and f + MPoly.zero(XYZ) == f
    assert (f - f).is_zero()


@SETTINGS
@given(polys(), polys(), chart_choice)
def substitution_is_a_homomorphism(f, g, choice):
    m = chart_map(XYZ, *choice)
    assert substitute(f * g, m) == substitute(f, m) * substitute(g, m)
    assert substitute(f + g, m) == substitute(f, m) + substitute(g, m)


@SETTINGS
@given(polys(), chart_choice)
def pullback_commutes_with_d(f, choice):
    m = chart_map(XYZ, *choice)
    assert pullback(OneForm.exact(f), m) == OneForm.exact(substitute(f, m))


@SETTINGS
@given(polys(3), _unit(), chart_choice)
def chart_maps_preserve_integrability(f, u, choice):
    w = OneForm.exact(f).scale(u)
    assert check_integrability(w)
    assert check_integrability(pullback(w, chart_map(XYZ, *choice)))


@SETTINGS
@given(polys(), polys())
def generic_order_is_additive(f, g):
    Y = ("y", "z")
    assert generic_order(f * g, Y) == generic_order(f, Y) + generic_order(g, Y)


@SETTINGS
@given(polys(), st.sampled_from(XYZ), st.integers(0, 4))
def divide_round_trip(f, v, k):
    vk = MPoly.var(XYZ, v) ** k
    assert divide_by_var_power(f * vk, v, k) == f


small = st.tuples(st.integers(0, 1), st.integers(0, 1), st.just(0))
nonzero_small = polys(2, small).filter(lambda p: not p.is_zero())


@SETTINGS
@given(nonzero_small, polys(2, small), nonzero_small, nonzero_small)
def resultant_vanishes_on_common_factor(lead, tail, f, g):
    h = lead * MPoly.var(XYZ, "y") + tail
    assume(h.degree_in("y") >= 1)
    assert resultant(f * h, g * h, "y").is_zero()


@SETTINGS
@given(center_polys, _unit(), st.sampled_from(["y", "z"]))
def classifier_matches_transform(f, u, e):
    """For u*df with y=z=0 invariant, the class predicts the transform."""
    w = OneForm.exact(f).scale(u)
    assume(not w.is_zero())
    w = w.reduce()
    Y = ("y", "z")
    c = classify_monoidal(w, Y)
    lo = log_generic_order(w, Y)
    out, k, _ = transform_form(w, Y, e)
    # the divided power is maximal
    assert max_var_power(out.coeffs, e) == 0
    dicritical = not is_hyperplane_invariant(out, e)
    assert dicritical == (c.kind != NDIC)
    assert k == lo.r - (0 if dicritical else 1)
    if c.kind == DICNV:
        # some center variable realizes the log order
        assert min(lo.weighted(Y).values()) == lo.r


def _bihomogeneous(delta):
    def build(args):
        a, b, picks = args
        terms = {}
        for j in range(b + 1):
            s = a + delta * (b - j)
            for i in range(s + 1):
                if (i * 7 + j) % 3 in picks:
                    terms[(i, s - i, j, b - j)] = Fraction(i + j + 1)
        return MPoly(S_VARS, terms)
    return st.tuples(st.integers(0, 3), st.integers(0, 2), st.sets(st.integers(0, 2), min_size=1)).map(build)


@SETTINGS
@given(st.integers(0, 3).flatmap(lambda d: st.tuples(st.just(d), _bihomogeneous(d), _bihomogeneous(d))))
def bidegree_is_additive(args):
    delta, f, g = args
    assume(not f.is_zero() and not g.is_zero())
    assert bidegree(f * g, delta) == bidegree(f, delta) + bidegree(g, delta)


ALL = [
    ring_axioms,
    substitution_is_a_homomorphism,
    pullback_commutes_with_d,
    chart_maps_preserve_integrability,
    generic_order_is_additive,
    divide_round_trip,
    resultant_vanishes_on_common_factor,
    classifier_matches_transform,
    bidegree_is_additive,
]
