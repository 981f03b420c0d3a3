"""The ten acceptance criteria, each checked exactly (no tolerances).

Every criterion prints one PASS/FAIL line; a summary is also printed at the
end of the pytest session. Run directly with ``python tests/test_acceptance.py``.
"""
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import props  # noqa: E402
from radialfol import registry  # noqa: E402
from radialfol.blowup import DICNV, DICV, CenterSpec, blowup, classify_monoidal  # noqa: E402
from radialfol.charts import FoliatedChart  # noqa: E402
from radialfol.driver import (  # noqa: E402
    ALMOST_RADIAL,
    NO,
    RADIAL,
    YES,
    apply_script,
    classify_foliated_germ,
    reblowup_audit,
    verify_chart,
    verify_resolved,
)
from radialfol.forms import OneForm  # noqa: E402
from radialfol.projective import (  # noqa: E402
    TubeSpec,
    brute_force_solutions,
    milnor_count,
    radial_equation,
    solve_radial_diophantine,
    tube_transition_audit,
)
from radialfol.surfaces import (  # noqa: E402
    baum_bott_index,
    blowup_index_audit,
    camacho_sad_index,
    linear_part,
    radial_p2_degrees,
)

RESULTS: dict[int, tuple[str, bool]] = {}


def _run(n: int, title: str, check) -> None:
    try:
        check()
    except BaseException:
        RESULTS[n] = (title, False)
        print(f"criterion {n:2d} FAIL  {title}")
        raise
    RESULTS[n] = (title, True)
    print(f"criterion {n:2d} PASS  {title}")


def _classify(name, script=None):
    ex = registry.get(name)
    return classify_foliated_germ(ex.root, script or ex.default_script)


# -- the criteria --------------------------------------------------------------

def open_book_resolution():
    root = registry.get("open_book_bare").root
    cls = classify_monoidal(root.form, ("y", "z"))
    assert (cls.kind, cls.r) == (DICNV, 2)
    res = blowup(root, CenterSpec.curve("yz"))
    assert res.monoidal_class.kind == DICNV
    assert [verify_chart(ch.chart).resolved for ch in res.children] == [YES, YES]
    assert _classify("open_book").kind == RADIAL


def sheared_open_book():
    g = _classify("open_book_shifted_divisor")
    assert g.kind == ALMOST_RADIAL
    assert (g.report.resolved, g.report.controlled) == (YES, NO)
    root = registry.get("open_book_shifted_divisor")
    st = apply_script(root.root, root.default_script)
    sheared = [c for c in st.all_charts() if c.id == "c0" and "w" in c.vars and c.divisor]
    assert sheared and sheared[-1].form == OneForm.parse(["y^2", "-w", "y"], ("x", "y", "w"))


def phi2_phi3_lengths():
    for name, steps, first in (("phi3", 1, DICNV), ("phi2", 2, DICV)):
        ex = registry.get(name)
        st = apply_script(ex.root, ex.default_script)
        recs = st.blowup_records()
        assert len(recs) == steps
        assert all(r.step.center.kind == "curve" for r in recs)
        assert recs[0].result.monoidal_class.kind == first
        g = classify_foliated_germ(ex.root, ex.default_script)
        assert g.kind == ALMOST_RADIAL and g.report.controlled == NO
    phi2 = registry.get("phi2").default_script
    assert phi2.steps[1].chart == "c0.z"
    # one step is not enough for phi2
    short = verify_resolved(apply_script(registry.get("phi2").root, phi2.steps[:1]))
    assert short.resolved == NO


def phi1_singular_locus():
    ex = registry.get("phi1")
    w = ex.root.form
    assert w == OneForm.parse(["y*z^3", "y^2*z - x*z^3", "x*y*z^2 - y^3"], ("x", "y", "z"))
    rng = random.Random(2024)

    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    on, off = [], []
    while len(on) < 10:
        t = q()
        on.append((Fraction(0), Fraction(0), t) if len(on) % 2 else (t, Fraction(0), Fraction(0)))
    while len(off) < 10:
        p = (q(), q(), q())
        if (p[0] == 0 and p[1] == 0) or (p[1] == 0 and p[2] == 0):
            continue
        off.append(p)
    assert all(w.evaluate(p) == (0, 0, 0) for p in on)
    assert all(any(w.evaluate(p)) for p in off)
    g = classify_foliated_germ(ex.root, ex.default_script)
    assert g.report.resolved == YES and len(ex.default_script.blowups) == 2


def camacho_sad():
    for lam in ("1", "2", "3", "5/2"):
        w = OneForm.parse([f"{lam}*y", "-x"], ("x", "y"))
        assert camacho_sad_index(w, "y") == Fraction(lam)
        assert blowup_index_audit(w, "y").strict_index == Fraction(lam) - 1
    for lam in ("3", "5/2"):
        a = blowup_index_audit(OneForm.parse([f"{lam}*y", "-x"], ("x", "y")))
        assert a.complete and a.index_sum == -1


def baum_bott():
    cw = registry.get("cart_wheel").root.form
    assert baum_bott_index(linear_part(cw)) == 4
    assert radial_p2_degrees(100) == [0]


def hirzebruch_diophantine():
    for delta in range(26):
        expected = {(delta, -2, 1), (-2, 0, 2), (-delta - 1, 2, 3)}
        if delta % 2 == 0:
            expected.add((delta // 2 + 2, -1, 4))
        sols = solve_radial_diophantine(delta)
        assert {(s.d1, s.d2, s.situation) for s in sols} == expected
        assert all(radial_equation(s.d1, s.d2, delta) == 0 for s in sols)
        assert brute_force_solutions(delta, 50) == {(s.d1, s.d2) for s in sols}
        counts = {s.situation: milnor_count(s.d1, s.d2, delta) for s in sols}
        assert counts == {k: v for k, v in {1: 0, 2: 0, 3: 2, 4: 2}.items() if k in counts}


def tube_audit():
    for alpha in range(7):
        for beta in range(1, 7):
            a = tube_transition_audit(TubeSpec(alpha, beta))
            assert a.surface_index == alpha + beta
            assert a.l0_order == (alpha, alpha + beta)
            assert a.generic_order == (alpha + beta, beta)


def property_suites():
    assert props.N >= 500
    for check in props.ALL:
        check()


def indestructibility():
    seen = 0
    for name in ("open_book", "open_book_bare", "open_book_shifted_divisor", "phi1", "phi2", "phi3"):
        ex = registry.get(name)
        st = apply_script(ex.root, ex.default_script)
        assert verify_resolved(st).resolved == YES
        for c in st.leaf_charts():
            for rec in reblowup_audit(c):
                seen += 1
                assert rec.singular_on_exceptional == YES, (name, rec)
    assert seen > 0


CRITERIA = [
    (1, "open book: DicNV r=2, resolved children, radial with divisor x", open_book_resolution),
    (2, "sheared open book: resolved, not controlled, almost radial", sheared_open_book),
    (3, "phi3 in one step, phi2 in two, DicNV/DicV first steps", phi2_phi3_lengths),
    (4, "phi1 singular locus and two-step resolution", phi1_singular_locus),
    (5, "Camacho-Sad indices and their drop under blow-up", camacho_sad),
    (6, "Baum-Bott cart-wheel index and radial degree sweep", baum_bott),
    (7, "Hirzebruch Diophantine solutions for delta <= 25", hirzebruch_diophantine),
    (8, "tube transitions for alpha <= 6, 1 <= beta <= 6", tube_audit),
    (9, "randomized property suites (>= 500 cases each)", property_suites),
    (10, "re-blow-ups of resolved charts recreate singularities", indestructibility),
]


@pytest.mark.parametrize("n, title, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, check):
    _run(n, title, check)


if __name__ == "__main__":
    failed = 0
    for n, title, check in CRITERIA:
        try:
            _run(n, title, check)
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)
