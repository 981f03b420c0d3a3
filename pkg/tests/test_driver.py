import pytest

from radialfol import registry
from radialfol.blowup import DICNV, DICV, CenterSpec, blowup
from radialfol.charts import FoliatedChart, has_dicritical_corner
from radialfol.driver import (
    ALMOST_RADIAL,
    NO,
    RADIAL,
    UNRESOLVED,
    YES,
    ResolutionScript,
    ScriptError,
    apply_script,
    classify_foliated_germ,
    curve,
    detect_open_book,
    point,
    section_advisory,
    verify_resolved,
)
from radialfol.forms import OneForm

XYZ = ("x", "y", "z")


def test_open_book_axis_blowup():
    ex = registry.get("open_book")
    st = apply_script(ex.root, ex.default_script)
    forms = {c.id: c.form for c in st.leaf_charts()}
    assert forms == {"c0.y": OneForm.parse(["0", "0", "1"], XYZ),
                     "c0.z": OneForm.parse(["0", "-1", "0"], XYZ)}
    assert st.records[0].result.monoidal_class.kind == DICNV
    rep = verify_resolved(st)
    assert (rep.resolved, rep.controlled) == (YES, YES)


def test_quadratic_blowup_of_open_book_is_not_a_resolution():
    ex = registry.get("open_book_bare")
    rep = verify_resolved(apply_script(ex.root, [point()]))
    assert rep.resolved == NO
    witnesses = [w for leaf in rep.leaves for w in leaf.witnesses]
    assert any(w.startswith("regular") for w in witnesses)


def test_phi3_resolves_in_one_step():
    ex = registry.get("phi3")
    st = apply_script(ex.root, ex.default_script)
    assert len(ex.default_script) == 1
    forms = {c.id: c.form for c in st.leaf_charts()}
    assert forms["c0.y"] == OneForm.parse(["z^3", "0", "-2"], XYZ)
    assert forms["c0.z"] == OneForm.parse(["1", "2*y", "0"], XYZ)
    assert verify_resolved(st).resolved == YES


def test_phi2_two_steps():
    ex = registry.get("phi2")
    st = apply_script(ex.root, ex.default_script)
    kinds = [r.result.monoidal_class.kind for r in st.blowup_records()]
    assert kinds == [DICV, DICNV]
    assert ex.default_script.steps[1].chart == "c0.z"
    assert len(st.leaves) == 3
    assert verify_resolved(st).resolved == YES


@pytest.mark.parametrize("name, kind", [
    ("open_book", RADIAL),
    ("open_book_bare", RADIAL),
    ("open_book_shifted_divisor", ALMOST_RADIAL),
    ("phi1", ALMOST_RADIAL),
    ("phi2", ALMOST_RADIAL),
    ("phi3", ALMOST_RADIAL),
    ("cart_wheel", RADIAL),
    ("linear_lambda:2", UNRESOLVED),
    ("linear_lambda:1", RADIAL),
])
def test_registry_verdicts(name, kind):
    ex = registry.get(name)
    g = classify_foliated_germ(ex.root, ex.default_script)
    assert g.kind == kind == ex.expected
    assert "INCONCLUSIVE" not in str(g.report.to_json())


def test_bare_open_book_with_axis_only_is_almost_radial():
    ex = registry.get("open_book_bare")
    assert classify_foliated_germ(ex.root, ex.scripts["axis"]).kind == ALMOST_RADIAL


def test_shifted_divisor_controlledness_fails_at_first_step():
    ex = registry.get("open_book_shifted_divisor")
    rep = verify_resolved(apply_script(ex.root, ex.default_script))
    assert rep.resolved == YES and rep.controlled == NO
    assert not rep.steps[0].controlled


def test_scripts_must_step_leaves():
    ex = registry.get("phi2")
    with pytest.raises(ScriptError):
        apply_script(ex.root, [curve("yz"), curve("yz")])
    with pytest.raises(ScriptError):
        apply_script(ex.root, [curve("yz", "c9")])


def test_script_json_round_trip():
    s = registry.get("open_book_shifted_divisor").default_script
    assert ResolutionScript.from_json(s.to_json()) == s
    short = ResolutionScript.from_json('[{"center": {"kind": "curve", "vars": ["y", "z"]}}]')
    assert short == ResolutionScript((curve("yz"),))


def test_open_book_detection():
    hit = detect_open_book(OneForm.parse(["0", "-z", "y"], XYZ))
    assert hit.pair == ("y", "z") and hit.unit.constant_value() == 1
    scaled = OneForm.parse(["0", "-z - x*z", "y + x*y"], XYZ)
    hit = detect_open_book(scaled)
    assert str(hit.unit) in ("x + 1", "1 + x")
    assert detect_open_book(registry.get("phi2").root.form) is None


def test_section_advisories():
    phi2 = registry.get("phi2").root.form
    assert not section_advisory(phi2, "x").is_section
    book = section_advisory(OneForm.parse(["0", "-z", "y"], XYZ), "x")
    assert book.is_section and book.cart_wheel
