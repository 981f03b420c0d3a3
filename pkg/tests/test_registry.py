import pytest

from radialfol import registry
from radialfol.algebra import substitute
from radialfol.charts import has_dicritical_corner
from radialfol.driver import YES, apply_script, reblowup_audit, verify_resolved
from radialfol.forms import check_integrability, closed_numerator, wedge

CERTIFIED = ["open_book", "open_book_bare", "open_book_shifted_divisor", "phi1", "phi2", "phi3",
             "cart_wheel"]
WITH_INTEGRAL = ["phi1", "phi2", "phi3"]


def _state(name):
    ex = registry.get(name)
    return apply_script(ex.root, ex.default_script)


@pytest.mark.parametrize("name", CERTIFIED)
def test_certified_scripts_use_only_dicritical_blowups(name):
    st = _state(name)
    assert verify_resolved(st).resolved == YES
    assert all(r.result.dicritical for r in st.blowup_records())


@pytest.mark.parametrize("name", CERTIFIED)
def test_no_chart_has_a_dicritical_corner(name):
    assert not any(has_dicritical_corner(c) for c in _state(name).all_charts())


@pytest.mark.parametrize("name", CERTIFIED)
def test_every_chart_stays_integrable(name):
    assert all(check_integrability(c.form) for c in _state(name).all_charts())


@pytest.mark.parametrize("name", WITH_INTEGRAL)
def test_first_integral_persists(name):
    ex = registry.get(name)
    for c in _state(name).all_charts():
        pulled = substitute(ex.first_integral, c.root_map)
        assert wedge(closed_numerator(pulled), c.form).is_zero(), c.id


@pytest.mark.parametrize("name", CERTIFIED)
def test_resolved_singularities_come_back(name):
    st = _state(name)
    records = [r for c in st.leaf_charts() for r in reblowup_audit(c)]
    if st.root.dim == 3:
        assert records
    assert all(r.singular_on_exceptional == YES for r in records)


def test_registry_lookup():
    assert registry.get("linear_lambda:5/2").name == "linear_lambda(5/2)"
    with pytest.raises(KeyError):
        registry.get("nope")
    with pytest.raises(KeyError):
        registry.get("phi1:3")
