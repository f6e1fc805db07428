import pytest

from conftest import category
from ringelhall.ar import enumeration_violations, injective_enumeration, partition_violations
from ringelhall.suites import SUITES, dims_up_to, run_suite


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("name, q", [("a2", 2), ("a3", 2), ("b2", 3)])
def test_suite_clean_at_cap_3(suite, name, q):
    rep = run_suite(suite, category(name, q), q, 3)
    assert rep["suite"] == suite
    assert rep["violations"] == []
    assert rep["checked"] > 0


def test_cap_zero_checks_nothing():
    cat = category("a2", 2)
    for suite in ("bialgebra", "compositions", "triangular", "monomial", "characterization", "order"):
        assert run_suite(suite, cat, 2, 0)["checked"] == 0


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", category("a2", 2), 2, 1)


def test_dims_up_to():
    cat = category("a2", 2)
    assert dims_up_to(cat, 1) == [(0, 1), (1, 0)]
    assert len(dims_up_to(cat, 2)) == 5


def test_checks_catch_bad_orders():
    cat = category("a2", 2)
    assert enumeration_violations(cat, tuple(reversed(injective_enumeration(cat))))
    assert partition_violations(cat, [[2], [0, 1]])
    assert partition_violations(cat, [[0, 1, 2]])
