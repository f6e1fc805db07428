from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import category
from ringelhall.coeff import QScalar, vpow
from ringelhall.hall import (
    HallElement,
    HallTensor,
    counit,
    dual_mul,
    dualize,
    eval_dual,
    hall_comul,
    hall_pairing,
    tensor_of,
    tensor_pairing,
    undualize,
)


def basis(cat, name, coeff=1):
    return HallElement.basis(cat, cat.parse_class(name), coeff)


def test_mul_examples(a2):
    vi = vpow(-1, 2)
    assert basis(a2, "S1") * basis(a2, "S2") == basis(a2, "P1", vi) + basis(a2, "S1+S2", vi)
    assert basis(a2, "S2") * basis(a2, "S1") == basis(a2, "S1+S2")
    one = HallElement.one(a2)
    x = basis(a2, "P1") + basis(a2, "S1", 3)
    assert one * x == x and x * one == x
    assert (basis(a2, "S1") * basis(a2, "S2")).pretty() == "v^-1 [P1] + v^-1 [S1+S2]"


def test_comul_examples(a2):
    z, p1 = a2.zero_class, a2.parse_class("P1")
    s1, s2 = a2.parse_class("S1"), a2.parse_class("S2")
    expect = HallTensor(a2, {(p1, z): 1, (z, p1): 1, (s1, s2): vpow(-1, 2)})
    assert hall_comul(basis(a2, "P1")) == expect
    assert hall_comul(basis(a2, "S1")) == HallTensor(a2, {(s1, z): 1, (z, s1): 1})
    assert hall_comul(HallElement.one(a2)) == HallTensor(a2, {(z, z): 1})


def test_comul_p1_general_q(a2q3):
    z, p1 = a2q3.zero_class, a2q3.parse_class("P1")
    s1, s2 = a2q3.parse_class("S1"), a2q3.parse_class("S2")
    # v^-1 (q - 1) at q = 3
    expect = HallTensor(a2q3, {(p1, z): 1, (z, p1): 1, (s1, s2): vpow(-1, 3) * 2})
    assert hall_comul(basis(a2q3, "P1")) == expect


def test_pairing_examples(a2, a2q3):
    assert hall_pairing(basis(a2, "P1"), basis(a2, "P1")) == 1
    assert hall_pairing(basis(a2, "P1"), basis(a2, "S1+S2")) == 0
    assert hall_pairing(basis(a2q3, "S1"), basis(a2q3, "S1")) == QScalar(Fraction(1, 2), 0, 3)


def test_counit(a2):
    assert counit(HallElement.one(a2)) == 1
    assert counit(basis(a2, "P1")) == 0


def test_dualize_round_trip(a2q3):
    x = basis(a2q3, "2S1", 5) + basis(a2q3, "P1")
    y = dualize(x)
    assert undualize(y) == x
    assert eval_dual(y, basis(a2q3, "2S1")) == hall_pairing(x, basis(a2q3, "2S1"))


GENERATORS = ["S1", "S2", "P1"]
SETTINGS = [("a2", 2), ("a2", 3), ("a3", 2), ("a3", 3)]


@pytest.mark.parametrize("name, q", SETTINGS)
def test_green_on_generators(name, q):
    cat = category(name, q)
    gens = [basis(cat, g) for g in GENERATORS]
    for x in gens:
        for y in gens:
            assert hall_comul(x * y) == hall_comul(x) * hall_comul(y)


@pytest.mark.parametrize("name, q", SETTINGS)
def test_adjointness_on_generators(name, q):
    cat = category(name, q)
    for g in GENERATORS:
        for h in GENERATORS:
            x, y = basis(cat, g), basis(cat, h)
            dims = [a + b for a, b in zip(cat.class_dim(cat.parse_class(g)), cat.class_dim(cat.parse_class(h)))]
            for L in cat.classes_of_dim(dims):
                z = HallElement.basis(cat, L)
                assert tensor_pairing(tensor_of(x, y), hall_comul(z)) == hall_pairing(x * y, z)


def test_dual_product_is_transpose(a2):
    gens = [basis(a2, g) for g in GENERATORS]
    for x in gens:
        for y in gens:
            d = dual_mul(dualize(x), dualize(y))
            for L in (x * y).terms:
                z = HallElement.basis(a2, L)
                assert eval_dual(d, z) == tensor_pairing(tensor_of(x, y), hall_comul(z))


def classes_of(cat, total):
    return [m for m in cat.classes_up_to(total) if any(m)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("a2", 2), ("a3", 2), ("b2", 2), ("a2", 3)]), st.data())
def test_associativity_and_grading(nq, data):
    cat = category(*nq)
    pool = classes_of(cat, 2)
    m, n, k = (data.draw(st.sampled_from(pool)) for _ in range(3))
    x, y, z = (HallElement.basis(cat, c) for c in (m, n, k))
    assert (x * y) * z == x * (y * z)
    dims = tuple(a + b for a, b in zip(cat.class_dim(m), cat.class_dim(n)))
    assert all(cat.class_dim(L) == dims for L in (x * y).terms)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("a2", 2), ("a3", 2), ("b2", 2)]), st.data())
def test_green_random_pairs(nq, data):
    cat = category(*nq)
    pool = classes_of(cat, 2)
    x = HallElement.basis(cat, data.draw(st.sampled_from(pool)))
    y = HallElement.basis(cat, data.draw(st.sampled_from(pool)))
    assert hall_comul(x * y) == hall_comul(x) * hall_comul(y)
