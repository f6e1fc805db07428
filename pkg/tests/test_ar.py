import itertools

import pytest

from conftest import category
from ringelhall.ar import (
    canonical_structures,
    enumeration_from_partition,
    enumeration_violations,
    exact_set,
    generated_vector,
    injective_enumeration,
    order_compare,
    partition_violations,
    projective_partition,
    short_braid_move,
    tau_translate,
    theta_tau,
    validate_ar_duality,
    word_from_enumeration,
    word_of_partition,
)
from ringelhall.cartan import QuiverError, load_quiver, weyl_word_ops
from ringelhall.repfq import RepCategory

S2, P1, S1 = 0, 1, 2


def test_tau_a2(a2):
    assert tau_translate(a2, S1) == S2
    assert tau_translate(a2, P1) is None
    assert tau_translate(a2, P1, "inv") is None
    assert tau_translate(a2, S2, "inv") == S1


@pytest.mark.parametrize("name", ["a2", "a3", "b2", "g2", "d4"])
def test_tau_inverse_round_trip(name):
    cat = category(name, 2)
    for x in range(cat.nu):
        y = tau_translate(cat, x, "inv")
        if y is not None:
            assert tau_translate(cat, y) == x


def test_theta_a2(a2):
    assert theta_tau(a2, S2) == (1, 1)
    assert theta_tau(a2, P1) == (2, 0)
    assert theta_tau(a2, S1) == (1, 0)


def test_canonical_structures_a2(a2):
    cs = canonical_structures(a2)
    assert [a2.indecomposable_name(i) for i in cs["inj_enumeration"]] == ["S2", "P1", "S1"]
    assert cs["proj_partition"] == [[S2, P1], [S1]]
    assert cs["w0"] == (1, 2, 1)
    assert cs["slice_sizes"] == [2, 1]


def test_canonical_structures_a1():
    cat = RepCategory(load_quiver("a1"), 2)
    cs = canonical_structures(cat)
    assert cs["inj_enumeration"] == (0,) and cs["w0"] == (1,)
    assert word_of_partition(cat, [[0]]) == (1,)


@pytest.mark.parametrize("name, nu", [("a2", 3), ("a3", 6), ("b2", 4), ("g2", 6), ("d4", 12)])
def test_words_agree_and_are_longest(name, nu):
    cat = category(name, 2)
    assert validate_ar_duality(cat) == []
    cs = canonical_structures(cat)
    w = word_from_enumeration(cat, injective_enumeration(cat))
    assert w == cs["w0"]
    assert len(w) == nu
    assert weyl_word_ops(cat.rd, w)["longest"]
    assert not enumeration_violations(cat, injective_enumeration(cat))
    assert not partition_violations(cat, projective_partition(cat))


def test_enumeration_from_partition(a2, a3):
    assert enumeration_from_partition(a2, [[S2, P1], [S1]]) == (S2, P1, S1)
    assert enumeration_from_partition(a2, [[S2], [P1], [S1]]) == (S2, P1, S1)
    seq = enumeration_from_partition(a3, projective_partition(a3))
    assert enumeration_violations(a3, seq) == []


def test_generated_vectors(a2):
    parts = projective_partition(a2)
    assert generated_vector(a2, parts, a2.parse_class("P1")) == (1, 1, 0)
    assert generated_vector(a2, parts, a2.parse_class("S1+S2")) == (0, 1, 1)
    assert generated_vector(a2, parts, a2.zero_class) == (0, 0, 0)


def test_order_examples(a2):
    e = (S2, P1, S1)
    p1, s12 = a2.parse_class("P1"), a2.parse_class("S1+S2")
    assert order_compare(e, p1, s12) == -1
    assert order_compare(e, s12, s12) == 0
    assert order_compare(e, a2.zero_class, a2.parse_class("S1")) == -1


def test_exact_set_examples(a2):
    w = (1, 2, 1)
    assert exact_set(a2, (1, 1, 0), w) == {a2.parse_class("P1"), a2.parse_class("S1+S2")}
    assert exact_set(a2, (0, 1, 1), w) == {a2.parse_class("S1+S2")}
    assert exact_set(a2, (0, 0, 0), w) == {a2.zero_class}


@pytest.mark.parametrize("name, total", [("a2", 4), ("a3", 3), ("b2", 3)])
def test_generated_vector_is_least_in_exact_set(name, total):
    cat = category(name, 2)
    parts = projective_partition(cat)
    w = word_of_partition(cat, parts)
    seq = enumeration_from_partition(cat, parts)
    for m in cat.classes_up_to(total):
        found = exact_set(cat, generated_vector(cat, parts, m), w)
        assert m in found
        assert all(order_compare(seq, m, x) <= 0 for x in found)


def test_braid_moves():
    rd = load_quiver("a3")
    w0 = canonical_structures(category("a3", 2))["w0"]
    spots = [k for k in range(1, len(w0)) if rd.sym[w0[k - 1] - 1, w0[k] - 1] == 0]
    assert spots
    for k in spots:
        moved = short_braid_move(rd, w0, k)
        assert moved != w0 and weyl_word_ops(rd, moved)["longest"]
        assert short_braid_move(rd, moved, k) == w0
    with pytest.raises(QuiverError):
        short_braid_move(load_quiver("a2"), (1, 2, 1), 1)
    with pytest.raises(ValueError):
        short_braid_move(rd, w0, len(w0))


def test_ar_duality_all_pairs(b2):
    for x, y in itertools.product(range(b2.nu), repeat=2):
        tx = tau_translate(b2, x)
        ext = b2.ext_dim(b2.indecomposables[x], b2.indecomposables[y])
        assert ext == (0 if tx is None else int(b2.hom_table[y, tx]))
