import pytest

from conftest import category
from ringelhall.ar import canonical_structures, projective_partition
from ringelhall.coeff import vpow
from ringelhall.freealg import WordElement, WordLengthError, serre_element, shuffle_product
from ringelhall.hall import HallElement, dual_mul, eval_dual
from ringelhall.maps import (
    MapContext,
    feigin_eval,
    map_int_w,
    map_omega,
    phi_compose_T_w,
    triangular_expand,
    verify_compositions,
)
from ringelhall.qpoly import QPolyElement

W = (1, 2, 1)


@pytest.fixture
def ctx(a2):
    return MapContext(a2, W, projective_partition(a2))


def delta(cat, name):
    return HallElement.basis(cat, cat.parse_class(name), dual=True)


def shuffle(cat, u, c=1):
    return WordElement.word(cat.rd, cat.q, tuple(u), c, kind="shuffle")


def poly(cat, exps, c=1, dual=False, word=W):
    return QPolyElement.monomial(cat.rd, cat.q, word, exps, c, dual)


def test_omega_examples(a2):
    vi = vpow(-1, 2)
    assert map_omega(a2, delta(a2, "P1")) == shuffle(a2, (1, 2), vi)
    assert map_omega(a2, delta(a2, "S1")) == shuffle(a2, (1,))
    assert map_omega(a2, delta(a2, "S1+S2")) == shuffle(a2, (1, 2), vi) + shuffle(a2, (2, 1))
    with pytest.raises(WordLengthError):
        map_omega(a2, delta(a2, "2P1"), cap=3)


def test_integral_examples(ctx, a2):
    vi = vpow(-1, 2)
    assert map_int_w(ctx, delta(a2, "P1")) == poly(a2, (1, 1, 0), vi)
    assert map_int_w(ctx, delta(a2, "S1+S2")) == poly(a2, (1, 1, 0), vi) + poly(a2, (0, 1, 1))
    assert map_int_w(ctx, HallElement.basis(a2, a2.zero_class, dual=True)) == poly(a2, (0, 0, 0))


def test_feigin_examples(ctx, a2):
    x1 = WordElement.word(a2.rd, 2, (1,))
    x2 = WordElement.word(a2.rd, 2, (2,))
    assert feigin_eval(ctx, x1) == poly(a2, (1, 0, 0)) + poly(a2, (0, 0, 1))
    assert feigin_eval(ctx, x2) == poly(a2, (0, 1, 0))
    assert feigin_eval(ctx, WordElement.one(a2.rd, 2)) == poly(a2, (0, 0, 0))
    assert not feigin_eval(ctx, serre_element(a2.rd, 2, 1, 2))


@pytest.mark.parametrize("name", ["a2", "a3", "b2"])
def test_feigin_matches_integral_on_generators(name):
    cat = category(name, 2)
    c = MapContext(cat, canonical_structures(cat)["w0"])
    for j in range(1, cat.rd.n + 1):
        gen = WordElement.word(cat.rd, 2, (j,))
        simple = HallElement.basis(cat, cat.parse_class(f"S{j}"), dual=True)
        assert feigin_eval(c, gen) == map_int_w(c, simple)


def test_phi_T_w_examples(ctx, a2):
    vi = vpow(-1, 2)
    img = phi_compose_T_w(ctx, poly(a2, (1, 1, 0), dual=True))
    p1, s12 = a2.parse_class("P1"), a2.parse_class("S1+S2")
    assert img == HallElement.basis(a2, p1, vi) + HallElement.basis(a2, s12, vi)
    assert phi_compose_T_w(ctx, poly(a2, (0, 0, 0), dual=True)) == HallElement.one(a2)
    assert phi_compose_T_w(ctx, poly(a2, (0, 1, 1), dual=True)) == HallElement.basis(a2, s12)
    a, h, terms = triangular_expand(ctx, p1)
    assert a == (1, 1, 0) and h == vi
    assert terms[0] == (p1, 1)


def test_compositions_small_caps(ctx):
    report = verify_compositions(ctx, 2)
    assert report["violations"] == [] and report["checked"] > 0
    empty = verify_compositions(ctx, 0)
    assert empty["violations"] == []


def test_adjointness_instance(ctx, a2):
    vi = vpow(-1, 2)
    d = delta(a2, "P1")
    assert map_int_w(ctx, d).coeff((1, 1, 0)) == vi
    assert eval_dual(d, phi_compose_T_w(ctx, poly(a2, (1, 1, 0), dual=True))) == vi


def test_omega_is_algebra_map(a2):
    names = ["S1", "S2", "P1"]
    for m in names:
        for n in names:
            lhs = map_omega(a2, dual_mul(delta(a2, m), delta(a2, n)))
            rhs = shuffle_product(map_omega(a2, delta(a2, m)), map_omega(a2, delta(a2, n)))
            assert lhs == rhs


def test_context_checks(a2):
    with pytest.raises(ValueError):
        MapContext(a2, (1, 3))
    with pytest.raises(ValueError):
        MapContext(a2, (2, 1, 2), projective_partition(a2))
