import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import category
from ringelhall.coeff import ContextError, q_factorial, vpow
from ringelhall.freealg import WordElement, free_comul, shuffle_product
from ringelhall.qpoly import QPolyElement, braid_iso, map_S_w, map_T_w, qp_dual_comul, qp_mul, z_factor

A2 = category("a2", 2).rd
A3 = category("a3", 2).rd
B2 = category("b2", 2).rd
W = (1, 2, 1)


def t(k, rd=A2, word=W, q=2):
    return QPolyElement.variable(rd, q, word, k)


def mono(exps, c=1, rd=A2, word=W, q=2, dual=False):
    return QPolyElement.monomial(rd, q, word, exps, c, dual)


def test_mul_examples():
    assert qp_mul(t(3), t(1)) == mono((1, 0, 1), vpow(2, 2))
    assert qp_mul(t(2), t(1)) == mono((1, 1, 0), vpow(-1, 2))
    one = QPolyElement.one(A2, 2, W)
    assert qp_mul(one, mono((2, 1, 0))) == mono((2, 1, 0))


def test_mul_rejects_other_word():
    with pytest.raises(ContextError):
        qp_mul(t(1), t(1, word=(2, 1, 2)))


def test_dual_comul_examples():
    single = qp_dual_comul(mono((1, 0, 0), dual=True))
    assert single == {((1, 0, 0), (0, 0, 0)): 1, ((0, 0, 0), (1, 0, 0)): 1}
    d = qp_dual_comul(mono((1, 1, 0), dual=True))
    assert d[((0, 1, 0), (1, 0, 0))] == vpow(-1, 2)
    assert qp_dual_comul(mono((0, 0, 0), dual=True)) == {((0, 0, 0), (0, 0, 0)): 1}
    with pytest.raises(ContextError):
        qp_dual_comul(mono((1, 0, 0)))


def test_T_w_examples():
    assert map_T_w(mono((1, 1, 0), dual=True)) == WordElement.word(A2, 2, (1, 2))
    z = vpow(-1, 2) / q_factorial(2, 1, 2)
    assert map_T_w(mono((2, 0, 0), dual=True)) == WordElement.word(A2, 2, (1, 1), z)
    assert map_T_w(mono((0, 0, 0), dual=True)) == WordElement.one(A2, 2)


def y(u, rd=A2):
    return WordElement.word(rd, 2, tuple(u), kind="shuffle")


def test_S_w_examples():
    assert map_S_w(y((1, 2)), W) == mono((1, 1, 0))
    assert map_S_w(y((2, 1)), W) == mono((0, 1, 1))
    # (2,2) expands along (1,2,1) as a = (0,2,0), so the image is z_w(a) t^a
    assert map_S_w(y((2, 2)), W) == mono((0, 2, 0), z_factor(A2, 2, W, (0, 2, 0)))
    assert not map_S_w(y((2, 1, 2)), W)


exps3 = st.lists(st.integers(0, 2), min_size=3, max_size=3).map(tuple)


@settings(max_examples=60)
@given(exps3, exps3, exps3, st.sampled_from([2, 3]))
def test_mul_associative_and_twist(a, b, c, q):
    x, y_, z = (mono(e, q=q) for e in (a, b, c))
    assert qp_mul(qp_mul(x, y_), z) == qp_mul(x, qp_mul(y_, z))
    ab, ba = qp_mul(x, y_), qp_mul(y_, x)
    s = sum(b[k] * a[l] * int(A2.sym[W[k] - 1, W[l] - 1]) for k in range(3) for l in range(k + 1, 3))
    s2 = sum(a[k] * b[l] * int(A2.sym[W[k] - 1, W[l] - 1]) for k in range(3) for l in range(k + 1, 3))
    assert ab == ba.scale(vpow(s - s2, q))


@pytest.mark.parametrize("rd, word", [(A2, W), (B2, (1, 2, 1, 2))], ids=["a2", "b2"])
def test_T_w_is_coalgebra_map(rd, word):
    for a in itertools.product(range(4), repeat=len(word)):
        if sum(a) > 3:
            continue
        lhs = free_comul(map_T_w(mono(a, rd=rd, word=word, dual=True)))
        rhs = {}
        for (b, c), coeff in qp_dual_comul(mono(a, rd=rd, word=word, dual=True)).items():
            left = map_T_w(mono(b, rd=rd, word=word, dual=True))
            right = map_T_w(mono(c, rd=rd, word=word, dual=True))
            for u, x in left.terms.items():
                for w, z in right.terms.items():
                    val = coeff * x * z
                    rhs[(u, w)] = rhs[(u, w)] + val if (u, w) in rhs else val
        assert lhs == {k: v for k, v in rhs.items() if v}


@pytest.mark.parametrize("rd, word", [(A2, W), (B2, (1, 2, 1, 2))], ids=["a2", "b2"])
def test_S_w_is_algebra_map(rd, word):
    words = [u for k in range(4) for u in itertools.product((1, 2), repeat=k)]
    for u1 in words:
        for u2 in words:
            if len(u1) + len(u2) > 3:
                continue
            lhs = map_S_w(shuffle_product(y(u1, rd), y(u2, rd)), word)
            assert lhs == qp_mul(map_S_w(y(u1, rd), word), map_S_w(y(u2, rd), word))


def test_braid_iso():
    w1 = (1, 3, 2)
    w2 = (3, 1, 2)
    x = QPolyElement.monomial(A3, 2, w1, (2, 0, 1), 5)
    moved = braid_iso(w1, w2, x)
    assert moved == QPolyElement.monomial(A3, 2, w2, (0, 2, 1), 5)
    assert braid_iso(w2, w1, moved) == x
    assert braid_iso(w1, w1, x) == x
    with pytest.raises(ValueError):
        braid_iso(w1, (2, 1, 3), x)


def test_braid_iso_is_algebra_map():
    w1, w2 = (1, 3, 2), (3, 1, 2)
    for a, b in itertools.product(itertools.product(range(2), repeat=3), repeat=2):
        x = QPolyElement.monomial(A3, 2, w1, a)
        z = QPolyElement.monomial(A3, 2, w1, b)
        assert braid_iso(w1, w2, qp_mul(x, z)) == qp_mul(braid_iso(w1, w2, x), braid_iso(w1, w2, z))
