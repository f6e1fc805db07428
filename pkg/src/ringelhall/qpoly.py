"""Quantum polynomial algebra P_w attached to a word, and its graded dual.

Elements are sparse maps ``exponent vector -> QScalar``.  ``dual=False``
means the monomial basis t^a, ``dual=True`` the dual basis t_a.
"""

from __future__ import annotations

import itertools

from .ar import short_braid_move
from .coeff import ContextError, QScalar, q_factorial, vpow
from .freealg import WordElement, monomial_word


class QPolyElement:
    __slots__ = ("rd", "q", "word", "terms", "dual")

    def __init__(self, rd, q, word, terms=None, dual=False):
        self.rd = rd
        self.q = q
        self.word = tuple(word)
        self.dual = dual
        m = len(self.word)
        clean = {}
        for k, v in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != m or any(x < 0 for x in k):
                raise ValueError(f"exponent vector {k} does not fit a word of length {m}")
            if v:
                clean[k] = v if isinstance(v, QScalar) else QScalar(v, 0, q)
        self.terms = clean

    @classmethod
    def monomial(cls, rd, q, word, exps, coeff=1, dual=False):
        c = coeff if isinstance(coeff, QScalar) else QScalar(coeff, 0, q)
        return cls(rd, q, word, {tuple(exps): c}, dual)

    @classmethod
    def variable(cls, rd, q, word, k):
        """t_k (1-based) in the primal algebra."""
        exps = [0] * len(word)
        exps[k - 1] = 1
        return cls.monomial(rd, q, word, exps)

    @classmethod
    def one(cls, rd, q, word, dual=False):
        return cls.monomial(rd, q, word, (0,) * len(word), 1, dual)

    def _check(self, other):
        if not isinstance(other, QPolyElement):
            raise TypeError("QPolyElement expected")
        if other.word != self.word or other.q != self.q or other.rd is not self.rd:
            raise ContextError("polynomials over different words or fields")
        if other.dual != self.dual:
            raise ContextError("cannot combine primal and dual elements")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return QPolyElement(self.rd, self.q, self.word, out, self.dual)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QPolyElement(self.rd, self.q, self.word, {k: v * c for k, v in self.terms.items()}, self.dual)

    def __mul__(self, other):
        if isinstance(other, QPolyElement):
            return qp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, QPolyElement):
            return NotImplemented
        return self.word == other.word and self.dual == other.dual and self.q == other.q and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), QScalar.zero(self.q))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def pretty(self):
        from .hall import render_sum

        tag = "t_" if self.dual else "t^"
        return render_sum([(v, f"{tag}[{','.join(map(str, k))}]") for k, v in self.sorted_terms()])

    def to_json(self):
        return {
            "word": list(self.word),
            "dual": self.dual,
            "terms": [{"exponents": list(k), "coeff": v.to_json()} for k, v in self.sorted_terms()],
        }

    def __repr__(self):
        return f"QPolyElement({self.pretty()})"


def _form(rd, i, j):
    return int(rd.sym[i - 1, j - 1])


def _pair_twist(rd, word, left, right):
    """sum_{k<l} left_k right_l (alpha_ik, alpha_il)."""
    m = len(word)
    return sum(
        left[k] * right[l] * _form(rd, word[k], word[l])
        for k in range(m)
        if left[k]
        for l in range(k + 1, m)
        if right[l]
    )


def qp_mul(x, y):
    """t^a t^b = v^{sum_{k<l} b_k a_l (alpha_ik, alpha_il)} t^{a+b}."""
    x._check(y)
    if x.dual:
        raise ContextError("qp_mul expects primal elements")
    out = {}
    for a, c1 in x.terms.items():
        for b, c2 in y.terms.items():
            key = tuple(s + t for s, t in zip(a, b))
            val = c1 * c2 * vpow(_pair_twist(x.rd, x.word, b, a), x.q)
            out[key] = out[key] + val if key in out else val
    return QPolyElement(x.rd, x.q, x.word, out)


def qp_dual_comul(x):
    """Delta(t_a) = sum_{b+c=a} v^{sum_{k<l} c_k b_l (alpha_ik, alpha_il)} t_b (x) t_c."""
    if not x.dual:
        raise ContextError("qp_dual_comul expects a dual element")
    out = {}
    for a, coeff in x.terms.items():
        for b in itertools.product(*[range(e + 1) for e in a]):
            c = tuple(e - s for e, s in zip(a, b))
            key = (tuple(b), c)
            val = coeff * vpow(_pair_twist(x.rd, x.word, c, b), x.q)
            out[key] = out[key] + val if key in out else val
    return {k: v for k, v in out.items() if v}


def z_factor(rd, q, word, exps):
    """z_w(a) = prod v_ik^{-a_k(a_k-1)/2} / prod [a_k]_ik!."""
    out = QScalar.one(q)
    for i, a in zip(word, exps):
        f = int(rd.f[i - 1])
        out = out * vpow(-f * a * (a - 1) // 2, q) / q_factorial(a, f, q)
    return out


def map_T_w(x):
    """t_a -> z_w(a) x_{i1}^{a1} ... x_{im}^{am}."""
    if not x.dual:
        raise ContextError("map_T_w expects a dual element")
    out = WordElement(x.rd, x.q, {}, "free")
    for a, c in x.terms.items():
        out = out + WordElement.word(x.rd, x.q, monomial_word(x.word, a), c * z_factor(x.rd, x.q, x.word, a))
    return out


def expansions(word, u):
    """Exponent vectors a with i_1^{a_1} ... i_m^{a_m} equal to the word u."""
    out = []
    m, n = len(word), len(u)

    def rec(k, pos, acc):
        if k == m:
            if pos == n:
                out.append(tuple(acc))
            return
        a = 0
        while True:
            acc.append(a)
            rec(k + 1, pos + a, acc)
            acc.pop()
            if pos + a < n and u[pos + a] == word[k]:
                a += 1
            else:
                break

    rec(0, 0, [])
    return out


def map_S_w(y, word):
    """y_u -> sum over expansions a of u along w of z_w(a) t^a."""
    if y.kind != "shuffle":
        raise ContextError("map_S_w expects a shuffle element")
    out = {}
    for u, c in y.terms.items():
        for a in expansions(word, u):
            val = c * z_factor(y.rd, y.q, word, a)
            out[a] = out[a] + val if a in out else val
    return QPolyElement(y.rd, y.q, word, out)


def braid_position(rd, w1, w2):
    """Position k with w2 = short_braid_move(w1, k); ``None`` when w1 == w2."""
    w1, w2 = tuple(w1), tuple(w2)
    if w1 == w2:
        return None
    for k in range(1, len(w1)):
        if w1[k - 1] != w1[k] and w2 == w1[: k - 1] + (w1[k], w1[k - 1]) + w1[k + 1 :]:
            short_braid_move(rd, w1, k)  # raises unless the letters are orthogonal
            return k
    raise ValueError(f"{w2} is not obtained from {w1} by one short braid move")


def braid_iso(w1, w2, x):
    """Isomorphism P_{w1} -> P_{w2} (or on duals) swapping slots k, k+1."""
    if tuple(x.word) != tuple(w1):
        raise ContextError("element does not live over the source word")
    k = braid_position(x.rd, w1, w2)
    if k is None:
        return QPolyElement(x.rd, x.q, w2, dict(x.terms), x.dual)
    out = {}
    for a, c in x.terms.items():
        b = list(a)
        b[k - 1], b[k] = b[k], b[k - 1]
        out[tuple(b)] = c
    return QPolyElement(x.rd, x.q, w2, out, x.dual)
