"""The free algebra on generators x_i and its graded dual, the shuffle algebra.

Both are sparse maps ``word -> QScalar``; ``kind`` is ``"free"`` (x_u
basis) or ``"shuffle"`` (dual y_u basis).  Tensors are maps on word pairs.
"""

from __future__ import annotations

import itertools

from .coeff import ContextError, QScalar, q_binomial, q_factorial, vpow

DEFAULT_CAP = 8


class WordLengthError(ValueError):
    """A shuffle computation would exceed the configured word-length cap."""


class WordElement:
    __slots__ = ("rd", "q", "terms", "kind")

    def __init__(self, rd, q, terms=None, kind="free"):
        if kind not in ("free", "shuffle"):
            raise ValueError("kind must be 'free' or 'shuffle'")
        self.rd = rd
        self.q = q
        self.kind = kind
        self.terms = {
            tuple(k): v if isinstance(v, QScalar) else QScalar(v, 0, q) for k, v in (terms or {}).items() if v
        }

    @classmethod
    def word(cls, rd, q, letters, coeff=1, kind="free"):
        letters = tuple(int(x) for x in letters)
        for x in letters:
            if not 1 <= x <= rd.n:
                raise ValueError(f"letter {x} out of range 1..{rd.n}")
        c = coeff if isinstance(coeff, QScalar) else QScalar(coeff, 0, q)
        return cls(rd, q, {letters: c}, kind)

    @classmethod
    def one(cls, rd, q, kind="free"):
        return cls.word(rd, q, (), 1, kind)

    def _check(self, other):
        if not isinstance(other, WordElement):
            raise TypeError("WordElement expected")
        if other.rd is not self.rd or other.q != self.q:
            raise ContextError("word elements from different contexts")
        if other.kind != self.kind:
            raise ContextError(f"cannot combine {self.kind} and {other.kind} elements")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return WordElement(self.rd, self.q, out, self.kind)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return WordElement(self.rd, self.q, {k: v * c for k, v in self.terms.items()}, self.kind)

    def __mul__(self, other):
        if isinstance(other, WordElement):
            return free_product(self, other) if self.kind == "free" else shuffle_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, WordElement):
            return NotImplemented
        return self.kind == other.kind and self.q == other.q and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, word):
        return self.terms.get(tuple(word), QScalar.zero(self.q))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def pretty(self):
        from .hall import render_sum

        sym = "x" if self.kind == "free" else "y"
        return render_sum([(v, f"{sym}({' '.join(map(str, k))})") for k, v in self.sorted_terms()])

    def to_json(self):
        return {"terms": [{"word": list(k), "coeff": v.to_json()} for k, v in self.sorted_terms()]}

    def __repr__(self):
        return f"WordElement({self.pretty()})"


def _form(rd, i, j):
    return int(rd.sym[i - 1, j - 1])


def _weight_form(rd, u, w):
    """(|u|, |w|) for two words."""
    return sum(_form(rd, a, b) for a in u for b in w)


def _acc(out, key, val):
    out[key] = out[key] + val if key in out else val


# --------------------------------------------------------------------------
# free algebra
# --------------------------------------------------------------------------


def free_product(x, y):
    """Concatenation product."""
    x._check(y)
    if x.kind != "free":
        raise ContextError("free_product expects free elements")
    out = {}
    for u, a in x.terms.items():
        for w, b in y.terms.items():
            _acc(out, u + w, a * b)
    return WordElement(x.rd, x.q, out, "free")


def free_comul(x):
    """Delta_F: generators primitive, extended to the twisted tensor square."""
    if x.kind != "free":
        raise ContextError("free_comul expects a free element")
    out = {}
    for u, a in x.terms.items():
        for key, c in _comul_word(x.rd, x.q, u).items():
            _acc(out, key, a * c)
    return {k: v for k, v in out.items() if v}


_COMUL_CACHE = {}


def _comul_word(rd, q, u):
    key = (id(rd), q, u)
    if key not in _COMUL_CACHE:
        cur = {((), ()): QScalar.one(q)}
        for j in u:
            nxt = {}
            for (left, right), c in cur.items():
                # (a (x) b)(x_j (x) 1) = v^{(|b|, alpha_j)} a x_j (x) b
                _acc(nxt, (left + (j,), right), c * vpow(_weight_form(rd, right, (j,)), q))
                _acc(nxt, (left, right + (j,)), c)
            cur = nxt
        _COMUL_CACHE[key] = {k: v for k, v in cur.items() if v}
    return _COMUL_CACHE[key]


def monomial_word(word, exps):
    return tuple(i for i, a in zip(word, exps) for _ in range(a))


def free_comul_closed(rd, q, word, exps):
    """Closed form of Delta(x_{i1}^{a1} ... x_{im}^{am}).

    Sum over b + c = a of prod v_{ik}^{b_k c_k} [a_k, b_k]_{ik}
    times v^{sum_{k<l} c_k b_l (alpha_ik, alpha_il)} x^b (x) x^c.
    """
    out = {}
    ranges = [range(a + 1) for a in exps]
    for b in itertools.product(*ranges):
        c = tuple(a - x for a, x in zip(exps, b))
        coeff = QScalar.one(q)
        for k, i in enumerate(word):
            f = int(rd.f[i - 1])
            coeff = coeff * vpow(f * b[k] * c[k], q) * q_binomial(exps[k], b[k], f, q)
        twist = sum(
            c[k] * b[l] * _form(rd, word[k], word[l]) for k in range(len(word)) for l in range(k + 1, len(word))
        )
        coeff = coeff * vpow(twist, q)
        _acc(out, (monomial_word(word, b), monomial_word(word, c)), coeff)
    return {k: v for k, v in out.items() if v}


def divided_power(rd, q, i, r):
    """x_i^{[r]} = x_i^r / [r]_i!."""
    f = int(rd.f[i - 1])
    return WordElement.word(rd, q, (i,) * r, q_factorial(r, f, q).inverse())


def serre_element(rd, q, i, j):
    """sum_r (-1)^r x_i^{[r]} x_j x_i^{[1 - c_ij - r]}."""
    if i == j:
        raise ValueError("Serre elements need two distinct vertices")
    c = int(rd.C[i - 1, j - 1])
    top = 1 - c
    xj = WordElement.word(rd, q, (j,))
    total = WordElement(rd, q, {}, "free")
    for r in range(top + 1):
        term = divided_power(rd, q, i, r) * xj * divided_power(rd, q, i, top - r)
        total = total + term.scale((-1) ** r)
    return total


# --------------------------------------------------------------------------
# shuffle algebra
# --------------------------------------------------------------------------


def shuffle_product(x, y, cap=DEFAULT_CAP):
    """y_{u1} y_{u2} = sum over shuffles v^{s} y_{sigma(u1,u2)}.

    ``s`` sums (alpha_a, alpha_b) over letters a of u1 placed after
    letters b of u2.
    """
    x._check(y)
    if x.kind != "shuffle":
        raise ContextError("shuffle_product expects shuffle elements")
    out = {}
    for u1, a in x.terms.items():
        for u2, b in y.terms.items():
            for w, c in _shuffle_words(x.rd, x.q, u1, u2, cap).items():
                _acc(out, w, a * b * c)
    return WordElement(x.rd, x.q, out, "shuffle")


def _shuffle_words(rd, q, u1, u2, cap):
    r, s = len(u1), len(u2)
    if r + s > cap:
        raise WordLengthError(f"shuffle of length {r + s} exceeds the word-length cap {cap}")
    out = {}
    for pos in itertools.combinations(range(r + s), r):
        pset = set(pos)
        word = []
        it1, it2 = iter(u1), iter(u2)
        exp = 0
        placed2 = []
        for t in range(r + s):
            if t in pset:
                a = next(it1)
                exp += sum(_form(rd, a, b) for b in placed2)
                word.append(a)
            else:
                b = next(it2)
                placed2.append(b)
                word.append(b)
        _acc(out, tuple(word), vpow(exp, q))
    return out


def deconcatenation(y):
    """mu*(y_u) = sum over splittings u = u1 u2 of y_{u1} (x) y_{u2}."""
    if y.kind != "shuffle":
        raise ContextError("deconcatenation expects a shuffle element")
    out = {}
    for u, a in y.terms.items():
        for k in range(len(u) + 1):
            _acc(out, (u[:k], u[k:]), a)
    return {k: v for k, v in out.items() if v}


def eval_pairing(y, x):
    """<y, x> with y_u and x_u dual bases."""
    if y.kind != "shuffle" or x.kind != "free":
        raise ContextError("eval_pairing expects (shuffle, free)")
    total = QScalar.zero(x.q)
    for u, a in y.terms.items():
        b = x.terms.get(u)
        if b is not None:
            total = total + a * b
    return total


def eval_tensor_pairing(left, right, tensor, q):
    """<y1 (x) y2, T> for a tensor given as a dict on word pairs."""
    total = QScalar.zero(q)
    for (u1, u2), c in tensor.items():
        a = left.terms.get(u1)
        b = right.terms.get(u2)
        if a is not None and b is not None:
            total = total + a * b * c
    return total


# --------------------------------------------------------------------------
# evaluation in the Hall algebra
# --------------------------------------------------------------------------


def phi_map(cat, x):
    """x_i -> [S_i], extended multiplicatively."""
    from .hall import HallElement, simple_element

    if x.kind != "free":
        raise ContextError("phi_map expects a free element")
    if x.q != cat.q or x.rd is not cat.rd:
        raise ContextError("free element and category disagree")
    cache = cat.__dict__.setdefault("_phi_words", {(): HallElement.one(cat)})
    total = HallElement(cat, {})
    for u, a in x.terms.items():
        if u not in cache:
            for k in range(1, len(u) + 1):
                if u[:k] not in cache:
                    cache[u[:k]] = cache[u[: k - 1]] * simple_element(cat, u[k - 1])
        total = total + cache[u].scale(a)
    return total
