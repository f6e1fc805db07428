"""Feigin-type maps between the Hall algebra, the shuffle algebra and P_w."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ar import enumeration_from_partition, generated_vector, order_compare, order_key, simple_power, word_of_partition
from .coeff import ContextError, QScalar, vpow
from .freealg import DEFAULT_CAP, WordElement, WordLengthError, phi_map
from .hall import HallElement, eval_dual
from .qpoly import QPolyElement, map_S_w, map_T_w


@dataclass
class MapContext:
    """Category, word w and optionally the directed partition w came from."""

    cat: object
    word: tuple
    parts: list = None
    cap: int = DEFAULT_CAP
    enumeration: tuple = field(default=None, init=False)

    def __post_init__(self):
        self.word = tuple(int(x) for x in self.word)
        for x in self.word:
            if not 1 <= x <= self.cat.rd.n:
                raise ValueError(f"letter {x} out of range 1..{self.cat.rd.n}")
        if self.parts is not None:
            if word_of_partition(self.cat, self.parts) != self.word:
                raise ValueError("word does not match the directed partition")
            self.enumeration = enumeration_from_partition(self.cat, self.parts)

    @property
    def rd(self):
        return self.cat.rd

    @property
    def q(self):
        return self.cat.q


def _euler_word_twist(rd, letters):
    """sum_{k<l} <alpha_jk, alpha_jl>."""
    return sum(
        int(rd.E[letters[k] - 1, letters[l] - 1]) for k in range(len(letters)) for l in range(k + 1, len(letters))
    )


def words_of_dim(dims):
    """All words whose letter counts equal ``dims``, lexicographically."""
    letters = [v + 1 for v, d in enumerate(dims) for _ in range(d)]
    return sorted(set(itertools.permutations(letters)))


def exponent_vectors(word, dims):
    """Exponent vectors a along ``word`` with sum a_k alpha_ik = dims."""
    slots = {}
    for k, i in enumerate(word):
        slots.setdefault(i, []).append(k)
    per_vertex = []
    for v, d in enumerate(dims):
        ks = slots.get(v + 1, [])
        if not ks:
            if d:
                return []
            continue
        per_vertex.append([(ks, c) for c in _compositions(d, len(ks))])
    out = []
    for combo in itertools.product(*per_vertex):
        a = [0] * len(word)
        for ks, c in combo:
            for k, x in zip(ks, c):
                a[k] = x
        out.append(tuple(a))
    return sorted(out)


def _compositions(total, parts):
    if parts == 1:
        return [(total,)]
    return [(x,) + rest for x in range(total + 1) for rest in _compositions(total - x, parts - 1)]


def _check_dual(cat, x):
    if not isinstance(x, HallElement) or not x.dual:
        raise ContextError("a dual Hall element is expected")
    if x.cat is not cat:
        raise ContextError("element from a different category")


def map_omega(cat, x, cap=DEFAULT_CAP):
    """delta_M -> sum_u v^{sum_{k<l} <alpha_jk, alpha_jl>} F^M_{S_j1, ..., S_jr} y_u."""
    _check_dual(cat, x)
    out = {}
    for m, c in x.terms.items():
        dims = cat.class_dim(m)
        if sum(dims) > cap:
            raise WordLengthError(f"class of total dimension {sum(dims)} exceeds the word-length cap {cap}")
        for u in words_of_dim(dims):
            f = cat.hall_filtration_number(m, [simple_power(cat, j, 1) for j in u])
            if f:
                val = c * vpow(_euler_word_twist(cat.rd, u), cat.q) * f
                out[u] = out[u] + val if u in out else val
    return WordElement(cat.rd, cat.q, out, "shuffle")


def int_coefficient(ctx, m, a):
    """Coefficient of t^a in the image of delta_M under the integral map."""
    cat, word = ctx.cat, ctx.word
    f = cat.hall_filtration_number(m, [simple_power(cat, i, ak) for i, ak in zip(word, a)])
    if not f:
        return QScalar.zero(cat.q)
    return vpow(_int_exponent(cat.rd, word, a), cat.q) * f


def _int_exponent(rd, word, a):
    m = len(word)
    exp = sum(a[k] * a[l] * int(rd.E[word[k] - 1, word[l] - 1]) for k in range(m) for l in range(k + 1, m))
    exp += sum(int(rd.f[i - 1]) * x * (x - 1) // 2 for i, x in zip(word, a))
    return exp


def map_int_w(ctx, x):
    """delta_M -> sum_a v^{...} F^M_{S_i1^a1, ...} t^a (primal P_w)."""
    _check_dual(ctx.cat, x)
    out = {}
    for m, c in x.terms.items():
        for a in exponent_vectors(ctx.word, ctx.cat.class_dim(m)):
            val = int_coefficient(ctx, m, a)
            if val:
                val = val * c
                out[a] = out[a] + val if a in out else val
    return QPolyElement(ctx.rd, ctx.q, ctx.word, out)


def feigin_eval(ctx, x):
    """Substitute x_j -> sum_{k: i_k = j} t_k and multiply in P_w."""
    if x.kind != "free":
        raise ContextError("feigin_eval expects a free element")
    gens = {}
    for j in range(1, ctx.rd.n + 1):
        g = QPolyElement(ctx.rd, ctx.q, ctx.word, {})
        for k, i in enumerate(ctx.word):
            if i == j:
                g = g + QPolyElement.variable(ctx.rd, ctx.q, ctx.word, k + 1)
        gens[j] = g
    total = QPolyElement(ctx.rd, ctx.q, ctx.word, {})
    for u, c in x.terms.items():
        term = QPolyElement.one(ctx.rd, ctx.q, ctx.word)
        for j in u:
            term = term * gens[j]
        total = total + term.scale(c)
    return total


def h_factor(ctx, a):
    """h_w(a) = prod v_ik^{a_k(a_k-1)/2} v^{sum_{k<l} a_k a_l <alpha_ik, alpha_il>}."""
    return vpow(_int_exponent(ctx.rd, ctx.word, a), ctx.q)


def phi_compose_T_w(ctx, x):
    """Phi o T_w on a dual element of P_w."""
    if not isinstance(x, QPolyElement) or not x.dual or x.word != ctx.word:
        raise ContextError("a dual element of P_w is expected")
    return phi_map(ctx.cat, map_T_w(x))


class TriangularityError(AssertionError):
    """The leading term of a triangular expansion is not the expected class."""


def triangular_expand(ctx, m):
    """Expand Phi o T_w(t_{v(M)}) for the partition in ``ctx``.

    Returns ``(a, h, terms)`` with ``terms`` the normalised coefficients
    ordered by the enumeration order; raises unless [M] leads with
    coefficient 1 and every other class lies strictly above M.
    """
    if ctx.parts is None:
        raise ValueError("triangular expansion needs a directed partition")
    m = tuple(m)
    a = generated_vector(ctx.cat, ctx.parts, m)
    h = h_factor(ctx, a)
    img = phi_compose_T_w(ctx, QPolyElement.monomial(ctx.rd, ctx.q, ctx.word, a, dual=True))
    hinv = h.inverse()
    terms = sorted(((L, c * hinv) for L, c in img.terms.items()), key=lambda t: order_key(ctx.enumeration, t[0]))
    if img.coeff(m) * hinv != 1:
        raise TriangularityError(f"coefficient of the leading class {m} is {img.coeff(m) * hinv}, not 1")
    for L, _ in terms:
        if L != m and order_compare(ctx.enumeration, m, L) >= 0:
            raise TriangularityError(f"class {L} is not above {m} in the enumeration order")
    return a, h, terms


def verify_compositions(ctx, cap):
    """Check the integral map against S_w o Omega and both adjointness identities."""
    cat = ctx.cat
    violations = []
    checked = 0
    for m in cat.classes_up_to(cap):
        if not any(m):
            continue
        dims = cat.class_dim(m)
        delta = HallElement.basis(cat, m, dual=True)
        omega = map_omega(cat, delta, cap=max(ctx.cap, sum(dims)))
        integral = map_int_w(ctx, delta)
        name = cat.class_name(m)
        checked += 1
        if integral != map_S_w(omega, ctx.word):
            violations.append({"class": name, "check": "integral = S_w o Omega"})
        for a in exponent_vectors(ctx.word, dims):
            checked += 1
            rhs = eval_dual(delta, phi_compose_T_w(ctx, QPolyElement.monomial(ctx.rd, ctx.q, ctx.word, a, dual=True)))
            if integral.coeff(a) != rhs:
                violations.append({"class": name, "check": "integral adjointness", "exponents": list(a)})
        for u in words_of_dim(dims):
            checked += 1
            rhs = eval_dual(delta, phi_map(cat, WordElement.word(cat.rd, cat.q, u)))
            if omega.coeff(u) != rhs:
                violations.append({"class": name, "check": "Omega adjointness", "word": list(u)})
    return {"suite": "compositions", "violations": violations, "checked": checked}
