"""The twisted Ringel-Hall bialgebra of a RepCategory.

Elements are sparse maps from isoclass vectors to :class:`QScalar`.  A flag
marks elements written in the dual basis delta_[M]; the pairing
<delta_[M], [N]> is the Kronecker delta.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ContextError, QScalar, vpow


class HallElement:
    __slots__ = ("cat", "terms", "dual")

    def __init__(self, cat, terms=None, dual=False):
        self.cat = cat
        self.dual = dual
        self.terms = {tuple(k): _scalar(cat, v) for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, cat, mult, coeff=1, dual=False):
        return cls(cat, {tuple(mult): _scalar(cat, coeff)}, dual=dual)

    @classmethod
    def one(cls, cat):
        return cls.basis(cat, cat.zero_class)

    def _check(self, other):
        if not isinstance(other, HallElement):
            raise TypeError("HallElement expected")
        if other.cat is not self.cat:
            raise ContextError("Hall elements from different categories")
        if other.dual != self.dual:
            raise ContextError("cannot combine primal and dual Hall elements")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return HallElement(self.cat, out, self.dual)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _scalar(self.cat, c)
        return HallElement(self.cat, {k: v * c for k, v in self.terms.items()}, self.dual)

    def __mul__(self, other):
        if isinstance(other, HallElement):
            if self.dual:
                return dual_mul(self, other)
            return hall_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return self.cat is other.cat and self.dual == other.dual and self.terms == other.terms

    def __hash__(self):  # pragma: no cover - elements are not used as keys
        return hash(tuple(sorted(self.terms)))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, mult):
        return self.terms.get(tuple(mult), QScalar.zero(self.cat.q))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self):
        return {
            "terms": [{"class": list(k), "coeff": v.to_json()} for k, v in self.sorted_terms()],
        }

    def pretty(self):
        tag = "d" if self.dual else ""
        return render_sum([(v, f"{tag}[{self.cat.class_name(k)}]") for k, v in self.sorted_terms()])

    def __repr__(self):
        return f"HallElement({self.pretty()})"


class HallTensor:
    """Sparse element of H (x) H keyed by pairs of isoclasses."""

    __slots__ = ("cat", "terms")

    def __init__(self, cat, terms=None):
        self.cat = cat
        self.terms = {(tuple(a), tuple(b)): _scalar(cat, v) for (a, b), v in (terms or {}).items() if v}

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return HallTensor(self.cat, out)

    def __eq__(self, other):
        return isinstance(other, HallTensor) and self.cat is other.cat and self.terms == other.terms

    __hash__ = None

    def __mul__(self, other):
        return tensor_mul(self, other)

    def pretty(self):
        return render_sum(
            [(v, f"[{self.cat.class_name(a)}]⊗[{self.cat.class_name(b)}]") for (a, b), v in sorted(self.terms.items())]
        )

    def to_json(self):
        return {
            "terms": [
                {"left": list(a), "right": list(b), "coeff": v.to_json()} for (a, b), v in sorted(self.terms.items())
            ]
        }


def _scalar(cat, c):
    if isinstance(c, QScalar):
        if c.q != cat.q:
            raise ContextError("scalar lives over a different q")
        return c
    return QScalar(c, 0, cat.q)


def render_sum(pairs):
    """Render ``[(coeff, label), ...]`` as ``"v^-1 [P1] + [S1+S2]"``."""
    if not pairs:
        return "0"
    out = []
    for c, label in pairs:
        text = c.pretty()
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        body = label if text == "1" else f"{text} {label}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# --------------------------------------------------------------------------
# structure maps
# --------------------------------------------------------------------------


def _euler_classes(cat, m, n):
    return cat.rd.euler(cat.class_dim(m), cat.class_dim(n))


def _sym_classes(cat, m, n):
    return cat.rd.symform(cat.class_dim(m), cat.class_dim(n))


def _product_table(cat, m, n):
    """``{L: v^<M,N> F^L_{M,N}}`` for basis elements, cached on the category."""
    cache = cat.__dict__.setdefault("_hall_products", {})
    key = (m, n)
    if key not in cache:
        twist = vpow(_euler_classes(cat, m, n), cat.q)
        cache[key] = {L: twist * f for L, f in cat.hall_numbers(m, n).items() if f}
    return cache[key]


def hall_mul(x, y):
    """[M]*[N] = sum_L v^<M,N> F^L_{M,N} [L], extended bilinearly."""
    x._check(y)
    if x.dual:
        raise ContextError("hall_mul expects primal elements")
    out = {}
    for m, a in x.terms.items():
        for n, b in y.terms.items():
            ab = a * b
            for L, c in _product_table(x.cat, m, n).items():
                out[L] = out[L] + ab * c if L in out else ab * c
    return HallElement(x.cat, out)


def _comul_table(cat, L):
    cache = cat.__dict__.setdefault("_hall_coproducts", {})
    if L not in cache:
        out = {}
        aut_l = cat.aut_size(L)
        for (m, n), f in cat.census(L).items():
            c = Fraction(cat.aut_size(m) * cat.aut_size(n) * f, aut_l)
            out[(m, n)] = vpow(_euler_classes(cat, m, n), cat.q) * c
        cache[L] = out
    return cache[L]


def hall_comul(x):
    """Delta[L] = sum v^<M,N> |Aut M||Aut N|/|Aut L| F^L_{M,N} [M](x)[N]."""
    if x.dual:
        raise ContextError("hall_comul expects a primal element")
    out = {}
    for L, a in x.terms.items():
        for key, c in _comul_table(x.cat, L).items():
            out[key] = out[key] + a * c if key in out else a * c
    return HallTensor(x.cat, out)


def tensor_mul(s, t):
    """(U1(x)V1)*(U2(x)V2) = v^{(|V1|,|U2|)} U1*U2 (x) V1*V2."""
    cat = s.cat
    if t.cat is not cat:
        raise ContextError("tensors from different categories")
    out = {}
    for (u1, v1), a in s.terms.items():
        for (u2, v2), b in t.terms.items():
            c = a * b * vpow(_sym_classes(cat, v1, u2), cat.q)
            left = _product_table(cat, u1, u2)
            right = _product_table(cat, v1, v2)
            for l1, c1 in left.items():
                for l2, c2 in right.items():
                    k = (l1, l2)
                    val = c * c1 * c2
                    out[k] = out[k] + val if k in out else val
    return HallTensor(cat, out)


def tensor_of(x, y):
    """Elementary tensor x (x) y of two primal elements."""
    x._check(y)
    return HallTensor(x.cat, {(m, n): a * b for m, a in x.terms.items() for n, b in y.terms.items()})


def counit(x):
    """epsilon([M]) = 1 if M = 0, else 0."""
    return x.coeff(x.cat.zero_class)


def hall_pairing(x, y):
    """([M], [N]) = delta_{M,N} / |Aut M|."""
    x._check(y)
    if x.dual:
        raise ContextError("hall_pairing expects primal elements")
    total = QScalar.zero(x.cat.q)
    for m, a in x.terms.items():
        b = y.terms.get(m)
        if b is not None:
            total = total + a * b * Fraction(1, x.cat.aut_size(m))
    return total


def tensor_pairing(s, t):
    """Induced form on H (x) H: (a(x)b, c(x)d) = (a,c)(b,d)."""
    cat = s.cat
    total = QScalar.zero(cat.q)
    for (m, n), a in s.terms.items():
        b = t.terms.get((m, n))
        if b is not None:
            total = total + a * b * Fraction(1, cat.aut_size(m) * cat.aut_size(n))
    return total


def dualize(x):
    """Primal element a -> the functional (a, -) in delta coordinates."""
    if x.dual:
        raise ContextError("element is already dual")
    return HallElement(x.cat, {m: a * Fraction(1, x.cat.aut_size(m)) for m, a in x.terms.items()}, dual=True)


def undualize(y):
    if not y.dual:
        raise ContextError("element is not dual")
    return HallElement(y.cat, {m: a * y.cat.aut_size(m) for m, a in y.terms.items()})


def eval_dual(y, x):
    """<y, x> for dual ``y`` and primal ``x``."""
    if not y.dual or x.dual:
        raise ContextError("eval_dual expects (dual, primal)")
    if y.cat is not x.cat:
        raise ContextError("Hall elements from different categories")
    total = QScalar.zero(x.cat.q)
    for m, a in y.terms.items():
        b = x.terms.get(m)
        if b is not None:
            total = total + a * b
    return total


def dual_mul(x, y):
    """Product on the graded dual, transpose to the comultiplication."""
    x._check(y)
    if not x.dual:
        raise ContextError("dual_mul expects dual elements")
    cat = x.cat
    out = {}
    for m, a in x.terms.items():
        for n, b in y.terms.items():
            dims = tuple(s + t for s, t in zip(cat.class_dim(m), cat.class_dim(n)))
            for L in cat.classes_of_dim(dims):
                c = _comul_table(cat, L).get((m, n))
                if c:
                    val = a * b * c
                    out[L] = out[L] + val if L in out else val
    return HallElement(cat, out, dual=True)


def simple_element(cat, vertex, power=1):
    """[S_vertex^power] (vertex 1-based)."""
    mult = [0] * cat.nu
    if power:
        mult[cat.root_order.index(cat.rd.simple(vertex))] = power
    return HallElement.basis(cat, mult)
