"""Exact scalars in Q(v) specialised at v**2 = q, and quantum integers.

A :class:`QScalar` is ``a + b*v`` with rational ``a`` and ``b``.  When ``q``
is a perfect square ``v`` is rational and ``b`` is folded into ``a``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import isqrt


class ContextError(ValueError):
    """Raised when scalars living over different ``q`` are combined."""


def _root(q):
    r = isqrt(q)
    return r if r * r == q else None


class QScalar:
    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q=2):
        if q < 2:
            raise ValueError(f"q must be a prime power >= 2, got {q}")
        a = Fraction(a)
        b = Fraction(b)
        r = _root(q)
        if r is not None:
            a += b * r
            b = Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("QScalar is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def one(cls, q):
        return cls(1, 0, q)

    @classmethod
    def zero(cls, q):
        return cls(0, 0, q)

    @classmethod
    def vpow(cls, n, q):
        """``v**n`` for any integer ``n``."""
        return _vpow(n, q)

    def _coerce(self, other):
        if isinstance(other, QScalar):
            if other.q != self.q:
                raise ContextError(f"mismatched q: {self.q} vs {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return QScalar(other, 0, self.q)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QScalar(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QScalar(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QScalar(
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.q
        if norm == 0:
            raise ZeroDivisionError("QScalar division by zero")
        return QScalar(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = QScalar.one(self.q)
        for _ in range(abs(n)):
            out = out * base
        return out

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.q == other.q and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.q**0.5

    # -- rendering ------------------------------------------------------------

    def __repr__(self):
        return f"QScalar({self.a}, {self.b}, q={self.q})"

    def __str__(self):
        return f"{self.a} + {self.b}*v"

    def to_json(self):
        return {"a": _frac_str(self.a), "b": _frac_str(self.b)}

    @classmethod
    def from_json(cls, data, q):
        return cls(Fraction(data["a"]), Fraction(data["b"]), q)

    def as_monomial(self, max_power=64):
        """Return ``(c, n)`` with ``self == c * v**n`` and ``c`` in ``{1, -1}``.

        Falls back to ``None`` when no such representation exists within
        ``|n| <= max_power``.
        """
        if not self:
            return None
        for n in range(0, max_power + 1):
            for m in (n, -n):
                vp = _vpow(m, self.q)
                if self == vp:
                    return 1, m
                if self == -vp:
                    return -1, m
        return None

    def pretty(self):
        """Human-oriented rendering; ``v^n`` forms where possible."""
        mono = self.as_monomial()
        if mono is not None:
            sign, n = mono
            body = "1" if n == 0 else ("v" if n == 1 else f"v^{n}")
            return body if sign > 0 else f"-{body}"
        if self.b == 0:
            return _frac_str(self.a)
        return f"({_frac_str(self.a)} + {_frac_str(self.b)}*v)"


def _frac_str(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@cache
def _vpow(n, q):
    half, odd = divmod(n, 2)
    r = _root(q)
    if r is not None:
        return QScalar(Fraction(r) ** n, 0, q)
    if n >= 0:
        return QScalar(0, q**half, q) if odd else QScalar(q**half, 0, q)
    # n = 2*half + odd with half < 0
    scale = Fraction(1, q ** (-half))
    return QScalar(0, scale, q) if odd else QScalar(scale, 0, q)


def vpow(n, q):
    return _vpow(n, q)


@cache
def q_int(n, weight, q):
    """Quantum integer ``[n]`` in the variable ``v**weight``."""
    if n < 0:
        raise ValueError("quantum integers are defined for n >= 0")
    total = QScalar.zero(q)
    for j in range(n):
        total = total + _vpow(weight * (-n + 1 + 2 * j), q)
    return total


@cache
def q_factorial(n, weight, q):
    out = QScalar.one(q)
    for m in range(1, n + 1):
        out = out * q_int(m, weight, q)
    return out


@cache
def q_binomial(n, k, weight, q):
    """Balanced quantum binomial ``[n choose k]`` evaluated at ``v**weight``."""
    if k < 0 or n < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if k > n:
        raise ValueError(f"binomial requires k <= n, got n={n}, k={k}")
    return q_factorial(n, weight, q) / (q_factorial(k, weight, q) * q_factorial(n - k, weight, q))


def pascal_holds(n, k, weight, q):
    """Check the two-term recursion for the binomial at one argument."""
    lhs = q_binomial(n, k, weight, q)
    rhs = _vpow((n - k) * weight, q) * q_binomial(n - 1, k - 1, weight, q)
    if k <= n - 1:
        rhs = rhs + _vpow(-k * weight, q) * q_binomial(n - 1, k, weight, q)
    return lhs == rhs
