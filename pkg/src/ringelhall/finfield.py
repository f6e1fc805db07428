"""Finite fields realised as matrix algebras over their prime field.

All subfields live inside one top field F_{p^n} generated by a primitive
element; the subfield of degree ``e`` is generated by the matching power of
it, so its companion matrices are mutually compatible.  A vector space of
dimension ``m`` over F_{p^e} is stored as F_p^{e*m} with the generator
acting blockwise by the companion matrix.
"""

from __future__ import annotations

import itertools
from functools import cache
from math import gcd

import numpy as np

from . import _kernels as K


def factor_prime_power(q):
    """Return ``(p, k)`` with ``q == p**k`` or raise ``ValueError``."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _matpow(a, e, p):
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        e >>= 1
    return out


def companion(minpoly, p):
    """Companion matrix of ``x^e + sum(minpoly[t] x^t)`` acting on columns."""
    e = len(minpoly)
    c = np.zeros((e, e), dtype=np.int64)
    for t in range(e - 1):
        c[t + 1, t] = 1
    c[:, e - 1] = [(-x) % p for x in minpoly]
    return c


@cache
def _primitive_companion(p, n):
    order = p**n - 1
    factors = _prime_factors(order)
    eye = np.eye(n, dtype=np.int64)
    for tail in itertools.product(range(p), repeat=n):
        if tail[0] == 0:
            continue
        c = companion(list(tail), p)
        if not np.array_equal(_matpow(c, order, p), eye):
            continue
        if all(not np.array_equal(_matpow(c, order // ell, p), eye) for ell in factors):
            return c
    raise RuntimeError(f"no primitive polynomial of degree {n} over F_{p}")  # pragma: no cover


def _minpoly_of(g, p):
    """Minimal polynomial (low coefficients, monic) of a field element matrix."""
    n = g.shape[0]
    vecs = [np.eye(n, dtype=np.int64)[:, 0]]
    while True:
        nxt = (g @ vecs[-1]) % p
        stack = np.column_stack(vecs + [nxt])
        if K.rank(stack, p) < len(vecs) + 1:
            ns = K.nullspace(stack, p)
            v = ns[:, 0]
            inv = pow(int(v[-1]), p - 2, p)
            v = (v * inv) % p
            return [int(x) for x in v[:-1]]
        vecs.append(nxt)


class FieldTower:
    """Subfields F_{p^e} (e | top_degree) with compatible generators."""

    def __init__(self, q, top_multiple=1):
        self.q = q
        self.p, self.k = factor_prime_power(q)
        self.top_degree = self.k * top_multiple
        self._top = _primitive_companion(self.p, self.top_degree)
        self._comp = {}
        self._mul_tables = {}

    def _check(self, e):
        if self.top_degree % e:
            raise ValueError(f"F_{self.p}^{e} is not a subfield of the tower (top degree {self.top_degree})")

    def companion(self, e):
        """Companion matrix of the chosen generator of F_{p^e}."""
        self._check(e)
        if e not in self._comp:
            n = self.top_degree
            g = _matpow(self._top, (self.p**n - 1) // (self.p**e - 1), self.p)
            self._comp[e] = companion(_minpoly_of(g, self.p), self.p)
        return self._comp[e]

    def generator_action(self, e_space, e_sub, m):
        """Action of the F_{p^e_sub} generator on an m-dim F_{p^e_space}-space."""
        self._check(e_space)
        if e_space % e_sub:
            raise ValueError(f"degree {e_sub} does not divide {e_space}")
        c = self.companion(e_space)
        r = (self.p**e_space - 1) // (self.p**e_sub - 1)
        blk = _matpow(c, r, self.p)
        return np.kron(np.eye(m, dtype=np.int64), blk)

    def structure(self, e, m):
        """Generator action defining the F_{p^e}-structure on F_p^{e*m}."""
        return self.generator_action(e, e, m)

    def mul_table(self, e):
        """``table[t, x]`` = coordinates of gamma^t * x for x in F_{p^e}.

        Elements are indexed by their base-p coordinate digits.
        """
        if e not in self._mul_tables:
            p = self.p
            c = self.companion(e)
            elems = np.array(list(itertools.product(range(p), repeat=e)), dtype=np.int64)[:, ::-1]
            table = np.zeros((e, p**e, e), dtype=np.int64)
            cur = elems.T.copy()
            for t in range(e):
                table[t] = cur.T
                cur = (c @ cur) % p
            self._mul_tables[e] = table
        return self._mul_tables[e]


class SubspaceTable:
    """All F_{p^e}-subspaces of F_{p^e}^m, grouped by F_{p^e}-dimension.

    ``T[r][s]`` is an invertible F_p matrix whose first ``e*r`` columns span
    subspace ``s`` and whose remaining columns span a standard complement;
    ``Tinv[r][s]`` is its inverse.  Both bases are adapted to the field
    structure, so restricted and induced maps keep the standard form.
    Levels are built on first access.
    """

    def __init__(self, tower, e, m):
        self.tower, self.p, self.e, self.m = tower, tower.p, e, m
        self._levels = {}
        self.T = _Levels(self, 0)
        self.Tinv = _Levels(self, 1)

    def level(self, r):
        if r not in self._levels:
            self._levels[r] = _build_level(self.tower, self.e, self.m, r)
        return self._levels[r]

    def count(self):
        return sum(len(t) for t in self.T)


class _Levels:
    def __init__(self, table, which):
        self._table, self._which = table, which

    def __len__(self):
        return self._table.m + 1

    def __getitem__(self, r):
        if not 0 <= r <= self._table.m:
            raise IndexError(r)
        return self._table.level(r)[self._which]

    def __iter__(self):
        return (self[r] for r in range(len(self)))


_SUBSPACE_CACHE = {}


def subspace_table(tower, e, m):
    key = (tower.q, tower.top_degree, e, m)
    if key not in _SUBSPACE_CACHE:
        _SUBSPACE_CACHE[key] = SubspaceTable(tower, e, m)
    return _SUBSPACE_CACHE[key]


def _build_level(tower, e, m, r):
    p = tower.p
    Q = p**e
    table = tower.mul_table(e)  # (e, Q, e)
    dim = e * m
    mats = []
    for pivots in itertools.combinations(range(m), r):
        pivset = set(pivots)
        free = [(s, c) for s, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivset]
        nonpiv = [c for c in range(m) if c not in pivset]
        assignments = np.array(list(itertools.product(range(Q), repeat=len(free))), dtype=np.int64)
        if assignments.size == 0:
            assignments = np.zeros((1, 0), dtype=np.int64)
        rows = np.zeros((len(assignments), r, m), dtype=np.int64)
        for s, pc in enumerate(pivots):
            rows[:, s, pc] = 1  # index 1 is the unit element
        for idx, (s, c) in enumerate(free):
            rows[:, s, c] = assignments[:, idx]
        T = np.zeros((len(assignments), dim, dim), dtype=np.int64)
        col = 0
        for s in range(r):
            for t in range(e):
                # coordinates of gamma^t * row_s, entry-blocks of size e
                T[:, :, col] = table[t][rows[:, s, :]].reshape(len(assignments), dim)
                col += 1
        for c in nonpiv:
            for t in range(e):
                T[:, c * e + t, col] = 1
                col += 1
        mats.append(T)
    T_all = np.concatenate(mats, axis=0) if mats else np.zeros((0, dim, dim), dtype=np.int64)
    Tinv_all = np.stack([K.inverse(t, p) for t in T_all]) if len(T_all) and dim else T_all.copy()
    return T_all, Tinv_all


def gaussian_binomial(m, r, Q):
    """Number of r-dimensional subspaces of F_Q^m (integer count)."""
    if r < 0 or r > m:
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= Q ** (m - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


def lcm_all(values):
    out = 1
    for v in values:
        out = out * int(v) // gcd(out, int(v))
    return out
