"""Root data of a finite-type valued quiver.

Vertices are 1-based in every external format (JSON, words, CLI) and
0-based inside arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np


class QuiverError(ValueError):
    """Invalid or unsupported quiver description."""


PRESETS = ("a1", "a2", "a3", "b2", "g2", "d4")


@dataclass(frozen=True, eq=False)
class RootDatum:
    n: int
    arrows: tuple  # 1-based (i, j) pairs with i < j
    d: np.ndarray
    f: np.ndarray
    C: np.ndarray
    E: np.ndarray
    positive_roots: tuple  # tuples of ints, breadth-first order
    name: str = ""
    _root_index: dict = field(default=None, repr=False)

    @property
    def nu(self):
        return len(self.positive_roots)

    @property
    def sym(self):
        return self.E + self.E.T

    def euler(self, alpha, beta):
        alpha, beta = _vec(self, alpha), _vec(self, beta)
        return int(alpha @ self.E @ beta)

    def symform(self, alpha, beta):
        alpha, beta = _vec(self, alpha), _vec(self, beta)
        return int(alpha @ self.sym @ beta)

    def simple(self, i):
        """Simple root alpha_i for a 1-based vertex ``i``."""
        e = [0] * self.n
        e[i - 1] = 1
        return tuple(e)

    def root_index(self, dimvec):
        return self._root_index.get(tuple(int(x) for x in dimvec))

    def is_positive_root(self, dimvec):
        return tuple(int(x) for x in dimvec) in self._root_index

    def reflect(self, i, beta):
        """Simple reflection r_i (1-based) applied to an integer vector."""
        beta = np.array(beta, dtype=np.int64)
        beta[i - 1] -= int(self.C[i - 1] @ beta)
        return beta

    def to_json(self):
        d = {}
        for i in range(self.n):
            for j in range(self.n):
                if self.d[i, j]:
                    d[f"{i + 1},{j + 1}"] = int(self.d[i, j])
        return {
            "n": self.n,
            "arrows": [list(a) for a in self.arrows],
            "d": d,
            "f": [int(x) for x in self.f],
        }


def _vec(rd, x):
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (rd.n,):
        raise ValueError(f"vector of length {rd.n} expected, got shape {x.shape}")
    return x


def _leading_minors_positive(m):
    """Exact positive-definiteness test via leading principal minors."""
    a = [[Fraction(int(x)) for x in row] for row in m]
    n = len(a)
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            return False
        for r in range(k + 1, n):
            factor = a[r][k] / piv
            for c in range(k, n):
                a[r][c] -= factor * a[k][c]
    return True


def build_root_datum(n, arrows, d, f, name=""):
    """Validate a valued quiver and compute its root data.

    ``arrows`` are 1-based pairs; ``d`` maps 1-based ``(i, j)`` pairs to
    valuations; missing pairs are 0.
    """
    if n < 1:
        raise QuiverError("a quiver needs at least one vertex")
    f = np.array(f, dtype=np.int64)
    if f.shape != (n,) or np.any(f < 1):
        raise QuiverError(f"f must be {n} positive integers")
    dm = np.zeros((n, n), dtype=np.int64)
    for (i, j), val in d.items():
        if not (1 <= i <= n and 1 <= j <= n):
            raise QuiverError(f"valuation index ({i},{j}) out of range")
        if val < 0:
            raise QuiverError(f"negative valuation at ({i},{j})")
        dm[i - 1, j - 1] = val
    arrows = tuple(sorted((int(i), int(j)) for i, j in arrows))
    if len(set(arrows)) != len(arrows):
        raise QuiverError("repeated arrow")
    for i, j in arrows:
        if not (1 <= i <= n and 1 <= j <= n):
            raise QuiverError(f"arrow ({i},{j}) out of range")
        if i >= j:
            raise QuiverError(f"arrow ({i},{j}) violates the vertex ordering i < j")
    if np.any(np.diag(dm)):
        raise QuiverError("d_ii must be 0")
    for i in range(n):
        for j in range(n):
            if f[i] * dm[i, j] != f[j] * dm[j, i]:
                raise QuiverError(f"not symmetrizable: f_{i + 1} d_{i + 1}{j + 1} != f_{j + 1} d_{j + 1}{i + 1}")
    arrow_pairs = {frozenset((i - 1, j - 1)) for i, j in arrows}
    edges = {frozenset((i, j)) for i in range(n) for j in range(n) if dm[i, j]}
    if arrow_pairs != edges:
        raise QuiverError("every edge (d_ij != 0) needs exactly one arrow and vice versa")
    C = 2 * np.eye(n, dtype=np.int64) - dm
    sym = f[:, None] * C
    if not _leading_minors_positive(sym):
        raise QuiverError("not of finite type: symmetrized Cartan form is not positive definite")
    E = np.diag(f).astype(np.int64)
    for i, j in arrows:
        E[i - 1, j - 1] = -f[i - 1] * dm[i - 1, j - 1]
    assert np.array_equal(E + E.T, sym)

    roots = _positive_roots(C, n)
    rd = RootDatum(
        n=n,
        arrows=arrows,
        d=dm,
        f=f,
        C=C,
        E=E,
        positive_roots=tuple(roots),
        name=name,
        _root_index={r: k for k, r in enumerate(roots)},
    )
    return rd


def _positive_roots(C, n):
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    order = list(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            b = np.array(beta, dtype=np.int64)
            for i in range(n):
                r = b.copy()
                r[i] -= int(C[i] @ b)
                t = tuple(int(x) for x in r)
                if all(x >= 0 for x in t) and any(t) and t not in seen:
                    seen.add(t)
                    order.append(t)
                    nxt.append(t)
        frontier = nxt
        if len(seen) > 10_000:  # pragma: no cover - guarded by finite-type check
            raise QuiverError("root closure does not terminate")
    return order


def parse_quiver_json(data, name=""):
    try:
        n = int(data["n"])
        arrows = [tuple(int(x) for x in a) for a in data.get("arrows", [])]
        d = {}
        for key, val in data.get("d", {}).items():
            i, j = (int(x) for x in key.split(","))
            d[(i, j)] = int(val)
        f = [int(x) for x in data.get("f", [1] * n)]
    except (KeyError, TypeError, ValueError) as exc:
        raise QuiverError(f"malformed quiver description: {exc}") from exc
    return build_root_datum(n, arrows, d, f, name=name)


def load_quiver(source):
    """Load a quiver from a preset name (``"a2"``) or a JSON file path."""
    if isinstance(source, str) and source.lower() in PRESETS:
        text = resources.files("ringelhall.presets").joinpath(f"{source.lower()}.json").read_text()
        name = source.upper()
    else:
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise QuiverError(f"cannot read quiver file {path}: {exc}") from exc
        name = path.stem
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_quiver_json(data, name=name)


def bilinear_forms(rd, alpha, beta):
    """Return ``(euler, sym)`` for two integer vectors."""
    return rd.euler(alpha, beta), rd.symform(alpha, beta)


def word_action(rd, word):
    """Matrix of r_{i1} o ... o r_{im} acting on column vectors."""
    m = np.eye(rd.n, dtype=np.int64)
    for i in reversed(word):
        if not 1 <= i <= rd.n:
            raise QuiverError(f"vertex {i} out of range 1..{rd.n}")
        r = np.eye(rd.n, dtype=np.int64)
        r[i - 1] -= rd.C[i - 1]
        m = r @ m
    return m


def weyl_word_ops(rd, word):
    """Action matrix plus reducedness and longest-element tests for a word."""
    word = tuple(int(i) for i in word)
    action = word_action(rd, word)
    inversions = 0
    for beta in rd.positive_roots:
        if np.all(action @ np.array(beta) <= 0):
            inversions += 1
    reduced = inversions == len(word)
    images = {tuple(int(x) for x in -(action[:, i])) for i in range(rd.n)}
    simples = {rd.simple(i + 1) for i in range(rd.n)}
    longest = reduced and images == simples and len(word) == rd.nu
    return {"action": action, "reduced": reduced, "longest": longest}
