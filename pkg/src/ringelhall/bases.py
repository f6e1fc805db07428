"""Monomial bases E^(M) and characterisation sets of modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ar import enumeration_from_partition, order_compare, order_key, part_dims, simple_power, word_of_partition
from .coeff import vpow
from .hall import HallElement
from .maps import exponent_vectors


class BasisError(AssertionError):
    """A basis identity failed (unitriangularity would be violated)."""


def _vertex_power(cat, a):
    """prod v_i^{a_i} as a power of v."""
    return int(sum(int(f) * x for f, x in zip(cat.rd.f, a)))


def divided_power_product(cat, a):
    """E_1^{[a_1]} * ... * E_n^{[a_n]} with E_i^{[r]} = v_i^{r^2 - r} [S_i^r]."""
    out = HallElement.one(cat)
    for v, r in enumerate(a):
        if r:
            f = int(cat.rd.f[v])
            out = out * HallElement.basis(cat, simple_power(cat, v + 1, r), vpow(f * (r * r - r), cat.q))
    return out


def divided_power_closed(cat, a):
    """prod v_i^{-a_i} sum_{dim M = a} v^{<a, a>} [M]."""
    c = vpow(cat.rd.euler(a, a) - _vertex_power(cat, a), cat.q)
    return HallElement(cat, {m: c for m in cat.classes_of_dim(a)})


def divided_power_monomial(cat, a):
    """E^{[a]}, computed as a product and checked against the closed form."""
    a = tuple(int(x) for x in a)
    prod = divided_power_product(cat, a)
    if prod != divided_power_closed(cat, a):
        raise BasisError(f"divided-power product and closed form differ for a = {a}")
    return prod


@dataclass
class MonomialDatum:
    mult: tuple
    parts: list
    part_dims: list
    prefactor_exp: int


def monomial_datum(cat, parts, mult):
    mult = tuple(mult)
    dims = [tuple(part_dims(cat, part, mult)) for part in parts]
    mvec = np.array(mult, dtype=np.int64)
    end_dim = int(mvec @ cat.hom_table @ mvec)
    exp = -end_dim + _vertex_power(cat, cat.class_dim(mult))
    return MonomialDatum(mult=mult, parts=parts, part_dims=dims, prefactor_exp=exp)


def monomial_for_module(cat, parts, mult):
    """E^(M) = v^{-dim End M} prod v_i^{m_i} E^{[dim M_(1)]} ... E^{[dim M_(s)]}.

    Also checks the filtration-count expansion and unitriangularity in the
    enumeration order of ``parts``; returns the Hall element.
    """
    datum = monomial_datum(cat, parts, mult)
    out = HallElement.one(cat)
    for d in datum.part_dims:
        if any(d):
            out = out * divided_power_monomial(cat, d)
    out = out.scale(vpow(datum.prefactor_exp, cat.q))
    if out != filtration_expansion(cat, datum):
        raise BasisError(f"monomial for {datum.mult} disagrees with its filtration expansion")
    seq = enumeration_from_partition(cat, parts)
    if out.coeff(datum.mult) != 1:
        raise BasisError(f"leading coefficient of E^({datum.mult}) is {out.coeff(datum.mult)}")
    for L in out.terms:
        if L != datum.mult and order_compare(seq, datum.mult, L) >= 0:
            raise BasisError(f"class {L} below {datum.mult} appears in E^({datum.mult})")
    return out


def filtration_expansion(cat, datum):
    """sum over N_i with dim N_i = dim M_(i) of F^L_{N_1, ..., N_s} [L]."""
    nonzero = [d for d in datum.part_dims if any(d)]
    choices = [cat.classes_of_dim(d) for d in nonzero]
    out = {}
    for L in cat.classes_of_dim(cat.class_dim(datum.mult)):
        total = 0
        for combo in itertools.product(*choices):
            total += cat.hall_filtration_number(L, combo)
        if total:
            out[L] = total
    return HallElement(cat, out)


def gamma_matrix(cat, parts, dims):
    """Rows E^(M) over the classes of ``dims``, both sorted by the enumeration order."""
    seq = enumeration_from_partition(cat, parts)
    classes = sorted(cat.classes_of_dim(dims), key=lambda m: order_key(seq, m))
    rows = [[monomial_for_module(cat, parts, m).coeff(L) for L in classes] for m in classes]
    return classes, rows


def is_lower_unitriangular(mat):
    """Unit diagonal and zeros above it."""
    n = len(mat)
    for i in range(n):
        if mat[i][i] != 1:
            return False
        for j in range(i + 1, n):
            if mat[i][j]:
                return False
    return True


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def characterization_set(cat, parts, mult):
    """S(M, D) = {a : F^M_{S_i1^a1, ...} != 0} along the partition word."""
    word = word_of_partition(cat, parts)
    mult = tuple(mult)
    out = set()
    for a in exponent_vectors(word, cat.class_dim(mult)):
        if cat.hall_filtration_number(mult, [simple_power(cat, i, x) for i, x in zip(word, a)]):
            out.add(a)
    return out


def hom_between_classes(cat, m, n):
    return int(np.array(m, dtype=np.int64) @ cat.hom_table @ np.array(n, dtype=np.int64))


def part_classes(cat, parts, mult):
    """M_(k) as classes: the summands of M lying in part k."""
    out = []
    for part in parts:
        c = [0] * cat.nu
        for u in part:
            c[u] = mult[u]
        out.append(tuple(c))
    return out


def hom_split_holds(cat, parts, mult):
    """dim End M = sum_i dim End M_(i) + sum_{i<j} dim Hom(M_(i), M_(j))."""
    pcs = part_classes(cat, parts, mult)
    rhs = sum(hom_between_classes(cat, x, x) for x in pcs)
    rhs += sum(hom_between_classes(cat, pcs[i], pcs[j]) for i in range(len(pcs)) for j in range(i + 1, len(pcs)))
    return hom_between_classes(cat, mult, mult) == rhs
