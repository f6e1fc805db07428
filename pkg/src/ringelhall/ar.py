"""Auslander-Reiten combinatorics: tau, enumerations, partitions and words.

The translate is computed on dimension vectors through the Coxeter
transformation ``-E^{-1} E^T``; :func:`validate_ar_duality` checks the
convention against actual Hom and Ext dimensions.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cartan import QuiverError, weyl_word_ops


class ARError(RuntimeError):
    """An AR-theoretic consistency check failed (indicates a convention bug)."""


# --------------------------------------------------------------------------
# dimension-vector level
# --------------------------------------------------------------------------


def _frac_inverse(m):
    n = len(m)
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        s = a[c][c]
        a[c] = [x / s for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _to_int(frac_rows):
    out = np.zeros((len(frac_rows), len(frac_rows[0])), dtype=np.int64)
    for i, row in enumerate(frac_rows):
        for j, x in enumerate(row):
            if x.denominator != 1:
                raise ARError("non-integral Coxeter data")
            out[i, j] = int(x)
    return out


def _matmul_frac(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def coxeter_matrix(rd):
    """``-E^{-1} E^T``: maps dim M to dim tau M for non-projective M."""
    einv = _frac_inverse(rd.E)
    et = [[Fraction(int(x)) for x in row] for row in rd.E.T]
    prod = _matmul_frac(einv, et)
    return _to_int([[-x for x in row] for row in prod])


def coxeter_inverse(rd):
    return _to_int(_frac_inverse(coxeter_matrix(rd)))


def injective_dims(rd):
    """Dimension vectors of I_1..I_n (``f_i E^{-1} e_i``)."""
    einv = _frac_inverse(rd.E)
    return [tuple(int(rd.f[i] * einv[r][i]) for r in range(rd.n)) for i in range(rd.n)]


def projective_dims(rd):
    """Dimension vectors of P_1..P_n (``f_i E^{-T} e_i``)."""
    einv = _frac_inverse(rd.E)
    return [tuple(int(rd.f[i] * einv[i][r]) for r in range(rd.n)) for i in range(rd.n)]


def tau_dim(rd, beta, direction="fwd"):
    """tau (or tau^-1) on a positive root; ``None`` if projective (injective)."""
    phi = coxeter_matrix(rd) if direction == "fwd" else coxeter_inverse(rd)
    img = tuple(int(x) for x in phi @ np.array(beta, dtype=np.int64))
    return img if rd.is_positive_root(img) else None


def injective_slices(rd):
    """Slices ``I_k = [tau^{k-1} I_j for j = 1..n]`` (``None`` where zero)."""
    slices = []
    current = [tuple(x) for x in injective_dims(rd)]
    while any(x is not None for x in current):
        slices.append(current)
        current = [None if x is None else tau_dim(rd, x, "fwd") for x in current]
    return slices


def projective_slices(rd):
    """Slices ``P_k = [tau^{-(k-1)} P_j for j = 1..n]`` (``None`` where zero)."""
    slices = []
    current = [tuple(x) for x in projective_dims(rd)]
    while any(x is not None for x in current):
        slices.append(current)
        current = [None if x is None else tau_dim(rd, x, "inv") for x in current]
    return slices


def canonical_root_order(rd):
    """Roots in canonical order: tau^{t-1} I_n, ..., tau^{t-1} I_1, ..., I_n, ..., I_1."""
    order = []
    for sl in reversed(injective_slices(rd)):
        for x in reversed(sl):
            if x is not None:
                order.append(x)
    if sorted(order) != sorted(rd.positive_roots):
        raise ARError("injective tau-orbits do not cover the positive roots")
    return order


# --------------------------------------------------------------------------
# indecomposable level (positions in the canonical order of a RepCategory)
# --------------------------------------------------------------------------


def _position(cat, beta):
    if beta is None:
        return None
    return cat.root_order.index(tuple(beta))


def tau_translate(cat, idx, direction="fwd"):
    """tau (``"fwd"``) or tau^-1 (``"inv"``) of an indecomposable; ``None`` if zero."""
    if direction not in ("fwd", "inv"):
        raise ValueError("direction must be 'fwd' or 'inv'")
    validate_ar_duality(cat, strict=True)
    return _position(cat, tau_dim(cat.rd, cat.root_order[idx], direction))


def validate_ar_duality(cat, strict=False):
    """Check ext(X, Y) = hom(Y, tau X) for all non-projective X; return violations."""
    cached = getattr(cat, "_ar_violations", None)
    if cached is None:
        cached = []
        for x in range(cat.nu):
            tx = _position(cat, tau_dim(cat.rd, cat.root_order[x], "fwd"))
            if tx is None:
                # projectives have no self-extensions against anything
                for y in range(cat.nu):
                    if cat.ext_dim(cat.indecomposables[x], cat.indecomposables[y]):
                        cached.append({"X": x, "Y": y, "reason": "tau-projective X has Ext"})
                continue
            for y in range(cat.nu):
                ext = cat.ext_dim(cat.indecomposables[x], cat.indecomposables[y])
                hom = int(cat.hom_table[y, tx])
                if ext != hom:
                    cached.append({"X": x, "Y": y, "ext": ext, "hom": hom})
        cat._ar_violations = cached
    if strict and cached:
        raise ARError(f"AR duality fails for the chosen Coxeter convention: {cached[0]}")
    return cached


def theta_tau(cat, idx):
    """``(i, k)`` with the indecomposable isomorphic to tau^k I_i (i is 1-based)."""
    inj = [tuple(x) for x in injective_dims(cat.rd)]
    beta = cat.root_order[idx]
    steps = 0
    while beta not in inj:
        beta = tau_dim(cat.rd, beta, "inv")
        steps += 1
        if beta is None:  # pragma: no cover - finite type
            raise ARError("tau^-1 orbit left the positive roots before reaching an injective")
    return inj.index(beta) + 1, steps


def _ext(cat, x, y):
    return cat.ext_dim(cat.indecomposables[x], cat.indecomposables[y])


def enumeration_violations(cat, seq):
    """Pairs j < i with Hom(e(i), e(j)) != 0 or Ext(e(j), e(i)) != 0."""
    if sorted(seq) != list(range(cat.nu)):
        return [{"reason": "not a permutation of the indecomposables"}]
    bad = []
    for i in range(len(seq)):
        for j in range(i):
            if cat.hom_table[seq[i], seq[j]] or _ext(cat, seq[j], seq[i]):
                bad.append({"i": i + 1, "j": j + 1})
    return bad


def partition_violations(cat, parts):
    """Violations of Ext-vanishing inside parts and Hom/Ext-vanishing across them."""
    flat = [x for part in parts for x in part]
    if sorted(flat) != list(range(cat.nu)):
        return [{"reason": "parts do not partition the indecomposables"}]
    bad = []
    for k, part in enumerate(parts):
        for u in part:
            for v in part:
                if _ext(cat, u, v):
                    bad.append({"part": k + 1, "U": u, "V": v, "reason": "Ext within part"})
        for later in parts[k + 1 :]:
            for u in part:
                for v in later:
                    if cat.hom_table[v, u] or _ext(cat, u, v):
                        bad.append({"part": k + 1, "U": u, "V": v, "reason": "across parts"})
    return bad


def injective_enumeration(cat):
    """tau^{t-1} I_n, ..., I_1; by construction this is the canonical order."""
    return tuple(range(cat.nu))


def projective_partition(cat):
    """Parts P_k = {tau^{-(k-1)} P_j}, each listed by canonical position."""
    return [sorted(_position(cat, x) for x in sl if x is not None) for sl in projective_slices(cat.rd)]


def canonical_structures(cat):
    """Injective enumeration, projective partition and the word w0, with checks."""
    validate_ar_duality(cat, strict=True)
    inj = injective_enumeration(cat)
    proj = projective_partition(cat)
    inj_sizes = [sum(x is not None for x in sl) for sl in injective_slices(cat.rd)]
    proj_sizes = [len(part) for part in proj]
    if inj_sizes != proj_sizes:
        raise ARError(f"slice sizes differ: injective {inj_sizes}, projective {proj_sizes}")
    if enumeration_violations(cat, inj):
        raise ARError("injective enumeration violates the enumeration property")
    if partition_violations(cat, proj):
        raise ARError("projective slices do not form a directed partition")
    return {
        "inj_enumeration": inj,
        "proj_partition": proj,
        "w0": word_of_partition(cat, proj),
        "slice_sizes": inj_sizes,
    }


def enumeration_from_partition(cat, parts):
    """Concatenate parts, each ordered so no later member maps to an earlier one."""
    seq = []
    for part in parts:
        remaining = sorted(part)
        while remaining:
            pick = next(
                (x for x in remaining if all(cat.hom_table[y, x] == 0 for y in remaining if y != x)),
                None,
            )
            if pick is None:
                raise ARError(f"no Hom-directed order inside part {part}")
            seq.append(pick)
            remaining.remove(pick)
    return tuple(seq)


def part_dims(cat, part, mult=None):
    out = [0] * cat.rd.n
    for u in part:
        a = 1 if mult is None else mult[u]
        for v, d in enumerate(cat.root_order[u]):
            out[v] += a * d
    return out


def part_supports(cat, parts):
    return [[v + 1 for v, d in enumerate(part_dims(cat, part)) if d] for part in parts]


def word_of_partition(cat, parts):
    return tuple(v for sup in part_supports(cat, parts) for v in sup)


def word_from_enumeration(cat, seq):
    return tuple(theta_tau(cat, seq[len(seq) - 1 - k])[0] for k in range(len(seq)))


def generated_vector(cat, parts, mult):
    """Exponent vector along the partition word built from the parts of ``mult``."""
    out = []
    for part, sup in zip(parts, part_supports(cat, parts)):
        dims = part_dims(cat, part, mult)
        out.extend(dims[v - 1] for v in sup)
    return tuple(out)


def order_key(seq, mult):
    return tuple(mult[i] for i in seq)


def order_compare(seq, m, n):
    """-1, 0 or 1 as ``m`` is below, equal to or above ``n`` in the order of ``seq``."""
    a, b = order_key(seq, m), order_key(seq, n)
    return (a > b) - (a < b)


def simple_power(cat, vertex, a):
    """Class of S_vertex^a (vertex 1-based)."""
    mult = [0] * cat.nu
    if a:
        mult[cat.root_order.index(cat.rd.simple(vertex))] = a
    return tuple(mult)


def exact_set(cat, a, word):
    """Classes X of dimension sum a_k alpha_{i_k} with F^X_{S^{a_1}, ...} != 0."""
    if len(a) != len(word):
        raise ValueError("exponent vector and word differ in length")
    dims = [0] * cat.rd.n
    for ak, i in zip(a, word):
        dims[i - 1] += ak
    parts = [simple_power(cat, i, ak) for ak, i in zip(a, word)]
    return {x for x in cat.classes_of_dim(dims) if cat.hall_filtration_number(x, parts)}


def short_braid_move(rd, word, k):
    """Swap letters k, k+1 (1-based) of a word when they are orthogonal."""
    word = tuple(word)
    if not 1 <= k < len(word):
        raise ValueError(f"position {k} out of range 1..{len(word) - 1}")
    i, j = word[k - 1], word[k]
    val = int(rd.sym[i - 1, j - 1])
    if val != 0:
        raise QuiverError(f"letters {i} and {j} are not orthogonal (form value {val})")
    return word[: k - 1] + (j, i) + word[k + 1 :]


def word_report(rd, word):
    ops = weyl_word_ops(rd, word)
    return {"word": list(word), "length": len(word), "reduced": ops["reduced"], "longest": ops["longest"]}
