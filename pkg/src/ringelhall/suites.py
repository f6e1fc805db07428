"""Named verification batteries.

Each suite returns ``{"suite": name, "violations": [...], "checked": n}``.
``cap`` bounds the total dimension (sum of the dimension vector) of the
classes involved unless a suite says otherwise.
"""

from __future__ import annotations

import itertools

from . import ar
from .bases import (
    BasisError,
    characterization_set,
    divided_power_closed,
    divided_power_product,
    gamma_matrix,
    hom_split_holds,
    is_lower_unitriangular,
    transpose,
)
from .coeff import pascal_holds
from .freealg import WordElement, phi_map, serre_element
from .hall import (
    HallElement,
    counit,
    dual_mul,
    hall_comul,
    hall_pairing,
    tensor_of,
    tensor_pairing,
)
from .maps import MapContext, TriangularityError, feigin_eval, map_int_w, triangular_expand, verify_compositions

SUITES = (
    "pascal",
    "bialgebra",
    "compositions",
    "serre",
    "triangular",
    "monomial",
    "characterization",
    "order",
    "arduality",
)


def _report(name, violations, checked):
    return {"suite": name, "violations": violations, "checked": checked}


def canonical_context(cat):
    cs = ar.canonical_structures(cat)
    return MapContext(cat, cs["w0"], cs["proj_partition"])


def dims_up_to(cat, cap):
    """Nonzero dimension vectors of total at most ``cap`` that carry a class."""
    out = []
    for t in range(1, cap + 1):
        for dv in itertools.product(range(t + 1), repeat=cat.rd.n):
            if sum(dv) == t and cat.classes_of_dim(dv):
                out.append(dv)
    return out


# --------------------------------------------------------------------------


def suite_pascal(q, n_max=8, weights=(1, 2, 3)):
    bad, checked = [], 0
    for w in weights:
        for n in range(1, n_max + 1):
            for k in range(1, n + 1):
                checked += 1
                if not pascal_holds(n, k, w, q):
                    bad.append({"n": n, "k": k, "weight": w})
    return _report("pascal", bad, checked)


def _indec(cat, i):
    return HallElement.basis(cat, tuple(int(i == j) for j in range(cat.nu)))


def _green_generators(cat):
    """Simples and projectives."""
    proj = {tuple(x) for x in ar.projective_dims(cat.rd)}
    idx = [i for i, beta in enumerate(cat.root_order) if sum(beta) == 1 or beta in proj]
    return [_indec(cat, i) for i in idx]


def suite_bialgebra(cat, cap):
    """Associativity, Green's compatibility, adjointness, unit and counit."""
    bad, checked = [], 0
    one = HallElement.one(cat)
    tot = [sum(beta) for beta in cat.root_order]
    for a, b, c in itertools.product(range(cat.nu), repeat=3):
        if tot[a] + tot[b] + tot[c] > cap:
            continue
        x, y, z = _indec(cat, a), _indec(cat, b), _indec(cat, c)
        checked += 1
        if (x * y) * z != x * (y * z):
            bad.append({"check": "associativity", "classes": [a, b, c]})
    for i in range(cat.nu):
        if tot[i] > cap:
            continue
        x = _indec(cat, i)
        checked += 3
        if one * x != x or x * one != x:
            bad.append({"check": "unit", "class": i})
        if counit(x) != 0:
            bad.append({"check": "counit", "class": i})
        # (epsilon (x) id) Delta = id
        left = {}
        for (m, n), v in hall_comul(x).terms.items():
            if not any(m):
                left[n] = v
        if HallElement(cat, left) != x:
            bad.append({"check": "counit axiom", "class": i})
    if cap > 0:
        checked += 1
        unit_coproduct = {(cat.zero_class, cat.zero_class): one.coeff(cat.zero_class)}
        if counit(one) != 1 or hall_comul(one).terms != unit_coproduct:
            bad.append({"check": "unit coproduct"})
    gens = _green_generators(cat)
    for x, y in itertools.product(gens, repeat=2):
        mx, my = next(iter(x.terms)), next(iter(y.terms))
        if sum(cat.class_dim(mx)) + sum(cat.class_dim(my)) > cap:
            continue
        xy = x * y
        checked += 1
        if hall_comul(xy) != hall_comul(x) * hall_comul(y):
            bad.append({"check": "green", "x": list(mx), "y": list(my)})
        dims = tuple(s + t for s, t in zip(cat.class_dim(mx), cat.class_dim(my)))
        checked += 1
        if any(cat.class_dim(L) != dims for L in xy.terms):
            bad.append({"check": "product grading", "x": list(mx), "y": list(my)})
        for z in cat.classes_of_dim(dims):
            zel = HallElement.basis(cat, z)
            cz = hall_comul(zel)
            checked += 2
            if tensor_pairing(tensor_of(x, y), cz) != hall_pairing(xy, zel):
                bad.append({"check": "adjointness", "x": list(mx), "y": list(my), "z": list(z)})
            for u, w in cz.terms:
                if tuple(s + t for s, t in zip(cat.class_dim(u), cat.class_dim(w))) != dims:
                    bad.append({"check": "coproduct grading", "class": list(z)})
    return _report("bialgebra", bad, checked)


def suite_compositions(cat, cap):
    ctx = canonical_context(cat)
    rep = verify_compositions(ctx, cap)
    return rep


def suite_serre(cat, cap=None, psi_words=3):
    """Serre elements vanish under F_w, Phi and the dual-Hall map; F_w = int_w o Psi on short words."""
    ctx = canonical_context(cat)
    bad, checked = [], 0
    rd = cat.rd
    for i in range(1, rd.n + 1):
        for j in range(1, rd.n + 1):
            if i == j or rd.C[i - 1, j - 1] == 0:
                continue
            s = serre_element(rd, cat.q, i, j)
            checked += 3
            if feigin_eval(ctx, s):
                bad.append({"check": "feigin", "pair": [i, j]})
            if phi_map(cat, s):
                bad.append({"check": "phi", "pair": [i, j]})
            if psi_dual(cat, s):
                bad.append({"check": "psi", "pair": [i, j]})
    length = psi_words if cap is None else min(psi_words, cap)
    for r in range(length + 1):
        for u in itertools.product(range(1, rd.n + 1), repeat=r):
            x = WordElement.word(rd, cat.q, u)
            checked += 1
            if feigin_eval(ctx, x) != map_int_w(ctx, psi_dual(cat, x)):
                bad.append({"check": "feigin = integral o psi", "word": list(u)})
    return _report("serre", bad, checked)


def psi_dual(cat, x):
    """x_j -> delta_{S_j}, extended to the dual Hall product."""
    cache = cat.__dict__.setdefault("_psi_words", {(): HallElement.basis(cat, cat.zero_class, dual=True)})
    total = HallElement(cat, {}, dual=True)
    for u, a in x.terms.items():
        for k in range(1, len(u) + 1):
            if u[:k] not in cache:
                s = HallElement.basis(cat, ar.simple_power(cat, u[k - 1], 1), dual=True)
                cache[u[:k]] = dual_mul(cache[u[: k - 1]], s)
        total = total + cache[u].scale(a)
    return total


def suite_triangular(cat, cap):
    ctx = canonical_context(cat)
    bad, checked = [], 0
    for dims in dims_up_to(cat, cap):
        classes = sorted(cat.classes_of_dim(dims), key=lambda m: ar.order_key(ctx.enumeration, m))
        rows = []
        for m in classes:
            checked += 1
            try:
                _, _, terms = triangular_expand(ctx, m)
            except TriangularityError as exc:
                bad.append({"class": cat.class_name(m), "error": str(exc)})
                continue
            coeffs = dict(terms)
            rows.append([coeffs.get(L, 0) for L in classes])
        if len(rows) == len(classes) and not is_lower_unitriangular(transpose(rows)):
            bad.append({"dims": list(dims), "error": "image matrix is not unitriangular"})
    return _report("triangular", bad, checked)


def suite_monomial(cat, cap):
    ctx = canonical_context(cat)
    parts = ctx.parts
    bad, checked = [], 0
    for dims in dims_up_to(cat, cap):
        checked += 1
        if divided_power_product(cat, dims) != divided_power_closed(cat, dims):
            bad.append({"check": "divided power closed form", "a": list(dims)})
        try:
            _, rows = gamma_matrix(cat, parts, dims)
        except BasisError as exc:
            bad.append({"check": "monomial", "dims": list(dims), "error": str(exc)})
            continue
        checked += 1
        if not is_lower_unitriangular(transpose(rows)):
            bad.append({"check": "unitriangular", "dims": list(dims)})
        for m in cat.classes_of_dim(dims):
            checked += 1
            if not hom_split_holds(cat, parts, m):
                bad.append({"check": "hom split", "class": cat.class_name(m)})
    return _report("monomial", bad, checked)


def suite_characterization(cat, cap):
    ctx = canonical_context(cat)
    parts, word = ctx.parts, ctx.word
    bad, checked = [], 0
    for dims in dims_up_to(cat, cap):
        classes = cat.classes_of_dim(dims)
        sets = {m: frozenset(characterization_set(cat, parts, m)) for m in classes}
        vecs = {m: ar.generated_vector(cat, parts, m) for m in classes}
        for m in classes:
            checked += 1
            if vecs[m] not in sets[m] or m not in ar.exact_set(cat, vecs[m], word):
                bad.append({"check": "membership", "class": cat.class_name(m)})
        for m, n in itertools.combinations(classes, 2):
            checked += 1
            if sets[m] == sets[n]:
                bad.append({"check": "distinct sets", "classes": [cat.class_name(m), cat.class_name(n)]})
            if vecs[m] in sets[n] and vecs[n] in sets[m]:
                bad.append({"check": "mutual membership", "classes": [cat.class_name(m), cat.class_name(n)]})
    return _report("characterization", bad, checked)


def suite_order(cat, cap):
    """Quotients lie below the module; generated vectors pick the least class.

    Here ``cap`` bounds the dimension over the base field.
    """
    ctx = canonical_context(cat)
    cs = ar.canonical_structures(cat)
    enumerations = {"injective": cs["inj_enumeration"], "projective partition": ctx.enumeration}
    bad, checked = [], 0
    for y in cat.classes_up_to(cap):
        if not any(y) or cat.canonical_rep(y).total_dim() > cap:
            continue
        for (quo, _sub), _count in cat.census(y).items():
            for label, seq in enumerations.items():
                checked += 1
                if ar.order_compare(seq, quo, y) > 0:
                    bad.append(
                        {
                            "check": "quotient",
                            "enumeration": label,
                            "module": cat.class_name(y),
                            "quotient": cat.class_name(quo),
                        }
                    )
        a = ar.generated_vector(cat, ctx.parts, y)
        members = ar.exact_set(cat, a, ctx.word)
        checked += 1
        if y not in members:
            bad.append({"check": "generated vector membership", "module": cat.class_name(y)})
        for L in members:
            if ar.order_compare(ctx.enumeration, y, L) > 0:
                bad.append({"check": "least element", "module": cat.class_name(y), "other": cat.class_name(L)})
    return _report("order", bad, checked)


def suite_arduality(cat, cap=None):
    bad = [dict(v, check="ar duality") for v in ar.validate_ar_duality(cat)]
    checked = cat.nu * cat.nu
    try:
        cs = ar.canonical_structures(cat)
    except ar.ARError as exc:
        bad.append({"check": "canonical structures", "error": str(exc)})
        return _report("arduality", bad, checked)
    w_p = cs["w0"]
    w_e = ar.word_from_enumeration(cat, cs["inj_enumeration"])
    checked += 4
    if w_p != w_e:
        bad.append({"check": "w_P = w_e", "w_P": list(w_p), "w_e": list(w_e)})
    for label, w in (("w_P", w_p), ("w_e", w_e)):
        rep = ar.word_report(cat.rd, w)
        if not (rep["reduced"] and rep["longest"] and rep["length"] == cat.nu):
            bad.append({"check": "longest word", "word": label, "report": rep})
    for i in range(cat.nu):
        checked += 1
        t = ar.tau_translate(cat, i, "fwd")
        if t is not None and ar.tau_translate(cat, t, "inv") != i:
            bad.append({"check": "tau inverse", "class": i})
    return _report("arduality", bad, checked)


def run_suite(name, cat, q, cap):
    if name == "pascal":
        return suite_pascal(q)
    fn = {
        "bialgebra": suite_bialgebra,
        "compositions": suite_compositions,
        "serre": suite_serre,
        "triangular": suite_triangular,
        "monomial": suite_monomial,
        "characterization": suite_characterization,
        "order": suite_order,
        "arduality": suite_arduality,
    }.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return fn(cat, cap)
