"""Command-line front end: ``ringelhall <command> [options]``.

Exit codes: 0 success, 1 verification violations, 2 input or guard errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import ar
from .bases import characterization_set, monomial_for_module
from .cartan import PRESETS, QuiverError, load_quiver
from .coeff import ContextError, QScalar, vpow
from .freealg import DEFAULT_CAP, WordElement, WordLengthError, serre_element
from .hall import HallElement, hall_comul
from .maps import MapContext, feigin_eval, h_factor, map_int_w, map_omega
from .repfq import ConstructionError, GuardError, RepCategory
from .suites import SUITES, canonical_context, run_suite

Q_CHOICES = (2, 3, 4, 5, 7, 8, 9)


class InputError(ValueError):
    """Bad command-line input; reported with exit code 2."""


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------


def resolve_quiver(source):
    """A readable file wins; otherwise ``a2`` or ``a2.json`` names a preset."""
    path = Path(source)
    if path.is_file():
        return load_quiver(str(path))
    stem = path.name.removesuffix(".json")
    if stem.lower() in PRESETS:
        return load_quiver(stem.lower())
    raise QuiverError(f"no quiver file {source!r} and no preset of that name (presets: {', '.join(PRESETS)})")


def parse_word(text, rd):
    try:
        word = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise InputError(f"word must be comma-separated vertices, got {text!r}") from exc
    for x in word:
        if not 1 <= x <= rd.n:
            raise InputError(f"letter {x} out of range 1..{rd.n}")
    return word


class Session:
    """Lazily built category and canonical structures for one invocation."""

    def __init__(self, args):
        self.args = args
        self.rd = resolve_quiver(args.quiver)
        self.q = args.q
        self._word = parse_word(args.word, self.rd) if args.word else None
        self._cat = None
        self._ctx = None

    @property
    def cat(self):
        if self._cat is None:
            self._cat = RepCategory(self.rd, self.q)
        return self._cat

    @property
    def canonical(self):
        if self._ctx is None:
            self._ctx = canonical_context(self.cat)
        return self._ctx

    @property
    def word(self):
        if self._word is not None:
            return self._word
        return self.canonical.word

    def cls(self, text):
        try:
            return self.cat.parse_class(text)
        except ValueError as exc:
            raise InputError(str(exc)) from exc


# --------------------------------------------------------------------------
# free-algebra expressions for ``feigin``
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(serre)|(x)(\d+)|(v)|(.))")


class ExprParser:
    """Recursive descent over ``+ - * / ^ ( )``, integers, ``v``, ``x<i>`` and ``serre(i,j)``."""

    def __init__(self, text, rd, q):
        self.rd, self.q = rd, q
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.tokens.append(("num", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("serre", None))
            elif m.group(3):
                self.tokens.append(("x", int(m.group(4))))
            elif m.group(5):
                self.tokens.append(("v", None))
            elif m.group(6) and not m.group(6).isspace():
                self.tokens.append(("op", m.group(6)))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self, kind=None, value=None):
        tok = self._peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            raise InputError(f"unexpected token {tok[1]!r} in expression (wanted {value or kind})")
        self.pos += 1
        return tok

    def _scalar(self, c):
        return WordElement.one(self.rd, self.q).scale(c if isinstance(c, QScalar) else QScalar(c, 0, self.q))

    def parse(self):
        if not self.tokens:
            raise InputError("empty expression")
        out = self._sum()
        if self.pos != len(self.tokens):
            raise InputError(f"trailing input at token {self._peek()[1]!r}")
        return out

    def _sum(self):
        out = self._product()
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            rhs = self._product()
            out = out + rhs if op == "+" else out - rhs
        return out

    def _product(self):
        if self._peek() == ("op", "-"):
            self._take()
            return self._product().scale(-1)
        out = self._power()
        while True:
            tok = self._peek()
            if tok in (("op", "*"), ("op", "/")):
                self._take()
                if tok[1] == "*":
                    out = out * self._power()
                else:
                    out = out.scale(self._as_scalar(self._power()).inverse())
            elif tok[0] in ("num", "v", "x", "serre") or tok == ("op", "("):
                out = out * self._power()  # juxtaposition
            else:
                return out

    def _as_scalar(self, x):
        if set(x.terms) - {()}:
            raise InputError("only scalars may appear as divisors or with negative exponents")
        c = x.coeff(())
        if not c:
            raise InputError("division by zero")
        return c

    def _power(self):
        base = self._atom()
        if self._peek() != ("op", "^"):
            return base
        self._take()
        sign = 1
        if self._peek() == ("op", "-"):
            self._take()
            sign = -1
        n = sign * self._take("num")[1]
        if n < 0:
            return self._scalar(self._as_scalar(base) ** n)
        out = WordElement.one(self.rd, self.q)
        for _ in range(n):
            out = out * base
        return out

    def _atom(self):
        kind, val = self._take()
        if kind == "num":
            return self._scalar(val)
        if kind == "v":
            return self._scalar(vpow(1, self.q))
        if kind == "x":
            try:
                return WordElement.word(self.rd, self.q, (val,))
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        if kind == "serre":
            self._take("op", "(")
            i = self._take("num")[1]
            self._take("op", ",")
            j = self._take("num")[1]
            self._take("op", ")")
            try:
                return serre_element(self.rd, self.q, i, j)
            except (ValueError, QuiverError) as exc:
                raise InputError(str(exc)) from exc
        if (kind, val) == ("op", "("):
            out = self._sum()
            self._take("op", ")")
            return out
        raise InputError(f"unexpected token {val!r} in expression")


# --------------------------------------------------------------------------
# commands; each returns (text, json_payload, exit_code)
# --------------------------------------------------------------------------


def cmd_roots(s):
    rows = [list(r) for r in s.rd.positive_roots]
    text = "\n".join(f"{k + 1:>3}  ({', '.join(map(str, r))})" for k, r in enumerate(rows))
    return text, {"quiver": s.rd.name, "count": len(rows), "roots": rows}, 0


def cmd_indec(s):
    cat = s.cat
    rows = []
    for idx in range(cat.nu):
        rows.append(
            {
                "index": idx + 1,
                "name": cat.indecomposable_name(idx),
                "dim": list(cat.root_order[idx]),
                "end_dim": int(cat.end_dims[idx]),
            }
        )
    lines = [f"{'#':>3}  {'name':<8}{'dim':<16}dim End"]
    lines += [f"{r['index']:>3}  {r['name']:<8}{str(tuple(r['dim'])):<16}{r['end_dim']}" for r in rows]
    return "\n".join(lines), {"quiver": s.rd.name, "q": s.q, "indecomposables": rows}, 0


def cmd_list_classes(s):
    cat = s.cat
    rows = [
        {"class": list(m), "name": cat.class_name(m), "dim": list(cat.class_dim(m))}
        for m in cat.classes_up_to(s.args.cap)
    ]
    text = "\n".join(f"{r['name']:<20}{str(tuple(r['dim'])):<16}{r['class']}" for r in rows)
    return text, {"cap": s.args.cap, "classes": rows}, 0


def cmd_hall(s):
    a = s.args
    cat = s.cat
    if a.op == "mul":
        if len(a.classes) != 2:
            raise InputError("hall mul takes two classes")
        x, y = (HallElement.basis(cat, s.cls(c)) for c in a.classes)
        out = x * y
    else:
        if len(a.classes) != 1:
            raise InputError("hall comul takes one class")
        out = hall_comul(HallElement.basis(cat, s.cls(a.classes[0])))
    return out.pretty(), {"op": a.op, "args": a.classes, "result": out.to_json()}, 0


def cmd_omega(s):
    m = s.cls(s.args.cls)
    out = map_omega(s.cat, HallElement.basis(s.cat, m, dual=True), cap=max(s.args.cap, DEFAULT_CAP))
    return out.pretty(), {"class": s.args.cls, "result": out.to_json()}, 0


def cmd_intw(s):
    m = s.cls(s.args.cls)
    ctx = MapContext(s.cat, s.word)
    out = map_int_w(ctx, HallElement.basis(s.cat, m, dual=True))
    return out.pretty(), {"class": s.args.cls, "result": out.to_json()}, 0


def cmd_feigin(s):
    x = ExprParser(s.args.expr, s.rd, s.q).parse()
    ctx = MapContext(s.cat, s.word)
    out = feigin_eval(ctx, x)
    return out.pretty(), {"expr": s.args.expr, "word": list(ctx.word), "result": out.to_json()}, 0


def cmd_monomial(s):
    cat = s.cat
    ctx = s.canonical
    m = s.cls(s.args.cls)
    expansion = monomial_for_module(cat, ctx.parts, m)
    a = ar.generated_vector(cat, ctx.parts, m)
    h = h_factor(ctx, a)
    ordered = sorted(expansion.terms.items(), key=lambda t: ar.order_key(ctx.enumeration, t[0]))
    lead = cat.class_name(m)
    trailing = [cat.class_name(L) for L, _ in ordered if L != m]
    payload = {
        "class": lead,
        "generated_vector": list(a),
        "h_w": h.to_json(),
        "leading": lead,
        "trailing": trailing,
        "expansion": expansion.to_json(),
    }
    text = "\n".join(
        [
            f"{'class':<10}{'v_D(M)':<16}{'h_w':<10}{'leading':<10}trailing",
            f"{lead:<10}{str(a):<16}{h.pretty():<10}{lead:<10}{', '.join(trailing) or '-'}",
            f"E^(M) = {expansion.pretty()}",
        ]
    )
    return text, payload, 0


def cmd_charset(s):
    ctx = s.canonical
    m = s.cls(s.args.cls)
    vecs = sorted(characterization_set(s.cat, ctx.parts, m))
    text = "\n".join(",".join(map(str, v)) for v in vecs)
    return text, {"class": s.args.cls, "word": list(ctx.word), "set": [list(v) for v in vecs]}, 0


def cmd_word(s):
    cat = s.cat
    cs = ar.canonical_structures(cat)
    if s.args.which == "w0":
        w = cs["w0"]
        return ",".join(map(str, w)), dict(ar.word_report(s.rd, w)), 0
    parts = [[cat.indecomposable_name(i) for i in part] for part in cs["proj_partition"]]
    w = cs["w0"]
    text = " | ".join(" ".join(p) for p in parts) + "\n" + ",".join(map(str, w))
    return text, {"parts": parts, **ar.word_report(s.rd, w)}, 0


def cmd_verify(s):
    names = list(s.args.suites or [])
    if s.args.suite:
        names.append(s.args.suite)
    if not names or "all" in names:
        names = list(SUITES)
    for n in names:
        if n not in SUITES:
            raise InputError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    reports = []
    for n in names:
        t0 = time.perf_counter()
        rep = run_suite(n, None if n == "pascal" else s.cat, s.q, s.args.cap)
        rep = dict(rep)
        rep["seconds"] = round(time.perf_counter() - t0, 3)
        reports.append(rep)
    total = sum(len(r["violations"]) for r in reports)
    payload = {
        "quiver": s.rd.name,
        "q": s.q,
        "cap": s.args.cap,
        "suites": reports,
        "violations": total,
        "checked": sum(r["checked"] for r in reports),
    }
    lines = []
    for r in reports:
        status = "ok" if not r["violations"] else f"{len(r['violations'])} violation(s)"
        note = " (no checks in range)" if r["checked"] == 0 else ""
        lines.append(f"{r['suite']:<18}{r['checked']:>8} checks  {status}{note}")
    return "\n".join(lines), payload, 1 if total else 0


# deterministic JSON: drop timings, which vary between runs
def _stable(payload):
    if isinstance(payload, dict) and "suites" in payload:
        payload = dict(payload)
        payload["suites"] = [{k: v for k, v in r.items() if k != "seconds"} for r in payload["suites"]]
    return payload


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", default="a2", help="quiver JSON file or preset name (a1 a2 a3 b2 g2 d4)")
    common.add_argument("--q", type=int, default=2, choices=Q_CHOICES, help="size of the base field")
    common.add_argument("--word", default=None, help="comma-separated word, default w0 from the projective partition")
    common.add_argument("--cap", type=int, default=4, help="total-dimension cap for suites and class lists")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--list-classes", action="store_true", help="print the class naming table and exit")

    p = argparse.ArgumentParser(
        prog="ringelhall", description="Ringel-Hall algebras of valued quivers over finite fields."
    )
    sub = p.add_subparsers(dest="command")
    sub.add_parser("roots", parents=[common], help="positive roots")
    sub.add_parser("indec", parents=[common], help="indecomposables in canonical order")
    sub.add_parser("classes", parents=[common], help="isoclasses up to --cap")
    h = sub.add_parser("hall", parents=[common], help="Hall product or coproduct of basis elements")
    h.add_argument("op", choices=("mul", "comul"))
    h.add_argument("classes", nargs="+")
    for name, helptext in (
        ("omega", "shuffle character of a dual basis element"),
        ("intw", "integral map of a dual basis element along the word"),
        ("monomial", "monomial E^(M) and its expansion"),
        ("charset", "characterization set along the projective-partition word"),
    ):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("cls", metavar="CLASS")
    fe = sub.add_parser("feigin", parents=[common], help="Feigin map of a free-algebra expression")
    fe.add_argument("expr", metavar="EXPR")
    w = sub.add_parser("word", parents=[common], help="longest word or projective partition")
    w.add_argument("which", choices=("w0", "partition"))
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suites", nargs="*", metavar="SUITE")
    v.add_argument("--suite", default=None)
    return p


COMMANDS = {
    "roots": cmd_roots,
    "indec": cmd_indec,
    "classes": cmd_list_classes,
    "hall": cmd_hall,
    "omega": cmd_omega,
    "intw": cmd_intw,
    "feigin": cmd_feigin,
    "monomial": cmd_monomial,
    "charset": cmd_charset,
    "word": cmd_word,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command is None:
        parser.print_help()
        return 2
    if args.cap < 0:
        print("error: --cap must be nonnegative", file=sys.stderr)
        return 2
    try:
        session = Session(args)
        fn = cmd_list_classes if args.list_classes else COMMANDS[args.command]
        text, payload, code = fn(session)
    except (InputError, QuiverError, GuardError, WordLengthError, ContextError, ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(_stable(payload), sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
