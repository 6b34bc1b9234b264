"""Text format for bound-quiver presentations.

Grammar (statements end at a newline or ``;``, ``#`` starts a comment)::

    field Q | field F <p>
    vertices <v> <v> ...
    arrows                              # optional section header
    arrow <label>: <v> -> <v> [new]     # 'arrow' may be omitted inside 'arrows'
    relations
    [<name>:] [<coef>*]<label>*<label>... (+|-) ...

A relation name becomes the label of the new arrow the relation-extension
builder attaches to that relation.  When the quiver already has a ``new``
arrow of that name, the relation is read as the cyclic derivative of the
potential with respect to it.  Coefficients are integers or ``p/q``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import PresentationSemanticError, PresentationSyntaxError
from .field import Field
from .presentation import BoundQuiverPresentation, check_relation
from .quiver import NEW, OLD, Arrow, Path, PathVector, Quiver, Vertex, format_combination

KEYWORDS = {"field", "vertices", "arrows", "arrow", "relations"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<arrowop>->)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ident>[^\W\d]\w*)
  | (?P<punct>[:*+\-])
    """,
    re.VERBOSE | re.UNICODE,
)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.line}:{self.col}"


def _statements(text: str):
    """Yield token lists, one per statement, with 1-based line/column positions."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        pos = 0
        while pos < len(line):
            if line[pos] == ";":
                if toks:
                    yield toks
                toks = []
                pos += 1
                continue
            m = _TOKEN.match(line, pos)
            if not m:
                raise PresentationSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
            kind = m.lastgroup
            if kind != "ws":
                text_ = m.group()
                toks.append(_Tok(kind if kind != "punct" else text_, text_, lineno, pos + 1))
            pos = m.end()
        if toks:
            yield toks


class _Cursor:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            last = self.toks[-1]
            raise PresentationSyntaxError("unexpected end of statement", last.line, last.col + len(last.text))
        self.i += 1
        return t

    def expect(self, kind, what=None):
        t = self.next()
        if t.kind != kind:
            raise PresentationSyntaxError(f"expected {what or kind}, found {t.text!r}", t.line, t.col)
        return t

    def done(self):
        return self.i >= len(self.toks)

    def expect_end(self):
        if not self.done():
            t = self.peek()
            raise PresentationSyntaxError(f"unexpected {t.text!r}", t.line, t.col)


def parse_presentation(text: str, field: Field | None = None) -> BoundQuiverPresentation:
    """Parse DSL ``text``; ``field`` overrides any ``field`` statement."""
    declared_field = None
    vertex_labels: list[str] = []
    arrow_specs: list[tuple] = []  # (label, s, t, kind, tok)
    raw_relations: list[tuple] = []  # (name, terms, tok)
    section = None
    saw_vertices = False

    for toks in _statements(text):
        cur = _Cursor(toks)
        head = cur.peek()
        word = head.text if head.kind == "ident" else None

        if word in KEYWORDS:
            cur.next()
            if word == "field":
                declared_field = _parse_field(cur)
                section = None
            elif word == "vertices":
                if saw_vertices:
                    raise PresentationSemanticError("vertices declared twice", head.line, head.col)
                saw_vertices = True
                while not cur.done():
                    t = cur.next()
                    if t.kind not in ("number", "ident") or "/" in t.text:
                        raise PresentationSyntaxError(f"bad vertex id {t.text!r}", t.line, t.col)
                    if t.text in vertex_labels:
                        raise PresentationSemanticError(f"duplicate vertex {t.text}", t.line, t.col)
                    vertex_labels.append(t.text)
                section = None
            elif word == "arrows":
                cur.expect_end()
                section = "arrows"
            elif word == "arrow":
                arrow_specs.append(_parse_arrow(cur, head))
                if section != "arrows":
                    section = None
            elif word == "relations":
                cur.expect_end()
                section = "relations"
            continue

        if section == "arrows":
            arrow_specs.append(_parse_arrow(cur, head))
        elif section == "relations":
            raw_relations.append(_parse_relation(cur))
        else:
            raise PresentationSyntaxError(f"unexpected {head.text!r}", head.line, head.col)

    if not saw_vertices:
        raise PresentationSyntaxError("missing 'vertices' statement", 1, 1)

    fld = field or declared_field or Field(0)

    vertices = tuple(Vertex(i, lab) for i, lab in enumerate(vertex_labels))
    vindex = {lab: i for i, lab in enumerate(vertex_labels)}
    arrows = []
    seen = set()
    for label, s, t, kind, tok in arrow_specs:
        if label in seen:
            raise PresentationSemanticError(f"duplicate arrow {label}", tok.line, tok.col)
        for v in (s, t):
            if v.text not in vindex:
                raise PresentationSemanticError(f"unknown vertex {v.text}", v.line, v.col)
        seen.add(label)
        arrows.append(Arrow(len(arrows), label, vindex[s.text], vindex[t.text], kind))
    quiver = Quiver(vertices, tuple(arrows))

    relations, names = [], []
    for name, terms, tok in raw_relations:
        acc = {}
        for coef, labels in terms:
            p = _resolve_path(quiver, labels)
            c = _coerce(fld, coef, tok)
            acc[p] = acc[p] + c if p in acc else c
        r = PathVector(acc)
        check_relation(r, quiver, index=len(relations), line=tok.line, column=tok.col)
        if name is not None:
            clash = quiver.has_arrow(name.text) and not quiver.arrow(name.text).is_new
            if clash or name.text in names:
                raise PresentationSemanticError(f"relation name {name.text} already used", name.line, name.col)
        relations.append(r)
        names.append(name.text if name is not None else None)

    return BoundQuiverPresentation(quiver, tuple(relations), fld, tuple(names))


def _coerce(fld, coef, tok):
    try:
        return fld(coef)
    except ZeroDivisionError as exc:
        raise PresentationSemanticError(str(exc), tok.line, tok.col) from None


def _parse_field(cur):
    t = cur.next()
    if t.kind == "ident" and t.text == "Q":
        cur.expect_end()
        return Field(0)
    if t.kind == "ident" and t.text == "F":
        n = cur.expect("number", "a prime")
        cur.expect_end()
        return _make_field(int(n.text), n)
    if t.kind == "ident" and re.fullmatch(r"F\d+", t.text):
        cur.expect_end()
        return _make_field(int(t.text[1:]), t)
    raise PresentationSyntaxError(f"expected Q or F <p>, found {t.text!r}", t.line, t.col)


def _make_field(p, tok):
    try:
        return Field(p)
    except ValueError as exc:
        raise PresentationSemanticError(str(exc), tok.line, tok.col) from None


def _vertex_tok(cur):
    t = cur.next()
    if t.kind not in ("number", "ident") or "/" in t.text:
        raise PresentationSyntaxError(f"expected a vertex, found {t.text!r}", t.line, t.col)
    return t


def _parse_arrow(cur, head):
    del head
    label = cur.expect("ident", "an arrow label")
    if label.text in KEYWORDS:
        raise PresentationSyntaxError(f"{label.text!r} is a keyword", label.line, label.col)
    cur.expect(":", "':'")
    s = _vertex_tok(cur)
    cur.expect("arrowop", "'->'")
    t = _vertex_tok(cur)
    kind = OLD
    if not cur.done():
        k = cur.next()
        if k.kind == "ident" and k.text in (NEW, OLD):
            kind = k.text
        else:
            raise PresentationSyntaxError(f"expected 'new' or end of statement, found {k.text!r}", k.line, k.col)
    cur.expect_end()
    return (label.text, s, t, kind, label)


def _parse_relation(cur):
    start = cur.peek()
    name = None
    if start.kind == "ident" and cur.peek(1) is not None and cur.peek(1).kind == ":":
        name = cur.next()
        cur.next()
    terms = []
    sign = 1
    first = True
    while True:
        t = cur.peek()
        if t is None:
            raise PresentationSyntaxError("empty relation term", start.line, start.col)
        if t.kind in ("+", "-"):
            cur.next()
            sign = -1 if t.kind == "-" else 1
        elif not first:
            raise PresentationSyntaxError(f"expected '+' or '-', found {t.text!r}", t.line, t.col)
        coef = Fraction(1)
        t = cur.next()
        if t.kind == "number":
            coef = Fraction(t.text)
            star = cur.next()
            if star.kind != "*":
                raise PresentationSyntaxError(f"expected '*' after coefficient, found {star.text!r}", star.line, star.col)
            t = cur.next()
        if t.kind != "ident":
            raise PresentationSyntaxError(f"expected an arrow label, found {t.text!r}", t.line, t.col)
        labels = [t]
        while cur.peek() is not None and cur.peek().kind == "*":
            cur.next()
            labels.append(cur.expect("ident", "an arrow label"))
        terms.append((sign * coef, labels))
        sign, first = 1, False
        if cur.done():
            break
    return (name, terms, start)


def _resolve_path(quiver: Quiver, label_toks) -> Path:
    arrows = []
    for t in label_toks:
        if not quiver.has_arrow(t.text):
            raise PresentationSemanticError(f"unknown arrow {t.text}", t.line, t.col)
        arrows.append(quiver.arrow(t.text))
    for a, b, tok in zip(arrows, arrows[1:], label_toks[1:]):
        if a.target != b.source:
            raise PresentationSemanticError(f"{a.label}*{b.label} is not composable", tok.line, tok.col)
    return Path(arrows[0].source, arrows[-1].target, tuple(a.id for a in arrows))


def parse_path_vector(text: str, quiver: Quiver, field: Field | None = None) -> PathVector:
    """Parse a linear combination like ``a1*b1 - 2*a2*b1`` against ``quiver``."""
    fld = field or Field(0)
    stmts = list(_statements(text))
    if len(stmts) != 1:
        raise PresentationSyntaxError("expected a single expression", 1, 1)
    name, terms, tok = _parse_relation(_Cursor(stmts[0]))
    acc = {}
    for coef, labels in terms:
        p = _resolve_path(quiver, labels)
        c = fld(coef)
        acc[p] = acc[p] + c if p in acc else c
    return PathVector(acc)


def format_presentation(pres: BoundQuiverPresentation) -> str:
    """Canonical DSL text; ``parse_presentation`` inverts it exactly."""
    q = pres.quiver
    lines = [f"field {'Q' if pres.field.is_rational else 'F ' + str(pres.field.characteristic)}"]
    lines.append("vertices " + " ".join(v.label for v in q.vertices))
    for a in q.arrows:
        tail = " new" if a.is_new else ""
        lines.append(f"arrow {a.label}: {q.vertices[a.source].label} -> {q.vertices[a.target].label}{tail}")
    lines.append("relations")
    for name, r in zip(pres.relation_names, pres.relations):
        body = r.format(q)
        lines.append(f"{name}: {body}" if name else body)
    return "\n".join(lines) + "\n"


__all__ = [
    "parse_presentation",
    "parse_path_vector",
    "format_presentation",
    "format_combination",
]
