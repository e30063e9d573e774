"""The ``.lat`` lattice description format.

::

    format 1
    node X Y Z W
    init X
    fin W
    arrow gamma: X -> Y
    ...
    rel G: gamma beta = d      # label is optional
    null d
    strict G                   # 1-based index, label, or a repeated relation

Paths are whitespace-separated arrow ids in application order, so
``gamma beta`` means gamma first.  Comments start with ``#``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .lattice import Arrow, Lattice, LatticeError, Relation, ValidationReport

FORMAT_VERSION = 1
ID = r"[A-Za-z0-9_'\-]+"
_ID_RE = re.compile(ID)
_ARROW_RE = re.compile(rf"arrow\s+(?P<id>{ID})\s*:\s*(?P<src>{ID})\s*->\s*(?P<dst>{ID})\s*$")
_REL_RE = re.compile(rf"rel\s+(?:(?P<label>{ID})\s*:\s*)?(?P<lhs>[^=]*)=(?P<rhs>[^=]*)$")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    start: int  # 1-based column
    end: int  # exclusive

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.start}"


@dataclass(frozen=True)
class Diagnostic:
    span: SourceSpan
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.span}: {self.severity}: {self.message}"


@dataclass
class ParseResult:
    lattice: Lattice | None = None
    diagnostics: list = field(default_factory=list)
    report: ValidationReport | None = None

    @property
    def errors(self) -> list:
        return [d for d in self.diagnostics if d.severity == "error"]

    @property
    def ok(self) -> bool:
        return self.lattice is not None and not self.errors


@dataclass
class _Tok:
    text: str
    span: SourceSpan


@dataclass
class _Rel:
    label: _Tok | None
    lhs: list
    rhs: list
    span: SourceSpan


class _Parser:
    def __init__(self, text: str, filename: str):
        self.text = text
        self.file = filename
        self.diags: list[Diagnostic] = []
        self.nodes: list[_Tok] = []
        self.init: _Tok | None = None
        self.fin: _Tok | None = None
        self.arrows: list[tuple[_Tok, _Tok, _Tok]] = []
        self.rels: list[_Rel] = []
        self.nulls: list[tuple[list, SourceSpan]] = []
        self.stricts: list[tuple[str, object, SourceSpan]] = []
        self.format_seen = False
        self.last_line = 1

    def error(self, span: SourceSpan, msg: str, severity: str = "error"):
        self.diags.append(Diagnostic(span, msg, severity))

    def span(self, line: int, start: int, end: int) -> SourceSpan:
        return SourceSpan(self.file, line, start + 1, end + 1)

    def tokens(self, line_no: int, text: str, offset: int) -> list[_Tok]:
        out = []
        for m in re.finditer(r"\S+", text):
            tok = _Tok(m.group(), self.span(line_no, offset + m.start(), offset + m.end()))
            if not _ID_RE.fullmatch(tok.text):
                self.error(tok.span, f"invalid identifier {tok.text!r}")
            out.append(tok)
        return out

    # pass 1: declarations -------------------------------------------------

    def scan(self):
        for line_no, raw in enumerate(self.text.splitlines(), 1):
            self.last_line = line_no
            line = raw.split("#", 1)[0].rstrip()
            stripped = line.lstrip()
            if not stripped:
                continue
            indent = len(line) - len(stripped)
            word = stripped.split(None, 1)[0]
            whole = self.span(line_no, indent, len(line))
            if not self.format_seen and word != "format":
                self.error(whole, f"expected 'format {FORMAT_VERSION}' header before {word!r}")
                self.format_seen = True
            handler = getattr(self, f"_line_{word}", None)
            if handler is None:
                self.error(self.span(line_no, indent, indent + len(word)),
                           f"unknown directive {word!r}")
                continue
            handler(line_no, stripped, indent, whole)
        if not self.format_seen:
            self.error(self.span(1, 0, 0), f"missing 'format {FORMAT_VERSION}' header")
        end = self.span(self.last_line, 0, 0)
        if self.init is None:
            self.error(end, "missing 'init' declaration")
        if self.fin is None:
            self.error(end, "missing 'fin' declaration")

    def _line_format(self, no, text, indent, whole):
        if self.format_seen:
            self.error(whole, "repeated or late 'format' header")
            return
        self.format_seen = True
        parts = text.split()
        if parts[1:] != [str(FORMAT_VERSION)]:
            self.error(whole, f"unsupported format {' '.join(parts[1:]) or '(none)'}; "
                              f"expected {FORMAT_VERSION}")

    def _line_node(self, no, text, indent, whole):
        toks = self.tokens(no, text[4:], indent + 4)
        if not toks:
            self.error(whole, "'node' needs at least one id")
        self.nodes.extend(toks)

    def _endpoint(self, which, no, text, indent, whole):
        toks = self.tokens(no, text[len(which):], indent + len(which))
        if len(toks) != 1:
            self.error(whole, f"'{which}' takes exactly one node id")
            return
        if getattr(self, which) is not None:
            self.error(toks[0].span, f"repeated '{which}' declaration")
            return
        setattr(self, which, toks[0])

    def _line_init(self, no, text, indent, whole):
        self._endpoint("init", no, text, indent, whole)

    def _line_fin(self, no, text, indent, whole):
        self._endpoint("fin", no, text, indent, whole)

    def _line_arrow(self, no, text, indent, whole):
        m = _ARROW_RE.fullmatch(text)
        if not m:
            self.error(whole, "expected 'arrow <id>: <source> -> <target>'")
            return
        toks = [_Tok(m.group(g), self.span(no, indent + m.start(g), indent + m.end(g)))
                for g in ("id", "src", "dst")]
        self.arrows.append(tuple(toks))

    def _line_rel(self, no, text, indent, whole):
        m = _REL_RE.fullmatch(text)
        if not m:
            self.error(whole, "expected 'rel [<label>:] <path> = <path>'")
            return
        label = None
        if m.group("label"):
            label = _Tok(m.group("label"),
                         self.span(no, indent + m.start("label"), indent + m.end("label")))
        lhs = self.tokens(no, m.group("lhs"), indent + m.start("lhs"))
        rhs = self.tokens(no, m.group("rhs"), indent + m.start("rhs"))
        if not lhs or not rhs:
            self.error(whole, "relation sides must be nonempty paths")
            return
        self.rels.append(_Rel(label, lhs, rhs, whole))

    def _line_null(self, no, text, indent, whole):
        toks = self.tokens(no, text[4:], indent + 4)
        if not toks:
            self.error(whole, "'null' needs a path")
            return
        self.nulls.append((toks, whole))

    def _line_strict(self, no, text, indent, whole):
        body = text[6:]
        if "=" in body:
            lhs, _, rhs = body.partition("=")
            off = indent + 6
            left = self.tokens(no, lhs, off)
            right = self.tokens(no, rhs, off + len(lhs) + 1)
            if not left or not right or "=" in rhs:
                self.error(whole, "malformed relation literal in 'strict'")
                return
            self.stricts.append(("literal", (left, right), whole))
            return
        toks = self.tokens(no, body, indent + 6)
        if len(toks) != 1:
            self.error(whole, "'strict' takes a relation index, label, or literal")
            return
        kind = "index" if toks[0].text.isdigit() else "label"
        self.stricts.append((kind, toks[0], whole))

    # pass 2: references -----------------------------------------------------

    def resolve(self):
        node_ids = {}
        for tok in self.nodes:
            if tok.text in node_ids:
                self.error(tok.span, f"duplicate node {tok.text!r}")
            else:
                node_ids[tok.text] = tok
        for tok in (self.init, self.fin):
            if tok is not None and tok.text not in node_ids:
                self.error(tok.span, f"unknown node {tok.text!r}")
        arrows = {}
        for aid, src, dst in self.arrows:
            if aid.text in arrows:
                self.error(aid.span, f"duplicate arrow {aid.text!r}")
                continue
            for tok in (src, dst):
                if tok.text not in node_ids:
                    self.error(tok.span, f"unknown node {tok.text!r}")
            arrows[aid.text] = (src.text, dst.text)

        def path_ends(toks):
            ends = None
            for tok in toks:
                if tok.text not in arrows:
                    self.error(tok.span, f"unknown arrow {tok.text!r}")
                    return None
            for a, b in zip(toks, toks[1:]):
                if arrows[a.text][1] != arrows[b.text][0]:
                    self.error(b.span, f"arrow {b.text!r} does not start where "
                                       f"{a.text!r} ends")
                    return None
            ends = (arrows[toks[0].text][0], arrows[toks[-1].text][1])
            return ends

        labels = {}
        for i, rel in enumerate(self.rels, 1):
            if rel.label is not None:
                if rel.label.text in labels:
                    self.error(rel.label.span, f"duplicate relation label {rel.label.text!r}")
                labels.setdefault(rel.label.text, i)
            e1, e2 = path_ends(rel.lhs), path_ends(rel.rhs)
            if e1 and e2 and e1 != e2:
                self.error(rel.span, f"relation sides run {e1[0]}->{e1[1]} and "
                                     f"{e2[0]}->{e2[1]}")
        for toks, _ in self.nulls:
            path_ends(toks)
        strict = set()
        sides = [(tuple(t.text for t in r.lhs), tuple(t.text for t in r.rhs)) for r in self.rels]
        for kind, ref, whole in self.stricts:
            if kind == "index":
                k = int(ref.text)
                if not 1 <= k <= len(self.rels):
                    self.error(ref.span, f"no relation number {k} "
                                         f"(there are {len(self.rels)})")
                else:
                    strict.add(k - 1)
            elif kind == "label":
                if ref.text not in labels:
                    self.error(ref.span, f"no relation labelled {ref.text!r}")
                else:
                    strict.add(labels[ref.text] - 1)
            else:
                left = tuple(t.text for t in ref[0])
                right = tuple(t.text for t in ref[1])
                hits = [i for i, s in enumerate(sides) if s in ((left, right), (right, left))]
                if not hits:
                    self.error(whole, "strict mark matches no relation")
                strict.update(hits)
        return strict

    def build(self) -> ParseResult:
        self.scan()
        strict = self.resolve()
        if any(d.severity == "error" for d in self.diags):
            return ParseResult(None, self.diags)
        try:
            lattice = Lattice(
                tuple(t.text for t in self.nodes),
                self.init.text,
                self.fin.text,
                tuple(Arrow(a.text, s.text, d.text) for a, s, d in self.arrows),
                tuple(
                    Relation(tuple(t.text for t in r.lhs), tuple(t.text for t in r.rhs),
                             i in strict, r.label.text if r.label else None)
                    for i, r in enumerate(self.rels)
                ),
                tuple(tuple(t.text for t in toks) for toks, _ in self.nulls),
                name=Path(self.file).stem if self.file != "<string>" else None,
            )
        except LatticeError as exc:
            self.error(self.span(1, 0, 0), str(exc))
            return ParseResult(None, self.diags)
        return ParseResult(lattice, self.diags, lattice.validate())


def parse_lattice(text, filename: str = "<string>") -> ParseResult:
    """Parse ``.lat`` source.  Never raises; problems become diagnostics."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            return ParseResult(None, [Diagnostic(SourceSpan(filename, 1, 1, 1),
                                                 f"input is not UTF-8: {exc}")])
    try:
        return _Parser(text, filename).build()
    except Exception as exc:  # parsing must stay total
        return ParseResult(None, [Diagnostic(SourceSpan(filename, 1, 1, 1),
                                             f"internal parser error: {exc!r}")])


def read_lattice(path) -> ParseResult:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        return ParseResult(None, [Diagnostic(SourceSpan(str(path), 1, 1, 1), str(exc))])
    return parse_lattice(data, str(path))


def print_lattice(lattice: Lattice) -> str:
    lines = [f"format {FORMAT_VERSION}", "node " + " ".join(lattice.nodes),
             f"init {lattice.init}", f"fin {lattice.fin}"]
    lines += [f"arrow {a.id}: {a.source} -> {a.target}" for a in lattice.arrows]
    for r in lattice.relations:
        label = f"{r.label}: " if r.label else ""
        lines.append(f"rel {label}{' '.join(r.left)} = {' '.join(r.right)}")
    lines += ["null " + " ".join(p) for p in lattice.nulls]
    lines += [f"strict {i}" for i, r in enumerate(lattice.relations, 1) if r.strict]
    return "\n".join(lines) + "\n"
