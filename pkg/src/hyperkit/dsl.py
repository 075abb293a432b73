"""The ``.hyp`` text format.

Example::

    # the sign hypergroup
    hypergroup Sign {
      elements: 0, 1, -1
      identity: 0
      table:
        0*0 = {0}
        1*-1 = {0, 1, -1}
        ...
      order: -1 < 0 < 1
      cone: 0, 1
    }

Statements are separated by newlines or ``;``.  ``hyperring``/``hyperfield``
blocks add ``one:`` and ``mul:`` sections (``x*y = z``).  ``valuation`` blocks
name a ``domain:`` and ``codomain:`` and list ``map:`` entries ``x -> h``
(``inf`` for zero).  ``functions`` blocks name a ``domain:`` and define
rational-valued maps ``f: x -> 1, y -> -1/2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

STRUCTURE_KINDS = ("hypergroup", "hyperring", "hyperfield")
KINDS = STRUCTURE_KINDS + ("valuation", "functions")

_TOKEN = re.compile(r"\s*(?:(->)|([{}:;,*+=<])|(-?[A-Za-z0-9_'/.]+))")


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"{line}:{col}: {message}" if line else message)


@dataclass
class StructureDecl:
    kind: str
    name: str
    elements: list[str]
    identity: str
    table: dict = field(default_factory=dict)  # (a, b) -> frozenset of names
    one: str | None = None
    mul: dict = field(default_factory=dict)  # (a, b) -> name
    orders: list = field(default_factory=list)  # chains, smallest first
    cone: tuple | None = None
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass
class ValuationDecl:
    name: str
    domain: str
    codomain: str
    mapping: dict = field(default_factory=dict)
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass
class FunctionsDecl:
    name: str
    domain: str
    functions: dict = field(default_factory=dict)  # fname -> {element: Fraction}
    span: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass
class StructureDocument:
    decls: list = field(default_factory=list)

    def get(self, name: str):
        for d in self.decls:
            if d.name == name:
                return d
        raise KeyError(name)

    def structures(self) -> list[StructureDecl]:
        return [d for d in self.decls if isinstance(d, StructureDecl)]


# ---------------------------------------------------------------- lexer

@dataclass
class _Tok:
    kind: str  # "name", "punct", "nl", "eof"
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        pos = 0
        while True:
            m = _TOKEN.match(line, pos)
            if not m or m.end() == pos:
                rest = line[pos:]
                if rest.strip():
                    col = pos + len(rest) - len(rest.lstrip()) + 1
                    raise DSLError(f"unexpected character {rest.strip()[0]!r}", ln, col)
                break
            col = m.start(m.lastindex) + 1
            if m.group(3) is not None:
                toks.append(_Tok("name", m.group(3), ln, col))
            else:
                toks.append(_Tok("punct", m.group(m.lastindex), ln, col))
            pos = m.end()
        toks.append(_Tok("nl", "\n", ln, len(line) + 1))
    toks.append(_Tok("eof", "", len(text.splitlines()) + 1, 1))
    return toks


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise DSLError(msg, tok.line, tok.col)

    def next(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind == "name":
            self.error(f"expected {text!r}, found {self.tok.text!r}" if self.tok.kind != "nl"
                       else f"expected {text!r} before end of line")
        return self.next()

    def name(self, what: str = "name") -> _Tok:
        if self.tok.kind != "name":
            self.error(f"expected {what}")
        return self.next()

    def skip_nl(self):
        while self.tok.kind == "nl" or self.tok.text == ";" and self.tok.kind == "punct":
            self.i += 1

    def skip_layout(self):
        while self.tok.kind == "nl":
            self.i += 1

    def names_list(self) -> list[_Tok]:
        out = [self.name()]
        while self.tok.text == ",":
            self.next()
            out.append(self.name())
        return out

    def name_set(self) -> list[_Tok]:
        self.expect("{")
        self.skip_layout()
        out = []
        if self.tok.text != "}":
            out.append(self.name())
            self.skip_layout()
            while self.tok.text == ",":
                self.next()
                self.skip_layout()
                out.append(self.name())
                self.skip_layout()
        self.expect("}")
        return out

    def document(self) -> StructureDocument:
        doc = StructureDocument()
        seen = set()
        self.skip_nl()
        while self.tok.kind != "eof":
            kw = self.name("declaration keyword")
            if kw.text not in KINDS:
                self.error(f"unknown declaration {kw.text!r}", kw)
            nm = self.name("declaration name")
            if nm.text in seen:
                self.error(f"duplicate declaration {nm.text!r}", nm)
            seen.add(nm.text)
            self.skip_layout()
            self.expect("{")
            decl = self.block(kw, nm)
            doc.decls.append(decl)
            self.skip_nl()
        if not doc.decls:
            raise DSLError("no declarations")
        _check_references(doc)
        return doc

    # statements ------------------------------------------------------

    def block(self, kw: _Tok, nm: _Tok):
        kind = kw.text
        props: dict = {}
        table, mul, mapping, funcs = {}, {}, {}, {}
        orders, positions = [], {}
        section = None
        self.skip_nl()
        while self.tok.text != "}" or self.tok.kind != "punct":
            if self.tok.kind == "eof":
                self.error(f"unterminated block {nm.text!r}")
            start = self.tok
            if start.kind == "name" and self.peek().text == ":" and self.peek().kind == "punct":
                key = self.next().text
                self.next()
                if key in ("table", "mul", "map"):
                    section = key
                elif key == "elements":
                    props["elements"] = self.names_list()
                    section = None
                elif key in ("identity", "one", "domain", "codomain"):
                    props[key] = self.name()
                    section = None
                elif key == "order":
                    chain = [self.name()]
                    while self.tok.text == "<":
                        self.next()
                        chain.append(self.name())
                    orders.append(chain)
                    section = None
                elif key == "cone":
                    props["cone"] = self.names_list()
                    section = None
                elif kind == "functions":
                    if key in funcs:
                        self.error(f"function {key!r} defined twice", start)
                    funcs[key] = {}
                    section = ("fn", key)
                else:
                    self.error(f"unknown key {key!r} in {kind} block", start)
                # entries may follow the section header on the same statement
                if section is not None and self.tok.kind == "name":
                    self.entries(section, kind, table, mul, mapping, funcs, positions)
            elif start.kind == "name" and section is not None:
                self.entries(section, kind, table, mul, mapping, funcs, positions)
            else:
                self.error(f"unexpected {start.text!r}" if start.kind != "nl" else "unexpected line break", start)
            if self.tok.text == "}" and self.tok.kind == "punct":
                break
            if not (self.tok.kind == "nl" or self.tok.text == ";"):
                self.error(f"expected end of statement, found {self.tok.text!r}")
            self.skip_nl()
        self.expect("}")
        return _finish(kind, nm, props, table, mul, mapping, funcs, orders, positions)

    def entries(self, section, kind, table, mul, mapping, funcs, positions):
        while True:
            self.entry(section, kind, table, mul, mapping, funcs, positions)
            if self.tok.text == "," and self.tok.kind == "punct":
                self.next()
                continue
            break

    def entry(self, section, kind, table, mul, mapping, funcs, positions):
        a = self.name("element")
        if section in ("table", "mul"):
            op = self.tok
            if op.text not in ("*", "+") or op.kind != "punct":
                self.error("expected '*' or '+'")
            self.next()
            b = self.name("element")
            self.expect("=")
            key = (a.text, b.text)
            if section == "table":
                if kind == "functions" or kind == "valuation":
                    self.error("table entries only in structure blocks", a)
                vals = self.name_set()
                if key in table:
                    self.error(f"duplicate cell {a.text}*{b.text}", a)
                table[key] = frozenset(v.text for v in vals)
                positions[("table", key)] = a
                for v in vals:
                    positions.setdefault(("ref", v.text), v)
            else:
                if self.tok.text == "{":
                    vals = self.name_set()
                    if len(vals) != 1:
                        self.error("multiplication is single-valued", a)
                    val = vals[0]
                else:
                    val = self.name("element")
                if key in mul:
                    self.error(f"duplicate cell {a.text}*{b.text} in mul", a)
                mul[key] = val.text
                positions[("mul", key)] = a
                positions.setdefault(("ref", val.text), val)
            positions.setdefault(("ref", a.text), a)
            positions.setdefault(("ref", b.text), b)
        else:
            self.expect("->")
            v = self.name("value")
            target = mapping if section == "map" else funcs[section[1]]
            if a.text in target:
                self.error(f"duplicate entry for {a.text!r}", a)
            if section == "map":
                target[a.text] = v.text
            else:
                try:
                    target[a.text] = Fraction(v.text)
                except (ValueError, ZeroDivisionError):
                    self.error(f"not a rational number: {v.text!r}", v)
            positions[(section if section == "map" else "fn", a.text)] = a


def _finish(kind, nm, props, table, mul, mapping, funcs, orders, positions):
    span = (nm.line, nm.col)

    def err(msg, tok=None):
        tok = tok or nm
        raise DSLError(msg, tok.line, tok.col)

    if kind in STRUCTURE_KINDS:
        if "elements" not in props:
            err(f"{kind} {nm.text!r} has no elements")
        els = [t.text for t in props["elements"]]
        dup = next((t for i, t in enumerate(props["elements"]) if t.text in els[:i]), None)
        if dup:
            err(f"element {dup.text!r} declared twice", dup)
        declared = set(els)

        def known(tok):
            if tok.text not in declared:
                err(f"undeclared element {tok.text!r}", tok)

        if "identity" not in props:
            err(f"{kind} {nm.text!r} has no identity")
        known(props["identity"])
        for (what, key), tok in positions.items():
            if what == "ref":
                known(tok)
        for a in els:
            for b in els:
                if (a, b) not in table:
                    err(f"missing cell {a}*{b} in table of {nm.text!r}")
        if kind != "hypergroup":
            if "one" not in props:
                err(f"{kind} {nm.text!r} has no 'one'")
            known(props["one"])
            for a in els:
                for b in els:
                    if (a, b) not in mul:
                        err(f"missing cell {a}*{b} in mul of {nm.text!r}")
        elif mul:
            err("hypergroup blocks take no mul section")
        for chain in orders:
            for t in chain:
                known(t)
        cone = None
        if "cone" in props:
            for t in props["cone"]:
                known(t)
            cone = tuple(t.text for t in props["cone"])
        return StructureDecl(kind, nm.text, els, props["identity"].text, table,
                             props["one"].text if "one" in props else None, mul,
                             [tuple(t.text for t in c) for c in orders], cone, span)
    if kind == "valuation":
        for k in ("domain", "codomain"):
            if k not in props:
                err(f"valuation {nm.text!r} has no {k}")
        return ValuationDecl(nm.text, props["domain"].text, props["codomain"].text, mapping, span)
    if "domain" not in props:
        err(f"functions {nm.text!r} has no domain")
    return FunctionsDecl(nm.text, props["domain"].text, funcs, span)


def _check_references(doc: StructureDocument) -> None:
    structs = {d.name: d for d in doc.structures()}
    for d in doc.decls:
        line, col = d.span
        if isinstance(d, ValuationDecl):
            dom, cod = structs.get(d.domain), structs.get(d.codomain)
            if dom is None or dom.kind != "hyperfield":
                raise DSLError(f"valuation {d.name!r}: domain {d.domain!r} is not a declared hyperfield", line, col)
            if cod is None:
                raise DSLError(f"valuation {d.name!r}: codomain {d.codomain!r} is not declared", line, col)
            for x in d.mapping:
                if x not in dom.elements:
                    raise DSLError(f"valuation {d.name!r}: undeclared element {x!r}", line, col)
            for v in d.mapping.values():
                if v != "inf" and v not in cod.elements:
                    raise DSLError(f"valuation {d.name!r}: undeclared value {v!r}", line, col)
            missing = [x for x in dom.elements if x not in d.mapping]
            if missing:
                raise DSLError(f"valuation {d.name!r}: no value for {missing[0]!r}", line, col)
        elif isinstance(d, FunctionsDecl):
            dom = structs.get(d.domain)
            if dom is None:
                raise DSLError(f"functions {d.name!r}: domain {d.domain!r} is not declared", line, col)
            for fname, vals in d.functions.items():
                for x in vals:
                    if x not in dom.elements:
                        raise DSLError(f"function {fname!r}: undeclared element {x!r}", line, col)
                missing = [x for x in dom.elements if x not in vals]
                if missing:
                    raise DSLError(f"function {fname!r}: no value for {missing[0]!r}", line, col)


def parse(text: str) -> StructureDocument:
    return _Parser(text).document()


# ---------------------------------------------------------------- serializer

def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize(doc: StructureDocument) -> str:
    blocks = []
    for d in doc.decls:
        if isinstance(d, StructureDecl):
            op = "*" if d.kind == "hypergroup" else "+"
            pos = {x: i for i, x in enumerate(d.elements)}
            lines = [f"{d.kind} {d.name} {{", f"  elements: {', '.join(d.elements)}", f"  identity: {d.identity}"]
            if d.one is not None:
                lines.append(f"  one: {d.one}")
            lines.append("  table:")
            for a in d.elements:
                for b in d.elements:
                    vals = sorted(d.table[a, b], key=pos.__getitem__)
                    lines.append(f"    {a}{op}{b} = {{{', '.join(vals)}}}")
            if d.kind != "hypergroup":
                lines.append("  mul:")
                for a in d.elements:
                    for b in d.elements:
                        lines.append(f"    {a}*{b} = {d.mul[a, b]}")
            for chain in d.orders:
                lines.append(f"  order: {' < '.join(chain)}")
            if d.cone is not None:
                lines.append(f"  cone: {', '.join(d.cone)}")
        elif isinstance(d, ValuationDecl):
            lines = [f"valuation {d.name} {{", f"  domain: {d.domain}", f"  codomain: {d.codomain}", "  map:"]
            lines += [f"    {x} -> {v}" for x, v in d.mapping.items()]
        else:
            lines = [f"functions {d.name} {{", f"  domain: {d.domain}"]
            for fname, vals in d.functions.items():
                lines.append(f"  {fname}: " + ", ".join(f"{x} -> {_fmt_q(q)}" for x, q in vals.items()))
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
