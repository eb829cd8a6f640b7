"""Decision-logic formulas: atoms over (attribute, relation, value) triples
combined with &, | and !.

Concrete grammar (whitespace insignificant outside quotes)::

    formula := or
    or      := and ('|' and)*
    and     := not ('&' not)*
    not     := '!' not | '(' formula ')' | atom
    atom    := '(' name rel name ')'
    rel     := '=' | '!='
    name    := bare-word | double-quoted string

A bare word is any run of characters excluding whitespace and ``( ) " & | ! =``.
Quoted names may contain anything; backslash escapes the next character.

Satisfaction against a table is set-valued: an atom (a, =, v) selects the
objects whose cell for ``a`` contains ``v``; (a, !=, v) selects objects whose
cell is non-empty and excludes ``v`` (so a missing cell satisfies neither
form, and !(a = v) differs from (a != v) on missing cells by design).
"""

import re
from dataclasses import dataclass
from typing import Union

from .errors import FormulaSyntaxError, UnknownAttribute, UnsupportedRelation
from .table import EQ, NEQ, InformationTable

RELATIONS = (EQ, NEQ)

Formula = Union["Atom", "And", "Or", "Not"]


@dataclass(frozen=True)
class Atom:
    attribute: str
    relation: str
    value: str


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not:
    operand: Formula


_BARE = re.compile(r'[^\s()"&|!=]+')


def _quote(name: str) -> str:
    if name and _BARE.fullmatch(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def canonical_text(f: Formula) -> str:
    """Deterministic fully parenthesized rendering; equal ASTs render
    identically and the text re-parses to the same AST."""
    if isinstance(f, Atom):
        return f"({_quote(f.attribute)} {f.relation} {_quote(f.value)})"
    if isinstance(f, And):
        return f"({canonical_text(f.left)} & {canonical_text(f.right)})"
    if isinstance(f, Or):
        return f"({canonical_text(f.left)} | {canonical_text(f.right)})"
    if isinstance(f, Not):
        return f"!{canonical_text(f.operand)}"
    raise TypeError(f"not a formula node: {f!r}")


# --- lexer ----------------------------------------------------------------

_PUNCT = {"(": "(", ")": ")", "&": "&", "|": "|"}


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind  # one of ( ) & | ! = != name eof
        self.text = text
        self.pos = pos  # character offset into the source


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            toks.append(_Token(c, c, i))
            i += 1
        elif c == "!":
            if i + 1 < n and text[i + 1] == "=":
                toks.append(_Token("!=", "!=", i))
                i += 2
            else:
                toks.append(_Token("!", "!", i))
                i += 1
        elif c == "=":
            toks.append(_Token("=", "=", i))
            i += 1
        elif c == '"':
            start = i
            i += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    buf.append(text[i + 1])
                    i += 2
                else:
                    buf.append(text[i])
                    i += 1
            if i >= n:
                raise FormulaSyntaxError(
                    "unterminated quoted name",
                    offset=_byte_offset(text, start),
                    expected=['"'],
                )
            i += 1
            toks.append(_Token("name", "".join(buf), start))
        else:
            m = _BARE.match(text, i)
            if not m:
                raise FormulaSyntaxError(
                    f"unexpected character {c!r}",
                    offset=_byte_offset(text, i),
                    expected=["name"],
                )
            toks.append(_Token("name", m.group(), i))
            i = m.end()
    toks.append(_Token("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self, *kinds: str) -> _Token:
        tok = self.toks[self.i]
        if tok.kind not in kinds:
            self.fail(tok, kinds)
        self.i += 1
        return tok

    def fail(self, tok: _Token, kinds: tuple[str, ...]):
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        expected = sorted(kinds)
        raise FormulaSyntaxError(
            f"expected one of {expected}, found {found}",
            offset=_byte_offset(self.text, tok.pos),
            expected=expected,
        )

    def formula(self) -> Formula:
        node = self.conjunction()
        while self.peek().kind == "|":
            self.take("|")
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.negation()
        while self.peek().kind == "&":
            self.take("&")
            node = And(node, self.negation())
        return node

    def negation(self) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.take("!")
            return Not(self.negation())
        if tok.kind != "(":
            self.fail(tok, ("(", "!"))
        self.take("(")
        inner = self.peek()
        if inner.kind == "name":
            attr = self.take("name").text
            rel = self.take("=", "!=").kind
            value = self.take("name").text
            self.take(")")
            return Atom(attr, rel, value)
        if inner.kind in ("(", "!"):
            node = self.formula()
            self.take(")")
            return node
        self.fail(inner, ("name", "(", "!"))
        raise AssertionError("unreachable")


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into an AST; precedence ! > & > |, parentheses group.

    Raises FormulaSyntaxError carrying the byte offset and the expected-token
    set of the first failure.
    """
    p = _Parser(text)
    node = p.formula()
    p.take("eof")
    return node


def attributes_of(f: Formula) -> set[str]:
    """All attribute names mentioned in the formula."""
    if isinstance(f, Atom):
        return {f.attribute}
    if isinstance(f, (And, Or)):
        return attributes_of(f.left) | attributes_of(f.right)
    if isinstance(f, Not):
        return attributes_of(f.operand)
    raise TypeError(f"not a formula node: {f!r}")


def evaluate(f: Formula, table: InformationTable) -> frozenset[str]:
    """Meaning set of ``f``: the objects of ``table`` satisfying it."""
    if isinstance(f, Atom):
        if f.attribute not in table.attributes:
            raise UnknownAttribute(
                f"unknown attribute {f.attribute!r}", attribute=f.attribute
            )
        if f.relation not in table.relations[f.attribute]:
            raise UnsupportedRelation(
                f"relation {f.relation!r} not supported on {f.attribute!r}",
                relation=f.relation,
                attribute=f.attribute,
            )
        if f.relation == EQ:
            return frozenset(
                x for x in table.universe if f.value in table.cells[(x, f.attribute)]
            )
        return frozenset(
            x
            for x in table.universe
            if table.cells[(x, f.attribute)] and f.value not in table.cells[(x, f.attribute)]
        )
    if isinstance(f, And):
        return evaluate(f.left, table) & evaluate(f.right, table)
    if isinstance(f, Or):
        return evaluate(f.left, table) | evaluate(f.right, table)
    if isinstance(f, Not):
        return frozenset(table.universe) - evaluate(f.operand, table)
    raise TypeError(f"not a formula node: {f!r}")
