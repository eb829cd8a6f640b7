"""Minimal DOT syntax checker for the digraph subset the exporter emits.

Validates token structure only (no graphviz dependency): a ``digraph`` with
an id, brace-balanced body, and statements that are either attribute
assignments, node statements, or edge statements with optional [key=value]
attribute lists.
"""

import re

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<arrow>->) |
        (?P<punct>[{}\[\];=,]) |
        (?P<quoted>"(?:\\.|[^"\\])*") |
        (?P<word>[A-Za-z0-9_.\-]+)
    )""",
    re.VERBOSE,
)


def tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise AssertionError(f"bad DOT character at {pos}: {text[pos]!r}")
        out.append(m.group().strip())
        pos = m.end()
    return out


class _Stream:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        assert tok is not None, "unexpected end of DOT input"
        if expected is not None:
            assert tok == expected, f"expected {expected!r}, found {tok!r}"
        self.i += 1
        return tok


def _is_id(tok):
    return tok is not None and (tok.startswith('"') or re.fullmatch(r"[A-Za-z0-9_.\-]+", tok))


def _attr_list(s):
    s.take("[")
    while s.peek() != "]":
        assert _is_id(s.peek()), f"attribute key expected, found {s.peek()!r}"
        s.take()
        s.take("=")
        assert _is_id(s.peek()), f"attribute value expected, found {s.peek()!r}"
        s.take()
        if s.peek() in (",", ";"):
            s.take()
    s.take("]")


def check_dot(text: str) -> None:
    """Assert that ``text`` is a well-formed digraph document."""
    s = _Stream(tokenize(text))
    s.take("digraph")
    assert _is_id(s.peek())
    s.take()
    s.take("{")
    while s.peek() != "}":
        assert _is_id(s.peek()), f"statement must start with an id, found {s.peek()!r}"
        s.take()
        if s.peek() == "=":  # graph attribute like rankdir=BT
            s.take("=")
            assert _is_id(s.peek())
            s.take()
        elif s.peek() == "->":
            s.take("->")
            assert _is_id(s.peek())
            s.take()
            if s.peek() == "[":
                _attr_list(s)
        elif s.peek() == "[":
            _attr_list(s)
        if s.peek() == ";":
            s.take(";")
    s.take("}")
    assert s.peek() is None, f"trailing tokens after closing brace: {s.peek()!r}"
