"""Input files:

    ring { char = 32003; vars = x, y; }
    ideal I = x^6, y^6, x^5*y + x^2*y^4;
    reduction J1 = x^6, x^5*y + y^6;

A ``reduction`` block attaches a named candidate reduction to the ideal
defined most recently before it.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ideal import Ideal
from .ring import AmbientRing, ParseError, DEFAULT_CHARACTERISTIC


class InputError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.reason = message
        self.line = line
        self.col = col


@dataclass
class IdealDef:
    name: str
    ideal: Ideal
    sources: tuple[str, ...]
    reductions: list[tuple[str, Ideal]] = field(default_factory=list)


@dataclass
class JobSpec:
    ring: AmbientRing
    ideals: list[IdealDef]

    def ideal(self, name: str) -> IdealDef:
        for d in self.ideals:
            if d.name == name:
                return d
        raise KeyError(name)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"[0-9]+")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, message: str, pos: int | None = None):
        raise InputError(message, *self.where(pos))

    def skip(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "#":
                nl = self.text.find("\n", self.pos)
                self.pos = len(self.text) if nl < 0 else nl
            else:
                break

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek_word(self) -> str | None:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        return m.group() if m else None

    def word(self, what: str = "a name") -> str:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.fail(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def keyword(self, kw: str):
        start = self.pos
        if self.word(f"'{kw}'") != kw:
            self.fail(f"expected '{kw}'", start)

    def symbol(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.fail(f"expected '{s}'")
        self.pos += len(s)

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def until(self, stop: str) -> tuple[str, int]:
        end = self.text.find(stop, self.pos)
        if end < 0:
            self.fail(f"missing '{stop}'")
        start = self.pos
        self.pos = end + len(stop)
        return self.text[start:end], start


def _split_top(body: str) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((body[start:i], start))
            start = i + 1
    parts.append((body[start:], start))
    return parts


def _parse_ring(cur: _Cursor, default_char: int) -> AmbientRing:
    cur.keyword("ring")
    cur.symbol("{")
    char, names = default_char, None
    while True:
        cur.skip()
        if cur.text.startswith("}", cur.pos):
            cur.pos += 1
            break
        key_pos = cur.pos
        key = cur.word("'char' or 'vars'")
        cur.symbol("=")
        if key == "char":
            num_pos = cur.pos
            char = cur.integer()
            cur.symbol(";")
            from .ring import is_prime

            if not is_prime(char):
                cur.fail(f"characteristic {char} is not prime", num_pos)
        elif key == "vars":
            names = [cur.word("a variable name")]
            while True:
                cur.skip()
                if cur.text.startswith(",", cur.pos):
                    cur.pos += 1
                    names.append(cur.word("a variable name"))
                else:
                    break
            cur.symbol(";")
        else:
            cur.fail(f"unknown ring field '{key}'", key_pos)
    if not names:
        cur.fail("ring block declares no variables")
    if len(set(names)) != len(names):
        cur.fail("duplicate variable name")
    return AmbientRing(tuple(names), char)


def _parse_list(cur: _Cursor, ring: AmbientRing) -> tuple[list, list[str]]:
    body, start = cur.until(";")
    if not body.strip():
        cur.fail("no generators", start)
    polys, sources = [], []
    for piece, off in _split_top(body):
        if not piece.strip():
            cur.fail("empty generator", start + off)
        try:
            polys.append(ring.parse(piece))
        except ParseError as exc:
            cur.fail(exc.reason, start + off + exc.pos)
        sources.append(piece.strip())
    return polys, sources


def parse_input(text: str, default_char: int = DEFAULT_CHARACTERISTIC) -> JobSpec:
    cur = _Cursor(text)
    if cur.at_end():
        cur.fail("empty input")
    ring = _parse_ring(cur, default_char)
    ideals: list[IdealDef] = []
    seen = set()
    while not cur.at_end():
        kw_pos = cur.pos
        kw = cur.word("'ideal' or 'reduction'")
        if kw not in ("ideal", "reduction"):
            cur.fail(f"expected 'ideal' or 'reduction', found '{kw}'", kw_pos)
        name_pos = cur.pos
        name = cur.word("a name")
        cur.symbol("=")
        polys, sources = _parse_list(cur, ring)
        if kw == "ideal":
            if name in seen:
                cur.fail(f"ideal '{name}' defined twice", name_pos)
            seen.add(name)
            ideals.append(IdealDef(name, Ideal(ring, polys, name=name), tuple(sources)))
        else:
            if not ideals:
                cur.fail("reduction given before any ideal", kw_pos)
            ideals[-1].reductions.append((name, Ideal(ring, polys, name=name)))
    if not ideals:
        cur.fail("no ideal defined")
    return JobSpec(ring, ideals)


def render_input(ring: AmbientRing, name: str, gens, reductions=()) -> str:
    """The inverse of parse_input for one ideal (used for reproduction files)."""
    lines = [f"ring {{ char = {ring.characteristic}; vars = {', '.join(ring.variables)}; }}",
             f"ideal {name} = {', '.join(str(g) for g in gens)};"]
    for rname, rg in reductions:
        lines.append(f"reduction {rname} = {', '.join(str(g) for g in rg)};")
    return "\n".join(lines) + "\n"
