"""Exact multivariate polynomials over a prime field F_p.

Monomials are exponent tuples; a polynomial is an immutable map from
monomials to nonzero residues mod p.  Two term orders are supported:
degrevlex and a block elimination order that eliminates the first ``k``
variables and compares the remaining ones by degrevlex.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

DEFAULT_CHARACTERISTIC = int(os.environ.get("HILBRED_CHAR", "32003"))

Monomial = tuple  # tuple[int, ...]


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.reason = message
        self.pos = pos
        self.text = text


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class TermOrder:
    """``degrevlex`` or ``elim`` (block elimination of the first ``block`` variables)."""

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "elim"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs block >= 1")

    def key(self, m: Monomial) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind == "degrevlex":
            return _drl_key(m)
        k = self.block
        return _drl_key(m[:k]) + _drl_key(m[k:])


DEGREVLEX = TermOrder()


def elimination(k: int) -> TermOrder:
    return TermOrder("elim", k)


def _drl_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


def monomial_cmp(a: Monomial, b: Monomial, order: TermOrder = DEGREVLEX) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"exponent length mismatch: {len(a)} vs {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class AmbientRing:
    """F_p[variables] / (relations).

    ``relations`` is empty except for quotient rings produced when working
    modulo superficial elements.
    """

    variables: tuple[str, ...]
    characteristic: int = DEFAULT_CHARACTERISTIC
    relations: tuple = field(default=(), compare=True)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def dim(self) -> int:
        """Krull dimension of the local ring, assuming the relations form a regular sequence."""
        return self.nvars - len(self.relations)

    @cached_property
    def base(self) -> "AmbientRing":
        if not self.relations:
            return self
        return AmbientRing(self.variables, self.characteristic)

    def compatible(self, other: "AmbientRing") -> bool:
        return self.variables == other.variables and self.characteristic == other.characteristic

    def quotient(self, relations: Iterable["Polynomial"]) -> "AmbientRing":
        rels = tuple(self.relations) + tuple(r.rehome(self.base) for r in relations)
        return AmbientRing(self.variables, self.characteristic, rels)

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.characteristic
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent length does not match the ring")
        c = coeff % self.characteristic
        return Polynomial(self, {exps: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        try:
            return self.gen(self.variables.index(name))
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def __repr__(self):
        s = f"F_{self.characteristic}[{', '.join(self.variables)}]"
        if self.relations:
            s += f"/({', '.join(str(r) for r in self.relations)})"
        return s


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: AmbientRing, terms: Mapping[Monomial, int], *, clean: bool = True):
        self.ring = ring
        if clean:
            p = ring.characteristic
            n = ring.nvars
            t = {}
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("exponent length does not match the ring")
                c %= p
                if c:
                    t[tuple(m)] = c
            terms = t
        self.terms = terms
        self._hash = None

    # structure ----------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if not self.ring.compatible(other.ring):
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def rehome(self, ring: AmbientRing) -> "Polynomial":
        if ring is self.ring:
            return self
        self._check(Polynomial(ring, {}, clean=False))
        return Polynomial(ring, self.terms, clean=False)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.sorted_terms())

    def sorted_terms(self, order: TermOrder = DEGREVLEX) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading_monomial(self, order: TermOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: TermOrder = DEGREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        c = self.leading_coefficient(order)
        if c == 1:
            return self
        return self.scale(pow(c, -1, self.ring.characteristic))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(self.ring, t, clean=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.characteristic
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()}, clean=False)

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Polynomial":
        p = self.ring.characteristic
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(m, mono): v * c % p for m, v in self.terms.items()}, clean=False
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        t: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                t[m] = (t.get(m, 0) + ca * cb) % p
        return Polynomial(self.ring, {m: c for m, c in t.items() if c}, clean=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide_by(self, g: "Polynomial", order: TermOrder = DEGREVLEX) -> "Polynomial":
        """Exact quotient ``self / g``; raises if ``g`` does not divide ``self``."""
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.ring.characteristic
        lm = g.leading_monomial(order)
        inv = pow(g.terms[lm], -1, p)
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=order.key)
            if not mono_divides(lm, m):
                raise ValueError("polynomial division is not exact")
            q = mono_div(m, lm)
            c = rem[m] * inv % p
            quot[q] = c
            for gm, gc in g.terms.items():
                t = mono_mul(gm, q)
                v = (rem.get(t, 0) - c * gc) % p
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(self.ring, quot, clean=False)

    # comparison / display -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.compatible(other.ring) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def format_monomial(m: Monomial, names: tuple[str, ...]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    """Render in the input grammar; coefficients printed in (-p/2, p/2]."""
    if not f.terms:
        return "0"
    p = f.ring.characteristic
    out = []
    for m, c in f.sorted_terms():
        if c > p // 2:
            sign, c = "-", p - c
        else:
            sign = "+"
        mono = format_monomial(m, f.ring.variables)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: AmbientRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        f = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "name") or tok[1] == "(":
                self.error("juxtaposition is not allowed; use '*'")
            self.error(f"unexpected {tok[1]!r}")
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek() == ("op", "*", self.peek()[2]):
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            f = self.factor()
            return -f if tok[1] == "-" else f
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("expected integer exponent", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok[0] == "int":
            return self.ring.const(int(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.ring.variables:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], self.text)
            return self.ring.var(tok[1])
        if tok == ("op", "(", tok[2]):
            f = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close)
            return f
        if tok[0] == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {tok[1]!r}", tok)


def parse_poly(text: str, ring: AmbientRing) -> Polynomial:
    """Parse ``text`` (``^`` powers, explicit ``*``, ``+``/``-``, parentheses)."""
    return _Parser(text, ring.base).parse().rehome(ring)
