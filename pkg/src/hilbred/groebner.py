"""Buchberger's algorithm, normal forms and standard monomials.

Internally a monomial is a single Python int: the value of a linear
functional on the exponent vector chosen so that integer comparison agrees
with the term order.  Because the encoding is linear, multiplying monomials
is integer addition, which keeps the inner reduction loop cheap.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .ring import DEGREVLEX, AmbientRing, Monomial, Polynomial, TermOrder

_W = 16
_B = 1 << _W
_MAXEXP = (1 << (_W - 1)) - 1


class _Codec:
    """Order-preserving linear encoding of monomials in ``n`` variables."""

    def __init__(self, n: int, order: TermOrder):
        self.n = n
        self.order = order
        self.guard = sum((1 << (_W - 1)) << (_W * i) for i in range(n))
        self.fieldmask = _B - 1
        if order.kind == "degrevlex":
            self.blocks = [n]
        else:
            if not 0 < order.block < n:
                raise ValueError("elimination block must leave variables on both sides")
            self.blocks = [order.block, n - order.block]
        # weights: Q = sum e_i * w_i
        weights = []
        scale = 1
        block_scales = []
        for size in reversed(self.blocks):
            block_scales.append(scale)
            scale *= _B ** (size + 1)
        block_scales.reverse()
        for size, s in zip(self.blocks, block_scales):
            top = _B**size
            weights.extend(s * (top - _B**i) for i in range(size))
        self.weights = weights
        self.block_scales = block_scales
        self._packed: dict[int, int] = {}

    def encode(self, m: Monomial) -> int:
        if any(e > _MAXEXP for e in m):
            raise OverflowError("exponent too large for the monomial encoding")
        return sum(e * w for e, w in zip(m, self.weights))

    def packed(self, q: int) -> int:
        """Exponents packed in W-bit fields (variable i in field i)."""
        if len(self.blocks) == 1:
            return (-q) & (_B**self.n - 1)
        e = self._packed.get(q)
        if e is not None:
            return e
        e = 0
        shift = 0
        rest = q
        for size, s in zip(self.blocks, self.block_scales):
            half = s // 2
            qb = (rest + half) // s
            rest -= qb * s
            e |= ((-qb) & (_B**size - 1)) << shift
            shift += _W * size
        self._packed[q] = e
        return e

    def decode(self, q: int) -> Monomial:
        e = self.packed(q)
        return tuple((e >> (_W * i)) & self.fieldmask for i in range(self.n))

    def divides(self, ea: int, eb: int) -> bool:
        g = self.guard
        return ((eb | g) - ea) & g == g

    def degree(self, q: int) -> int:
        e = self.packed(q)
        return sum((e >> (_W * i)) & self.fieldmask for i in range(self.n))

    def lcm(self, ea: int, eb: int) -> int:
        out = 0
        m = self.fieldmask
        for i in range(self.n):
            s = _W * i
            out |= max((ea >> s) & m, (eb >> s) & m) << s
        return out

    def coprime(self, ea: int, eb: int) -> bool:
        m = self.fieldmask
        for i in range(self.n):
            s = _W * i
            if (ea >> s) & m and (eb >> s) & m:
                return False
        return True

    def encode_packed(self, e: int) -> int:
        return self.encode(tuple((e >> (_W * i)) & self.fieldmask for i in range(self.n)))


@lru_cache(maxsize=None)
def codec(n: int, order: TermOrder) -> _Codec:
    return _Codec(n, order)


def _to_internal(f: Polynomial, cd: _Codec) -> dict[int, int]:
    return {cd.encode(m): c for m, c in f.terms.items()}


def _from_internal(t: dict[int, int], ring: AmbientRing, cd: _Codec) -> Polynomial:
    return Polynomial(ring, {cd.decode(q): c for q, c in t.items()}, clean=False)


def _monic(t: dict[int, int], p: int) -> dict[int, int]:
    lc = t[max(t)]
    if lc == 1:
        return t
    inv = pow(lc, -1, p)
    return {q: c * inv % p for q, c in t.items()}


class _Reducer:
    """A growing set of monic reducers with divisor lookup by leading monomial."""

    def __init__(self, cd: _Codec, p: int):
        self.cd = cd
        self.p = p
        self.lm: list[int] = []
        self.lme: list[int] = []
        self.lmdeg: list[int] = []
        self.tail: list[list[tuple[int, int]]] = []
        self.alive: list[bool] = []
        self._memo: dict[int, tuple[int, int]] = {}

    def add(self, t: dict[int, int]) -> int:
        lm = max(t)
        idx = len(self.lm)
        self.lm.append(lm)
        e = self.cd.packed(lm)
        self.lme.append(e)
        self.lmdeg.append(self.cd.degree(lm))
        self.tail.append([(q, c) for q, c in t.items() if q != lm])
        self.alive.append(True)
        return idx

    def kill(self, idx: int):
        self.alive[idx] = False

    def poly(self, idx: int) -> dict[int, int]:
        t = dict(self.tail[idx])
        t[self.lm[idx]] = 1
        return t

    def find(self, q: int) -> int:
        hit = self._memo.get(q)
        n = len(self.lm)
        start = 0
        if hit is not None:
            idx, seen = hit
            if idx >= 0 and self.alive[idx]:
                return idx
            if idx < 0:
                start = seen
        e = self.cd.packed(q)
        g = self.cd.guard
        eg = e | g
        alive = self.alive
        lme = self.lme
        for i in range(start, n):
            if alive[i] and (eg - lme[i]) & g == g:
                self._memo[q] = (i, n)
                return i
        self._memo[q] = (-1, n)
        return -1

    def reduce(self, f: dict[int, int], full: bool = True) -> dict[int, int]:
        p = self.p
        f = dict(f)
        out: dict[int, int] = {}
        find = self.find
        lms = self.lm
        tails = self.tail
        while f:
            m = max(f)
            c = f.pop(m)
            i = find(m)
            if i < 0:
                out[m] = c
                if not full:
                    out.update(f)
                    return out
                continue
            shift = m - lms[i]
            for q, gc in tails[i]:
                k = q + shift
                v = (f.get(k, 0) - c * gc) % p
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
        return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis (monic elements, sorted by leading monomial, descending)."""

    ring: AmbientRing
    order: TermOrder
    elements: tuple[Polynomial, ...]
    _internal: tuple = field(default=(), repr=False, compare=False)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].total_degree() == 0

    def is_zero(self) -> bool:
        return not self.elements

    def reducer(self) -> _Reducer:
        cd = codec(self.ring.nvars, self.order)
        red = _Reducer(cd, self.ring.characteristic)
        for t in self._internal:
            red.add(t)
        return red

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of full multivariate division of ``f`` by ``G``."""
    if not f.ring.compatible(G.ring):
        raise ValueError("ring mismatch")
    if not f.terms:
        return f
    cd = codec(G.ring.nvars, G.order)
    red = _cached_reducer(G)
    return _from_internal(red.reduce(_to_internal(f, cd)), f.ring, cd)


_REDUCERS: dict[int, tuple[GroebnerBasis, _Reducer]] = {}


def _cached_reducer(G: GroebnerBasis) -> _Reducer:
    hit = _REDUCERS.get(id(G))
    if hit is not None and hit[0] is G:
        return hit[1]
    red = G.reducer()
    if len(_REDUCERS) > 512:
        _REDUCERS.clear()
    _REDUCERS[id(G)] = (G, red)
    return red


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = DEGREVLEX) -> Polynomial:
    from .ring import mono_div, mono_lcm

    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = mono_lcm(lf, lg)
    p = f.ring.characteristic
    a = f.mul_monomial(mono_div(L, lf), pow(f.terms[lf], -1, p))
    b = g.mul_monomial(mono_div(L, lg), pow(g.terms[lg], -1, p))
    return a - b


def _canonical(polys: Iterable[dict[int, int]]) -> list[dict[int, int]]:
    uniq = {}
    for t in polys:
        key = tuple(sorted(t.items(), reverse=True))
        uniq[key] = t
    return [uniq[k] for k in sorted(uniq)]


def buchberger(
    gens: Sequence[Polynomial],
    order: TermOrder = DEGREVLEX,
    ring: AmbientRing | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy with Buchberger's coprime and chain criteria
    (Gebauer-Moeller installation).
    """
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if not g.ring.compatible(ring):
            raise ValueError("ring mismatch among generators")
    cd = codec(ring.nvars, order)
    p = ring.characteristic
    inputs = _canonical(_monic(_to_internal(g, cd), p) for g in gens if g.terms)
    internal = _buchberger_internal(inputs, cd, p)
    elements = tuple(_from_internal(t, ring, cd) for t in internal)
    return GroebnerBasis(ring, order, elements, tuple(internal))


def _buchberger_internal(inputs: list[dict[int, int]], cd: _Codec, p: int) -> list[dict[int, int]]:
    red = _Reducer(cd, p)
    G: list[int] = []  # indices of the current minimal basis
    heap: list[tuple[int, int, int, int]] = []  # (sugar, lcm key, i, j)
    sugar: list[int] = []  # degree each element would have after homogenizing the input
    live: dict[tuple[int, int], int] = {}  # pair -> packed lcm
    lme = red.lme
    divides = cd.divides
    lcm = cd.lcm

    def update(h: int):
        nonlocal G
        eh = lme[h]
        cand = [(g, lcm(eh, lme[g]), cd.coprime(eh, lme[g])) for g in G]
        accepted: list[tuple[int, int, bool]] = []
        for idx, (g, L, cop) in enumerate(cand):
            if not cop:
                others = [c[1] for c in cand[idx + 1 :]] + [a[1] for a in accepted]
                if any(divides(L2, L) for L2 in others):
                    continue
            accepted.append((g, L, cop))
        for pr, L in list(live.items()):
            if divides(eh, L):
                i, j = pr
                if L != lcm(lme[i], eh) and L != lcm(lme[j], eh):
                    del live[pr]
        for g, L, cop in accepted:
            if cop:
                continue
            live[(g, h)] = L
            key = cd.encode_packed(L)
            deg = cd.degree(key)
            sug = max(sugar[g] - red.lmdeg[g], sugar[h] - red.lmdeg[h]) + deg
            heapq.heappush(heap, (sug, key, g, h))
        keep = []
        for g in G:
            if divides(eh, lme[g]):
                red.kill(g)
            else:
                keep.append(g)
        G = keep + [h]

    def insert(r: dict[int, int], sug: int) -> bool:
        if len(r) == 1 and cd.degree(max(r)) == 0:
            return True
        h = red.add(_monic(r, p))
        sugar.append(max(sug, red.lmdeg[h]))
        update(h)
        return False

    for t in inputs:
        r = red.reduce(t)
        if r and insert(r, max(cd.degree(q) for q in t)):
            return [{0: 1}]

    while heap:
        sug, q, i, j = heapq.heappop(heap)
        if live.pop((i, j), None) is None:
            continue
        si = q - red.lm[i]
        sj = q - red.lm[j]
        s: dict[int, int] = {k + si: c for k, c in red.tail[i]}
        for k, c in red.tail[j]:
            kk = k + sj
            v = (s.get(kk, 0) - c) % p
            if v:
                s[kk] = v
            else:
                s.pop(kk, None)
        if not s:
            continue
        r = red.reduce(s)
        if r and insert(r, sug):
            return [{0: 1}]

    basis = sorted(G, key=lambda i: red.lm[i], reverse=True)
    final = _Reducer(cd, p)
    for i in basis:
        final.add(red.poly(i))
    out = []
    for i in basis:
        t = final.reduce(dict(red.tail[i])) if red.tail[i] else {}
        t[red.lm[i]] = 1
        out.append(t)
    return out


def is_groebner(G: GroebnerBasis) -> bool:
    """Check that every S-polynomial of ``G`` reduces to zero."""
    els = list(G.elements)
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            s = s_polynomial(els[a], els[b], G.order)
            if normal_form(s, G).terms:
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials
    from .ring import mono_divides

    for g, lm in zip(G.elements, lms):
        if g.terms[lm] != 1:
            return False
        for h, lh in zip(G.elements, lms):
            if h is g:
                continue
            if any(mono_divides(lh, m) for m in g.terms):
                return False
    return True


INFINITE = "infinite"


def standard_monomials(G: GroebnerBasis):
    """Monomials outside the leading ideal, or ``INFINITE``."""
    n = G.ring.nvars
    if G.is_unit():
        return []
    lms = G.leading_monomials
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if all(m[j] == 0 for j in range(n) if j != i) and m[i] > 0]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    from .ring import mono_divides

    out = []
    for e in _cartesian(*(range(b) for b in bounds)):
        if not any(mono_divides(l, e) for l in lms):
            out.append(tuple(e))
    return sorted(out, key=G.order.key)


def count_standard_monomials(G: GroebnerBasis) -> int | None:
    """Number of standard monomials (None when infinite), by staircase recursion."""
    n = G.ring.nvars
    if G.is_unit():
        return 0
    lms = G.leading_monomials
    for i in range(n):
        if not any(m[i] > 0 and all(m[j] == 0 for j in range(n) if j != i) for m in lms):
            return None
    return _count_outside(tuple(sorted(set(lms))), n)


def _count_outside(gens: tuple, n: int) -> int:
    # number of monomials not divisible by any generator; all axes bounded
    if n == 1:
        return min(g[0] for g in gens)
    # slice by the last exponent
    top = min(g[-1] for g in gens if all(x == 0 for x in g[:-1]))
    total = 0
    prev_key = None
    prev_val = 0
    for k in range(top):
        proj = tuple(sorted({g[:-1] for g in gens if g[-1] <= k}))
        proj = _minimalize(proj)
        if proj == prev_key:
            total += prev_val
            continue
        val = _count_outside(proj, n - 1)
        prev_key, prev_val = proj, val
        total += val
    return total


def _minimalize(gens) -> tuple:
    out = []
    for g in sorted(gens, key=sum):
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))
