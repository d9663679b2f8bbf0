"""Degree-truncated noncommutative power series with exact rational coefficients.

A series over x_1..x_m is stored as a sparse map word -> Fraction holding every
coefficient of degree <= cap. Products silently drop terms above the cap;
asking for a coefficient above the cap raises :class:`QueryBeyondCap`.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import AlphabetMismatch, NotInvertible, QueryBeyondCap
from .words import Word, check_letters, degree, format_word, parse_word, sort_key


@lru_cache(maxsize=None)
def _shuffle_words(u: Word, v: Word) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    for w, c in _shuffle_words(u[1:], v):
        out[(u[0],) + w] += c
    for w, c in _shuffle_words(u, v[1:]):
        out[(v[0],) + w] += c
    return tuple(out.items())


def shuffle_words(u: Word, v: Word) -> dict:
    """Shuffle of two words as a map word -> multiplicity."""
    if u > v:
        u, v = v, u
    return dict(_shuffle_words(tuple(u), tuple(v)))


def _frac(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, float):
        raise TypeError("series coefficients must be exact; got float")
    return Fraction(q)


class NCSeries:
    """Truncated series sum_w <c, w> w over words of degree <= cap."""

    __slots__ = ("m", "cap", "_terms")

    def __init__(self, m: int, cap: int, terms: Mapping | Iterable = ()):
        if m < 1:
            raise ValueError("alphabet size must be >= 1")
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.m = m
        self.cap = cap
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for w, q in items:
            w = check_letters(w, m)
            if degree(w) > cap:
                continue
            q = _frac(q)
            if q:
                clean[w] = clean.get(w, 0) + q
        self._terms = {w: q for w, q in clean.items() if q}

    # -- construction ----------------------------------------------------
    @classmethod
    def _raw(cls, m: int, cap: int, terms: dict) -> NCSeries:
        obj = cls.__new__(cls)
        obj.m, obj.cap = m, cap
        obj._terms = {w: q for w, q in terms.items() if q}
        return obj

    @classmethod
    def zero(cls, m: int, cap: int) -> NCSeries:
        return cls._raw(m, cap, {})

    @classmethod
    def one(cls, m: int, cap: int) -> NCSeries:
        return cls._raw(m, cap, {(): Fraction(1)})

    @classmethod
    def word(cls, m: int, cap: int, w: Word | str, coeff=1) -> NCSeries:
        if isinstance(w, str):
            w = parse_word(w)
        return cls(m, cap, {tuple(w): coeff})

    @classmethod
    def letter(cls, m: int, cap: int, i: int, coeff=1) -> NCSeries:
        return cls(m, cap, {(i,): coeff})

    # -- access ------------------------------------------------------------
    def coefficient(self, w: Word | str) -> Fraction:
        if isinstance(w, str):
            w = parse_word(w)
        w = tuple(w)
        if degree(w) > self.cap:
            raise QueryBeyondCap(f"<c, {format_word(w)}> has degree {degree(w)} > cap {self.cap}")
        return self._terms.get(w, Fraction(0))

    __getitem__ = coefficient

    def items(self) -> list:
        """Nonzero (word, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def support(self) -> list:
        return [w for w, _ in self.items()]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def is_proper(self) -> bool:
        return () not in self._terms

    def min_degree(self) -> int | None:
        if not self._terms:
            return None
        return min(degree(w) for w in self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self.m == other.m and self.cap == other.cap and self._terms == other._terms

    def __hash__(self):
        return hash((self.m, self.cap, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"NCSeries(m={self.m}, cap={self.cap}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, q in self.items():
            parts.append(f"{q} {format_word(w)}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- linear structure --------------------------------------------------
    def _check(self, other: NCSeries) -> int:
        if self.m != other.m:
            raise AlphabetMismatch(f"alphabets x1..x{self.m} and x1..x{other.m} differ")
        return min(self.cap, other.cap)

    def __add__(self, other: NCSeries) -> NCSeries:
        cap = self._check(other)
        out = {w: q for w, q in self._terms.items() if degree(w) <= cap}
        for w, q in other._terms.items():
            if degree(w) <= cap:
                out[w] = out.get(w, 0) + q
        return NCSeries._raw(self.m, cap, out)

    def __neg__(self) -> NCSeries:
        return NCSeries._raw(self.m, self.cap, {w: -q for w, q in self._terms.items()})

    def __sub__(self, other: NCSeries) -> NCSeries:
        return self + (-other)

    def scale(self, q) -> NCSeries:
        q = _frac(q)
        return NCSeries._raw(self.m, self.cap, {w: q * c for w, c in self._terms.items()})

    def __mul__(self, q) -> NCSeries:
        if isinstance(q, NCSeries):
            return NotImplemented
        return self.scale(q)

    __rmul__ = __mul__

    def truncate(self, cap: int) -> NCSeries:
        cap = min(cap, self.cap)
        return NCSeries._raw(self.m, cap, {w: q for w, q in self._terms.items() if degree(w) <= cap})

    def with_cap(self, cap: int) -> NCSeries:
        """Same terms under a new cap; raising the cap asserts the extra terms are zero."""
        return NCSeries._raw(self.m, cap, {w: q for w, q in self._terms.items() if degree(w) <= cap})

    def by_degree(self) -> dict:
        groups: dict = defaultdict(list)
        for w, q in self._terms.items():
            groups[degree(w)].append((w, q))
        return groups

    # -- products ----------------------------------------------------------
    def concat(self, other: NCSeries) -> NCSeries:
        cap = self._check(other)
        out: dict = defaultdict(Fraction)
        right = other.by_degree()
        for u, p in self._terms.items():
            room = cap - degree(u)
            for d in range(room + 1):
                for v, q in right.get(d, ()):
                    out[u + v] += p * q
        return NCSeries._raw(self.m, cap, out)

    def left_letter(self, i: int, cap: int | None = None) -> NCSeries:
        """x_i . self, truncated to ``cap`` (default: own cap)."""
        cap = self.cap if cap is None else cap
        room = cap - i
        return NCSeries._raw(
            self.m, cap, {(i,) + w: q for w, q in self._terms.items() if degree(w) <= room}
        )

    def right_letter(self, i: int, cap: int | None = None) -> NCSeries:
        cap = self.cap if cap is None else cap
        room = cap - i
        return NCSeries._raw(
            self.m, cap, {w + (i,): q for w, q in self._terms.items() if degree(w) <= room}
        )

    def shuffle(self, other: NCSeries, cap: int | None = None) -> NCSeries:
        top = self._check(other)
        cap = top if cap is None else min(cap, top)
        out: dict = defaultdict(Fraction)
        right = other.by_degree()
        for u, p in self._terms.items():
            room = cap - degree(u)
            for d in range(room + 1):
                for v, q in right.get(d, ()):
                    pq = p * q
                    for w, n in shuffle_words(u, v).items():
                        out[w] += n * pq
        return NCSeries._raw(self.m, cap, out)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "m": self.m,
            "cap": self.cap,
            "terms": [{"word": format_word(w), "coeff": str(q)} for w, q in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> NCSeries:
        terms = {parse_word(t["word"]): Fraction(t["coeff"]) for t in data["terms"]}
        return cls(int(data["m"]), int(data["cap"]), terms)


def add(a: NCSeries, b: NCSeries) -> NCSeries:
    return a + b


def scale(q, a: NCSeries) -> NCSeries:
    return a.scale(q)


def concat(a: NCSeries, b: NCSeries) -> NCSeries:
    return a.concat(b)


def shuffle(a: NCSeries, b: NCSeries) -> NCSeries:
    return a.shuffle(b)


def shuffle_power(a: NCSeries, k: int) -> NCSeries:
    if k < 0:
        raise ValueError("shuffle power must be nonnegative")
    out = NCSeries.one(a.m, a.cap)
    for _ in range(k):
        out = out.shuffle(a)
    return out


def shuffle_powers(a: NCSeries, k: int) -> list:
    """[a^0, a^1, ..., a^k] under the shuffle product."""
    out = [NCSeries.one(a.m, a.cap)]
    for _ in range(k):
        out.append(out[-1].shuffle(a))
    return out


def shuffle_inverse(c: NCSeries) -> NCSeries:
    """Inverse under the shuffle product, via c = c0 (1 - p) and sum_k p^k / c0."""
    c0 = c.constant()
    if c0 == 0:
        raise NotInvertible("series with zero constant term has no shuffle inverse")
    proper = (NCSeries.one(c.m, c.cap) - c.scale(1 / c0))
    total = NCSeries.one(c.m, c.cap)
    power = NCSeries.one(c.m, c.cap)
    # each proper factor raises the minimal degree by at least one
    for _ in range(c.cap):
        power = power.shuffle(proper)
        if not power:
            break
        total = total + power
    return total.scale(1 / c0)


def graded_component(c: NCSeries, n: int) -> NCSeries:
    """c(n): the terms of c of degree exactly n - 1."""
    if n < 1:
        raise ValueError("graded components are indexed from n = 1")
    if n - 1 > c.cap:
        raise QueryBeyondCap(f"component c({n}) lies above cap {c.cap}")
    return NCSeries._raw(c.m, c.cap, {w: q for w, q in c._terms.items() if degree(w) == n - 1})


def first_difference(a: NCSeries, b: NCSeries):
    """First word (canonical order) where a and b differ, as (word, a_coeff, b_coeff)."""
    cap = min(a.cap, b.cap)
    words = set(w for w in a._terms if degree(w) <= cap) | set(w for w in b._terms if degree(w) <= cap)
    for w in sorted(words, key=sort_key):
        p, q = a._terms.get(w, Fraction(0)), b._terms.get(w, Fraction(0))
        if p != q:
            return w, p, q
    return None
