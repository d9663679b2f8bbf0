"""Univariate polynomials in the state z, and commutative polynomials over tagged generators."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import UnboundGenerator


def _frac(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


class UPoly:
    """Polynomial in one variable z with rational coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, power: int, coeff=1) -> UPoly:
        return cls([0] * power + [coeff])

    @classmethod
    def const(cls, c) -> UPoly:
        return cls([c])

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            z = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not z:
                parts.append(str(c))
            elif c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def powers(self) -> list:
        return [k for k, c in enumerate(self.coeffs) if c]

    def __add__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> UPoly:
        return self + (-other if isinstance(other, UPoly) else -_frac(other))

    def __rsub__(self, other) -> UPoly:
        return (-self) + other

    def __mul__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            return UPoly(c * _frac(other) for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UPoly:
        out = UPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> UPoly:
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, z):
        # Horner; keeps the input's number type (Fraction in, Fraction out)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def upoly_derivative(p: UPoly) -> UPoly:
    return p.derivative()


def upoly_eval(p: UPoly, q) -> Fraction:
    return p(_frac(q))


def lie_derivative(g: UPoly, h: UPoly) -> UPoly:
    """L_g h = h' g for a scalar vector field g(z) d/dz."""
    return h.derivative() * g


# ---------------------------------------------------------------------------
# commutative polynomials over opaque generators


@dataclass(frozen=True)
class Symbol:
    """A plain named generator, e.g. h_3 with degree 3."""

    name: str
    index: int
    degree: int

    @property
    def key(self) -> tuple:
        return (self.degree, self.name, self.index)

    @property
    def label(self) -> str:
        return f"{self.name}{self.index}"


def _key(g):
    return g.key


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=_key))


def render_monomial(mono: tuple, sep: str = "·") -> str:
    if not mono:
        return "1"
    counts: dict = {}
    for g in mono:
        counts[g] = counts.get(g, 0) + 1
    gens = sorted(counts, key=_key, reverse=True)
    return sep.join(g.label if counts[g] == 1 else f"{g.label}^{counts[g]}" for g in gens)


def _mono_order(terms: Iterable[tuple]) -> list:
    # fewest factors first; within equal size, larger generators first
    ts = sorted(terms, key=lambda mono: [g.key for g in reversed(mono)], reverse=True)
    return sorted(ts, key=len)


class CPoly:
    """Commutative polynomial: map from monomials (key-sorted generator tuples) to rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {}
        if terms:
            for mono, q in terms.items():
                q = _frac(q)
                if q:
                    mono = tuple(sorted(mono, key=_key))
                    self.terms[mono] = self.terms.get(mono, 0) + q
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> CPoly:
        obj = cls.__new__(cls)
        obj.terms = {k: v for k, v in terms.items() if v}
        return obj

    @classmethod
    def gen(cls, g, coeff=1) -> CPoly:
        return cls._raw({(g,): _frac(coeff)})

    @classmethod
    def const(cls, c) -> CPoly:
        return cls._raw({(): _frac(c)})

    @classmethod
    def monomial(cls, gens: Iterable, coeff=1) -> CPoly:
        return cls({tuple(gens): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CPoly.const(other)
        return isinstance(other, CPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"CPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono in _mono_order(self.terms):
            q = self.terms[mono]
            body = render_monomial(mono)
            if not mono:
                s = str(abs(q))
            elif abs(q) == 1:
                s = body
            else:
                s = f"{abs(q)}·{body}"
            if not out:
                out.append(("-" if q < 0 else "") + s)
            else:
                out.append(("- " if q < 0 else "+ ") + s)
        return " ".join(out)

    def generators(self) -> set:
        return {g for mono in self.terms for g in mono}

    def degrees(self) -> set:
        return {sum(g.degree for g in mono) for mono in self.terms}

    def is_homogeneous(self, deg: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (deg is None or deg in ds)

    def __add__(self, other) -> CPoly:
        if not isinstance(other, CPoly):
            other = CPoly.const(other)
        out = dict(self.terms)
        for mono, q in other.terms.items():
            out[mono] = out.get(mono, 0) + q
        return CPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> CPoly:
        return CPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> CPoly:
        if not isinstance(other, CPoly):
            other = CPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> CPoly:
        return (-self) + other

    def scale(self, q) -> CPoly:
        q = _frac(q)
        return CPoly._raw({k: q * v for k, v in self.terms.items()})

    def __mul__(self, other) -> CPoly:
        if not isinstance(other, CPoly):
            return self.scale(other)
        out: dict = defaultdict(Fraction)
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                out[_mono_mul(a, b)] += p * q
        return CPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CPoly:
        out = CPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, assignment: Mapping | Callable):
        """Evaluate at rational (or float) values for every generator."""
        lookup = assignment.__getitem__ if isinstance(assignment, Mapping) else assignment
        cache: dict = {}
        total = 0
        for mono, q in self.terms.items():
            val = q
            for g in mono:
                if g not in cache:
                    try:
                        cache[g] = lookup(g)
                    except KeyError:
                        raise UnboundGenerator(g) from None
                val = val * cache[g]
            total = total + val
        return total

    def compose(self, rule: Mapping | Callable) -> CPoly:
        """Ring morphism sending each generator g to rule(g) (a CPoly or number).

        Generators the rule does not cover (KeyError / None) are kept.
        """
        get = rule.get if isinstance(rule, Mapping) else rule
        images: dict = {}
        out = CPoly()
        for mono, q in self.terms.items():
            term = CPoly.const(q)
            for g in mono:
                if g not in images:
                    img = get(g)
                    images[g] = CPoly.gen(g) if img is None else (img if isinstance(img, CPoly) else CPoly.const(img))
                term = term * images[g]
            out = out + term
        return out

    def derive(self, rule: Callable) -> CPoly:
        """Apply the derivation determined by g -> rule(g) (a CPoly; None means 0)."""
        out: dict = defaultdict(Fraction)
        images: dict = {}
        for mono, q in self.terms.items():
            for pos, g in enumerate(mono):
                if pos and mono[pos - 1] == g:
                    continue
                mult = mono.count(g)
                if g not in images:
                    images[g] = rule(g)
                img = images[g]
                if not img:
                    continue
                rest = mono[:pos] + mono[pos + 1:]
                for m2, p in img.terms.items():
                    out[_mono_mul(rest, m2)] += mult * q * p
        return CPoly._raw(out)


def cpoly_add(a: CPoly, b: CPoly) -> CPoly:
    return a + b


def cpoly_mul(a: CPoly, b: CPoly) -> CPoly:
    return a * b


def cpoly_scale(q, a: CPoly) -> CPoly:
    return a.scale(q)


def cpoly_substitute(p: CPoly, assignment):
    return p.substitute(assignment)
