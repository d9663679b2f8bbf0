"""The graded connected Hopf algebra H^(mbar) of coordinate functions a^k_eta.

Elements are commutative polynomials (:class:`CPoly`) in :class:`CoordGen`
generators. The coproduct is built from the right-shift derivations
theta~_{x_j} a^k_eta = a^k_{eta x_j} through

    Delta a^k_{eta x_i} = (theta~_i (x) id + id (x) theta~_i
                           + sum_{j<i} theta~_j (x) A^{(i-j)}) Delta a^k_eta,

where A^{(p)} multiplies by a^p_e. Two antipodes are provided: the classical
recursion over the reduced coproduct, and the coderivation form that applies
first-order operators to the empty-word antipodes.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._combinat import compositions_into
from .compose import ToeplitzSeries, group_inverse, group_product
from .errors import ShapeMismatch
from .polyring import CPoly, UPoly, _mono_mul, render_monomial
from .report import Report
from .series import NCSeries
from .words import Word, check_letters, enumerate_words, format_word, sort_key


@dataclass(frozen=True)
class CoordGen:
    """a^k_eta: reads the coefficient of eta in the k-th entry of a Toeplitz series."""

    root: int
    word: Word = ()
    key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "key", (self.root + sum(self.word), self.root, sort_key(self.word)))

    @property
    def degree(self) -> int:
        return self.root + sum(self.word)

    @property
    def label(self) -> str:
        return f"a[{self.root};{format_word(self.word)}]"

    def shifted(self, j: int) -> CoordGen:
        return CoordGen(self.root, self.word + (j,))

    def __str__(self) -> str:
        return self.label


Mono = tuple


def _add(out: dict, key, q) -> None:
    v = out.get(key, 0) + q
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Tensor:
    """Finite sum of q * (left (x) right) with left, right monomials of H."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def pure(cls, left: CPoly, right: CPoly) -> Tensor:
        out: dict = {}
        for a, p in left.terms.items():
            for b, q in right.terms.items():
                _add(out, (a, b), p * q)
        return cls(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: Tensor) -> Tensor:
        out = dict(self.terms)
        for k, q in other.terms.items():
            _add(out, k, q)
        return Tensor(out)

    def __sub__(self, other: Tensor) -> Tensor:
        return self + Tensor({k: -q for k, q in other.terms.items()})

    def __mul__(self, other: Tensor) -> Tensor:
        out: dict = defaultdict(Fraction)
        for (a, b), p in self.terms.items():
            for (c, d), q in other.terms.items():
                out[(_mono_mul(a, c), _mono_mul(b, d))] += p * q
        return Tensor(out)

    def grades(self) -> set:
        return {sum(g.degree for g in a) + sum(g.degree for g in b) for a, b in self.terms}

    def ordered(self) -> list:
        def key(item):
            (a, b), _ = item
            return ([g.key for g in a], [g.key for g in b])

        return sorted(self.terms.items(), key=key)

    def lines(self) -> list:
        out = []
        for (a, b), q in self.ordered():
            coeff = "" if q == 1 else ("-" if q == -1 else f"{q} ")
            out.append(f"{coeff}{render_monomial(a)} (x) {render_monomial(b)}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines()) if self.terms else "0"

    def __repr__(self) -> str:
        return f"Tensor({' + '.join(self.lines()) or '0'})"

    def to_json(self) -> list:
        return [
            {"left": render_monomial(a), "right": render_monomial(b), "coeff": str(q)}
            for (a, b), q in self.ordered()
        ]


class HopfAlgebra:
    """H^(mbar) over the alphabet x_1..x_m; holds the memo tables for one run."""

    def __init__(self, m: int, mbar: int | None = None):
        mbar = m - 1 if mbar is None else mbar
        if m < 1 or not 1 <= mbar <= m:
            raise ShapeMismatch(f"need 1 <= mbar <= m, got mbar={mbar}, m={m}")
        if mbar < m - 1:
            # Delta a_{eta x_m} multiplies by a^{m-1}_e
            raise ShapeMismatch(f"mbar={mbar} is too small for the letter x{m}; need mbar >= {m - 1}")
        self.m = m
        self.mbar = mbar
        self._delta: dict = {}
        self._s_classical: dict = {}
        self._s_monomial: dict = {}
        self._s_empty: dict = {}
        self._s_coder: dict = {}

    # -- generators --------------------------------------------------------
    def gen(self, root: int, word: Iterable[int] = ()) -> CoordGen:
        if not 1 <= root <= self.mbar:
            raise ValueError(f"root index {root} outside 1..{self.mbar}")
        return CoordGen(root, check_letters(word, self.m))

    def a(self, root: int, word: Iterable[int] = ()) -> CPoly:
        return CPoly.gen(self.gen(root, word))

    def generators(self, max_grade: int) -> list:
        out = []
        for k in range(1, min(self.mbar, max_grade) + 1):
            out.extend(CoordGen(k, w) for w in enumerate_words(self.m, max_grade - k))
        return sorted(out, key=lambda g: g.key)

    # -- shift derivations -------------------------------------------------
    @staticmethod
    def _theta(j: int, mono: Mono) -> list:
        """theta~_{x_j} on a monomial, as [(monomial, multiplicity)]."""
        out = []
        for pos, g in enumerate(mono):
            if pos and mono[pos - 1] == g:
                continue
            rest = mono[:pos] + mono[pos + 1:]
            out.append((_mono_mul(rest, (g.shifted(j),)), mono.count(g)))
        return out

    def theta(self, j: int, p: CPoly) -> CPoly:
        out: dict = defaultdict(Fraction)
        for mono, q in p.terms.items():
            for new, c in self._theta(j, mono):
                out[new] += c * q
        return CPoly._raw(out)

    def _big_theta(self, i: int, t: Tensor) -> Tensor:
        out: dict = {}
        for (left, right), q in t.terms.items():
            for new, c in self._theta(i, left):
                _add(out, (new, right), c * q)
            for new, c in self._theta(i, right):
                _add(out, (left, new), c * q)
            for j in range(1, i):
                boosted = _mono_mul(right, (CoordGen(i - j),))
                for new, c in self._theta(j, left):
                    _add(out, (new, boosted), c * q)
        return Tensor(out)

    # -- coproduct ---------------------------------------------------------
    def coproduct_empty(self, k: int) -> Tensor:
        if not 1 <= k <= self.mbar:
            raise ValueError(f"root index {k} outside 1..{self.mbar}")
        g = (CoordGen(k),)
        terms = {(g, ()): 1, ((), g): 1}
        for j in range(1, k):
            terms[((CoordGen(j),), (CoordGen(k - j),))] = 1
        return Tensor(terms)

    def coproduct(self, g: CoordGen | CPoly) -> Tensor:
        if isinstance(g, CPoly):
            return self.coproduct_poly(g)
        if g not in self._delta:
            if not g.word:
                self._delta[g] = self.coproduct_empty(g.root)
            else:
                prev = self.coproduct(CoordGen(g.root, g.word[:-1]))
                self._delta[g] = self._big_theta(g.word[-1], prev)
        return self._delta[g]

    def coproduct_monomial(self, mono: Mono) -> Tensor:
        out = Tensor({((), ()): 1})
        for g in mono:
            out = out * self.coproduct(g)
        return out

    def coproduct_poly(self, p: CPoly) -> Tensor:
        out: dict = {}
        for mono, q in p.terms.items():
            for k, c in self.coproduct_monomial(mono).terms.items():
                _add(out, k, q * c)
        return Tensor(out)

    def reduced_coproduct(self, g: CoordGen | Mono) -> Tensor:
        mono = (g,) if isinstance(g, CoordGen) else tuple(g)
        full = self.coproduct_monomial(mono)
        out = dict(full.terms)
        for k in ((mono, ()), ((), mono)):
            _add(out, k, -1)
        return Tensor(out)

    @staticmethod
    def counit(p: CPoly) -> Fraction:
        return p.terms.get((), Fraction(0))

    # -- antipodes ---------------------------------------------------------
    def antipode_classical(self, g: CoordGen) -> CPoly:
        """S a = -a - sum S(a') a'' over the reduced coproduct, S multiplicative."""
        if g not in self._s_classical:
            acc = -CPoly.gen(g)
            for (left, right), q in self.reduced_coproduct(g).terms.items():
                acc = acc - self._apply(left, self.antipode_classical) * CPoly({right: q})
            self._s_classical[g] = acc
        return self._s_classical[g]

    def antipode_monomial(self, mono: Mono) -> CPoly:
        """Antipode of a monomial by the convolution recursion on the monomial itself.

        Does not assume S is multiplicative, so comparing against the product of
        generator antipodes tests that property.
        """
        mono = tuple(sorted(mono, key=lambda g: g.key))
        if not mono:
            return CPoly.const(1)
        if mono not in self._s_monomial:
            acc = -CPoly({mono: 1})
            for (left, right), q in self.reduced_coproduct(mono).terms.items():
                acc = acc - self.antipode_monomial(left) * CPoly({right: q})
            self._s_monomial[mono] = acc
        return self._s_monomial[mono]

    def antipode_empty(self, k: int) -> CPoly:
        """Closed form S a^k_e = sum_{i>=1} (-1)^i sum_{p_1+...+p_i=k} a^{p_1}_e ... a^{p_i}_e."""
        if k not in self._s_empty:
            terms: dict = defaultdict(Fraction)
            for i in range(1, k + 1):
                for parts in compositions_into(k, i):
                    mono = tuple(sorted((CoordGen(p) for p in parts), key=lambda g: g.key))
                    terms[mono] += (-1) ** i
            self._s_empty[k] = CPoly._raw(terms)
        return self._s_empty[k]

    def theta_prime(self, l: int, p: CPoly) -> CPoly:
        """theta~'_{x_l} = theta~_{x_l} + sum_{j<l} S(a^{l-j}_e) theta~_{x_j}."""
        out = self.theta(l, p)
        for j in range(1, l):
            out = out + self.antipode_empty(l - j) * self.theta(j, p)
        return out

    def antipode_coderivation(self, g: CoordGen) -> CPoly:
        """S a^k_{eta x_l} = theta~'_{x_l} S a^k_eta, starting from the closed empty-word form."""
        if g not in self._s_coder:
            if not g.word:
                self._s_coder[g] = self.antipode_empty(g.root)
            else:
                prev = self.antipode_coderivation(CoordGen(g.root, g.word[:-1]))
                self._s_coder[g] = self.theta_prime(g.word[-1], prev)
        return self._s_coder[g]

    def antipode(self, p: CPoly, method: str = "coderivation") -> CPoly:
        fn = {"coderivation": self.antipode_coderivation, "classical": self.antipode_classical}[method]
        out = CPoly()
        for mono, q in p.terms.items():
            out = out + self._apply(mono, fn).scale(q)
        return out

    @staticmethod
    def _apply(mono: Mono, fn) -> CPoly:
        out = CPoly.const(1)
        for g in mono:
            out = out * fn(g)
        return out


# -- evaluation ------------------------------------------------------------


def _entries(d) -> Sequence[NCSeries]:
    return d.entries if isinstance(d, ToeplitzSeries) else tuple(d)


def eval_coord(p: CPoly, d) -> Fraction:
    """Ring morphism a^k_eta -> <d_k, eta>."""
    ds = _entries(d)

    def value(g: CoordGen):
        if g.root > len(ds):
            raise KeyError(g)
        return ds[g.root - 1].coefficient(g.word)

    return Fraction(p.substitute(value))


def eval_tensor(t: Tensor, c, d) -> Fraction:
    """mu(a'(c) (x) a''(d))."""
    cs, ds = _entries(c), _entries(d)
    total = Fraction(0)
    for (left, right), q in t.terms.items():
        total += q * eval_coord(CPoly({left: 1}), cs) * eval_coord(CPoly({right: 1}), ds)
    return total


def random_realization_series(m: int, cap: int, seed: int = 0) -> ToeplitzSeries:
    """Toeplitz series generated by a small random polynomial realization."""
    from .abelfeed import Realization, realization_series

    rng = random.Random(seed)

    def poly(max_deg):
        return UPoly([rng.randint(-2, 2) for _ in range(max_deg + 1)])

    g = [poly(2) for _ in range(m)]
    h = [poly(2) for _ in range(m - 1)]
    return realization_series(Realization(g, Fraction(rng.randint(-2, 2), rng.randint(1, 3)), h), cap)


# -- checks ----------------------------------------------------------------


def _first_failure(items, test):
    for item in items:
        msg = test(item)
        if msg:
            return msg
    return None


def check_coassociativity(H: HopfAlgebra, max_grade: int) -> Report:
    def test(g):
        left: dict = defaultdict(Fraction)
        right: dict = defaultdict(Fraction)
        for (a, b), q in H.coproduct(g).terms.items():
            for (a1, a2), p in H.coproduct_monomial(a).terms.items():
                left[(a1, a2, b)] += p * q
            for (b1, b2), p in H.coproduct_monomial(b).terms.items():
                right[(a, b1, b2)] += p * q
        clean = lambda t: {k: v for k, v in t.items() if v}
        if clean(left) != clean(right):
            return f"{g.label}: (Delta x id) Delta != (id x Delta) Delta"
        return None

    gens = H.generators(max_grade)
    msg = _first_failure(gens, test)
    return Report(f"coassociativity m={H.m} mbar={H.mbar} grade<={max_grade}", msg is None, msg or f"{len(gens)} generators")


def check_counit(H: HopfAlgebra, max_grade: int) -> Report:
    def test(g):
        t = H.coproduct(g)
        left = CPoly({b: q for (a, b), q in t.terms.items() if not a})
        right = CPoly({a: q for (a, b), q in t.terms.items() if not b})
        if left != CPoly.gen(g) or right != CPoly.gen(g):
            return f"{g.label}: counit law fails"
        return None

    gens = H.generators(max_grade)
    msg = _first_failure(gens, test)
    return Report(f"counit m={H.m} mbar={H.mbar} grade<={max_grade}", msg is None, msg or f"{len(gens)} generators")


def check_grading(H: HopfAlgebra, max_grade: int) -> Report:
    def test(g):
        gs = H.coproduct(g).grades()
        return None if gs == {g.degree} else f"{g.label}: tensor grades {sorted(gs)}"

    gens = H.generators(max_grade)
    msg = _first_failure(gens, test)
    return Report(f"grading m={H.m} mbar={H.mbar} grade<={max_grade}", msg is None, msg or f"{len(gens)} generators")


def check_antipode_axiom(H: HopfAlgebra, max_grade: int, method: str = "classical") -> Report:
    """mu (S x id) Delta = u eps = mu (id x S) Delta on each generator."""
    fn = {"coderivation": H.antipode_coderivation, "classical": H.antipode_classical}[method]

    def test(g):
        t = H.coproduct(g)
        left = CPoly()
        right = CPoly()
        for (a, b), q in t.terms.items():
            left = left + H._apply(a, fn) * CPoly({b: q})
            right = right + CPoly({a: q}) * H._apply(b, fn)
        if left or right:
            return f"{g.label}: S * id = {left}, id * S = {right}"
        return None

    gens = H.generators(max_grade)
    msg = _first_failure(gens, test)
    return Report(f"antipode-axiom ({method}) m={H.m} mbar={H.mbar} grade<={max_grade}", msg is None, msg or f"{len(gens)} generators")


def check_algorithm_equivalence(H: HopfAlgebra, max_grade: int) -> Report:
    def test(g):
        a, b = H.antipode_classical(g), H.antipode_coderivation(g)
        return None if a == b else f"{g.label}: classical {a} != coderivation {b}"

    gens = H.generators(max_grade)
    msg = _first_failure(gens, test)
    return Report(f"antipode-equivalence m={H.m} mbar={H.mbar} grade<={max_grade}", msg is None, msg or f"{len(gens)} generators")


def check_duality(m: int, cap: int, seed: int = 0) -> Report:
    """a(c o d) = mu(a'(c) (x) a''(d)) for random realizable c, d."""
    H = HopfAlgebra(m, m - 1)
    c = random_realization_series(m, cap, seed)
    d = random_realization_series(m, cap, seed + 1)
    prod = group_product(c, d)

    def test(g):
        want = prod.entries[g.root - 1].coefficient(g.word)
        got = eval_tensor(H.coproduct(g), c, d)
        return None if got == want else f"{g.label}: coproduct gives {got}, group product {want}"

    gens = H.generators(cap)
    msg = _first_failure(gens, test)
    return Report(f"coproduct-duality m={m} cap={cap}", msg is None, msg or f"{len(gens)} generators")


def antipode_vs_group_inverse(mbar: int, m: int, cap: int, seed: int = 0, d=None,
                              method: str = "coderivation") -> Report:
    """S(a^k_eta)(d) = <(d^{-1})_k, eta> for every generator of grade <= cap."""
    if mbar != m - 1:
        raise ValueError("the antipode matches the group inverse for mbar = m - 1")
    H = HopfAlgebra(m, mbar)
    d = random_realization_series(m, cap, seed) if d is None else d
    if not isinstance(d, ToeplitzSeries):
        d = ToeplitzSeries(m, d)
    inv = group_inverse(d)
    fn = {"coderivation": H.antipode_coderivation, "classical": H.antipode_classical}[method]

    def test(g):
        want = inv.entries[g.root - 1].coefficient(g.word)
        got = eval_coord(fn(g), d)
        return None if got == want else f"{g.label}: S evaluates to {got}, inverse has {want}"

    gens = H.generators(cap)
    msg = _first_failure(gens, test)
    return Report(f"antipode-vs-group-inverse m={m} cap={cap}", msg is None, msg or f"{len(gens)} generators")
