"""Toeplitz affine series I + sum_i d_i N^i and the products acting on them.

Only the (m-1)-tuple of entries is stored; N^i N^j = N^(i+j) and N^m = 0 are
handled by index arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ShapeMismatch
from .series import NCSeries, shuffle_power, shuffle_powers


class ToeplitzSeries:
    """Unipotent upper-triangular Toeplitz matrix series with entries (d_1, ..., d_{m-1})."""

    __slots__ = ("m", "cap", "entries")

    def __init__(self, m: int, entries: Sequence[NCSeries]):
        entries = tuple(entries)
        if m < 2:
            raise ShapeMismatch("Toeplitz series need m >= 2")
        if len(entries) != m - 1:
            raise ShapeMismatch(f"expected {m - 1} entries, got {len(entries)}")
        caps = {d.cap for d in entries}
        if any(d.m != m for d in entries) or len(caps) != 1:
            raise ShapeMismatch("entries must share alphabet size m and cap")
        self.m = m
        self.cap = caps.pop()
        self.entries = entries

    @classmethod
    def identity(cls, m: int, cap: int) -> ToeplitzSeries:
        return cls(m, [NCSeries.zero(m, cap)] * (m - 1))

    def entry(self, k: int) -> NCSeries:
        """Coefficient of N^k; entry(0) is the unit series."""
        if k == 0:
            return NCSeries.one(self.m, self.cap)
        if 1 <= k < self.m:
            return self.entries[k - 1]
        return NCSeries.zero(self.m, self.cap)

    def truncate(self, cap: int) -> ToeplitzSeries:
        return ToeplitzSeries(self.m, [d.truncate(cap) for d in self.entries])

    def is_identity(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, ToeplitzSeries) and self.m == other.m and self.entries == other.entries

    def __repr__(self) -> str:
        body = ", ".join(str(d) for d in self.entries)
        return f"ToeplitzSeries(m={self.m}, cap={self.cap}, [{body}])"

    def to_json(self) -> dict:
        return {"m": self.m, "entries": [d.to_json() for d in self.entries]}

    @classmethod
    def from_json(cls, data) -> ToeplitzSeries:
        return cls(int(data["m"]), [NCSeries.from_json(e) for e in data["entries"]])


def _same_shape(a: ToeplitzSeries, b: ToeplitzSeries) -> int:
    if a.m != b.m:
        raise ShapeMismatch(f"Toeplitz sizes {a.m} and {b.m} differ")
    return min(a.cap, b.cap)


def toeplitz_shuffle(a: ToeplitzSeries, b: ToeplitzSeries) -> ToeplitzSeries:
    cap = _same_shape(a, b)
    entries = []
    for k in range(1, a.m):
        acc = NCSeries.zero(a.m, cap)
        for i in range(k + 1):
            acc = acc + a.entry(i).shuffle(b.entry(k - i))
        entries.append(acc)
    return ToeplitzSeries(a.m, entries)


def toeplitz_shuffle_inverse(a: ToeplitzSeries) -> ToeplitzSeries:
    """(I + P)^{-1} = sum_k (-P)^k, which stops at k = m-1 because N is nilpotent."""
    neg = ToeplitzSeries(a.m, [-d for d in a.entries])
    total = neg
    power = neg
    for _ in range(a.m - 2):
        power = _strict_product(power, neg)
        total = ToeplitzSeries(a.m, [x + y for x, y in zip(total.entries, power.entries)])
    return total


def _strict_product(a: ToeplitzSeries, b: ToeplitzSeries) -> ToeplitzSeries:
    # shuffle product of two strictly upper parts (no identity term in either)
    cap = _same_shape(a, b)
    entries = []
    for k in range(1, a.m):
        acc = NCSeries.zero(a.m, cap)
        for i in range(1, k):
            acc = acc + a.entry(i).shuffle(b.entry(k - i))
        entries.append(acc)
    return ToeplitzSeries(a.m, entries)


def phi_letter(d: ToeplitzSeries, i: int, e: NCSeries) -> NCSeries:
    """phi_d(x_i)(e) = x_i e + sum_{j=1}^{m-i} x_{i+j} (d_j sh e)."""
    if not 1 <= i <= d.m:
        raise ValueError(f"letter x{i} outside alphabet x1..x{d.m}")
    cap = min(d.cap, e.cap)
    out = e.left_letter(i, cap)
    for j in range(1, d.m - i + 1):
        room = cap - (i + j)
        if room < 0:
            break
        out = out + d.entry(j).shuffle(e, cap=room).left_letter(i + j, cap)
    return out


class _Phi:
    """Memoized phi_d(w)(1) over suffixes, for one fixed d and cap."""

    def __init__(self, d: ToeplitzSeries, cap: int):
        self.d = d
        self.cap = cap
        self.memo = {(): NCSeries.one(d.m, cap)}

    def __call__(self, w: tuple) -> NCSeries:
        if w not in self.memo:
            inner = self(w[1:])
            self.memo[w] = phi_letter(self.d, w[0], inner)
        return self.memo[w]


def mixed_compose(c, d: ToeplitzSeries):
    """c o~ d_delta = sum_w <c, w> phi_d(w)(1); tuples and Toeplitz c act componentwise."""
    if isinstance(c, ToeplitzSeries):
        return ToeplitzSeries(c.m, mixed_compose(c.entries, d))
    if isinstance(c, (list, tuple)):
        phi = None
        out = []
        for ck in c:
            if phi is None or phi.cap != min(ck.cap, d.cap):
                phi = _Phi(d, min(ck.cap, d.cap))
            out.append(_mixed_one(ck, d, phi))
        return tuple(out)
    return _mixed_one(c, d, _Phi(d, min(c.cap, d.cap)))


def _mixed_one(c: NCSeries, d: ToeplitzSeries, phi: _Phi) -> NCSeries:
    if c.m != d.m:
        raise ShapeMismatch(f"series over x1..x{c.m} composed with size-{d.m} Toeplitz series")
    acc = NCSeries.zero(d.m, phi.cap)
    for w, q in c.items():
        if sum(w) <= phi.cap:
            acc = acc + phi(w).scale(q)
    return acc


def pre_lie(c: NCSeries, d: ToeplitzSeries) -> NCSeries:
    """Right linearization: x_i w <| d = x_i (w <| d) + sum_j x_{i+j} (d_j sh w), e <| d = 0."""
    if c.m != d.m:
        raise ShapeMismatch("alphabet and Toeplitz size differ")
    cap = min(c.cap, d.cap)
    memo: dict = {(): NCSeries.zero(d.m, cap)}

    def word_tri(w):
        if w not in memo:
            i, rest = w[0], w[1:]
            out = word_tri(rest).left_letter(i, cap)
            tail = NCSeries.word(d.m, cap, rest) if sum(rest) <= cap else NCSeries.zero(d.m, cap)
            for j in range(1, d.m - i + 1):
                room = cap - (i + j)
                if room < 0:
                    break
                out = out + d.entry(j).shuffle(tail, cap=room).left_letter(i + j, cap)
            memo[w] = out
        return memo[w]

    acc = NCSeries.zero(d.m, cap)
    for w, q in c.items():
        if sum(w) <= cap:
            acc = acc + word_tri(w).scale(q)
    return acc


def group_product(c: ToeplitzSeries, d: ToeplitzSeries) -> ToeplitzSeries:
    """(c o d)_Toep = (c_Toep o~ d_delta) sh d_Toep."""
    _same_shape(c, d)
    return toeplitz_shuffle(mixed_compose(c, d), d)


def group_inverse(d: ToeplitzSeries) -> ToeplitzSeries:
    """Solve (d_Toep o~ x_delta) sh x_Toep = I by cap+1 sweeps of x <- (d_Toep o~ x_delta)^{sh -1}."""
    x = ToeplitzSeries.identity(d.m, d.cap)
    for _ in range(d.cap + 1):
        x = toeplitz_shuffle_inverse(mixed_compose(d, x))
    return x


@dataclass(frozen=True)
class DeltaPowers:
    """The feedback pattern (delta_1, delta_1^{sh 2}, ..., delta_1^{sh m-1}): entry i reads y_1^i."""

    m: int


def substitute_outputs(powers: DeltaPowers, c1: NCSeries) -> ToeplitzSeries:
    """Replace delta_1^{sh i} by c1^{sh i}, giving I + sum_i c1^{sh i} N^i."""
    if c1.m != powers.m:
        raise ShapeMismatch("output series alphabet differs from the feedback size")
    return ToeplitzSeries(powers.m, shuffle_powers(c1, powers.m - 1)[1:])


__all__ = [
    "DeltaPowers",
    "ToeplitzSeries",
    "group_inverse",
    "group_product",
    "mixed_compose",
    "phi_letter",
    "pre_lie",
    "shuffle_power",
    "substitute_outputs",
    "toeplitz_shuffle",
    "toeplitz_shuffle_inverse",
]
