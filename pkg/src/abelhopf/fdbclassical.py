"""Bell polynomials, the symbolic Toeplitz inverse and the M_h matrix of composition.

Generators t_i (Bell arguments) and h_i (Toeplitz entries) are :class:`Symbol`
instances of degree i.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._combinat import multiplicities
from .polyring import CPoly, Symbol


def t(i: int) -> Symbol:
    return Symbol("t", i, i)


def h(i: int) -> Symbol:
    return Symbol("h", i, i)


@lru_cache(maxsize=None)
def bell(j: int, k: int) -> CPoly:
    """Partial Bell polynomial B_{j,k}(t_1, ..., t_{j-k+1})."""
    if not 1 <= k <= j:
        raise ValueError(f"B_{{j,k}} needs 1 <= k <= j, got j={j}, k={k}")
    terms = {}
    for ks in multiplicities(j, k):
        coeff = Fraction(math.factorial(j))
        mono = []
        for i, ki in enumerate(ks, start=1):
            coeff /= math.factorial(ki) * math.factorial(i) ** ki
            mono.extend([t(i)] * ki)
        terms[tuple(mono)] = coeff
    return CPoly(terms)


def bell_at(j: int, k: int, args: Sequence) -> CPoly:
    """B_{j,k} with t_i replaced by args[i-1] (CPoly or number); missing args are zero."""

    def rule(g):
        i = g.index
        return args[i - 1] if i <= len(args) else 0

    return bell(j, k).compose(rule)


def _scaled_h(n: int, h1=None) -> list:
    """(h_1, 2! h_2, ..., n! h_n), optionally with h_1 fixed."""
    out = [CPoly.gen(h(i)).scale(math.factorial(i)) for i in range(1, n + 1)]
    if h1 is not None:
        out[0] = CPoly.const(h1)
    return out


def symbolic_toeplitz_inverse(m: int) -> list:
    """(h~_1, ..., h~_{m-1}) from the Taylor coefficients of 1 / (1 + sum_n h_n t^n)."""
    if m < 2:
        raise ValueError("need m >= 2")
    out = []
    for j in range(1, m):
        args = _scaled_h(j)
        acc = CPoly()
        for k in range(1, j + 1):
            acc = acc + bell_at(j, k, args).scale(Fraction((-1) ** k * math.factorial(k), math.factorial(j)))
        out.append(acc)
    return out


def mh_matrix(n: int, h1=None) -> list:
    """Upper-triangular n x n matrix with entry (k, j) = k!/j! B_{j,k}(h_1, 2! h_2, ...), 1-based.

    Returned 0-based as rows of CPoly. ``h1`` pins h_1 to a number.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    args = _scaled_h(n, h1)
    rows = []
    for k in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j < k:
                row.append(CPoly())
            else:
                row.append(bell_at(j, k, args).scale(Fraction(math.factorial(k), math.factorial(j))))
        rows.append(row)
    return rows


def unitriangular_inverse(a: list) -> list:
    """Inverse of an upper-triangular matrix with unit diagonal, by back substitution."""
    n = len(a)
    for i in range(n):
        if a[i][i] != 1:
            raise ValueError("diagonal entries must equal 1")
    inv = [[CPoly.const(1) if i == j else CPoly() for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = CPoly()
            for k in range(i + 1, j + 1):
                acc = acc + a[i][k] * inv[k][j]
            inv[i][j] = -acc
    return inv


def matmul(a: list, b: list) -> list:
    n, p, q = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(p)), CPoly()) for j in range(q)] for i in range(n)]


def mh_inverse(n: int) -> list:
    """M_h^{-1} at h_1 = 1."""
    return unitriangular_inverse(mh_matrix(n, h1=1))


def fdb_antipode_row(j: int) -> CPoly:
    """Entry j+1 of the top row of M_h^{-1} at h_1 = 1.

    sum_k (-1)^k B_{j+k,k}(0, 2! h_2, ..., (j+1)! h_{j+1}) / (j+1)!.
    """
    if j < 1:
        raise ValueError("need j >= 1")
    args = _scaled_h(j + 1, h1=0)
    acc = CPoly()
    for k in range(1, j + 1):
        acc = acc + bell_at(j + k, k, args).scale((-1) ** k)
    return acc.scale(Fraction(1, math.factorial(j + 1)))


def alternating_column_sum(i: int) -> CPoly:
    """sum_k (-1)^k (M_h)_{k,i}: pairs the sign vector [-1, 1, -1, ...] with column i."""
    col = [row[i - 1] for row in mh_matrix(i)]
    return sum((c.scale((-1) ** k) for k, c in enumerate(col, start=1)), CPoly())


def fdb_series_compose(f: Sequence, g: Sequence, order: int) -> list:
    """Derivatives at 0 of f(g(t)) up to ``order``, given those of f and g (g(0) = 0)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    f = [Fraction(x) for x in f]
    g = [Fraction(x) for x in g]
    if g and g[0] != 0:
        raise ValueError("inner series must vanish at 0")
    alpha = g[1:]
    beta = lambda k: f[k] if k < len(f) else Fraction(0)
    out = [beta(0)]
    for j in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, j + 1):
            if beta(k):
                acc += beta(k) * bell(j, k).substitute(lambda s: alpha[s.index - 1] if s.index <= len(alpha) else 0)
        out.append(acc)
    return out
