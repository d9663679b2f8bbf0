"""The Abel generating series c_{A,m}, built by four independent routes, and the feedback identities it satisfies.

Routes:
  * the linear grade recursion c(n) = sum_i (n-i) c(n-i) x_i,
  * the group inverse (I - c_F N)^{-1}, first entry,
  * the feedback loop c_F @ (delta_1, ..., delta_1^{sh m-1}),
  * the differential generator (z^2, ..., z^{m+1}; z0 = 1; h = z).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ._combinat import compositions_into, multiplicities
from .compose import (
    DeltaPowers,
    ToeplitzSeries,
    group_inverse,
    mixed_compose,
    substitute_outputs,
    toeplitz_shuffle_inverse,
)
from .errors import ShapeMismatch
from .polyring import UPoly, lie_derivative
from .report import Report
from .series import NCSeries, first_difference, graded_component, shuffle_powers
from .words import format_word


@dataclass(frozen=True)
class Realization:
    """Scalar state z' = sum_i g_i(z) u_i, z(0) = z0, with outputs h_1, h_2, ...

    As a Toeplitz realization the outputs are the entries h_1..h_{m-1}.
    """

    g: tuple
    z0: Fraction
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "h", tuple(self.h))
        object.__setattr__(self, "z0", Fraction(self.z0))
        if not self.g:
            raise ShapeMismatch("need at least one vector field")

    @property
    def m(self) -> int:
        return len(self.g)

    def __str__(self) -> str:
        parts = [str(p) for p in self.g] + [str(self.z0)] + [str(p) for p in self.h]
        return "(" + ", ".join(parts) + ")"


def _z(k: int) -> UPoly:
    return UPoly.monomial(k)


def abel_realization(m: int) -> Realization:
    """(z^2, ..., z^{m+1}, 1, z, ..., z^{m-1}); its first output generates c_{A,m}."""
    return Realization([_z(i + 1) for i in range(1, m + 1)], 1, [_z(j) for j in range(1, m)])


def ferfera_realization(m: int) -> Realization:
    """(z^2, 0, ..., 0, 1, -z, 0, ..., 0); generates d = (-c_F, 0, ..., 0)."""
    g = [_z(2)] + [UPoly()] * (m - 1)
    h = [-_z(1)] + [UPoly()] * (m - 2)
    return Realization(g, 1, h)


def ferfera(cap: int, m: int = 1) -> NCSeries:
    """c_F = sum_k k! x_1^k."""
    return NCSeries(m, cap, {(1,) * k: math.factorial(k) for k in range(cap + 1)})


def devlin(m: int, cap: int) -> tuple:
    """Graded pieces [c(1), ..., c(cap+1)] of c_{A,m} and their sum."""
    if m < 2:
        raise ValueError("the Abel recursion needs m >= 2")
    pieces = [NCSeries.one(m, cap)]
    for n in range(2, cap + 2):
        acc = NCSeries.zero(m, cap)
        for i in range(1, m + 1):
            if n - i >= 1:
                acc = acc + pieces[n - i - 1].right_letter(i).scale(n - i)
        pieces.append(acc)
    total = NCSeries.zero(m, cap)
    for p in pieces:
        total = total + p
    return pieces, total


def _ferfera_toeplitz(m: int, cap: int) -> ToeplitzSeries:
    return ToeplitzSeries(m, [-ferfera(cap, m)] + [NCSeries.zero(m, cap)] * (m - 2))


def abel_via_group_inverse(m: int, cap: int) -> NCSeries:
    return group_inverse(_ferfera_toeplitz(m, cap)).entries[0]


def feedback_product(c: Sequence[NCSeries], d_spec: DeltaPowers) -> tuple:
    """c @ d_Toep = c o~ ((d_Toep o c)^{sh -1})_delta^{-1} for the delta-power feedback."""
    if not isinstance(d_spec, DeltaPowers):
        raise TypeError("only the delta-power feedback (delta_1, ..., delta_1^{sh m-1}) is supported")
    c = tuple(c)
    if len(c) != d_spec.m:
        raise ShapeMismatch(f"forward path needs {d_spec.m} components, got {len(c)}")
    loop = substitute_outputs(d_spec, c[0])
    return mixed_compose(c, group_inverse(toeplitz_shuffle_inverse(loop)))


def abel_via_feedback(m: int, cap: int) -> NCSeries:
    c_fm = [ferfera(cap, m)] + [NCSeries.zero(m, cap)] * (m - 1)
    return feedback_product(c_fm, DeltaPowers(m))[0]


def differential_series(g: Sequence[UPoly], z0, h: UPoly, cap: int, m: int | None = None) -> NCSeries:
    """Series with <c, x_{jk}..x_{j1}> = L_{g_j1} ... L_{g_jk} h (z0), built grade by grade."""
    m = len(g) if m is None else m
    graded = _symbolic_grades(g, h, cap)
    z0 = Fraction(z0)
    terms = {}
    for level in graded:
        for w, p in level.items():
            terms[w] = p(z0)
    return NCSeries(m, cap, terms)


def _symbolic_grades(g: Sequence[UPoly], h: UPoly, cap: int) -> list:
    # P_n as a map word -> UPoly, P_n = sum_i L_{g_i} P_{n-i} x_i
    grades = [{(): h}]
    for n in range(1, cap + 1):
        level: dict = {}
        for i in range(1, min(len(g), n) + 1):
            if not g[i - 1]:
                continue
            for w, p in grades[n - i].items():
                q = lie_derivative(g[i - 1], p)
                if q:
                    level[w + (i,)] = q
        grades.append(level)
    return grades


def generate_from_realization(r: Realization, output: int, cap: int) -> NCSeries:
    if not 1 <= output <= len(r.h):
        raise ValueError(f"output index must lie in 1..{len(r.h)}")
    return differential_series(r.g, r.z0, r.h[output - 1], cap)


def abel_via_realization(m: int, cap: int) -> NCSeries:
    return generate_from_realization(abel_realization(m), 1, cap)


def toeplitz_inverse_entries(h: Sequence[UPoly]) -> list:
    """Entries of (I + sum h_i N^i)^{-1} from the multinomial expansion of sum_n (-hN)^n."""
    size = len(h) + 1
    out = []
    for j in range(1, size):
        acc = UPoly()
        for k in range(1, j + 1):
            for ks in multiplicities(j, k, parts=j):
                coeff = Fraction((-1) ** k * math.factorial(k), math.prod(math.factorial(x) for x in ks))
                term = UPoly.const(coeff)
                for i, ki in enumerate(ks, start=1):
                    if ki:
                        term = term * h[i - 1] ** ki
                acc = acc + term
        out.append(acc)
    return out


def realization_inverse(r: Realization) -> Realization:
    """Generator of the group inverse: g~_i = g_i + sum_{j<i} g_{i-j} h~_j, h~_j = (H^{-1})_{1,1+j}."""
    if len(r.h) != r.m - 1:
        raise ShapeMismatch(f"{r.m} vector fields need {r.m - 1} Toeplitz outputs, got {len(r.h)}")
    ht = toeplitz_inverse_entries(r.h)
    gt = []
    for i in range(1, r.m + 1):
        acc = r.g[i - 1]
        for j in range(1, i):
            acc = acc + r.g[i - j - 1] * ht[j - 1]
        gt.append(acc)
    return Realization(gt, r.z0, ht)


def realization_series(r: Realization, cap: int) -> ToeplitzSeries:
    return ToeplitzSeries(r.m, [generate_from_realization(r, k, cap) for k in range(1, r.m)])


def _homogeneous(p: UPoly, target: int, deg: Callable[[int], int]) -> bool:
    return all(deg(k) == target for k in p.powers())


def check_grading_preservation(
    r: Realization,
    cap: int = 4,
    field_degree: Callable[[int], int] = lambda p: p - 1,
    output_degree: Callable[[int], int] = lambda p: p,
) -> Report:
    """Is the inverse realization graded (deg g~_i = i, deg h~_j = j), and are its series graded?

    Degrees are assigned to the monomial z^p: ``field_degree(p)`` inside a vector
    field, ``output_degree(p)`` inside an output. The series check requires every
    coefficient polynomial L_{g~_eta} h~_k to be homogeneous of degree k + deg(eta).
    """
    hyp = all(_homogeneous(g, i, field_degree) for i, g in enumerate(r.g, 1)) and all(
        _homogeneous(h, j, output_degree) for j, h in enumerate(r.h, 1)
    )
    inv = realization_inverse(r)
    problems = []
    for i, g in enumerate(inv.g, 1):
        if not _homogeneous(g, i, field_degree):
            problems.append(f"g~{i} = {g} is not of degree {i}")
    for j, h in enumerate(inv.h, 1):
        if not _homogeneous(h, j, output_degree):
            problems.append(f"h~{j} = {h} is not of degree {j}")
    for k, h in enumerate(inv.h, 1):
        for n, level in enumerate(_symbolic_grades(inv.g, h, cap)):
            bad = [w for w, p in level.items() if not _homogeneous(p, k + n, output_degree)]
            if bad:
                problems.append(f"series d~{k}: grade {n + 1} word {format_word(bad[0])} breaks homogeneity")
                break
    detail = f"hypothesis {'holds' if hyp else 'fails'}"
    if problems:
        detail += "; " + "; ".join(problems)
    return Report("grading-preservation", not problems, detail)


def abel_four_ways(m: int, cap: int) -> dict:
    return {
        "devlin": devlin(m, cap)[1],
        "group-inverse": abel_via_group_inverse(m, cap),
        "feedback": abel_via_feedback(m, cap),
        "realization": abel_via_realization(m, cap),
    }


def _compare(name: str, got: NCSeries, want: NCSeries) -> Report:
    diff = first_difference(got, want)
    if diff is None:
        return Report(name, True, f"{len(want)} coefficients agree")
    w, a, b = diff
    return Report(name, False, f"first mismatch at {format_word(w)}: {a} != {b}")


def verify_four_way(m: int, cap: int) -> Report:
    routes = abel_four_ways(m, cap)
    ref = routes["devlin"]
    for name, series in routes.items():
        rep = _compare(f"fourway m={m} cap={cap}", series, ref)
        if not rep:
            rep.detail = f"{name} vs devlin: {rep.detail}"
            return rep
    return Report(f"fourway m={m} cap={cap}", True, f"4 routes agree on {len(ref)} coefficients")


def verify_fixed_point(m: int, cap: int, y: NCSeries | None = None) -> Report:
    """c_F o~ (I + sum_i y^{sh i} N^i)_delta == y for y the closed-loop series."""
    y = devlin(m, cap)[1] if y is None else y
    lhs = mixed_compose(ferfera(cap, m), substitute_outputs(DeltaPowers(m), y))
    return _compare(f"fixed-point m={m} cap={cap}", lhs, y)


def _graded_form(pieces: list, m: int, cap: int) -> Report:
    name = f"graded-form m={m} cap={cap}"

    def c(k):
        return pieces[k - 1]

    x1 = NCSeries.letter(m, cap, 1)
    for n in range(2, cap + 2):
        rhs = c(n - 1).shuffle(x1)
        for i in range(2, m + 1):
            for ks in compositions_into(n - 1, i):
                inner = NCSeries.one(m, cap)
                for k in ks[1:]:
                    inner = inner.shuffle(c(k))
                rhs = rhs + c(ks[0]).shuffle(inner.left_letter(i))
        diff = first_difference(rhs, c(n))
        if diff is not None:
            w, a, b = diff
            return Report(name, False, f"c({n}) at {format_word(w)}: {a} != {b}")
    return Report(name, True, f"c(2)..c({cap + 1}) reproduced")


def verify_shuffle_identity(m: int, cap: int, c: NCSeries | None = None) -> Report:
    """c = 1 + c sh (sum_i x_i c^{sh i-1}),  c = 1 + sum_i x_i c^{sh i+1}, and the graded form."""
    c = devlin(m, cap)[1] if c is None else c
    one = NCSeries.one(m, cap)
    powers = shuffle_powers(c, m + 1)
    inner = NCSeries.zero(m, cap)
    direct = one
    for i in range(1, m + 1):
        inner = inner + powers[i - 1].left_letter(i)
        direct = direct + powers[i + 1].left_letter(i)
    checks = [
        _compare(f"shuffle-equation m={m} cap={cap}", one + c.shuffle(inner), c),
        _compare(f"abel-recursion m={m} cap={cap}", direct, c),
        _graded_form([graded_component(c, n) for n in range(1, cap + 2)], m, cap),
    ]
    failed = [r for r in checks if not r]
    name = f"shuffle-identity m={m} cap={cap}"
    if failed:
        return Report(name, False, "; ".join(f"{r.name}: {r.detail}" for r in failed))
    return Report(name, True, "both shuffle equations and the graded form hold")
