"""Floating-point checks: iterated integrals, Fliess operators, and the Abel equation z' = sum_i v_i z^{i+1}.

Signals live on a uniform grid over [0, omega]. Iterated integrals use
cumulative trapezoidal quadrature, one sweep per letter from the right. The
Abel equation is integrated with classical RK4 whose stages read the input at
grid points, so an RK4 step spans two grid intervals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import Blowup, DenominatorVanished, OutOfGrid, PreconditionFailed
from .report import Report
from .series import NCSeries, shuffle_words


@dataclass(frozen=True)
class Signal:
    """m channels sampled on the grid linspace(0, omega, n)."""

    omega: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.atleast_2d(np.asarray(self.values, dtype=float))
        if vals.shape[1] < 2:
            raise ValueError("a signal needs at least two grid points")
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def step(self) -> float:
        return self.omega / (self.n - 1)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.omega, self.n)

    def channel(self, i: int) -> np.ndarray:
        return self.values[i - 1]

    @classmethod
    def from_functions(cls, fns: Sequence[Callable], omega: float, n: int) -> Signal:
        t = np.linspace(0.0, omega, n)
        return cls(omega, np.vstack([np.broadcast_to(np.asarray(f(t), dtype=float), t.shape) for f in fns]))

    @classmethod
    def zero(cls, m: int, omega: float, n: int) -> Signal:
        return cls(omega, np.zeros((m, n)))

    @classmethod
    def cos_sin(cls, omega: float = 2 * math.pi, n: int = 20001, m: int = 2, scale: float = 1.0) -> Signal:
        """u_1 = scale cos t, u_2 = scale sin t, remaining channels zero."""
        fns = [lambda t: scale * np.cos(t), lambda t: scale * np.sin(t)] + [lambda t: 0.0] * (m - 2)
        return cls.from_functions(fns[:m], omega, n)

    @classmethod
    def ramp(cls, omega: float = 1.0, n: int = 20001, m: int = 2) -> Signal:
        """u_1 = 1, u_2 = t, remaining channels zero."""
        fns = [lambda t: 1.0, lambda t: t] + [lambda t: 0.0] * (m - 2)
        return cls.from_functions(fns[:m], omega, n)

    @classmethod
    def preset(cls, name: str, m: int = 2, omega: float = 2 * math.pi, n: int = 20001) -> Signal:
        makers = {
            "cos-sin": lambda: cls.cos_sin(omega, n, m),
            "ramp": lambda: cls.ramp(omega, n, m),
            "zero": lambda: cls.zero(m, omega, n),
        }
        if name not in makers:
            raise ValueError(f"unknown signal preset {name!r}; choose from {sorted(makers)}")
        return makers[name]()


@dataclass(frozen=True)
class Trace:
    t: np.ndarray
    z: np.ndarray

    def to_csv(self) -> str:
        rows = ["t,z"] + [f"{a:.10g},{b:.12g}" for a, b in zip(self.t, self.z)]
        return "\n".join(rows) + "\n"


def _grid_index(u: Signal, t: float | None) -> int | float:
    if t is None:
        return u.n - 1
    tol = 1e-9 * u.omega
    if t < -tol or t > u.omega + tol:
        raise OutOfGrid(f"t={t} outside [0, {u.omega}]")
    return min(max(t / u.step, 0.0), u.n - 1)


def _at(path: np.ndarray, pos: float) -> float:
    lo = int(math.floor(pos))
    if lo >= len(path) - 1:
        return float(path[-1])
    frac = pos - lo
    return float(path[lo] * (1 - frac) + path[lo + 1] * frac)


def _sweep(u: Signal, i: int, inner: np.ndarray) -> np.ndarray:
    if not 1 <= i <= u.m:
        raise ValueError(f"letter x{i} needs channel {i}; signal has {u.m}")
    return cumulative_trapezoid(u.channel(i) * inner, dx=u.step, initial=0.0)


def iterated_integral_path(word: Sequence[int], u: Signal) -> np.ndarray:
    """E_eta[u](t, 0) at every grid point."""
    path = np.ones(u.n)
    for i in reversed(tuple(word)):
        path = _sweep(u, i, path)
    return path


def iterated_integral(word: Sequence[int], u: Signal, t: float | None = None) -> float:
    """E_eta[u](t, 0); t defaults to omega and is linearly interpolated between grid points."""
    pos = _grid_index(u, t)
    return _at(iterated_integral_path(word, u), pos)


def fliess_eval(c: NCSeries, u: Signal, t: float | None = None) -> float:
    """Truncated Fliess operator sum_eta <c, eta> E_eta[u](t)."""
    pos = _grid_index(u, t)
    paths: dict = {(): np.ones(u.n)}

    def path(w):
        if w not in paths:
            paths[w] = _sweep(u, w[0], path(w[1:]))
        return paths[w]

    return sum(float(q) * _at(path(w), pos) for w, q in c.items())


def integrate_abel(v: Signal, r: float, steps: int | None = None, bound: float = 1e6) -> Trace:
    """RK4 for z' = sum_i v_i(t) z^{i+1}, z(0) = r.

    ``steps`` RK4 steps need 2*steps + 1 grid points; by default every other
    grid point is a step endpoint.
    """
    if r < 0:
        raise ValueError("initial value r must be nonnegative")
    if steps is None:
        steps = (v.n - 1) // 2
    if steps < 2:
        raise ValueError("need at least 2 steps")
    stride = (v.n - 1) / (2 * steps)
    if stride != int(stride) or stride < 1:
        raise ValueError(f"{steps} steps do not fit a grid of {v.n} points")
    stride = int(stride)
    h = 2 * stride * v.step
    powers = np.arange(2, v.m + 2)
    vals = v.values

    def f(idx, z):
        return float(vals[:, idx] @ z ** powers)

    z = float(r)
    out = np.empty(steps + 1)
    out[0] = z
    for s in range(steps):
        a, mid, b = 2 * s * stride, (2 * s + 1) * stride, (2 * s + 2) * stride
        k1 = f(a, z)
        k2 = f(mid, z + h * k1 / 2)
        k3 = f(mid, z + h * k2 / 2)
        k4 = f(b, z + h * k3)
        z = z + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        if not math.isfinite(z) or abs(z) > bound:
            raise Blowup(f"|z| exceeded {bound:g} near t={b * v.step:.6g}")
        out[s + 1] = z
    return Trace(np.linspace(0.0, v.omega, steps + 1), out)


def _denominator(u: Signal, r: float, margin: float) -> np.ndarray:
    den = 1.0 - r * iterated_integral_path((1,), u)
    if den.min() <= margin:
        k = int(den.argmin())
        raise DenominatorVanished(f"1 - r E_x1[u] = {den[k]:.3g} at t={k * u.step:.6g}")
    return den


def u_to_v(u: Signal, r: float, margin: float = 1e-9) -> Signal:
    """v_i = u_i - r u_{i+1} / (1 - r E_x1[u]), v_m = u_m."""
    den = _denominator(u, r, margin)
    v = np.array(u.values)
    v[:-1] -= r * u.values[1:] / den
    return Signal(u.omega, v)


def closed_form_path(u: Signal, r: float, margin: float = 1e-9) -> np.ndarray:
    return r / _denominator(u, r, margin)


def closed_form_solution(u: Signal, r: float, t: float | None = None, margin: float = 1e-9) -> float:
    """z(t) = r / (1 - r E_x1[u](t))."""
    return _at(closed_form_path(u, r, margin), _grid_index(u, t))


def center_check(u: Signal, r_samples: Sequence[float], steps: int | None = None,
                 tol: float = 1e-6, precondition_tol: float = 1e-8) -> Report:
    """Return to the initial value at t = omega for each sampled r, plus pointwise closed-form agreement."""
    e1 = iterated_integral((1,), u)
    if abs(e1) > precondition_tol:
        raise PreconditionFailed(f"E_x1[u](omega) = {e1:.3g} is not zero")
    worst = 0.0
    parts = []
    for r in r_samples:
        trace = integrate_abel(u_to_v(u, r), r, steps)
        stride = (u.n - 1) // (len(trace.z) - 1)
        exact = closed_form_path(u, r)[::stride]
        gap = abs(trace.z[-1] - r)
        pointwise = float(np.max(np.abs(trace.z - exact)))
        worst = max(worst, gap, pointwise)
        parts.append(f"r={r:g}: |z(omega)-r|={gap:.2e}, closed-form gap {pointwise:.2e}")
    return Report("center", worst < tol, "; ".join(parts), max_error=worst, tolerance=tol)


def moment_check(v: Signal, kmax: int = 3, tol: float = 1e-5) -> list:
    """int_0^omega v_i E_x1^k = k! E_{x_i x_1^k}(omega) for i >= 2, and whether the moments vanish.

    Returns [identity report, vanishing report].
    """
    e1 = iterated_integral_path((1,), v)
    gap = 0.0
    size = 0.0
    for i in range(2, v.m + 1):
        inner = np.ones(v.n)  # E_{x_1^k}
        for k in range(kmax + 1):
            lhs = float(cumulative_trapezoid(v.channel(i) * e1**k, dx=v.step)[-1])
            rhs = math.factorial(k) * float(_sweep(v, i, inner)[-1])
            gap = max(gap, abs(lhs - rhs))
            size = max(size, abs(lhs), abs(rhs))
            inner = _sweep(v, 1, inner)
    return [
        Report("moment-identity", gap < tol, f"i=2..{v.m}, k=0..{kmax}", max_error=gap, tolerance=tol),
        Report("moments-vanish", size < tol, f"largest moment {size:.3e}", max_error=size, tolerance=tol),
    ]


def uv_moment_equivalence(u: Signal, r: float, kmax: int = 200, tol: float = 1e-5) -> Report:
    """E_xi[v](omega) = E_xi[u](omega) - r sum_k r^k k! E_{x_{i+1} x_1^k}[u](omega), i = 1..m-1."""
    v = u_to_v(u, r)
    e1_max = float(np.max(np.abs(iterated_integral_path((1,), u))))
    gap = 0.0
    used = 0
    for i in range(1, u.m):
        lhs = iterated_integral((i,), v)
        mass = float(cumulative_trapezoid(np.abs(u.channel(i + 1)), dx=u.step)[-1])
        inner = np.ones(u.n)  # E_{x_1^k}[u]
        total = 0.0
        for k in range(kmax + 1):
            total += r ** (k + 1) * math.factorial(k) * float(_sweep(u, i + 1, inner)[-1])
            used = max(used, k)
            # remaining terms are bounded by r^{k+2} * mass * max|E_x1|^{k+1}
            if r ** (k + 2) * mass * e1_max ** (k + 1) < tol * 1e-3:
                break
            inner = _sweep(u, 1, inner)
        gap = max(gap, abs(lhs - (iterated_integral((i,), u) - total)))
    return Report("uv-moment", gap < tol, f"series truncated after k={used}", max_error=gap, tolerance=tol)


def shuffle_duality_gap(u: Signal, eta: Sequence[int], xi: Sequence[int], t: float | None = None) -> float:
    """|E_eta E_xi - E_{eta sh xi}| at t."""
    pos = _grid_index(u, t)
    prod = iterated_integral(eta, u, t) * iterated_integral(xi, u, t)
    sh = sum(n * _at(iterated_integral_path(w, u), pos) for w, n in shuffle_words(tuple(eta), tuple(xi)).items())
    return abs(prod - sh)
