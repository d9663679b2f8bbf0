"""Named verification suites; each returns a list of :class:`Report` in a fixed order."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import abelfeed, fdbclassical, hopf, numeric
from .compose import ToeplitzSeries
from .polyring import CPoly, UPoly
from .report import Report
from .series import NCSeries


@dataclass(frozen=True)
class SuiteConfig:
    m: int = 3
    cap: int = 6
    grade: int = 6
    seed: int = 0
    grid: int = 4001


def fourway(cfg: SuiteConfig) -> list:
    reports = [abelfeed.verify_four_way(cfg.m, cfg.cap)]
    reports.append(abelfeed.check_grading_preservation(abelfeed.ferfera_realization(cfg.m), cfg.cap))
    return reports


def shuffle_identity(cfg: SuiteConfig) -> list:
    return [abelfeed.verify_shuffle_identity(cfg.m, cfg.cap)]


def fixed_point(cfg: SuiteConfig) -> list:
    return [abelfeed.verify_fixed_point(cfg.m, cfg.cap)]


def hopf_axioms(cfg: SuiteConfig) -> list:
    H = hopf.HopfAlgebra(cfg.m, cfg.m - 1)
    return [
        hopf.check_coassociativity(H, cfg.grade),
        hopf.check_counit(H, cfg.grade),
        hopf.check_grading(H, cfg.grade),
        hopf.check_antipode_axiom(H, cfg.grade, "classical"),
        hopf.check_antipode_axiom(H, cfg.grade, "coderivation"),
    ]


def antipode_equiv(cfg: SuiteConfig) -> list:
    H = hopf.HopfAlgebra(cfg.m, cfg.m - 1)
    cap = min(cfg.cap, cfg.grade)
    ferfera = ToeplitzSeries(cfg.m, [-abelfeed.ferfera(cap, cfg.m)] + [NCSeries.zero(cfg.m, cap)] * (cfg.m - 2))
    inverse_check = hopf.antipode_vs_group_inverse(cfg.m - 1, cfg.m, cap, d=ferfera)
    inverse_check.name += " d=(-c_F, 0, ...)"
    return [
        hopf.check_algorithm_equivalence(H, cfg.grade),
        inverse_check,
        hopf.antipode_vs_group_inverse(cfg.m - 1, cfg.m, cap, seed=cfg.seed),
        hopf.check_duality(cfg.m, cap, seed=cfg.seed),
    ]


def fdb(cfg: SuiteConfig) -> list:
    n = 5
    out = []
    prod = fdbclassical.matmul(fdbclassical.mh_matrix(n, h1=1), fdbclassical.mh_inverse(n))
    ident = all(prod[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    out.append(Report(f"mh-inverse n={n}", ident, "M_h M_h^-1 = I at h1 = 1" if ident else "product is not the identity"))

    top = fdbclassical.mh_inverse(n)[0]
    bad = [j for j in range(1, n) if fdbclassical.fdb_antipode_row(j) != top[j]]
    out.append(Report("antipode-row", not bad, f"j=1..{n - 1}" if not bad else f"row formula differs at j={bad[0]}"))

    inv = fdbclassical.symbolic_toeplitz_inverse(n + 1)
    bad = [j for j in range(1, n + 1) if fdbclassical.alternating_column_sum(j) != inv[j - 1]]
    out.append(Report("alternating-sign", not bad, f"j=1..{n}" if not bad else f"mismatch at j={bad[0]}"))

    bad = [j for j, p in enumerate(inv, 1) if not p.is_homogeneous(j)]
    out.append(Report("inverse-homogeneity", not bad, f"j=1..{n}" if not bad else f"h~{bad[0]} not homogeneous"))

    rng = random.Random(cfg.seed)
    values = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
    lookup = lambda g: values[g.index - 1]
    f = [(-1) ** k * math.factorial(k) for k in range(n + 1)]
    g = [0] + [math.factorial(i) * values[i - 1] for i in range(1, n + 1)]
    composed = fdbclassical.fdb_series_compose(f, g, n)
    via_bell = [composed[j] / math.factorial(j) for j in range(1, n + 1)]
    symbolic = [p.substitute(lookup) for p in inv]
    multinomial = [p(0) for p in abelfeed.toeplitz_inverse_entries([UPoly.const(q) for q in values])]
    ok = via_bell == symbolic == multinomial
    out.append(Report("inverse-three-routes", ok, "Bell composition, symbolic and multinomial agree" if ok
                      else f"{via_bell} / {symbolic} / {multinomial}"))
    return out


def _smooth_signal(m: int, omega: float, n: int, seed: int) -> numeric.Signal:
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1, 1, size=(m, 3))
    b = rng.uniform(-1, 1, size=(m, 3))
    t = np.linspace(0.0, omega, n)
    k = np.arange(3)[:, None]
    vals = a @ np.cos(k * t) + b @ np.sin(k * t)
    return numeric.Signal(omega, vals)


def _words_up_to(m: int, length: int) -> list:
    return [w for n in range(length + 1) for w in itertools.product(range(1, m + 1), repeat=n)]


def numeric_bridge(cfg: SuiteConfig, tol: float = 1e-5) -> list:
    out = []
    m = max(cfg.m, 2)
    signals = {
        "cos-sin": numeric.Signal.cos_sin(omega=1.0, n=cfg.grid, m=m),
        f"trig seed={cfg.seed}": _smooth_signal(m, 1.0, cfg.grid, cfg.seed),
    }
    words = _words_up_to(m, 4)
    for name, u in signals.items():
        worst = 0.0
        for eta in words:
            for xi in words:
                if len(eta) + len(xi) <= 4 and eta <= xi:
                    worst = max(worst, numeric.shuffle_duality_gap(u, eta, xi))
        out.append(Report(f"shuffle-duality {name}", worst < tol, "|eta|+|xi| <= 4", max_error=worst, tolerance=tol))
        out.append(numeric.moment_check(u, kmax=3, tol=tol)[0])
        out[-1].name += f" {name}"
    u = numeric.Signal.cos_sin(n=20001, m=m)
    out.append(numeric.center_check(u, [0.05, 0.1, 0.2]))
    out.append(numeric.uv_moment_equivalence(numeric.Signal.cos_sin(n=cfg.grid, m=m), 0.1, tol=tol))
    return out


SUITES = {
    "fourway": fourway,
    "shuffle-identity": shuffle_identity,
    "fixed-point": fixed_point,
    "hopf-axioms": hopf_axioms,
    "antipode-equiv": antipode_equiv,
    "fdb": fdb,
    "numeric-bridge": numeric_bridge,
}


def run_suite(name: str, cfg: SuiteConfig) -> list:
    if name == "all":
        return [r for fn in SUITES.values() for r in fn(cfg)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](cfg)
