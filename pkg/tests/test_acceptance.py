"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every test records a one-line verdict; the lines are printed in the terminal summary.
"""
import itertools
import json
import math
import time

import numpy as np
import pytest

from abelhopf.abelfeed import devlin, ferfera, verify_four_way, verify_shuffle_identity
from abelhopf.cli import main
from abelhopf.compose import ToeplitzSeries, group_inverse
from abelhopf.fdbclassical import fdb_antipode_row, h, matmul, mh_inverse, mh_matrix, symbolic_toeplitz_inverse
from abelhopf.hopf import (
    CoordGen,
    HopfAlgebra,
    check_algorithm_equivalence,
    check_antipode_axiom,
    check_coassociativity,
    check_counit,
    check_grading,
    eval_coord,
)
from abelhopf.numeric import Signal, center_check, moment_check, shuffle_duality_gap
from abelhopf.polyring import CPoly
from abelhopf.series import NCSeries
from conftest import ACCEPTANCE

E = ()


class Criterion:
    def __init__(self, number, title, budget=None):
        self.number, self.title, self.budget = number, title, budget
        self.start = time.perf_counter()

    def record(self, ok, detail):
        elapsed = time.perf_counter() - self.start
        in_time = self.budget is None or elapsed < self.budget
        limit = f" (budget {self.budget:g} s)" if self.budget else ""
        verdict = "PASS" if ok and in_time else "FAIL"
        ACCEPTANCE.append(f"[{verdict}] {self.number:>2}. {self.title}: {detail}; {elapsed:.2f} s{limit}")
        assert ok, detail
        assert in_time, f"took {elapsed:.2f} s, budget {self.budget} s"


def a(k, *word):
    return CPoly.gen(CoordGen(k, word))


def test_01_devlin_table(capsys):
    crit = Criterion(1, "devlin table m=3 cap=4", budget=1.0)
    assert main(["devlin", "--m", "3", "--cap", "4"]) == 0
    row = capsys.readouterr().out.splitlines()[-1]
    piece = devlin(3, 4)[0][4]
    expected = {(1, 1, 1, 1): 24, (2, 1, 1): 12, (1, 2, 1): 8, (3, 1): 4, (1, 1, 2): 6, (2, 2): 3, (1, 3): 2}
    ok = dict(piece.items()) == expected and row.startswith("n=5: 24 x1.x1.x1.x1")
    crit.record(ok, "c(5) has 7 exact integer coefficients" if ok else f"got {row}")


def test_02_four_way():
    crit = Criterion(2, "four-way Abel equality m=2,3,4 cap=8", budget=60.0)
    reports = [verify_four_way(m, 8) for m in (2, 3, 4)]
    crit.record(all(reports), "; ".join(r.detail for r in reports))


def test_03_shuffle_identities():
    crit = Criterion(3, "shuffle identities m=2,3 cap=6", budget=30.0)
    reports = [verify_shuffle_identity(m, 6) for m in (2, 3)]
    crit.record(all(reports), "; ".join(r.detail for r in reports))


def test_04_antipode_ground_truth():
    crit = Criterion(4, "antipode ground truth")
    H4, H3 = HopfAlgebra(4, 3), HopfAlgebra(3, 2)
    values = {
        (H4, 1, E): -a(1),
        (H4, 2, E): -a(2) + a(1) * a(1),
        (H4, 3, E): -a(3) + a(1) * a(2).scale(2) - a(1) * a(1) * a(1),
        (H3, 1, (1,)): -a(1, 1),
        (H3, 1, (2,)): -a(1, 2) + a(1, 1) * a(1),
        (H3, 1, (3,)): -a(1, 3) + a(1, 1) * a(2) - a(1, 1) * a(1) * a(1) + a(1, 2) * a(1),
        (H3, 2, (1,)): -a(2, 1) + a(1, 1) * a(1).scale(2),
        (H3, 2, (2,)): -a(2, 2) + a(2, 1) * a(1) - a(1, 1) * a(1) * a(1).scale(2) + a(1, 2) * a(1).scale(2),
        (H3, 2, (3,)): (-a(2, 3) + a(1, 3) * a(1).scale(2) - a(1, 2) * a(1) * a(1).scale(2) + a(2, 2) * a(1)
                        - a(2, 1) * a(1) * a(1) + a(2, 1) * a(2) - a(1, 1) * a(1) * a(2).scale(2)
                        + a(1, 1) * a(1) * a(1) * a(1).scale(2)),
    }
    bad = [f"S a[{k};{w}]" for (H, k, w), p in values.items()
           if not H.antipode_classical(H.gen(k, w)) == H.antipode_coderivation(H.gen(k, w)) == p]

    # the eight inverse coordinates on d = (-c_F, 0): d^{-1} = (1 + x1 + x2 + x3 + ..., 1 + 2x1 + 2x2 + 2x3 + ...)
    cap = 4
    d = ToeplitzSeries(3, [-ferfera(cap, 3), NCSeries.zero(3, cap)])
    inv = group_inverse(d)
    coords = [(1, E), (2, E), (1, (1,)), (1, (2,)), (1, (3,)), (2, (1,)), (2, (2,)), (2, (3,))]
    for k, w in coords:
        p = H3.antipode_classical(H3.gen(k, w))
        expected = 1 if k == 1 or not w else 2
        if not eval_coord(p, d) == inv.entries[k - 1][w] == expected:
            bad.append(f"<d^-1_{k}, {w}>")
    ok = not bad and len(coords) == 8
    crit.record(ok, "9 antipodes and 8 inverse coordinates exact" if ok else f"mismatch: {bad}")


def test_05_hopf_axioms():
    crit = Criterion(5, "Hopf axioms grade <= 6", budget=120.0)
    failures, count = [], 0
    for m, mbar in ((2, 1), (3, 2), (4, 3)):
        H = HopfAlgebra(m, mbar)
        count += len(H.generators(6))
        for rep in (check_coassociativity(H, 6), check_counit(H, 6), check_grading(H, 6),
                    check_antipode_axiom(H, 6, "classical"), check_antipode_axiom(H, 6, "coderivation")):
            if not rep:
                failures.append(rep.line())
    crit.record(not failures, f"{count} generators over (2,1), (3,2), (4,3)" if not failures else failures[0])


def test_06_algorithm_equivalence(capsys):
    crit = Criterion(6, "classical == coderivation antipode m=3 mbar=2 grade <= 7")
    rep = check_algorithm_equivalence(HopfAlgebra(3, 2), 7)
    assert main(["bench", "--m", "3", "--grade", "7", "--repetitions", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    last = rows[-1].split(",")
    ratio = int(last[2]) / max(int(last[3]), 1)
    crit.record(bool(rep) and len(rows) == 8,
                f"{rep.detail}; bench CSV {len(rows) - 1} rows, grade 7 classical/coderivation time ratio {ratio:.1f} (measured, not gated)")


def test_07_classical_fdb():
    crit = Criterion(7, "classical Faa di Bruno reference values")
    H = lambda i: CPoly.gen(h(i))
    inv = symbolic_toeplitz_inverse(4)
    displays = [-H(1), -H(2) + H(1) * H(1), -H(3) + H(1) * H(2).scale(2) - H(1) * H(1) * H(1)]
    rows = [-H(2), -H(3) + H(2) * H(2).scale(2),
            -H(4) + H(2) * H(3).scale(5) - H(2) * H(2) * H(2).scale(5),
            -H(5) + H(2) * H(4).scale(6) + H(3) * H(3).scale(3) - H(2) * H(2) * H(3).scale(21)
            + H(2) * H(2) * H(2) * H(2).scale(14)]
    top = mh_inverse(5)[0]
    ok_inv = inv == displays
    ok_rows = all(fdb_antipode_row(j) == rows[j - 1] == top[j] for j in range(1, 5))
    ok_id = all(
        matmul(mh_matrix(n, h1=1), mh_inverse(n))[i][j] == (1 if i == j else 0)
        for n in range(1, 6) for i in range(n) for j in range(n)
    )
    ok = ok_inv and ok_rows and ok_id
    crit.record(ok, "h~1..h~3, top row j<=4 and M_h M_h^-1 = I for n<=5 exact"
                if ok else f"inverse {ok_inv}, rows {ok_rows}, identity {ok_id}")


def test_08_center():
    crit = Criterion(8, "numeric center cos/sin on [0, 2pi]")
    rep = center_check(Signal.cos_sin(n=20001), [0.05, 0.1, 0.2], steps=10_000, tol=1e-6)
    crit.record(bool(rep), f"max error {rep.max_error:.2e} < 1e-6 at 10^4 RK4 steps")


def _words(m, length):
    return [w for n in range(length + 1) for w in itertools.product(range(1, m + 1), repeat=n)]


def test_09_bridge():
    crit = Criterion(9, "shuffle-integral duality and moment identity")
    t = np.linspace(0, 1, 4001)
    inputs = {
        "cos-sin": Signal.cos_sin(omega=1.0, n=4001),
        "exp-poly": Signal(1.0, np.vstack([np.exp(-t) * (1 + t), 0.5 - t**2 + np.sin(3 * t)])),
    }
    worst = 0.0
    for u in inputs.values():
        for eta, xi in itertools.product(_words(2, 4), repeat=2):
            if len(eta) + len(xi) <= 4:
                worst = max(worst, shuffle_duality_gap(u, eta, xi))
    moments = [moment_check(u, kmax=3, tol=1e-5)[0] for u in inputs.values()]
    moments.append(moment_check(Signal.cos_sin(omega=2 * math.pi, n=20001, m=3), kmax=3, tol=1e-5)[0])
    gap = max(r.max_error for r in moments)
    ok = worst < 1e-5 and all(moments)
    crit.record(ok, f"duality gap {worst:.1e}, moment gap {gap:.1e} (tolerance 1e-5)")


def test_10_determinism(capsys):
    crit = Criterion(10, "verify --suite all --seed 42 is byte-identical")
    outputs = []
    for _ in range(2):
        assert main(["verify", "--suite", "all", "--seed", "42"]) == 0
        outputs.append(capsys.readouterr().out)
    ok = outputs[0] == outputs[1] and json.loads(outputs[0])["pass"]
    crit.record(ok, f"{len(outputs[0].encode())} bytes, identical" if ok else "outputs differ")
