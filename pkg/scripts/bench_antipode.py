"""Compare the convolution and coderivation antipode algorithms across several (m, mbar) pairs.

Output is CSV on stdout; the ratio column is classical over coderivation best-of-n time.
"""
import argparse
import time
from dataclasses import dataclass

from abelhopf.hopf import HopfAlgebra


@dataclass
class Config:
    pairs: tuple = ((2, 1), (3, 2), (4, 3))
    grade: int = 7
    repetitions: int = 3


def best_time(m, mbar, grade, method, repetitions):
    best = None
    for _ in range(repetitions):
        H = HopfAlgebra(m, mbar)
        fn = H.antipode_classical if method == "classical" else H.antipode_coderivation
        gens = H.generators(grade)
        start = time.perf_counter()
        for g in gens:
            fn(g)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, len(gens)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grade", type=int, default=Config.grade)
    ap.add_argument("--repetitions", type=int, default=Config.repetitions)
    args = ap.parse_args()
    cfg = Config(grade=args.grade, repetitions=args.repetitions)

    print("m,mbar,grade,generators,classical_s,coderivation_s,ratio")
    for m, mbar in cfg.pairs:
        for grade in range(1, cfg.grade + 1):
            c, count = best_time(m, mbar, grade, "classical", cfg.repetitions)
            d, _ = best_time(m, mbar, grade, "coderivation", cfg.repetitions)
            print(f"{m},{mbar},{grade},{count},{c:.5f},{d:.5f},{c / d:.2f}")


if __name__ == "__main__":
    main()
