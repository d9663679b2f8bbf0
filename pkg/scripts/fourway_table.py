"""Print the graded pieces of the Abel series and time each of the four routes."""
import argparse
import time
from dataclasses import dataclass

from abelhopf.abelfeed import abel_via_feedback, abel_via_group_inverse, abel_via_realization, devlin


@dataclass
class Config:
    ms: tuple = (2, 3, 4)
    cap: int = 8


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=list(Config.ms))
    ap.add_argument("--cap", type=int, default=Config.cap)
    args = ap.parse_args()
    cfg = Config(tuple(args.m), args.cap)

    routes = {
        "devlin": lambda m: devlin(m, cfg.cap)[1],
        "group-inverse": lambda m: abel_via_group_inverse(m, cfg.cap),
        "feedback": lambda m: abel_via_feedback(m, cfg.cap),
        "realization": lambda m: abel_via_realization(m, cfg.cap),
    }
    print("m,route,terms,seconds,agrees")
    for m in cfg.ms:
        results = {}
        for name, fn in routes.items():
            start = time.perf_counter()
            results[name] = fn(m)
            elapsed = time.perf_counter() - start
            agrees = results[name] == results["devlin"]
            print(f"{m},{name},{len(results[name])},{elapsed:.4f},{agrees}")


if __name__ == "__main__":
    main()
