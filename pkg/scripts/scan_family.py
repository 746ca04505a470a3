"""Tabulate the family G_n = [[4, 2n], [2n, 2]] over a range of n."""

import argparse
import time

from k3lat.family import verify_main_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--from", dest="lo", type=int, default=2)
    ap.add_argument("--to", dest="hi", type=int, default=60)
    args = ap.parse_args()
    print(f"{'n':>4} {'r':>7} {'pell -8':>8} {'status':>16} {'ms':>7}")
    for n in range(args.lo, args.hi + 1):
        t0 = time.perf_counter()
        rep = verify_main_theorem(n)
        ms = (time.perf_counter() - t0) * 1000
        pell = "solv" if rep.pell_hypothesis.solvable else "unsolv"
        print(f"{n:>4} {rep.instance.r:>7} {pell:>8} {rep.status:>16} {ms:>7.1f}")


if __name__ == "__main__":
    main()
