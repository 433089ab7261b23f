"""Count the packet of rho x (S51 x S31 + S31 x S45 + S13 x S5) and split it by l on the row [8,4]."""

import argparse
import time
from collections import Counter

from apk import packet_enumerate
from apk.ems import AParameter, GroupSpec, RhoLabel, SP, Segment, Summand


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=None, help="process pool size (default APK_THREADS)")
    args = ap.parse_args()

    one = RhoLabel("1")
    psi = AParameter((Summand(one, 51, 31), Summand(one, 31, 45), Summand(one, 13, 5)), GroupSpec(SP, 1520))
    t0 = time.perf_counter()
    members = packet_enumerate(psi, workers=args.workers)
    dt = time.perf_counter() - t0

    # the short row is the only one with few (l, eta) choices
    short = Segment(8, 4)
    by_l = Counter(next(r.l for r in m.E.rows() if r.seg == short) for m in members)
    for l in sorted(by_l):
        print(f"l = {l} on {short}: {by_l[l]}")
    print(f"total: {len(members)}  ({dt:.2f} s)")


if __name__ == "__main__":
    main()
