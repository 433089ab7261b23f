"""How often does the character formula change when two rows with equal B swap?

Evaluates the formula on the stored order (no tie rule) before and after one
change of order between tied rows, over random nonzero blocks.
"""

import argparse
import random

from apk.arthur import TIES_AS_GIVEN, character_of
from apk.ems import ExtendedMultiSegment, ExtendedSegment, normalize_row, sign_condition
from apk.nonvanishing import nonzero
from apk.orders import swap_adjacent


def random_block(rng, max_rows, hi):
    n = rng.randint(2, max_rows)
    segs = []
    for _ in range(n):
        B = rng.randint(-hi, hi)
        A = rng.randint(max(B, -B), hi)
        segs.append((B, A))
    segs.sort()
    rows = []
    for B, A in segs:
        r = ExtendedSegment.of(A, B, 0, 1)
        rows.append(normalize_row(r.with_(l=rng.randint(0, r.b // 2), eta=rng.choice((1, -1)))))
    return ExtendedMultiSegment.single(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    checked = flipped = 0
    for _ in range(args.samples):
        E = random_block(rng, 4, 5)
        rows = E.rows()
        ks = [k for k in range(1, len(rows)) if rows[k].B == rows[k - 1].B and rows[k].seg != rows[k - 1].seg]
        if not ks or not sign_condition(E) or not nonzero(E):
            continue
        k = ks[0]
        a = character_of(E, ties=TIES_AS_GIVEN).signs
        b = list(character_of(swap_adjacent(E, None, k), ties=TIES_AS_GIVEN).signs)
        b[k - 1], b[k] = b[k], b[k - 1]
        checked += 1
        flipped += tuple(b) != a
    print(f"tied swaps: {checked}, character changed: {flipped} ({flipped / max(checked, 1):.1%})")


if __name__ == "__main__":
    main()
