#!/usr/bin/env python3
"""Independent scan of special Cremona transformations of type (2, d).

Re-derives the candidate list by brute force over n with exact fractions,
using its own copy of the necessary conditions, and brute-forces the
relation 2 + n = d2((2 - d1) n + 2) over a box. Writes
crates/core/tests/fixtures/cremona_scan.json.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

D_RANGE = range(2, 13)
N_CAP = 400


def r_x(delta):
    return (delta - 1) // 2


def parity_div(n, delta):
    if delta < 3:
        return True
    return (n - delta) % 2 == 0 and (n - delta) % (2 ** r_x(delta)) == 0


def high_defect_pairs():
    return {(n, dl) for dl in range(1, 200) for n in range(dl + 1, 2 * dl) if parity_div(n, dl)}


HIGH = high_defect_pairs()


def admissible(n, delta, ambient):
    if delta == n:
        return ambient == n + 1
    if delta == n - 1 and n not in (2, 3):
        return False
    if delta == n - 1 and ambient > 5:
        return False
    if 2 * delta > n and (n, delta) not in HIGH:
        return False
    if 2 * delta == n and n not in (2, 4, 8, 16):
        return False
    if not parity_div(n, delta):
        return False
    return 2 * n + 1 - delta <= ambient <= n * (n + 3) // 2


def classify(d, n_max):
    rows = []
    for n in range(1, n_max + 1):
        delta = Fraction(n + 2, d) - 1
        if delta.denominator != 1 or delta < 0:
            continue
        delta = int(delta)
        ambient = 2 * n + 2 - delta
        if delta == 0:
            rows.append([ambient, n, delta, "delta-zero"])
            continue
        ok = True
        if delta == 1 and d >= 3:
            ok = False
        if delta == 2 and n % 2:
            ok = False
        if delta >= 3:
            if delta % 2 or n % 2 or d % 2:
                ok = False
            elif (d * (2 * r_x(delta) + 3) - 2) % (2 ** r_x(delta)):
                ok = False
        if ok and not admissible(n, delta, ambient):
            ok = False
        if ok:
            rows.append([ambient, n, delta, "fano"])
    return rows


def two_n_plus_one():
    sols = set()
    for d1 in range(2, 40):
        for d2 in range(2, 40):
            for n in range(1, N_CAP):
                if 2 + n != d2 * ((2 - d1) * n + 2):
                    continue
                if d1 == 2 and d2 >= 3:
                    continue
                sols.add((d1, d2, n))
    return sorted(sols)


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures/cremona_scan.json"
    table = {
        "type2d": {str(d): classify(d, N_CAP) for d in D_RANGE},
        "two_n_plus_one": [list(s) for s in two_n_plus_one()],
        "n_cap": N_CAP,
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(table, indent=1) + "\n")
    for d, rows in table["type2d"].items():
        print(d, rows)
    print(table["two_n_plus_one"])


if __name__ == "__main__":
    main()
