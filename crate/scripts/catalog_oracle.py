#!/usr/bin/env python3
"""Independent rank oracle for the catalog models.

Rebuilds every parametrization from scratch, takes derivatives by exact
interpolation along lines (no symbolic differentiation), and computes ranks
by its own Gaussian elimination modulo a prime. The quadric count is exact:
it is the number of independent linear relations among the products
F_i F_j as polynomials over Q (sympy).

Writes crates/core/tests/fixtures/catalog_oracle.json.
"""

import itertools
import json
import random
import sys
from pathlib import Path

import sympy

P = (1 << 61) - 1
TRIALS = 3


def segre(l, m):
    def f(x):
        u, v = x[: l + 1], x[l + 1 :]
        return [a * b for a in u for b in v]

    return l + m + 2, f


def veronese2(k):
    def f(x):
        return [x[i] * x[j] for i in range(k + 1) for j in range(i, k + 1)]

    return k + 1, f


def grassmann(r):
    c = r + 1

    def f(x):
        a, b = x[:c], x[c:]
        return [a[i] * b[j] - a[j] * b[i] for i in range(c) for j in range(i + 1, c)]

    return 2 * c, f


def quadric(n):
    def f(x):
        t0, t = x[0], x[1:]
        return [t0 * t0] + [t0 * ti for ti in t] + [sum(ti * ti for ti in t)]

    return n + 1, f


def spinor10():
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]

    def f(x):
        t0 = x[0]
        a = {}
        for (i, j), v in zip(pairs, x[1:]):
            a[(i, j)] = v
        out = [t0 * t0] + [t0 * v for v in x[1:]]
        for skip in range(5):
            i, j, k, l = [s for s in range(5) if s != skip]
            out.append(a[(i, j)] * a[(k, l)] - a[(i, k)] * a[(j, l)] + a[(i, l)] * a[(j, k)])
        return out

    return 11, f


MODELS = {
    "segre(1,2)": segre(1, 2),
    "segre(2,2)": segre(2, 2),
    "segre(1,3)": segre(1, 3),
    "veronese2(2)": veronese2(2),
    "grassmann_lines(4)": grassmann(4),
    "grassmann_lines(5)": grassmann(5),
    **{f"quadric({n})": quadric(n) for n in range(2, 9)},
    "spinor10": spinor10(),
}


def rank_mod_p(rows):
    rows = [[v % P for v in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], P - 2, P)
        rows[rank] = [v * inv % P for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % P for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def line_coeffs(f, x, v):
    """Coefficients (g0, g1, g2) of the quadratic g(t) = f(x + t v)."""
    vals = [f([(xi + t * vi) % P for xi, vi in zip(x, v)]) for t in (0, 1, P - 1)]
    half = pow(2, P - 2, P)
    g0 = [a % P for a in vals[0]]
    g1 = [(a - b) * half % P for a, b in zip(vals[1], vals[2])]
    g2 = [((a + b) * half - c) % P for a, b, c in zip(vals[1], vals[2], vals[0])]
    return g0, g1, g2


def unit(a, i, j=None):
    e = [0] * a
    e[i] = 1
    if j is not None:
        e[j] += 1
    return e


def tangent_rows(f, a, x):
    rows = [line_coeffs(f, x, unit(a, 0))[0]]
    rows += [line_coeffs(f, x, unit(a, i))[1] for i in range(a)]
    return rows


def osculating_rows(f, a, x):
    rows = tangent_rows(f, a, x)
    for i in range(a):
        for j in range(i, a):
            rows.append(line_coeffs(f, x, unit(a, i, None if i == j else j))[2])
    return rows


def point(rng, a):
    return [rng.randrange(1, P) for _ in range(a)]


def exact_quadric_count(a, f):
    xs = sympy.symbols(f"x0:{a}")
    outs = [sympy.expand(e) for e in f(list(xs))]
    prods = [sympy.Poly(sympy.expand(outs[i] * outs[j]), *xs) for i in range(len(outs)) for j in range(i, len(outs))]
    monos = sorted({m for p in prods for m in p.monoms()})
    index = {m: k for k, m in enumerate(monos)}
    mat = sympy.zeros(len(prods), len(monos))
    for r, p in enumerate(prods):
        for m, c in zip(p.monoms(), p.coeffs()):
            mat[r, index[m]] = c
    return len(prods) - mat.rank()


def oracle(name, a, f, seed):
    rng = random.Random(seed)
    n = max(rank_mod_p(tangent_rows(f, a, point(rng, a))) for _ in range(TRIALS)) - 1
    sec = 0
    for _ in range(TRIALS):
        x, y = point(rng, a), point(rng, a)
        sec = max(sec, rank_mod_p(tangent_rows(f, a, x) + tangent_rows(f, a, y)) - 1)
    osc = max(rank_mod_p(osculating_rows(f, a, point(rng, a))) for _ in range(TRIALS)) - 1
    ambient = len(f([1] * a)) - 1
    return {
        "n": n,
        "N": ambient,
        "secant_dim": sec,
        "delta": 2 * n + 1 - sec,
        "second_form_dim": osc - n - 1,
        "quadrics": exact_quadric_count(a, f),
    }


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures/catalog_oracle.json"
    table = {name: oracle(name, a, f, 20260101 + k) for k, (name, (a, f)) in enumerate(MODELS.items())}
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(table, indent=2, sort_keys=True) + "\n")
    for name, row in table.items():
        print(name, row)


if __name__ == "__main__":
    main()
