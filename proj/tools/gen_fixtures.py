#!/usr/bin/env python3
"""Regenerate fixtures/*.json with slow, independent evaluators.

Each triangle is computed from a closed form or a direct recurrence over
Python Fractions, sharing no code with the C++ library.

    python3 tools/gen_fixtures.py [--rows 8] [--out fixtures]
"""

import argparse
import json
import re
from fractions import Fraction
from math import comb, factorial
from pathlib import Path


def table(rows, entry):
    return [[entry(n, k) for k in range(n + 1)] for n in range(rows)]


def recurrence(rows, a, b, c):
    """t(n,k) = a(n,k) t(n-1,k-1) + b(n,k) t(n-1,k) + c(n,k) t(n-2,k-1)."""
    t = {}

    def get(n, k):
        return t.get((n, k), Fraction(0))

    for n in range(rows):
        for k in range(n + 1):
            if n == 0:
                t[(n, k)] = Fraction(1)
                continue
            v = a(n, k) * get(n - 1, k - 1) + b(n, k) * get(n - 1, k)
            if n >= 2:
                v += c(n, k) * get(n - 2, k - 1)
            t[(n, k)] = v
    return [[get(n, k) for k in range(n + 1)] for n in range(rows)]


def stirling2(n, k):
    if n == 0 and k == 0:
        return Fraction(1)
    s = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    return Fraction(s, factorial(k))


def lah(n, k):
    if n == 0 and k == 0:
        return Fraction(1)
    if k == 0:
        return Fraction(0)
    return Fraction(comb(n - 1, k - 1) * factorial(n), factorial(k))


def stirling1(rows):
    # coefficients of the rising factorial x(x+1)...(x+n-1)
    out = []
    poly = [Fraction(1)]
    for n in range(rows):
        out.append(poly[:])
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, p in enumerate(poly):
            nxt[i] += n * p
            nxt[i + 1] += p
        poly = nxt
    return out


def delannoy(n, k):
    a, b = n - k, k
    return Fraction(sum(comb(a, j) * comb(b, j) * 2**j for j in range(min(a, b) + 1)))


def eulerian(n, k):
    # permutations of n+1 letters with k descents, by brute force
    from itertools import permutations

    count = 0
    for p in permutations(range(n + 1)):
        if sum(p[i] > p[i + 1] for i in range(n)) == k:
            count += 1
    return Fraction(count)


def whitney(m, r):
    def entry(n, k):
        # (1/(m^k k!)) sum_j (-1)^(k-j) C(k,j) (r + m j)^n, or the limit m = 0
        if m == 0:
            return Fraction(comb(n, k) * r ** (n - k))
        s = sum((-1) ** (k - j) * comb(k, j) * (r + m * j) ** n for j in range(k + 1))
        return Fraction(s, m**k * factorial(k))

    return entry


def bell_partial(x):
    """B_{n,k}(x_1, x_2, ...) by summing over compositions of n into k blocks."""
    memo = {}

    def b(n, k):
        if (n, k) in memo:
            return memo[(n, k)]
        if n == 0 and k == 0:
            v = Fraction(1)
        elif n == 0 or k == 0:
            v = Fraction(0)
        else:
            v = sum(comb(n - 1, i - 1) * x[i - 1] * b(n - i, k - 1) for i in range(1, n - k + 2))
        memo[(n, k)] = Fraction(v)
        return memo[(n, k)]

    return b


def build(rows):
    rev = lambda tab: [list(reversed(r)) for r in tab]
    s2 = table(rows, lambda n, k: stirling2(n + 1, k + 1))
    const = lambda v: (lambda n, k: Fraction(v))
    return {
        "pascal": ((0, 0), table(rows, lambda n, k: Fraction(comb(n, k)))),
        "stirling1": ((0, 0), stirling1(rows)),
        "stirling1_B": ((0, 0), recurrence(rows, const(1), lambda n, k: Fraction(2 * n - 1), const(0))),
        "stirling2": ((1, 1), s2),
        "stirling2_unshifted": ((0, 0), table(rows, stirling2)),
        "stirling2_reversed": ((1, 1), rev(s2)),
        "lah": ((1, 1), table(rows, lambda n, k: lah(n + 1, k + 1))),
        "idempotent": ((0, 0), table(rows, lambda n, k: Fraction(comb(n, k) * k ** (n - k)))),
        "whitney(1,1)": ((0, 0), table(rows, whitney(1, 1))),
        "whitney(2,1)": ((0, 0), table(rows, whitney(2, 1))),
        "whitney(2,2)": ((0, 0), table(rows, whitney(2, 2))),
        "whitney(1,3)": ((0, 0), table(rows, whitney(1, 3))),
        "delannoy": ((0, 0), table(rows, delannoy)),
        "derangement_A": (
            (0, 0),
            recurrence(rows, const(0), lambda n, k: Fraction(n - 1), lambda n, k: Fraction(n - 1)),
        ),
        "derangement_B": (
            (0, 0),
            recurrence(rows, const(1), lambda n, k: Fraction(2 * n - 2), lambda n, k: Fraction(2 * n - 2)),
        ),
        "eulerian": ((0, 0), table(rows, eulerian)),
        "bell_iteration(1,2,3,4,5,6,7,8)": ((0, 0), table(rows, bell_partial([Fraction(i) for i in range(1, 9)]))),
    }


def stem(name):
    return re.sub(r"_+$", "", re.sub(r"[^A-Za-z0-9_]+", "_", name.replace("-", "m")))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=8)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (shift, tab) in build(args.rows).items():
        doc = {"name": name, "index_shift": list(shift), "rows": [[str(v) for v in row] for row in tab]}
        (out / f"{stem(name)}.json").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
