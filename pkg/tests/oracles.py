"""Independent reference computations used as test oracles.

Nothing here calls into ckarith: these are the slow, obviously-correct
routes the package is checked against.
"""

from itertools import combinations
from math import gcd

# (a, b) for y^2 = x^3 + a x + b
CORPUS = [(0, 1), (-1, 0), (1, 1), (-2, 2), (0, 7)]


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def cofactor_det(a):
    """Laplace expansion along the first row."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j]:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * a[0][j] * cofactor_det(minor)
    return total


def determinantal_invariants(a):
    """Invariant factors via gcds of k x k minors: d_k = D_k / D_{k-1}."""
    nr, nc = len(a), len(a[0])
    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                g = gcd(g, cofactor_det([[a[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def brute_force_count(a, b, p):
    """#E(F_p) by visiting every affine pair, plus the point at infinity."""
    return 1 + sum(
        1 for x in range(p) for y in range(p) if (y * y - x * x * x - a * x - b) % p == 0
    )
