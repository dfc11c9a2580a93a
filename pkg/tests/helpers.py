"""Deterministic random instances shared by the test modules."""

from __future__ import annotations

import random

from gmpy2 import mpq

from walkerhol.exactnum import Poly, as_ratfunc
from walkerhol.walker import WalkerMetric


def random_poly(rng: random.Random, N: int, variables, maxdeg: int, nterms: int) -> Poly:
    variables = list(variables)
    terms = {}
    for _ in range(nterms):
        exps = [0] * N
        for _ in range(rng.randint(0, maxdeg)):
            exps[rng.choice(variables)] += 1
        terms[tuple(exps)] = terms.get(tuple(exps), mpq(0)) + mpq(rng.randint(-5, 5), rng.randint(1, 3))
    return Poly(N, terms)


def random_flat_metric(rng: random.Random, n: int, maxdeg: int = 4) -> WalkerMetric:
    N = n + 2
    u = [random_poly(rng, N, range(1, N), maxdeg, 3) for _ in range(n)]
    f = random_poly(rng, N, range(N), maxdeg, 4)
    return WalkerMetric.flat(n, u=u, f=f)


def random_diag_metric(rng: random.Random, n: int, maxdeg: int = 4) -> WalkerMetric:
    """u = 0 and h independent of x^{n+1}; full symmetric h for n <= 3, diagonal above."""
    N = n + 2
    zero = Poly.zero(N)
    h = [[as_ratfunc(zero)] * n for _ in range(n)]
    for i in range(n):
        d = Poly.zero(N)
        while d.is_zero():
            d = random_poly(rng, N, range(1, n + 1), 2, 2) + 2
        h[i][i] = as_ratfunc(d)
        if n <= 3:
            for j in range(i + 1, n):
                h[i][j] = h[j][i] = as_ratfunc(random_poly(rng, N, range(1, n + 1), 1, 1))
    f = random_poly(rng, N, range(N), maxdeg, 4)
    return WalkerMetric(n, "diag", [zero] * n, f, h=h)
