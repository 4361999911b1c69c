"""Independent reference computations used to freeze expected values.

Nothing here imports the package's algorithms; only plain Python, itertools
and sympy.
"""

from __future__ import annotations

import math
from itertools import combinations, product

import sympy as sp

INF = math.inf


# -- groups -------------------------------------------------------------------------

def group_elements(p, ks):
    return list(product(*(range(p**k) for k in ks)))


def brute_subgroups(p, ks):
    """Every subset containing 0 and closed under addition (small groups only)."""
    mods = [p**k for k in ks]
    els = group_elements(p, ks)
    zero = tuple(0 for _ in ks)
    rest = [e for e in els if e != zero]

    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, mods))

    out = set()
    for r in range(len(rest) + 1):
        if math.prod(mods) % (r + 1):
            continue  # Lagrange
        for sub in combinations(rest, r):
            S = set(sub) | {zero}
            if all(add(x, y) in S for x in S for y in S):
                out.add(frozenset(S))
    return out


def rank_of(p, S, mods):
    """log_p of the number of elements of order dividing p."""
    cnt = sum(1 for x in S if all((p * a) % m == 0 for a, m in zip(x, mods)))
    return round(math.log(cnt, p))


def quotient_rank(p, B, C, mods):
    """rk_p(C/B) as log_p |(C/B)[p]| computed on explicit cosets."""
    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, mods))

    cosets = {frozenset(add(c, b) for b in B) for c in C}
    cnt = 0
    for cs in cosets:
        c = next(iter(cs))
        pc = tuple(0 for _ in mods)
        for _ in range(p):
            pc = add(pc, c)
        cnt += pc in B
    return round(math.log(cnt, p))


# -- Balmer points ---------------------------------------------------------------------

def oracle_point_leq(P, Q, subsets, rk):
    (b, n), (c, m) = P, Q
    if not subsets[b] <= subsets[c]:
        return False
    if n == INF:
        return True
    if m == INF:
        return False
    return n >= m + rk[(b, c)]


def closed_threshold_functions(p, ks, bound):
    """Threshold functions (values 0..bound or INF) whose point sets are closed
    under going down, checked pairwise on explicit points."""
    mods = [p**k for k in ks]
    subs = sorted(brute_subgroups(p, ks), key=lambda S: (len(S), sorted(S)))
    n = len(subs)
    rk = {(i, j): quotient_rank(p, subs[i], subs[j], mods) for i in range(n) for j in range(n) if subs[i] <= subs[j]}
    window = bound + len(ks) + 2
    values = list(range(bound + 1)) + [INF]

    def pts(i, t):
        if t == INF:
            return []
        return [(i, k) for k in range(t, window + 1)] + [(i, INF)]

    sub_idx = dict(enumerate(subs))
    ok = {}
    for i in range(n):
        for j in range(n):
            if i == j or not subs[i] <= subs[j]:
                continue
            for ti in values:
                for tj in values:
                    Pi, Pj = set(pts(i, ti)), pts(j, tj)
                    good = True
                    for Q in Pj:
                        for k in list(range(0, window + 1)) + [INF]:
                            P = (i, k)
                            if oracle_point_leq(P, Q, sub_idx, rk) and P not in Pi:
                                good = False
                                break
                        if not good:
                            break
                    ok[(i, j, ti, tj)] = good
    out = []
    assign = [None] * n

    def rec(k):
        if k == n:
            out.append(tuple(assign))
            return
        for v in values:
            assign[k] = v
            if all(ok.get((i, k, assign[i], v), True) and ok.get((k, i, v, assign[i]), True) for i in range(k)):
                rec(k + 1)
        assign[k] = None

    rec(0)
    return out


# -- series -------------------------------------------------------------------------------

x, y = sp.symbols("x y")


def sympy_reverse(coeffs, order):
    f = sum(sp.Rational(c) * x**i for i, c in enumerate(coeffs))
    g = x
    for _ in range(order):  # fixed-point iteration g = x - (f(g) - g)
        g = sp.expand(x - (f.subs(x, g) - g))
        g = sum(g.coeff(x, i) * x**i for i in range(order + 1))
    return [g.coeff(x, i) for i in range(order + 1)]


def sympy_fgl_from_log(log_coeffs, M):
    """F(x, y) = exp(log x + log y) with exp from sympy series reversion."""
    L = lambda t: sum(sp.Rational(c) * t**i for i, c in enumerate(log_coeffs))
    ex = sympy_reverse(log_coeffs, M)
    E = lambda t: sum(c * t**i for i, c in enumerate(ex))
    F = sp.expand(E(L(x) + L(y)))
    out = {}
    for i in range(M + 1):
        for j in range(M + 1 - i):
            c = F.coeff(x, i).coeff(y, j)
            if c:
                out[(i, j)] = sp.Rational(c)
    return out
