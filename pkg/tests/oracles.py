"""Brute-force reference implementations, written independently of arrmod.

Points are plain tuples of line labels; double points are implicit.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def closure(n, points):
    """All points including the implicit doubles."""
    pts = [frozenset(p) for p in points]
    covered = {frozenset(pr) for p in pts for pr in itertools.combinations(sorted(p), 2)}
    for pr in itertools.combinations(range(1, n + 1), 2):
        if frozenset(pr) not in covered:
            pts.append(frozenset(pr))
    return pts


def tau(n, points, seq):
    pts = closure(n, points)
    out = []
    seen = set()
    for line in seq:
        out.append(sum(1 for p in pts if line in p and len(p & seen) >= 2))
        seen.add(line)
    return tuple(out)


def generic_quad(points, quad):
    return all(len(set(p) & set(quad)) <= 2 for p in points)


def brute_ic(n, points) -> bool:
    return any(max(tau(n, points, s), default=0) <= 2 for s in itertools.permutations(range(1, n + 1)))


def brute_rigid(n, points) -> bool:
    if n <= 3:
        return True
    if n == 4:
        return not any(len(p) == 4 for p in points)
    for s in itertools.permutations(range(1, n + 1)):
        if not generic_quad(points, s[:4]):
            continue
        t = tau(n, points, s)
        if all(x >= 2 for x in t[4:]):
            return True
    return False


def sigma(points):
    return sum(len(p) - 2 for p in points if len(p) >= 3)


def perturb_raw(points, line, point):
    out = [tuple(sorted(p)) for p in points if set(p) != set(point)]
    rest = tuple(sorted(set(point) - {line}))
    if len(rest) >= 3:
        out.append(rest)
    return sorted(out)


def brute_kappa(n, points, cap=3):
    """Exhaustive search over perturbation sequences (no deduplication)."""
    frontier = [sorted(tuple(sorted(p)) for p in points if len(p) >= 3)]
    for m in range(cap + 1):
        if any(brute_ic(n, pts) for pts in frontier):
            return m
        nxt = []
        for pts in frontier:
            for p in pts:
                for line in p:
                    nxt.append(perturb_raw(pts, line, p))
        frontier = nxt
    return None


def min_cover(n, points):
    mult = [set(p) for p in points if len(p) >= 3]
    for k in range(n + 1):
        for sub in itertools.combinations(range(1, n + 1), k):
            if all(set(sub) & p for p in mult):
                return k
    return n


def det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def exact_points(rows):
    """Maximal concurrent bundles of rational lines by direct grouping."""
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    n = len(rows)
    bundles = []
    for i, j in itertools.combinations(range(n), 2):
        members = {i + 1, j + 1} | {k + 1 for k in range(n) if k not in (i, j) and det3(rows[i], rows[j], rows[k]) == 0}
        bundles.append(frozenset(members))
    return sorted({tuple(sorted(b)) for b in bundles if len(b) >= 3})


def lambda_ap(p):
    """Reference degree budget of the standard A_p tower on lines 1..2p+2."""
    out = [0, 1, 0, 0, 0, 0]
    for k in range(1, p - 1):
        out += [k, k]
    return out
