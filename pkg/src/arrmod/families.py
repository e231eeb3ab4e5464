"""Named arrangements and combinatorics, plus random and exhaustive generators."""
from __future__ import annotations

import cmath
import itertools
import random
from fractions import Fraction

from .combinatorics import Arrangement, Combinatorics, combinatorics_of
from .errors import NotPrime
from .perturbation import PerturbationTower, tower_from_path


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def ceva() -> tuple[Arrangement, Combinatorics]:
    A = Arrangement.from_triples(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, 1), (0, 1, 1)]
    )
    return A, combinatorics_of(A)


def a_p_combinatorics(p: int) -> Combinatorics:
    """Two p-fold points and 2p triple points on 2p + 2 lines."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    odd = [2 * i + 1 for i in range(1, p + 1)]
    even = [2 * i + 2 for i in range(1, p + 1)]
    points = [odd, even]
    for i in range(1, p + 1):
        points.append([1, 2 * i + 1, 2 * i + 2])
        points.append([2, 2 * i + 2, (2 * i) % (2 * p) + 3])
    return Combinatorics.from_points(2 * p + 2, points)


def a_p(p: int, zeta_index: int = 1) -> tuple[Arrangement, Combinatorics]:
    """The arrangement with lines x - y, x - zeta y, x + zeta^i z, zeta^-i y + z.

    ``zeta = exp(2 pi i zeta_index / p)``; coordinates are complex floats.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not (1 <= zeta_index <= p - 1):
        raise ValueError("zeta_index must be in 1..p-1")
    zeta = cmath.exp(2j * cmath.pi * zeta_index / p)
    triples = [(1, -1, 0), (1, -zeta, 0)]
    for i in range(1, p + 1):
        triples.append((1, 0, zeta**i))
        triples.append((0, zeta ** (-i), 1))
    A = Arrangement.from_triples(triples, "complex")
    return A, combinatorics_of(A)


def a_p_tower(p: int) -> PerturbationTower:
    """The 1-perturbation at (line 2p+2, {2, 3, 2p+2}) with order 3,4,5,6,1,2,7,...,2p+2."""
    C = a_p_combinatorics(p)
    n = 2 * p + 2
    order = [3, 4, 5, 6, 1, 2] + list(range(7, n + 1))
    return tower_from_path(C, [(n, (2, 3, n))], order)


def maclane() -> tuple[Arrangement, Combinatorics]:
    return a_p(3)


def y_n(n: int) -> tuple[Arrangement, Combinatorics]:
    """4n + 4 lines: z, x - kz, y - kz (k <= n) and x + y - kz (k <= 2n)."""
    if n < 1:
        raise ValueError("n >= 1")
    triples = [(0, 0, 1)]
    triples += [(1, 0, -k) for k in range(n + 1)]
    triples += [(0, 1, -k) for k in range(n + 1)]
    triples += [(1, 1, -k) for k in range(2 * n + 1)]
    A = Arrangement.from_triples(triples)
    return A, combinatorics_of(A)


def pencil(n: int) -> Combinatorics:
    if n < 2:
        raise ValueError("n >= 2")
    return Combinatorics.from_points(n, [range(1, n + 1)])


def near_pencil(n: int) -> Combinatorics:
    if n < 3:
        raise ValueError("n >= 3")
    return Combinatorics.from_points(n, [range(1, n)] if n >= 4 else [])


PENCIL_MODULI_DIMENSION = {"pencil": lambda n: max(0, n - 3), "near_pencil": lambda n: max(0, n - 4)}

_FIGURE_LINES = [
    (0, 1, 1),    # y = -1
    (0, 1, -1),   # y = 1
    (1, 0, -1),   # x = 1
    (1, 0, 1),    # x = -1
    (1, 1, 0),    # y = -x
    (1, -1, 0),   # y = x
    (2, -1, -1),  # y = 2x - 1
    (1, 0, 0),    # x = 0
]


def figure_type() -> tuple[Arrangement, Combinatorics]:
    A = Arrangement.from_triples(_FIGURE_LINES)
    return A, combinatorics_of(A)


def figure_ic() -> tuple[Arrangement, Combinatorics]:
    A = Arrangement.from_triples(_FIGURE_LINES[:7])
    return A, combinatorics_of(A)


def rigid_pencil_example() -> tuple[Arrangement, Combinatorics]:
    A = Arrangement.from_triples(
        [
            (1, 0, 0), (1, 0, -1), (0, 1, 0), (0, 1, -1), (0, 0, 1),
            (-1, 1, 0), (1, 1, -1), (-2, 4, -1), (2, -3, 1), (-4, 6, 0),
        ]
    )
    return A, combinatorics_of(A)


def pappus() -> tuple[Arrangement, Combinatorics]:
    """Nine lines through nine triple points, from points on two lines.

    Lines: the two carriers, the six joins A_i B_j (i != j), and the line
    through the three cross-join intersections.
    """
    def join(p, q):
        return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])

    F = Fraction
    A = [(F(0), F(0), F(1)), (F(1), F(0), F(1)), (F(3), F(0), F(1))]
    B = [(F(0), F(1), F(1)), (F(2), F(1), F(1)), (F(5), F(1), F(1))]
    lines = [join(A[0], A[1]), join(B[0], B[1])]
    joins = {}
    for i, j in itertools.permutations(range(3), 2):
        joins[(i, j)] = join(A[i], B[j])
        lines.append(joins[(i, j)])
    crosses = [join(joins[(i, j)], joins[(j, i)]) for i, j in ((0, 1), (0, 2), (1, 2))]
    lines.append(join(crosses[0], crosses[1]))
    arr = Arrangement.from_triples(lines)
    return arr, combinatorics_of(arr)


GENERATORS = {
    "ceva": lambda **kw: ceva(),
    "maclane": lambda p=3, zeta=1, **kw: a_p(p, zeta),
    "ap": lambda p=3, zeta=1, **kw: a_p(p, zeta),
    "y": lambda n=1, **kw: y_n(n),
    "figure-type": lambda **kw: figure_type(),
    "figure-ic": lambda **kw: figure_ic(),
    "rigid-pencil": lambda **kw: rigid_pencil_example(),
    "pappus": lambda **kw: pappus(),
}


# ---------------------------------------------------------------------------
# random and exhaustive generation


def random_combinatorics(n: int, rng: random.Random, attempts: int = 30) -> Combinatorics:
    """A random valid combinatorics: greedily add random multiple points."""
    points: list[frozenset[int]] = []
    for _ in range(attempts):
        size = rng.choice([3, 3, 3, 4, 5]) if n >= 3 else 2
        if size > n:
            continue
        cand = frozenset(rng.sample(range(1, n + 1), size))
        if all(len(cand & p) <= 1 for p in points):
            points.append(cand)
    return Combinatorics.from_points(n, [sorted(p) for p in points])


def enumerate_combinatorics(n: int, cap: int = 10_000):
    """Every labelled combinatorics on n lines (at most ``cap`` of them)."""
    cands = [c for k in range(3, n + 1) for c in itertools.combinations(range(1, n + 1), k)]
    sets = [frozenset(c) for c in cands]
    count = 0

    def rec(start, chosen):
        nonlocal count
        if count >= cap:
            return
        count += 1
        yield Combinatorics._make(n, [cands[k] for k in chosen])
        for k in range(start, len(cands)):
            if all(len(sets[k] & sets[c]) <= 1 for c in chosen):
                yield from rec(k + 1, chosen + [k])

    yield from rec(0, [])
