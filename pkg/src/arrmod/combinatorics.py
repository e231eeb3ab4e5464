"""Abstract line combinatorics, arrangements, orders and types.

Lines are labelled ``1..n``.  A :class:`Combinatorics` stores only its
multiple points (size >= 3); every pair of lines not covered by one of them
is an implicit double point.  Points are sorted tuples of line labels.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AmbiguousTolerance, DegenerateArrangement, InvalidCombinatorics

Point = tuple[int, ...]

DEFAULT_TOL = 1e-9


def default_tolerance() -> float:
    """Float tolerance, overridable through the ``ARRMOD_TOL`` environment variable."""
    value = os.environ.get("ARRMOD_TOL")
    return float(value) if value else DEFAULT_TOL


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(lines: Iterable[int]) -> int:
    m = 0
    for line in lines:
        m |= 1 << (line - 1)
    return m


def lines_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def validate(n: int, points: Iterable[Iterable[int]]) -> list[str]:
    """Return the list of violated combinatorics axioms (empty when valid).

    Accepts storage with or without explicit double points.
    """
    violations = []
    if n < 0:
        violations.append(f"negative line count {n}")
    pts = [tuple(p) for p in points]
    seen_pairs: dict[tuple[int, int], Point] = {}
    seen_points = set()
    for p in pts:
        s = tuple(sorted(set(p)))
        if len(s) != len(p):
            violations.append(f"point {list(p)} repeats a line")
        if len(s) < 2:
            violations.append(f"point {list(p)} has size < 2")
        bad = [i for i in s if not (isinstance(i, int) and 1 <= i <= n)]
        if bad:
            violations.append(f"point {list(p)} has lines outside 1..{n}: {bad}")
        if s in seen_points:
            violations.append(f"point {list(s)} listed twice")
            continue
        seen_points.add(s)
        for pair in itertools.combinations(s, 2):
            if pair in seen_pairs:
                violations.append(
                    f"pair {list(pair)} lies in two points {list(seen_pairs[pair])} and {list(s)}"
                )
            else:
                seen_pairs[pair] = s
    return violations


@dataclass(frozen=True)
class Combinatorics:
    """Labelled line combinatorics in canonical form (multiple points only)."""

    n: int
    points: tuple[Point, ...]

    @classmethod
    def from_points(cls, n: int, points: Iterable[Iterable[int]]) -> "Combinatorics":
        pts = [tuple(p) for p in points]
        violations = validate(n, pts)
        if violations:
            raise InvalidCombinatorics(violations)
        return cls._make(n, (p for p in pts if len(p) >= 3))

    @classmethod
    def _make(cls, n: int, points: Iterable[Iterable[int]]) -> "Combinatorics":
        return cls(n, tuple(sorted(tuple(sorted(p)) for p in points)))

    @classmethod
    def generic(cls, n: int) -> "Combinatorics":
        return cls(n, ())

    # -- derived data --------------------------------------------------
    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(p) for p in self.points)

    @cached_property
    def _through(self) -> dict[int, tuple[int, ...]]:
        through: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        for k, p in enumerate(self.points):
            for i in p:
                through[i].append(k)
        return {i: tuple(v) for i, v in through.items()}

    @cached_property
    def _pair_index(self) -> dict[tuple[int, int], int]:
        idx = {}
        for k, p in enumerate(self.points):
            for pair in itertools.combinations(p, 2):
                idx[pair] = k
        return idx

    def points_through(self, line: int) -> tuple[Point, ...]:
        """Multiple points containing ``line``."""
        return tuple(self.points[k] for k in self._through[line])

    def point_of(self, i: int, j: int) -> Point:
        """The unique point (possibly an implicit double) containing lines i and j."""
        if i == j:
            raise ValueError("a point needs two distinct lines")
        a, b = min(i, j), max(i, j)
        k = self._pair_index.get((a, b))
        return self.points[k] if k is not None else (a, b)

    def has_point(self, p: Iterable[int]) -> bool:
        p = tuple(sorted(p))
        if len(p) == 2:
            return self.point_of(*p) == p
        return p in self._point_set

    @cached_property
    def _point_set(self) -> frozenset[Point]:
        return frozenset(self.points)

    def all_points(self) -> tuple[Point, ...]:
        """All singular points including implicit doubles, sorted."""
        doubles = [
            pair
            for pair in itertools.combinations(range(1, self.n + 1), 2)
            if pair not in self._pair_index
        ]
        return tuple(sorted(list(self.points) + doubles))

    def collinear(self, i: int, j: int, k: int) -> bool:
        """True when three distinct lines share a point."""
        return k in self.point_of(i, j)

    def sigma(self) -> int:
        """Sum over points of (|P| - 2)."""
        return sum(len(p) - 2 for p in self.points)

    def tau_at(self, prefix_mask: int, line: int) -> int:
        """Number of singular points of the prefix arrangement lying on ``line``."""
        t = 0
        masks = self.masks
        for k in self._through[line]:
            if _popcount(masks[k] & prefix_mask) >= 2:
                t += 1
        return t

    def is_generic_subset(self, lines: Iterable[int]) -> bool:
        lines = list(lines)
        s = set(lines)
        return all(len(s.intersection(p)) < 3 for p in self.points)

    def restrict(self, lines: Sequence[int]) -> "Combinatorics":
        """Induced combinatorics on ``lines``; new label t stands for ``lines[t-1]``."""
        relabel = {old: new for new, old in enumerate(lines, start=1)}
        pts = []
        for p in self.points:
            q = [relabel[i] for i in p if i in relabel]
            if len(q) >= 3:
                pts.append(q)
        return Combinatorics._make(len(lines), pts)

    def relabel(self, mapping: dict[int, int]) -> "Combinatorics":
        """Apply a line bijection ``old -> new``."""
        return Combinatorics._make(self.n, ([mapping[i] for i in p] for p in self.points))

    def to_json(self) -> dict:
        return {"n": self.n, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "Combinatorics":
        return cls.from_points(int(data["n"]), data["points"])

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, p)) + "}" for p in self.points)
        return f"Combinatorics(n={self.n}: {body})"


# ---------------------------------------------------------------------------
# Orders and types


@dataclass(frozen=True)
class LineOrder:
    """An order on the lines, stored as the sequence of lines in insertion order.

    ``sequence[k]`` is the line with rank ``k + 1``.
    """

    sequence: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sequence) != list(range(1, len(self.sequence) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.sequence)}: {self.sequence}")

    @classmethod
    def identity(cls, n: int) -> "LineOrder":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_ranks(cls, ranks: Sequence[int]) -> "LineOrder":
        """Build from the rank of each line, i.e. ``ranks[i-1]`` is the rank of line i."""
        seq = [0] * len(ranks)
        for line, r in enumerate(ranks, start=1):
            seq[r - 1] = line
        return cls(tuple(seq))

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        r = [0] * len(self.sequence)
        for k, line in enumerate(self.sequence, start=1):
            r[line - 1] = k
        return tuple(r)

    def position(self, line: int) -> int:
        return self.ranks[line - 1]

    def induced(self, lines: Iterable[int]) -> tuple[int, ...]:
        """The given lines sorted by this order."""
        return tuple(sorted(lines, key=self.position))

    def __len__(self):
        return len(self.sequence)


def _as_sequence(order, n: int) -> tuple[int, ...]:
    if order is None:
        return tuple(range(1, n + 1))
    if isinstance(order, LineOrder):
        return order.sequence
    return LineOrder(tuple(order)).sequence


def type_of(C: Combinatorics, order=None) -> tuple[int, ...]:
    """Type vector of ``C`` under ``order`` (index order by default)."""
    seq = _as_sequence(order, C.n)
    if len(seq) != C.n:
        raise ValueError("order length does not match the number of lines")
    tau = []
    prefix = 0
    for line in seq:
        tau.append(C.tau_at(prefix, line))
        prefix |= 1 << (line - 1)
    return tuple(tau)


def naive_dimension(C: Combinatorics) -> int:
    return 2 * C.n - 8 - C.sigma()


def classify_pencil(C: Combinatorics) -> str:
    """Return ``"X(n)"``, ``"Xbar(n)"`` or ``"other"``."""
    if C.n <= 2:
        return "X(n)"
    sizes = [len(p) for p in C.all_points()]
    if C.n in sizes:
        return "X(n)"
    if C.n - 1 in sizes:
        return "Xbar(n)"
    return "other"


def is_pencil_class(C: Combinatorics) -> bool:
    return classify_pencil(C) != "other"


# ---------------------------------------------------------------------------
# Equivalence


def _profile(C: Combinatorics, line: int) -> tuple[int, ...]:
    return tuple(sorted(len(p) for p in C.points_through(line)))


def are_equivalent(C: Combinatorics, D: Combinatorics) -> dict[int, int] | None:
    """Search a line bijection carrying the points of ``C`` onto those of ``D``."""
    if C.n != D.n:
        return None
    if sorted(len(p) for p in C.points) != sorted(len(p) for p in D.points):
        return None
    prof_c = {i: _profile(C, i) for i in range(1, C.n + 1)}
    prof_d = {i: _profile(D, i) for i in range(1, D.n + 1)}
    if sorted(prof_c.values()) != sorted(prof_d.values()):
        return None
    # most constrained lines first
    order = sorted(range(1, C.n + 1), key=lambda i: (-sum(prof_c[i]), i))
    image: dict[int, int] = {}
    used: set[int] = set()

    def consistent(line: int, target: int) -> bool:
        assigned = list(image.items())
        for (a, fa), (b, fb) in itertools.combinations(assigned, 2):
            if C.collinear(a, b, line) != D.collinear(fa, fb, target):
                return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        line = order[k]
        for target in range(1, D.n + 1):
            if target in used or prof_d[target] != prof_c[line]:
                continue
            if not consistent(line, target):
                continue
            image[line] = target
            used.add(target)
            if extend(k + 1):
                return True
            del image[line]
            used.discard(target)
        return False

    if extend(0):
        return dict(sorted(image.items()))
    return None


# ---------------------------------------------------------------------------
# Coordinates


@dataclass(frozen=True)
class ProjectiveLine:
    """Line ``a x + b y + c z = 0``; ``coeffs`` are Fractions or complex numbers."""

    coeffs: tuple

    def __post_init__(self):
        if all(c == 0 for c in self.coeffs):
            raise DegenerateArrangement("line with all coefficients zero")


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[ProjectiveLine, ...]
    field: str = "rational"  # or "complex"

    @classmethod
    def from_triples(cls, triples, field: str = "rational") -> "Arrangement":
        conv = _to_fraction if field == "rational" else complex
        return cls(tuple(ProjectiveLine(tuple(conv(c) for c in t)) for t in triples), field)

    @property
    def n(self) -> int:
        return len(self.lines)

    def to_json(self) -> dict:
        if self.field == "rational":
            rows = [[_fraction_str(c) for c in l.coeffs] for l in self.lines]
        else:
            rows = [[[complex(c).real, complex(c).imag] for c in l.coeffs] for l in self.lines]
        return {"field": self.field, "lines": rows}

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        field = data.get("field", "rational")
        if field == "rational":
            return cls.from_triples(data["lines"], "rational")
        if field == "complex":
            triples = [[complex(*c) if isinstance(c, list) else complex(c) for c in row]
                       for row in data["lines"]]
            return cls.from_triples(triples, "complex")
        raise ValueError(f"unknown field {field!r}")


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def det3(u, v, w):
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def _normalize(coeffs):
    scale = max(abs(c) for c in coeffs)
    return tuple(c / scale for c in coeffs)


def combinatorics_of(A: Arrangement, tol: float | None = None) -> Combinatorics:
    """Group the pairwise intersections of ``A`` into maximal concurrent bundles."""
    n = A.n
    exact = A.field == "rational"
    if tol is None:
        tol = default_tolerance()
    rows = [l.coeffs if exact else _normalize([complex(c) for c in l.coeffs]) for l in A.lines]

    def is_zero(value) -> bool:
        if exact:
            return value == 0
        mag = abs(value)
        if tol < mag < 10 * tol:
            raise AmbiguousTolerance(
                f"normalized determinant {mag:.3e} inside the unsafe band ({tol:g}, {10 * tol:g})"
            )
        return mag <= tol

    for i, j in itertools.combinations(range(n), 2):
        u, v = rows[i], rows[j]
        cross = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if all(is_zero(c) for c in cross):
            raise DegenerateArrangement(f"lines {i + 1} and {j + 1} coincide")

    zero = {}
    for i, j, k in itertools.combinations(range(n), 3):
        zero[(i, j, k)] = is_zero(det3(rows[i], rows[j], rows[k]))

    def concurrent(i, j, k):
        return zero[tuple(sorted((i, j, k)))]

    assigned = set()
    points = []
    for i, j in itertools.combinations(range(n), 2):
        if (i, j) in assigned:
            continue
        p = [i, j] + [k for k in range(n) if k not in (i, j) and concurrent(i, j, k)]
        p.sort()
        for a, b, c in itertools.combinations(p, 3):
            if not concurrent(a, b, c):
                raise AmbiguousTolerance(
                    f"inconsistent concurrency among lines {a + 1}, {b + 1}, {c + 1}"
                )
        for pair in itertools.combinations(p, 2):
            if pair in assigned:
                raise AmbiguousTolerance(f"pair {pair[0] + 1},{pair[1] + 1} in two bundles")
            assigned.add(pair)
        if len(p) >= 3:
            points.append([x + 1 for x in p])
    return Combinatorics._make(n, points)
