"""Elementary perturbations, perturbation towers and the minimal tower length."""
from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property

from .combinatorics import Combinatorics, LineOrder, Point, is_pencil_class, type_of
from .errors import CapExceeded, InvalidTarget, NotApplicable, UnknownPoint
from .order_search import find_ic_order, normalize_square_basis

STATE_BUDGET = 200_000


@dataclass(frozen=True)
class ElementaryStep:
    """Removal of ``line`` from the multiple point ``point`` of the upper combinatorics."""

    line: int
    point: Point

    def __post_init__(self):
        if len(self.point) < 3 or self.line not in self.point:
            raise InvalidTarget(f"cannot perturb line {self.line} out of {list(self.point)}")

    @property
    def parent(self) -> Point:
        return tuple(i for i in self.point if i != self.line)

    def to_json(self) -> dict:
        return {"line": self.line, "point": list(self.point)}


def perturb(C: Combinatorics, line: int, point) -> Combinatorics:
    point = tuple(sorted(point))
    if len(point) < 3 or line not in point:
        raise InvalidTarget(f"line {line} is not removable from {list(point)}")
    if point not in C.points:
        raise InvalidTarget(f"{list(point)} is not a multiple point")
    rest = [p for p in C.points if p != point]
    reduced = tuple(i for i in point if i != line)
    if len(reduced) >= 3:
        rest.append(reduced)
    return Combinatorics._make(C.n, rest)


def unperturb(C: Combinatorics, line: int, point) -> Combinatorics:
    """Inverse of :func:`perturb`: put ``line`` back into the parent of ``point``."""
    point = tuple(sorted(point))
    parent = tuple(i for i in point if i != line)
    if line not in point or len(point) < 3 or not C.has_point(parent):
        raise InvalidTarget(f"{list(parent)} is not a point to extend by line {line}")
    for i in parent:
        if len(C.point_of(line, i)) != 2:
            raise InvalidTarget(f"lines {line} and {i} already meet at a multiple point")
    rest = [p for p in C.points if p != parent]
    rest.append(point)
    return Combinatorics._make(C.n, rest)


def perturbation_moves(C: Combinatorics) -> list[ElementaryStep]:
    """All elementary perturbations of ``C`` in (line, point) order."""
    moves = [ElementaryStep(line, p) for p in C.points for line in p]
    return sorted(moves, key=lambda s: (s.line, s.point))


@dataclass(frozen=True)
class PerturbationTower:
    """``base = C_0 < C_1 < ... < C_m = top``; ``steps[i-1]`` links C_{i-1} and C_i."""

    base: Combinatorics
    steps: tuple[ElementaryStep, ...]
    order: LineOrder

    @cached_property
    def levels(self) -> tuple[Combinatorics, ...]:
        out = [self.base]
        for step in self.steps:
            out.append(unperturb(out[-1], step.line, step.point))
        return tuple(out)

    @property
    def top(self) -> Combinatorics:
        return self.levels[-1]

    @property
    def m(self) -> int:
        return len(self.steps)

    @property
    def n(self) -> int:
        return self.base.n

    def check(self) -> None:
        """Raise ``InvalidTarget`` unless every tower invariant holds."""
        levels = self.levels
        for i, step in enumerate(self.steps, start=1):
            if perturb(levels[i], step.line, step.point) != levels[i - 1]:
                raise InvalidTarget(f"step {i} does not replay")
            if levels[i].sigma() != levels[i - 1].sigma() + 1:
                raise InvalidTarget(f"step {i} breaks the sigma increment")
        if max(type_of(self.base, self.order), default=0) > 2:
            raise InvalidTarget("perturbation order is not an IC order of the base")

    def is_square_basis(self) -> bool:
        first = self.order.sequence[:4]
        return (
            len(first) == 4
            and self.base.is_generic_subset(first)
            and self.top.is_generic_subset(first)
        )

    def ancestor(self, point) -> Point:
        p = tuple(sorted(point))
        if len(p) < 2 or not self.top.has_point(p):
            raise UnknownPoint(f"{list(p)} is not a point of the top combinatorics")
        for step in reversed(self.steps):
            if p == step.point:
                p = step.parent
        return p

    def parent_map(self, level: int) -> dict[Point, Point]:
        """Parent in C_{level-1} of every point of C_level."""
        step = self.steps[level - 1]
        return {p: (step.parent if p == step.point else p) for p in self.levels[level].all_points()}

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "order": list(self.order.sequence),
            "m": self.m,
        }


def tower_from_path(
    top: Combinatorics, path_top_down, order=None, *, normalize: bool = True
) -> PerturbationTower:
    """Build a tower from perturbations applied to ``top`` (first element first).

    Without ``order`` an IC order of the base is searched; with ``normalize`` its
    first four lines are made generic in both base and top.
    """
    C = top
    steps = []
    for item in path_top_down:
        step = item if isinstance(item, ElementaryStep) else ElementaryStep(item[0], tuple(sorted(item[1])))
        C = perturb(C, step.line, step.point)
        steps.append(step)
    base = C
    if order is None:
        cert = find_ic_order(base)
        if cert is None:
            raise InvalidTarget("the base of the tower is not inductively connected")
        if normalize:
            cert = normalize_square_basis(base, cert, generic_in=top)
        order = cert.order
    elif not isinstance(order, LineOrder):
        order = LineOrder(tuple(order))
    tower = PerturbationTower(base, tuple(reversed(steps)), order)
    tower.check()
    if normalize and not tower.is_square_basis():
        raise NotApplicable("perturbation order does not start with a common generic square")
    return tower


def _acceptable(state: Combinatorics, top: Combinatorics, normalize: bool):
    cert = find_ic_order(state)
    if cert is None:
        return None
    if not normalize:
        return cert
    try:
        return normalize_square_basis(state, cert, generic_in=top)
    except NotApplicable:
        return None


def _levels(C: Combinatorics, max_m: int, budget: int) -> Iterator[list[tuple[Combinatorics, tuple]]]:
    frontier = [(C, ())]
    seen = {C}
    yield frontier
    for _ in range(max_m):
        nxt = []
        for state, path in frontier:
            for step in perturbation_moves(state):
                child = perturb(state, step.line, step.point)
                if child in seen:
                    continue
                seen.add(child)
                if len(seen) > budget:
                    raise CapExceeded(f"perturbation search exceeded {budget} states")
                nxt.append((child, path + (step,)))
        frontier = nxt
        yield frontier


def find_m_perturbation(
    C: Combinatorics,
    max_m: int = 3,
    *,
    normalize: bool = True,
    budget: int = STATE_BUDGET,
    start: ElementaryStep | tuple | None = None,
) -> PerturbationTower | None:
    """Shortest tower over an IC base, lexicographically first among equals.

    ``start`` pins the first perturbation applied to ``C`` (the top step of the
    tower).  Returns ``None`` when no tower of length <= ``max_m`` exists.
    """
    if normalize and (is_pencil_class(C) or C.n < 4):
        raise NotApplicable("pencil-type combinatorics have no square basis")
    root, prefix = C, ()
    if start is not None:
        if not isinstance(start, ElementaryStep):
            start = ElementaryStep(start[0], tuple(sorted(start[1])))
        root, prefix = perturb(C, start.line, start.point), (start,)
        max_m -= 1
    for frontier in _levels(root, max_m, budget):
        for state, path in frontier:
            cert = _acceptable(state, C, normalize)
            if cert is not None:
                return PerturbationTower(state, tuple(reversed(prefix + path)), cert.order)
    return None


def iter_minimal_perturbations(
    C: Combinatorics, max_m: int = 3, *, budget: int = STATE_BUDGET
) -> Iterator[PerturbationTower]:
    """Every normalised tower of minimal length, one per (base, last step).

    Removing different lines of a triple point gives the same base but a
    different tower (the perturbed line and its parent change), so the final
    perturbation is enumerated without merging equal bases.
    """
    if is_pencil_class(C) or C.n < 4:
        raise NotApplicable("pencil-type combinatorics have no square basis")
    first = find_m_perturbation(C, max_m, budget=budget)
    if first is None:
        return
    if first.m == 0:
        yield first
        return
    verdicts: dict[Combinatorics, object] = {}
    for frontier in itertools.islice(_levels(C, first.m - 1, budget), first.m - 1, None):
        for state, path in frontier:
            for step in perturbation_moves(state):
                child = perturb(state, step.line, step.point)
                if child not in verdicts:
                    verdicts[child] = _acceptable(child, C, True)
                cert = verdicts[child]
                if cert is not None:
                    yield PerturbationTower(child, tuple(reversed(path + (step,))), cert.order)


def kappa(C: Combinatorics, cap: int = 3, *, budget: int = STATE_BUDGET) -> int:
    """Minimal number of elementary perturbations reaching an IC combinatorics."""
    tower = find_m_perturbation(C, cap, normalize=False, budget=budget)
    if tower is None:
        raise CapExceeded(f"no perturbation tower of length <= {cap}")
    return tower.m
