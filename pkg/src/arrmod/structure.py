"""Connectivity classes: C_k, C3 of simple type, rigid pencil form, nice."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .combinatorics import Combinatorics
from .errors import CapExceeded, NotC3
from .order_search import OrderCertificate, find_rigid_order, incidence_graph

RIGID_PENCIL_MAX_SUB = 8
NICE_CAP = 16


def _covers(C: Combinatorics, lines) -> bool:
    s = set(lines)
    return all(s.intersection(p) for p in C.points)


def c_class(C: Combinatorics) -> tuple[int, tuple[int, ...]]:
    """Smallest k with k lines meeting every multiple point, plus the first such subset."""
    for k in range(C.n + 1):
        for subset in itertools.combinations(range(1, C.n + 1), k):
            if _covers(C, subset):
                return k, subset
    raise AssertionError("all lines always cover")


def covering_subsets(C: Combinatorics, k: int):
    for subset in itertools.combinations(range(1, C.n + 1), k):
        if _covers(C, subset):
            yield subset


def c3_simple_type(C: Combinatorics) -> tuple[str, tuple[int, ...]] | None:
    """``("case_ii", D3)`` for a concurrent cover, ``("case_i", D3)`` for a generic one
    whose lines include one carrying a single multiple point, else ``None``.

    Concurrent covers are preferred when both kinds exist.
    """
    k, _ = c_class(C)
    if k != 3:
        raise NotC3(f"class C{k}, not C3")
    covers = list(covering_subsets(C, 3))
    for d in covers:
        if len(C.point_of(d[0], d[1])) > 2 and d[2] in C.point_of(d[0], d[1]):
            return "case_ii", d
    for d in covers:
        if C.is_generic_subset(d) and any(len(C.points_through(l)) == 1 for l in d):
            return "case_i", d
    return None


@dataclass(frozen=True)
class RigidPencilWitness:
    subarrangement: tuple[int, ...]
    centre: tuple[int, ...]
    rigid_certificate: OrderCertificate

    def to_json(self) -> dict:
        return {
            "subarrangement": list(self.subarrangement),
            "centre": list(self.centre),
            "rigid_order": [self.subarrangement[i - 1] for i in self.rigid_certificate.order.sequence],
            "semi_decision": True,
        }


def rigid_pencil_conditions(C: Combinatorics, sub, centre) -> bool:
    """Check RP1/RP2 for every multiple point, given ``sub`` and a point ``centre`` of C."""
    sub = set(sub)
    centre = set(centre)
    if len(centre & sub) < 2:
        return False
    for p in C.points:
        if len(sub.intersection(p)) >= 2:
            continue
        if sub.intersection(p).intersection(centre):
            continue
        return False
    return True


def check_rigid_pencil_witness(C: Combinatorics, sub, centre) -> OrderCertificate | None:
    """The rigidity certificate of ``sub`` if (sub, centre) is a rigid pencil form."""
    sub = tuple(sorted(sub))
    if not rigid_pencil_conditions(C, sub, centre):
        return None
    return find_rigid_order(C.restrict(sub))


def rigid_pencil_form(C: Combinatorics, max_sub: int = RIGID_PENCIL_MAX_SUB) -> RigidPencilWitness | None:
    """Semi-decision search for a rigid pencil form among subarrangements of size <= max_sub.

    ``None`` only means no witness within the cap.
    """
    for size in range(2, min(max_sub, C.n) + 1):
        for sub in itertools.combinations(range(1, C.n + 1), size):
            centres = sorted({C.point_of(a, b) for a, b in itertools.combinations(sub, 2)})
            good = [c for c in centres if rigid_pencil_conditions(C, sub, c)]
            if not good:
                continue
            cert = find_rigid_order(C.restrict(sub))
            if cert is None:
                continue
            return RigidPencilWitness(sub, good[0], cert)
    return None


def _is_forest(nv: int, edges) -> bool:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def is_nice(C: Combinatorics, cap: int = NICE_CAP) -> tuple[tuple[int, ...], ...] | None:
    """Centres (as points) of pairwise disjoint stars whose removal leaves a forest.

    Raises :class:`CapExceeded` when the graph has more than ``cap`` vertices and
    no certificate was found among the explored centre sets.
    """
    graph = incidence_graph(C)
    nv = len(graph.vertices)
    closed = [set(graph.neighbors(v)) | {v} for v in range(nv)]
    explored_all = nv <= cap
    max_centres = nv if explored_all else min(nv, 3)
    for k in range(max_centres + 1):
        for centres in itertools.combinations(range(nv), k):
            if any(closed[a] & closed[b] for a, b in itertools.combinations(centres, 2)):
                continue
            cs = set(centres)
            kept = [e for e in graph.edges if not cs.intersection(e)]
            if _is_forest(nv, kept):
                return tuple(graph.vertices[c] for c in centres)
    if not explored_all:
        raise CapExceeded(f"{nv} vertices exceed the nice-search cap {cap}")
    return None
