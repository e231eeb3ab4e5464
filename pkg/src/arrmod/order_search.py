"""Search for orders certifying inductive connectivity or inductive rigidity."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .combinatorics import (
    Combinatorics,
    LineOrder,
    is_pencil_class,
    mask_of,
    type_of,
)
from .errors import CapExceeded, InternalContradiction, NotApplicable

DP_CAP = 24

IC = "inductively_connected"
RIGID = "inductively_rigid"


@dataclass(frozen=True)
class OrderCertificate:
    order: LineOrder
    kind: str
    tau: tuple[int, ...]

    def to_json(self) -> dict:
        return {"order": list(self.order.sequence), "tau": list(self.tau), "kind": self.kind}


def certificate(C: Combinatorics, sequence, kind: str) -> OrderCertificate:
    order = sequence if isinstance(sequence, LineOrder) else LineOrder(tuple(sequence))
    return OrderCertificate(order, kind, type_of(C, order))


def is_ic_certificate(C: Combinatorics, cert: OrderCertificate) -> bool:
    tau = type_of(C, cert.order)
    return tau == cert.tau and max(tau, default=0) <= 2


def is_rigid_certificate(C: Combinatorics, cert: OrderCertificate) -> bool:
    tau = type_of(C, cert.order)
    if tau != cert.tau:
        return False
    if C.n <= 4:
        return C.n <= 3 or not _is_full_pencil(C)
    return all(t == 0 for t in tau[:4]) and all(t >= 2 for t in tau[4:])


def _is_full_pencil(C: Combinatorics) -> bool:
    return any(len(p) == C.n for p in C.all_points())


# ---------------------------------------------------------------------------
# inductively connected


def _ic_extend(C: Combinatorics, start: tuple[int, ...]) -> tuple[int, ...] | None:
    """Exact memoised search for an IC completion of the prefix ``start``."""
    full = (1 << C.n) - 1
    dead: set[int] = set()
    seq = list(start)

    def extend(mask: int) -> bool:
        if mask == full:
            return True
        for line in range(1, C.n + 1):
            bit = 1 << (line - 1)
            if mask & bit:
                continue
            nxt = mask | bit
            if nxt in dead or C.tau_at(mask, line) > 2:
                continue
            seq.append(line)
            if extend(nxt):
                return True
            seq.pop()
            dead.add(nxt)
        return False

    prefix = 0
    for line in start:
        if C.tau_at(prefix, line) > 2:
            return None
        prefix |= 1 << (line - 1)
    return tuple(seq) if extend(prefix) else None


def _greedy_ic(C: Combinatorics) -> tuple[int, ...] | None:
    """Peel off lines with at most two singular points on the rest, last first."""
    remaining = (1 << C.n) - 1
    removed = []
    while remaining:
        for line in range(C.n, 0, -1):
            bit = 1 << (line - 1)
            if remaining & bit and C.tau_at(remaining & ~bit, line) <= 2:
                removed.append(line)
                remaining &= ~bit
                break
        else:
            return None
    return tuple(reversed(removed))


def find_ic_order(C: Combinatorics, cap: int = DP_CAP) -> OrderCertificate | None:
    """An order with every type entry at most 2, or ``None`` when none exists.

    Raises :class:`CapExceeded` above ``cap`` lines when the greedy fallback fails.
    """
    if C.n > cap:
        seq = _greedy_ic(C)
        if seq is None:
            raise CapExceeded(f"{C.n} lines exceed the DP cap {cap}; greedy fallback failed")
        return certificate(C, seq, IC)
    seq = _ic_extend(C, ())
    return None if seq is None else certificate(C, seq, IC)


def _generic_quadruples(C: Combinatorics, *others: Combinatorics):
    for quad in itertools.combinations(range(1, C.n + 1), 4):
        if C.is_generic_subset(quad) and all(D.is_generic_subset(quad) for D in others):
            yield quad


def normalize_square_basis(
    C: Combinatorics, cert: OrderCertificate, generic_in: Combinatorics | None = None
) -> OrderCertificate:
    """Reorder an IC certificate so that its first four lines are generic.

    With ``generic_in`` the first four lines must also be generic there (used by
    perturbation towers, whose base and top must share the square basis).
    """
    if is_pencil_class(C) or (generic_in is not None and is_pencil_class(generic_in)):
        raise NotApplicable("pencil-type combinatorics have no generic four lines")
    if C.n < 4:
        raise NotApplicable("fewer than four lines")
    others = (generic_in,) if generic_in is not None else ()
    seq = cert.order.sequence

    def good_prefix(s) -> bool:
        return C.is_generic_subset(s[:4]) and all(D.is_generic_subset(s[:4]) for D in others)

    if good_prefix(seq):
        return cert

    candidate = _pencil_swap(C, seq, others)
    if candidate is not None:
        out = certificate(C, candidate, IC)
        if max(out.tau) <= 2 and good_prefix(candidate):
            return out

    for quad in _generic_quadruples(C, *others):
        found = _ic_extend(C, quad)
        if found is not None:
            return certificate(C, found, IC)
    raise NotApplicable("no IC order starts with four lines generic in every combinatorics")


def _pencil_swap(C: Combinatorics, seq, others) -> tuple[int, ...] | None:
    """Move a generic quadruple of the first prefix leaving the pencil to the front."""
    first4 = set(seq[:4])
    centre = None
    for p in C.points:
        if len(first4.intersection(p)) >= 3:
            centre = set(p)
    if centre is None:
        # the prefix is generic in C but not in one of ``others``
        return None
    off = 0
    k = None
    for idx, line in enumerate(seq):
        if line not in centre:
            off += 1
        if off == 2 and idx >= 4:
            k = idx + 1
            break
    if k is None:
        return None
    block = seq[:k]
    for quad in itertools.combinations(sorted(block), 4):
        if C.is_generic_subset(quad) and all(D.is_generic_subset(quad) for D in others):
            rest = [l for l in block if l not in quad]
            return tuple(quad) + tuple(rest) + tuple(seq[k:])
    return None


def ic_dimension(C: Combinatorics, cert: OrderCertificate) -> int:
    if is_pencil_class(C):
        raise NotApplicable("pencil classes are handled separately")
    tau = type_of(C, cert.order)
    if max(tau) > 2 or not C.is_generic_subset(cert.order.sequence[:4]):
        raise NotApplicable("certificate is not a square-basis IC order")
    return sum(2 - t for t in tau[4:])


# ---------------------------------------------------------------------------
# inductively rigid


def find_rigid_order(C: Combinatorics, cap: int = DP_CAP) -> OrderCertificate | None:
    n = C.n
    if n <= 3:
        return certificate(C, range(1, n + 1), RIGID)
    if n == 4:
        return None if _is_full_pencil(C) else certificate(C, range(1, 5), RIGID)
    if n > cap:
        raise CapExceeded(f"{n} lines exceed the DP cap {cap}")
    full = (1 << n) - 1
    dead: set[int] = set()

    def extend(mask: int, seq: list[int]) -> bool:
        if mask == full:
            return True
        for line in range(1, n + 1):
            bit = 1 << (line - 1)
            if mask & bit:
                continue
            nxt = mask | bit
            if nxt in dead or C.tau_at(mask, line) < 2:
                continue
            seq.append(line)
            if extend(nxt, seq):
                return True
            seq.pop()
            dead.add(nxt)
        return False

    for quad in _generic_quadruples(C):
        seq = list(quad)
        mask = mask_of(quad)
        if mask in dead:
            continue
        if extend(mask, seq):
            return certificate(C, seq, RIGID)
        dead.add(mask)
    return None


# ---------------------------------------------------------------------------
# incidence graph and valence reduction


@dataclass(frozen=True)
class IncidenceGraph:
    """Vertices are the multiple points; an edge carries the line through both."""

    vertices: tuple[tuple[int, ...], ...]
    edges: dict[tuple[int, int], int] = field(default_factory=dict)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def valence(self, v: int) -> int:
        return len(self.neighbors(v))

    def edge_lines(self, v: int) -> list[int]:
        return [line for (a, b), line in self.edges.items() if v in (a, b)]

    def to_json(self) -> dict:
        return {
            "vertices": [list(p) for p in self.vertices],
            "edges": [[a, b, line] for (a, b), line in sorted(self.edges.items())],
        }


def incidence_graph(C: Combinatorics) -> IncidenceGraph:
    verts = C.points
    edges = {}
    for a, b in itertools.combinations(range(len(verts)), 2):
        common = set(verts[a]).intersection(verts[b])
        if common:
            (line,) = common
            edges[(a, b)] = line
    return IncidenceGraph(verts, edges)


def valence_reduction(C: Combinatorics) -> OrderCertificate | None:
    """Strip lines through low-valence multiple points; a witness IC order on success."""
    remaining = list(range(1, C.n + 1))
    blocks: list[list[int]] = []
    while True:
        sub = C.restrict(remaining)
        graph = incidence_graph(sub)
        if not graph.vertices:
            break
        choice = next((v for v in range(len(graph.vertices)) if graph.valence(v) <= 2), None)
        if choice is None:
            return None
        lines = [remaining[i - 1] for i in graph.vertices[choice]]
        joined = {remaining[i - 1] for i in graph.edge_lines(choice)}
        block = sorted(lines)
        if len(joined) == 1:
            (lead,) = joined
            block.remove(lead)
            block.insert(0, lead)
        blocks.append(block)
        removed = set(lines)
        remaining = [l for l in remaining if l not in removed]
    seq = list(remaining)
    for block in reversed(blocks):
        seq.extend(block)
    cert = certificate(C, seq, IC)
    if max(cert.tau, default=0) > 2:
        raise InternalContradiction(f"valence reduction produced type {cert.tau}")
    return cert
