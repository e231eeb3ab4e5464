"""Polynomial parametrization of moduli spaces over a perturbation tower.

The first four lines of the perturbation order are fixed to the square
``x = 0, x - z = 0, y = 0, y - z = 0``.  Every later line gets a chart whose
shape depends on its type entry in the base combinatorics:

* type 0: two free parameters, one coordinate normalised to 1;
* type 1: a pencil ``row_j + v * row_k`` through its unique singular point;
* type 2: the cross product of the two singular points it joins.

The residual closed conditions (one per perturbation step) and the open
conditions cut the moduli space out of affine ``d0``-space.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .combinatorics import (
    Arrangement,
    Point,
    ProjectiveLine,
    combinatorics_of,
    default_tolerance,
    is_pencil_class,
    mask_of,
    naive_dimension,
)
from .combinatorics import det3 as det3_values
from .errors import (
    InternalContradiction,
    NotApplicable,
    NotARealization,
    Unsupported,
)
from .perturbation import PerturbationTower
from .polynomial import MPoly, cross, det3, roots_univariate

SQUARE_ROWS = ((1, 0, 0), (1, 0, -1), (0, 1, 0), (0, 1, -1))
CONDITION_THRESHOLD = 1e-6


@dataclass(frozen=True)
class DegreeBudget:
    lam: dict[int, int]
    theta: dict[Point, int]

    def to_json(self) -> dict:
        return {
            "lambda": {str(k): v for k, v in sorted(self.lam.items())},
            "theta": {",".join(map(str, p)): v for p, v in sorted(self.theta.items())},
        }


@dataclass
class Chart:
    kind: str  # "square", "generic", "pencil", "fixed"
    tau: int
    detail: dict = field(default_factory=dict)


@dataclass
class Parametrization:
    tower: PerturbationTower
    d0: int
    psi: dict[int, tuple[MPoly, MPoly, MPoly]]
    phi: dict[Point, tuple[MPoly, MPoly, MPoly]]
    deltas: list[MPoly]
    delta_lines: list[tuple[int, int, int]]
    open_triples: list[tuple[int, int, int]]
    open_conditions: list[MPoly]
    pair_conditions: dict[tuple[int, int], tuple[MPoly, MPoly, MPoly]]
    var_offsets: dict[int, int]
    charts: dict[int, Chart]
    budget: DegreeBudget

    @property
    def n(self) -> int:
        return self.tower.n

    @property
    def m(self) -> int:
        return self.tower.m

    def rows_at(self, values: Sequence) -> list[tuple]:
        return [tuple(c.eval(values) for c in self.psi[i]) for i in range(1, self.n + 1)]

    def to_json(self) -> dict:
        bound = upper_bound(self.tower, self.budget)
        return {
            "d0": self.d0,
            "order": list(self.tower.order.sequence),
            "psi": [[c.to_json() for c in self.psi[i]] for i in range(1, self.n + 1)],
            "deltas": [d.to_json() for d in self.deltas],
            "delta_lines": [list(t) for t in self.delta_lines],
            "open_conditions": [
                {"lines": list(t), "poly": p.to_json()}
                for t, p in zip(self.open_triples, self.open_conditions)
            ],
            **self.budget.to_json(),
            "bound": bound,
            "bracket": list(dimension_bracket(self.tower)),
        }


# ---------------------------------------------------------------------------


def _require(tower: PerturbationTower) -> None:
    tower.check()
    if is_pencil_class(tower.top) or tower.n < 4:
        raise NotApplicable("pencil-type combinatorics are parametrized separately")
    if not tower.is_square_basis():
        raise NotApplicable("the first four lines of the order are not generic in base and top")


def _min_two(points: Point, position) -> tuple[int, int]:
    a, b = sorted(points, key=position)[:2]
    return a, b


def _pencil_pair(lines, lam, position) -> tuple[int, int, int]:
    """Pair of pencil lines with the cheapest rule value; returns (major, minor, value).

    The row of ``minor`` (smaller Lambda) is the one scaled by the new parameter.
    """
    best = None
    for j, k in itertools.combinations(sorted(lines, key=position), 2):
        value = 1 + lam[j] if lam[j] == lam[k] else max(lam[j], lam[k])
        key = (value, position(j), position(k))
        if best is None or key < best[0]:
            major, minor = (j, k) if lam[j] >= lam[k] else (k, j)
            best = (key, major, minor, value)
    _, major, minor, value = best
    return major, minor, value


def _delta_pair(parent: Point, lam, position) -> tuple[int, int]:
    return min(
        itertools.combinations(sorted(parent, key=position), 2),
        key=lambda pr: (lam[pr[0]] + lam[pr[1]], position(pr[0]), position(pr[1])),
    )


def _singular_on(base, prefix: int, line: int) -> list[Point]:
    return [p for p in base.points_through(line) if bin(mask_of(p) & prefix).count("1") >= 2]


def _walk(tower: PerturbationTower, polys: bool):
    """Run the inductive construction; returns (lam, theta, psi, charts, offsets, d0)."""
    base, top = tower.base, tower.top
    seq = tower.order.sequence
    position = tower.order.position
    d0 = naive_dimension(base)
    lam: dict[int, int] = {}
    psi: dict[int, tuple] = {}
    charts: dict[int, Chart] = {}
    offsets: dict[int, int] = {}
    phi_cache: dict[Point, tuple] = {}

    def const_row(row):
        return tuple(MPoly.const(c, d0) for c in row)

    def theta(p: Point) -> int:
        a, b = _min_two(p, position)
        if position(a) <= 4 and position(b) <= 4:
            return 0
        return lam[a] + lam[b]

    def phi(p: Point):
        if p not in phi_cache:
            a, b = _min_two(p, position)
            phi_cache[p] = cross(psi[a], psi[b])
        return phi_cache[p]

    s1, s2, s3, s4 = seq[:4]
    for line, row in zip(seq[:4], SQUARE_ROWS):
        lam[line] = 0
        charts[line] = Chart("square", 0, {"row": list(row)})
        if polys:
            psi[line] = const_row(row)

    nvar = 0
    prefix = mask_of(seq[:4])
    for line in seq[4:]:
        through = _singular_on(base, prefix, line)
        tau = len(through)
        if tau == 0:
            if line not in top.point_of(s1, s2):
                layout = ("v", 1, "w")
            elif line not in top.point_of(s3, s4):
                layout = (1, "v", "w")
            else:
                layout = ("v", "w", 1)
            offsets[line] = nvar
            lam[line] = 1
            charts[line] = Chart("generic", 0, {"layout": [str(x) for x in layout]})
            if polys:
                v, w = MPoly.var(nvar, d0), MPoly.var(nvar + 1, d0)
                psi[line] = tuple(
                    v if x == "v" else w if x == "w" else MPoly.const(1, d0) for x in layout
                )
            nvar += 2
        elif tau == 1:
            (p0,) = through
            inside = [i for i in p0 if prefix >> (i - 1) & 1]
            major, minor, value = _pencil_pair(inside, lam, position)
            offsets[line] = nvar
            lam[line] = value
            charts[line] = Chart("pencil", 1, {"point": list(p0), "major": major, "minor": minor})
            if polys:
                v = MPoly.var(nvar, d0)
                psi[line] = tuple(a + v * b for a, b in zip(psi[major], psi[minor]))
            nvar += 1
        elif tau == 2:
            p0, q0 = through
            lam[line] = theta(p0) + theta(q0)
            charts[line] = Chart("fixed", 2, {"points": [list(p0), list(q0)]})
            if polys:
                psi[line] = cross(phi(p0), phi(q0))
        else:
            raise InternalContradiction(f"line {line} has type {tau} > 2 in the base")
        prefix |= 1 << (line - 1)

    if nvar != d0:
        raise InternalContradiction(f"used {nvar} parameters, naive dimension of base is {d0}")
    thetas = {p: theta(p) for p in base.all_points()}
    return lam, thetas, psi, charts, offsets, d0, phi


def lambda_theta(tower: PerturbationTower) -> DegreeBudget:
    _require(tower)
    lam, thetas, *_ = _walk(tower, polys=False)
    return DegreeBudget(lam, thetas)


def _step_triples(tower: PerturbationTower, lam) -> list[tuple[int, int, int]]:
    position = tower.order.position
    out = []
    for step in tower.steps:
        i1, i2 = _delta_pair(step.parent, lam, position)
        out.append((i1, i2, step.line))
    return out


def build(tower: PerturbationTower) -> Parametrization:
    _require(tower)
    lam, thetas, psi, charts, offsets, d0, phi = _walk(tower, polys=True)
    base, top = tower.base, tower.top
    n = tower.n

    for p in base.points:
        for i, j, k in itertools.combinations(p, 3):
            if not det3([psi[i], psi[j], psi[k]]).is_zero():
                raise InternalContradiction(
                    f"collinearity of lines {i},{j},{k} of the base does not hold identically"
                )

    delta_lines = _step_triples(tower, lam)
    deltas = [det3([psi[a], psi[b], psi[c]]) for a, b, c in delta_lines]

    open_triples, open_conditions = [], []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        if top.collinear(i, j, k):
            continue
        open_triples.append((i, j, k))
        open_conditions.append(det3([psi[i], psi[j], psi[k]]))
    pair_conditions = {
        (i, j): cross(psi[i], psi[j]) for i, j in itertools.combinations(range(1, n + 1), 2)
    }

    ancestors = {tower.ancestor(p) for p in top.points} | set(base.points)
    phis = {p: phi(p) for p in sorted(ancestors)}
    return Parametrization(
        tower=tower,
        d0=d0,
        psi=psi,
        phi=phis,
        deltas=deltas,
        delta_lines=delta_lines,
        open_triples=open_triples,
        open_conditions=open_conditions,
        pair_conditions=pair_conditions,
        var_offsets=offsets,
        charts=charts,
        budget=DegreeBudget(lam, thetas),
    )


def upper_bound(tower: PerturbationTower, budget: DegreeBudget | None = None) -> int:
    """Product over the steps of the Lambda sums of the residual determinants."""
    if budget is None:
        budget = lambda_theta(tower)
    lam = budget.lam
    return prod(lam[a] + lam[b] + lam[c] for a, b, c in _step_triples(tower, lam))


def dimension_bracket(tower: PerturbationTower) -> tuple[int, int]:
    _require(tower)
    low = naive_dimension(tower.top)
    if naive_dimension(tower.base) != low + tower.m:
        raise InternalContradiction("naive dimensions along the tower are inconsistent")
    return low, low + tower.m


def verify_degree_bounds(param: Parametrization, budget: DegreeBudget | None = None) -> dict:
    """Compare the actual degrees with the Lambda budget; an empty report is clean."""
    budget = budget or param.budget
    lam = budget.lam
    rows = []
    for line, row in sorted(param.psi.items()):
        deg = max(c.degree() for c in row)
        if deg > lam[line]:
            rows.append({"line": line, "degree": deg, "lambda": lam[line]})
    deltas = []
    for k, (delta, (a, b, c)) in enumerate(zip(param.deltas, param.delta_lines), start=1):
        cap = lam[a] + lam[b] + lam[c]
        if delta.degree() > cap:
            deltas.append({"step": k, "degree": delta.degree(), "bound": cap})
    return {"ok": not rows and not deltas, "rows": rows, "deltas": deltas}


# ---------------------------------------------------------------------------
# evaluation


def _normalized(row):
    scale = max(abs(c) for c in row)
    return tuple(c / scale for c in row) if scale else row


def _is_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _violation(param: Parametrization, values, tol: float, exact: bool) -> str | None:
    for k, delta in enumerate(param.deltas, start=1):
        value = delta.eval(values)
        if (value != 0) if exact else (abs(value) > tol):
            return f"residual condition {k} (lines {param.delta_lines[k - 1]}) is nonzero"
    rows = param.rows_at(values)
    if not exact:
        rows = [_normalized(tuple(complex(c) for c in r)) for r in rows]
    for i, j in itertools.combinations(range(len(rows)), 2):
        u, w = rows[i], rows[j]
        minors = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
        if all((c == 0) if exact else (abs(c) <= tol) for c in minors):
            return f"lines {i + 1} and {j + 1} coincide"
    for i, j, k in param.open_triples:
        value = det3_values(rows[i - 1], rows[j - 1], rows[k - 1])
        if (value == 0) if exact else (abs(value) <= tol):
            return f"lines {i},{j},{k} are concurrent"
    return None


def realization_check(param: Parametrization, values: Sequence, tol: float | None = None) -> Arrangement:
    """The arrangement at ``values``; raises :class:`NotARealization` if it leaves the moduli space."""
    if len(values) != param.d0:
        raise NotARealization(f"expected {param.d0} parameter values, got {len(values)}")
    exact = _is_exact(values)
    values = [Fraction(v) for v in values] if exact else [complex(v) for v in values]
    threshold = CONDITION_THRESHOLD if tol is None else tol
    problem = _violation(param, values, threshold, exact)
    if problem:
        raise NotARealization(problem)
    rows = param.rows_at(values)
    if exact:
        arr = Arrangement(tuple(ProjectiveLine(tuple(Fraction(c) for c in r)) for r in rows), "rational")
    else:
        arr = Arrangement(tuple(ProjectiveLine(tuple(complex(c) for c in r)) for r in rows), "complex")
    if combinatorics_of(arr, default_tolerance() if tol is None else min(tol, default_tolerance())) != param.tower.top:
        raise InternalContradiction("realization has the wrong combinatorics")
    return arr


def count_components_univariate(param: Parametrization, threshold: float = CONDITION_THRESHOLD) -> int:
    """Number of points of a zero-dimensional moduli space with one parameter and one step."""
    if param.d0 != 1 or param.m != 1:
        raise Unsupported(f"needs d0 = 1 and m = 1, got d0 = {param.d0}, m = {param.m}")
    (delta,) = param.deltas
    if delta.is_zero():
        raise Unsupported("the residual condition vanishes identically: positive-dimensional or empty")
    if delta.degree() == 0:
        return 0
    count = 0
    for root in roots_univariate(delta):
        if _violation(param, [root], threshold, exact=False) is None:
            count += 1
    return count


def count_components(param: Parametrization, threshold: float = CONDITION_THRESHOLD) -> int:
    """Like :func:`count_components_univariate`, plus the tower-free case.

    With ``m = 0`` the moduli space is the open set W0 of affine space, which
    is connected, and empty exactly when some open condition vanishes identically.
    """
    if param.m == 0:
        dead = any(c.is_zero() for c in param.open_conditions) or any(
            all(c.is_zero() for c in row) for row in param.pair_conditions.values()
        )
        return 0 if dead else 1
    return count_components_univariate(param, threshold)


def realizations_univariate(param: Parametrization, threshold: float = CONDITION_THRESHOLD) -> list[complex]:
    """Parameter values of the surviving roots, in (real, imag) order."""
    if param.d0 != 1 or param.m != 1:
        raise Unsupported("needs d0 = 1 and m = 1")
    (delta,) = param.deltas
    if delta.is_zero() or delta.degree() == 0:
        return []
    return [r for r in roots_univariate(delta) if _violation(param, [r], threshold, exact=False) is None]


# ---------------------------------------------------------------------------
# inverse map


def _inv3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    det = det3_values(m[0], m[1], m[2])
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(x / det for x in row) for row in adj)


def _row_times(row, m):
    return tuple(sum(row[k] * m[k][j] for k in range(3)) for j in range(3))


def to_square_basis(A: Arrangement, first_four: Sequence[int]) -> list[tuple]:
    """Line coordinates after the projective change sending ``first_four`` to the square."""
    exact = A.field == "rational"
    one = Fraction(1) if exact else 1.0 + 0j
    rows = [tuple(c * one for c in l.coeffs) for l in A.lines]
    L = [rows[i - 1] for i in first_four[:3]]
    T = [tuple(c * one for c in r) for r in SQUARE_ROWS[:3]]
    w = _row_times(rows[first_four[3] - 1], _inv3(L))
    z = _row_times(tuple(c * one for c in SQUARE_ROWS[3]), _inv3(T))
    mu = [z[k] / w[k] for k in range(3)]
    Linv = _inv3(L)
    M = tuple(tuple(sum(Linv[r][k] * mu[k] * T[k][c] for k in range(3)) for c in range(3)) for r in range(3))
    return [_row_times(r, M) for r in rows]


def parameters_of(param: Parametrization, A: Arrangement) -> list:
    """Parameter vector whose image is projectively equivalent to ``A`` (same labels)."""
    exact = A.field == "rational"
    seq = param.tower.order.sequence
    rows = to_square_basis(A, seq[:4])
    zero = Fraction(0) if exact else 0j
    values = [zero] * param.d0
    for line in seq[4:]:
        chart = param.charts[line]
        row = rows[line - 1]
        if chart.kind == "generic":
            layout = chart.detail["layout"]
            unit = layout.index("1")
            row = tuple(c / row[unit] for c in row)
            off = param.var_offsets[line]
            values[off] = row[layout.index("v")]
            values[off + 1] = row[layout.index("w")]
        elif chart.kind == "pencil":
            major = tuple(c.eval(values) for c in param.psi[chart.detail["major"]])
            minor = tuple(c.eval(values) for c in param.psi[chart.detail["minor"]])
            # row = s * major + t * minor; solve on the best-conditioned 2x2 minor
            best = max(
                itertools.combinations(range(3), 2),
                key=lambda ij: abs(major[ij[0]] * minor[ij[1]] - major[ij[1]] * minor[ij[0]]),
            )
            a, b = best
            det = major[a] * minor[b] - major[b] * minor[a]
            s = (row[a] * minor[b] - row[b] * minor[a]) / det
            t = (major[a] * row[b] - major[b] * row[a]) / det
            values[param.var_offsets[line]] = t / s
    return values


# ---------------------------------------------------------------------------
# choosing towers with small bounds


def _greedy_lambda_order(tower: PerturbationTower, quad) -> tuple[int, ...] | None:
    """IC order of the base starting with ``quad``, adding the cheapest line each time."""
    from .order_search import _ic_extend

    base = tower.base
    seq = list(quad)
    position = {line: k for k, line in enumerate(seq, start=1)}
    lam = {line: 0 for line in seq}
    prefix = mask_of(seq)
    rest = [l for l in range(1, base.n + 1) if l not in position]

    def cost(line) -> int | None:
        through = _singular_on(base, prefix, line)
        if len(through) == 0:
            return 1
        if len(through) == 1:
            inside = [i for i in through[0] if prefix >> (i - 1) & 1]
            return _pencil_pair(inside, lam, position.__getitem__)[2]
        if len(through) == 2:
            total = 0
            for p in through:
                inside = [i for i in p if prefix >> (i - 1) & 1]
                a, b = _min_two(inside, position.__getitem__)
                total += 0 if position[a] <= 4 and position[b] <= 4 else lam[a] + lam[b]
            return total
        return None

    while rest:
        options = sorted((c, l) for l in rest if (c := cost(l)) is not None)
        for c, line in options:
            trial = tuple(seq) + (line,)
            if _ic_extend(base, trial) is None:
                continue
            seq.append(line)
            position[line] = len(seq)
            lam[line] = c
            prefix |= 1 << (line - 1)
            rest.remove(line)
            break
        else:
            return None
    return tuple(seq)


def optimize_order(tower: PerturbationTower, max_quads: int = 50) -> PerturbationTower:
    """Same steps, perturbation order chosen to make :func:`upper_bound` small.

    Tries a Lambda-greedy completion from each common generic quadruple (up to
    ``max_quads`` of them) and keeps the best; the input order competes too.
    """
    from .order_search import _generic_quadruples

    best = (upper_bound(tower), tower)
    quads = itertools.islice(_generic_quadruples(tower.base, tower.top), max_quads)
    for quad in quads:
        seq = _greedy_lambda_order(tower, quad)
        if seq is None:
            continue
        candidate = PerturbationTower(tower.base, tower.steps, type(tower.order)(seq))
        value = upper_bound(candidate)
        if value < best[0]:
            best = (value, candidate)
    return best[1]


def best_tower(
    C, max_m: int = 3, max_quads: int = 50, exhaustive: bool = False
) -> PerturbationTower | None:
    """A minimal-length tower with a small bound.

    By default only the first tower found is reordered; ``exhaustive`` reorders
    every minimal tower (one per base) and keeps the smallest bound.
    """
    from .perturbation import iter_minimal_perturbations

    best = None
    for tower in iter_minimal_perturbations(C, max_m):
        tower = optimize_order(tower, max_quads)
        value = upper_bound(tower)
        if best is None or value < best[0]:
            best = (value, tower)
        if not exhaustive:
            break
    return None if best is None else best[1]
