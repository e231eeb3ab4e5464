"""Sparse multivariate polynomials with integer coefficients.

Also holds the univariate tools (square-free part, complex roots) needed to
count the points of a zero-dimensional moduli space.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, ConvergenceFailure, UnsafeSeparation, ZeroPolynomial

ROOT_RESIDUAL = 1e-10
ROOT_SEPARATION = 1e-6


class MPoly:
    """Polynomial in ``arity`` variables, stored as ``{exponent tuple: int}``.

    Zero coefficients are never stored, so equality is dictionary equality.
    """

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.arity = arity
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != arity:
                    raise ArityMismatch(f"exponent {e} has length != {arity}")
                if c:
                    clean[tuple(e)] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: int, arity: int) -> "MPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def zero(cls, arity: int) -> "MPoly":
        return cls(arity)

    @classmethod
    def var(cls, i: int, arity: int) -> "MPoly":
        """The variable with 0-based index ``i``."""
        if not 0 <= i < arity:
            raise ArityMismatch(f"variable {i} out of range for arity {arity}")
        e = [0] * arity
        e[i] = 1
        return cls(arity, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "MPoly":
        """Univariate polynomial from ascending coefficients."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    # -- ring structure ---------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.arity != self.arity:
                raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
            return other
        if isinstance(other, int):
            return MPoly.const(other, self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MPoly.const(1, self.arity)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other, self.arity)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, tuple(sorted(self.terms.items()))))
        return self._hash

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def eval(self, point: Sequence):
        """Evaluate at ``point`` (Fractions give exact results, complex floats do not)."""
        if len(point) != self.arity:
            raise ArityMismatch(f"point of length {len(point)} for arity {self.arity}")
        total = 0
        powers: dict[tuple[int, int], object] = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = point[i] ** k
                    term = term * powers[key]
            total = total + term
        return total

    def univariate_coeffs(self) -> list[int]:
        """Ascending coefficient list of a univariate polynomial."""
        if self.arity != 1:
            raise ArityMismatch("not univariate")
        deg = self.degree()
        coeffs = [0] * (deg + 1)
        for (k,), c in self.terms.items():
            coeffs[k] = c
        return coeffs

    def to_json(self) -> list[dict]:
        return [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict], arity: int) -> "MPoly":
        return cls(arity, {tuple(t["e"]): int(t["c"]) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"v{i + 1}" if k == 1 else f"v{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _check_arity(polys: Iterable[MPoly]) -> int:
    arities = {p.arity for p in polys}
    if len(arities) != 1:
        raise ArityMismatch(f"mixed arities {sorted(arities)}")
    return arities.pop()


def det3(rows: Sequence[Sequence[MPoly]]) -> MPoly:
    """Determinant of a 3x3 matrix of polynomials by cofactor expansion."""
    _check_arity(p for r in rows for p in r)
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross(u: Sequence[MPoly], w: Sequence[MPoly]) -> tuple[MPoly, MPoly, MPoly]:
    _check_arity(list(u) + list(w))
    return (
        u[1] * w[2] - w[1] * u[2],
        w[0] * u[2] - u[0] * w[2],
        u[0] * w[1] - w[0] * u[1],
    )


# ---------------------------------------------------------------------------
# univariate helpers over Q (ascending coefficient lists)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for k, c in enumerate(b):
            a[k + shift] -= factor * c
        _trim(a)
    return _trim(q), a


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return a


def _primitive(coeffs: list[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def squarefree_part(p: MPoly) -> MPoly:
    """``p / gcd(p, p')`` as a primitive integer polynomial with positive leading term."""
    coeffs = [Fraction(c) for c in p.univariate_coeffs()]
    if not coeffs:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    g = _gcd(coeffs, deriv) if _trim(list(deriv)) else [Fraction(1)]
    q, r = _divmod(coeffs, g)
    assert not r
    return MPoly.from_coeffs(_primitive(q))


def _normalized_residual(coeffs: list[int], z: complex) -> float:
    scale = max(abs(c) for c in coeffs)
    val = 0j
    for c in reversed(coeffs):
        val = val * z + c / scale
    return abs(val) / max(1.0, abs(z)) ** (len(coeffs) - 1)


def roots_univariate(p: MPoly, *, residual_tol: float = ROOT_RESIDUAL,
                     separation: float = ROOT_SEPARATION) -> list[complex]:
    """Distinct complex roots of ``p`` sorted by (real, imag).

    Companion-matrix eigenvalues (``numpy.roots``) polished by Newton steps on the
    exact integer square-free part.
    """
    sf = squarefree_part(p).univariate_coeffs()
    if len(sf) <= 1:
        return []
    scale = max(abs(c) for c in sf)
    desc = [c / scale for c in reversed(sf)]
    approx = np.roots(desc)
    dcoeffs = [k * c for k, c in enumerate(sf)][1:]
    roots = []
    for z in approx:
        z = complex(z)
        for _ in range(50):
            f = sum(c * z**k for k, c in enumerate(sf))
            df = sum(c * z**k for k, c in enumerate(dcoeffs))
            if df == 0:
                break
            step = f / df
            z -= step
            if abs(step) <= 1e-16 * max(1.0, abs(z)):
                break
        res = _normalized_residual(sf, z)
        if res > residual_tol:
            raise ConvergenceFailure(f"root {z} has residual {res:.3e}", residual=res)
        roots.append(z)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) < separation:
                raise UnsafeSeparation(
                    f"roots {roots[i]} and {roots[j]} closer than {separation:g}"
                )
    return sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
