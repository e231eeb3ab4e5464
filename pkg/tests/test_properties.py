"""Property tests over randomly generated combinatorics."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from arrmod.combinatorics import (
    Arrangement,
    are_equivalent,
    combinatorics_of,
    naive_dimension,
    type_of,
)
from arrmod.families import random_combinatorics
from arrmod.order_search import (
    find_ic_order,
    find_rigid_order,
    ic_dimension,
    is_ic_certificate,
    is_rigid_certificate,
    normalize_square_basis,
    valence_reduction,
)
from arrmod.perturbation import perturb, perturbation_moves
from arrmod.structure import c3_simple_type, c_class, is_nice, rigid_pencil_form
from arrmod.errors import NotApplicable, NotC3


@st.composite
def combinatorics(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_combinatorics(n, random.Random(seed), attempts=draw(st.integers(0, 40)))


@st.composite
def with_order(draw, min_n=1, max_n=9):
    C = draw(combinatorics(min_n, max_n))
    return C, draw(st.permutations(range(1, C.n + 1)))


FAST = settings(max_examples=80, deadline=None)


@FAST
@given(with_order())
def test_type_sum_identity(item):
    C, order = item
    tau = type_of(C, order)
    assert sum(2 - t for t in tau) == 2 * C.n - C.sigma()
    assert tau[:2] == (0, 0)[: C.n]
    assert tau == oracles.tau(C.n, C.points, order)


@FAST
@given(with_order())
def test_type_follows_the_restriction_recurrence(item):
    # adding line i raises 2(i) - sigma by 2 - tau_i
    C, order = item
    tau = type_of(C, order)

    def excess(k):
        return 2 * k - C.restrict(order[:k]).sigma()

    for i in range(1, C.n + 1):
        assert excess(i) - excess(i - 1) == 2 - tau[i - 1]


@FAST
@given(combinatorics(), st.randoms(use_true_random=False))
def test_equivalence_under_relabelling(C, rnd):
    perm = list(range(1, C.n + 1))
    rnd.shuffle(perm)
    mapping = dict(zip(range(1, C.n + 1), perm))
    D = C.relabel(mapping)
    phi = are_equivalent(C, D)
    assert phi is not None and C.relabel(phi) == D
    inverse = {v: k for k, v in phi.items()}
    assert D.relabel(inverse) == C
    back = are_equivalent(D, C)
    assert back is not None and D.relabel(back) == C
    assert naive_dimension(C) == naive_dimension(D)


@FAST
@given(combinatorics(min_n=3), st.data())
def test_perturbation_invariant(C, data):
    moves = perturbation_moves(C)
    assume(moves)
    step = data.draw(st.sampled_from(moves))
    D = perturb(C, step.line, step.point)
    assert D.sigma() == C.sigma() - 1
    assert naive_dimension(D) == naive_dimension(C) + 1
    assert set(C.points) - {step.point} <= set(D.points)


@FAST
@given(combinatorics(max_n=8))
def test_certificates_revalidate(C):
    cert = find_ic_order(C)
    if cert is not None:
        assert is_ic_certificate(C, cert)
        try:
            normal = normalize_square_basis(C, cert)
        except NotApplicable:
            return
        assert C.is_generic_subset(normal.order.sequence[:4])
        assert ic_dimension(C, normal) == naive_dimension(C)
    rigid = find_rigid_order(C)
    if rigid is not None:
        assert is_rigid_certificate(C, rigid)


@FAST
@given(combinatorics(min_n=4, max_n=10))
def test_nice_then_reduction_then_ic(C):
    if is_nice(C) is not None:
        assert valence_reduction(C) is not None
    cert = valence_reduction(C)
    if cert is not None:
        assert find_ic_order(C) is not None


@settings(max_examples=40, deadline=None)
@given(combinatorics(min_n=6, max_n=10))
def test_c3_simple_has_rigid_pencil_form(C):
    try:
        found = c3_simple_type(C)
    except NotC3:
        return
    if found is not None:
        assert rigid_pencil_form(C) is not None


@FAST
@given(combinatorics())
def test_c_class_matches_brute_cover(C):
    k, witness = c_class(C)
    assert k == oracles.min_cover(C.n, C.points)
    assert all(set(witness) & set(p) for p in C.points)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=3, max_size=7, unique=True),
    st.lists(st.integers(1, 9), min_size=7, max_size=7),
)
def test_rational_combinatorics_scale_invariant(rows, scales):
    kept = []
    for r in rows:
        if any(r) and all(any(oracles.det3(r, s, e) for e in _UNIT) for s in kept):
            kept.append(r)
    assume(len(kept) >= 3)
    C = combinatorics_of(Arrangement.from_triples(kept))
    scaled = Arrangement.from_triples([tuple(Fraction(k) * x for x in r) for k, r in zip(scales, kept)])
    assert combinatorics_of(scaled) == C
    assert list(C.points) == oracles.exact_points(kept)


_UNIT = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
