from __future__ import annotations

import random

import pytest

import oracles
from instances import C3_CASE_I, C3_CASE_II, C3_NONE, CEVA_POINTS, TWO_STARS
from arrmod.combinatorics import Combinatorics, type_of
from arrmod.errors import CapExceeded, NotC3
from arrmod.families import random_combinatorics, rigid_pencil_example
from arrmod.order_search import valence_reduction
from arrmod.structure import (
    c3_simple_type,
    c_class,
    check_rigid_pencil_witness,
    is_nice,
    rigid_pencil_conditions,
    rigid_pencil_form,
)

CEVA = Combinatorics.from_points(6, CEVA_POINTS)


def test_c_class_examples():
    assert c_class(Combinatorics.generic(5)) == (0, ())
    k, witness = c_class(CEVA)
    assert k == 2
    assert all(set(witness) & set(p) for p in CEVA.points)
    assert all({1, 6} & set(p) for p in CEVA.points)
    assert oracles.min_cover(6, CEVA.points) == 2


def test_c_class_of_the_ten_line_example_is_four():
    # {6,7,8} avoids every line through <3,4,5>; the exhaustive cover needs four lines
    _, C = rigid_pencil_example()
    k, witness = c_class(C)
    assert k == oracles.min_cover(C.n, C.points) == 4
    assert all(set(witness) & set(p) for p in C.points)
    with pytest.raises(NotC3):
        c3_simple_type(C)


def test_c3_cases():
    assert c3_simple_type(C3_CASE_I) == ("case_i", (1, 2, 3))
    assert c3_simple_type(C3_CASE_II) == ("case_ii", (1, 2, 3))
    assert c_class(C3_NONE)[0] == 3
    assert c3_simple_type(C3_NONE) is None


def test_rigid_pencil_ten_line_example():
    _, C = rigid_pencil_example()
    sub = tuple(range(1, 8))
    assert type_of(C.restrict(sub)) == (0, 0, 0, 0, 2, 2, 2)
    assert rigid_pencil_conditions(C, sub, (3, 4, 5))
    assert check_rigid_pencil_witness(C, sub, (3, 4, 5)) is not None
    witness = rigid_pencil_form(C)
    assert witness is not None
    assert rigid_pencil_conditions(C, witness.subarrangement, witness.centre)
    assert witness.to_json()["semi_decision"] is True


def test_rigid_pencil_case_ii_uses_pencil():
    witness = rigid_pencil_form(C3_CASE_II)
    assert witness.subarrangement == (1, 2, 3) and witness.centre == (1, 2, 3)


def test_rigid_pencil_generic():
    witness = rigid_pencil_form(Combinatorics.generic(5))
    assert witness is not None and len(witness.subarrangement) == 2


@pytest.mark.parametrize("C", [C3_CASE_I, C3_CASE_II])
def test_c3_simple_has_rigid_pencil_form(C):
    assert rigid_pencil_form(C) is not None


def test_nice_examples():
    assert is_nice(Combinatorics.generic(5)) == ()
    assert is_nice(CEVA) is None
    assert is_nice(TWO_STARS) == ((1, 2, 3), (4, 5, 6))


def test_nice_cap():
    with pytest.raises(CapExceeded):
        is_nice(CEVA, cap=2)


def _sample(seed, count):
    rng = random.Random(seed)
    return [random_combinatorics(rng.randint(5, 10), rng) for _ in range(count)]


@pytest.mark.parametrize("C", _sample(21, 40), ids=str)
def test_nice_implies_valence_reduction(C):
    if is_nice(C) is not None:
        assert valence_reduction(C) is not None


@pytest.mark.parametrize("C", _sample(8, 30), ids=str)
def test_generic_extension_moves_c_class_by_at_most_one(C):
    k, _ = c_class(C)
    extended = Combinatorics.from_points(C.n + 1, C.points)
    assert c_class(extended)[0] == k
    # a new line through one existing double point of C
    i, j = next(((a, b) for a in range(1, C.n + 1) for b in range(a + 1, C.n + 1) if len(C.point_of(a, b)) == 2), (None, None))
    if i is not None:
        through = Combinatorics.from_points(C.n + 1, list(C.points) + [[i, j, C.n + 1]])
        assert k <= c_class(through)[0] <= k + 1
