import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multifan.algebra import d_vector
from multifan.catalog import (
    cross_polytope_fan,
    minimal_torus,
    octahedron_fan,
    suspended_torus_noncollinear,
    torus_fan,
)
from multifan.errors import DegenerateColoring, MoveNotApplicable
from multifan.fan import project, random_fan
from multifan.moves import (
    MoveSpec,
    apply_move,
    candidate_moves,
    inserted_simplex,
    random_moves,
    suspended_move,
)
from multifan.simplicial import betti_numbers, h_vector, support_complex


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@pytest.fixture(scope="module")
def generic_cross4():
    return random_fan(cross_polytope_fan(4).cycle, seed=1)


def test_inverse_moves_restore_the_fan(generic_cross4):
    spec = MoveSpec((0, 3), (1, 3, 5, 7))
    grown = apply_move(generic_cross4, spec, seed=2)
    assert grown.m == 9
    back = apply_move(grown, MoveSpec((3, 0), (9,)))
    assert back == generic_cross4


def test_stellar_subdivision_adds_to_middle_dimensions():
    c4 = cross_polytope_fan(4)
    grown = apply_move(c4, MoveSpec((0, 3), (1, 3, 5, 7)), seed=0)
    assert d_vector(grown) == add(d_vector(c4), (0, 1, 1, 1, 0))


def test_edge_insertion_adds_to_the_middle(generic_cross4):
    before = d_vector(generic_cross4)
    after = apply_move(generic_cross4, MoveSpec((1, 2), (3, 5, 7)))
    assert d_vector(after) == add(before, (0, 0, 1, 0, 0))
    h_before = h_vector(support_complex(generic_cross4.cycle))
    h_after = h_vector(support_complex(after.cycle))
    assert tuple(b - a for a, b in zip(h_before, h_after)) == (0, 0, 1, 0, 0)


def test_existing_coloring_can_block_a_move():
    # the new edge joins the antipodal rays e1 and -e1
    with pytest.raises(DegenerateColoring):
        apply_move(cross_polytope_fan(4), MoveSpec((1, 2), (3, 5, 7)))


def test_move_validation():
    octa = octahedron_fan()
    with pytest.raises(MoveNotApplicable):
        inserted_simplex(octa, (0, 3), (1, 3, 5, 6))
    with pytest.raises(MoveNotApplicable):
        inserted_simplex(octa, (1, 1), (1, 2))  # antipodal, not an edge
    assert inserted_simplex(octa, (1, 1), (1, 3)) == (5, 6)
    assert inserted_simplex(octa, (0, 2), (1, 3, 5)) == (7,)


def test_candidates_cover_every_kind():
    fan = random_fan(cross_polytope_fan(4).cycle, seed=3)
    kinds = {c.kind for c in candidate_moves(fan)}
    assert (0, 3) in kinds and (1, 2) in kinds


def test_zero_moves_is_identity():
    t = torus_fan()
    assert random_moves(t, 0, seed=1) == (t, [])


def test_random_moves_keep_torus_homology():
    fan, log = random_moves(torus_fan(), 5, seed=7)
    assert len(log) == 5
    assert fan.cycle.is_cycle()
    assert betti_numbers(support_complex(fan.cycle)) == [0, 2, 1]


@pytest.fixture(scope="module")
def sigma_torus():
    return suspended_torus_noncollinear()


def test_suspended_moves(sigma_torus):
    base = d_vector(sigma_torus)
    grown = suspended_move(sigma_torus, MoveSpec((0, 2), (1, 2, 4)), seed=3)
    assert grown.apex == (9, 10)
    assert d_vector(grown) == add(base, (0, 1, 2, 1, 0))
    back = suspended_move(grown, MoveSpec((2, 0), (8,)))
    assert back.cycle == sigma_torus.cycle and d_vector(back) == base
    flips = [s for s in candidate_moves(project(grown, (9,)), {9, 10}) if s.kind == (1, 1)]
    flipped = suspended_move(grown, flips[0], seed=4)
    assert d_vector(flipped) == d_vector(grown)


def test_suspended_move_validation(sigma_torus):
    with pytest.raises(MoveNotApplicable):
        suspended_move(sigma_torus, MoveSpec((0, 2), (1, 2, 8)))
    with pytest.raises(MoveNotApplicable):
        suspended_move(torus_fan(), MoveSpec((0, 2), (1, 2, 4)))


def test_move_spec_serializes():
    assert MoveSpec((1, 1), (2, 4)).to_dict() == {"kind": [1, 1], "target": [2, 4], "new_vertex": None}


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_move_deltas_match_h_vector_deltas(seed):
    rng = random.Random(seed)
    cycle = rng.choice([minimal_torus(), octahedron_fan().cycle, cross_polytope_fan(4).cycle])
    fan = random_fan(cycle, seed=rng.randrange(2**31))
    candidates = candidate_moves(fan)
    rng.shuffle(candidates)
    for spec in candidates:
        try:
            moved = apply_move(fan, spec, seed=seed)
        except DegenerateColoring:
            continue
        break
    else:
        pytest.skip("every candidate degenerates this coloring")
    assert moved.cycle.is_cycle()
    before, after = support_complex(fan.cycle), support_complex(moved.cycle)
    assert betti_numbers(before) == betti_numbers(after)
    dd = tuple(b - a for a, b in zip(d_vector(fan), d_vector(moved)))
    dh = tuple(b - a for a, b in zip(h_vector(before), h_vector(after)))
    assert dd == dh
