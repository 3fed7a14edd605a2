import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multifan.catalog import gamma_cycle, genus_g_surface, minimal_torus, octahedron_fan, square_cycle
from multifan.errors import GhostVertex, NonOrientable, NotInSupport, NotPure
from multifan.simplicial import (
    SimplicialChain,
    SimplicialComplex,
    betti_numbers,
    boundary,
    connected_sum_cycles,
    fundamental_cycle,
    h_double_prime,
    h_vector,
    is_smooth_vertex,
    join_cycles,
    link_cycle,
    permutation_sign,
    point_cycle,
    support_complex,
    suspension,
    zero_sphere,
)


def octahedron_cycle():
    return octahedron_fan().cycle


def tetra_boundary_complex(n_vertices):
    """Boundary of the simplex on ``n_vertices`` vertices."""
    full = tuple(range(1, n_vertices + 1))
    facets = [full[:i] + full[i + 1 :] for i in range(n_vertices)]
    return SimplicialComplex(n_vertices, frozenset(facets))


def test_chain_stores_sorted_simplices_with_sign():
    c = SimplicialChain(3, 2, {(2, 1): 1})
    assert c.weight((1, 2)) == -1
    assert c.weight((2, 1)) == 1
    assert permutation_sign((3, 1, 2)) == 1
    assert permutation_sign((2, 1, 3)) == -1


def test_boundary_examples():
    edge = SimplicialChain(2, 2, {(1, 2): 1})
    assert boundary(edge) == SimplicialChain(2, 1, {(2,): 1, (1,): -1})
    assert boundary(gamma_cycle()).is_zero()
    assert boundary(minimal_torus()).is_zero()


def test_support_complex_examples():
    assert support_complex(SimplicialChain(3, 2, {})).is_empty()
    g = support_complex(gamma_cycle())
    assert len(g.faces(2)) == 8 and len(g.vertices()) == 6
    assert len(support_complex(octahedron_cycle()).faces(3)) == 8


def test_link_examples():
    link5 = link_cycle(gamma_cycle(), (5,))
    assert link5.k == 1 and link5.vertices() == {1, 2, 3, 4}
    oct_ = octahedron_cycle()
    for v in oct_.vertices():
        link = link_cycle(oct_, (v,))
        assert len(link) == 4 and link.is_cycle()
    torus = minimal_torus()
    s = suspension(torus)
    apex_link = link_cycle(s, (8,))
    assert apex_link in (torus.with_m(9), -torus.with_m(9))
    with pytest.raises(NotInSupport):
        link_cycle(gamma_cycle(), (1, 2))


def test_join_examples():
    a = SimplicialChain.from_facets(3, [(1, 2), (2, 3)])
    assert join_cycles(point_cycle(), a).relabel({}, m=3) == a
    square = join_cycles(zero_sphere(), zero_sphere())
    assert len(square) == 4 and square.is_cycle()
    assert support_complex(square).f_vector() == [4, 4]
    octa = join_cycles(zero_sphere(), square_cycle())
    assert len(octa) == 8 and octa.is_cycle()
    assert betti_numbers(support_complex(octa)) == [0, 0, 1]


def test_suspension_examples():
    s0 = suspension(zero_sphere())
    assert len(s0) == 4 and s0.is_cycle()
    st = suspension(minimal_torus())
    assert st.m == 9 and st.k == 4 and st.is_cycle()
    assert len(suspension(square_cycle())) == 8


def test_betti_examples():
    triangle = SimplicialComplex(3, frozenset([(1, 2), (2, 3), (1, 3)]))
    assert betti_numbers(triangle) == [0, 1]
    assert betti_numbers(support_complex(minimal_torus())) == [0, 2, 1]
    assert betti_numbers(support_complex(octahedron_cycle())) == [0, 0, 1]
    assert betti_numbers(support_complex(genus_g_surface(2))) == [0, 4, 1]


def test_h_vector_examples():
    for n in (3, 4, 5):
        assert h_vector(tetra_boundary_complex(n)) == [1] * n
    assert h_vector(support_complex(octahedron_cycle())) == [1, 3, 3, 1]
    torus = support_complex(minimal_torus())
    assert torus.f_vector() == [7, 21, 14]
    assert h_vector(torus) == [1, 4, 10, -1]
    with pytest.raises(NotPure):
        h_vector(SimplicialComplex(3, frozenset([(1, 2), (3,)])))


def test_h_double_prime_examples():
    assert h_double_prime(support_complex(minimal_torus())) == [1, 4, 4, 1]
    octa = support_complex(octahedron_cycle())
    assert h_double_prime(octa) == h_vector(octa)
    for g in (1, 2, 3):
        surf = support_complex(genus_g_surface(g))
        v = len(surf.vertices())
        assert v == 7 + 4 * (g - 1)
        assert h_double_prime(surf) == [1, v - 3, v - 3, 1]


def test_smooth_vertex_examples():
    oct_ = octahedron_cycle()
    assert all(is_smooth_vertex(oct_, v) for v in oct_.vertices())
    g = gamma_cycle()
    assert [v for v in range(1, 7) if is_smooth_vertex(g, v)] == [1, 2, 3, 4]
    s = suspension(minimal_torus())
    assert not is_smooth_vertex(s, 8) and not is_smooth_vertex(s, 9)
    # base vertices have suspended circles as links
    assert all(is_smooth_vertex(s, v) for v in range(1, 8))
    with pytest.raises(GhostVertex):
        is_smooth_vertex(s.with_m(10), 10)


def test_fundamental_cycle_and_orientability():
    octa = support_complex(octahedron_fan().cycle)
    assert fundamental_cycle(octa).is_cycle()
    # 6-vertex real projective plane
    rp2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]
    with pytest.raises(NonOrientable):
        fundamental_cycle(SimplicialComplex(6, frozenset(rp2)))


def test_connected_sum_cycles_appends_unglued_vertices():
    t = minimal_torus()
    tri = t.simplices()[0]
    total, mapping = connected_sum_cycles(t, -t, list(zip(tri, tri)))
    assert total.weight(tri) == 0 and total.is_cycle()
    other = t.simplices()[-1]
    total, mapping = connected_sum_cycles(t, t, list(zip(other, tri)))
    assert total.m == 11
    assert sorted(mapping.values())[-4:] == [8, 9, 10, 11]


def random_chain(rng, m, k, size):
    weights = {}
    for _ in range(size):
        weights[tuple(sorted(rng.sample(range(1, m + 1), k)))] = Fraction(rng.randint(-3, 3))
    return SimplicialChain(m, k, weights)


SEEDS = st.integers(0, 10**6)


@settings(max_examples=25, deadline=None)
@given(SEEDS)
def test_boundary_squares_to_zero(seed):
    rng = random.Random(seed)
    c = random_chain(rng, 6, rng.randint(1, 4), rng.randint(0, 8))
    assert boundary(boundary(c)).is_zero() if c.k >= 2 else True


@settings(max_examples=15, deadline=None)
@given(SEEDS)
def test_suspension_is_cycle_iff_input_is(seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        c = random_chain(rng, 5, 2, rng.randint(1, 5))
    else:
        c = boundary(random_chain(rng, 5, 3, rng.randint(1, 3)))
    assert suspension(c).is_cycle() == c.is_cycle()


@settings(max_examples=15, deadline=None)
@given(SEEDS, SEEDS)
def test_join_facet_count_multiplies(s1, s2):
    a = random_chain(random.Random(s1), 4, 2, 4)
    b = random_chain(random.Random(s2), 3, 1, 3)
    assert len(join_cycles(a, b)) == len(a) * len(b)


@pytest.mark.parametrize("cycle", [gamma_cycle(), minimal_torus(), octahedron_fan().cycle, genus_g_surface(2)])
def test_vertex_links_of_cycles_are_cycles(cycle):
    for v in cycle.vertices():
        assert link_cycle(cycle, (v,)).is_cycle()


def test_h_double_prime_equals_h_on_two_spheres():
    octa = support_complex(octahedron_fan().cycle)
    tetra = tetra_boundary_complex(4)
    icosa_like = support_complex(suspension(SimplicialChain.from_facets(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])))
    for k in (octa, tetra, icosa_like):
        assert h_double_prime(k) == h_vector(k)
